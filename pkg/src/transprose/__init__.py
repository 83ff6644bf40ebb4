"""transprose: turn a novel's emotion-word densities into a piano piece.

Pipeline: load a word-level emotion lexicon, tokenize and section the text,
compute density statistics, map them to key/tempo/octaves/notes, and render
the result as a JFugue-style token line and a Standard MIDI File.
"""

from .analyzer import (
    OVERALL_EMOTION,
    DensityBasis,
    EmotionProfile,
    Partition,
    Span,
    TokenizedText,
    build_profile,
    partition,
    span_density,
    split_evenly,
    tokenize,
)
from .composer import (
    CalibrationConstants,
    Duration,
    Key,
    Measure,
    Melody,
    Note,
    PieceSpec,
    build_melody,
    compose,
    compute_tempo,
    notes_per_measure,
    octave_emotion,
    octave_overall,
    pitch_for_density,
    select_key,
)
from .errors import (
    EmptySpanError,
    EmptyTextError,
    MalformedLineError,
    TextTooShortError,
    TransProseError,
)
from .lexicon import (
    EMOTIONS,
    EMOTION_SET,
    AffectCategory,
    AffectLexicon,
    dump_lexicon,
    load_lexicon,
)
from .renderer import emit_midi, emit_tokens, midi_note_number, write_midi, write_tokens

__version__ = "0.1.0"

__all__ = [
    "AffectCategory",
    "AffectLexicon",
    "CalibrationConstants",
    "DensityBasis",
    "Duration",
    "EMOTIONS",
    "EMOTION_SET",
    "EmotionProfile",
    "EmptySpanError",
    "EmptyTextError",
    "Key",
    "MalformedLineError",
    "Measure",
    "Melody",
    "Note",
    "OVERALL_EMOTION",
    "Partition",
    "PieceSpec",
    "Span",
    "TextTooShortError",
    "TokenizedText",
    "TransProseError",
    "build_melody",
    "build_profile",
    "compose",
    "compute_tempo",
    "dump_lexicon",
    "emit_midi",
    "emit_tokens",
    "load_lexicon",
    "midi_note_number",
    "notes_per_measure",
    "octave_emotion",
    "octave_overall",
    "partition",
    "pitch_for_density",
    "select_key",
    "span_density",
    "split_evenly",
    "tokenize",
    "write_midi",
    "write_tokens",
]
