"""Mapping rules from emotion statistics to a complete musical description.

The rules: positive/negative word ratio picks C major vs C minor; the
joy-minus-sadness score picks the base octave; the activity score picks the
tempo; per-subsection densities pick how many notes fill each measure; and
per-note-span densities pick each pitch along the key's consonance order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .analyzer import (
    OVERALL_EMOTION,
    DensityBasis,
    EmotionProfile,
    Partition,
    TokenizedText,
    span_density,
    split_evenly,
)
from .lexicon import AffectCategory, AffectLexicon

PITCH_CLASSES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")
SEMITONE = {name: index for index, name in enumerate(PITCH_CLASSES)}

BEATS_PER_MEASURE = 4  # 4/4 time throughout


class Key(Enum):
    """The two supported keys, with scale and consonance ranking."""

    C_MAJOR = "C major"
    C_MINOR = "C minor"

    @property
    def scale(self) -> tuple[str, ...]:
        return _SCALES[self]

    @property
    def consonance_order(self) -> tuple[str, ...]:
        """Scale pitches from most consonant to most dissonant."""
        return _CONSONANCE[self]


_SCALES = {
    Key.C_MAJOR: ("C", "D", "E", "F", "G", "A", "B"),
    Key.C_MINOR: ("C", "D", "D#", "F", "G", "G#", "A#"),
}
# 1st, 5th, 3rd, 6th, 2nd, 4th, 7th scale degrees.
_CONSONANCE = {
    Key.C_MAJOR: ("C", "G", "E", "A", "D", "F", "B"),
    Key.C_MINOR: ("C", "G", "D#", "G#", "D", "F", "A#"),
}


class Duration(Enum):
    """Note duration choices; ``per_measure`` notes of each fill a 4/4 measure."""

    WHOLE = ("whole", 4.0, 1, "1.0")
    HALF = ("half", 2.0, 2, "0.5")
    QUARTER = ("quarter", 1.0, 4, "0.25")
    EIGHTH = ("eighth", 0.5, 8, "0.125")
    SIXTEENTH = ("sixteenth", 0.25, 16, "0.0625")

    def __init__(self, label: str, beats: float, per_measure: int, token: str):
        self.label = label
        self.beats = beats
        self.per_measure = per_measure
        self.token = token


# Least to most notes per measure; density intervals map onto this ladder.
_DURATION_LADDER = (
    Duration.WHOLE,
    Duration.HALF,
    Duration.QUARTER,
    Duration.EIGHTH,
    Duration.SIXTEENTH,
)


@dataclass(frozen=True)
class CalibrationConstants:
    """Normalization ranges for the octave and tempo mappings.

    Defaults are the published calibration: activity extremes -0.002/0.017,
    joy-minus-sadness extremes -0.008/0.008, tempo bounds 40/180 bpm, base
    octaves 4-6. A degenerate corpus may make min equal max for the score
    ranges; the mappings then collapse to the lower endpoint.
    """

    js_min: float = -0.008
    js_max: float = 0.008
    act_min: float = -0.002
    act_max: float = 0.017
    tempo_min: int = 40
    tempo_max: int = 180
    octave_lo: int = 4
    octave_hi: int = 6

    def __post_init__(self):
        if self.js_min > self.js_max:
            raise ValueError("js_min must not exceed js_max")
        if self.act_min > self.act_max:
            raise ValueError("act_min must not exceed act_max")
        if self.tempo_min >= self.tempo_max:
            raise ValueError("tempo_min must be below tempo_max")
        if self.octave_lo >= self.octave_hi:
            raise ValueError("octave_lo must be below octave_hi")


@dataclass(frozen=True)
class Note:
    pitch_class: str
    octave: int
    duration: Duration

    def __post_init__(self):
        if self.pitch_class not in SEMITONE:
            raise ValueError(f"unknown pitch class {self.pitch_class!r}")
        if not 0 <= self.octave <= 8:
            raise ValueError(f"octave {self.octave} outside the piano range")


@dataclass(frozen=True)
class Measure:
    """One measure: homogeneous-duration notes summing to exactly 4 beats."""

    notes: tuple[Note, ...]

    def __post_init__(self):
        durations = {note.duration for note in self.notes}
        if len(durations) != 1:
            raise ValueError("measure notes must share one duration")
        if sum(note.duration.beats for note in self.notes) != BEATS_PER_MEASURE:
            raise ValueError("measure must total exactly 4 beats")

    @property
    def duration(self) -> Duration:
        return self.notes[0].duration


@dataclass(frozen=True)
class Melody:
    """One voice: a density basis, a fixed octave, and measures per section."""

    basis: DensityBasis
    octave: int
    sections: tuple[tuple[Measure, ...], ...]


@dataclass(frozen=True)
class PieceSpec:
    """Complete render-ready description: key, tempo, and three melodies."""

    key: Key
    tempo: int
    melodies: tuple[Melody, ...]

    def to_json_dict(self) -> dict:
        return {
            "key": self.key.value,
            "tempo": self.tempo,
            "melodies": [
                {
                    "basis": melody.basis.label,
                    "octave": melody.octave,
                    "sections": [
                        [
                            [
                                {
                                    "pitch": note.pitch_class,
                                    "octave": note.octave,
                                    "duration": note.duration.label,
                                }
                                for note in measure.notes
                            ]
                            for measure in section
                        ]
                        for section in melody.sections
                    ],
                }
                for melody in self.melodies
            ],
        }


def round_half_away(x: float) -> int:
    """Round to nearest integer, halves away from zero."""
    return math.floor(x + 0.5) if x >= 0 else math.ceil(x - 0.5)


def _unit_position(value: float, lo: float, hi: float) -> float:
    """Clamp ``value`` to [lo, hi] and rescale to [0, 1]; 0 when lo == hi."""
    if hi <= lo:
        return 0.0
    return (min(max(value, lo), hi) - lo) / (hi - lo)


def select_key(profile: EmotionProfile) -> Key:
    """C major when positive words outnumber negative ones, else C minor."""
    return Key.C_MAJOR if profile.posneg_ratio > 1 else Key.C_MINOR


def octave_overall(profile: EmotionProfile, cal: CalibrationConstants) -> int:
    """Base octave: joy-minus-sadness mapped linearly onto octave_lo..octave_hi."""
    position = _unit_position(profile.js_score, cal.js_min, cal.js_max)
    return cal.octave_lo + round_half_away(position * (cal.octave_hi - cal.octave_lo))


def octave_emotion(oct_overall: int, emotion: AffectCategory) -> int:
    """Octave for an emotion melody: up for joy/trust, down for the negative
    four, unchanged for surprise/anticipation; clamped to octaves 1-7."""
    if emotion in (AffectCategory.JOY, AffectCategory.TRUST):
        shift = 1
    elif emotion in (
        AffectCategory.ANGER,
        AffectCategory.FEAR,
        AffectCategory.SADNESS,
        AffectCategory.DISGUST,
    ):
        shift = -1
    else:
        shift = 0
    return min(max(oct_overall + shift, 1), 7)


def compute_tempo(profile: EmotionProfile, cal: CalibrationConstants) -> int:
    """Beats per minute: activity score mapped linearly onto the tempo bounds."""
    position = _unit_position(profile.activity_score, cal.act_min, cal.act_max)
    return round_half_away(cal.tempo_min + position * (cal.tempo_max - cal.tempo_min))


def notes_per_measure(density: float, d_min: float, d_max: float) -> Duration:
    """Pick a duration by splitting [d_min, d_max] into five equal intervals.

    The lowest interval maps to one whole note, the highest to sixteen
    sixteenths. Intervals are half-open with the top one closed; a degenerate
    range maps everything to a whole note.
    """
    if d_max <= d_min:
        return Duration.WHOLE
    position = (min(max(density, d_min), d_max) - d_min) / (d_max - d_min)
    return _DURATION_LADDER[min(int(position * 5), 4)]


def pitch_for_density(density: float, d_min: float, d_max: float, key: Key) -> str:
    """Map a density linearly onto the key's consonance order.

    The lowest density gives the most consonant pitch (C), the highest the
    most dissonant (7th); a degenerate range gives C.
    """
    order = key.consonance_order
    if d_max <= d_min:
        return order[0]
    position = (min(max(density, d_min), d_max) - d_min) / (d_max - d_min)
    index = round_half_away(position * (len(order) - 1))
    return order[min(max(index, 0), len(order) - 1)]


def build_melody(
    text: TokenizedText,
    lex: AffectLexicon,
    part: Partition,
    basis: DensityBasis,
    octave: int,
    key: Key,
) -> Melody:
    """Build one voice from the subsection densities of ``basis``.

    Each subsection becomes a measure: its density (normalized against this
    melody's subsection extremes) picks the note count, the subsection is
    split into that many note spans, and each note's pitch comes from its
    span's density normalized against the extremes over all of this melody's
    note spans (collected in a first pass). Sections repeat their measures
    once. A subsection with fewer tokens than the target note count falls
    back to the largest note count that still fits.
    """
    subsection_densities = [
        span_density(text, lex, sub, basis) for sub in part.subsections
    ]
    d_min = min(subsection_densities)
    d_max = max(subsection_densities)

    # First pass: fix each measure's duration and note spans, collecting
    # every note-span density so the pitch range covers the whole melody.
    planned: list[tuple[Duration, list[float]]] = []
    for sub, density in zip(part.subsections, subsection_densities):
        duration = notes_per_measure(density, d_min, d_max)
        while duration.per_measure > len(sub):
            duration = _DURATION_LADDER[_DURATION_LADDER.index(duration) - 1]
        note_spans = split_evenly(sub.start, sub.end, duration.per_measure)
        planned.append(
            (duration, [span_density(text, lex, ns, basis) for ns in note_spans])
        )

    all_note_densities = [d for _, densities in planned for d in densities]
    p_min = min(all_note_densities)
    p_max = max(all_note_densities)

    measures = [
        Measure(
            tuple(
                Note(pitch_for_density(d, p_min, p_max, key), octave, duration)
                for d in densities
            )
        )
        for duration, densities in planned
    ]

    per_section = part.subsections_per_section
    sections = tuple(
        tuple(measures[i * per_section : (i + 1) * per_section]) * 2
        for i in range(part.n_sections)
    )
    return Melody(basis=basis, octave=octave, sections=sections)


def compose(
    text: TokenizedText,
    lex: AffectLexicon,
    part: Partition,
    profile: EmotionProfile,
    cal: CalibrationConstants,
) -> PieceSpec:
    """Assemble the full piece: key, tempo, and the three voices."""
    key = select_key(profile)
    tempo = compute_tempo(profile, cal)
    base_octave = octave_overall(profile, cal)
    e1, e2 = profile.top_emotions
    melodies = (
        build_melody(text, lex, part, OVERALL_EMOTION, base_octave, key),
        build_melody(text, lex, part, DensityBasis(e1), octave_emotion(base_octave, e1), key),
        build_melody(text, lex, part, DensityBasis(e2), octave_emotion(base_octave, e2), key),
    )
    return PieceSpec(key=key, tempo=tempo, melodies=melodies)
