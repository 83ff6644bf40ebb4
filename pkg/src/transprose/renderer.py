"""Render a piece as a JFugue-style token line and as a Standard MIDI File."""

from __future__ import annotations

import struct
from pathlib import Path

from .composer import Key, Melody, PieceSpec, SEMITONE

KEY_TOKENS = {Key.C_MAJOR: "KCmaj", Key.C_MINOR: "KCmin"}
VOLUME_TOKEN = "X[VOLUME]=16383"

TICKS_PER_QUARTER = 480
NOTE_VELOCITY = 80
PIANO_PROGRAM = 0

_META_TIME_SIGNATURE = bytes((0xFF, 0x58, 0x04, 0x04, 0x02, 0x18, 0x08))  # 4/4
_META_END_OF_TRACK = bytes((0xFF, 0x2F, 0x00))


def _melody_notes(melody: Melody):
    for section in melody.sections:
        for measure in section:
            yield from measure.notes


def emit_tokens(piece: PieceSpec) -> str:
    """Single-line token string: key, volume, then per voice ``V<i> T<tempo>``
    and one ``<pitch><octave>/<duration>`` token per note."""
    tokens = [KEY_TOKENS[piece.key], VOLUME_TOKEN]
    for index, melody in enumerate(piece.melodies):
        tokens.append(f"V{index}")
        tokens.append(f"T{piece.tempo}")
        for note in _melody_notes(melody):
            tokens.append(f"{note.pitch_class}{note.octave}/{note.duration.token}")
    return " ".join(tokens)


def write_tokens(piece: PieceSpec, path) -> None:
    Path(path).write_text(emit_tokens(piece) + "\n", encoding="utf-8")


def midi_note_number(pitch_class: str, octave: int) -> int:
    """MIDI key number with the C4 = 60 convention."""
    return 12 * (octave + 1) + SEMITONE[pitch_class]


def _vlq(value: int) -> bytes:
    """Variable-length quantity encoding for delta times."""
    if value < 0:
        raise ValueError("delta time must be non-negative")
    out = bytearray((value & 0x7F,))
    value >>= 7
    while value:
        out.insert(0, (value & 0x7F) | 0x80)
        value >>= 7
    return bytes(out)


def _track_chunk(events: bytes) -> bytes:
    return b"MTrk" + struct.pack(">I", len(events)) + events


def tempo_microseconds(tempo: int) -> int:
    """Microseconds per quarter note for the tempo meta event."""
    return round(60_000_000 / tempo)


def emit_midi(piece: PieceSpec) -> bytes:
    """Format-1 SMF at 480 ticks/quarter: one meta track (4/4 time signature
    and tempo), then one piano track per melody on channels 0..2."""
    header = struct.pack(">4sIHHH", b"MThd", 6, 1, 1 + len(piece.melodies), TICKS_PER_QUARTER)

    meta = bytearray()
    meta += _vlq(0) + _META_TIME_SIGNATURE
    meta += _vlq(0) + bytes((0xFF, 0x51, 0x03)) + tempo_microseconds(piece.tempo).to_bytes(3, "big")
    meta += _vlq(0) + _META_END_OF_TRACK
    chunks = [_track_chunk(bytes(meta))]

    for channel, melody in enumerate(piece.melodies):
        events = bytearray()
        events += _vlq(0) + bytes((0xC0 | channel, PIANO_PROGRAM))
        for note in _melody_notes(melody):
            key = midi_note_number(note.pitch_class, note.octave)
            ticks = int(note.duration.beats * TICKS_PER_QUARTER)
            events += _vlq(0) + bytes((0x90 | channel, key, NOTE_VELOCITY))
            events += _vlq(ticks) + bytes((0x80 | channel, key, 0))
        events += _vlq(0) + _META_END_OF_TRACK
        chunks.append(_track_chunk(bytes(events)))

    return header + b"".join(chunks)


def write_midi(piece: PieceSpec, path) -> None:
    Path(path).write_bytes(emit_midi(piece))
