"""Shared test helpers: toy lexica, a token-string parser, and an
independent Standard MIDI File reader.

The parser and the SMF reader exist only for verification; they re-derive
structure from the emitted artifacts using nothing from the renderer.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from pathlib import Path

from transprose import AffectCategory, AffectLexicon

TESTS_DIR = Path(__file__).parent

# ---------------------------------------------------------------------------
# Toy lexicon

_TOY_WORDS = {
    "cake": {AffectCategory.JOY, AffectCategory.POSITIVE},
    "grave": {AffectCategory.SADNESS, AffectCategory.NEGATIVE},
    "rage": {AffectCategory.ANGER, AffectCategory.NEGATIVE},
    "dread": {AffectCategory.FEAR, AffectCategory.NEGATIVE},
    "oath": {AffectCategory.TRUST, AffectCategory.POSITIVE},
    "slime": {AffectCategory.DISGUST, AffectCategory.NEGATIVE},
    "gasp": {AffectCategory.SURPRISE},
    "dawn": {AffectCategory.ANTICIPATION},
    "fine": {AffectCategory.POSITIVE},
    "grim": {AffectCategory.NEGATIVE},
    "bittersweet": {AffectCategory.JOY, AffectCategory.SADNESS},
}

FILLERS = ("stone", "walk", "door", "river", "cloud")


def make_lexicon(mapping=None) -> AffectLexicon:
    mapping = _TOY_WORDS if mapping is None else mapping
    return AffectLexicon({w: frozenset(c) for w, c in mapping.items()})


def lexicon_file_text(mapping=None, with_zero_flags: bool = False) -> str:
    """Render a mapping in the word/category/flag file format."""
    mapping = _TOY_WORDS if mapping is None else mapping
    lines = []
    for word in sorted(mapping):
        for cat in AffectCategory:
            flag = 1 if cat in mapping[word] else 0
            if flag or with_zero_flags:
                lines.append(f"{word}\t{cat.value}\t{flag}")
    return "\n".join(lines) + "\n"


def front_loaded_text(counts, subsection_len: int = 10, word: str = "cake",
                      filler: str = "stone") -> str:
    """One subsection per count: ``count`` emotion words then filler."""
    words = []
    for count in counts:
        assert 0 <= count <= subsection_len
        words.extend([word] * count)
        words.extend([filler] * (subsection_len - count))
    return " ".join(words)


GOLDEN_COUNTS = (2, 0, 5, 7, 10, 1, 3, 8, 0, 4, 6, 2, 9, 5, 1, 7)


def golden_piece():
    """Fixed deterministic piece backing the golden-file tests."""
    from transprose import (
        CalibrationConstants,
        build_profile,
        compose,
        partition,
        tokenize,
    )

    lex = make_lexicon()
    text = tokenize(front_loaded_text(GOLDEN_COUNTS))
    part = partition(text)
    profile = build_profile(text, lex, part)
    return compose(text, lex, part, profile, CalibrationConstants())


# ---------------------------------------------------------------------------
# Token-string parser (verification only)

_KEY_RE = re.compile(r"^KC(maj|min)$")
_VOICE_RE = re.compile(r"^V(\d+)$")
_TEMPO_RE = re.compile(r"^T(\d+)$")
_NOTE_RE = re.compile(r"^([A-G]#?)([0-8])/(1\.0|0\.5|0\.25|0\.125|0\.0625)$")


@dataclass
class ParsedVoice:
    index: int
    tempo: int
    notes: list  # (pitch_class, octave, duration_token)


@dataclass
class ParsedTokenString:
    key_token: str
    volume_token: str
    voices: list


def parse_token_string(text: str) -> ParsedTokenString:
    """Strict parse of the emitted token line; raises ValueError on any
    deviation from the expected grammar."""
    tokens = text.strip("\n").split(" ")
    if len(tokens) < 2:
        raise ValueError("too few tokens")
    if not _KEY_RE.match(tokens[0]):
        raise ValueError(f"bad key token {tokens[0]!r}")
    if tokens[1] != "X[VOLUME]=16383":
        raise ValueError(f"bad volume token {tokens[1]!r}")

    voices = []
    i = 2
    while i < len(tokens):
        voice_match = _VOICE_RE.match(tokens[i])
        if not voice_match:
            raise ValueError(f"expected voice token at position {i}, got {tokens[i]!r}")
        if i + 1 >= len(tokens):
            raise ValueError("voice token without tempo")
        tempo_match = _TEMPO_RE.match(tokens[i + 1])
        if not tempo_match:
            raise ValueError(f"expected tempo token after {tokens[i]!r}")
        voice = ParsedVoice(int(voice_match.group(1)), int(tempo_match.group(1)), [])
        i += 2
        while i < len(tokens) and not _VOICE_RE.match(tokens[i]):
            note_match = _NOTE_RE.match(tokens[i])
            if not note_match:
                raise ValueError(f"bad note token {tokens[i]!r}")
            voice.notes.append(
                (note_match.group(1), int(note_match.group(2)), note_match.group(3))
            )
            i += 1
        voices.append(voice)
    return ParsedTokenString(tokens[0], tokens[1], voices)


# ---------------------------------------------------------------------------
# Independent SMF reader (verification only)

_TWO_BYTE_EVENTS = {0x8, 0x9, 0xA, 0xB, 0xE}
_ONE_BYTE_EVENTS = {0xC, 0xD}


@dataclass
class SmfTrack:
    events: list  # (abs_ticks, kind, payload)

    @property
    def end_ticks(self) -> int:
        return self.events[-1][0]

    def notes(self):
        """Paired (start, end, channel, key, velocity); raises if unbalanced."""
        open_notes = {}
        pairs = []
        for ticks, kind, payload in self.events:
            if kind == "note_on" and payload[2] > 0:
                slot = (payload[0], payload[1])
                if slot in open_notes:
                    raise ValueError(f"overlapping note on {slot}")
                open_notes[slot] = (ticks, payload[2])
            elif kind == "note_off" or (kind == "note_on" and payload[2] == 0):
                slot = (payload[0], payload[1])
                if slot not in open_notes:
                    raise ValueError(f"unmatched note off {slot}")
                start, velocity = open_notes.pop(slot)
                pairs.append((start, ticks, payload[0], payload[1], velocity))
        if open_notes:
            raise ValueError(f"unterminated notes: {sorted(open_notes)}")
        return pairs

    def meta(self, meta_type: int):
        return [p for _, kind, p in self.events if kind == "meta" and p[0] == meta_type]


@dataclass
class SmfFile:
    fmt: int
    division: int
    tracks: list


def _read_vlq(data: bytes, pos: int) -> tuple[int, int]:
    value = 0
    for count in range(4):
        byte = data[pos]
        pos += 1
        value = (value << 7) | (byte & 0x7F)
        if not byte & 0x80:
            return value, pos
    raise ValueError("VLQ longer than 4 bytes")


def parse_smf(data: bytes) -> SmfFile:
    """Parse and validate a Standard MIDI File from its byte layout alone."""
    if data[0:4] != b"MThd":
        raise ValueError("missing MThd")
    if int.from_bytes(data[4:8], "big") != 6:
        raise ValueError("bad header length")
    fmt = int.from_bytes(data[8:10], "big")
    n_tracks = int.from_bytes(data[10:12], "big")
    division = int.from_bytes(data[12:14], "big")
    if division & 0x8000:
        raise ValueError("SMPTE division not supported")

    tracks = []
    pos = 14
    for _ in range(n_tracks):
        if data[pos : pos + 4] != b"MTrk":
            raise ValueError(f"missing MTrk at byte {pos}")
        length = int.from_bytes(data[pos + 4 : pos + 8], "big")
        body = data[pos + 8 : pos + 8 + length]
        if len(body) != length:
            raise ValueError("truncated track")
        tracks.append(_parse_track(body))
        pos += 8 + length
    if pos != len(data):
        raise ValueError("trailing bytes after last track")
    return SmfFile(fmt, division, tracks)


def _parse_track(body: bytes) -> SmfTrack:
    events = []
    ticks = 0
    pos = 0
    running_status = None
    ended = False
    while pos < len(body):
        if ended:
            raise ValueError("events after end-of-track")
        delta, pos = _read_vlq(body, pos)
        if delta < 0:
            raise ValueError("negative delta")
        ticks += delta
        status = body[pos]
        if status == 0xFF:
            meta_type = body[pos + 1]
            length, data_pos = _read_vlq(body, pos + 2)
            payload = body[data_pos : data_pos + length]
            events.append((ticks, "meta", (meta_type, bytes(payload))))
            pos = data_pos + length
            if meta_type == 0x2F:
                ended = True
            continue
        if status in (0xF0, 0xF7):
            length, data_pos = _read_vlq(body, pos + 1)
            events.append((ticks, "sysex", bytes(body[data_pos : data_pos + length])))
            pos = data_pos + length
            continue
        if status & 0x80:
            running_status = status
            pos += 1
        elif running_status is None:
            raise ValueError("data byte with no running status")
        else:
            status = running_status
        kind_nibble = status >> 4
        channel = status & 0x0F
        if kind_nibble in _TWO_BYTE_EVENTS:
            d1, d2 = body[pos], body[pos + 1]
            pos += 2
            if d1 & 0x80 or d2 & 0x80:
                raise ValueError("data byte with high bit set")
            kind = {0x8: "note_off", 0x9: "note_on"}.get(kind_nibble, "channel")
            events.append((ticks, kind, (channel, d1, d2)))
        elif kind_nibble in _ONE_BYTE_EVENTS:
            d1 = body[pos]
            pos += 1
            if d1 & 0x80:
                raise ValueError("data byte with high bit set")
            kind = "program" if kind_nibble == 0xC else "channel"
            events.append((ticks, kind, (channel, d1)))
        else:
            raise ValueError(f"unexpected status byte {status:#x}")
    if not ended:
        raise ValueError("track missing end-of-track meta")
    return SmfTrack(events)


# ---------------------------------------------------------------------------
# Real-corpus discovery (acceptance criteria that need published texts)

CORPUS_DIR = Path(os.environ.get("TRANSPROSE_CORPUS", TESTS_DIR / "data" / "corpus"))

NOVEL_FILES = {
    "alice_in_wonderland": "alice_in_wonderland.txt",
    "anne_of_green_gables": "anne_of_green_gables.txt",
    "peter_pan": "peter_pan.txt",
    "heart_of_darkness": "heart_of_darkness.txt",
}


def real_lexicon_path() -> Path | None:
    env = os.environ.get("TRANSPROSE_LEXICON")
    if env and Path(env).is_file():
        return Path(env)
    for name in ("NRC-Emotion-Lexicon-Wordlevel-v0.92.txt", "nrc_lexicon.txt"):
        candidate = CORPUS_DIR / name
        if candidate.is_file():
            return candidate
    return None


def missing_corpus_files() -> list[str]:
    missing = [
        name for name in NOVEL_FILES.values() if not (CORPUS_DIR / name).is_file()
    ]
    if real_lexicon_path() is None:
        missing.append("NRC-Emotion-Lexicon-Wordlevel-v0.92.txt")
    return missing


CORPUS_SKIP_REASON = (
    "real corpus not present (sandboxed build: no network/package-mirror source "
    f"for it); supply {sorted(NOVEL_FILES.values())} plus the word-level emotion "
    f"lexicon under {CORPUS_DIR} or set TRANSPROSE_CORPUS/TRANSPROSE_LEXICON - "
    "see tests/data/corpus/README.md"
)
