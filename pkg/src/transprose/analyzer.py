"""Tokenization, positional sectioning, and emotion-density statistics."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping

from .errors import EmptySpanError, EmptyTextError, TextTooShortError
from .lexicon import EMOTION_SET, EMOTIONS, AffectCategory, AffectLexicon


def _is_word_char(ch: str) -> bool:
    # Letters and apostrophes; everything else (digits and other numerics,
    # punctuation, whitespace) separates tokens.
    return ch == "'" or ch.isalpha()


@dataclass(frozen=True)
class TokenizedText:
    """Ordered lowercase word tokens of one document."""

    tokens: tuple[str, ...]

    @property
    def token_count(self) -> int:
        return len(self.tokens)


def tokenize(raw_text: str) -> TokenizedText:
    """Split on any character that is not a letter or apostrophe.

    The text is lowercased first and U+2019 is normalized to "'" (Gutenberg
    etexts use it as the apostrophe). Leading/trailing apostrophes are
    stripped and empty results dropped. Raises :class:`EmptyTextError` when
    nothing survives.
    """
    normalized = raw_text.lower().replace("’", "'")
    tokens = tuple(
        stripped
        for is_word, run in itertools.groupby(normalized, key=_is_word_char)
        if is_word and (stripped := "".join(run).strip("'"))
    )
    if not tokens:
        raise EmptyTextError("text contains no word tokens")
    return TokenizedText(tokens)


@dataclass(frozen=True)
class Span:
    """Half-open token index range [start, end)."""

    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start


def split_evenly(start: int, end: int, parts: int) -> tuple[Span, ...]:
    """Balanced gapless tiling of [start, end) into ``parts`` spans.

    Lengths differ by at most one; remainder tokens go to the front spans.
    """
    if parts < 1:
        raise ValueError("parts must be >= 1")
    size, extra = divmod(end - start, parts)
    spans = []
    pos = start
    for i in range(parts):
        step = size + (1 if i < extra else 0)
        spans.append(Span(pos, pos + step))
        pos += step
    return tuple(spans)


@dataclass(frozen=True)
class Partition:
    """Sections tiling the full token range, each tiled by its subsections."""

    sections: tuple[Span, ...]
    subsections: tuple[Span, ...]

    def __post_init__(self):
        for prev, nxt in zip(self.sections, self.sections[1:]):
            if prev.end != nxt.start:
                raise ValueError("sections must tile contiguously")
        for prev, nxt in zip(self.subsections, self.subsections[1:]):
            if prev.end != nxt.start:
                raise ValueError("subsections must tile contiguously")

    @property
    def n_sections(self) -> int:
        return len(self.sections)

    @property
    def subsections_per_section(self) -> int:
        return len(self.subsections) // len(self.sections)


def partition(text: TokenizedText, n_sections: int = 4, n_subsections: int = 4) -> Partition:
    """Partition the token range into sections and per-section subsections.

    Raises :class:`TextTooShortError` when there are fewer tokens than
    subsections overall.
    """
    needed = n_sections * n_subsections
    if text.token_count < needed:
        raise TextTooShortError(
            f"need at least {needed} tokens, got {text.token_count}"
        )
    sections = split_evenly(0, text.token_count, n_sections)
    subsections = tuple(
        sub
        for section in sections
        for sub in split_evenly(section.start, section.end, n_subsections)
    )
    return Partition(sections, subsections)


@dataclass(frozen=True)
class DensityBasis:
    """What counts as a hit: any of the eight emotions, or one emotion."""

    emotion: AffectCategory | None = None

    def __post_init__(self):
        if self.emotion is not None and self.emotion not in EMOTION_SET:
            raise ValueError(f"{self.emotion} is not one of the eight emotions")

    @property
    def label(self) -> str:
        return "overall" if self.emotion is None else self.emotion.value

    @property
    def categories(self) -> frozenset[AffectCategory]:
        return EMOTION_SET if self.emotion is None else frozenset((self.emotion,))


OVERALL_EMOTION = DensityBasis()


def _hit_count(
    text: TokenizedText,
    lex: AffectLexicon,
    span: Span,
    categories: frozenset[AffectCategory],
) -> int:
    # A token matching several of the categories still counts once.
    return sum(
        1
        for token in text.tokens[span.start : span.end]
        if not lex.lookup(token).isdisjoint(categories)
    )


def span_density(
    text: TokenizedText, lex: AffectLexicon, span: Span, basis: DensityBasis
) -> float:
    """Fraction of tokens in ``span`` associated with the basis categories."""
    if span.end > text.token_count:
        raise ValueError("span exceeds token range")
    if len(span) == 0:
        raise EmptySpanError(f"span [{span.start}, {span.end}) is empty")
    return _hit_count(text, lex, span, basis.categories) / len(span)


@dataclass(frozen=True)
class EmotionProfile:
    """Everything the composer needs to know about one document.

    ``posneg_ratio`` is +infinity when positive words occur but negative
    words do not, and 1.0 when neither occurs.
    """

    overall_density: float
    category_density: Mapping[AffectCategory, float]
    subsection_density: Mapping[tuple[int, DensityBasis], float]
    js_score: float
    activity_score: float
    posneg_ratio: float
    top_emotions: tuple[AffectCategory, AffectCategory]

    def to_json_dict(self) -> dict:
        """JSON-ready dict with stable field names.

        Note json.dumps renders an infinite posneg_ratio as the (non-strict)
        ``Infinity`` literal, which Python's json reads back.
        """
        n_subsections = 1 + max(
            (idx for idx, _ in self.subsection_density), default=-1
        )
        bases = (OVERALL_EMOTION, *(DensityBasis(e) for e in EMOTIONS))
        return {
            "overall_density": self.overall_density,
            "category_density": {
                cat.value: self.category_density[cat] for cat in AffectCategory
            },
            "subsection_density": {
                basis.label: [
                    self.subsection_density[(idx, basis)]
                    for idx in range(n_subsections)
                ]
                for basis in bases
            },
            "js_score": self.js_score,
            "activity_score": self.activity_score,
            "posneg_ratio": self.posneg_ratio,
            "top_emotions": [cat.value for cat in self.top_emotions],
        }


def build_profile(
    text: TokenizedText, lex: AffectLexicon, part: Partition
) -> EmotionProfile:
    """Compute whole-document and per-subsection density statistics.

    Top emotions are the two highest whole-document emotion densities; ties
    break by canonical (alphabetical) category order.
    """
    whole = Span(0, text.token_count)
    category_density = {
        cat: _hit_count(text, lex, whole, frozenset((cat,))) / len(whole)
        for cat in AffectCategory
    }
    overall_density = span_density(text, lex, whole, OVERALL_EMOTION)

    bases = (OVERALL_EMOTION, *(DensityBasis(e) for e in EMOTIONS))
    subsection_density = {
        (idx, basis): span_density(text, lex, sub, basis)
        for idx, sub in enumerate(part.subsections)
        for basis in bases
    }

    js_score = category_density[AffectCategory.JOY] - category_density[AffectCategory.SADNESS]
    activity_score = (
        category_density[AffectCategory.ANGER] + category_density[AffectCategory.JOY]
    ) / 2 - category_density[AffectCategory.SADNESS]

    positive = _hit_count(text, lex, whole, frozenset((AffectCategory.POSITIVE,)))
    negative = _hit_count(text, lex, whole, frozenset((AffectCategory.NEGATIVE,)))
    if negative == 0:
        posneg_ratio = math.inf if positive > 0 else 1.0
    else:
        posneg_ratio = positive / negative

    # EMOTIONS is in canonical order and sort is stable, so ties resolve
    # to the alphabetically earlier category.
    ranked = sorted(EMOTIONS, key=lambda e: -category_density[e])
    top_emotions = (ranked[0], ranked[1])

    return EmotionProfile(
        overall_density=overall_density,
        category_density=category_density,
        subsection_density=subsection_density,
        js_score=js_score,
        activity_score=activity_score,
        posneg_ratio=posneg_ratio,
        top_emotions=top_emotions,
    )
