"""Word-level emotion lexicon: parsing and lookup.

The file format is one record per line, ``word<TAB>category<TAB>flag``,
flag 0 or 1, with ten affect categories per word (eight emotions plus
positive/negative sentiment). Only flag=1 associations are kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import MalformedLineError


class AffectCategory(Enum):
    """The ten affect categories of the word-level lexicon format."""

    ANGER = "anger"
    ANTICIPATION = "anticipation"
    DISGUST = "disgust"
    FEAR = "fear"
    JOY = "joy"
    SADNESS = "sadness"
    SURPRISE = "surprise"
    TRUST = "trust"
    POSITIVE = "positive"
    NEGATIVE = "negative"


# The eight emotions in canonical (alphabetical) order. POSITIVE and NEGATIVE
# are sentiment polarities and never count as emotions.
EMOTIONS: tuple[AffectCategory, ...] = tuple(
    cat
    for cat in AffectCategory
    if cat not in (AffectCategory.POSITIVE, AffectCategory.NEGATIVE)
)
EMOTION_SET: frozenset[AffectCategory] = frozenset(EMOTIONS)

_BY_NAME = {cat.value: cat for cat in AffectCategory}
_NO_CATEGORIES: frozenset[AffectCategory] = frozenset()


@dataclass(frozen=True)
class AffectLexicon:
    """Immutable map from lowercase word to its affect categories."""

    entries: dict[str, frozenset[AffectCategory]] = field(default_factory=dict)
    source_path: str = "<memory>"

    def lookup(self, word: str) -> frozenset[AffectCategory]:
        """Categories associated with ``word``; empty set when out of vocabulary."""
        return self.entries.get(word, _NO_CATEGORIES)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries


def load_lexicon(path) -> AffectLexicon:
    """Parse a word-level lexicon file.

    Blank lines are ignored and a leading block of ``#`` comment lines is
    skipped. Raises :class:`MalformedLineError` for a wrong field count, an
    unknown category, a non-binary flag, or a word containing whitespace.
    flag=0 lines are validated but not stored.
    """
    entries: dict[str, set[AffectCategory]] = {}
    in_leading_comments = True
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip():
                continue
            if in_leading_comments and line.startswith("#"):
                continue
            in_leading_comments = False

            parts = line.split("\t")
            if len(parts) != 3:
                raise MalformedLineError(
                    line_no, f"expected 3 tab-separated fields, got {len(parts)}"
                )
            word, category_name, flag = parts
            word = word.lower()
            if not word or any(ch.isspace() for ch in word):
                raise MalformedLineError(line_no, f"bad word field {parts[0]!r}")
            category = _BY_NAME.get(category_name)
            if category is None:
                raise MalformedLineError(line_no, f"unknown category {category_name!r}")
            if flag == "1":
                entries.setdefault(word, set()).add(category)
            elif flag != "0":
                raise MalformedLineError(line_no, f"flag must be 0 or 1, got {flag!r}")

    frozen = {word: frozenset(cats) for word, cats in entries.items()}
    return AffectLexicon(frozen, source_path=str(path))


def dump_lexicon(lex: AffectLexicon) -> str:
    """Serialize back to the file format, sorted by word then category name.

    Only flag=1 associations are written, so load -> dump -> load is a
    fixed point.
    """
    lines = []
    for word in sorted(lex.entries):
        for cat in sorted(lex.entries[word], key=lambda c: c.value):
            lines.append(f"{word}\t{cat.value}\t1")
    return "\n".join(lines) + ("\n" if lines else "")
