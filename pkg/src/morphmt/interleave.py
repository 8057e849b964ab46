"""Sentence encodings: interleaved tag/word training representations.

Four representation modes:

* ``baseline``        - surface forms only.
* ``morphgen``        - tag token before each lemma token.
* ``serialization``   - tag token before each surface token.
* ``german-stemmed``  - per word, either one bare token (``und[KON]``) or
  a stem token followed by its feature-sequence token
  (``sehen <+V><3><Sg><Pres><Ind>``).

Decoding validates the alternation and recovers the (tag, word) pairs;
it is also the well-formedness checker used by the evaluation module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tagsets import (
    MorphAnalysis,
    format_tag,
    is_bare_token,
    is_czech_tag,
    is_feature_token,
    KIND_BARE,
)

__all__ = [
    "MODES",
    "MODE_BASELINE",
    "MODE_MORPHGEN",
    "MODE_SERIALIZATION",
    "MODE_GERMAN_STEMMED",
    "InterleavedSentence",
    "WellformednessError",
    "LengthMismatch",
    "encode",
    "decode",
    "tag_source",
]

MODE_BASELINE = "baseline"
MODE_MORPHGEN = "morphgen"
MODE_SERIALIZATION = "serialization"
MODE_GERMAN_STEMMED = "german-stemmed"
MODES = (MODE_BASELINE, MODE_MORPHGEN, MODE_SERIALIZATION, MODE_GERMAN_STEMMED)

ERROR_ODD_LENGTH = "odd-length"
ERROR_TAG_EXPECTED = "tag-expected"
ERROR_WORD_EXPECTED = "word-expected"


class WellformednessError(ValueError):
    """A token sequence violates the tag/word alternation of its mode."""

    def __init__(self, position: int, kind: str, message: str | None = None):
        self.position = position
        self.kind = kind
        super().__init__(message or f"{kind} at token {position}")


class LengthMismatch(ValueError):
    """Source words and source tags differ in count."""


@dataclass(frozen=True)
class InterleavedSentence:
    """A validated token sequence in one representation mode."""

    mode: str
    tokens: tuple[str, ...]
    pairs: tuple[tuple[str, str], ...] = ()

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def encode(analyses: list[MorphAnalysis], mode: str) -> InterleavedSentence:
    """Encode per-word analyses into one token sequence.

    Interleaved modes emit the tag token before the word token; the
    German stemmed mode emits the stem first and its feature sequence
    second, matching the stem||features boundary direction.  Baseline and
    serialization need the original surface on every analysis.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    tokens: list[str] = []
    pairs: list[tuple[str, str]] = []
    for a in analyses:
        if mode == MODE_BASELINE:
            tokens.append(_surface_of(a))
            continue
        if mode == MODE_MORPHGEN:
            tag_token, word = format_tag(a.tag), a.lemma
            tokens += [tag_token, word]
        elif mode == MODE_SERIALIZATION:
            tag_token, word = format_tag(a.tag), _surface_of(a)
            tokens += [tag_token, word]
        else:  # german-stemmed
            tag_token, word = format_tag(a.tag), a.lemma
            if _is_bare(a):
                tokens.append(f"{word}{tag_token}")
            else:
                tokens += [word, tag_token]
        pairs.append((tag_token, word))
    return InterleavedSentence(mode, tuple(tokens), tuple(pairs))


def _surface_of(a: MorphAnalysis) -> str:
    if a.surface is None:
        raise ValueError(f"analysis of {a.lemma!r} carries no surface form")
    return a.surface


def _is_bare(a: MorphAnalysis) -> bool:
    return getattr(a.tag, "kind", None) == KIND_BARE


def decode(tokens: list[str], mode: str) -> list[tuple[str, str]]:
    """Validate a token sequence and return its (tag, word) pairs.

    Raises :class:`WellformednessError` with the offending position and
    an error kind (odd-length, tag-expected, word-expected).  Inputs must
    have BPE reverted already.
    """
    if mode in (MODE_MORPHGEN, MODE_SERIALIZATION):
        return _decode_czech(tokens)
    if mode == MODE_GERMAN_STEMMED:
        return _decode_german(tokens)
    if mode == MODE_BASELINE:
        raise ValueError("baseline sequences carry no tag/word pairs")
    raise ValueError(f"unknown mode {mode!r}")


def _decode_czech(tokens: list[str]) -> list[tuple[str, str]]:
    if len(tokens) % 2 != 0:
        raise WellformednessError(len(tokens) - 1, ERROR_ODD_LENGTH)
    pairs = []
    for i in range(0, len(tokens), 2):
        tag, word = tokens[i], tokens[i + 1]
        if not is_czech_tag(tag):
            raise WellformednessError(i, ERROR_TAG_EXPECTED)
        if is_czech_tag(word):
            raise WellformednessError(i + 1, ERROR_WORD_EXPECTED)
        pairs.append((tag, word))
    return pairs


def _decode_german(tokens: list[str]) -> list[tuple[str, str]]:
    pairs = []
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if is_feature_token(token):
            # A feature sequence where a word was expected.
            raise WellformednessError(i, ERROR_WORD_EXPECTED)
        if is_bare_token(token):
            lexeme, tag = token[: token.index("[")], token[token.index("[") :]
            pairs.append((tag, lexeme))
            i += 1
            continue
        if i + 1 >= len(tokens) or not is_feature_token(tokens[i + 1]):
            raise WellformednessError(i + 1, ERROR_TAG_EXPECTED)
        pairs.append((tokens[i + 1], token))
        i += 2
    return pairs


def tag_source(words: list[str], tags: list[str]) -> list[str]:
    """Interleave source tags with source words (tag before word).

    Balances source/target sentence lengths when the target side is
    interleaved; any POS inventory is accepted.
    """
    if len(words) != len(tags):
        raise LengthMismatch(f"{len(words)} words vs {len(tags)} tags")
    out: list[str] = []
    for word, tag in zip(words, tags):
        out += [tag, word]
    return out
