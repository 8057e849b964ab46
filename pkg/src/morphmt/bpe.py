"""Byte-pair-encoding segmentation and the corpus statistics built on it.

Merges are learned per word over character symbols: the most frequent
adjacent symbol pair is merged iteratively, frequency ties broken by
lexicographic order on the pair so that learning is fully deterministic.
Applying a merge table splits a token into pieces, all but the last
carrying the ``@@`` continuation marker; reverting concatenates marked
runs back into whole tokens.  Segmentation is lossless:
``revert(apply(w)) == [w]`` for every token and table.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

__all__ = [
    "MARKER",
    "DanglingMarker",
    "MergeTable",
    "VocabReport",
    "learn_bpe",
    "apply_bpe",
    "segment_line",
    "revert_bpe",
    "word_end_fragment_stats",
    "vocab_stats",
]

MARKER = "@@"


class DanglingMarker(ValueError):
    """A subword sequence ends on a continuation marker."""


@dataclass(frozen=True)
class MergeTable:
    """Ordered list of learned merges; rank is the learning position."""

    merges: tuple[tuple[str, str], ...]
    rank: dict[tuple[str, str], int] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if len(set(self.merges)) != len(self.merges):
            raise ValueError("duplicate pairs in merge table")
        object.__setattr__(self, "rank", {p: i for i, p in enumerate(self.merges)})

    def __len__(self) -> int:
        return len(self.merges)

    def to_text(self) -> str:
        """One merge per line, ``left right``; line order is the rank."""
        return "\n".join(f"{a} {b}" for a, b in self.merges)

    @classmethod
    def from_text(cls, text: str) -> MergeTable:
        merges = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split(" ")
            if len(parts) != 2:
                raise ValueError(f"merge table line {lineno}: expected 'left right'")
            merges.append((parts[0], parts[1]))
        return cls(tuple(merges))


def learn_bpe(tokens: Iterable[str], num_merges: int) -> MergeTable:
    """Learn up to ``num_merges`` merges from a token stream.

    Words start as character sequences with an implicit end at the word
    boundary (no explicit end-of-word symbol).  Learning stops early once
    no adjacent pair remains, i.e. every word is a single symbol.
    """
    if num_merges < 0:
        raise ValueError("num_merges must be >= 0")
    vocab = Counter(tokens)
    words: list[list[str]] = [list(w) for w in vocab]
    freqs: list[int] = [vocab[w] for w in vocab]
    merges: list[tuple[str, str]] = []
    for _ in range(num_merges):
        pair_counts: Counter[tuple[str, str]] = Counter()
        for symbols, freq in zip(words, freqs):
            for pair in zip(symbols, symbols[1:]):
                pair_counts[pair] += freq
        if not pair_counts:
            break
        best = min(pair_counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]
        merges.append(best)
        words = [_merge_word(symbols, best) for symbols in words]
    return MergeTable(tuple(merges))


def _merge_word(symbols: list[str], pair: tuple[str, str]) -> list[str]:
    """Merge every (non-overlapping, leftmost-first) occurrence of pair."""
    if len(symbols) < 2:
        return symbols
    out: list[str] = []
    i = 0
    while i < len(symbols):
        if i + 1 < len(symbols) and (symbols[i], symbols[i + 1]) == pair:
            out.append(symbols[i] + symbols[i + 1])
            i += 2
        else:
            out.append(symbols[i])
            i += 1
    return out


def apply_bpe(
    table: MergeTable,
    token: str,
    protected: Callable[[str], bool] | None = None,
) -> list[str]:
    """Segment one token by greedy application in ascending rank order.

    Tokens accepted by the ``protected`` predicate pass through whole;
    all output pieces except the last carry the ``@@`` marker.
    """
    if protected is not None and protected(token):
        return [token]
    if len(token) < 2:
        return [token]
    symbols = list(token)
    rank = table.rank
    while len(symbols) > 1:
        best: tuple[str, str] | None = None
        best_rank = len(table.merges)
        for pair in zip(symbols, symbols[1:]):
            r = rank.get(pair)
            if r is not None and r < best_rank:
                best, best_rank = pair, r
        if best is None:
            break
        symbols = _merge_word(symbols, best)
    if len(symbols) == 1:
        return symbols
    return [s + MARKER for s in symbols[:-1]] + [symbols[-1]]


def segment_line(
    table: MergeTable,
    line: str,
    protected: Callable[[str], bool] | None = None,
) -> str:
    """Apply BPE to every whitespace token of a line."""
    pieces: list[str] = []
    for token in line.split():
        pieces.extend(apply_bpe(table, token, protected))
    return " ".join(pieces)


def revert_bpe(subwords: list[str]) -> list[str]:
    """Concatenate marked runs back into whole tokens.

    The inverse of :func:`apply_bpe` over a whole sequence; raises
    :class:`DanglingMarker` when the sequence ends mid-word.
    """
    out: list[str] = []
    current: list[str] = []
    for piece in subwords:
        if piece.endswith(MARKER):
            current.append(piece[: -len(MARKER)])
        else:
            current.append(piece)
            out.append("".join(current))
            current = []
    if current:
        raise DanglingMarker(f"sequence ends on a continuation marker: {subwords[-1]!r}")
    return out


# ---------------------------------------------------------------------------
# Corpus statistics
# ---------------------------------------------------------------------------


def word_end_fragment_stats(lines: Iterable[str]) -> list[tuple[str, int]]:
    """Frequencies of final pieces of split words in a segmented corpus.

    A word-end fragment is a marker-free piece immediately preceded (in
    the same word) by a marked piece.  Whole, unsplit words contribute
    nothing.  Sorted by descending frequency, lexicographic on ties.
    """
    counts: Counter[str] = Counter()
    for line in lines:
        previous_marked = False
        for token in line.split():
            marked = token.endswith(MARKER)
            if previous_marked and not marked:
                counts[token] += 1
            previous_marked = marked
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


@dataclass(frozen=True)
class VocabReport:
    """Distinct-token counts per corpus variant, before and after BPE."""

    rows: tuple[tuple[str, int, int], ...]

    def to_text(self) -> str:
        name_width = max([len("variant")] + [len(r[0]) for r in self.rows])
        lines = [f"{'variant':<{name_width}}  {'vocab':>9}  {'vocab w/ BPE':>12}"]
        for name, size, size_bpe in self.rows:
            lines.append(f"{name:<{name_width}}  {size:>9}  {size_bpe:>12}")
        return "\n".join(lines)


def vocab_stats(
    variants: list[tuple[str, Iterable[str], MergeTable]],
    protected: Callable[[str], bool] | None = None,
) -> VocabReport:
    """Vocabulary sizes per named variant, before and after segmentation.

    Each variant is (name, token stream, merge table for that variant).
    """
    rows = []
    for name, tokens, table in variants:
        vocab = set(tokens)
        segmented: set[str] = set()
        for token in vocab:
            segmented.update(apply_bpe(table, token, protected))
        rows.append((name, len(vocab), len(segmented)))
    return VocabReport(tuple(rows))
