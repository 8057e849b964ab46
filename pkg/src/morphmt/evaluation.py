"""Corpus-level BLEU and the diagnostic analyses of system output.

* :func:`bleu` - classic corpus BLEU-4: geometric mean of modified
  n-gram precisions times the brevity penalty, no smoothing by default
  (any zero precision yields 0.0); optional add-one smoothing for tiny
  test sets.
* :func:`novel_forms` - tokens produced by the system that occur neither
  in the training target vocabulary nor in the aligned source sentence;
  a novel form is confirmed when the aligned reference contains it.
* :func:`wellformedness` - per-line interleaving validation, aggregating
  error kinds and counts.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from . import interleave

__all__ = [
    "EmptyCorpus",
    "NovelFormReport",
    "WellformednessReport",
    "bleu",
    "novel_forms",
    "wellformedness",
]

MAX_ORDER = 4


class EmptyCorpus(ValueError):
    """BLEU is undefined for an empty corpus."""


def _ngrams(tokens: list[str], order: int) -> Counter[tuple[str, ...]]:
    return Counter(
        tuple(tokens[i : i + order]) for i in range(len(tokens) - order + 1)
    )


def bleu(
    hypotheses: list[str],
    references: list[str],
    lowercase: bool = False,
    smooth: bool = False,
) -> float:
    """Corpus BLEU-4 in [0, 100] for one reference per sentence.

    With ``smooth`` set, add-one smoothing is applied to the precisions
    of order 2 and above, which keeps tiny test sets off the hard zero.
    """
    if len(hypotheses) != len(references):
        raise ValueError(
            f"{len(hypotheses)} hypotheses vs {len(references)} references"
        )
    if not hypotheses:
        raise EmptyCorpus("no sentences to score")
    if lowercase:
        hypotheses = [h.lower() for h in hypotheses]
        references = [r.lower() for r in references]

    matches = [0] * MAX_ORDER
    totals = [0] * MAX_ORDER
    hyp_length = 0
    ref_length = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_tokens = hyp.split()
        ref_tokens = ref.split()
        hyp_length += len(hyp_tokens)
        ref_length += len(ref_tokens)
        for n in range(1, MAX_ORDER + 1):
            hyp_ngrams = _ngrams(hyp_tokens, n)
            ref_ngrams = _ngrams(ref_tokens, n)
            totals[n - 1] += sum(hyp_ngrams.values())
            matches[n - 1] += sum(
                min(count, ref_ngrams[ngram]) for ngram, count in hyp_ngrams.items()
            )

    if hyp_length == 0:
        return 0.0
    # Orders with no hypothesis n-grams at all (corpus shorter than the
    # order) are undefined rather than zero and drop out of the mean, so
    # that identical corpora always score 100.
    log_sum = 0.0
    orders = 0
    for n in range(1, MAX_ORDER + 1):
        m, t = matches[n - 1], totals[n - 1]
        if t == 0:
            continue
        if smooth and n > 1:
            m, t = m + 1, t + 1
        if m == 0:
            return 0.0
        log_sum += math.log(m / t)
        orders += 1
    precision = math.exp(log_sum / orders)
    if hyp_length < ref_length:
        brevity_penalty = math.exp(1.0 - ref_length / hyp_length)
    else:
        brevity_penalty = 1.0
    return 100.0 * brevity_penalty * precision


# ---------------------------------------------------------------------------
# Novel surface forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NovelFormReport:
    """Novel-form counts: occurrences, distinct types, reference hits."""

    novel_tokens: int
    novel_types: int
    confirmed_by_reference: int
    items: tuple[tuple[str, int, bool], ...]  # (token, sentence index, confirmed)

    def to_text(self) -> str:
        lines = [
            f"novel tokens: {self.novel_tokens}",
            f"novel types: {self.novel_types}",
            f"confirmed by reference: {self.confirmed_by_reference}",
        ]
        for token, index, confirmed in self.items:
            status = "confirmed" if confirmed else "unconfirmed"
            lines.append(f"  {index}\t{token}\t{status}")
        return "\n".join(lines)


def novel_forms(
    outputs: list[str],
    training_vocab: Iterable[str],
    source_sentences: list[str],
    references: list[str],
    lowercase: bool = False,
) -> NovelFormReport:
    """Count output tokens absent from training data and source sentence.

    A token is novel iff it is not in the training target vocabulary and
    not in its own source sentence (verbatim copies do not count); it is
    confirmed iff the aligned reference contains it.  Matching is exact
    and case-sensitive unless ``lowercase`` is set.
    """
    if not (len(outputs) == len(source_sentences) == len(references)):
        raise ValueError("outputs, sources and references must align")

    def fold(text: str) -> str:
        return text.lower() if lowercase else text

    vocab = {fold(token) for token in training_vocab}
    items: list[tuple[str, int, bool]] = []
    confirmed_types: set[str] = set()
    novel_types: set[str] = set()
    for index, (out, src, ref) in enumerate(
        zip(outputs, source_sentences, references)
    ):
        source_tokens = {fold(t) for t in src.split()}
        reference_tokens = {fold(t) for t in ref.split()}
        for token in out.split():
            folded = fold(token)
            if folded in vocab or folded in source_tokens:
                continue
            confirmed = folded in reference_tokens
            items.append((token, index, confirmed))
            novel_types.add(folded)
            if confirmed:
                confirmed_types.add(folded)
    return NovelFormReport(
        novel_tokens=len(items),
        novel_types=len(novel_types),
        confirmed_by_reference=len(confirmed_types),
        items=tuple(items),
    )


# ---------------------------------------------------------------------------
# Output well-formedness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WellformednessReport:
    """Per-line interleaving errors aggregated over a corpus."""

    total_lines: int
    errors: tuple[tuple[int, str, int], ...]  # (line index, kind, position)

    @property
    def counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for _, kind, _ in self.errors:
            counts[kind] = counts.get(kind, 0) + 1
        return counts

    @property
    def malformed_lines(self) -> int:
        return len({line for line, _, _ in self.errors})

    def to_text(self) -> str:
        lines = [
            f"lines checked: {self.total_lines}",
            f"malformed lines: {self.malformed_lines}",
        ]
        for kind, count in sorted(self.counts.items()):
            lines.append(f"  {kind}: {count}")
        for line, kind, position in self.errors:
            lines.append(f"  line {line}: {kind} at token {position}")
        return "\n".join(lines)


def wellformedness(lines: Iterable[str], mode: str) -> WellformednessReport:
    """Validate every line's tag/word interleaving (BPE already reverted)."""
    errors: list[tuple[int, str, int]] = []
    total = 0
    for index, line in enumerate(lines):
        total += 1
        try:
            interleave.decode(line.split(), mode)
        except interleave.WellformednessError as exc:
            errors.append((index, exc.kind, exc.position))
    return WellformednessReport(total_lines=total, errors=tuple(errors))
