"""End-to-end corpus pipeline: filter, prepare, translate, postprocess.

The pipeline turns a parallel corpus into one of five training
representations, hands the prepared text to an external line-oriented
translation backend, and deterministically turns the backend's output
back into inflected surface text:

    revert BPE -> decode interleaving -> merge compounds (split mode)
    -> generate surface forms (lemma fallback on failure)

Every input line yields exactly one output line; malformed segments are
repaired rather than fatal (an orphan word is emitted verbatim, an
orphan tag is dropped) and all repairs, generation fallbacks and
well-formedness violations are reported alongside the text.
"""

from __future__ import annotations

import random
import subprocess
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Sequence

from . import evaluation, interleave
from .bpe import (
    DanglingMarker,
    MARKER,
    MergeTable,
    learn_bpe,
    revert_bpe,
    segment_line,
)
from .compounds import (
    CompoundSplit,
    is_separator_token,
    merge_compound,
    rejoin_split_tokens,
    split_compound,
)
from .morphlex import (
    GenerationReport,
    NoCompatibleAnalysis,
    ParadigmLexicon,
    analyze,
    disambiguate,
    generate_with_fallback,
)
from .tagsets import (
    GermanAnalysis,
    MalformedAnalysis,
    MorphAnalysis,
    is_bare_token,
    is_czech_tag,
    is_feature_token,
    parse_czech_tag,
    parse_feature_seq,
    parse_stem_side,
    KIND_BARE,
)

__all__ = [
    "MODE_GERMAN_STEMMED_SPLIT",
    "PIPELINE_MODES",
    "BackendFailure",
    "PipelineConfig",
    "ParallelCorpus",
    "PreparedVariant",
    "PostprocessResult",
    "filter_corpus",
    "prepare_variant",
    "translate_external",
    "postprocess",
    "tag_predicate_for_mode",
]

MODE_GERMAN_STEMMED_SPLIT = "german-stemmed-split"
PIPELINE_MODES = interleave.MODES + (MODE_GERMAN_STEMMED_SPLIT,)

CZECH_DEFAULT_MERGES = 49500
GERMAN_DEFAULT_MERGES = 29500
BASE_MAXLEN = 50
GERMAN_MINLEN = 5


class BackendFailure(RuntimeError):
    """The external translation backend misbehaved."""


def _base_mode(mode: str) -> str:
    """The interleaving mode underlying a pipeline mode."""
    if mode == MODE_GERMAN_STEMMED_SPLIT:
        return interleave.MODE_GERMAN_STEMMED
    return mode


def _is_german(mode: str) -> bool:
    return mode.startswith("german")


@dataclass
class PipelineConfig:
    """Run configuration; use :meth:`for_mode` for per-mode defaults.

    Interleaving a tag per word doubles sentence length, so interleaved
    modes default ``maxlen`` to twice the baseline value.
    """

    mode: str
    bpe_merges: int
    maxlen: int
    minlen: int = 1
    sample_size: int | None = None
    seed: int = 0
    protect_tags: bool = False
    joint_bpe: bool = True
    split_source_hyphens: bool = False
    lexicon_path: str | None = None
    merge_table_path: str | None = None

    def __post_init__(self) -> None:
        if self.mode not in PIPELINE_MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not (self.maxlen >= self.minlen >= 1):
            raise ValueError(
                f"need maxlen >= minlen >= 1, got {self.maxlen} / {self.minlen}"
            )
        if self.bpe_merges < 0:
            raise ValueError("bpe_merges must be >= 0")

    @classmethod
    def for_mode(cls, mode: str, **overrides) -> PipelineConfig:
        values = dict(
            mode=mode,
            bpe_merges=GERMAN_DEFAULT_MERGES if _is_german(mode) else CZECH_DEFAULT_MERGES,
            maxlen=BASE_MAXLEN if mode == interleave.MODE_BASELINE else 2 * BASE_MAXLEN,
            minlen=GERMAN_MINLEN if _is_german(mode) else 1,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def snapshot(self) -> dict:
        return {
            "mode": self.mode,
            "bpe_merges": self.bpe_merges,
            "maxlen": self.maxlen,
            "minlen": self.minlen,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "protect_tags": self.protect_tags,
            "joint_bpe": self.joint_bpe,
            "split_source_hyphens": self.split_source_hyphens,
            "lexicon_path": self.lexicon_path,
            "merge_table_path": self.merge_table_path,
        }


@dataclass
class ParallelCorpus:
    """Aligned (source line, target line) pairs."""

    pairs: list[tuple[str, str]]

    @classmethod
    def from_lines(
        cls, source_lines: Sequence[str], target_lines: Sequence[str]
    ) -> ParallelCorpus:
        if len(source_lines) != len(target_lines):
            raise ValueError(
                f"misaligned corpus: {len(source_lines)} source lines "
                f"vs {len(target_lines)} target lines"
            )
        return cls(list(zip(source_lines, target_lines)))

    @property
    def sources(self) -> list[str]:
        return [s for s, _ in self.pairs]

    @property
    def targets(self) -> list[str]:
        return [t for _, t in self.pairs]

    def __len__(self) -> int:
        return len(self.pairs)


def filter_corpus(corpus: ParallelCorpus, cfg: PipelineConfig) -> ParallelCorpus:
    """Keep pairs whose target length is within [minlen, maxlen] tokens.

    Bounds are inclusive.  When ``cfg.sample_size`` is set, a uniform
    random sample is drawn with ``cfg.seed``; sampled pairs keep their
    original corpus order.
    """
    kept = [
        pair
        for pair in corpus.pairs
        if cfg.minlen <= len(pair[1].split()) <= cfg.maxlen
    ]
    if cfg.sample_size is not None and cfg.sample_size < len(kept):
        rng = random.Random(cfg.seed)
        indices = sorted(rng.sample(range(len(kept)), cfg.sample_size))
        kept = [kept[i] for i in indices]
    return ParallelCorpus(kept)


# ---------------------------------------------------------------------------
# Variant preparation
# ---------------------------------------------------------------------------


def tag_predicate_for_mode(mode: str) -> Callable[[str], bool]:
    """Predicate marking tag-like tokens for BPE protection."""
    if _is_german(mode):
        def german(token: str) -> bool:
            return (
                is_feature_token(token)
                or is_bare_token(token)
                or is_separator_token(token)
            )

        return german
    return is_czech_tag


@dataclass
class PreparedVariant:
    """Output of :func:`prepare_variant`."""

    corpus: ParallelCorpus
    source_table: MergeTable
    target_table: MergeTable
    dropped: list[tuple[int, str]] = field(default_factory=list)


def _analyses_for(
    lex: ParadigmLexicon, tokens: list[str], parse_tags: list[str] | None
) -> list[MorphAnalysis]:
    """One analysis per token, disambiguated when parse tags are given.

    Without parse tags the first candidate in canonical order is taken;
    every candidate of a surface regenerates that same surface, so the
    choice never affects round-tripping.
    """
    if parse_tags is not None and len(parse_tags) != len(tokens):
        raise ValueError(
            f"{len(tokens)} tokens but {len(parse_tags)} parse tags"
        )
    analyses = []
    for position, token in enumerate(tokens):
        candidates = analyze(lex, token)
        if not candidates:
            raise MalformedAnalysis(f"no analysis for {token!r}")
        if parse_tags is None:
            analyses.append(candidates[0])
        else:
            analyses.append(disambiguate(candidates, parse_tags[position]))
    return analyses


def _encode_target(analyses: list[MorphAnalysis], mode: str) -> list[str]:
    if mode != MODE_GERMAN_STEMMED_SPLIT:
        return list(interleave.encode(analyses, mode).tokens)
    tokens: list[str] = []
    for a in analyses:
        if getattr(a.tag, "kind", None) == KIND_BARE:
            tokens.extend(interleave.encode([a], interleave.MODE_GERMAN_STEMMED).tokens)
            continue
        analysis = a.to_german_analysis()
        split = split_compound(analysis)
        if isinstance(split, CompoundSplit):
            tokens.extend(split.tokens)
        else:
            tokens.extend(
                interleave.encode([a], interleave.MODE_GERMAN_STEMMED).tokens
            )
    return tokens


def _split_hyphens(tokens: list[str]) -> list[str]:
    """Aggressive source-side hyphen splitting (optional normalization)."""
    out: list[str] = []
    for token in tokens:
        if "-" in token.strip("-"):
            parts = token.split("-")
            for i, part in enumerate(parts):
                out.append(part + "-" if i < len(parts) - 1 else part)
        else:
            out.append(token)
    return out


def prepare_variant(
    corpus: ParallelCorpus,
    cfg: PipelineConfig,
    lex: ParadigmLexicon | None = None,
    target_parse_tags: Sequence[list[str]] | None = None,
    source_tags: Sequence[list[str]] | None = None,
) -> PreparedVariant:
    """Encode the target side per mode, learn BPE on the result, apply it.

    Baseline mode passes the target through untouched except for BPE and
    needs no lexicon.  Sentences whose target cannot be analysed (or
    disambiguated against the supplied parse tags) are dropped and
    recorded in ``dropped`` as (original pair index, reason).  Source
    tags, when given, are interleaved into the source side; hyphen
    splitting (``cfg.split_source_hyphens``) runs before tagging, so
    source tags must align with the split tokens.
    """
    if cfg.mode != interleave.MODE_BASELINE and lex is None:
        raise ValueError(f"mode {cfg.mode!r} needs a lexicon")
    encoded: list[tuple[str, str]] = []
    dropped: list[tuple[int, str]] = []
    for index, (source, target) in enumerate(corpus.pairs):
        target_tokens = target.split()
        if cfg.mode == interleave.MODE_BASELINE:
            target_out = target_tokens
        else:
            tags = target_parse_tags[index] if target_parse_tags is not None else None
            try:
                analyses = _analyses_for(lex, target_tokens, tags)
            except (MalformedAnalysis, NoCompatibleAnalysis) as exc:
                dropped.append((index, str(exc)))
                continue
            target_out = _encode_target(analyses, cfg.mode)
        source_tokens = source.split()
        if cfg.split_source_hyphens:
            source_tokens = _split_hyphens(source_tokens)
        if source_tags is not None:
            source_tokens = interleave.tag_source(source_tokens, source_tags[index])
        encoded.append((" ".join(source_tokens), " ".join(target_out)))

    protected = tag_predicate_for_mode(cfg.mode) if cfg.protect_tags else None
    source_lines = [s for s, _ in encoded]
    target_lines = [t for _, t in encoded]

    def tokens_of(lines: list[str]) -> list[str]:
        return [token for line in lines for token in line.split()]

    if cfg.joint_bpe:
        table = learn_bpe(tokens_of(source_lines + target_lines), cfg.bpe_merges)
        source_table = target_table = table
    else:
        source_table = learn_bpe(tokens_of(source_lines), cfg.bpe_merges)
        target_table = learn_bpe(tokens_of(target_lines), cfg.bpe_merges)

    pairs = [
        (
            segment_line(source_table, s, protected),
            segment_line(target_table, t, protected),
        )
        for s, t in encoded
    ]
    return PreparedVariant(ParallelCorpus(pairs), source_table, target_table, dropped)


# ---------------------------------------------------------------------------
# External backend
# ---------------------------------------------------------------------------


def translate_external(
    lines: list[str],
    backend: Sequence[str] | Callable[[list[str]], list[str]],
) -> list[str]:
    """Run the translation backend over prepared lines.

    ``backend`` is either a callable (for in-process mocks) or an argv
    sequence for a process that reads input lines on stdin and writes
    exactly one output line per input line to stdout.  The identity
    backend ``["cat"]`` is supported for testing.  Raises
    :class:`BackendFailure` on nonzero exit or line-count mismatch.
    """
    if callable(backend):
        output = list(backend(list(lines)))
    else:
        data = "".join(line + "\n" for line in lines)
        try:
            proc = subprocess.run(
                list(backend),
                input=data,
                capture_output=True,
                text=True,
            )
        except OSError as exc:
            raise BackendFailure(f"cannot run backend {backend!r}: {exc}") from exc
        if proc.returncode != 0:
            raise BackendFailure(
                f"backend exited with {proc.returncode}: {proc.stderr.strip()}"
            )
        output = proc.stdout.splitlines()
    if len(output) != len(lines):
        raise BackendFailure(
            f"backend wrote {len(output)} lines for {len(lines)} inputs"
        )
    return output


# ---------------------------------------------------------------------------
# Postprocessing
# ---------------------------------------------------------------------------

EVENT_DROPPED_TAG = "dropped-tag"
EVENT_WORD_WITHOUT_TAG = "word-without-tag"
EVENT_DANGLING_MARKER = "dangling-marker"
EVENT_ORPHAN_SEPARATOR = "orphan-separator"
EVENT_UNPARSEABLE_STEM = "unparseable-stem"


@dataclass
class _LineResult:
    text: str
    report: GenerationReport
    events: list[tuple[int, str]]
    wf_errors: list[tuple[str, int]]
    unknown_modifiers: list[str]


@dataclass
class PostprocessResult:
    """Surface text plus every diagnostic collected on the way."""

    lines: list[str]
    report: GenerationReport
    wellformedness: evaluation.WellformednessReport
    recovery_events: list[tuple[int, int, str]] = field(default_factory=list)
    unknown_modifiers: list[tuple[int, str]] = field(default_factory=list)

    @property
    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


def _revert_lenient(tokens: list[str], events: list[tuple[int, str]]) -> list[str]:
    tokens = list(tokens)
    while True:
        try:
            return revert_bpe(tokens)
        except DanglingMarker:
            events.append((len(tokens) - 1, EVENT_DANGLING_MARKER))
            tokens[-1] = tokens[-1][: -len(MARKER)]


def _surface_czech(
    tokens: list[str],
    mode: str,
    lex: ParadigmLexicon | None,
    report: GenerationReport,
    events: list[tuple[int, str]],
) -> list[str]:
    words: list[str] = []
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if not is_czech_tag(token):
            events.append((i, EVENT_WORD_WITHOUT_TAG))
            words.append(token)
            i += 1
            continue
        if i + 1 >= len(tokens) or is_czech_tag(tokens[i + 1]):
            events.append((i, EVENT_DROPPED_TAG))
            i += 1
            continue
        word = tokens[i + 1]
        if mode == interleave.MODE_SERIALIZATION:
            words.append(word)
        else:
            words.append(
                generate_with_fallback(lex, word, parse_czech_tag(token), report)
            )
        i += 2
    return words


def _surface_german(
    tokens: list[str],
    lex: ParadigmLexicon,
    report: GenerationReport,
    events: list[tuple[int, str]],
    unknown_modifiers: list[str],
) -> list[str]:
    words: list[str] = []
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if is_feature_token(token):
            events.append((i, EVENT_DROPPED_TAG))
            i += 1
            continue
        if is_bare_token(token):
            words.append(token[: token.index("[")])
            i += 1
            continue
        if i + 1 >= len(tokens) or not is_feature_token(tokens[i + 1]):
            events.append((i, EVENT_WORD_WITHOUT_TAG))
            words.append(token)
            i += 1
            continue
        feature_seq = parse_feature_seq(tokens[i + 1])
        try:
            segments = parse_stem_side(token)
        except MalformedAnalysis:
            events.append((i, EVENT_UNPARSEABLE_STEM))
            words.append(token)
            i += 2
            continue
        analysis = GermanAnalysis(segments, feature_seq, inflected=True)
        if len(segments) > 1:
            split = split_compound(analysis)
            if isinstance(split, CompoundSplit):
                analysis = merge_compound(split, lex, unknown_modifiers)
        words.append(
            generate_with_fallback(lex, analysis.stem_text, feature_seq, report)
        )
        i += 2
    return words


def postprocess_line(line: str, mode: str, lex: ParadigmLexicon | None) -> _LineResult:
    """Deterministically turn one backend output line into surface text."""
    report = GenerationReport()
    events: list[tuple[int, str]] = []
    wf_errors: list[tuple[str, int]] = []
    unknown_modifiers: list[str] = []
    tokens = _revert_lenient(line.split(), events)

    if mode == interleave.MODE_BASELINE:
        return _LineResult(" ".join(tokens), report, events, wf_errors, unknown_modifiers)

    if mode == MODE_GERMAN_STEMMED_SPLIT:
        tokens, orphans = rejoin_split_tokens(tokens)
        events.extend((pos, EVENT_ORPHAN_SEPARATOR) for pos, _ in orphans)

    try:
        interleave.decode(tokens, _base_mode(mode))
    except interleave.WellformednessError as exc:
        wf_errors.append((exc.kind, exc.position))

    if _is_german(mode):
        words = _surface_german(tokens, lex, report, events, unknown_modifiers)
    else:
        words = _surface_czech(tokens, mode, lex, report, events)
    return _LineResult(" ".join(words), report, events, wf_errors, unknown_modifiers)


def postprocess(
    lines: list[str],
    cfg: PipelineConfig,
    lex: ParadigmLexicon | None = None,
    jobs: int = 1,
) -> PostprocessResult:
    """Postprocess backend output back to inflected surface sentences.

    Baseline mode is exactly BPE reversion; serialization needs no
    lexicon either, as its word tokens are already surface forms.  Every
    input line yields an output line; see the module docstring for the
    recovery rules.
    """
    needs_lexicon = cfg.mode not in (
        interleave.MODE_BASELINE,
        interleave.MODE_SERIALIZATION,
    )
    if needs_lexicon and lex is None:
        raise ValueError(f"mode {cfg.mode!r} needs a lexicon")
    worker = partial(postprocess_line, mode=cfg.mode, lex=lex)
    if jobs > 1 and len(lines) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(
                executor.map(worker, lines, chunksize=max(1, len(lines) // (jobs * 4)))
            )
    else:
        results = [worker(line) for line in lines]

    report = GenerationReport()
    wf_errors: list[tuple[int, str, int]] = []
    recovery_events: list[tuple[int, int, str]] = []
    unknown_modifiers: list[tuple[int, str]] = []
    out_lines: list[str] = []
    for index, result in enumerate(results):
        out_lines.append(result.text)
        report.merge(result.report)
        wf_errors.extend((index, kind, pos) for kind, pos in result.wf_errors)
        recovery_events.extend((index, pos, kind) for pos, kind in result.events)
        unknown_modifiers.extend((index, lexeme) for lexeme in result.unknown_modifiers)
    wf_report = evaluation.WellformednessReport(
        total_lines=len(lines), errors=tuple(wf_errors)
    )
    return PostprocessResult(
        lines=out_lines,
        report=report,
        wellformedness=wf_report,
        recovery_events=recovery_events,
        unknown_modifiers=unknown_modifiers,
    )
