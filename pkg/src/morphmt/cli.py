"""Command-line interface: one subcommand per pipeline stage.

Every subcommand reads standard input when no input file is given and
writes results to standard output, with diagnostics on standard error,
so stages can be piped together.  All text I/O is strict UTF-8; invalid
byte sequences abort with a diagnostic.  A run manifest (configuration,
seed, input checksums, per-stage counters) is emitted for every run:
next to the output file when one is written, to standard error
otherwise.

Configuration precedence is flags > config file (``key=value`` lines,
``--config``) > built-in defaults.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path

from . import __version__
from . import bpe as bpe_mod
from . import evaluation, interleave, morphlex, pipeline
from .compounds import CompoundSplit, merge_compound, rejoin_split_tokens, split_compound
from .tagsets import (
    GermanAnalysis,
    MalformedAnalysis,
    MalformedTag,
    format_analysis,
    format_tag,
    is_bare_token,
    is_feature_token,
    parse_feature_seq,
    parse_german_analysis,
    parse_stem_side,
)

__all__ = ["main", "RunManifest"]


class CliError(RuntimeError):
    """Operational failure reported with a diagnostic and exit code 1."""


@dataclass
class RunManifest:
    """Everything needed to reproduce a run byte-for-byte."""

    tool_version: str
    command: str
    config: dict
    input_checksums: dict[str, str]
    counters: dict[str, int] = field(default_factory=dict)
    seed: int | None = None

    def to_json(self, compact: bool = False) -> str:
        data = dataclasses.asdict(self)
        if compact:
            return json.dumps(data, ensure_ascii=False, sort_keys=True)
        return json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------


def _decode(data: bytes, origin: str) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CliError(f"{origin}: invalid UTF-8 at byte {exc.start}") from exc


def read_text(path: str | None, checksums: dict[str, str]) -> str:
    if path is None or path == "-":
        data = sys.stdin.buffer.read()
        origin = "<stdin>"
    else:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise CliError(str(exc)) from exc
        origin = path
    checksums[origin] = hashlib.sha256(data).hexdigest()
    return _decode(data, origin)


def read_lines(path: str | None, checksums: dict[str, str]) -> list[str]:
    return read_text(path, checksums).splitlines()


def write_lines(path: str | None, lines: list[str]) -> None:
    text = "".join(line + "\n" for line in lines)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def emit_manifest(manifest: RunManifest, output_path: str | None, manifest_path: str | None) -> None:
    if manifest_path is not None:
        Path(manifest_path).write_text(manifest.to_json() + "\n", encoding="utf-8")
        return
    if output_path is not None and output_path != "-":
        sidecar = Path(output_path).with_name(Path(output_path).name + ".manifest.json")
        sidecar.write_text(manifest.to_json() + "\n", encoding="utf-8")
        return
    print(manifest.to_json(compact=True), file=sys.stderr)


# ---------------------------------------------------------------------------
# Config file and precedence
# ---------------------------------------------------------------------------


def load_config_file(path: str | None) -> dict[str, str]:
    if path is None:
        return {}
    values: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise CliError(f"{path}:{lineno}: expected key=value, got {line!r}")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in {"1", "true", "yes", "on"}:
        return True
    if lowered in {"0", "false", "no", "off"}:
        return False
    raise CliError(f"not a boolean: {text!r}")


def setting(args: argparse.Namespace, config: dict[str, str], name: str, cast=str, default=None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    if name in config:
        raw = config[name]
        return _bool(raw) if cast is bool else cast(raw)
    return default


def _load_lexicon(path: str | None, checksums: dict[str, str]) -> morphlex.ParadigmLexicon:
    if path is None:
        raise CliError("a lexicon is required (--lexicon)")
    return morphlex.load_lexicon(read_text(path, checksums))


def _pipeline_config(args: argparse.Namespace, config: dict[str, str]) -> pipeline.PipelineConfig:
    mode = setting(args, config, "mode")
    if mode is None:
        raise CliError("a mode is required (--mode)")
    return pipeline.PipelineConfig.for_mode(
        mode,
        bpe_merges=setting(args, config, "merges", int),
        maxlen=setting(args, config, "maxlen", int),
        minlen=setting(args, config, "minlen", int),
        sample_size=setting(args, config, "sample_size", int),
        seed=setting(args, config, "seed", int),
        protect_tags=setting(args, config, "protect_tags", bool),
        joint_bpe=setting(args, config, "joint_bpe", bool),
        split_source_hyphens=setting(args, config, "split_source_hyphens", bool),
        lexicon_path=setting(args, config, "lexicon"),
        merge_table_path=setting(args, config, "merge_table"),
    )


def _read_tag_lines(path: str | None, checksums: dict[str, str]) -> list[list[str]] | None:
    if path is None:
        return None
    return [line.split() for line in read_lines(path, checksums)]


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def cmd_prepare(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    cfg = _pipeline_config(args, config)
    lex = None
    if cfg.mode != interleave.MODE_BASELINE:
        lex = _load_lexicon(cfg.lexicon_path, checksums)
    target_lines = read_lines(args.target, checksums)
    if args.source is not None:
        source_lines = read_lines(args.source, checksums)
    else:
        source_lines = [""] * len(target_lines)
    corpus = pipeline.ParallelCorpus.from_lines(source_lines, target_lines)
    if args.filter or cfg.sample_size is not None:
        corpus = pipeline.filter_corpus(corpus, cfg)
    prepared = pipeline.prepare_variant(
        corpus,
        cfg,
        lex,
        target_parse_tags=_read_tag_lines(args.parse_tags, checksums),
        source_tags=_read_tag_lines(args.source_tags, checksums),
    )
    write_lines(args.out_target, prepared.corpus.targets)
    if args.out_source is not None:
        write_lines(args.out_source, prepared.corpus.sources)
    if args.merge_table_out is not None:
        Path(args.merge_table_out).write_text(
            prepared.target_table.to_text() + "\n", encoding="utf-8"
        )
    manifest = RunManifest(
        tool_version=__version__,
        command="prepare",
        config=cfg.snapshot(),
        input_checksums=checksums,
        counters={
            "pairs_in": len(corpus),
            "pairs_out": len(prepared.corpus),
            "dropped": len(prepared.dropped),
            "merges_learned": len(prepared.target_table),
        },
        seed=cfg.seed,
    )
    for index, reason in prepared.dropped:
        print(f"morphmt: dropped pair {index}: {reason}", file=sys.stderr)
    emit_manifest(manifest, args.out_target, args.manifest)
    return 0


def cmd_bpe_learn(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    merges = setting(args, config, "merges", int)
    if merges is None:
        raise CliError("--merges is required")
    lines = read_lines(args.input, checksums)
    table = bpe_mod.learn_bpe(
        (token for line in lines for token in line.split()), merges
    )
    write_lines(args.output, table.to_text().splitlines())
    manifest = RunManifest(
        tool_version=__version__,
        command="bpe-learn",
        config={"merges": merges},
        input_checksums=checksums,
        counters={"merges_learned": len(table)},
    )
    emit_manifest(manifest, args.output, args.manifest)
    return 0


def cmd_bpe_apply(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    table_path = setting(args, config, "merge_table")
    if table_path is None:
        raise CliError("--merge-table is required")
    table = bpe_mod.MergeTable.from_text(read_text(table_path, checksums))
    protect = setting(args, config, "protect_tags", bool, False)
    mode = setting(args, config, "mode")
    if protect and mode is None:
        raise CliError("--protect-tags needs --mode to pick the tag shape")
    protected = pipeline.tag_predicate_for_mode(mode) if protect else None
    lines = read_lines(args.input, checksums)
    jobs = setting(args, config, "jobs", int, 1)
    worker = partial(bpe_mod.segment_line, table, protected=protected)
    if jobs > 1 and len(lines) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            out = list(executor.map(worker, lines, chunksize=max(1, len(lines) // (jobs * 4))))
    else:
        out = [worker(line) for line in lines]
    write_lines(args.output, out)
    manifest = RunManifest(
        tool_version=__version__,
        command="bpe-apply",
        config={"merge_table": table_path, "protect_tags": protect, "mode": mode},
        input_checksums=checksums,
        counters={"lines": len(lines)},
    )
    emit_manifest(manifest, args.output, args.manifest)
    return 0


def cmd_bpe_revert(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    lines = read_lines(args.input, checksums)
    out = []
    for lineno, line in enumerate(lines, 1):
        try:
            out.append(" ".join(bpe_mod.revert_bpe(line.split())))
        except bpe_mod.DanglingMarker as exc:
            raise CliError(f"line {lineno}: {exc}") from exc
    write_lines(args.output, out)
    manifest = RunManifest(
        tool_version=__version__,
        command="bpe-revert",
        config={},
        input_checksums=checksums,
        counters={"lines": len(lines)},
    )
    emit_manifest(manifest, args.output, args.manifest)
    return 0


def cmd_analyze(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    lex = _load_lexicon(setting(args, config, "lexicon"), checksums)
    lines = read_lines(args.input, checksums)
    out = []
    unknown = 0
    for surface in lines:
        surface = surface.strip()
        if not surface:
            continue
        candidates = morphlex.analyze(lex, surface)
        if not candidates:
            unknown += 1
        for candidate in candidates:
            out.append(f"{surface}\t{candidate.lemma}\t{candidate.tag_text}")
    write_lines(args.output, out)
    manifest = RunManifest(
        tool_version=__version__,
        command="analyze",
        config={"lexicon": setting(args, config, "lexicon")},
        input_checksums=checksums,
        counters={"surfaces": len(lines), "unknown": unknown},
    )
    emit_manifest(manifest, args.output, args.manifest)
    return 0


def cmd_generate(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    lex = _load_lexicon(setting(args, config, "lexicon"), checksums)
    lines = read_lines(args.input, checksums)
    report = morphlex.GenerationReport()
    out = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        columns = line.split("\t")
        if len(columns) != 2:
            raise CliError(f"line {lineno}: expected lemma<TAB>tag, got {line!r}")
        lemma, tag_text = columns
        try:
            tag = morphlex.parse_tag_text(tag_text)
        except (MalformedTag, MalformedAnalysis) as exc:
            raise CliError(f"line {lineno}: {exc}") from exc
        out.append(morphlex.generate_with_fallback(lex, lemma, tag, report))
    write_lines(args.output, out)
    if report.fallbacks:
        print(report.to_text(), file=sys.stderr)
    manifest = RunManifest(
        tool_version=__version__,
        command="generate",
        config={"lexicon": setting(args, config, "lexicon")},
        input_checksums=checksums,
        counters={"generated": report.total, "fallbacks": report.fallbacks},
    )
    emit_manifest(manifest, args.output, args.manifest)
    return 0


def cmd_split_compounds(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    lines = read_lines(args.input, checksums)
    out = []
    split_count = 0
    for lineno, line in enumerate(lines, 1):
        tokens: list[str] = []
        for token in line.split():
            try:
                analysis = parse_german_analysis(token)
            except MalformedAnalysis as exc:
                raise CliError(f"line {lineno}: {exc}") from exc
            if not analysis.inflected:
                tokens.append(format_analysis(analysis))
                continue
            result = split_compound(analysis)
            if isinstance(result, CompoundSplit):
                split_count += 1
                tokens.extend(result.tokens)
            else:
                tokens.append(result.stem_text)
                tokens.append(format_tag(result.feature_seq))
        out.append(" ".join(tokens))
    write_lines(args.output, out)
    manifest = RunManifest(
        tool_version=__version__,
        command="split-compounds",
        config={},
        input_checksums=checksums,
        counters={"lines": len(lines), "compounds_split": split_count},
    )
    emit_manifest(manifest, args.output, args.manifest)
    return 0


def cmd_merge_compounds(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    lex = _load_lexicon(setting(args, config, "lexicon"), checksums)
    lines = read_lines(args.input, checksums)
    out = []
    unknown_modifiers: list[str] = []
    merged_count = 0
    for line in lines:
        tokens, _ = rejoin_split_tokens(line.split())
        result_tokens: list[str] = []
        i = 0
        while i < len(tokens):
            token = tokens[i]
            if (
                i + 1 < len(tokens)
                and not is_feature_token(token)
                and not is_bare_token(token)
                and is_feature_token(tokens[i + 1])
            ):
                try:
                    segments = parse_stem_side(token)
                    feature_seq = parse_feature_seq(tokens[i + 1])
                except MalformedAnalysis as exc:
                    raise CliError(str(exc)) from exc
                analysis = GermanAnalysis(segments, feature_seq, inflected=True)
                if len(segments) > 1:
                    split = split_compound(analysis)
                    if isinstance(split, CompoundSplit):
                        analysis = merge_compound(split, lex, unknown_modifiers)
                        merged_count += 1
                result_tokens.append(format_analysis(analysis))
                i += 2
            else:
                result_tokens.append(token)
                i += 1
        out.append(" ".join(result_tokens))
    write_lines(args.output, out)
    for lexeme in unknown_modifiers:
        print(f"morphmt: unknown compound modifier {lexeme!r}", file=sys.stderr)
    manifest = RunManifest(
        tool_version=__version__,
        command="merge-compounds",
        config={"lexicon": setting(args, config, "lexicon")},
        input_checksums=checksums,
        counters={
            "lines": len(lines),
            "compounds_merged": merged_count,
            "unknown_modifiers": len(unknown_modifiers),
        },
    )
    emit_manifest(manifest, args.output, args.manifest)
    return 0


def cmd_translate(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    backend = setting(args, config, "backend")
    if backend is None:
        raise CliError("--backend is required")
    lines = read_lines(args.input, checksums)
    try:
        out = pipeline.translate_external(lines, shlex.split(backend))
    except pipeline.BackendFailure as exc:
        raise CliError(str(exc)) from exc
    write_lines(args.output, out)
    manifest = RunManifest(
        tool_version=__version__,
        command="translate",
        config={"backend": backend},
        input_checksums=checksums,
        counters={"lines": len(lines)},
    )
    emit_manifest(manifest, args.output, args.manifest)
    return 0


def cmd_postprocess(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    cfg = _pipeline_config(args, config)
    lex = None
    if cfg.mode not in (interleave.MODE_BASELINE, interleave.MODE_SERIALIZATION):
        lex = _load_lexicon(cfg.lexicon_path, checksums)
    lines = read_lines(args.input, checksums)
    jobs = setting(args, config, "jobs", int, 1)
    result = pipeline.postprocess(lines, cfg, lex, jobs=jobs)
    write_lines(args.output, result.lines)
    if result.report.fallbacks or result.wellformedness.errors:
        print(result.report.to_text(), file=sys.stderr)
        print(result.wellformedness.to_text(), file=sys.stderr)
    manifest = RunManifest(
        tool_version=__version__,
        command="postprocess",
        config=cfg.snapshot(),
        input_checksums=checksums,
        counters={
            "lines": len(lines),
            "generated": result.report.total,
            "fallbacks": result.report.fallbacks,
            "malformed_lines": result.wellformedness.malformed_lines,
            "recovery_events": len(result.recovery_events),
            "unknown_modifiers": len(result.unknown_modifiers),
        },
        seed=cfg.seed,
    )
    emit_manifest(manifest, args.output, args.manifest)
    return 0


def cmd_bleu(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    hypotheses = read_lines(args.hypotheses, checksums)
    references = read_lines(args.references, checksums)
    lowercase = setting(args, config, "lowercase", bool, False)
    smooth = setting(args, config, "smooth", bool, False)
    try:
        score = evaluation.bleu(hypotheses, references, lowercase=lowercase, smooth=smooth)
    except (evaluation.EmptyCorpus, ValueError) as exc:
        raise CliError(str(exc)) from exc
    print(f"{score:.2f}")
    manifest = RunManifest(
        tool_version=__version__,
        command="bleu",
        config={"lowercase": lowercase, "smooth": smooth},
        input_checksums=checksums,
        counters={"sentences": len(hypotheses)},
    )
    emit_manifest(manifest, None, args.manifest)
    return 0


def cmd_novel_forms(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    outputs = read_lines(args.input, checksums)
    train_lines = read_lines(args.train, checksums)
    sources = read_lines(args.source, checksums)
    references = read_lines(args.references, checksums)
    lowercase = setting(args, config, "lowercase", bool, False)
    vocab = {token for line in train_lines for token in line.split()}
    try:
        report = evaluation.novel_forms(outputs, vocab, sources, references, lowercase)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    print(report.to_text())
    manifest = RunManifest(
        tool_version=__version__,
        command="novel-forms",
        config={"lowercase": lowercase},
        input_checksums=checksums,
        counters={
            "novel_tokens": report.novel_tokens,
            "novel_types": report.novel_types,
            "confirmed": report.confirmed_by_reference,
        },
    )
    emit_manifest(manifest, None, args.manifest)
    return 0


def cmd_stats(args: argparse.Namespace, config: dict[str, str]) -> int:
    checksums: dict[str, str] = {}
    counters: dict[str, int] = {}
    if args.vocab:
        merges = setting(args, config, "merges", int, pipeline.GERMAN_DEFAULT_MERGES)
        variants = []
        for path in args.vocab:
            lines = read_lines(path, checksums)
            tokens = [token for line in lines for token in line.split()]
            table = bpe_mod.learn_bpe(tokens, merges)
            variants.append((path, tokens, table))
        report = bpe_mod.vocab_stats(variants)
        print(report.to_text())
        counters["variants"] = len(variants)
    elif args.word_ends is not None:
        lines = read_lines(args.word_ends if args.word_ends != "-" else None, checksums)
        fragments = bpe_mod.word_end_fragment_stats(lines)
        for fragment, count in fragments:
            print(f"{count}\t{fragment}")
        counters["fragments"] = len(fragments)
    else:
        raise CliError("choose --vocab FILES or --word-ends [FILE]")
    manifest = RunManifest(
        tool_version=__version__,
        command="stats",
        config={},
        input_checksums=checksums,
        counters=counters,
    )
    emit_manifest(manifest, None, args.manifest)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser, output: bool = True) -> None:
    sub.add_argument("--config", help="key=value configuration file")
    sub.add_argument("--manifest", help="write the run manifest to this path")
    if output:
        sub.add_argument("--output", "-o", help="output file (default: stdout)")


def _add_pipeline_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--mode", choices=pipeline.PIPELINE_MODES)
    sub.add_argument("--lexicon", help="lexicon TSV file")
    sub.add_argument("--merges", type=int, help="BPE merge budget")
    sub.add_argument("--maxlen", type=int)
    sub.add_argument("--minlen", type=int)
    sub.add_argument("--sample-size", type=int, dest="sample_size")
    sub.add_argument("--seed", type=int)
    sub.add_argument(
        "--protect-tags",
        action=argparse.BooleanOptionalAction,
        dest="protect_tags",
        default=None,
        help="never let BPE split tag tokens",
    )
    sub.add_argument(
        "--joint-bpe",
        action=argparse.BooleanOptionalAction,
        dest="joint_bpe",
        default=None,
        help="learn one merge table over both sides (default) or per side",
    )
    sub.add_argument(
        "--split-source-hyphens",
        action=argparse.BooleanOptionalAction,
        dest="split_source_hyphens",
        default=None,
    )
    sub.add_argument("--merge-table", dest="merge_table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morphmt",
        description="two-step morphology-aware MT corpus processing",
    )
    parser.add_argument("--version", action="version", version=f"morphmt {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("prepare", help="encode a corpus into a training representation")
    _add_pipeline_options(p)
    p.add_argument("--source", help="source-side file")
    p.add_argument("--target", help="target-side file (default: stdin)")
    p.add_argument("--parse-tags", dest="parse_tags", help="per-token target parse tags, one line per sentence")
    p.add_argument("--source-tags", dest="source_tags", help="per-token source tags to interleave")
    p.add_argument("--filter", action="store_true", help="apply length filtering (and sampling)")
    p.add_argument("--out-source", dest="out_source")
    p.add_argument("--out-target", dest="out_target", help="default: stdout")
    p.add_argument("--merge-table-out", dest="merge_table_out")
    _add_common(p, output=False)
    p.set_defaults(handler=cmd_prepare, output=None)

    p = subs.add_parser("bpe-learn", help="learn a BPE merge table")
    p.add_argument("--merges", type=int)
    p.add_argument("input", nargs="?")
    _add_common(p)
    p.set_defaults(handler=cmd_bpe_learn)

    p = subs.add_parser("bpe-apply", help="segment text with a merge table")
    p.add_argument("--merge-table", dest="merge_table")
    p.add_argument("--mode", choices=pipeline.PIPELINE_MODES)
    p.add_argument(
        "--protect-tags",
        action=argparse.BooleanOptionalAction,
        dest="protect_tags",
        default=None,
    )
    p.add_argument("--jobs", type=int)
    p.add_argument("input", nargs="?")
    _add_common(p)
    p.set_defaults(handler=cmd_bpe_apply)

    p = subs.add_parser("bpe-revert", help="undo BPE segmentation")
    p.add_argument("input", nargs="?")
    _add_common(p)
    p.set_defaults(handler=cmd_bpe_revert)

    p = subs.add_parser("analyze", help="list lexicon analyses of surface forms")
    p.add_argument("--lexicon")
    p.add_argument("input", nargs="?", help="one surface form per line")
    _add_common(p)
    p.set_defaults(handler=cmd_analyze)

    p = subs.add_parser("generate", help="generate surface forms from lemma<TAB>tag lines")
    p.add_argument("--lexicon")
    p.add_argument("input", nargs="?")
    _add_common(p)
    p.set_defaults(handler=cmd_generate)

    p = subs.add_parser("split-compounds", help="split compound analyses into sub-word tokens")
    p.add_argument("input", nargs="?", help="lines of stem||feature analysis tokens")
    _add_common(p)
    p.set_defaults(handler=cmd_split_compounds)

    p = subs.add_parser("merge-compounds", help="reassemble split compounds into analyses")
    p.add_argument("--lexicon")
    p.add_argument("input", nargs="?")
    _add_common(p)
    p.set_defaults(handler=cmd_merge_compounds)

    p = subs.add_parser("translate", help="run the external translation backend")
    p.add_argument("--backend", help="backend command line (e.g. 'cat')")
    p.add_argument("input", nargs="?")
    _add_common(p)
    p.set_defaults(handler=cmd_translate)

    p = subs.add_parser("postprocess", help="turn backend output into surface text")
    _add_pipeline_options(p)
    p.add_argument("--jobs", type=int)
    p.add_argument("input", nargs="?")
    _add_common(p)
    p.set_defaults(handler=cmd_postprocess)

    p = subs.add_parser("bleu", help="corpus BLEU of hypotheses against references")
    p.add_argument(
        "--lowercase",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    p.add_argument(
        "--smooth",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    p.add_argument("hypotheses")
    p.add_argument("references")
    _add_common(p, output=False)
    p.set_defaults(handler=cmd_bleu, output=None)

    p = subs.add_parser("novel-forms", help="count novel surface forms in output")
    p.add_argument("--train", required=True, help="training target corpus")
    p.add_argument("--source", required=True, help="aligned source sentences")
    p.add_argument("--references", required=True, help="aligned references")
    p.add_argument(
        "--lowercase",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    p.add_argument("input", nargs="?", help="system output (default: stdin)")
    _add_common(p, output=False)
    p.set_defaults(handler=cmd_novel_forms, output=None)

    p = subs.add_parser("stats", help="vocabulary and word-end fragment statistics")
    p.add_argument("--vocab", nargs="+", help="corpus variant files")
    p.add_argument("--merges", type=int, help="BPE budget for --vocab")
    p.add_argument(
        "--word-ends",
        nargs="?",
        const="-",
        dest="word_ends",
        help="segmented corpus (default: stdin)",
    )
    _add_common(p, output=False)
    p.set_defaults(handler=cmd_stats, output=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config_file(getattr(args, "config", None))
        return args.handler(args, config)
    except CliError as exc:
        print(f"morphmt: error: {exc}", file=sys.stderr)
        return 1
    except (
        MalformedTag,
        MalformedAnalysis,
        morphlex.LexiconConflict,
        morphlex.LexiconParse,
        morphlex.NoCompatibleAnalysis,
        interleave.WellformednessError,
        interleave.LengthMismatch,
        bpe_mod.DanglingMarker,
        pipeline.BackendFailure,
        evaluation.EmptyCorpus,
        ValueError,
        OSError,
    ) as exc:
        print(f"morphmt: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
