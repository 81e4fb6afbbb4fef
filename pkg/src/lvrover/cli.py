"""Command-line front end: simulate, combine, rover, eval, bench, pipeline.

Line-keyed data is JSONL, tables are CSV, and every output starts with a
run manifest (a JSON record on JSONL outputs, a '# manifest: ...'
comment on CSV). All randomness funnels through --seed; --threads only
changes wall time, never output bytes or order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .cohort import ChannelParams, CohortConfig, simulate_cohort
from .formats import (
    hypotheses_record,
    read_hypotheses,
    read_lines,
    result_record,
    write_jsonl,
)
from .lexicon import Lexicon, NormalizationPolicy, load_lexicon
from .manifest import RunManifest
from .metrics import corpus_eval
from .parallel import ordered_map
from .rover import rover_combine
from .voting import combine
from .workflows import (
    bench_combine_scaling,
    bench_rover_length_scaling,
    run_pipeline,
    vocabulary_lexicon,
)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("LVROVER_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"LVROVER_THREADS must be an integer, got {env!r}")
    return 1


def _policy(args) -> NormalizationPolicy:
    return NormalizationPolicy(
        case_fold=args.case_fold,
        unicode_canonical_form="none" if args.no_unicode_normalize else "canonical-composed",
    )


def _merged_lexicon(args) -> Lexicon:
    policy = _policy(args)
    lex = Lexicon.empty(policy)
    for path in args.lexicon or []:
        lex = lex.merge(load_lexicon(path, policy))
    return lex


def _add_lexicon_flags(p: argparse.ArgumentParser):
    p.add_argument("--lexicon", action="append", metavar="PATH",
                   help="lexicon file, one word per line; repeatable (merged)")
    p.add_argument("--case-fold", action="store_true",
                   help="case-insensitive lexicon matching")
    p.add_argument("--no-unicode-normalize", action="store_true",
                   help="skip Unicode canonical composition")


def _add_token_flags(p: argparse.ArgumentParser):
    p.add_argument("--delimiter", default=" ", metavar="C",
                   help="single-character word delimiter (default: space)")
    p.add_argument("--no-collapse", action="store_true",
                   help="keep empty tokens from repeated delimiters")


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (env LVROVER_THREADS; default 1)")
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")


def _emit(args, lines: Sequence[str]):
    if args.out:
        write_jsonl(args.out, lines)
    else:
        for line in lines:
            print(line)


def _lexicon_params(args) -> dict:
    return {
        "lexicons": list(args.lexicon or []),
        "case_fold": args.case_fold,
        "no_unicode_normalize": args.no_unicode_normalize,
    }


def _digest_inputs(*pairs: tuple[str, Optional[str]]) -> dict:
    out = {}
    for name, path in pairs:
        if path:
            out[name] = path
    return out


def _format_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
    out.extend(fmt.format(*row) for row in rows)
    return "\n".join(out)


def _csv_with_manifest(manifest: RunManifest, headers: Sequence[str],
                       rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    buf.write(f"# manifest: {manifest.to_json()}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def _write_or_print(path: Optional[str], text: str):
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_combine(args) -> int:
    threads = _threads(args)
    blocks = read_hypotheses(args.hypotheses)
    lex = _merged_lexicon(args)
    manifest = RunManifest.create(
        "combine",
        {
            "hypotheses": args.hypotheses,
            "delimiter": args.delimiter,
            "collapse": not args.no_collapse,
            "forward_only": args.forward_only,
            "threads": threads,
            **_lexicon_params(args),
        },
        _digest_inputs(("hypotheses", args.hypotheses),
                       *((f"lexicon:{p}", p) for p in (args.lexicon or []))),
    )
    results = ordered_map(
        lambda block: combine(block[1], lex, args.delimiter,
                              not args.no_collapse, args.forward_only),
        blocks,
        threads,
    )
    lines = [manifest.to_json()]
    lines += [result_record(line_id, r) for (line_id, _), r in zip(blocks, results)]
    _emit(args, lines)
    return 0


def cmd_rover(args) -> int:
    threads = _threads(args)
    blocks = read_hypotheses(args.hypotheses)
    manifest = RunManifest.create(
        "rover",
        {
            "hypotheses": args.hypotheses,
            "delimiter": args.delimiter,
            "collapse": not args.no_collapse,
            "reference": args.reference,
            "threads": threads,
        },
        _digest_inputs(("hypotheses", args.hypotheses)),
    )
    results = ordered_map(
        lambda block: rover_combine(block[1], args.delimiter,
                                    not args.no_collapse, args.reference),
        blocks,
        threads,
    )
    lines = [manifest.to_json()]
    lines += [result_record(line_id, r) for (line_id, _), r in zip(blocks, results)]
    _emit(args, lines)
    return 0


def cmd_eval(args) -> int:
    threads = _threads(args)
    refs = read_lines(args.ref)
    hyps = read_lines(args.hyp)
    if len(refs) != len(hyps):
        raise ValueError(
            f"line count mismatch: {args.ref} has {len(refs)}, {args.hyp} has {len(hyps)}"
        )
    report = corpus_eval(
        list(zip(refs, hyps)),
        args.delimiter,
        not args.no_collapse,
        keep_per_line=args.per_line,
        threads=threads,
    )
    manifest = RunManifest.create(
        "eval",
        {
            "ref": args.ref,
            "hyp": args.hyp,
            "delimiter": args.delimiter,
            "collapse": not args.no_collapse,
            "per_line": args.per_line,
            "threads": threads,
        },
        _digest_inputs(("ref", args.ref), ("hyp", args.hyp)),
    )
    rows = [
        ("lines", str(len(refs))),
        ("ref_chars", str(report.total_ref_chars)),
        ("ref_words", str(report.total_ref_words)),
        ("char_edits", str(report.char_edits)),
        ("word_edits", str(report.word_edits)),
        ("CER", f"{report.cer:.6f}"),
        ("WER", f"{report.wer:.6f}"),
    ]
    print(_format_table(("metric", "value"), rows))
    if args.json:
        payload = {
            "manifest": manifest.to_dict(),
            "report": {
                "total_ref_chars": report.total_ref_chars,
                "total_ref_words": report.total_ref_words,
                "char_edits": report.char_edits,
                "word_edits": report.word_edits,
                "cer": report.cer,
                "wer": report.wer,
            },
        }
        if args.per_line:
            payload["per_line"] = [
                {
                    "ref_chars": l.ref_chars,
                    "ref_words": l.ref_words,
                    "char_edits": l.char_edits,
                    "word_edits": l.word_edits,
                    "cer": l.cer,
                    "wer": l.wer,
                }
                for l in report.per_line
            ]
        Path(args.json).write_text(
            json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
            newline="\n",
        )
    if args.csv:
        if args.per_line and report.per_line:
            headers = ["line", "ref_chars", "ref_words", "char_edits", "word_edits", "cer", "wer"]
            csv_rows = [
                [i, l.ref_chars, l.ref_words, l.char_edits, l.word_edits,
                 f"{l.cer:.6f}", f"{l.wer:.6f}"]
                for i, l in enumerate(report.per_line)
            ]
        else:
            headers = ["metric", "value"]
            csv_rows = [list(r) for r in rows]
        _write_or_print(args.csv, _csv_with_manifest(manifest, headers, csv_rows))
    return 0


def _channel_from_args(args) -> ChannelParams:
    return ChannelParams(
        sub_rate=args.sub_rate,
        ins_rate=args.ins_rate,
        del_rate=args.del_rate,
        space_ins_rate=args.space_ins,
        space_del_rate=args.space_del,
        alphabet=args.alphabet,
    )


def _add_channel_flags(p: argparse.ArgumentParser, size_default: int = 100):
    p.add_argument("--size", type=int, default=size_default, metavar="N",
                   help="number of simulated recognizers")
    p.add_argument("--sub-rate", type=float, default=0.05)
    p.add_argument("--ins-rate", type=float, default=0.01)
    p.add_argument("--del-rate", type=float, default=0.01)
    p.add_argument("--space-ins", type=float, default=0.02)
    p.add_argument("--space-del", type=float, default=0.02)
    p.add_argument("--jitter", type=float, default=0.3,
                   help="relative per-recognizer spread of the base rates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--confusion-seed", type=int, default=0)
    p.add_argument("--alphabet", default=None,
                   help="substitution/insertion alphabet (default: corpus characters)")


def _cohort_config(args) -> CohortConfig:
    return CohortConfig(
        size=args.size,
        base=_channel_from_args(args),
        per_recognizer_jitter=args.jitter,
        shared_confusion_seed=args.confusion_seed,
        master_seed=args.seed,
    )


def _channel_params_dict(args) -> dict:
    return {
        "size": args.size,
        "sub_rate": args.sub_rate,
        "ins_rate": args.ins_rate,
        "del_rate": args.del_rate,
        "space_ins": args.space_ins,
        "space_del": args.space_del,
        "jitter": args.jitter,
        "seed": args.seed,
        "confusion_seed": args.confusion_seed,
        "alphabet": args.alphabet,
    }


def cmd_simulate(args) -> int:
    threads = _threads(args)
    truth = read_lines(args.truth)
    manifest = RunManifest.create(
        "simulate",
        {"truth": args.truth, "delimiter": args.delimiter, "threads": threads,
         **_channel_params_dict(args)},
        _digest_inputs(("truth", args.truth)),
    )
    hyp_sets = simulate_cohort(truth, _cohort_config(args), args.delimiter, threads)
    lines = [manifest.to_json()]
    lines += [
        hypotheses_record(f"{i:06d}", hyps) for i, hyps in enumerate(hyp_sets)
    ]
    _emit(args, lines)
    return 0


def cmd_bench(args) -> int:
    n_values = [int(x) for x in args.n_values.split(",")]
    word_counts = [int(x) for x in args.word_counts.split(",")]
    manifest = RunManifest.create(
        "bench",
        {
            "n_values": n_values,
            "word_counts": word_counts,
            "line_chars": args.line_chars,
            "num_lines": args.num_lines,
            "repeats": args.repeats,
            "seed": args.seed,
        },
    )
    rows = bench_combine_scaling(n_values, args.line_chars, args.num_lines,
                                 args.repeats, args.seed)
    rows += bench_rover_length_scaling(word_counts, repeats=args.repeats,
                                       seed=args.seed)
    csv_rows = [
        [r.system, r.parameter, r.value, f"{r.median_seconds:.6f}",
         "" if r.ratio_vs_prev is None else f"{r.ratio_vs_prev:.3f}"]
        for r in rows
    ]
    headers = ["system", "parameter", "value", "median_seconds", "ratio_vs_prev"]
    _write_or_print(args.out, _csv_with_manifest(manifest, headers, csv_rows))
    if args.out:
        print(_format_table(headers, [[str(c) for c in row] for row in csv_rows]))
    return 0


def cmd_pipeline(args) -> int:
    threads = _threads(args)
    truth = read_lines(args.truth)
    policy = _policy(args)
    lexicons: list[tuple[str, Optional[Lexicon]]] = [("none", None)]
    if not args.lexicon:
        lexicons.append(("truth-vocab", vocabulary_lexicon(truth, policy, args.delimiter)))
    for path in args.lexicon or []:
        lexicons.append((Path(path).stem, load_lexicon(path, policy)))
    manifest = RunManifest.create(
        "pipeline",
        {
            "truth": args.truth,
            "delimiter": args.delimiter,
            "collapse": not args.no_collapse,
            "threads": threads,
            **_lexicon_params(args),
            **_channel_params_dict(args),
        },
        _digest_inputs(("truth", args.truth),
                       *((f"lexicon:{p}", p) for p in (args.lexicon or []))),
    )
    report = run_pipeline(truth, _cohort_config(args), lexicons,
                          args.delimiter, not args.no_collapse, threads)

    method_headers = ["method", "cer", "wer"]
    method_rows = [[m.method, f"{m.cer:.6f}", f"{m.wer:.6f}"] for m in report.methods]
    lex_headers = ["lexicon", "size", "coverage", "cer", "wer"]
    lex_rows = [
        [l.lexicon, str(l.size), f"{l.coverage:.4f}", f"{l.cer:.6f}", f"{l.wer:.6f}"]
        for l in report.lexicons
    ]
    print(_format_table(method_headers, method_rows))
    print()
    print(_format_table(lex_headers, lex_rows))
    print()
    print(f"single-recognizer CER: mean {report.single_mean_cer:.6f}, "
          f"min {report.single_min_cer:.6f}")
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "methods.csv").write_text(
            _csv_with_manifest(manifest, method_headers, method_rows),
            encoding="utf-8", newline="\n")
        (out / "lexicons.csv").write_text(
            _csv_with_manifest(manifest, lex_headers, lex_rows),
            encoding="utf-8", newline="\n")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lvrover",
        description="Combine raw recognizer outputs by word-count alignment "
                    "and lexicon-verified voting.",
    )
    parser.add_argument("--version", action="version", version=f"lvrover {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("combine", help="lexicon-verified lattice voting per line")
    p.add_argument("--hypotheses", required=True, metavar="PATH",
                   help="JSONL ({line_id, hypotheses}) or blank-line-separated text")
    p.add_argument("--forward-only", action="store_true",
                   help="skip the backward pass")
    _add_lexicon_flags(p)
    _add_token_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("rover", help="classic DP-alignment baseline per line")
    p.add_argument("--hypotheses", required=True, metavar="PATH")
    p.add_argument("--reference", choices=("first", "longest"), default="first",
                   help="seed hypothesis for the alignment")
    _add_token_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_rover)

    p = sub.add_parser("eval", help="CER/WER between reference and hypothesis files")
    p.add_argument("--ref", required=True, metavar="PATH")
    p.add_argument("--hyp", required=True, metavar="PATH")
    p.add_argument("--per-line", action="store_true")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.add_argument("--csv", metavar="PATH", help="write a CSV report here")
    p.add_argument("--threads", type=int, default=None)
    _add_token_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("simulate", help="synthesize a recognizer cohort from ground truth")
    p.add_argument("--truth", required=True, metavar="PATH")
    _add_channel_flags(p)
    _add_token_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bench", help="wall-clock scaling of combine vs the baseline")
    p.add_argument("--n-values", default="64,128,256,512,1024")
    p.add_argument("--word-counts", default="16,32,64")
    p.add_argument("--line-chars", type=int, default=80)
    p.add_argument("--num-lines", type=int, default=8)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="PATH", help="CSV output (default: stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("pipeline", help="simulate, combine both ways, evaluate")
    p.add_argument("--truth", required=True, metavar="PATH")
    p.add_argument("--out-dir", metavar="DIR", help="write methods.csv and lexicons.csv")
    _add_channel_flags(p)
    _add_lexicon_flags(p)
    _add_token_flags(p)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"lvrover {args.command}: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
