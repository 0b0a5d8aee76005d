"""Command-line interface.

Subcommands
-----------
``postprocess``
    Read an embedding file, apply one of the post-processing methods
    (``cn`` variance damping, ``abtt`` top-component removal, ``ew``
    eigenvalue re-weighting), write the result. A human-readable
    ``key: value`` manifest describing the run is written next to the
    output as ``<output>.manifest``.

``eval similarity|sts|categorize``
    Score an embedding file against a TSV benchmark. Prints one
    tab-separated line: metric, score scaled by 100 with two decimals,
    number of records evaluated, number skipped.

``gating``
    Print (or write) the per-component gain curve of both methods as CSV
    so their spectral behavior can be compared directly.

All data outputs are deterministic: rerunning a command byte-identically
reproduces the embedding/CSV output (the manifest's wall time differs).
Exit codes: 0 success, 2 argument errors, 3 OS-level I/O failure, and the
library's per-error codes (documented in the README) for data errors.
"""
from __future__ import annotations

import argparse
import sys
import time

from . import _accel, embio, transforms
from .embio import EmbeddingFormat
from .errors import VecgateError
from .evaluate import eval_categorization, eval_similarity, eval_sts
from .spectral import Embedding
from .transforms import AbttConfig, CnConfig

__all__ = ["main", "entrypoint", "build_parser"]

_FORMATS = [f.value for f in EmbeddingFormat]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vecgate",
        description="Post-process word embeddings by gating spectral "
        "components, and evaluate the result on intrinsic benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pp = sub.add_parser(
        "postprocess", help="transform an embedding file and write the result"
    )
    pp.add_argument("--method", required=True, choices=["cn", "abtt", "ew"])
    pp.add_argument("--input", required=True, help="input embedding file")
    pp.add_argument("--format", required=True, choices=_FORMATS,
                    help="input file format")
    pp.add_argument("--output", required=True, help="output embedding file")
    pp.add_argument("--output-format", choices=_FORMATS, default=None,
                    help="output file format (default: same as input)")
    pp.add_argument("--alpha", type=float, default=2.0,
                    help="cn aperture; larger damps high-variance "
                    "directions harder (default 2.0)")
    pp.add_argument("--d", type=int, default=3,
                    help="abtt: number of top components to remove "
                    "(default 3)")
    pp.add_argument("--p", type=float, default=0.5,
                    help="ew: exponent applied to the singular values "
                    "(default 0.5; 0 whitens fully)")
    pp.add_argument("--subset-vocab", default=None, metavar="PATH",
                    help="cn: estimate the correlation matrix from only "
                    "the tokens listed in this file (one per line)")
    pp.add_argument("--center", action="store_true",
                    help="cn: subtract the mean vector before estimating "
                    "correlations, and emit centered vectors")
    pp.add_argument("--threads", type=int, default=None,
                    help="worker threads for the accelerated kernels")

    ev = sub.add_parser("eval", help="score an embedding on a benchmark")
    ev_sub = ev.add_subparsers(dest="task", required=True)
    for task, blurb in (
        ("similarity", "word-pair cosine vs human scores (Spearman)"),
        ("sts", "sentence-pair cosine vs human scores (Pearson)"),
        ("categorize", "k-means cluster purity against gold categories"),
    ):
        tp = ev_sub.add_parser(task, help=blurb)
        tp.add_argument("--vectors", required=True, help="embedding file")
        tp.add_argument("--format", required=True, choices=_FORMATS)
        tp.add_argument("--dataset", required=True, help="TSV benchmark file")
        tp.add_argument("--lowercase-fallback", action="store_true",
                        help="retry unknown tokens lowercased")

    gt = sub.add_parser(
        "gating",
        help="print both methods' per-component gains for an embedding",
    )
    gt.add_argument("--vectors", required=True, help="embedding file")
    gt.add_argument("--format", required=True, choices=_FORMATS)
    gt.add_argument("--alpha", type=float, default=2.0)
    gt.add_argument("--d", type=int, default=3)
    gt.add_argument("--output", default=None,
                    help="write CSV here instead of stdout")
    return parser


def _read(path: str, fmt: str) -> Embedding:
    return embio.read_embedding(path, EmbeddingFormat(fmt))


def _manifest_value(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _run_postprocess(args) -> int:
    if args.threads is not None:
        _accel.set_threads(args.threads)
    started = time.time()
    emb = _read(args.input, args.format)
    if args.method == "cn":
        subset = None
        if args.subset_vocab is not None:
            subset = embio.read_token_list(args.subset_vocab)
        out = transforms.cn_transform(
            emb, CnConfig(aperture=args.alpha, subset=subset, center=args.center)
        )
    elif args.method == "abtt":
        out = transforms.abtt_transform(emb, AbttConfig(n_remove=args.d))
    else:
        factors = transforms.ew_factors_from_embedding(emb, exponent=args.p)
        out = transforms.ew_transform(factors, vocab=emb.vocab)
    out_fmt = EmbeddingFormat(args.output_format or args.format)
    embio.write_embedding(out, args.output, out_fmt)
    manifest = {
        "command": "postprocess",
        "method": args.method,
        "input": args.input,
        "format": args.format,
        "output": args.output,
        "output_format": out_fmt.value,
        "alpha": args.alpha,
        "d": args.d,
        "p": args.p,
        "subset_vocab": args.subset_vocab,
        "center": bool(args.center),
        "vocab_size": len(out),
        "dim": out.dim,
        "deterministic_output": True,
        "wall_time_s": round(time.time() - started, 6),
    }
    with open(args.output + ".manifest", "w", encoding="utf-8") as f:
        for key in sorted(manifest):
            f.write(f"{key}: {_manifest_value(manifest[key])}\n")
    print(f"wrote {len(out)} x {out.dim} vectors to {args.output}")
    return 0


def _run_eval(args) -> int:
    emb = _read(args.vectors, args.format)
    if args.task == "similarity":
        report = eval_similarity(
            emb, embio.read_similarity_dataset(args.dataset),
            lowercase_fallback=args.lowercase_fallback,
        )
    elif args.task == "sts":
        report = eval_sts(
            emb, embio.read_sts_dataset(args.dataset),
            lowercase_fallback=args.lowercase_fallback,
        )
    else:
        report = eval_categorization(
            emb, embio.read_category_dataset(args.dataset),
            lowercase_fallback=args.lowercase_fallback,
        )
    print(f"{report.metric}\t{report.score * 100:.2f}\t"
          f"{report.evaluated}\t{report.skipped}")
    return 0


def _run_gating(args) -> int:
    emb = _read(args.vectors, args.format)
    from .spectral import correlation_matrix, sym_eigen

    eig = sym_eigen(correlation_matrix(emb))
    cn = transforms.cn_gains(eig.sigma, args.alpha)
    abtt = transforms.abtt_gains(emb.dim, args.d)
    lines = ["pc_index,abtt_gain,cn_gain"]
    for i in range(emb.dim):
        lines.append(f"{i + 1},{repr(float(abtt[i]))},{repr(float(cn[i]))}")
    text = "\n".join(lines) + "\n"
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "postprocess":
            return _run_postprocess(args)
        if args.command == "eval":
            return _run_eval(args)
        return _run_gating(args)
    except VecgateError as exc:
        print(f"vecgate: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"vecgate: error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
