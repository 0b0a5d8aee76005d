#!/usr/bin/env python3
"""Reproduce the reference word-similarity scores on real GloVe vectors.

This is a documented recipe, not a CI test: it needs the multi-gigabyte
Common Crawl GloVe 840B 300d vectors and the SimLex-999 / SimVerb-3500
benchmark files, all downloaded by you beforehand.

Expected reference bands for conceptor negation with aperture 2.0 applied
to glove.840B.300d (Spearman x 100):

    SimLex-999      48.53 +/- 1.5
    SimVerb-3500    36.36 +/- 1.5

The tolerance absorbs benchmark-preprocessing differences (casing,
hyphenated pairs) that the reference protocol leaves unspecified.

Usage:
    python3 scripts/reproduce_reference_scores.py \
        --glove glove.840B.300d.txt \
        --simlex SimLex-999.txt \
        --simverb SimVerb-3500.txt \
        [--subset-vocab frequent_words.txt] [--workdir out/]

Upstream files:
    glove.840B.300d.txt  from https://nlp.stanford.edu/data/glove.840B.300d.zip
    SimLex-999.txt       from https://fh295.github.io/SimLex-999.zip
    SimVerb-3500.txt     from the SimVerb-3500 distribution

The optional --subset-vocab file (one token per line) restricts correlation
estimation to frequent words; without it the full vocabulary is used, which
shifts scores slightly but stays within the bands above.
"""
import argparse
import csv
import sys
import time
from pathlib import Path

from vecgate import cli

BANDS = {
    "simlex": (48.53, 1.5),
    "simverb": (36.36, 1.5),
}


def adapt_benchmark(src: Path, dst: Path, score_column: int, skip_header: bool):
    """Rewrite an upstream benchmark file into the 3-column TSV schema."""
    with open(src, encoding="utf-8") as fin, open(dst, "w", encoding="utf-8") as fout:
        reader = csv.reader(fin, delimiter="\t")
        for i, row in enumerate(reader):
            if skip_header and i == 0:
                continue
            if not row or row[0].startswith("#"):
                continue
            fout.write(f"{row[0]}\t{row[1]}\t{row[score_column]}\n")


def run_eval(vectors: Path, dataset: Path) -> float:
    """Invoke the eval subcommand in-process and parse the score."""
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main([
            "eval", "similarity",
            "--vectors", str(vectors), "--format", "glove-txt",
            "--dataset", str(dataset), "--lowercase-fallback",
        ])
    if code != 0:
        raise SystemExit(f"eval failed with exit code {code}")
    metric, score, evaluated, skipped = buf.getvalue().strip().split("\t")
    print(f"  {metric}={score}  evaluated={evaluated} skipped={skipped}")
    return float(score)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--glove", required=True, type=Path,
                        help="glove.840B.300d.txt (user-downloaded)")
    parser.add_argument("--simlex", required=True, type=Path,
                        help="upstream SimLex-999.txt")
    parser.add_argument("--simverb", required=True, type=Path,
                        help="upstream SimVerb-3500.txt")
    parser.add_argument("--subset-vocab", type=Path, default=None,
                        help="optional frequent-word list for R estimation")
    parser.add_argument("--alpha", type=float, default=2.0)
    parser.add_argument("--workdir", type=Path, default=Path("reproduction_out"))
    args = parser.parse_args()

    args.workdir.mkdir(parents=True, exist_ok=True)
    simlex_tsv = args.workdir / "simlex.tsv"
    simverb_tsv = args.workdir / "simverb.tsv"
    # SimLex-999.txt has a header row; the score lives in column 4 (0-based 3).
    adapt_benchmark(args.simlex, simlex_tsv, score_column=3, skip_header=True)
    # SimVerb-3500.txt has no header; the score lives in column 4 (0-based 3).
    adapt_benchmark(args.simverb, simverb_tsv, score_column=3, skip_header=False)

    processed = args.workdir / "glove.cn.txt"
    print(f"post-processing {args.glove} (this loads the full vocabulary) ...")
    started = time.time()
    argv = [
        "postprocess", "--method", "cn", "--alpha", str(args.alpha),
        "--input", str(args.glove), "--format", "glove-txt",
        "--output", str(processed),
    ]
    if args.subset_vocab is not None:
        argv += ["--subset-vocab", str(args.subset_vocab)]
    code = cli.main(argv)
    if code != 0:
        return code
    print(f"  done in {time.time() - started:.0f}s")

    failures = []
    for name, dataset in (("simlex", simlex_tsv), ("simverb", simverb_tsv)):
        print(f"evaluating {name} ...")
        score = run_eval(processed, dataset)
        center, tol = BANDS[name]
        verdict = "within" if abs(score - center) <= tol else "OUTSIDE"
        print(f"  expected {center} +/- {tol}: {verdict} the band")
        if verdict == "OUTSIDE":
            failures.append(name)

    if failures:
        print(f"reference bands missed for: {', '.join(failures)}", file=sys.stderr)
        return 1
    print("all reference bands reproduced")
    return 0


if __name__ == "__main__":
    sys.exit(main())
