"""Command line entry point: ``annular-hh <subcommand> ...``.

Exit status is 0 on success (or a match), 1 on a theorem mismatch and 2 on
bad input or an exceeded resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from .annular import skh
from .braids import BraidParseError, BraidWord, parse_braid
from .f2 import GradedDims
from .hochschild import FeasibilityError, bar_hh_truncated
from .ks import ks_complex_for
from .verify import (
    DEFAULT_MAX_K,
    DEFAULT_MAX_M,
    CalibrationError,
    Convention,
    ResourceLimitError,
    all_words,
    calibrate,
    check_resources,
    default_calibration_corpus,
    hh_side,
    run_corpus,
    theorem_check,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 already; keep our message format
        raise UsageError(message)


def _word(args: argparse.Namespace) -> BraidWord:
    return parse_braid(args.braid, args.strands)


def _dims_rows(d: GradedDims, names: Sequence[str]) -> list[dict]:
    return [dict(zip(names, k), dim=v) for k, v in sorted(d.items()) if v]


def _emit(payload: dict, rows: list[tuple], header: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(header)
        for r in rows:
            print("\t".join("" if x is None else str(x) for x in r))


def _resolve_convention(text: str, max_k: int) -> Convention:
    if text == "auto":
        return calibrate(default_calibration_corpus(), max_k=max_k)
    if text.startswith("fixed:"):
        return Convention.parse(text[len("fixed:") :])
    raise UsageError(f"--convention must be 'auto' or 'fixed:<side>,<orientation>', got {text!r}")


def cmd_compute_hh(args: argparse.Namespace) -> int:
    w = _word(args)
    check_resources(w, args.max_k, args.max_m)
    hh = hh_side(w)
    payload = {"braid": str(w), "strands": w.strands, "n_plus": w.n_plus, "n_minus": w.n_minus}
    payload["hh"] = _dims_rows(hh, ("h", "q"))
    rows = [("hh", h, q, None, d) for (h, q), d in sorted(hh.items())]
    if args.depth:
        bar = bar_hh_truncated(ks_complex_for(w), args.depth)
        payload["bar"] = {
            "depth": args.depth,
            "collapsed": bar.collapsed,
            "horizontal": {str(b): _dims_rows(d, ("h", "q")) for b, d in bar.horizontal.items()},
            "row0_matches": bar.row0 == hh,
        }
    _emit(payload, rows, "side\th\tq\tf\tdim", args.format)
    return EXIT_OK


def cmd_compute_skh(args: argparse.Namespace) -> int:
    w = _word(args)
    check_resources(w, args.max_k, args.max_m)
    f = w.m - 1 if args.f_level is None else args.f_level
    conv = Convention.parse(args.orientation_spec) if args.orientation_spec else Convention()
    d = skh(w, f, conv.orientation)
    payload = {
        "braid": str(w),
        "strands": w.strands,
        "n_plus": w.n_plus,
        "n_minus": w.n_minus,
        "skh": [{"h": h, "q": q, "f": f, "dim": v} for (h, q), v in sorted(d.items()) if v],
    }
    rows = [("skh", h, q, f, v) for (h, q), v in sorted(d.items())]
    _emit(payload, rows, "side\th\tq\tf\tdim", args.format)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    w = _word(args)
    check_resources(w, args.max_k, args.max_m)
    conv = _resolve_convention(args.convention, args.max_k)
    report = theorem_check(w, conv, args.max_k, args.max_m)
    if args.format == "json":
        payload = report.to_dict()
        payload["convention"] = str(conv)
        print(json.dumps(payload, indent=2))
    else:
        print(report.to_tsv())
        print(f"# shift\t{report.applied_shift[0]}\t{report.applied_shift[1]}\tmatch\t{report.match}")
    return EXIT_OK if report.match else EXIT_MISMATCH


def cmd_calibrate(args: argparse.Namespace) -> int:
    if args.braid is not None:
        corpus = [parse_braid(b, args.strands) for b in args.braid]
    else:
        corpus = default_calibration_corpus()
    conv = calibrate(corpus, args.max_k, args.max_m)
    if args.format == "json":
        print(json.dumps({"convention": str(conv), "corpus_size": len(corpus)}))
    else:
        print(f"convention\t{conv}\ncorpus_size\t{len(corpus)}")
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    conv = Convention()
    words = all_words(2, 3) + all_words(3, 2)
    reports = run_corpus(words, conv, workers=args.workers)
    failed = [r for r in reports if not r.match]
    for r in failed:
        print(f"FAIL\t{r.braid}\t{r.braid.strands}")
    print(f"{len(reports) - len(failed)}/{len(reports)} words match under {conv}")
    return EXIT_OK if not failed else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="annular-hh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp: argparse.ArgumentParser, braid_required: bool = True) -> None:
        if braid_required:
            sp.add_argument("--braid", required=True, help='signed generator indices, e.g. "1 -2 1"')
        sp.add_argument("--strands", type=int, default=None)
        sp.add_argument("--format", choices=("json", "tsv"), default="json")
        sp.add_argument("--max-k", type=int, default=DEFAULT_MAX_K, help="longest word accepted")
        sp.add_argument("--max-m", type=int, default=DEFAULT_MAX_M, help="largest m accepted")

    sp = sub.add_parser("compute-hh", help="Hochschild homology of the Khovanov-Seidel complex")
    common(sp)
    sp.add_argument("--depth", type=int, default=0, help="also run the truncated bar check at this depth")
    sp.set_defaults(func=cmd_compute_hh)

    sp = sub.add_parser("compute-skh", help="sutured annular Khovanov homology of the closure as given")
    common(sp)
    sp.add_argument("--f-level", type=int, default=None, help="filtration level (default m-1)")
    sp.add_argument("--convention", dest="orientation_spec", default=None, metavar="SIDE,ORIENTATION")
    sp.set_defaults(func=cmd_compute_skh)

    sp = sub.add_parser("verify", help="compare both sides for one braid")
    common(sp)
    sp.add_argument("--convention", default="fixed:mirror,ccw_plus", help="'auto' or 'fixed:<side>,<orientation>'")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("calibrate", help="find the unique bookkeeping convention")
    common(sp, braid_required=False)
    sp.add_argument("--braid", action="append", default=None, help="corpus word (repeatable)")
    sp.set_defaults(func=cmd_calibrate)

    sp = sub.add_parser("selftest", help="run a small corpus")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_selftest)
    return p


def _glue_braids(argv: Sequence[str]) -> list[str]:
    """Turn ``--braid "-1 2"`` into ``--braid=-1 2`` so argparse does not read it as an option."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a == "--braid":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--braid={nxt}")
        else:
            out.append(a)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = _glue_braids(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, BraidParseError, ResourceLimitError, FeasibilityError, CalibrationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
