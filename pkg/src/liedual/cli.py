"""Command-line interface: construct root data, dualize, inspect Cartan
matrices, export Chevalley structure constants, and run the T-duality
verifier.  Exit codes: 0 success, 1 mathematical check failure, 2
usage/input error.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import chevalley, rootdatum, tduality

EXIT_OK = 0
EXIT_MATH_FAIL = 1
EXIT_USAGE = 2


def _frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _load_datum(args):
    """Root datum from --type or --input; raises ValueError on bad input."""
    if args.type:
        desc = rootdatum.parse_descriptor(args.type)
        d = rootdatum.build_from_dynkin(desc)
    else:
        with open(args.input) as fh:
            d = rootdatum.from_json(fh.read())
    rep = rootdatum.validate(d)
    if not rep.ok:
        raise ValueError("root datum fails the axioms: " + json.dumps(rep.as_dict(), sort_keys=True))
    return d


def _emit(obj, out_path=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _add_input_args(sub):
    grp = sub.add_mutually_exclusive_group(required=True)
    grp.add_argument("--type", help="Dynkin descriptor, e.g. A2:sc, D4:adj, A1xT1:sc, T2")
    grp.add_argument("--input", help="path to a root-datum JSON file")


def cmd_info(args):
    d = _load_datum(args)
    _, simples = rootdatum.positive_system(d)
    out = {
        "rank": d.rank,
        "roots": d.nroots,
        "ade": rootdatum.is_ade(d),
        "pi1": rootdatum.fundamental_group(d),
        "type": rootdatum.classify_label(d),
        "cartan": [[_frac_str(v) for v in row] for row in rootdatum.cartan_matrix(d)],
    }
    if d.label:
        out["label"] = d.label
    _emit(out, args.out)
    return EXIT_OK


def cmd_dualize(args):
    d = _load_datum(args)
    _emit(rootdatum.to_json_dict(rootdatum.dualize(d)), args.out)
    return EXIT_OK


def cmd_cartan(args):
    d = _load_datum(args)
    _emit([[_frac_str(v) for v in row] for row in rootdatum.cartan_matrix(d)], args.out)
    return EXIT_OK


def cmd_export_algebra(args):
    d = _load_datum(args)
    L = chevalley.build_lie_algebra(d)
    dump = chevalley.structure_constant_dump(L)
    dump["dim"] = L.dim
    dump["basis"] = [f"{lab[0]}{lab[1]}" for lab in L.labels]
    _emit(dump, args.out)
    return EXIT_OK


def cmd_verify(args):
    d = _load_datum(args)
    if d.rank > args.max_rank_guard:
        raise ValueError(
            f"rank {d.rank} exceeds the guard ({args.max_rank_guard}); "
            "the triple sweep is large — pass --max-rank-guard to override"
        )
    report = tduality.verify_all(d, scales=tuple(args.scale), jobs=args.jobs)
    _emit(report.as_dict(timing=not args.no_timing), args.out)
    return EXIT_OK if report.overall else EXIT_MATH_FAIL


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="liedual",
        description="Exact verification of T-duality between reductive groups and their Langlands duals",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("info", help="rank, root count, ADE flag, Cartan matrix, fundamental group")
    _add_input_args(p)
    p.add_argument("--out", help="write JSON to a file instead of stdout")
    p.set_defaults(func=cmd_info)

    p = subs.add_parser("dualize", help="write the Langlands-dual root datum")
    _add_input_args(p)
    p.add_argument("--out", help="write JSON to a file instead of stdout")
    p.set_defaults(func=cmd_dualize)

    p = subs.add_parser("cartan", help="Cartan matrix of the canonical simple system")
    _add_input_args(p)
    p.add_argument("--out", help="write JSON to a file instead of stdout")
    p.set_defaults(func=cmd_cartan)

    p = subs.add_parser("export-algebra", help="Chevalley structure constants as JSON")
    _add_input_args(p)
    p.add_argument("--out", help="write JSON to a file instead of stdout")
    p.set_defaults(func=cmd_export_algebra)

    p = subs.add_parser("verify", help="run the full T-duality check suite")
    _add_input_args(p)
    p.add_argument("--out", help="write JSON to a file instead of stdout")
    p.add_argument("--scale", type=int, action="append", default=[],
                   help="additionally verify with this integer multiple of F and H (repeatable)")
    p.add_argument("--max-rank-guard", type=int, default=6,
                   help="refuse data of rank above this bound (default 6)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for the triple sweep")
    p.add_argument("--no-timing", action="store_true", help="omit timing fields for byte-stable output")
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
