"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 not a Mori dream space,
3 internal invariant violation (including a class that fails the
degree-1 generation check).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .cones import in_effective_cone, in_movable_cone, is_big
from .coxgen import cox_generation_report, generator_degree_bound, regularity
from .interp import DEFAULT_PRIME, InterpConfig, h0_consensus
from .lattice import (
    LatticeError,
    NotMoriDreamError,
    Params,
    anticanonical,
    anticanonical_degree,
    classify_case,
    format_divisor,
    is_mori_dream,
    parse_divisor,
)
from .lp import CertificateError
from .roots import cartan_csv, dynkin_type, simple_roots
from .weyl import (
    DEFAULT_LIMIT,
    InvariantViolation,
    classes_up_to_point_symmetry,
    load_or_compute_minus_one,
)

EXIT_OK, EXIT_USAGE, EXIT_NOT_MDS, EXIT_INVARIANT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _header(args, command: str) -> dict:
    return {
        "params": [args.a, args.b, args.c],
        "command": command,
        "prime": args.prime,
        "seed": args.seed,
        "version": __version__,
    }


def _emit(args, command: str, payload: dict, text_lines: list[str], csv_text: str | None = None):
    if args.format == "json":
        print(json.dumps({"header": _header(args, command), **payload}, indent=2))
    elif args.format == "csv" and csv_text is not None:
        print(csv_text, end="")
    else:
        print("\n".join(text_lines))


def cmd_classify(args, p: Params) -> int:
    mds = is_mori_dream(p)
    rs = simple_roots(p)
    payload = {
        "mori_dream": mds,
        "dynkin_type": dynkin_type(p),
        "case": classify_case(p) if mds else None,
        "rank": p.rank,
        "dimension": p.dim,
        "kappa": p.kappa,
        "anticanonical": format_divisor(anticanonical(p)),
        "degree_bound": generator_degree_bound(p) if mds else None,
        "regularity": regularity(p) if mds else None,
    }
    lines = [f"X_{p}"] + [f"  {k:14s} {v}" for k, v in payload.items()]
    _emit(args, "classify", payload, lines, cartan_csv(rs))
    return EXIT_OK if mds else EXIT_NOT_MDS


def cmd_minus_one(args, p: Params) -> int:
    orb, source = load_or_compute_minus_one(p, args.cache, args.limit)
    payload = {"count": len(orb), "source": source}
    lines = [f"(-1)-divisors on X_{p}: {len(orb)}"]
    if args.classes:
        classes = classes_up_to_point_symmetry(orb, args.factor_symmetry)
        payload["classes"] = [{"class": format_divisor(d), "count": n} for d, n in classes]
        lines.append(f"classes up to symmetry: {len(classes)}")
        lines.extend(f"  {format_divisor(d):40s} {n}" for d, n in classes)
    if args.list:
        payload["divisors"] = [format_divisor(e) for e in orb]
        lines.extend(format_divisor(e) for e in orb)
    _emit(args, "minus-one", payload, lines)
    return EXIT_OK


def cmd_cones(args, p: Params) -> int:
    d = parse_divisor(args.divisor, p)
    eff = in_effective_cone(d, p)
    mov = in_movable_cone(d, p)
    big = is_big(d, p)
    payload = {
        "divisor": format_divisor(d),
        "degree": anticanonical_degree(d, p),
        "effective": eff.to_dict(),
        "movable": mov.to_dict(),
        "big": big,
    }
    mark = {True: "yes", False: "no"}
    lines = [
        f"divisor   {format_divisor(d)}  (degree {payload['degree']})",
        f"effective {mark[eff.member]}",
        f"movable   {mark[mov.member]}",
        f"big       {mark[big]}",
    ]
    _emit(args, "cones", payload, lines)
    return EXIT_OK


def cmd_h0(args, p: Params) -> int:
    d = parse_divisor(args.divisor, p)
    cfg = InterpConfig(args.prime, args.seed)
    seeds = [args.seed + i for i in range(args.seeds or 1)]
    res = h0_consensus(p, d, cfg, seeds)
    payload = {"divisor": format_divisor(d), "h0": res.value, "values": res.values,
               "seeds": res.seeds, "unanimous": res.unanimous}
    lines = [str(res.value)]
    if not res.unanimous:
        lines.append(f"warning: seeds disagree {dict(zip(res.seeds, res.values))}")
    _emit(args, "h0", payload, lines)
    return EXIT_OK


def cmd_coxcheck(args, p: Params) -> int:
    cfg = InterpConfig(args.prime, args.seed)
    seeds = [args.seed + i for i in range(args.seeds or 3)]
    report = cox_generation_report(p, args.max_degree, cfg, seeds, args.time_limit, args.threads)
    lines = [f"X_{p}: degree-1 effective classes up to point symmetry"]
    lines += [f"  {e['class']:40s} x{e['orbit_size']:<5d} h0={e['h0']}" for e in report.degree_one]
    lines.append(f"{'class':40s} deg  h0 rank gen agree")
    for r in report.rows:
        lines.append(f"{r.cls:40s} {r.degree:3d} {r.h0:3d} {r.image_rank:4d} {'y' if r.generated else 'n':>3s} "
                     f"{'y' if r.seeds_agree else 'n':>5s}")
    if report.partial:
        lines.append("PARTIAL: time limit reached")
    lines.append("all generated" if report.verdict else f"FAILURES: {len(report.failures)}")
    _emit(args, "coxcheck", report.to_dict(), lines, report.to_csv())
    return EXIT_INVARIANT if report.failures else EXIT_OK


def cmd_cartan(args, p: Params) -> int:
    print(cartan_csv(simple_roots(p)), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("a", type=int)
    common.add_argument("b", type=int)
    common.add_argument("c", type=int)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--seeds", type=int, default=None,
                        help="number of seeds for probabilistic verdicts (h0: 1, coxcheck: 3)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache", metavar="DIR", default=None)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="orbit size limit")

    parser = _Parser(prog="coxabc", description="Computations on blow-ups X_{a,b,c}.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("classify", parents=[common], help="Mori dream test, Dynkin type, case, bounds")
    sp.set_defaults(func=cmd_classify, needs_mds=False)

    sp = sub.add_parser("minus-one", parents=[common], help="enumerate (-1)-divisors")
    sp.add_argument("--classes", action="store_true", help="group up to point symmetry")
    sp.add_argument("--factor-symmetry", action="store_true", help="also permute the factors")
    sp.add_argument("--list", action="store_true", help="print every divisor")
    sp.set_defaults(func=cmd_minus_one, needs_mds=True)

    sp = sub.add_parser("cones", parents=[common], help="effective / movable / big verdicts")
    sp.add_argument("divisor", help='e.g. "[3 | 1,1,1,1,1,1]"')
    sp.set_defaults(func=cmd_cones, needs_mds=True)

    sp = sub.add_parser("h0", parents=[common], help="dimension of the space of sections")
    sp.add_argument("divisor")
    sp.set_defaults(func=cmd_h0, needs_mds=False)

    sp = sub.add_parser("coxcheck", parents=[common], help="degree-1 generation check")
    sp.add_argument("--max-degree", type=int, default=2)
    sp.add_argument("--time-limit", type=float, default=None, help="seconds; marks the report partial")
    sp.set_defaults(func=cmd_coxcheck, needs_mds=True)

    sp = sub.add_parser("cartan", parents=[common], help="Cartan matrix as CSV")
    sp.set_defaults(func=cmd_cartan, needs_mds=False)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        p = Params(args.a, args.b, args.c)
        if args.needs_mds and not is_mori_dream(p):
            raise NotMoriDreamError(f"X_{p} is not a Mori dream space")
        return args.func(args, p)
    except NotMoriDreamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_MDS
    except (InvariantViolation, CertificateError, AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (LatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
