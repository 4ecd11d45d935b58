"""Command-line entry point.

Exit codes: 0 success, 1 malformed input, 2 a well-formed request with no answer.
Errors are printed to stdout as a JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Sequence

from .constructions import FAMILIES, PARTITIONS, ConstructionSpec, build, predicted_distribution
from .distribution import (
    IntersectionDistribution,
    complete_from_tail,
    convert,
    poly_distribution,
    set_distribution,
)
from .equivalence import EquivTransform, inverse_comparison, nucleus_swap, transform
from .errors import DomainError, ParseError
from .field import FieldCtx, build_field, format_element, prime_power
from .geometry import format_point_set, parse_point_set, parse_triple
from .monomial import bound_report, degree_table, format_line, upper_bounds
from .poly import (
    count_irreducible_cubics_brute,
    count_irreducible_cubics_fixed_trace,
    format_poly,
    parse_element,
    parse_poly,
)

_FIELD_RE = re.compile(r"^\s*(\d+)(?:\^(\d+))?(?::([\d,\s]+))?\s*$")


def parse_field(text: str) -> FieldCtx:
    """``p``, ``q``, ``p^s`` or ``p^s:c0,c1,...,1`` (modulus coefficients, constant first)."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse field {text!r}; expected p^s[:c0,c1,...]")
    base, exp, coeffs = m.groups()
    base = int(base)
    if exp is None:
        pp = prime_power(base)
        if pp is None:
            from .errors import NonPrimeError

            raise NonPrimeError(f"{base} is not a prime power")
        p, s = pp
    else:
        p, s = base, int(exp)
    modulus = None
    if coeffs:
        try:
            modulus = [int(c) for c in coeffs.split(",") if c.strip()]
        except ValueError as exc:
            raise ParseError(f"bad modulus coefficients in {text!r}") from exc
    return build_field(p, s, modulus)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _emit(doc, out) -> None:
    out.write(json.dumps(doc, sort_keys=False) + "\n")


def _read_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        with open(arg[1:]) as fh:
            return fh.read()
    return arg


# -- subcommands -------------------------------------------------------------------------


def cmd_dist(args, out):
    F = parse_field(args.field)
    f = parse_poly(F, args.poly)
    d = poly_distribution(f, workers=args.workers)
    _emit({"field": args.field, "poly": format_poly(f), "distribution": d.to_dict()}, out)


def cmd_set_dist(args, out):
    F = parse_field(args.field)
    D = parse_point_set(F, _read_text(args.points))
    _emit({"field": args.field, "points": format_point_set(D), "distribution": set_distribution(D).to_dict()}, out)


def cmd_convert(args, out):
    text = _read_text(args.input)
    if args.tail:
        try:
            tail = {int(k): int(v) for k, v in json.loads(text).items()}
        except (json.JSONDecodeError, AttributeError, ValueError) as exc:
            raise ParseError(f"tail must be a JSON object {{index: count}}: {exc}") from exc
        d = complete_from_tail(tail, args.q, args.kind)
        _emit(d.to_dict(), out)
        return
    d = IntersectionDistribution.from_json(text)
    _emit(convert(d).to_dict(), out)


def _report_dict(F: FieldCtx, r) -> dict:
    def b(x):
        return None if x is None else {"value": x.value, "rule": x.rule, "detail": x.detail}

    return {
        "q": r.q,
        "d": r.d,
        "exact": r.brute_force,
        "lower": b(r.lower),
        "upper": b(r.upper),
        "closed_form": b(r.exact),
        "sample_line": format_line(F, r.sample_line),
        "upper_candidates": [b(c) for c in r.upper_candidates],
        "closed_form_candidates": [b(c) for c in r.exact_candidates],
    }


def cmd_degree_table(args, out):
    F = parse_field(args.field)
    rows = degree_table(F, workers=args.workers)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "exact", "lower", "upper", "rules", "sample_line"])
        for r in rows:
            rules = f"{r.lower.rule}/{r.upper.rule}" + (f"/{r.exact.rule}" if r.exact else "")
            w.writerow([r.d, r.brute_force, r.lower.value, r.upper.value, rules, format_line(F, r.sample_line)])
        out.write(buf.getvalue())
        return
    _emit({"field": args.field, "rows": [_report_dict(F, r) for r in rows]}, out)


def cmd_bounds(args, out):
    F = parse_field(args.field)
    if not 2 <= args.d <= F.q - 1:
        from .errors import ParameterOutOfRangeError

        raise ParameterOutOfRangeError(f"d must lie in 2..{F.q - 1}")
    doc = _report_dict(F, bound_report(F, args.d))
    ub = upper_bounds(F, args.d)
    doc["ubound_breakdown"] = ub.ubound_breakdown
    doc["general_line_caps"] = [{"value": c.value, "rule": c.rule, "detail": c.detail} for c in ub.general_line_caps]
    _emit(doc, out)


def cmd_construct(args, out):
    spec = ConstructionSpec(args.family, args.q, args.t, args.c, args.seed, args.partition)
    con = build(spec)
    pred = predicted_distribution(spec)
    doc = {
        "family": spec.family,
        "q": spec.q,
        "t": spec.t,
        "c": spec.c,
        "seed": spec.seed,
        "points": format_point_set(con.points),
        "polynomial": format_poly(con.polynomial) if con.polynomial is not None else None,
        "predicted": pred.to_dict(),
    }
    if args.verify:
        u = set_distribution(con.points)
        computed = convert(u) if pred.kind == "v" else u
        doc["computed"] = computed.to_dict()
        doc["match"] = computed == pred
    _emit(doc, out)
    return 0 if not args.verify or doc["match"] else 2


def cmd_equiv(args, out):
    F = parse_field(args.field)
    f = parse_poly(F, args.poly)
    if args.action == "transform":
        el = lambda s: parse_element(F, s)  # noqa: E731
        t = EquivTransform(el(args.a), el(args.b), el(args.c), el(args.d), el(args.e), args.sigma)
        g = transform(f, t)
        doc = {
            "poly": format_poly(f),
            "image": format_poly(g),
            "dist_poly": poly_distribution(f).to_dict(),
            "dist_image": poly_distribution(g).to_dict(),
        }
    elif args.action == "swap":
        g = nucleus_swap(f)
        doc = {"poly": format_poly(f), "image": format_poly(g)}
    else:
        rep = inverse_comparison(f)
        doc = rep.to_dict()
        doc["f"], doc["inverse"] = format_poly(rep.f), format_poly(rep.inverse)
    _emit(doc, out)


def cmd_spectrum(args, out):
    from .geometry import PointSet
    from .spectrum import max_value_probe, spectrum

    F = parse_field(args.field)
    res = spectrum(
        F.q,
        trials=args.trials,
        seed=args.seed,
        fix_quadrangle=not args.no_quadrangle,
        workers=args.workers,
        exhaustive=args.exhaustive,
        walk=not args.no_walk,
        probe=args.probe_max and args.arcs is None,
    )
    if args.probe_max and args.arcs is not None:
        try:
            items = json.loads(_read_text(args.arcs))
            reps = [PointSet.of(F, [parse_triple(F, s) for s in arc]) for arc in items]
        except (json.JSONDecodeError, TypeError) as exc:
            raise ParseError(f"arcs must be a JSON array of point arrays: {exc}") from exc
        res.probe = max_value_probe(reps, q=F.q)
    _emit(res.to_dict(), out)


def cmd_irreducible_count(args, out):
    F = parse_field(args.field)
    gammas = [parse_element(F, args.gamma)] if args.gamma is not None else list(range(F.q))
    rows = []
    for g in gammas:
        row = {"gamma": format_element(F, g), "count": count_irreducible_cubics_fixed_trace(F, g)}
        if args.brute:
            row["brute_force"] = count_irreducible_cubics_brute(F, g)
        rows.append(row)
    _emit({"field": args.field, "degree": 3, "rows": rows}, out)


# -- wiring ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="interdist", description="Intersection distributions over GF(q) and PG(2,q).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def field_cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--field", required=True, help="p^s[:c0,c1,...] or q")
        s.add_argument("--workers", type=int, default=1)
        s.set_defaults(func=fn)
        return s

    s = field_cmd("dist", cmd_dist, "v-distribution of a polynomial")
    s.add_argument("--poly", required=True)

    s = field_cmd("set-dist", cmd_set_dist, "u-distribution of a (q+1)-set")
    s.add_argument("--points", required=True, help="JSON array of '(x:y:z)', '@file' or '-'")

    s = sub.add_parser("convert", help="u <-> v, or complete from indices >= 3")
    s.add_argument("--input", required=True, help="JSON text, '@file' or '-'")
    s.add_argument("--tail", action="store_true", help="input is {index: count} for indices >= 3")
    s.add_argument("--q", type=int)
    s.add_argument("--kind", choices=("u", "v"), default="v")
    s.set_defaults(func=cmd_convert)

    s = field_cmd("degree-table", cmd_degree_table, "degrees of x^d for d = 2..q-1 with bounds")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")

    s = field_cmd("bounds", cmd_bounds, "bound report for one monomial")
    s.add_argument("--d", type=int, required=True)

    s = sub.add_parser("construct", help="build a two-line (q+1)-set")
    s.add_argument("--family", choices=FAMILIES, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--t", type=int, default=0)
    s.add_argument("--c", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--partition", choices=PARTITIONS, default="canonical")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = field_cmd("equiv", cmd_equiv, "equivalence transforms")
    s.add_argument("action", choices=("transform", "swap", "inverse-compare"))
    s.add_argument("--poly", required=True)
    for name, default in (("a", "1"), ("b", "0"), ("c", "0"), ("d", "0"), ("e", "1")):
        s.add_argument(f"--{name}", default=default)
    s.add_argument("--sigma", type=int, default=0)

    s = field_cmd("spectrum", cmd_spectrum, "non-hitting spectrum search")
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--probe-max", action="store_true")
    s.add_argument("--arcs", default=None, help="JSON arc representatives for --probe-max")
    s.add_argument("--no-walk", action="store_true")
    s.add_argument("--no-quadrangle", action="store_true")

    s = field_cmd("irreducible-count", cmd_irreducible_count, "irreducible cubics with fixed x^2 coefficient")
    s.add_argument("--gamma", default=None)
    s.add_argument("--brute", action="store_true")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == "convert" and args.tail and args.q is None:
            raise ParseError("--tail needs --q")
        code = args.func(args, out)
        return code or 0
    except ParseError as exc:
        _emit({"error": "ParseError", "message": str(exc)}, out)
        return 1
    except DomainError as exc:
        _emit(exc.to_dict(), out)
        return 2


if __name__ == "__main__":
    sys.exit(main())
