"""Command-line interface.

Subcommands: hilbert, laurent, symplectic, finite, scan.  Canonical
output is a versioned JSON document on stdout with all rationals
rendered exactly; exit code 0 on success, 2 on invalid input, 3 on an
internal verification failure.
"""

from __future__ import annotations

import argparse
import csv
import decimal
import json
import sys
from fractions import Fraction

from .circle import DEFAULT_ORACLE_DEGREE, hilbert_series, normalize_weights
from .errors import (InsufficientCoefficients, NotApplicable,
                     PartitionPointsMismatch, SquotError, UnsupportedDimension,
                     ZeroWeight)
from .exact import (DEFAULT_SLACK, ONE, FactoredDenominator, QPolynomial,
                    RationalFunction, laurent_at_one, series_of_rational)
from .finite import FiniteDiagonalGroup, analyze_group
from .laurent import gamma0_closed, gamma2_closed, symplectic_check
from .scan import full_scan

SCHEMA_VERSION = "1"

#: Errors caused by what the user asked for, as opposed to failures of
#: the computation's own consistency checks.
_INPUT_ERRORS = (ZeroWeight, UnsupportedDimension, InsufficientCoefficients,
                 PartitionPointsMismatch, NotApplicable)


def _rat(q) -> str:
    return str(Fraction(q))


def _coeff(c):
    f = Fraction(c)
    return int(f) if f.denominator == 1 else str(f)


def series_payload(f: RationalFunction) -> dict:
    den = f.denominator
    if not isinstance(den, FactoredDenominator):
        den = FactoredDenominator((), 0, den)
    payload = {
        "numerator": [_coeff(c) for c in f.numerator.coeffs],
        "denominator": [[m, e] for m, e in den.factors],
    }
    if den.other != ONE:
        payload["extraFactor"] = [_coeff(c) for c in den.other.coeffs]
    return payload


def payload_to_rational(payload: dict) -> RationalFunction:
    num = QPolynomial(Fraction(str(c)) for c in payload["numerator"])
    extra = QPolynomial(Fraction(str(c))
                        for c in payload.get("extraFactor", [1]))
    den = FactoredDenominator.from_pairs(
        ((m, e) for m, e in payload["denominator"]), other=extra)
    return RationalFunction(num, den)


def laurent_payload(expansion) -> dict:
    return {
        "poleOrder": expansion.pole_order,
        "coefficients": [_rat(c) for c in expansion.coefficients],
    }


def _parse_weights(text: str):
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ZeroWeight(f"cannot parse weights {text!r}")


def _parse_generator(text: str):
    body = text[len("cyclic:"):] if text.startswith("cyclic:") else text
    modulus, sep, rest = body.partition(":")
    try:
        return int(modulus), tuple(int(tok) for tok in rest.split(","))
    except ValueError:
        raise ValueError(f"cannot parse generator {text!r}; "
                         "expected m:e1,...,en")


def load_series(paths) -> RationalFunction:
    """Read a series fixture: numerator coefficients, then m:e factors.

    Both lines may live in one file or in two separate files; blank
    lines and '#' comments are skipped.
    """
    lines = []
    for path in paths:
        with open(path) as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if line:
                    lines.append(line)
    if len(lines) != 2:
        raise ValueError(f"expected 2 data lines across {list(paths)}, "
                         f"found {len(lines)}")
    num = QPolynomial(Fraction(tok) for tok in lines[0].split())
    pairs = []
    for tok in lines[1].split():
        m, _, e = tok.partition(":")
        pairs.append((int(m), int(e)))
    return RationalFunction(num, FactoredDenominator.from_pairs(pairs))


def _series_source(args) -> RationalFunction:
    if args.weights is not None:
        return hilbert_series(_parse_weights(args.weights)).on_shell
    return load_series(args.series)


def _document(command: str, request: dict, result: dict) -> dict:
    return {"schemaVersion": SCHEMA_VERSION, "command": command,
            "request": request, "result": result}


def _emit(args, document: dict) -> int:
    json.dump(document, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_hilbert(args) -> int:
    weights = _parse_weights(args.weights)
    oracle = args.oracle_verify if args.oracle_verify is not None \
        else DEFAULT_ORACLE_DEGREE
    result = hilbert_series(weights, slack=args.slack, oracle_degree=oracle)
    series = result.off_shell if args.off else result.on_shell
    payload = {
        "method": result.method,
        "normalizedWeights": list(result.weights),
        "shell": "off" if args.off else "on",
        "series": series_payload(series),
    }
    if result.pieces:
        payload["pieces"] = [series_payload(p) for p in result.pieces]
    if args.text:
        _print_series_text(series)
        return 0
    return _emit(args, _document("hilbert",
                                 {"weights": list(weights), "off": args.off},
                                 payload))


def _print_series_text(f: RationalFunction) -> None:
    num = " + ".join(f"{_coeff(c)}*x^{k}" if k else f"{_coeff(c)}"
                     for k, c in enumerate(f.numerator.coeffs) if c)
    den = f.denominator
    if isinstance(den, FactoredDenominator):
        parts = [f"(1-x^{m})^{e}" if e > 1 else f"(1-x^{m})"
                 for m, e in den.factors]
        if den.other != ONE:
            parts.append(f"[{list(den.other.coeffs)}]")
        dtxt = "".join(parts) or "1"
    else:
        dtxt = str(list(den.coeffs))
    print(f"({num}) / {dtxt}")


def cmd_laurent(args) -> int:
    if args.weights is not None:
        weights = _parse_weights(args.weights)
        on = hilbert_series(weights).on_shell
        expansion = laurent_at_one(on, args.order)
        payload = laurent_payload(expansion)
        norm = normalize_weights(weights)
        closed = {}
        if len(norm) >= 2:
            closed["gamma0"] = _rat(gamma0_closed(norm))
        if len(norm) >= 3:
            closed["gamma2"] = _rat(gamma2_closed(norm))
            closed["gamma3"] = closed["gamma2"]
        if closed:
            agree = all(
                Fraction(v) == expansion.coefficients[int(k[len("gamma"):])]
                for k, v in closed.items()
                if int(k[len("gamma"):]) <= args.order)
            payload["closedForms"] = closed
            payload["agreement"] = agree
        request = {"weights": list(weights), "order": args.order}
    else:
        f = load_series(args.series)
        payload = laurent_payload(laurent_at_one(f, args.order))
        request = {"series": list(args.series), "order": args.order}
    return _emit(args, _document("laurent", request, payload))


def cmd_symplectic(args) -> int:
    f = _series_source(args)
    expansion = laurent_at_one(f, 2 * args.order - 1)
    report = symplectic_check(expansion, args.order)
    payload = {
        "maxOrder": report.max_order,
        "poleOrder": expansion.pole_order,
        "residuals": [_rat(s) for s in report.residuals],
        "violations": list(report.violations),
        "passed": report.passed,
    }
    request = ({"weights": args.weights} if args.weights is not None
               else {"series": list(args.series)})
    request["order"] = args.order
    return _emit(args, _document("symplectic", request, payload))


def cmd_finite(args) -> int:
    gens = [_parse_generator(g) for g in args.gen]
    group = FiniteDiagonalGroup.from_generators(gens)
    result = analyze_group(group, slack=args.slack)
    payload = {
        "order": group.order,
        "dimension": group.dimension,
        "coordinateOrders": list(group.coordinate_orders()),
        "series": series_payload(result.series),
        "laurent": laurent_payload(result.laurent),
        "gammas": [_rat(g) for g in result.gammas],
        "primitivePseudoreflectionOrders":
            list(result.reflections.primitive_orders),
        "pseudoreflectionCount": result.reflections.reflection_count,
        "twoCoordinateCount": result.reflections.two_coordinate_count,
        "qContribution": _rat(result.q_contribution),
        "identityGamma3_2Gamma4_Gamma5": "0",
    }
    if args.order:
        expansion = laurent_at_one(result.series, 2 * args.order - 1)
        report = symplectic_check(expansion, args.order)
        payload["symplectic"] = {
            "maxOrder": report.max_order,
            "residuals": [_rat(s) for s in report.residuals],
            "violations": list(report.violations),
            "passed": report.passed,
        }
    return _emit(args, _document("finite",
                                 {"generators": list(args.gen),
                                  "order": args.order},
                                 payload))


def _twelve_places(q: Fraction) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = 40
        d = decimal.Decimal(q.numerator) / decimal.Decimal(q.denominator)
        return format(d.quantize(decimal.Decimal("1." + "0" * 12)), "f")


def cmd_scan(args) -> int:
    if args.n != 3:
        raise NotApplicable(f"only n = 3 scans are supported, got {args.n}")
    if args.max_level < 3:
        raise NotApplicable("max level must be >= 3")
    rows = full_scan(args.max_level, jobs=args.jobs)
    records = [{
        "level": r.level,
        "hits": r.hits,
        "total": r.total,
        "probability": _rat(r.probability),
        "decimal": _twelve_places(r.probability),
    } for r in rows]
    if args.out:
        with open(args.out + ".jsonl", "w") as fh:
            for rec in records:
                fh.write(json.dumps(rec) + "\n")
        with open(args.out + ".csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["level", "hits", "total", "probability",
                             "decimal"])
            for rec in records:
                writer.writerow([rec["level"], rec["hits"], rec["total"],
                                 rec["probability"], rec["decimal"]])
    return _emit(args, _document("scan",
                                 {"n": args.n, "maxLevel": args.max_level},
                                 {"levels": records}))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squot",
        description="Exact Hilbert series of symplectic circle and "
                    "finite-group quotients.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("hilbert", help="compute a circle-quotient series")
    p.add_argument("--weights", required=True,
                   help="comma-separated nonzero integers")
    p.add_argument("--off", action="store_true",
                   help="report the off-shell series instead")
    p.add_argument("--oracle-verify", type=int, metavar="D",
                   help="verify against monomial counts through degree D")
    p.add_argument("--slack", type=int, default=DEFAULT_SLACK)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True)
    fmt.add_argument("--text", action="store_true", default=False)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("laurent", help="Laurent data at x = 1")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--weights")
    src.add_argument("--series", nargs="+", metavar="FILE",
                     help="fixture file(s): numerator line, factor line")
    p.add_argument("--order", type=int, default=5, metavar="K",
                   help="report gamma_0..gamma_K")
    p.set_defaults(func=cmd_laurent)

    p = sub.add_parser("symplectic", help="test the S_m constraints")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--weights")
    src.add_argument("--series", nargs="+", metavar="FILE")
    p.add_argument("--order", type=int, required=True, metavar="R",
                   help="check S_1..S_R")
    p.set_defaults(func=cmd_symplectic)

    p = sub.add_parser("finite", help="finite diagonal abelian subgroup")
    p.add_argument("--gen", action="append", required=True,
                   metavar="M:E1,...,EN",
                   help="generator m:e1,...,en (repeatable); "
                        "cyclic:m:... is accepted too")
    p.add_argument("--order", type=int, metavar="R",
                   help="also check S_1..S_R")
    p.add_argument("--slack", type=int, default=DEFAULT_SLACK)
    p.set_defaults(func=cmd_finite)

    p = sub.add_parser("scan", help="integrality statistics over triples")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--max-level", type=int, required=True, metavar="L")
    p.add_argument("--out", metavar="BASE",
                   help="write BASE.jsonl and BASE.csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SquotError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
