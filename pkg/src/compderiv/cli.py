"""Command-line surface: derive | expand | check | bell.

``derive`` computes D_y^n of a composition by any route (or all routes at
once), ``expand`` prints the symbolic partition expansion, ``check`` is
the randomized cross-route verification harness, and ``bell`` evaluates
partial or complete Bell polynomials.

Exit codes: 0 success, 2 usage or input errors, 3 mathematical
disagreement between routes (a correctness alarm, distinct from bad
input by design: this command doubles as the project's continuous
verification harness).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Sequence

from .composition import (
    DerivativeSequence,
    derivative_bell,
    derivative_partition_sum,
    partial_bell,
)
from .determinant import build_matrix, derivative_determinant, determinant_expand
from .exact import format_rational, parse_rational
from .partitions import enumerate_multiplicity_vectors, multinomial_weight, total_order
from .series import derivative_via_jets
from .symbolic import (
    derivative_sequence_of,
    nth_derivative_of_composition,
    parse,
    taylor_polynomial,
)

__all__ = ["main"]

METHODS = ("partition", "determinant", "bell", "series", "symbolic", "all")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DISAGREEMENT = 3


class _CliError(Exception):
    """Input or usage problem; reported on stderr with exit code 2."""


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be a non-negative integer, got {text}")
    return value


def decimal_string(value: Fraction, digits: int) -> str:
    """Fixed-point decimal rendering with the given digit count.

    Display-only courtesy; rounding is half away from zero and the exact
    value is never stored this way.
    """
    sign = "-" if value < 0 else ""
    numerator, denominator = abs(value.numerator), value.denominator
    scaled = numerator * 10**digits
    quotient, remainder = divmod(scaled, denominator)
    if 2 * remainder >= denominator:
        quotient += 1
    text = str(quotient).rjust(digits + 1, "0")
    if digits == 0:
        return sign + text
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def _render(value: Fraction, args: argparse.Namespace) -> str:
    if args.decimal is not None:
        return decimal_string(value, args.decimal)
    return format_rational(value)


def _parse_sequence_json(text: str, flag: str) -> DerivativeSequence:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _CliError(f"{flag}: invalid JSON: {exc}") from exc
    try:
        return DerivativeSequence.from_json(data)
    except (ValueError, TypeError) as exc:
        raise _CliError(f"{flag}: {exc}") from exc


def _derive_inputs(
    args: argparse.Namespace,
) -> tuple[DerivativeSequence, DerivativeSequence, bool]:
    """Return (phi sequence, psi sequence, expr_mode) from either input style."""
    expr_flags = [args.phi, args.psi, args.at]
    derivs_flags = [args.phi_derivs, args.psi_derivs]
    if any(v is not None for v in expr_flags) and any(
        v is not None for v in derivs_flags
    ):
        raise _CliError("give either --phi/--psi/--at or --phi-derivs/--psi-derivs, not both")
    if any(v is not None for v in expr_flags):
        if any(v is None for v in expr_flags):
            raise _CliError("expression input needs all of --phi, --psi and --at")
        try:
            phi_expr = parse(args.phi)
            psi_expr = parse(args.psi)
            at = parse_rational(args.at)
        except ValueError as exc:
            raise _CliError(str(exc)) from exc
        psi_seq = derivative_sequence_of(psi_expr, at, args.order)
        phi_seq = derivative_sequence_of(phi_expr, psi_seq.base, args.order)
        return phi_seq, psi_seq, True
    if any(v is None for v in derivs_flags):
        raise _CliError("derivative input needs both --phi-derivs and --psi-derivs")
    phi_seq = _parse_sequence_json(args.phi_derivs, "--phi-derivs")
    psi_seq = _parse_sequence_json(args.psi_derivs, "--psi-derivs")
    return phi_seq, psi_seq, False


def _route_value(
    method: str,
    phi: DerivativeSequence,
    psi: DerivativeSequence,
    n: int,
    expr_args: argparse.Namespace,
) -> Fraction:
    if method == "partition":
        return derivative_partition_sum(phi, psi, n)
    if method == "bell":
        return derivative_bell(phi, psi, n)
    if method == "determinant":
        return derivative_determinant(phi, psi, n)
    if method == "series":
        return derivative_via_jets(phi, psi, n)
    if method == "symbolic":
        return nth_derivative_of_composition(
            parse(expr_args.phi), parse(expr_args.psi), n, parse_rational(expr_args.at)
        )
    raise _CliError(f"unknown method {method!r}")


def _cmd_derive(args: argparse.Namespace) -> int:
    n = args.order
    phi, psi, expr_mode = _derive_inputs(args)
    try:
        phi.require_order(n, "phi")
        psi.require_order(n, "psi")
    except ValueError as exc:
        raise _CliError(str(exc)) from exc

    if args.method == "all":
        methods = ["partition", "bell"]
        if n >= 2:
            methods.append("determinant")
        if expr_mode:
            methods.extend(["series", "symbolic"])
    else:
        methods = [args.method]
        if args.method in ("series", "symbolic") and not expr_mode:
            raise _CliError(
                f"the {args.method} route requires expression inputs (--phi/--psi/--at)"
            )
        if args.method == "determinant" and n < 2:
            raise _CliError("the determinant route requires order >= 2")

    try:
        values = {m: _route_value(m, phi, psi, n, args) for m in methods}
    except ValueError as exc:
        raise _CliError(str(exc)) from exc

    agree = len(set(values.values())) == 1
    if args.method == "all":
        if args.json:
            payload: dict[str, Any] = {
                "n": n,
                "method": "all",
                "values": {m: format_rational(v) for m, v in values.items()},
                "agree": agree,
            }
            if args.decimal is not None:
                payload["decimal"] = {
                    m: decimal_string(v, args.decimal) for m, v in values.items()
                }
            print(json.dumps(payload))
        else:
            for m in methods:
                print(f"{m}: {_render(values[m], args)}")
        if not agree:
            print("route disagreement detected", file=sys.stderr)
            for m in methods:
                print(f"  {m} = {format_rational(values[m])}", file=sys.stderr)
            return EXIT_DISAGREEMENT
        return EXIT_OK

    value = values[args.method]
    expansion = None
    if args.show_expansion:
        if args.method != "determinant":
            raise _CliError("--show-expansion only applies to --method determinant")
        expansion = str(determinant_expand(build_matrix(psi, n - 1)))
    if args.json:
        payload = {"n": n, "method": args.method, "value": format_rational(value)}
        if expansion is not None:
            payload["expansion"] = expansion
        if args.decimal is not None:
            payload["decimal"] = decimal_string(value, args.decimal)
        print(json.dumps(payload))
    else:
        if expansion is not None:
            print(expansion)
        print(_render(value, args))
    return EXIT_OK


def _psi_monomial(parts: list[tuple[int, int]]) -> str:
    pieces = [f"psi({j})" if mj == 1 else f"psi({j})^{mj}" for j, mj in parts]
    return "*".join(pieces)


def _cmd_expand(args: argparse.Namespace) -> int:
    n = args.order
    terms = []
    for mvec in enumerate_multiplicity_vectors(n):
        weight = multinomial_weight(mvec)
        terms.append(
            {
                "m": list(mvec.m),
                "coefficient": format_rational(weight),
                "phi_order": total_order(mvec),
                "psi_powers": [[j, mj] for j, mj in mvec.parts()],
            }
        )
    if args.json:
        print(json.dumps(terms))
        return EXIT_OK
    for term in terms:
        mvec_text = "(" + ",".join(str(v) for v in term["m"]) + ")"
        monomial = _psi_monomial([(j, mj) for j, mj in term["psi_powers"]])
        print(
            f"m={mvec_text} coeff={term['coefficient']} "
            f"p={term['phi_order']} psi={monomial}"
        )
    return EXIT_OK


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 4))


def _cmd_check(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    report = []
    for n in range(1, args.max_n + 1):
        routes = ["partition", "bell", "series", "symbolic"]
        if n >= 2:
            routes.insert(2, "determinant")
        for trial in range(args.trials):
            at = _random_rational(rng)
            psi = DerivativeSequence(
                derivs=tuple(_random_rational(rng) for _ in range(n)),
                base=_random_rational(rng),
            )
            phi = DerivativeSequence(
                derivs=tuple(_random_rational(rng) for _ in range(n)),
                base=_random_rational(rng),
            )
            psi_expr = taylor_polynomial(psi, at)
            phi_expr = taylor_polynomial(phi, psi.base)
            values = {
                "partition": derivative_partition_sum(phi, psi, n),
                "bell": derivative_bell(phi, psi, n),
                "series": derivative_via_jets(phi, psi, n),
                "symbolic": nth_derivative_of_composition(phi_expr, psi_expr, n, at),
            }
            if n >= 2:
                values["determinant"] = derivative_determinant(phi, psi, n)
            if len(set(values.values())) != 1:
                print(
                    f"route disagreement at order {n}, trial {trial}:", file=sys.stderr
                )
                print(f"  at   = {format_rational(at)}", file=sys.stderr)
                print(f"  phi  = {json.dumps(phi.to_json())}", file=sys.stderr)
                print(f"  psi  = {json.dumps(psi.to_json())}", file=sys.stderr)
                for route in routes:
                    print(
                        f"  {route} = {format_rational(values[route])}",
                        file=sys.stderr,
                    )
                return EXIT_DISAGREEMENT
        report.append({"n": n, "trials": args.trials, "routes": routes, "ok": True})
    if args.json:
        print(
            json.dumps(
                {
                    "max_n": args.max_n,
                    "trials": args.trials,
                    "seed": args.seed,
                    "orders": report,
                    "ok": True,
                }
            )
        )
    else:
        for row in report:
            print(
                f"order {row['n']:>2}: {row['trials']} trials, "
                f"{len(row['routes'])} routes, ok"
            )
        print(f"all routes agree up to order {args.max_n} (seed {args.seed})")
    return EXIT_OK


def _cmd_bell(args: argparse.Namespace) -> int:
    n = args.order
    k = args.parts
    if k is not None and (k < 1 or k > n):
        raise _CliError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    if args.psi_derivs is not None:
        psi = _parse_sequence_json(args.psi_derivs, "--psi-derivs")
    else:
        psi = DerivativeSequence(derivs=(Fraction(1),) * n)
    try:
        if k is None:
            value = sum(
                (partial_bell(n, i, psi) for i in range(1, n + 1)), Fraction(0)
            )
        else:
            value = partial_bell(n, k, psi)
    except ValueError as exc:
        raise _CliError(str(exc)) from exc
    if args.json:
        print(json.dumps({"n": n, "k": k, "value": format_rational(value)}))
    else:
        print(_render(value, args))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="emit a JSON object instead of text"
    )
    common.add_argument(
        "--seed", type=_nonnegative_int, default=0, help="PRNG seed (used by check)"
    )
    common.add_argument(
        "--decimal",
        type=_nonnegative_int,
        default=None,
        metavar="DIGITS",
        help="also render values as fixed-point decimals (display only)",
    )

    parser = argparse.ArgumentParser(
        prog="compderiv",
        description="Exact n-th derivatives of function compositions, five ways.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_derive = sub.add_parser(
        "derive", parents=[common], help="compute D_y^n of phi(psi(y))"
    )
    p_derive.add_argument("-n", "--order", type=_positive_int, required=True)
    p_derive.add_argument("--method", choices=METHODS, default="partition")
    p_derive.add_argument("--phi", help="outer polynomial, e.g. 'x^3 + x'")
    p_derive.add_argument("--psi", help="inner polynomial, e.g. '2*y^2 + y'")
    p_derive.add_argument("--at", help="expansion point as 'p/q'")
    p_derive.add_argument("--phi-derivs", help='outer derivatives JSON {"derivs": [...]}')
    p_derive.add_argument("--psi-derivs", help='inner derivatives JSON {"derivs": [...]}')
    p_derive.add_argument(
        "--show-expansion",
        action="store_true",
        help="with --method determinant, also print the formal Phi-polynomial",
    )
    p_derive.set_defaults(func=_cmd_derive)

    p_expand = sub.add_parser(
        "expand", parents=[common], help="print the partition expansion of D_y^n"
    )
    p_expand.add_argument("-n", "--order", type=_positive_int, required=True)
    p_expand.set_defaults(func=_cmd_expand)

    p_check = sub.add_parser(
        "check", parents=[common], help="randomized cross-route verification"
    )
    p_check.add_argument("--max-n", type=_positive_int, default=10)
    p_check.add_argument("--trials", type=_positive_int, default=100)
    p_check.set_defaults(func=_cmd_check)

    p_bell = sub.add_parser(
        "bell", parents=[common], help="partial or complete Bell polynomial values"
    )
    p_bell.add_argument("-n", "--order", type=_positive_int, required=True)
    p_bell.add_argument("-k", "--parts", type=int, default=None)
    p_bell.add_argument("--psi-derivs", help='inner derivatives JSON {"derivs": [...]}')
    p_bell.set_defaults(func=_cmd_bell)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
