"""Command-line front end.

Every subcommand writes a deterministic artifact (JSON, or CSV for the
table-shaped outputs) that embeds the run configuration and the library
version; identical configuration and seed give byte-identical output.

Exit codes: 0 when all asserted checks pass, 1 for validation or check
failures (with a machine-readable failure record on stdout/the artifact),
2 when an enumeration budget is exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import random
import sys
from fractions import Fraction

from . import __version__
from .asym import (
    Regime,
    binomial_envelope,
    binomial_pmf,
    condition_a,
    condition_b,
    gamma_at_most_one,
    log_cycle_average_bound,
    mu_binomial_pmf,
    pmf_remainder_bound,
    poisson_pmf,
    w_remainder_bound,
)
from .chars import character_table, l_polynomial, weil_bound
from .comb import (
    binomial_lower_bound,
    coordinate_sieve_check,
    cycle_average_bruteforce,
    cycle_average_closed,
    cycle_average_series,
    truncated_binomial_sum,
)
from .dist import (
    classify_row,
    default_point_set,
    exact_distributions_all,
    factorial_moments,
    factorization_counts,
    pmf_remainder_gap,
    rs_census,
    rs_distance_row,
    verify_series_identities,
)
from .errors import BudgetExceededError, ValidationError
from .ffield import FieldSpec, Polynomial
from .hayes import ClassGroup, HayesParams, distinct_irreducible_factors, phi, phi_relative_gap


def _field_args(sub: argparse.ArgumentParser, hayes: bool = True) -> None:
    sub.add_argument("--p", type=int, required=True, help="prime characteristic")
    sub.add_argument("--a", type=int, default=1, help="extension degree (default 1)")
    if hayes:
        sub.add_argument("--ell", type=int, default=1, help="number of prescribed leading coefficients")
        sub.add_argument("--Q", default="1", help='modulus polynomial, e.g. "x^2 + x + 1"')


def _output_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--max-enum", type=int, default=None, help="enumeration budget override")
    sub.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    sub.add_argument("--delta0", type=float, default=0.05)


def _build_group(args) -> tuple[FieldSpec, HayesParams, ClassGroup]:
    spec = FieldSpec(args.p, args.a)
    Q = Polynomial.from_text(spec, args.Q)
    params = HayesParams(args.ell, Q)
    return spec, params, ClassGroup(params)


def _config_dict(args) -> dict:
    skip = {"func", "out"}  # the destination path is not semantic configuration
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(args, payload: dict, rows: list[dict] | None = None, columns: list[str] | None = None) -> None:
    """Write the artifact: JSON object, or CSV rows with a config comment line."""
    payload = {"version": __version__, "config": _config_dict(args), **payload}
    if args.format == "csv" and rows is not None:
        buf = io.StringIO()
        buf.write("# " + json.dumps({"version": __version__, "config": _config_dict(args)}, sort_keys=True) + "\n")
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _parse_points(spec: FieldSpec, text: str | None):
    """Point set from comma-separated element indices; None = all non-roots of Q."""
    if text is None:
        return None
    return tuple(spec.element(int(tok)) for tok in text.split(",") if tok.strip())


def cmd_exact_dist(args) -> int:
    spec, params, group = _build_group(args)
    points = _parse_points(spec, args.points)
    dists = exact_distributions_all(group, args.k, points, budget=args.max_enum)
    payload = {
        "classes": group.export_classes(),
        "distributions": [d.to_json() for d in dists],
    }
    _emit(args, payload)
    return 0


def cmd_moments_check(args) -> int:
    spec, params, group = _build_group(args)
    t, ell = params.t, params.ell
    points = default_point_set(params)
    n = len(points)
    failures = []
    records = []
    for k in range(args.k_min, args.k + 1):
        dists = exact_distributions_all(group, k, points, budget=args.max_enum)
        Ws = {
            j: factorization_counts(group, j, k, points, budget=args.max_enum)
            for j in range(k + 1, k + t + ell + 1)
        }
        for eps in range(group.order):
            moments = factorial_moments(dists[eps], k + t + ell)
            for j, m in enumerate(moments):
                if j <= k:
                    want = Fraction(math.comb(n, j), spec.q ** j)
                else:
                    want = Fraction(Ws[j][eps], spec.q ** k)
                ok = m == want
                records.append(
                    {"k": k, "eps": eps, "j": j, "moment": _frac(m), "expected": _frac(want), "pass": ok}
                )
                if not ok:
                    failures.append(records[-1])
    _emit(args, {"checks": records, "failures": failures, "pass": not failures})
    return 0 if not failures else 1


def cmd_weil(args) -> int:
    spec, params, group = _build_group(args)
    table = character_table(group)
    q, t, ell = spec.q, params.t, params.ell
    out = []
    ok = True
    for chi in range(table.order):
        entry: dict = {"chi": chi, "exponents": list(table.characters[chi].exponents)}
        if table.characters[chi].is_trivial:
            entry["trivial"] = True
        else:
            L = l_polynomial(table, chi, group, budget=args.max_enum)
            coeffs = []
            for j, c in enumerate(L.coeffs):
                bound = weil_bound(j, t, ell, q)
                slack = bound - abs(c)
                coeffs.append({"j": j, "re": c.real, "im": c.imag, "bound": bound, "slack": slack})
                if slack < -1e-9 * max(1.0, q ** (j / 2)):
                    ok = False
            entry["coeffs"] = coeffs
            entry["degree"] = L.degree
            entry["degree_bound"] = L.degree_bound
            entry["root_moduli"] = list(L.root_moduli())
        out.append(entry)
    _emit(args, {"characters": out, "orders": list(table.decomposition.orders), "pass": ok})
    return 0 if ok else 1


def cmd_bounds_check(args) -> int:
    spec, params, group = _build_group(args)
    q, t, ell = spec.q, params.t, params.ell
    p = spec.p
    rng = random.Random(args.seed)
    checks: list[dict] = []

    def record(name: str, ok: bool, lhs: str, rhs: str) -> None:
        checks.append({"name": name, "pass": bool(ok), "lhs": lhs, "rhs": rhs})

    # coprime-count sandwich and relative gap
    factors = distinct_irreducible_factors(params.Q)
    drop = sum(Fraction(1, q ** P.degree) for P in factors)
    for j in range(0, 7):
        val = phi(j, params.Q)
        low = q ** j * (1 - drop)
        record(f"phi sandwich j={j}", low <= val <= q ** j, f"{float(low)} <= {val}", f"{q ** j}")
        record(f"phi relative gap j={j}", phi_relative_gap(j, params.Q) <= drop, _frac(phi_relative_gap(j, params.Q)), _frac(Fraction(drop)))

    # binomial lower bound
    ok = all(
        binomial_lower_bound(M, m) <= math.comb(M, m)
        for M in range(2, 31)
        for m in range(1, M)
    )
    record("binomial lower bound M<=30", ok, "stirling-type bound", "C(M, m)")

    # truncated binomial sum: alternating floor (where the terms decrease)
    # and proximity to (1-1/q)^(n-r)
    mu_ok = True
    close_ok = True
    for n in range(0, 13):
        for qq in range(2, 10):
            for r in range(0, n + 1):
                target = Fraction(qq - 1, qq) ** (n - r)
                for m in range(0, 13):
                    mu = truncated_binomial_sum(m, r, n, qq)
                    if m >= 1 and n - r <= qq:
                        mu_ok &= mu >= Fraction(qq - n + r, qq)
                    close_ok &= abs(mu - target) <= Fraction(math.comb(n - r, m + 1), qq ** (m + 1))
    record("truncated binomial floor", mu_ok, "mu_m(r)", "(q-n+r)/q on n-r <= q")
    record("truncated binomial proximity", close_ok, "|mu_m - (1-1/q)^(n-r)|", "C(n-r, m+1) q^-(m+1)")

    # log bounds on the cycle average
    lb_ok = True
    for n in (4, 8, 12):
        for j in range(1, 9):
            for g in (Fraction(1, 4), Fraction(1, 2), Fraction(1)):
                exact = math.log(cycle_average_series(j, n, g, p))
                if j <= n and exact > log_cycle_average_bound(j, n, g, p, "a"):
                    lb_ok = False
                if j <= 2 * p * n * g and exact > log_cycle_average_bound(j, n, g, p, "b"):
                    lb_ok = False
    record("log cycle-average bounds", lb_ok, "ln A_j(n, gamma)", "variant a/b bounds")

    # coordinate sieve on seeded random tables
    sieve_ok = True
    for trial in range(10):
        nd = rng.randint(1, 4)
        j = rng.randint(1, 3)
        D = list(range(nd))
        table = {}
        for xs in itertools.product(D, repeat=j):
            table[xs] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        direct, sieved = coordinate_sieve_check(j, D, table)
        sieve_ok &= direct == sieved
    record("coordinate sieve (seeded)", sieve_ok, "direct sum", "signed cycle sum")

    # factorization-count remainder and pmf remainder on this group
    points = default_point_set(params)
    n = len(points)
    if ell >= 1 and gamma_at_most_one(n, q, t, ell):
        for k in range(0, args.k + 1):
            dists = exact_distributions_all(group, k, points, budget=args.max_enum)
            for j in range(k + 1, k + t + ell + 1):
                W = factorization_counts(group, j, k, points, budget=args.max_enum)
                main = Fraction(phi(k + t + ell - j, params.Q) * math.comb(n, j), group.order)
                bound = w_remainder_bound(j, n, q, k, t, ell, group.order)
                worst = max(abs(w - main) for w in W)
                record(
                    f"factorization remainder k={k} j={j}",
                    worst <= bound,
                    _frac(Fraction(worst)),
                    _frac(bound),
                )
            for eps in range(group.order):
                for r in range(0, k + t + ell + 1):
                    lhs = pmf_remainder_gap(group, dists[eps], r, k)
                    rhs = pmf_remainder_bound(r, n, q, k, t, ell)
                    record(f"pmf remainder k={k} eps={eps} r={r}", lhs <= rhs, _frac(lhs), _frac(rhs))
    else:
        checks.append(
            {
                "name": "remainder bounds",
                "pass": True,
                "skipped": "hypotheses ell >= 1 and gamma <= 1 not met",
            }
        )

    all_ok = all(c["pass"] for c in checks)
    _emit(args, {"checks": checks, "pass": all_ok})
    return 0 if all_ok else 1


def cmd_rs(args) -> int:
    spec = FieldSpec(args.p, args.a)
    if args.word:
        f = Polynomial.from_text(spec, args.word)
        row = rs_distance_row(f, args.k, args.ell, budget=args.max_enum)
        _emit(args, {"row": row.to_json(), "kind": classify_row(row)})
        return 0
    census = rs_census(spec, args.k, args.ell, budget=args.max_enum)
    _emit(args, {"census": census})
    return 0


def cmd_approx(args) -> int:
    spec, params, group = _build_group(args)
    q, t, ell = spec.q, params.t, params.ell
    points = default_point_set(params)
    n = len(points)
    dists = exact_distributions_all(group, args.k, points, budget=args.max_enum)
    rows = []
    for eps in range(group.order):
        for r in sorted(dists[eps].counts):
            exact = dists[eps].probability(r)
            mu_mass = mu_binomial_pmf(r, n, q, args.k, t, ell)
            row = {
                "eps": eps,
                "r": r,
                "count": str(dists[eps].counts[r]),
                "exact": _frac(exact),
                "exact_float": float(exact),
                "binomial": float(binomial_pmf(r, n, q)) if r <= n else 0.0,
                "poisson": poisson_pmf(r, n, q),
                "mu_mass": float(mu_mass),
                "ratio_to_mu": float(exact / mu_mass) if mu_mass else float("inf"),
                "envelope": float(binomial_envelope(r, n, q, args.k)) if r < args.k else "",
            }
            rows.append(row)
    columns = [
        "eps", "r", "count", "exact", "exact_float", "binomial", "poisson",
        "mu_mass", "ratio_to_mu", "envelope",
    ]
    _emit(args, {"table": rows}, rows=rows, columns=columns)
    return 0


def cmd_regimes(args) -> int:
    q = args.p ** args.a
    n = args.n if args.n is not None else q - args.t
    rows = []
    for k in args.k_list:
        regime = Regime(q=q, k=k, t=args.t, ell=args.ell, n=n, delta0=args.delta0)
        ca = condition_a(regime.p, regime.c, regime.gamma, args.delta0)
        cb = condition_b(regime.p, regime.c, regime.gamma, args.delta0)
        rows.append(
            {
                "q": q, "k": k, "t": args.t, "ell": args.ell, "n": n,
                "c": regime.c, "gamma": regime.gamma,
                "condition_a": bool(ca), "condition_a_lhs": ca.lhs, "condition_a_rhs": ca.rhs,
                "condition_b": bool(cb), "condition_b_notes": "; ".join(cb.notes),
            }
        )
    columns = [
        "q", "k", "t", "ell", "n", "c", "gamma",
        "condition_a", "condition_a_lhs", "condition_a_rhs",
        "condition_b", "condition_b_notes",
    ]
    _emit(args, {"table": rows}, rows=rows, columns=columns)
    return 0


def cmd_kernels(args) -> int:
    if args.kernel == "truncated-binomial":
        value = truncated_binomial_sum(args.m, args.r, args.n, args.q)
        _emit(args, {"kernel": args.kernel, "value": _frac(value)})
    elif args.kernel == "cycle-average":
        a = Fraction(args.a_val)
        b = Fraction(args.b_val)
        series = cycle_average_series(args.j, a, b, args.p_char)
        routes = {
            "series": _frac(series),
            "closed": _frac(cycle_average_closed(args.j, a, b, args.p_char)),
        }
        if args.j <= 9:
            routes["cycle_types"] = _frac(cycle_average_bruteforce(args.j, a, b, args.p_char))
        _emit(args, {"kernel": args.kernel, "value": _frac(series), "routes": routes})
    elif args.kernel == "phi":
        spec = FieldSpec(args.p, args.a)
        Q = Polynomial.from_text(spec, args.Q)
        _emit(args, {"kernel": args.kernel, "value": str(phi(args.j, Q))})
    else:
        raise ValidationError(f"unknown kernel {args.kernel}")
    return 0


def cmd_series_check(args) -> int:
    spec, params, group = _build_group(args)
    report = verify_series_identities(group, args.d_max, budget=args.max_enum)
    payload = {
        "pass": report.all_ok,
        "checks": [{"name": c.name, "pass": c.ok, "detail": c.detail} for c in report.checks],
    }
    _emit(args, payload)
    return 0 if report.all_ok else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hayesdist",
        description="Exact zero-count distributions over Hayes classes, with verification suites.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    s = subs.add_parser("exact-dist", help="per-class zero-count distributions")
    _field_args(s)
    s.add_argument("--k", type=int, required=True)
    s.add_argument(
        "--points", default=None,
        help="evaluation set D as comma-separated element indices (default: all non-roots of Q)",
    )
    _output_args(s)
    s.set_defaults(func=cmd_exact_dist)

    s = subs.add_parser("moments-check", help="verify the factorial-moment identity")
    _field_args(s)
    s.add_argument("--k", type=int, required=True, help="largest k to verify")
    s.add_argument("--k-min", type=int, default=0)
    _output_args(s)
    s.set_defaults(func=cmd_moments_check)

    s = subs.add_parser("weil", help="character and L-polynomial diagnostics")
    _field_args(s)
    _output_args(s)
    s.set_defaults(func=cmd_weil)

    s = subs.add_parser("bounds-check", help="inequality suites (sandwich, envelopes, remainders)")
    _field_args(s)
    s.add_argument("--k", type=int, default=2, help="largest k for the remainder suites")
    _output_args(s)
    s.set_defaults(func=cmd_bounds_check)

    s = subs.add_parser("rs", help="Reed-Solomon distance rows and deep-hole census")
    _field_args(s, hayes=False)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--word", default=None, help="received word; omit for a census")
    s.add_argument("--census", action="store_true", help="classify every received word (default)")
    _output_args(s)
    s.set_defaults(func=cmd_rs)

    s = subs.add_parser("approx", help="exact vs limit-shape comparison table")
    _field_args(s)
    s.add_argument("--k", type=int, required=True)
    _output_args(s)
    s.set_defaults(func=cmd_approx)

    s = subs.add_parser("regimes", help="regime predicate table")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--a", type=int, default=1)
    s.add_argument("--ell", type=int, default=1)
    s.add_argument("--t", type=int, default=0)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--k-list", type=lambda s: [int(x) for x in s.split(",")], required=True)
    _output_args(s)
    s.set_defaults(func=cmd_regimes)

    s = subs.add_parser("series-check", help="group-algebra series identity checks")
    _field_args(s)
    s.add_argument("--d-max", type=int, required=True)
    _output_args(s)
    s.set_defaults(func=cmd_series_check)

    s = subs.add_parser("kernels", help="ad-hoc kernel evaluation")
    s.add_argument("kernel", choices=("truncated-binomial", "cycle-average", "phi"))
    s.add_argument("--m", type=int, default=0)
    s.add_argument("--r", type=int, default=0)
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--j", type=int, default=0)
    s.add_argument("--a-val", default="1", help="cycle-average weight a (rational)")
    s.add_argument("--b-val", default="1", help="cycle-average weight b (rational)")
    s.add_argument("--p-char", type=int, default=2, help="characteristic for cycle lengths")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--a", type=int, default=1)
    s.add_argument("--Q", default="1")
    _output_args(s)
    s.set_defaults(func=cmd_kernels)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        record = {"error": "budget-exceeded", "what": exc.what, "value": exc.value, "budget": exc.budget}
        sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
        return 2
    except (ValidationError, ValueError) as exc:
        record = {"error": "validation", "message": str(exc)}
        sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
