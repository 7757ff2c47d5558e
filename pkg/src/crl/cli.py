"""Command-line entry point ``crl``.

Exit codes: 0 success, 2 configuration or input error, 3 a requested check
(``--check-*`` / ``--max-*`` flags) failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from crl import report
from crl.atoms import atom_probability, bound_report, parse_vector_file
from crl.classify import classify_common_roots_1d, classify_point, decompose_terms
from crl.dunomial import (
    EXACT,
    NUMERIC,
    count_satisfied,
    enumerate_dunomials,
    enumerate_reduced_by_order,
    is_exact_point,
    parse_point,
    r_of_x,
)
from crl.experiment import (
    EXHAUSTIVE,
    CampaignConfig,
    ConfigError,
    asymptotic_table,
    bound_suite,
    estimate_p,
    exact_p_bruteforce,
    scaled_in_range,
)
from crl.poly import from_sign_string

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CHECK = 3


class CheckFailed(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _range(text: str) -> tuple[float, float]:
    lo, hi = (float(v) for v in text.split(","))
    return lo, hi


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def cmd_estimate(args) -> None:
    cfg = CampaignConfig(d=args.d, n=args.n, ell=args.ell, trials=args.trials, master_seed=args.seed,
                         prime_budget=args.prime_budget, tol=args.tol, use_filter=not args.no_filter)
    rep = estimate_p(cfg, timing=args.timing)
    _emit(rep.to_json(), args.output)
    if args.check_scaled:
        lo, hi = args.check_scaled
        if not scaled_in_range([rep.scaled[0]], lo, hi):
            raise CheckFailed(f"p_hat*n = {rep.scaled[0]:.6g} outside [{lo}, {hi}]")


def cmd_exact(args) -> None:
    rep = exact_p_bruteforce(CampaignConfig(n=args.n, mode=EXHAUSTIVE, prime_budget=args.prime_budget),
                             oracle=args.oracle)
    _emit(rep.to_json(), args.output)
    if args.check:
        terms = decompose_terms(args.n)
        t = rep.tallies
        pairs = rep.pairs
        problems = []
        if rep.oracle_discrepancies:
            problems.append(f"{rep.oracle_discrepancies} oracle discrepancies")
        if t["both_vanish_at_1"] != terms.I * pairs or t["both_vanish_at_-1"] != terms.II * pairs:
            problems.append("tallies at +1/-1 differ from the decomposition terms")
        if t["both_vanish_at_1_and_-1"] != -terms.III * pairs:
            problems.append("joint tally differs from |III|")
        if problems:
            raise CheckFailed("; ".join(problems))


def cmd_table(args) -> None:
    csv, reports = asymptotic_table(args.n, args.trials, args.seed, d=args.d, timing=args.timing,
                                    prime_budget=args.prime_budget, use_filter=not args.no_filter)
    _emit(csv, args.output)
    if args.check_scaled:
        lo, hi = args.check_scaled
        vals = [float(r.p_hat if args.d == 1 else r.p_hat_pessimistic) * r.config.n for r in reports]
        if not scaled_in_range(vals, lo, hi):
            raise CheckFailed(f"scaled values {vals} not all within [{lo}, {hi}]")


def cmd_lo(args) -> None:
    if args.suite:
        out = bound_suite()
        _emit(report.dumps(out), args.output)
        halasz = out["maxima"]["halasz_ratio"]["max"]
    else:
        if not args.input:
            raise ConfigError("lo needs --input FILE or --suite")
        xi = parse_vector_file(Path(args.input).read_text())
        br = bound_report(xi, method=args.method)
        res = atom_probability(xi, method=args.method)
        body = {"mode": xi.mode, "zero_count": res.zero_count, **br.to_dict(), "warnings": list(res.warnings)}
        _emit(report.dumps(body), args.output)
        halasz = br.halasz_ratio
    if args.max_halasz is not None and halasz > args.max_halasz:
        raise CheckFailed(f"halasz ratio {halasz:.6g} exceeds {args.max_halasz}")


def _point_mode(point, numeric: bool) -> str:
    if numeric or not is_exact_point(point):
        return NUMERIC
    return EXACT


def cmd_dunomial(args) -> None:
    if args.action == "r-of-x":
        pt = parse_point(args.point)
        mode = _point_mode(pt, args.numeric)
        res = r_of_x(pt, args.cap, mode, args.tol)
        _emit(report.dumps({"point": args.point, "mode": mode, **res.to_dict()}), args.output)
    elif args.action == "count":
        pt = parse_point(args.point)
        mode = _point_mode(pt, args.numeric)
        c = count_satisfied(pt, args.n, mode, args.tol)
        _emit(report.dumps({"point": args.point, "mode": mode, "n": args.n, "count": c}), args.output)
    else:
        if args.order is not None:
            items = enumerate_reduced_by_order(args.d, args.order)
            body = {"d": args.d, "order": args.order, "count": len(items)}
        else:
            items = list(enumerate_dunomials(args.d, args.n))
            body = {"d": args.d, "n": args.n, "count": len(items)}
        if args.list:
            body["dunomials"] = [str(D) for D in items]
        _emit(report.dumps(body), args.output)


def cmd_classify(args) -> None:
    p = from_sign_string(args.p)
    q = from_sign_string(args.q)
    factors = classify_common_roots_1d(p, q, max_degree=args.max_degree)
    body = {
        "p": args.p,
        "q": args.q,
        "common_root": bool(factors),
        "factors": [{"factor": str(f), "pretty": f.pretty(), **rc.to_dict()} for f, rc in factors],
    }
    _emit(report.dumps(body), args.output)


def cmd_classify_point(args) -> None:
    pt = parse_point(args.point)
    tag = classify_point(pt, args.n, args.tol)
    _emit(report.dumps({"point": args.point, "n": args.n, **tag.to_dict()}), args.output)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crl", description="Common roots of random +-1 polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    def out(p):
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = sub.add_parser("estimate", help="Monte Carlo estimate of the common-root probability")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, default=None, help="number of polynomials (default d+1)")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--prime-budget", type=int, default=2)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--no-filter", action="store_true", help="disable the exact +-1 pre-filter")
    p.add_argument("--timing", action="store_true", help="include wall time (output no longer replayable)")
    p.add_argument("--check-scaled", type=_range, metavar="LO,HI", help="exit 3 unless LO <= p_hat*n <= HI")
    out(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("exact", help="exhaustive p(n) for d=1, two polynomials, n <= 10")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prime-budget", type=int, default=2)
    p.add_argument("--oracle", action="store_true", help="compare with numeric root matching pair-for-pair")
    p.add_argument("--check", action="store_true", help="exit 3 on oracle or decomposition mismatch")
    out(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("table", help="CSV of p_hat*n over several degrees")
    p.add_argument("--n", type=_int_list, required=True, help="comma-separated degrees")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--prime-budget", type=int, default=2)
    p.add_argument("--no-filter", action="store_true")
    p.add_argument("--timing", action="store_true", help="fill the seconds column")
    p.add_argument("--check-scaled", type=_range, metavar="LO,HI")
    out(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("lo", help="exact atom probability and bound ratios")
    p.add_argument("--input", help="vector file")
    p.add_argument("--suite", action="store_true", help="run the shipped corpus instead")
    p.add_argument("--method", choices=("dp", "enumerate"), default="dp")
    p.add_argument("--max-halasz", type=float, default=None, help="exit 3 if the Halasz ratio exceeds this")
    out(p)
    p.set_defaults(func=cmd_lo)

    p = sub.add_parser("dunomial", help="two-term monomial relations")
    p.add_argument("action", choices=("r-of-x", "count", "enumerate"))
    p.add_argument("--point", help="comma-separated coordinates, e.g. 2,1/2 or 1+i,0.5")
    p.add_argument("--cap", type=int, default=16)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--order", type=int, default=None, help="enumerate reduced dunomials of this order")
    p.add_argument("--list", action="store_true", help="include the dunomials themselves")
    p.add_argument("--numeric", action="store_true", help="floating-point check even for exact points")
    p.add_argument("--tol", type=float, default=1e-9)
    out(p)
    p.set_defaults(func=cmd_dunomial)

    p = sub.add_parser("classify", help="classify the common factor of two +-1 polynomials")
    p.add_argument("--p", required=True, help="sign string, constant term first")
    p.add_argument("--q", required=True)
    p.add_argument("--max-degree", type=int, default=2, choices=(1, 2, 3, 4))
    out(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("classify-point", help="zone of a point of C^d")
    p.add_argument("--point", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    out(p)
    p.set_defaults(func=cmd_classify_point)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "ell", "absent") is None:
        args.ell = args.d + 1
    if args.command == "dunomial" and args.action in ("r-of-x", "count") and not args.point:
        ap.error("--point is required")
    try:
        args.func(args)
    except CheckFailed as e:
        print(f"crl: check failed: {e}", file=sys.stderr)
        return EXIT_CHECK
    except (ConfigError, ValueError, OSError) as e:
        print(f"crl: error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
