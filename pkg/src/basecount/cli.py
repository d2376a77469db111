"""Command-line front end.

Reads matroid JSON specs, dispatches the counting and lab operations, and
emits machine-readable JSON (or a plain table) on stdout.  All randomness
is seeded and the seed defaults to 0, so identical invocations produce
identical results; the only field that varies between runs is elapsed_ms.

Exit codes: 0 success; 2 malformed spec or unreadable input; 3 infeasible
intersection (reported as an exact zero count); 4 enumeration-guard
refusal.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from .counting import (
    CountEstimate,
    count_bases,
    count_common_bases,
    count_independent_sets_of_size,
    count_weighted_common_bases,
    exact_weighted_count,
)
from .lab import (
    capacity_campaign,
    entropy_campaign,
    nsd_campaign,
    phi_campaign,
    signature_campaign,
)
from .matroid import (
    EnumerationGuardError,
    MatroidSpecError,
    matroid_from_json,
    validate_matroid,
)

EXIT_OK = 0
EXIT_BAD_SPEC = 2
EXIT_INFEASIBLE = 3
EXIT_GUARD = 4


def _fmt(x):
    """Floats at 12 significant digits; non-finite values become null."""
    if x is None or not math.isfinite(x):
        return None
    return float(format(float(x), ".12g"))


def _load_spec(path: str):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise MatroidSpecError(path, f"cannot read spec file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatroidSpecError(path, f"invalid JSON: {exc}") from exc
    return matroid_from_json(obj)


def _load_weights(path: str, n: int):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise MatroidSpecError(path, f"cannot read weights file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatroidSpecError(path, f"invalid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise MatroidSpecError(path, "weights file must hold a JSON array")
    if len(raw) != n:
        raise MatroidSpecError(path, f"expected {n} weights, got {len(raw)}")
    weights = []
    for i, value in enumerate(raw):
        try:
            weights.append(Fraction(value))
        except (TypeError, ValueError):
            raise MatroidSpecError(f"{path}[{i}]", f"not a rational number: {value!r}") from None
        if weights[-1] < 0:
            raise MatroidSpecError(f"{path}[{i}]", "weights must be nonnegative")
    return weights


def _emit(payload, args, out) -> None:
    if getattr(args, "output", "json") == "table":
        for line in _table_lines(payload):
            print(line, file=out)
    else:
        print(json.dumps(payload, indent=2), file=out)


def _table_lines(payload, prefix=""):
    if isinstance(payload, dict):
        for key, value in payload.items():
            if isinstance(value, (dict, list)):
                yield from _table_lines(value, f"{prefix}{key}.")
            else:
                yield f"{prefix}{key}: {value}"
    elif isinstance(payload, list):
        for i, value in enumerate(payload):
            yield from _table_lines(value, f"{prefix}{i}.")
    else:
        yield f"{prefix.rstrip('.')}: {payload}"


def _estimate_payload(est: CountEstimate, exact, elapsed_ms: float) -> dict:
    payload = {
        "tau_found": _fmt(est.tau_found),
        "gap": _fmt(est.gap),
        "beta_upper": _fmt(est.beta_upper),
        "lower_bounds": {k: _fmt(v) for k, v in est.lower_bounds.items()},
        "mode": est.mode,
        "r": est.r,
        "n": est.n,
    }
    if exact is not None:
        payload["exact"] = str(exact)
    payload["elapsed_ms"] = round(elapsed_ms, 3)
    return payload


def _run_estimate(args, out, make_estimate, exact_fn) -> int:
    start = time.perf_counter()
    est = make_estimate()
    exact = exact_fn() if args.exact else None
    elapsed = (time.perf_counter() - start) * 1000
    _emit(_estimate_payload(est, exact, elapsed), args, out)
    return EXIT_INFEASIBLE if est.exact_zero else EXIT_OK


def _add_solver_options(parser, exact_flag=True):
    parser.add_argument("--tol", type=float, default=None,
                        help="Frank-Wolfe gap tolerance (default 1e-6 * n)")
    parser.add_argument("--max-iters", type=int, default=20_000)
    parser.add_argument("--seed", type=int, default=0,
                        help="random seed (default 0; outputs are reproducible)")
    parser.add_argument("--output", choices=("json", "table"), default="json")
    if exact_flag:
        parser.add_argument("--exact", action="store_true",
                            help="also report the brute-force count (guarded)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="basecount",
        description="Certified approximate counting of matroid bases, plus a "
                    "numerical verification lab.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="bracket the number of bases of one matroid")
    p.add_argument("spec")
    _add_solver_options(p)

    p = sub.add_parser("count-k", help="bracket the number of independent sets of size k")
    p.add_argument("spec")
    p.add_argument("k", type=int)
    _add_solver_options(p)

    p = sub.add_parser("intersect-count", help="bracket the number of common bases")
    p.add_argument("spec")
    p.add_argument("spec2")
    _add_solver_options(p)

    p = sub.add_parser("weighted-count", help="bracket the weighted count of common bases")
    p.add_argument("spec")
    p.add_argument("spec2")
    p.add_argument("--weights", required=True, help="JSON array file of nonnegative rationals")
    _add_solver_options(p)

    p = sub.add_parser("exact", help="brute-force (weighted) basis count")
    p.add_argument("spec")
    p.add_argument("spec2", nargs="?")
    p.add_argument("--weights")
    p.add_argument("--output", choices=("json", "table"), default="json")

    p = sub.add_parser("validate", help="check the matroid axioms")
    p.add_argument("spec")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", choices=("json", "table"), default="json")

    for name, helptext in (
        ("lab-hessian", "Hessian signature and log-concavity campaigns"),
        ("lab-entropy", "entropy sandwich campaign over random external fields"),
        ("lab-capacity", "capacity vs entropy agreement campaign"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("spec")
        p.add_argument("--trials", type=int, default=200)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--output", choices=("json", "table"), default="json")

    p = sub.add_parser("lab-phi", help="capacity product bound campaign for a matroid pair")
    p.add_argument("spec")
    p.add_argument("spec2")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--output", choices=("json", "table"), default="json")

    return parser


def _report_payload(report, elapsed_ms: float) -> dict:
    payload = report.to_json()
    payload["worst_residual"] = _fmt(payload["worst_residual"])
    payload["elapsed_ms"] = round(elapsed_ms, 3)
    return payload


def _dispatch(args, out) -> int:
    if args.command == "count":
        m = _load_spec(args.spec)
        return _run_estimate(
            args, out,
            lambda: count_bases(m, tol=args.tol, seed=args.seed, max_iters=args.max_iters),
            lambda: exact_weighted_count(m))

    if args.command == "count-k":
        m = _load_spec(args.spec)
        if not 0 <= args.k <= m.rank:
            raise MatroidSpecError(args.spec, f"k={args.k} outside 0..rank={m.rank}")
        from .matroid import truncation
        return _run_estimate(
            args, out,
            lambda: count_independent_sets_of_size(m, args.k, tol=args.tol,
                                                   seed=args.seed, max_iters=args.max_iters),
            lambda: exact_weighted_count(truncation(m, args.k)))

    if args.command == "intersect-count":
        m = _load_spec(args.spec)
        other = _load_spec(args.spec2)
        return _run_estimate(
            args, out,
            lambda: count_common_bases(m, other, tol=args.tol, seed=args.seed,
                                       max_iters=args.max_iters),
            lambda: exact_weighted_count(m, other))

    if args.command == "weighted-count":
        m = _load_spec(args.spec)
        other = _load_spec(args.spec2)
        weights = _load_weights(args.weights, m.n)
        return _run_estimate(
            args, out,
            lambda: count_weighted_common_bases(m, other, weights, tol=args.tol,
                                                seed=args.seed, max_iters=args.max_iters),
            lambda: exact_weighted_count(m, other, weights))

    if args.command == "exact":
        m = _load_spec(args.spec)
        other = _load_spec(args.spec2) if args.spec2 else None
        weights = _load_weights(args.weights, m.n) if args.weights else None
        start = time.perf_counter()
        value = exact_weighted_count(m, other, weights)
        elapsed = (time.perf_counter() - start) * 1000
        _emit({"exact": str(value), "r": m.rank, "n": m.n,
               "elapsed_ms": round(elapsed, 3)}, args, out)
        return EXIT_OK

    if args.command == "validate":
        m = _load_spec(args.spec)
        start = time.perf_counter()
        report = validate_matroid(m, trials=args.trials, seed=args.seed)
        elapsed = (time.perf_counter() - start) * 1000
        payload = report.to_json()
        payload["elapsed_ms"] = round(elapsed, 3)
        _emit(payload, args, out)
        return EXIT_OK

    if args.command == "lab-hessian":
        m = _load_spec(args.spec)
        tol = args.tol if args.tol is not None else 1e-8
        start = time.perf_counter()
        reports = [signature_campaign(m, args.trials, seed=args.seed, tol=tol),
                   nsd_campaign(m, args.trials, seed=args.seed, tol=tol)]
        elapsed = (time.perf_counter() - start) * 1000
        _emit([_report_payload(r, elapsed) for r in reports], args, out)
        return EXIT_OK

    if args.command == "lab-entropy":
        m = _load_spec(args.spec)
        slack = args.tol if args.tol is not None else 1e-9
        start = time.perf_counter()
        report = entropy_campaign(m, args.trials, seed=args.seed, slack=slack)
        elapsed = (time.perf_counter() - start) * 1000
        _emit(_report_payload(report, elapsed), args, out)
        return EXIT_OK

    if args.command == "lab-capacity":
        m = _load_spec(args.spec)
        tol = args.tol if args.tol is not None else 1e-6
        start = time.perf_counter()
        report = capacity_campaign(m, args.trials, seed=args.seed, tol=tol)
        elapsed = (time.perf_counter() - start) * 1000
        _emit(_report_payload(report, elapsed), args, out)
        return EXIT_OK

    if args.command == "lab-phi":
        m = _load_spec(args.spec)
        other = _load_spec(args.spec2)
        tol = args.tol if args.tol is not None else 1e-7
        start = time.perf_counter()
        report = phi_campaign(m, other, args.trials, seed=args.seed, tol=tol)
        elapsed = (time.perf_counter() - start) * 1000
        _emit(_report_payload(report, elapsed), args, out)
        return EXIT_OK

    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args, out)
    except MatroidSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SPEC
    except EnumerationGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
