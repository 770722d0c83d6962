#!/usr/bin/env python3
"""Logical failure rate under independent per-site noise.

Sweeps the per-site error probability, comparing the Monte Carlo
estimate against the analytic model 1 - q^5 - 5pq^4 (every multi-site
error counted as a failure).  Also locates the self-consistency point
where encoding stops helping, and demonstrates that the estimator is
deterministic and independent of the worker count.
"""

from qutritqec.analytics import (
    LEADING_ORDER_CROSSING,
    NoiseModel,
    failure_probability,
    monte_carlo,
    pseudo_threshold,
)
from qutritqec.code import build_code


def main():
    code = build_code(validate=False)

    print("Failure rate sweep (100k trials per point, seed 42)")
    print("=" * 72)
    print(f"{'p':>8} {'empirical':>12} {'analytic':>12} {'wilson 95% interval':>28}")
    for p in (0.001, 0.003, 0.01, 0.03, 0.1):
        report = monte_carlo(NoiseModel(p=p, seed=42), trials=100_000, code=code)
        lo, hi = report.interval
        print(
            f"{p:>8} {report.rate:>12.6f} {report.analytic:>12.6f} "
            f"{f'[{lo:.6f}, {hi:.6f}]':>28}"
        )

    print("\nSmall-p scaling: the rate falls as ~10 p^2, so halving p")
    print("quarters the failure rate -- the signature of distance 3.")

    print("\nWhere encoding stops paying off")
    print("=" * 72)
    pt = pseudo_threshold()
    print(f"  leading-order model 10p^2 = p  crosses at p = {LEADING_ORDER_CROSSING}")
    print(f"  full polynomial crosses at    p = {pt:.6f}")
    print(f"  check: failure_probability({pt:.6f}) = {failure_probability(pt):.6f}")

    print("\nDeterminism across worker counts (p=0.01, 50k trials)")
    print("=" * 72)
    model = NoiseModel(p=0.01, seed=7)
    for workers in (1, 4, 8):
        report = monte_carlo(model, trials=50_000, code=code, workers=workers)
        print(
            f"  workers={workers}: failures={report.failures}, "
            f"multi-error trials={report.multi_error_trials}, "
            f"decoder fixed {report.multi_error_corrected}"
        )
    print("\nIdentical counts each time: the random stream is keyed by")
    print("(seed, block index), not by scheduling order.")


if __name__ == "__main__":
    main()
