"""Counting and probability results for the five-qutrit code: the qutrit
Hamming bound, the analytic failure polynomial and its self-consistent
crossing point, the stabilizer-demand argument against a CSS-form
generator set, and a deterministic parallel Monte Carlo estimator of the
logical failure rate under independent per-site noise.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import gf3
from .code import StabilizerCode, commutation_matrix
from .decode import ERROR_TYPE_ORDER, build_syndrome_table

#: z-score for a two-sided 95% confidence level.
WILSON_Z = 1.959963984540054

#: Trials per random-stream block; fixed so that results do not depend on
#: the worker count (each block owns a counter-keyed generator).
BLOCK_SIZE = 4096


# ---------------------------------------------------------------------------
# Closed-form results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HammingBound:
    n: int
    lhs: int      # 3*(8n+1) orthogonal subspaces demanded
    rhs: int      # 3**n dimensions available
    holds: bool


def hamming_bound(n: int) -> HammingBound:
    """Necessary condition 3*(8n+1) <= 3**n for single-error correction on
    n qutrits; first satisfied at n=5 (123 <= 243)."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    lhs = 3 * (8 * n + 1)
    rhs = 3**n
    return HammingBound(n=n, lhs=lhs, rhs=rhs, holds=lhs <= rhs)


def failure_probability(p: float) -> float:
    """Probability that more than one of five independent sites errs:
    1 - (1-p)^5 - 5p(1-p)^4, the analytic failure model (10p^2 + O(p^3)
    for small p)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    q = 1.0 - p
    return 1.0 - q**5 - 5.0 * p * q**4


#: Crossing point of the leading-order model 10p^2 = p.
LEADING_ORDER_CROSSING = 0.1


def pseudo_threshold(tol: float = 1e-10) -> float:
    """Exact self-consistency point: the p in (0, 1) with
    failure_probability(p) = p, found by bisection.

    The leading-order model 10p^2 crosses p at exactly 0.1; the full
    polynomial crosses later (near 0.132) because the quintic terms
    subtract probability mass.  Both numbers are worth reporting together.
    """
    lo, hi = 1e-6, 0.5
    g = lambda p: failure_probability(p) - p  # noqa: E731
    if not (g(lo) < 0.0 < g(hi)):
        raise RuntimeError("bisection bracket lost; polynomial changed?")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class CssCountingArgument:
    """Why four generators cannot split into shift-only and phase-only
    sets: each sector alone must distinguish its ten single-error
    combinations plus the clean state, demanding three ternary-outcome
    generators per sector — six in total, but n - k = 4 are available."""

    error_combinations_per_sector: int
    states_to_distinguish: int
    min_generators_per_sector: int
    required_generators: int
    available_generators: int

    @property
    def css_possible(self) -> bool:
        return self.required_generators <= self.available_generators


def css_counting_argument(n: int = 5, m: int = 4) -> CssCountingArgument:
    combos = 2 * n
    states = combos + 1
    per_sector = 1
    while 3**per_sector < states:
        per_sector += 1
    return CssCountingArgument(
        error_combinations_per_sector=combos,
        states_to_distinguish=states,
        min_generators_per_sector=per_sector,
        required_generators=2 * per_sector,
        available_generators=m,
    )


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NoiseModel:
    """Independent per-site corruption: with probability p a site suffers
    one of the eight nontrivial single-site errors, by default uniformly."""

    p: float
    seed: int = 0
    weights: Optional[tuple] = None   # per-type probabilities, order as ERROR_TYPE_ORDER

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.weights is not None:
            w = tuple(float(x) for x in self.weights)
            if len(w) != len(ERROR_TYPE_ORDER):
                raise ValueError(f"need {len(ERROR_TYPE_ORDER)} weights, got {len(w)}")
            if any(x < 0 for x in w) or abs(sum(w) - 1.0) > 1e-12:
                raise ValueError("weights must be nonnegative and sum to 1")
            object.__setattr__(self, "weights", w)


def wilson_interval(failures: int, trials: int, z: float = WILSON_Z) -> tuple:
    """Wilson score interval for a binomial proportion; always contains
    the point estimate."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    phat = failures / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4 * trials**2)) / denom
    low = max(0.0, center - half)
    high = min(1.0, center + half)
    # at the boundaries the algebra closes exactly; don't let rounding
    # push the estimate outside its own interval
    if failures == 0:
        low = 0.0
    if failures == trials:
        high = 1.0
    return (low, high)


@dataclass(frozen=True)
class TrialReport:
    trials: int
    failures: int
    rate: float
    interval: tuple            # Wilson 95% bounds
    analytic: float            # failure_probability(p), the all-multis-fail model
    p: float
    seed: int
    multi_error_trials: int    # trials in which >= 2 sites erred
    multi_error_corrected: int  # of those, how many the decoder still fixed

    @property
    def multi_error_corrected_fraction(self) -> float:
        if self.multi_error_trials == 0:
            return 0.0
        return self.multi_error_corrected / self.multi_error_trials


class _DecoderArrays:
    """Flat integer tables for symplectic decoding of batched trials."""

    def __init__(self, code: StabilizerCode):
        table = build_syndrome_table(code)
        n = code.n
        self.comm_t = commutation_matrix(code.generators).T % 3   # (2n, m)
        m = self.comm_t.shape[1]
        self.syndrome_weights = 3 ** np.arange(m - 1, -1, -1, dtype=np.int64)
        n_syndromes = 3**m
        self.known = np.zeros(n_syndromes, dtype=bool)
        self.diagnosed = np.zeros((n_syndromes, 2 * n), dtype=np.int64)
        for row in table.rows:
            key = int(np.array(row.syndrome.exponents) @ self.syndrome_weights)
            self.known[key] = True
            self.diagnosed[key] = row.error.symplectic()
        span = gf3.row_space_vectors(
            np.array([g.symplectic() for g in code.generators], dtype=np.int64)
        )
        self.span_codes = np.sort(gf3.encode_vectors(span))
        # site-local exponents per error type, order matching ERROR_TYPE_ORDER
        self.type_x = np.array([1, 2, 0, 0, 1, 1, 2, 2], dtype=np.int64)
        self.type_z = np.array([0, 0, 1, 2, 1, 2, 1, 2], dtype=np.int64)
        self.n = n


def _run_block(
    arrays: _DecoderArrays, model: NoiseModel, block_index: int, block_len: int
) -> tuple:
    """Simulate one fixed-size block with its own counter-keyed stream.

    Returns (failures, multi_error_trials, multi_error_corrected).  Draws
    are made unconditionally so the stream layout is identical for every p.
    """
    rng = np.random.Generator(np.random.Philox(key=[model.seed, block_index]))
    n = arrays.n
    occurred = rng.random((block_len, n)) < model.p
    if model.weights is None:
        kinds = rng.integers(0, len(ERROR_TYPE_ORDER), size=(block_len, n))
    else:
        kinds = rng.choice(
            len(ERROR_TYPE_ORDER), size=(block_len, n), p=model.weights
        )
    x_exp = np.where(occurred, arrays.type_x[kinds], 0)
    z_exp = np.where(occurred, arrays.type_z[kinds], 0)
    errors = np.hstack([x_exp, z_exp])                       # (B, 2n)
    syndromes = (errors @ arrays.comm_t) % 3                 # (B, m)
    codes = syndromes @ arrays.syndrome_weights
    residual = (errors - arrays.diagnosed[codes]) % 3
    residual_codes = gf3.encode_vectors(residual)
    in_span = np.isin(residual_codes, arrays.span_codes)
    failed = ~arrays.known[codes] | ~in_span
    multi = occurred.sum(axis=1) >= 2
    return (
        int(failed.sum()),
        int(multi.sum()),
        int((multi & ~failed).sum()),
    )


def monte_carlo(
    model: NoiseModel,
    trials: int,
    code: Optional[StabilizerCode] = None,
    workers: int = 1,
) -> TrialReport:
    """Estimate the logical failure rate entirely in the symplectic picture.

    Each trial draws independent per-site errors, diagnoses the composite
    error through the syndrome table, and counts a failure when the
    residual (error times applied correction) does not lie in the
    generator span.  Trials are partitioned into fixed blocks with
    counter-derived seeds, so the report is identical for any worker
    count.  The analytic polynomial counts every multi-error trial as a
    failure; the report also says how many such trials the table decoder
    happened to fix.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    if code is None:
        from .code import build_code
        code = build_code(validate=False)
    arrays = _DecoderArrays(code)
    blocks = [
        (i, min(BLOCK_SIZE, trials - i * BLOCK_SIZE))
        for i in range((trials + BLOCK_SIZE - 1) // BLOCK_SIZE)
    ]
    if workers == 1:
        results = [_run_block(arrays, model, i, ln) for i, ln in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(lambda b: _run_block(arrays, model, b[0], b[1]), blocks)
            )
    failures = sum(r[0] for r in results)
    multi = sum(r[1] for r in results)
    multi_fixed = sum(r[2] for r in results)
    return TrialReport(
        trials=trials,
        failures=failures,
        rate=failures / trials,
        interval=wilson_interval(failures, trials),
        analytic=failure_probability(model.p),
        p=model.p,
        seed=model.seed,
        multi_error_trials=multi,
        multi_error_corrected=multi_fixed,
    )
