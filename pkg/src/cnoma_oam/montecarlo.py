"""Seeded ergodic estimation of capacities and energy efficiency.

Trial ``t`` of a run draws its realization from a dedicated substream that
is addressed purely by ``(seed, t)``: the 64-bit seed expands to a 128-bit
Philox key and the trial owns a fixed pair of counter blocks (see
``_kernel``). Trials are processed in fixed-size chunks whose partial
statistics are merged in chunk order, so the result is bitwise identical no
matter how many workers execute the chunks. All schemes are evaluated on
the same realizations (common random numbers), which keeps comparisons
between schemes and across sweep points noise-aligned.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernel
from .channels import link_scales, oam_singular_value
from .params import Metric, ParameterError, Scheme, SystemParams
from .schemes import ee_denominator

# Fixed chunk size: part of the estimator definition, never tied to the
# worker count, otherwise parallel runs would reorder the merges.
CHUNK_TRIALS = 16384

# Column order of the kernel output; three capacity metrics per scheme.
SCHEME_ORDER = (Scheme.CNOMA_PS_OAM, Scheme.CNOMA_PS, Scheme.CNOMA_TS,
                Scheme.OMA_PS_OAM)
CAPACITY_METRICS = (Metric.C_UE1, Metric.C_UE2, Metric.C_SUM)

MAX_TRIALS = 1 << 53


@dataclass(frozen=True)
class ErgodicEstimate:
    """Sample mean and standard error of one metric under one scheme."""

    mean: float
    std_error: float
    n_trials: int
    metric: Metric
    scheme: Scheme


def philox_key(seed: int) -> np.ndarray:
    """Expand a 64-bit seed into the run's 128-bit Philox key."""
    seed = int(seed)
    if not 0 <= seed < 2 ** 64:
        raise ParameterError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return np.random.SeedSequence(seed).generate_state(2, np.uint64)


def kernel_coeffs(params: SystemParams) -> np.ndarray:
    """Pack the per-trial constants consumed by the kernel backends."""
    coeffs = np.empty(_kernel.N_COEFFS, dtype=np.float64)
    for i, link in enumerate((params.link_s1, params.link_s2, params.link_12)):
        coeffs[2 * i], coeffs[2 * i + 1] = link_scales(link)
    coeffs[6] = params.rho
    coeffs[7] = params.delta
    coeffs[8] = params.eta
    coeffs[9] = params.p_n
    coeffs[10] = params.p_f
    coeffs[11] = params.alpha_ts
    coeffs[12] = oam_singular_value(params.oam1)
    coeffs[13] = oam_singular_value(params.oam2)
    return coeffs


def _chunk_stats(key: np.ndarray, coeffs: np.ndarray, start: int, n: int):
    """(count, per-column mean, per-column sum of squared deviations)."""
    cap = _kernel.capacity_samples(int(key[0]), int(key[1]), start, n, coeffs)
    columns = np.empty((n, 12), dtype=np.float64)
    for k in range(4):
        ue1 = cap[:, 2 * k]
        ue2 = cap[:, 2 * k + 1]
        columns[:, 3 * k] = ue1
        columns[:, 3 * k + 1] = ue2
        columns[:, 3 * k + 2] = ue1 + ue2
    mean = columns.mean(axis=0)
    m2 = ((columns - mean) ** 2).sum(axis=0)
    return n, mean, m2


def _merge_stats(a, b):
    """Order-stable pairwise merge of (count, mean, m2) statistics."""
    n_a, mean_a, m2_a = a
    n_b, mean_b, m2_b = b
    n = n_a + n_b
    delta = mean_b - mean_a
    mean = mean_a + delta * (n_b / n)
    m2 = m2_a + m2_b + delta * delta * (n_a / n * n_b)
    return n, mean, m2


def _column_stats(params: SystemParams, n_trials: int, seed: int, workers: int):
    key = philox_key(seed)
    coeffs = kernel_coeffs(params)
    starts = list(range(0, n_trials, CHUNK_TRIALS))

    def run(start: int):
        return _chunk_stats(key, coeffs, start, min(CHUNK_TRIALS, n_trials - start))

    if workers <= 1 or len(starts) == 1:
        chunk_results = map(run, starts)
    else:
        # Threads suffice: both kernels release the GIL in their hot loops.
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunk_results = list(pool.map(run, starts))

    total = None
    for stats in chunk_results:
        total = stats if total is None else _merge_stats(total, stats)
    return total


def estimate_all(params: SystemParams, n_trials: int, seed: int,
                 workers: int = 1) -> dict[Scheme, dict[Metric, ErgodicEstimate]]:
    """Ergodic estimates of every metric for all four schemes in one pass.

    Deterministic given (params, n_trials, seed); the worker count only
    affects wall time. Energy efficiency is the ratio of the ergodic sum
    capacity to the scheme's deterministic mean-power denominator, so its
    standard error is the sum-capacity standard error over that denominator.
    """
    n_trials = int(n_trials)
    if n_trials < 1:
        raise ParameterError(f"n_trials must be >= 1, got {n_trials!r}")
    if n_trials > MAX_TRIALS:
        raise ParameterError(f"n_trials must be <= {MAX_TRIALS}")

    n, mean, m2 = _column_stats(params, n_trials, seed, int(workers))
    if n > 1:
        std_error = np.sqrt(m2 / (n - 1)) / np.sqrt(n)
    else:
        std_error = np.zeros_like(mean)

    results: dict[Scheme, dict[Metric, ErgodicEstimate]] = {}
    for k, scheme in enumerate(SCHEME_ORDER):
        per_scheme: dict[Metric, ErgodicEstimate] = {}
        for j, metric in enumerate(CAPACITY_METRICS):
            per_scheme[metric] = ErgodicEstimate(
                mean=float(mean[3 * k + j]), std_error=float(std_error[3 * k + j]),
                n_trials=n, metric=metric, scheme=scheme)
        denominator = ee_denominator(params, scheme)
        c_sum = per_scheme[Metric.C_SUM]
        per_scheme[Metric.EE] = ErgodicEstimate(
            mean=c_sum.mean / denominator,
            std_error=c_sum.std_error / denominator,
            n_trials=n, metric=Metric.EE, scheme=scheme)
        results[scheme] = per_scheme
    return results


def estimate(params: SystemParams, scheme: Scheme, n_trials: int, seed: int,
             workers: int = 1) -> list[ErgodicEstimate]:
    """Ergodic estimates (c_ue1, c_ue2, c_sum, ee) for one scheme."""
    scheme = Scheme(scheme)
    per_scheme = estimate_all(params, n_trials, seed, workers)[scheme]
    return [per_scheme[m] for m in (Metric.C_UE1, Metric.C_UE2, Metric.C_SUM, Metric.EE)]
