"""Vectorized numpy implementation of the trial kernel.

Stream layout and column order are documented in the package docstring.
The uniforms come straight from numpy's Philox bit generator positioned at
the trial's counter block, so this backend defines the reference stream the
compiled kernel must reproduce.
"""

from __future__ import annotations

import numpy as np
from numpy.random import Generator, Philox

from ..channels import rician_power_from_uniforms

BACKEND_NAME = "python"


def uniform_samples(key0: int, key1: int, start_trial: int, n: int) -> np.ndarray:
    key = int(key0) | (int(key1) << 64)
    bit_generator = Philox(key=key, counter=2 * int(start_trial))
    return Generator(bit_generator).random(8 * n).reshape(n, 8)


def capacity_samples(key0: int, key1: int, start_trial: int, n: int,
                     coeffs: np.ndarray) -> np.ndarray:
    (a_s1, s_s1, a_s2, s_s2, a_12, s_12,
     rho, delta, eta, p_n, p_f, alpha, mu1, mu2) = (float(c) for c in coeffs)

    u = uniform_samples(key0, key1, start_trial, n)
    g1 = rician_power_from_uniforms(u[:, 0], u[:, 1], a_s1, s_s1)
    g2 = rician_power_from_uniforms(u[:, 2], u[:, 3], a_s2, s_s2)
    g12 = rician_power_from_uniforms(u[:, 4], u[:, 5], a_12, s_12)

    id_scale = (1.0 - delta) * rho
    relay_scale = rho * eta * delta
    ts_relay_scale = 2.0 * eta * alpha * rho / (1.0 - alpha)
    ts_half = 0.5 * (1.0 - alpha)
    oam1_half = 0.5 * np.log2(1.0 + rho * mu1)
    oam2_half = 0.5 * np.log2(1.0 + rho * mu2)
    oam1_quarter = 0.25 * np.log2(1.0 + rho * mu1)
    oam2_quarter = 0.25 * np.log2(1.0 + rho * mu2)

    # power-splitting CNOMA (shared by the proposed scheme and cnoma-ps)
    s_x1 = id_scale * g1 * p_n
    s_x2_ue1 = id_scale * g1 * p_f / (s_x1 + 1.0)
    s_x2_ue2 = id_scale * g2 * p_f / (id_scale * g2 * p_n + 1.0)
    s_relay = relay_scale * g1 * g12
    ps_bottleneck = np.minimum(np.minimum(s_x2_ue1, s_x2_ue2), s_relay)
    ps_ue1 = 0.5 * np.log2(1.0 + s_x1)
    ps_ue2 = 0.5 * np.log2(1.0 + ps_bottleneck)

    # time-switching CNOMA (no power split, scaled data slots)
    t_x1 = rho * g1 * p_n
    t_x2_ue1 = rho * g1 * p_f / (t_x1 + 1.0)
    t_x2_ue2 = rho * g2 * p_f / (rho * g2 * p_n + 1.0)
    t_relay = ts_relay_scale * g1 * g12
    ts_bottleneck = np.minimum(np.minimum(t_x2_ue1, t_x2_ue2), t_relay)

    # TDMA benchmark
    oma_ue2_sinr = np.minimum(id_scale * g2, s_relay)

    out = np.empty((n, 8), dtype=np.float64)
    out[:, 0] = ps_ue1 + oam1_half
    out[:, 1] = ps_ue2 + oam2_half
    out[:, 2] = ps_ue1
    out[:, 3] = ps_ue2
    out[:, 4] = ts_half * np.log2(1.0 + t_x1)
    out[:, 5] = ts_half * np.log2(1.0 + ts_bottleneck)
    out[:, 6] = 0.25 * np.log2(1.0 + id_scale * g1) + oam1_quarter
    out[:, 7] = 0.25 * np.log2(1.0 + oma_ue2_sinr) + oam2_quarter
    return out
