"""Rician fading draws and deterministic OAM singular values.

A Rician envelope with K-factor K and effective mean power W is sampled as

    h = sqrt(K/(K+1) * W) + sqrt(W/(2(K+1))) * (z1 + j*z2),   z1, z2 ~ N(0,1)

so E[|h|^2] = W and Var(|h|^2) = W^2 (2K+1)/(K+1)^2. The LOS phase is fixed
at zero; only squared envelopes are consumed downstream, so the phase never
matters. The standard normals come from a Box-Muller transform of two
uniform draws, which keeps the consumption of the underlying random stream
at exactly two values per link - that fixed budget is what lets the Monte
Carlo engine address trial substreams by counter (see ``montecarlo``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import OamChannel, OamModel, ParameterError, RicianLink, SystemParams

# Per-realization uniform budget: 3 links x 2 draws, plus 2 reserved so a
# realization occupies a whole number of 4-wide Philox blocks.
UNIFORMS_PER_REALIZATION = 8


@dataclass(frozen=True)
class FadingRealization:
    """One draw of the three squared link gains plus the two OAM gains."""

    g_s1: float
    g_s2: float
    g_12: float
    mu1: float
    mu2: float

    def __post_init__(self) -> None:
        for name in ("g_s1", "g_s2", "g_12", "mu1", "mu2"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not np.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
        if min(self.g_s1, self.g_s2, self.g_12) < 0.0:
            raise ParameterError("squared channel gains must be >= 0")
        if min(self.mu1, self.mu2) <= 0.0:
            raise ParameterError("OAM singular values must be > 0")


def rician_moments(link: RicianLink) -> tuple[float, float]:
    """Analytic mean and variance of the squared envelope for ``link``."""
    w = link.effective_mean_power
    k = link.k_factor
    return w, w * w * (2.0 * k + 1.0) / ((k + 1.0) ** 2)


def link_scales(link: RicianLink) -> tuple[float, float]:
    """LOS amplitude and per-component scatter scale for ``link``."""
    w = link.effective_mean_power
    k = link.k_factor
    los = np.sqrt(k / (k + 1.0) * w)
    scatter = np.sqrt(w / (2.0 * (k + 1.0)))
    return float(los), float(scatter)


def rician_power_from_uniforms(u1, u2, los_amplitude, scatter_scale):
    """Squared Rician envelope from two uniform [0,1) draws (Box-Muller).

    Vectorized; the same transform is used by the scalar samplers here and by
    the numpy kernel backend.
    """
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    angle = (2.0 * np.pi) * u2
    re = los_amplitude + scatter_scale * (radius * np.cos(angle))
    im = scatter_scale * (radius * np.sin(angle))
    return re * re + im * im


def sample_rician_power(link: RicianLink, rng: np.random.Generator, size=None):
    """Draw squared Rician envelopes with mean ``link.effective_mean_power``.

    With ``size=None`` returns a float and consumes two uniforms; otherwise
    returns an array of ``size`` draws.
    """
    los, scatter = link_scales(link)
    if size is None:
        u = rng.random(2)
        return float(rician_power_from_uniforms(u[0], u[1], los, scatter))
    u = rng.random((size, 2))
    return rician_power_from_uniforms(u[:, 0], u[:, 1], los, scatter)


def oam_singular_value(ch: OamChannel) -> float:
    """Singular value of the OAM channel; pure function of its fields."""
    if ch.model is OamModel.FIXED:
        return ch.fixed_value
    return ch.base_gain / ch.distance ** ch.pathloss_exponent


def draw_realization(params: SystemParams, rng: np.random.Generator) -> FadingRealization:
    """Independent draws for the three links plus the deterministic OAM gains.

    Consumes exactly :data:`UNIFORMS_PER_REALIZATION` uniforms so that
    successive calls on a dedicated substream line up with the Monte Carlo
    kernel's per-trial counter layout.
    """
    u = rng.random(UNIFORMS_PER_REALIZATION)
    gains = []
    for i, link in enumerate((params.link_s1, params.link_s2, params.link_12)):
        los, scatter = link_scales(link)
        gains.append(float(rician_power_from_uniforms(u[2 * i], u[2 * i + 1], los, scatter)))
    return FadingRealization(
        g_s1=gains[0], g_s2=gains[1], g_12=gains[2],
        mu1=oam_singular_value(params.oam1),
        mu2=oam_singular_value(params.oam2),
    )
