"""Per-realization SINR and capacity calculators for the four schemes.

Transmission layout of the proposed scheme (cnoma-ps-oam), total frame T=1:

* Phase 1 (T/2): the BS broadcasts the NOMA superposition of x1 (near user,
  coefficient p_n) and x2 (far user, p_f). The near user splits its received
  power, routing the fraction delta to energy harvesting and 1-delta to
  information decoding; it decodes x2 first, cancels it, then decodes x1.
* Phase 2 (T/2): the near user forwards x2 to the far user with the
  harvested power eta*delta*P*g_s1, while the BS simultaneously sends two
  extra symbols on orthogonal OAM modes, one per user.

Benchmarks: cnoma-ps drops the OAM symbols; cnoma-ts replaces power
splitting with a harvesting time fraction alpha (data phases get (1-alpha)/2
each, so the relay power is 2*eta*alpha*P*g_s1/(1-alpha)); oma-ps-oam serves
the users in four equal TDMA slots with the OAM pair sharing the last one.

All capacities are log2-based (bits/s/Hz). Every function here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import log2

from .channels import FadingRealization
from .params import ParameterError, Scheme, SystemParams


@dataclass(frozen=True)
class SinrSet:
    """The six SINRs of one realization of the proposed scheme."""

    s_x1: float            # x1 at UE1 after SIC
    s_x2_at_ue1: float     # x2 decoded at UE1 (pre-SIC)
    s_x2_at_ue2: float     # x2 at UE2 via the direct link
    s_relay: float         # x2 at UE2 via the harvested-power relay hop
    s_x3: float            # OAM symbol at UE1
    s_x4: float            # OAM symbol at UE2

    def __post_init__(self) -> None:
        for name in ("s_x1", "s_x2_at_ue1", "s_x2_at_ue2", "s_relay", "s_x3", "s_x4"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not (math.isfinite(value) and value >= 0.0):
                raise ParameterError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class CapacityBreakdown:
    """Per-realization user capacities for one scheme; c_sum = c_ue1 + c_ue2."""

    c_ue1: float
    c_ue2: float
    c_sum: float
    scheme: Scheme
    relay_power: float = 0.0

    def __post_init__(self) -> None:
        if self.c_sum != self.c_ue1 + self.c_ue2:
            raise ParameterError("c_sum must equal c_ue1 + c_ue2 exactly")
        if min(self.c_ue1, self.c_ue2) < 0.0 or self.relay_power < 0.0:
            raise ParameterError("capacities and relay power must be >= 0")

    @classmethod
    def create(cls, scheme: Scheme, c_ue1: float, c_ue2: float,
               relay_power: float = 0.0) -> "CapacityBreakdown":
        return cls(c_ue1=c_ue1, c_ue2=c_ue2, c_sum=c_ue1 + c_ue2,
                   scheme=scheme, relay_power=relay_power)


def harvested_power(params: SystemParams, g_s1: float) -> float:
    """Relay transmit power harvested at the near user: eta*delta*P*g_s1."""
    return params.eta * params.delta * params.total_power * g_s1


def phase1_sinrs(params: SystemParams, g_s1: float, g_s2: float) -> tuple[float, float, float]:
    """Broadcast-phase SINRs (x1 at UE1, x2 at UE1, x2 at UE2).

    The near user's receive power is scaled by 1-delta (the harvesting
    split); x2 decoding sees the x1 allocation as interference.
    """
    a = (1.0 - params.delta) * params.rho
    s_x1 = a * g_s1 * params.p_n
    s_x2_at_ue1 = a * g_s1 * params.p_f / (a * g_s1 * params.p_n + 1.0)
    s_x2_at_ue2 = a * g_s2 * params.p_f / (a * g_s2 * params.p_n + 1.0)
    return s_x1, s_x2_at_ue1, s_x2_at_ue2


def relay_sinr(params: SystemParams, g_s1: float, g_12: float) -> float:
    """SINR of the decode-and-forward hop: rho*eta*delta*g_s1*g_12."""
    return params.rho * params.eta * params.delta * g_s1 * g_12


def oam_sinrs(params: SystemParams, mu1: float, mu2: float) -> tuple[float, float]:
    """SINRs of the two interference-free OAM side channels."""
    return params.rho * mu1, params.rho * mu2


def sinr_set(params: SystemParams, realization: FadingRealization) -> SinrSet:
    """All six SINRs of the proposed scheme for one realization."""
    s_x1, s_x2_at_ue1, s_x2_at_ue2 = phase1_sinrs(params, realization.g_s1, realization.g_s2)
    s_x3, s_x4 = oam_sinrs(params, realization.mu1, realization.mu2)
    return SinrSet(
        s_x1=s_x1,
        s_x2_at_ue1=s_x2_at_ue1,
        s_x2_at_ue2=s_x2_at_ue2,
        s_relay=relay_sinr(params, realization.g_s1, realization.g_12),
        s_x3=s_x3,
        s_x4=s_x4,
    )


def capacity_cnoma_ps_oam(sinrs: SinrSet, relay_power: float = 0.0) -> CapacityBreakdown:
    """Proposed scheme: NOMA halves plus one OAM half-slot term per user.

    The far user's NOMA term is bottlenecked by the weakest of decoding x2 at
    the near user, the direct link, and the relay hop.
    """
    c_ue1 = 0.5 * log2(1.0 + sinrs.s_x1) + 0.5 * log2(1.0 + sinrs.s_x3)
    bottleneck = min(sinrs.s_x2_at_ue1, sinrs.s_x2_at_ue2, sinrs.s_relay)
    c_ue2 = 0.5 * log2(1.0 + bottleneck) + 0.5 * log2(1.0 + sinrs.s_x4)
    return CapacityBreakdown.create(Scheme.CNOMA_PS_OAM, c_ue1, c_ue2, relay_power)


def capacity_cnoma_ps(sinrs: SinrSet, relay_power: float = 0.0) -> CapacityBreakdown:
    """Power-splitting benchmark without the OAM side channels."""
    c_ue1 = 0.5 * log2(1.0 + sinrs.s_x1)
    bottleneck = min(sinrs.s_x2_at_ue1, sinrs.s_x2_at_ue2, sinrs.s_relay)
    c_ue2 = 0.5 * log2(1.0 + bottleneck)
    return CapacityBreakdown.create(Scheme.CNOMA_PS, c_ue1, c_ue2, relay_power)


def capacity_cnoma_ts(params: SystemParams, g_s1: float, g_s2: float,
                      g_12: float) -> CapacityBreakdown:
    """Time-switching benchmark.

    A fraction alpha of the frame is dedicated to harvesting, the remainder
    split evenly between the NOMA broadcast and the relay hop; the received
    power is not split, so delta does not appear anywhere.
    """
    alpha = params.alpha_ts
    rho = params.rho
    p1_ts = 2.0 * params.eta * alpha * params.total_power * g_s1 / (1.0 - alpha)
    s_x1 = rho * g_s1 * params.p_n
    s_x2_at_ue1 = rho * g_s1 * params.p_f / (rho * g_s1 * params.p_n + 1.0)
    s_x2_at_ue2 = rho * g_s2 * params.p_f / (rho * g_s2 * params.p_n + 1.0)
    s_relay = p1_ts * g_12 / params.noise_power
    half = 0.5 * (1.0 - alpha)
    c_ue1 = half * log2(1.0 + s_x1)
    c_ue2 = half * log2(1.0 + min(s_x2_at_ue1, s_x2_at_ue2, s_relay))
    return CapacityBreakdown.create(Scheme.CNOMA_TS, c_ue1, c_ue2, p1_ts)


def capacity_oma_ps_oam(params: SystemParams, realization: FadingRealization) -> CapacityBreakdown:
    """TDMA benchmark: four equal slots, OAM pair sharing the last one.

    Each user gets a dedicated quarter-slot for its own symbol; the far
    user's quarter is bottlenecked by the weaker of the direct link and the
    harvested relay hop.
    """
    rho = params.rho
    id_scale = (1.0 - params.delta) * rho
    s_ue1 = id_scale * realization.g_s1
    s_ue2 = min(id_scale * realization.g_s2,
                relay_sinr(params, realization.g_s1, realization.g_12))
    s_x3, s_x4 = oam_sinrs(params, realization.mu1, realization.mu2)
    c_ue1 = 0.25 * log2(1.0 + s_ue1) + 0.25 * log2(1.0 + s_x3)
    c_ue2 = 0.25 * log2(1.0 + s_ue2) + 0.25 * log2(1.0 + s_x4)
    relay_power = harvested_power(params, realization.g_s1)
    return CapacityBreakdown.create(Scheme.OMA_PS_OAM, c_ue1, c_ue2, relay_power)


def evaluate(params: SystemParams, realization: FadingRealization,
             scheme: Scheme) -> CapacityBreakdown:
    """Capacity breakdown of ``scheme`` for one fading realization."""
    scheme = Scheme(scheme)
    if scheme is Scheme.CNOMA_TS:
        return capacity_cnoma_ts(params, realization.g_s1, realization.g_s2,
                                 realization.g_12)
    if scheme is Scheme.OMA_PS_OAM:
        return capacity_oma_ps_oam(params, realization)
    sinrs = sinr_set(params, realization)
    relay_power = harvested_power(params, realization.g_s1)
    if scheme is Scheme.CNOMA_PS_OAM:
        return capacity_cnoma_ps_oam(sinrs, relay_power)
    return capacity_cnoma_ps(sinrs, relay_power)


def mean_relay_power(params: SystemParams, scheme: Scheme) -> float:
    """Expected relay transmit power, using E[g_s1] = effective mean power."""
    mean_g = params.link_s1.effective_mean_power
    if Scheme(scheme) is Scheme.CNOMA_TS:
        alpha = params.alpha_ts
        return 2.0 * params.eta * alpha * params.total_power * mean_g / (1.0 - alpha)
    return params.eta * params.delta * params.total_power * mean_g


def ee_denominator(params: SystemParams, scheme: Scheme) -> float:
    """Total mean transmit power charged to ``scheme``.

    The proposed scheme spends P on the NOMA broadcast and another P on the
    OAM transmissions (2P + relay); the TDMA benchmark spends P in three of
    its four slots (3P + relay); the non-OAM benchmarks spend P once.
    """
    scheme = Scheme(scheme)
    p = params.total_power
    relay = mean_relay_power(params, scheme)
    if scheme is Scheme.CNOMA_PS_OAM:
        return 2.0 * p + relay
    if scheme is Scheme.OMA_PS_OAM:
        return 3.0 * p + relay
    return p + relay


def energy_efficiency(scheme: Scheme, ergodic_c_sum: float,
                      params: SystemParams) -> float:
    """Ergodic sum capacity divided by the scheme's total mean transmit power."""
    if ergodic_c_sum < 0.0:
        raise ParameterError(f"ergodic_c_sum must be >= 0, got {ergodic_c_sum!r}")
    denominator = ee_denominator(params, scheme)
    if denominator <= 0.0:
        raise ParameterError(f"non-positive power denominator {denominator!r}")
    return ergodic_c_sum / denominator
