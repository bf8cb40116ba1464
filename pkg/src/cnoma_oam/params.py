"""Parameter types, defaults, and the flat key/value schema.

Everything is normalized and unit-free: powers are linear (never dB inside
the library), distances are fractions of the BS-to-cell-edge distance, and
the noise power defaults to 1 so the transmit SNR ``rho`` equals the total
transmit power ``P``.

The flat schema (see :data:`PARAM_KEYS`) is the single external
representation of a :class:`SystemParams`: config files, CLI overrides and
sweep-axis updates all go through :meth:`SystemParams.from_flat` /
:meth:`SystemParams.replace`, which re-derive dependent quantities (the
relay-hop distance under collinear placement, the default OAM gains).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping


class ParameterError(ValueError):
    """A physical or protocol parameter is outside its allowed domain."""


class ConfigError(ValueError):
    """A config file, preset or override is malformed or names unknown keys."""


class Scheme(str, Enum):
    """The four transmission schemes the simulator evaluates."""

    CNOMA_PS_OAM = "cnoma-ps-oam"
    CNOMA_PS = "cnoma-ps"
    CNOMA_TS = "cnoma-ts"
    OMA_PS_OAM = "oma-ps-oam"


class Metric(str, Enum):
    C_UE1 = "c_ue1"
    C_UE2 = "c_ue2"
    C_SUM = "c_sum"
    EE = "ee"


class OamModel(str, Enum):
    FIXED = "fixed"
    LOS_SCALED = "los-scaled"


POWER_SUM_UNIT = "unit"
POWER_SUM_ONE_MINUS_DELTA = "one-minus-delta"
_POWER_SUM_RULES = (POWER_SUM_UNIT, POWER_SUM_ONE_MINUS_DELTA)


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


def _finite(x: float) -> bool:
    return math.isfinite(x)


@dataclass(frozen=True)
class RicianLink:
    """One Rician-faded link.

    ``k_factor`` is the LOS-to-scatter power ratio (0 gives Rayleigh),
    ``mean_power`` the mean squared envelope at unit distance, and the
    effective mean power after distance scaling is
    ``mean_power / distance**pathloss_exponent``.
    """

    k_factor: float
    mean_power: float
    distance: float = 1.0
    pathloss_exponent: float = 2.0

    def __post_init__(self) -> None:
        for name in ("k_factor", "mean_power", "distance", "pathloss_exponent"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _check(_finite(self.k_factor) and self.k_factor >= 0.0,
               f"k_factor must be finite and >= 0, got {self.k_factor!r}")
        _check(_finite(self.mean_power) and self.mean_power > 0.0,
               f"mean_power must be finite and > 0, got {self.mean_power!r}")
        _check(_finite(self.distance) and self.distance > 0.0,
               f"distance must be finite and > 0, got {self.distance!r}")
        _check(_finite(self.pathloss_exponent) and self.pathloss_exponent >= 0.0,
               f"pathloss_exponent must be finite and >= 0, got {self.pathloss_exponent!r}")
        eff = self.effective_mean_power
        _check(_finite(eff) and eff > 0.0,
               f"effective mean power {eff!r} is not finite and positive")

    @property
    def effective_mean_power(self) -> float:
        """Mean of the squared envelope after distance scaling."""
        return self.mean_power / self.distance ** self.pathloss_exponent

    @property
    def los_power_fraction(self) -> float:
        """LOS share of ``mean_power``: K/(K+1) * mean_power."""
        return self.k_factor / (self.k_factor + 1.0) * self.mean_power


@dataclass(frozen=True)
class OamChannel:
    """Deterministic line-of-sight channel for one OAM mode.

    The produced singular value is ``fixed_value`` under the ``fixed`` model
    and ``base_gain / distance**pathloss_exponent`` under ``los-scaled``.
    The mode index is carried for bookkeeping; distinct modes are orthogonal
    by construction so it does not enter the gain.
    """

    mode: int
    distance: float = 1.0
    model: OamModel = OamModel.LOS_SCALED
    fixed_value: float | None = None
    base_gain: float | None = None
    pathloss_exponent: float = 2.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", int(self.mode))
        object.__setattr__(self, "distance", float(self.distance))
        object.__setattr__(self, "model", OamModel(self.model))
        object.__setattr__(self, "pathloss_exponent", float(self.pathloss_exponent))
        if self.fixed_value is not None:
            object.__setattr__(self, "fixed_value", float(self.fixed_value))
        if self.base_gain is not None:
            object.__setattr__(self, "base_gain", float(self.base_gain))
        _check(self.mode >= 1, f"OAM mode must be >= 1, got {self.mode!r}")
        _check(_finite(self.distance) and self.distance > 0.0,
               f"distance must be finite and > 0, got {self.distance!r}")
        _check(_finite(self.pathloss_exponent) and self.pathloss_exponent >= 0.0,
               f"pathloss_exponent must be finite and >= 0, got {self.pathloss_exponent!r}")
        if self.model is OamModel.FIXED:
            _check(self.fixed_value is not None,
                   "fixed OAM model requires fixed_value")
            _check(_finite(self.fixed_value) and self.fixed_value > 0.0,
                   f"fixed_value must be finite and > 0, got {self.fixed_value!r}")
        else:
            _check(self.base_gain is not None,
                   "los-scaled OAM model requires base_gain "
                   "(zero-K links have no LOS default; set it explicitly)")
            _check(_finite(self.base_gain) and self.base_gain > 0.0,
                   f"base_gain must be finite and > 0, got {self.base_gain!r}")


def _default_links() -> tuple[RicianLink, RicianLink, RicianLink]:
    return (
        RicianLink(k_factor=5.0, mean_power=36.0, distance=0.5),
        RicianLink(k_factor=2.0, mean_power=9.0, distance=1.0),
        RicianLink(k_factor=5.0, mean_power=36.0, distance=0.5),
    )


def _default_base_gain(link: RicianLink) -> float:
    return link.los_power_fraction


@dataclass(frozen=True)
class SystemParams:
    """All scalar protocol parameters for one operating point.

    ``rho`` is the transmit SNR P/sigma^2 (linear); the total transmit power
    is the derived ``total_power = rho * noise_power`` and is deliberately
    not an independent field. ``p_n``/``p_f`` are the NOMA power-allocation
    coefficients for the near and far user, ``delta`` the power-splitting
    fraction routed to energy harvesting, ``eta`` the harvest conversion
    efficiency and ``alpha_ts`` the harvesting time fraction of the
    time-switching benchmark.
    """

    rho: float = 10.0 ** 1.5
    p_n: float = 0.4
    p_f: float = 0.6
    delta: float = 0.3
    eta: float = 0.7
    alpha_ts: float = 0.3
    link_s1: RicianLink = field(default_factory=lambda: _default_links()[0])
    link_s2: RicianLink = field(default_factory=lambda: _default_links()[1])
    link_12: RicianLink = field(default_factory=lambda: _default_links()[2])
    oam1: OamChannel = field(default_factory=lambda: OamChannel(
        mode=2, distance=0.5, base_gain=30.0))
    oam2: OamChannel = field(default_factory=lambda: OamChannel(
        mode=1, distance=1.0, base_gain=6.0))
    noise_power: float = 1.0
    collinear: bool = True
    power_sum_rule: str = POWER_SUM_UNIT

    def __post_init__(self) -> None:
        for name in ("rho", "p_n", "p_f", "delta", "eta", "alpha_ts", "noise_power"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "collinear", bool(self.collinear))
        _check(_finite(self.rho) and self.rho > 0.0,
               f"rho must be finite and > 0, got {self.rho!r}")
        _check(_finite(self.noise_power) and self.noise_power > 0.0,
               f"noise_power must be finite and > 0, got {self.noise_power!r}")
        _check(0.0 < self.p_n < 1.0, f"p_n must lie in (0, 1), got {self.p_n!r}")
        _check(0.0 < self.p_f < 1.0, f"p_f must lie in (0, 1), got {self.p_f!r}")
        _check(self.p_n < self.p_f,
               f"power coefficients must satisfy p_n < p_f, got p_n={self.p_n!r}, p_f={self.p_f!r}")
        if self.power_sum_rule not in _POWER_SUM_RULES:
            raise ParameterError(
                f"power_sum_rule must be one of {_POWER_SUM_RULES}, got {self.power_sum_rule!r}")
        _check(0.0 <= self.delta <= 1.0, f"delta must lie in [0, 1], got {self.delta!r}")
        target = 1.0 if self.power_sum_rule == POWER_SUM_UNIT else 1.0 - self.delta
        _check(abs(self.p_n + self.p_f - target) <= 1e-9,
               f"p_n + p_f must equal {target} under rule {self.power_sum_rule!r}, "
               f"got {self.p_n + self.p_f!r}")
        _check(0.0 <= self.eta <= 1.0, f"eta must lie in [0, 1], got {self.eta!r}")
        _check(0.0 < self.alpha_ts < 1.0,
               f"alpha_ts must lie in (0, 1), got {self.alpha_ts!r}")
        if self.collinear:
            expected = 1.0 - self.link_s1.distance
            _check(abs(self.link_12.distance - expected) <= 1e-12,
                   "collinear placement requires d_12 = 1 - d_s1 "
                   f"(expected {expected!r}, got {self.link_12.distance!r})")

    @property
    def total_power(self) -> float:
        """Total transmit power P = rho * noise_power."""
        return self.rho * self.noise_power

    @classmethod
    def default(cls) -> "SystemParams":
        return cls.from_flat({})

    @classmethod
    def from_flat(cls, mapping: Mapping[str, Any]) -> "SystemParams":
        """Build parameters from the flat key/value schema.

        Unknown keys raise :class:`ConfigError`. ``rho`` may alternatively be
        given as ``rho_db`` (converted as 10**(dB/10)); never both.
        """
        unknown = set(mapping) - PARAM_INPUT_KEYS
        if unknown:
            raise ConfigError(
                f"unknown parameter key(s): {', '.join(sorted(unknown))}")
        if "rho" in mapping and "rho_db" in mapping:
            raise ConfigError("give either rho or rho_db, not both")
        flat: dict[str, Any] = dict(_FLAT_DEFAULTS)
        flat.update(mapping)
        if "rho_db" in flat:
            flat["rho"] = 10.0 ** (float(flat.pop("rho_db")) / 10.0)

        collinear = bool(flat["collinear"])
        d_s1 = float(flat["d_s1"])
        d_12 = flat["d_12"]
        if d_12 is None:
            if not collinear:
                raise ConfigError("d_12 is required when collinear = false")
            d_12 = 1.0 - d_s1
        elif collinear and abs(float(d_12) - (1.0 - d_s1)) > 1e-12:
            raise ParameterError(
                f"collinear placement requires d_12 = 1 - d_s1, got d_12={d_12!r}")

        eps = float(flat["pathloss_exp"])
        link_s1 = RicianLink(flat["k_s1"], flat["omega_s1"], d_s1, eps)
        link_s2 = RicianLink(flat["k_s2"], flat["omega_s2"], flat["d_s2"], eps)
        link_12 = RicianLink(flat["k_12"], flat["omega_12"], d_12, eps)

        model = OamModel(flat["oam_model"])
        if model is OamModel.LOS_SCALED:
            gain1 = flat["oam1_base_gain"]
            gain2 = flat["oam2_base_gain"]
            oam1 = OamChannel(flat["l_s1"], d_s1, model,
                              base_gain=_default_base_gain(link_s1) if gain1 is None else gain1,
                              pathloss_exponent=eps)
            oam2 = OamChannel(flat["l_s2"], link_s2.distance, model,
                              base_gain=_default_base_gain(link_s2) if gain2 is None else gain2,
                              pathloss_exponent=eps)
        else:
            oam1 = OamChannel(flat["l_s1"], d_s1, model,
                              fixed_value=flat["mu1_fixed"], pathloss_exponent=eps)
            oam2 = OamChannel(flat["l_s2"], link_s2.distance, model,
                              fixed_value=flat["mu2_fixed"], pathloss_exponent=eps)

        return cls(
            rho=flat["rho"], p_n=flat["p_n"], p_f=flat["p_f"],
            delta=flat["delta"], eta=flat["eta"], alpha_ts=flat["alpha_ts"],
            link_s1=link_s1, link_s2=link_s2, link_12=link_12,
            oam1=oam1, oam2=oam2,
            noise_power=flat["noise_power"], collinear=collinear,
            power_sum_rule=str(flat["power_sum_rule"]),
        )

    def to_flat(self) -> dict[str, Any]:
        """Flat key/value form; the exact inverse of :meth:`from_flat`."""
        exponents = {self.link_s1.pathloss_exponent, self.link_s2.pathloss_exponent,
                     self.link_12.pathloss_exponent,
                     self.oam1.pathloss_exponent, self.oam2.pathloss_exponent}
        if len(exponents) != 1:
            raise ConfigError(
                "the flat schema assumes one shared pathloss_exp; "
                f"found {sorted(exponents)}")
        flat: dict[str, Any] = {
            "rho": self.rho,
            "p_n": self.p_n,
            "p_f": self.p_f,
            "delta": self.delta,
            "eta": self.eta,
            "alpha_ts": self.alpha_ts,
            "noise_power": self.noise_power,
            "collinear": self.collinear,
            "power_sum_rule": self.power_sum_rule,
            "k_s1": self.link_s1.k_factor,
            "k_s2": self.link_s2.k_factor,
            "k_12": self.link_12.k_factor,
            "omega_s1": self.link_s1.mean_power,
            "omega_s2": self.link_s2.mean_power,
            "omega_12": self.link_12.mean_power,
            "d_s1": self.link_s1.distance,
            "d_s2": self.link_s2.distance,
            "d_12": self.link_12.distance,
            "pathloss_exp": self.link_s1.pathloss_exponent,
            "l_s1": self.oam1.mode,
            "l_s2": self.oam2.mode,
            "oam_model": self.oam1.model.value,
        }
        if self.oam1.model is OamModel.LOS_SCALED:
            flat["oam1_base_gain"] = self.oam1.base_gain
            flat["oam2_base_gain"] = self.oam2.base_gain
        else:
            flat["mu1_fixed"] = self.oam1.fixed_value
            flat["mu2_fixed"] = self.oam2.fixed_value
        return flat

    def replace(self, **overrides: Any) -> "SystemParams":
        """Copy with flat-schema overrides, re-deriving dependent values.

        Values that were left at their derived defaults (d_12 under collinear
        placement, the LOS-fraction OAM gains) are recomputed from the
        overridden inputs rather than pinned at their old numbers.
        """
        flat = self.to_flat()
        if self.collinear and "d_12" not in overrides:
            flat.pop("d_12")
        if self.oam1.model is OamModel.LOS_SCALED:
            if flat.get("oam1_base_gain") == _default_base_gain(self.link_s1):
                flat.pop("oam1_base_gain")
            if flat.get("oam2_base_gain") == _default_base_gain(self.link_s2):
                flat.pop("oam2_base_gain")
        if "rho_db" in overrides:
            flat.pop("rho", None)
        flat.update(overrides)
        return SystemParams.from_flat(flat)


_FLAT_DEFAULTS: dict[str, Any] = {
    "rho": 10.0 ** 1.5,
    "p_n": 0.4,
    "p_f": 0.6,
    "delta": 0.3,
    "eta": 0.7,
    "alpha_ts": 0.3,
    "noise_power": 1.0,
    "collinear": True,
    "power_sum_rule": POWER_SUM_UNIT,
    "k_s1": 5.0,
    "k_s2": 2.0,
    "k_12": 5.0,
    "omega_s1": 36.0,
    "omega_s2": 9.0,
    "omega_12": 36.0,
    "d_s1": 0.5,
    "d_s2": 1.0,
    "d_12": None,
    "pathloss_exp": 2.0,
    "l_s1": 2,
    "l_s2": 1,
    "oam_model": OamModel.LOS_SCALED.value,
    "mu1_fixed": None,
    "mu2_fixed": None,
    "oam1_base_gain": None,
    "oam2_base_gain": None,
}

_FLOAT_KEYS = frozenset({
    "rho", "p_n", "p_f", "delta", "eta", "alpha_ts", "noise_power",
    "k_s1", "k_s2", "k_12", "omega_s1", "omega_s2", "omega_12",
    "d_s1", "d_s2", "pathloss_exp",
})
_OPT_FLOAT_KEYS = frozenset({
    "d_12", "mu1_fixed", "mu2_fixed", "oam1_base_gain", "oam2_base_gain",
})
_INT_KEYS = frozenset({"l_s1", "l_s2"})
_BOOL_KEYS = frozenset({"collinear"})
_STR_KEYS = frozenset({"power_sum_rule", "oam_model"})

PARAM_KEYS = frozenset(_FLAT_DEFAULTS)
PARAM_INPUT_KEYS = PARAM_KEYS | {"rho_db"}


def coerce_param_value(key: str, text: str) -> Any:
    """Convert the textual form of one flat-schema value to its native type."""
    if key not in PARAM_INPUT_KEYS:
        raise ConfigError(f"unknown parameter key: {key!r}")
    text = text.strip()
    try:
        if key in _BOOL_KEYS:
            lowered = text.lower()
            if lowered not in ("true", "false"):
                raise ValueError("expected true or false")
            return lowered == "true"
        if key in _INT_KEYS:
            return int(text)
        if key in _STR_KEYS:
            return text
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {text!r} ({exc})") from None
