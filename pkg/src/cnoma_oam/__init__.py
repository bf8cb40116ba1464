"""Link-level Monte Carlo simulator for a two-user cooperative-NOMA
downlink whose near user relays on power harvested from the broadcast
(power-splitting SWIPT), with the relaying slot reused for two extra
symbols on orthogonal OAM modes; all links see Rician fading.

The library estimates ergodic user capacities, sum capacity and energy
efficiency for that scheme and three benchmarks (power splitting and time
switching without OAM, and a TDMA variant with OAM), and ships preset
parameter sweeps that emit CSV tables. Every run is a deterministic
function of its 64-bit seed.
"""

from ._kernel import BACKEND_NAME, available_backends
from .channels import (FadingRealization, draw_realization, oam_singular_value,
                       rician_moments, sample_rician_power)
from .experiments import (FIGURE_IDS, SweepAxis, SweepRow, SweepSpec,
                          figure_preset, format_csv, load_config, parse_config,
                          run_sweep, serialize_config, write_csv)
from .montecarlo import ErgodicEstimate, estimate, estimate_all
from .params import (ConfigError, Metric, OamChannel, OamModel, ParameterError,
                     RicianLink, Scheme, SystemParams)
from .schemes import (CapacityBreakdown, SinrSet, capacity_cnoma_ps,
                      capacity_cnoma_ps_oam, capacity_cnoma_ts,
                      capacity_oma_ps_oam, energy_efficiency, evaluate,
                      harvested_power, oam_sinrs, phase1_sinrs, relay_sinr,
                      sinr_set)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "CapacityBreakdown",
    "ConfigError",
    "ErgodicEstimate",
    "FadingRealization",
    "FIGURE_IDS",
    "Metric",
    "OamChannel",
    "OamModel",
    "ParameterError",
    "RicianLink",
    "Scheme",
    "SinrSet",
    "SweepAxis",
    "SweepRow",
    "SweepSpec",
    "SystemParams",
    "available_backends",
    "capacity_cnoma_ps",
    "capacity_cnoma_ps_oam",
    "capacity_cnoma_ts",
    "capacity_oma_ps_oam",
    "draw_realization",
    "energy_efficiency",
    "estimate",
    "estimate_all",
    "evaluate",
    "figure_preset",
    "format_csv",
    "harvested_power",
    "load_config",
    "oam_singular_value",
    "oam_sinrs",
    "parse_config",
    "phase1_sinrs",
    "relay_sinr",
    "rician_moments",
    "run_sweep",
    "sample_rician_power",
    "serialize_config",
    "sinr_set",
    "write_csv",
]
