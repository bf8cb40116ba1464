"""Trial-kernel backends: compiled (Cython) with a pure-numpy fallback.

Both backends implement the same two entry points over an identical random
stream layout:

``uniform_samples(key0, key1, start_trial, n)``
    The raw uniforms of trials ``start_trial .. start_trial+n-1`` as an
    (n, 8) float64 array. Trial ``t`` owns Philox4x64-10 counter blocks
    ``2t+1`` and ``2t+2`` under the 128-bit key ``(key0, key1)``; each
    64-bit word maps to a double as ``(word >> 11) * 2**-53``. The two
    backends agree bitwise.

``capacity_samples(key0, key1, start_trial, n, coeffs)``
    Per-trial user capacities, an (n, 8) float64 array with columns
    (c_ue1, c_ue2) for the schemes cnoma-ps-oam, cnoma-ps, cnoma-ts,
    oma-ps-oam in that order. ``coeffs`` is the length-14 vector packed by
    ``montecarlo.kernel_coeffs``: LOS amplitude and scatter scale for the
    s->1, s->2 and 1->2 links, then rho, delta, eta, p_n, p_f, alpha_ts,
    mu1, mu2. The backends agree to floating-point rounding (about 1e-15
    relative); each backend on its own is bitwise deterministic.

The compiled backend is used when importable; set CNOMA_OAM_BACKEND to
``python`` or ``compiled`` to force one.
"""

from __future__ import annotations

import os

N_COEFFS = 14
_ENV_VAR = "CNOMA_OAM_BACKEND"


def _load():
    forced = os.environ.get(_ENV_VAR, "").strip().lower() or None
    if forced not in (None, "compiled", "python"):
        raise ImportError(
            f"{_ENV_VAR} must be 'compiled' or 'python', got {forced!r}")
    if forced != "python":
        try:
            from . import _compiled
            return _compiled
        except ImportError:
            if forced == "compiled":
                raise
    from . import _fallback
    return _fallback


def get_backend(name: str):
    """Return a specific backend module ('compiled' or 'python')."""
    if name == "compiled":
        from . import _compiled
        return _compiled
    if name == "python":
        from . import _fallback
        return _fallback
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> tuple[str, ...]:
    names = []
    try:
        from . import _compiled  # noqa: F401
        names.append("compiled")
    except ImportError:
        pass
    names.append("python")
    return tuple(names)


_impl = _load()
BACKEND_NAME: str = _impl.BACKEND_NAME
capacity_samples = _impl.capacity_samples
uniform_samples = _impl.uniform_samples
