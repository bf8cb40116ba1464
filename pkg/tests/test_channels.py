"""Channel-model tests: sampler moments, OAM determinism, stream contracts."""

import numpy as np
import pytest

from cnoma_oam import (FadingRealization, OamChannel, OamModel, ParameterError,
                       RicianLink, SystemParams, draw_realization,
                       oam_singular_value, rician_moments, sample_rician_power)
from cnoma_oam.channels import UNIFORMS_PER_REALIZATION

N_MOMENT = 1_000_000


def test_rayleigh_special_case_is_exponential():
    # K=0 collapses the LOS term; |h|^2 is exponential with mean 1.
    link = RicianLink(k_factor=0.0, mean_power=1.0, distance=1.0)
    draws = sample_rician_power(link, np.random.default_rng(123), size=N_MOMENT)
    assert abs(draws.mean() - 1.0) < 4.0 / np.sqrt(N_MOMENT)
    assert abs(draws.var() - 1.0) < 0.01  # exponential: variance = mean^2
    assert draws.min() >= 0.0


def test_huge_k_collapses_to_los_power():
    link = RicianLink(k_factor=1e9, mean_power=36.0, distance=1.0)
    draws = sample_rician_power(link, np.random.default_rng(5), size=100_000)
    assert np.all(np.abs(draws / 36.0 - 1.0) < 1e-3)


@pytest.mark.parametrize("k, omega", [(5.0, 36.0), (2.0, 9.0)])
def test_sample_mean_matches_link_mean(k, omega):
    link = RicianLink(k_factor=k, mean_power=omega, distance=1.0)
    mean, var = rician_moments(link)
    draws = sample_rician_power(link, np.random.default_rng(77), size=N_MOMENT)
    assert abs(draws.mean() - mean) < 4.0 * np.sqrt(var / N_MOMENT)
    # spec-level spot value for the strong link
    if k == 5.0:
        assert abs(draws.mean() - 36.0) < 0.2


@pytest.mark.parametrize("k, omega, d, eps", [
    (0.5, 2.0, 1.3, 2.0),
    (5.0, 36.0, 0.5, 2.0),
    (2.0, 9.0, 1.0, 2.0),
    (10.0, 1.0, 2.0, 3.0),
])
def test_moment_property_with_distance_scaling(k, omega, d, eps):
    link = RicianLink(k_factor=k, mean_power=omega, distance=d, pathloss_exponent=eps)
    mean, var = rician_moments(link)
    assert mean == pytest.approx(omega / d ** eps, rel=1e-12)
    draws = sample_rician_power(link, np.random.default_rng(2024), size=N_MOMENT)
    assert abs(draws.mean() - mean) < 4.0 * np.sqrt(var / N_MOMENT)


@pytest.mark.parametrize("k, omega, d", [(5.0, 36.0, 1.0), (2.0, 9.0, 1.0),
                                         (5.0, 36.0, 0.5)])
def test_los_scatter_power_split(k, omega, d):
    from cnoma_oam.channels import link_scales
    link = RicianLink(k_factor=k, mean_power=omega, distance=d)
    los, scatter = link_scales(link)
    effective = link.effective_mean_power
    assert los ** 2 == pytest.approx(k / (k + 1.0) * effective, rel=1e-12)
    assert 2.0 * scatter ** 2 == pytest.approx(effective / (k + 1.0), rel=1e-12)
    assert los ** 2 + 2.0 * scatter ** 2 == pytest.approx(effective, rel=1e-12)


@pytest.mark.parametrize("k, omega", [(5.0, 36.0), (2.0, 9.0)])
def test_variance_matches_analytic(k, omega):
    link = RicianLink(k_factor=k, mean_power=omega, distance=1.0)
    _, var = rician_moments(link)
    draws = sample_rician_power(link, np.random.default_rng(99), size=N_MOMENT)
    sample_var = draws.var(ddof=1)
    # self-normalized: Var(sample variance) ~ (m4 - var^2) / N
    m4 = np.mean((draws - draws.mean()) ** 4)
    se_var = np.sqrt((m4 - sample_var ** 2) / N_MOMENT)
    assert abs(sample_var - var) < 4.0 * se_var


@pytest.mark.parametrize("k, omega, d", [(5.0, 36.0, 1.0), (2.0, 9.0, 1.0),
                                         (0.7, 3.0, 0.6)])
def test_distribution_is_noncentral_chi_square(k, omega, d):
    # independent oracle: |h|^2 / scatter^2 follows ncx2(df=2, nc=los^2/scatter^2)
    ncx2 = pytest.importorskip("scipy.stats").ncx2
    from cnoma_oam.channels import link_scales
    link = RicianLink(k_factor=k, mean_power=omega, distance=d)
    los, scatter = link_scales(link)
    draws = sample_rician_power(link, np.random.default_rng(314), size=100_000)
    scaled = np.sort(draws / scatter ** 2)
    cdf = ncx2.cdf(scaled, df=2, nc=(los / scatter) ** 2)
    empirical = np.arange(1, scaled.size + 1) / scaled.size
    ks_statistic = np.max(np.abs(cdf - empirical))
    assert ks_statistic < 0.01


def test_seed_reproducibility_bitwise():
    link = RicianLink(k_factor=3.0, mean_power=4.0, distance=0.7)
    a = sample_rician_power(link, np.random.default_rng(31), size=10_000)
    b = sample_rician_power(link, np.random.default_rng(31), size=10_000)
    assert (a == b).all()

    params = SystemParams.default()
    r1 = draw_realization(params, np.random.default_rng(8))
    r2 = draw_realization(params, np.random.default_rng(8))
    assert r1 == r2


def test_draw_realization_consumes_fixed_budget():
    params = SystemParams.default()
    rng = np.random.default_rng(17)
    draw_realization(params, rng)
    reference = np.random.default_rng(17).random(UNIFORMS_PER_REALIZATION + 1)
    assert rng.random() == reference[-1]


def test_draw_realization_moment():
    params = SystemParams.default()  # link s->2: K=2, mean power 9 at d=1
    rng = np.random.default_rng(4321)
    draws = np.array([draw_realization(params, rng).g_s2 for _ in range(200_000)])
    # same moment contract as the acceptance check, at a smaller draw count
    _, var = rician_moments(params.link_s2)
    assert abs(draws.mean() - 9.0) < 4.0 * np.sqrt(var / draws.size)


def test_draw_realization_sets_deterministic_oam_gains():
    params = SystemParams.default()
    r = draw_realization(params, np.random.default_rng(0))
    assert r.mu1 == oam_singular_value(params.oam1)
    assert r.mu2 == oam_singular_value(params.oam2)
    # defaults: LOS fraction of the matching link scaled by 1/d^2
    assert r.mu1 == pytest.approx(30.0 / 0.25, rel=1e-12)
    assert r.mu2 == pytest.approx(6.0, rel=1e-12)


def test_collinear_relay_distance_follows_d_s1():
    params = SystemParams.default()
    assert params.link_12.distance == pytest.approx(0.5)
    moved = params.replace(d_s1=0.3)
    assert moved.link_12.distance == pytest.approx(0.7)
    assert moved.oam1.distance == pytest.approx(0.3)


def test_oam_singular_value_fixed_and_scaled():
    fixed = OamChannel(mode=1, model=OamModel.FIXED, fixed_value=1.0)
    assert oam_singular_value(fixed) == 1.0
    unit = OamChannel(mode=2, distance=1.0, base_gain=1.0)
    assert oam_singular_value(unit) == 1.0
    near = OamChannel(mode=2, distance=0.5, base_gain=1.0, pathloss_exponent=2.0)
    assert oam_singular_value(near) == pytest.approx(4.0, rel=1e-12)
    # pure function: repeated calls agree bitwise
    assert oam_singular_value(near) == oam_singular_value(near)


@pytest.mark.parametrize("kwargs", [
    dict(mode=0, base_gain=1.0),
    dict(mode=1, model="fixed"),                      # missing fixed_value
    dict(mode=1, model="fixed", fixed_value=0.0),
    dict(mode=1, model="fixed", fixed_value=-2.0),
    dict(mode=1, model="los-scaled"),                 # missing base_gain
    dict(mode=1, base_gain=0.0),
    dict(mode=1, base_gain=1.0, distance=0.0),
])
def test_oam_channel_rejects_bad_fields(kwargs):
    with pytest.raises(ParameterError):
        OamChannel(**kwargs)


@pytest.mark.parametrize("kwargs", [
    dict(k_factor=-1.0, mean_power=1.0),
    dict(k_factor=float("nan"), mean_power=1.0),
    dict(k_factor=float("inf"), mean_power=1.0),
    dict(k_factor=1.0, mean_power=0.0),
    dict(k_factor=1.0, mean_power=-3.0),
    dict(k_factor=1.0, mean_power=1.0, distance=0.0),
    dict(k_factor=1.0, mean_power=1.0, distance=float("inf")),
    dict(k_factor=1.0, mean_power=1.0, pathloss_exponent=-1.0),
])
def test_rician_link_rejects_bad_fields(kwargs):
    with pytest.raises(ParameterError):
        RicianLink(**kwargs)


def test_fading_realization_domain():
    with pytest.raises(ParameterError):
        FadingRealization(g_s1=-1.0, g_s2=1.0, g_12=1.0, mu1=1.0, mu2=1.0)
    with pytest.raises(ParameterError):
        FadingRealization(g_s1=1.0, g_s2=1.0, g_12=1.0, mu1=0.0, mu2=1.0)
    with pytest.raises(ParameterError):
        FadingRealization(g_s1=float("nan"), g_s2=1.0, g_12=1.0, mu1=1.0, mu2=1.0)
