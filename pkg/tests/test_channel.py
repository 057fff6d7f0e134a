import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oamuca.channel import (
    ChannelMatrix,
    LinkBudget,
    ModeGains,
    NotCirculantError,
    PowerAllocation,
    UcaLinkGeometry,
    add_noise,
    approx_mode_gains,
    build_channel_matrix,
    circulancy_residual,
    demux_receive,
    distance_matrix,
    effective_orders,
    element_distance,
    exact_mode_gains,
    idft_matrix,
    mode_eigenvalues,
    mux_transmit,
)
from oracles import channel_entry, coordinate_distance, jacobi_singular_values

UNIT = LinkBudget()

geometries = st.builds(
    UcaLinkGeometry,
    n_elements=st.sampled_from([1, 2, 3, 4, 7, 8, 16, 32]),
    r_t=st.floats(min_value=0.01, max_value=2.0),
    r_r=st.floats(min_value=0.01, max_value=2.0),
    d=st.floats(min_value=1.0, max_value=100.0),
    alpha=st.floats(min_value=-7.0, max_value=7.0),
)


# -- types ------------------------------------------------------------------


@pytest.mark.parametrize(
    "kw",
    [
        dict(n_elements=0),
        dict(r_t=0.0),
        dict(r_r=-1.0),
        dict(d=0.0),
        dict(wavelength=0.0),
        dict(d=math.nan),
        dict(alpha=math.inf),
    ],
)
def test_geometry_validation(kw):
    base = dict(n_elements=4, r_t=0.5, r_r=0.5, d=20.0)
    base.update(kw)
    with pytest.raises(ValueError):
        UcaLinkGeometry(**base)


@given(st.floats(min_value=-50.0, max_value=50.0))
def test_alpha_normalised(alpha):
    g = UcaLinkGeometry(4, 0.5, 0.5, 20.0, alpha=alpha)
    assert 0.0 <= g.alpha < 2 * math.pi
    assert math.isclose(math.cos(g.alpha), math.cos(alpha), abs_tol=1e-12)


@pytest.mark.parametrize("kw", [dict(beta=0.0), dict(bandwidth_hz=-1.0), dict(noise_variance=0.0), dict(total_power=0.0)])
def test_budget_validation(kw):
    with pytest.raises(ValueError):
        LinkBudget(**kw)


def test_budget_from_snr_db():
    b = LinkBudget.from_snr_db(20.0)
    assert b.snr == pytest.approx(100.0)


def test_power_allocation_normalisation():
    assert np.sum(PowerAllocation.uniform(7).factors ** 2) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        PowerAllocation([0.5, 0.5])
    with pytest.raises(ValueError):
        PowerAllocation([-1.0])
    with pytest.raises(ValueError):
        PowerAllocation.over_mask([False, False])
    p = PowerAllocation.over_mask([True, False, True])
    np.testing.assert_allclose(p.factors, [math.sqrt(0.5), 0.0, math.sqrt(0.5)])


def test_mode_gains_validation():
    with pytest.raises(ValueError):
        ModeGains([1.0, -0.1], "exact")
    with pytest.raises(ValueError):
        ModeGains([1.0], "guess")
    with pytest.raises(ValueError):
        ModeGains([], "exact")


def test_matrix_entries_are_read_only():
    h = build_channel_matrix(UcaLinkGeometry(4, 0.5, 0.5, 20.0), UNIT)
    with pytest.raises(ValueError):
        h.entries[0, 0] = 0


# -- element_distance -------------------------------------------------------


def test_distance_same_index_equal_radii_is_d():
    g = UcaLinkGeometry(8, 0.7, 0.7, 13.0)
    for m in range(1, 9):
        assert element_distance(g, m, m) == 13.0


def test_distance_opposite_elements():
    g = UcaLinkGeometry(8, 0.7, 0.7, 13.0)
    assert element_distance(g, 1, 5) == pytest.approx(math.sqrt(13.0**2 + 4 * 0.7**2), rel=1e-15)


def test_distance_matches_coordinates():
    g = UcaLinkGeometry(4, 0.05, 0.7, 20.0, alpha=0.3)
    assert element_distance(g, 2, 3) == pytest.approx(coordinate_distance(g, 2, 3), rel=1e-14)


@given(geometries, st.data())
def test_distance_properties(g, data):
    n = g.n_elements
    m = data.draw(st.integers(1, n))
    k = data.draw(st.integers(1, n))
    dmn = element_distance(g, m, k)
    assert dmn == pytest.approx(coordinate_distance(g, m, k), rel=1e-12)
    assert g.d <= dmn <= math.sqrt(g.d**2 + (g.r_t + g.r_r) ** 2) * (1 + 1e-15)
    flipped = UcaLinkGeometry(n, g.r_t, g.r_r, g.d, alpha=-g.alpha, wavelength=g.wavelength)
    assert element_distance(flipped, k, m) == pytest.approx(dmn, rel=1e-13)


@pytest.mark.parametrize("m,n", [(0, 1), (1, 0), (5, 1), (1, 5)])
def test_distance_index_errors(m, n):
    with pytest.raises(IndexError):
        element_distance(UcaLinkGeometry(4, 0.5, 0.5, 20.0), m, n)


def test_distance_matrix_agrees_with_scalar():
    g = UcaLinkGeometry(6, 0.3, 0.9, 7.0, alpha=1.1)
    dm = distance_matrix(g)
    for m in range(6):
        for n in range(6):
            assert dm[m, n] == pytest.approx(element_distance(g, m + 1, n + 1), rel=1e-15)


# -- build_channel_matrix ---------------------------------------------------


def test_single_element_channel():
    g = UcaLinkGeometry(1, 0.5, 0.5, 20.0)
    h = build_channel_matrix(g, UNIT)
    expected = 0.1 * np.exp(-2j * math.pi * 20.0 / 0.1) / (4 * math.pi * 20.0)
    assert h.entries.shape == (1, 1)
    assert h.entries[0, 0] == pytest.approx(expected, rel=1e-12)


def test_tiny_radii_make_all_entries_equal():
    h = build_channel_matrix(UcaLinkGeometry(8, 1e-9, 1e-9, 20.0), UNIT)
    spread = np.abs(h.entries - h.entries[0, 0]).max() / abs(h.entries[0, 0])
    assert spread <= 1e-9


def test_first_row_matches_scalar_oracle():
    g = UcaLinkGeometry(8, 0.5, 0.5, 20.0)
    h = build_channel_matrix(g, UNIT)
    for n in range(1, 9):
        assert h.entries[0, n - 1] == pytest.approx(channel_entry(g, 1.0, 1, n), rel=1e-11)


@given(geometries)
def test_circulancy(g):
    h = build_channel_matrix(g, UNIT)
    assert circulancy_residual(h) <= 1e-12
    assert np.all(np.isfinite(h.entries)) and np.all(np.abs(h.entries) > 0)


# -- exact_mode_gains -------------------------------------------------------


def test_constant_row_gives_dc_only():
    g = UcaLinkGeometry(5, 0.5, 0.5, 20.0)
    c = 0.2 + 0.1j
    gains = exact_mode_gains(ChannelMatrix(np.full((5, 5), c), g))
    np.testing.assert_allclose(gains.gains, [5 * abs(c), 0, 0, 0, 0], atol=1e-15)


def test_single_element_gain():
    h = build_channel_matrix(UcaLinkGeometry(1, 0.5, 0.5, 20.0), UNIT)
    assert exact_mode_gains(h).gains[0] == pytest.approx(abs(h.entries[0, 0]), rel=1e-15)


def test_gains_equal_jacobi_singular_values():
    h = build_channel_matrix(UcaLinkGeometry(8, 0.5, 0.5, 20.0), UNIT)
    gains = np.sort(exact_mode_gains(h).gains)[::-1]
    sv = jacobi_singular_values(h.entries)
    assert np.max(np.abs(gains - sv) / sv[0]) <= 1e-9


@given(geometries)
def test_gains_equal_singular_values(g):
    h = build_channel_matrix(g, UNIT)
    gains = np.sort(exact_mode_gains(h).gains)[::-1]
    sv = jacobi_singular_values(h.entries)
    assert np.max(np.abs(gains - sv)) <= 1e-9 * sv[0]


def test_non_circulant_rejected():
    g = UcaLinkGeometry(3, 0.5, 0.5, 20.0)
    a = np.ones((3, 3), dtype=complex)
    a[1, 2] = 2.0
    with pytest.raises(NotCirculantError):
        exact_mode_gains(ChannelMatrix(a, g))


@given(geometries)
def test_diagonalisation(g):
    h = build_channel_matrix(g, UNIT)
    w = idft_matrix(g.n_elements)
    d = w.conj().T @ h.entries @ w
    off = d - np.diag(np.diag(d))
    assert np.linalg.norm(off) <= 1e-10 * np.linalg.norm(d)
    np.testing.assert_allclose(np.diag(d), mode_eigenvalues(h), atol=1e-12 * np.abs(d).max())


# -- approx_mode_gains ------------------------------------------------------


def test_effective_orders():
    assert effective_orders(1).tolist() == [0]
    assert effective_orders(4).tolist() == [0, 1, 2, -1]
    assert effective_orders(5).tolist() == [0, 1, 2, -2, -1]


def test_small_radii_limit():
    g = UcaLinkGeometry(8, 1e-9, 1e-9, 20.0)
    gains = approx_mode_gains(g, UNIT).gains
    pref = 0.1 * 8 / (4 * math.pi * 20.0)
    assert gains[0] == pytest.approx(pref, rel=1e-12)
    assert np.all(gains[1:] <= 1e-12 * pref)


@given(geometries)
def test_mirror_symmetry_is_exact(g):
    gains = approx_mode_gains(g, UNIT).gains
    n = g.n_elements
    for l in range(1, n):
        assert gains[l] == gains[n - l]


@given(geometries)
def test_alpha_does_not_change_modulus(g):
    ref = approx_mode_gains(UcaLinkGeometry(g.n_elements, g.r_t, g.r_r, g.d, 0.0), UNIT).gains
    for a in (0.7, 3.1):
        got = approx_mode_gains(UcaLinkGeometry(g.n_elements, g.r_t, g.r_r, g.d, a), UNIT).gains
        assert np.array_equal(got, ref)


def test_bessel_form_within_five_percent_at_64():
    g = UcaLinkGeometry(64, 0.5, 0.5, 20.0)
    exact = exact_mode_gains(build_channel_matrix(g, UNIT)).gains
    approx = approx_mode_gains(g, UNIT).gains
    low = np.abs(effective_orders(64)) <= 3
    err = np.abs(approx[low] - exact[low]) / exact[low]
    assert err.max() <= 0.05
    # Calibrated: the residual is the 1/d vs 1/d_mn amplitude term, ~(R_t^2 + R_r^2) / (2 d^2).
    assert err.max() <= 1e-3


# -- mux / demux / noise ----------------------------------------------------


def test_mux_dc_symbol():
    n = 8
    p = PowerAllocation.uniform(n)
    s = np.zeros(n, complex)
    s[0] = 1.0
    np.testing.assert_allclose(mux_transmit(s, p), np.full(n, p.factors[0] / math.sqrt(n)), atol=1e-15)


def test_mux_single_element():
    p = PowerAllocation([1.0])
    assert mux_transmit([2 - 1j], p)[0] == pytest.approx(2 - 1j)


def test_mux_matrix_unitary():
    w = idft_matrix(16)
    np.testing.assert_allclose(w.conj().T @ w, np.eye(16), atol=1e-12)


@given(st.integers(1, 64), st.integers(0, 2**32 - 1))
def test_mux_preserves_norm(n, seed):
    rng = np.random.default_rng(seed)
    s = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    raw = rng.random(n) + 0.1
    p = PowerAllocation(raw / np.linalg.norm(raw))
    x = mux_transmit(s, p)
    assert np.linalg.norm(x) == pytest.approx(np.linalg.norm(p.factors * s), rel=1e-12)
    np.testing.assert_allclose(x, idft_matrix(n) @ (p.factors * s), atol=1e-12 * np.abs(s).max())


def test_mux_length_mismatch():
    with pytest.raises(ValueError):
        mux_transmit(np.ones(3), PowerAllocation.uniform(4))


def test_demux_inverts_mux_matrix():
    rng = np.random.default_rng(0)
    v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    np.testing.assert_allclose(demux_receive(idft_matrix(8) @ v), v, atol=1e-12)
    assert np.all(demux_receive(np.zeros(5)) == 0)
    with pytest.raises(ValueError):
        demux_receive(np.array([]))


def test_identity_channel_loopback():
    rng = np.random.default_rng(1)
    s = rng.standard_normal(12) + 1j * rng.standard_normal(12)
    p = PowerAllocation.uniform(12)
    np.testing.assert_allclose(demux_receive(mux_transmit(s, p)), p.factors * s, atol=1e-12)


def test_noise_free_pipeline_recovers_symbols():
    g = UcaLinkGeometry(8, 1.0, 1.0, 4.0)
    h = build_channel_matrix(g, UNIT)
    rng = np.random.default_rng(2)
    s = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    p = PowerAllocation.uniform(8)
    r = demux_receive(h.entries @ mux_transmit(s, p))
    eig = mode_eigenvalues(h)
    np.testing.assert_allclose(r, eig * p.factors * s, atol=1e-10 * np.abs(r).max())
    assert np.max(np.abs(r / (eig * p.factors) - s)) < 1e-10


def test_noise_zero_variance_is_identity():
    y = np.array([1 + 2j, 3.0])
    assert np.array_equal(add_noise(y, 0.0, seed=5), y)


def test_noise_is_seeded():
    y = np.zeros(16, complex)
    assert np.array_equal(add_noise(y, 0.3, seed=9), add_noise(y, 0.3, seed=9))
    assert not np.array_equal(add_noise(y, 0.3, seed=9), add_noise(y, 0.3, seed=10))


def test_noise_power():
    z = add_noise(np.zeros(100_000, complex), 1.0, seed=0)
    power = np.mean(np.abs(z) ** 2)
    assert 0.98 <= power <= 1.02
    assert abs(np.mean(z.real**2) - np.mean(z.imag**2)) < 0.02


def test_noise_rejects_negative_variance():
    with pytest.raises(ValueError):
        add_noise(np.zeros(2), -1.0, seed=0)
