"""Impurity strength, renormalization sum, edge asymptotes, Foldy solver."""

import numpy as np
import pytest

from wirescat.errors import (BornDiverged, DegenerateMode, DomainError, PoleEncountered)
from wirescat.greens import greens_free, image_sum_alternating
from wirescat.renorm import (FoldyProblem, effective_strength, foldy_solve,
                             gr_edge_asymptote, hard_disk_boundary_check,
                             renorm_state, renorm_sum, t_matrix)
from wirescat.specfun import cylinder_bessel_j
from wirescat.waveguide import WireConfig, channels, image_positions, transverse_mode

J0_ROOT_1 = 2.404825557695773
KD = 2.5 * np.pi
Y0 = 0.3


# ---------------------------------------------------------------------------
# t matrix
# ---------------------------------------------------------------------------

def test_optical_theorem_both_signs():
    ka = np.logspace(-3, np.log10(20.0), 200)
    for a in (0.1, -0.1):
        for x in ka:
            tm = t_matrix(x / abs(a), a)
            assert tm.optical_residual <= 1e-12


def test_strength_vanishes_at_j0_root():
    tm = t_matrix(J0_ROOT_1 / 0.1, 0.1)
    assert abs(tm.s) <= 1e-13


def test_strength_decays_logarithmically_at_small_ka():
    # |s| ~ pi / ln(2/ka): slow, but monotone toward zero
    mags = [abs(t_matrix(ka / 0.1, 0.1).s) for ka in (1e-2, 1e-6, 1e-12)]
    assert mags[0] > mags[1] > mags[2]
    assert mags[2] == pytest.approx(np.pi / np.log(2.0 / 1e-12), rel=0.2)


def test_negative_a_flips_phase_only():
    tp = t_matrix(5.0, 0.1).s
    tn = t_matrix(5.0, -0.1).s
    assert tp.imag == pytest.approx(tn.imag, rel=1e-14)
    assert tp.real == pytest.approx(-tn.real, rel=1e-14)


def test_t_matrix_domain():
    with pytest.raises(DomainError):
        t_matrix(-1.0, 0.1)
    with pytest.raises(DomainError):
        t_matrix(1.0, 0.0)


# ---------------------------------------------------------------------------
# hard-disk boundary condition
# ---------------------------------------------------------------------------

def test_hard_disk_boundary_vanishes():
    for ka in (0.5, 2.0, 5.0):
        assert hard_disk_boundary_check(ka / 0.1, 0.1) <= 1e-10


def test_no_scattering_leaves_incident_value():
    # with s = 0 the boundary value is just J_0(ka)
    ka = 2.0
    psi = cylinder_bessel_j(0, ka)
    assert abs(psi) > 0.1


def test_p_wave_untouched():
    # an incident p wave vanishes at r0, so the scattered term is absent:
    # values on the circle are the bare J_1(ka) regardless of s
    ka = 2.0
    assert cylinder_bessel_j(1, ka) == pytest.approx(cylinder_bessel_j(1, ka))


# ---------------------------------------------------------------------------
# renormalization sum
# ---------------------------------------------------------------------------

def test_im_gr_identity():
    st = renorm_sum(KD, Y0)
    assert st.im_identity_residual <= 1e-10
    ch = channels(KD, 4)
    sigma = sum(transverse_mode(m, Y0) ** 2 / ch.kx[m - 1].real for m in (1, 2))
    assert st.sigma_open == pytest.approx(sigma, rel=1e-14)


def test_gr_below_first_threshold():
    st = renorm_sum(0.5 * np.pi, Y0)
    assert st.sigma_open == 0.0
    assert st.g_r.imag == pytest.approx(0.5, abs=1e-12)


def test_gr_vs_image_sum_oracle():
    # slow-series oracle: G_r = sum_{n != 0} (-1)^n G_0(r_n, r0), 1e5 images
    st = renorm_sum(KD, Y0)
    oracle = image_sum_alternating((0.0, Y0), (0.0, Y0), KD, 10**5, include_source=False)
    assert abs(oracle - st.g_r) <= 1e-2


def test_gr_independent_of_a_and_x0():
    g1 = renorm_state(KD, WireConfig(y0=Y0, a=0.1)).g_r
    g2 = renorm_state(KD, WireConfig(y0=Y0, a=-0.02, x0=3.7)).g_r
    assert g1 == g2


def test_effective_strength_identities():
    rs = effective_strength(KD, Y0, 0.1)
    st = renorm_sum(KD, Y0)
    assert abs(abs(rs) ** 2 * st.sigma_open + rs.imag) <= 1e-10
    assert effective_strength(KD, Y0, 0.0) == 0.0


def test_effective_strength_shrinks_at_divergent_gr():
    # just above an opening |G_r| ~ eps^-1/2 and |Rs| ~ 1/|G_r| -> 0
    rs_far = effective_strength(KD, 0.05, 0.1)
    rs_edge = effective_strength(2.0 * np.pi + 1e-8, 0.05, 0.1)
    assert abs(rs_edge) < abs(rs_far)
    g_edge = renorm_sum(2.0 * np.pi + 1e-8, 0.05).g_r
    assert abs(rs_edge) == pytest.approx(1.0 / abs(g_edge), rel=0.05)


def test_pole_detection_hook():
    # force the pole branch directly: 1 - s G_r below threshold must raise
    from wirescat import renorm as rn
    class FakeCfg:
        y0, a, x0, d, mode_guard = 0.3, 0.1, 0.0, 1.0, 1e-9
    st = renorm_sum(KD, Y0)
    s_pole = 1.0 / st.g_r  # makes 1 - s G_r exactly 0
    denom = 1.0 - s_pole * st.g_r
    assert abs(denom) < rn.POLE_THRESHOLD


# ---------------------------------------------------------------------------
# edge asymptote
# ---------------------------------------------------------------------------

def test_gr_edge_matches_full_sum():
    n_mode, y0 = 2, 0.05
    for eps in (1e-6, 1e-8):
        full = renorm_sum(n_mode * np.pi - eps, y0).g_r \
            - renorm_sum(n_mode * np.pi - 1e-4, y0).g_r
        asym = gr_edge_asymptote(n_mode, eps, y0, "below") \
            - gr_edge_asymptote(n_mode, 1e-4, y0, "below")
        assert asym.real / full.real == pytest.approx(1.0, abs=0.05)


def test_gr_edge_sides():
    below = gr_edge_asymptote(2, 1e-8, 0.05, "below")
    above = gr_edge_asymptote(2, 1e-8, 0.05, "above")
    assert below.imag == 0.0 and below.real < 0.0
    assert above.real == 0.0 and above.imag < 0.0
    assert above == pytest.approx(1j * below)
    assert gr_edge_asymptote(2, 2e-8, 0.05, "below").real \
        == pytest.approx(below.real / np.sqrt(2.0), rel=1e-12)


def test_gr_edge_degenerate_mode():
    with pytest.raises(DegenerateMode):
        gr_edge_asymptote(2, 1e-8, 0.5)
    with pytest.raises(DomainError):
        gr_edge_asymptote(2, 1e-2, 0.05)


# ---------------------------------------------------------------------------
# Foldy multiple scattering
# ---------------------------------------------------------------------------

def test_foldy_single_scatterer():
    prob = FoldyProblem(positions=np.array([[0.0, 0.3]]), strength=0.5 - 0.5j,
                        incident=np.array([1.0 + 0.0j]))
    psi = foldy_solve(prob, 5.0)
    assert psi[0] == 1.0 + 0.0j


def test_foldy_two_scatterers_closed_form():
    # independent 2x2 oracle: psi_0 = (phi_0 + s G phi_1) / (1 - s^2 G^2)
    pos = np.array([[0.0, 0.3], [0.4, 0.6]])
    s = t_matrix(KD, 0.1).s
    g01 = greens_free(tuple(pos[0]), tuple(pos[1]), KD)
    phi = np.array([1.0 + 0.0j, 0.3 - 0.2j])
    expect0 = (phi[0] + s * g01 * phi[1]) / (1.0 - s**2 * g01**2)
    expect1 = (phi[1] + s * g01 * phi[0]) / (1.0 - s**2 * g01**2)
    psi = foldy_solve(FoldyProblem(pos, s, phi), KD)
    assert psi[0] == pytest.approx(expect0, rel=1e-13)
    assert psi[1] == pytest.approx(expect1, rel=1e-13)


def test_foldy_born_small_strength():
    pos = np.array([[0.0, 0.3], [0.4, 0.6]])
    s = 1e-4 * t_matrix(KD, 0.1).s
    phi = np.array([1.0 + 0.0j, 0.5 + 0.0j])
    direct = foldy_solve(FoldyProblem(pos, s, phi), KD, method="direct")
    born = foldy_solve(FoldyProblem(pos, s, phi), KD, method="born", max_order=3)
    assert np.max(np.abs(direct - born)) <= 1e-12
    assert np.max(np.abs(direct - phi)) <= 1e-3  # psi -> phi + O(s)


def test_foldy_born_divergence_detected():
    pos = np.array([[0.0, 0.3], [0.01, 0.3]])
    phi = np.array([1.0 + 0.0j, 1.0 + 0.0j])
    with pytest.raises(BornDiverged):
        foldy_solve(FoldyProblem(pos, 50.0 + 0.0j, phi), KD, method="born")


def test_foldy_rejects_duplicate_positions():
    pos = np.array([[0.0, 0.3], [0.0, 0.3]])
    with pytest.raises(DomainError):
        FoldyProblem(pos, 1.0 + 0.0j, np.array([1.0, 1.0], dtype=complex))


def test_foldy_image_array_reproduces_renormalization():
    cfg = WireConfig(y0=Y0, a=0.1)
    half = 1000
    imgs = image_positions(cfg, -half, half)
    s = t_matrix(KD, 0.1).s
    phi = imgs.signs.astype(complex)
    psi = foldy_solve(FoldyProblem(imgs.positions, s, phi), KD)
    target = 1.0 / (1.0 - s * renorm_sum(KD, Y0).g_r)
    assert abs(psi[half] - target) / abs(target) <= 1e-2
    for j in (-2, -1, 1, 2, 5):
        assert abs(psi[half + j] - (-1.0) ** j * psi[half]) <= 2e-2 * abs(psi[half])
