"""Tests for the frequency-side eigenvalue machinery.

Hand-arithmetic oracles, default gas (K=1, c_v=1.5, mu=0.1, kappa=1) at the
unit base state (v=1, theta=1): p = 1, p_v = -1, p_e = theta_e = 2/3, and
p*p_e - p_v = 5/3, so the sound speed is sqrt(5/3) ~ 1.2909944.  Writing
s = eta^2, the characteristic cubic is

    lam^3 + (23/30) s lam^2 + (s^2/15 + (5/3) s) lam + (2/3) s^2 = 0.

Tail offsets per branch: -10, 150/17, 20/17 (they sum to zero because the
cubic's quadratic coefficient is exactly linear in s), with quadratic leads
0, -mu/v, -kappa*theta_e/v = 0, -1/10, -2/3.  The first tail correction of
the bounded branch is -900.  Long-wave transport: entropy diffusivity
kappa/(K + c_v) = 2/5, acoustic damping 11/60.  The rescaled gas (mu=3,
kappa=7) has tail offsets -1/3, -1/15, 2/5 and is used where the default
gas's near-degenerate tail constants would swamp quantitative checks.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from green1d.spectrum import (
    CubicCoeffs,
    EigenTriple,
    LongwaveParams,
    SpectralConstants,
    TailCoeffs,
    _collision_eta,
    approx_coeffs,
    approx_eigenvalues,
    char_poly,
    eigenvalues,
    expand_inf,
    expand_zero,
    longwave_params,
    select_constants,
    spectral_gap,
    symbol_matrix,
)
from green1d.state import (
    GasParams,
    base_state,
    flux_jacobian,
    thermo,
    viscosity_matrix,
)

DEFAULTS = GasParams()
RESCALED = GasParams(mu=3.0, kappa=7.0)
GASES = [pytest.param(DEFAULTS, id="defaults"), pytest.param(RESCALED, id="rescaled")]


def gas_params() -> st.SearchStrategy[GasParams]:
    # mu is generated as a fraction of kappa/c_v so the Prandtl bound holds.
    return st.builds(
        lambda K, c_v, kappa, frac: GasParams(
            K=K, c_v=c_v, mu=frac * kappa / c_v, kappa=kappa
        ),
        K=st.floats(0.3, 4.0),
        c_v=st.floats(0.6, 4.0),
        kappa=st.floats(0.5, 8.0),
        frac=st.floats(0.05, 0.9),
    )


def _requirements(params: GasParams, etas: np.ndarray) -> np.ndarray:
    # Per-branch decay the damped family must beat, recomputed from scratch.
    t = thermo(params, base_state(params))
    half = 0.5 * (1.0 + etas**2)
    return np.stack(
        [
            np.zeros_like(etas),
            -params.mu * half,
            -params.kappa * t.theta_e * half,
        ]
    )


def _fit_tail_coeffs(params: GasParams, levels: int = 6) -> np.ndarray:
    # Independent route to the tail constants: subtract the quadratic lead,
    # then fit a polynomial in 1/eta^2 along a frequency-doubling ladder.
    etas = 20.0 * 2.0 ** np.arange(levels)
    lam = eigenvalues(params, etas).lam.real
    t = thermo(params, base_state(params))
    leads = np.array([0.0, -params.mu, -params.kappa * t.theta_e])
    h = 1.0 / etas**2
    return np.stack(
        [
            np.polynomial.polynomial.polyfit(
                h, lam[b] - leads[b] * etas**2, levels - 1
            )
            for b in range(3)
        ]
    )


class TestCharPoly:
    """Characteristic cubic of the frequency-side symbol."""

    def test_symbol_composition(self):
        U = base_state(DEFAULTS)
        F = flux_jacobian(DEFAULTS, U)
        B = viscosity_matrix(DEFAULTS, U)
        E = symbol_matrix(DEFAULTS, np.array([2.0]))[0]
        np.testing.assert_allclose(E, -2j * F - 4.0 * B, rtol=0, atol=1e-15)

    def test_zero_frequency_collapses_to_lam_cubed(self):
        cubic = char_poly(DEFAULTS, np.array([0.0]))
        assert cubic.c2[0] == 0 and cubic.c1[0] == 0 and cubic.c0[0] == 0
        assert cubic.evaluate(np.array([2.0]))[0] == pytest.approx(8.0)

    @pytest.mark.parametrize("params", GASES)
    def test_coefficient_closed_forms(self, params):
        t = thermo(params, base_state(params))
        s = np.array([0.09, 1.0, 49.0])
        cubic = char_poly(params, np.sqrt(s))
        np.testing.assert_allclose(
            cubic.c2, s * (params.kappa * t.theta_e + params.mu), rtol=1e-14
        )
        np.testing.assert_allclose(
            cubic.c1,
            s**2 * params.kappa * params.mu * t.theta_e
            + s * (t.p * t.p_e - t.p_v),
            rtol=1e-14,
        )
        np.testing.assert_allclose(
            cubic.c0, -(s**2) * params.kappa * t.theta_e * t.p_v, rtol=1e-14
        )

    def test_matches_symbol_determinant(self):
        etas = np.array([0.3, 1.0, 7.0])
        E = symbol_matrix(DEFAULTS, etas)
        cubic = char_poly(DEFAULTS, etas)
        eye = np.eye(3)
        for lam in (0.37, -2.0 + 0.5j, 1.5j):
            direct = np.linalg.det(lam * eye[None, :, :] - E)
            np.testing.assert_allclose(
                cubic.evaluate(np.full(3, lam)), direct, rtol=1e-12
            )

    def test_mismatched_coefficient_shapes_rejected(self):
        with pytest.raises(ValueError, match="share one shape"):
            CubicCoeffs(np.zeros(3), np.zeros(3), np.zeros(2))


class TestEigenvalues:
    """Labeled roots of the characteristic cubic."""

    def test_zero_frequency_triple_root_is_flagged(self):
        trip = eigenvalues(DEFAULTS, np.array([0.0, 1.0]))
        np.testing.assert_array_equal(trip.lam[:, 0], np.zeros(3))
        assert 0 in trip.near_collisions
        assert 1 not in trip.near_collisions

    def test_high_frequency_anchors(self):
        # Bounded branch parks near its offset -10; the other two follow the
        # viscous and heat parabolas -eta^2/10 and -2*eta^2/3.
        lam = eigenvalues(DEFAULTS, np.array([100.0])).lam[:, 0]
        assert abs(lam[0] + 10.0) <= 2.0 * 900.0 / 100.0**2
        assert lam[1].real == pytest.approx(-1000.0, rel=1e-2)
        assert lam[2].real == pytest.approx(-20000.0 / 3.0, rel=1e-3)

    @settings(max_examples=80, deadline=None)
    @given(mag=st.floats(1e-6, 1000.0), sign=st.sampled_from([-1.0, 1.0]))
    def test_roots_satisfy_cubic_and_decay(self, mag, sign):
        eta = sign * mag
        trip = eigenvalues(DEFAULTS, np.array([eta]))
        cubic = char_poly(DEFAULTS, np.array([eta]))
        lam = trip.lam[:, 0]
        resid = np.abs(cubic.evaluate(lam))
        # Backward-error scale: the largest term the evaluation sums.
        a = np.abs(lam)
        scale = np.maximum(1.0, a**3)
        scale = np.maximum(scale, np.abs(cubic.c2[0]) * a**2)
        scale = np.maximum(scale, np.abs(cubic.c1[0]) * a)
        scale = np.maximum(scale, np.abs(cubic.c0[0]))
        assert (resid <= 1e-10 * scale).all()
        assert (lam.real < 0).all()

    @settings(max_examples=60, deadline=None)
    @given(mag=st.floats(1e-3, 1000.0))
    def test_roots_pairwise_distinct(self, mag):
        lam = eigenvalues(DEFAULTS, np.array([mag])).lam[:, 0]
        gaps = [abs(lam[i] - lam[j]) for i in range(3) for j in range(i + 1, 3)]
        assert min(gaps) > 0

    def test_conjugate_frequency_mirrors_spectrum(self):
        trip = eigenvalues(DEFAULTS, np.array([3.7, -3.7]))
        # Same branch labels on both sides, related by exact conjugation.
        np.testing.assert_array_equal(trip.lam[:, 1], np.conj(trip.lam[:, 0]))

    def test_coefficient_identities(self):
        etas = np.geomspace(0.01, 1000.0, 60)
        lam = eigenvalues(DEFAULTS, etas).lam
        cubic = char_poly(DEFAULTS, etas)
        e1 = lam.sum(axis=0)
        e2 = lam[0] * lam[1] + lam[0] * lam[2] + lam[1] * lam[2]
        e3 = lam.prod(axis=0)
        np.testing.assert_allclose(e1.real, -cubic.c2, rtol=1e-9)
        np.testing.assert_allclose(e2.real, cubic.c1, rtol=1e-9)
        np.testing.assert_allclose(e3.real, -cubic.c0, rtol=1e-9)
        assert (np.abs(e1.imag) <= 1e-9 * cubic.c2).all()
        assert (np.abs(e3.imag) <= 1e-9 * cubic.c0).all()

    def test_pair_region_layout(self):
        # Below the pair collision: row 0 real, rows 1/2 a conjugate pair
        # with negative imaginary part listed first.
        grid = np.linspace(0.05, 0.95 * _collision_eta(DEFAULTS), 50)
        lam = eigenvalues(DEFAULTS, grid).lam
        assert np.abs(lam[0].imag).max() <= 1e-12
        assert (lam[1].imag < 0).all() and (lam[2].imag > 0).all()
        np.testing.assert_allclose(lam[2], np.conj(lam[1]), rtol=0, atol=1e-12)

    @pytest.mark.parametrize("params", GASES)
    def test_label_continuity_away_from_collision(self, params):
        # Branch velocity is bounded by the sound speed near the origin and
        # by the steepest parabola slope 2*(kappa*theta_e/v)*eta in the tail;
        # allow a factor-two cushion on each.  Labels reassign at the pair
        # collision itself, so a small window around it is excluded.
        t = thermo(params, base_state(params))
        cs = np.sqrt(t.p * t.p_e - t.p_v)
        ec = _collision_eta(params)
        grid = np.arange(0.01, 2.2 * ec + 6.0, 0.002)
        lam = eigenvalues(params, grid).lam
        steps = np.abs(np.diff(lam, axis=1))
        keep = np.abs(grid[:-1] - ec) > 0.05
        bound = 0.002 * (2.0 * cs + 4.0 * params.kappa * t.theta_e * grid[:-1])
        assert (steps[:, keep] <= bound[None, keep]).all()

    def test_pair_collision_is_flagged(self):
        ec = _collision_eta(DEFAULTS)
        window = np.linspace(ec - 1e-9, ec + 1e-9, 41)
        assert len(eigenvalues(DEFAULTS, window).near_collisions) >= 1

    def test_lam_shape_validated(self):
        with pytest.raises(ValueError, match="lam must have shape"):
            EigenTriple(np.zeros(4), np.zeros((3, 3), dtype=complex), ())

    def test_rejects_multidimensional_grid(self):
        with pytest.raises(ValueError, match="1-D"):
            eigenvalues(DEFAULTS, np.zeros((2, 2)))


class TestExpandInf:
    """Laurent development of the branches at high frequency."""

    def test_order_zero_values(self):
        t = thermo(DEFAULTS, base_state(DEFAULTS))
        mu, kap = DEFAULTS.mu, DEFAULTS.kappa
        offset1 = (
            (mu * t.p * t.p_e + kap * t.theta_e * t.p_v - mu * t.p_v)
            / (mu * (mu - kap * t.theta_e))
        )
        assert offset1 == pytest.approx(150.0 / 17.0, rel=1e-13)
        trunc = expand_inf(DEFAULTS, np.array([10.0, 50.0]), order=0)
        # Bounded branch carries no quadratic term: constant at every eta.
        np.testing.assert_allclose(trunc[0], -10.0, rtol=1e-12)
        assert trunc[1, 1] == pytest.approx(-0.1 * 2500.0 + offset1, rel=1e-12)

    def test_truncation_order_tracks_retained_terms(self):
        lam40 = eigenvalues(DEFAULTS, np.array([40.0])).lam[:, 0].real
        lam80 = eigenvalues(DEFAULTS, np.array([80.0])).lam[:, 0].real
        err40 = err80 = None
        for order in range(4):
            err40 = np.abs(
                expand_inf(DEFAULTS, np.array([40.0]), order=order)[:, 0] - lam40
            )
            err80 = np.abs(
                expand_inf(DEFAULTS, np.array([80.0]), order=order)[:, 0] - lam80
            )
            rows = (0, 1) if order == 3 else (0, 1, 2)
            for b in rows:
                rate = np.log2(err40[b] / err80[b])
                assert rate == pytest.approx(2.0 * (order + 1), abs=0.5)
        # At the deepest truncation the heat branch is exhausted to noise:
        # only that row's next Laurent coefficient vanishes identically.
        assert err40[2] <= 1e-9

    def test_matches_eigenvalues_inside_zone(self):
        etas = np.array([40.0, 60.0])
        full = expand_inf(DEFAULTS, etas, order=3)
        lam = eigenvalues(DEFAULTS, etas).lam.real
        assert np.abs(full - lam).max() <= 3e-3

    def test_domain_guards(self):
        with pytest.raises(ValueError, match="needs"):
            expand_inf(DEFAULTS, np.array([4.9]), order=0)
        with pytest.raises(ValueError, match="order"):
            expand_inf(DEFAULTS, np.array([10.0]), order=4)
        with pytest.raises(ValueError, match="order"):
            expand_inf(DEFAULTS, np.array([10.0]), order=-1)


class TestExpandZero:
    """Taylor development of the branches at low frequency."""

    def test_entropy_branch_curvature(self):
        eta = np.array([0.3])
        row0 = expand_zero(DEFAULTS, eta, order=2)[0, 0]
        assert row0.real / 0.09 == pytest.approx(-0.4, rel=1e-12)
        assert row0.imag == 0
        # The labeled roots agree with the curvature once eta is small.
        lam0 = eigenvalues(DEFAULTS, np.array([1e-3])).lam[0, 0]
        assert lam0.real / 1e-6 == pytest.approx(-0.4, rel=1e-6)

    def test_acoustic_slope_and_damping(self):
        lam1 = eigenvalues(DEFAULTS, np.array([0.01])).lam[1, 0]
        assert lam1.imag / 0.01 == pytest.approx(-np.sqrt(5.0 / 3.0), rel=1e-4)
        assert lam1.real / 1e-4 == pytest.approx(-11.0 / 60.0, rel=1e-4)

    def test_pair_rows_conjugate(self):
        trunc = expand_zero(DEFAULTS, np.array([0.1, 0.4]), order=6)
        np.testing.assert_array_equal(trunc[2], np.conj(trunc[1]))

    def test_order_two_is_longwave_form(self):
        lw = longwave_params(DEFAULTS)
        etas = np.array([0.05, 0.2, 0.45])
        trunc = expand_zero(DEFAULTS, etas, order=2)
        expected = (
            1j * lw.wave_speeds[:, None] * etas[None, :]
            - lw.diffusivities[:, None] * etas[None, :] ** 2
        )
        np.testing.assert_allclose(trunc, expected, rtol=0, atol=1e-15)

    def test_matches_eigenvalues_inside_zone(self):
        etas = np.array([0.3, 0.45])
        full = expand_zero(DEFAULTS, etas, order=6)
        lam = eigenvalues(DEFAULTS, etas).lam
        assert np.abs(full - lam).max() <= 1e-5

    def test_domain_guards(self):
        with pytest.raises(ValueError, match="needs"):
            expand_zero(DEFAULTS, np.array([0.6]), order=2)
        with pytest.raises(ValueError, match="order"):
            expand_zero(DEFAULTS, np.array([0.1]), order=0)
        with pytest.raises(ValueError, match="order"):
            expand_zero(DEFAULTS, np.array([0.1]), order=7)


class TestApproxFamily:
    """Closed-form tail constants and the damped interpolating family."""

    @pytest.mark.parametrize(
        "params, offset",
        [
            pytest.param(DEFAULTS, (-10.0, 150.0 / 17.0, 20.0 / 17.0), id="defaults"),
            pytest.param(RESCALED, (-1.0 / 3.0, -1.0 / 15.0, 2.0 / 5.0), id="rescaled"),
        ],
    )
    def test_offsets_and_diffusivities(self, params, offset):
        t = thermo(params, base_state(params))
        tc = approx_coeffs(params)
        np.testing.assert_allclose(tc.offset, offset, rtol=1e-12)
        np.testing.assert_allclose(
            tc.diffusivity, [0.0, params.mu, params.kappa * t.theta_e], rtol=1e-14
        )

    @given(gas=gas_params())
    def test_offsets_sum_to_zero(self, gas):
        # The cubic's quadratic coefficient is exactly linear in eta^2, so
        # the constant Laurent terms of the three branches cancel.
        tc = approx_coeffs(gas)
        assert abs(tc.offset.sum()) <= 1e-12 * np.abs(tc.offset).max()

    @given(gas=gas_params())
    def test_correction_columns_sum_to_zero(self, gas):
        # Same trace argument, one Laurent order deeper per column.
        tc = approx_coeffs(gas)
        colmax = np.abs(tc.correction).max(axis=0)
        assert (np.abs(tc.correction.sum(axis=0)) <= 1e-9 * colmax).all()

    def test_first_correction_closed_form(self):
        t = thermo(DEFAULTS, base_state(DEFAULTS))
        mu, kap = DEFAULTS.mu, DEFAULTS.kappa
        expected = (
            -t.p_v
            * (kap * t.p_v * t.theta_e + mu * t.p * t.p_e)
            / (kap * mu**3 * t.theta_e)
        )
        assert expected == pytest.approx(-900.0, rel=1e-13)
        tc = approx_coeffs(DEFAULTS)
        assert tc.correction[0, 0] == pytest.approx(expected, rel=1e-12)

    def test_tail_fit_recovers_constants(self):
        # Independent ladder fit; deeper coefficients lose accuracy to
        # cancellation, so the tolerance widens with the column.
        fit = _fit_tail_coeffs(DEFAULTS)
        tc = approx_coeffs(DEFAULTS)
        np.testing.assert_allclose(fit[:, 0], tc.offset, rtol=1e-8)
        np.testing.assert_allclose(fit[:, 1], tc.correction[:, 0], rtol=1e-3)
        second = tc.correction[:, 1] - tc.correction[:, 0]
        np.testing.assert_allclose(fit[:, 2], second, rtol=0.2)
        fit7 = _fit_tail_coeffs(RESCALED)
        tc7 = approx_coeffs(RESCALED)
        np.testing.assert_allclose(fit7[:, 0], tc7.offset, rtol=1e-7)
        np.testing.assert_allclose(fit7[:, 1], tc7.correction[:, 0], rtol=0.05)

    def test_order_eight_agreement_with_roots(self):
        sc = select_constants(DEFAULTS)
        errs = []
        for eta in (40.0, 80.0, 160.0):
            lam = eigenvalues(DEFAULTS, np.array([eta])).lam[:, 0].real
            fam = approx_eigenvalues(DEFAULTS, sc, np.array([eta]))[:, 0].real
            errs.append(np.abs(fam - lam).max())
        assert np.log2(errs[0] / errs[1]) == pytest.approx(8.0, abs=0.5)
        assert np.log2(errs[1] / errs[2]) == pytest.approx(8.0, abs=0.5)

    def test_rescaled_family_absolute_accuracy(self):
        # The rescaled gas's corrections are O(1), so at eta = 40 the family
        # already sits on the roots to within float noise.
        sc = select_constants(RESCALED)
        lam = eigenvalues(RESCALED, np.array([40.0])).lam[:, 0].real
        fam = approx_eigenvalues(RESCALED, sc, np.array([40.0]))[:, 0].real
        assert np.abs(fam - lam).max() <= 1e-9

    def test_even_and_conjugate_symmetry(self):
        sc = select_constants(RESCALED)
        etas = np.array([0.0, 1.3, 5.0])
        np.testing.assert_array_equal(
            approx_eigenvalues(RESCALED, sc, etas),
            approx_eigenvalues(RESCALED, sc, -etas),
        )
        z = np.array([0.7 + 0.03j, 2.0 - 0.05j])
        np.testing.assert_allclose(
            approx_eigenvalues(RESCALED, sc, z),
            np.conj(approx_eigenvalues(RESCALED, sc, np.conj(z))),
            rtol=1e-14,
        )
        # A bare damping triple is accepted in place of the constants.
        np.testing.assert_array_equal(
            approx_eigenvalues(RESCALED, np.array(sc.damping), etas),
            approx_eigenvalues(RESCALED, sc, etas),
        )

    def test_damping_shape_validated(self):
        with pytest.raises(ValueError, match="damping must have shape"):
            approx_eigenvalues(DEFAULTS, np.array([1.0, 2.0]), np.array([1.0]))

    def test_tail_coeffs_shapes_validated(self):
        with pytest.raises(ValueError, match="shape"):
            TailCoeffs(np.zeros(2), np.zeros(3), np.zeros((3, 3)))
        with pytest.raises(ValueError, match="correction"):
            TailCoeffs(np.zeros(3), np.zeros(3), np.zeros((3, 2)))


class TestSelectConstants:
    """Damping selection and the uniform-decay scan."""

    def test_rescaled_selection_is_reproducible(self):
        sc = select_constants(RESCALED)
        assert sc.damping[0] == pytest.approx(0.5)
        assert sc.damping[1] == pytest.approx(4.747026551266981, rel=1e-5)
        assert sc.damping[2] == pytest.approx(12.12658795556454, rel=1e-5)
        assert sc.decay_rate == pytest.approx(0.21692193269015542, rel=1e-4)
        assert sc.branch_gap == pytest.approx(1.4870981967399741, rel=1e-4)
        assert sc.margin == pytest.approx(0.2191130633233893, rel=1e-4)
        assert sc.lam_origin == pytest.approx(
            (-0.90488, -4.91341, -11.55532), rel=1e-4
        )

    def test_default_selection_rates(self):
        sc = select_constants(DEFAULTS)
        assert sc.decay_rate == pytest.approx(6.133217584930948, rel=1e-5)
        assert sc.branch_gap == pytest.approx(1.69100953948411, rel=1e-5)
        assert sc.margin > sc.decay_rate

    @pytest.mark.parametrize("params", GASES)
    def test_scan_inequalities_on_fresh_grid(self, params):
        # Re-check the certified inequalities away from the selection grid.
        sc = select_constants(params)
        grid = np.linspace(-sc.eta_max, sc.eta_max, 5001)
        fam = approx_eigenvalues(params, sc, grid).real
        excess = fam - _requirements(params, grid)
        assert (excess + sc.decay_rate).max() < 0
        gaps = np.minimum(
            np.abs(fam[0] - fam[1]),
            np.minimum(np.abs(fam[0] - fam[2]), np.abs(fam[1] - fam[2])),
        )
        assert gaps.min() >= 0.99 * sc.branch_gap

    @pytest.mark.parametrize("params", GASES)
    def test_doubling_damping_preserves_validity(self, params):
        sc = select_constants(params)
        grid = np.linspace(-sc.eta_max, sc.eta_max, 5001)
        fam = approx_eigenvalues(params, sc, grid).real
        doubled = approx_eigenvalues(params, 2.0 * np.array(sc.damping), grid).real
        excess = doubled - _requirements(params, grid)
        assert (excess + sc.decay_rate).max() < 0
        gaps = lambda f: np.minimum(  # noqa: E731
            np.abs(f[0] - f[1]), np.minimum(np.abs(f[0] - f[2]), np.abs(f[1] - f[2]))
        )
        assert gaps(doubled).min() >= 0.999 * gaps(fam).min()

    @pytest.mark.parametrize("params", GASES)
    def test_tail_ordering(self, params):
        sc = select_constants(params)
        ends = approx_eigenvalues(params, sc, np.array([-200.0, 200.0])).real
        assert (ends[0] < 0).all()
        assert (ends[1] < ends[0]).all() and (ends[2] < ends[1]).all()

    def test_custom_target_margin(self):
        sc = select_constants(RESCALED, target_margin=0.5)
        assert sc.margin > 0.5
        assert sc.target_margin == pytest.approx(0.5)

    def test_constants_validated(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            SpectralConstants(
                (2.0, 1.0, 3.0), 0.1, 0.1, 0.1, 0.1, 10.0, 11, (0.0, 0.0, 0.0)
            )
        with pytest.raises(ValueError, match="positive"):
            SpectralConstants(
                (1.0, 2.0, 3.0), -0.1, 0.1, 0.1, 0.1, 10.0, 11, (0.0, 0.0, 0.0)
            )


class TestSpectralGap:
    """Uniform decay rate over frequency annuli."""

    def test_gap_positive(self):
        assert spectral_gap(DEFAULTS, 0.5, 10.0) > 0

    def test_small_inner_radius_tracks_acoustic_damping(self):
        # At the default gas the conjugate pair decays slowest near eta -> 0
        # (11/60 < 2/5), so the annulus rate tracks the pair at |eta| = r.
        assert spectral_gap(DEFAULTS, 0.1, 10.0) == pytest.approx(
            (11.0 / 60.0) * 0.01, rel=0.2
        )
        assert spectral_gap(DEFAULTS, 0.05, 10.0) / 0.0025 == pytest.approx(
            11.0 / 60.0, rel=0.1
        )

    def test_gap_grows_with_inner_radius(self):
        assert spectral_gap(DEFAULTS, 0.5, 10.0) > spectral_gap(DEFAULTS, 0.1, 10.0)

    def test_invalid_annulus_rejected(self):
        with pytest.raises(ValueError, match="0 < r < R"):
            spectral_gap(DEFAULTS, 10.0, 0.5)
        with pytest.raises(ValueError, match="0 < r < R"):
            spectral_gap(DEFAULTS, 0.0, 1.0)


class TestLongwave:
    """Leading transport coefficients of the eta -> 0 branches."""

    def test_default_values(self):
        lw = longwave_params(DEFAULTS)
        assert lw.entropy_diffusivity == pytest.approx(0.4, rel=1e-12)
        assert lw.acoustic_damping == pytest.approx(11.0 / 60.0, rel=1e-12)
        assert lw.sound_speed == pytest.approx(np.sqrt(5.0 / 3.0), rel=1e-12)

    def test_branch_arrays(self):
        lw = longwave_params(DEFAULTS)
        np.testing.assert_allclose(
            lw.diffusivities, [0.4, 11.0 / 60.0, 11.0 / 60.0], rtol=1e-12
        )
        np.testing.assert_allclose(
            lw.wave_speeds, [0.0, -lw.sound_speed, lw.sound_speed], rtol=1e-15
        )

    @given(gas=gas_params())
    def test_entropy_rate_identity(self, gas):
        # For the ideal-gas closure the entropy diffusivity collapses to
        # kappa/(K + c_v) independently of the viscosity.
        lw = longwave_params(gas)
        assert lw.entropy_diffusivity == pytest.approx(
            gas.kappa / (gas.K + gas.c_v), rel=1e-10
        )

    def test_sound_speed_matches_flux_spectrum(self):
        lw = longwave_params(DEFAULTS)
        speeds = np.linalg.eigvals(flux_jacobian(DEFAULTS, base_state(DEFAULTS)))
        assert np.abs(speeds.imag).max() <= 1e-12
        np.testing.assert_allclose(
            np.sort(speeds.real), np.sort(lw.wave_speeds), rtol=0, atol=1e-12
        )

    def test_positive_coefficients_required(self):
        with pytest.raises(ValueError, match="must be positive"):
            LongwaveParams(0.4, -0.1, 1.0)
