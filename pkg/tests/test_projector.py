"""Tests for the spectral projectors and their frequency expansions.

Hand-arithmetic oracles, default gas at the unit base state (p = 1,
p_v = -1, p_e = theta_e = 2/3, p*p_e - p_v = 5/3): the entropy-branch
low-frequency leading entry is p*p_e/(p*p_e - p_v) = (2/3)/(5/3) = 0.4,
and the high-frequency leading tables are the coordinate projectors
diag(1,0,0), e2*e2^T, e3*e3^T at zero base velocity.  The coefficient
extraction oracle integrates the projector over the complex circle
|eta| = 64, which encloses every branch-collision point (largest modulus
~19.45 for the default gas, ~0.76 for the rescaled one), so trapezoidal
Fourier sums recover each Laurent coefficient with aliasing error below
(19.45/64)^64.  Tail sums use i^(k mod 2) * eta^(-k) weights and origin
sums 1 + i*eta weights, with purely real coefficient tables.
"""

import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linear_sum_assignment

from green1d.projector import (
    DegeneracyError,
    OriginProjectorSeries,
    ProjectorValue,
    TailProjectorSeries,
    branch_projectors,
    projector,
    series_inf,
    series_zero,
)
from green1d.spectrum import _collision_eta, approx_eigenvalues, eigenvalues, symbol_matrix
from green1d.state import (
    GasParams,
    StateU,
    base_state,
    flux_jacobian,
    thermo,
    viscosity_matrix,
)

DEFAULTS = GasParams()
RESCALED = GasParams(mu=3.0, kappa=7.0)
GASES = [pytest.param(DEFAULTS, id="defaults"), pytest.param(RESCALED, id="rescaled")]
MOVING = StateU(v=1.2, u=0.35, E=1.9)


def signed_etas() -> st.SearchStrategy[float]:
    return st.builds(
        lambda mag, sign: sign * mag,
        mag=st.floats(1e-3, 1e3),
        sign=st.sampled_from([-1.0, 1.0]),
    )


def _symbol_at(params: GasParams, state: StateU, eta: complex) -> np.ndarray:
    # Dense symbol at an arbitrary state/frequency, bypassing the grid API.
    F = flux_jacobian(params, state)
    B = viscosity_matrix(params, state)
    return -1j * eta * F - eta**2 * B


def _labeled_eigs(params: GasParams, state: StateU, eta: complex) -> np.ndarray:
    # Label a dense eigensolve by nearest tail anchor: the bounded branch
    # sits near v*p_v/mu, the parabolic ones near -mu*eta^2/v and
    # -kappa*theta_e*eta^2/v.  Valid once |eta| clears every collision.
    t = thermo(params, state)
    lams = np.linalg.eigvals(_symbol_at(params, state, eta))
    anchors = np.array(
        [
            t.p_v * state.v / params.mu + 0j,
            -params.mu * eta**2 / state.v,
            -params.kappa * t.theta_e * eta**2 / state.v,
        ]
    )
    rows, cols = linear_sum_assignment(np.abs(lams[None, :] - anchors[:, None]))
    return lams[cols[np.argsort(rows)]]


def _contour_coeffs(
    params: GasParams, state: StateU, branch: int, radius: float = 64.0, n: int = 64
) -> np.ndarray:
    # Laurent coefficients of the branch projector via trapezoidal Fourier
    # sums on |eta| = radius; returns the five tables with the i^(k mod 2)
    # weights stripped, so a correct transcription leaves them purely real.
    thetas = 2.0 * np.pi * np.arange(n) / n
    vals = np.empty((n, 3, 3), dtype=complex)
    for i, th in enumerate(thetas):
        eta = radius * np.exp(1j * th)
        lams = _labeled_eigs(params, state, eta)
        vals[i] = projector(params, state, eta, lams[branch - 1], lams).M
    coef = np.empty((5, 3, 3), dtype=complex)
    for k in range(5):
        raw = radius**k * (vals * np.exp(1j * k * thetas)[:, None, None]).mean(axis=0)
        coef[k] = raw / (1j if k % 2 else 1.0)
    return coef


def _eig_projectors(params: GasParams, eta: float) -> np.ndarray:
    # Diagonalization oracle: right/left eigenvector dyads of the symbol,
    # matched to the labeled branches by eigenvalue proximity.
    E = symbol_matrix(params, np.array([eta]))[0]
    lam_ref = eigenvalues(params, np.array([eta])).lam[:, 0]
    w, V = np.linalg.eig(E)
    W = np.linalg.inv(V)
    out = np.empty((3, 3, 3), dtype=complex)
    for j in range(3):
        i = int(np.argmin(np.abs(w - lam_ref[j])))
        out[j] = np.outer(V[:, i], W[i]) / (W[i] @ V[:, i])
    return out


class TestProjectorValue:
    def test_shape_validation(self):
        with pytest.raises(ValueError, match="M must have shape"):
            ProjectorValue(np.eye(2, dtype=complex))

    def test_series_shape_validation(self):
        with pytest.raises(ValueError, match=r"terms must have shape \(5, 3, 3\)"):
            TailProjectorSeries(np.zeros((4, 3, 3)))
        with pytest.raises(ValueError, match=r"terms must have shape \(2, 3, 3\)"):
            OriginProjectorSeries(np.zeros((3, 3)))


class TestProjector:
    @settings(max_examples=120, deadline=None)
    @given(eta=signed_etas())
    def test_resolution_of_identity(self, eta):
        M = branch_projectors(DEFAULTS, np.array([eta]))
        assert np.abs(M.sum(axis=0)[0] - np.eye(3)).max() <= 1e-10

    @settings(max_examples=80, deadline=None)
    @given(eta=signed_etas())
    def test_symbol_reconstruction(self, eta):
        etas = np.array([eta])
        lam = eigenvalues(DEFAULTS, etas).lam
        M = branch_projectors(DEFAULTS, etas)
        E = symbol_matrix(DEFAULTS, etas)[0]
        rebuilt = (lam[:, 0, None, None] * M[:, 0]).sum(axis=0)
        assert np.abs(rebuilt - E).max() <= 1e-9 * max(1.0, np.abs(E).max())

    @pytest.mark.parametrize("params", GASES)
    @pytest.mark.parametrize("eta", [0.3, 1.0, 10.0])
    def test_matches_diagonalization_oracle(self, params, eta):
        M = branch_projectors(params, np.array([eta]))[:, 0]
        ref = _eig_projectors(params, eta)
        assert np.abs(M - ref).max() <= 1e-8

    @pytest.mark.parametrize("eta", [0.3, 1.0, 10.0])
    def test_idempotent(self, eta):
        M = branch_projectors(DEFAULTS, np.array([eta]))[:, 0]
        for j in range(3):
            assert np.abs(M[j] @ M[j] - M[j]).max() <= 1e-8

    def test_orthogonality_where_gaps_open(self):
        etas = np.concatenate([-np.geomspace(1e-3, 1e3, 40), np.geomspace(1e-3, 1e3, 40)])
        lam = eigenvalues(DEFAULTS, etas).lam
        M = branch_projectors(DEFAULTS, etas)
        gap = np.minimum(
            np.abs(lam[0] - lam[1]),
            np.minimum(np.abs(lam[0] - lam[2]), np.abs(lam[1] - lam[2])),
        )
        open_gap = gap > 1e-3
        assert open_gap.any()
        for j in range(3):
            for k in range(3):
                if j != k:
                    prod = M[j][open_gap] @ M[k][open_gap]
                    assert np.abs(prod).max() <= 1e-8

    def test_unit_traces(self):
        M = branch_projectors(DEFAULTS, np.geomspace(1e-3, 1e3, 25))
        traces = np.trace(M, axis1=-2, axis2=-1)
        assert np.abs(traces - 1.0).max() <= 1e-10

    def test_single_point_matches_grid(self):
        etas = np.array([0.7, 5.0])
        lam = eigenvalues(DEFAULTS, etas).lam
        grid = branch_projectors(DEFAULTS, etas)
        state = base_state(DEFAULTS)
        for j in range(3):
            for i in range(2):
                one = projector(DEFAULTS, state, etas[i], lam[j, i], lam[:, i])
                assert np.abs(one.M - grid[j, i]).max() <= 1e-12

    def test_moving_state(self):
        # Full check away from the zero-velocity base state: eigensolve the
        # dense symbol, then demand identity, idempotence and reconstruction.
        eta = 2.4
        E = _symbol_at(RESCALED, MOVING, eta)
        lams = np.linalg.eigvals(E)
        Ms = [projector(RESCALED, MOVING, eta, lam, lams).M for lam in lams]
        assert np.abs(sum(Ms) - np.eye(3)).max() <= 1e-12
        for lam, M in zip(lams, Ms):
            assert np.abs(M @ M - M).max() <= 1e-12
        rebuilt = sum(lam * M for lam, M in zip(lams, Ms))
        assert np.abs(rebuilt - E).max() <= 1e-9 * np.abs(E).max()

    def test_degenerate_refusal_at_origin(self):
        state = base_state(DEFAULTS)
        with pytest.raises(DegeneracyError) as exc:
            projector(DEFAULTS, state, 0.0, 0.0, np.zeros(3, dtype=complex))
        assert exc.value.gap == 0.0

    def test_degenerate_refusal_reports_gap(self):
        state = base_state(DEFAULTS)
        lams = np.array([1.0, 1.0 + 1e-10j, 2.0], dtype=complex)
        with pytest.raises(DegeneracyError) as exc:
            projector(DEFAULTS, state, 1.0, lams[2], lams)
        assert exc.value.gap == pytest.approx(1e-10)

    def test_grid_containing_origin_refused(self):
        with pytest.raises(DegeneracyError):
            branch_projectors(DEFAULTS, np.array([-1.0, 0.0, 1.0]))


class TestBranchProjectors:
    def test_shape(self):
        M = branch_projectors(DEFAULTS, np.array([0.5, 1.0, 2.0]))
        assert M.shape == (3, 3, 3, 3)

    @pytest.mark.parametrize("params", GASES)
    def test_negative_frequency_conjugation(self, params):
        etas = np.array([0.04, 0.9, 17.0, 300.0])
        plus = branch_projectors(params, etas)
        minus = branch_projectors(params, -etas)
        assert np.array_equal(minus, np.conj(plus))

    @pytest.mark.parametrize("params", GASES)
    def test_stable_next_to_collision(self, params):
        # Individual projectors grow like one over the eigenvalue gap, yet
        # the identity survives to near round-off beside the collision.
        ec = _collision_eta(params)
        etas = ec + np.array([-1e-3, -1e-5, 1e-5, 1e-3])
        M = branch_projectors(params, etas)
        assert np.abs(M).max() > 10.0
        assert np.abs(M.sum(axis=0) - np.eye(3)).max() <= 1e-10


class TestSeriesInf:
    def test_leading_tables_are_coordinate_projectors(self):
        state = base_state(DEFAULTS)
        lead1 = series_inf(DEFAULTS, state, 1).terms[0]
        lead2 = series_inf(DEFAULTS, state, 2).terms[0]
        lead3 = series_inf(DEFAULTS, state, 3).terms[0]
        assert np.array_equal(lead1, np.diag([1.0, 0.0, 0.0]))
        assert np.array_equal(lead2, np.diag([0.0, 1.0, 0.0]))
        assert np.array_equal(lead3, np.diag([0.0, 0.0, 1.0]))

    @pytest.mark.parametrize("state", [base_state(RESCALED), MOVING], ids=["rest", "moving"])
    def test_tables_resolve_identity_order_by_order(self, state):
        # Summed over branches the k = 0 tables give the identity and every
        # higher order cancels, at rest and at nonzero base velocity alike.
        terms = sum(series_inf(RESCALED, state, b).terms for b in (1, 2, 3))
        scale = max(
            np.abs(series_inf(RESCALED, state, b).terms).max() for b in (1, 2, 3)
        )
        assert np.abs(terms[0] - np.eye(3)).max() <= 1e-12
        assert np.abs(terms[1:]).max() <= 1e-12 * scale

    @pytest.mark.parametrize(
        ("params", "state"),
        [
            pytest.param(DEFAULTS, base_state(DEFAULTS), id="defaults"),
            pytest.param(RESCALED, base_state(RESCALED), id="rescaled"),
            pytest.param(RESCALED, MOVING, id="moving"),
        ],
    )
    @pytest.mark.parametrize("branch", [1, 2, 3])
    def test_tables_match_extracted_coefficients(self, params, state, branch):
        got = _contour_coeffs(params, state, branch)
        want = series_inf(params, state, branch).terms
        for k in range(5):
            scale = np.abs(want[k]).max()
            assert np.abs(got[k].imag).max() <= 1e-6 * scale
            nonzero = np.abs(want[k]) > 0
            err = np.abs(got[k].real - want[k])
            assert (err[nonzero] <= 1e-6 * np.abs(want[k])[nonzero]).all()
            assert (err[~nonzero] <= 1e-6 * scale).all()

    @pytest.mark.parametrize("order", [0, 1, 2, 3, 4])
    def test_partial_sum_truncation_order(self, order):
        # Remainder after the eta^(-k) term must scale like eta^(-(k+1));
        # reference projectors use the tail-approximate eigenvalue family.
        state = base_state(DEFAULTS)
        errs = []
        for eta in (40.0, 80.0):
            etas = np.array([eta])
            lam = approx_eigenvalues(DEFAULTS, np.zeros(3), etas)[:, 0]
            err = 0.0
            for b in (1, 2, 3):
                ref = projector(DEFAULTS, state, eta, lam[b - 1], lam).M
                part = series_inf(DEFAULTS, state, b).evaluate(etas, order=order)[0]
                err = max(err, np.abs(ref - part).max())
            errs.append(err)
        rate = np.log2(errs[0] / errs[1])
        assert rate == pytest.approx(order + 1, abs=0.3)

    def test_evaluate_against_grid_far_out(self):
        etas = np.array([300.0, -450.0])
        exact = branch_projectors(DEFAULTS, etas)
        state = base_state(DEFAULTS)
        for b in (1, 2, 3):
            approx = series_inf(DEFAULTS, state, b).evaluate(etas)
            assert np.abs(approx - exact[b - 1]).max() <= 1e-6

    def test_evaluate_validation(self):
        series = series_inf(DEFAULTS, base_state(DEFAULTS), 1)
        with pytest.raises(ValueError, match="order must be in 0..4"):
            series.evaluate(np.array([10.0]), order=5)
        with pytest.raises(ValueError, match="singular at eta = 0"):
            series.evaluate(np.array([10.0, 0.0]))

    def test_branch_validation(self):
        with pytest.raises(ValueError, match="branch must be 1, 2 or 3"):
            series_inf(DEFAULTS, base_state(DEFAULTS), 0)


class TestSeriesZero:
    def test_entropy_leading_entry(self):
        # p*p_e/(p*p_e - p_v) = (2/3)/(5/3) at the default unit state.
        table = series_zero(DEFAULTS, base_state(DEFAULTS), 1).terms[0]
        assert table[0, 0] == pytest.approx(0.4, rel=1e-12)

    @pytest.mark.parametrize("state", [base_state(RESCALED), MOVING], ids=["rest", "moving"])
    def test_tables_resolve_identity_order_by_order(self, state):
        terms = sum(series_zero(RESCALED, state, b).terms for b in (1, 2, 3))
        scale = max(
            np.abs(series_zero(RESCALED, state, b).terms).max() for b in (1, 2, 3)
        )
        assert np.abs(terms[0] - np.eye(3)).max() <= 1e-10
        assert np.abs(terms[1]).max() <= 1e-12 * scale

    @pytest.mark.parametrize("params", GASES)
    def test_first_order_accuracy_small_eta(self, params):
        etas = np.array([1e-3, -1e-3])
        exact = branch_projectors(params, etas)
        state = base_state(params)
        for b in (1, 2, 3):
            approx = series_zero(params, state, b).evaluate(etas)
            assert np.abs(approx - exact[b - 1]).max() <= 1e-5

    @pytest.mark.parametrize("branch", [1, 2, 3])
    def test_remainder_is_second_order(self, branch):
        state = base_state(DEFAULTS)
        series = series_zero(DEFAULTS, state, branch)
        errs = []
        for eta in (1e-2, 5e-3):
            etas = np.array([eta])
            exact = branch_projectors(DEFAULTS, etas)[branch - 1, 0]
            errs.append(np.abs(series.evaluate(etas)[0] - exact).max())
        rate = np.log2(errs[0] / errs[1])
        assert rate == pytest.approx(2.0, abs=0.3)

    def test_branch_validation(self):
        with pytest.raises(ValueError, match="branch must be 1, 2 or 3"):
            series_zero(DEFAULTS, base_state(DEFAULTS), 4)
