"""Spectral projectors of the frequency-side symbol and their expansions.

For each labeled eigenvalue branch, the projector is the adjugate of
(lam*I - E(eta)) divided by the product of eigenvalue gaps.  The three
projectors resolve the identity, are idempotent, and reconstruct the
symbol as sum_j lam_j * M_j.  High- and low-frequency coefficient tables
are closed-form rational functions of the state, generated from the
adjugate series of the characteristic cubic.

Classes:
    ProjectorValue: one branch projector at a single frequency.
    TailProjectorSeries: high-frequency expansion coefficients (5 terms).
    OriginProjectorSeries: low-frequency expansion coefficients (2 terms).
    DegeneracyError: raised when eigenvalue gaps are too small.

Functions:
    projector: single-frequency projector from supplied eigenvalues.
    branch_projectors: vectorized projectors on a grid, labels included.
    family_projectors: vectorized projectors from a supplied eigenvalue family.
    series_inf: high-frequency coefficient table for one branch.
    series_zero: low-frequency coefficient table for one branch.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .spectrum import eigenvalues, symbol_matrix
from .state import GasParams, StateU, flux_jacobian, thermo, viscosity_matrix

GAP_FLOOR = 1e-9


class DegeneracyError(ValueError):
    """Eigenvalues too close for a stable projector."""

    def __init__(self, gap: float):
        super().__init__(
            f"eigenvalue gap {gap:.3e} below {GAP_FLOOR:.0e}; "
            "projector is ill-conditioned"
        )
        self.gap = gap


@dataclass(frozen=True)
class ProjectorValue:
    """One branch projector of the symbol at a single frequency.

    Attributes:
        M: complex (3, 3) projector matrix.
    """

    M: np.ndarray

    def __post_init__(self) -> None:
        if self.M.shape != (3, 3):
            raise ValueError(f"M must have shape (3, 3), got {self.M.shape}")


@dataclass(frozen=True)
class TailProjectorSeries:
    """Coefficients of the high-frequency projector expansion.

    The projector of the branch behaves as
    sum_k i^(k mod 2) * eta^(-k) * terms[k] as |eta| -> infinity.

    Attributes:
        terms: real array of shape (5, 3, 3), orders 0..4.
    """

    terms: np.ndarray

    def __post_init__(self) -> None:
        if self.terms.shape != (5, 3, 3):
            raise ValueError(f"terms must have shape (5, 3, 3), got {self.terms.shape}")

    def evaluate(self, etas: np.ndarray, order: int = 4) -> np.ndarray:
        """Partial sum through eta^(-order); returns shape (n, 3, 3)."""
        if not 0 <= order <= 4:
            raise ValueError(f"order must be in 0..4, got {order}")
        etas = np.atleast_1d(np.asarray(etas))
        if np.abs(etas).min() == 0:
            raise ValueError("expansion is singular at eta = 0")
        out = np.zeros(etas.shape + (3, 3), dtype=complex)
        for k in range(order + 1):
            factor = (1j if k % 2 else 1.0) * etas.astype(complex) ** (-k)
            out += factor[:, None, None] * self.terms[k]
        return out


@dataclass(frozen=True)
class OriginProjectorSeries:
    """Coefficients of the low-frequency projector expansion.

    The projector of the branch behaves as terms[0] + i*eta*terms[1]
    + O(eta^2) as eta -> 0.

    Attributes:
        terms: real array of shape (2, 3, 3), orders 0..1.
    """

    terms: np.ndarray

    def __post_init__(self) -> None:
        if self.terms.shape != (2, 3, 3):
            raise ValueError(f"terms must have shape (2, 3, 3), got {self.terms.shape}")

    def evaluate(self, etas: np.ndarray) -> np.ndarray:
        """First-order expansion; returns shape (n, 3, 3)."""
        etas = np.atleast_1d(np.asarray(etas))
        return self.terms[0] + 1j * etas.astype(complex)[:, None, None] * self.terms[1]


def _adjugate(A: np.ndarray) -> np.ndarray:
    """Adjugate of a batch of 3x3 matrices via the trace identities."""
    tr = np.trace(A, axis1=-2, axis2=-1)
    A2 = A @ A
    tr2 = np.trace(A2, axis1=-2, axis2=-1)
    eye = np.eye(3, dtype=A.dtype)
    return (
        A2
        - tr[..., None, None] * A
        + (0.5 * (tr**2 - tr2))[..., None, None] * eye
    )


def projector(
    params: GasParams,
    state: StateU,
    eta: float,
    lam_j: complex,
    all_lams: np.ndarray,
) -> ProjectorValue:
    """Branch projector at one frequency from supplied eigenvalues.

    Args:
        params: gas constants.
        state: state at which the symbol is linearized.
        eta: frequency (nonzero for distinct eigenvalues).
        lam_j: the branch eigenvalue the projector belongs to.
        all_lams: all three eigenvalues of the symbol at eta.

    Returns:
        ProjectorValue with M = adj(lam_j*I - E(eta)) / prod of gaps.

    Raises:
        DegeneracyError: some pairwise eigenvalue gap is below 1e-9.
    """
    lams = np.asarray(all_lams, dtype=complex).reshape(3)
    gaps = [abs(lams[i] - lams[k]) for i in range(3) for k in range(i + 1, 3)]
    if min(gaps) < GAP_FLOOR:
        raise DegeneracyError(min(gaps))
    j = int(np.argmin(np.abs(lams - lam_j)))
    others = np.delete(lams, j)
    E = -1j * eta * flux_jacobian(params, state) - eta**2 * viscosity_matrix(
        params, state
    )
    A = lam_j * np.eye(3, dtype=complex) - E
    denom = (lam_j - others[0]) * (lam_j - others[1])
    return ProjectorValue(_adjugate(A) / denom)


def branch_projectors(params: GasParams, etas: np.ndarray) -> np.ndarray:
    """All three labeled projectors on a frequency grid, at the base state.

    Args:
        params: gas constants.
        etas: real 1-D grid avoiding eta = 0.

    Returns:
        Complex array of shape (3, n, 3, 3); row j is the projector of
        eigenvalue row j of ``eigenvalues``.

    Raises:
        DegeneracyError: some pairwise eigenvalue gap is below 1e-9.
    """
    etas = np.atleast_1d(np.asarray(etas, dtype=float))
    lam = eigenvalues(params, etas).lam
    worst = np.inf
    for a in range(3):
        for b in range(a + 1, 3):
            worst = min(worst, np.abs(lam[a] - lam[b]).min())
    if worst < GAP_FLOOR:
        raise DegeneracyError(float(worst))
    E = symbol_matrix(params, etas)
    eye = np.eye(3, dtype=complex)
    out = np.empty((3, etas.shape[0], 3, 3), dtype=complex)
    for j in range(3):
        A = lam[j][:, None, None] * eye - E
        k, m = [a for a in range(3) if a != j]
        denom = (lam[j] - lam[k]) * (lam[j] - lam[m])
        out[j] = _adjugate(A) / denom[:, None, None]
    return out


def family_projectors(
    params: GasParams, etas: np.ndarray, lams: np.ndarray
) -> np.ndarray:
    """Projectors built from a supplied eigenvalue family, at the base state.

    Evaluates adj(lam_j*I - E(eta)) / prod_k (lam_j - lam_k) for each row of
    ``lams``; with the exact eigenvalues this reproduces branch_projectors,
    and with an approximate family it yields the smooth surrogate projectors
    whose branch sum is still exactly the identity (a divided-difference
    identity valid for any pairwise-distinct triple).

    Args:
        params: gas constants.
        etas: real 1-D grid, shape (n,).
        lams: family values, shape (3, n); rows must stay pairwise distinct.

    Returns:
        Complex array of shape (3, n, 3, 3).

    Raises:
        DegeneracyError: some pairwise family gap is below 1e-9.
    """
    etas = np.atleast_1d(np.asarray(etas, dtype=float))
    lams = np.asarray(lams, dtype=complex)
    if lams.shape != (3, etas.shape[0]):
        raise ValueError(
            f"lams must have shape (3, {etas.shape[0]}), got {lams.shape}"
        )
    worst = np.inf
    for a in range(3):
        for b in range(a + 1, 3):
            worst = min(worst, np.abs(lams[a] - lams[b]).min())
    if worst < GAP_FLOOR:
        raise DegeneracyError(float(worst))
    E = symbol_matrix(params, etas)
    eye = np.eye(3, dtype=complex)
    out = np.empty((3, etas.shape[0], 3, 3), dtype=complex)
    for j in range(3):
        A = lams[j][:, None, None] * eye - E
        k, m = [a for a in range(3) if a != j]
        denom = (lams[j] - lams[k]) * (lams[j] - lams[m])
        out[j] = _adjugate(A) / denom[:, None, None]
    return out


def _tail_terms(params: GasParams, state: StateU) -> list[np.ndarray]:
    """The fifteen high-frequency coefficient matrices (3 branches x 5)."""
    t = thermo(params, state)
    v, u = state.v, state.u
    p, p_v, p_e, theta = t.p, t.p_v, t.p_e, t.theta_e
    mu, kappa = params.mu, params.kappa
    return [
        np.array(
            [[1, 0, 0],
             [0, 0, 0],
             [0, 0, 0]]
        ),
        np.array(
            [[0, v/mu, 0],
             [-p_v*v/mu, 0, 0],
             [-p_v*u*v/mu, 0, 0]]
        ),
        np.array(
            [[-p_v*v**2/mu**2, -p_e*u*v**2/(kappa*mu*theta), p_e*v**2/(kappa*mu*theta)],
             [0, p_v*v**2/mu**2, 0],
             [-p*p_v*v**2/(kappa*mu*theta), p_v*u*v**2/mu**2, 0]]
        ),
        np.array(
            [[0, v**3*(-2*kappa*p_v*theta - mu*p*p_e)/(kappa*mu**3*theta), 0],
             [p_v*v**3*(2*kappa*p_v*theta + mu*p*p_e)/(kappa*mu**3*theta), p_e*p_v*u*v**3/(kappa*mu**2*theta), -p_e*p_v*v**3/(kappa*mu**2*theta)],
             [p_v*u*v**3*(2*kappa*p_v*theta + mu*p*p_e)/(kappa*mu**3*theta), p_v*v**3*(-p + p_e*u**2)/(kappa*mu**2*theta), -p_e*p_v*u*v**3/(kappa*mu**2*theta)]]
        ),
        np.array(
            [[p_v*v**4*(3*kappa**2*p_v*theta**2 + 2*kappa*mu*p*p_e*theta + mu**2*p*p_e)/(kappa**2*mu**4*theta**2), p_e*u*v**4*(2*kappa*p_v*theta + mu*p*p_e + mu*p_v)/(kappa**2*mu**3*theta**2), p_e*v**4*(-2*kappa*p_v*theta - mu*p*p_e - mu*p_v)/(kappa**2*mu**3*theta**2)],
             [0, p_v*v**4*(-3*kappa*p_v*theta - 2*mu*p*p_e)/(kappa*mu**4*theta), 0],
             [p*p_v*v**4*(2*kappa*p_v*theta + mu*p*p_e + mu*p_v)/(kappa**2*mu**3*theta**2), p_v*u*v**4*(-3*kappa**2*p_v*theta**2 - 2*kappa*mu*p*p_e*theta + mu**2*p*p_e)/(kappa**2*mu**4*theta**2), -p*p_e*p_v*v**4/(kappa**2*mu**2*theta**2)]]
        ),
        np.array(
            [[0, 0, 0],
             [0, 1, 0],
             [0, u, 0]]
        ),
        np.array(
            [[0, -v/mu, 0],
             [p_v*v/mu, p_e*u*v/(kappa*theta - mu), -p_e*v/(kappa*theta - mu)],
             [p_v*u*v/mu, v*(-p + p_e*u**2)/(kappa*theta - mu), -p_e*u*v/(kappa*theta - mu)]]
        ),
        np.array(
            [[p_v*v**2/mu**2, p_e*u*v**2/(mu*(kappa*theta - mu)), -p_e*v**2/(mu*(kappa*theta - mu))],
             [0, v**2*(-kappa**2*p_v*theta**2 + 2*kappa*mu*p_v*theta + mu**2*p*p_e - mu**2*p_v)/(mu**2*(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)), 0],
             [p*p_v*v**2/(mu*(kappa*theta - mu)), u*v**2*(-kappa**2*p_v*theta**2 + 2*kappa*mu*p_v*theta + 2*mu**2*p*p_e - mu**2*p_v)/(mu**2*(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)), -p*p_e*v**2/(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)]]
        ),
        np.array(
            [[0, v**3*(2*kappa**2*p_v*theta**2 + kappa*mu*p*p_e*theta - 4*kappa*mu*p_v*theta - 2*mu**2*p*p_e + 2*mu**2*p_v)/(mu**3*(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)), 0],
             [p_v*v**3*(-2*kappa**2*p_v*theta**2 - kappa*mu*p*p_e*theta + 4*kappa*mu*p_v*theta + 2*mu**2*p*p_e - 2*mu**2*p_v)/(mu**3*(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)), p_e*u*v**3*(-kappa**2*p_v*theta**2 + 3*kappa*mu*p_v*theta + 2*mu**2*p*p_e - 2*mu**2*p_v)/(mu**2*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3)), p_e*v**3*(kappa**2*p_v*theta**2 - 3*kappa*mu*p_v*theta - 2*mu**2*p*p_e + 2*mu**2*p_v)/(mu**2*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3))],
             [p_v*u*v**3*(-2*kappa**2*p_v*theta**2 - kappa*mu*p*p_e*theta + 4*kappa*mu*p_v*theta + 2*mu**2*p*p_e - 2*mu**2*p_v)/(mu**3*(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)), v**3*(kappa**2*p*p_v*theta**2 - kappa**2*p_e*p_v*theta**2*u**2 - 3*kappa*mu*p*p_v*theta + 3*kappa*mu*p_e*p_v*theta*u**2 - 2*mu**2*p**2*p_e + 2*mu**2*p*p_e**2*u**2 + 2*mu**2*p*p_v - 2*mu**2*p_e*p_v*u**2)/(mu**2*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3)), p_e*u*v**3*(kappa**2*p_v*theta**2 - 3*kappa*mu*p_v*theta - 2*mu**2*p*p_e + 2*mu**2*p_v)/(mu**2*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3))]]
        ),
        np.array(
            [[p_v*v**4*(-3*kappa**2*p_v*theta**2 - 2*kappa*mu*p*p_e*theta + 6*kappa*mu*p_v*theta + 3*mu**2*p*p_e - 3*mu**2*p_v)/(mu**4*(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)), p_e*u*v**4*(-2*kappa**2*p_v*theta**2 - kappa*mu*p*p_e*theta + 5*kappa*mu*p_v*theta + 3*mu**2*p*p_e - 3*mu**2*p_v)/(mu**3*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3)), p_e*v**4*(2*kappa**2*p_v*theta**2 + kappa*mu*p*p_e*theta - 5*kappa*mu*p_v*theta - 3*mu**2*p*p_e + 3*mu**2*p_v)/(mu**3*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3))],
             [0, v**4*(3*kappa**4*p_v**2*theta**4 + 2*kappa**3*mu*p*p_e*p_v*theta**3 - 12*kappa**3*mu*p_v**2*theta**3 - 8*kappa**2*mu**2*p*p_e*p_v*theta**2 + 18*kappa**2*mu**2*p_v**2*theta**2 + 12*kappa*mu**3*p*p_e*p_v*theta - 12*kappa*mu**3*p_v**2*theta + 3*mu**4*p**2*p_e**2 - 6*mu**4*p*p_e*p_v + 3*mu**4*p_v**2)/(mu**4*(kappa**4*theta**4 - 4*kappa**3*mu*theta**3 + 6*kappa**2*mu**2*theta**2 - 4*kappa*mu**3*theta + mu**4)), 0],
             [p*p_v*v**4*(-2*kappa**2*p_v*theta**2 - kappa*mu*p*p_e*theta + 5*kappa*mu*p_v*theta + 3*mu**2*p*p_e - 3*mu**2*p_v)/(mu**3*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3)), u*v**4*(3*kappa**4*p_v**2*theta**4 + 2*kappa**3*mu*p*p_e*p_v*theta**3 - 12*kappa**3*mu*p_v**2*theta**3 - 9*kappa**2*mu**2*p*p_e*p_v*theta**2 + 18*kappa**2*mu**2*p_v**2*theta**2 + 16*kappa*mu**3*p*p_e*p_v*theta - 12*kappa*mu**3*p_v**2*theta + 6*mu**4*p**2*p_e**2 - 9*mu**4*p*p_e*p_v + 3*mu**4*p_v**2)/(mu**4*(kappa**4*theta**4 - 4*kappa**3*mu*theta**3 + 6*kappa**2*mu**2*theta**2 - 4*kappa*mu**3*theta + mu**4)), p*p_e*v**4*(kappa**2*p_v*theta**2 - 4*kappa*mu*p_v*theta - 3*mu**2*p*p_e + 3*mu**2*p_v)/(mu**2*(kappa**4*theta**4 - 4*kappa**3*mu*theta**3 + 6*kappa**2*mu**2*theta**2 - 4*kappa*mu**3*theta + mu**4))]]
        ),
        np.array(
            [[0, 0, 0],
             [0, 0, 0],
             [0, -u, 1]]
        ),
        np.array(
            [[0, 0, 0],
             [0, -p_e*u*v/(kappa*theta - mu), p_e*v/(kappa*theta - mu)],
             [0, v*(p - p_e*u**2)/(kappa*theta - mu), p_e*u*v/(kappa*theta - mu)]]
        ),
        np.array(
            [[0, -p_e*u*v**2/(kappa*theta*(kappa*theta - mu)), p_e*v**2/(kappa*theta*(kappa*theta - mu))],
             [0, -p*p_e*v**2/(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2), 0],
             [-p*p_v*v**2/(kappa*theta*(kappa*theta - mu)), -2*p*p_e*u*v**2/(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2), p*p_e*v**2/(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)]]
        ),
        np.array(
            [[0, p*p_e*v**3/(kappa*theta*(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)), 0],
             [-p*p_e*p_v*v**3/(kappa*theta*(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)), p_e*u*v**3*(-2*kappa*p*p_e*theta - kappa*p_v*theta + mu*p_v)/(kappa*theta*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3)), p_e*v**3*(2*kappa*p*p_e*theta + kappa*p_v*theta - mu*p_v)/(kappa*theta*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3))],
             [-p*p_e*p_v*u*v**3/(kappa*theta*(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)), v**3*(2*kappa*p**2*p_e*theta - 2*kappa*p*p_e**2*theta*u**2 + kappa*p*p_v*theta - kappa*p_e*p_v*theta*u**2 - mu*p*p_v + mu*p_e*p_v*u**2)/(kappa*theta*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3)), p_e*u*v**3*(2*kappa*p*p_e*theta + kappa*p_v*theta - mu*p_v)/(kappa*theta*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3))]]
        ),
        np.array(
            [[-p*p_e*p_v*v**4/(kappa**2*theta**2*(kappa**2*theta**2 - 2*kappa*mu*theta + mu**2)), p_e*u*v**4*(-3*kappa*p*p_e*theta - kappa*p_v*theta + mu*p*p_e + mu*p_v)/(kappa**2*theta**2*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3)), p_e*v**4*(3*kappa*p*p_e*theta + kappa*p_v*theta - mu*p*p_e - mu*p_v)/(kappa**2*theta**2*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3))],
             [0, p*p_e*v**4*(-3*kappa*p*p_e*theta - 2*kappa*p_v*theta + 2*mu*p_v)/(kappa*theta*(kappa**4*theta**4 - 4*kappa**3*mu*theta**3 + 6*kappa**2*mu**2*theta**2 - 4*kappa*mu**3*theta + mu**4)), 0],
             [p*p_v*v**4*(-3*kappa*p*p_e*theta - kappa*p_v*theta + mu*p*p_e + mu*p_v)/(kappa**2*theta**2*(kappa**3*theta**3 - 3*kappa**2*mu*theta**2 + 3*kappa*mu**2*theta - mu**3)), p*p_e*u*v**4*(-6*kappa**2*p*p_e*theta**2 - 5*kappa**2*p_v*theta**2 + 6*kappa*mu*p_v*theta - mu**2*p_v)/(kappa**2*theta**2*(kappa**4*theta**4 - 4*kappa**3*mu*theta**3 + 6*kappa**2*mu**2*theta**2 - 4*kappa*mu**3*theta + mu**4)), p*p_e*v**4*(3*kappa**2*p*p_e*theta**2 + 3*kappa**2*p_v*theta**2 - 4*kappa*mu*p_v*theta + mu**2*p_v)/(kappa**2*theta**2*(kappa**4*theta**4 - 4*kappa**3*mu*theta**3 + 6*kappa**2*mu**2*theta**2 - 4*kappa*mu**3*theta + mu**4))]]
        ),
    ]


def _origin_terms(params: GasParams, state: StateU) -> list[np.ndarray]:
    """The six low-frequency coefficient matrices (3 branches x 2)."""
    t = thermo(params, state)
    v, u = state.v, state.u
    p, p_v, p_e, theta = t.p, t.p_v, t.p_e, t.theta_e
    mu, kappa = params.mu, params.kappa
    return [
        np.array(
            [[p*p_e/(p*p_e - p_v), -p_e*u/(p*p_e - p_v), p_e/(p*p_e - p_v)],
             [0, 0, 0],
             [-p*p_v/(p*p_e - p_v), p_v*u/(p*p_e - p_v), -p_v/(p*p_e - p_v)]]
        ),
        np.array(
            [[0, kappa*p*p_e*theta/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), 0],
             [-kappa*p*p_e*p_v*theta/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), kappa*p_e*p_v*theta*u/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), -kappa*p_e*p_v*theta/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2))],
             [-kappa*p*p_e*p_v*theta*u/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), kappa*p_v*theta*(-p + p_e*u**2)/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), -kappa*p_e*p_v*theta*u/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2))]]
        ),
        np.array(
            [[-1/2*p_v/(p*p_e - p_v), (1/2)*(p_e*u - sqrt(p*p_e - p_v))/(p*p_e - p_v), -1/2*p_e/(p*p_e - p_v)],
             [(1/2)*p_v/sqrt(p*p_e - p_v), (1/2)*(-p_e*u + sqrt(p*p_e - p_v))/sqrt(p*p_e - p_v), (1/2)*p_e/sqrt(p*p_e - p_v)],
             [(1/2)*p_v*(p + u*sqrt(p*p_e - p_v))/(p*p_e - p_v), (1/2)*(p*sqrt(p*p_e - p_v) - p_e*u**2*sqrt(p*p_e - p_v) - p_v*u)/(p*p_e - p_v), (1/2)*p_e*(p + u*sqrt(p*p_e - p_v))/(p*p_e - p_v)]]
        ),
        np.array(
            [[(1/4)*p_v*(-3*kappa*p*p_e*theta - mu*p*p_e + mu*p_v)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/4)*p_e*(kappa*p*p_e*theta*u - 2*kappa*p*theta*sqrt(p*p_e - p_v) + 2*kappa*p_v*theta*u + mu*p*p_e*u - mu*p_v*u)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/4)*p_e*(-kappa*p*p_e*theta - 2*kappa*p_v*theta - mu*p*p_e + mu*p_v)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2))],
             [(1/2)*kappa*p*p_e*p_v*theta/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/4)*(kappa*p*p_e*theta*sqrt(p*p_e - p_v) - 2*kappa*p_e*p_v*theta*u - mu*p*p_e*sqrt(p*p_e - p_v) + mu*p_v*sqrt(p*p_e - p_v))/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/2)*kappa*p_e*p_v*theta/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2))],
             [(1/4)*p*p_v*(kappa*p*p_e*theta + 2*kappa*p_e*theta*u*sqrt(p*p_e - p_v) + 2*kappa*p_v*theta + mu*p*p_e - mu*p_v)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/4)*(2*kappa*p**2*p_e**2*theta*u - 5*kappa*p*p_e*p_v*theta*u + 2*kappa*p*p_v*theta*sqrt(p*p_e - p_v) - 2*kappa*p_e*p_v*theta*u**2*sqrt(p*p_e - p_v) - 2*mu*p**2*p_e**2*u + 3*mu*p*p_e*p_v*u - mu*p_v**2*u)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/4)*p_e*(-kappa*p**2*p_e*theta + 4*kappa*p*p_v*theta + 2*kappa*p_v*theta*u*sqrt(p*p_e - p_v) + mu*p**2*p_e - mu*p*p_v)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2))]]
        ),
        np.array(
            [[-1/2*p_v/(p*p_e - p_v), (1/2)*(p_e*u + sqrt(p*p_e - p_v))/(p*p_e - p_v), -1/2*p_e/(p*p_e - p_v)],
             [-1/2*p_v/sqrt(p*p_e - p_v), (1/2)*(p_e*u + sqrt(p*p_e - p_v))/sqrt(p*p_e - p_v), -1/2*p_e/sqrt(p*p_e - p_v)],
             [(1/2)*p_v*(p - u*sqrt(p*p_e - p_v))/(p*p_e - p_v), (1/2)*(-p*sqrt(p*p_e - p_v) + p_e*u**2*sqrt(p*p_e - p_v) - p_v*u)/(p*p_e - p_v), (1/2)*p_e*(p - u*sqrt(p*p_e - p_v))/(p*p_e - p_v)]]
        ),
        np.array(
            [[(1/4)*p_v*(3*kappa*p*p_e*theta + mu*p*p_e - mu*p_v)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/4)*p_e*(-kappa*p*p_e*theta*u - 2*kappa*p*theta*sqrt(p*p_e - p_v) - 2*kappa*p_v*theta*u - mu*p*p_e*u + mu*p_v*u)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/4)*p_e*(kappa*p*p_e*theta + 2*kappa*p_v*theta + mu*p*p_e - mu*p_v)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2))],
             [(1/2)*kappa*p*p_e*p_v*theta/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/4)*(-kappa*p*p_e*theta*sqrt(p*p_e - p_v) - 2*kappa*p_e*p_v*theta*u + mu*p*p_e*sqrt(p*p_e - p_v) - mu*p_v*sqrt(p*p_e - p_v))/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/2)*kappa*p_e*p_v*theta/(v*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2))],
             [(1/4)*p*p_v*(-kappa*p*p_e*theta + 2*kappa*p_e*theta*u*sqrt(p*p_e - p_v) - 2*kappa*p_v*theta - mu*p*p_e + mu*p_v)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/4)*(-2*kappa*p**2*p_e**2*theta*u + 5*kappa*p*p_e*p_v*theta*u + 2*kappa*p*p_v*theta*sqrt(p*p_e - p_v) - 2*kappa*p_e*p_v*theta*u**2*sqrt(p*p_e - p_v) + 2*mu*p**2*p_e**2*u - 3*mu*p*p_e*p_v*u + mu*p_v**2*u)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2)), (1/4)*p_e*(kappa*p**2*p_e*theta - 4*kappa*p*p_v*theta + 2*kappa*p_v*theta*u*sqrt(p*p_e - p_v) - mu*p**2*p_e + mu*p*p_v)/(v*sqrt(p*p_e - p_v)*(p**2*p_e**2 - 2*p*p_e*p_v + p_v**2))]]
        ),
    ]


def series_inf(params: GasParams, state: StateU, branch: int) -> TailProjectorSeries:
    """High-frequency projector expansion for one branch.

    Args:
        params: gas constants.
        state: state at which the symbol is linearized.
        branch: 1-based branch index; branch b pairs with eigenvalue row b-1.

    Returns:
        TailProjectorSeries with coefficient orders 0..4.
    """
    if branch not in (1, 2, 3):
        raise ValueError(f"branch must be 1, 2 or 3, got {branch}")
    tables = _tail_terms(params, state)
    return TailProjectorSeries(np.stack(tables[5 * (branch - 1) : 5 * branch]))


def series_zero(params: GasParams, state: StateU, branch: int) -> OriginProjectorSeries:
    """Low-frequency projector expansion for one branch.

    Args:
        params: gas constants.
        state: state at which the symbol is linearized.
        branch: 1-based branch index; branch b pairs with eigenvalue row b-1.

    Returns:
        OriginProjectorSeries with coefficient orders 0..1.
    """
    if branch not in (1, 2, 3):
        raise ValueError(f"branch must be 1, 2 or 3, got {branch}")
    tables = _origin_terms(params, state)
    return OriginProjectorSeries(np.stack(tables[2 * (branch - 1) : 2 * branch]))
