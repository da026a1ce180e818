"""Eigenvalue branches of the frequency symbol of the linearized system.

Linearizing at the constant base state turns the system into an ODE in time
for each spatial frequency eta, governed by the 3x3 symbol
E(eta) = -i*eta*F' - eta^2*B.  Its three eigenvalue branches organize every
kernel estimate downstream: near eta = 0 a real entropy branch and a
conjugate acoustic pair; as |eta| -> infinity one bounded branch and two
diffusion parabolas.  This module computes the exact branches with stable
labels, their truncated expansions at both ends, a smooth approximate
branch family interpolating the tail data across all frequencies, and the
damping constants that family needs.

Classes:
    CubicCoeffs: coefficients of the characteristic cubic at each frequency.
    EigenTriple: labeled eigenvalue branches on a frequency grid.
    TailCoeffs: closed-form coefficients of the approximate branch family.
    SpectralConstants: damping constants selected for the approximate family.
    LongwaveParams: leading transport coefficients of the eta -> 0 branches.

Functions:
    symbol_matrix: the symbol E(eta) as a stacked array.
    char_poly: characteristic-cubic coefficients of det(lam*I - E(eta)).
    eigenvalues: exact labeled branches with near-collision reporting.
    expand_inf / expand_zero: truncated branch expansions at either end.
    approx_coeffs: evaluate the TailCoeffs for a gas.
    approx_eigenvalues: evaluate the approximate branch family.
    select_constants: choose the damping constants and achieved rates.
    spectral_gap: decay rate of the exact spectrum on a frequency annulus.
    longwave_params: entropy/acoustic diffusivities and the sound speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy import sqrt

from .state import GasParams, base_state, flux_jacobian, thermo, viscosity_matrix

ORIGIN_ZONE = 0.5  # |eta| at or below: small-frequency expansions are valid
TAIL_ZONE = 5.0    # |eta| at or above: large-frequency expansions are valid

_PERMS = np.array(
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
)


def _base_thermo(params: GasParams) -> tuple[float, float, float, float, float]:
    """(v, p, p_v, p_e, theta_e) at the linearization state."""
    st = base_state(params)
    t = thermo(params, st)
    return st.v, t.p, t.p_v, t.p_e, t.theta_e


def _tail_laurent(v, p, p_v, p_e, th, mu, kap):
    """Laurent data of the symbol eigenvalues as |eta| -> infinity.

    Each branch expands as lam = lead*s + c0 + c1/s + c2/s**2 + c3/s**3
    + O(s**-4) in s = eta**2.  Returns (leads, coeffs) with leads of
    shape (3,) and coeffs of shape (3, 4); rows follow the branch order
    (bounded, momentum-diffusion, heat-diffusion).  Closed forms come
    from a series solution of the characteristic cubic.
    """
    leads = np.array([0.0, -mu / v, -kap * th / v])
    c10 = p_v*v/mu
    c11 = -p_v*v**3*(kap*p_v*th + mu*p*p_e)/(kap*mu**3*th)
    c12 = p_v*v**5*(2*kap**2*p_v**2*th**2 + 3*kap*mu*p*p_e*p_v*th + mu**2*p**2*p_e**2
          + mu**2*p*p_e*p_v)/(kap**2*mu**5*th**2)
    c13 = -p_v*v**7*(5*kap**3*p_v**3*th**3 + 10*kap**2*mu*p*p_e*p_v**2*th**2
          + 6*kap*mu**2*p**2*p_e**2*p_v*th + 4*kap*mu**2*p*p_e*p_v**2*th
          + mu**3*p**3*p_e**3 + 3*mu**3*p**2*p_e**2*p_v
          + mu**3*p*p_e*p_v**2)/(kap**3*mu**7*th**3)
    c20 = -v*(kap*p_v*th + mu*p*p_e - mu*p_v)/(mu*(kap*th - mu))
    c21 = -v**3*(kap*p_v*th + mu*p*p_e - mu*p_v)*(-kap**2*p_v*th**2 + 2*kap*mu*p_v*th
          + mu**2*p*p_e - mu**2*p_v)/(mu**3*(kap*th - mu)**3)
    c22 = -v**5*(kap*p_v*th + mu*p*p_e - mu*p_v)*(2*kap**4*p_v**2*th**4
          + kap**3*mu*p*p_e*p_v*th**3 - 8*kap**3*mu*p_v**2*th**3
          - 5*kap**2*mu**2*p*p_e*p_v*th**2 + 12*kap**2*mu**2*p_v**2*th**2
          + 8*kap*mu**3*p*p_e*p_v*th - 8*kap*mu**3*p_v**2*th + 2*mu**4*p**2*p_e**2
          - 4*mu**4*p*p_e*p_v + 2*mu**4*p_v**2)/(mu**5*(kap*th - mu)**5)
    c23 = -v**7*(kap*p_v*th + mu*p*p_e - mu*p_v)*(-5*kap**6*p_v**3*th**6
          - 5*kap**5*mu*p*p_e*p_v**2*th**5 + 30*kap**5*mu*p_v**3*th**5
          - kap**4*mu**2*p**2*p_e**2*p_v*th**4 + 31*kap**4*mu**2*p*p_e*p_v**2*th**4
          - 75*kap**4*mu**2*p_v**3*th**4 + 7*kap**3*mu**3*p**2*p_e**2*p_v*th**3
          - 77*kap**3*mu**3*p*p_e*p_v**2*th**3 + 100*kap**3*mu**3*p_v**3*th**3
          - 21*kap**2*mu**4*p**2*p_e**2*p_v*th**2 + 96*kap**2*mu**4*p*p_e*p_v**2*th**2
          - 75*kap**2*mu**4*p_v**3*th**2 + 30*kap*mu**5*p**2*p_e**2*p_v*th
          - 60*kap*mu**5*p*p_e*p_v**2*th + 30*kap*mu**5*p_v**3*th + 5*mu**6*p**3*p_e**3
          - 15*mu**6*p**2*p_e**2*p_v + 15*mu**6*p*p_e*p_v**2
          - 5*mu**6*p_v**3)/(mu**7*(kap*th - mu)**7)
    c30 = p*p_e*v/(kap*th - mu)
    c31 = p*p_e*v**3*(kap*p*p_e*th + kap*p_v*th - mu*p_v)/(kap*th*(kap*th - mu)**3)
    c32 = p*p_e*v**5*(2*kap**2*p**2*p_e**2*th**2 + 4*kap**2*p*p_e*p_v*th**2
          + kap**2*p_v**2*th**2 - 5*kap*mu*p*p_e*p_v*th - 2*kap*mu*p_v**2*th
          + mu**2*p*p_e*p_v + mu**2*p_v**2)/(kap**2*th**2*(kap*th - mu)**5)
    c33 = p*p_e*v**7*(5*kap**3*p**3*p_e**3*th**3 + 15*kap**3*p**2*p_e**2*p_v*th**3
          + 9*kap**3*p*p_e*p_v**2*th**3 + kap**3*p_v**3*th**3
          - 21*kap**2*mu*p**2*p_e**2*p_v*th**2 - 21*kap**2*mu*p*p_e*p_v**2*th**2
          - 3*kap**2*mu*p_v**3*th**2 + 7*kap*mu**2*p**2*p_e**2*p_v*th
          + 15*kap*mu**2*p*p_e*p_v**2*th + 3*kap*mu**2*p_v**3*th
          - mu**3*p**2*p_e**2*p_v - 3*mu**3*p*p_e*p_v**2
          - mu**3*p_v**3)/(kap**3*th**3*(kap*th - mu)**7)
    coeffs = np.array([
        [c10, c11, c12, c13],
        [c20, c21, c22, c23],
        [c30, c31, c32, c33],
    ])
    return leads, coeffs


def _origin_taylor(v, p, p_v, p_e, th, mu, kap):
    """Taylor data of the symbol eigenvalues at eta = 0.

    Each branch expands as lam = lead*eta + sum_{k=2..6} d_k*eta**k
    + O(eta**7).  Returns (leads, coeffs) with complex coeffs of shape
    (3, 5) holding d_2..d_6; the acoustic rows are conjugates.
    """
    c_s = sqrt(p * p_e - p_v)
    leads = np.array([0.0, -1j * c_s, 1j * c_s])
    d12 = kap*p_v*th/(v*(p*p_e - p_v))
    d13 = 0
    d14 = -kap**2*p*p_e*p_v*th**2*(kap*p_v*th + mu*p*p_e
          - mu*p_v)/(v**3*(p*p_e - p_v)**4)
    d15 = 0
    d16 = kap**3*p*p_e*p_v*th**3*(kap*p_v*th + mu*p*p_e - mu*p_v)*(2*kap*p*p_e*p_v*th
          + kap*p_v**2*th + mu*p**2*p_e**2 - mu*p_v**2)/(v**5*(p*p_e - p_v)**7)
    d22 = -1/2*(kap*p*p_e*th + mu*p*p_e - mu*p_v)/(v*(p*p_e - p_v))
    d23 = (1/8)*1j*(kap**2*p**2*p_e**2*th**2 - 4*kap**2*p*p_e*p_v*th**2
          - 2*kap*mu*p**2*p_e**2*th + 2*kap*mu*p*p_e*p_v*th + mu**2*p**2*p_e**2
          - 2*mu**2*p*p_e*p_v + mu**2*p_v**2)/(v**2*(p*p_e - p_v)**(5/2))
    d24 = (1/2)*kap**2*p*p_e*p_v*th**2*(kap*p_v*th + mu*p*p_e
          - mu*p_v)/(v**3*(p*p_e - p_v)**4)
    d25 = (1/128)*1j*(kap**4*p**4*p_e**4*th**4 - 8*kap**4*p**3*p_e**3*p_v*th**4
          + 48*kap**4*p**2*p_e**2*p_v**2*th**4 + 64*kap**4*p*p_e*p_v**3*th**4
          - 4*kap**3*mu*p**4*p_e**4*th**3 + 52*kap**3*mu*p**3*p_e**3*p_v*th**3
          + 48*kap**3*mu*p**2*p_e**2*p_v**2*th**3 - 96*kap**3*mu*p*p_e*p_v**3*th**3
          + 6*kap**2*mu**2*p**4*p_e**4*th**2 + 12*kap**2*mu**2*p**3*p_e**3*p_v*th**2
          - 42*kap**2*mu**2*p**2*p_e**2*p_v**2*th**2
          + 24*kap**2*mu**2*p*p_e*p_v**3*th**2 - 4*kap*mu**3*p**4*p_e**4*th
          + 12*kap*mu**3*p**3*p_e**3*p_v*th - 12*kap*mu**3*p**2*p_e**2*p_v**2*th
          + 4*kap*mu**3*p*p_e*p_v**3*th + mu**4*p**4*p_e**4 - 4*mu**4*p**3*p_e**3*p_v
          + 6*mu**4*p**2*p_e**2*p_v**2 - 4*mu**4*p*p_e*p_v**3
          + mu**4*p_v**4)/(v**4*(p*p_e - p_v)**(11/2))
    d26 = -1/2*kap**3*p*p_e*p_v*th**3*(kap*p_v*th + mu*p*p_e
          - mu*p_v)*(2*kap*p*p_e*p_v*th + kap*p_v**2*th + mu*p**2*p_e**2
          - mu*p_v**2)/(v**5*(p*p_e - p_v)**7)
    row1 = np.array([d12, d13, d14, d15, d16], complex)
    row2 = np.array([d22, d23, d24, d25, d26], complex)
    coeffs = np.stack([row1, row2, np.conj(row2)])
    return leads, coeffs


@dataclass(frozen=True)
class CubicCoeffs:
    """Coefficients of det(lam*I - E(eta)) = lam^3 + c2*lam^2 + c1*lam + c0.

    All three coefficients are real and even in eta; arrays share the shape
    of the frequency grid they were evaluated on.
    """

    c2: np.ndarray
    c1: np.ndarray
    c0: np.ndarray

    def __post_init__(self) -> None:
        if not (self.c2.shape == self.c1.shape == self.c0.shape):
            raise ValueError("coefficient arrays must share one shape")

    def evaluate(self, lam: np.ndarray) -> np.ndarray:
        """The cubic at lam, broadcasting over the coefficient grid."""
        return ((lam + self.c2) * lam + self.c1) * lam + self.c0


@dataclass(frozen=True)
class EigenTriple:
    """Labeled eigenvalue branches on a frequency grid.

    Below the pair-collision frequency, row 0 is the real branch and
    rows 1/2 the conjugate pair (Im < 0 first for eta > 0); above it,
    row 0 is the branch that stays bounded as |eta| -> infinity and
    rows 1/2 follow the momentum and heat diffusion parabolas.  The two
    conventions cannot be joined continuously -- the real branch continues
    into the heat parabola while the pair splits into the bounded and
    momentum branches -- so labels reassign at the collision.

    Attributes:
        etas: the frequency grid, shape (n,).
        lam: branch values, shape (3, n).
        near_collisions: indices into etas where two branches approach
            within the collision tolerance (labels there are best-effort).
    """

    etas: np.ndarray
    lam: np.ndarray
    near_collisions: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.lam.shape != (3, self.etas.shape[0]):
            raise ValueError(
                f"lam must have shape (3, {self.etas.shape[0]}), got {self.lam.shape}"
            )


@dataclass(frozen=True)
class TailCoeffs:
    """Coefficients of the approximate branch family.

    The family offset_j - diffusivity_j*eta^2
    + sum_k correction[j,k-1]*w^k - damping_j*w^4 in w = 1/(1+eta^2)
    reproduces each exact branch to O(|eta|^-8) once the Laurent tail is
    re-expanded in w; the damping constants come from select_constants.
    """

    offset: np.ndarray
    diffusivity: np.ndarray
    correction: np.ndarray

    def __post_init__(self) -> None:
        if self.offset.shape != (3,) or self.diffusivity.shape != (3,):
            raise ValueError("offset and diffusivity must have shape (3,)")
        if self.correction.shape != (3, 3):
            raise ValueError(
                f"correction must have shape (3, 3), got {self.correction.shape}"
            )


@dataclass(frozen=True)
class SpectralConstants:
    """Damping constants of the approximate family and its achieved rates.

    Attributes:
        damping: per-branch damping constants, strictly increasing.
        decay_rate: uniform temporal decay rate of the family.
        branch_gap: minimum pairwise branch separation over the scan.
        margin: smallest scan excess beyond the per-branch requirement.
        target_margin: decay margin the selection aimed for.
        eta_max / n_points: the symmetric scan grid the scan ran on.
        lam_origin: family values at eta = 0, for reporting.
    """

    damping: tuple[float, float, float]
    decay_rate: float
    branch_gap: float
    margin: float
    target_margin: float
    eta_max: float
    n_points: int
    lam_origin: tuple[float, float, float]

    def __post_init__(self) -> None:
        if not (self.damping[0] < self.damping[1] < self.damping[2]):
            raise ValueError(
                f"damping must be strictly increasing, got {self.damping}"
            )
        if not (self.decay_rate > 0 and self.branch_gap > 0):
            raise ValueError("achieved rates must be positive")


@dataclass(frozen=True)
class LongwaveParams:
    """Leading transport coefficients of the eta -> 0 branches.

    Attributes:
        entropy_diffusivity: decay rate / eta^2 of the real branch.
        acoustic_damping: decay rate / eta^2 of the conjugate pair.
        sound_speed: |phase speed| of the conjugate pair.
    """

    entropy_diffusivity: float
    acoustic_damping: float
    sound_speed: float

    def __post_init__(self) -> None:
        for name in ("entropy_diffusivity", "acoustic_damping", "sound_speed"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @property
    def diffusivities(self) -> np.ndarray:
        """Decay rate / eta^2 for each labeled branch."""
        return np.array(
            [self.entropy_diffusivity, self.acoustic_damping, self.acoustic_damping]
        )

    @property
    def wave_speeds(self) -> np.ndarray:
        """Imaginary slope per branch in lam ~ i*speed*eta at eta -> 0."""
        return np.array([0.0, -self.sound_speed, self.sound_speed])


def symbol_matrix(params: GasParams, etas: np.ndarray) -> np.ndarray:
    """The symbol E(eta) = -i*eta*F' - eta^2*B at the base state.

    Args:
        params: gas constants.
        etas: frequency grid, shape (n,).

    Returns:
        Complex array of shape (n, 3, 3).
    """
    etas = np.atleast_1d(np.asarray(etas, dtype=float))
    st = base_state(params)
    F = flux_jacobian(params, st)
    B = viscosity_matrix(params, st)
    return (-1j * etas[:, None, None] * F[None]
            - (etas**2)[:, None, None] * B[None])


def char_poly(params: GasParams, etas: np.ndarray) -> CubicCoeffs:
    """Characteristic-cubic coefficients of the symbol on a frequency grid.

    In s = eta^2 the cubic det(lam*I - E(eta)) has real coefficients
    c2 = s*(kappa*theta_e + mu)/v, c1 = kappa*mu*theta_e*s^2/v^2
    + (p*p_e - p_v)*s and c0 = -kappa*theta_e*p_v*s^2/v, so the spectrum
    is a real branch plus a conjugate pair or three real branches.
    """
    v, p, p_v, p_e, th = _base_thermo(params)
    mu, kap = params.mu, params.kappa
    s = np.atleast_1d(np.asarray(etas, dtype=float)) ** 2
    c2 = s * (kap * th + mu) / v
    c1 = kap * mu * th * s**2 / v**2 + (p * p_e - p_v) * s
    c0 = -kap * th * p_v * s**2 / v
    return CubicCoeffs(c2=c2, c1=c1, c0=c0)


def _polish_roots(cubic: CubicCoeffs, lam: np.ndarray, steps: int = 2) -> np.ndarray:
    """Newton-refine eigenvalue estimates on the characteristic cubic."""
    c2 = cubic.c2[:, None]
    c1 = cubic.c1[:, None]
    for _ in range(steps):
        val = cubic.evaluate(lam.T).T
        der = (3.0 * lam + 2.0 * c2) * lam + c1
        safe = np.abs(der) > 1e-300
        lam = np.where(safe, lam - val / np.where(safe, der, 1.0), lam)
    return lam


def _match_rows(ref: np.ndarray, vals: np.ndarray) -> np.ndarray:
    """Reorder each row of vals (n, 3) to sit closest to ref (n, 3)."""
    cost = np.abs(vals[:, _PERMS] - ref[:, None, :]).sum(axis=2)
    pick = cost.argmin(axis=1)
    return np.take_along_axis(vals, _PERMS[pick], axis=1)


def _residual_scale(cubic: CubicCoeffs, lam: np.ndarray) -> np.ndarray:
    """Backward-error scale of the cubic at lam (n, 3).

    The largest term magnitude in the Horner evaluation; a computed root
    cannot evaluate below roughly eps times this, so residual bounds must
    be read relative to it.
    """
    a = np.abs(lam)
    scale = np.maximum(1.0, a**3)
    scale = np.maximum(scale, np.abs(cubic.c2)[:, None] * a**2)
    scale = np.maximum(scale, np.abs(cubic.c1)[:, None] * a)
    return np.maximum(scale, np.abs(cubic.c0)[:, None])


_CORRIDOR_STEP = 0.005


def _discriminant(cubic: CubicCoeffs) -> np.ndarray:
    """Discriminant of the monic cubic; positive iff three distinct real roots."""
    a, b, c = cubic.c2, cubic.c1, cubic.c0
    return (
        18.0 * a * b * c - 4.0 * a**3 * c + a**2 * b**2 - 4.0 * b**3 - 27.0 * c**2
    )


@lru_cache(maxsize=8)
def _collision_eta(params: GasParams) -> float:
    """Frequency above which all three branches are real.

    Near eta = 0 the acoustic pair is complex (negative discriminant); for
    large eta the three diffusion-dominated roots are real.  Bisects the
    last sign change of the discriminant on a geometric scan.
    """
    hi = 10.0
    while _discriminant(char_poly(params, np.array([hi])))[0] <= 0:
        hi *= 2.0
        if hi > 1e8:
            raise RuntimeError("no real-root regime found below eta = 1e8")
    grid = np.geomspace(1e-3, hi, 4000)
    disc = _discriminant(char_poly(params, grid))
    flips = np.nonzero((disc[:-1] <= 0) & (disc[1:] > 0))[0]
    lo, hi = (grid[flips[-1]], grid[flips[-1] + 1]) if flips.size else (1e-3, hi)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _discriminant(char_poly(params, np.array([mid])))[0] > 0:
            hi = mid
        else:
            lo = mid
    return hi


@lru_cache(maxsize=8)
def _corridor_path(params: GasParams) -> tuple[np.ndarray, np.ndarray]:
    """Labeled branch values on a fine grid from the safe tail down to eta_c.

    Marching nearest-neighbor continuation from the tail anchors carries
    the large-frequency labels down to the pair-collision frequency, where
    the Laurent anchors themselves are not yet trustworthy.
    """
    eta_c = _collision_eta(params)
    start = max(2.0 * eta_c, TAIL_ZONE)
    grid = np.arange(start, eta_c - 1e-12, -_CORRIDOR_STEP)
    raw = np.linalg.eigvals(symbol_matrix(params, grid))
    raw = _polish_roots(char_poly(params, grid), raw)
    v, p, p_v, p_e, th = _base_thermo(params)
    leads, c = _tail_laurent(v, p, p_v, p_e, th, params.mu, params.kappa)
    ref = leads * grid[0] ** 2 + c[:, 0]
    out = np.empty_like(raw)
    for i in range(grid.shape[0]):
        out[i] = _match_rows(ref[None, :], raw[i][None, :])[0]
        ref = out[i]
    return grid, out


def eigenvalues(
    params: GasParams, etas: np.ndarray, collision_tol: float = 1e-6
) -> EigenTriple:
    """Exact eigenvalue branches of the symbol with stable labels.

    Below the pair-collision frequency the labels are algebraic (real
    root, then the pair by sign of the imaginary part); beyond twice that
    frequency the Laurent tail anchors order the three real roots; the
    corridor in between is labeled by nearest-neighbor continuation along
    a cached fine path marching down from the anchored side.  Negative
    frequencies are filled by conjugation.

    Args:
        params: gas constants.
        etas: frequency grid, shape (n,), any sign.
        collision_tol: pairwise gap below which a point is reported in
            EigenTriple.near_collisions.

    Returns:
        EigenTriple with lam of shape (3, n).
    """
    etas = np.atleast_1d(np.asarray(etas, dtype=float))
    if etas.ndim != 1:
        raise ValueError(f"etas must be 1-D, got shape {etas.shape}")
    aet = np.abs(etas)
    cubic = char_poly(params, aet)
    raw = np.linalg.eigvals(symbol_matrix(params, aet))
    raw = _polish_roots(cubic, raw)
    residual = np.abs(cubic.evaluate(raw.T).T)
    bad = residual > 1e-8 * _residual_scale(cubic, raw)
    if bad.any():
        where = etas[bad.any(axis=1)][:5]
        raise FloatingPointError(
            f"root polish did not converge near eta in {where}"
        )

    lam = np.empty_like(raw)
    eta_c = _collision_eta(params)

    pmask = aet < eta_c
    if pmask.any():
        sub = raw[pmask]
        order = np.argsort(np.abs(sub.imag), axis=1, kind="stable")
        picked = np.take_along_axis(sub, order, axis=1)
        pair = picked[:, 1:]
        swap = pair[:, 0].imag > pair[:, 1].imag
        pair[swap] = pair[swap][:, ::-1]
        lam[pmask] = np.concatenate([picked[:, :1], pair], axis=1)

    tmask = aet >= max(2.0 * eta_c, TAIL_ZONE)
    if tmask.any():
        v, p, p_v, p_e, th = _base_thermo(params)
        leads, c = _tail_laurent(v, p, p_v, p_e, th, params.mu, params.kappa)
        s = aet[tmask, None] ** 2
        lam[tmask] = _match_rows(leads[None, :] * s + c[None, :, 0], raw[tmask])

    cmask = ~(pmask | tmask)
    if cmask.any():
        grid, path = _corridor_path(params)
        idx = np.clip(
            np.rint((grid[0] - aet[cmask]) / _CORRIDOR_STEP).astype(int),
            0,
            grid.shape[0] - 1,
        )
        lam[cmask] = _match_rows(path[idx], raw[cmask])

    gaps = np.min(
        np.stack(
            [
                np.abs(lam[:, 0] - lam[:, 1]),
                np.abs(lam[:, 0] - lam[:, 2]),
                np.abs(lam[:, 1] - lam[:, 2]),
            ]
        ),
        axis=0,
    )
    near = tuple(int(i) for i in np.nonzero(gaps < collision_tol)[0])

    neg = etas < 0
    lam[neg] = np.conj(lam[neg])
    return EigenTriple(etas=etas, lam=lam.T, near_collisions=near)


def expand_inf(params: GasParams, etas: np.ndarray, order: int = 3) -> np.ndarray:
    """Truncated large-frequency expansion of the branches.

    Order m keeps the Laurent tail through eta^(-2m): branch values are
    lead*eta^2 + c0 + c1/eta^2 + ... + cm/eta^(2m).

    Args:
        params: gas constants.
        etas: frequency grid with min |eta| >= TAIL_ZONE.
        order: number of inverse powers kept, 0 <= order <= 3.

    Returns:
        Real array of shape (3, n).
    """
    etas = np.atleast_1d(np.asarray(etas, dtype=float))
    if not 0 <= order <= 3:
        raise ValueError(f"order must be in 0..3, got {order}")
    if np.abs(etas).min() < TAIL_ZONE:
        raise ValueError(f"expansion needs |eta| >= {TAIL_ZONE}")
    v, p, p_v, p_e, th = _base_thermo(params)
    leads, c = _tail_laurent(v, p, p_v, p_e, th, params.mu, params.kappa)
    s = etas[None, :] ** 2
    out = leads[:, None] * s + c[:, 0, None]
    for k in range(1, order + 1):
        out = out + c[:, k, None] / s**k
    return out


def expand_zero(params: GasParams, etas: np.ndarray, order: int = 6) -> np.ndarray:
    """Truncated small-frequency expansion of the branches.

    Order m keeps powers of eta through eta^m: branch values are
    lead*eta + d2*eta^2 + ... + dm*eta^m (the real branch has lead 0).

    Args:
        params: gas constants.
        etas: frequency grid with max |eta| <= ORIGIN_ZONE.
        order: highest power kept, 1 <= order <= 6.

    Returns:
        Complex array of shape (3, n).
    """
    etas = np.atleast_1d(np.asarray(etas, dtype=float))
    if not 1 <= order <= 6:
        raise ValueError(f"order must be in 1..6, got {order}")
    if np.abs(etas).max() > ORIGIN_ZONE:
        raise ValueError(f"expansion needs |eta| <= {ORIGIN_ZONE}")
    v, p, p_v, p_e, th = _base_thermo(params)
    leads, d = _origin_taylor(v, p, p_v, p_e, th, params.mu, params.kappa)
    out = leads[:, None] * etas[None, :].astype(complex)
    for k in range(2, order + 1):
        out = out + d[:, k - 2, None] * etas[None, :] ** k
    return out


def approx_coeffs(params: GasParams) -> TailCoeffs:
    """Closed-form coefficients of the approximate branch family.

    Re-expanding the Laurent tail in w = 1/(1+eta^2) via 1/s = w + w^2
    + w^3 + O(w^4), 1/s^2 = w^2 + 2w^3 + O(w^4), 1/s^3 = w^3 + O(w^4)
    gives correction[j] = (c1, c1+c2, c1+2c2+c3) alongside
    offset_j = c0 and diffusivity_j = -lead_j.
    """
    v, p, p_v, p_e, th = _base_thermo(params)
    leads, c = _tail_laurent(v, p, p_v, p_e, th, params.mu, params.kappa)
    correction = np.column_stack(
        [c[:, 1], c[:, 1] + c[:, 2], c[:, 1] + 2 * c[:, 2] + c[:, 3]]
    )
    return TailCoeffs(offset=c[:, 0], diffusivity=-leads, correction=correction)


def approx_eigenvalues(
    params: GasParams, damping: np.ndarray, etas: np.ndarray
) -> np.ndarray:
    """Evaluate the approximate branch family for given damping constants.

    Args:
        params: gas constants.
        damping: per-branch damping constants, shape (3,); a
            SpectralConstants is accepted and contributes its damping.
        etas: frequency grid, any sign; complex values are allowed and the
            family extends to them as a rational function of eta^2.

    Returns:
        Array of shape (3, n), real for real etas; the family is even.
    """
    damping = np.asarray(getattr(damping, "damping", damping), dtype=float)
    if damping.shape != (3,):
        raise ValueError(f"damping must have shape (3,), got {damping.shape}")
    etas = np.atleast_1d(np.asarray(etas))
    if not np.iscomplexobj(etas):
        etas = etas.astype(float)
    tc = approx_coeffs(params)
    w = 1.0 / (1.0 + etas**2)
    out = tc.offset[:, None] - tc.diffusivity[:, None] * etas[None, :] ** 2
    for k in range(3):
        out = out + tc.correction[:, k, None] * w ** (k + 1)
    return out - damping[:, None] * w**4


def _family_requirements(params: GasParams, etas: np.ndarray) -> np.ndarray:
    """Per-branch scan requirement levels: lam_j* must sit at or below them."""
    v = base_state(params).v
    th = 1.0 / params.c_v
    para2 = -params.mu * (1.0 + etas**2) / (2.0 * v)
    para3 = -params.kappa * th * (1.0 + etas**2) / (2.0 * v)
    return np.stack([np.zeros_like(etas), para2, para3])


def select_constants(
    params: GasParams,
    target_margin: float | None = None,
    eta_max: float = 200.0,
    n_points: int = 4001,
    headroom: float = 1.03,
    gap_floor: float = 0.05,
    damping_floor: float = 0.5,
) -> SpectralConstants:
    """Choose damping constants for the approximate family by scanning.

    Each damping constant is set from the scan maximum of the violation of
    its branch requirements (negativity with a target_margin margin,
    half-parabola dominance for the diffusion branches, ordering below the
    previous branch by gap_floor), scaled by headroom.  When a need-based
    value does not exceed the previous constant it is doubled up from it.
    A final verification scan re-checks every requirement and falls back
    to doubling the failing constants, at most 20 times.

    Args:
        params: gas constants.
        target_margin: decay margin to aim for; default
            max(0.1, 0.6*|v*p_v|/mu), tracking the slowest branch.
        eta_max / n_points: symmetric scan grid on [-eta_max, eta_max].
        headroom: safety factor on need-based constants.
        gap_floor: minimum pairwise branch separation enforced on the scan.
        damping_floor: smallest admissible first constant, keeps the
            family non-degenerate.

    Returns:
        SpectralConstants; decay_rate is 0.99 times the achieved margin.

    Raises:
        RuntimeError: if 20 doublings cannot satisfy the scan.
    """
    v, p, p_v, p_e, th = _base_thermo(params)
    if target_margin is None:
        target_margin = max(0.1, 0.6 * abs(v * p_v) / params.mu)
    etas = np.linspace(-eta_max, eta_max, n_points)
    w = 1.0 / (1.0 + etas**2)
    base = approx_eigenvalues(params, np.zeros(3), etas)
    req = _family_requirements(params, etas)

    need1 = (base[0] + target_margin) / w**4
    damp1 = (
        max(damping_floor, headroom * need1.max())
        if need1.max() > 0
        else damping_floor
    )
    l1 = base[0] - damp1 * w**4
    need2 = np.maximum(
        base[1] - req[1] + target_margin, base[1] - (l1 - gap_floor)
    ) / w**4
    damp2 = headroom * need2.max() if need2.max() > 0 else 0.0
    if damp2 <= damp1:
        damp2 = 2.0 * damp1
    l2 = base[1] - damp2 * w**4
    need3 = np.maximum(
        base[2] - req[2] + target_margin, base[2] - (l2 - gap_floor)
    ) / w**4
    damp3 = headroom * need3.max() if need3.max() > 0 else 0.0
    if damp3 <= damp2:
        damp3 = 2.0 * damp2
    damp = np.array([damp1, damp2, damp3])

    for _ in range(21):
        lam = base - damp[:, None] * w**4
        excess = (lam - req).max(axis=1)          # decay beyond requirement
        gap12 = (lam[0] - lam[1]).min()
        gap23 = (lam[1] - lam[2]).min()
        fails = np.array(
            [
                excess[0] >= -target_margin,
                excess[1] >= -target_margin or gap12 <= gap_floor,
                excess[2] >= -target_margin or gap23 <= gap_floor,
            ]
        )
        if not fails.any():
            break
        damp = np.where(fails, 2.0 * damp, damp)
    else:
        raise RuntimeError(
            "select_constants: scan still failing after 20 doublings; "
            "gas parameters outside the supported regime"
        )

    margin = float(-excess.max())
    return SpectralConstants(
        damping=(float(damp[0]), float(damp[1]), float(damp[2])),
        decay_rate=0.99 * margin,
        branch_gap=float(min(gap12, gap23)),
        margin=margin,
        target_margin=float(target_margin),
        eta_max=eta_max,
        n_points=n_points,
        lam_origin=tuple(float(x) for x in (base[:, n_points // 2] - damp)),
    )


def spectral_gap(
    params: GasParams, r: float, R: float, n_points: int = 2001
) -> float:
    """Decay rate of the exact spectrum on the annulus r <= |eta| <= R.

    Returns b = -max Re lam over all branches and frequencies in the
    annulus; b > 0 since the symbol is strictly stable away from eta = 0.
    """
    if not 0 < r < R:
        raise ValueError(f"need 0 < r < R, got r={r}, R={R}")
    grid = np.geomspace(r, R, n_points)
    trip = eigenvalues(params, grid)
    worst = trip.lam.real.max()
    if not worst < 0:
        j, i = np.unravel_index(trip.lam.real.argmax(), trip.lam.shape)
        raise AssertionError(
            f"no spectral gap: Re lam = {worst} on branch {j} at eta = {grid[i]}"
        )
    return float(-worst)


def longwave_params(params: GasParams) -> LongwaveParams:
    """Leading transport coefficients of the eta -> 0 branches."""
    v, p, p_v, p_e, th = _base_thermo(params)
    leads, d = _origin_taylor(v, p, p_v, p_e, th, params.mu, params.kappa)
    return LongwaveParams(
        entropy_diffusivity=float(-d[0, 0].real),
        acoustic_damping=float(-d[1, 0].real),
        sound_speed=float(leads[2].imag),
    )
