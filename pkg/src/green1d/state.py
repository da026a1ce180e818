"""Constitutive relations and linearization matrices for the 1-D viscous gas.

The gas is polytropic and ideal: pressure p = K*theta/v, internal energy
e = c_v*theta, written in Lagrangian coordinates with specific volume v,
velocity u and total energy E = e + u^2/2.

Classes:
    GasParams: physical constants (K, c_v, mu, kappa).
    StatePrim: primitive state (v, u, theta).
    StateU: conserved state (v, u, E).
    ThermoDerivs: pressure/energy partial derivatives at a state.

Functions:
    thermo: evaluate ThermoDerivs at a conserved state.
    flux_jacobian: 3x3 Jacobian of the flux (-u, p, p*u).
    viscosity_matrix: 3x3 degenerate viscosity matrix.
    conserved_from_primitive / primitive_from_conserved: conversions.
    base_state: the constant state used for linearization.
    load_gas_params: read GasParams from a key=value config file.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GasParams:
    """Physical constants of the polytropic ideal gas.

    Attributes:
        K: pressure constant in p = K*theta/v.
        c_v: heat capacity at constant volume.
        mu: viscosity.
        kappa: heat conductivity.
    """

    K: float = 1.0
    c_v: float = 1.5
    mu: float = 0.1
    kappa: float = 1.0

    def __post_init__(self) -> None:
        for name in ("K", "c_v", "mu", "kappa"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        # Prandtl condition: keeps mu - kappa*theta_e nonzero in the expansions.
        if not self.mu * self.c_v / self.kappa < 1:
            raise ValueError(
                f"Prandtl condition mu*c_v/kappa < 1 violated: "
                f"{self.mu * self.c_v / self.kappa}"
            )


@dataclass(frozen=True)
class StatePrim:
    """Primitive state (specific volume, velocity, temperature)."""

    v: float
    u: float
    theta: float

    def __post_init__(self) -> None:
        if not self.v > 0:
            raise ValueError(f"v must be positive, got {self.v}")
        if not self.theta > 0:
            raise ValueError(f"theta must be positive, got {self.theta}")


@dataclass(frozen=True)
class StateU:
    """Conserved state (specific volume, velocity, total energy)."""

    v: float
    u: float
    E: float

    def __post_init__(self) -> None:
        if not self.v > 0:
            raise ValueError(f"v must be positive, got {self.v}")
        if not self.E - 0.5 * self.u**2 > 0:
            raise ValueError(
                f"internal energy E - u^2/2 must be positive, got "
                f"{self.E - 0.5 * self.u**2}"
            )


@dataclass(frozen=True)
class ThermoDerivs:
    """Partial derivatives of p(v, e) and e(E, u) at a state.

    Attributes:
        p: pressure.
        p_v: dp/dv at fixed internal energy (negative).
        p_e: dp/de at fixed volume (positive).
        theta_e: dtheta/de = 1/c_v.
        e_u: de/du at fixed E, equal to -u.
        e_E: de/dE, equal to 1.
    """

    p: float
    p_v: float
    p_e: float
    theta_e: float
    e_u: float
    e_E: float


def thermo(params: GasParams, state: StateU) -> ThermoDerivs:
    """Evaluate pressure and its partial derivatives at a conserved state.

    Args:
        params: gas constants.
        state: conserved state (v, u, E).

    Returns:
        ThermoDerivs with p = K*(E - u^2/2)/(c_v*v), p_v = -p/v,
        p_e = K/(c_v*v), theta_e = 1/c_v, e_u = -u, e_E = 1.
    """
    e = state.E - 0.5 * state.u**2
    p = params.K * e / (params.c_v * state.v)
    return ThermoDerivs(
        p=p,
        p_v=-p / state.v,
        p_e=params.K / (params.c_v * state.v),
        theta_e=1.0 / params.c_v,
        e_u=-state.u,
        e_E=1.0,
    )


def flux_jacobian(params: GasParams, state: StateU) -> np.ndarray:
    """Jacobian F'(U) of the flux F(U) = (-u, p, p*u) in conserved variables."""
    t = thermo(params, state)
    u = state.u
    return np.array(
        [
            [0.0, -1.0, 0.0],
            [t.p_v, -t.p_e * u, t.p_e],
            [t.p_v * u, t.p - t.p_e * u**2, t.p_e * u],
        ]
    )


def viscosity_matrix(params: GasParams, state: StateU) -> np.ndarray:
    """Degenerate viscosity matrix B(U); first row and column vanish."""
    t = thermo(params, state)
    v, u = state.v, state.u
    return np.array(
        [
            [0.0, 0.0, 0.0],
            [0.0, params.mu / v, 0.0],
            [0.0, (params.mu / v - params.kappa * t.theta_e / v) * u,
             params.kappa * t.theta_e / v],
        ]
    )


def conserved_from_primitive(params: GasParams, prim: StatePrim) -> StateU:
    """Map (v, u, theta) to (v, u, E) with E = c_v*theta + u^2/2."""
    return StateU(v=prim.v, u=prim.u, E=params.c_v * prim.theta + 0.5 * prim.u**2)


def primitive_from_conserved(params: GasParams, state: StateU) -> StatePrim:
    """Map (v, u, E) back to (v, u, theta); fails if E - u^2/2 <= 0."""
    e = state.E - 0.5 * state.u**2
    if not e > 0:
        raise ValueError(f"internal energy must be positive, got {e}")
    return StatePrim(v=state.v, u=state.u, theta=e / params.c_v)


def base_state(params: GasParams) -> StateU:
    """The constant state (v, u, theta) = (1, 0, 1), i.e. U = (1, 0, c_v)."""
    return conserved_from_primitive(params, StatePrim(v=1.0, u=0.0, theta=1.0))


def load_gas_params(path: str) -> GasParams:
    """Read GasParams from a plain-text config file of key=value lines.

    Recognized keys: K, c_v, mu, kappa. Blank lines and lines starting
    with '#' are ignored. Missing keys keep their defaults.
    """
    values: dict[str, float] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line: {line!r}")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in ("K", "c_v", "mu", "kappa"):
                raise ValueError(f"unknown config key: {key!r}")
            values[key] = float(val.strip())
    return GasParams(**values)
