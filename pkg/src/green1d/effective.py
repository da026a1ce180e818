"""Cutoff blend of the BV heat kernel with the constant-state Green channel.

The diffusive channels (2,2) and (3,3) admit two accurate descriptions
that hold on opposite time ranges: right after the source time the field
is the heat kernel driven by the frozen coefficient profile (mu/v for
momentum, kappa/(c_v v) for energy), while after a fixed multiple of the
interpolation width it is the matching diagonal channel of the
constant-state Green's function.  A smooth non-increasing cutoff with
slope at most 2 joins the two, so every evaluation is exactly the kernel
branch up to one width, exactly the Green branch from two widths on, and
a convex mix in between.

Classes:
    CutoffSpec: the interpolation width.
    EffectiveKernelValue: one blended sample with its regime tag.
    GridFunction: a positive field frozen at one time slice.

Functions:
    cutoff: the blending weight.
    effective_profile: blended samples of one channel on a grid.
    effective_g22: momentum-channel point value.
    effective_g33: energy-channel point value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .green_fourier import default_quadrature, full_green
from .heatkernel import PiecewiseCoefficient, heat_kernel
from .spectrum import SpectralConstants, select_constants
from .state import GasParams, StateU

_REGIMES = ("kernel", "blend", "green")
# diagonal slot of the Green's function owned by each channel
_CHANNEL_SLOT = {"22": 1, "33": 2}


@dataclass(frozen=True)
class CutoffSpec:
    """Interpolation width between the kernel and Green branches.

    Attributes:
        nu0: time extent of the pure-kernel regime; the blend ends at
            twice this value.
    """

    nu0: float = 0.05

    def __post_init__(self) -> None:
        if not (math.isfinite(self.nu0) and self.nu0 > 0.0):
            raise ValueError(f"nu0 must be positive, got {self.nu0}")


@dataclass(frozen=True)
class EffectiveKernelValue:
    """One sample of a blended channel.

    Attributes:
        value: the blended field value.
        regime: "kernel" when the gap is at most one width, "green" from
            two widths on, "blend" in between.
    """

    value: float
    regime: str

    def __post_init__(self) -> None:
        if self.regime not in _REGIMES:
            raise ValueError(f"regime must be one of {_REGIMES}, got {self.regime!r}")
        if not math.isfinite(self.value):
            raise ValueError(f"value must be finite, got {self.value}")


@dataclass(frozen=True)
class GridFunction:
    """Positive samples of a field on a uniform grid at one time slice.

    Attributes:
        grid: strictly increasing, uniformly spaced sample points.
        values: positive field samples, one per grid point.
    """

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if grid.ndim != 1 or grid.size < 2:
            raise ValueError("grid must hold at least two points")
        if values.shape != grid.shape:
            raise ValueError(
                f"values shape {values.shape} does not match grid shape {grid.shape}"
            )
        steps = np.diff(grid)
        if not (steps > 0.0).all():
            raise ValueError("grid must be strictly increasing")
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            raise ValueError("grid must be uniformly spaced")
        if not (np.isfinite(values).all() and (values > 0.0).all()):
            raise ValueError("values must be finite and positive")

    @property
    def spacing(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def conductivity(self, scale: float) -> PiecewiseCoefficient:
        """Piecewise-constant scale/values field with edges between samples.

        The cell around each sample carries scale divided by that sample;
        the end cells extend to infinity.  The baseline is the scale
        itself, the conductivity of the unit equilibrium field.
        """
        if not (math.isfinite(scale) and scale > 0.0):
            raise ValueError(f"scale must be positive, got {scale}")
        edges = 0.5 * (self.grid[:-1] + self.grid[1:])
        return PiecewiseCoefficient(
            breakpoints=tuple(edges),
            values=tuple(scale / self.values),
            baseline=scale,
        )


def cutoff(t_scaled: float) -> float:
    """Smooth non-increasing weight: 1 up to 1, 0 from 2 on.

    The descent is the quintic smoothstep, whose steepest slope is 15/8,
    inside the required bound of 2.  Two continuous derivatives is all the
    blend ever differentiates.

    Args:
        t_scaled: evaluation point, positive.

    Returns:
        Weight in [0, 1].
    """
    if t_scaled <= 0.0:
        raise ValueError(f"t_scaled must be positive, got {t_scaled}")
    if t_scaled <= 1.0:
        return 1.0
    if t_scaled >= 2.0:
        return 0.0
    u = t_scaled - 1.0
    return 1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u)


@lru_cache(maxsize=8)
def _constants_for(params: GasParams) -> SpectralConstants:
    return select_constants(params)


def _channel_scale(params: GasParams, channel: str) -> float:
    if channel == "22":
        return params.mu
    return params.kappa / params.c_v


def _regime_tag(gap: float, nu0: float) -> str:
    if gap <= nu0:
        return "kernel"
    if gap >= 2.0 * nu0:
        return "green"
    return "blend"


def effective_profile(
    params: GasParams,
    base_state: StateU,
    v_field: GridFunction,
    cut: CutoffSpec,
    grid,
    t: float,
    y: float,
    tau: float,
    channel: str = "22",
) -> tuple[np.ndarray, str]:
    """Blended channel samples on a grid of evaluation points.

    Inside the kernel regime the samples are exactly the heat kernel of
    the frozen conductivity profile; inside the green regime exactly the
    matching smooth Green channel evaluated at (x - y, t - tau); in the
    blend both branches are computed and mixed by the cutoff weight.

    Args:
        params: gas constants.
        base_state: background state of the Green branch.
        v_field: volume profile frozen at time tau.
        cut: interpolation width.
        grid: uniform evaluation points; in the kernel and blend regimes
            the spacing must resolve the diffusion length.
        t: evaluation time, greater than tau.
        y: source position.
        tau: source time.
        channel: "22" for the momentum channel, "33" for energy.

    Returns:
        (values, regime): samples on the grid and the regime tag.

    Raises:
        AccuracyError: propagated from the kernel branch.
    """
    if channel not in _CHANNEL_SLOT:
        raise ValueError(f"channel must be '22' or '33', got {channel!r}")
    gap = t - tau
    if gap <= 0.0:
        raise ValueError(f"t must exceed tau, got t={t} and tau={tau}")
    grid = np.asarray(grid, dtype=float)
    weight = cutoff(gap / cut.nu0)
    regime = _regime_tag(gap, cut.nu0)
    slot = _CHANNEL_SLOT[channel]
    if weight > 0.0:
        rho = v_field.conductivity(_channel_scale(params, channel))
        kernel_vals = heat_kernel(rho, y, tau, t, grid).values
        if weight == 1.0:
            return kernel_vals, regime
    dv = full_green(
        params, base_state, _constants_for(params), default_quadrature(gap),
        grid - y, gap,
    )
    green_vals = dv.smooth[:, slot, slot]
    if weight == 0.0:
        return green_vals, regime
    return weight * kernel_vals + (1.0 - weight) * green_vals, regime


def _point_value(
    params: GasParams,
    base_state: StateU,
    v_field: GridFunction,
    cut: CutoffSpec,
    x: float,
    t: float,
    y: float,
    tau: float,
    channel: str,
) -> EffectiveKernelValue:
    gap = t - tau
    if gap <= 0.0:
        raise ValueError(f"t must exceed tau, got t={t} and tau={tau}")
    # half the kernel-branch resolution bound, from the slowest cell
    rho_min = _channel_scale(params, channel) / float(np.max(v_field.values))
    dx = 0.5 * math.sqrt(rho_min * gap) / 20.0
    points = x + dx * np.arange(-4.0, 5.0)
    values, regime = effective_profile(
        params, base_state, v_field, cut, points, t, y, tau, channel
    )
    return EffectiveKernelValue(value=float(values[4]), regime=regime)


def effective_g22(
    params: GasParams,
    base_state: StateU,
    v_field: GridFunction,
    cut: CutoffSpec,
    x: float,
    t: float,
    y: float,
    tau: float,
) -> EffectiveKernelValue:
    """Momentum-channel blend at one point: kernel conductivity mu/v."""
    return _point_value(params, base_state, v_field, cut, x, t, y, tau, "22")


def effective_g33(
    params: GasParams,
    base_state: StateU,
    v_field: GridFunction,
    cut: CutoffSpec,
    x: float,
    t: float,
    y: float,
    tau: float,
) -> EffectiveKernelValue:
    """Energy-channel blend at one point: kernel conductivity kappa/(c_v v)."""
    return _point_value(params, base_state, v_field, cut, x, t, y, tau, "33")
