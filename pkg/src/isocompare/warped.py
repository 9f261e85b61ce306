"""Warped-product model manifolds and their candidate isoperimetric profiles.

A model is an n-manifold (n >= 3) with metric dt^2 + f(t)^2 g_round on
[0, t_max] x S^(n-1), determined by the warp factor f.  Geodesic spheres
{t = const} are umbilic round slices; sweeping them out gives a candidate
(area, volume) profile that is exact on the round sphere and an upper bound
for the true isoperimetric profile elsewhere, which is the direction every
comparison inequality needs.

Closed-form warps:
    round sphere   f(t) = r sin(t/r)            t in [0, pi r]
    football       f(t) = r c sin(t/r), c <= 1  t in [0, pi r]   (cone points)
    cylinder       f(t) = a                     t in [0, L]
plus tabulated warps interpolated monotonically on an interior window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator
from scipy.special import gamma

from .errors import (DomainError, SingularPointError, UnsupportedPointError,
                     ValidationError)

__all__ = [
    "WarpedMetric", "CurvatureData", "CurvatureBounds", "Slice", "Profile",
    "round_sphere", "football", "cylinder", "tabulated",
    "sphere_area", "eval_warp", "curvature_at", "curvature_bounds",
    "slice_at", "total_volume", "candidate_profile",
]


def sphere_area(dim: int) -> float:
    """Surface measure of the unit sphere S^dim, 2 pi^((dim+1)/2) / Gamma((dim+1)/2)."""
    if dim < 0:
        raise ValidationError(f"sphere dimension must be >= 0, got {dim}")
    return 2.0 * math.pi ** ((dim + 1) / 2.0) / gamma((dim + 1) / 2.0)


# ---------------------------------------------------------------------------
# warp factors


@dataclass(frozen=True)
class _RoundSphereWarp:
    radius: float

    kind = "sphere"
    closed = True

    @property
    def t_max(self) -> float:
        return math.pi * self.radius

    def evaluate(self, t):
        r = self.radius
        s = np.sin(np.asarray(t, dtype=float) / r)
        c = np.cos(np.asarray(t, dtype=float) / r)
        return r * s, c, -s / r

    def slope_complement(self, t):
        # 1 - f'^2 = sin^2(t/r), free of the cancellation near the poles
        return np.sin(np.asarray(t, dtype=float) / self.radius) ** 2

    def pole_slopes(self):
        return 1.0, -1.0


@dataclass(frozen=True)
class _FootballWarp:
    cone_factor: float
    radius: float

    kind = "football"
    closed = True

    @property
    def t_max(self) -> float:
        return math.pi * self.radius

    def evaluate(self, t):
        r, c0 = self.radius, self.cone_factor
        s = np.sin(np.asarray(t, dtype=float) / r)
        c = np.cos(np.asarray(t, dtype=float) / r)
        return r * c0 * s, c0 * c, -c0 * s / r

    def slope_complement(self, t):
        # 1 - c^2 cos^2 = sin^2 + (1 - c^2) cos^2, stable near the poles
        u = np.asarray(t, dtype=float) / self.radius
        c0 = self.cone_factor
        return np.sin(u) ** 2 + (1.0 - c0 * c0) * np.cos(u) ** 2

    def pole_slopes(self):
        return self.cone_factor, -self.cone_factor


@dataclass(frozen=True)
class _CylinderWarp:
    radius: float
    length: float

    kind = "cylinder"
    closed = False

    @property
    def t_max(self) -> float:
        return self.length

    def evaluate(self, t):
        z = np.zeros_like(np.asarray(t, dtype=float))
        return z + self.radius, z, z

    def slope_complement(self, t):
        return np.ones_like(np.asarray(t, dtype=float))

    def pole_slopes(self):
        return 0.0, 0.0


class _TabulatedWarp:
    """Monotone cubic interpolation of positive samples on an interior window.

    Second derivatives come from the interpolant; poles (and anything outside
    the window) are unsupported.
    """

    kind = "tabulated"
    closed = False

    def __init__(self, t_samples: Sequence[float], f_samples: Sequence[float]):
        ts = np.asarray(t_samples, dtype=float)
        fs = np.asarray(f_samples, dtype=float)
        if ts.ndim != 1 or ts.shape != fs.shape or ts.size < 4:
            raise ValidationError("tabulated warp needs >= 4 matching samples")
        if not np.all(np.diff(ts) > 0):
            raise ValidationError("tabulated warp grid must be strictly increasing")
        if ts[0] <= 0:
            raise ValidationError("tabulated warp grid must be interior (t > 0)")
        if not np.all(fs > 0):
            raise ValidationError("tabulated warp samples must be strictly positive")
        self.t_samples = ts
        self.f_samples = fs
        self._interp = PchipInterpolator(ts, fs)
        self._d1 = self._interp.derivative(1)
        self._d2 = self._interp.derivative(2)

    @property
    def t_max(self) -> float:
        return float(self.t_samples[-1])

    @property
    def t_min(self) -> float:
        return float(self.t_samples[0])

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < self.t_min) or np.any(t > self.t_max):
            raise UnsupportedPointError(
                f"tabulated warp supports only [{self.t_min:g}, {self.t_max:g}]")
        return self._interp(t), self._d1(t), self._d2(t)

    def slope_complement(self, t):
        _, f1, _ = self.evaluate(t)
        return 1.0 - np.asarray(f1, dtype=float) ** 2

    def pole_slopes(self):
        raise UnsupportedPointError("tabulated warp has no pole data")


@dataclass(frozen=True)
class WarpedMetric:
    """Rotationally symmetric model dt^2 + f(t)^2 g_round on an n-manifold."""

    n: int
    warp: object

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 3:
            raise ValidationError(f"dimension n must be an integer >= 3, got {self.n!r}")

    @property
    def t_max(self) -> float:
        return self.warp.t_max

    @property
    def t_min(self) -> float:
        return getattr(self.warp, "t_min", 0.0)

    @property
    def closed(self) -> bool:
        return self.warp.closed


def round_sphere(n: int = 3, radius: float = 1.0) -> WarpedMetric:
    if radius <= 0:
        raise ValidationError(f"radius must be positive, got {radius}")
    return WarpedMetric(n, _RoundSphereWarp(radius))


def football(cone_factor: float, n: int = 3, radius: float = 1.0) -> WarpedMetric:
    if not 0.0 < cone_factor <= 1.0:
        raise ValidationError(f"cone factor must lie in (0, 1], got {cone_factor}")
    if radius <= 0:
        raise ValidationError(f"radius must be positive, got {radius}")
    return WarpedMetric(n, _FootballWarp(cone_factor, radius))


def cylinder(radius: float, length: float, n: int = 3) -> WarpedMetric:
    if radius <= 0 or length <= 0:
        raise ValidationError("cylinder radius and length must be positive")
    return WarpedMetric(n, _CylinderWarp(radius, length))


def tabulated(t_samples: Sequence[float], f_samples: Sequence[float],
              n: int = 3) -> WarpedMetric:
    return WarpedMetric(n, _TabulatedWarp(t_samples, f_samples))


# ---------------------------------------------------------------------------
# pointwise quantities


def eval_warp(metric: WarpedMetric, t: float) -> tuple[float, float, float]:
    """Warp value and first two derivatives at radial coordinate t."""
    if not 0.0 <= t <= metric.t_max:
        raise DomainError(f"t={t:g} outside [0, {metric.t_max:g}]")
    f, f1, f2 = metric.warp.evaluate(t)
    return float(f), float(f1), float(f2)


@dataclass(frozen=True)
class CurvatureData:
    """Ricci and scalar curvature of a warped model at one interior point.

    ric_radial is Ric(nu, nu) for the radial unit normal; ric_tangential the
    (repeated) tangential Ricci eigenvalue.  All closed forms in f, f', f''.
    """

    ric_radial: float
    ric_tangential: float
    scalar: float

    @property
    def min_ricci(self) -> float:
        return min(self.ric_radial, self.ric_tangential)


def curvature_at(metric: WarpedMetric, t: float) -> CurvatureData:
    """Curvature quantities at a strictly interior radial coordinate."""
    if not metric.t_min < t < metric.t_max:
        raise SingularPointError(
            f"t={t:g} not strictly inside ({metric.t_min:g}, {metric.t_max:g})")
    f, _f1, f2 = metric.warp.evaluate(t)
    f = float(f)
    if f <= 0.0:
        raise SingularPointError(f"warp vanishes at t={t:g}")
    n = metric.n
    sc = float(metric.warp.slope_complement(t))  # 1 - f'^2, stably
    bend = -float(f2) / f            # -f''/f
    spread = sc / (f * f)            # (1 - f'^2) / f^2
    radial = (n - 1) * bend
    tangential = bend + (n - 2) * spread
    scalar = 2 * (n - 1) * bend + (n - 1) * (n - 2) * spread
    return CurvatureData(float(radial), float(tangential), float(scalar))


@dataclass(frozen=True)
class CurvatureBounds:
    """Grid infima of the minimal Ricci eigenvalue and of scalar curvature."""

    ric_min: float
    scalar_min: float
    certified: bool
    tolerance: float


def curvature_bounds(metric: WarpedMetric, grid_size: int = 513,
                     refine_tol: float = 1e-7,
                     max_refinements: int = 6) -> CurvatureBounds:
    """Infima of min-Ricci and scalar curvature over the interior.

    The grid is refined (doubled, with shrinking endpoint margins) until both
    infima are stable to refine_tol relative; the reported tolerance is the
    last observed change.  If the minima keep moving the result is flagged
    uncertified rather than silently reported.
    """
    n = metric.n
    lo, hi = metric.t_min, metric.t_max

    def grid_min(num: int) -> tuple[float, float]:
        margin = (hi - lo) / (2.0 * num)
        ts = np.linspace(lo + margin, hi - margin, num)
        f, _f1, f2 = metric.warp.evaluate(ts)
        f = np.asarray(f, dtype=float)
        if np.any(f <= 0):
            raise SingularPointError("warp vanishes inside the sampling window")
        sc = np.asarray(metric.warp.slope_complement(ts), dtype=float)
        bend = -np.asarray(f2, dtype=float) / f
        spread = sc / (f * f)
        radial = (n - 1) * bend
        tangential = bend + (n - 2) * spread
        scal = 2 * (n - 1) * bend + (n - 1) * (n - 2) * spread
        return float(np.min(np.minimum(radial, tangential))), float(np.min(scal))

    num = grid_size
    ric_min, scal_min = grid_min(num)
    certified = False
    achieved = math.inf
    for _ in range(max_refinements):
        num *= 2
        ric_next, scal_next = grid_min(num)
        scale = max(1.0, abs(ric_next), abs(scal_next))
        achieved = max(abs(ric_next - ric_min), abs(scal_next - scal_min)) / scale
        ric_min, scal_min = ric_next, scal_next
        if achieved <= refine_tol:
            certified = True
            break
    return CurvatureBounds(ric_min, scal_min, certified, achieved)


@dataclass(frozen=True)
class Slice:
    """Geodesic-sphere slice data: umbilic, so |Pi|^2 = H^2/(n-1) exactly."""

    t: float
    area: float
    volume: float
    mean_curvature: float
    second_fundamental_norm_sq: float


def _volume_integrand(metric: WarpedMetric):
    nm1 = metric.n - 1

    def fn(s: float) -> float:
        f, _, _ = metric.warp.evaluate(s)
        return float(f) ** nm1

    return fn


def slice_at(metric: WarpedMetric, t: float) -> Slice:
    """Area, enclosed volume, H and |Pi|^2 of the slice at radius t.

    Volume uses adaptive quadrature to relative error <= 1e-10 (measured from
    the window start for tabulated warps).
    """
    if not metric.t_min < t < metric.t_max:
        raise SingularPointError(
            f"t={t:g} not strictly inside ({metric.t_min:g}, {metric.t_max:g})")
    f, f1, _ = metric.warp.evaluate(t)
    f = float(f)
    if f <= 0.0:
        raise SingularPointError(f"warp vanishes at t={t:g}")
    n = metric.n
    omega = sphere_area(n - 1)
    area = omega * f ** (n - 1)
    vol, _ = quad(_volume_integrand(metric), metric.t_min, t,
                  epsabs=0.0, epsrel=1e-12, limit=200)
    h = (n - 1) * float(f1) / f
    return Slice(t=t, area=area, volume=omega * vol, mean_curvature=h,
                 second_fundamental_norm_sq=(n - 1) * (float(f1) / f) ** 2)


def total_volume(metric: WarpedMetric) -> float:
    """Volume of the whole model, adaptive quadrature at relative 1e-12."""
    vol, _ = quad(_volume_integrand(metric), metric.t_min, metric.t_max,
                  epsabs=0.0, epsrel=1e-12, limit=200)
    return sphere_area(metric.n - 1) * vol


# ---------------------------------------------------------------------------
# candidate profiles


@dataclass
class Profile:
    """Sampled candidate profile (V, A) with foliation derivative estimates.

    Profiles generated by ``candidate_profile`` carry the generating t-grid,
    dA/dV = H (infinite at closed-model poles) and the warp slope f'(t), from
    which the volume-derivative of any power of A follows exactly via
    dV = A dt.  Externally supplied profiles may leave those fields None.
    """

    n: int
    v_grid: np.ndarray
    a_values: np.ndarray
    total_volume: float
    t_grid: np.ndarray | None = None
    da_dv: np.ndarray | None = None
    warp_slope: np.ndarray | None = None

    def __post_init__(self):
        self.v_grid = np.asarray(self.v_grid, dtype=float)
        self.a_values = np.asarray(self.a_values, dtype=float)
        if self.v_grid.ndim != 1 or self.v_grid.shape != self.a_values.shape:
            raise ValidationError("profile grids must be matching 1-d arrays")
        if not np.all(np.diff(self.v_grid) > 0):
            raise ValidationError("profile volume samples must be strictly increasing")
        if np.any(self.a_values < 0):
            raise ValidationError("profile areas must be nonnegative")
        if self.n < 3:
            raise ValidationError(f"profile dimension must be >= 3, got {self.n}")


def candidate_profile(metric: WarpedMetric, grid_size: int = 257) -> Profile:
    """Geodesic-ball candidate profile sampled on a uniform t-grid.

    Exact for the round sphere; an upper bound for the true profile on any
    other model.  Requires a closed model or a cylinder.
    """
    if grid_size < 16:
        raise ValidationError(f"grid_size must be >= 16, got {grid_size}")
    if metric.warp.kind == "tabulated":
        raise ValidationError("candidate profiles need a closed or cylinder model")

    n = metric.n
    omega = sphere_area(n - 1)
    ts = np.linspace(0.0, metric.t_max, grid_size)
    f, f1, _ = metric.warp.evaluate(ts)
    f = np.asarray(f, dtype=float)
    areas = omega * f ** (n - 1)

    integrand = _volume_integrand(metric)
    vols = np.empty(grid_size)
    vols[0] = 0.0
    for k in range(1, grid_size):
        piece, _ = quad(integrand, ts[k - 1], ts[k], epsabs=0.0, epsrel=1e-12,
                        limit=200)
        vols[k] = vols[k - 1] + omega * piece
    if not np.all(np.diff(vols) > 0):
        raise ValidationError("volume samples are not strictly increasing")

    with np.errstate(divide="ignore", invalid="ignore"):
        da_dv = np.where(f > 0, (n - 1) * np.asarray(f1, dtype=float) / f, np.inf)
    if metric.closed:
        da_dv[0] = np.inf
        da_dv[-1] = -np.inf

    return Profile(n=n, v_grid=vols, a_values=areas, total_volume=float(vols[-1]),
                   t_grid=ts, da_dv=da_dv,
                   warp_slope=np.asarray(f1, dtype=float).copy())
