"""One-dimensional Green functions with logarithmic pole.

Closed form on the unit disk, separated Fourier series on the annulus
{ r < |z| < 1 }, plus the quantities built on top of them: Robin constant
and logarithmic capacity, traced level curves with flux / co-area density /
isoperimetric ratio, sublevel-set volumes by deterministic hit counting,
and the annulus covering map used to bound the capacity from above.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import domains
from .numerics import DEFAULT_TOL, SampleStream, find_root_monotone

__all__ = [
    "DiskGreen",
    "AnnulusGreen",
    "GreenSeries1D",
    "CriticalLevelError",
    "LevelStats",
    "SublevelCurve",
    "green_disk",
    "solve_green_annulus",
    "robin_capacity",
    "covering_map",
    "covering_capacity_bound",
    "trace_level",
    "level_flux_and_isoperimetric",
    "sublevel_volume",
    "sublevel_curve",
]


class CriticalLevelError(RuntimeError):
    """The requested level passes too close to a critical point of G."""


class DiskGreen:
    """Green function of the unit disk: log |z - w| / |1 - conj(w) z|."""

    def __init__(self, w):
        w = complex(w)
        if abs(w) >= 1.0:
            raise ValueError("pole must lie in the open unit disk")
        self.pole = w
        self.domain = domains.disk()
        # Robin constant lim (G - log|z - w|) = -log(1 - |w|^2)
        self.robin = -math.log1p(-abs(w) ** 2)

    def value(self, z):
        z = np.asarray(z, dtype=complex)
        w = self.pole
        return np.log(np.abs(z - w)) - np.log(np.abs(1.0 - np.conj(w) * z))

    def grad(self, z):
        """Gradient of G as a complex vector gx + i gy."""
        z = np.asarray(z, dtype=complex)
        w = self.pole
        # grad log|z - a| = (z - a)/|z - a|^2; the Blaschke factor contributes
        # with a = 1/conj(w) and opposite sign
        g = (z - w) / np.abs(z - w) ** 2
        if w != 0:
            a = 1.0 / np.conj(w)
            g = g - (z - a) / np.abs(z - a) ** 2
        return g

    def in_domain(self, z):
        return np.abs(z) < 1.0

    def boundary_distance(self, phi):
        """Distance from the pole to the boundary along direction e^{i phi}."""
        d = np.exp(1j * np.asarray(phi, dtype=float))
        beta = np.real(np.conj(self.pole) * d)
        return -beta + np.sqrt(beta**2 + 1.0 - abs(self.pole) ** 2)


class AnnulusGreen:
    """Green function of { r < |z| < 1 } as pole term plus harmonic series.

    G(z) = log|z - w| + H(z) where H solves the Dirichlet problem with data
    -log|z - w| on both boundary circles.  After rotating the pole onto the
    positive real axis the data is even, so H needs only a constant, a
    log rho term, and cosine modes A_k rho^k + B_k rho^{-k}; each mode is a
    2x2 linear solve against the cosine expansion of log|z - w0| on a circle.
    """

    def __init__(self, r, w, tol=DEFAULT_TOL):
        r = float(r)
        w = complex(w)
        if not 0.0 < r < 1.0:
            raise ValueError("inner radius must lie in (0, 1)")
        if r > 0.999:
            raise ValueError("inner radius too close to 1: series ill-conditioned")
        w0 = abs(w)
        if not r < w0 < 1.0:
            raise ValueError("pole must lie inside the annulus")
        self.inner = r
        self.pole = w
        self.domain = domains.Annulus(r)
        self._w0 = w0
        self._phase = w / w0
        rate = max(w0, r / w0)
        target = max(tol.abs_tol, 1e-15)
        n_modes = max(16, int(math.log(target * (1.0 - rate)) / math.log(rate)) + 1)
        self.n_modes = min(n_modes, 4000)
        k = np.arange(1, self.n_modes + 1, dtype=float)
        self._k = k
        # cosine data of -log|z - w0|: constant 0 on rho=1, -log w0 on rho=r
        p_out = w0**k / k
        p_in = (r / w0) ** k / k
        rk = r**k
        denom = 1.0 - rk * rk
        # B rho^{-k} is stored as Btil (r/rho)^k with Btil = B r^{-k}, which
        # stays bounded for every mode
        self._btil = (p_in - p_out * rk) / denom
        self._a = p_out - self._btil * rk
        self.c0 = 0.0
        self.c_log = -math.log(w0) / math.log(r)
        self.robin = self._harmonic(np.array([w0 + 0j]))[0]
        self.tail_bound = rate ** (self.n_modes + 1) / ((self.n_modes + 1) * (1.0 - rate))

    def _polar(self, z):
        zeta = np.asarray(z, dtype=complex) * np.conj(self._phase)
        return zeta, np.abs(zeta), np.angle(zeta)

    def _harmonic(self, z):
        zeta, rho, th = self._polar(z)
        k = self._k
        rr = rho[..., None]
        modes = self._a * rr**k + self._btil * (self.inner / rr) ** k
        return (
            self.c0
            + self.c_log * np.log(rho)
            + np.sum(modes * np.cos(k * th[..., None]), axis=-1)
        )

    def value(self, z):
        zeta, rho, _ = self._polar(z)
        return np.log(np.abs(zeta - self._w0)) + self._harmonic(z)

    def grad(self, z):
        zeta, rho, th = self._polar(z)
        k = self._k
        rr = rho[..., None]
        ck = np.cos(k * th[..., None])
        sk = np.sin(k * th[..., None])
        pk = self._a * rr**k
        qk = self._btil * (self.inner / rr) ** k
        h_rho = self.c_log / rho + np.sum(k * (pk - qk) * ck, axis=-1) / rho
        h_th = -np.sum(k * (pk + qk) * sk, axis=-1)
        g_pole = (zeta - self._w0) / np.abs(zeta - self._w0) ** 2
        e_rho = zeta / rho
        g = g_pole + e_rho * (h_rho + 1j * h_th / rho)
        return g * self._phase

    def in_domain(self, z):
        a = np.abs(z)
        return (a > self.inner) & (a < 1.0)

    def boundary_distance(self, phi):
        d = np.exp(1j * np.asarray(phi, dtype=float))
        w = self.pole
        beta = np.real(np.conj(w) * d)
        s_out = -beta + np.sqrt(beta**2 + 1.0 - abs(w) ** 2)
        disc = beta**2 - (abs(w) ** 2 - self.inner**2)
        s_in = np.where(
            (disc >= 0) & (-beta - np.sqrt(np.abs(disc)) > 0),
            -beta - np.sqrt(np.abs(disc)),
            np.inf,
        )
        return np.minimum(s_out, s_in)


# the series solve is the canonical truncated representation
GreenSeries1D = AnnulusGreen


def green_disk(w=0.0):
    return DiskGreen(w)


def solve_green_annulus(r, w, tol=DEFAULT_TOL):
    return AnnulusGreen(r, w, tol)


def robin_capacity(green):
    """Logarithmic capacity c(w) = exp of the Robin constant."""
    return math.exp(green.robin)


def covering_map(r, zeta):
    """Universal covering map Delta -> annulus with p(0) = sqrt(r)."""
    zeta = complex(zeta)
    if abs(zeta) >= 1.0:
        raise ValueError("argument must lie in the unit disk")
    return cmath.exp(cmath.log(r) / (math.pi * 1j) * cmath.log(1j * (1 + zeta) / (1 - zeta)))


def covering_capacity_bound(r):
    """Upper bound pi / (-2 sqrt(r) log r) = 1/|p'(0)| for the capacity at sqrt(r)."""
    if not 0.0 < r < 1.0:
        raise ValueError("radius must lie in (0, 1)")
    return math.pi / (-2.0 * math.sqrt(r) * math.log(r))


def _ray_crossing(green, t, phi, coarse=False):
    """First s > 0 with G(pole + s e^{i phi}) = t along the ray."""
    w = green.pole
    d = cmath.exp(1j * phi)
    s_bnd = float(green.boundary_distance(phi))

    def f(s):
        return float(green.value(np.array([w + s * d]))[0]) - t

    s_max = s_bnd * (1.0 - 1e-12)
    s_lo = min(0.25 * math.exp(t - green.robin), 0.5 * s_max)
    while f(s_lo) >= 0.0:
        s_lo *= 0.5
        if s_lo < 1e-300:
            raise CriticalLevelError(f"could not start below the level along ray phi={phi}")
    factor = 1.5 if coarse else 1.2
    while s_lo < s_max:
        s_hi = min(s_lo * factor, s_max)
        if f(s_hi) >= 0.0:
            return find_root_monotone(f, s_lo, s_hi)
        s_lo = s_hi
    # G = 0 > t on the boundary, so a crossing must exist; landing here means
    # the level hugs the boundary beyond resolution
    raise CriticalLevelError(f"no level crossing found along ray phi={phi}")


@dataclass
class LevelStats:
    """Traced level curve { G = t } and its integral quantities."""

    t: float
    flux: float
    density: float
    length: float
    area: float
    iso_ratio: float
    min_grad: float


def trace_level(green, t, n_nodes=2048):
    """Polar trace s(phi) of the level curve around the pole.

    Returns (phi, s) arrays; phi is a uniform grid so periodic trapezoid
    sums over the curve converge spectrally.
    """
    if t >= 0.0:
        raise ValueError("levels must be negative")
    phis = np.arange(n_nodes) * (2.0 * math.pi / n_nodes)
    s = np.array([_ray_crossing(green, t, p) for p in phis])
    return phis, s


def level_flux_and_isoperimetric(green, t, n_nodes=2048, grad_floor=1e-4):
    """Flux, co-area density and isoperimetric ratio of a regular level.

    flux    = integral of |grad G| over { G = t }          (2 pi for any level
              enclosing the pole),
    density = integral of d sigma / |grad G|               (= d/dt of the
              sublevel volume),
    iso_ratio = length^2 / (4 pi area)                     (>= 1 by the
              isoperimetric inequality).
    """
    phis, s = trace_level(green, t, n_nodes)
    # a level through (or shadowed past) a critical point is not a radial
    # graph around the pole: the first-crossing radius then jumps between
    # level components, which shows up as a discontinuity in s(phi)
    ds = np.abs(np.diff(np.append(s, s[0])))
    dphi_step = 2.0 * math.pi / n_nodes
    jump_scale = 10.0 * (float(np.median(ds)) + float(s.max()) * dphi_step)
    if float(ds.max()) > jump_scale:
        raise CriticalLevelError(
            f"level t={t} is not a radial graph around the pole "
            f"(trace jump {ds.max():.3g} vs scale {jump_scale:.3g})"
        )
    z = green.pole + s * np.exp(1j * phis)
    g = green.grad(z)
    absg = np.abs(g)
    if float(absg.min()) < grad_floor:
        raise CriticalLevelError(
            f"level t={t} passes near a critical point (min |grad G| = {absg.min():.3g})"
        )
    d = np.exp(1j * phis)
    g_s = np.real(np.conj(g) * d)  # radial derivative along the ray
    g_phi = np.real(np.conj(g) * (1j * s * d))
    s_prime = -g_phi / g_s  # implicit differentiation of G(s(phi)) = t
    speed = np.abs(s_prime + 1j * s)  # |z'(phi)|
    dphi = 2.0 * math.pi / len(phis)
    flux = float(np.sum(absg * speed) * dphi)
    length = float(np.sum(speed) * dphi)
    density = float(np.sum(speed / absg) * dphi)
    area = 0.5 * float(np.sum(s**2) * dphi)
    iso = length**2 / (4.0 * math.pi * area)
    return LevelStats(
        t=t,
        flux=flux,
        density=density,
        length=length,
        area=area,
        iso_ratio=iso,
        min_grad=float(absg.min()),
    )


def _sublevel_box(green, t, n_rays=128):
    """Axis-aligned bounding box of { G < t }, from a coarse polar trace."""
    phis = np.arange(n_rays) * (2.0 * math.pi / n_rays)
    pts = []
    for p in phis:
        s = _ray_crossing(green, t, p, coarse=True)
        pts.append(green.pole + s * cmath.exp(1j * p))
    pts = np.array(pts)
    x0, x1 = pts.real.min(), pts.real.max()
    y0, y1 = pts.imag.min(), pts.imag.max()
    pad = 0.2 * max(x1 - x0, y1 - y0)
    return x0 - pad, x1 + pad, y0 - pad, y1 + pad


def sublevel_volume(obj, t, stream=None, count=2**20):
    """Volume of { G < t } with its hit-counting standard error.

    ``obj`` is either a balanced domain spec (sublevel volume is the exact
    scaling e^{2nt} lambda(domain) of the Minkowski functional) or a Green
    object, in which case points are counted inside a bounding box fitted to
    the sublevel component around the pole.
    """
    if t > 0.0:
        raise ValueError("require t <= 0")
    if isinstance(obj, (domains.Ellipsoid, domains.Polydisk)):
        n = obj.dimension
        return domains.volume(obj) * math.exp(2 * n * t), 0.0
    green = obj
    if t == 0.0:
        raise ValueError("t = 0 needs no sampling: the sublevel set is the domain")
    if stream is None:
        stream = SampleStream(dimension=2, seed=0)
    x0, x1, y0, y1 = _sublevel_box(green, t)
    box_area = (x1 - x0) * (y1 - y0)
    u = stream.points(count)
    z = (x0 + (x1 - x0) * u[:, 0]) + 1j * (y0 + (y1 - y0) * u[:, 1])
    hit_count = 0
    for lo in range(0, count, 65536):  # chunked: series evaluation is wide
        chunk = z[lo : lo + 65536]
        mask = green.in_domain(chunk)
        if np.any(mask):
            hit_count += int(np.count_nonzero(green.value(chunk[mask]) < t))
    p = hit_count / count
    value = box_area * p
    stderr = box_area * math.sqrt(max(p * (1.0 - p), 1.0 / count) / count)
    return value, stderr


@dataclass
class SublevelCurve:
    """Sampled map t -> lambda({G < t}) with normalized column e^{-2nt} lambda."""

    t_grid: list
    values: list
    stderrs: list
    normalized: list
    normalized_stderrs: list
    n: int = 1

    def to_csv(self, path):
        import csv

        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "lambda", "stderr", "normalized"])
            for t, v, e, nv in zip(self.t_grid, self.values, self.stderrs, self.normalized):
                writer.writerow([f"{t:.12g}", f"{v:.12g}", f"{e:.12g}", f"{nv:.12g}"])


def sublevel_curve(obj, t_grid, stream=None, count=2**20, n=1):
    """Sublevel volumes across a t grid, one derived stream per grid cell."""
    t_grid = sorted(float(t) for t in t_grid)
    if stream is None:
        stream = SampleStream(dimension=2, seed=0)
    values, stderrs, norm, norm_err = [], [], [], []
    for i, t in enumerate(t_grid):
        v, e = sublevel_volume(obj, t, stream.split(i), count)
        scale = math.exp(-2 * n * t)
        values.append(v)
        stderrs.append(e)
        norm.append(scale * v)
        norm_err.append(scale * e)
    return SublevelCurve(
        t_grid=t_grid,
        values=values,
        stderrs=stderrs,
        normalized=norm,
        normalized_stderrs=norm_err,
        n=n,
    )
