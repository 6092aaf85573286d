"""Convex regions, half-plane clipping, and weighted quadrature.

Intervals (1D) and convex polygons with counterclockwise vertices (2D) share
one interface; they are the only shapes the measure discretization and the
power-diagram machinery need.  Regions are immutable values, and the empty
region is a legal result rather than an error: cells legitimately vanish
while dual potentials move.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.spatial.distance import pdist
from scipy.special import roots_jacobi, roots_legendre

__all__ = [
    "GEOM_TOL",
    "ConvexRegion",
    "QuadratureRule",
    "RegionMoments",
    "PowerCell",
    "clip_halfplane",
    "region_quadrature",
    "polygon_moments",
    "batched_region_moments",
    "diameter",
    "ellipse_moment_ratio",
    "power_cells",
    "interface_density_integrals",
]

# Absolute tolerance for geometric predicates; all problem coordinates are O(1).
GEOM_TOL = 1e-12

Density = Callable[[np.ndarray], np.ndarray]


def as_point_array(points, dim: int) -> np.ndarray:
    """Coerce ``points`` to a float array of shape (n, dim)."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1) if dim == 1 else pts.reshape(1, -1)
    if pts.ndim != 2 or pts.shape[1] != dim:
        raise ValueError(f"expected points of dimension {dim}, got shape {pts.shape}")
    return pts


def shoelace_area(vertices: np.ndarray) -> float:
    """Signed area of a polygon given as an (n, 2) vertex array."""
    if len(vertices) < 3:
        return 0.0
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


@dataclass(frozen=True)
class ConvexRegion:
    """Closed interval (dim 1) or convex polygon with CCW vertices (dim 2).

    ``vertices`` has shape (n, dim); n == 0 encodes the empty region.  For
    dim 1 the two rows are the interval endpoints [[a], [b]] with a <= b.
    """

    dim: int
    vertices: np.ndarray

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"unsupported dimension {self.dim}")
        verts = np.asarray(self.vertices, dtype=float).reshape(-1, self.dim)
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty(dim: int) -> "ConvexRegion":
        return ConvexRegion(dim, np.empty((0, dim)))

    @staticmethod
    def interval(a: float, b: float) -> "ConvexRegion":
        if not (np.isfinite(a) and np.isfinite(b)):
            raise ValueError("interval endpoints must be finite")
        if a > b:
            raise ValueError(f"interval endpoints out of order: [{a}, {b}]")
        return ConvexRegion(1, np.array([[a], [b]], dtype=float))

    @staticmethod
    def polygon(vertices) -> "ConvexRegion":
        """Build a convex polygon; vertices are deduplicated and oriented CCW."""
        verts = np.asarray(vertices, dtype=float).reshape(-1, 2)
        verts = _dedup_cyclic(verts)
        if len(verts) < 3:
            raise ValueError("polygon needs at least 3 distinct vertices")
        if shoelace_area(verts) < 0.0:
            verts = verts[::-1].copy()
        region = ConvexRegion(2, verts)
        region.validate()
        return region

    @staticmethod
    def box(lo, hi) -> "ConvexRegion":
        """Axis-aligned rectangle from corner ``lo`` to corner ``hi``."""
        (x0, y0), (x1, y1) = np.asarray(lo, float), np.asarray(hi, float)
        return ConvexRegion.polygon([[x0, y0], [x1, y0], [x1, y1], [x0, y1]])

    # -- basic queries -----------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0

    @property
    def bounds(self) -> tuple[float, float]:
        if self.dim != 1:
            raise ValueError("bounds are defined for intervals only")
        if self.is_empty:
            raise ValueError("empty region has no bounds")
        return float(self.vertices[0, 0]), float(self.vertices[1, 0])

    @property
    def measure(self) -> float:
        """Length (1D) or area (2D); zero for the empty region."""
        if self.is_empty:
            return 0.0
        if self.dim == 1:
            a, b = self.bounds
            return b - a
        return shoelace_area(self.vertices)

    def validate(self, tol: float = GEOM_TOL) -> None:
        """Check the region invariants, raising ValueError on failure."""
        if self.is_empty:
            return
        if self.dim == 1:
            if self.vertices.shape != (2, 1):
                raise ValueError("interval must have exactly two endpoints")
            a, b = self.bounds
            if a > b + tol:
                raise ValueError(f"interval endpoints out of order: [{a}, {b}]")
            return
        verts = self.vertices
        if len(verts) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        edges = np.roll(verts, -1, axis=0) - verts
        cross = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        if np.any(cross < -tol):
            raise ValueError(f"polygon is not convex CCW (min cross product {cross.min():.3e})")

    def contains_points(self, points, tol: float = GEOM_TOL) -> np.ndarray:
        """Boolean mask of points lying in the region (within ``tol``)."""
        pts = as_point_array(points, self.dim)
        if self.is_empty:
            return np.zeros(len(pts), dtype=bool)
        if self.dim == 1:
            a, b = self.bounds
            x = pts[:, 0]
            return (x >= a - tol) & (x <= b + tol)
        verts = self.vertices
        edges = np.roll(verts, -1, axis=0) - verts
        rel = pts[:, None, :] - verts[None, :, :]
        cross = edges[None, :, 0] * rel[:, :, 1] - edges[None, :, 1] * rel[:, :, 0]
        return np.all(cross >= -tol, axis=1)


def _dedup_cyclic(verts: np.ndarray, tol: float = GEOM_TOL) -> np.ndarray:
    """Drop consecutive (cyclically) duplicate vertices within ``tol``."""
    if len(verts) == 0:
        return verts
    keep = [verts[0]]
    for v in verts[1:]:
        if np.max(np.abs(v - keep[-1])) > tol:
            keep.append(v)
    while len(keep) > 1 and np.max(np.abs(keep[-1] - keep[0])) <= tol:
        keep.pop()
    return np.array(keep)


# ---------------------------------------------------------------------------
# Half-plane clipping
# ---------------------------------------------------------------------------


def clip_halfplane(region: ConvexRegion, normal, offset: float) -> ConvexRegion:
    """Intersect ``region`` with the half-space ``normal . y <= offset``.

    A non-binding plane (``offset`` = +inf) returns the region unchanged.
    A cut that leaves fewer than 3 distinct vertices (2D) or an inverted
    interval (1D) yields the empty region.
    """
    if region.is_empty or np.isposinf(offset):
        return region
    n = np.asarray(normal, dtype=float).reshape(region.dim)
    if region.dim == 1:
        a, b = region.bounds
        clipped = _clip_interval(a, b, float(n[0]), float(offset))
        if clipped is None:
            return ConvexRegion.empty(1)
        return ConvexRegion(1, np.array([[clipped[0]], [clipped[1]]]))
    owners = np.full(len(region.vertices), -1, dtype=int)
    verts, _ = _clip_polygon(region.vertices, owners, n, float(offset), new_owner=-1)
    if verts is None:
        return ConvexRegion.empty(2)
    return ConvexRegion(2, verts)


def _clip_interval(a, b, n, offset):
    """Clip [a, b] against ``n * y <= offset``; returns (a, b) or None if empty."""
    if abs(n) <= GEOM_TOL:
        return (a, b) if offset >= -GEOM_TOL else None
    bound = offset / n
    if n > 0:
        b = min(b, bound)
    else:
        a = max(a, bound)
    return (a, b) if a <= b else None


def _clip_polygon(verts, owners, normal, offset, new_owner):
    """Sutherland-Hodgman clip of a convex CCW polygon against one half-plane.

    ``owners[k]`` labels the plane that produced the edge verts[k] -> verts[k+1]
    (-1 for original boundary edges).  Returns (verts, owners) or (None, None)
    when the intersection is empty (or degenerates below 3 vertices).
    """
    s = verts @ normal - offset
    inside = s <= GEOM_TOL
    if inside.all():
        return verts, owners
    if not inside.any():
        return None, None
    nv = len(verts)
    out_v: list[np.ndarray] = []
    out_o: list[int] = []
    for k in range(nv):
        k2 = (k + 1) % nv
        if inside[k]:
            out_v.append(verts[k])
            out_o.append(owners[k])
        if inside[k] != inside[k2]:
            denom = s[k] - s[k2]
            t = s[k] / denom if abs(denom) > 0.0 else 0.5
            t = min(max(t, 0.0), 1.0)
            p = verts[k] + t * (verts[k2] - verts[k])
            # leaving the half-plane: the chord edge starts here and is owned
            # by the cutting plane; entering: the edge continues the old one
            out_v.append(p)
            out_o.append(new_owner if inside[k] else owners[k])
    verts2, owners2 = _dedup_owned(np.array(out_v), np.array(out_o))
    if len(verts2) < 3:
        return None, None
    return verts2, owners2


def _dedup_owned(verts, owners, tol: float = GEOM_TOL):
    """Cyclic dedup keeping edge owners consistent with surviving edges."""
    n = len(verts)
    if n == 0:
        return verts, owners
    keep_v = [verts[0]]
    keep_o = [owners[0]]
    for k in range(1, n):
        if np.max(np.abs(verts[k] - keep_v[-1])) <= tol:
            # collapsed edge: the surviving edge out of this vertex wins
            keep_o[-1] = owners[k]
        else:
            keep_v.append(verts[k])
            keep_o.append(owners[k])
    while len(keep_v) > 1 and np.max(np.abs(keep_v[-1] - keep_v[0])) <= tol:
        keep_o[-2] = keep_o[-1]
        keep_v.pop()
        keep_o.pop()
    return np.array(keep_v), np.array(keep_o)


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss quadrature of a given polynomial exactness ``order``.

    1D regions use ``panels`` equal subintervals with a Gauss-Legendre rule
    each; polygons are fan-triangulated, each triangle split into panels^2
    subtriangles carrying a conical-product rule exact to ``order``.
    """

    order: int = 8
    panels: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("quadrature order must be >= 1")
        if self.panels < 1:
            raise ValueError("panel count must be >= 1")

    def with_panels(self, panels: int) -> "QuadratureRule":
        return QuadratureRule(self.order, panels)

    def reference_interval(self) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights on [0, 1]; weights sum to 1."""
        return _gauss01(_gauss_count(self.order))

    def reference_triangle(self) -> tuple[np.ndarray, np.ndarray]:
        """Nodes (Q, 2) and weights on the triangle (0,0),(1,0),(0,1); weights sum to 1/2."""
        return _triangle_rule(self.order)


def _gauss_count(order: int) -> int:
    # n-point Gauss is exact to degree 2n - 1
    return (order + 2) // 2


@lru_cache(maxsize=None)
def _gauss01(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(n)
    nodes = 0.5 * (x + 1.0)
    weights = 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@lru_cache(maxsize=None)
def _triangle_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Conical-product rule on the reference triangle, exact to ``order``.

    Collapsing y = eta * (1 - xi) turns the triangle integral into
    int_0^1 int_0^1 f(xi, eta(1-xi)) (1-xi) deta dxi; the (1-xi) factor is
    absorbed by a Gauss-Jacobi rule so an n x n grid is exact to 2n - 1.
    """
    n = _gauss_count(order)
    xj, wj = roots_jacobi(n, 1.0, 0.0)  # weight (1 - x) on [-1, 1]
    xi = 0.5 * (xj + 1.0)
    wxi = 0.25 * wj  # maps int_0^1 (1 - xi) f(xi) dxi
    eta, weta = _gauss01(n)
    XI, ETA = np.meshgrid(xi, eta, indexing="ij")
    pts = np.column_stack([XI.ravel(), (ETA * (1.0 - XI)).ravel()])
    wts = np.outer(wxi, weta).ravel()
    pts.setflags(write=False)
    wts.setflags(write=False)
    return pts, wts


@lru_cache(maxsize=None)
def _subtriangle_corners(panels: int) -> np.ndarray:
    """Reference-coordinate corners of the panels^2 uniform subtriangles."""
    p = panels
    tris = []
    for i in range(p):
        for j in range(p - i):
            a, b, c = (i, j), (i + 1, j), (i, j + 1)
            tris.append([a, b, c])
            if i + j < p - 1:
                d = (i + 1, j + 1)
                tris.append([b, d, c])
    arr = np.array(tris, dtype=float) / p
    arr.setflags(write=False)
    return arr


def _fan_triangles(verts: np.ndarray, panels: int) -> np.ndarray:
    """Triangulate a convex CCW polygon into (K, 3, 2) subdivided triangles."""
    n = len(verts)
    fans = np.stack(
        [np.repeat(verts[0][None, :], n - 2, axis=0), verts[1:-1], verts[2:]],
        axis=1,
    )
    if panels == 1:
        return fans
    sub = _subtriangle_corners(panels)  # (S, 3, 2) in reference coords
    a = fans[:, 0, :]
    e1 = fans[:, 1, :] - a
    e2 = fans[:, 2, :] - a
    # phys corner = a + xi * e1 + eta * e2 for each reference corner
    out = (
        a[:, None, None, :]
        + sub[None, :, :, 0, None] * e1[:, None, None, :]
        + sub[None, :, :, 1, None] * e2[:, None, None, :]
    )
    return out.reshape(-1, 3, 2)


def region_quadrature(region: ConvexRegion, rule: QuadratureRule) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature points (Q, d) and weights for integrals over ``region``."""
    if region.is_empty:
        return np.empty((0, region.dim)), np.empty(0)
    if region.dim == 1:
        a, b = region.bounds
        nodes, weights = rule.reference_interval()
        edges = np.linspace(a, b, rule.panels + 1)
        widths = np.diff(edges)
        pts = edges[:-1, None] + widths[:, None] * nodes[None, :]
        wts = widths[:, None] * weights[None, :]
        return pts.reshape(-1, 1), wts.ravel()
    tris = _fan_triangles(region.vertices, rule.panels)
    return _triangles_quadrature(tris, rule)


def _triangles_quadrature(tris: np.ndarray, rule: QuadratureRule) -> tuple[np.ndarray, np.ndarray]:
    ref_pts, ref_wts = rule.reference_triangle()
    a = tris[:, 0, :]
    e1 = tris[:, 1, :] - a
    e2 = tris[:, 2, :] - a
    jac = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]  # = 2 * signed area
    pts = (
        a[:, None, :]
        + ref_pts[None, :, 0, None] * e1[:, None, :]
        + ref_pts[None, :, 1, None] * e2[:, None, :]
    )
    wts = jac[:, None] * ref_wts[None, :]
    return pts.reshape(-1, 2), wts.ravel()


# ---------------------------------------------------------------------------
# Moments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegionMoments:
    """Mass, first moment, and raw second moment of a density over a region.

    ``second_raw`` stores int |y|^2 g(y) dy so the second moment about any
    center follows by exact algebra instead of re-quadrature.
    """

    mass: float
    first_moment: np.ndarray
    second_raw: float
    degenerate: bool = False

    def second_moment_about(self, center) -> float:
        c = np.asarray(center, dtype=float).reshape(-1)
        return self.second_raw - 2.0 * float(c @ self.first_moment) + float(c @ c) * self.mass

    @property
    def barycenter(self) -> np.ndarray:
        if self.mass <= 0.0:
            raise ValueError("barycenter undefined for a zero-mass region")
        return self.first_moment / self.mass


def polygon_moments(region: ConvexRegion, density: Density, rule: QuadratureRule) -> RegionMoments:
    """Quadrature moments of ``density`` over an interval or convex polygon."""
    if region.is_empty or region.measure <= 0.0:
        return RegionMoments(0.0, np.zeros(region.dim), 0.0, degenerate=True)
    pts, wts = region_quadrature(region, rule)
    g = np.asarray(density(pts), dtype=float)
    wg = wts * g
    mass = float(wg.sum())
    first = wg @ pts
    second = float(wg @ np.einsum("qd,qd->q", pts, pts))
    return RegionMoments(mass, first, second)


def batched_region_moments(
    regions: Sequence[ConvexRegion], density: Density, rule: QuadratureRule
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Moments of many regions with a single density evaluation.

    Returns (mass (N,), first_moment (N, d), second_raw (N,)); empty regions
    contribute zeros.
    """
    if not regions:
        raise ValueError("no regions given")
    dim = regions[0].dim
    pts_list, wts_list, idx_list = [], [], []
    for k, region in enumerate(regions):
        if region.is_empty or region.measure <= 0.0:
            continue
        pts, wts = region_quadrature(region, rule)
        pts_list.append(pts)
        wts_list.append(wts)
        idx_list.append(np.full(len(wts), k, dtype=np.int64))
    n = len(regions)
    if not pts_list:
        return np.zeros(n), np.zeros((n, dim)), np.zeros(n)
    pts = np.concatenate(pts_list)
    wts = np.concatenate(wts_list)
    idx = np.concatenate(idx_list)
    wg = wts * np.asarray(density(pts), dtype=float)
    mass = np.bincount(idx, weights=wg, minlength=n)
    first = np.stack(
        [np.bincount(idx, weights=wg * pts[:, d], minlength=n) for d in range(dim)],
        axis=1,
    )
    second = np.bincount(idx, weights=wg * np.einsum("qd,qd->q", pts, pts), minlength=n)
    return mass, first, second


def diameter(region: ConvexRegion) -> float:
    """Largest pairwise vertex distance; convexity makes this the diameter."""
    if region.is_empty:
        return 0.0
    if region.dim == 1:
        a, b = region.bounds
        return b - a
    if len(region.vertices) < 2:
        return 0.0
    return float(pdist(region.vertices).max())


def ellipse_moment_ratio(a1: float, a2: float) -> float:
    """Second moment of an ellipse about its center over |E| * diam(E)^2.

    For semi-axes a1, a2 the centered second moment is
    pi a1 a2 (a1^2 + a2^2) / 4, the area pi a1 a2, and the diameter twice the
    larger axis, so the ratio is (a1^2 + a2^2) / (16 max(a1, a2)^2) >= 1/16.
    """
    if a1 <= 0.0 or a2 <= 0.0:
        raise ValueError("ellipse semi-axes must be positive")
    amax = max(a1, a2)
    return (a1 * a1 + a2 * a2) / (16.0 * amax * amax)


# ---------------------------------------------------------------------------
# Power (Laguerre) cells
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerCell:
    """One cell of a power diagram plus its interfaces to neighboring cells.

    Each interface is ``(neighbor index, geometry)`` where the geometry is a
    (2, 2) segment for 2D cells and a scalar boundary position for intervals.
    """

    site_index: int
    region: ConvexRegion
    interfaces: tuple


def power_cells(
    sites: np.ndarray,
    weights: np.ndarray,
    support: ConvexRegion,
    prune: bool = True,
) -> list[PowerCell]:
    """Laguerre cells of ``sites`` for cost |x - y|^2 inside ``support``.

    Cell i collects the y with |y - x_i|^2 - w_i <= |y - x_j|^2 - w_j for all
    j; equal weights give the Voronoi diagram.  Cells are built by clipping
    the support against the separating half-planes site by site (O(N) planes
    per cell); with ``prune`` the scan stops once the remaining sites are too
    far to cut the current cell.
    """
    sites = as_point_array(sites, support.dim)
    weights = np.asarray(weights, dtype=float).reshape(-1)
    if len(weights) != len(sites):
        raise ValueError("site and weight counts differ")
    # separating plane of (i, j): (x_j - x_i) . y <= phi_j - phi_i
    phi = 0.5 * (np.einsum("nd,nd->n", sites, sites) - weights)
    if support.dim == 1:
        return _power_cells_1d(sites, phi, support)
    return _power_cells_2d(sites, phi, weights, support, prune)


def _power_cells_1d(sites, phi, support):
    a0, b0 = support.bounds
    x = sites[:, 0]
    cells = []
    for i in range(len(x)):
        dx = x - x[i]
        dphi = phi - phi[i]
        with np.errstate(divide="ignore", invalid="ignore"):
            bound = dphi / dx
        right = dx > 0
        left = dx < 0
        lo, hi = a0, b0
        owner_lo = owner_hi = -1
        if right.any():
            hi_candidates = bound[right]
            j_hi = np.flatnonzero(right)[np.argmin(hi_candidates)]
            if hi_candidates.min() < hi:
                hi, owner_hi = float(hi_candidates.min()), int(j_hi)
        if left.any():
            lo_candidates = bound[left]
            j_lo = np.flatnonzero(left)[np.argmax(lo_candidates)]
            if lo_candidates.max() > lo:
                lo, owner_lo = float(lo_candidates.max()), int(j_lo)
        if lo >= hi:
            cells.append(PowerCell(i, ConvexRegion.empty(1), ()))
            continue
        interfaces = []
        if owner_lo >= 0:
            interfaces.append((owner_lo, lo))
        if owner_hi >= 0:
            interfaces.append((owner_hi, hi))
        cells.append(PowerCell(i, ConvexRegion.interval(lo, hi), tuple(interfaces)))
    return cells


def _power_cells_2d(sites, phi, weights, support, prune):
    n = len(sites)
    wmax = weights.max() if n else 0.0
    d2_all = (
        np.einsum("nd,nd->n", sites, sites)[None, :]
        - 2.0 * sites @ sites.T
        + np.einsum("nd,nd->n", sites, sites)[:, None]
    )
    cells = []
    for i in range(n):
        order = np.argsort(d2_all[i], kind="stable")
        verts = support.vertices
        owners = np.full(len(verts), -1, dtype=int)
        xi = sites[i]
        radius = float(np.sqrt(np.max(np.einsum("vd,vd->v", verts - xi, verts - xi))))
        # site j cannot cut once |d|^2 - 2 |d| R >= w_j - w_i, so with d sorted
        # ascending the scan may stop at |d| >= R + sqrt(R^2 + slack)
        slack = max(wmax - weights[i], 0.0)
        empty = False
        for j in order:
            if j == i:
                continue
            dist = float(np.sqrt(d2_all[i, j]))
            if prune and dist >= radius + np.sqrt(radius * radius + slack):
                break
            normal = sites[j] - xi
            offset = phi[j] - phi[i]
            s = verts @ normal - offset
            if s.max() <= GEOM_TOL:
                continue
            verts, owners = _clip_polygon(verts, owners, normal, offset, new_owner=int(j))
            if verts is None:
                empty = True
                break
            radius = float(np.sqrt(np.max(np.einsum("vd,vd->v", verts - xi, verts - xi))))
        if empty:
            cells.append(PowerCell(i, ConvexRegion.empty(2), ()))
            continue
        region = ConvexRegion(2, verts)
        interfaces = []
        nv = len(verts)
        for k in range(nv):
            if owners[k] >= 0:
                seg = np.array([verts[k], verts[(k + 1) % nv]])
                interfaces.append((int(owners[k]), seg))
        cells.append(PowerCell(i, region, tuple(interfaces)))
    return cells


def interface_density_integrals(
    cells: Sequence[PowerCell], density: Density, order: int = 8
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Density integrals along every cell interface.

    Returns (cell index, neighbor index, value) arrays with one row per
    listed interface.  2D interfaces get a Gauss line integral of ``density``
    over the segment; 1D interfaces are points, where the value is the
    density there.
    """
    rows, cols, geoms = [], [], []
    for cell in cells:
        for j, geom in cell.interfaces:
            rows.append(cell.site_index)
            cols.append(j)
            geoms.append(geom)
    if not rows:
        return np.empty(0, int), np.empty(0, int), np.empty(0)
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    first = geoms[0]
    if np.isscalar(first) or np.ndim(first) == 0:
        pts = np.asarray(geoms, dtype=float).reshape(-1, 1)
        vals = np.asarray(density(pts), dtype=float)
        return rows, cols, vals
    segs = np.asarray(geoms, dtype=float)  # (E, 2, 2)
    nodes, wts = _gauss01(_gauss_count(order))
    pts = segs[:, 0, None, :] + nodes[None, :, None] * (segs[:, 1] - segs[:, 0])[:, None, :]
    lengths = np.linalg.norm(segs[:, 1] - segs[:, 0], axis=1)
    g = np.asarray(density(pts.reshape(-1, 2)), dtype=float).reshape(len(segs), -1)
    vals = lengths * (g @ wts)
    return rows, cols, vals
