"""Parametric surface charts and their discrete geometry.

A chart is a map from a rectangle in (u, v) to R^3 sampled on a uniform grid,
optionally periodic per direction.  ``compute_geometry`` populates the full
classical package: coordinate tangents, Gram-Schmidt orthonormal frame
(e1, e2, N) with N = x_u x x_v / |.|, metric, the shape form II(X) = grad_X N
expressed in the frame, mean curvature H = tr(II)/2, Gauss curvature
G = det(II), the connection coefficient w12(X) = <grad_X e1, e2> entering the
spin connection, and the area element.

With analytic first and second chart derivatives every geometric field is
evaluated in closed form per node, so discretization error enters only when
fields are differenced later.  In finite-difference mode the chart positions
are differenced with second-order stencils.

An intrinsic constructor builds the same structure from metric components
alone (no ambient data); it backs conformal rescaling of a chart metric.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import stencils
from .errors import DegenerateImmersion, NonPositiveFactor

_DEGENERATE_TOL = 1e-12


@dataclass
class ChartSpec:
    """A parametrized patch: domain rectangle, resolution, and the map."""

    name: str
    domain: tuple  # (u0, u1, v0, v1)
    shape: tuple  # (n_u, n_v)
    periodic_u: bool = False
    periodic_v: bool = False
    immersion: Optional[Callable] = None  # (U, V) -> (..., 3)
    d1: Optional[Callable] = None  # (U, V) -> (x_u, x_v)
    d2: Optional[Callable] = None  # (U, V) -> (x_uu, x_uv, x_vv)
    positions: Optional[np.ndarray] = None  # precomputed (n_u, n_v, 3)

    def __post_init__(self):
        n, m = self.shape
        if n < 8 or m < 8:
            raise ValueError(f"chart resolution must be at least 8x8, got {self.shape}")
        if self.immersion is None and self.positions is None:
            raise ValueError("chart needs an immersion map or precomputed positions")

    def axes(self):
        u0, u1, v0, v1 = self.domain
        n, m = self.shape
        u = u0 + (u1 - u0) * np.arange(n) / (n if self.periodic_u else n - 1)
        v = v0 + (v1 - v0) * np.arange(m) / (m if self.periodic_v else m - 1)
        return u, v

    def spacing(self):
        u, v = self.axes()
        return float(u[1] - u[0]), float(v[1] - v[0])

    def grid(self):
        u, v = self.axes()
        return np.meshgrid(u, v, indexing="ij")

    def sample(self):
        if self.positions is not None:
            return np.asarray(self.positions, dtype=float)
        U, V = self.grid()
        return np.asarray(self.immersion(U, V), dtype=float)


@dataclass
class GeometryField:
    """Per-node geometric data of a chart (or of a bare metric)."""

    name: str
    u: np.ndarray
    v: np.ndarray
    hu: float
    hv: float
    periodic_u: bool
    periodic_v: bool
    g: np.ndarray  # (n, m, 2, 2) metric in coordinates
    ginv: np.ndarray
    dg: np.ndarray  # (n, m, 2, 2, 2): dg[..., c, a, b] = d_c g_ab
    sqrtg: np.ndarray
    frame_coeff: np.ndarray  # (n, m, 2, 2): e_j = sum_a frame_coeff[j, a] d_a
    coord_in_frame: np.ndarray  # (n, m, 2, 2): [a, k] = g(d_a, e_k)
    omega12: np.ndarray  # (n, m, 2): values on (e1, e2)
    pos: Optional[np.ndarray] = None
    x_u: Optional[np.ndarray] = None
    x_v: Optional[np.ndarray] = None
    e1: Optional[np.ndarray] = None
    e2: Optional[np.ndarray] = None
    N: Optional[np.ndarray] = None
    II: Optional[np.ndarray] = None  # (n, m, 2, 2) bilinear <grad_{e_j} N, e_k>
    H: Optional[np.ndarray] = None
    G: Optional[np.ndarray] = None
    asym_II: float = 0.0
    chart: Optional[ChartSpec] = None

    @property
    def shape(self):
        return self.g.shape[:2]

    @property
    def dA(self):
        return self.sqrtg

    def d_u(self, f, wrap_sign=1.0):
        return stencils.diff(f, 0, self.hu, self.periodic_u, wrap_sign)

    def d_v(self, f, wrap_sign=1.0):
        return stencils.diff(f, 1, self.hv, self.periodic_v, wrap_sign)

    def frame_d(self, f):
        """Directional derivatives (e1(f), e2(f)) of a scalar/tensor field."""
        fu, fv = self.d_u(f), self.d_v(f)
        A = self.frame_coeff
        extra = f.ndim - 2 if hasattr(f, "ndim") else 0
        sl = (...,) + (None,) * extra
        e1f = A[..., 0, 0][sl] * fu + A[..., 0, 1][sl] * fv
        e2f = A[..., 1, 0][sl] * fu + A[..., 1, 1][sl] * fv
        return e1f, e2f

    def interior(self, margin=1):
        return stencils.interior_mask(self.shape, self.periodic_u, self.periodic_v, margin)

    def rotation_field(self):
        """Per-node rotation with columns (e1, e2, N) in ambient coordinates."""
        if self.e1 is None:
            raise ValueError("intrinsic geometry carries no ambient frame")
        return np.stack([self.e1, self.e2, self.N], axis=-1)


def _cross(a, b):
    return np.cross(a, b)


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def _normalize(a):
    return a / np.linalg.norm(a, axis=-1, keepdims=True)


def compute_geometry(chart: ChartSpec, mode: str = "analytic") -> GeometryField:
    """Evaluate the full geometric package of a chart.

    mode "analytic" uses the chart's closed-form derivatives (required); mode
    "fd" differences the sampled positions with second-order stencils.
    Raises DegenerateImmersion when the Jacobian drops rank at a node.
    """
    if mode not in ("analytic", "fd"):
        raise ValueError(f"unknown derivative mode {mode!r}")
    u, v = chart.axes()
    hu, hv = chart.spacing()
    U, V = chart.grid()
    pos = chart.sample()

    if mode == "analytic":
        if chart.d1 is None or chart.d2 is None:
            raise ValueError(f"chart {chart.name!r} has no analytic derivatives")
        x_u, x_v = (np.asarray(a, dtype=float) for a in chart.d1(U, V))
        x_uu, x_uv, x_vv = (np.asarray(a, dtype=float) for a in chart.d2(U, V))
    else:
        du = lambda f: stencils.diff(f, 0, hu, chart.periodic_u)
        dv = lambda f: stencils.diff(f, 1, hv, chart.periodic_v)
        x_u, x_v = du(pos), dv(pos)
        x_uu, x_uv, x_vv = du(x_u), dv(x_u), dv(x_v)

    cross = _cross(x_u, x_v)
    cross_norm = np.linalg.norm(cross, axis=-1)
    scale = 0.5 * (_dot(x_u, x_u) + _dot(x_v, x_v))
    if np.min(cross_norm) <= _DEGENERATE_TOL * np.max(scale):
        bad = np.unravel_index(np.argmin(cross_norm), cross_norm.shape)
        raise DegenerateImmersion(f"chart {chart.name!r} is rank-deficient at node {bad}")

    N = cross / cross_norm[..., None]
    nu = np.linalg.norm(x_u, axis=-1)
    e1 = x_u / nu[..., None]
    p = _dot(x_v, e1)
    e2t = x_v - p[..., None] * e1
    q = np.linalg.norm(e2t, axis=-1)
    e2 = e2t / q[..., None]

    # e1 = (1/|x_u|) d_u ; e2 = (-p/(|x_u| q)) d_u + (1/q) d_v
    A = np.zeros(pos.shape[:2] + (2, 2))
    A[..., 0, 0] = 1.0 / nu
    A[..., 1, 0] = -p / (nu * q)
    A[..., 1, 1] = 1.0 / q

    C = np.zeros_like(A)
    C[..., 0, 0] = _dot(x_u, e1)
    C[..., 0, 1] = _dot(x_u, e2)
    C[..., 1, 0] = _dot(x_v, e1)
    C[..., 1, 1] = _dot(x_v, e2)

    g = np.zeros_like(A)
    g[..., 0, 0] = _dot(x_u, x_u)
    g[..., 0, 1] = g[..., 1, 0] = _dot(x_u, x_v)
    g[..., 1, 1] = _dot(x_v, x_v)
    detg = g[..., 0, 0] * g[..., 1, 1] - g[..., 0, 1] ** 2
    ginv = np.empty_like(g)
    ginv[..., 0, 0] = g[..., 1, 1] / detg
    ginv[..., 1, 1] = g[..., 0, 0] / detg
    ginv[..., 0, 1] = ginv[..., 1, 0] = -g[..., 0, 1] / detg
    sqrtg = cross_norm

    if mode == "analytic":
        dN_u = _d_unit(cross, _cross(x_uu, x_v) + _cross(x_u, x_uv))
        dN_v = _d_unit(cross, _cross(x_uv, x_v) + _cross(x_u, x_vv))
        de1_u = _d_unit(x_u, x_uu)
        de1_v = _d_unit(x_u, x_uv)
        dg = np.empty(pos.shape[:2] + (2, 2, 2))
        seconds = {(0, 0): x_uu, (0, 1): x_uv, (1, 0): x_uv, (1, 1): x_vv}
        firsts = {0: x_u, 1: x_v}
        for c in range(2):
            for a in range(2):
                for b in range(2):
                    dg[..., c, a, b] = _dot(seconds[(a, c)], firsts[b]) + _dot(
                        firsts[a], seconds[(b, c)]
                    )
    else:
        du = lambda f: stencils.diff(f, 0, hu, chart.periodic_u)
        dv = lambda f: stencils.diff(f, 1, hv, chart.periodic_v)
        dN_u, dN_v = du(N), dv(N)
        de1_u, de1_v = du(e1), dv(e1)
        dg = np.stack([du(g), dv(g)], axis=2)

    def frame_dir(f_u, f_v, j):
        return A[..., j, 0, None] * f_u + A[..., j, 1, None] * f_v

    II = np.zeros_like(A)
    for j in range(2):
        dN_j = frame_dir(dN_u, dN_v, j)
        II[..., j, 0] = _dot(dN_j, e1)
        II[..., j, 1] = _dot(dN_j, e2)
    asym = float(np.max(np.abs(II[..., 0, 1] - II[..., 1, 0])))
    H = 0.5 * (II[..., 0, 0] + II[..., 1, 1])
    G = II[..., 0, 0] * II[..., 1, 1] - II[..., 0, 1] * II[..., 1, 0]

    omega12 = np.zeros(pos.shape[:2] + (2,))
    for j in range(2):
        de1_j = frame_dir(de1_u, de1_v, j)
        omega12[..., j] = _dot(de1_j, e2)

    return GeometryField(
        name=chart.name,
        u=u,
        v=v,
        hu=hu,
        hv=hv,
        periodic_u=chart.periodic_u,
        periodic_v=chart.periodic_v,
        g=g,
        ginv=ginv,
        dg=dg,
        sqrtg=sqrtg,
        frame_coeff=A,
        coord_in_frame=C,
        omega12=omega12,
        pos=pos,
        x_u=x_u,
        x_v=x_v,
        e1=e1,
        e2=e2,
        N=N,
        II=II,
        H=H,
        G=G,
        asym_II=asym,
        chart=chart,
    )


def _d_unit(w, dw):
    """Derivative of w/|w| given w and dw."""
    wn = np.linalg.norm(w, axis=-1, keepdims=True)
    return dw / wn - w * np.sum(w * dw, axis=-1, keepdims=True) / wn**3


def intrinsic_geometry(u, v, g, dg, periodic_u, periodic_v, name="metric"):
    """Geometry of a bare metric on a coordinate rectangle.

    g is the (n, m, 2, 2) coordinate metric, dg its coordinate derivatives
    (dg[..., c, a, b] = d_c g_ab, supplied in closed form or pre-differenced).
    The orthonormal frame is the Gram-Schmidt frame of (d_u, d_v) and the
    connection coefficient is assembled from Christoffel symbols, so no
    ambient immersion is involved.
    """
    g = np.asarray(g, dtype=float)
    dg = np.asarray(dg, dtype=float)
    g11, g12, g22 = g[..., 0, 0], g[..., 0, 1], g[..., 1, 1]
    detg = g11 * g22 - g12**2
    if np.min(detg) <= 0:
        raise NonPositiveFactor("metric is not positive definite")
    ginv = np.empty_like(g)
    ginv[..., 0, 0] = g22 / detg
    ginv[..., 1, 1] = g11 / detg
    ginv[..., 0, 1] = ginv[..., 1, 0] = -g12 / detg
    sqrtg = np.sqrt(detg)

    rn = np.sqrt(g11)
    q = np.sqrt(g22 - g12**2 / g11)
    A = np.zeros(g.shape)
    A[..., 0, 0] = 1.0 / rn
    A[..., 1, 0] = -g12 / (g11 * q)
    A[..., 1, 1] = 1.0 / q

    C = np.einsum("...ab,...kb->...ak", g, A)

    # Gamma^k_ab = 1/2 g^{kl} (d_a g_bl + d_b g_al - d_l g_ab)
    gamma = np.zeros(g.shape[:2] + (2, 2, 2))
    for k in range(2):
        for a in range(2):
            for b in range(2):
                s = 0.0
                for l in range(2):
                    s = s + ginv[..., k, l] * (
                        dg[..., a, b, l] + dg[..., b, a, l] - dg[..., l, a, b]
                    )
                gamma[..., k, a, b] = 0.5 * s

    # omega12(e_j) = g(grad_{e_j} e1, e2).  e1 has the single coordinate
    # component V^u = 1/sqrt(g11), whose gradient is closed form in dg, so no
    # finite differencing enters here.
    dVu = -0.5 * g11[..., None] ** (-1.5) * dg[..., :, 0, 0]  # (..., c)
    gW = np.einsum("...kl,...l->...k", g, A[..., 1, :])  # g_{kl} e2^l
    omega12 = np.zeros(g.shape[:2] + (2,))
    for j in range(2):
        ej = A[..., j, :]
        term1 = np.einsum("...a,...a->...", ej, dVu) * C[..., 0, 1]
        term2 = A[..., 0, 0] * np.einsum("...a,...ka,...k->...", ej, gamma[..., :, :, 0], gW)
        omega12[..., j] = term1 + term2

    return GeometryField(
        name=name,
        u=np.asarray(u, dtype=float),
        v=np.asarray(v, dtype=float),
        hu=float(u[1] - u[0]),
        hv=float(v[1] - v[0]),
        periodic_u=periodic_u,
        periodic_v=periodic_v,
        g=g,
        ginv=ginv,
        dg=dg,
        sqrtg=sqrtg,
        frame_coeff=A,
        coord_in_frame=C,
        omega12=omega12,
    )


def conformal_rescale(geom: GeometryField, sigma, dsigma=None):
    """Intrinsic geometry of the rescaled metric sigma * g.

    sigma is a strictly positive per-node factor; dsigma, when given, is the
    pair (d_u sigma, d_v sigma) in closed form, otherwise finite differences
    of sigma are used.
    """
    sigma = np.asarray(sigma, dtype=float)
    if np.min(sigma) <= 0:
        raise NonPositiveFactor("conformal factor must be strictly positive")
    if dsigma is None:
        ds = np.stack(
            [
                stencils.diff(sigma, 0, geom.hu, geom.periodic_u),
                stencils.diff(sigma, 1, geom.hv, geom.periodic_v),
            ],
            axis=-1,
        )
    else:
        ds = np.stack([np.asarray(d, dtype=float) for d in dsigma], axis=-1)

    gt = sigma[..., None, None] * geom.g
    dgt = np.empty_like(geom.dg)
    for c in range(2):
        dgt[..., c, :, :] = (
            ds[..., c][..., None, None] * geom.g + sigma[..., None, None] * geom.dg[..., c, :, :]
        )
    return intrinsic_geometry(
        geom.u, geom.v, gt, dgt, geom.periodic_u, geom.periodic_v, name=geom.name + "~"
    )


def laplace_beltrami(f, geom: GeometryField):
    """Laplacian with nonnegative spectrum (geometer's sign): Delta(z) = 2z on S^2.

    Assembled in the orthonormal frame:
    Delta f = -[e1(e1 f) + e2(e2 f) - w12(e1) e2(f) + w12(e2) e1(f)].
    """
    e1f, e2f = geom.frame_d(f)
    e11, _ = geom.frame_d(e1f)
    _, e22 = geom.frame_d(e2f)
    w1, w2 = geom.omega12[..., 0], geom.omega12[..., 1]
    return -(e11 + e22 - w1 * e2f + w2 * e1f)


@dataclass
class TwoFormField:
    """A 2-form as a density against the area element, resampled at nodes."""

    density: np.ndarray
    cell_density: np.ndarray


def exterior_d(omega, geom: GeometryField) -> TwoFormField:
    """Discrete exterior derivative of a 1-form given by values on (e1, e2).

    Per grid cell the circulation of omega around the cell boundary (trapezoid
    per edge) is divided by the cell area; the cell values are then averaged
    back to nodes.  Works for real or complex coefficient fields.
    """
    omega = np.asarray(omega)
    C = geom.coord_in_frame
    w_u = C[..., 0, 0] * omega[..., 0] + C[..., 0, 1] * omega[..., 1]
    w_v = C[..., 1, 0] * omega[..., 0] + C[..., 1, 1] * omega[..., 1]

    def wrap(f, axis):
        first = np.take(f, [0], axis=axis)
        return np.concatenate([f, first], axis=axis)

    if geom.periodic_u:
        w_u, w_v = wrap(w_u, 0), wrap(w_v, 0)
    if geom.periodic_v:
        w_u = wrap(w_u, 1)
        w_v = wrap(w_v, 1)
    hu, hv = geom.hu, geom.hv

    bottom = 0.5 * (w_u[:-1, :-1] + w_u[1:, :-1]) * hu
    top = 0.5 * (w_u[:-1, 1:] + w_u[1:, 1:]) * hu
    left = 0.5 * (w_v[:-1, :-1] + w_v[:-1, 1:]) * hv
    right = 0.5 * (w_v[1:, :-1] + w_v[1:, 1:]) * hv
    circ = bottom + right - top - left

    sg = geom.sqrtg
    if geom.periodic_u:
        sg = wrap(sg, 0)
    if geom.periodic_v:
        sg = wrap(sg, 1)
    cell_area = 0.25 * (sg[:-1, :-1] + sg[1:, :-1] + sg[:-1, 1:] + sg[1:, 1:]) * hu * hv
    cell = circ / cell_area

    n, m = geom.shape
    acc = np.zeros((n, m), dtype=cell.dtype)
    cnt = np.zeros((n, m))
    nc, mc = cell.shape
    for di in (0, 1):
        for dj in (0, 1):
            ii = (np.arange(nc) + di) % n if geom.periodic_u else np.arange(nc) + di
            jj = (np.arange(mc) + dj) % m if geom.periodic_v else np.arange(mc) + dj
            np.add.at(acc, np.ix_(ii, jj), cell)
            np.add.at(cnt, np.ix_(ii, jj), 1.0)
    return TwoFormField(density=acc / cnt, cell_density=cell)


def quadrature(density, geom: GeometryField) -> float:
    """Integral of a 2-form density against the area element.

    Product rule with per-direction weights: plain uniform weights on periodic
    directions, Gregory end-corrected trapezoid otherwise.
    """
    n, m = geom.shape
    wu = stencils.line_weights(n, geom.hu, geom.periodic_u)
    wv = stencils.line_weights(m, geom.hv, geom.periodic_v)
    return float(np.einsum("i,j,ij->", wu, wv, np.asarray(density) * geom.sqrtg))


def induced_metric(points, geom: GeometryField):
    """First fundamental form of a point grid, differenced on geom's axes."""
    p_u = geom.d_u(points)
    p_v = geom.d_v(points)
    g = np.empty(points.shape[:2] + (2, 2))
    g[..., 0, 0] = _dot(p_u, p_u)
    g[..., 0, 1] = g[..., 1, 0] = _dot(p_u, p_v)
    g[..., 1, 1] = _dot(p_v, p_v)
    return g


# ---------------------------------------------------------------------------
# Chart presets
# ---------------------------------------------------------------------------


def plane(shape=(32, 32), extent=1.0):
    f = lambda U, V: np.stack([U, V, np.zeros_like(U)], axis=-1)
    d1 = lambda U, V: (
        np.stack([np.ones_like(U), np.zeros_like(U), np.zeros_like(U)], axis=-1),
        np.stack([np.zeros_like(U), np.ones_like(U), np.zeros_like(U)], axis=-1),
    )
    zero3 = lambda U: np.zeros(U.shape + (3,))
    d2 = lambda U, V: (zero3(U), zero3(U), zero3(U))
    return ChartSpec("plane", (-extent, extent, -extent, extent), shape, False, False, f, d1, d2)


def flat_torus(shape=(32, 32)):
    base = plane(shape)
    return ChartSpec(
        "flat_torus", (0.0, 2 * np.pi, 0.0, 2 * np.pi), shape, True, True, base.immersion, base.d1, base.d2
    )


def sphere(shape=(32, 64), radius=1.0, cap=0.1):
    """Round sphere, polar angle u in [cap, pi-cap], azimuth v periodic.

    Outward normal: N = x/r, so II = Id/r, H = 1/r, G = 1/r^2.
    """
    r = float(radius)

    def f(U, V):
        return r * np.stack([np.sin(U) * np.cos(V), np.sin(U) * np.sin(V), np.cos(U)], axis=-1)

    def d1(U, V):
        x_u = r * np.stack([np.cos(U) * np.cos(V), np.cos(U) * np.sin(V), -np.sin(U)], axis=-1)
        x_v = r * np.stack([-np.sin(U) * np.sin(V), np.sin(U) * np.cos(V), np.zeros_like(U)], axis=-1)
        return x_u, x_v

    def d2(U, V):
        x_uu = -f(U, V)
        x_uv = r * np.stack([-np.cos(U) * np.sin(V), np.cos(U) * np.cos(V), np.zeros_like(U)], axis=-1)
        x_vv = r * np.stack([-np.sin(U) * np.cos(V), -np.sin(U) * np.sin(V), np.zeros_like(U)], axis=-1)
        return x_uu, x_uv, x_vv

    return ChartSpec("sphere", (cap, np.pi - cap, 0.0, 2 * np.pi), shape, False, True, f, d1, d2)


def sphere_patch(shape=(32, 32), radius=1.0, polar=(0.35, np.pi - 0.35), azimuth=(0.25, 2 * np.pi - 0.25)):
    """Simply connected piece of the sphere (both directions non-periodic)."""
    s = sphere(shape, radius=radius)
    return ChartSpec(
        "sphere_patch", (polar[0], polar[1], azimuth[0], azimuth[1]), shape, False, False, s.immersion, s.d1, s.d2
    )


def catenoid(shape=(32, 32), vrange=(-1.2, 1.2)):
    def f(U, V):
        return np.stack([np.cosh(V) * np.cos(U), np.cosh(V) * np.sin(U), V], axis=-1)

    def d1(U, V):
        x_u = np.stack([-np.cosh(V) * np.sin(U), np.cosh(V) * np.cos(U), np.zeros_like(U)], axis=-1)
        x_v = np.stack([np.sinh(V) * np.cos(U), np.sinh(V) * np.sin(U), np.ones_like(U)], axis=-1)
        return x_u, x_v

    def d2(U, V):
        x_uu = np.stack([-np.cosh(V) * np.cos(U), -np.cosh(V) * np.sin(U), np.zeros_like(U)], axis=-1)
        x_uv = np.stack([-np.sinh(V) * np.sin(U), np.sinh(V) * np.cos(U), np.zeros_like(U)], axis=-1)
        x_vv = np.stack([np.cosh(V) * np.cos(U), np.cosh(V) * np.sin(U), np.zeros_like(U)], axis=-1)
        return x_uu, x_uv, x_vv

    return ChartSpec("catenoid", (0.0, 2 * np.pi, vrange[0], vrange[1]), shape, True, False, f, d1, d2)


def helicoid(shape=(32, 32), extent=1.0):
    def f(U, V):
        return np.stack([np.sinh(V) * np.cos(U), np.sinh(V) * np.sin(U), U], axis=-1)

    def d1(U, V):
        x_u = np.stack([-np.sinh(V) * np.sin(U), np.sinh(V) * np.cos(U), np.ones_like(U)], axis=-1)
        x_v = np.stack([np.cosh(V) * np.cos(U), np.cosh(V) * np.sin(U), np.zeros_like(U)], axis=-1)
        return x_u, x_v

    def d2(U, V):
        x_uu = np.stack([-np.sinh(V) * np.cos(U), -np.sinh(V) * np.sin(U), np.zeros_like(U)], axis=-1)
        x_uv = np.stack([-np.cosh(V) * np.sin(U), np.cosh(V) * np.cos(U), np.zeros_like(U)], axis=-1)
        x_vv = np.stack([np.sinh(V) * np.cos(U), np.sinh(V) * np.sin(U), np.zeros_like(U)], axis=-1)
        return x_uu, x_uv, x_vv

    return ChartSpec("helicoid", (-extent, extent, -extent, extent), shape, False, False, f, d1, d2)


def enneper(shape=(32, 32), extent=1.0):
    def f(U, V):
        return np.stack(
            [U - U**3 / 3 + U * V**2, -V + V**3 / 3 - U**2 * V, U**2 - V**2], axis=-1
        )

    def d1(U, V):
        x_u = np.stack([1 - U**2 + V**2, -2 * U * V, 2 * U], axis=-1)
        x_v = np.stack([2 * U * V, -1 + V**2 - U**2, -2 * V], axis=-1)
        return x_u, x_v

    def d2(U, V):
        one = np.ones_like(U)
        x_uu = np.stack([-2 * U, -2 * V, 2 * one], axis=-1)
        x_uv = np.stack([2 * V, -2 * U, np.zeros_like(U)], axis=-1)
        x_vv = np.stack([2 * U, 2 * V, -2 * one], axis=-1)
        return x_uu, x_uv, x_vv

    return ChartSpec("enneper", (-extent, extent, -extent, extent), shape, False, False, f, d1, d2)


def graph_bump(shape=(32, 32), extent=1.0, amp=0.3):
    """Graph z = amp*sin(u+0.3)*cos(1.3 v): generic non-minimal test surface."""

    def h(U, V):
        return amp * np.sin(U + 0.3) * np.cos(1.3 * V)

    def f(U, V):
        return np.stack([U, V, h(U, V)], axis=-1)

    def d1(U, V):
        hu = amp * np.cos(U + 0.3) * np.cos(1.3 * V)
        hv = -1.3 * amp * np.sin(U + 0.3) * np.sin(1.3 * V)
        one, zero = np.ones_like(U), np.zeros_like(U)
        return (np.stack([one, zero, hu], axis=-1), np.stack([zero, one, hv], axis=-1))

    def d2(U, V):
        zero = np.zeros_like(U)
        huu = -amp * np.sin(U + 0.3) * np.cos(1.3 * V)
        huv = -1.3 * amp * np.cos(U + 0.3) * np.sin(1.3 * V)
        hvv = -1.69 * amp * np.sin(U + 0.3) * np.cos(1.3 * V)
        return (
            np.stack([zero, zero, huu], axis=-1),
            np.stack([zero, zero, huv], axis=-1),
            np.stack([zero, zero, hvv], axis=-1),
        )

    return ChartSpec("graph_bump", (-extent, extent, -extent, extent), shape, False, False, f, d1, d2)


PRESETS = {
    "plane": plane,
    "flat_torus": flat_torus,
    "sphere": sphere,
    "sphere_patch": sphere_patch,
    "catenoid": catenoid,
    "helicoid": helicoid,
    "enneper": enneper,
    "graph_bump": graph_bump,
}


def make_chart(name, shape, **params):
    if name not in PRESETS:
        raise KeyError(f"unknown chart preset {name!r}; known: {sorted(PRESETS)}")
    return PRESETS[name](shape=tuple(shape), **params)
