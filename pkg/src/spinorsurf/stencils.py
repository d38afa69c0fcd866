"""Finite-difference stencils and quadrature weights on uniform grids.

All derivative operators are second order: central differences in the
interior, one-sided three-point stencils at non-periodic boundaries.  Periodic
directions wrap; a wrap factor of -1 supports antiperiodic spinor components
(the seam sign of the SU(2) gauge).
"""

import numpy as np


def diff(f, axis, h, periodic=False, wrap_sign=1.0):
    """First derivative of a sampled field along ``axis``."""
    f = np.asarray(f)
    fp = np.roll(f, -1, axis=axis)
    fm = np.roll(f, 1, axis=axis)
    if periodic and wrap_sign != 1.0:
        fp = _scale_slice(fp, axis, -1, wrap_sign)
        fm = _scale_slice(fm, axis, 0, wrap_sign)
    out = (fp - fm) / (2.0 * h)
    if not periodic:
        out = _one_sided(out, f, axis, h)
    return out


def _scale_slice(f, axis, index, factor):
    f = f.copy()
    sl = [slice(None)] * f.ndim
    sl[axis] = index
    f[tuple(sl)] = factor * f[tuple(sl)]
    return f


def _one_sided(out, f, axis, h):
    out = out.copy()
    n = f.shape[axis]
    if n < 3:
        raise ValueError("need at least 3 nodes for one-sided stencils")

    def take(i):
        sl = [slice(None)] * f.ndim
        sl[axis] = i
        return f[tuple(sl)]

    def put(i, val):
        sl = [slice(None)] * f.ndim
        sl[axis] = i
        out[tuple(sl)] = val

    put(0, (-3.0 * take(0) + 4.0 * take(1) - take(2)) / (2.0 * h))
    put(n - 1, (3.0 * take(n - 1) - 4.0 * take(n - 2) + take(n - 3)) / (2.0 * h))
    return out


def interior_mask(shape, periodic_u, periodic_v, margin=1):
    """Boolean mask excluding ``margin`` layers at every non-periodic edge."""
    n, m = shape
    mask = np.ones((n, m), dtype=bool)
    if margin > 0:
        if not periodic_u:
            mask[:margin, :] = False
            mask[-margin:, :] = False
        if not periodic_v:
            mask[:, :margin] = False
            mask[:, -margin:] = False
    return mask


def band_mask(u, v, periodic_u, periodic_v, frac=0.1, margin=1):
    """Mask excluding a fixed parameter collar at non-periodic edges.

    Unlike a node-count margin, the excluded band has grid-independent width
    (``frac`` of the side length, but at least ``margin`` nodes), so sup norms
    taken over it are comparable across refinements: convergence orders are
    then measured on one and the same compact region.
    """
    u, v = np.asarray(u), np.asarray(v)
    mask = np.ones((u.size, v.size), dtype=bool)
    if not periodic_u:
        lo = u[0] + frac * (u[-1] - u[0])
        hi = u[-1] - frac * (u[-1] - u[0])
        keep = (u >= lo) & (u <= hi)
        keep[:margin] = False
        keep[-margin:] = False
        mask &= keep[:, None]
    if not periodic_v:
        lo = v[0] + frac * (v[-1] - v[0])
        hi = v[-1] - frac * (v[-1] - v[0])
        keep = (v >= lo) & (v <= hi)
        keep[:margin] = False
        keep[-margin:] = False
        mask &= keep[None, :]
    return mask


def sup_norm(field, mask=None):
    """Sup norm over masked nodes; complex and multi-component fields allowed."""
    a = np.abs(np.asarray(field))
    while a.ndim > 2:
        a = a.max(axis=-1)
    if mask is not None:
        a = a[mask]
    return float(np.max(a))


# Gregory end-corrected trapezoid: global error O(h^4) on smooth integrands.
_GREGORY_EDGE = np.array([3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0])


def line_weights(n, h, periodic=False):
    """Quadrature weights for n uniformly spaced nodes with spacing h.

    Periodic directions use the plain (spectrally accurate) uniform rule with
    the identified endpoint excluded from the node set.  Non-periodic
    directions use the trapezoid rule with third-order Gregory end corrections.
    """
    if periodic:
        return np.full(n, h)
    w = np.full(n, h)
    if n >= 7:
        w[:3] = _GREGORY_EDGE * h
        w[-3:] = _GREGORY_EDGE[::-1] * h
    else:
        w[0] = w[-1] = 0.5 * h
    return w


def cumulative_simpson(f, h, axis=0):
    """Cumulative integral along ``axis`` with local parabolic (Simpson) rules.

    out[0] = 0, out[1] fits a parabola through the first three samples, and
    out[k] = out[k-2] + Simpson(f[k-2:k+1]) afterwards.  Exact for quadratics,
    O(h^4) for smooth integrands, defined for every prefix length.
    """
    f = np.moveaxis(np.asarray(f), axis, 0)
    n = f.shape[0]
    out = np.zeros(f.shape, dtype=np.result_type(f.dtype, float))
    if n >= 2:
        if n == 2:
            out[1] = 0.5 * h * (f[0] + f[1])
        else:
            out[1] = h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0
    if n >= 3:
        seg = h * (f[:-2] + 4.0 * f[1:-1] + f[2:]) / 3.0  # seg[k-2] covers [k-2, k]
        out[2::2] = np.cumsum(seg[0::2], axis=0)
        if n >= 4:
            out[3::2] = out[1] + np.cumsum(seg[1::2], axis=0)
    return np.moveaxis(out, 0, axis)


def measured_order(residuals):
    """Mean log2 reduction factor between successive residuals (grids doubling)."""
    r = np.asarray(residuals, dtype=float)
    if np.any(r <= 0):
        return float("inf")
    ratios = np.log2(r[:-1] / r[1:])
    return float(np.mean(ratios))
