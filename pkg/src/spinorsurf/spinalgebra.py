"""Exact 2-dimensional spin algebra.

Spinors are complex pairs (c1, c2); fields of spinors are arrays whose last
axis has length 2.  Vectors of R^3 act by Clifford multiplication through the
fixed representation

    E_j = -i * sigma_j,

where sigma_j are the standard hermitian trace-free 2x2 matrices.  With this
choice e1*e2 = e3 holds exactly and i*e3 acts with eigenvalues +1 / -1 on the
components, so the splitting of a spinor along a unit vector N is componentwise
whenever N is the third frame vector.

Everything in this module is exact linear algebra; no discretization enters.
"""

from collections import deque

import numpy as np

from .errors import LiftAmbiguity

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

E1 = -1j * SIGMA1
E2 = -1j * SIGMA2
E3 = -1j * SIGMA3

# stacked (3, 2, 2) for vectorized contraction against vector fields
CLIFFORD = np.stack([E1, E2, E3])

UNIT_TOL = 1e-9


def hermitian(a, b):
    """Hermitian product sum_i a_i * conj(b_i) over the last axis."""
    return np.sum(a * np.conj(b), axis=-1)


def norm2(phi):
    """Squared hermitian norm |phi|^2."""
    return np.real(hermitian(phi, phi))


def clifford_mul(v, phi):
    """Clifford multiplication v . phi.

    v has shape (..., 3) real, phi has shape (..., 2) complex; both broadcast.
    """
    v = np.asarray(v, dtype=float)
    phi = np.asarray(phi, dtype=complex)
    mat = np.einsum("...k,kab->...ab", v, CLIFFORD)
    return np.einsum("...ab,...b->...a", mat, phi)


def alpha(phi):
    """Quaternionic structure alpha(c1, c2) = (-conj(c2), conj(c1)).

    Conjugate-linear, alpha^2 = -id, commutes with Clifford multiplication and
    swaps the +/- eigenspaces of i*N for every unit N.
    """
    phi = np.asarray(phi, dtype=complex)
    out = np.empty_like(phi)
    out[..., 0] = -np.conj(phi[..., 1])
    out[..., 1] = np.conj(phi[..., 0])
    return out


def _check_unit(N):
    N = np.asarray(N, dtype=float)
    err = np.abs(np.sum(N * N, axis=-1) - 1.0)
    if np.max(err) > UNIT_TOL:
        raise ValueError(f"N is not a unit vector field (max | |N|^2 - 1 | = {np.max(err):.3e})")
    return N


def split_pm(phi, N):
    """Split phi into the +/- eigenspinors of i*N.

    Returns (phi_plus, phi_minus) with i*N.phi_pm = +/- phi_pm and
    phi_plus + phi_minus = phi exactly.
    """
    N = _check_unit(N)
    iN = 1j * clifford_mul(N, phi)
    plus = 0.5 * (phi + iN)
    minus = 0.5 * (phi - iN)
    return plus, minus


def star_spinor(phi, N):
    """The constant-length companion phi* = phi_plus - i*phi_minus."""
    plus, minus = split_pm(phi, N)
    return plus - 1j * minus


def quaternion_from_rotation(R):
    """Unit quaternion (w, x, y, z) of a proper rotation, vectorized.

    R has shape (..., 3, 3); the branch per node follows the largest diagonal
    entry so the division is always well conditioned.  The returned sign is
    whichever branch produces; continuity is the caller's concern.
    """
    R = np.asarray(R, dtype=float)
    shape = R.shape[:-2]
    q = np.empty(shape + (4,), dtype=float)

    t = np.einsum("...ii->...", R)
    r00, r11, r22 = R[..., 0, 0], R[..., 1, 1], R[..., 2, 2]

    # candidate 4*q_i^2 values
    cand = np.stack([1.0 + t, 1.0 + 2 * r00 - t, 1.0 + 2 * r11 - t, 1.0 + 2 * r22 - t], axis=-1)
    pick = np.argmax(cand, axis=-1)

    s = np.sqrt(np.maximum(cand[..., 0], 0.0))  # 2w when pick==0 etc.
    with np.errstate(divide="ignore", invalid="ignore"):
        qw = 0.5 * s
        denom = np.where(s > 0, 2.0 * s, 1.0)
        q0 = np.stack(
            [
                qw,
                (R[..., 2, 1] - R[..., 1, 2]) / denom,
                (R[..., 0, 2] - R[..., 2, 0]) / denom,
                (R[..., 1, 0] - R[..., 0, 1]) / denom,
            ],
            axis=-1,
        )

        s1 = np.sqrt(np.maximum(cand[..., 1], 0.0))
        d1 = np.where(s1 > 0, 2.0 * s1, 1.0)
        q1 = np.stack(
            [
                (R[..., 2, 1] - R[..., 1, 2]) / d1,
                0.5 * s1,
                (R[..., 0, 1] + R[..., 1, 0]) / d1,
                (R[..., 0, 2] + R[..., 2, 0]) / d1,
            ],
            axis=-1,
        )

        s2 = np.sqrt(np.maximum(cand[..., 2], 0.0))
        d2 = np.where(s2 > 0, 2.0 * s2, 1.0)
        q2 = np.stack(
            [
                (R[..., 0, 2] - R[..., 2, 0]) / d2,
                (R[..., 0, 1] + R[..., 1, 0]) / d2,
                0.5 * s2,
                (R[..., 1, 2] + R[..., 2, 1]) / d2,
            ],
            axis=-1,
        )

        s3 = np.sqrt(np.maximum(cand[..., 3], 0.0))
        d3 = np.where(s3 > 0, 2.0 * s3, 1.0)
        q3 = np.stack(
            [
                (R[..., 1, 0] - R[..., 0, 1]) / d3,
                (R[..., 0, 2] + R[..., 2, 0]) / d3,
                (R[..., 1, 2] + R[..., 2, 1]) / d3,
                0.5 * s3,
            ],
            axis=-1,
        )

    stacked = np.stack([q0, q1, q2, q3], axis=-2)
    idx = pick[..., None, None]
    q = np.take_along_axis(stacked, np.broadcast_to(idx, shape + (1, 4)), axis=-2)[..., 0, :]
    q /= np.linalg.norm(q, axis=-1, keepdims=True)
    return q


def su2_from_quaternion(q):
    """SU(2) matrix U = w*Id - i(x*sigma1 + y*sigma2 + z*sigma3)."""
    q = np.asarray(q, dtype=float)
    w, x, y, z = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    U = np.empty(q.shape[:-1] + (2, 2), dtype=complex)
    U[..., 0, 0] = w - 1j * z
    U[..., 0, 1] = -1j * x - y
    U[..., 1, 0] = -1j * x + y
    U[..., 1, 1] = w + 1j * z
    return U


def su2_from_rotation(R):
    """One of the two SU(2) lifts of R, satisfying U E_j U* = sum_k R_kj E_k."""
    return su2_from_quaternion(quaternion_from_rotation(R))


def _canonical_sign(q):
    # first component of largest magnitude made positive; deterministic
    k = int(np.argmax(np.abs(q)))
    return 1.0 if q[k] >= 0 else -1.0


def su2_lift_grid(R, base=(0, 0), periodic_u=False, periodic_v=False, margin=np.pi / 2):
    """Continuous SU(2) lift of a rotation field on a rectangular grid.

    The sign ambiguity of the double cover is resolved by breadth-first
    propagation from ``base`` over the (non-wrapped) grid adjacency, visiting
    neighbors in the fixed order (-u, +u, -v, +v); the base sign is canonical.
    Raises LiftAmbiguity when adjacent rotations differ by an angle of at
    least ``margin`` (quaternion dot below cos(margin/2)), which signals a grid
    too coarse to track the frame continuously.

    Returns (U, (s_u, s_v)) where U has shape (n, m, 2, 2) and s_u, s_v are
    the seam signs of periodic directions: the continuation of the lift across
    the wrap equals s * U at the identified nodes (s = +1 for non-periodic
    directions).  A seam sign of -1 means spinor components in this gauge are
    antiperiodic in that direction.
    """
    R = np.asarray(R, dtype=float)
    n, m = R.shape[:2]
    q = quaternion_from_rotation(R)

    dot_floor = np.cos(margin / 2.0)
    sign = np.zeros((n, m))
    bi, bj = base
    sign[bi, bj] = _canonical_sign(q[bi, bj])

    todo = deque([(bi, bj)])
    visited = np.zeros((n, m), dtype=bool)
    visited[bi, bj] = True
    while todo:
        i, j = todo.popleft()
        for di, dj in ((-1, 0), (1, 0), (0, -1), (0, 1)):
            ii, jj = i + di, j + dj
            if not (0 <= ii < n and 0 <= jj < m) or visited[ii, jj]:
                continue
            d = float(np.dot(q[i, j] * sign[i, j], q[ii, jj]))
            if abs(d) < dot_floor:
                raise LiftAmbiguity(
                    f"adjacent rotations at {(i, j)} and {(ii, jj)} differ by "
                    f"angle >= {margin:.3f}; refine the grid"
                )
            sign[ii, jj] = 1.0 if d >= 0 else -1.0
            visited[ii, jj] = True
            todo.append((ii, jj))

    q = q * sign[..., None]
    U = su2_from_quaternion(q)

    def seam_sign(axis):
        if axis == 0:
            qa, qb = q[-1, :], q[0, :]
        else:
            qa, qb = q[:, -1], q[:, 0]
        d = np.sum(qa * qb, axis=-1)
        if np.min(np.abs(d)) < dot_floor:
            raise LiftAmbiguity("rotation jump across the periodic seam is too large")
        s = np.sign(d)
        if not np.all(s == s.flat[0]):
            raise LiftAmbiguity("inconsistent lift sign along the periodic seam")
        return float(s.flat[0])

    s_u = seam_sign(0) if periodic_u else 1.0
    s_v = seam_sign(1) if periodic_v else 1.0
    return U, (s_u, s_v)


def apply_su2(U, phi):
    """Matrix action U.phi on (..., 2) spinor fields."""
    return np.einsum("...ab,...b->...a", U, phi)


def lift_conjugation_residual(U, R):
    """max over nodes and j of || U E_j U* - sum_k R_kj E_k ||."""
    res = 0.0
    Ustar = np.conj(np.swapaxes(U, -1, -2))
    for j in range(3):
        lhs = U @ CLIFFORD[j] @ Ustar
        rhs = np.einsum("...k,kab->...ab", R[..., :, j], CLIFFORD)
        res = max(res, float(np.max(np.abs(lhs - rhs))))
    return res
