"""Spinor fields on surface charts.

Fields are stored in the gauge of the chart's Gram-Schmidt frame, where the
normal acts as the third Clifford generator.  In this gauge the +/-
splitting is componentwise: phi_plus = (c1, 0), phi_minus = (0, c2), and the
covariant derivative is

    nabla_{e_j} phi = e_j(phi) + 1/2 w12(e_j) e1.e2.phi,

with e1.e2 = e3 acting as the constant matrix diag(-i, i).  Restriction of a
constant ambient spinor transports it into this gauge with the continuous
SU(2) lift of the frame rotation.  On charts that close up in a direction the
lift may return with a sign; that seam sign is carried by the field and used
by the difference stencils, which is exactly the induced spin structure of
the chart.
"""

from dataclasses import dataclass

import numpy as np

from . import spinalgebra as sa
from . import stencils
from .charts import GeometryField, laplace_beltrami
from .errors import ZeroLength

# gauge matrices of Clifford multiplication by e1, e2 and by e1.e2 = e3
_E1 = sa.E1
_E2 = sa.E2
_E3 = sa.E3


@dataclass
class SpinorFieldGrid:
    """Per-node spinor components in a chart's frame gauge."""

    comp: np.ndarray  # (n, m, 2) complex
    geom: GeometryField
    seam: tuple = (1.0, 1.0)  # wrap signs (s_u, s_v) of periodic directions
    provenance: str = "manufactured"

    def like(self, comp, provenance=None):
        return SpinorFieldGrid(comp, self.geom, self.seam, provenance or self.provenance)

    @property
    def plus(self):
        out = self.comp.copy()
        out[..., 1] = 0.0
        return out

    @property
    def minus(self):
        out = self.comp.copy()
        out[..., 0] = 0.0
        return out

    def star(self):
        """phi* = phi_plus - i phi_minus, the constant-length companion."""
        out = self.comp.copy()
        out[..., 1] = -1j * out[..., 1]
        return self.like(out, "star")

    def lengths(self):
        """(L_plus, L_minus) = (|phi^+|^2, |phi^-|^2)."""
        return np.abs(self.comp[..., 0]) ** 2, np.abs(self.comp[..., 1]) ** 2

    def norm2(self):
        return np.sum(np.abs(self.comp) ** 2, axis=-1)


def mul_e3(comp):
    out = np.empty_like(comp)
    out[..., 0] = -1j * comp[..., 0]
    out[..., 1] = 1j * comp[..., 1]
    return out


def tangent_clifford(t, comp):
    """Clifford multiplication by a tangent vector with frame components t."""
    out = np.empty_like(comp)
    out[..., 0] = (-1j * t[..., 0] - t[..., 1]) * comp[..., 1]
    out[..., 1] = (-1j * t[..., 0] + t[..., 1]) * comp[..., 0]
    return out


def restrict_parallel(Phi, geom: GeometryField, base=(0, 0)):
    """Restrict the constant ambient spinor Phi to the chart.

    Per node phi = U* Phi with U the continuous SU(2) lift of the rotation
    taking the ambient basis to (e1, e2, N); |phi| = |Phi| exactly.
    """
    Phi = np.asarray(Phi, dtype=complex)
    if sa.norm2(Phi) <= 0:
        raise ZeroLength("ambient spinor must be nonzero")
    R = geom.rotation_field()
    U, seam = sa.su2_lift_grid(R, base=base, periodic_u=geom.periodic_u, periodic_v=geom.periodic_v)
    comp = np.einsum("...ba,b->...a", np.conj(U), Phi)
    fld = SpinorFieldGrid(comp, geom, seam, "restricted")
    fld.lift = U
    return fld


def cov_derivs(phi: SpinorFieldGrid):
    """Covariant derivatives (nabla_{e1} phi, nabla_{e2} phi) as arrays."""
    geom = phi.geom
    su, sv = phi.seam
    du = stencils.diff(phi.comp, 0, geom.hu, geom.periodic_u, su)
    dv = stencils.diff(phi.comp, 1, geom.hv, geom.periodic_v, sv)
    A = geom.frame_coeff
    out = []
    for j in range(2):
        ej = A[..., j, 0, None] * du + A[..., j, 1, None] * dv
        out.append(ej + 0.5 * geom.omega12[..., j, None] * mul_e3(phi.comp))
    return out[0], out[1]


def covariant_derivative(phi: SpinorFieldGrid, j: int):
    """nabla_{e_j} phi as a spinor field (j = 0 or 1)."""
    return phi.like(cov_derivs(phi)[j])


def dirac(phi: SpinorFieldGrid):
    """D(phi) = e1 . nabla_{e1} phi + e2 . nabla_{e2} phi."""
    d1, d2 = cov_derivs(phi)
    comp = np.einsum("ab,...b->...a", _E1, d1) + np.einsum("ab,...b->...a", _E2, d2)
    return phi.like(comp, "dirac")


def spinor_laplacian(phi: SpinorFieldGrid):
    """Connection Laplacian with nonnegative spectrum (matches D^2 - G/2)."""
    geom = phi.geom
    d1, d2 = cov_derivs(phi)
    w1, w2 = geom.omega12[..., 0], geom.omega12[..., 1]
    d11 = cov_derivs(phi.like(d1))[0]
    d22 = cov_derivs(phi.like(d2))[1]
    comp = -(d11 + d22 - w1[..., None] * d2 + w2[..., None] * d1)
    return phi.like(comp, "laplacian")


@dataclass
class EndoField:
    """Symmetric endomorphism field in the (e1, e2) frame, stored raw."""

    mat: np.ndarray  # (n, m, 2, 2)

    def asymmetry(self):
        return float(np.max(np.abs(self.mat[..., 0, 1] - self.mat[..., 1, 0])))

    def trace(self):
        return self.mat[..., 0, 0] + self.mat[..., 1, 1]

    def det(self):
        return (
            self.mat[..., 0, 0] * self.mat[..., 1, 1]
            - self.mat[..., 0, 1] * self.mat[..., 1, 0]
        )


def extract_E(phi: SpinorFieldGrid, rel_floor=1e-8):
    """Shape endomorphism E_jk = Re(nabla_{e_j} phi, e_k . phi) / |phi|^2.

    Requires a nowhere-vanishing field (constant-length solutions).  Returns
    (EndoField, residuals) where the residuals report, over interior nodes:
    the matrix asymmetry, |Tr E + H|, |det E - G/4| and the sup norm of the
    twistor defect nabla_{e_j} phi - E(e_j) . phi.
    """
    n2 = phi.norm2()
    if np.min(n2) < (rel_floor * np.max(n2)) ** 1.0:
        raise ZeroLength("spinor field vanishes somewhere; E is undefined")
    geom = phi.geom
    d1, d2 = cov_derivs(phi)
    derivs = (d1, d2)
    E = np.empty(phi.comp.shape[:2] + (2, 2))
    for j in range(2):
        for k in range(2):
            t = np.zeros(phi.comp.shape[:2] + (2,))
            t[..., k] = 1.0
            E[..., j, k] = np.real(sa.hermitian(derivs[j], tangent_clifford(t, phi.comp))) / n2

    endo = EndoField(E)
    mask = stencils.band_mask(geom.u, geom.v, geom.periodic_u, geom.periodic_v)
    twist = 0.0
    for j in range(2):
        model = tangent_clifford(E[..., j, :], phi.comp)
        twist = max(twist, stencils.sup_norm(derivs[j] - model, mask))
    asym = stencils.sup_norm(E[..., 0, 1] - E[..., 1, 0], mask)
    residuals = {"asymmetry": asym, "twistor": twist}
    if geom.H is not None:
        residuals["trace_plus_H"] = stencils.sup_norm(endo.trace() + geom.H, mask)
        residuals["det_minus_G4"] = stencils.sup_norm(endo.det() - geom.G / 4.0, mask)
        residuals["two_E_plus_II"] = stencils.sup_norm(2.0 * E + geom.II, mask)
    return endo, residuals


def forms_F(phi: SpinorFieldGrid):
    """Bilinear forms F+-(X, Y) = Re(nabla_X phi^+-, Y . phi^-+).

    Returns (F_plus, F_minus, residuals); the residuals cover symmetry,
    the trace laws Tr F+- = -H |phi^-+|^2, and the constant-length relation
    |phi^+|^2 F+ = |phi^-|^2 F-.
    """
    geom = phi.geom
    d1, d2 = cov_derivs(phi)
    Lp, Lm = phi.lengths()
    plus, minus = phi.plus, phi.minus

    def bilinear(dcomps, target):
        F = np.empty(phi.comp.shape[:2] + (2, 2))
        for j in range(2):
            for k in range(2):
                t = np.zeros(phi.comp.shape[:2] + (2,))
                t[..., k] = 1.0
                F[..., j, k] = np.real(sa.hermitian(dcomps[j], tangent_clifford(t, target)))
        return F

    # nabla phi^+ keeps only the upper component in this gauge
    dplus = tuple(np.stack([d[..., 0], np.zeros_like(d[..., 0])], axis=-1) for d in (d1, d2))
    dminus = tuple(np.stack([np.zeros_like(d[..., 1]), d[..., 1]], axis=-1) for d in (d1, d2))
    Fp = EndoField(bilinear(dplus, minus))
    Fm = EndoField(bilinear(dminus, plus))

    mask = stencils.band_mask(geom.u, geom.v, geom.periodic_u, geom.periodic_v)
    residuals = {
        "sym_plus": stencils.sup_norm(Fp.mat[..., 0, 1] - Fp.mat[..., 1, 0], mask),
        "sym_minus": stencils.sup_norm(Fm.mat[..., 0, 1] - Fm.mat[..., 1, 0], mask),
        "balance": stencils.sup_norm(Lp[..., None, None] * Fp.mat - Lm[..., None, None] * Fm.mat, mask),
    }
    if geom.H is not None:
        residuals["trace_plus"] = stencils.sup_norm(Fp.trace() + geom.H * Lm, mask)
        residuals["trace_minus"] = stencils.sup_norm(Fm.trace() + geom.H * Lp, mask)
    return Fp, Fm, residuals


def codazzi_residual(E: EndoField, geom: GeometryField):
    """Pointwise norm of A(e1, e2) = nabla_{e1}(E(e2)) - nabla_{e2}(E(e1)) - E([e1, e2]).

    With [e1, e2] = -w12(e1) e1 - w12(e2) e2 this becomes
    nabla_1 E(e2) - nabla_2 E(e1) + w12(e1) E(e1) + w12(e2) E(e2).
    """
    M = E.mat
    w = geom.omega12

    def cov_vec(W, j):
        e1W, e2W = geom.frame_d(W)
        eW = (e1W, e2W)[j]
        out = np.empty_like(W)
        out[..., 0] = eW[..., 0] - W[..., 1] * w[..., j]
        out[..., 1] = eW[..., 1] + W[..., 0] * w[..., j]
        return out

    Ee1 = M[..., 0, :]
    Ee2 = M[..., 1, :]
    A = (
        cov_vec(Ee2, 0)
        - cov_vec(Ee1, 1)
        + w[..., 0, None] * Ee1
        + w[..., 1, None] * Ee2
    )
    return np.linalg.norm(A, axis=-1)


def laplacian_identities(phi: SpinorFieldGrid):
    """Residual fields of the length Laplacian laws of twistor solutions.

    Checks Delta(L+-) = 2(H^2 - G/2)(L+- - L-+) + 2 Re(grad(H) . phi^-+, phi^+-)
    and, for constant H, Delta(u) = 4 (H^2 - G/2) u with u = L+ - L-.
    """
    geom = phi.geom
    if geom.H is None:
        raise ValueError("laplacian identities need extrinsic curvature data")
    Lp, Lm = phi.lengths()
    H, G = geom.H, geom.G
    coef = 2.0 * (H**2 - G / 2.0)

    gH1, gH2 = geom.frame_d(H)
    gradH = np.stack([gH1, gH2], axis=-1)
    hterm_p = 2.0 * np.real(sa.hermitian(tangent_clifford(gradH, phi.minus), phi.plus))
    hterm_m = 2.0 * np.real(sa.hermitian(tangent_clifford(gradH, phi.plus), phi.minus))

    res_p = laplace_beltrami(Lp, geom) - (coef * (Lp - Lm) + hterm_p)
    res_m = laplace_beltrami(Lm, geom) - (coef * (Lm - Lp) + hterm_m)
    u = Lp - Lm
    res_u = laplace_beltrami(u, geom) - 2.0 * coef * u
    return {"plus": res_p, "minus": res_m, "u": res_u}


def dirac_square_residual(phi: SpinorFieldGrid):
    """Field of || D(D phi) - Delta phi - (G/2) phi ||."""
    geom = phi.geom
    if geom.G is None:
        raise ValueError("needs Gauss curvature")
    dd = dirac(dirac(phi)).comp
    model = spinor_laplacian(phi).comp + 0.5 * geom.G[..., None] * phi.comp
    return np.linalg.norm(dd - model, axis=-1)


def restriction_residual(phi: SpinorFieldGrid):
    """Field of || nabla_{e_j} phi - 1/2 II(e_j) . N . phi ||, maxed over j.

    For the restriction of a parallel ambient spinor this vanishes in the
    continuum; it is the ambient-derivative splitting along the surface.
    """
    geom = phi.geom
    d1, d2 = cov_derivs(phi)
    Nphi = mul_e3(phi.comp)
    res = np.zeros(phi.comp.shape[:2])
    for j, d in enumerate((d1, d2)):
        model = 0.5 * tangent_clifford(geom.II[..., j, :], Nphi)
        res = np.maximum(res, np.linalg.norm(d - model, axis=-1))
    return res
