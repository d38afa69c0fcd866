import numpy as np
import pytest

from spinorsurf import charts
from spinorsurf.errors import DegenerateImmersion, NonPositiveFactor
from spinorsurf.stencils import band_mask, measured_order, sup_norm


def test_plane_geometry_is_flat():
    geom = charts.compute_geometry(charts.plane((16, 16)), "analytic")
    assert np.allclose(geom.H, 0, atol=0)
    assert np.allclose(geom.G, 0, atol=0)
    assert np.allclose(geom.II, 0, atol=0)
    assert np.allclose(geom.omega12, 0, atol=0)
    assert np.allclose(geom.sqrtg, 1, atol=0)


def test_sphere_curvatures_closed_form():
    geom = charts.compute_geometry(charts.sphere((32, 64)), "analytic")
    assert np.max(np.abs(geom.H - 1.0)) < 1e-10
    assert np.max(np.abs(geom.G - 1.0)) < 1e-10
    # outward normal
    assert np.max(np.linalg.norm(geom.N - geom.pos, axis=-1)) < 1e-12


def test_sphere_radius_scaling():
    geom = charts.compute_geometry(charts.sphere((16, 32), radius=2.5), "analytic")
    assert np.max(np.abs(geom.H - 1 / 2.5)) < 1e-12
    assert np.max(np.abs(geom.G - 1 / 2.5**2)) < 1e-12


def test_catenoid_minimal_analytic():
    geom = charts.compute_geometry(charts.catenoid((32, 32)), "analytic")
    assert np.max(np.abs(geom.H)) < 1e-8


def test_helicoid_and_enneper_minimal():
    for mk in (charts.helicoid, charts.enneper):
        geom = charts.compute_geometry(mk((24, 24)), "analytic")
        assert np.max(np.abs(geom.H)) < 1e-12


def test_frames_orthonormal_right_handed():
    for mk in (charts.sphere, charts.catenoid, charts.enneper, charts.graph_bump):
        geom = charts.compute_geometry(mk((16, 16)), "analytic")
        for a, b in [(geom.e1, geom.e1), (geom.e2, geom.e2), (geom.N, geom.N)]:
            assert np.max(np.abs(np.sum(a * b, axis=-1) - 1)) < 1e-12
        assert np.max(np.abs(np.sum(geom.e1 * geom.e2, axis=-1))) < 1e-12
        assert np.max(np.linalg.norm(np.cross(geom.e1, geom.e2) - geom.N, axis=-1)) < 1e-12


def test_degenerate_immersion_raises():
    collapse = charts.ChartSpec(
        "bad",
        (0, 1, 0, 1),
        (8, 8),
        immersion=lambda U, V: np.stack([U, U, np.zeros_like(U)], axis=-1),
    )
    with pytest.raises(DegenerateImmersion):
        charts.compute_geometry(collapse, "fd")


def test_fd_geometry_converges_to_analytic():
    # the round sphere is exactly reproduced by the symmetric stencils, so the
    # genuinely curved convergence case is the catenoid
    for mk in (charts.sphere, charts.catenoid):
        errs = []
        for n in (16, 32, 64):
            ga = charts.compute_geometry(mk((n, n)), "analytic")
            gf = charts.compute_geometry(mk((n, n)), "fd")
            mask = band_mask(ga.u, ga.v, ga.periodic_u, ga.periodic_v)
            errs.append(
                max(
                    sup_norm(ga.H - gf.H, mask),
                    sup_norm(ga.II - gf.II, mask),
                    sup_norm(ga.omega12 - gf.omega12, mask),
                )
            )
        assert errs[-1] < 1e-12 or measured_order(errs) > 1.8


def test_periodic_fields_consistent_across_seam():
    geom = charts.compute_geometry(charts.catenoid((32, 16)), "analytic")
    # u is periodic: compare derivative of a periodic scalar across the seam
    f = np.sin(geom.u)[:, None] * np.ones_like(geom.v)[None, :]
    df = geom.d_u(f)
    exact = np.cos(geom.u)[:, None] * np.ones_like(geom.v)[None, :]
    assert np.max(np.abs(df - exact)[0]) < np.max(np.abs(df - exact)) + 1e-15
    assert np.max(np.abs(df - exact)) < 1e-2


def test_laplace_constant_is_zero():
    geom = charts.compute_geometry(charts.sphere((24, 48)), "analytic")
    lap = charts.laplace_beltrami(np.ones(geom.shape), geom)
    assert sup_norm(lap, geom.interior(2)) < 1e-12


def test_laplace_sphere_first_harmonic():
    errs = []
    for n in (24, 48, 96):
        geom = charts.compute_geometry(charts.sphere((n, n)), "analytic")
        z = geom.pos[..., 2]
        lap = charts.laplace_beltrami(z, geom)
        mask = band_mask(geom.u, geom.v, geom.periodic_u, geom.periodic_v, margin=2)
        errs.append(sup_norm(lap - 2 * z, mask))
    assert errs[-1] < 5e-3
    assert measured_order(errs) > 1.8


def test_laplace_flat_torus_eigenfunction():
    errs = []
    for n in (16, 32, 64):
        geom = charts.compute_geometry(charts.flat_torus((n, n)), "analytic")
        f = np.sin(geom.u)[:, None] * np.ones(n)[None, :]
        lap = charts.laplace_beltrami(f, geom)
        errs.append(float(np.max(np.abs(lap - f))))
    assert errs[-1] < 5e-3
    assert measured_order(errs) > 1.8


def test_exterior_d_closed_form_flat():
    geom = charts.compute_geometry(charts.plane((32, 32)), "analytic")
    # omega = u dv has coordinate components (0, u): on the flat chart the
    # frame equals the coordinate basis
    U = geom.u[:, None] * np.ones(32)[None, :]
    omega = np.stack([np.zeros_like(U), U], axis=-1)
    d = charts.exterior_d(omega, geom)
    assert np.max(np.abs(d.density - 1.0)) < 1e-12


def test_exterior_d_of_differential_vanishes():
    errs = []
    for n in (32, 64, 128):
        geom = charts.compute_geometry(charts.enneper((n, n)), "analytic")
        f = np.sin(geom.pos[..., 0]) + geom.pos[..., 2] ** 2
        e1f, e2f = geom.frame_d(f)
        omega = np.stack([e1f, e2f], axis=-1)
        d = charts.exterior_d(omega, geom)
        errs.append(sup_norm(d.density, band_mask(geom.u, geom.v, False, False, margin=2)))
    assert measured_order(errs) > 1.8


def test_exterior_d_against_central_difference_oracle():
    errs = []
    for n in (32, 64, 128):
        geom = charts.compute_geometry(charts.graph_bump((n, n)), "analytic")
        U, V = np.meshgrid(geom.u, geom.v, indexing="ij")
        omega = np.stack([np.sin(U + V), np.cos(2 * U) * V], axis=-1)
        d = charts.exterior_d(omega, geom)
        # independent oracle: d omega = (d_u w_v - d_v w_u) du dv on coordinates
        C = geom.coord_in_frame
        w_u = C[..., 0, 0] * omega[..., 0] + C[..., 0, 1] * omega[..., 1]
        w_v = C[..., 1, 0] * omega[..., 0] + C[..., 1, 1] * omega[..., 1]
        oracle = (geom.d_u(w_v) - geom.d_v(w_u)) / geom.sqrtg
        errs.append(sup_norm(d.density - oracle, band_mask(geom.u, geom.v, False, False, margin=2)))
    assert measured_order(errs) > 1.8


def test_quadrature_sphere_area_and_gauss_bonnet():
    geom = charts.compute_geometry(charts.sphere((256, 128), cap=1e-4), "analytic")
    area = charts.quadrature(np.ones(geom.shape), geom)
    assert abs(area - 4 * np.pi) < 1e-6
    totG = charts.quadrature(geom.G, geom)
    assert abs(totG - 4 * np.pi) < 1e-6
    assert charts.quadrature(np.zeros(geom.shape), geom) == 0.0


def test_structure_equation_all_presets():
    for name in ("sphere", "catenoid", "enneper", "helicoid", "graph_bump"):
        errs = []
        for n in (32, 64, 128):
            geom = charts.compute_geometry(charts.make_chart(name, (n, n)), "analytic")
            d = charts.exterior_d(geom.omega12, geom)
            mask = band_mask(geom.u, geom.v, geom.periodic_u, geom.periodic_v)
            errs.append(sup_norm(d.density + geom.G, mask))
        assert measured_order(errs) > 1.8, name
        assert errs[-1] < 1e-2, name


def test_intrinsic_geometry_matches_extrinsic():
    geom = charts.compute_geometry(charts.sphere((32, 64)), "analytic")
    gi = charts.intrinsic_geometry(
        geom.u, geom.v, geom.g, geom.dg, geom.periodic_u, geom.periodic_v
    )
    assert np.max(np.abs(gi.omega12 - geom.omega12)) < 1e-12
    assert np.max(np.abs(gi.frame_coeff - geom.frame_coeff)) < 1e-12
    assert np.max(np.abs(gi.sqrtg - geom.sqrtg)) < 1e-12


def test_conformal_rescale_rejects_nonpositive():
    geom = charts.compute_geometry(charts.flat_torus((16, 16)), "analytic")
    with pytest.raises(NonPositiveFactor):
        charts.conformal_rescale(geom, np.zeros(geom.shape))


def test_chart_resolution_floor():
    with pytest.raises(ValueError):
        charts.plane((4, 16))
