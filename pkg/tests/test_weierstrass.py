import numpy as np
import pytest

from spinorsurf import charts, periods, spinorfield as sf, weierstrass as ws
from spinorsurf.errors import SingularPath
from spinorsurf.stencils import band_mask, measured_order, sup_norm


def test_enneper_value_closed_form():
    # antiderivative Re(z - z^3/3, i(z + z^3/3), z^2) at z = 1
    val = ws.weierstrass_value(ws.enneper_data(), 0.0, 1.0)
    assert np.max(np.abs(val - np.array([2.0 / 3.0, 0.0, 1.0]))) < 1e-12


def test_basepoint_maps_to_origin():
    val = ws.weierstrass_value(ws.catenoid_data(), 0.3 - 0.2j, 0.3 - 0.2j)
    assert np.max(np.abs(val)) == 0.0
    patch = ws.weierstrass_immersion(ws.enneper_data(), (17, 17), z0=0.0)
    assert np.max(np.abs(patch.positions[8, 8])) < 1e-14


def test_basepoint_change_is_translation():
    p1 = ws.weierstrass_immersion(ws.enneper_data(), (24, 24), z0=0.0)
    p2 = ws.weierstrass_immersion(ws.enneper_data(), (24, 24), z0=0.4 + 0.1j)
    delta = p1.positions - p2.positions
    assert np.max(np.abs(delta - delta[0, 0])) < 1e-12


def test_catenoid_matches_closed_form_up_to_rigid_motion():
    data = ws.catenoid_data()
    n = 64
    patch = ws.weierstrass_immersion(data, (n, n))
    xs = np.linspace(data.domain[0], data.domain[1], n)
    ys = np.linspace(data.domain[2], data.domain[3], n)
    closed = np.stack(
        [
            np.cosh(xs)[:, None] * np.cos(ys)[None, :],
            np.cosh(xs)[:, None] * np.sin(ys)[None, :],
            np.broadcast_to(xs[:, None], (n, n)).copy(),
        ],
        axis=-1,
    )
    _, _, rms = periods.rigid_align(patch.positions, closed)
    assert rms < 1e-6


def test_plane_data_exactly_flat():
    patch = ws.weierstrass_immersion(ws.plane_data(), (16, 16))
    mc = ws.minimality_check(patch)
    assert mc["max_H"] < 1e-13
    assert mc["conformality"] < 1e-13


def test_minimality_and_conformality_converge():
    for name in ("enneper", "helicoid"):
        hs, cs = [], []
        for n in (32, 64, 128):
            patch = ws.weierstrass_immersion(ws.DATA_PRESETS[name](), (n, n))
            mc = ws.minimality_check(patch)
            hs.append(mc["max_H"])
            cs.append(mc["conformality"])
        assert hs[-1] < 1e-3 and cs[-1] < 1e-3, name
        assert hs[-1] < 1e-12 or measured_order(hs) > 1.8, name
        assert measured_order(cs) > 1.8, name


def test_cauchy_riemann_residuals():
    res = ws.holomorphy_check(ws.enneper_data(), (64, 64))
    assert res["cr_g"] < 1e-12
    assert res["cr_mu"] < 1e-12
    bad = ws.HoloData(lambda z: np.conj(z), lambda z: np.ones_like(z), (-1, 1, -1, 1))
    assert abs(ws.holomorphy_check(bad, (64, 64))["cr_g"] - 2.0) < 1e-12


def test_cell_loops_vanish_for_holomorphic_data():
    errs = [
        ws.holomorphy_check(ws.catenoid_data(), (n, n))["loop_density"] for n in (32, 64, 128)
    ]
    assert errs[-1] < 1e-3
    assert errs[-1] < 1e-12 or measured_order(errs) > 1.8


def test_restricted_spinor_harmonic_on_generated_patch():
    errs = []
    for n in (32, 64, 128):
        patch = ws.weierstrass_immersion(ws.enneper_data(), (n, n))
        geom = charts.compute_geometry(patch, "fd")
        phi = sf.restrict_parallel([1.0, 0.0], geom)
        mask = band_mask(geom.u, geom.v, False, False, margin=2)
        errs.append(sup_norm(sf.dirac(phi).comp, mask))
    assert errs[-1] < 1e-3
    assert measured_order(errs) > 1.8


def test_singular_path_detection():
    data = ws.HoloData(
        lambda z: 1.0 / (z - 0.5), lambda z: np.ones_like(z), (-1, 1, -1, 1), excluded=(0.5,)
    )
    # 33 nodes put a path through the pole at 0.5 + 0i
    with pytest.raises(SingularPath):
        ws.weierstrass_immersion(data, (33, 33))
    # a pole strictly between path lines is tolerated
    off = ws.HoloData(
        lambda z: 1.0 / (z - (0.5 + 0.013j)),
        lambda z: np.ones_like(z),
        (-1, 1, -1, 1),
        excluded=(0.5 + 0.013j,),
    )
    ws.weierstrass_immersion(off, (32, 32))
