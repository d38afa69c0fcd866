"""Reading the second fundamental form off a spinor field.

A constant-length solution of D(phi) = H phi satisfies the twistor-type
equation nabla_X phi = E(X).phi for a symmetric endomorphism E with

    Tr(E) = -H,    det(E) = G/4,    Codazzi: d^nabla E = 0,

and 2E is the shape form of the immersion up to one global sign.  Everything
below is extracted numerically from the restricted star field and compared
against the chart geometry.
"""

import numpy as np

from spinorsurf import charts, spinorfield as sf
from spinorsurf.stencils import band_mask, sup_norm

PHI = np.array([1.0, 0.0], dtype=complex)

print(f"{'surface':12s} {'|TrE + H|':>10s} {'|detE-G/4|':>11s} {'twistor':>10s} "
      f"{'codazzi':>10s} {'|2E + II|':>10s}")
for name in ("sphere", "catenoid", "enneper", "helicoid", "graph_bump"):
    geom = charts.compute_geometry(charts.make_chart(name, (96, 96)), "analytic")
    star = sf.restrict_parallel(PHI, geom).star()
    E, res = sf.extract_E(star)
    mask = band_mask(geom.u, geom.v, geom.periodic_u, geom.periodic_v)
    cod = sup_norm(sf.codazzi_residual(E, geom), mask)
    print(f"{name:12s} {res['trace_plus_H']:10.2e} {res['det_minus_G4']:11.2e} "
          f"{res['twistor']:10.2e} {cod:10.2e} {res['two_E_plus_II']:10.2e}")

print("\nthe sphere is umbilic: E = -1/2 Id at every node, e.g. at the center:")
geom = charts.compute_geometry(charts.sphere((64, 64)), "analytic")
star = sf.restrict_parallel(PHI, geom).star()
E, _ = sf.extract_E(star)
print(np.round(E.mat[32, 32], 6))

print("\nlength Laplacians of the splitting, u = |phi+|^2 - |phi-|^2:")
ids = sf.laplacian_identities(star)
mask = band_mask(geom.u, geom.v, geom.periodic_u, geom.periodic_v, margin=2)
print(f"  sphere:   max |Delta u - 2u|          = {sup_norm(ids['u'], mask):.2e}")
geomc = charts.compute_geometry(charts.catenoid((96, 96)), "analytic")
starc = sf.restrict_parallel(PHI, geomc).star()
idsc = sf.laplacian_identities(starc)
maskc = band_mask(geomc.u, geomc.v, geomc.periodic_u, geomc.periodic_v, margin=2)
print(f"  catenoid: max |Delta L+- + G(L+- - L-+)| = "
      f"{max(sup_norm(idsc['plus'], maskc), sup_norm(idsc['minus'], maskc)):.2e}")
