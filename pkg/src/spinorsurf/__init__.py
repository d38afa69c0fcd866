"""spinorsurf: surfaces in R^3 through spinor fields and Dirac operators.

Restriction of parallel ambient spinors to parametric surface patches, the
inhomogeneous Dirac equation D(phi) = H phi, extraction of the shape
endomorphism with its Gauss/Codazzi integrability checks, period 1-forms and
the generalized Weierstrass reconstruction of the immersion, holomorphic-data
minimal surface generation, and a residual-based verification battery with
convergence control.
"""

from . import charts, periods, spinalgebra, spinorfield, stencils, verify, weierstrass
from .charts import ChartSpec, GeometryField, compute_geometry, make_chart
from .errors import (
    ConfigError,
    DegenerateImmersion,
    LiftAmbiguity,
    NonPositiveFactor,
    NotExact,
    SingularPath,
    SpinorSurfError,
    ZeroLength,
)
from .periods import PeriodForms, period_forms, reconstruct, rigid_align
from .spinorfield import SpinorFieldGrid, dirac, extract_E, restrict_parallel
from .verify import Report, verify_all

__version__ = "0.1.0"
