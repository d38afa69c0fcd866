"""Exception types shared across the library."""


class SpinorSurfError(Exception):
    """Base class for all library errors."""


class DegenerateImmersion(SpinorSurfError):
    """The chart map fails to be an immersion at some grid node."""


class LiftAmbiguity(SpinorSurfError):
    """Neighboring frame rotations differ too much for a continuous SU(2) lift."""


class ZeroLength(SpinorSurfError):
    """A spinor field vanishes (or nearly vanishes) where a nonzero length is required."""


class SingularPath(SpinorSurfError):
    """An integration path passes too close to an excluded point."""


class NotExact(SpinorSurfError):
    """The 1-forms to integrate have genuine periods; reconstruction refused."""


class NonPositiveFactor(SpinorSurfError):
    """A conformal factor must be strictly positive."""


class ConfigError(SpinorSurfError):
    """A run configuration failed validation."""
