"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`RealSphError`,
which is what the command line maps to exit code 1.
"""


class RealSphError(Exception):
    """Base class for domain errors."""


class DimensionMismatch(RealSphError):
    pass


class InvalidSubset(RealSphError):
    pass


class NotInPositiveLattice(RealSphError):
    pass


class ParentMismatch(RealSphError):
    pass


class NotNormalizing(RealSphError):
    pass


class NotSubalgebra(RealSphError):
    pass


class InvalidAlgebra(RealSphError):
    """Structure constants violate antisymmetry, Jacobi or the grading."""


class NotSpherical(RealSphError):
    pass


class NoAdaptedParabolic(RealSphError):
    pass


class GeneratorNotVanishingOnAH(RealSphError):
    pass


class InconsistentSign(RealSphError):
    pass


class ConsistencyFailure(RealSphError):
    """Two independent computations of the same quantity disagree."""


class NotWavefront(RealSphError):
    pass


class NoPositiveSolution(RealSphError):
    pass


class FQNotContained(RealSphError):
    pass


class ParentNotUnimodular(RealSphError):
    pass


class EdgeMismatch(RealSphError):
    pass


class NotTempered(RealSphError):
    pass


class AssertionFailure(RealSphError):
    """A structural identity that must hold for valid input failed."""


class UnsupportedEntry(RealSphError):
    pass
