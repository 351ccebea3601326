"""Exception hierarchy for flat_eta.

Every error raised by the library derives from FlatEtaError, so callers can
catch one type at the CLI boundary.
"""


class FlatEtaError(Exception):
    """Base class for all flat_eta errors."""


class NotFiniteOrder(FlatEtaError):
    """Matrix has no power equal to the identity below the search cap."""


class NotSignedPermutation(FlatEtaError):
    """Matrix is not of the form B e_i = +/- e_j(i)."""


class NotTwoPowerOrder(FlatEtaError):
    """Operation requires a matrix whose order is a power of two."""


class NotCyclotomicProduct(FlatEtaError):
    """Polynomial is not a product of cyclotomics Phi_d with d a 2-power or 1."""


class BadParity(FlatEtaError):
    """Integer arguments violate a parity precondition (N even / k odd)."""


class BadDimension(FlatEtaError):
    """Dimension is not congruent to 3 mod 4 (or otherwise out of range)."""


class PoleAtAngle(FlatEtaError):
    """cot evaluated at (a float too close to) a multiple of pi."""


class PoleAtOne(FlatEtaError):
    """Hurwitz zeta evaluated at its pole s = 1."""


class FixedRankNotOne(FlatEtaError):
    """The fixed sublattice of the dual lattice does not have rank one."""


class ResidualTooLarge(FlatEtaError):
    """A sum expected to be integral did not round cleanly."""


class Unattainable(FlatEtaError):
    """No manifold in the family attains the requested invariant."""


class HypothesisViolated(FlatEtaError):
    """Spec does not satisfy the hypotheses of the restricted eta formula."""


class InvalidSpec(FlatEtaError):
    """Manifold specification violates a structural invariant."""


class MetricUnknown(FlatEtaError):
    """Operation needs metric data (lattice/sign) the spec does not carry."""
