"""Exception hierarchy shared by all modules."""


class K3SandwichError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""


class InputError(K3SandwichError, ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""


class VerificationError(K3SandwichError):
    """A mathematical check failed (CLI exit code 1)."""


# exactalg
class ZeroInput(InputError):
    pass


class NonUniformValuation(K3SandwichError):
    pass


# lattice
class InvalidParameter(InputError):
    pass


class OddResult(InputError):
    pass


class DegenerateLattice(InputError):
    pass


class GroupTooLarge(K3SandwichError):
    pass


class NonIntegralGlue(InputError):
    pass


class OddGlue(InputError):
    pass


class NonPrimitiveVector(InputError):
    pass


class DegenerateSublattice(InputError):
    pass


class NotInDual(InputError):
    pass


# quadform
class InvalidN(InputError):
    pass


class InvalidDiscriminant(InputError):
    pass


# ellsurf
class NonzeroConstantTerm(InputError):
    pass


class DegenerateLeadingCoefficient(InputError):
    pass


class NonMinimalModel(K3SandwichError):
    pass


class AdditiveAtNonRationalPlace(K3SandwichError):
    pass


class NonRationalPlace(K3SandwichError):
    pass


class PointNotOnCurve(InputError):
    pass


class SingularHeightGram(K3SandwichError):
    pass


class InconsistentData(VerificationError):
    pass


class DegenerateCurve(InputError):
    pass


# isogeny
class SingularKernel(InputError):
    pass


# series
class DegenerateParams(InputError):
    pass


class CriterionFailed(InputError):
    pass


class NoRepresentation(VerificationError):
    pass


class NoRationalPreimage(K3SandwichError):
    """The fibre of a 2-isogeny over a point has no Q(t)-rational point."""
