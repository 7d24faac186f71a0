"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ShintaniError(Exception):
    """Base class for every error raised by this package."""


class InputError(ShintaniError):
    """Malformed or inconsistent input (maps to CLI exit code 2)."""


class PrecisionError(ShintaniError):
    """Precision or convergence failure (maps to CLI exit code 3)."""


# kernel
class DivisionByZero(InputError, ZeroDivisionError):
    pass


class ModulusMismatch(InputError):
    pass


class SingularMatrix(InputError):
    pass


class NonInvertibleConstantTerm(InputError):
    pass


class PrecisionExhausted(PrecisionError):
    pass


# number fields
class NotSublattice(InputError):
    pass


class NotARoot(InputError):
    pass


class Ramified(InputError):
    pass


class NotAUnit(InputError):
    pass


class SignNormalizationImpossible(InputError):
    pass


class DependentUnits(InputError):
    pass


class NotTotallyReal(InputError):
    pass


# cones
class DegenerateBasis(InputError):
    pass


class OnForbiddenHyperplane(InputError):
    pass


class ZeroCoordinateY(InputError):
    pass


class NonGenericPoint(ShintaniError):
    pass


class TruncationInsufficient(ShintaniError):
    pass


class NotTotallyPositive(ShintaniError):
    pass


# cocycle
class PoleAtEvaluationPoint(InputError):
    pass


class DegenerateTuple(InputError):
    pass


# generating functions
class NotFullRank(InputError):
    pass


class BadPrime(InputError):
    pass


class NotSmooth(InputError):
    pass


class NotRegular(InputError):
    pass


class WrongMode(InputError):
    pass


class GaloisInstability(ShintaniError):
    pass


class PoleOnBall(PrecisionError):
    pass


# L-values
class NonEmptyIk(InputError):
    pass


class EulerFactorVanishes(ShintaniError):
    pass


class NonApplicable(InputError):
    pass


class PsiNotTrivial(InputError):
    pass


class PhiZeroAtOrigin(InputError):
    pass


class QuadratureNotConverged(PrecisionError):
    pass


class NotFundamental(InputError):
    pass
