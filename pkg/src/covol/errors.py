"""Exception hierarchy shared by all covol modules."""

from __future__ import annotations


class CovolError(Exception):
    """Base class for computational errors (CLI exit code 1)."""


class ContradictionError(CovolError):
    """Stored data contradicts a computed value (CLI exit code 2)."""


# numfield
class NotMonic(CovolError):
    pass


class NotIrreducible(CovolError):
    pass


class NotTotallyReal(CovolError):
    pass


class NotSquarefree(CovolError):
    pass


class IndexUnresolved(CovolError):
    pass


class IndexObstruction(CovolError):
    def __init__(self, p: int, message: str | None = None):
        self.p = p
        super().__init__(message or f"prime {p} divides the index of Z[theta]; no override supplied")


class ZeroElement(CovolError):
    pass


class PrecisionCapExceeded(CovolError):
    pass


# arith-invariants
class UnverifiedUnits(CovolError):
    pass


class DatasetContradiction(ContradictionError):
    pass


class MissingClassData(CovolError):
    pass


class NonIntegralDegree(CovolError):
    pass


# zeta
class TailTooWide(CovolError):
    pass


class NoRational(CovolError):
    pass


class Ambiguous(CovolError):
    def __init__(self, candidates, message: str | None = None):
        self.candidates = list(candidates)
        super().__init__(message or f"interval holds several admissible rationals, e.g. {self.candidates[:3]}")


class NotFundamental(CovolError):
    pass


# covolume
class MissingInvariant(CovolError):
    pass


class TPrimeExceedsT(CovolError):
    pass


class ParityError(CovolError):
    pass


# bounds
class QuadratureBudgetExceeded(CovolError):
    pass


class DegreeOutOfRange(CovolError):
    pass


# survey
class SplittingUnavailable(CovolError):
    pass


class DatasetIncomplete(CovolError):
    pass
