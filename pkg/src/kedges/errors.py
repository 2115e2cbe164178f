"""Exception hierarchy shared by all modules."""


class KEdgesError(Exception):
    """Base class for every error raised by this package."""


class MalformedSpec(KEdgesError, ValueError):
    """Drawing data is structurally broken (missing vertices, bad rotations)."""


class InconsistentCrossings(KEdgesError):
    """Crossing records of two edges do not mirror each other."""


class GoodnessViolation(KEdgesError):
    """The drawing is not good (adjacent edges cross, or a pair crosses twice)."""

    def __init__(self, message, edges=None):
        super().__init__(message)
        self.edges = edges


class NotSphere(KEdgesError):
    """Euler's formula fails: rotations and signs do not describe a sphere."""


class UnknownVertex(KEdgesError, KeyError):
    pass


class DegenerateTriangle(KEdgesError, ValueError):
    pass


class DegeneratePointSet(KEdgesError, ValueError):
    """Points are not in general position; ``witness`` holds the offending tuple."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class ConstructionDegeneracy(KEdgesError):
    pass


class DegenerateChords(ConstructionDegeneracy):
    pass


class BudgetExhausted(KEdgesError):
    """Search ran out of budget; ``best`` and ``best_cost`` hold the best found."""

    def __init__(self, message, best=None, best_cost=None):
        super().__init__(message)
        self.best = best
        self.best_cost = best_cost


class IdentityViolation(KEdgesError):
    """An exact identity failed. Always an implementation bug."""

    def __init__(self, message, face=None):
        super().__init__(message)
        self.face = face


class RecursionViolation(IdentityViolation):
    def __init__(self, message, k=None, vertex=None, face=None):
        super().__init__(message, face=face)
        self.k = k
        self.vertex = vertex


class MalformedCert(KEdgesError, ValueError):
    pass


class NotOdd(KEdgesError, ValueError):
    pass
