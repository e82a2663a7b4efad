"""Exception hierarchy shared by every module."""
from __future__ import annotations

from typing import Any


class ChiForbError(Exception):
    """Base class for all package errors."""


# -- graph construction -------------------------------------------------------

class GraphError(ChiForbError, ValueError):
    pass


class LoopArc(GraphError):
    def __init__(self, arc):
        self.arc = tuple(arc)
        super().__init__(f"loop arc {self.arc}")


class DigonArc(GraphError):
    def __init__(self, arc):
        self.arc = tuple(arc)
        super().__init__(f"arc {self.arc} and its reverse are both present")


class VertexOutOfRange(GraphError):
    def __init__(self, arc, n):
        self.arc = tuple(arc)
        self.n = n
        super().__init__(f"arc {self.arc} has an endpoint outside 0..{n - 1}")


class SizeMismatch(GraphError):
    pass


class UnreachableVertex(GraphError):
    def __init__(self, vertices):
        self.vertices = sorted(vertices)
        super().__init__(f"vertices not reachable from the base set: {self.vertices}")


class NotAcyclic(GraphError):
    pass


class NotTournament(GraphError):
    pass


class NotATree(GraphError):
    pass


# -- size caps ------------------------------------------------------------------

class TooLarge(ChiForbError, ValueError):
    pass


class PatternTooLarge(TooLarge):
    pass


# -- relation predicates --------------------------------------------------------

class NotStable(ChiForbError, ValueError):
    def __init__(self, name, arc):
        self.name = name
        self.arc = tuple(arc)
        super().__init__(f"set {name} is not stable: arc {self.arc}")


class NotDisjoint(ChiForbError, ValueError):
    pass


class BadTau(ChiForbError, ValueError):
    pass


class BadInterval(ChiForbError, ValueError):
    pass


# -- class membership / structure -----------------------------------------------

class NotInClass(ChiForbError):
    """The input is outside the class the procedure is defined on."""

    def __init__(self, reason: str, witness: Any = None):
        self.reason = reason
        self.witness = witness
        msg = reason if witness is None else f"{reason}: {witness}"
        super().__init__(msg)


class StructureViolation(ChiForbError):
    """A structural claim failed on a class member.

    Raised only when a proved statement appears to be contradicted, so the
    offending instance is kept for inspection.
    """

    def __init__(self, claim: str, graph=None, witness: Any = None):
        self.claim = claim
        self.graph = graph
        self.witness = witness
        super().__init__(f"structure violation ({claim}): {witness}")

    def to_dict(self) -> dict:
        out: dict = {"claim": self.claim, "witness": _jsonable(self.witness)}
        if self.graph is not None:
            out["graph"] = self.graph.to_dict()
        return out


class OddCycleFound(ChiForbError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"odd cycle {self.cycle}")


# -- generators -----------------------------------------------------------------

class BadSpec(ChiForbError, ValueError):
    pass


class BudgetExhausted(ChiForbError):
    pass


def _jsonable(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj
