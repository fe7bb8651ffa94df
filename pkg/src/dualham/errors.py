"""Exception types shared across the package."""


class DualhamError(Exception):
    """Base class for all library errors."""


# --- embedded graph construction ---

class AsymmetricAdjacency(DualhamError):
    """u lists v as a neighbour but v does not list u."""


class MultiEdgeOrLoop(DualhamError):
    """A rotation contains a repeated neighbour or a self-loop."""


class NonPlanarEmbedding(DualhamError):
    """Face tracing contradicts Euler's formula."""


class Disconnected(DualhamError):
    """The graph is not connected."""


class NotEvenTriangulation(DualhamError):
    """Not a simple even plane triangulation on >= 4 vertices."""


class DegreeBelowFour(DualhamError):
    """A triangulation vertex has degree below 4."""


# --- bipartite / mod-4 structure ---

class NotBipartite(DualhamError):
    """An odd cycle prevents a 2-typing."""


class CycleCapExceeded(DualhamError):
    """Simple-cycle enumeration exceeded the configured cap; the result is unknown."""


class NotCPath(DualhamError):
    """Path does not meet the subgraph exactly in its two ends."""


class PathConditionViolated(DualhamError):
    """Path fails the cut-path condition (degree-2 interior, mixed-type ends of degree >= 3)."""


class NoSuchBlock(DualhamError):
    """Requested block is not a 2-connected block of the reduced graph."""


class NoCutPath(DualhamError):
    """No path of the graph satisfies the cut-path condition."""


class NotInFamilyH(DualhamError):
    """Graph has a cycle of length not congruent to 0 mod 4."""


class NotOn4Cycle(DualhamError):
    """The two given vertices are not the opposite pair of any 4-cycle."""


# --- partition machinery ---

class CaseUnmatched(DualhamError):
    """An instance fell outside a case analysis that should be exhaustive."""


class ConditionViolated(DualhamError):
    """An incremental colouring-extension condition failed.

    Attributes:
        step: index of the path step at which the audit failed.
        which: name of the violated condition.
    """

    def __init__(self, step, which, message=""):
        super().__init__(message or f"condition {which!r} violated at step {step}")
        self.step = step
        self.which = which


class ConstraintInvalid(DualhamError):
    """Seed sets fail the tree-partition preconditions."""


class SearchExhausted(DualhamError):
    """Complete backtracking found no tree partition; potential counterexample."""


class NotTreePartition(DualhamError):
    """A claimed partition does not induce two trees."""


class NotHamilton(DualhamError):
    """A claimed cycle is not a Hamilton cycle of the graph."""


class CapExceeded(DualhamError):
    """Hamilton-cycle enumeration exceeded the partial-state cap."""


class HNotInFamily(DualhamError):
    """The big-vertex hypothesis graph has a cycle of length not 0 mod 4."""


class HComponentNot2Connected(DualhamError):
    """A component of the big-vertex hypothesis graph is not 2-connected."""


class BipyramidSpecialCase(DualhamError):
    """The triangulation is a bipyramid; fan-path machinery does not apply."""


# --- generators ---

class SizeTooSmall(DualhamError):
    """Generator parameter below the documented minimum."""


class SizeOutOfRange(DualhamError):
    """Generator parameter outside the documented desk-scale bounds."""


class NoneFound(DualhamError):
    """Filtered search produced no instance."""


# --- cli ---

class IoError(DualhamError):
    """Input file could not be read."""


class ParseError(DualhamError):
    """Input file is not a valid graph description."""
