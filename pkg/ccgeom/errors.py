"""Exception hierarchy for ccgeom.

Geometry operations raise subclasses of GeometryError. The command line layer
raises subclasses of CliError, which carry the process exit code.
"""


class GeometryError(Exception):
    """Base class for every geometric failure."""


class InvalidParameter(GeometryError, ValueError):
    """A constructor or operation received a parameter outside its domain."""


class AntipodalPair(GeometryError):
    """Two points of S^2 are antipodal; the connecting geodesic is not unique."""


class LinesIntersect(GeometryError):
    """Two geodesics share a finite point."""


class LinesAsymptotic(GeometryError):
    """Two geodesics share exactly one ideal point."""


class OutOfChartDomain(GeometryError):
    """A point lies outside the domain of the requested model chart."""


class StepOutOfRange(GeometryError):
    """Finite-difference step outside (1e-6, 1e-2)."""


class CoincidentCycles(GeometryError):
    """Two cycles are equal as point sets."""


class DegenerateContact(GeometryError):
    """Interiors of two regions are disjoint while their closures touch."""


class DegenerateConfiguration(GeometryError):
    """A vertex lies on more than two boundary cycles, or alternation fails."""


class HypothesisViolated(GeometryError):
    """A lemma's hypothesis fails; `clause` names the failing clause."""

    def __init__(self, clause, message=""):
        self.clause = clause
        super().__init__(f"hypothesis ({clause}) violated" + (f": {message}" if message else ""))


class NotCongruent(GeometryError):
    """Cycles that must be congruent are not."""


class CommonFinitePoint(GeometryError):
    """Two hypercycles meet at a finite point."""


class HemisphereViolation(GeometryError):
    """Points on S^2 do not lie in an open hemisphere."""


class Unsupported(GeometryError):
    """Operation not available for this space or region variant."""


class AnglesTooSmall(GeometryError):
    """alpha_K + alpha_L <= pi, the covering construction does not apply."""


class NestedDisks(GeometryError):
    """One disk lies inside the other; the hull is the larger disk."""


class CliError(Exception):
    """Error surfaced by the command line; `exit_code` is returned by main()."""

    exit_code = 1


class UnknownExperiment(CliError):
    exit_code = 2


class ParseError(CliError):
    exit_code = 2


class SpaceMismatch(CliError):
    exit_code = 2


class IOFailure(CliError):
    exit_code = 3
