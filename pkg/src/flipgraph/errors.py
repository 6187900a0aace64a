"""Exception hierarchy for triangulation and geometry failures."""


class FlipGraphError(Exception):
    """Base class for all errors raised by this package."""


# --- combinatorial validation ---

class InvolutionViolation(FlipGraphError):
    """A face gluing is not matched by its inverse on the other side."""


class UngluedFace(FlipGraphError):
    """A face of the triangulation has no gluing (boundary face)."""


class NonOrientable(FlipGraphError):
    """No consistent orientation assignment exists for the tetrahedra."""


class InvalidEdgeIdentification(FlipGraphError):
    """An edge is identified with itself reversed (non-manifold edge)."""


class NonTorusCusp(FlipGraphError):
    """A vertex link is not a torus."""


# --- isomorphism signatures ---

class MalformedSignature(FlipGraphError):
    """An isomorphism signature string cannot be decoded."""


class TooLarge(FlipGraphError):
    """Triangulation exceeds the supported signature size range."""


# --- cyclic words ---

class WordError(FlipGraphError):
    """Base class for monodromy word parsing errors."""


class EmptyWord(WordError):
    pass


class BadCharacter(WordError):
    pass


class SingleLetterWord(WordError):
    """The word uses only one of L, R, so the monodromy is not Anosov."""


# --- moves ---

class InvalidSite(FlipGraphError):
    """A requested move site does not satisfy its preconditions."""


class SameTetrahedron(InvalidSite):
    """2-3 move requested on a face gluing a tetrahedron to itself."""


class WrongDegree(InvalidSite):
    """3-2 move requested at an edge whose degree is not 3."""


class RepeatedTetrahedron(InvalidSite):
    """3-2 move requested at an edge whose tetrahedra are not distinct."""


class DegenerateInput(FlipGraphError):
    """A shape parameter is too close to 0, 1 or infinity."""


class InconsistentTriple(FlipGraphError):
    """Shape triple violates the r*u*v = 1 product identity."""


class DegenerateShape(FlipGraphError):
    """Cannot develop the cusp through a degenerate corner."""


# --- explorer ---

class NotGeometricInput(FlipGraphError):
    """Operation requires a geometric triangulation."""


class SequenceNotFound(FlipGraphError):
    """The bounded re-geometrization search exhausted its space."""
