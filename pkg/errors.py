"""
Error Types for the Relation Extension Workbench

Every failure raised by the library derives from RelextError so the CLI can
map it to exit code 2. Mathematical "false" verdicts are never exceptions.
"""

from typing import Any, List, Optional


class RelextError(Exception):
    """Base class for all library errors."""


class ConfigError(RelextError, ValueError):
    """Malformed configuration value."""


class CorpusError(RelextError):
    """Corpus manifest is missing or inconsistent."""


class FieldError(RelextError, ValueError):
    """Unknown field name, non-prime modulus or non-invertible coercion."""


class AmbientMismatchError(RelextError, ValueError):
    """Two subspaces or matrices live in incompatible ambient spaces."""


class QuiverError(RelextError, ValueError):
    """Invalid quiver data (duplicate names, unknown vertices)."""


class ParseError(RelextError):
    """Syntax error in an input file, located by line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = "<string>"):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")


class CompositionError(ParseError):
    """A path literal contains consecutive arrows that do not compose."""


class RelationShapeError(ParseError):
    """A relation has non-parallel terms or a term shorter than two arrows."""


class NotFiniteDimensionalError(RelextError):
    """No nilpotency bound was found below the length cap."""

    def __init__(self, cap: int, reason: str = ""):
        self.cap = cap
        detail = f" ({reason})" if reason else ""
        super().__init__(f"algebra is not finite dimensional below length cap {cap}{detail}")


class NotTriangularError(RelextError):
    """The quiver has an oriented cycle."""


class GlobalDimensionExceededError(RelextError):
    """Some simple module has projective dimension above the required bound."""

    def __init__(self, bound: int, vertex: Optional[str] = None):
        self.bound = bound
        self.vertex = vertex
        super().__init__(f"global dimension exceeds {bound} (witness simple at vertex {vertex})")


class BimoduleClosureError(RelextError, ValueError):
    """A subspace is not closed under the bimodule action."""


class NotInBimoduleError(RelextError, ValueError):
    """An element does not lie in the relation bimodule."""


class PreconditionError(RelextError, ValueError):
    """An operation was called with inputs violating its precondition."""


class KeepNotAlignedError(PreconditionError):
    """A kept new-arrow set is not a union of potential components."""


class IncompatibleMapError(RelextError, ValueError):
    """An arrow map does not respect vertices or names unknown arrows."""


class RelationsViolatedError(RelextError):
    """A representation does not satisfy the relations of its algebra."""


class DecompositionInconclusiveError(RelextError):
    """No splitting endomorphism was found although the module is not local."""


class DecomposableInputError(RelextError, ValueError):
    """An operation requiring an indecomposable module got a decomposable one."""


class CapExceededError(RelextError):
    """Knitting registered more modules than the cap allows."""

    def __init__(self, cap: int, frontier: List[Any]):
        self.cap = cap
        self.frontier = frontier
        super().__init__(f"module cap {cap} exceeded; frontier has {len(frontier)} unprocessed modules")


class IncompleteKnitError(RelextError):
    """Knitting terminated without reaching every injective or with a broken mesh."""


class ArrowMultiplicityConflictError(IncompleteKnitError):
    """Two constructions disagree on the multiplicity of an irreducible map."""

    def __init__(self, source: str, target: str, recorded: int, found: int):
        self.source = source
        self.target = target
        self.recorded = recorded
        self.found = found
        super().__init__(f"irreducible map {source} -> {target} recorded with multiplicity {recorded}, "
                         f"now found with {found}")


class ModuleNotFoundInRegistryError(RelextError):
    """A module expected in an AR quiver registry is missing."""


class SearchCapExceededError(RelextError):
    """A combinatorial search visited more candidates than allowed."""
