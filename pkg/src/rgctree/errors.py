"""Exception hierarchy shared by all modules."""


class RGCError(Exception):
    """Base class for every error raised by the package."""


class UnrootedTree(RGCError):
    pass


class UnknownVertex(RGCError):
    pass


class UnknownTaxon(RGCError):
    pass


class TerminalEdge(RGCError):
    pass


class InvalidTree(RGCError):
    """The vertex/edge data does not describe a tree."""


class TaxonMismatch(RGCError):
    pass


class InvariantError(RGCError):
    """A relation graph violates one of its structural invariants."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ModeError(RGCError):
    pass


class IllDefinedQuotient(RGCError):
    """Some but not all cross pairs between two zero-classes are related."""

    def __init__(self, message, classes=()):
        self.classes = tuple(classes)
        super().__init__(message)


class RejectedRelation(RGCError):
    """No labeled tree explains the relation; carries the rejection."""

    def __init__(self, rejection):
        self.rejection = rejection
        super().__init__(str(rejection))


class NotATree(RGCError):
    pass


class NotInClassT(RGCError):
    def __init__(self, message, vertex=None):
        self.vertex = vertex
        super().__init__(message)


class DoesNotExplain(RGCError):
    pass


class MalformedStar(RGCError):
    pass


class NotCentral(RGCError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class CapExceeded(RGCError):
    pass


class ParseError(RGCError):
    def __init__(self, message, line=None, col=None, expected=None):
        self.line = line
        self.col = col
        self.expected = expected
        where = ""
        if line is not None:
            where = f"line {line}, col {col}: "
        if expected:
            message = f"{message} (expected {expected})"
        super().__init__(where + message)


class LabelError(ParseError):
    pass


class DegreeError(ParseError):
    pass
