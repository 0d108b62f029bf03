"""Exception hierarchy shared by the library and the CLI."""


class C2Error(Exception):
    """Base class for all domain errors raised by c2compact."""

    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class CyclotomicOverflow(C2Error):
    code = "CyclotomicOverflow"


class RootNotSolvable(C2Error):
    code = "RootNotSolvable"

    def __init__(self, message, poly=None):
        super().__init__(message)
        self.poly = poly

    def to_json(self):
        out = super().to_json()
        if self.poly is not None:
            out["poly"] = self.poly
        return out


class InvalidSemidegree(C2Error):
    code = "InvalidSemidegree"


class NotInSpol(C2Error):
    code = "NotInSpol"


class InvalidFamily(C2Error):
    code = "InvalidFamily"


class UnboundedSections(C2Error):
    code = "UnboundedSections"


class NotEquisingular(C2Error):
    code = "NotEquisingular"


class InvalidBranch(C2Error):
    code = "InvalidBranch"


class KeyFormVerificationError(C2Error):
    code = "KeyFormVerificationError"


class SchemaError(C2Error):
    code = "SchemaError"

    def __init__(self, message, path=None):
        if path:
            message = f"{message} (at {path})"
        super().__init__(message)
        self.path = path


class UnreducedFraction(SchemaError):
    code = "UnreducedFraction"


class ExclusiveFields(SchemaError):
    code = "ExclusiveFields"


class UnknownField(SchemaError):
    code = "UnknownField"


class ParseError(SchemaError):
    code = "ParseError"
