"""Exception hierarchy shared by every module of the package."""


class PiManifoldError(Exception):
    """Base class for all errors raised by :mod:`pimanifold`."""


class DimMismatch(PiManifoldError, ValueError):
    pass


class SlotMismatch(PiManifoldError, ValueError):
    pass


class MissingMetric(PiManifoldError, ValueError):
    pass


class SingularMetric(PiManifoldError, ValueError):
    pass


class NotSymmetric(PiManifoldError, ValueError):
    pass


class IdentityViolation(PiManifoldError, AssertionError):
    """An identity that holds by construction failed.

    This always signals a bug in the engine, never a property of the input.
    """

    def __init__(self, name, residual=None):
        self.name = name
        self.residual = residual
        super().__init__(f"identity {name!r} violated")


class LemmaViolation(IdentityViolation):
    pass


class NaturalityViolation(IdentityViolation):
    pass


class UnsupportedClass(PiManifoldError, ValueError):
    pass


class ValidationError(PiManifoldError, ValueError):
    """Input data does not define a Riemannian Pi-manifold."""

    def __init__(self, failing):
        self.failing = list(failing)
        super().__init__("structure identities fail: " + ", ".join(self.failing))


class ParseError(PiManifoldError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
