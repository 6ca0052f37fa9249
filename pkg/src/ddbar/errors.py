"""Exception hierarchy.

Every error carries a short machine-readable ``code``. The CLI maps
:class:`ParseError` subclasses to exit status 2 and everything else to 1.
"""


class DdbarError(Exception):
    code = "E_COMPUTE"


class ParseError(DdbarError):
    """Malformed input text, with an optional 1-based line/column."""

    code = "E_PARSE"

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


class ManifestSyntaxError(ParseError):
    code = "E_SYNTAX"

    def __init__(self, message, line=None, column=None, expected=()):
        self.expected = tuple(expected)
        if self.expected:
            message = f"{message} (expected {', '.join(self.expected)})"
        super().__init__(message, line, column)


class UndeclaredGenerator(ParseError):
    code = "E_UNDECLARED"


class BadCoefficient(ParseError):
    code = "E_COEFF"


class DiamondFormatError(ParseError):
    code = "E_DIAMOND_FORMAT"


class DivisionByZero(DdbarError, ZeroDivisionError):
    code = "E_DIV_ZERO"


class OrderMismatch(DdbarError):
    code = "E_ORDER"


class GeneratorCountMismatch(DdbarError):
    code = "E_GENS"


class NonHomogeneousInput(DdbarError):
    code = "E_NONHOMOGENEOUS"


class BadBidegree(DdbarError):
    code = "E_BIDEGREE"


class IntegrabilityFailure(DdbarError):
    """``d^2 != 0`` on a generator; ``residual`` is the offending nonzero form."""

    code = "E_INTEGRABILITY"

    def __init__(self, message, generator=None, residual=None):
        self.generator = generator
        self.residual = residual
        super().__init__(message)


class NotInvertible(DdbarError):
    code = "E_NOT_INVERTIBLE"


class NotChainMap(DdbarError):
    code = "E_NOT_CHAIN_MAP"

    def __init__(self, message, generator=None, residual=None):
        self.generator = generator
        self.residual = residual
        super().__init__(message)


class GroupTooLarge(DdbarError):
    code = "E_GROUP_ORDER"


class DimensionMismatch(DdbarError):
    code = "E_DIMENSION"


class UnknownName(DdbarError):
    code = "E_UNKNOWN"
