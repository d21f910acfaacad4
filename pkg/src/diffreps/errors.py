"""Exception hierarchy.

Every error raised by the library derives from :class:`DiffRepsError` and
carries a short machine-readable ``code`` so the CLI can serialize it.
"""


class DiffRepsError(Exception):
    code = "error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"error": self.code, "message": str(self)}
        if self.details:
            out["details"] = {k: str(v) for k, v in self.details.items()}
        return out


class DivisionByZero(DiffRepsError, ZeroDivisionError):
    code = "DivisionByZero"


class ZeroElement(DiffRepsError, ValueError):
    code = "ZeroElement"


class InsufficientPrecision(DiffRepsError, ArithmeticError):
    code = "InsufficientPrecision"


class RingMismatch(DiffRepsError, TypeError):
    code = "RingMismatch"


class TooManyParameters(DiffRepsError, ValueError):
    code = "TooManyParameters"


class IndexOutOfSupport(DiffRepsError, IndexError):
    code = "IndexOutOfSupport"


class NegativeOrderOperatorPochhammer(DiffRepsError, ValueError):
    code = "NegativeOrderOperatorPochhammer"


class ScalarPoleInDenominator(DiffRepsError, ZeroDivisionError):
    code = "ScalarPoleInDenominator"


class ZeroDerivative(DiffRepsError, ValueError):
    code = "ZeroDerivative"


class NonInvertibleH(DiffRepsError, ValueError):
    code = "NonInvertibleH"


class MissingBranch(DiffRepsError, ValueError):
    code = "MissingBranch"


class DegenerateRepresentation(DiffRepsError, ValueError):
    code = "DegenerateRepresentation"


class NonScalarCasimir(DiffRepsError, ValueError):
    code = "NonScalarCasimir"


class OrderViolation(DiffRepsError, ValueError):
    code = "OrderViolation"


class SymbolRelationFailure(DiffRepsError, ValueError):
    code = "SymbolRelationFailure"


class AmbiguousBranch(DiffRepsError, ValueError):
    code = "AmbiguousBranch"


class RootNotInField(DiffRepsError, ValueError):
    code = "RootNotInField"


class NonInvertibleSubstitution(DiffRepsError, ValueError):
    code = "NonInvertibleSubstitution"


class NotS1(DiffRepsError, ValueError):
    code = "NotS1"


class NotOverPowerSeries(DiffRepsError, ValueError):
    code = "NotOverPowerSeries"


class ValuationOutOfRange(DiffRepsError, ValueError):
    code = "ValuationOutOfRange"


class NoCanonicalForm(DiffRepsError, ValueError):
    code = "NoCanonicalForm"


class CasimirOne(DiffRepsError, ValueError):
    code = "CasimirOne"


class ConstraintViolated(DiffRepsError, ValueError):
    code = "ConstraintViolated"


class NotProportional(DiffRepsError, ArithmeticError):
    code = "NotProportional"


class ParseError(DiffRepsError, SyntaxError):
    code = "SyntaxError"

    def __init__(self, message, position=None, expected=()):
        super().__init__(message, position=position, expected=",".join(sorted(expected)))
        self.position = position
        self.expected = tuple(sorted(expected))

    def __str__(self):
        msg = self.args[0] if self.args else ""
        if self.position is not None:
            msg = f"{msg} at position {self.position}"
        if self.expected:
            msg = f"{msg} (expected one of: {', '.join(self.expected)})"
        return msg


class NonCommutativeDivision(ParseError):
    code = "NonCommutativeDivision"


class NotInvertible(DiffRepsError, ArithmeticError):
    code = "NotInvertible"
