"""Exception hierarchy shared by every module of the toolkit."""


class SemilocError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(SemilocError, ValueError):
    """Input data does not describe a valid object."""


class AssociativityViolation(ValidationError):
    def __init__(self, i, j, k):
        self.witness = (i, j, k)
        super().__init__(f"(b{i} b{j}) b{k} != b{i} (b{j} b{k})")


class UnitViolation(ValidationError):
    def __init__(self, i):
        self.witness = i
        super().__init__(f"unit does not act as identity on b{i}")


class NotMultiplicative(ValidationError):
    def __init__(self, i, j):
        self.witness = (i, j)
        super().__init__(f"phi(b{i} b{j}) != phi(b{i}) phi(b{j})")


class UnitNotPreserved(ValidationError):
    pass


class ModulusMismatch(ValidationError):
    pass


class IdealContainsUnit(ValidationError):
    pass


class BimoduleViolation(ValidationError):
    pass


class NotASubmodule(ValidationError):
    pass


class NotAHomomorphism(ValidationError):
    pass


class DimensionCapExceeded(ValidationError):
    pass


class BudgetExceeded(SemilocError):
    """An enumeration would exceed the configured element budget."""


class CharTooSmall(SemilocError):
    """The trace-form radical needs p > dim(A)."""


class SplitBudgetExceeded(SemilocError):
    """Random splitting of a center or block ran out of trials."""


class NotLocal(SemilocError):
    pass


class CodomainNotFieldProduct(SemilocError):
    pass


class CoverViolation(SemilocError):
    pass


class NotBiuniform(SemilocError):
    pass


class CertificateFailure(SemilocError, AssertionError):
    """A computed certificate failed its re-verification."""


class ParseError(SemilocError, ValueError):
    def __init__(self, message, line, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
