"""Exception types shared across the package.

Exit-code mapping for the CLI/service lives in cli.py: schema problems are
1, unsupported cases 2, exhausted budgets/precision 3.
"""


class GradedSKError(Exception):
    """Base class for all package errors."""


class ContainmentError(GradedSKError):
    """A lattice expected to sit inside another one does not."""


class NotInKernelError(GradedSKError):
    """A supplied module element is not killed by the norm map."""


class UnsupportedCaseError(GradedSKError):
    """The requested computation is outside the implemented case analysis."""


class BudgetExceededError(GradedSKError):
    """An enumeration would exceed the configured budget."""


class OrbitBudgetError(BudgetExceededError):
    """A conjugacy-orbit search would exceed the configured budget."""


class ZeroElementError(GradedSKError):
    """Zero passed where a nonzero element is required."""


class DivisorMismatchError(GradedSKError):
    """Two skew polynomials do not have equal divisors."""


class NotLambdaPolyError(GradedSKError):
    """Polynomial violates the slope inequalities for the given weight."""


class NotSimpleRootError(GradedSKError):
    """Residual root is not simple, so lifting is not possible."""


class NotCoprimeError(GradedSKError):
    """Residual factors are not coprime, so lifting is not possible."""


class NotTameError(GradedSKError):
    """Extension step fails the tameness test."""


class PrecisionExhaustedError(GradedSKError):
    """Working precision is insufficient to certify the result."""


class SplittingBaseError(GradedSKError):
    """Supplied base is not a splitting base for the valuation."""
