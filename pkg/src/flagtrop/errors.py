"""Exception taxonomy shared by all modules.

Every domain failure raises a subclass of FlagtropError, so callers (CLI,
service) can distinguish domain errors (exit code 1) from usage bugs.
"""


class FlagtropError(Exception):
    """Base class for all domain errors."""


class ZeroSeries(FlagtropError):
    """A Puiseux series is identically zero where a nonzero one is required."""


class PrecisionExhausted(FlagtropError):
    """Cancellation consumed every reliable coefficient of a truncated series."""


class DivisionByZeroSeries(FlagtropError):
    """Division by the zero series."""


class NotSubtractionFree(FlagtropError):
    """A rational function is not a positive sum of Laurent monomials."""


class NonIntegralWeight(FlagtropError):
    """An integral dominant weight was required."""


class RankTooLarge(FlagtropError):
    """The requested rank exceeds the configured bound."""


class NotDominant(FlagtropError):
    """Weight lift is not weakly decreasing."""


class NotIdeal(FlagtropError):
    """Array violates the ideal max-property."""


class DimensionMismatch(FlagtropError):
    """A point has the wrong number of coordinates."""


class NoConvergence(FlagtropError):
    """An iterative solve failed to converge (signals a bug, not math)."""


class NotInBigCell(FlagtropError):
    """A Gauss-type factorization hit a vanishing pivot minor."""


class SymbolicBlowup(FlagtropError):
    """A symbolic computation exceeded its size/degree budget."""


class FactorizationAmbiguity(FlagtropError):
    """A triangular factorization could not be solved step by step."""


class LowestWeightAmbiguous(FlagtropError):
    """Several candidate lowest-weight monomials survive all filters."""


class NoSolution(FlagtropError):
    """A linear/weight equation has no solution in the search range."""


class ZeroSection(FlagtropError):
    """The zero section has no valuation."""


class NotIntegral(FlagtropError):
    """The weight is not in the integrality lattice P."""
