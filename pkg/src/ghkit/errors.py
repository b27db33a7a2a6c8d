"""Structured domain errors.

Every error carries a stable ``code`` (the name surfaced in CLI JSON output)
and a ``details`` dict with witness indices or offending values, so callers
can react programmatically instead of parsing messages.
"""

from __future__ import annotations


class GHKitError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "Error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def payload(self) -> dict:
        return {"error": self.code, "message": str(self), **self.details}


class MetricValidationError(GHKitError):
    """A distance matrix violates a metric (or semi-metric) axiom."""


class NonzeroDiagonalError(MetricValidationError):
    code = "NonzeroDiagonal"

    def __init__(self, i: int, value: float):
        super().__init__(f"diagonal entry ({i},{i}) is {value!r}, expected 0", i=i, value=value)


class NegativeEntryError(MetricValidationError):
    code = "NegativeEntry"

    def __init__(self, i: int, j: int, value: float):
        super().__init__(f"entry ({i},{j}) is negative: {value!r}", i=i, j=j, value=value)


class AsymmetricError(MetricValidationError):
    code = "Asymmetric"

    def __init__(self, i: int, j: int):
        super().__init__(f"entries ({i},{j}) and ({j},{i}) differ", i=i, j=j)


class ZeroOffDiagonalError(MetricValidationError):
    code = "ZeroOffDiagonal"

    def __init__(self, i: int, j: int):
        super().__init__(f"distinct points {i} and {j} are at distance 0", i=i, j=j)


class TriangleViolationError(MetricValidationError):
    code = "TriangleViolation"

    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"d({i},{j}) > d({i},{k}) + d({k},{j})", i=i, j=j, k=k)


class EmptySubsetError(GHKitError):
    code = "EmptySubset"

    def __init__(self, name: str = "subset"):
        super().__init__(f"{name} must be non-empty")


class NotANetError(GHKitError):
    code = "NotANet"

    def __init__(self, witness: int, epsilon: float, gap: float):
        super().__init__(
            f"point {witness} is at distance {gap!r} >= {epsilon!r} from the claimed net",
            witness=witness, epsilon=epsilon, gap=gap,
        )


class BudgetExceededError(GHKitError):
    code = "BudgetExceeded"

    def __init__(self, budget: int):
        super().__init__(f"search exceeded the node budget of {budget}", budget=budget)


class IndexOutOfRangeError(GHKitError):
    code = "IndexOutOfRange"

    def __init__(self, index: int, size: int, side: str):
        super().__init__(f"index {index} out of range for {side} of size {size}",
                         index=index, size=size, side=side)


class TooLargeError(GHKitError):
    code = "TooLarge"

    def __init__(self, n: int, m: int, cap: int):
        super().__init__(f"{n}x{m} exceeds the enumeration cap n*m <= {cap}", n=n, m=m, cap=cap)


class NotACorrespondenceError(GHKitError):
    code = "NotACorrespondence"

    def __init__(self, reason: str):
        super().__init__(f"relation is not a correspondence: {reason}")


class LambdaOutOfRangeError(GHKitError):
    code = "LambdaOutOfRange"

    def __init__(self, lam: float):
        super().__init__(f"interpolation weight {lam!r} outside [0, 1]", value=lam)


class TOutOfRangeError(GHKitError):
    code = "TOutOfRange"

    def __init__(self, t: float, d: float):
        super().__init__(f"parameter t={t!r} outside [0, {d!r}]", t=t, d=d)


class DegenerateGeodesicError(GHKitError):
    code = "DegenerateGeodesic"

    def __init__(self, t: float):
        super().__init__(f"endpoints coincide (d = 0); only t = 0 is allowed, got {t!r}", t=t)


class ParameterOrderError(GHKitError):
    code = "ParameterOrder"

    def __init__(self, s: float, t: float, d: float):
        super().__init__(f"need 0 <= s <= t <= d, got s={s!r}, t={t!r}, d={d!r}", s=s, t=t, d=d)


class NotCertifiedError(GHKitError):
    code = "NotCertified"

    def __init__(self, lower: float, upper: float):
        super().__init__(
            f"solver budget exhausted; distance only bracketed in [{lower!r}, {upper!r}]",
            lower=lower, upper=upper,
        )


class BadResolutionError(GHKitError):
    code = "BadResolution"

    def __init__(self, message: str):
        super().__init__(message)


class TooCoarseError(GHKitError):
    code = "TooCoarse"

    def __init__(self, mesh: float, needed: float):
        super().__init__(
            f"sample mesh {mesh!r} is not finer than {needed!r}; refine the sampling",
            mesh=mesh, needed=needed,
        )


class SizeOverflowError(GHKitError):
    code = "SizeOverflow"

    def __init__(self, size: int, cap: int):
        super().__init__(f"product space would have {size} points, cap is {cap}",
                         size=size, cap=cap)
