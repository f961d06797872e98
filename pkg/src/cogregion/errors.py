"""Exception hierarchy shared by every module of the package."""


class RegionError(Exception):
    """Base class for all errors raised by cogregion."""


class SpecError(RegionError, ValueError):
    """A channel specification violates one of its invariants."""

    def __init__(self, field: str, value, message: str | None = None):
        self.field = field
        self.value = value
        super().__init__(message or f"invalid value for {field!r}: {value!r}")


class NonPositivePower(SpecError):
    pass


class NonPositiveNoise(SpecError):
    pass


class NonFiniteCoefficient(SpecError):
    pass


class VariantUnsupported(RegionError):
    """The requested model variant has no Gaussian construction."""


class OverlappingSets(RegionError, ValueError):
    pass


class SingularSubmatrix(RegionError, ArithmeticError):
    pass


class MissingVariable(RegionError, KeyError):
    pass


class DegenerateSystem(RegionError, ArithmeticError):
    pass


class Unbounded(RegionError):
    pass


class EmptySlice(RegionError):
    pass
