"""Exception types shared across the package."""


class MeasureSpecError(ValueError):
    """A measure specification violates its invariants."""


class DomainError(ValueError):
    """An interval or point falls outside a measure's domain."""


class AtomicMeasureError(RuntimeError):
    """An operation requiring a non-atomic measure was given atoms."""


class QuadratureError(RuntimeError):
    """A quadrature could not certify the requested accuracy."""


class CertificationError(RuntimeError):
    """A search exhausted its limits without certifying the target bound."""
