# errors.py
"""Exception types shared by the special-function, operator and spectrum modules."""


class DunklError(Exception):
    """Base class for every error raised by this project."""


class InputError(DunklError, ValueError):
    """Non-finite or malformed input."""


class DomainError(InputError):
    """Argument outside the domain on which the function is defined."""


class RegularityError(DomainError):
    """Requested solution branch is not regular at the origin."""


class ClassificationError(DunklError, ValueError):
    """Quantum numbers that contradict the reflection-parity classification."""


class AdmissibilityError(ClassificationError):
    """A state label that fails its parity row. Keeps every violated constraint."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("inadmissible state: " + "; ".join(self.violations))


class SingularPointError(DunklError, ValueError):
    """Evaluation point too close to a reflection-singular locus."""


class NormalizationUndefinedError(DunklError, ArithmeticError):
    """Closed-form normalization constant has a nonpositive radicand."""


class AccuracyError(DunklError, ArithmeticError):
    """Numerical procedure did not reach the requested accuracy."""

    def __init__(self, message: str, estimate: float):
        self.estimate = estimate
        super().__init__(f"{message} (achieved error estimate {estimate:.3e})")


class ConfigError(DunklError, ValueError):
    """Invalid run or verification configuration."""
