"""Exception types shared across the package."""

from __future__ import annotations


class KPError(Exception):
    """Base class for domain errors raised by kpmoments."""


class QuantumNumberError(KPError, ValueError):
    """Raised for (n, l) outside 0 <= l <= n - 1, n >= 1."""


class MomentDoesNotExist(KPError, ValueError):
    """Raised when <r^m> diverges, i.e. m < -2l - 2."""

    def __init__(self, n: int, l: int, m: int):
        self.n, self.l, self.m = n, l, m
        super().__init__(
            f"moment does not exist: requires m >= -2l-2 (got n={n}, l={l}, m={m})"
        )


class RangeError(KPError, ValueError):
    """Raised when an argument is outside the range an identity is proved for."""


class DivergentIntegral(KPError, ArithmeticError):
    """Raised when an integrand has a net negative power of r."""

    def __init__(self, power: int):
        self.power = power
        super().__init__(f"integral diverges at r = 0: integrand contains r^{power}")


def check_quantum_numbers(n: int, l: int) -> None:
    if not isinstance(n, int) or not isinstance(l, int):
        raise QuantumNumberError(f"quantum numbers must be integers (got n={n!r}, l={l!r})")
    if n < 1:
        raise QuantumNumberError(f"n must be >= 1 (got n={n})")
    if not 0 <= l <= n - 1:
        raise QuantumNumberError(f"l must satisfy 0 <= l <= n-1 (got n={n}, l={l})")
