"""Bound states |n,l> built by the factorization chain.

The top state of each energy shell, l = n - 1, is fixed by the subsidiary
condition lower_{n-1} w = 0, which gives w = r^(n-1) exp(-r/n).  Lower l
states follow by applying raising operators right to left::

    |n,l> ∝ raise_l raise_{l+1} ... raise_{n-2} |n,n-1>

States are kept unnormalized with rational coefficients; their squared
norm is cached alongside so expectation values stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import QuantumNumberError, check_quantum_numbers
from .operalg import apply, build_raise
from .radialfunc import PolyExp, energy, factorial, format_rational, inner_product

__all__ = [
    "RadialState",
    "top_state",
    "build_state",
    "norm_gap_product",
    "normalization_constant_sq",
]


@dataclass(frozen=True)
class RadialState:
    n: int
    l: int
    wavefunction: PolyExp
    normsq: Fraction

    def __post_init__(self):
        if self.normsq <= 0:
            raise ValueError("normsq must be positive")

    @classmethod
    def from_wavefunction(cls, n: int, l: int, w: PolyExp) -> "RadialState":
        return cls(n, l, w, inner_product(w, w))

    @property
    def energy(self) -> Fraction:
        return energy(self.n - 1)

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "wavefunction": self.wavefunction.to_records(),
            "normsq": format_rational(self.normsq),
            "energy": format_rational(self.energy),
        }


@lru_cache(maxsize=None)
def top_state(n: int) -> RadialState:
    if not isinstance(n, int) or n < 1:
        raise QuantumNumberError(f"n must be a positive integer (got {n!r})")
    w = PolyExp.monomial(1, n - 1, Fraction(1, n))
    return RadialState.from_wavefunction(n, n - 1, w)


@lru_cache(maxsize=None)
def build_state(n: int, l: int) -> RadialState:
    check_quantum_numbers(n, l)
    if l == n - 1:
        return top_state(n)
    # one raising step on top of the l+1 state reuses the cached chain
    w = apply(build_raise(l), build_state(n, l + 1).wavefunction)
    return RadialState.from_wavefunction(n, l, w)


def norm_gap_product(n: int, l: int) -> Fraction:
    """prod_{i=l}^{n-2} (E_{n-1} - E_i); 1 for the top state."""
    check_quantum_numbers(n, l)
    out = Fraction(1)
    e_top = energy(n - 1)
    for i in range(l, n - 1):
        out *= e_top - energy(i)
    return out


def normalization_constant_sq(n: int, l: int) -> Fraction:
    """|C_nl|^2 = (2n^2)^(n-l-1) [(n-1)!/l!]^2 (n+l)! / ((2n-1)! (n-l-1)!).

    C_nl itself is generally irrational; its square is not.
    """
    check_quantum_numbers(n, l)
    k = n - l - 1
    ratio = Fraction(factorial(n - 1), factorial(l))
    return (
        Fraction(2 * n * n) ** k
        * ratio**2
        * Fraction(factorial(n + l), factorial(2 * n - 1) * factorial(k))
    )
