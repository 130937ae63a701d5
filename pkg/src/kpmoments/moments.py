"""Diagonal radial moments <n,l| r^m |n,l> from the Kramers-Pasternack recurrence.

The recurrence (natural units, a0 = 1)::

    0 = -(2m/n^2) <r^(m-1)> + 2(2m-1) <r^(m-2)>
        - (1/2)(m-1)((2l+1)^2 - (m-1)^2) <r^(m-3)>

is run upward from the seeds <r^0> = 1, <r^-1> = 1/n^2 and downward from
<r^-1>, <r^-2>.  The m = 1 instance degenerates and only yields <r^-1>, so
<r^-2> is obtained separately, algebraically, from the subsidiary condition
on the top state and the l -> l+1 ratio step of the factorization chain.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import MomentDoesNotExist, QuantumNumberError, RangeError, check_quantum_numbers
from .operalg import (
    RadialOp,
    build_hamiltonian,
    build_lower,
    build_raise,
    compose,
)
from .radialfunc import factorial, format_rational

__all__ = [
    "MomentValue",
    "kp_coefficients",
    "kp_residual",
    "moment",
    "top_inverse_second",
    "inverse_second",
    "ratio_step_check",
    "pasternack_inversion",
    "inversion_prefactor",
    "unit_string",
]


def unit_string(m: int) -> str:
    if m == 0:
        return ""
    if m == 1:
        return "a0"
    return f"a0^{m}"


@dataclass(frozen=True)
class MomentValue:
    """<n,l| r^power |n,l> = value * a0^power."""

    value: Fraction
    power: int
    n: int
    l: int

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError(f"diagonal moments are positive, got {self.value}")
        if self.power < -2 * self.l - 2:
            raise MomentDoesNotExist(self.n, self.l, self.power)

    @property
    def unit(self) -> str:
        return unit_string(self.power)

    def __str__(self):
        v = format_rational(self.value)
        return f"{v} {self.unit}" if self.unit else v


def kp_coefficients(n: int, l: int, m: int) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients of <r^(m-1)>, <r^(m-2)>, <r^(m-3)> in the recurrence."""
    a = Fraction(-2 * m, n * n)
    b = Fraction(2 * (2 * m - 1))
    c = Fraction(-(m - 1) * ((2 * l + 1) ** 2 - (m - 1) ** 2), 2)
    return a, b, c


def kp_residual(n: int, l: int, m: int, a, b, c) -> Fraction:
    """Left side of the recurrence for candidate <r^(m-1)>, <r^(m-2)>, <r^(m-3)>.

    Zero iff the triple satisfies the relation.
    """
    ka, kb, kc = kp_coefficients(n, l, m)
    return ka * Fraction(a) + kb * Fraction(b) + kc * Fraction(c)


# inverse second moment -------------------------------------------------


def _solve_balance(op: RadialOp, known: dict[int, Fraction], unknown: int) -> Fraction:
    """Solve <op> = 0 for the moment of r^unknown, op a multiplication operator."""
    if not op.is_multiplication():
        raise ValueError("balance operator must be a pure multiplication operator")
    rest = Fraction(0)
    for t in op.terms:
        if t.power != unknown:
            rest += t.coeff * known[t.power]
    lead = op.coefficient(unknown)
    if lead == 0:
        raise ArithmeticError(f"balance does not determine <r^{unknown}>")
    return -rest / lead


def top_inverse_second(n: int) -> Fraction:
    """<n,n-1| r^-2 |n,n-1>, from the subsidiary condition alone.

    On the top state lower_{n-1} annihilates the ket, so the expectation of
    (B^dag - B)^2 reduces to -<B B^dag>.  Stripped of constants that is

        <(1/2)(raise + lower)^2> = <lower raise / 2> = <H_n - H_{n-1}>,

    and since raise + lower = 2 W_{n-1} the derivative terms cancel, leaving
    a multiplication operator in r^0, r^-1, r^-2.  The first two moments are
    known (1 and 1/n^2), which fixes the third.
    """
    if not isinstance(n, int) or n < 1:
        raise QuantumNumberError(f"n must be a positive integer (got {n!r})")
    l = n - 1
    s = build_raise(l) + build_lower(l)
    balance = compose(s, s) * Fraction(1, 2) - (build_hamiltonian(n) - build_hamiltonian(l))
    return _solve_balance(balance, {0: Fraction(1), -1: Fraction(1, n * n)}, -2)


def _ratio_step_factor(l: int) -> Fraction:
    # <r^-2>_l / <r^-2>_{l+1} at fixed n
    return Fraction(2 * l + 3, 2 * l + 1)


def _inverse_second_value(n: int, l: int) -> Fraction:
    value = top_inverse_second(n)
    for k in range(n - 2, l - 1, -1):
        value *= _ratio_step_factor(k)
    return value


def inverse_second(n: int, l: int) -> MomentValue:
    """<n,l| r^-2 |n,l>, equal to 1/(n^3 (l + 1/2))."""
    check_quantum_numbers(n, l)
    return MomentValue(_inverse_second_value(n, l), -2, n, l)


def ratio_step_check(n: int, l: int) -> tuple[Fraction, Fraction]:
    """Both sides of <r^-2>_l = ((l+3/2)/(l+1/2)) <r^-2>_{l+1}, same n."""
    check_quantum_numbers(n, l)
    if l > n - 2:
        raise QuantumNumberError(f"no l+1 state at n={n} for l={l}")
    return inverse_second(n, l).value, _ratio_step_factor(l) * inverse_second(n, l + 1).value


# recurrence engine ------------------------------------------------------

_cache: dict[tuple[int, int], dict[int, Fraction]] = {}
_lock = threading.Lock()


def _ladder(n: int, l: int) -> dict[int, Fraction]:
    with _lock:
        table = _cache.get((n, l))
        if table is None:
            table = {
                0: Fraction(1),
                -1: Fraction(1, n * n),
                -2: _inverse_second_value(n, l),
            }
            _cache[(n, l)] = table
        return table


def _extend_up(n: int, l: int, table: dict[int, Fraction], m: int) -> None:
    k = max(table)
    while k < m:
        k += 1
        # recurrence at index k+1 gives <r^k> from <r^(k-1)>, <r^(k-2)>
        a, b, c = kp_coefficients(n, l, k + 1)
        table[k] = -(b * table[k - 1] + c * table[k - 2]) / a


def _extend_down(n: int, l: int, table: dict[int, Fraction], m: int) -> None:
    k = min(table)
    while k > m:
        k -= 1
        # recurrence at index k+3 gives <r^k> from <r^(k+2)>, <r^(k+1)>
        a, b, c = kp_coefficients(n, l, k + 3)
        if c == 0:
            raise MomentDoesNotExist(n, l, k)
        table[k] = -(a * table[k + 2] + b * table[k + 1]) / c


def moment(n: int, l: int, m: int) -> MomentValue:
    """<n,l| r^m |n,l> in units a0^m, exact."""
    check_quantum_numbers(n, l)
    if not isinstance(m, int):
        raise TypeError(f"m must be an integer, got {m!r}")
    if m < -2 * l - 2:
        raise MomentDoesNotExist(n, l, m)
    table = _ladder(n, l)
    if m not in table:
        with _lock:
            if m > 0:
                _extend_up(n, l, table, m)
            else:
                _extend_down(n, l, table, m)
    return MomentValue(table[m], m, n, l)


def clear_cache() -> None:
    with _lock:
        _cache.clear()


def pasternack_inversion(n: int, l: int, m: int, *, extended: bool = False) -> MomentValue:
    """(2/n)^(2m+1) (2l-m)!/(2l+m+1)! <r^(m-1)>, which equals <r^(-m-2)>.

    Proved for 0 <= m <= 2l.  With ``extended=True`` negative m down to
    -2l-1 is also accepted (the relation is then used empirically).
    """
    pref = inversion_prefactor(n, l, m, extended=extended)
    return MomentValue(pref * moment(n, l, m - 1).value, -m - 2, n, l)


def inversion_prefactor(n: int, l: int, m: int, *, extended: bool = False) -> Fraction:
    """(2/n)^(2m+1) (2l-m)!/(2l+m+1)!, with the range check of the inversion relation."""
    check_quantum_numbers(n, l)
    lo = -2 * l - 1 if extended else 0
    if not lo <= m <= 2 * l:
        raise RangeError(f"inversion relation requires {lo} <= m <= 2l={2 * l} (got m={m})")
    return Fraction(2, n) ** (2 * m + 1) * Fraction(factorial(2 * l - m), factorial(2 * l + m + 1))
