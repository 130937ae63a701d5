"""Exact radial functions of the form  sum_k c_k r^p_k exp(-s_k r).

Every scalar is a :class:`fractions.Fraction`; there is no floating point
anywhere.  The integration measure is r^2 dr on (0, inf), matching the
radial part of a three-dimensional inner product, so

    <f|g> = int_0^inf f(r) g(r) r^2 dr = sum c * P! / s^(P+1).

Natural atomic units are used throughout (hbar = mu = e^2 = a0 = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DivergentIntegral

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "PolyExpTerm",
    "PolyExp",
    "add",
    "scale",
    "mul",
    "differentiate",
    "shift_power",
    "inner_product",
    "factorial",
    "energy",
    "format_rational",
    "parse_rational",
]


def format_rational(q: Scalar) -> str:
    """Render ``q`` as ``"num/den"``, or ``"num"`` when den == 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str | int) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True, order=False)
class PolyExpTerm:
    """A single term ``coeff * r**power * exp(-decay * r)``."""

    coeff: Fraction
    power: int
    decay: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "decay", Fraction(self.decay))
        if self.decay <= 0:
            raise ValueError(f"decay must be positive, got {self.decay}")

    def to_record(self) -> dict:
        return {
            "coeff": format_rational(self.coeff),
            "power": self.power,
            "decay": format_rational(self.decay),
        }


class PolyExp:
    """Immutable finite sum of :class:`PolyExpTerm`.

    The constructor canonicalizes: like terms, meaning equal (power, decay),
    are merged, zero coefficients are dropped, and terms are sorted by
    (decay, power).  Two PolyExp compare equal iff they are the same
    function.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[PolyExpTerm | tuple] = ()):
        acc: dict[tuple[Fraction, int], Fraction] = {}
        for t in terms:
            if not isinstance(t, PolyExpTerm):
                t = PolyExpTerm(*t)
            key = (t.decay, t.power)
            acc[key] = acc.get(key, Fraction(0)) + t.coeff
        self._terms = tuple(
            PolyExpTerm(c, p, s) for (s, p), c in sorted(acc.items()) if c != 0
        )

    @classmethod
    def monomial(cls, coeff: Scalar = 1, power: int = 0, decay: Scalar = 1) -> "PolyExp":
        return cls([PolyExpTerm(Fraction(coeff), power, Fraction(decay))])

    @classmethod
    def zero(cls) -> "PolyExp":
        return cls()

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> "PolyExp":
        return cls(
            PolyExpTerm(parse_rational(r["coeff"]), int(r["power"]), parse_rational(r["decay"]))
            for r in records
        )

    @property
    def terms(self) -> tuple[PolyExpTerm, ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def min_power(self) -> int | None:
        return min((t.power for t in self._terms), default=None)

    def decays(self) -> set[Fraction]:
        return {t.decay for t in self._terms}

    def coefficient(self, power: int, decay: Scalar) -> Fraction:
        decay = Fraction(decay)
        for t in self._terms:
            if t.power == power and t.decay == decay:
                return t.coeff
        return Fraction(0)

    def to_records(self) -> list[dict]:
        return [t.to_record() for t in self._terms]

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PolyExp):
            return NotImplemented
        return PolyExp(self._terms + other._terms)

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        if not isinstance(other, PolyExp):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PolyExp):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyExp):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __repr__(self):
        return f"PolyExp({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for t in self._terms:
            rpart = "" if t.power == 0 else ("r" if t.power == 1 else f"r^{t.power}")
            epart = "e^(-r)" if t.decay == 1 else f"e^(-{format_rational(t.decay)} r)"
            parts.append("*".join(x for x in (f"({format_rational(t.coeff)})", rpart, epart) if x))
        return " + ".join(parts)


def add(f: PolyExp, g: PolyExp) -> PolyExp:
    return f + g


def scale(f: PolyExp, c: Scalar) -> PolyExp:
    c = Fraction(c)
    return PolyExp(PolyExpTerm(c * t.coeff, t.power, t.decay) for t in f.terms)


def mul(f: PolyExp, g: PolyExp) -> PolyExp:
    return PolyExp(
        PolyExpTerm(a.coeff * b.coeff, a.power + b.power, a.decay + b.decay)
        for a in f.terms
        for b in g.terms
    )


def differentiate(f: PolyExp) -> PolyExp:
    """d/dr, term by term (product rule on r^p e^(-s r))."""
    out = []
    for t in f.terms:
        if t.power != 0:
            out.append(PolyExpTerm(t.coeff * t.power, t.power - 1, t.decay))
        out.append(PolyExpTerm(-t.coeff * t.decay, t.power, t.decay))
    return PolyExp(out)


def shift_power(f: PolyExp, k: int) -> PolyExp:
    """Multiply by r^k."""
    return PolyExp(PolyExpTerm(t.coeff, t.power + k, t.decay) for t in f.terms)


def integrate(f: PolyExp) -> Fraction:
    """int_0^inf f(r) dr (no measure factor).

    Raises DivergentIntegral when a surviving term has a negative power.
    """
    total = Fraction(0)
    for t in f.terms:
        if t.power < 0:
            raise DivergentIntegral(t.power)
        total += t.coeff * math.factorial(t.power) / t.decay ** (t.power + 1)
    return total


def inner_product(f: PolyExp, g: PolyExp) -> Fraction:
    """<f|g> = int_0^inf f g r^2 dr, exactly."""
    return integrate(shift_power(mul(f, g), 2))


def factorial(k: int) -> int:
    if k < 0:
        raise ValueError(f"factorial of negative integer {k}")
    return math.factorial(k)


def energy(l: int) -> Fraction:
    """E_l = -1/(2 (l+1)^2) in units e^2/a0.

    ``l`` is the maximal-angular-momentum label, so E_{n-1} is the Bohr
    level of principal quantum number n.
    """
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    return Fraction(-1, 2 * (l + 1) ** 2)
