"""Radial differential operators  sum c * r^p * (d/dr)^d.

Operators are stored in canonical form (unique (d, p) keys, sorted by
(deriv_order, power)), so structural equality is operator equality and
identities such as H_l = (1/2) raise_l lower_l + E_l are decided exactly.

Conventions
-----------
The physical ladder operators carry a factor -i hbar / sqrt(2 mu).  Here
they are stripped to real operators::

    P       = d/dr + 1/r                      (p_r = -i P)
    W_l     = 1/(l+1) - (l+1)/r               (superpotential)
    lower_l = P + W_l                         (B_l     = (-i/sqrt 2) lower_l)
    raise_l = -P + W_l                        (B_l^dag = ( i/sqrt 2) raise_l)

so that B_l^dag B_l = raise_l lower_l / 2 and B_l B_l^dag = lower_l raise_l / 2.
The formal adjoint is taken with respect to the r^2 dr measure, under which
(d/dr)^dag = -d/dr - 2/r; boundary terms are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Union

from .radialfunc import PolyExp, differentiate, energy, format_rational, parse_rational, shift_power

Scalar = Union[int, Fraction]

__all__ = [
    "RadialOpTerm",
    "RadialOp",
    "apply",
    "compose",
    "commutator",
    "adjoint",
    "identity",
    "multiply_by",
    "d_r",
    "radial_momentum",
    "superpotential",
    "build_lower",
    "build_raise",
    "build_hamiltonian",
    "build_hypervirial_O",
    "factorized_hamiltonian",
    "reversed_product",
]


@dataclass(frozen=True)
class RadialOpTerm:
    coeff: Fraction
    power: int
    deriv_order: int

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.deriv_order < 0:
            raise ValueError("deriv_order must be non-negative")

    def to_record(self) -> dict:
        return {
            "coeff": format_rational(self.coeff),
            "power": self.power,
            "deriv_order": self.deriv_order,
        }


class RadialOp:
    """Immutable canonical sum of :class:`RadialOpTerm`.

    ``a @ b`` is composition (a after b), ``a * c`` scales by a rational.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[RadialOpTerm | tuple] = ()):
        acc: dict[tuple[int, int], Fraction] = {}
        for t in terms:
            if not isinstance(t, RadialOpTerm):
                t = RadialOpTerm(*t)
            key = (t.deriv_order, t.power)
            acc[key] = acc.get(key, Fraction(0)) + t.coeff
        self._terms = tuple(
            RadialOpTerm(c, p, d) for (d, p), c in sorted(acc.items()) if c != 0
        )

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> "RadialOp":
        return cls(
            RadialOpTerm(parse_rational(r["coeff"]), int(r["power"]), int(r["deriv_order"]))
            for r in records
        )

    @property
    def terms(self) -> tuple[RadialOpTerm, ...]:
        return self._terms

    @property
    def order(self) -> int:
        return max((t.deriv_order for t in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_multiplication(self) -> bool:
        return all(t.deriv_order == 0 for t in self._terms)

    def coefficient(self, power: int, deriv_order: int = 0) -> Fraction:
        for t in self._terms:
            if t.power == power and t.deriv_order == deriv_order:
                return t.coeff
        return Fraction(0)

    def to_records(self) -> list[dict]:
        return [t.to_record() for t in self._terms]

    def __call__(self, f: PolyExp) -> PolyExp:
        return apply(self, f)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = identity() * other
        if not isinstance(other, RadialOp):
            return NotImplemented
        return RadialOp(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = identity() * other
        if not isinstance(other, RadialOp):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        c = Fraction(c)
        return RadialOp(RadialOpTerm(c * t.coeff, t.power, t.deriv_order) for t in self._terms)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, RadialOp):
            return NotImplemented
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, RadialOp):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        return f"RadialOp({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for t in self._terms:
            rpart = "" if t.power == 0 else ("r" if t.power == 1 else f"r^{t.power}")
            dpart = "" if t.deriv_order == 0 else ("D" if t.deriv_order == 1 else f"D^{t.deriv_order}")
            parts.append("*".join(x for x in (f"({format_rational(t.coeff)})", rpart, dpart) if x))
        return " + ".join(parts)


def _falling(p: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= p - i
    return out


def apply(op: RadialOp, f: PolyExp) -> PolyExp:
    # Derivatives are shared across terms: D^k f is computed once per k.
    derivs = [f]
    out = PolyExp()
    for t in op.terms:
        while len(derivs) <= t.deriv_order:
            derivs.append(differentiate(derivs[-1]))
        out = out + shift_power(derivs[t.deriv_order], t.power) * t.coeff
    return out


def compose(a: RadialOp, b: RadialOp) -> RadialOp:
    """The operator a o b.

    Uses D^d r^p = sum_j C(d, j) p(p-1)...(p-j+1) r^(p-j) D^(d-j), valid for
    every integer p.
    """
    out = []
    for s in a.terms:
        for t in b.terms:
            for j in range(s.deriv_order + 1):
                ff = _falling(t.power, j)
                if ff == 0:
                    break
                out.append(
                    RadialOpTerm(
                        s.coeff * t.coeff * comb(s.deriv_order, j) * ff,
                        s.power + t.power - j,
                        s.deriv_order - j + t.deriv_order,
                    )
                )
    return RadialOp(out)


def commutator(a: RadialOp, b: RadialOp) -> RadialOp:
    return compose(a, b) - compose(b, a)


def adjoint(op: RadialOp) -> RadialOp:
    """Formal adjoint under int ... r^2 dr: (c r^p D^d)^dag = c (D^dag)^d r^p."""
    d_dag = RadialOp([(-1, 0, 1), (-2, -1, 0)])
    out = RadialOp()
    powers = [identity()]
    for t in op.terms:
        while len(powers) <= t.deriv_order:
            powers.append(compose(powers[-1], d_dag))
        out = out + compose(powers[t.deriv_order], multiply_by(t.power, t.coeff))
    return out


# building blocks ------------------------------------------------------


def identity() -> RadialOp:
    return RadialOp([(1, 0, 0)])


def multiply_by(power: int, coeff: Scalar = 1) -> RadialOp:
    """Multiplication by coeff * r^power."""
    return RadialOp([(Fraction(coeff), power, 0)])


def d_r() -> RadialOp:
    return RadialOp([(1, 0, 1)])


def radial_momentum() -> RadialOp:
    """Stripped radial momentum P = d/dr + 1/r, with p_r = -i hbar P."""
    return RadialOp([(1, 0, 1), (1, -1, 0)])


def superpotential(l: int) -> RadialOp:
    return RadialOp([(Fraction(1, l + 1), 0, 0), (-(l + 1), -1, 0)])


def _check_l(l: int) -> None:
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")


def build_lower(l: int) -> RadialOp:
    _check_l(l)
    return radial_momentum() + superpotential(l)


def build_raise(l: int) -> RadialOp:
    _check_l(l)
    return -radial_momentum() + superpotential(l)


def build_hamiltonian(l: int) -> RadialOp:
    """H_l = -(1/2)(D^2 + (2/r) D) + l(l+1)/(2 r^2) - 1/r."""
    _check_l(l)
    return RadialOp(
        [
            (Fraction(-1, 2), 0, 2),
            (-1, -1, 1),
            (Fraction(l * (l + 1), 2), -2, 0),
            (-1, -1, 0),
        ]
    )


def build_hypervirial_O(m: int) -> RadialOp:
    """Stripped hypervirial generator r^m P + P r^m (O = -i hbar times this)."""
    rm = multiply_by(m)
    p = radial_momentum()
    return compose(rm, p) + compose(p, rm)


def factorized_hamiltonian(l: int) -> RadialOp:
    """(1/2) raise_l o lower_l + E_l, the factorized form of H_l."""
    return compose(build_raise(l), build_lower(l)) * Fraction(1, 2) + energy(l)


def reversed_product(l: int) -> RadialOp:
    """(1/2) lower_l o raise_l + E_l, which equals H_{l+1}."""
    return compose(build_lower(l), build_raise(l)) * Fraction(1, 2) + energy(l)
