"""Independent ground truth and the identity verification driver.

The oracle wavefunctions come from the closed-form associated Laguerre
polynomials, R_nl ∝ r^l L_{n-l-1}^{2l+1}(2r/n) exp(-r/n), and moments are
obtained by exact term-by-term integration.  Nothing here goes through the
ladder construction or the recurrence, so agreement between the two routes
is a genuine check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable, Iterator

from .errors import DivergentIntegral, MomentDoesNotExist, check_quantum_numbers
from .ladder import RadialState, build_state, norm_gap_product, normalization_constant_sq, top_state
from .moments import MomentValue, inverse_second, inversion_prefactor, kp_residual, moment, ratio_step_check
from .operalg import (
    RadialOp,
    apply,
    build_hamiltonian,
    build_hypervirial_O,
    build_lower,
    build_raise,
    commutator,
    compose,
    factorized_hamiltonian,
    multiply_by,
    radial_momentum,
    reversed_product,
)
from .radialfunc import PolyExp, PolyExpTerm, energy, format_rational, inner_product, shift_power

__all__ = [
    "LaguerrePoly",
    "laguerre",
    "oracle_wavefunction",
    "oracle_moment",
    "expectation",
    "proportionality_factor",
    "Mutation",
    "Failure",
    "IdentityResult",
    "VerificationReport",
    "verify_all",
    "IDENTITY_NAMES",
]


@dataclass(frozen=True)
class LaguerrePoly:
    """L_k^alpha(x) = sum_i coeffs[i] x^i."""

    degree: int
    alpha: int
    coeffs: tuple[Fraction, ...]

    def __call__(self, x) -> Fraction:
        return sum((c * Fraction(x) ** i for i, c in enumerate(self.coeffs)), Fraction(0))


def laguerre(k: int, alpha: int) -> LaguerrePoly:
    """Associated Laguerre polynomial, convention L_k^alpha(0) = C(k+alpha, k)."""
    if k < 0 or alpha < 0:
        raise ValueError("k and alpha must be non-negative")
    coeffs = []
    fact = 1
    for i in range(k + 1):
        if i:
            fact *= i
        coeffs.append(Fraction((-1) ** i * comb(k + alpha, k - i), fact))
    return LaguerrePoly(k, alpha, tuple(coeffs))


def oracle_wavefunction(n: int, l: int) -> RadialState:
    check_quantum_numbers(n, l)
    lag = laguerre(n - l - 1, 2 * l + 1)
    scale = Fraction(2, n)
    decay = Fraction(1, n)
    w = PolyExp(PolyExpTerm(c * scale**i, i + l, decay) for i, c in enumerate(lag.coeffs))
    return RadialState.from_wavefunction(n, l, w)


def oracle_moment(n: int, l: int, m: int) -> MomentValue:
    """<r^m> by direct integration of the Laguerre wavefunction."""
    state = oracle_wavefunction(n, l)
    w = state.wavefunction
    try:
        num = inner_product(w, shift_power(w, m))
    except DivergentIntegral:
        raise MomentDoesNotExist(n, l, m) from None
    return MomentValue(num / state.normsq, m, n, l)


def expectation(op: RadialOp, n: int, l: int) -> Fraction:
    """<n,l| op |n,l> on the oracle state; DivergentIntegral if it diverges."""
    state = oracle_wavefunction(n, l)
    w = state.wavefunction
    return inner_product(w, apply(op, w)) / state.normsq


def proportionality_factor(f: PolyExp, g: PolyExp) -> Fraction | None:
    """q with f = q g, or None when no single rational factor exists."""
    if f.is_zero() or g.is_zero():
        return None
    keys_f = {(t.power, t.decay) for t in f.terms}
    keys_g = {(t.power, t.decay) for t in g.terms}
    if keys_f != keys_g:
        return None
    q = f.terms[0].coeff / g.terms[0].coeff
    if f != g * q:
        return None
    return q


# verification -----------------------------------------------------------


@dataclass(frozen=True)
class Mutation:
    """Corrupts one engine moment by adding ``delta`` to its numerator.

    Negative-control hook for :func:`verify_all`.  Only lookups of the
    recurrence engine are affected; oracle values and the operator suites
    are untouched.
    """

    n: int
    l: int
    m: int
    delta: int = 1

    def apply(self, n: int, l: int, m: int, value: Fraction) -> Fraction:
        if (n, l, m) == (self.n, self.l, self.m):
            return Fraction(value.numerator + self.delta, value.denominator)
        return value


def _jsonable(x: Any) -> Any:
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return format_rational(x)
    if isinstance(x, (RadialOp, PolyExp)):
        return x.to_records()
    if x is None:
        return None
    return str(x)


@dataclass
class Failure:
    coords: dict[str, int]
    expected: Any
    actual: Any

    def to_dict(self) -> dict:
        return {
            "coords": dict(self.coords),
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
        }


@dataclass
class IdentityResult:
    name: str
    cells: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    def to_dict(self) -> dict:
        return {
            "identity": self.name,
            "cells": self.cells,
            "failed": len(self.failures),
            "passed": self.passed,
            "failures": [f.to_dict() for f in self.failures],
        }


@dataclass
class VerificationReport:
    n_max: int
    identities: list[IdentityResult]
    mutation: Mutation | None = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.identities)

    @property
    def failing(self) -> list[str]:
        return [r.name for r in self.identities if not r.passed]

    @property
    def exercised(self) -> list[str]:
        return [r.name for r in self.identities if r.cells]

    def __getitem__(self, name: str) -> IdentityResult:
        for r in self.identities:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        out = {
            "n_max": self.n_max,
            "passed": self.passed,
            "identities": [r.to_dict() for r in self.identities],
        }
        if self.mutation is not None:
            m = self.mutation
            out["mutation"] = {"n": m.n, "l": m.l, "m": m.m, "delta": m.delta}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _states(n_max: int) -> Iterator[tuple[int, int]]:
    for n in range(1, n_max + 1):
        for l in range(n):
            yield n, l


def _cells_subsidiary(n_max, eng):
    for n in range(1, n_max + 1):
        yield {"n": n}, PolyExp(), apply(build_lower(n - 1), top_state(n).wavefunction)


def _cells_factorization(n_max, eng):
    for l in range(n_max + 1):
        yield {"l": l}, build_hamiltonian(l), factorized_hamiltonian(l)


def _cells_reversed(n_max, eng):
    for l in range(n_max + 1):
        yield {"l": l}, build_hamiltonian(l + 1), reversed_product(l)


def _cells_intertwining(n_max, eng):
    for l in range(n_max + 1):
        r = build_raise(l)
        yield {"l": l}, compose(r, build_hamiltonian(l + 1)), compose(build_hamiltonian(l), r)


def _cells_eigen(n_max, eng):
    for n, l in _states(n_max):
        w = build_state(n, l).wavefunction
        yield {"n": n, "l": l}, w * energy(n - 1), apply(build_hamiltonian(l), w)


def _cells_norm(n_max, eng):
    for n, l in _states(n_max):
        ratio = Fraction(1, 2 ** (n - 1 - l)) * build_state(n, l).normsq / top_state(n).normsq
        yield {"n": n, "l": l}, norm_gap_product(n, l), ratio


def _cells_cnl(n_max, eng):
    for n, l in _states(n_max):
        yield {"n": n, "l": l}, Fraction(1), normalization_constant_sq(n, l) * norm_gap_product(n, l)


def _cells_proportional(n_max, eng):
    for n, l in _states(n_max):
        q = proportionality_factor(build_state(n, l).wavefunction, oracle_wavefunction(n, l).wavefunction)
        yield {"n": n, "l": l}, "nonzero rational factor", "none" if q is None else q


def _cells_oracle(n_max, eng):
    for n, l in _states(n_max):
        for m in range(-2 * l - 2, 12):
            yield {"n": n, "l": l, "m": m}, oracle_moment(n, l, m).value, eng(n, l, m)


def _cells_kp(n_max, eng):
    for n, l in _states(n_max):
        for m in range(-2 * l + 1, 12):
            res = kp_residual(n, l, m, eng(n, l, m - 1), eng(n, l, m - 2), eng(n, l, m - 3))
            yield {"n": n, "l": l, "m": m}, Fraction(0), res


def _cells_inversion(n_max, eng):
    for n, l in _states(n_max):
        for m in range(2 * l + 1):
            lhs = inversion_prefactor(n, l, m) * eng(n, l, m - 1)
            yield {"n": n, "l": l, "m": m}, eng(n, l, -m - 2), lhs


def _cells_closed(n_max, eng):
    for n, l in _states(n_max):
        yield {"n": n, "l": l, "m": -1}, Fraction(1, n * n), eng(n, l, -1)
        yield {"n": n, "l": l, "m": 1}, Fraction(3 * n * n - l * (l + 1), 2), eng(n, l, 1)
        yield (
            {"n": n, "l": l, "m": 2},
            Fraction(n * n * (5 * n * n + 1 - 3 * l * (l + 1)), 2),
            eng(n, l, 2),
        )
        if l >= 1:
            yield {"n": n, "l": l, "m": -3}, eng(n, l, -2) / (l * (l + 1)), eng(n, l, -3)


def _cells_inverse_second(n_max, eng):
    for n, l in _states(n_max):
        yield {"n": n, "l": l}, Fraction(2, n**3 * (2 * l + 1)), inverse_second(n, l).value


def _cells_ratio(n_max, eng):
    for n, l in _states(n_max):
        if l <= n - 2:
            lhs, rhs = ratio_step_check(n, l)
            yield {"n": n, "l": l}, rhs, lhs


def _cells_hypervirial(n_max, eng):
    for n, l in _states(n_max):
        h = build_hamiltonian(l)
        for m in range(-2 * l + 1, 9):
            yield {"n": n, "l": l, "m": m}, Fraction(0), expectation(commutator(build_hypervirial_O(m), h), n, l)


def _cells_momentum_cube(n_max, eng):
    op = compose(radial_momentum(), multiply_by(-3))
    for n, l in _states(n_max):
        if l >= 1:
            yield {"n": n, "l": l}, Fraction(-3, 2) * oracle_moment(n, l, -4).value, expectation(op, n, l)


def _cells_orthogonality(n_max, eng):
    top = min(n_max, 5)
    for l in range(top):
        for n in range(l + 1, top + 1):
            for n2 in range(n + 1, top + 1):
                val = inner_product(oracle_wavefunction(n, l).wavefunction, oracle_wavefunction(n2, l).wavefunction)
                yield {"n": n, "n2": n2, "l": l}, Fraction(0), val


_SUITES: list[tuple[str, Callable]] = [
    ("subsidiary_condition", _cells_subsidiary),
    ("factorization", _cells_factorization),
    ("reversed_product", _cells_reversed),
    ("intertwining", _cells_intertwining),
    ("eigen_relation", _cells_eigen),
    ("norm_bookkeeping", _cells_norm),
    ("normalization_constant", _cells_cnl),
    ("ladder_oracle_proportionality", _cells_proportional),
    ("oracle_equivalence", _cells_oracle),
    ("kp_closure", _cells_kp),
    ("inversion_closure", _cells_inversion),
    ("closed_forms", _cells_closed),
    ("inverse_second_closed_form", _cells_inverse_second),
    ("ratio_step", _cells_ratio),
    ("hypervirial_vanishing", _cells_hypervirial),
    ("momentum_inverse_cube", _cells_momentum_cube),
    ("orthogonality", _cells_orthogonality),
]

IDENTITY_NAMES = tuple(name for name, _ in _SUITES)


def moment_value(n: int, l: int, m: int) -> Fraction:
    return moment(n, l, m).value


def _check(name: str, expected: Any, actual: Any) -> bool:
    if name == "ladder_oracle_proportionality":
        return isinstance(actual, Fraction) and actual != 0
    return expected == actual


def verify_all(n_max: int, mutation: Mutation | None = None) -> VerificationReport:
    """Run every identity suite for 1 <= n <= n_max.

    Cells are evaluated in a fixed order, so the report, including which
    failure is first, is deterministic.  Failures are recorded, not raised.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1 (got {n_max})")
    if mutation is None:
        eng = moment_value
    else:
        def eng(n, l, m):
            return mutation.apply(n, l, m, moment_value(n, l, m))

    results = []
    for name, suite in _SUITES:
        res = IdentityResult(name)
        for coords, expected, actual in suite(n_max, eng):
            res.cells += 1
            if not _check(name, expected, actual):
                res.failures.append(Failure(coords, expected, actual))
        results.append(res)
    return VerificationReport(n_max, results, mutation)
