from fractions import Fraction as F

import pytest

from kpmoments.errors import QuantumNumberError
from kpmoments.ladder import (
    build_state,
    norm_gap_product,
    normalization_constant_sq,
    top_state,
)
from kpmoments.operalg import apply, build_hamiltonian, build_lower
from kpmoments.radialfunc import PolyExp, energy

STATES = [(n, l) for n in range(1, 9) for l in range(n)]


def test_top_state_examples():
    s1 = top_state(1)
    assert s1.wavefunction == PolyExp.monomial(1, 0, 1)
    assert s1.normsq == F(1, 4)
    s2 = top_state(2)
    assert s2.wavefunction == PolyExp.monomial(1, 1, F(1, 2))
    assert s2.normsq == 24


def test_top_state_rejects_bad_n():
    with pytest.raises(QuantumNumberError):
        top_state(0)


@pytest.mark.parametrize("n", range(1, 9))
def test_subsidiary_condition(n):
    assert apply(build_lower(n - 1), top_state(n).wavefunction).is_zero()


def test_build_state_2_0():
    # raise_0 = -D + 1 - 2/r applied by hand to r e^(-r/2)
    w = build_state(2, 0).wavefunction
    assert w == PolyExp([(F(3, 2), 1, F(1, 2)), (F(-3), 0, F(1, 2))])
    assert build_state(2, 0).normsq == 18
    assert apply(build_hamiltonian(0), w) == w * F(-1, 8)


def test_build_state_empty_chain():
    for n in range(1, 6):
        assert build_state(n, n - 1) == top_state(n)


@pytest.mark.parametrize("n,l", [(2, 2), (1, 1), (3, -1), (0, 0)])
def test_build_state_rejects(n, l):
    with pytest.raises(QuantumNumberError):
        build_state(n, l)


@pytest.mark.parametrize("n,l", STATES)
def test_eigen_relation(n, l):
    w = build_state(n, l).wavefunction
    assert apply(build_hamiltonian(l), w) == w * energy(n - 1)


@pytest.mark.parametrize("n,l", STATES)
def test_state_shape(n, l):
    s = build_state(n, l)
    assert s.wavefunction.min_power() == l
    assert s.wavefunction.decays() == {F(1, n)}
    assert s.normsq > 0
    # n - l - 1 raising steps leave a polynomial of degree n - 1
    assert max(t.power for t in s.wavefunction.terms) == n - 1


def test_norm_gap_product_examples():
    assert norm_gap_product(4, 3) == 1
    assert norm_gap_product(2, 0) == F(3, 8)
    assert norm_gap_product(3, 1) == F(5, 72)


def test_normalization_constant_examples():
    assert normalization_constant_sq(5, 4) == 1
    assert normalization_constant_sq(2, 0) == F(8, 3)
    assert normalization_constant_sq(2, 0) * norm_gap_product(2, 0) == 1


@pytest.mark.parametrize("n,l", STATES)
def test_norm_bookkeeping(n, l):
    ratio = F(1, 2 ** (n - 1 - l)) * build_state(n, l).normsq / top_state(n).normsq
    assert ratio == norm_gap_product(n, l)


@pytest.mark.parametrize("n,l", STATES)
def test_normalization_constant_consistency(n, l):
    assert normalization_constant_sq(n, l) * norm_gap_product(n, l) == 1


def test_state_record():
    rec = build_state(2, 0).to_record()
    assert rec["normsq"] == "18"
    assert rec["energy"] == "-1/8"
    assert rec["wavefunction"][0] == {"coeff": "-3", "power": 0, "decay": "1/2"}
