import random

import pytest

from fixtures import R3, all_classes, monomial_cm_fixtures, monomial_ideal, random_homogeneous_ideal, random_ses
from serregrade import DimLE, FPModule, Ideal, SerreClassSpec, SuppInV, ZeroOnly, contains, contains_prime, cyclic_module
from serregrade.oracle import MonomialIdeal
from serregrade.serre import contains_ideal_quotient

x, y, z = R3.gens()


def _prime(ring, P):
    gens = ring.gens()
    return Ideal(ring, [gens[i] for i in sorted(P)])


def test_membership_agrees_with_associated_primes():
    # a module lies in a Serre class iff every associated prime does
    for ring, exps in monomial_cm_fixtures(count=24):
        I = MonomialIdeal(ring.nvars, exps)
        M = cyclic_module(monomial_ideal(ring, exps))
        for S in all_classes(ring):
            by_primes = all(contains_prime(S, _prime(ring, P)) for P in I.associated_primes())
            assert contains(S, M) == by_primes


def test_ideal_quotient_shortcut_agrees():
    rng = random.Random(12)
    for _ in range(20):
        I = random_homogeneous_ideal(rng, R3)
        for S in all_classes(R3):
            assert contains_ideal_quotient(S, I) == contains(S, cyclic_module(I))


def test_zero_class_is_smallest():
    rng = random.Random(13)
    for _ in range(15):
        _, A, B, C = random_ses(rng, R3)
        for M in (A, B, C):
            if contains(ZeroOnly(), M):
                assert M.is_zero()
                for S in all_classes(R3):
                    assert contains(S, M)


def test_dim_le_zero_equals_support_in_maximal_ideal():
    m = Ideal(R3, [x, y, z])
    rng = random.Random(14)
    for _ in range(25):
        _, A, B, C = random_ses(rng, R3)
        for M in (A, B, C):
            assert contains(DimLE(0), M) == contains(SuppInV(m), M)


def test_dim_le_is_monotone_in_j():
    M = cyclic_module(Ideal(R3, [x * y, x * z]))
    verdicts = [contains(DimLE(j), M) for j in range(4)]
    assert verdicts == [False, False, True, True]


def test_supp_in_examples():
    M = cyclic_module(Ideal(R3, [x * x, x * y]))
    assert contains(SuppInV(Ideal(R3, [x])), M)
    assert not contains(SuppInV(Ideal(R3, [y])), M)
    assert contains(SuppInV(Ideal(R3, [x])), FPModule.zero(R3))


def test_class_validation_and_display():
    with pytest.raises(ValueError):
        DimLE(-1)
    with pytest.raises(ValueError):
        SuppInV(Ideal(R3, []))
    with pytest.raises(ValueError):
        SuppInV(Ideal(R3, [R3.one()]))
    with pytest.raises(ValueError):
        SerreClassSpec("finite_length")
    assert str(ZeroOnly()) == "zero"
    assert str(DimLE(2)) == "dim_le(2)"
    assert str(SuppInV(Ideal(R3, [x, y]))) == "supp_in(x, y)"
    assert SuppInV(Ideal(R3, [x, y])) == SuppInV(Ideal(R3, [y, x]))
    assert DimLE(1) != DimLE(0)
