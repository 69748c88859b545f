import random

import pytest

from fixtures import R3, R4, all_classes, monomial_cm_fixtures, monomial_ideal, random_homogeneous_ideal
from serregrade import (
    POS_INF,
    DimLE,
    FPModule,
    GradingError,
    Ideal,
    SuppInV,
    UnsupportedRoute,
    ZeroOnly,
    a_invariant,
    cyclic_module,
    koszul_grade,
    quotient_ring,
    quotient_stability_check,
    s_cm_test,
    s_dim,
    s_height,
)
from serregrade.cm import a_parts_product_check

x, y, z = R3.gens()
A = cyclic_module(Ideal(R3, [x * y, x * z]))


def test_fixture_a_invariant_and_verdicts():
    a, parts = a_invariant(A)
    assert a == Ideal(R3, [y, z])
    assert [(p.index, p.ext_index) for p in parts] == [(0, 3), (1, 2)]
    assert parts[0].ideal.is_unit()
    assert a_parts_product_check(a, parts)
    assert s_cm_test(A, DimLE(1)).verdict
    assert not s_cm_test(A, DimLE(0)).verdict
    assert not s_cm_test(A, ZeroOnly()).verdict
    assert s_cm_test(A, SuppInV(Ideal(R3, [y, z]))).verdict
    rep = s_cm_test(A, DimLE(1))
    assert rep.dim == 2 and rep.quotient_dim == 1


@pytest.mark.parametrize(
    "gens",
    [
        [],
        [x * y],
        [x, y],
        [x * x - y * z],
    ],
    ids=["free", "hypersurface", "linear", "quadric"],
)
def test_cohen_macaulay_modules_have_unit_invariant(gens):
    M = cyclic_module(Ideal(R3, gens))
    a, _ = a_invariant(M)
    assert a.is_unit()
    for S in all_classes(R3):
        assert s_cm_test(M, S).verdict


def test_twisted_cubic_is_cohen_macaulay():
    X, Y, Z, W = R4.gens()
    cubic = cyclic_module(Ideal(R4, [X * Z - Y * Y, X * W - Y * Z, Y * W - Z * Z]))
    assert s_cm_test(cubic, ZeroOnly()).verdict


def test_zero_module_and_dimension_zero():
    a, parts = a_invariant(FPModule.zero(R3))
    assert a.is_unit() and parts == []
    M = cyclic_module(Ideal(R3, [x, y, z * z]))
    assert a_invariant(M)[0].is_unit()
    assert s_cm_test(M, ZeroOnly()).verdict


def test_inhomogeneous_presentation_is_rejected():
    with pytest.raises(GradingError):
        a_invariant(FPModule(R3, 1, [[x + y * y]]))


def test_invariant_does_not_depend_on_presentation():
    one = R3.one()
    zero = R3.zero()
    # A with a second generator that is killed outright
    M2 = FPModule(R3, 2, [[x * y, zero], [x * z, zero], [zero, one]], degrees=(0, 0))
    assert a_invariant(M2)[0] == a_invariant(A)[0]
    # A presented with redundant relations
    M3 = cyclic_module(Ideal(R3, [x * y, x * z, x * y + x * z, x * x * y]))
    assert a_invariant(M3)[0] == a_invariant(A)[0]


def test_direct_sum_keeps_invariant():
    # a(M ⊕ M) = a(M): Ext and annihilators of a doubled module do not change
    a, _ = a_invariant(A.direct_sum(A))
    assert a == a_invariant(A)[0]


def test_koszul_grade_bounded_by_s_height():
    checked = 0
    for ring, exps in monomial_cm_fixtures(count=16):
        M = cyclic_module(monomial_ideal(ring, exps))
        gens = ring.gens()
        for a in (Ideal(ring, gens[:1]), Ideal(ring, gens[:2]), Ideal(ring, gens)):
            for S in all_classes(ring):
                g = koszul_grade(a, M, S).value
                h = s_height(a, M, S)
                assert g <= h
                checked += 1
    assert checked >= 100


def test_s_height_and_s_dim_examples():
    assert s_height(Ideal(R3, [x]), A, ZeroOnly()) == 0
    assert s_height(Ideal(R3, [y]), A, DimLE(1)) == POS_INF
    assert s_dim(A, ZeroOnly()) == 2
    assert s_dim(A, DimLE(2)) == float("-inf")
    with pytest.raises(UnsupportedRoute):
        s_dim(cyclic_module(Ideal(R3, [x * x - y * z])), ZeroOnly())


def test_quotient_stability_examples():
    r = quotient_stability_check(A, y + z, DimLE(1))
    assert not r.assh_nonempty and not r.hypotheses and r.holds
    r = quotient_stability_check(FPModule.free(R3), x, ZeroOnly())
    assert r.hypotheses and r.quotient_is_scm and r.dim_drop and r.holds


def test_quotient_stability_on_random_input():
    rng = random.Random(31)
    hyps = 0
    for _ in range(30):
        I = random_homogeneous_ideal(rng, R3, max_gens=2)
        M = cyclic_module(I)
        f = x * rng.randint(1, 100) + y * rng.randint(1, 100) + z * rng.randint(1, 100)
        for S in (ZeroOnly(), DimLE(0), SuppInV(Ideal(R3, [x]))):
            r = quotient_stability_check(M, f, S)
            assert r.holds
            hyps += r.hypotheses
    assert hyps > 0


def test_modules_over_quotient_rings():
    Q = quotient_ring(R3, [x * y, x * z])
    M = cyclic_module(Ideal(Q, []))
    assert a_invariant(M)[0] == Ideal(R3, [y, z])
    qy, qz = Q.gens()[1:]
    assert s_cm_test(M, SuppInV(Ideal(Q, [qy, qz]))).verdict
    assert not s_cm_test(M, DimLE(0)).verdict
