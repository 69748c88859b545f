"""The a(M) invariant and the S-Cohen-Macaulay decision.

Over a polynomial ring S in n variables, graded local duality gives
``Ann H^i_m(M) = Ann Ext^{n-i}_S(M, S)``, so

    a(M) = a_0(M) ... a_{d-1}(M),   a_i(M) = Ann Ext^{n-i}(M, S),

and M is S-CM exactly when ``S/a(M)`` lies in the class.  Prime-quantified
characterizations are left to the monomial oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import Polynomial
from .fpmodule import (
    FPModule,
    GradingError,
    _make,
    annihilator,
    cyclic_module,
    ext_module,
    free_resolution,
    module_dimension,
)
from .grade import UnsupportedRoute, check_weak_sequence
from .groebner import Ideal, ideal_colon, krull_dimension
from .serre import SerreClassSpec, SuppInV, contains


@dataclass
class APart:
    index: int  # i in a_i(M)
    ext_index: int  # n - i
    ideal: Ideal


@dataclass
class CMReport:
    dim: int
    a: Ideal
    parts: list
    verdict: bool
    klass: SerreClassSpec
    route: str = "thm311"
    quotient_dim: int | None = None  # dim S/a(M)
    notes: list = field(default_factory=list)


def _over_ambient(M: FPModule) -> FPModule:
    # relations already hold J*F0, so M is the same module viewed over S
    if not M.ring.quotient:
        return M
    return _make(M.ring.ambient, M.rank0, M.degrees, M.relations)


def _ambient_class(S: SerreClassSpec, ring) -> SerreClassSpec:
    if S.variant != "supp_in" or not S.b.ring.quotient:
        return S
    gens = [Polynomial._raw(ring, dict(f.terms)) for f in S.b.effective_generators]
    return SuppInV(Ideal(ring, gens))


def a_invariant(M: FPModule) -> tuple[Ideal, list]:
    """``(a(M), [APart, ...])``; ``a(M) = (1)`` for ``M = 0`` or ``dim M <= 0``."""
    M = _over_ambient(M)
    ring = M.ring
    if not M.is_homogeneous():
        raise GradingError("a(M) uses graded duality: the presentation must be homogeneous")
    if M.is_zero():
        return Ideal.unit(ring), []
    d = module_dimension(M)
    if d <= 0:
        return Ideal.unit(ring), []
    n = ring.nvars
    res = free_resolution(M)
    S = FPModule.free(ring)
    parts = []
    for i in range(d):
        E = ext_module(n - i, M, S, resolution=res)
        parts.append(APart(i, n - i, annihilator(E)))
    gens = [ring.one()]
    for part in parts:
        gens = [f * g for f in gens for g in part.ideal.minimal_generators()]
    return Ideal(ring, gens), parts


def s_cm_test(M: FPModule, S: SerreClassSpec) -> CMReport:
    a, parts = a_invariant(M)
    amb = a.ring
    klass = _ambient_class(S, amb)
    d = module_dimension(_over_ambient(M))
    Q = cyclic_module(a)
    verdict = contains(klass, Q)
    rep = CMReport(d, a, parts, verdict, S, quotient_dim=module_dimension(Q))
    if not parts:
        rep.notes.append("a(M) = (1): dim M <= 0 or M = 0")
    return rep


# ---------------------------------------------------------------------------
# S-height and S-dimension (monomial inputs)


def _monomial_pair(a: Ideal | None, M: FPModule):
    from .oracle import UnsupportedOracleInput, as_monomial_ideal

    try:
        I = as_monomial_ideal(M)
        A = as_monomial_ideal(a) if a is not None else None
    except UnsupportedOracleInput as exc:
        raise UnsupportedRoute(f"S-height and S-dimension need monomial inputs: {exc}") from exc
    return A, I


def s_height(a: Ideal, M: FPModule, S: SerreClassSpec) -> float:
    from .oracle import s_height_monomial

    A, I = _monomial_pair(a, M)
    return s_height_monomial(A, I, S)


def s_dim(M: FPModule, S: SerreClassSpec) -> float:
    from .oracle import s_dimension_monomial

    _, I = _monomial_pair(None, M)
    return s_dimension_monomial(I, S)


# ---------------------------------------------------------------------------
# quotient stability


@dataclass
class StabilityReport:
    m_is_scm: bool
    x_is_weak: bool
    assh_nonempty: bool
    assh_route: str
    hypotheses: bool
    quotient_is_scm: bool | None
    dim_drop: bool | None  # dim M/xM = dim M - 1
    holds: bool


def _saturation(J: Ideal, b: Ideal) -> Ideal:
    cur = J
    while True:
        nxt = ideal_colon(cur, b)
        if nxt == cur:
            return cur
        cur = nxt


def _assh_nonempty(N: FPModule, S: SerreClassSpec) -> tuple[bool, str]:
    """Is there a top-dimensional associated prime of N outside S?"""
    if N.is_zero():
        return False, "zero"
    from .oracle import UnsupportedOracleInput, as_monomial_ideal, prime_in_class

    try:
        I = as_monomial_ideal(N)
    except UnsupportedOracleInput:
        I = None
    if I is not None:
        d = I.dimension()
        top = [P for P in I.minimal_primes() if I.n - len(P) == d]
        return any(not prime_in_class(S, P, I.n) for P in top), "oracle"
    d = module_dimension(N)
    if S.variant == "zero":
        return True, "algebraic"
    if S.variant == "dim_le":
        return d > S.j, "algebraic"
    # top primes avoiding V(b) survive the saturation by b
    ann = annihilator(N)
    b = Ideal(ann.ring, [Polynomial._raw(ann.ring, dict(f.terms)) for f in S.b.effective_generators])
    sat = _saturation(ann, b)
    return (not sat.is_unit()) and krull_dimension(sat) == d, "algebraic"


def quotient_stability_check(M: FPModule, x: Polynomial, S: SerreClassSpec) -> StabilityReport:
    """If M is S-CM, x is weak and S-Assh(M/xM) is nonempty, M/xM must be S-CM."""
    m_scm = s_cm_test(M, S).verdict
    weak = check_weak_sequence([x], M, S).is_weak
    N = M.quotient_by([x])
    assh, route = _assh_nonempty(N, S)
    hyp = m_scm and weak and assh
    q_scm = None
    drop = None
    if hyp:
        q_scm = s_cm_test(N, S).verdict
        drop = module_dimension(N) == module_dimension(M) - 1
    holds = (not hyp) or bool(q_scm and drop)
    return StabilityReport(m_scm, weak, assh, route, hyp, q_scm, drop, holds)


def a_parts_product_check(a: Ideal, parts: list) -> bool:
    """Re-check ``a = prod a_i`` by double membership."""
    ring = a.ring
    gens = [ring.one()]
    for part in parts:
        gens = [f * g for f in gens for g in part.ideal.effective_generators]
    prod = Ideal(ring, gens)
    return a.contains_ideal(prod) and prod.contains_ideal(a)


def is_infinite(v) -> bool:
    return isinstance(v, float) and math.isinf(v)
