"""Combinatorial ground truth for cyclic modules ``S/I`` with ``I`` monomial.

Ideals are minimal sets of exponent tuples.  Primes are frozensets of
variable indices.  The only contact with the algebra layer is reading
exponents off polynomials in ``as_monomial_ideal``; every answer is derived
from divisibility, irreducible decomposition and Stanley-Reisner homology.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Sequence

from ..core import AlgebraError
from .simplicial import SimplicialComplex, hochster_depth

MAX_SWEEP_VARS = 6


class UnsupportedOracleInput(AlgebraError):
    pass


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimalize(gens: Iterable[tuple]) -> tuple:
    gs = sorted(set(gens), key=lambda e: (sum(e), e))
    keep: list = []
    for g in gs:
        if not any(_divides(h, g) for h in keep):
            keep.append(g)
    return tuple(sorted(keep))


class MonomialIdeal:
    """A monomial ideal in ``n`` variables; the generating set is kept minimal."""

    __slots__ = ("n", "generators")

    def __init__(self, n: int, generators: Iterable[Sequence[int]] = ()):
        self.n = n
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != n or any(x < 0 for x in g):
                raise ValueError(f"bad exponent vector {g} for {n} variables")
            gens.append(g)
        self.generators = _minimalize(gens)

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, [(0,) * n])

    @classmethod
    def prime(cls, n: int, support: Iterable[int]) -> "MonomialIdeal":
        gens = []
        for i in support:
            e = [0] * n
            e[i] = 1
            gens.append(e)
        return cls(n, gens)

    def is_unit(self) -> bool:
        return (0,) * self.n in self.generators

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, exp: Sequence[int]) -> bool:
        return any(_divides(g, exp) for g in self.generators)

    def issubset(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def is_squarefree(self) -> bool:
        return all(x <= 1 for g in self.generators for x in g)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and self.generators == other.generators

    def __hash__(self):
        return hash((self.n, self.generators))

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.n, self.generators + other.generators)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(
            self.n, [tuple(max(x, y) for x, y in zip(a, b)) for a in self.generators for b in other.generators]
        )

    def radical(self) -> "MonomialIdeal":
        return MonomialIdeal(self.n, [tuple(min(x, 1) for x in g) for g in self.generators])

    def support(self) -> frozenset:
        return frozenset(i for g in self.generators for i, x in enumerate(g) if x)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.n)]
        if self.is_zero():
            return "(0)"
        if self.is_unit():
            return "(1)"
        parts = []
        for g in sorted(self.generators, key=lambda e: (-sum(e), tuple(-x for x in e))):
            fac = []
            for i, x in enumerate(g):
                if x == 1:
                    fac.append(names[i])
                elif x > 1:
                    fac.append(f"{names[i]}^{x}")
            parts.append("*".join(fac))
        return "(" + ", ".join(parts) + ")"

    def __repr__(self):
        return f"MonomialIdeal{self.to_string()}"

    # -- decomposition -------------------------------------------------

    def irreducible_components(self) -> list["MonomialIdeal"]:
        """Irredundant irreducible decomposition; each component is generated
        by pure powers.  The unit ideal has no components."""
        if self.is_unit():
            return []
        comps: set = set()
        stack = [self.generators]
        while stack:
            gens = stack.pop()
            split = None
            for g in gens:
                nz = [i for i, x in enumerate(g) if x]
                if len(nz) > 1:
                    split = (g, nz[0])
                    break
            if split is None:
                comps.add(MonomialIdeal(self.n, gens))
                continue
            g, i = split
            pure = [0] * self.n
            pure[i] = g[i]
            rest = list(g)
            rest[i] = 0
            others = [h for h in gens if h != g]
            stack.append(MonomialIdeal(self.n, others + [tuple(pure)]).generators)
            stack.append(MonomialIdeal(self.n, others + [tuple(rest)]).generators)
        # monomial ideals form a distributive lattice, so dropping components
        # that contain another one leaves an irredundant decomposition
        cs = list(comps)
        keep = [c for c in cs if not any(d != c and d.issubset(c) for d in cs)]
        return sorted(keep, key=lambda c: c.generators)

    def associated_primes(self) -> set[frozenset]:
        if self.is_unit():
            return set()
        if self.is_zero():
            return {frozenset()}
        return {c.support() for c in self.irreducible_components()}

    def minimal_primes(self) -> set[frozenset]:
        ass = self.associated_primes()
        return {P for P in ass if not any(Q < P for Q in ass)}

    def dimension(self) -> int:
        """Krull dimension of ``S/I``; ``-1`` for the unit ideal."""
        mins = self.minimal_primes()
        if not mins:
            return -1
        return self.n - min(len(P) for P in mins)

    def contained_in_prime(self, P: Iterable[int]) -> bool:
        P = set(P)
        return all(any(x and i in P for i, x in enumerate(g)) for g in self.generators)

    def localize(self, P: Iterable[int]) -> "MonomialIdeal":
        """Variables outside ``P`` become units: the ideal of ``S_P / I S_P``
        read in the polynomial ring on ``P`` (sorted)."""
        keep = sorted(set(P))
        return MonomialIdeal(len(keep), [tuple(g[i] for i in keep) for g in self.generators])

    def polarize(self) -> "MonomialIdeal":
        """Squarefree polarization; variable i splits into ``max exponent``
        copies (at least one)."""
        if self.is_unit():
            return MonomialIdeal.unit(self.n)
        widths = [max([1] + [g[i] for g in self.generators]) for i in range(self.n)]
        offsets = [sum(widths[:i]) for i in range(self.n)]
        total = sum(widths)
        out = []
        for g in self.generators:
            e = [0] * total
            for i, x in enumerate(g):
                for k in range(x):
                    e[offsets[i] + k] = 1
            out.append(tuple(e))
        return MonomialIdeal(total, out)

    def stanley_reisner_complex(self) -> SimplicialComplex:
        if not self.is_squarefree():
            raise UnsupportedOracleInput("the Stanley-Reisner complex needs a squarefree ideal")
        verts = range(self.n)
        if self.is_unit():
            return SimplicialComplex(verts, [])
        facets = [frozenset(i for i in verts if i not in P) for P in self.minimal_primes()]
        return SimplicialComplex(verts, facets)


def as_monomial_ideal(obj) -> MonomialIdeal:
    """Accept a MonomialIdeal, an engine Ideal with monomial generators, or a
    cyclic FPModule ``S/I`` presented by monomials."""
    if isinstance(obj, MonomialIdeal):
        return obj
    from ..fpmodule import FPModule
    from ..groebner import Ideal

    if isinstance(obj, Ideal):
        n = obj.ring.nvars
        gens = []
        for f in obj.effective_generators:
            if f.is_zero():
                continue
            if len(f.terms) != 1:
                raise UnsupportedOracleInput(f"generator {f} is not a monomial")
            gens.append(next(iter(f.terms)))
        return MonomialIdeal(n, gens)
    if isinstance(obj, FPModule):
        n = obj.ring.nvars
        if obj.rank0 == 0:
            return MonomialIdeal.unit(n)
        if obj.rank0 != 1:
            raise UnsupportedOracleInput("the oracle handles cyclic modules only")
        gens = []
        for v in obj.relations:
            if len(v) != 1:
                raise UnsupportedOracleInput("relation is not a monomial")
            (_, e), = v.keys()
            gens.append(e)
        return MonomialIdeal(n, gens)
    raise UnsupportedOracleInput(f"cannot read {type(obj).__name__} as a monomial ideal")


def reisner_depth(I, p: int = 101) -> float:
    """Depth of ``S/I`` for squarefree ``I`` through Hochster's formula."""
    I = as_monomial_ideal(I)
    if not I.is_squarefree():
        raise UnsupportedOracleInput("reisner_depth needs a squarefree monomial ideal")
    return hochster_depth(I.stanley_reisner_complex(), p)


def monomial_depth(I, p: int = 101) -> float:
    """Depth of ``S/I``; non-squarefree ideals are polarized first and the
    extra variables subtracted."""
    I = as_monomial_ideal(I)
    if I.is_unit():
        return math.inf
    P = I.polarize()
    return reisner_depth(P, p) - (P.n - I.n)


def is_cohen_macaulay(I, p: int = 101) -> bool:
    """``S/I`` (graded, at the irrelevant ideal) is CM; the zero module counts as CM."""
    I = as_monomial_ideal(I)
    if I.is_unit():
        return True
    return monomial_depth(I, p) == I.dimension()


# ---------------------------------------------------------------------------
# class membership, own implementation


def prime_in_class(S, P: Iterable[int], n: int) -> bool:
    """``S/P ∈ S`` for the monomial prime on the variable set ``P``."""
    P = frozenset(P)
    if S.variant == "zero":
        return False
    if S.variant == "dim_le":
        return n - len(P) <= S.j
    # b ⊆ P iff every term of every generator of b involves a variable of P
    for f in S.b.effective_generators:
        for e in f.terms:
            if not any(e[i] for i in P):
                return False
    return True


def _check_sweep_size(n: int):
    if n > MAX_SWEEP_VARS:
        raise UnsupportedOracleInput(f"prime sweep limited to {MAX_SWEEP_VARS} variables")


def monomial_primes_over(I: MonomialIdeal):
    """All monomial primes containing ``I`` (the support of ``S/I``)."""
    _check_sweep_size(I.n)
    if I.is_unit():
        return
    for k in range(I.n + 1):
        for P in combinations(range(I.n), k):
            if I.contained_in_prime(P):
                yield frozenset(P)


def local_dimension(I: MonomialIdeal, P) -> int:
    """``dim (S/I)_P``."""
    return I.localize(P).dimension()


def enumerate_check_thm35(M, S, p: int = 101, details: list | None = None) -> bool:
    """Every qualifying monomial prime has a CM localization and satisfies
    ``dim M_P + dim S/P = dim M``."""
    I = as_monomial_ideal(M)
    d = I.dimension()
    ok = True
    for P in monomial_primes_over(I):
        if prime_in_class(S, P, I.n):
            continue
        L = I.localize(P)
        cm = is_cohen_macaulay(L, p)
        formula = L.dimension() + (I.n - len(P)) == d
        if details is not None:
            details.append({"prime": tuple(sorted(P)), "cm": cm, "formula": formula})
        ok = ok and cm and formula
    return ok


def ncm_locus_monomial(M, p: int = 101) -> MonomialIdeal:
    """Radical monomial ideal cutting out the non-CM locus; ``(1)`` if empty."""
    I = as_monomial_ideal(M)
    bad = [P for P in monomial_primes_over(I) if not is_cohen_macaulay(I.localize(P), p)]
    minimal = [P for P in bad if not any(Q < P for Q in bad)]
    result = MonomialIdeal.unit(I.n)
    first = True
    for P in minimal:
        Q = MonomialIdeal.prime(I.n, P)
        result = Q if first else result.intersect(Q)
        first = False
    return result


def thm314_check(M, S, p: int = 101) -> bool:
    """``S/a_M ∈ S`` and every minimal prime of M outside S has full dimension."""
    I = as_monomial_ideal(M)
    a = ncm_locus_monomial(I, p)
    if not all(prime_in_class(S, P, I.n) for P in a.minimal_primes()):
        return False
    d = I.dimension()
    return all(I.n - len(P) == d for P in I.minimal_primes() if not prime_in_class(S, P, I.n))


def s_height_monomial(a, M, S) -> float:
    """``inf dim M_q`` over monomial primes ``q ⊇ a + Ann M`` outside S."""
    I = as_monomial_ideal(M)
    A = as_monomial_ideal(a)
    best = math.inf
    for P in monomial_primes_over(I + A):
        if not prime_in_class(S, P, I.n):
            best = min(best, local_dimension(I, P))
    return best


def s_dimension_monomial(M, S) -> float:
    """``sup dim M_q`` over monomial primes in the support outside S;
    ``-inf`` when none qualify."""
    I = as_monomial_ideal(M)
    best = -math.inf
    for P in monomial_primes_over(I):
        if not prime_in_class(S, P, I.n):
            best = max(best, local_dimension(I, P))
    return best


def associated_primes(I) -> set[frozenset]:
    return as_monomial_ideal(I).associated_primes()


def minimal_primes(I) -> set[frozenset]:
    return as_monomial_ideal(I).minimal_primes()
