"""Buchberger engine for ideals and submodules of free modules.

Module elements ("vectors") are plain dicts ``{(component, exponent): coeff}``
with coefficients already reduced mod p.  Ideals are handled as the rank-one
case.  The public functions accept :class:`~serregrade.core.Polynomial`
objects and :class:`Ideal` instances and wrap the vector engine.
"""

from __future__ import annotations

import itertools
import threading
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    GREVLEX,
    DescriptorMismatch,
    ModuleOrder,
    MonomialOrder,
    Polynomial,
    RingDescriptor,
    add_exp,
)


class ZeroColonWarning(UserWarning):
    """``(I : 0)`` was requested; the whole ring is returned."""


# ---------------------------------------------------------------------------
# vector engine


class TermOrder:
    """Caches order keys of module terms ``(comp, exp)``."""

    __slots__ = ("order", "_cache", "shifts")

    def __init__(self, order: ModuleOrder):
        self.order = order
        self._cache: dict = {}
        self.shifts = order.shifts

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            k = self.order.key(term[0], term[1])
            self._cache[term] = k
        return k

    def lead(self, v: dict):
        return max(v, key=self.key)

    def degree(self, term) -> int:
        comp, exp = term
        s = self.shifts[comp] if comp < len(self.shifts) else 0
        return sum(exp) + s


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _axpy(h: dict, c: int, shift: tuple, g: dict, p: int) -> None:
    """``h -= c * x^shift * g`` in place."""
    get = h.get
    for (comp, e), v in g.items():
        t = (comp, add_exp(e, shift))
        nv = (get(t, 0) - c * v) % p
        if nv:
            h[t] = nv
        else:
            del h[t]


def scale_vec(v: dict, c: int, p: int) -> dict:
    c %= p
    if not c:
        return {}
    return {t: x * c % p for t, x in v.items()}


def add_vec(a: dict, b: dict, p: int, c: int = 1) -> dict:
    """``a + c*b``."""
    out = dict(a)
    for t, x in b.items():
        nv = (out.get(t, 0) + c * x) % p
        if nv:
            out[t] = nv
        else:
            out.pop(t, None)
    return out


def mul_poly_vec(f: dict, v: dict, p: int) -> dict:
    """Multiply vector ``v`` by the polynomial with terms ``f``."""
    out: dict = {}
    for e1, c1 in f.items():
        for (comp, e2), c2 in v.items():
            t = (comp, add_exp(e1, e2))
            nv = (out.get(t, 0) + c1 * c2) % p
            if nv:
                out[t] = nv
            else:
                out.pop(t, None)
    return out


class ModuleGB:
    """A Gröbner basis of vectors with fast divisor lookup."""

    def __init__(self, elems: list, p: int, torder: TermOrder, reduced: bool):
        self.elems = elems
        self.p = p
        self.torder = torder
        self.reduced = reduced
        self._index: dict = {}
        for g in elems:
            comp, e = torder.lead(g)
            self._index.setdefault(comp, []).append((e, pow(g[(comp, e)], p - 2, p), g))

    def reduce(self, v: dict) -> dict:
        return _normal_form(v, self._index, self.p, self.torder)

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def leading_terms(self) -> list:
        return [self.torder.lead(g) for g in self.elems]


def _normal_form(v: dict, index: dict, p: int, torder: TermOrder) -> dict:
    h = dict(v)
    rem: dict = {}
    key = torder.key
    while h:
        lt = max(h, key=key)
        comp, e = lt
        c = h[lt]
        for ge, ginv, g in index.get(comp, ()):
            if _divides(ge, e):
                _axpy(h, c * ginv % p, _sub(e, ge), g, p)
                break
        else:
            rem[lt] = c
            del h[lt]
    return rem


def _monic(v: dict, p: int, torder: TermOrder) -> dict:
    lt = torder.lead(v)
    return scale_vec(v, pow(v[lt], p - 2, p), p)


def groebner_vectors(
    vectors: Iterable[dict],
    p: int,
    order: ModuleOrder,
    ideal_case: bool = False,
) -> ModuleGB:
    """Reduced Gröbner basis of the submodule spanned by ``vectors``.

    Buchberger's algorithm with the Gebauer-Möller pair update and the
    normal selection strategy (smallest lcm degree, then pair index).  The
    product criterion is used only when ``ideal_case`` is set.
    """
    torder = TermOrder(order)
    key = torder.key
    f: list = []
    lt: list = []

    def index_of(G):
        idx: dict = {}
        for i in sorted(G):
            comp, e = lt[i]
            g = f[i]
            idx.setdefault(comp, []).append((e, pow(g[lt[i]], p - 2, p), g))
        return idx

    def update(G: set, B: set, ih: int):
        ch, mh = lt[ih]
        C = [ig for ig in G if lt[ig][0] == ch]
        C.sort()
        D: list = []
        while C:
            ig = C.pop(0)
            mg = lt[ig][1]
            lcm_hg = _lcm(mh, mg)
            cop = ideal_case and _coprime(mh, mg)
            if cop or (
                not any(_divides(_lcm(mh, lt[ix][1]), lcm_hg) for ix in C)
                and not any(_divides(_lcm(mh, lt[pr[1]][1]), lcm_hg) for pr in D)
            ):
                D.append((ih, ig))
        E = set()
        for ih_, ig in D:
            if not (ideal_case and _coprime(mh, lt[ig][1])):
                E.add((min(ih_, ig), max(ih_, ig)))
        B_new = set()
        for (i1, i2) in B:
            c1, m1 = lt[i1]
            m2 = lt[i2][1]
            if c1 != ch:
                B_new.add((i1, i2))
                continue
            l12 = _lcm(m1, m2)
            if (
                not _divides(mh, l12)
                or _lcm(m1, mh) == l12
                or _lcm(m2, mh) == l12
            ):
                B_new.add((i1, i2))
        B_new |= E
        G_new = {ig for ig in G if not (lt[ig][0] == ch and _divides(mh, lt[ig][1]))}
        G_new.add(ih)
        return G_new, B_new

    def add(h):
        h = _monic(h, p, torder)
        f.append(h)
        lt.append(torder.lead(h))
        return len(f) - 1

    G: set = set()
    B: set = set()
    inputs = [dict(v) for v in vectors if v]
    inputs.sort(key=lambda v: key(torder.lead(v)))
    for v in inputs:
        h = _normal_form(v, index_of(G), p, torder) if G else v
        if h:
            G, B = update(G, B, add(h))

    idx = index_of(G)
    while B:
        i, j = min(B, key=lambda pr: (torder.degree((lt[pr[0]][0], _lcm(lt[pr[0]][1], lt[pr[1]][1]))), pr))
        B.discard((i, j))
        comp, mi = lt[i]
        mj = lt[j][1]
        m = _lcm(mi, mj)
        s: dict = {}
        _axpy(s, p - 1, _sub(m, mi), f[i], p)  # s = +x^(m-mi) f_i (f monic)
        _axpy(s, 1, _sub(m, mj), f[j], p)
        h = _normal_form(s, idx, p, torder)
        if h:
            G, B = update(G, B, add(h))
            idx = index_of(G)

    # interreduce
    basis = [f[i] for i in sorted(G)]
    leads = [lt[i] for i in sorted(G)]
    keep = []
    for a, (ca, ea) in enumerate(leads):
        dominated = False
        for b, (cb, eb) in enumerate(leads):
            if a != b and ca == cb and _divides(eb, ea) and (eb != ea or b < a):
                dominated = True
                break
        if not dominated:
            keep.append(basis[a])
    reduced = []
    for a, g in enumerate(keep):
        others = keep[:a] + keep[a + 1:]
        oidx: dict = {}
        for o in others:
            ol = torder.lead(o)
            oidx.setdefault(ol[0], []).append((ol[1], pow(o[ol], p - 2, p), o))
        r = _normal_form(g, oidx, p, torder)
        reduced.append(_monic(r, p, torder))
    reduced.sort(key=lambda v: key(torder.lead(v)), reverse=True)
    return ModuleGB(reduced, p, torder, reduced=True)


def spoly_vectors(a: dict, b: dict, p: int, torder: TermOrder) -> dict | None:
    """S-vector of two monic-able vectors, or ``None`` across components."""
    ca, ea = torder.lead(a)
    cb, eb = torder.lead(b)
    if ca != cb:
        return None
    m = _lcm(ea, eb)
    s: dict = {}
    _axpy(s, (-pow(a[(ca, ea)], p - 2, p)) % p, _sub(m, ea), a, p)
    _axpy(s, pow(b[(cb, eb)], p - 2, p), _sub(m, eb), b, p)
    return s


def is_groebner(gb: ModuleGB) -> bool:
    """Buchberger's criterion, checked on every pair."""
    idx = gb._index
    for a, b in itertools.combinations(gb.elems, 2):
        s = spoly_vectors(a, b, gb.p, gb.torder)
        if s is not None and _normal_form(s, idx, gb.p, gb.torder):
            return False
    return True


def kernel_mod(
    columns: Sequence[dict],
    relations: Sequence[dict],
    rank: int,
    p: int,
    nvars: int,
    monomial: MonomialOrder = GREVLEX,
) -> list[dict]:
    """Generators of ``{c : sum c_i columns_i  in  span(relations)}``.

    Columns and relations live in a free module of rank ``rank``; the result
    lives in a free module with one component per column.  Implemented by
    tagging each column with a fresh basis vector and eliminating the first
    ``rank`` components with a position-over-term order.
    """
    zero = (0,) * nvars
    vecs = []
    for i, col in enumerate(columns):
        v = dict(col)
        v[(rank + i, zero)] = 1
        vecs.append(v)
    vecs.extend(dict(r) for r in relations if r)
    gb = groebner_vectors(vecs, p, ModuleOrder(monomial, "pot"))
    out = []
    for g in gb.elems:
        comp, _ = gb.torder.lead(g)
        if comp >= rank:
            out.append({(c - rank, e): x for (c, e), x in g.items()})
    return out


# ---------------------------------------------------------------------------
# Polynomial/Ideal layer


def poly_to_vec(f: Polynomial, comp: int = 0) -> dict:
    return {(comp, e): c for e, c in f.terms.items()}


def vec_to_poly(v: dict, ring: RingDescriptor, comp: int = 0) -> Polynomial:
    return Polynomial._raw(ring, {e: c for (k, e), c in v.items() if k == comp})


def column_to_vec(column: Sequence[Polynomial]) -> dict:
    v: dict = {}
    for i, f in enumerate(column):
        for e, c in f.terms.items():
            v[(i, e)] = c
    return v


def vec_to_column(v: dict, ring: RingDescriptor, rank: int) -> list[Polynomial]:
    cols: list = [dict() for _ in range(rank)]
    for (k, e), c in v.items():
        cols[k][e] = c
    return [Polynomial._raw(ring, t) for t in cols]


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: MonomialOrder
    reduced: bool
    ring: RingDescriptor

    @property
    def _engine(self) -> ModuleGB:
        eng = self.__dict__.get("_eng")
        if eng is None:
            eng = ModuleGB(
                [poly_to_vec(g) for g in self.generators],
                self.ring.p,
                TermOrder(ModuleOrder(self.order, "pot")),
                self.reduced,
            )
            object.__setattr__(self, "_eng", eng)
        return eng

    def reduce(self, f: Polynomial) -> Polynomial:
        return vec_to_poly(self._engine.reduce(poly_to_vec(f)), f.ring)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def leading_exponents(self) -> list:
        return [max(g.terms, key=self.order.key) for g in self.generators]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def buchberger(gens: Sequence, order: MonomialOrder | ModuleOrder | None = None, ring: RingDescriptor | None = None):
    """Reduced Gröbner basis of polynomials, or of module columns.

    ``gens`` is a list of :class:`Polynomial` (ideal case, returns a
    :class:`GroebnerBasis`) or a list of columns, each a list of polynomials
    (module case, returns a list of columns).
    """
    gens = list(gens)
    if not gens:
        if ring is None:
            raise ValueError("empty input needs an explicit ring")
        return GroebnerBasis((), order or ring.order, True, ring)
    if isinstance(gens[0], Polynomial):
        ring = ring or gens[0].ring
        for g in gens:
            if g.ring.variables != ring.variables or g.ring.p != ring.p:
                raise DescriptorMismatch(f"{g.ring} vs {ring}")
        order = order or ring.order
        if isinstance(order, ModuleOrder):
            order = order.monomial
        amb = ring.ambient.with_order(order) if ring.ambient.order != order else ring.ambient
        eng = groebner_vectors([poly_to_vec(g) for g in gens], ring.p, ModuleOrder(order, "pot"), ideal_case=True)
        polys = tuple(vec_to_poly(v, amb) for v in eng.elems)
        gb = GroebnerBasis(polys, order, True, amb)
        object.__setattr__(gb, "_eng", eng)
        return gb
    ring = ring or gens[0][0].ring
    rank = len(gens[0])
    if order is None:
        order = ModuleOrder(ring.order, "pot")
    elif isinstance(order, MonomialOrder):
        order = ModuleOrder(order, "pot")
    eng = groebner_vectors([column_to_vec(c) for c in gens], ring.p, order)
    return [vec_to_column(v, ring, rank) for v in eng.elems]


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.reduce(f)


class Ideal:
    """An ideal of ``R = S/J`` represented by its preimage in ``S``.

    The Gröbner basis for each order is computed at most once, even when the
    ideal is shared between threads.
    """

    def __init__(self, ring: RingDescriptor, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if isinstance(g, int):
                g = ring.const(g)
            if g.ring.variables != ring.variables or g.ring.p != ring.p:
                raise DescriptorMismatch(f"{g.ring} vs {ring}")
            gens.append(Polynomial._raw(ring, g.terms))
        self.ring = ring
        self.generators = tuple(gens)
        self._gbs: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    @property
    def effective_generators(self) -> tuple:
        amb = self.ring
        return tuple(g for g in self.generators if g) + tuple(
            Polynomial._raw(amb, q.terms) for q in self.ring.quotient
        )

    def groebner(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        gb = self._gbs.get(order)
        if gb is not None:
            return gb
        with self._lock:
            gb = self._gbs.get(order)
            if gb is None:
                gb = buchberger(self.effective_generators, order, ring=self.ring)
                self._gbs[order] = gb
        return gb

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().contains(f)

    def __contains__(self, f):
        return self.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.effective_generators)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        gens = [g for g in self.generators if g]
        if not gens or not self.ring.quotient:
            return not gens
        J = Ideal(self.ring.ambient, self.ring.quotient)
        return all(J.contains(Polynomial._raw(J.ring, g.terms)) for g in gens)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.groebner().generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring.variables == other.ring.variables and self.groebner().generators == other.groebner(self.ring.order).generators

    def __hash__(self):
        return hash((self.ring.variables, self.groebner().generators))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.effective_generators for g in other.effective_generators])

    def minimal_generators(self) -> list[Polynomial]:
        return list(self.groebner().generators)

    def __str__(self):
        gens = self.groebner().generators
        if not gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in gens) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def _extend_ring(ring: RingDescriptor, name: str, order: MonomialOrder) -> RingDescriptor:
    name_ = name
    while name_ in ring.variables:
        name_ += "_"
    return RingDescriptor(ring.field, (name_,) + ring.variables, order)


def _lift(f: Polynomial, ext: RingDescriptor) -> Polynomial:
    return Polynomial._raw(ext, {(0,) + e: c for e, c in f.terms.items()})


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1-t)*J``."""
    if I.ring.variables != J.ring.variables:
        raise DescriptorMismatch("ideals over different rings")
    ring = I.ring
    ext = _extend_ring(ring.ambient, "t", MonomialOrder("block", 1))
    t = ext.gens()[0]
    gens = [t * _lift(f, ext) for f in I.effective_generators]
    gens += [(1 - t) * _lift(g, ext) for g in J.effective_generators]
    if not I.effective_generators or not J.effective_generators:
        return Ideal(ring, [])
    gb = buchberger(gens, ext.order, ring=ext)
    out = [
        Polynomial._raw(ring, {e[1:]: c for e, c in g.terms.items()})
        for g in gb.generators
        if all(e[0] == 0 for e in g.terms)
    ]
    return Ideal(ring, out)


def _exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    from .core import multivariate_division

    (q,), r = multivariate_division(f, [g])
    if not r.is_zero():
        raise ArithmeticError(f"{g} does not divide {f}")
    return q


def ideal_colon(I: Ideal, J: Ideal) -> Ideal:
    """``(I : J) = {f : f J ⊆ I}`` as an intersection of principal colons."""
    ring = I.ring
    gens = [g for g in J.generators if not g.is_zero()]
    if not gens:
        warnings.warn("colon by the zero ideal is the whole ring", ZeroColonWarning, stacklevel=2)
        return Ideal.unit(ring)
    result = None
    for g in gens:
        inter = ideal_intersection(I, Ideal(ring, [g]))
        q = Ideal(ring, [_exact_divide(h, g) for h in inter.groebner().generators])
        result = q if result is None else ideal_intersection(result, q)
    return result


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """``f ∈ √I`` via the Rabinowitsch trick."""
    ring = I.ring
    if f.is_zero():
        return True
    ext = _extend_ring(ring.ambient, "t", GREVLEX)
    t = ext.gens()[0]
    gens = [_lift(g, ext) for g in I.effective_generators] + [1 - t * _lift(f, ext)]
    return buchberger(gens, GREVLEX, ring=ext).is_unit()


def independent_set_dimension(leading: Sequence[tuple], n: int) -> int:
    """Largest ``|U|`` such that no monomial in ``leading`` is supported in U."""
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in leading]
    if any(not s for s in supports):
        return -1
    for size in range(n, -1, -1):
        for U in itertools.combinations(range(n), size):
            us = set(U)
            if not any(s <= us for s in supports):
                return size
    return 0


def krull_dimension(I: Ideal) -> int:
    gb = I.groebner(GREVLEX)
    if gb.is_unit():
        return -1
    return independent_set_dimension(gb.leading_exponents(), I.ring.nvars)


def syzygy_module(columns: Sequence, ring: RingDescriptor | None = None) -> list[list[Polynomial]]:
    """Generators of the syzygies of ``columns``.

    ``columns`` is a list of polynomials (rank one) or of equal-length lists
    of polynomials.  Each returned syzygy is a list with one entry per input
    column.
    """
    cols = list(columns)
    if not cols:
        return []
    if isinstance(cols[0], Polynomial):
        ring = ring or cols[0].ring
        vecs = [poly_to_vec(c) for c in cols]
        rank = 1
    else:
        ring = ring or cols[0][0].ring
        vecs = [column_to_vec(c) for c in cols]
        rank = len(cols[0])
    ker = kernel_mod(vecs, [], rank, ring.p, ring.nvars)
    return [vec_to_column(v, ring, len(cols)) for v in ker]
