"""Finitely presented graded modules over the ambient polynomial ring.

A module is ``coker(F1 -> F0)``: a free module ``F0`` of rank ``rank0`` with
generator degrees, and a list of relation vectors spanning the image of
``F1``.  Modules over ``R = S/J`` carry ``J * F0`` inside their relations, so
every computation happens over ``S``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Sequence

from .core import AlgebraError, GREVLEX, ModuleOrder, Polynomial, RingDescriptor
from .groebner import (
    Ideal,
    ModuleGB,
    column_to_vec,
    groebner_vectors,
    ideal_intersection,
    kernel_mod,
    krull_dimension,
    mul_poly_vec,
    vec_to_column,
)


class PreconditionError(AlgebraError):
    pass


class GradingError(AlgebraError):
    pass


def term_degree(term, degrees: Sequence[int]) -> int:
    comp, e = term
    return sum(e) + degrees[comp]


def vec_degree(v: dict, degrees: Sequence[int]) -> int:
    """Largest degree of a term of ``v`` (the degree, when ``v`` is homogeneous)."""
    return max(term_degree(t, degrees) for t in v)


def vec_is_homogeneous(v: dict, degrees: Sequence[int]) -> bool:
    return len({term_degree(t, degrees) for t in v}) <= 1


def _unit_vec(i: int, n: int) -> dict:
    return {(i, (0,) * n): 1}


class FPModule:
    """Cokernel of a presentation matrix over the ambient polynomial ring."""

    def __init__(self, ring: RingDescriptor, rank0: int, relations: Sequence = (), degrees: Sequence[int] | None = None):
        rels = []
        for r in relations:
            if isinstance(r, dict):
                v = dict(r)
            else:
                v = column_to_vec(r)
            if v:
                if any(c >= rank0 for c, _ in v):
                    raise ValueError("relation has a component outside F0")
                rels.append(v)
        n = ring.nvars
        for q in ring.quotient:
            for i in range(rank0):
                rels.append({(i, e): c for e, c in q.terms.items()})
        self.ring = ring
        self.rank0 = rank0
        self.degrees = tuple(degrees) if degrees is not None else (0,) * rank0
        if len(self.degrees) != rank0:
            raise ValueError("one degree per generator is required")
        self.relations = tuple(rels)
        self._gb: ModuleGB | None = None
        self._lock = threading.Lock()
        self._nvars = n

    # -- constructors --------------------------------------------------

    @classmethod
    def free(cls, ring: RingDescriptor, rank: int = 1, degrees=None) -> "FPModule":
        return cls(ring, rank, (), degrees)

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "FPModule":
        return cls(ring, 0, ())

    @classmethod
    def from_matrix(cls, ring: RingDescriptor, rows: Sequence[Sequence[Polynomial]], degrees=None) -> "FPModule":
        """Module presented by a matrix given row by row; columns are relations."""
        rank0 = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [[rows[i][j] for i in range(rank0)] for j in range(ncols)]
        return cls(ring, rank0, cols, degrees)

    # -- structure -----------------------------------------------------

    @property
    def p(self) -> int:
        return self.ring.p

    def groebner(self) -> ModuleGB:
        gb = self._gb
        if gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = groebner_vectors(self.relations, self.p, ModuleOrder(GREVLEX, "pot"))
                gb = self._gb
        return gb

    def contains(self, v: dict) -> bool:
        """Is the vector ``v`` of ``F0`` zero in the module?"""
        return self.groebner().contains(v)

    def is_zero(self) -> bool:
        if self.rank0 == 0:
            return True
        leads = set(self.groebner().leading_terms())
        zero = (0,) * self._nvars
        return all((i, zero) in leads for i in range(self.rank0))

    def is_homogeneous(self) -> bool:
        return all(vec_is_homogeneous(v, self.degrees) for v in self.relations)

    def columns(self) -> list[list[Polynomial]]:
        amb = self.ring.ambient
        return [vec_to_column(v, amb, self.rank0) for v in self.relations]

    def relation_degrees(self) -> list[int]:
        return [vec_degree(v, self.degrees) for v in self.relations]

    def quotient_by(self, elements: Sequence[Polynomial]) -> "FPModule":
        """``M / (elements) M``."""
        extra = []
        for f in elements:
            if f.is_zero():
                continue
            for i in range(self.rank0):
                extra.append({(i, e): c for e, c in f.terms.items()})
        return _make(self.ring, self.rank0, self.degrees, list(self.relations) + extra)

    def direct_sum(self, other: "FPModule") -> "FPModule":
        r = self.rank0
        rels = list(self.relations) + [{(c + r, e): x for (c, e), x in v.items()} for v in other.relations]
        return _make(self.ring, r + other.rank0, self.degrees + other.degrees, rels)

    def pruned(self) -> "FPModule":
        return prune(self)

    def __str__(self):
        if self.is_zero():
            return "0"
        cols = self.columns()
        if self.rank0 == 1:
            gens = ", ".join(str(c[0]) for c in cols)
            return f"S^1/({gens})" if cols else "S^1"
        rows = [[str(c[i]) for c in cols] for i in range(self.rank0)]
        return f"coker[{'; '.join(' '.join(r) for r in rows)}] (rank0={self.rank0})"

    def __repr__(self):
        return f"FPModule({self})"


def _make(ring, rank0, degrees, rels) -> FPModule:
    # relations already contain J * F0 where needed; bypass re-absorption
    m = FPModule.__new__(FPModule)
    m.ring = ring
    m.rank0 = rank0
    m.degrees = tuple(degrees)
    m.relations = tuple(v for v in rels if v)
    m._gb = None
    m._lock = threading.Lock()
    m._nvars = ring.nvars
    return m


# ---------------------------------------------------------------------------
# minimal presentations


def minimal_generators(vecs: Sequence[dict], degrees: Sequence[int], p: int) -> list[dict]:
    """Greedy minimal generating subset, scanning in order of degree."""
    vecs = [v for v in vecs if v]
    vecs.sort(key=lambda v: vec_degree(v, degrees))
    kept: list = []
    gb = None
    for v in vecs:
        if gb is not None and gb.contains(v):
            continue
        kept.append(v)
        gb = groebner_vectors(kept, p, ModuleOrder(GREVLEX, "pot"))
    return kept


def prune(M: FPModule) -> FPModule:
    """Remove generators killed by relations with a unit entry, then drop
    redundant relations.  Zero modules come out with ``rank0 == 0``."""
    p = M.p
    n = M._nvars
    zero = (0,) * n
    rank = M.rank0
    degrees = list(M.degrees)
    rels = [dict(v) for v in M.relations if v]
    alive = list(range(rank))
    changed = True
    while changed:
        changed = False
        for idx, r in enumerate(rels):
            for comp in sorted({c for c, _ in r}):
                comp_terms = {e: x for (c, e), x in r.items() if c == comp}
                if len(comp_terms) == 1 and zero in comp_terms:
                    u_inv = pow(comp_terms[zero], p - 2, p)
                    pivot = r
                    new = []
                    for j, s in enumerate(rels):
                        if j == idx:
                            continue
                        s_comp = {e: x for (c, e), x in s.items() if c == comp}
                        if s_comp:
                            f = {e: x * u_inv % p for e, x in s_comp.items()}
                            prod = mul_poly_vec(f, pivot, p)
                            s = dict(s)
                            for t, x in prod.items():
                                nv = (s.get(t, 0) - x) % p
                                if nv:
                                    s[t] = nv
                                else:
                                    s.pop(t, None)
                        if s:
                            new.append(s)
                    rels = new
                    alive.remove(comp)
                    changed = True
                    break
            if changed:
                break
    remap = {c: i for i, c in enumerate(alive)}
    rels = [{(remap[c], e): x for (c, e), x in v.items()} for v in rels]
    new_degrees = [degrees[c] for c in alive]
    if M.is_homogeneous():
        rels = minimal_generators(rels, new_degrees, p)
    out = _make(M.ring, len(alive), new_degrees, rels)
    if out.rank0 and out.is_zero():
        return _make(M.ring, 0, (), ())
    return out


# ---------------------------------------------------------------------------
# constructions


def cyclic_module(I: Ideal) -> FPModule:
    """``S/I`` (with the quotient ideal of the ring absorbed)."""
    ring = I.ring
    rels = [{(0, e): c for e, c in g.terms.items()} for g in I.effective_generators]
    M = _make(ring, 1, (0,), rels)
    if M.is_zero():
        return _make(ring, 0, (), ())
    return M


def _check_rank(vecs, rank):
    for v in vecs:
        if any(c >= rank for c, _ in v):
            raise ValueError("vector has a component outside the ambient free module")


def subquotient_vectors(ring, rank, degrees, gens, rels, check=True) -> FPModule:
    """Presentation of ``span(gens) / span(rels)``; needs rels inside span(gens)."""
    p = ring.p
    gens = [g for g in gens if g]
    rels = [r for r in rels if r]
    _check_rank(gens, rank)
    _check_rank(rels, rank)
    if check and rels:
        ggb = groebner_vectors(gens, p, ModuleOrder(GREVLEX, "pot"))
        for k, r in enumerate(rels):
            if not ggb.contains(r):
                raise PreconditionError(f"relation column {k} is not in the span of the generators")
    if not gens:
        return _make(ring, 0, (), ())
    new_degrees = [vec_degree(g, degrees) for g in gens]
    ker = kernel_mod(gens, rels, rank, p, ring.nvars)
    out = _make(ring, len(gens), new_degrees, ker)
    return prune(out)


def subquotient(generators: Sequence[Sequence[Polynomial]], relations: Sequence[Sequence[Polynomial]], degrees=None) -> FPModule:
    """``span(generators) / span(relations)``; both are columns in ``F0``."""
    cols = list(generators) + list(relations)
    if not cols:
        raise ValueError("need at least one column to infer the ring")
    ring = cols[0][0].ring
    rank = len(cols[0])
    degrees = degrees if degrees is not None else (0,) * rank
    return subquotient_vectors(
        ring, rank, degrees,
        [column_to_vec(c) for c in generators],
        [column_to_vec(c) for c in relations],
    )


def colon_step_module(M: FPModule, x_prev: Sequence[Polynomial], x_i: Polynomial) -> FPModule:
    """``((x_prev) M :_M x_i) / (x_prev) M``."""
    if M.rank0 == 0:
        return M
    base = M.quotient_by(x_prev)
    n = M._nvars
    cols = [{(t, e): c for e, c in x_i.terms.items()} for t in range(M.rank0)]
    colon = kernel_mod(cols, base.relations, M.rank0, M.p, n)
    return subquotient_vectors(M.ring, M.rank0, M.degrees, colon, base.relations, check=False)


def annihilator(M: FPModule) -> Ideal:
    """``Ann(M)`` as the intersection of ``(relations : e_i)``."""
    ring = M.ring
    if M.is_zero():
        return Ideal.unit(ring)
    n = M._nvars
    amb = ring.ambient
    result = None
    for i in range(M.rank0):
        ker = kernel_mod([_unit_vec(i, n)], M.relations, M.rank0, M.p, n)
        gens = [Polynomial._raw(amb, {e: c for (_, e), c in v.items()}) for v in ker]
        colon = Ideal(ring, gens)
        result = colon if result is None else ideal_intersection(result, colon)
    return result


def module_dimension(M: FPModule) -> int:
    if M.is_zero():
        return -1
    return krull_dimension(annihilator(M))


def initial_module_dimension(M: FPModule) -> int:
    """Dimension read off the initial module (an independent route)."""
    from .groebner import independent_set_dimension

    if M.is_zero():
        return -1
    per_comp: dict = {c: [] for c in range(M.rank0)}
    for c, e in M.groebner().leading_terms():
        per_comp[c].append(e)
    return max(independent_set_dimension(per_comp[c], M._nvars) for c in per_comp)


# ---------------------------------------------------------------------------
# resolutions and Ext


@dataclass
class FreeResolution:
    """``F_0 <- F_1 <- ... <- F_L``; ``maps[k-1]`` holds the columns of
    ``F_k -> F_{k-1}`` as vectors, ``degrees[k]`` the generator degrees of F_k."""

    ring: RingDescriptor
    degrees: list
    maps: list
    complete: bool = True

    @property
    def length(self) -> int:
        return len(self.maps)

    def ranks(self) -> list[int]:
        return [len(d) for d in self.degrees]

    def betti(self) -> list[int]:
        return self.ranks()

    def map_columns(self, k: int) -> list[list[Polynomial]]:
        rank = len(self.degrees[k - 1])
        return [vec_to_column(v, self.ring.ambient, rank) for v in self.maps[k - 1]]

    def compose_is_zero(self) -> bool:
        p = self.ring.p
        for k in range(1, len(self.maps)):
            upper, lower = self.maps[k], self.maps[k - 1]
            for col in upper:
                acc: dict = {}
                for (c, e), x in col.items():
                    for t, y in mul_poly_vec({e: x}, lower[c], p).items():
                        nv = (acc.get(t, 0) + y) % p
                        if nv:
                            acc[t] = nv
                        else:
                            acc.pop(t, None)
                if acc:
                    return False
        return True

    def is_exact(self) -> bool:
        """Kernel equals image at every interior spot (membership both ways)."""
        if not self.compose_is_zero():
            return False
        p = self.ring.p
        n = self.ring.nvars
        for k in range(1, len(self.maps)):
            rank = len(self.degrees[k])
            ker = kernel_mod(self.maps[k - 1], [], len(self.degrees[k - 1]), p, n)
            img = groebner_vectors(self.maps[k], p, ModuleOrder(GREVLEX, "pot"))
            if not all(img.contains(v) for v in ker):
                return False
        if self.maps and self.complete:
            last = kernel_mod(self.maps[-1], [], len(self.degrees[-2]), p, n)
            if last:
                return False
        return True


def free_resolution(M: FPModule, length: int | None = None) -> FreeResolution:
    """Minimal (for graded input) free resolution by iterated syzygies."""
    if length is not None and length < 1:
        raise ValueError("length must be >= 1")
    n = M._nvars
    cap = length if length is not None else n + 1
    P = prune(M)
    p = M.p
    degrees = [list(P.degrees)]
    maps: list = []
    if P.rank0 == 0:
        return FreeResolution(M.ring, [[]], [], True)
    current = list(P.relations)
    graded = P.is_homogeneous()
    complete = False
    while True:
        if not current:
            complete = True
            break
        if graded:
            current = minimal_generators(current, degrees[-1], p)
        maps.append(current)
        degrees.append([vec_degree(v, degrees[-1]) for v in current])
        if len(maps) >= cap:
            break
        current = kernel_mod(current, [], len(degrees[-2]), p, n)
    return FreeResolution(M.ring, degrees, maps, complete)


def homology(
    ring: RingDescriptor,
    src_rank: int,
    src_degrees: Sequence[int],
    src_relations: Sequence[dict],
    out_columns: Sequence[dict],
    tgt_rank: int,
    tgt_relations: Sequence[dict],
    in_columns: Sequence[dict],
) -> FPModule:
    """``ker(out) / (im(in) + relations)`` at the middle of ``A -> B -> C``.

    ``out_columns[k]`` is the image in C's free module of the k-th basis
    vector of B's free module; ``in_columns`` are images of A's basis in B.
    """
    if src_rank == 0:
        return _make(ring, 0, (), ())
    p = ring.p
    n = ring.nvars
    if tgt_rank == 0:
        ker = [_unit_vec(i, n) for i in range(src_rank)]
    else:
        ker = kernel_mod(out_columns, tgt_relations, tgt_rank, p, n)
    rels = [v for v in in_columns if v] + [v for v in src_relations if v]
    return subquotient_vectors(ring, src_rank, src_degrees, ker, rels, check=False)


def _hom_layer(res: FreeResolution, k: int, M: FPModule):
    """Rank, degrees and relations of ``Hom(F_k, M) = M^{b_k}``."""
    if k >= len(res.degrees):
        return 0, [], []
    fdeg = res.degrees[k]
    r = M.rank0
    degrees = [M.degrees[t] - fdeg[a] for a in range(len(fdeg)) for t in range(r)]
    rels = []
    for a in range(len(fdeg)):
        for v in M.relations:
            rels.append({(a * r + c, e): x for (c, e), x in v.items()})
    return len(fdeg) * r, degrees, rels


def _hom_map(res: FreeResolution, k: int, M: FPModule) -> list[dict]:
    """Columns of ``Hom(F_k, M) -> Hom(F_{k+1}, M)``, precomposition with d_{k+1}."""
    r = M.rank0
    if k >= len(res.degrees):
        return []
    b_k = len(res.degrees[k])
    if k + 1 >= len(res.degrees):
        return [{} for _ in range(b_k * r)]
    d = res.maps[k]  # columns: images of F_{k+1} basis in F_k
    cols = []
    for a in range(b_k):
        for t in range(r):
            col: dict = {}
            for j, dj in enumerate(d):
                for (c, e), x in dj.items():
                    if c == a:
                        col[(j * r + t, e)] = x
            cols.append(col)
    return cols


def ext_module(i: int, N: FPModule, M: FPModule, resolution: FreeResolution | None = None) -> FPModule:
    """``Ext^i_S(N, M)`` as the cohomology of ``Hom(F_•, M)``."""
    if i < 0:
        raise ValueError("i must be >= 0")
    ring = M.ring
    if N.is_zero() or M.is_zero():
        return _make(ring, 0, (), ())
    res = resolution or free_resolution(N, i + 1)
    if i >= len(res.degrees):
        return _make(ring, 0, (), ())
    rank, degrees, rels = _hom_layer(res, i, M)
    tgt_rank, _, tgt_rels = _hom_layer(res, i + 1, M)
    out_cols = _hom_map(res, i, M)
    in_cols = _hom_map(res, i - 1, M) if i >= 1 else []
    return homology(ring, rank, degrees, rels, out_cols, tgt_rank, tgt_rels, in_cols)


def is_isomorphic_cyclic(M: FPModule, I: Ideal) -> bool:
    """``M ≅ S/I`` for a cyclic ``M``: compares the relation ideal."""
    P = prune(M)
    if P.rank0 == 0:
        return I.is_unit()
    if P.rank0 != 1:
        return False
    amb = M.ring.ambient
    rel = Ideal(M.ring, [Polynomial._raw(amb, {e: c for (_, e), c in v.items()}) for v in P.relations])
    return rel.contains_ideal(I) and I.contains_ideal(rel)
