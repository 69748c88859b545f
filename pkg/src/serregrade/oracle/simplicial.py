"""Simplicial complexes, reduced homology over GF(p) and Hochster's depth formula.

Nothing here touches the Groebner engine: ranks come from a small sparse
Gaussian elimination written for this module alone.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable


def rank_mod_p(rows: list[dict], p: int) -> int:
    """Rank of a sparse matrix (rows as ``{col: value}``) over GF(p)."""
    pivots: dict[int, dict] = {}
    rank = 0
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                inv = pow(r[col], p - 2, p)
                pivots[col] = {c: v * inv % p for c, v in r.items()}
                rank += 1
                break
            f = r[col]
            for c, v in piv.items():
                nv = (r.get(c, 0) - f * v) % p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return rank


class SimplicialComplex:
    """A complex given by its facets; the void complex has no facets at all,
    while ``{∅}`` has the single empty facet."""

    __slots__ = ("vertices", "facets")

    def __init__(self, vertices: Iterable, facets: Iterable[Iterable]):
        self.vertices = tuple(vertices)
        fs = {frozenset(f) for f in facets}
        self.facets = tuple(sorted((f for f in fs if not any(f < g for g in fs)), key=lambda f: (len(f), sorted(f))))

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dimension(self) -> int:
        if self.is_void:
            return -2
        return max(len(f) for f in self.facets) - 1

    def faces(self) -> set[frozenset]:
        out: set[frozenset] = set()
        for f in self.facets:
            items = sorted(f)
            for k in range(len(items) + 1):
                out.update(frozenset(c) for c in combinations(items, k))
        return out

    def link(self, face) -> "SimplicialComplex":
        face = frozenset(face)
        return SimplicialComplex(
            (v for v in self.vertices if v not in face),
            (f - face for f in self.facets if face <= f),
        )

    def reduced_betti(self, p: int) -> dict[int, int]:
        return _reduced_betti(self.facets, p)

    def first_homology_index(self, p: int) -> int | None:
        """Least i with a nonzero reduced homology group, None if acyclic."""
        b = self.reduced_betti(p)
        for i in sorted(b):
            if b[i]:
                return i
        return None

    def __repr__(self):
        return "SimplicialComplex(" + ", ".join("{" + ",".join(map(str, sorted(f))) + "}" for f in self.facets) + ")"


def _boundary_rows(upper: list, index: dict) -> list[dict]:
    rows = []
    for face in upper:
        items = sorted(face)
        row = {}
        for k in range(len(items)):
            sub = frozenset(items[:k] + items[k + 1:])
            row[index[sub]] = 1 if k % 2 == 0 else -1
        rows.append(row)
    return rows


@lru_cache(maxsize=4096)
def _reduced_betti(facets: tuple, p: int) -> dict[int, int]:
    if not facets:
        return {}
    K = SimplicialComplex((), facets)
    by_dim: dict[int, list] = {}
    for f in K.faces():
        by_dim.setdefault(len(f) - 1, []).append(f)
    top = max(by_dim)
    for d in by_dim:
        by_dim[d].sort(key=sorted)
    index = {d: {f: k for k, f in enumerate(fs)} for d, fs in by_dim.items()}
    ranks = {}
    for d in range(0, top + 1):
        ranks[d] = rank_mod_p(_boundary_rows(by_dim[d], index[d - 1]), p)
    out = {}
    for d in range(-1, top + 1):
        out[d] = len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return out


def hochster_depth(K: SimplicialComplex, p: int) -> float:
    """``min over faces F of |F| + 1 + min{i : H~_i(lk F) != 0}``.

    The void complex (zero ring) has infinite depth.
    """
    if K.is_void:
        return float("inf")
    best = float("inf")
    for face in sorted(K.faces(), key=lambda f: (len(f), sorted(f))):
        if len(face) >= best:
            continue
        i = K.link(face).first_homology_index(p)
        if i is not None:
            best = min(best, len(face) + 1 + i)
    return best


def is_cohen_macaulay_complex(K: SimplicialComplex, p: int) -> bool:
    """Reisner: every link has homology only in its top dimension."""
    if K.is_void:
        return True
    for face in K.faces():
        L = K.link(face)
        top = L.dimension
        b = L.reduced_betti(p)
        if any(v for i, v in b.items() if i < top):
            return False
    return True
