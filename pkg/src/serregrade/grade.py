"""Koszul complexes and grades of an ideal on a module relative to a Serre class.

Three routes are offered: Koszul cohomology (authoritative, works over
quotient rings), Ext against ``S/a`` (ambient polynomial ring only) and an
explicit search for a maximal weak sequence.
"""

from __future__ import annotations

import itertools
import math
import random
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .core import AlgebraError, Polynomial
from .fpmodule import (
    FPModule,
    _make,
    colon_step_module,
    cyclic_module,
    ext_module,
    free_resolution,
    homology,
    module_dimension,
)
from .groebner import Ideal
from .serre import DimLE, SerreClassSpec, SuppInV, ZeroOnly, contains

POS_INF = math.inf
NEG_INF = -math.inf


class UnsupportedRoute(AlgebraError):
    pass


class WitnessSearchFailure(AlgebraError):
    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = list(partial)


class RangeWarning(UserWarning):
    pass


def format_value(v) -> str:
    if v == POS_INF:
        return "+inf"
    if v == NEG_INF:
        return "-inf"
    return str(int(v))


@dataclass
class GradeReport:
    value: float | int
    route: str
    klass: SerreClassSpec
    witnesses: list = field(default_factory=list)
    name: str = "grade"
    notes: list = field(default_factory=list)
    flags: dict = field(default_factory=lambda: {"inf_empty": "+inf", "sup_empty": "-inf"})

    @property
    def finite(self) -> bool:
        return not math.isinf(self.value)

    def __str__(self):
        return f"{self.name} = {format_value(self.value)} (route {self.route}, class {self.klass})"


# ---------------------------------------------------------------------------
# Koszul complex


@dataclass
class KoszulComplex:
    """``K^•(x; M) = Hom(K_•(x), M)``; layer i is ``M^{C(r, i)}``."""

    elements: list
    module: FPModule
    subsets: list
    ranks: list
    degrees: list
    relations: list
    differentials: list  # differentials[i] : K^i -> K^{i+1}, as columns

    @property
    def length(self) -> int:
        return len(self.elements)


def koszul_complex(x: Sequence[Polynomial], M: FPModule) -> KoszulComplex:
    r = len(x)
    r0 = M.rank0
    subsets = [list(itertools.combinations(range(r), i)) for i in range(r + 1)]
    index = [{J: k for k, J in enumerate(s)} for s in subsets]
    xdeg = [f.total_degree() if not f.is_zero() else 0 for f in x]
    ranks, degrees, relations = [], [], []
    for i in range(r + 1):
        ranks.append(len(subsets[i]) * r0)
        degrees.append([M.degrees[t] - sum(xdeg[j] for j in J) for J in subsets[i] for t in range(r0)])
        rels = []
        for k in range(len(subsets[i])):
            for v in M.relations:
                rels.append({(k * r0 + c, e): val for (c, e), val in v.items()})
        relations.append(rels)
    p = M.p
    diffs = []
    for i in range(r):
        cols = []
        for J0 in subsets[i]:
            for t in range(r0):
                col: dict = {}
                for j in range(r):
                    if j in J0:
                        continue
                    J = tuple(sorted(J0 + (j,)))
                    sign = -1 if J.index(j) % 2 else 1
                    comp = index[i + 1][J] * r0 + t
                    for e, c in x[j].terms.items():
                        col[(comp, e)] = (sign * c) % p
                cols.append(col)
        diffs.append(cols)
    return KoszulComplex(list(x), M, subsets, ranks, degrees, relations, diffs)


def _layer_cohomology(K: KoszulComplex, i: int) -> FPModule:
    M = K.module
    r = K.length
    out_cols = K.differentials[i] if i < r else []
    tgt_rank = K.ranks[i + 1] if i < r else 0
    tgt_rels = K.relations[i + 1] if i < r else []
    in_cols = K.differentials[i - 1] if i >= 1 else []
    return homology(M.ring, K.ranks[i], K.degrees[i], K.relations[i], out_cols, tgt_rank, tgt_rels, in_cols)


def koszul_cohomology(i: int, x: Sequence[Polynomial], M: FPModule) -> FPModule:
    r = len(x)
    if not 0 <= i <= r:
        warnings.warn(f"Koszul cohomology index {i} outside 0..{r}", RangeWarning, stacklevel=2)
        return _make(M.ring, 0, (), ())
    if M.rank0 == 0:
        return _make(M.ring, 0, (), ())
    return _layer_cohomology(koszul_complex(x, M), i)


def _nonzero_gens(a: Ideal | Sequence[Polynomial]) -> list:
    gens = a.generators if isinstance(a, Ideal) else a
    return [g for g in gens if not g.is_zero()]


def koszul_grade(a: Ideal | Sequence[Polynomial], M: FPModule, S: SerreClassSpec) -> GradeReport:
    """``inf{i : H^i(K(gens a; M)) ∉ S}``; ``+inf`` if every layer lies in S."""
    gens = _nonzero_gens(a)
    report = GradeReport(POS_INF, "koszul", S)
    if M.rank0 == 0 or M.is_zero():
        report.notes.append("M = 0: empty infimum")
        return report
    K = koszul_complex(gens, M)
    for i in range(len(gens) + 1):
        H = _layer_cohomology(K, i)
        inside = contains(S, H)
        report.witnesses.append({"i": i, "rank0": H.rank0, "dim": module_dimension(H), "in_class": inside})
        if not inside:
            report.value = i
            break
    if S.closed_under_sums:
        report.notes.append("local-cohomology grade equals this value (class closed under direct sums)")
    return report


def ext_grade(a: Ideal, M: FPModule, S: SerreClassSpec) -> GradeReport:
    """``inf{i : Ext^i_S(S/a, M) ∉ S}`` over the ambient polynomial ring."""
    if M.ring.quotient or a.ring.quotient:
        raise UnsupportedRoute("the Ext route needs the ambient polynomial ring; use koszul_grade")
    report = GradeReport(POS_INF, "ext", S)
    if M.is_zero():
        report.notes.append("M = 0: empty infimum")
        return report
    N = cyclic_module(a)
    if N.rank0 == 0:
        report.notes.append("a is the unit ideal: Ext vanishes")
        return report
    res = free_resolution(N)
    for i in range(len(res.degrees)):
        E = ext_module(i, N, M, resolution=res)
        inside = contains(S, E)
        report.witnesses.append({"i": i, "rank0": E.rank0, "dim": module_dimension(E), "in_class": inside})
        if not inside:
            report.value = i
            break
    return report


# ---------------------------------------------------------------------------
# weak sequences


@dataclass
class WeakSequenceReport:
    sequence: list
    steps: list  # per element: {"in_class": bool, "dim": int}
    is_weak: bool
    quotient_in_class: bool
    is_s_sequence: bool
    failed_at: int | None = None


def check_weak_sequence(x: Sequence[Polynomial], M: FPModule, S: SerreClassSpec) -> WeakSequenceReport:
    steps = []
    failed = None
    for i, xi in enumerate(x):
        C = colon_step_module(M, list(x[:i]), xi)
        ok = contains(S, C)
        steps.append({"in_class": ok, "dim": module_dimension(C)})
        if not ok and failed is None:
            failed = i + 1
    weak = failed is None
    quot_in = contains(S, M.quotient_by(list(x)))
    return WeakSequenceReport(list(x), steps, weak, quot_in, weak and not quot_in, failed)


def _monomials_of_degree(n: int, d: int):
    if d < 0:
        return
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for v in combo:
            e[v] += 1
        yield tuple(e)


def _random_combination(gens: Sequence[Polynomial], degree: int, rng: random.Random) -> Polynomial:
    ring = gens[0].ring
    p = ring.p
    n = ring.nvars
    total = ring.zero()
    for g in gens:
        dg = g.total_degree()
        if dg > degree:
            continue
        coeff = {e: rng.randrange(p) for e in _monomials_of_degree(n, degree - dg)}
        total = total + Polynomial(ring, coeff) * g
    return total


def find_max_weak_sequence(
    a: Ideal,
    M: FPModule,
    S: SerreClassSpec,
    seed: int = 0,
    budget: int = 64,
    target: int | None = None,
) -> GradeReport:
    """Search a weak M-sequence in ``a`` of length equal to the Koszul grade.

    Candidates are random homogeneous combinations of the generators, first
    in the lowest generator degree, then in higher degrees.  Every accepted
    element passes the colon-module test.
    """
    if target is None:
        g = koszul_grade(a, M, S)
        if not g.finite:
            raise ValueError("the grade is infinite: maximal weak sequences do not exist")
        target = int(g.value)
    gens = _nonzero_gens(a)
    rng = random.Random(seed)
    seq: list = []
    if target > 0 and not gens:
        raise WitnessSearchFailure("no generators to draw from", seq)
    dmin = min((f.total_degree() for f in gens), default=0)
    levels = 4
    while len(seq) < target:
        for attempt in range(budget):
            degree = dmin + attempt * levels // budget
            cand = _random_combination(gens, degree, rng)
            if cand.is_zero():
                continue
            if contains(S, colon_step_module(M, seq, cand)):
                seq.append(cand)
                break
        else:
            raise WitnessSearchFailure(
                f"no admissible element found in {budget} attempts at position {len(seq) + 1}", seq
            )
    report = GradeReport(len(seq), "sequence", S, witnesses=seq, name="classical grade")
    return report


def classical_grade(a: Ideal, M: FPModule, S: SerreClassSpec, seed: int = 0, budget: int = 64) -> GradeReport:
    """Sup-length of weak sequences, witnessed by search when finite."""
    kg = koszul_grade(a, M, S)
    if not kg.finite:
        rep = GradeReport(POS_INF, "koszul", S, name="classical grade")
        rep.notes.append(
            "every Koszul layer lies in the class; weak sequences of any length exist, "
            "so +inf is reported (a sup over the empty set would give -inf only if none existed)"
        )
        return rep
    try:
        return find_max_weak_sequence(a, M, S, seed=seed, budget=budget, target=int(kg.value))
    except WitnessSearchFailure as exc:
        rep = GradeReport(kg.value, "koszul", S, witnesses=exc.partial, name="classical grade")
        rep.notes.append(f"witness search failed ({exc}); value taken from the Koszul route")
        return rep


# ---------------------------------------------------------------------------
# named depths


def named_depths(kind: str, a: Ideal, M: FPModule, j: int | None = None, b: Ideal | None = None) -> GradeReport:
    """``f_depth``, ``g_depth``, ``tj_depth`` (needs ``j``) or ``tb_grade`` (needs ``b``)."""
    if kind == "f_depth":
        S, name = DimLE(0), "f-depth"
    elif kind == "g_depth":
        S, name = DimLE(1), "generalized depth"
    elif kind == "tj_depth":
        if j is None:
            raise ValueError("tj_depth needs j")
        S, name = DimLE(j), f"T_{j}-depth"
    elif kind == "tb_grade":
        if b is None:
            raise ValueError("tb_grade needs b")
        S, name = SuppInV(b), "b-filter grade"
    else:
        raise ValueError(f"unknown depth kind {kind!r}")
    rep = koszul_grade(a, M, S)
    rep.name = name
    return rep


def depth(M: FPModule) -> GradeReport:
    """Classical depth at the irrelevant ideal."""
    m = Ideal(M.ring, M.ring.gens())
    return koszul_grade(m, M, ZeroOnly())
