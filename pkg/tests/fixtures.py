"""Shared fixtures: small graded modules, ideals and classes over GF(101)."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from serregrade import DimLE, FPModule, Ideal, SuppInV, ZeroOnly, cyclic_module, make_ring

R2 = make_ring("x,y")
R3 = make_ring("x,y,z")
R4 = make_ring("x,y,z,w")


def gens(ring):
    return ring.gens()


@dataclass
class GradeFixture:
    name: str
    ring: object
    a: list
    module: FPModule
    klass: object
    monomial: bool


def _cyc(ring, polys):
    return cyclic_module(Ideal(ring, polys))


def grade_fixtures() -> list[GradeFixture]:
    x, y, z = R3.gens()
    u, v = R2.gens()
    X, Y, Z, W = R4.gens()
    A = _cyc(R3, [x * y, x * z])
    B = _cyc(R2, [u * u, u * v])
    cubic = _cyc(R4, [X * Z - Y * Y, X * W - Y * Z, Y * W - Z * Z])
    out = [
        GradeFixture("A m zero", R3, [x, y, z], A, ZeroOnly(), True),
        GradeFixture("A (x) zero", R3, [x], A, ZeroOnly(), True),
        GradeFixture("A (y,z) dim1", R3, [y, z], A, DimLE(1), True),
        GradeFixture("A m supp(x)", R3, [x, y, z], A, SuppInV(Ideal(R3, [x])), True),
        GradeFixture("A (y,z) dim0", R3, [y, z], A, DimLE(0), True),
        GradeFixture("B m zero", R2, [u, v], B, ZeroOnly(), True),
        GradeFixture("B (v) dim0", R2, [v], B, DimLE(0), True),
        GradeFixture("B m dim0", R2, [u, v], B, DimLE(0), True),
        GradeFixture("xy-z2 m zero", R3, [x, y, z], _cyc(R3, [x * y - z * z]), ZeroOnly(), False),
        GradeFixture("x2-yz,xy (x,y) dim0", R3, [x, y], _cyc(R3, [x * x - y * z, x * y]), DimLE(0), False),
        GradeFixture("cubic m zero", R4, [X, Y, Z, W], cubic, ZeroOnly(), False),
        GradeFixture("cubic (X,W) dim1", R4, [X, W], cubic, DimLE(1), False),
        GradeFixture("xy,yz (x,z) dim1", R3, [x, z], _cyc(R3, [x * y, y * z]), DimLE(1), True),
        GradeFixture("free (x,y) zero", R3, [x, y], FPModule.free(R3), ZeroOnly(), True),
        GradeFixture("x2,y2 (z) zero", R3, [z], _cyc(R3, [x * x, y * y]), ZeroOnly(), True),
        GradeFixture("u2-v2,uv m dim0", R2, [u, v], _cyc(R2, [u * u - v * v, u * v]), DimLE(0), False),
        GradeFixture("XY-ZW (X,Z) supp(X,Y)", R4, [X, Z], _cyc(R4, [X * Y - Z * W]), SuppInV(Ideal(R4, [X, Y])), False),
        GradeFixture("xz,yz m supp(z)", R3, [x, y, z], _cyc(R3, [x * z, y * z]), SuppInV(Ideal(R3, [z])), True),
        GradeFixture("free (x,y) dim0", R3, [x, y], FPModule.free(R3), DimLE(0), True),
        GradeFixture("XY,XZ (Y,Z,W) dim0", R4, [Y, Z, W], _cyc(R4, [X * Y, X * Z]), DimLE(0), True),
        GradeFixture("cubic (X,Y) dim0", R4, [X, Y], cubic, DimLE(0), False),
        GradeFixture("A (y,z) supp(x)", R3, [y, z], A, SuppInV(Ideal(R3, [x])), True),
        GradeFixture("XY,XZ (Y,Z,W) dim1", R4, [Y, Z, W], _cyc(R4, [X * Y, X * Z]), DimLE(1), True),
        GradeFixture("free4 (X,Y) dim1", R4, [X, Y], FPModule.free(R4), DimLE(1), True),
    ]
    return out


# ---------------------------------------------------------------------------
# random monomial ideals


def random_monomial_ideal(rng: random.Random, n: int, max_gens: int = 4, max_deg: int = 3, squarefree: bool = False):
    """Exponent vectors of a random monomial ideal (possibly redundant)."""
    k = rng.randint(1, max_gens)
    out = []
    for _ in range(k):
        while True:
            if squarefree:
                e = tuple(rng.randint(0, 1) for _ in range(n))
            else:
                e = tuple(rng.randint(0, max_deg) for _ in range(n))
            if 0 < sum(e) <= max_deg:
                out.append(e)
                break
    return out


def monomial(ring, e):
    f = ring.one()
    for v, k in zip(ring.gens(), e):
        f = f * v**k
    return f


def monomial_ideal(ring, exps) -> Ideal:
    return Ideal(ring, [monomial(ring, e) for e in exps])


def ring_for(n: int):
    return {2: R2, 3: R3, 4: R4}.get(n) or make_ring(",".join(f"x{i}" for i in range(n)))


def monomial_cm_fixtures(count: int = 24, seed: int = 20241) -> list[tuple]:
    """``(ring, exps)`` for auto-generated monomial ideals in 2..4 variables,
    deduplicated, including a few hand-picked shapes."""
    rng = random.Random(seed)
    seen = set()
    out = []
    hand = [
        (3, [(1, 1, 0), (1, 0, 1)]),
        (2, [(2, 0), (1, 1)]),
        (3, [(1, 1, 0), (0, 1, 1)]),
        (4, [(1, 1, 0, 0), (0, 0, 1, 1)]),
        (4, [(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)]),
        (3, [(2, 0, 0), (0, 2, 0)]),
    ]
    for n, exps in hand:
        key = (n, tuple(sorted(exps)))
        seen.add(key)
        out.append((ring_for(n), exps))
    while len(out) < count:
        n = rng.choice([2, 3, 4])
        exps = random_monomial_ideal(rng, n, max_gens=4, max_deg=3)
        key = (n, tuple(sorted(set(exps))))
        if key in seen:
            continue
        seen.add(key)
        out.append((ring_for(n), exps))
    return out


def squarefree_fixtures(count: int = 18, seed: int = 7) -> list[tuple]:
    rng = random.Random(seed)
    seen = set()
    out = []
    hand = [(3, [(1, 1, 0), (1, 0, 1)]), (2, [(1, 1)]), (3, []), (5, [(1, 1, 0, 0, 0), (0, 1, 1, 0, 0), (0, 0, 1, 1, 0), (0, 0, 0, 1, 1), (1, 0, 0, 0, 1)])]
    for n, exps in hand:
        seen.add((n, tuple(sorted(exps))))
        out.append((n, exps))
    while len(out) < count:
        n = rng.choice([3, 4, 5])
        exps = random_monomial_ideal(rng, n, max_gens=4, max_deg=3, squarefree=True)
        key = (n, tuple(sorted(set(exps))))
        if key in seen:
            continue
        seen.add(key)
        out.append((n, exps))
    return out


def all_classes(ring):
    xs = ring.gens()
    return [ZeroOnly(), DimLE(0), DimLE(1), SuppInV(Ideal(ring, xs[:2]))]


def subsets(seq):
    for k in range(len(seq) + 1):
        yield from itertools.combinations(seq, k)


# ---------------------------------------------------------------------------
# short exact sequences 0 -> A -> B -> C -> 0


def random_homogeneous_ideal(rng: random.Random, ring, max_gens: int = 3, max_deg: int = 3) -> Ideal:
    """Monomials and binomials (equal degree) in the ring's variables."""
    n = ring.nvars
    out = []
    for _ in range(rng.randint(1, max_gens)):
        d = rng.randint(1, max_deg)
        e1 = _random_exp(rng, n, d)
        f = monomial(ring, e1)
        if rng.random() < 0.4:
            e2 = _random_exp(rng, n, d)
            if e2 != e1:
                f = f - ring.const(rng.randint(1, ring.p - 1)) * monomial(ring, e2)
        out.append(f)
    return Ideal(ring, out)


def _random_exp(rng, n, d):
    e = [0] * n
    for _ in range(d):
        e[rng.randrange(n)] += 1
    return tuple(e)


def random_ses(rng: random.Random, ring):
    """A random short exact sequence ``(A, B, C)`` of graded modules."""
    from serregrade import ideal_intersection
    from serregrade.fpmodule import subquotient_vectors

    kind = rng.choice(["sub", "sum", "mayer"])
    I = random_homogeneous_ideal(rng, ring)
    J = random_homogeneous_ideal(rng, ring)
    if kind == "sub":
        # 0 -> (I+J)/I -> S/I -> S/(I+J) -> 0
        B = cyclic_module(I)
        gens = [{(0, e): c for e, c in f.terms.items()} for f in J.generators + I.generators]
        rels = [{(0, e): c for e, c in f.terms.items()} for f in I.generators]
        A = subquotient_vectors(ring, 1, (0,), gens, rels)
        C = cyclic_module(I + J)
    elif kind == "sum":
        A, C = cyclic_module(I), cyclic_module(J)
        B = A.direct_sum(C)
    else:
        # 0 -> S/(I∩J) -> S/I ⊕ S/J -> S/(I+J) -> 0
        A = cyclic_module(ideal_intersection(I, J))
        B = cyclic_module(I).direct_sum(cyclic_module(J))
        C = cyclic_module(I + J)
    return kind, A, B, C


def random_class(rng: random.Random, ring, variant: str):
    if variant == "zero":
        return ZeroOnly()
    if variant == "dim_le":
        return DimLE(rng.randint(0, ring.nvars - 1))
    xs = ring.gens()
    k = rng.randint(1, len(xs))
    return SuppInV(Ideal(ring, rng.sample(xs, k)))
