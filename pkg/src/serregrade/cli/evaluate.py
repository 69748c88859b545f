"""Semantic pass: resolve names, build engine objects, enforce homogeneity."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import AlgebraError, Polynomial, is_prime, make_ring, quotient_ring
from ..fpmodule import FPModule, cyclic_module
from ..groebner import Ideal
from ..serre import DimLE, SerreClassSpec, SuppInV, ZeroOnly
from .lexer import (
    BAD_VALUE,
    INHOMOGENEOUS,
    NOT_PRIME,
    REDECLARED,
    RING_DECL,
    UNDECLARED,
    WRONG_KIND,
    Diagnostic,
    Span,
)
from .syntax import (
    BinOp,
    ClassDecl,
    IdealDecl,
    IdealLit,
    ModuleDecl,
    NameRef,
    Neg,
    Num,
    Pow,
    Query,
    RingDecl,
    Script,
    Var,
)

MAX_EXPONENT = 64


class _Abort(Exception):
    pass


def _article(word: str) -> str:
    return ("an " if word[0] in "aeiou" else "a ") + word


@dataclass
class BoundQuery:
    node: Query
    module: FPModule | None = None
    klass: SerreClassSpec | None = None
    a: Ideal | None = None
    b: Ideal | None = None
    elements: list | None = None
    module_name: str = ""
    class_name: str = ""


@dataclass
class Program:
    ring: object = None
    ring_name: str = ""
    names: dict = field(default_factory=dict)  # name -> (kind, object)
    queries: list = field(default_factory=list)


class Binder:
    def __init__(self):
        self.prog = Program()
        self.diags: list[Diagnostic] = []

    def error(self, code, message, span):
        self.diags.append(Diagnostic(code, message, span))
        raise _Abort

    # -- expressions -------------------------------------------------

    def expr(self, e) -> Polynomial:
        ring = self.prog.ring
        if isinstance(e, Num):
            return ring.const(e.value)
        if isinstance(e, Var):
            if e.name not in ring.variables:
                self.error(UNDECLARED, f"undeclared name '{e.name}' (not a variable of {self.prog.ring_name})", e.span)
            return ring.var(e.name)
        if isinstance(e, Neg):
            return -self.expr(e.operand)
        if isinstance(e, Pow):
            if e.exponent > MAX_EXPONENT:
                self.error(BAD_VALUE, f"exponent {e.exponent} exceeds {MAX_EXPONENT}", e.span)
            return self.expr(e.base) ** e.exponent
        if isinstance(e, BinOp):
            left, right = self.expr(e.left), self.expr(e.right)
            if e.op == "+":
                return left + right
            if e.op == "-":
                return left - right
            return left * right
        raise TypeError(e)

    def homogeneous(self, e) -> Polynomial:
        f = self.expr(e)
        if not f.is_homogeneous():
            self.error(INHOMOGENEOUS, f"polynomial {f} is not homogeneous", e.span)
        return f

    def ideal_lit(self, lit: IdealLit) -> Ideal:
        return Ideal(self.prog.ring, [self.homogeneous(g) for g in lit.generators])

    def ideal_ref(self, ref) -> Ideal:
        if isinstance(ref, IdealLit):
            return self.ideal_lit(ref)
        return self.lookup(ref, "ideal")

    def lookup(self, ref: NameRef, kind: str):
        entry = self.prog.names.get(ref.name)
        if entry is None:
            self.error(UNDECLARED, f"undeclared name '{ref.name}'", ref.span)
        if entry[0] != kind:
            self.error(WRONG_KIND, f"'{ref.name}' is {_article(entry[0])}, expected {_article(kind)}", ref.span)
        return entry[1]

    def declare(self, name: str, kind: str, obj, span):
        if name in self.prog.names:
            self.error(REDECLARED, f"'{name}' is already declared", span)
        self.prog.names[name] = (kind, obj)

    # -- statements --------------------------------------------------

    def bind(self, script: Script) -> Program:
        for stmt in script.statements:
            try:
                self.statement(stmt)
            except _Abort:
                if isinstance(stmt, RingDecl) and self.prog.ring is None:
                    break  # nothing downstream can be checked without a ring
        return self.prog

    def statement(self, s):
        if isinstance(s, RingDecl):
            return self.ring_decl(s)
        if self.prog.ring is None:
            self.error(RING_DECL, "no ring declared before this statement", s.span)
        if isinstance(s, IdealDecl):
            self.declare(s.name, "ideal", self.ideal_ref(s.ideal), s.span)
        elif isinstance(s, ModuleDecl):
            self.declare(s.name, "module", self.module_decl(s), s.span)
        elif isinstance(s, ClassDecl):
            self.declare(s.name, "class", self.class_decl(s), s.span)
        else:
            self.prog.queries.append(self.query(s))

    def ring_decl(self, s: RingDecl):
        if self.prog.ring is not None:
            self.error(RING_DECL, "a script declares exactly one ring", s.span)
        if not is_prime(s.p):
            self.error(NOT_PRIME, f"{s.p} is not prime", s.p_span)
        if len(set(s.variables)) != len(s.variables):
            self.error(BAD_VALUE, "repeated variable name", s.span)
        try:
            ring = make_ring(s.variables, p=s.p, order=s.order or "grevlex")
        except (AlgebraError, ValueError) as exc:
            self.error(BAD_VALUE, str(exc), s.span)
        self.prog.ring = ring
        self.prog.ring_name = s.name
        if s.quotient is not None:
            gens = [self.homogeneous(g) for g in s.quotient.generators]
            self.prog.ring = quotient_ring(ring, gens)
        self.prog.names[s.name] = ("ring", self.prog.ring)

    def module_decl(self, s: ModuleDecl) -> FPModule:
        if s.kind == "coker":
            return self.coker(s)
        self.lookup(s.ring, "ring")
        if s.kind == "free":
            return FPModule.free(self.prog.ring)
        return cyclic_module(self.ideal_ref(s.ideal))

    def coker(self, s: ModuleDecl) -> FPModule:
        rows = [[self.homogeneous(e) for e in r] for r in s.rows]
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            self.error(BAD_VALUE, "matrix rows have different lengths", s.span)
        degrees = self._solve_degrees(rows, s.span)
        return FPModule.from_matrix(self.prog.ring, rows, degrees)

    def _solve_degrees(self, rows, span: Span) -> list[int]:
        # d_i + deg f_ij must be constant down every column
        n = len(rows)
        deg: list = [None] * n
        cols = [[(i, rows[i][j]) for i in range(n) if not rows[i][j].is_zero()] for j in range(len(rows[0]))]
        while True:
            changed = False
            for col in cols:
                known = [(i, f) for i, f in col if deg[i] is not None]
                if not known:
                    continue
                i0, f0 = known[0]
                target = deg[i0] + f0.total_degree()
                for i, f in col:
                    want = target - f.total_degree()
                    if deg[i] is None:
                        deg[i] = want
                        changed = True
                    elif deg[i] != want:
                        self.error(INHOMOGENEOUS, "the matrix admits no grading making every column homogeneous", span)
            if changed:
                continue
            if None not in deg:
                break
            deg[deg.index(None)] = 0  # seed the next connected block
        low = min(deg) if deg else 0
        return [d - low for d in deg]

    def class_decl(self, s: ClassDecl) -> SerreClassSpec:
        if s.variant == "zero":
            return ZeroOnly()
        if s.variant == "dim_le":
            return DimLE(s.j)
        b = self.ideal_lit(s.ideal)
        if b.is_zero() or b.is_unit():
            self.error(BAD_VALUE, "supp_in needs a proper nonzero ideal", s.ideal.span)
        return SuppInV(b)

    def query(self, q: Query) -> BoundQuery:
        bq = BoundQuery(q)
        bq.module = self.lookup(q.module, "module")
        bq.module_name = q.module.name
        if q.klass is not None:
            bq.klass = self.lookup(q.klass, "class")
            bq.class_name = q.klass.name
        if q.a is not None:
            bq.a = self.ideal_ref(q.a)
        if q.b is not None:
            bq.b = self.ideal_ref(q.b)
            if bq.b.is_zero() or bq.b.is_unit():
                self.error(BAD_VALUE, "b must be a proper nonzero ideal", getattr(q.b, "span", q.span))
        if q.elements is not None:
            bq.elements = [self.homogeneous(e) for e in q.elements]
        return bq


def bind(script: Script) -> tuple[Program, list[Diagnostic]]:
    b = Binder()
    prog = b.bind(script)
    return prog, b.diags
