"""Syntax tree, recursive-descent parser and canonical printer.

    script    := stmt*
    stmt      := ring | ideal | module | class | query
    ring      := 'ring' NAME '=' 'GF' '(' INT ')' '[' NAME {',' NAME} ']' ['/' ideal_lit] [order] ';'
    order     := 'grevlex' | 'lex'
    ideal     := 'ideal' NAME '=' ideal_ref ';'
    module    := 'module' NAME '=' NAME ['/' ideal_ref] ';'
               | 'module' NAME '=' 'coker' '[' row {',' row} ']' ';'
    row       := '[' expr {',' expr} ']'
    class     := 'class' NAME '=' ('zero' | 'dim_le' '(' INT ')' | 'supp_in' ideal_lit) ';'
    query     := 'grade' 'a' '=' ideal_ref NAME NAME ['route' '=' NAME] ';'
               | ('fdepth' | 'gdepth') 'a' '=' ideal_ref NAME ';'
               | 'tjdepth' 'a' '=' ideal_ref NAME 'j' '=' INT ';'
               | 'tbgrade' 'a' '=' ideal_ref NAME 'b' '=' ideal_ref ';'
               | 'checkseq' '[' expr {',' expr} ']' NAME NAME ';'
               | ('cm' | 'oracle') NAME NAME ';'
    ideal_ref := NAME | ideal_lit
    ideal_lit := '(' [expr {',' expr}] ')'
    expr      := term {('+' | '-') term}
    term      := unary {'*' unary}
    unary     := '-' unary | power
    power     := atom ['^' INT]
    atom      := INT | NAME | '(' expr ')'
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexer import SYNTAX_ERROR, Diagnostic, ScriptError, Span, Token, tokenize

QUERY_KINDS = ("grade", "fdepth", "gdepth", "tjdepth", "tbgrade", "checkseq", "cm", "oracle")
ORDERS = ("grevlex", "lex")
ROUTES = ("koszul", "ext", "sequence")


def _span():
    return field(default=None, compare=False, repr=False)


# -- expressions -------------------------------------------------------------


@dataclass
class Num:
    value: int
    span: Span | None = _span()


@dataclass
class Var:
    name: str
    span: Span | None = _span()


@dataclass
class Neg:
    operand: object
    span: Span | None = _span()


@dataclass
class BinOp:
    op: str
    left: object
    right: object
    span: Span | None = _span()


@dataclass
class Pow:
    base: object
    exponent: int
    span: Span | None = _span()


@dataclass
class NameRef:
    name: str
    span: Span | None = _span()


@dataclass
class IdealLit:
    generators: list
    span: Span | None = _span()


# -- statements --------------------------------------------------------------


@dataclass
class RingDecl:
    name: str
    p: int
    variables: list
    quotient: IdealLit | None
    order: str | None
    span: Span | None = _span()
    p_span: Span | None = _span()


@dataclass
class IdealDecl:
    name: str
    ideal: object
    span: Span | None = _span()


@dataclass
class ModuleDecl:
    name: str
    kind: str  # quotient | free | coker
    ring: NameRef | None = None
    ideal: object = None
    rows: list | None = None
    span: Span | None = _span()


@dataclass
class ClassDecl:
    name: str
    variant: str
    j: int | None = None
    ideal: IdealLit | None = None
    span: Span | None = _span()


@dataclass
class Query:
    kind: str
    module: NameRef
    klass: NameRef | None = None
    a: object = None
    b: object = None
    j: int | None = None
    elements: list | None = None
    route: str | None = None
    span: Span | None = _span()


@dataclass
class Script:
    statements: list

    @property
    def queries(self) -> list:
        return [s for s in self.statements if isinstance(s, Query)]


# -- parser ------------------------------------------------------------------


class Parser:
    def __init__(self, source: str):
        self.toks = tokenize(source)
        self.pos = 0

    # helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def _error(self, expected: str):
        t = self.tok
        span = t.span
        if t.kind == "EOF" and self.pos > 0:
            # anchor on the last real token so the position is on screen
            span = self.toks[self.pos - 1].span
        raise ScriptError(Diagnostic(SYNTAX_ERROR, f"expected {expected}, found {t.describe()}", span))

    def _at(self, text: str) -> bool:
        return self.tok.kind in ("OP", "NAME") and self.tok.text == text

    def _eat(self, text: str) -> Token:
        if not self._at(text):
            self._error(f"'{text}'")
        t = self.tok
        self.pos += 1
        return t

    def _name(self, what: str = "a name") -> Token:
        if self.tok.kind != "NAME":
            self._error(what)
        t = self.tok
        self.pos += 1
        return t

    def _int(self) -> Token:
        if self.tok.kind != "INT":
            self._error("an integer")
        t = self.tok
        self.pos += 1
        return t

    @staticmethod
    def _join(a: Span, b: Span) -> Span:
        return Span(a.line, a.col, b.end_line, b.end_col)

    def _last(self) -> Span:
        return self.toks[self.pos - 1].span

    # grammar

    def parse_script(self) -> Script:
        stmts = []
        while self.tok.kind != "EOF":
            stmts.append(self.parse_statement())
        return Script(stmts)

    def parse_statement(self):
        t = self.tok
        if t.kind != "NAME":
            self._error("a declaration or a query")
        word = t.text
        if word == "ring":
            return self.parse_ring()
        if word == "ideal":
            return self.parse_ideal_decl()
        if word == "module":
            return self.parse_module()
        if word == "class":
            return self.parse_class()
        if word in QUERY_KINDS:
            return self.parse_query()
        self._error("'ring', 'ideal', 'module', 'class' or a query keyword")

    def parse_ring(self) -> RingDecl:
        start = self._eat("ring").span
        name = self._name("a ring name").text
        self._eat("=")
        self._eat("GF")
        self._eat("(")
        pt = self._int()
        self._eat(")")
        self._eat("[")
        vs = [self._name("a variable name").text]
        while self._at(","):
            self.pos += 1
            vs.append(self._name("a variable name").text)
        self._eat("]")
        quotient = None
        if self._at("/"):
            self.pos += 1
            quotient = self.parse_ideal_lit()
        order = None
        if self.tok.kind == "NAME" and self.tok.text in ORDERS:
            order = self.tok.text
            self.pos += 1
        elif not self._at(";"):
            self._error("a monomial order ('grevlex' or 'lex') or ';'")
        self._eat(";")
        return RingDecl(name, int(pt.text), vs, quotient, order, self._join(start, self._last()), pt.span)

    def parse_ideal_ref(self):
        if self.tok.kind == "NAME":
            t = self._name()
            return NameRef(t.text, t.span)
        if self._at("("):
            return self.parse_ideal_lit()
        self._error("an ideal name or '('")

    def parse_ideal_lit(self) -> IdealLit:
        start = self._eat("(").span
        gens = []
        if not self._at(")"):
            gens.append(self.parse_expr())
            while self._at(","):
                self.pos += 1
                gens.append(self.parse_expr())
        if not self._at(")"):
            self._error("',' or ')'")
        end = self._eat(")").span
        return IdealLit(gens, self._join(start, end))

    def parse_ideal_decl(self) -> IdealDecl:
        start = self._eat("ideal").span
        name = self._name("an ideal name").text
        self._eat("=")
        ideal = self.parse_ideal_ref()
        self._eat(";")
        return IdealDecl(name, ideal, self._join(start, self._last()))

    def parse_module(self) -> ModuleDecl:
        start = self._eat("module").span
        name = self._name("a module name").text
        self._eat("=")
        if self._at("coker"):
            self.pos += 1
            self._eat("[")
            rows = [self.parse_row()]
            while self._at(","):
                self.pos += 1
                rows.append(self.parse_row())
            self._eat("]")
            self._eat(";")
            return ModuleDecl(name, "coker", rows=rows, span=self._join(start, self._last()))
        rt = self._name("a ring name or 'coker'")
        ring = NameRef(rt.text, rt.span)
        if self._at("/"):
            self.pos += 1
            ideal = self.parse_ideal_ref()
            self._eat(";")
            return ModuleDecl(name, "quotient", ring, ideal, span=self._join(start, self._last()))
        self._eat(";")
        return ModuleDecl(name, "free", ring, span=self._join(start, self._last()))

    def parse_row(self) -> list:
        self._eat("[")
        row = [self.parse_expr()]
        while self._at(","):
            self.pos += 1
            row.append(self.parse_expr())
        self._eat("]")
        return row

    def parse_class(self) -> ClassDecl:
        start = self._eat("class").span
        name = self._name("a class name").text
        self._eat("=")
        t = self._name("'zero', 'dim_le' or 'supp_in'")
        if t.text == "zero":
            decl = ClassDecl(name, "zero")
        elif t.text == "dim_le":
            self._eat("(")
            j = int(self._int().text)
            self._eat(")")
            decl = ClassDecl(name, "dim_le", j=j)
        elif t.text == "supp_in":
            decl = ClassDecl(name, "supp_in", ideal=self.parse_ideal_lit())
        else:
            self.pos -= 1
            self._error("'zero', 'dim_le' or 'supp_in'")
        self._eat(";")
        decl.span = self._join(start, self._last())
        return decl

    def _ref(self, what: str) -> NameRef:
        t = self._name(what)
        return NameRef(t.text, t.span)

    def parse_query(self) -> Query:
        kt = self._name()
        kind = kt.text
        q = Query(kind, None)
        if kind in ("grade", "fdepth", "gdepth", "tjdepth", "tbgrade"):
            self._eat("a")
            self._eat("=")
            q.a = self.parse_ideal_ref()
            q.module = self._ref("a module name")
            if kind == "grade":
                q.klass = self._ref("a class name")
                if self._at("route"):
                    self.pos += 1
                    self._eat("=")
                    rt = self._name("a route name")
                    if rt.text not in ROUTES:
                        self.pos -= 1
                        self._error("'koszul', 'ext' or 'sequence'")
                    q.route = rt.text
            elif kind == "tjdepth":
                self._eat("j")
                self._eat("=")
                q.j = int(self._int().text)
            elif kind == "tbgrade":
                self._eat("b")
                self._eat("=")
                q.b = self.parse_ideal_ref()
        elif kind == "checkseq":
            self._eat("[")
            elems = []
            if not self._at("]"):
                elems.append(self.parse_expr())
                while self._at(","):
                    self.pos += 1
                    elems.append(self.parse_expr())
            self._eat("]")
            q.elements = elems
            q.module = self._ref("a module name")
            q.klass = self._ref("a class name")
        else:
            q.module = self._ref("a module name")
            q.klass = self._ref("a class name")
        self._eat(";")
        q.span = self._join(kt.span, self._last())
        return q

    # expressions

    def parse_expr(self):
        left = self.parse_term()
        while self._at("+") or self._at("-"):
            op = self.tok.text
            self.pos += 1
            right = self.parse_term()
            left = BinOp(op, left, right, self._join(left.span, right.span))
        return left

    def parse_term(self):
        left = self.parse_unary()
        while self._at("*"):
            self.pos += 1
            right = self.parse_unary()
            left = BinOp("*", left, right, self._join(left.span, right.span))
        return left

    def parse_unary(self):
        if self._at("-"):
            start = self.tok.span
            self.pos += 1
            inner = self.parse_unary()
            return Neg(inner, self._join(start, inner.span))
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self._at("^"):
            self.pos += 1
            e = self._int()
            return Pow(base, int(e.text), self._join(base.span, e.span))
        return base

    def parse_atom(self):
        t = self.tok
        if t.kind == "INT":
            self.pos += 1
            return Num(int(t.text), t.span)
        if t.kind == "NAME":
            self.pos += 1
            return Var(t.text, t.span)
        if self._at("("):
            self.pos += 1
            inner = self.parse_expr()
            end = self._eat(")").span
            if isinstance(inner, (BinOp, Neg)):
                inner = _respan(inner, self._join(t.span, end))
            return inner
        self._error("a number, a variable or '('")


def _respan(node, span):
    node.span = span
    return node


def parse(source: str) -> Script:
    return Parser(source).parse_script()


# -- printer -----------------------------------------------------------------


_PREC = {"+": 1, "-": 1, "*": 2}


def print_expr(e) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Pow):
        base = print_expr(e.base)
        if not isinstance(e.base, (Num, Var)):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, Neg):
        inner = print_expr(e.operand)
        if isinstance(e.operand, BinOp):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, BinOp):
        prec = _PREC[e.op]
        left = print_expr(e.left)
        if isinstance(e.left, BinOp) and _PREC[e.left.op] < prec:
            left = f"({left})"
        right = print_expr(e.right)
        if isinstance(e.right, BinOp) and _PREC[e.right.op] <= prec:
            right = f"({right})"
        sep = "*" if e.op == "*" else f" {e.op} "
        return f"{left}{sep}{right}"
    raise TypeError(f"not an expression: {e!r}")


def print_ideal(i) -> str:
    if isinstance(i, NameRef):
        return i.name
    return "(" + ", ".join(print_expr(g) for g in i.generators) + ")"


def print_statement(s) -> str:
    if isinstance(s, RingDecl):
        out = f"ring {s.name} = GF({s.p})[{', '.join(s.variables)}]"
        if s.quotient is not None:
            out += " / " + print_ideal(s.quotient)
        if s.order:
            out += f" {s.order}"
        return out + ";"
    if isinstance(s, IdealDecl):
        return f"ideal {s.name} = {print_ideal(s.ideal)};"
    if isinstance(s, ModuleDecl):
        if s.kind == "coker":
            rows = ", ".join("[" + ", ".join(print_expr(e) for e in r) + "]" for r in s.rows)
            return f"module {s.name} = coker[{rows}];"
        if s.kind == "free":
            return f"module {s.name} = {s.ring.name};"
        return f"module {s.name} = {s.ring.name}/{print_ideal(s.ideal)};"
    if isinstance(s, ClassDecl):
        if s.variant == "zero":
            body = "zero"
        elif s.variant == "dim_le":
            body = f"dim_le({s.j})"
        else:
            body = "supp_in" + print_ideal(s.ideal)
        return f"class {s.name} = {body};"
    if isinstance(s, Query):
        return query_text(s) + ";"
    raise TypeError(f"not a statement: {s!r}")


def query_text(q: Query) -> str:
    k = q.kind
    if k == "grade":
        out = f"grade a={print_ideal(q.a)} {q.module.name} {q.klass.name}"
        if q.route:
            out += f" route={q.route}"
        return out
    if k in ("fdepth", "gdepth"):
        return f"{k} a={print_ideal(q.a)} {q.module.name}"
    if k == "tjdepth":
        return f"tjdepth a={print_ideal(q.a)} {q.module.name} j={q.j}"
    if k == "tbgrade":
        return f"tbgrade a={print_ideal(q.a)} {q.module.name} b={print_ideal(q.b)}"
    if k == "checkseq":
        return f"checkseq [{', '.join(print_expr(e) for e in q.elements)}] {q.module.name} {q.klass.name}"
    return f"{k} {q.module.name} {q.klass.name}"


def print_script(script: Script) -> str:
    return "".join(print_statement(s) + "\n" for s in script.statements)
