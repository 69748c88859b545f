"""Prime fields, monomial orders, rings and sparse polynomials.

Everything here is immutable.  Polynomials are stored as a mapping from
exponent tuples to nonzero residues; the active monomial order of the ring
only matters for leading terms and for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

MAX_VARS = 16
MAX_EXPONENT = 2**31 - 1


class AlgebraError(Exception):
    """Base class for errors raised by the algebra layer."""


class DescriptorMismatch(AlgebraError):
    """Operands live in different rings."""


class NotPrimeError(AlgebraError):
    pass


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, exact for p < 3.3e24."""
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    characteristic: int = 101

    def __post_init__(self):
        p = self.characteristic
        if not (2 <= p < 2**31) or not is_prime(p):
            raise NotPrimeError(f"GF({p}): characteristic must be a prime below 2^31")

    def __call__(self, value: int) -> int:
        return value % self.characteristic

    def inv(self, a: int) -> int:
        a %= self.characteristic
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.characteristic)
        return pow(a, self.characteristic - 2, self.characteristic)

    def __str__(self):
        return f"GF({self.characteristic})"


# ---------------------------------------------------------------------------
# Monomial orders.  Every order maps an exponent tuple to a flat tuple of
# ints; a larger tuple means a larger monomial.


@lru_cache(maxsize=None)
def _grevlex_key(exp: tuple) -> tuple:
    return (sum(exp),) + tuple(-e for e in reversed(exp))


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or ``block`` (grevlex on the first ``split``
    variables, then grevlex on the rest; eliminates the first block)."""

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.split < 1:
            raise ValueError("block order needs split >= 1")

    def key(self, exp: tuple) -> tuple:
        if self.kind == "grevlex":
            return _grevlex_key(exp)
        if self.kind == "lex":
            return exp
        k = self.split
        return _grevlex_key(exp[:k]) + _grevlex_key(exp[k:])

    @property
    def is_graded(self) -> bool:
        return self.kind == "grevlex"

    def __str__(self):
        return f"block({self.split})" if self.kind == "block" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


@dataclass(frozen=True)
class ModuleOrder:
    """Order on terms ``x^a e_i`` of a free module.

    ``pot`` compares components first (lower index is larger), ``top``
    compares monomials first, with ``shifts`` added to the degree so graded
    orders stay compatible with twisted free modules.
    """

    monomial: MonomialOrder = GREVLEX
    strategy: str = "pot"
    shifts: tuple = ()

    def __post_init__(self):
        if self.strategy not in ("pot", "top"):
            raise ValueError(f"unknown module strategy {self.strategy!r}")

    def key(self, comp: int, exp: tuple) -> tuple:
        mk = self.monomial.key(exp)
        if self.strategy == "pot":
            return (-comp,) + mk
        shift = self.shifts[comp] if comp < len(self.shifts) else 0
        if self.monomial.is_graded:
            return (mk[0] + shift,) + mk[1:] + (-comp,)
        return mk + (-comp,)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingDescriptor:
    """R = GF(p)[variables] / quotient, carried over the polynomial ring."""

    field: PrimeField
    variables: tuple
    order: MonomialOrder = GREVLEX
    quotient: tuple = ()

    def __post_init__(self):
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        if not vs:
            raise ValueError("a ring needs at least one variable")
        if len(vs) > MAX_VARS:
            raise ValueError(f"at most {MAX_VARS} variables are supported")
        if any(not v for v in vs) or len(set(vs)) != len(vs):
            raise ValueError("variable names must be nonempty and distinct")
        q = tuple(self.quotient)
        object.__setattr__(self, "quotient", q)
        for f in q:
            if f.ring.variables != vs or f.ring.p != self.field.characteristic:
                raise DescriptorMismatch("quotient generators must live in the ambient ring")
            if f.is_zero():
                raise ValueError("quotient generators must be nonzero")

    @property
    def ambient(self) -> "RingDescriptor":
        if not self.quotient:
            return self
        return RingDescriptor(self.field, self.variables, self.order)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def p(self) -> int:
        return self.field.characteristic

    def gens(self) -> list["Polynomial"]:
        n = self.nvars
        return [
            Polynomial(self, {tuple(1 if j == i else 0 for j in range(n)): 1})
            for i in range(n)
        ]

    def var(self, name: str) -> "Polynomial":
        i = self.variables.index(name)
        return self.gens()[i]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def with_order(self, order: MonomialOrder) -> "RingDescriptor":
        amb = RingDescriptor(self.field, self.variables, order)
        return RingDescriptor(
            self.field, self.variables, order,
            tuple(Polynomial(amb, f.terms) for f in self.quotient),
        )

    def __str__(self):
        s = f"{self.field}[{','.join(self.variables)}]"
        if self.quotient:
            s += "/(" + ", ".join(str(f) for f in self.quotient) + ")"
        return s


def add_exp(a: tuple, b: tuple) -> tuple:
    r = tuple(x + y for x, y in zip(a, b))
    if r and max(r) > MAX_EXPONENT:
        raise OverflowError("exponent overflow")
    return r


class Polynomial:
    """Immutable sparse polynomial over a :class:`RingDescriptor`.

    Quotient rings are not reduced into: a polynomial of ``S/J`` is just its
    representative in ``S``.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingDescriptor, terms: Mapping[tuple, int] | None = None):
        n = ring.nvars
        clean = {}
        p = ring.p
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not have length {n}")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            c %= p
            if c:
                clean[e] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        object.__setattr__(obj, "ring", ring)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    # -- coercion ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.variables != self.ring.variables or other.ring.p != self.ring.p:
                raise DescriptorMismatch(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._raw(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = add_exp(e1, e2)
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self) -> list:
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_exponent(self) -> tuple:
        return max(self.terms, key=self.ring.order.key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_exponent()]

    def evaluate_partial(self, values: Mapping[int, int]) -> "Polynomial":
        """Substitute field constants for the variables indexed in ``values``."""
        p = self.ring.p
        out: dict = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for i, v in values.items():
                c = c * pow(v, e[i], p) % p
                e2[i] = 0
            t = tuple(e2)
            out[t] = (out.get(t, 0) + c) % p
        return Polynomial(self.ring, out)

    # -- identity ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.ring.variables == other.ring.variables
            and self.ring.p == other.ring.p
            and self.terms == other.terms
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring.variables, self.ring.p, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        p = self.ring.p
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            neg = c > p // 2
            mag = p - c if neg else c
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if neg else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if f.ring.variables != g.ring.variables or f.ring.p != g.ring.p:
        raise DescriptorMismatch(f"{f.ring} vs {g.ring}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def make_ring(
    variables: Iterable[str] | str,
    p: int = 101,
    order: MonomialOrder | str = GREVLEX,
) -> RingDescriptor:
    """Convenience constructor: ``make_ring("x,y,z")``."""
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",") if v.strip()]
    if isinstance(order, str):
        order = MonomialOrder(order)
    return RingDescriptor(PrimeField(p), tuple(variables), order)


def quotient_ring(ring: RingDescriptor, relations: Iterable[Polynomial]) -> RingDescriptor:
    amb = ring.ambient
    rels = tuple(Polynomial(amb, f.terms) for f in relations if not f.is_zero())
    return RingDescriptor(ring.field, ring.variables, ring.order, rels)


def multivariate_division(f: Polynomial, divisors: list[Polynomial], order: MonomialOrder | None = None):
    """Generalized division: returns ``(quotients, remainder)`` with
    ``f = sum q_i g_i + r`` and no term of ``r`` divisible by any leading term."""
    ring = f.ring
    order = order or ring.order
    key = order.key
    p = ring.p
    inv = ring.field.inv
    for g in divisors:
        if g.is_zero():
            raise ValueError("division by the zero polynomial")
        if g.ring.variables != ring.variables or g.ring.p != p:
            raise DescriptorMismatch(f"{g.ring} vs {ring}")
    lead = []
    for g in divisors:
        le = max(g.terms, key=key)
        lead.append((le, inv(g.terms[le])))
    quots = [dict() for _ in divisors]
    rem: dict = {}
    h = dict(f.terms)
    while h:
        le = max(h, key=key)
        lc = h[le]
        for i, (ge, ginv) in enumerate(lead):
            if all(a >= b for a, b in zip(le, ge)):
                shift = tuple(a - b for a, b in zip(le, ge))
                c = lc * ginv % p
                quots[i][shift] = (quots[i].get(shift, 0) + c) % p
                for e, v in divisors[i].terms.items():
                    t = add_exp(e, shift)
                    nv = (h.get(t, 0) - c * v) % p
                    if nv:
                        h[t] = nv
                    else:
                        h.pop(t, None)
                break
        else:
            rem[le] = lc
            del h[le]
    return [Polynomial(ring, q) for q in quots], Polynomial(ring, rem)
