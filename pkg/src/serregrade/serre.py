"""Decidable Serre classes and membership of finitely presented modules."""

from __future__ import annotations

from dataclasses import dataclass

from .fpmodule import FPModule, annihilator, module_dimension
from .groebner import Ideal, krull_dimension, radical_membership


@dataclass(frozen=True, eq=False)
class SerreClassSpec:
    """One of ``zero``, ``dim_le(j)`` or ``supp_in(b)``.

    Membership of a finitely generated module only depends on its support,
    so each test reduces to the annihilator.
    """

    variant: str
    j: int | None = None
    b: Ideal | None = None

    def __post_init__(self):
        if self.variant == "zero":
            return
        if self.variant == "dim_le":
            if self.j is None or self.j < 0:
                raise ValueError("dim_le needs j >= 0")
            return
        if self.variant == "supp_in":
            if self.b is None:
                raise ValueError("supp_in needs an ideal")
            if self.b.is_zero() or self.b.is_unit():
                raise ValueError("supp_in needs a proper nonzero ideal")
            return
        raise ValueError(f"unknown Serre class {self.variant!r}")

    def contains(self, M: FPModule) -> bool:
        return contains(self, M)

    def contains_prime(self, p: Ideal) -> bool:
        return contains_prime(self, p)

    @property
    def closed_under_sums(self) -> bool:
        return True

    def __eq__(self, other):
        if not isinstance(other, SerreClassSpec):
            return NotImplemented
        if self.variant != other.variant or self.j != other.j:
            return False
        if self.variant == "supp_in":
            return self.b == other.b
        return True

    def __hash__(self):
        return hash((self.variant, self.j))

    def __str__(self):
        if self.variant == "zero":
            return "zero"
        if self.variant == "dim_le":
            return f"dim_le({self.j})"
        return "supp_in(" + ", ".join(str(g) for g in self.b.generators) + ")"


def ZeroOnly() -> SerreClassSpec:
    return SerreClassSpec("zero")


def DimLE(j: int) -> SerreClassSpec:
    return SerreClassSpec("dim_le", j=j)


def SuppInV(b: Ideal) -> SerreClassSpec:
    return SerreClassSpec("supp_in", b=b)


def contains(S: SerreClassSpec, M: FPModule) -> bool:
    if M.is_zero():
        return True
    if S.variant == "zero":
        return False
    if S.variant == "dim_le":
        return module_dimension(M) <= S.j
    ann = annihilator(M)
    return all(radical_membership(g, ann) for g in S.b.generators)


def contains_ideal_quotient(S: SerreClassSpec, I: Ideal) -> bool:
    """``S/I ∈ S`` without building the module."""
    if I.is_unit():
        return True
    if S.variant == "zero":
        return False
    if S.variant == "dim_le":
        return krull_dimension(I) <= S.j
    return all(radical_membership(g, I) for g in S.b.generators)


def contains_prime(S: SerreClassSpec, p: Ideal) -> bool:
    """``S/p ∈ S`` for a prime ``p`` (primality is the caller's promise)."""
    if S.variant == "zero":
        return p.is_unit()
    if S.variant == "dim_le":
        return krull_dimension(p) <= S.j
    return all(p.contains(g) for g in S.b.generators)
