"""Group presentations and their structural validation.

A group is given by its critical types (each an idempotent type, i.e. a
finite set of inverted primes), framing data (m, s) for the types carrying
the cyclic quotient, and index sets for the completely decomposable part.
``validate`` checks every structural condition and derives the regulator
index n = lcm of the m's and the distinguished element d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .arith import in_localization, is_prime
from .element import AmbientElement, distinguished_element


@dataclass(frozen=True)
class IdempotentType:
    """A critical type, named and described by the finite set of primes
    inverted in its coefficient ring R = Z[1/p : p in p_inf].

    Finiteness of p_inf keeps R a proper subring of Q, so the groups built
    from these types are reduced.
    """

    name: str
    p_inf: frozenset[int]

    @classmethod
    def build(cls, name: str, p_inf: Iterable[int]) -> IdempotentType:
        return cls(str(name), frozenset(int(p) for p in p_inf))


@dataclass(frozen=True, eq=True)
class GroupSpec:
    """A group in principal-decomposition form.

    types      -- the critical types, pairwise incomparable as prime sets
    b_data     -- name -> (m, s) for the framed types (m > 1, gcd(s, m) = 1,
                  both coprime to the type's inverted primes)
    c_indices  -- name -> positive basis indices of the free part
    """

    types: tuple[IdempotentType, ...]
    b_data: dict[str, tuple[int, int]] = field(default_factory=dict)
    c_indices: dict[str, frozenset[int]] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        types: Iterable[tuple[str, Iterable[int]]],
        b: Mapping[str, tuple[int, int]] | None = None,
        c: Mapping[str, Iterable[int]] | None = None,
    ) -> GroupSpec:
        """Normalizing constructor from plain containers."""
        return cls(
            types=tuple(IdempotentType.build(n, ps) for n, ps in types),
            b_data={str(k): (int(m), int(s)) for k, (m, s) in (b or {}).items()},
            c_indices={
                str(k): frozenset(int(i) for i in v)
                for k, v in (c or {}).items()
                if v
            },
        )

    def type_names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.types)

    def get_type(self, name: str) -> IdempotentType:
        for t in self.types:
            if t.name == name:
                return t
        raise KeyError(f"unknown type {name!r}")

    def is_framed(self, name: str) -> bool:
        """True iff the type carries part of the cyclic quotient (m > 1)."""
        return name in self.b_data

    def framed_names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.types if t.name in self.b_data)

    def free_names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.types if self.c_index_set(t.name))

    def c_index_set(self, name: str) -> tuple[int, ...]:
        return tuple(sorted(self.c_indices.get(name, ())))

    def indices(self, name: str) -> tuple[int, ...]:
        base = (0,) if self.is_framed(name) else ()
        return base + self.c_index_set(name)

    def regulator_index(self) -> int:
        n = 1
        for m, _ in self.b_data.values():
            n = math.lcm(n, m)
        return n

    def distinguished(self) -> AmbientElement:
        return distinguished_element(self)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple[str, ...]
    n: int | None = None
    d: AmbientElement | None = None


def validate(spec: GroupSpec) -> ValidationReport:
    """Check every structural invariant of a presentation.

    Each violated condition yields its own entry naming the offending
    types.  On success the report carries the regulator index and the
    distinguished element.  Validation is pure: calling it twice on the
    same spec gives identical reports.
    """
    problems: list[str] = []
    names = [t.name for t in spec.types]
    if len(set(names)) != len(names):
        problems.append("duplicate type names")
    for t in spec.types:
        if not t.name:
            problems.append("empty type name")
        for p in t.p_inf:
            if not is_prime(p):
                problems.append(f"{t.name}: p_inf entry {p} is not prime")
    for i, a in enumerate(spec.types):
        for b in spec.types[i + 1 :]:
            if a.p_inf <= b.p_inf or b.p_inf <= a.p_inf:
                problems.append(
                    f"comparable types: {a.name} and {b.name} "
                    f"({sorted(a.p_inf)} vs {sorted(b.p_inf)})"
                )
    known = set(names)
    for name, (m, s) in sorted(spec.b_data.items()):
        if name not in known:
            problems.append(f"framing data for unknown type {name!r}")
            continue
        p_inf = spec.get_type(name).p_inf
        if m <= 1:
            problems.append(f"{name}: m must exceed 1, got {m}")
        if s == 0 or any(s % p == 0 for p in p_inf):
            problems.append(f"{name}: s = {s} has a prime factor among the inverted primes")
        if m > 1 and any(m % p == 0 for p in p_inf):
            problems.append(f"{name}: m = {m} has a prime factor among the inverted primes")
        if math.gcd(s, m) != 1:
            problems.append(f"{name}: gcd(s, m) = {math.gcd(s, m)} != 1")
    for name, idxs in sorted(spec.c_indices.items()):
        if name not in known:
            problems.append(f"free indices for unknown type {name!r}")
            continue
        for i in idxs:
            if i < 1:
                problems.append(f"{name}: free index {i} must be positive")
    for t in spec.types:
        if not spec.is_framed(t.name) and not spec.c_index_set(t.name):
            problems.append(f"{t.name}: dead type (no framing and no free indices)")
    if problems:
        return ValidationReport(False, tuple(problems))
    return ValidationReport(
        True, (), n=spec.regulator_index(), d=spec.distinguished()
    )


def in_r_tau(tau: IdempotentType, a: Fraction | int) -> bool:
    """Membership of a rational in the type's coefficient ring."""
    return in_localization(tau.p_inf, Fraction(a))
