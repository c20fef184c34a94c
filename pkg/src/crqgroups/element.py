"""Elements of the divisible hull as sparse rational coordinate vectors.

A coordinate key is a pair (type name, basis index).  The hull splits as a
direct sum over the critical types, so every element is a finitely
supported map from keys to rationals; the group itself and its regulator
are carved out by denominator conditions on those coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterator, Mapping

from .arith import (
    ResidueConstraint,
    crt,
    in_localization,
    mod_inverse,
    rational_mod,
)

if TYPE_CHECKING:
    from .group import GroupSpec

Key = tuple[str, int]


class AmbientElement:
    """Immutable sparse vector over the fixed rank-one basis.

    Zero coordinates are dropped on construction, so two elements are equal
    iff their supports and coordinates match.  Values may be given as
    Fraction, int, or "p/q" strings.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Mapping[Key, Fraction | int | str] | None = None):
        cleaned: dict[Key, Fraction] = {}
        for (tau, i), value in (coords or {}).items():
            v = Fraction(value)
            if v:
                cleaned[(str(tau), int(i))] = v
        object.__setattr__(self, "coords", cleaned)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("AmbientElement is immutable")

    @classmethod
    def zero(cls) -> AmbientElement:
        return cls()

    @classmethod
    def basis(cls, tau: str, i: int, coeff: Fraction | int | str = 1) -> AmbientElement:
        return cls({(tau, i): Fraction(coeff)})

    def coord(self, tau: str, i: int) -> Fraction:
        return self.coords.get((tau, i), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coords

    def support(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(sorted(self.coords.items()))

    def support_types(self) -> set[str]:
        return {tau for tau, _ in self.coords}

    def scale(self, k: Fraction | int) -> AmbientElement:
        k = Fraction(k)
        return AmbientElement({key: k * v for key, v in self.coords.items()})

    def __add__(self, other: AmbientElement) -> AmbientElement:
        out = dict(self.coords)
        for key, v in other.coords.items():
            out[key] = out.get(key, Fraction(0)) + v
        return AmbientElement(out)

    def __sub__(self, other: AmbientElement) -> AmbientElement:
        return self + (-other)

    def __neg__(self) -> AmbientElement:
        return self.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AmbientElement):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(frozenset(self.coords.items()))

    def __repr__(self) -> str:
        if not self.coords:
            return "AmbientElement(0)"
        parts = [f"{v}*e[{tau},{i}]" for (tau, i), v in sorted(self.coords.items())]
        return "AmbientElement(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class MembershipCertificate:
    """Witness that an element x lies in the group: the class beta modulo
    the regulator index with x - beta*d in the regulator."""

    beta: ResidueConstraint


def check_keys(spec: GroupSpec, x: AmbientElement) -> None:
    """Reject coordinates outside the spec's index sets."""
    for (tau, i), _ in x.support():
        if tau not in spec.type_names():
            raise ValueError(f"unknown type {tau!r} in element")
        if i not in spec.indices(tau):
            raise ValueError(f"unknown index {i} for type {tau!r} in element")


def distinguished_element(spec: GroupSpec) -> AmbientElement:
    """The fractional generator d = sum over framed types of (s/m) e0."""
    return AmbientElement(
        {(name, 0): Fraction(s, m) for name, (m, s) in sorted(spec.b_data.items())}
    )


def project(spec: GroupSpec, tau: str, x: AmbientElement) -> AmbientElement:
    """Component of x at the type tau; zero elsewhere.  Idempotent and additive."""
    if tau not in spec.type_names():
        raise ValueError(f"unknown type {tau!r}")
    return AmbientElement(
        {key: v for key, v in x.coords.items() if key[0] == tau}
    )


def in_A(spec: GroupSpec, x: AmbientElement) -> bool:
    """Membership in the regulator: every coordinate lies in its type's
    coefficient ring Z[1/p : p in p_inf]."""
    check_keys(spec, x)
    for (tau, _), v in x.coords.items():
        if not in_localization(spec.get_type(tau).p_inf, v):
            return False
    return True


def member_G(spec: GroupSpec, x: AmbientElement) -> MembershipCertificate | None:
    """Decide membership of x in the group, returning the unique class beta
    modulo the regulator index with x - beta*d in the regulator.

    For each framed type the e0-coordinate times m must lie in the
    coefficient ring, where it reduces through R/mR = Z/m to a residue
    determining beta mod m; the per-type residues are then merged by the
    non-coprime CRT.  All remaining coordinates must lie in their
    coefficient rings outright.  Returns None when any test fails or the
    residues are incompatible.
    """
    check_keys(spec, x)
    constraints: list[ResidueConstraint] = []
    for tau in spec.types:
        name = tau.name
        if spec.is_framed(name):
            m, s = spec.b_data[name]
            r = x.coord(name, 0) * m
            if not in_localization(tau.p_inf, r):
                return None
            for i in spec.c_index_set(name):
                if not in_localization(tau.p_inf, x.coord(name, i)):
                    return None
            w = rational_mod(r, m)
            constraints.append(ResidueConstraint(mod_inverse(s, m) * w % m, m))
        else:
            for i in spec.indices(name):
                if not in_localization(tau.p_inf, x.coord(name, i)):
                    return None
    if not constraints:
        return MembershipCertificate(ResidueConstraint(0, 1))
    combined = crt(constraints)
    if combined is None:
        return None
    return MembershipCertificate(combined)
