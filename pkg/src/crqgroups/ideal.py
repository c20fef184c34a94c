"""Principal absolute ideals and their membership problems.

The least subgroup containing a group element g that is an ideal in every
ring on the group has the shape <g> + L, where L is a direct sum of scaled
regulator components: per type, the scale is the gcd of the coprime parts
of g's data at that type (the framing numerator r = m * e0-coordinate and
the free coordinates).  An ideal is therefore stored as the pair
(g, per-type scales), which makes membership decidable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import (
    ResidueConstraint,
    coprime_part,
    crt,
    format_rational,
    gcd_with_certificate,
    in_localization,
    is_unit,
    mod_inverse,
)
from .element import AmbientElement, check_keys, member_G
from .group import GroupSpec


def scale_of_data(p_inf: frozenset[int], data: Iterable[Fraction]) -> int:
    """gcd of the coprime parts of the data values; 0 when all vanish.

    This is the per-type scale of a principal absolute ideal.  It only
    depends on the values up to unit factors of the coefficient ring, which
    is what makes it independent of unit rescalings of the basis.
    """
    g = 0
    for value in data:
        g = math.gcd(g, coprime_part(p_inf, value))
    return g


def ell_tau(spec: GroupSpec, g: AmbientElement) -> dict[str, int]:
    """Per-type ideal scales of a group member.

    For a framed type the framing datum is r = m * (e0 coordinate); free
    coordinates contribute as they stand.  Rejects non-members.
    """
    if member_G(spec, g) is None:
        raise ValueError("element is not a member of the group")
    out: dict[str, int] = {}
    for tau in spec.types:
        name = tau.name
        data: list[Fraction] = []
        if spec.is_framed(name):
            m, _ = spec.b_data[name]
            data.append(g.coord(name, 0) * m)
        for i in spec.c_index_set(name):
            data.append(g.coord(name, i))
        out[name] = scale_of_data(tau.p_inf, data)
    return out


@dataclass(frozen=True)
class PrincipalAbsoluteIdeal:
    """The pair (g, per-type scales) describing <g> + sum of scaled
    components."""

    generator: AmbientElement
    beta: ResidueConstraint
    ell: dict[str, int]


def ideal_of(spec: GroupSpec, g: AmbientElement) -> PrincipalAbsoluteIdeal:
    cert = member_G(spec, g)
    if cert is None:
        raise ValueError("element is not a member of the group")
    return PrincipalAbsoluteIdeal(g, cert.beta, ell_tau(spec, g))


def in_lattice_part(spec: GroupSpec, ell: dict[str, int], x: AmbientElement) -> bool:
    """Membership of x in the scaled-component sum L: coordinate-wise, each
    value at a type with scale l must lie in l times the coefficient ring
    (so for l = 0 the value must vanish)."""
    for (tau, _), v in x.coords.items():
        l = ell.get(tau, 0)
        if l == 0:
            return False
        if not in_localization(spec.get_type(tau).p_inf, v / l):
            return False
    return True


def ideal_member(
    spec: GroupSpec, ideal: PrincipalAbsoluteIdeal, x: AmbientElement
) -> int | None:
    """Decide x in <g> + L, returning a witness k with x - k*g in L.

    Each coordinate yields a linear congruence on k: with c = x's value,
    h = g's value, and scale l at the type, the requirement
    (c - k*h) in l*R becomes C - k*H = 0 modulo l * (coprime part of the
    common denominator), after clearing denominators.  The congruences are
    merged by the non-coprime CRT.

    Searching k modulo the regulator index n is complete: every modulus m
    of the framing divides n, hence n*g lands in L coordinate-wise, so the
    solution set is invariant under shifting k by n.  The returned witness
    is reduced accordingly into [0, n).
    """
    check_keys(spec, x)
    g = ideal.generator
    n = spec.regulator_index()
    constraints: list[ResidueConstraint] = []
    for tau in spec.types:
        name = tau.name
        p_inf = tau.p_inf
        l = ideal.ell.get(name, 0)
        for i in spec.indices(name):
            c = x.coord(name, i)
            h = g.coord(name, i)
            if l == 0:
                # a zero scale forces zero data on g, so the condition is
                # k-independent: the coordinate of x must vanish outright
                if h != 0:
                    raise ValueError("ideal has zero scale but nonzero generator data")
                if c != 0:
                    return None
                continue
            den = math.lcm(c.denominator, h.denominator)
            c_int = c.numerator * (den // c.denominator)
            h_int = h.numerator * (den // h.denominator)
            den_coprime = den
            for p in p_inf:
                while den_coprime % p == 0:
                    den_coprime //= p
            modulus = l * den_coprime
            g0 = math.gcd(h_int, modulus)
            if c_int % g0:
                return None
            reduced = modulus // g0
            if reduced == 1:
                continue
            k0 = c_int // g0 * mod_inverse(h_int // g0, reduced) % reduced
            constraints.append(ResidueConstraint(k0, reduced))
    if not constraints:
        return 0
    combined = crt(constraints)
    if combined is None:
        return None
    return combined.residue % n


@dataclass(frozen=True)
class GcdSumCertificate:
    """Certificates for the collapse of a sum of scaled components into a
    single scale.

    For inputs b_i the scale is l = gcd of the coprime parts a_i.  The
    inclusion into l*R is certified by the unit factorizations
    b_i = a_i * unit_i; the reverse inclusion by Bezout coefficients y_i
    with sum(y_i * a_i) = l.
    """

    ell: int
    coprime_parts: tuple[int, ...]
    units: tuple[Fraction, ...]
    bezout: tuple[int, ...]


def gcd_sum_identity(
    spec: GroupSpec, tau: str, values: Sequence[Fraction | int]
) -> GcdSumCertificate:
    """Collapse sum(b_i * R) into l * R for the type's coefficient ring R,
    returning l with both inclusion certificates."""
    p_inf = spec.get_type(tau).p_inf
    bs = [Fraction(v) for v in values]
    for b in bs:
        if not in_localization(p_inf, b):
            raise ValueError(
                f"{format_rational(b)} is outside the coefficient ring of {tau!r}"
            )
    parts = [coprime_part(p_inf, b) for b in bs]
    ell, bezout = gcd_with_certificate(parts)
    units = tuple(b / a if a else Fraction(1) for b, a in zip(bs, parts))
    for unit in units:
        assert is_unit(p_inf, unit)
    assert sum(y * a for y, a in zip(bezout, parts)) == ell
    return GcdSumCertificate(ell, tuple(parts), units, tuple(bezout))


@dataclass(frozen=True)
class FiniteAbsoluteIdeal:
    """A sum of principal absolute ideals: finitely many generators plus a
    per-type scale (the gcd of the members' scales)."""

    generators: tuple[AmbientElement, ...]
    ell: dict[str, int]


MAX_SUM_GENERATORS = 3


def ideal_sum(
    spec: GroupSpec, ideals: Sequence[PrincipalAbsoluteIdeal]
) -> FiniteAbsoluteIdeal:
    """Sum of principal absolute ideals over the same spec.

    The scaled parts combine per type into the gcd of the scales; the
    generator list is kept as-is.  Capped at a small number of generators
    because membership searches the witness tuple exhaustively.
    """
    if len(ideals) > MAX_SUM_GENERATORS:
        raise ValueError(
            f"ideal sums support at most {MAX_SUM_GENERATORS} generators, "
            f"got {len(ideals)}"
        )
    ell: dict[str, int] = {t.name: 0 for t in spec.types}
    for ideal in ideals:
        for name, l in ideal.ell.items():
            ell[name] = math.gcd(ell[name], l)
    return FiniteAbsoluteIdeal(tuple(i.generator for i in ideals), ell)


def finite_ideal_member(
    spec: GroupSpec, ideal: FiniteAbsoluteIdeal, x: AmbientElement
) -> tuple[int, ...] | None:
    """Joint witness search: coefficients (k_1, ..., k_r), one per
    generator and each in [0, n), with x - sum(k_j * g_j) in L."""
    n = spec.regulator_index()
    r = len(ideal.generators)
    if n**r > 2_000_000:
        raise ValueError(f"witness search space {n}^{r} is too large")
    for ks in itertools.product(range(n), repeat=r):
        z = x
        for k, g in zip(ks, ideal.generators):
            z = z - g.scale(k)
        if in_lattice_part(spec, ideal.ell, z):
            return ks
    return None
