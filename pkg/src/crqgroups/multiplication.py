"""Candidate multiplications on the regulator and their extension to the group.

A multiplication is stored as structure constants: for each type, the
products of basis vectors are elements of that type's regulator component,
and products across distinct types vanish (forced by incomparability of
the types).  Two independent questions are answered about a candidate:

* the syntactic check: a coefficient-level condition — every basis product
  against the framing row/column must be divisible by the type's modulus,
  and the framing diagonal must reduce, across all framed types at once,
  to a single integer class alpha;

* the semantic check: does the bilinear extension actually map the group
  into itself?  Since products of regulator elements always stay in the
  regulator, this comes down to the products involving the distinguished
  element d, tested coordinate-by-coordinate with a saturation condition
  that accounts for arbitrary coefficient-ring multiples.

The syntactic check is sufficient for extendability; the two verdicts are
kept separate because the converse fails on small instances (see the
discrepancy corpus machinery in the campaign module).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .arith import (
    ResidueConstraint,
    crt,
    in_localization,
    mod_inverse,
    rational_mod,
)
from .element import AmbientElement, member_G
from .group import GroupSpec

ConstantKey = tuple[str, int, int]


class StructureConstants:
    """Sparse table (type, i, j) -> product of basis vectors i and j.

    Absent entries are zero.  Each stored element must be supported on its
    own type with all coordinates in that type's coefficient ring; use
    ``constant_problems`` to check a table built from untrusted data.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[ConstantKey, AmbientElement] | None = None):
        cleaned: dict[ConstantKey, AmbientElement] = {}
        for (tau, i, j), value in (entries or {}).items():
            if not value.is_zero():
                cleaned[(str(tau), int(i), int(j))] = value
        object.__setattr__(self, "entries", cleaned)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("StructureConstants is immutable")

    def entry(self, tau: str, i: int, j: int) -> AmbientElement:
        return self.entries.get((tau, i, j), AmbientElement.zero())

    def items(self) -> Iterator[tuple[ConstantKey, AmbientElement]]:
        return iter(sorted(self.entries.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(frozenset(self.entries.items()))

    def __repr__(self) -> str:
        return f"StructureConstants({len(self.entries)} entries)"


def constant_problems(spec: GroupSpec, u: StructureConstants) -> list[str]:
    """Structural violations of a constants table against a spec."""
    problems = []
    for (tau, i, j), value in u.items():
        if tau not in spec.type_names():
            problems.append(f"u[{tau},{i},{j}]: unknown type {tau!r}")
            continue
        idxs = spec.indices(tau)
        if i not in idxs or j not in idxs:
            problems.append(f"u[{tau},{i},{j}]: index outside the type's basis")
        p_inf = spec.get_type(tau).p_inf
        for (sigma, k), v in value.support():
            if sigma != tau:
                problems.append(
                    f"u[{tau},{i},{j}]: support leaks onto type {sigma!r}"
                )
            elif k not in idxs:
                problems.append(f"u[{tau},{i},{j}]: unknown basis index {k}")
            elif not in_localization(p_inf, v):
                problems.append(
                    f"u[{tau},{i},{j}]: coordinate {v} outside the coefficient ring"
                )
    return problems


def product(
    spec: GroupSpec, u: StructureConstants, x: AmbientElement, y: AmbientElement
) -> AmbientElement:
    """Bilinear product of two hull elements under the constants table.

    x * y = sum over types and index pairs of x[t,i] y[t,j] u[t,i,j]; the
    cross-type terms vanish identically.
    """
    acc: dict[tuple[str, int], Fraction] = {}
    for (tau, i, j), value in u.entries.items():
        c = x.coord(tau, i) * y.coord(tau, j)
        if not c:
            continue
        for key, v in value.coords.items():
            acc[key] = acc.get(key, Fraction(0)) + c * v
    return AmbientElement(acc)


@dataclass(frozen=True)
class AlphaWitness:
    """The single integer class (mod the regulator index) to which the
    framing diagonal reduces when the syntactic check succeeds."""

    alpha: ResidueConstraint


@dataclass(frozen=True)
class SyntacticFailure:
    """First violated clause of the syntactic check, naming the type."""

    tau: str | None
    clause: str


def _divided(value: AmbientElement, m: int, p_inf: frozenset[int]) -> AmbientElement | None:
    """value / m if every coordinate of the quotient stays in the ring."""
    out = value.scale(Fraction(1, m))
    for _, v in out.support():
        if not in_localization(p_inf, v):
            return None
    return out


def check_syntactic_extension(
    spec: GroupSpec, u: StructureConstants
) -> AlphaWitness | SyntacticFailure:
    """Coefficient-level sufficient condition for extendability.

    For every framed type (modulus m, unit s): all products u[i,0] and
    u[0,i] must be divisible by m within the regulator component; writing
    u[0,0] = m*v, the non-e0 coordinates of v must again be divisible by m,
    and the e0 coordinate of v must reduce in Z/m to alpha * s^-1 for an
    integer alpha shared by all framed types (merged by CRT).  Returns the
    class of alpha modulo the regulator index, or the first failure.
    """
    constraints: list[ResidueConstraint] = []
    for name in spec.framed_names():
        m, s = spec.b_data[name]
        p_inf = spec.get_type(name).p_inf
        for i in spec.indices(name):
            for key in ((name, i, 0), (name, 0, i)):
                value = u.entry(*key)
                if value.is_zero():
                    continue
                if _divided(value, m, p_inf) is None:
                    return SyntacticFailure(
                        name, f"u[{key[0]},{key[1]},{key[2]}] is not divisible by m = {m}"
                    )
        v00 = _divided(u.entry(name, 0, 0), m, p_inf)
        if v00 is None:
            return SyntacticFailure(name, f"u[{name},0,0] is not divisible by m = {m}")
        for (sigma, k), coeff in v00.support():
            if (sigma, k) == (name, 0):
                continue
            if not in_localization(p_inf, coeff / m):
                return SyntacticFailure(
                    name,
                    f"u[{name},0,0]/m has a non-e0 coordinate at index {k} "
                    f"not divisible by m = {m}",
                )
        alpha_tau = rational_mod(v00.coord(name, 0), m) * s % m
        constraints.append(ResidueConstraint(alpha_tau, m))
    if not constraints:
        return AlphaWitness(ResidueConstraint(0, 1))
    combined = crt(constraints)
    if combined is None:
        return SyntacticFailure(None, "framed types demand incompatible alpha classes")
    return AlphaWitness(combined)


@dataclass(frozen=True)
class ExtensionVerdict:
    """Outcome of the semantic check; `failing` names the first product of
    basis data whose coefficient-ring multiples escape the group."""

    extendable: bool
    failing: str | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.extendable


def check_semantic_extension(spec: GroupSpec, u: StructureConstants) -> ExtensionVerdict:
    """Exact decision of whether the bilinear extension maps the group into
    itself.

    Products of regulator elements always stay in the regulator, so only
    products involving the distinguished element d matter: d*d must be a
    member, and for every basis vector e the products d*e and e*d must
    remain members after multiplication by every element of the type's
    coefficient ring.  Saturation under those multiples comes down to, per
    framed type: non-e0 coordinates in the ring, m times the e0 coordinate
    in the ring, and gcd(m, lcm of the other moduli) dividing the Z/m class
    of s^-1 * m * (e0 coordinate).
    """
    d = spec.distinguished()
    if member_G(spec, product(spec, u, d, d)) is None:
        return ExtensionVerdict(False, "d*d", "product of d with itself leaves the group")
    for name in spec.framed_names():
        m, s = spec.b_data[name]
        p_inf = spec.get_type(name).p_inf
        others = math.gcd(
            m, math.lcm(*(spec.b_data[o][0] for o in spec.framed_names() if o != name))
        )
        s_inv = mod_inverse(s, m)
        for i in spec.indices(name):
            e = AmbientElement.basis(name, i)
            for label, t in ((f"d*e[{name},{i}]", product(spec, u, d, e)),
                             (f"e[{name},{i}]*d", product(spec, u, e, d))):
                for (sigma, k), coeff in t.support():
                    if (sigma, k) != (name, 0) and not in_localization(p_inf, coeff):
                        return ExtensionVerdict(
                            False, label,
                            f"coordinate {coeff} at index {k} is outside the coefficient ring",
                        )
                c0 = t.coord(name, 0) * m
                if not in_localization(p_inf, c0):
                    return ExtensionVerdict(
                        False, label,
                        f"m times the e0 coordinate, {c0}, is outside the coefficient ring",
                    )
                cls = s_inv * rational_mod(c0, m) % m
                if cls % others:
                    return ExtensionVerdict(
                        False, label,
                        f"class {cls} mod {m} is not divisible by gcd with the "
                        f"other moduli ({others}); some ring multiple escapes",
                    )
    return ExtensionVerdict(True)


def _bezout_pair(s: int, m: int, shift: int) -> tuple[int, int]:
    """A solution (s_inv, y) of s*s_inv + m*y = 1, indexed by an integer
    shift along the solution line."""
    s_inv = mod_inverse(s, m) + shift * m
    y = (1 - s * s_inv) // m
    assert s * s_inv + m * y == 1
    return s_inv, y


def mixed_witness_mult(
    spec: GroupSpec, tau: str, t: int, k: int
) -> StructureConstants:
    """Constants pairing the framing vector with a free index: e0 * e_t =
    e_t * e0 = m * e_k on the given type, all other products zero.

    Requires the type to be framed with a nonempty free part; t must be a
    free index and k any index of the type.  Passes the syntactic check
    with alpha = 0.
    """
    if not spec.is_framed(tau):
        raise ValueError(f"{tau!r} is not a framed type")
    if t not in spec.c_index_set(tau):
        raise ValueError(f"{t} is not a free index of {tau!r}")
    if k not in spec.indices(tau):
        raise ValueError(f"{k} is not an index of {tau!r}")
    m, _ = spec.b_data[tau]
    value = AmbientElement.basis(tau, k, m)
    return StructureConstants({(tau, 0, t): value, (tau, t, 0): value})


def diagonal_witness_mult(
    spec: GroupSpec,
    tau: str,
    *,
    pivot_modulus: bool = False,
    bezout_shift: Mapping[str, int] | int = 0,
) -> StructureConstants:
    """Constants supported on the framing diagonal: for every framed type
    sigma, e0 * e0 = m_sigma * (s_tau * s_sigma^-1 + m_sigma * y_sigma) * e0,
    where s_sigma * s_sigma^-1 + m_sigma * y_sigma = 1.  All other products
    are zero.

    The product of a group element g with b*e0 of the pivot type then comes
    out to (m * g's e0 coordinate) * b * e0 exactly, and the table passes
    the syntactic check with alpha = s_tau.

    ``pivot_modulus=True`` selects a deliberately miscalibrated variant that
    scales the off-pivot diagonal by the pivot's modulus instead of each
    type's own: coefficient s_tau * s_sigma^-1 * m_tau + m_sigma^2 * y_sigma.
    It fails both checks whenever some other modulus does not divide the
    pivot's, and is kept as a negative control for the checkers.

    ``bezout_shift`` moves each type's (s^-1, y) pair along its solution
    line, either uniformly (int) or per type (mapping).
    """
    if not spec.is_framed(tau):
        raise ValueError(f"{tau!r} is not a framed type")
    _, s_tau = spec.b_data[tau]
    entries: dict[ConstantKey, AmbientElement] = {}
    for sigma in spec.framed_names():
        m_sig, s_sig = spec.b_data[sigma]
        if isinstance(bezout_shift, int):
            shift = bezout_shift
        else:
            shift = bezout_shift.get(sigma, 0)
        s_inv, y = _bezout_pair(s_sig, m_sig, shift)
        if pivot_modulus:
            m_tau, _ = spec.b_data[tau]
            coeff = s_tau * s_inv * m_tau + m_sig * m_sig * y
        else:
            coeff = m_sig * (s_tau * s_inv + m_sig * y)
        entries[(sigma, 0, 0)] = AmbientElement.basis(sigma, 0, coeff)
    return StructureConstants(entries)


def free_witness_mult(spec: GroupSpec, tau: str, i: int, k: int) -> StructureConstants:
    """Constants with a single free diagonal product: e_i * e_i = e_k on the
    given type, everything else zero.  The framing row and column stay
    empty, so the syntactic check passes with alpha = 0."""
    if i not in spec.c_index_set(tau):
        raise ValueError(f"{i} is not a free index of {tau!r}")
    if k not in spec.indices(tau):
        raise ValueError(f"{k} is not an index of {tau!r}")
    return StructureConstants({(tau, i, i): AmbientElement.basis(tau, k)})
