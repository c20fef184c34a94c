"""Endomorphisms of the group in parametric form, and the check that
principal absolute ideals are fully invariant.

Because the critical types are pairwise incomparable, an endomorphism
preserves every homogeneous component.  On the framing vectors it acts as
a single integer alpha plus modulus-divisible corrections; on the free
basis vectors it acts by an arbitrary matrix over the type's coefficient
ring.  That parametric family is the test universe here: applying any of
its members to a group element must land inside the element's principal
absolute ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .arith import in_localization
from .element import AmbientElement, member_G
from .group import GroupSpec
from .ideal import ideal_member, ideal_of


@dataclass(frozen=True)
class Endomorphism:
    """Parametric endomorphism.

    alpha -- the common integer acting on every framing vector
    y     -- (type, index) -> ring element; the framing vector of a framed
             type tau maps to (alpha + m*y[tau,0]) e0 + sum of m*y[tau,i] e_i
             over the free indices
    w     -- (type, i, j) -> ring element; the free vector e_i maps to
             sum of w[tau,i,j] e_j over the type's indices

    Missing entries are zero.
    """

    alpha: int
    y: dict[tuple[str, int], Fraction] = field(default_factory=dict)
    w: dict[tuple[str, int, int], Fraction] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        alpha: int,
        y: Mapping[tuple[str, int], Fraction | int | str] | None = None,
        w: Mapping[tuple[str, int, int], Fraction | int | str] | None = None,
    ) -> Endomorphism:
        return cls(
            int(alpha),
            {k: Fraction(v) for k, v in (y or {}).items() if Fraction(v)},
            {k: Fraction(v) for k, v in (w or {}).items() if Fraction(v)},
        )


def endomorphism_problems(spec: GroupSpec, phi: Endomorphism) -> list[str]:
    """Structural violations of an endomorphism datum against a spec.

    Beyond key/ring checks this verifies the defining closure property:
    the image of the distinguished element d must be alpha*d plus a
    regulator element, i.e. a member with class alpha.
    """
    problems = []
    for (tau, i), v in sorted(phi.y.items()):
        if tau not in spec.type_names() or not spec.is_framed(tau):
            problems.append(f"y[{tau},{i}]: {tau!r} is not a framed type")
            continue
        if i not in spec.indices(tau):
            problems.append(f"y[{tau},{i}]: unknown index {i}")
        elif not in_localization(spec.get_type(tau).p_inf, v):
            problems.append(f"y[{tau},{i}]: value {v} outside the coefficient ring")
    for (tau, i, j), v in sorted(phi.w.items()):
        if tau not in spec.type_names():
            problems.append(f"w[{tau},{i},{j}]: unknown type {tau!r}")
            continue
        if i not in spec.c_index_set(tau):
            problems.append(f"w[{tau},{i},{j}]: {i} is not a free index")
        elif j not in spec.indices(tau):
            problems.append(f"w[{tau},{i},{j}]: unknown target index {j}")
        elif not in_localization(spec.get_type(tau).p_inf, v):
            problems.append(f"w[{tau},{i},{j}]: value {v} outside the coefficient ring")
    if not problems:
        d = spec.distinguished()
        image = _apply_linear(spec, phi, d)
        cert = member_G(spec, image)
        n = spec.regulator_index()
        if cert is None or cert.beta.residue != phi.alpha % n:
            problems.append(
                "image of the distinguished element is not alpha*d plus a "
                "regulator element"
            )
    return problems


def basis_image(spec: GroupSpec, phi: Endomorphism, tau: str, i: int) -> AmbientElement:
    """Image of the basis vector e_i of the given type."""
    if i == 0:
        if not spec.is_framed(tau):
            raise ValueError(f"{tau!r} has no framing vector")
        m, _ = spec.b_data[tau]
        coords = {(tau, 0): phi.alpha + m * phi.y.get((tau, 0), Fraction(0))}
        for j in spec.c_index_set(tau):
            coords[(tau, j)] = m * phi.y.get((tau, j), Fraction(0))
        return AmbientElement(coords)
    if i not in spec.c_index_set(tau):
        raise ValueError(f"{i} is not an index of {tau!r}")
    return AmbientElement(
        {(tau, j): phi.w.get((tau, i, j), Fraction(0)) for j in spec.indices(tau)}
    )


def _apply_linear(spec: GroupSpec, phi: Endomorphism, x: AmbientElement) -> AmbientElement:
    out = AmbientElement.zero()
    for (tau, i), c in x.support():
        out = out + basis_image(spec, phi, tau, i).scale(c)
    return out


def endo_apply(spec: GroupSpec, phi: Endomorphism, x: AmbientElement) -> AmbientElement:
    """Apply the endomorphism to a group member by linear extension of the
    basis images.

    The result is certified to be a member again; a failure there means the
    endomorphism datum itself was invalid for this spec and raises.
    """
    if member_G(spec, x) is None:
        raise ValueError("element is not a member of the group")
    out = _apply_linear(spec, phi, x)
    if member_G(spec, out) is None:
        raise ValueError(
            "endomorphism image leaves the group; the datum is invalid for this spec"
        )
    return out


def identity_endomorphism(spec: GroupSpec) -> Endomorphism:
    w = {}
    for tau in spec.type_names():
        for i in spec.c_index_set(tau):
            w[(tau, i, i)] = Fraction(1)
    return Endomorphism.build(1, {}, w)


def zero_endomorphism(spec: GroupSpec) -> Endomorphism:
    return Endomorphism.build(0, {}, {})


@dataclass(frozen=True)
class InvarianceVerdict:
    """Whether the image of g under an endomorphism stayed inside g's
    principal absolute ideal, with the ideal-membership witness.  A False
    verdict would contradict full invariance and is treated upstream as a
    soundness alarm worth persisting."""

    invariant: bool
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.invariant


def afi_check(spec: GroupSpec, g: AmbientElement, phi: Endomorphism) -> InvarianceVerdict:
    """Check that phi(g) lies in the principal absolute ideal of g."""
    ideal = ideal_of(spec, g)
    image = endo_apply(spec, phi, g)
    k = ideal_member(spec, ideal, image)
    return InvarianceVerdict(k is not None, k)
