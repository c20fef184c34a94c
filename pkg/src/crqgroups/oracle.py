"""Deliberately naive reference deciders.

Everything here re-derives an answer by exhaustive search instead of
modular arithmetic, so the fast paths can be compared against an
independent route.  Keep these dumb: their value is that they are
obviously correct at desk scale.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

import random

from .arith import (
    ResidueConstraint,
    lcm_all,
    multiplicative_order,
)
from .element import AmbientElement, check_keys, in_A
from .group import GroupSpec
from .ideal import FiniteAbsoluteIdeal, PrincipalAbsoluteIdeal, in_lattice_part
from .multiplication import StructureConstants, product


def brute_member(spec: GroupSpec, x: AmbientElement) -> int | None:
    """Smallest beta in [0, n) with x - beta*d in the regulator, by trying
    every candidate."""
    check_keys(spec, x)
    d = spec.distinguished()
    for beta in range(spec.regulator_index()):
        if in_A(spec, x - d.scale(beta)):
            return beta
    return None


def brute_ideal_member(
    spec: GroupSpec, ideal: PrincipalAbsoluteIdeal, x: AmbientElement
) -> int | None:
    """Smallest k in [0, n) with x - k*g in the scaled-component sum, by
    trying every candidate."""
    check_keys(spec, x)
    for k in range(spec.regulator_index()):
        if in_lattice_part(spec, ideal.ell, x - ideal.generator.scale(k)):
            return k
    return None


def brute_finite_ideal_member(
    spec: GroupSpec, ideal: FiniteAbsoluteIdeal, x: AmbientElement
) -> tuple[int, ...] | None:
    n = spec.regulator_index()
    for ks in itertools.product(range(n), repeat=len(ideal.generators)):
        z = x
        for k, g in zip(ks, ideal.generators):
            z = z - g.scale(k)
        if in_lattice_part(spec, ideal.ell, z):
            return ks
    return None


def brute_crt(
    constraints: Sequence[ResidueConstraint], limit: int = 100_000
) -> ResidueConstraint | None:
    """Scan 0..lcm-1 for a common solution.  Guarded against large lcm."""
    if not constraints:
        raise ValueError("brute_crt requires at least one constraint")
    lcm = lcm_all(c.modulus for c in constraints)
    if lcm > limit:
        raise ValueError(f"lcm {lcm} exceeds the brute-force limit {limit}")
    for r in range(lcm):
        if all(c.satisfied_by(r) for c in constraints):
            return ResidueConstraint(r, lcm)
    return None


def saturation_samples(
    spec: GroupSpec, tau: str, rng: random.Random, extra: int = 6
) -> list[Fraction]:
    """Coefficient-ring multipliers used to probe closure of a product
    under the whole ring: 1, inverse prime powers up to each inverted
    prime's multiplicative order modulo the type's modulus, the small
    integers below the modulus, and a few random ring elements."""
    p_inf = sorted(spec.get_type(tau).p_inf)
    m = spec.b_data[tau][0] if spec.is_framed(tau) else 1
    out = [Fraction(1)]
    for p in p_inf:
        order = multiplicative_order(p, m) if m > 1 else 1
        for k in range(1, order + 1):
            out.append(Fraction(1, p**k))
    out.extend(Fraction(c) for c in range(2, m))
    for _ in range(extra):
        num = rng.randint(-9, 9)
        den = 1
        for p in p_inf:
            den *= p ** rng.randint(0, 2)
        out.append(Fraction(num, den))
    return out


def sampled_semantic_extendable(
    spec: GroupSpec, u: StructureConstants, rng: random.Random
) -> bool:
    """Randomized stand-in for the exact extendability decision: check that
    d*d is a member and that every basis product against d stays a member
    under the sampled ring multipliers."""
    d = spec.distinguished()
    if brute_member(spec, product(spec, u, d, d)) is None:
        return False
    for tau in spec.type_names():
        multipliers = saturation_samples(spec, tau, rng)
        for i in spec.indices(tau):
            e = AmbientElement.basis(tau, i)
            for t in (product(spec, u, d, e), product(spec, u, e, d)):
                if t.is_zero():
                    continue
                for r in multipliers:
                    if brute_member(spec, t.scale(r)) is None:
                        return False
    return True


def brute_in_scaled_ring(
    p_inf: Iterable[int], ell: int, c: Fraction, max_exp: int = 12
) -> bool:
    """Search for a p_inf-denominator q with c*q an integer multiple of
    ell; equivalent to membership of c in ell times the coefficient ring
    for data whose denominators have bounded exponents."""
    if ell == 0:
        return c == 0
    primes = sorted(set(p_inf))
    for exps in itertools.product(range(max_exp + 1), repeat=len(primes)):
        q = 1
        for p, e in zip(primes, exps):
            q *= p**e
        scaled = c * q / ell
        if scaled.denominator == 1:
            return True
    return False
