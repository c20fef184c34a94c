"""Exact integer and rational helpers.

Everything downstream reduces to arithmetic in subrings of Q of the form
Z[1/p : p in S] for a finite prime set S: membership of a fraction in such
a ring, splitting off the part of an integer coprime to S, modular
inverses, and a Chinese-remainder solver that tolerates non-coprime
moduli.  Rationals are plain ``fractions.Fraction`` values (lowest terms,
denominator >= 1); on the wire they travel as ``"p/q"`` or ``"p"`` strings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction.  Raises ValueError on junk."""
    return Fraction(text.strip())


def format_rational(a: Fraction | int) -> str:
    a = Fraction(a)
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"


@dataclass(frozen=True)
class ResidueConstraint:
    """The congruence class `residue` modulo `modulus` (0 <= residue < modulus)."""

    residue: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(
                f"residue {self.residue} out of range for modulus {self.modulus}"
            )

    def satisfied_by(self, value: int) -> bool:
        return value % self.modulus == self.residue


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with g = gcd(a, b) >= 0 and ax + by = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def mod_inverse(s: int, m: int) -> int:
    """Inverse of s modulo m, in [0, m).  Raises ValueError unless gcd(s, m) = 1."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    g, x, _ = xgcd(s % m, m)
    if g != 1:
        raise ValueError(f"{s} is not invertible modulo {m} (gcd = {g})")
    return x % m


def crt(constraints: Iterable[ResidueConstraint]) -> ResidueConstraint | None:
    """Solve a simultaneous system of congruences with arbitrary moduli.

    Returns the unique class modulo lcm of all moduli, or None when the
    system has no solution.  Constraints are merged pairwise: (r1 mod m1)
    and (r2 mod m2) are compatible iff r1 = r2 (mod gcd(m1, m2)), and then
    lift to a single class modulo lcm(m1, m2).
    """
    items = list(constraints)
    if not items:
        raise ValueError("crt requires at least one constraint")
    r1, m1 = items[0].residue, items[0].modulus
    for c in items[1:]:
        r2, m2 = c.residue, c.modulus
        g, x, _ = xgcd(m1, m2)
        if (r2 - r1) % g:
            return None
        lcm = m1 // g * m2
        # r = r1 + m1 * t with t = (r2 - r1)/g * (m1/g)^-1 (mod m2/g)
        t = ((r2 - r1) // g * x) % (m2 // g)
        r1 = (r1 + m1 * t) % lcm
        m1 = lcm
    return ResidueConstraint(r1, m1)


def is_p_number(primes: Iterable[int], n: int) -> bool:
    """True iff n is nonzero and every prime factor of |n| lies in `primes`.

    +1 and -1 qualify for every prime set, including the empty one.
    """
    if n == 0:
        return False
    m = abs(n)
    for p in primes:
        while m % p == 0:
            m //= p
    return m == 1


def in_localization(p_inf: Iterable[int], a: Fraction) -> bool:
    """True iff a lies in Z[1/p : p in p_inf], i.e. its denominator only
    involves primes from p_inf."""
    return is_p_number(p_inf, a.denominator)


def coprime_part(p_inf: Iterable[int], a: Fraction | int) -> int:
    """The positive factor of a's numerator supported outside p_inf.

    Any nonzero a in Z[1/p : p in p_inf] factors uniquely as a = c * u with
    c a positive integer having no prime factor in p_inf and u a unit of
    the ring (a signed p_inf-fraction); this returns c, with the convention
    that a = 0 maps to 0.  Raises ValueError when a is not in the ring.
    """
    a = Fraction(a)
    if not in_localization(p_inf, a):
        raise ValueError(
            f"{format_rational(a)} is outside Z[1/p : p in {sorted(set(p_inf))}]"
        )
    if a == 0:
        return 0
    c = abs(a.numerator)
    for p in p_inf:
        while c % p == 0:
            c //= p
    return c


def is_unit(p_inf: Iterable[int], a: Fraction | int) -> bool:
    """True iff a is invertible in Z[1/p : p in p_inf]: numerator and
    denominator are both p_inf-numbers."""
    a = Fraction(a)
    return is_p_number(p_inf, a.numerator) and is_p_number(p_inf, a.denominator)


def rational_mod(a: Fraction | int, m: int) -> int:
    """Image of a under Z[1/q : q | denominator] -> Z/m, i.e. numerator
    times the inverse of the denominator.  Requires gcd(denominator, m) = 1."""
    a = Fraction(a)
    return a.numerator * mod_inverse(a.denominator, m) % m


def lcm_all(values: Iterable[int]) -> int:
    """lcm of a (possibly empty) collection; the empty lcm is 1."""
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def gcd_with_certificate(values: Sequence[int]) -> tuple[int, list[int]]:
    """gcd of a list of integers together with Bezout coefficients.

    Returns (g, [y_0, ..., y_k]) with sum(y_i * v_i) = g >= 0.  The empty
    list and the all-zero list both have gcd 0.
    """
    g = 0
    coeffs: list[int] = []
    for v in values:
        g2, x, y = xgcd(g, v)
        coeffs = [c * x for c in coeffs]
        coeffs.append(y)
        g = g2
    return g, coeffs


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of |n| by trial division, as (prime, exponent)
    pairs in ascending order.  n must be nonzero."""
    if n == 0:
        raise ValueError("cannot factorize 0")
    m = abs(n)
    out: list[tuple[int, int]] = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def multiplicative_order(a: int, m: int) -> int:
    """Order of a in (Z/m)^*.  Requires gcd(a, m) = 1 and m >= 1."""
    if m == 1:
        return 1
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    k, acc = 1, a % m
    while acc != 1:
        acc = acc * a % m
        k += 1
    return k
