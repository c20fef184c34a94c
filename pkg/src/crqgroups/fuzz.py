"""Deterministic random instance generation.

Everything is driven by a 64-bit seed through ``random.Random`` streams
derived with a keyed hash, so a (seed, config) pair pins the whole corpus
byte for byte.  Generated specs always validate; generated elements are
always members; generated multiplications come in a conforming mode
(reverse-engineered from a chosen alpha so the syntactic check accepts)
and a free mode (unconstrained tables).
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .arith import mod_inverse
from .element import AmbientElement
from .endo import Endomorphism
from .group import GroupSpec, validate
from .multiplication import StructureConstants

DEFAULT_SEED = 42


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = DEFAULT_SEED
    max_types: int = 3
    max_c_rank: int = 2
    max_m: int = 12
    prime_pool: tuple[int, ...] = (2, 3, 5, 7, 11)
    samples: int = 100


def derive_seed(seed: int, *parts: int | str) -> int:
    """Stable per-instance seed: keyed hash of the base seed and a tag path."""
    h = hashlib.blake2b(digest_size=8)
    h.update(str(seed).encode())
    for part in parts:
        h.update(b"/")
        h.update(str(part).encode())
    return int.from_bytes(h.digest(), "big")


def derive_rng(seed: int, *parts: int | str) -> random.Random:
    return random.Random(derive_seed(seed, *parts))


def random_ring_element(
    rng: random.Random, p_inf: Iterable[int], max_num: int = 9, max_exp: int = 2
) -> Fraction:
    """Random element of Z[1/p : p in p_inf] with small numerator and
    denominator exponents."""
    num = rng.randint(-max_num, max_num)
    den = 1
    for p in sorted(p_inf):
        den *= p ** rng.randint(0, max_exp)
    return Fraction(num, den)


def _incomparable_prime_sets(cfg: FuzzConfig, rng: random.Random, count: int) -> list[frozenset[int]]:
    pool = list(cfg.prime_pool)
    for _ in range(64):
        sets = []
        for _ in range(count):
            size = rng.choice((1, 1, 2))
            sets.append(frozenset(rng.sample(pool, size)))
        ok = True
        for i, a in enumerate(sets):
            for b in sets[i + 1 :]:
                if a <= b or b <= a:
                    ok = False
        if ok:
            return sets
    # fall back to disjoint singletons, which are always incomparable
    primes = rng.sample(pool, count)
    return [frozenset({p}) for p in primes]


def gen_group(cfg: FuzzConfig, rng: random.Random) -> GroupSpec:
    """Random valid presentation within the config's bounds."""
    count = rng.randint(1, cfg.max_types)
    prime_sets = _incomparable_prime_sets(cfg, rng, count)
    types = [(f"tau{i + 1}", sorted(ps)) for i, ps in enumerate(prime_sets)]
    b: dict[str, tuple[int, int]] = {}
    c: dict[str, list[int]] = {}
    for (name, _), ps in zip(types, prime_sets):
        framed = rng.random() < 0.75
        free = rng.random() < 0.55
        if not framed and not free:
            framed = True
        if framed:
            candidates = [
                m for m in range(2, cfg.max_m + 1)
                if all(m % p for p in ps)
            ]
            m = rng.choice(candidates)
            s_candidates = [
                s for s in range(-cfg.max_m, cfg.max_m + 1)
                if s and all(abs(s) % p for p in ps) and _coprime(s, m)
            ]
            b[name] = (m, rng.choice(s_candidates))
        if free:
            size = rng.randint(1, cfg.max_c_rank)
            c[name] = sorted(rng.sample(range(1, cfg.max_c_rank + 1), size))
    spec = GroupSpec.build(types, b, c)
    report = validate(spec)
    assert report.ok, report.problems
    return spec


def _coprime(a: int, b: int) -> bool:
    return math.gcd(a, b) == 1


def gen_member(cfg: FuzzConfig, spec: GroupSpec, rng: random.Random) -> AmbientElement:
    """Random group member: a random multiple of the distinguished element
    plus a random regulator element."""
    beta = rng.randrange(spec.regulator_index())
    x = spec.distinguished().scale(beta)
    coords: dict[tuple[str, int], Fraction] = {}
    for tau in spec.types:
        for i in spec.indices(tau.name):
            if rng.random() < 0.65:
                coords[(tau.name, i)] = random_ring_element(rng, tau.p_inf)
    return x + AmbientElement(coords)


def gen_ambient(cfg: FuzzConfig, spec: GroupSpec, rng: random.Random) -> AmbientElement:
    """Random hull element with unconstrained small denominators; membership
    is a coin toss, which is the point."""
    if rng.random() < 0.4:
        return gen_member(cfg, spec, rng)
    coords: dict[tuple[str, int], Fraction] = {}
    for tau in spec.types:
        for i in spec.indices(tau.name):
            if rng.random() < 0.7:
                coords[(tau.name, i)] = Fraction(
                    rng.randint(-9, 9), rng.randint(1, cfg.max_m)
                )
    return AmbientElement(coords)


def gen_regulator_element(
    spec: GroupSpec, tau: str, rng: random.Random, density: float = 0.6
) -> AmbientElement:
    """Random element of one type's regulator component."""
    p_inf = spec.get_type(tau).p_inf
    coords: dict[tuple[str, int], Fraction] = {}
    for i in spec.indices(tau):
        if rng.random() < density:
            coords[(tau, i)] = random_ring_element(rng, p_inf)
    return AmbientElement(coords)


def gen_mult(
    cfg: FuzzConfig,
    spec: GroupSpec,
    rng: random.Random,
    conforming: bool | None = None,
) -> StructureConstants:
    """Random structure constants.

    In conforming mode an alpha is chosen first and the framing rows,
    columns and diagonal are assembled from random witnesses so the
    syntactic check accepts with exactly that alpha.  In free mode every
    entry is an unconstrained component element.
    """
    if conforming is None:
        conforming = rng.random() < 0.5
    entries: dict[tuple[str, int, int], AmbientElement] = {}
    alpha = rng.randrange(spec.regulator_index())
    for tau in spec.types:
        name = tau.name
        idxs = spec.indices(name)
        if conforming and spec.is_framed(name):
            m, s = spec.b_data[name]
            for i in idxs:
                if rng.random() < 0.45:
                    entries[(name, i, 0)] = gen_regulator_element(spec, name, rng).scale(m)
                if i and rng.random() < 0.45:
                    entries[(name, 0, i)] = gen_regulator_element(spec, name, rng).scale(m)
            witness = AmbientElement.basis(name, 0, alpha * mod_inverse(s, m) % m)
            witness = witness + gen_regulator_element(spec, name, rng).scale(m)
            entries[(name, 0, 0)] = witness.scale(m)
            for i in idxs:
                for j in idxs:
                    if i and j and rng.random() < 0.35:
                        entries[(name, i, j)] = gen_regulator_element(spec, name, rng)
        else:
            for i in idxs:
                for j in idxs:
                    if rng.random() < 0.35:
                        entries[(name, i, j)] = gen_regulator_element(spec, name, rng)
    return StructureConstants(entries)


def gen_endo(cfg: FuzzConfig, spec: GroupSpec, rng: random.Random) -> Endomorphism:
    """Random parametric endomorphism with sparse corrections."""
    alpha = rng.randint(-4, 6)
    y: dict[tuple[str, int], Fraction] = {}
    for name in spec.framed_names():
        p_inf = spec.get_type(name).p_inf
        for i in spec.indices(name):
            if rng.random() < 0.5:
                y[(name, i)] = random_ring_element(rng, p_inf)
    w: dict[tuple[str, int, int], Fraction] = {}
    for tau in spec.types:
        for i in spec.c_index_set(tau.name):
            for j in spec.indices(tau.name):
                if rng.random() < 0.5:
                    w[(tau.name, i, j)] = random_ring_element(rng, tau.p_inf)
    return Endomorphism.build(alpha, y, w)


def example_group() -> GroupSpec:
    """The standing two-type worked example used across tests and docs:
    inverted primes {2} and {3}, framing (m, s) = (3, 1) and (2, 1), one
    free index on the first type.  Its regulator index is 6."""
    return GroupSpec.build(
        types=[("tau1", [2]), ("tau2", [3])],
        b={"tau1": (3, 1), "tau2": (2, 1)},
        c={"tau1": [1]},
    )


def canonical_gap_instance() -> tuple[GroupSpec, StructureConstants]:
    """The canonical table that extends to the whole group while failing
    the coefficient-level check: on the worked example, e0 * e1 = e0 on the
    first type and nothing else."""
    spec = example_group()
    u = StructureConstants({("tau1", 0, 1): AmbientElement.basis("tau1", 0)})
    return spec, u
