"""Randomized verification campaigns with brute-force comparators.

Three campaigns ship:

* ``principal_ideal`` exercises both inclusions of the principal-ideal
  description: the witness multiplications reconstruct the per-type
  generators of the scaled part from products with the generator (lower
  bound), and products under arbitrary extendable multiplications stay
  inside generator-plus-scaled-part (upper bound).

* ``afi`` applies random parametric endomorphisms to random members and
  checks the image stays in the member's principal absolute ideal.

* ``negative_control`` pins the miscalibrated diagonal variant: it must
  fail both extension checks whenever some modulus does not divide the
  pivot's, while the calibrated constants pass both.

Any failing instance is shrunk (fewer types, smaller moduli, sparser data)
before being persisted to the append-only JSON-lines discrepancy corpus.
Instances where the semantic check accepts but the syntactic check refuses
are not failures — they are recorded to the same corpus as evidence that
the syntactic condition is sufficient but not necessary.  The reverse gap
(syntactic yes, semantic no) is a soundness alarm and fails the campaign.

Reports depend only on (seed, config): no timestamps, no paths.  Each
instance draws from its own derived stream, so the work is order
independent and reports merge associatively.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .arith import coprime_part, gcd_with_certificate
from .element import AmbientElement, member_G
from .endo import Endomorphism, afi_check
from .fuzz import (
    FuzzConfig,
    canonical_gap_instance,
    derive_rng,
    example_group,
    gen_endo,
    gen_group,
    gen_member,
    gen_mult,
)
from .group import GroupSpec, validate
from .ideal import PrincipalAbsoluteIdeal, ideal_member, ideal_of, in_lattice_part
from .multiplication import (
    AlphaWitness,
    StructureConstants,
    check_semantic_extension,
    check_syntactic_extension,
    diagonal_witness_mult,
    free_witness_mult,
    mixed_witness_mult,
    product,
)
from .oracle import brute_ideal_member, brute_member
from .serialize import constants_to_json, element_to_json, endo_to_json, group_to_json

ORACLE_STRIDE = 7  # every stride-th fast-path decision is replayed brutely
MAX_PERSISTED = 50
MAX_EXAMPLES = 10


@dataclass
class Report:
    """Outcome counts for one campaign run; serializes deterministically."""

    campaign: str
    seed: int
    samples: int
    checks: int = 0
    passes: int = 0
    failures: int = 0
    discrepancies: int = 0
    skipped: int = 0
    corpus_added: int = 0
    failure_examples: list[dict] = field(default_factory=list)

    def record(self, ok: bool, example: dict | None = None) -> bool:
        self.checks += 1
        if ok:
            self.passes += 1
        else:
            self.failures += 1
            if example is not None and len(self.failure_examples) < MAX_EXAMPLES:
                self.failure_examples.append(example)
        return ok

    def to_json_dict(self) -> dict:
        return {
            "campaign": self.campaign,
            "seed": self.seed,
            "samples": self.samples,
            "checks": self.checks,
            "passes": self.passes,
            "failures": self.failures,
            "discrepancies": self.discrepancies,
            "skipped": self.skipped,
            "corpus_added": self.corpus_added,
            "failure_examples": self.failure_examples,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


class CorpusWriter:
    """Append-only JSON-lines sink for discrepancy and alarm instances."""

    def __init__(self, path: str | Path | None):
        self.path = Path(path) if path else None
        self.added = 0

    def append(self, entry: dict) -> None:
        self.added += 1
        if self.path is None or self.added > MAX_PERSISTED:
            return
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")


# -- shrinking ---------------------------------------------------------------

def _drop_type(spec: GroupSpec, name: str) -> GroupSpec | None:
    if len(spec.types) == 1:
        return None
    return GroupSpec(
        types=tuple(t for t in spec.types if t.name != name),
        b_data={k: v for k, v in spec.b_data.items() if k != name},
        c_indices={k: v for k, v in spec.c_indices.items() if k != name},
    )


def _spec_variants(spec: GroupSpec):
    """Candidate simplifications of a spec, most aggressive first."""
    for t in spec.types:
        smaller = _drop_type(spec, t.name)
        if smaller is not None:
            yield smaller
    for name, (m, s) in sorted(spec.b_data.items()):
        p_inf = spec.get_type(name).p_inf
        for m2 in range(2, m):
            if all(m2 % p for p in p_inf) and math.gcd(s, m2) == 1:
                b2 = dict(spec.b_data)
                b2[name] = (m2, s)
                yield GroupSpec(spec.types, b2, spec.c_indices)
                break
        if s != 1:
            b2 = dict(spec.b_data)
            b2[name] = (m, 1)
            yield GroupSpec(spec.types, b2, spec.c_indices)
    for name, idxs in sorted(spec.c_indices.items()):
        for i in sorted(idxs):
            if len(idxs) == 1 and name not in spec.b_data:
                continue  # would leave a dead type
            c2 = dict(spec.c_indices)
            remaining = frozenset(idxs) - {i}
            if remaining:
                c2[name] = remaining
            else:
                del c2[name]
            yield GroupSpec(spec.types, spec.b_data, c2)


def _restrict_constants(spec: GroupSpec, u: StructureConstants) -> StructureConstants:
    names = set(spec.type_names())
    entries = {}
    for (tau, i, j), value in u.items():
        if tau not in names:
            continue
        idxs = spec.indices(tau)
        if i not in idxs or j not in idxs:
            continue
        trimmed = AmbientElement(
            {k: v for k, v in value.coords.items() if k[1] in idxs}
        )
        if not trimmed.is_zero():
            entries[(tau, i, j)] = trimmed
    return StructureConstants(entries)


def _constants_variants(u: StructureConstants):
    for key, _ in u.items():
        yield StructureConstants(
            {k: v for k, v in u.entries.items() if k != key}
        )
    for key, value in u.items():
        for ckey, coeff in value.support():
            if coeff != 1 and coeff != -1:
                simpler = dict(value.coords)
                simpler[ckey] = Fraction(1 if coeff > 0 else -1)
                entries = dict(u.entries)
                entries[key] = AmbientElement(simpler)
                yield StructureConstants(entries)


def shrink_mult_instance(
    spec: GroupSpec,
    u: StructureConstants,
    interesting: Callable[[GroupSpec, StructureConstants], bool],
    max_rounds: int = 40,
) -> tuple[GroupSpec, StructureConstants]:
    """Greedy minimization keeping `interesting` true: try fewer types,
    then smaller framing data, then sparser and simpler constants."""
    for _ in range(max_rounds):
        for spec2 in _spec_variants(spec):
            if not validate(spec2).ok:
                continue
            u2 = _restrict_constants(spec2, u)
            if interesting(spec2, u2):
                spec, u = spec2, u2
                break
        else:
            for u2 in _constants_variants(u):
                if interesting(spec, u2):
                    u = u2
                    break
            else:
                return spec, u
    return spec, u


def _restrict_element(spec: GroupSpec, x: AmbientElement) -> AmbientElement:
    names = set(spec.type_names())
    return AmbientElement(
        {
            (tau, i): v
            for (tau, i), v in x.coords.items()
            if tau in names and i in spec.indices(tau)
        }
    )


def _restrict_endo(spec: GroupSpec, phi: Endomorphism) -> Endomorphism:
    names = set(spec.type_names())
    return Endomorphism.build(
        phi.alpha,
        {
            (tau, i): v
            for (tau, i), v in phi.y.items()
            if tau in names and spec.is_framed(tau) and i in spec.indices(tau)
        },
        {
            (tau, i, j): v
            for (tau, i, j), v in phi.w.items()
            if tau in names and i in spec.c_index_set(tau) and j in spec.indices(tau)
        },
    )


def shrink_afi_instance(
    spec: GroupSpec,
    g: AmbientElement,
    phi: Endomorphism,
    interesting: Callable[[GroupSpec, AmbientElement, Endomorphism], bool],
    max_rounds: int = 40,
) -> tuple[GroupSpec, AmbientElement, Endomorphism]:
    """Greedy minimization of a failing invariance triple."""
    for _ in range(max_rounds):
        moved = False
        for spec2 in _spec_variants(spec):
            if not validate(spec2).ok:
                continue
            g2, phi2 = _restrict_element(spec2, g), _restrict_endo(spec2, phi)
            if interesting(spec2, g2, phi2):
                spec, g, phi = spec2, g2, phi2
                moved = True
                break
        if moved:
            continue
        for key in sorted(g.coords):
            g2 = AmbientElement({k: v for k, v in g.coords.items() if k != key})
            if interesting(spec, g2, phi):
                g = g2
                moved = True
                break
        if moved:
            continue
        for source, rebuild in (
            (phi.y, lambda y: Endomorphism.build(phi.alpha, y, phi.w)),
            (phi.w, lambda w: Endomorphism.build(phi.alpha, phi.y, w)),
        ):
            for key in sorted(source):
                phi2 = rebuild({k: v for k, v in source.items() if k != key})
                if interesting(spec, g, phi2):
                    phi = phi2
                    moved = True
                    break
            if moved:
                break
        if not moved:
            return spec, g, phi
    return spec, g, phi


# -- campaign: principal ideal ------------------------------------------------

def _gap_entry(seed: int, spec: GroupSpec, u: StructureConstants) -> dict:
    syn = check_syntactic_extension(spec, u)
    sem = check_semantic_extension(spec, u)
    return {
        "kind": "semantic_without_syntactic",
        "seed": seed,
        "group": group_to_json(spec),
        "constants": constants_to_json(u),
        "verdicts": {
            "syntactic": isinstance(syn, AlphaWitness),
            "semantic": bool(sem),
        },
    }


def _classify_mult(
    report: Report,
    corpus: CorpusWriter,
    seed: int,
    spec: GroupSpec,
    u: StructureConstants,
) -> bool:
    """Dual verdicts for one table.  Returns the semantic verdict.  A
    syntactic accept with a semantic reject is a soundness failure; the
    reverse gap is recorded as a discrepancy."""
    syn = check_syntactic_extension(spec, u)
    sem = check_semantic_extension(spec, u)
    syn_ok = isinstance(syn, AlphaWitness)
    if syn_ok and not sem:
        entry = {
            "kind": "soundness_alarm",
            "seed": seed,
            "group": group_to_json(spec),
            "constants": constants_to_json(u),
            "verdicts": {"syntactic": True, "semantic": False},
        }
        corpus.append(entry)
        report.record(False, entry)
        return False
    report.record(True)
    if sem and not syn_ok:
        report.discrepancies += 1
        def still_gap(s2: GroupSpec, u2: StructureConstants) -> bool:
            return bool(check_semantic_extension(s2, u2)) and not isinstance(
                check_syntactic_extension(s2, u2), AlphaWitness
            )
        if report.discrepancies <= MAX_PERSISTED:
            s2, u2 = shrink_mult_instance(spec, u, still_gap)
            corpus.append(_gap_entry(seed, s2, u2))
    return bool(sem)


WitnessEntry = tuple[StructureConstants, int, int, int]
# (table, source index to multiply against, target index, datum index)
# Multiplying g by b*e_source lands on (datum * b) e_target, where the
# datum is g's framing numerator m * coord(tau, 0) when the datum index is
# 0 and the plain coordinate otherwise.


def _witness_table(
    spec: GroupSpec, tau: str, pivot_modulus_diagonal: bool = False
) -> list[WitnessEntry]:
    """The witness multiplications probing one type."""
    framed = spec.is_framed(tau)
    free = spec.c_index_set(tau)
    out: list[WitnessEntry] = []
    if framed and free:
        t = free[0]
        for k in spec.indices(tau):
            out.append((mixed_witness_mult(spec, tau, t, k), t, k, 0))
    if framed:
        diag = diagonal_witness_mult(spec, tau, pivot_modulus=pivot_modulus_diagonal)
        out.append((diag, 0, 0, 0))
    for i in free:
        for k in spec.indices(tau):
            out.append((free_witness_mult(spec, tau, i, k), i, k, i))
    return out


def _verify_witnesses(
    report: Report, spec: GroupSpec, tau: str, table: list[WitnessEntry]
) -> None:
    """Every witness table must itself be a genuine multiplication: both
    extension checks accept, with alpha = s_tau for the diagonal table and
    alpha = 0 for the others."""
    n = spec.regulator_index()
    for u, src, _, _ in table:
        syn = check_syntactic_extension(spec, u)
        expected_alpha = spec.b_data[tau][1] % n if src == 0 else 0
        ok = (
            isinstance(syn, AlphaWitness)
            and syn.alpha.residue == expected_alpha
            and bool(check_semantic_extension(spec, u))
        )
        report.record(
            ok,
            {
                "kind": "witness_extendability",
                "group": group_to_json(spec),
                "type": tau,
                "constants": constants_to_json(u),
            },
        )


def _datum(spec: GroupSpec, g: AmbientElement, tau: str, datum_index: int) -> Fraction:
    if datum_index == 0:
        return g.coord(tau, 0) * spec.b_data[tau][0]
    return g.coord(tau, datum_index)


def _lower_bound_for_type(
    report: Report,
    spec: GroupSpec,
    g: AmbientElement,
    ideal: PrincipalAbsoluteIdeal,
    tau: str,
    rng,
    table: list[WitnessEntry],
) -> None:
    """Reconstruct the type's scaled-part generator from products of g with
    scaled basis vectors under the witness multiplications."""
    free = spec.c_index_set(tau)
    p_inf = spec.get_type(tau).p_inf
    ell = ideal.ell[tau]

    # products with random scaled basis vectors match their closed forms
    # and stay inside the ideal
    for u, src, target_k, datum_index in table:
        datum = _datum(spec, g, tau, datum_index)
        b_vals = [Fraction(1), Fraction(rng.randint(-6, 6)),
                  Fraction(rng.randint(1, 6), _denominator(p_inf, rng))]
        for b in b_vals:
            got = product(spec, u, g, AmbientElement.basis(tau, src, b))
            expected = AmbientElement.basis(tau, target_k, datum * b)
            ok = got == expected
            if ok and not got.is_zero():
                ok = ideal_member(spec, ideal, got) is not None
            report.record(
                ok,
                {
                    "kind": "lower_bound_product",
                    "group": group_to_json(spec),
                    "element": element_to_json(g),
                    "type": tau,
                    "source": src,
                    "b": str(b),
                },
            )

    # Bezout combination of the products realizes the scale generator exactly
    k_common = spec.indices(tau)[-1] if free else 0
    data = [
        (u, src, _datum(spec, g, tau, datum_index))
        for u, src, target_k, datum_index in table
        if target_k == k_common and _datum(spec, g, tau, datum_index) != 0
    ]
    if not data:
        report.record(ell == 0)
        return
    parts = [coprime_part(p_inf, datum) for _, _, datum in data]
    gcd_val, coeffs = gcd_with_certificate(parts)
    combo = AmbientElement.zero()
    for (u, src, datum), part, y in zip(data, parts, coeffs):
        unit_inv = Fraction(part) / datum  # inverse of the unit factor
        b = y * unit_inv
        combo = combo + product(spec, u, g, AmbientElement.basis(tau, src, b))
    expected = AmbientElement.basis(tau, k_common, ell)
    ok = gcd_val == ell and combo == expected
    if ok:
        ok = ideal_member(spec, ideal, expected) is not None
    report.record(
        ok,
        {
            "kind": "lower_bound_generator",
            "group": group_to_json(spec),
            "element": element_to_json(g),
            "type": tau,
        },
    )


def _denominator(p_inf: frozenset[int], rng) -> int:
    den = 1
    for p in sorted(p_inf):
        den *= p ** rng.randint(0, 2)
    return den


def campaign_principal_ideal(
    cfg: FuzzConfig,
    corpus_path: str | Path | None = None,
    *,
    include_lower: bool = True,
    include_upper: bool = True,
    elements_per_spec: int = 10,
    mults_per_spec: int = 20,
    xs_per_spec: int = 20,
    pivot_modulus_diagonal: bool = False,
) -> Report:
    report = Report("principal_ideal", cfg.seed, cfg.samples)
    corpus = CorpusWriter(corpus_path)

    # the canonical gap instance anchors the discrepancy corpus
    spec0, u0 = canonical_gap_instance()
    _classify_mult(report, corpus, cfg.seed, spec0, u0)

    for idx in range(cfg.samples):
        spec = gen_group(cfg, derive_rng(cfg.seed, "pideal", idx, "spec"))
        n = spec.regulator_index()
        elements = [
            gen_member(cfg, spec, derive_rng(cfg.seed, "pideal", idx, "elem", j))
            for j in range(elements_per_spec)
        ]
        if include_lower:
            tables = {
                tau: _witness_table(spec, tau, pivot_modulus_diagonal)
                for tau in spec.type_names()
            }
            for tau in spec.type_names():
                _verify_witnesses(report, spec, tau, tables[tau])
            for j, g in enumerate(elements):
                ideal = ideal_of(spec, g)
                rng = derive_rng(cfg.seed, "pideal", idx, "lower", j)
                for tau in spec.type_names():
                    _lower_bound_for_type(report, spec, g, ideal, tau, rng, tables[tau])
        if include_upper:
            g = elements[0]
            ideal = ideal_of(spec, g)
            xs = [
                gen_member(cfg, spec, derive_rng(cfg.seed, "pideal", idx, "x", j))
                for j in range(xs_per_spec)
            ]
            accepted = 0
            attempt = 0
            while accepted < mults_per_spec and attempt < mults_per_spec * 8:
                rng = derive_rng(cfg.seed, "pideal", idx, "mult", attempt)
                conforming = None if attempt % 2 else True
                u = gen_mult(cfg, spec, rng, conforming=conforming)
                attempt += 1
                if not _classify_mult(report, corpus, cfg.seed, spec, u):
                    continue
                accepted += 1
                for jx, x in enumerate(xs):
                    p = product(spec, u, g, x)
                    k = ideal_member(spec, ideal, p)
                    ok = k is not None and 0 <= k < n
                    if ok and (jx + attempt) % ORACLE_STRIDE == 0:
                        bk = brute_ideal_member(spec, ideal, p)
                        ok = bk is not None and in_lattice_part(
                            spec, ideal.ell, p - ideal.generator.scale(k)
                        )
                    report.record(
                        ok,
                        {
                            "kind": "upper_bound_product",
                            "group": group_to_json(spec),
                            "element": element_to_json(g),
                            "x": element_to_json(x),
                            "constants": constants_to_json(u),
                        },
                    )
            report.record(
                accepted >= mults_per_spec,
                {"kind": "upper_bound_supply", "group": group_to_json(spec)},
            )
    report.corpus_added = corpus.added
    return report


# -- campaign: full invariance -------------------------------------------------

def campaign_afi(cfg: FuzzConfig, corpus_path: str | Path | None = None) -> Report:
    report = Report("afi", cfg.seed, cfg.samples)
    corpus = CorpusWriter(corpus_path)
    triples_per_spec = 10
    spec_count = max(1, math.ceil(cfg.samples / triples_per_spec))
    done = 0
    for idx in range(spec_count):
        spec = gen_group(cfg, derive_rng(cfg.seed, "afi", idx, "spec"))
        for j in range(triples_per_spec):
            if done >= cfg.samples:
                break
            done += 1
            g = gen_member(cfg, spec, derive_rng(cfg.seed, "afi", idx, "g", j))
            phi = gen_endo(cfg, spec, derive_rng(cfg.seed, "afi", idx, "phi", j))
            verdict = afi_check(spec, g, phi)
            if not verdict:
                def still_bad(s2, g2, phi2):
                    try:
                        return not afi_check(s2, g2, phi2)
                    except ValueError:
                        return False
                s2, g2, phi2 = shrink_afi_instance(spec, g, phi, still_bad)
                entry = {
                    "kind": "afi_alarm",
                    "seed": cfg.seed,
                    "group": group_to_json(s2),
                    "element": element_to_json(g2),
                    "endo": endo_to_json(phi2),
                    "verdicts": {"invariant": False},
                }
                corpus.append(entry)
                report.record(False, entry)
            else:
                report.record(True)
    report.corpus_added = corpus.added
    return report


# -- campaign: negative control ------------------------------------------------

def _has_nondividing_pair(spec: GroupSpec, tau: str) -> bool:
    """True when some other framed modulus fails to divide s_tau * m_tau,
    which is exactly when the miscalibrated diagonal cannot close: its
    off-pivot diagonal coefficient is s_tau * s_other^-1 * m_tau modulo
    m_other, and the inverse factor is a unit there."""
    m_tau, s_tau = spec.b_data[tau]
    return any(
        (s_tau * m_tau) % spec.b_data[other][0] != 0
        for other in spec.framed_names()
        if other != tau
    )


def campaign_negative_control(
    cfg: FuzzConfig, corpus_path: str | Path | None = None
) -> Report:
    report = Report("negative_control", cfg.seed, cfg.samples)
    corpus = CorpusWriter(corpus_path)

    # pinned worked example: the miscalibrated diagonal never closes
    spec = example_group()
    d = spec.distinguished()
    for shift in range(-3, 4):
        u_bad = diagonal_witness_mult(spec, "tau1", pivot_modulus=True, bezout_shift=shift)
        dd = product(spec, u_bad, d, d)
        report.record(
            member_G(spec, dd) is None and brute_member(spec, dd) is None,
            {"kind": "negative_control_example", "shift": shift},
        )
    u_good = diagonal_witness_mult(spec, "tau1")
    dd = product(spec, u_good, d, d)
    syn = check_syntactic_extension(spec, u_good)
    s_tau = spec.b_data["tau1"][1]
    report.record(
        dd == d
        and isinstance(syn, AlphaWitness)
        and syn.alpha.residue == s_tau % spec.regulator_index()
        and bool(check_semantic_extension(spec, u_good)),
        {"kind": "negative_control_example_fixed"},
    )

    for idx in range(cfg.samples):
        spec = gen_group(cfg, derive_rng(cfg.seed, "negctl", idx, "spec"))
        framed = spec.framed_names()
        candidates = [
            tau for tau in framed
            if len(framed) >= 2 and _has_nondividing_pair(spec, tau)
        ]
        if not candidates:
            report.skipped += 1
            continue
        for tau in candidates:
            u_bad = diagonal_witness_mult(spec, tau, pivot_modulus=True)
            u_fix = diagonal_witness_mult(spec, tau)
            syn_fix = check_syntactic_extension(spec, u_fix)
            ok = (
                not check_semantic_extension(spec, u_bad)
                and not isinstance(check_syntactic_extension(spec, u_bad), AlphaWitness)
                and isinstance(syn_fix, AlphaWitness)
                and bool(check_semantic_extension(spec, u_fix))
                and syn_fix.alpha.residue
                == spec.b_data[tau][1] % spec.regulator_index()
            )
            report.record(
                ok,
                {
                    "kind": "negative_control",
                    "group": group_to_json(spec),
                    "pivot": tau,
                },
            )
    report.corpus_added = corpus.added
    return report


CAMPAIGNS = {
    "principal-ideal": campaign_principal_ideal,
    "afi": campaign_afi,
    "negative-control": campaign_negative_control,
}


def run_campaign(
    name: str, cfg: FuzzConfig, corpus_path: str | Path | None = None, **kwargs
) -> Report:
    if name not in CAMPAIGNS:
        raise ValueError(f"unknown campaign {name!r}; pick from {sorted(CAMPAIGNS)}")
    return CAMPAIGNS[name](cfg, corpus_path, **kwargs)


def run_all(
    cfg: FuzzConfig,
    corpus_path: str | Path | None = None,
    pivot_modulus_diagonal: bool = False,
) -> list[Report]:
    reports = []
    for name in sorted(CAMPAIGNS):
        kwargs = (
            {"pivot_modulus_diagonal": pivot_modulus_diagonal}
            if name == "principal-ideal"
            else {}
        )
        reports.append(CAMPAIGNS[name](cfg, corpus_path, **kwargs))
    return reports
