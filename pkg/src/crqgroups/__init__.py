"""Exact computations with reduced block-rigid groups of ring type whose
regulator quotient is cyclic: membership with certificates, candidate
multiplications and their extension checks, principal absolute ideals with
decidable membership, parametric endomorphisms, and randomized
verification campaigns backed by brute-force oracles."""

from .arith import Rational, ResidueConstraint, crt, mod_inverse
from .element import AmbientElement, MembershipCertificate, in_A, member_G, project
from .endo import Endomorphism, afi_check, endo_apply
from .fuzz import DEFAULT_SEED, FuzzConfig, example_group
from .group import GroupSpec, IdempotentType, ValidationReport, validate
from .ideal import (
    FiniteAbsoluteIdeal,
    PrincipalAbsoluteIdeal,
    ell_tau,
    gcd_sum_identity,
    ideal_member,
    ideal_of,
    ideal_sum,
)
from .multiplication import (
    AlphaWitness,
    ExtensionVerdict,
    StructureConstants,
    SyntacticFailure,
    check_semantic_extension,
    check_syntactic_extension,
    diagonal_witness_mult,
    free_witness_mult,
    mixed_witness_mult,
    product,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaWitness",
    "AmbientElement",
    "DEFAULT_SEED",
    "Endomorphism",
    "ExtensionVerdict",
    "FiniteAbsoluteIdeal",
    "FuzzConfig",
    "GroupSpec",
    "IdempotentType",
    "MembershipCertificate",
    "PrincipalAbsoluteIdeal",
    "Rational",
    "ResidueConstraint",
    "StructureConstants",
    "SyntacticFailure",
    "ValidationReport",
    "afi_check",
    "check_semantic_extension",
    "check_syntactic_extension",
    "crt",
    "diagonal_witness_mult",
    "ell_tau",
    "endo_apply",
    "example_group",
    "free_witness_mult",
    "gcd_sum_identity",
    "ideal_member",
    "ideal_of",
    "ideal_sum",
    "in_A",
    "member_G",
    "mixed_witness_mult",
    "mod_inverse",
    "product",
    "project",
    "validate",
]
