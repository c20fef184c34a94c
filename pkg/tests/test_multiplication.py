from fractions import Fraction

import pytest

from crqgroups.arith import ResidueConstraint
from crqgroups.element import AmbientElement, member_G
from crqgroups.fuzz import (
    FuzzConfig,
    canonical_gap_instance,
    derive_rng,
    gen_group,
    gen_member,
    gen_mult,
)
from crqgroups.multiplication import (
    AlphaWitness,
    StructureConstants,
    SyntacticFailure,
    check_semantic_extension,
    check_syntactic_extension,
    constant_problems,
    diagonal_witness_mult,
    free_witness_mult,
    mixed_witness_mult,
    product,
)
from crqgroups.oracle import brute_member, sampled_semantic_extendable

E = AmbientElement.basis


class TestSyntacticCheck:
    def test_framing_diagonal_example(self, spec):
        # u00 = 3 e0 on tau1 and 2 e0 on tau2: v00 = e0 both, so alpha = 1
        # mod 3 and mod 2, merged to 1 mod 6
        u = StructureConstants(
            {("tau1", 0, 0): E("tau1", 0, 3), ("tau2", 0, 0): E("tau2", 0, 2)}
        )
        got = check_syntactic_extension(spec, u)
        assert isinstance(got, AlphaWitness)
        assert got.alpha == ResidueConstraint(1, 6)

    def test_indivisible_row_entry_fails(self, spec):
        u = StructureConstants({("tau1", 0, 1): E("tau1", 0)})
        got = check_syntactic_extension(spec, u)
        assert isinstance(got, SyntacticFailure)
        assert got.tau == "tau1"
        assert "not divisible by m = 3" in got.clause

    def test_zero_table(self, spec):
        got = check_syntactic_extension(spec, StructureConstants())
        assert isinstance(got, AlphaWitness)
        assert got.alpha == ResidueConstraint(0, 6)

    def test_incompatible_alpha_classes(self):
        from crqgroups.group import GroupSpec

        # moduli 4 and 6 share the factor 2; alphas 1 mod 4 and 0 mod 6 clash
        spec = GroupSpec.build(
            types=[("tau1", [5]), ("tau2", [7])],
            b={"tau1": (4, 1), "tau2": (6, 1)},
        )
        u = StructureConstants(
            {("tau1", 0, 0): E("tau1", 0, 4), ("tau2", 0, 0): E("tau2", 0, 0)}
        )
        got = check_syntactic_extension(spec, u)
        assert isinstance(got, SyntacticFailure)
        assert "incompatible alpha" in got.clause

    def test_v00_off_diagonal_must_be_divisible(self, spec):
        # u00 = 3 e1: v00 = e1, whose non-e0 coordinate 1 is not in 3R
        u = StructureConstants({("tau1", 0, 0): E("tau1", 1, 3)})
        got = check_syntactic_extension(spec, u)
        assert isinstance(got, SyntacticFailure)
        assert "non-e0" in got.clause


class TestSemanticCheck:
    def test_gap_instance_is_extendable(self, spec):
        # e0 * e1 = e0 on tau1: d*e1 = (1/3) e0, which is a member (beta 4),
        # and every ring multiple stays inside; oracle samples agree
        u = StructureConstants({("tau1", 0, 1): E("tau1", 0)})
        t = product(spec, u, spec.distinguished(), E("tau1", 1))
        assert t == E("tau1", 0, Fraction(1, 3))
        assert brute_member(spec, t) == 4
        for r in (Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(3)):
            assert brute_member(spec, t.scale(r)) is not None
        assert check_semantic_extension(spec, u)

    def test_free_coordinate_breaks_extension(self, spec):
        # e0 * e1 = e1: d*e1 = (1/3) e1 has a free coordinate outside Z[1/2],
        # and no multiple of d can repair a free coordinate
        u = StructureConstants({("tau1", 0, 1): E("tau1", 1)})
        t = product(spec, u, spec.distinguished(), E("tau1", 1))
        assert brute_member(spec, t) is None
        verdict = check_semantic_extension(spec, u)
        assert not verdict
        assert verdict.failing == "d*e[tau1,1]"

    def test_zero_table_extends(self, spec):
        assert check_semantic_extension(spec, StructureConstants())

    def test_dd_membership_required(self, spec):
        # u00 = e0 on tau1: d*d = (1/9) e0 is not a member
        u = StructureConstants({("tau1", 0, 0): E("tau1", 0)})
        verdict = check_semantic_extension(spec, u)
        assert not verdict
        assert verdict.failing == "d*d"


class TestProduct:
    def test_dd_equals_d(self, spec):
        u = StructureConstants(
            {("tau1", 0, 0): E("tau1", 0, 3), ("tau2", 0, 0): E("tau2", 0, 2)}
        )
        d = spec.distinguished()
        assert product(spec, u, d, d) == d

    def test_bilinear_zero(self, spec):
        u = StructureConstants({("tau1", 0, 0): E("tau1", 0, 3)})
        assert product(spec, u, E("tau1", 0), AmbientElement.zero()).is_zero()
        assert product(spec, StructureConstants(), E("tau1", 0), E("tau1", 0)).is_zero()

    def test_cross_type_vanishes(self, spec):
        u = StructureConstants(
            {("tau1", 0, 0): E("tau1", 0, 3), ("tau2", 0, 0): E("tau2", 0, 2)}
        )
        assert product(spec, u, E("tau1", 0), E("tau2", 0)).is_zero()

    def test_bilinearity_random(self, spec):
        cfg = FuzzConfig()
        for i in range(40):
            rng = derive_rng(31, i)
            u = gen_mult(cfg, spec, rng)
            x = gen_member(cfg, spec, derive_rng(31, "x", i))
            y = gen_member(cfg, spec, derive_rng(31, "y", i))
            z = gen_member(cfg, spec, derive_rng(31, "z", i))
            lhs = product(spec, u, x + z, y)
            rhs = product(spec, u, x, y) + product(spec, u, z, y)
            assert lhs == rhs
            k = Fraction(3, 2)
            assert product(spec, u, x.scale(k), y) == product(spec, u, x, y).scale(k)


class TestWitnessConstructors:
    def test_mixed_alpha_zero(self, spec):
        u = mixed_witness_mult(spec, "tau1", t=1, k=1)
        assert u.entry("tau1", 0, 1) == E("tau1", 1, 3)
        assert u.entry("tau1", 1, 0) == E("tau1", 1, 3)
        got = check_syntactic_extension(spec, u)
        assert isinstance(got, AlphaWitness)
        assert got.alpha == ResidueConstraint(0, 6)
        assert check_semantic_extension(spec, u)

    def test_diagonal_alpha_is_s(self, spec):
        u = diagonal_witness_mult(spec, "tau1")
        # coefficients: m1*(s1*inv1 + m1*y1) = 3*(1*1+0) = 3, and
        # m2*(s1*inv2 + m2*y2) = 2*(1*1+0) = 2
        assert u.entry("tau1", 0, 0) == E("tau1", 0, 3)
        assert u.entry("tau2", 0, 0) == E("tau2", 0, 2)
        got = check_syntactic_extension(spec, u)
        assert isinstance(got, AlphaWitness)
        assert got.alpha.residue == spec.b_data["tau1"][1] % 6
        d = spec.distinguished()
        dd = product(spec, u, d, d)
        assert dd == d
        assert member_G(spec, dd) is not None
        assert check_semantic_extension(spec, u)

    def test_free_diagonal_alpha_zero(self, spec):
        u = free_witness_mult(spec, "tau1", i=1, k=0)
        assert u.entry("tau1", 1, 1) == E("tau1", 0)
        got = check_syntactic_extension(spec, u)
        assert isinstance(got, AlphaWitness)
        assert got.alpha == ResidueConstraint(0, 6)
        assert check_semantic_extension(spec, u)

    def test_domain_errors(self, spec):
        with pytest.raises(ValueError):
            mixed_witness_mult(spec, "tau2", 1, 0)  # tau2 has no free part
        with pytest.raises(ValueError):
            diagonal_witness_mult(spec, "tau9")
        with pytest.raises(ValueError):
            free_witness_mult(spec, "tau1", 2, 0)

    def test_constructors_pass_checks_on_fuzzed_specs(self):
        cfg = FuzzConfig()
        for i in range(40):
            spec = gen_group(cfg, derive_rng(37, i))
            for tau in spec.type_names():
                free = spec.c_index_set(tau)
                tables = []
                if spec.is_framed(tau):
                    tables.append(diagonal_witness_mult(spec, tau))
                    if free:
                        tables.append(mixed_witness_mult(spec, tau, free[0], 0))
                for t in free:
                    tables.append(free_witness_mult(spec, tau, t, free[0]))
                for u in tables:
                    assert not constant_problems(spec, u)
                    assert isinstance(check_syntactic_extension(spec, u), AlphaWitness)
                    assert check_semantic_extension(spec, u)


class TestPivotModulusVariant:
    def test_never_closes_on_worked_example(self, spec):
        d = spec.distinguished()
        for shift in range(-3, 4):
            u = diagonal_witness_mult(spec, "tau1", pivot_modulus=True, bezout_shift=shift)
            dd = product(spec, u, d, d)
            # tau2 coordinate is odd/4 for every Bezout choice
            assert dd.coord("tau2", 0).denominator == 4
            assert member_G(spec, dd) is None
            assert brute_member(spec, dd) is None
        u0 = diagonal_witness_mult(spec, "tau1", pivot_modulus=True)
        assert product(spec, u0, d, d) == AmbientElement(
            {("tau1", 0): Fraction(1, 3), ("tau2", 0): Fraction(3, 4)}
        )

    def test_per_type_shift_mapping(self, spec):
        u = diagonal_witness_mult(spec, "tau1", bezout_shift={"tau2": 1})
        # shifted Bezout pair still sums to 1, so d*d keeps beta = s_tau
        d = spec.distinguished()
        cert = member_G(spec, product(spec, u, d, d))
        assert cert is not None
        assert cert.beta.residue == 1


class TestSoundnessProperty:
    def test_syntactic_accept_implies_extendable(self):
        cfg = FuzzConfig()
        accepted = 0
        for i in range(150):
            spec = gen_group(cfg, derive_rng(41, "spec", i))
            u = gen_mult(cfg, spec, derive_rng(41, "mult", i))
            if isinstance(check_syntactic_extension(spec, u), AlphaWitness):
                accepted += 1
                assert check_semantic_extension(spec, u)
                x = gen_member(cfg, spec, derive_rng(41, "x", i))
                y = gen_member(cfg, spec, derive_rng(41, "y", i))
                assert member_G(spec, product(spec, u, x, y)) is not None
        assert accepted >= 30

    def test_semantic_agrees_with_sampled_saturation(self):
        cfg = FuzzConfig()
        for i in range(60):
            spec = gen_group(cfg, derive_rng(43, "spec", i))
            u = gen_mult(cfg, spec, derive_rng(43, "mult", i))
            exact = bool(check_semantic_extension(spec, u))
            sampled = sampled_semantic_extendable(spec, u, derive_rng(43, "sat", i))
            assert exact == sampled

    def test_canonical_gap(self):
        spec, u = canonical_gap_instance()
        assert isinstance(check_syntactic_extension(spec, u), SyntacticFailure)
        assert check_semantic_extension(spec, u)


class TestConstantValidation:
    def test_support_leak(self, spec):
        u = StructureConstants({("tau1", 0, 0): E("tau2", 0)})
        assert any("leaks" in p for p in constant_problems(spec, u))

    def test_foreign_denominator(self, spec):
        u = StructureConstants({("tau1", 0, 0): E("tau1", 0, Fraction(1, 3))})
        assert any("outside the coefficient ring" in p for p in constant_problems(spec, u))

    def test_unknown_index(self, spec):
        u = StructureConstants({("tau1", 0, 5): E("tau1", 0)})
        assert any("outside the type's basis" in p for p in constant_problems(spec, u))
