import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crqgroups.arith import (
    ResidueConstraint,
    coprime_part,
    crt,
    factorize,
    format_rational,
    gcd_with_certificate,
    in_localization,
    is_p_number,
    is_prime,
    is_unit,
    mod_inverse,
    multiplicative_order,
    parse_rational,
    rational_mod,
    xgcd,
)


def brute_crt_solutions(constraints):
    """Reference: all solutions in 0..lcm-1 by scanning."""
    lcm = 1
    for c in constraints:
        lcm = math.lcm(lcm, c.modulus)
    return [r for r in range(lcm) if all(c.satisfied_by(r) for c in constraints)], lcm


class TestCrt:
    def test_pair_example(self):
        # brute force over 0..5 finds exactly one solution
        cs = [ResidueConstraint(2, 3), ResidueConstraint(1, 2)]
        solutions, lcm = brute_crt_solutions(cs)
        assert (solutions, lcm) == ([5], 6)
        assert crt(cs) == ResidueConstraint(5, 6)

    def test_parity_conflict(self):
        assert crt([ResidueConstraint(1, 4), ResidueConstraint(2, 6)]) is None

    def test_vacuous(self):
        assert crt([ResidueConstraint(0, 1)]) == ResidueConstraint(0, 1)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            crt([])

    @given(
        st.lists(
            st.integers(min_value=1, max_value=30).flatmap(
                lambda m: st.tuples(st.integers(min_value=0, max_value=m - 1), st.just(m))
            ),
            min_size=1,
            max_size=4,
        )
    )
    def test_matches_exhaustive_search(self, pairs):
        cs = [ResidueConstraint(r, m) for r, m in pairs]
        solutions, lcm = brute_crt_solutions(cs)
        got = crt(cs)
        if not solutions:
            assert got is None
        else:
            assert got == ResidueConstraint(solutions[0], lcm)
            assert len(solutions) == 1  # uniqueness modulo the lcm

    def test_result_satisfies_all_inputs(self):
        rng = random.Random(7)
        checked = 0
        while checked < 300:
            cs = []
            lcm = 1
            for _ in range(rng.randint(1, 4)):
                m = rng.randint(1, 40)
                cs.append(ResidueConstraint(rng.randrange(m), m))
                lcm = math.lcm(lcm, m)
            if lcm > 10_000:
                continue
            checked += 1
            got = crt(cs)
            solutions, _ = brute_crt_solutions(cs)
            if got is None:
                assert not solutions
            else:
                assert got.modulus == lcm
                assert solutions == [got.residue]
                assert all(c.satisfied_by(got.residue) for c in cs)


class TestBruteCrtOracle:
    def test_matches_fast_path(self):
        from crqgroups.oracle import brute_crt

        rng = random.Random(19)
        for _ in range(100):
            cs = []
            for _ in range(rng.randint(1, 3)):
                m = rng.randint(1, 20)
                cs.append(ResidueConstraint(rng.randrange(m), m))
            assert brute_crt(cs) == crt(cs)

    def test_guard_against_large_scan(self):
        with pytest.raises(ValueError):
            from crqgroups.oracle import brute_crt

            brute_crt([ResidueConstraint(0, 99991), ResidueConstraint(0, 99989)])


class TestModInverse:
    def test_identity(self):
        assert mod_inverse(1, 3) == 1

    def test_five_mod_twelve(self):
        # brute force: 5*5 = 25 = 1 mod 12 and no smaller candidate works
        assert [x for x in range(12) if 5 * x % 12 == 1] == [5]
        assert mod_inverse(5, 12) == 5

    def test_rejects_non_coprime(self):
        with pytest.raises(ValueError):
            mod_inverse(3, 6)

    def test_random_coprime_pairs(self):
        rng = random.Random(11)
        done = 0
        while done < 1000:
            m = rng.randint(1, 10_000)
            s = rng.randint(-10_000, 10_000)
            if math.gcd(s, m) != 1:
                continue
            inv = mod_inverse(s, m)
            assert 0 <= inv < m
            assert inv * s % m == 1 % m
            done += 1


class TestPNumbers:
    def test_examples(self):
        assert is_p_number({2, 3}, 12)
        assert not is_p_number({2}, 6)
        assert is_p_number(set(), 1)
        assert is_p_number(set(), -1)
        assert not is_p_number({2, 3}, 0)

    def test_in_localization(self):
        assert in_localization({2}, Fraction(3, 4))
        assert not in_localization({2}, Fraction(1, 3))
        assert in_localization(set(), Fraction(7))


class TestCoprimePart:
    def test_zero_convention(self):
        assert coprime_part({2}, Fraction(0)) == 0

    def test_examples(self):
        assert coprime_part({2}, Fraction(3, 2)) == 3
        assert coprime_part({2}, Fraction(-6)) == 3

    def test_rejects_outside_ring(self):
        with pytest.raises(ValueError):
            coprime_part({2}, Fraction(1, 3))

    @given(
        st.fractions(max_denominator=64),
        st.fractions(max_denominator=64),
    )
    def test_multiplicative(self, a, b):
        p_inf = {2, 5}
        # force both into the ring by clearing foreign denominator primes
        a = Fraction(a.numerator, _ring_denominator(a.denominator))
        b = Fraction(b.numerator, _ring_denominator(b.denominator))
        assert coprime_part(p_inf, a * b) == coprime_part(p_inf, a) * coprime_part(
            p_inf, b
        )

    def test_unit_complement(self):
        # a = coprime_part(a) * unit for 500 random ring elements
        rng = random.Random(3)
        for _ in range(500):
            num = rng.randint(-500, 500)
            den = 2 ** rng.randint(0, 5) * 5 ** rng.randint(0, 5)
            a = Fraction(num, den)
            c = coprime_part({2, 5}, a)
            if a == 0:
                assert c == 0
                continue
            assert c > 0
            assert is_unit({2, 5}, a / c)


def _ring_denominator(d):
    out = 1
    while d % 2 == 0:
        d //= 2
        out *= 2
    while d % 5 == 0:
        d //= 5
        out *= 5
    return out


class TestRationalMod:
    def test_clears_denominator(self):
        # 3/2 mod 3: 2^-1 = 2 mod 3, so 3*2 = 6 = 0; and 1/2 mod 3 -> 2
        assert rational_mod(Fraction(3, 2), 3) == 0
        assert rational_mod(Fraction(1, 2), 3) == 2

    def test_rejects_shared_factor(self):
        with pytest.raises(ValueError):
            rational_mod(Fraction(1, 2), 4)


class TestBezout:
    @given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
    def test_xgcd(self, a, b):
        g, x, y = xgcd(a, b)
        assert g == math.gcd(a, b)
        assert a * x + b * y == g

    def test_gcd_certificate(self):
        rng = random.Random(5)
        for _ in range(300):
            values = [rng.randint(-60, 60) for _ in range(rng.randint(0, 5))]
            g, coeffs = gcd_with_certificate(values)
            assert g == math.gcd(*values) if values else g == 0
            assert sum(c * v for c, v in zip(coeffs, values)) == g


class TestSmallHelpers:
    def test_factorize(self):
        assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
        assert factorize(-7) == [(7, 1)]
        assert factorize(1) == []
        with pytest.raises(ValueError):
            factorize(0)

    def test_is_prime(self):
        primes = [p for p in range(60) if is_prime(p)]
        assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]

    def test_multiplicative_order(self):
        assert multiplicative_order(2, 7) == 3
        assert multiplicative_order(3, 1) == 1
        with pytest.raises(ValueError):
            multiplicative_order(2, 4)

    def test_rational_round_trip(self):
        for text in ["2/3", "-5", "0", "7/2"]:
            assert format_rational(parse_rational(text)) == text
