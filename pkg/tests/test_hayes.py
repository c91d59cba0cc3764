import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from hayesdist.errors import BudgetExceededError
from hayesdist.ffield import Polynomial, enumerate_monic
from hayesdist.hayes import (
    ClassGroup,
    HayesParams,
    distinct_irreducible_factors,
    equivalent,
    phi,
    phi_relative_gap,
    signature,
)


def leading_indices(sig):
    return [c.index for c in sig.leading]


class TestSignature:
    def test_reciprocal_coefficient(self, fields):
        F2 = fields(2)
        params = HayesParams(1, Polynomial.one(F2))
        sig = signature(Polynomial.from_text(F2, "x^2 + x"), params)
        assert leading_indices(sig) == [1]
        assert sig.residue.is_zero  # residue mod 1

    def test_coprimality_failure(self, fields):
        F2 = fields(2)
        params = HayesParams(0, Polynomial.x(F2))
        assert signature(Polynomial.from_text(F2, "x^2 + x"), params) is None

    def test_residue_is_constant_term_mod_x(self, fields):
        F3 = fields(3)
        params = HayesParams(1, Polynomial.x(F3))
        sig = signature(Polynomial.from_text(F3, "x^2 + 2*x + 1"), params)
        assert leading_indices(sig) == [2]
        assert sig.residue == Polynomial.one(F3)

    def test_zero_padding_for_short_polynomials(self, fields):
        F2 = fields(2)
        params = HayesParams(2, Polynomial.one(F2))
        sig = signature(Polynomial.x(F2), params)  # deg 1 < ell = 2
        assert leading_indices(sig) == [0, 0]

    def test_non_monic_rejected(self, fields):
        F3 = fields(3)
        params = HayesParams(1, Polynomial.one(F3))
        with pytest.raises(ValueError):
            signature(Polynomial.from_text(F3, "2*x"), params)


class TestEquivalence:
    def test_reflexive_on_coprime(self, fields):
        F3 = fields(3)
        params = HayesParams(1, Polynomial.x(F3))
        f = Polynomial.from_text(F3, "x^2 + 1")
        assert equivalent(f, f, params)
        g = Polynomial.from_text(F3, "x^2 + x")  # not coprime to x
        assert not equivalent(g, g, params)

    def test_same_leading_coefficient(self, fields):
        F2 = fields(2)
        params = HayesParams(1, Polynomial.one(F2))
        x2 = Polynomial.from_text(F2, "x^2")
        assert equivalent(x2, Polynomial.from_text(F2, "x^2 + 1"), params)
        assert not equivalent(x2, Polynomial.from_text(F2, "x^2 + x"), params)

    def test_agrees_with_definition_bruteforce(self, fields):
        # oracle: compare against the literal definition (reciprocals mod
        # x^(ell+1), residues mod Q) on a full small grid
        F3 = fields(3)
        params = HayesParams(1, Polynomial.x(F3))
        xl1 = Polynomial.from_text(F3, "x^2")  # x^(ell+1)
        polys = list(enumerate_monic(F3, 2)) + list(enumerate_monic(F3, 3))
        for f, g in itertools.product(polys, repeat=2):
            coprime = f.gcd(params.Q).is_one and g.gcd(params.Q).is_one
            literal = (
                coprime
                and (f.reciprocal() % xl1) == (g.reciprocal() % xl1)
                and (f % params.Q) == (g % params.Q)
            )
            assert equivalent(f, g, params) == literal, (f.to_text(), g.to_text())


class TestPhi:
    def test_trivial_modulus(self, fields):
        F3 = fields(3)
        for j in range(5):
            assert phi(j, Polynomial.one(F3)) == 3 ** j

    def test_single_irreducible_factor(self, fields):
        # Q irreducible of degree d1: q^j - q^(j-d1) once j >= d1
        F2 = fields(2)
        Q = Polynomial.from_text(F2, "x^2 + x + 1")
        for j in range(5):
            want = 2 ** j - (2 ** (j - 2) if j >= 2 else 0)
            assert phi(j, Q) == want

    def test_split_quadratic_by_enumeration(self, fields):
        F2 = fields(2)
        Q = Polynomial.from_text(F2, "x^2 + x")
        assert phi(2, Q) == 1
        survivors = [f for f in enumerate_monic(F2, 2) if f.gcd(Q).is_one]
        assert [f.to_text() for f in survivors] == ["x^2 + x + 1"]

    @pytest.mark.parametrize("p,a", [(2, 1), (3, 1), (5, 1), (2, 2)])
    def test_matches_gcd_filter(self, fields, p, a):
        spec = fields(p, a)
        rng = random.Random(p * 10 + a)
        qs = [Polynomial.one(spec), Polynomial.x(spec), Polynomial.from_text(spec, "x^2 + x")]
        for d in (2, 3):
            coeffs = [rng.choice(spec.elements) for _ in range(d)]
            qs.append(Polynomial(spec, (*coeffs, spec.one)))
        for Q in qs:
            for j in range(0, 5):
                if spec.q ** j > 3000:
                    continue
                oracle = sum(1 for f in enumerate_monic(spec, j) if f.gcd(Q).is_one)
                assert phi(j, Q) == oracle, (Q.to_text(), j)

    def test_matches_gcd_filter_deeper_degrees(self, fields):
        # higher-degree sweep with moduli up to degree 3
        for p, a in [(2, 1), (3, 1), (5, 1)]:
            spec = fields(p, a)
            for q_text in ("1", "x^2 + x", "x^3 + x"):
                Q = Polynomial.from_text(spec, q_text)
                for j in range(5, 7):
                    if spec.q ** j > 20000:
                        continue
                    oracle = sum(1 for f in enumerate_monic(spec, j) if f.gcd(Q).is_one)
                    assert phi(j, Q) == oracle, (p, q_text, j)

    def test_sandwich_and_relative_gap(self, fields):
        for p, a in [(2, 1), (3, 1), (5, 1)]:
            spec = fields(p, a)
            q = spec.q
            for q_text in ("1", "x", "x^2 + x", "x^2 + 1"):
                Q = Polynomial.from_text(spec, q_text)
                drop = sum(Fraction(1, q ** P.degree) for P in distinct_irreducible_factors(Q))
                for j in range(7):
                    val = phi(j, Q)
                    assert q ** j * (1 - drop) <= val <= q ** j
                    assert phi_relative_gap(j, Q) <= drop


def test_distinct_irreducible_factors(fields):
    F2 = fields(2)
    Q = Polynomial.from_text(F2, "x^2 + x")  # x(x+1)
    assert {P.to_text() for P in distinct_irreducible_factors(Q)} == {"x", "x + 1"}
    # cube of an irreducible: one distinct factor
    x = Polynomial.x(F2)
    assert distinct_irreducible_factors(x * x * x) == (x,)
    # large leftover factor is irreducible itself
    Q2 = Polynomial.from_text(F2, "x^3 + x + 1")
    assert distinct_irreducible_factors(Q2) == (Q2,)


class TestClassGroup:
    def test_order_examples(self, groups):
        assert groups(2, 1, 1, "1").order == 2
        assert groups(3, 1, 0, "x").order == 2  # residues 1, 2
        assert groups(2, 1, 1, "x").order == 2  # 2 * Phi_1(x) = 2

    @pytest.mark.parametrize("p,a", [(2, 1), (3, 1), (2, 2)])
    def test_order_formula(self, fields, groups, p, a):
        spec = fields(p, a)
        for ell in (0, 1, 2):
            for q_text in ("1", "x", "x^2 + x"):
                Q = Polynomial.from_text(spec, q_text)
                if spec.q ** ell * spec.q ** Q.degree > 600:
                    continue
                G = groups(p, a, ell, q_text)
                assert G.order == spec.q ** ell * phi(Q.degree, Q)

    def test_representatives_have_unique_signatures(self, groups):
        G = groups(3, 1, 1, "x")
        assert len({G._key_of_signature(s) for s in G.signatures}) == G.order
        assert all(r.degree == 2 for r in G.reps)

    def test_mul_table_is_abelian_group(self, groups):
        for key in [(2, 1, 1, "1"), (3, 1, 1, "x"), (2, 1, 2, "x + 1"), (2, 2, 1, "1")]:
            G = groups(*key)
            mt = G.mul_table
            n = G.order
            assert np.array_equal(mt, mt.T)
            for i in range(n):
                assert sorted(mt[i]) == list(range(n))
                assert mt[G.identity, i] == i
                assert mt[i, G.inv(i)] == G.identity
            rng = random.Random(17)
            for _ in range(30):
                i, j, k = (rng.randrange(n) for _ in range(3))
                assert mt[mt[i, j], k] == mt[i, mt[j, k]]

    def test_product_signature_matches_polynomial_product(self, groups):
        G = groups(3, 1, 1, "x")
        rng = random.Random(23)
        for _ in range(40):
            i, j = rng.randrange(G.order), rng.randrange(G.order)
            assert G.mul(i, j) == G.class_of(G.reps[i] * G.reps[j])

    def test_class_of_matches_signature(self, fields, groups):
        F3 = fields(3)
        G = groups(3, 1, 1, "x")
        params = G.params
        for f in enumerate_monic(F3, 3):
            sig = signature(f, params)
            if sig is None:
                assert G.class_of(f) is None
            else:
                assert G.class_of(f) == G.index_of_signature(sig)

    def test_budget(self, fields):
        F5 = fields(5)
        with pytest.raises(BudgetExceededError):
            ClassGroup(HayesParams(2, Polynomial.one(F5)), max_classes=10)

    def test_degenerate_flag(self, fields, groups):
        assert groups(2, 1, 0, "1").degenerate
        assert groups(2, 1, 0, "1").order == 1
        assert not groups(2, 1, 1, "1").degenerate

    def test_export_classes(self, groups):
        G = groups(2, 1, 1, "1")
        assert G.export_classes() == [{"eps": 0, "rep": "x"}, {"eps": 1, "rep": "x + 1"}]


class TestClassMembers:
    def test_leading_zero_class_degree_two(self, fields, groups):
        F2 = fields(2)
        G = groups(2, 1, 1, "1")
        eps = G.class_of(Polynomial.from_text(F2, "x^2"))
        got = {m.to_text() for m in G.members(eps, 2)}
        assert got == {"x^2", "x^2 + 1"}

    def test_base_degree_is_single_member(self, groups):
        for key in [(2, 1, 1, "1"), (3, 1, 1, "x"), (2, 1, 2, "x")]:
            G = groups(*key)
            d = G.params.t + G.params.ell
            for eps in range(G.order):
                members = list(G.members(eps, d))
                assert members == [G.reps[eps]]

    def test_count_against_exhaustive_filter(self, fields, groups):
        # every class has exactly q^(d-t-ell) members of degree d
        for key in [(2, 1, 1, "1"), (2, 1, 1, "x"), (3, 1, 1, "x"), (2, 1, 2, "1"), (2, 2, 1, "1")]:
            G = groups(*key)
            spec = G.params.spec
            t_ell = G.params.t + G.params.ell
            for d in range(t_ell, t_ell + 3):
                if spec.q ** d > 5000:
                    continue
                by_filter: dict[int, set] = {eps: set() for eps in range(G.order)}
                for f in enumerate_monic(spec, d):
                    eps = G.class_of(f)
                    if eps is not None:
                        by_filter[eps].add(f)
                for eps in range(G.order):
                    members = set(G.members(eps, d))
                    assert members == by_filter[eps]
                    assert len(members) == spec.q ** (d - t_ell)

    def test_count_example_q2_leading_one_degree_three(self, fields, groups):
        F2 = fields(2)
        G = groups(2, 1, 1, "1")
        eps = G.class_of(Polynomial.from_text(F2, "x^2 + x"))
        assert len(list(G.members(eps, 3))) == 4

    def test_degree_below_base_rejected(self, groups):
        with pytest.raises(ValueError):
            next(groups(2, 1, 1, "x").members(0, 1))


def test_monic_class_counts_consistency(groups):
    G = groups(3, 1, 1, "x")
    q = 3
    for d in range(0, 5):
        counts = G.monic_class_counts(d)
        assert sum(counts) + G.noncoprime_count(d) == q ** d
        if d >= G.params.t + G.params.ell:
            assert all(c == q ** (d - G.params.t - G.params.ell) for c in counts)
