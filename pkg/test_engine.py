#!/usr/bin/env python3
"""
Tests for the graded module engine: sparse echelon form, the truncated current
algebra, presentations and exact construction.

Run with: python -m pytest test_engine.py -v
"""

import random
import unittest
from collections import defaultdict
from fractions import Fraction

from dem_cartan import Weight, cartan_matrix, precedes
from dem_characters import demazure_character, evaluation_character
from dem_current import (
    HighestWeightStraightener,
    TruncatedCurrentAlgebra,
    key_of_unit,
    monomial_depth,
    monomial_grade,
    root_of_key,
    unit_of_key,
)
from dem_echelon import EchelonBasis
from dem_engine import (
    BoundTooSmallError,
    Factor,
    Presentation,
    PresentationError,
    TruncationUnstableError,
    construct,
    default_bound,
    default_truncation,
    demazure_exponents,
    exact_truncation,
    graded_limit_presentation,
    present_D,
    present_M,
    present_V_xi,
    present_local_weyl,
    verify_graded_limit,
    verify_level_one_surjection,
    verify_local_weyl,
    verify_presentation_m,
    verify_refined_redundancy,
    verify_ses_dims,
    v_xi_dimension,
)
from dem_loopweights import LoopWeight, LoopWeightError


def _bracket(algebra, x: dict, y: dict) -> dict:
    """Bilinear extension of the unit bracket; zero coefficients dropped."""
    out = defaultdict(int)
    for u, cu in x.items():
        for v, cv in y.items():
            for coef, unit in algebra.bracket(u, v):
                out[unit] += coef * cu * cv
    return {unit: coef for unit, coef in out.items() if coef}


class TestEchelonBasis(unittest.TestCase):
    """Tests for the exact sparse row echelon form."""

    def test_rank_and_membership(self):
        """Test dependent vectors do not raise the rank."""
        basis = EchelonBasis()
        self.assertTrue(basis.add({"a": 1, "b": 2}))
        self.assertTrue(basis.add({"b": 1, "c": 1}))
        self.assertFalse(basis.add({"a": 2, "b": 6, "c": 2}))
        self.assertEqual(basis.rank, 2)
        self.assertTrue(basis.contains({"a": 1, "b": 3, "c": 1}))
        self.assertFalse(basis.contains({"c": 1}))

    def test_rows_fully_reduced(self):
        """Test no pivot appears in another row and pivots are normalized."""
        basis = EchelonBasis()
        basis.extend([{1: 2, 2: 1}, {2: 3, 3: 1}, {1: 1, 3: 5}])
        for pivot, row in basis.rows.items():
            self.assertEqual(row[pivot], 1)
            for other in basis.rows:
                if other != pivot:
                    self.assertNotIn(other, row)

    def test_zero_vector(self):
        """Test the zero vector is never added."""
        basis = EchelonBasis()
        self.assertFalse(basis.add({"x": 0}))
        self.assertEqual(len(basis), 0)

    def test_rational_reduction(self):
        """Test the remainder is exact over Q."""
        basis = EchelonBasis()
        basis.add({0: 3, 1: 1})
        self.assertEqual(basis.reduce({0: 1}), {1: Fraction(-1, 3)})


class TestCurrentAlgebra(unittest.TestCase):
    """Tests for the matrix-unit model and straightening."""

    def test_bracket(self):
        """Test [x^+, x^-] = h and the truncation kills high grades."""
        algebra = TruncatedCurrentAlgebra(1, 2)
        self.assertEqual(sorted(algebra.bracket((1, 2, 0), (2, 1, 1))),
                         sorted([(1, (1, 1, 1)), (-1, (2, 2, 1))]))
        self.assertEqual(algebra.bracket((1, 2, 1), (2, 1, 1)), [])

    def test_jacobi_identity(self):
        """Test the bracket satisfies the Jacobi identity on random unit triples."""
        rng = random.Random(20)
        for n in (2, 3):
            algebra = TruncatedCurrentAlgebra(n, 3)
            units = [(a, b, r) for a in range(1, n + 2) for b in range(1, n + 2)
                     for r in range(algebra.N)]
            for _ in range(200):
                x, y, z = (rng.choice(units) for _ in range(3))
                total = defaultdict(int)
                for p, q, s in ((x, y, z), (y, z, x), (z, x, y)):
                    for unit, coef in _bracket(algebra, {p: 1}, _bracket(algebra, {q: 1}, {s: 1})).items():
                        total[unit] += coef
                self.assertFalse({u: c for u, c in total.items() if c}, (x, y, z))

    def test_simple_root_brackets(self):
        """Test [x_i^+, x_i^-] = h_i and [h_i, x_j^+-] = +-C_ij x_j^+-."""
        n = 3
        algebra = TruncatedCurrentAlgebra(n, 2)
        C = cartan_matrix(n)
        for i in range(1, n + 1):
            h = {unit: coef for coef, unit in algebra.cartan_elements(i, 0)}
            self.assertEqual(
                _bracket(algebra, {algebra.x_plus(i, i, 0): 1}, {algebra.x_minus(i, i, 0): 1}), h)
            for j in range(1, n + 1):
                for sign, unit in ((1, algebra.x_plus(j, j, 1)), (-1, algebra.x_minus(j, j, 1))):
                    expected = {unit: sign * C[i - 1][j - 1]} if C[i - 1][j - 1] else {}
                    self.assertEqual(_bracket(algebra, h, {unit: 1}), expected, (i, j, sign))

    def test_lowering_keys(self):
        """Test one key per negative root and grade."""
        algebra = TruncatedCurrentAlgebra(3, 2)
        keys = algebra.lowering_keys()
        self.assertEqual(len(keys), 6 * 2)
        for key in keys:
            self.assertEqual(key_of_unit(unit_of_key(key)), key)
        self.assertEqual(root_of_key((0, 2, 1)).j, 2)

    def test_monomial_data(self):
        """Test depth and grade of a monomial."""
        mono = ((1, 2, 1), (0, 1, 2))
        self.assertEqual(monomial_depth(mono, 3), (1, 2, 0))
        self.assertEqual(monomial_grade(mono), 1)

    def test_raising_on_lowering(self):
        """Test x^+ x^- v = mu(h) v and x^+ (x^-)^2 v = 2 (mu(h) - 1) x^- v."""
        algebra = TruncatedCurrentAlgebra(1, 2)
        s = HighestWeightStraightener(algebra, Weight.of(2))
        lower = (0, 1, 1)
        self.assertEqual(s.act((1, 2, 0), (lower,)), {(): 2})
        self.assertEqual(s.act((1, 2, 0), (lower, lower)), {(lower,): 2})

    def test_graded_raising(self):
        """Test (x^+ (x) t)(x^-)^2 v = -2 (x^- (x) t) v."""
        algebra = TruncatedCurrentAlgebra(1, 2)
        s = HighestWeightStraightener(algebra, Weight.of(2))
        lower = (0, 1, 1)
        self.assertEqual(s.act((1, 2, 1), (lower, lower)), {((1, 1, 1),): -2})

    def test_insert_orders_monomials(self):
        """Test straightening returns weakly decreasing monomials."""
        algebra = TruncatedCurrentAlgebra(2, 2)
        s = HighestWeightStraightener(algebra, Weight.of(1, 1))
        out = s.insert((0, 1, 1), ((1, 1, 2), (0, 1, 2)))
        for mono in out:
            self.assertEqual(list(mono), sorted(mono, reverse=True))


class TestPresentations(unittest.TestCase):
    """Tests for the relation lists of each presentation."""

    def test_demazure_exponents(self):
        """Test value = (s-1) l + m with 0 < m <= l."""
        self.assertEqual(demazure_exponents(2, 3), (2, 1))
        self.assertEqual(demazure_exponents(2, 4), (2, 2))
        self.assertEqual(demazure_exponents(1, 5), (5, 1))
        self.assertEqual(demazure_exponents(3, 0), (0, 3))

    def test_present_M(self):
        """Test M(nu, lambda) for sl_3 with lambda = w1 + w2."""
        p = present_M(Weight.of(1, 0), Weight.of(1, 1))
        self.assertEqual(p.highest_weight, Weight.of(3, 1))
        rendered = [str(f) for rel in p.relations for f in rel]
        self.assertIn("(x-[1,1])^4", rendered)
        self.assertIn("x-[1,1]t^2", rendered)
        self.assertIn("x-[2,2]t^1", rendered)
        self.assertIn("x-[1,2]t^2", rendered)

    def test_present_M_rejects(self):
        """Test nu must be dominant and lambda in P^+(1)."""
        with self.assertRaises(PresentationError):
            present_M(Weight.of(-1), Weight.of(1))
        with self.assertRaises(PresentationError):
            present_M(Weight.of(0), Weight.of(2))

    def test_refined_drops_powers(self):
        """Test the refined level-two presentation keeps no power relation beyond integrability."""
        full = present_D(2, Weight.of(3, 1))
        refined = present_D(2, Weight.of(3, 1), refined=True)
        self.assertLess(len(refined.relations), len(full.relations))
        self.assertEqual(len(refined.relations), 2 + 3)

    def test_v_xi_relations(self):
        """Test V(1) needs only the integrability relation beyond trivial ones."""
        p = present_V_xi(0, 1)
        self.assertEqual(p.highest_weight, Weight.of(1))
        alt = present_V_xi(1, 1, alternative=True)
        self.assertEqual(str(alt.relations[-1][0]), "x-[1,1]t^2")
        with self.assertRaises(PresentationError):
            present_V_xi(-1, 0)

    def test_factor_validation(self):
        """Test malformed factors are rejected."""
        with self.assertRaises(PresentationError):
            Factor("?", 1, 1)
        with self.assertRaises(PresentationError):
            Factor("-", 2, 1)
        with self.assertRaises(PresentationError):
            Presentation(Weight.of(1), ((Factor("-", 1, 2),),))

    def test_to_dict(self):
        """Test the serialized relation layout."""
        d = present_local_weyl(Weight.of(1, 0)).to_dict()
        self.assertEqual(d["highest_weight"], [1, 0])
        self.assertEqual(d["relations"][0], [[["-", 1, 1], 0, 2]])

    def test_defaults(self):
        """Test the default truncation and weight bound."""
        p = present_local_weyl(Weight.of(2))
        self.assertEqual(default_truncation(p), 2)
        self.assertEqual(default_bound(Weight.of(2)), 2)
        self.assertEqual(default_bound(Weight.of(1, 1)), 4)

    def test_exact_truncation(self):
        """Test x^- (x) t^s relations on every positive root give the truncation directly."""
        p = present_M(Weight.of(3), Weight.of(0))
        self.assertEqual(exact_truncation(p), 3)
        self.assertEqual(default_truncation(p), 4)
        # simple roots only; x^-_{1,2} dies from grade s_1 + s_2
        self.assertEqual(exact_truncation(present_M(Weight.of(1, 1), Weight.of(0, 0))), 2)
        self.assertIsNone(exact_truncation(present_local_weyl(Weight.of(2))))

    def test_height_fallback(self):
        """Test presentations without grade-killing relations start at exponent plus height."""
        self.assertEqual(default_truncation(present_V_xi(2, 1)), 4)
        self.assertEqual(default_truncation(present_local_weyl(Weight.of(1, 1))), 3)


class TestConstruct(unittest.TestCase):
    """Tests for exact graded dimensions."""

    def test_local_weyl_fundamental(self):
        """Test D(1, w1) for sl_3 is three-dimensional in grade 0."""
        module = construct(present_local_weyl(Weight.of(1, 0)))
        self.assertEqual(module.dimension(), 3)
        self.assertEqual(module.grades(), [0])
        self.assertEqual(len(module.records()), 3)

    def test_local_weyl_sl2(self):
        """Test the local Weyl module W(2) matches D(1, 2w1)."""
        module = construct(present_local_weyl(Weight.of(2)))
        self.assertEqual(module.dimension(), 4)
        self.assertEqual(module.character(), demazure_character(1, Weight.of(2)))
        self.assertEqual(construct(present_local_weyl(Weight.of(3))).dimension(), 8)

    def test_demazure_level_two(self):
        """Test D(2, 3 w1) by its own presentation."""
        module = construct(present_D(2, Weight.of(3)))
        self.assertEqual(module.character(), demazure_character(2, Weight.of(3)))
        self.assertEqual(module.dimension(), 6)

    def test_sl2_dimension_law(self):
        """Test dim M(a w1, b w1) = 3^a 2^b."""
        for a, b in ((0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0)):
            module = construct(present_M(Weight.of(a), Weight.of(b)))
            self.assertEqual(module.dimension(), 3 ** a * 2 ** b, (a, b))

    def test_weights_below_highest(self):
        """Test every weight lies in mu - Q^+ and the top weight space is a line in grade 0."""
        for p in (present_M(Weight.of(1, 0), Weight.of(0, 0)), present_local_weyl(Weight.of(1, 1)),
                  present_V_xi(1, 1)):
            module = construct(p)
            mu = p.highest_weight
            self.assertEqual(module.dims[(mu, 0)], 1, p.label)
            self.assertTrue(all(precedes(w, mu) for w, _ in module.dims), p.label)
            self.assertEqual(sum(d for (w, _), d in module.dims.items() if w == mu), 1)

    def test_larger_bound_changes_nothing(self):
        """Test enlarging the weight cutoff past the default leaves the dimensions alone."""
        p = present_M(Weight.of(1), Weight.of(1))
        self.assertEqual(construct(p, bound=default_bound(p.highest_weight) + 2).dims, construct(p).dims)
        q = present_local_weyl(Weight.of(1, 0))
        self.assertEqual(construct(q, bound=default_bound(q.highest_weight) + 1).dims, construct(q).dims)

    def test_symmetric_matches_full_box(self):
        """Test the W-orbit extension agrees with computing every weight."""
        p = present_local_weyl(Weight.of(1, 1))
        self.assertEqual(construct(p, symmetric=True).dims, construct(p, symmetric=False).dims)

    def test_evaluation_module(self):
        """Test D(2, w1 + w2) is the evaluation module."""
        module = construct(present_D(2, Weight.of(1, 1)))
        self.assertEqual(module.character(), evaluation_character(Weight.of(1, 1)))

    def test_explicit_unstable_truncation(self):
        """Test N=1 is not enough for W(2) and the check notices."""
        p = present_local_weyl(Weight.of(2))
        with self.assertRaises(TruncationUnstableError):
            construct(p, N=1)
        self.assertEqual(construct(p, N=1, stability_check=False).dimension(), 3)

    def test_truncation_below_relation_exponent(self):
        """Test a truncation that cannot see a relation is rejected."""
        with self.assertRaises(PresentationError):
            construct(present_M(Weight.of(2), Weight.of(0)), N=1)

    def test_bound_too_small(self):
        """Test cutting off a nonzero weight space raises."""
        with self.assertRaises(BoundTooSmallError):
            construct(present_local_weyl(Weight.of(2)), bound=0)
        with self.assertRaises(PresentationError):
            construct(present_local_weyl(Weight.of(2)), bound=-1)


class TestVerifications(unittest.TestCase):
    """Tests for the engine-level comparisons."""

    def test_presentation_m(self):
        """Test M(nu, lambda) against D(2, 2nu + lambda) on small cases."""
        for nu, lam in ((Weight.of(1), Weight.of(1)), (Weight.of(0, 0), Weight.of(1, 1)),
                        (Weight.of(1, 0), Weight.of(0, 0))):
            self.assertTrue(verify_presentation_m(nu, lam), (str(nu), str(lam)))

    def test_level_one_surjection(self):
        """Test M(nu, lambda) is bounded by D(1, 2nu + lambda)."""
        self.assertTrue(verify_level_one_surjection(Weight.of(1), Weight.of(0)))

    def test_local_weyl(self):
        """Test the local Weyl module equals D(1, mu)."""
        self.assertTrue(verify_local_weyl(Weight.of(0, 1)))

    def test_v_xi(self):
        """Test V(1^2) = D(1, 2) and V(2) = D(2, 2)."""
        self.assertEqual(v_xi_dimension(0, 2), 4)
        self.assertEqual(construct(present_V_xi(1, 0)).character(), demazure_character(2, Weight.of(2)))
        self.assertEqual(construct(present_V_xi(1, 1, alternative=True)).dims,
                         construct(present_V_xi(1, 1)).dims)

    def test_ses_dims(self):
        """Test dim V(1^2) = dim V() + dim V(2)."""
        self.assertTrue(verify_ses_dims(0, 2))
        with self.assertRaises(PresentationError):
            verify_ses_dims(0, 1)

    def test_refined_redundancy(self):
        """Test dropping the redundant level-two relations changes nothing."""
        self.assertTrue(verify_refined_redundancy(Weight.of(3)))

    def test_graded_limit(self):
        """Test chain-times-pairs loop weights present D(2, wt pi)."""
        pi = LoopWeight.of(1, (1, 0), (1, 20), (1, 22))
        p = graded_limit_presentation(pi)
        self.assertEqual(p.highest_weight, Weight.of(3))
        self.assertEqual(p.relations, present_M(Weight.of(1), Weight.of(1)).relations)
        self.assertTrue(verify_graded_limit(pi))
        self.assertTrue(verify_graded_limit(LoopWeight.of(2, (1, 0), (2, 3))))
        with self.assertRaises(LoopWeightError):
            graded_limit_presentation(LoopWeight.of(1, (1, 0), (1, 4)))


if __name__ == "__main__":
    unittest.main(verbosity=2)
