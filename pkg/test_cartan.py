#!/usr/bin/env python3
"""
Tests for dem_cartan: weights, roots, the invariant form and the finite Weyl group.

Run with: python -m pytest test_cartan.py -v
"""

import unittest
from fractions import Fraction

from dem_cartan import (
    RootRange,
    Weight,
    WeightError,
    cartan_matrix,
    dominant_conjugate,
    dominant_weights_below,
    highest_root,
    in_positive_cone,
    inner_product,
    inverse_cartan,
    is_in_P1,
    longest_element,
    odd_even_split,
    pair_coroot,
    parity_decompose,
    positive_roots,
    precedes,
    root_coordinates,
    root_height,
    simple_root,
    weight_height,
    weyl_dimension,
    weyl_orbit,
    weyl_reflect,
)


class TestWeight(unittest.TestCase):
    """Tests for the Weight value type."""

    def test_arithmetic(self):
        """Test addition, subtraction and scaling act coordinatewise."""
        a, b = Weight.of(1, 0, 2), Weight.of(0, 3, 1)
        self.assertEqual(a + b, Weight.of(1, 3, 3))
        self.assertEqual(a - b, Weight.of(1, -3, 1))
        self.assertEqual(a * 2, Weight.of(2, 0, 4))
        self.assertEqual(2 * a, a * 2)

    def test_rank_mismatch(self):
        """Test adding weights of different rank raises."""
        with self.assertRaises(WeightError):
            _ = Weight.of(1) + Weight.of(1, 0)

    def test_empty_weight_rejected(self):
        """Test a weight needs at least one coordinate."""
        with self.assertRaises(WeightError):
            Weight(())

    def test_support_and_dominance(self):
        """Test support lists nonzero nodes and dominance checks signs."""
        self.assertEqual(Weight.of(1, 0, 2).support(), [1, 3])
        self.assertTrue(Weight.of(0, 0).is_dominant())
        self.assertFalse(Weight.of(1, -1).is_dominant())

    def test_fundamental_out_of_range(self):
        """Test omega_i outside 1..n raises."""
        with self.assertRaises(WeightError):
            Weight.fundamental(2, 3)

    def test_str(self):
        """Test the short textual form."""
        self.assertEqual(str(Weight.of(1, 0, -2)), "w1-2w3")
        self.assertEqual(str(Weight.zero(2)), "0")


class TestRoots(unittest.TestCase):
    """Tests for Cartan data and root combinatorics."""

    def test_cartan_inverse(self):
        """Test the exact inverse multiplies back to the identity."""
        for n in range(1, 6):
            a, inv = cartan_matrix(n), inverse_cartan(n)
            for i in range(n):
                for j in range(n):
                    total = sum(a[i][k] * inv[k][j] for k in range(n))
                    self.assertEqual(total, 1 if i == j else 0)

    def test_positive_root_count(self):
        """Test A_n has n(n+1)/2 positive roots."""
        for n in range(1, 7):
            self.assertEqual(len(positive_roots(n)), n * (n + 1) // 2)

    def test_highest_root(self):
        """Test theta = omega_1 + omega_n (2 omega_1 for sl_2)."""
        self.assertEqual(highest_root(1), Weight.of(2))
        self.assertEqual(highest_root(4), Weight.of(1, 0, 0, 1))

    def test_pair_coroot(self):
        """Test lambda(h_{i,j}) sums coordinates i..j."""
        self.assertEqual(pair_coroot(Weight.of(1, 2, 3), RootRange(2, 3)), 5)
        with self.assertRaises(WeightError):
            pair_coroot(Weight.of(1, 2), RootRange(1, 3))

    def test_inner_product(self):
        """Test (alpha_i, alpha_i) = 2 and (omega_1, omega_1) = n/(n+1)."""
        for n in range(1, 5):
            for i in range(1, n + 1):
                self.assertEqual(inner_product(simple_root(n, i), simple_root(n, i)), 2)
            omega = Weight.fundamental(n, 1)
            self.assertEqual(inner_product(omega, omega), Fraction(n, n + 1))

    def test_root_coordinates(self):
        """Test a root's coordinates in the simple-root basis."""
        self.assertEqual(root_coordinates(highest_root(3)), (1, 1, 1))
        self.assertEqual(root_coordinates(Weight.of(1)), (Fraction(1, 2),))

    def test_order(self):
        """Test the dominance order and root heights."""
        self.assertTrue(precedes(Weight.of(0, 0), Weight.of(1, 1)))
        self.assertFalse(precedes(Weight.of(1, 0), Weight.of(0, 1)))
        self.assertTrue(in_positive_cone(Weight.of(2)))
        self.assertEqual(root_height(Weight.of(1, 1) - Weight.of(0, 0)), 2)
        with self.assertRaises(WeightError):
            root_height(Weight.of(1))

    def test_weight_height(self):
        """Test the rounded-down simple-root height of a dominant weight."""
        self.assertEqual(weight_height(Weight.of(6)), 3)
        self.assertEqual(weight_height(Weight.of(5)), 2)
        self.assertEqual(weight_height(Weight.of(1, 1)), 2)
        self.assertEqual(weight_height(Weight.of(1, 0)), 1)
        with self.assertRaises(WeightError):
            weight_height(Weight.of(-1))


class TestParity(unittest.TestCase):
    """Tests for parity decomposition and the odd/even split."""

    def test_parity_decompose(self):
        """Test mu = 2 nu + lambda with lambda in P^+(1)."""
        nu, lam = parity_decompose(Weight.of(3, 0, 2, 5))
        self.assertEqual(nu, Weight.of(1, 0, 1, 2))
        self.assertEqual(lam, Weight.of(1, 0, 0, 1))
        self.assertEqual(nu * 2 + lam, Weight.of(3, 0, 2, 5))

    def test_parity_rejects_non_dominant(self):
        """Test a negative coordinate is rejected."""
        with self.assertRaises(WeightError):
            parity_decompose(Weight.of(-1, 2))

    def test_odd_even_split(self):
        """Test alternating support nodes go to the odd and even parts."""
        odd, even = odd_even_split(Weight.of(1, 0, 1, 1, 0, 1))
        self.assertEqual(odd, Weight.of(1, 0, 0, 1, 0, 0))
        self.assertEqual(even, Weight.of(0, 0, 1, 0, 0, 1))

    def test_odd_even_split_edges(self):
        """Test zero and single-node weights."""
        self.assertEqual(odd_even_split(Weight.zero(3)), (Weight.zero(3), Weight.zero(3)))
        self.assertEqual(odd_even_split(Weight.of(0, 1)), (Weight.of(0, 1), Weight.zero(2)))
        self.assertFalse(is_in_P1(Weight.of(2, 0)))
        with self.assertRaises(WeightError):
            odd_even_split(Weight.of(2, 0))


class TestWeylGroup(unittest.TestCase):
    """Tests for reflections, orbits and the Weyl dimension formula."""

    def test_reflection_is_involution(self):
        """Test s_i s_i = 1."""
        lam = Weight.of(2, -1, 3)
        for i in range(1, 4):
            self.assertEqual(weyl_reflect(weyl_reflect(lam, i), i), lam)

    def test_longest_element(self):
        """Test w_0 omega_1 = -omega_n and w_0 of a dominant weight is antidominant."""
        self.assertEqual(longest_element(Weight.of(1, 0, 0)), Weight.of(0, 0, -1))
        self.assertEqual(dominant_conjugate(longest_element(Weight.of(2, 1)))[0], Weight.of(2, 1))

    def test_dominant_conjugate_word(self):
        """Test the recorded reflections reproduce the dominant conjugate."""
        lam = Weight.of(-2, 1, -1)
        dominant, word = dominant_conjugate(lam)
        self.assertTrue(dominant.is_dominant())
        current = lam
        for i in word:
            current = weyl_reflect(current, i)
        self.assertEqual(current, dominant)

    def test_orbit_sizes(self):
        """Test |W omega_1| = n+1 and a regular orbit has (n+1)! elements."""
        self.assertEqual(len(weyl_orbit(Weight.of(1, 0, 0))), 4)
        self.assertEqual(len(weyl_orbit(Weight.of(1, 1, 1))), 24)
        self.assertEqual(len(weyl_orbit(Weight.zero(2))), 1)

    def test_dominant_weights_below(self):
        """Test dominant weights below 2 omega_1 + omega_2 for sl_3."""
        below = dominant_weights_below(Weight.of(2, 1))
        self.assertEqual(below[0], Weight.of(2, 1))
        self.assertEqual(set(below), {Weight.of(2, 1), Weight.of(0, 2), Weight.of(1, 0)})

    def test_weyl_dimension(self):
        """Test a few classical dimensions."""
        self.assertEqual(weyl_dimension(Weight.of(1, 1)), 8)
        self.assertEqual(weyl_dimension(Weight.of(4)), 5)
        self.assertEqual(weyl_dimension(Weight.of(0, 1, 0)), 6)
        self.assertEqual(weyl_dimension(Weight.zero(5)), 1)


if __name__ == "__main__":
    unittest.main(verbosity=2)
