# File: gadget_networks/tests/test_oracles.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

import numpy as np
from django.test import SimpleTestCase

from core.utils.samplers import rng
from gadget_networks.oracles import (
    approx_product_eval,
    chain_bounds,
    product_chain,
    product_chain_error,
    ru_eval,
    ru_ledger,
    sawtooth_eval,
)


class SawtoothTests(SimpleTestCase):

    def test_hat_values(self):
        x = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
        self.assertEqual(sawtooth_eval(1, x).tolist(), [0.0, 0.5, 1.0, 0.5, 0.0])
        self.assertEqual(sawtooth_eval(2, x).tolist(), [0.0, 1.0, 0.0, 1.0, 0.0])

    def test_order_zero_is_identity(self):
        x = rng(1).random(20)
        np.testing.assert_array_equal(sawtooth_eval(0, x), x)

    def test_negative_order_rejected(self):
        with self.assertRaises(ValueError):
            sawtooth_eval(-1, 0.5)


class SquareApproxTests(SimpleTestCase):
    """R_U as an interpolant of x^2."""

    def test_forms_agree(self):
        """Sawtooth sum and chord form coincide on [0, 1]"""
        x = np.linspace(0.0, 1.0, 2001)
        for U in range(1, 9):
            np.testing.assert_allclose(ru_eval(U, x), ru_eval(U, x, form="interpolant"), atol=1e-14)

    def test_error_band(self):
        """0 <= R_U(x) - x^2 <= 2^(-2U-2), attained at segment midpoints"""
        x = np.linspace(0.0, 1.0, 2**12 + 1)
        for U in range(1, 9):
            gap = ru_eval(U, x) - x**2
            self.assertGreaterEqual(gap.min(), -1e-15)
            self.assertLessEqual(gap.max(), 2.0 ** (-2 * U - 2) + 1e-15)
            self.assertAlmostEqual(gap.max(), 2.0 ** (-2 * U - 2), places=14)

    def test_exact_on_grid(self):
        """Dyadic nodes of step 2^-U are reproduced exactly"""
        x = np.arange(2**4 + 1) / 2**4
        np.testing.assert_allclose(ru_eval(4, x), x**2, atol=1e-15)

    def test_unknown_form(self):
        with self.assertRaises(ValueError):
            ru_eval(2, 0.5, form="chebyshev")


class ApproxProductTests(SimpleTestCase):

    def test_bound_m1_u4(self):
        """|x~ - xy| <= 2^-8 for M=1, U=4"""
        generator = rng(2)
        x, y = generator.random(20000), generator.random(20000)
        error = np.abs(approx_product_eval(1.0, 4, x, y) - x * y)
        self.assertLessEqual(error.max(), 2.0**-8)

    def test_scaled_bound(self):
        """|x~ - xy| <= M^2 / 2^(2U) on [0, M]^2"""
        generator = rng(3)
        M, U = 3.0, 5
        x, y = M * generator.random(20000), M * generator.random(20000)
        error = np.abs(approx_product_eval(M, U, x, y) - x * y)
        self.assertLessEqual(error.max(), M**2 / 4.0**U)

    def test_corner(self):
        self.assertAlmostEqual(float(approx_product_eval(1.0, 3, 1.0, 1.0)), 1.0, places=14)


class ProductChainTests(SimpleTestCase):

    def test_chain_bounds(self):
        self.assertEqual(chain_bounds(2.0, 3), [2.0, 4.0, 16.0])
        self.assertEqual(chain_bounds(1.0, 3), [1.0, 1.0, 1.0])

    def test_first_partial_is_product_gadget(self):
        Y = rng(4).random((50, 3))
        g2 = product_chain(1.0, 5, Y)[0]
        np.testing.assert_allclose(g2, approx_product_eval(1.0, 5, Y[:, 0], Y[:, 1]))

    def test_induction_bound(self):
        """|g_j - y_1...y_j| <= M^(2^(j-1)) 2^(j-2) / 2^(2U) along a chain of four"""
        Y = rng(5).random((5000, 4))
        rows = product_chain_error(1.0, 6, Y)
        self.assertEqual([row.j for row in rows], [2, 3, 4])
        self.assertTrue(all(row.holds for row in rows))

    def test_induction_bound_below_one(self):
        """M=0.5: (j-1) M^2 / 2^(2U) holds along a chain of four"""
        Y = 0.1 + 0.4 * rng(6).random((5000, 4))
        rows = product_chain_error(0.5, 6, Y)
        self.assertEqual([row.bound for row in rows], [k * 0.25 / 4.0**6 for k in (1, 2, 3)])
        self.assertTrue(all(row.holds for row in rows))


class LedgerTests(SimpleTestCase):

    def test_final_entry_is_ru(self):
        """C_U = R_U(y)"""
        y = rng(6).random(100)
        entries = ru_ledger(5, y)
        self.assertEqual(len(entries), 6)
        np.testing.assert_allclose(entries[-1].C, ru_eval(5, y), atol=1e-15)

    def test_first_entry(self):
        y = np.array([0.3, 0.9])
        entry = ru_ledger(2, y)[0]
        np.testing.assert_array_equal(entry.S, y)
        np.testing.assert_array_equal(entry.C, y)
