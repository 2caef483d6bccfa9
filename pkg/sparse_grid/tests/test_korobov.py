# File: sparse_grid/tests/test_korobov.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import UnknownFunction
from sparse_grid.korobov import get_test_function, registered_names


class TestFunctionRegistryTests(SimpleTestCase):
    """YAML registry of tensor-product Korobov functions."""

    def test_registered_names(self):
        """sinprod, polyprod and bubble are registered"""
        self.assertEqual(registered_names(), ["bubble", "polyprod", "sinprod"])

    def test_unknown_name(self):
        """Unregistered names raise UnknownFunction"""
        with self.assertRaises(UnknownFunction):
            get_test_function("gauss", 2)

    def test_values(self):
        """Point values of the three products"""
        x = np.array([[0.5, 0.25]])
        self.assertAlmostEqual(float(get_test_function("sinprod", 2)(x)[0]), np.sin(np.pi / 4), places=15)
        self.assertAlmostEqual(float(get_test_function("polyprod", 2)(x)[0]), 0.25 * 0.1875, places=15)
        expected = 0.25 * np.exp(0.5) * 0.1875 * np.exp(0.25)
        self.assertAlmostEqual(float(get_test_function("bubble", 2)(x)[0]), expected, places=15)

    def test_boundary_zero(self):
        """All registered functions vanish on the faces of the cube"""
        for name in registered_names():
            f = get_test_function(name, 3)
            self.assertTrue(f.boundary_zero)
            self.assertLessEqual(f.boundary_violation(17), 1e-15, name)

    def test_derivatives_match_finite_differences(self):
        """g^(k) agrees with a central difference of g^(k-1)"""
        x = np.linspace(0.1, 0.9, 9)
        step = 1e-5
        for name in registered_names():
            f = get_test_function(name, 1)
            for k in range(1, 5):
                lower = f.mixed_derivative((k - 1,))
                upper = f.mixed_derivative((k,))
                numeric = (lower((x + step)[:, None]) - lower((x - step)[:, None])) / (2 * step)
                np.testing.assert_allclose(upper(x[:, None]), numeric, rtol=1e-5, atol=1e-5)

    def test_polynomial_derivatives_vanish(self):
        """polyprod has zero third derivative"""
        f = get_test_function("polyprod", 2)
        X = np.random.default_rng(3).random((20, 2))
        self.assertTrue(np.all(f.mixed_derivative((3, 0))(X) == 0.0))

    def test_mixed_derivative_is_tensor(self):
        """D^(1,2) f = g'(x) g''(y)"""
        f = get_test_function("sinprod", 2)
        X = np.array([[0.3, 0.7]])
        expected = np.pi * np.cos(0.3 * np.pi) * -np.pi ** 2 * np.sin(0.7 * np.pi)
        self.assertAlmostEqual(float(f.mixed_derivative((1, 2))(X)[0]), expected, places=12)
