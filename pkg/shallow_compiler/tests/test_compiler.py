# File: shallow_compiler/tests/test_compiler.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from fractions import Fraction
from functools import reduce

import numpy as np
from django.test import SimpleTestCase, override_settings

from cnn_core.network import ConvLayer, DeepCnn, Filter
from cnn_core.ops import embed, forward, payload, to_exact
from core.exceptions import BudgetExceeded, DimensionMismatch
from core.utils.samplers import rng
from shallow_compiler.compiler import (
    WideLayerSpec,
    _split_roots,
    compile_shallow,
    depth_bound,
    factor_filter,
    interval_bounds,
    shift_for,
    wide_layer_oracle,
)


def reconstruct(factors, length):
    product = reduce(np.convolve, [f.taps for f in factors])
    size = max(len(product), length)
    return np.pad(product, (0, size - len(product)))[:size]


class FactorFilterTests(SimpleTestCase):
    """Splitting long filters into length-s factors."""

    def test_short_filter_unchanged(self):
        """(1,2,1) with s=2 is a single factor"""
        factors = factor_filter([1, 2, 1], 2)
        self.assertEqual(len(factors), 1)
        self.assertEqual(factors[0].taps.tolist(), [1.0, 2.0, 1.0])

    def test_cube_minus_one(self):
        """1 - z^3 splits into a linear and a quadratic factor"""
        factors = factor_filter([1, 0, 0, -1], 2)
        self.assertEqual(len(factors), 2)
        np.testing.assert_allclose(reconstruct(factors, 4)[:4], [1, 0, 0, -1], atol=1e-10)
        self.assertLessEqual(np.max(np.abs(reconstruct(factors, 4)[4:])), 1e-10)

    def test_random_degree_sixteen(self):
        """Random degree-16 filter with s=3 gives at most 8 factors"""
        w = rng(20).normal(size=17)
        factors = factor_filter(w, 3)
        self.assertLessEqual(len(factors), 8)
        error = np.max(np.abs(reconstruct(factors, 17)[:17] - w)) / np.max(np.abs(w))
        self.assertLessEqual(error, 1e-8)

    def test_factor_count_bound(self):
        """Count never exceeds ceil(n/(s-1))"""
        generator = rng(21)
        for s in (2, 3, 4):
            for n in (3, 7, 12, 20):
                factors = factor_filter(generator.normal(size=n + 1), s)
                self.assertLessEqual(len(factors), depth_bound(n, s))
                self.assertTrue(all(len(f.taps) == s + 1 for f in factors))

    def test_leading_zero_taps(self):
        """Leading zeros become factors z"""
        w = np.array([0.0, 0.0, 1.0, 0.5, 0.0, 2.0])
        factors = factor_filter(w, 2)
        np.testing.assert_allclose(reconstruct(factors, 6)[:6], w, atol=1e-12)

    def test_strided_filter(self):
        """1 + z^12 factors through u = z^12 and stays exact to 1e-12"""
        w = np.zeros(13)
        w[0] = w[12] = 1.0
        factors = factor_filter(w, 2)
        self.assertEqual(len(factors), 6)
        np.testing.assert_allclose(reconstruct(factors, 13)[:13], w, atol=1e-12)

    def test_repeated_root_stride(self):
        """(1 + z^4)^2 reconstructs within tolerance"""
        w = np.zeros(9)
        w[0], w[4], w[8] = 1.0, 2.0, 1.0
        factors = factor_filter(w, 3)
        error = np.max(np.abs(reconstruct(factors, 9)[:9] - w)) / 2.0
        self.assertLessEqual(error, 1e-8)

    def test_double_root_held_together(self):
        """(1 + u)^2 keeps its double root at -1 instead of two nearby roots"""
        reals, pairs = _split_roots(np.array([1.0, 2.0, 1.0]), 2)
        self.assertEqual((len(reals), pairs), (2, []))
        for root in reals:
            self.assertAlmostEqual(root, -1.0, places=12)

    def test_squared_stride_filter_tight(self):
        """(1 + z^8)^2 with s=2 reconstructs to 1e-12"""
        w = np.zeros(17)
        w[0], w[8], w[16] = 1.0, 2.0, 1.0
        factors = factor_filter(w, 2)
        self.assertLessEqual(len(factors), depth_bound(16, 2))
        product = reconstruct(factors, 17)
        np.testing.assert_allclose(product[:17], w, atol=1e-12)
        self.assertLessEqual(np.max(np.abs(product[17:]), initial=0.0), 1e-12)

    def test_sparse_long_stride(self):
        """1 + z^36 + z^84 (stride 12) with s=2 and s=3"""
        w = np.zeros(85)
        w[0] = w[36] = w[84] = 1.0
        for s in (2, 3):
            factors = factor_filter(w, s)
            self.assertLessEqual(len(factors), depth_bound(84, s))
            product = reconstruct(factors, 85)
            np.testing.assert_allclose(product[:85], w, atol=1e-10)
            self.assertLessEqual(np.max(np.abs(product[85:]), initial=0.0), 1e-10)

    @override_settings(SGCNN_MAX_FILTER_DEGREE=8)
    def test_degree_budget(self):
        """Reduced degree above the budget is rejected"""
        with self.assertRaises(BudgetExceeded):
            factor_filter(rng(22).normal(size=12), 2)

    def test_rejects_short_filter_length(self):
        """s must be at least 2"""
        with self.assertRaises(ValueError):
            factor_filter([1, 1, 1], 1)


class IntervalBoundsTests(SimpleTestCase):
    """Sound per-entry enclosures."""

    def test_zero_network(self):
        """Zero filters and biases give [0, 0]"""
        layers = [ConvLayer(Filter(np.zeros(3)), np.zeros(2 + 2 * k)) for k in range(1, 3)]
        lo, hi = interval_bounds(DeepCnn(2, 2, layers), 1.0)
        self.assertTrue(np.all(lo == 0.0) and np.all(hi == 0.0))

    def test_single_tap(self):
        """w_0 = 1 over [0,1] gives [0,1] on the copied lanes"""
        net = DeepCnn(3, 2, [ConvLayer(Filter(np.array([1.0, 0.0, 0.0])), np.zeros(5))])
        lo, hi = interval_bounds(net, 1.0)
        np.testing.assert_allclose(lo, 0.0)
        np.testing.assert_allclose(hi[:3], 1.0, rtol=1e-14)
        self.assertLessEqual(np.max(hi[3:]), 1e-15)

    def test_difference_filter_sampling(self):
        """w = (1,-1) on [0,1]^2: samples stay inside the enclosure"""
        net = DeepCnn(2, 2, [ConvLayer(Filter(np.array([1.0, -1.0, 0.0])), np.zeros(4))])
        lo, hi = interval_bounds(net, 1.0)
        H = forward(net, rng(23).random((10000, 2)))
        self.assertTrue(np.all(H >= lo) and np.all(H <= hi))

    def test_random_deep_network_sampling(self):
        """10^4 samples never exit the bounds of a random 6-layer network"""
        generator = rng(24)
        layers = [ConvLayer(Filter(generator.normal(size=3)), generator.normal(size=4 + 2 * k))
                  for k in range(1, 7)]
        net = DeepCnn(4, 2, layers)
        lo, hi = interval_bounds(net, 2.0)
        H = forward(net, 2.0 * generator.random((10000, 4)))
        self.assertTrue(np.all(H >= lo) and np.all(H <= hi))

    def test_shift_for(self):
        """Shifts are powers of two strictly above the deficit"""
        self.assertEqual(shift_for(np.array([-3.0, 0.0, 2.0, -4.0])).tolist(), [4.0, 0.0, 0.0, 8.0])


class CompileShallowTests(SimpleTestCase):
    """Oracle equivalence and depth of compiled wide layers."""

    def assert_matches_oracle(self, spec, net, samples=200, seed=0):
        X = spec.upper * rng(seed).random((samples, spec.input_dim))
        expected = wide_layer_oracle(spec, X)
        got = payload(net, X)
        scale = max(1.0, float(np.max(np.abs(expected))))
        np.testing.assert_allclose(got, expected, rtol=1e-8, atol=1e-8 * scale)

    def test_depth_bound_example(self):
        """n=5, s=3 compiles to depth <= 3"""
        spec = WideLayerSpec(rng(25).normal(size=6), rng(26).normal(size=9), 4)
        net = compile_shallow(spec, 3)
        self.assertLessEqual(net.depth, 3)
        self.assertEqual(net.meta["depth_bound_claimed"], 3)
        self.assert_matches_oracle(spec, net)

    def test_identity_spec(self):
        """w = e_0, b = 0 copies the input"""
        w = np.zeros(6)
        w[0] = 1.0
        spec = WideLayerSpec(w, np.zeros(9), 4)
        net = compile_shallow(spec, 2)
        x = np.array([0.25, 1.0, 0.0, 0.5])
        self.assertEqual(payload(net, x).tolist(), [0.25, 1.0, 0.0, 0.5, 0, 0, 0, 0, 0])
        self.assertTrue(np.all(forward(net, x)[9:] == 0.0))

    def test_random_spec_n8_s2(self):
        """n=8, s=2, M=1 matches sigma(T_w x + b) on 200 samples"""
        spec = WideLayerSpec(rng(27).normal(size=9), rng(28).normal(size=13), 5, input_bound=1.0)
        net = compile_shallow(spec, 2)
        self.assertLessEqual(net.depth, 8)
        self.assert_matches_oracle(spec, net, seed=29)

    def test_fifty_random_layers(self):
        """50 seeded wide layers with n <= 32 and s in {2,3}"""
        generator = rng(30)
        for case in range(50):
            s = 2 + case % 2
            n = int(generator.integers(3, 33))
            n0 = int(generator.integers(1, 9))
            spec = WideLayerSpec(generator.normal(size=n + 1), generator.normal(size=n0 + n), n0)
            net = compile_shallow(spec, s)
            self.assertLessEqual(net.depth, depth_bound(n, s))
            self.assert_matches_oracle(spec, net, seed=100 + case)

    def test_exact_padding_invariance(self):
        """Rational evaluation is unchanged by zero padding and matches the oracle"""
        spec = WideLayerSpec(rng(27).normal(size=9), rng(28).normal(size=13), 5, input_bound=1.0)
        exact = to_exact(compile_shallow(spec, 2))
        x = np.array([Fraction(v, 8) for v in (1, 7, 0, 4, 3)], dtype=object)
        plain = payload(exact, x)
        zeros = np.array([Fraction(0)] * 3, dtype=object)
        padded = payload(embed(exact, 3, 3), np.concatenate([zeros, x, zeros]))
        self.assertEqual(list(padded), list(plain))
        expected = wide_layer_oracle(spec, np.array([float(v) for v in x]))
        np.testing.assert_allclose([float(v) for v in plain], expected, rtol=1e-8, atol=1e-8)

    def test_per_lane_bounds(self):
        """Lanes with a zero upper bound get no shift"""
        w = np.array([1.0, -2.0, 0.0, 1.0, -1.0])
        upper = np.array([1.0, 0.0, 1.0])
        spec = WideLayerSpec(w, np.zeros(7), 3, input_upper=upper)
        net = compile_shallow(spec, 2)
        self.assert_matches_oracle(spec, net, seed=31)

    def test_payload_width(self):
        """Payload is declared at offset 0 with length n0 + n"""
        spec = WideLayerSpec(rng(32).normal(size=8), np.zeros(10), 3)
        net = compile_shallow(spec, 3)
        self.assertEqual(net.meta["payload_offset"], 0)
        self.assertEqual(net.meta["payload_length"], 10)
        self.assertEqual(net.meta["builder"], "shallow_compiler")

    def test_bias_length_checked(self):
        """WideLayerSpec validates |b| = n0 + n"""
        with self.assertRaises(DimensionMismatch):
            WideLayerSpec(np.ones(4), np.zeros(5), 3)
