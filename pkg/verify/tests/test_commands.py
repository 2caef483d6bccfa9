# File: verify/tests/test_commands.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

import json
import os
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from cnn_core.network import DeepCnn
from cnn_core.serialization import load_network, save_network
from synthesis.pipeline import synthesized_eval
from verify.checks import CHECKS, CheckRow


def run(*args, **opts):
    out = StringIO()
    call_command(*args, stdout=out, **opts)
    return out.getvalue()


class RatesCommandTests(SimpleTestCase):
    """`rates` writes the error table."""

    def test_csv_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "rates.csv")
            run("rates", d=1, m=2, n_max=3, f="sinprod", out=path)
            lines = Path(path).read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], "n,N,depth,width,error_p,ratio,fitted_order")
        self.assertEqual(len(lines), 4)
        self.assertEqual(lines[1].split(",")[5], "nan")

    def test_byte_reproducible(self):
        """Same flags give the same bytes"""
        first = run("rates", d=1, m=2, n_max=3, f="bubble", p="2")
        second = run("rates", d=1, m=2, n_max=3, f="bubble", p="2")
        self.assertEqual(first, second)

    def test_unknown_function(self):
        with self.assertRaises(CommandError) as ctx:
            run("rates", d=1, m=2, n_max=2, f="nosuch")
        self.assertEqual(ctx.exception.returncode, 2)


class GadgetsCommandTests(SimpleTestCase):
    """`gadgets` exit codes and tables."""

    def test_explicit_parameters(self):
        out = run("gadgets", check="ru", U=2)
        self.assertIn("check,params,depth,depth_bound,oracle_deviation,measured,bound,status", out)
        self.assertIn("pass", out)
        self.assertIn("1 ru checks passed", out)

    def test_shallow(self):
        out = run("gadgets", check="shallow", n=8, s=2)
        self.assertIn("n=8 s=2", out)

    def test_suite_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            suite = os.path.join(tmp, "suite.yaml")
            Path(suite).write_text("suites:\n  product:\n    - {M: 1.0, U: 2}\n    - {M: 2.0, U: 2}\n",
                                   encoding="utf-8")
            table = os.path.join(tmp, "product.csv")
            out = run("gadgets", check="product", file=suite, out=table)
            rows = Path(table).read_text(encoding="utf-8").splitlines()
        self.assertEqual(len(rows), 3)
        self.assertIn("2 product checks passed", out)

    def test_missing_parameters(self):
        with self.assertRaises(CommandError) as ctx:
            run("gadgets", check="elimzeros", k=2)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_violation_exits_one(self):
        """A failing row makes the command exit with 1"""
        def failing(U, L=1, s=2):
            return CheckRow("ru", f"U={U}", 1, 1, 0.0, 1.0, 0.5, False)

        with mock.patch.dict(CHECKS, {"ru": failing}):
            with self.assertRaises(CommandError) as ctx:
                run("gadgets", check="ru", U=1)
        self.assertEqual(ctx.exception.returncode, 1)


class SumLemmaCommandTests(SimpleTestCase):

    def test_passes_with_warning(self):
        out = run("sumlemma", d_max=2, n_max=3, t_max=2)
        self.assertIn("d,n,t,A,lhs,rhs,rhs_nominal,holds,nominal_holds", out)
        self.assertIn("Half-size constant", out)
        self.assertIn("Tail bound holds on all 12 rows", out)


class CompileEvalCommandTests(SimpleTestCase):
    """Export a network, then evaluate the file."""

    def test_round_trip(self):
        """compile then eval equals in-process evaluation"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "net.json")
            run("compile", d=1, m=2, n=1, s=2, f="polyprod", export=path)
            report = json.loads(Path(path + ".report.json").read_text(encoding="utf-8"))
            net = load_network(path)
            printed = float(run("eval", net=path, point="0.3").strip())
        self.assertEqual(report["mode"], "compiled")
        self.assertTrue(all(report["checks"].values()))
        self.assertEqual(printed, float(synthesized_eval(net, [[0.3]])[0]))

    def test_zero_network(self):
        net = DeepCnn.identity(3, 2)
        net = net.with_output(np.zeros(net.output_width))
        with tempfile.TemporaryDirectory() as tmp:
            path = save_network(net, os.path.join(tmp, "zero.json"))
            out = run("eval", net=str(path), point="0.1,0.5,0.9")
        self.assertEqual(out.strip(), "0")

    def test_payload_without_weights(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = save_network(DeepCnn.identity(2, 2), os.path.join(tmp, "id.json"))
            out = run("eval", net=str(path), point="0.25,0.5")
        self.assertEqual(out.strip(), "0.25,0.5")

    def test_wrong_dimension(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "net.json")
            run("compile", d=1, m=2, n=1, f="polyprod", export=path)
            with self.assertRaises(CommandError) as ctx:
                run("eval", net=path, point="0.1,0.2")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_malformed_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bad.json")
            Path(path).write_text("{not json", encoding="utf-8")
            with self.assertRaises(CommandError) as ctx:
                run("eval", net=path, point="0.5")
        self.assertEqual(ctx.exception.returncode, 2)
