"""Synthesize the CNN for I_n f and export it with its report."""
# File: verify/management/commands/compile.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

import json
import math

from django.core.management.base import BaseCommand, CommandError

from cnn_core.serialization import save_network
from core.exceptions import BoundViolation, SgcnnError
from sparse_grid.korobov import get_test_function
from synthesis.pipeline import save_report, synthesize

P_CHOICES = {"1": 1.0, "2": 2.0, "inf": math.inf}


class Command(BaseCommand):
    help = "Build the deep CNN for a sparse-grid interpolant; writes <export> and <export>.report.json"

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, required=True)
        parser.add_argument("--m", type=int, required=True)
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--s", type=int, default=2)
        parser.add_argument("--f", default="sinprod", help="registered test function")
        parser.add_argument("--p", choices=sorted(P_CHOICES), default="inf")
        parser.add_argument("--export", required=True, help="network JSON path")

    def handle(self, *args, **opts):
        try:
            f = get_test_function(opts["f"], opts["d"])
            net, report = synthesize(f, opts["n"], opts["m"], opts["d"], P_CHOICES[opts["p"]], opts["s"])
            net_path = save_network(net, opts["export"])
            report_file = save_report(report, opts["export"])
        except SgcnnError as exc:
            raise CommandError(str(exc), returncode=exc.returncode) from exc
        except ValueError as exc:
            raise CommandError(str(exc), returncode=2) from exc
        except OSError as exc:
            raise CommandError(f"Cannot write {opts['export']}: {exc}", returncode=2) from exc

        self.stdout.write(f"N={report.N} U={report.U} depth={report.depth} (bound {report.depth_bound:.6g}) "
                          f"width={report.width} mode={report.mode}")
        self.stdout.write(json.dumps(report.errors))
        self.stdout.write(self.style.SUCCESS(f"Wrote {net_path} and {report_file}"))
        if not report.holds:
            failed = [name for name, ok in report.checks.items() if not ok]
            raise CommandError(f"Report checks failed: {', '.join(failed)}",
                               returncode=BoundViolation.returncode)
