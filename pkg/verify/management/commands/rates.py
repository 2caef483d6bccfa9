"""Interpolation error table of I_n f for n = 1..n_max."""
# File: verify/management/commands/rates.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

import math

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import SgcnnError
from verify.rates import HEADERS, rate_table
from verify.tables import emit_table

P_CHOICES = {"1": 1.0, "2": 2.0, "inf": math.inf}


class Command(BaseCommand):
    help = "Tabulate ||f - I_n f||_p, term counts, network sizes and fitted orders"

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, required=True)
        parser.add_argument("--m", type=int, required=True, help="basis degree; 1 selects the hat basis")
        parser.add_argument("--n-max", type=int, required=True)
        parser.add_argument("--p", choices=sorted(P_CHOICES), default="inf")
        parser.add_argument("--f", default="sinprod", help="registered test function")
        parser.add_argument("--s", type=int, default=2, help="filter length for the depth/width columns")
        parser.add_argument("--out", default="", help="CSV path (stdout when omitted)")

    def handle(self, *args, **opts):
        try:
            rows = rate_table(opts["f"], opts["d"], opts["m"], opts["n_max"], P_CHOICES[opts["p"]], opts["s"])
        except SgcnnError as exc:
            raise CommandError(str(exc), returncode=exc.returncode) from exc
        except ValueError as exc:
            raise CommandError(str(exc), returncode=2) from exc
        emit_table(self, HEADERS, rows, opts["out"])
        last = rows[-1]
        if opts["out"]:
            self.stdout.write(f"n={last.n} N={last.N} error={last.error:.3e} fitted_order={last.fitted_order:.3f}")
