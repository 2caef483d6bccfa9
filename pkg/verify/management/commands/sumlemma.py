"""Exact level-sum tail bound over a (d, n, t) grid."""
# File: verify/management/commands/sumlemma.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import BoundViolation
from verify.sumlemma import HEADERS, sumlemma_table
from verify.tables import emit_table


class Command(BaseCommand):
    help = "Check sum_{|l|_1 > n+d-1} 2^(-t|l|_1) <= 2 A(d,n) 2^(-tn-td) exactly"

    def add_arguments(self, parser):
        parser.add_argument("--d-max", type=int, default=4)
        parser.add_argument("--n-max", type=int, default=10)
        parser.add_argument("--t-max", type=int, default=3)
        parser.add_argument("--out", default="", help="CSV path (stdout when omitted)")

    def handle(self, *args, **opts):
        try:
            rows = sumlemma_table(opts["d_max"], opts["n_max"], opts["t_max"])
        except ValueError as exc:
            raise CommandError(str(exc), returncode=2) from exc
        emit_table(self, HEADERS, rows, opts["out"])

        nominal_failed = sum(not r.nominal_holds for r in rows)
        if nominal_failed:
            self.stdout.write(self.style.WARNING(
                f"Half-size constant 2^(-tn-td-1) A(d,n) fails on {nominal_failed} of {len(rows)} rows"))
        failed = sum(not r.holds for r in rows)
        if failed:
            raise CommandError(f"{failed} of {len(rows)} rows violate the tail bound",
                               returncode=BoundViolation.returncode)
        self.stdout.write(self.style.SUCCESS(f"✓ Tail bound holds on all {len(rows)} rows"))
