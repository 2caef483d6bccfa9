"""Gadget conformance checks against their oracles and bounds."""
# File: verify/management/commands/gadgets.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

import inspect
import logging

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import BoundViolation, SgcnnError
from verify.checks import CHECKS, HEADERS, load_suites, run_checks
from verify.tables import emit_table

logger = logging.getLogger('sgcnn.verify')

# option dest -> check keyword
PARAM_OPTIONS = {"U": "U", "M": "M", "L": "L", "k": "k", "l": "l", "n": "n"}


class Command(BaseCommand):
    help = "Run a gadget check over explicit parameters or its default suite; exit 1 on any violated bound"

    def add_arguments(self, parser):
        parser.add_argument("--check", required=True, choices=sorted(CHECKS))
        parser.add_argument("--U", dest="U", type=int)
        parser.add_argument("--M", dest="M", type=float)
        parser.add_argument("--L", dest="L", type=int, help="batch width for --check ru")
        parser.add_argument("--k", type=int)
        parser.add_argument("--l", type=int)
        parser.add_argument("--n", type=int)
        parser.add_argument("--s", type=int)
        parser.add_argument("--out", default="", help="CSV path (stdout when omitted)")
        parser.add_argument("--file", "-f", default="", help="suite YAML (default: config/fixtures/gadget_suites.yaml)")

    def _cases(self, name, opts):
        accepted = inspect.signature(CHECKS[name]).parameters
        given = {key: opts[dest] for dest, key in PARAM_OPTIONS.items()
                 if opts.get(dest) is not None and key in accepted}
        if not given:
            cases = load_suites(opts["file"]).get(name) or []
            if not cases:
                raise CommandError(f"No suite for '{name}' and no parameters given", returncode=2)
            return cases
        missing = [key for key, p in accepted.items()
                   if p.default is inspect.Parameter.empty and key not in given]
        if missing:
            raise CommandError(f"--check {name} needs {', '.join('--' + m for m in missing)}", returncode=2)
        return [given]

    def handle(self, *args, **opts):
        name = opts["check"]
        try:
            rows = run_checks(name, self._cases(name, opts), opts["s"])
        except SgcnnError as exc:
            raise CommandError(str(exc), returncode=exc.returncode) from exc
        except ValueError as exc:
            raise CommandError(str(exc), returncode=2) from exc

        emit_table(self, HEADERS, rows, opts["out"])
        failed = [row for row in rows if not row.ok]
        if failed:
            for row in failed:
                logger.error(f"{name} {row.params} violated: measured={row.measured!r} bound={row.bound!r} "
                             f"deviation={row.deviation!r}")
            raise CommandError(f"{len(failed)} of {len(rows)} {name} checks violated their bounds",
                               returncode=BoundViolation.returncode)
        self.stdout.write(self.style.SUCCESS(f"✓ {len(rows)} {name} checks passed"))
