"""Evaluate an exported network at one point."""
# File: verify/management/commands/eval.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

import numpy as np
from django.core.management.base import BaseCommand, CommandError

from cnn_core.ops import network_eval, payload
from cnn_core.serialization import load_network
from core.exceptions import SgcnnError
from core.utils.formatting import format_float
from synthesis.pipeline import synthesized_eval


def parse_point(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",") if v.strip()], dtype=float)
    except ValueError as exc:
        raise CommandError(f"--point must be comma-separated floats, got '{text}'", returncode=2) from exc


class Command(BaseCommand):
    help = "Print f_L(point) for a network JSON (the payload when it has no output weights)"

    def add_arguments(self, parser):
        parser.add_argument("--net", required=True, help="network JSON path")
        parser.add_argument("--point", required=True, help="comma-separated coordinates")

    def handle(self, *args, **opts):
        point = parse_point(opts["point"])
        try:
            net = load_network(opts["net"])
            if net.meta.get("builder") == "synthesis":
                value = synthesized_eval(net, point[None, :])[0]
            elif net.output_weights is not None:
                value = network_eval(net, point)
            else:
                value = payload(net, point)
        except SgcnnError as exc:
            raise CommandError(str(exc), returncode=exc.returncode) from exc

        if np.ndim(value):
            self.stdout.write(",".join(format_float(v) for v in value))
        else:
            self.stdout.write(format_float(value))
