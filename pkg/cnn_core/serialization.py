# File: cnn_core/serialization.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
JSON form: {s, input_dim, layers: [{w, b}], c, meta}.

Floats are written with repr precision so a save/load round trip is exact.
"""

from __future__ import annotations
import json
import logging
from pathlib import Path

import numpy as np

from core.exceptions import DimensionMismatch, MalformedNetwork
from .network import ConvLayer, DeepCnn, Filter

logger = logging.getLogger('sgcnn.cnn')


def _floats(values):
    return [float(v) for v in values]


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


def network_to_dict(net: DeepCnn) -> dict:
    return {
        "s": net.s,
        "input_dim": net.input_dim,
        "layers": [{"w": _floats(l.filter.taps), "b": _floats(l.bias)} for l in net.layers],
        "c": None if net.output_weights is None else _floats(net.output_weights),
        "meta": _jsonable(net.meta),
    }


def network_from_dict(data: dict) -> DeepCnn:
    """Rebuild and validate every width invariant."""
    try:
        s = int(data["s"])
        input_dim = int(data["input_dim"])
        raw_layers = data.get("layers", [])
        layers = []
        for depth, raw in enumerate(raw_layers, start=1):
            taps = np.asarray(raw["w"], dtype=float)
            if len(taps) != s + 1:
                raise MalformedNetwork(f"layer {depth}: {len(taps)} taps, expected s+1={s + 1}")
            bias = np.asarray(raw["b"], dtype=float)
            expected = input_dim + depth * s
            if len(bias) != expected:
                raise MalformedNetwork(f"layer {depth}: bias length {len(bias)}, expected {expected}")
            layers.append(ConvLayer(Filter(taps), bias))
        c = data.get("c")
        weights = None if c is None else np.asarray(c, dtype=float)
        return DeepCnn(input_dim, s, layers, weights, dict(data.get("meta") or {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedNetwork(f"invalid network document: {exc}") from exc
    except DimensionMismatch as exc:
        raise MalformedNetwork(str(exc)) from exc


def save_network(net: DeepCnn, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(network_to_dict(net)), encoding="utf-8")
    logger.info(f"Saved network depth={net.depth} width={net.output_width} to {path}")
    return path


def load_network(path) -> DeepCnn:
    path = Path(path)
    if not path.exists():
        raise MalformedNetwork(f"network file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedNetwork(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedNetwork(f"{path} does not hold a network object")
    return network_from_dict(data)
