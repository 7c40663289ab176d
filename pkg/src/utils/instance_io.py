"""
Instance and certificate JSON files.

Writers emit canonical JSON (fixed key order, compact separators, trailing
newline) so equal content is equal bytes.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict

from src.algorithms.cover_engine import CoverCertificate, VerificationReport
from src.frontends.instance_frontends import (
    BoxInstance, ChordInstance, ExplicitInstance, RectangleInstance,
)
from src.utils.config import FORMAT_VERSION
from src.utils.errors import InstanceError

# Setup logging
logger = logging.getLogger(__name__)

INSTANCE_TYPES = ("rectangles", "boxes", "chords", "explicit")

Instance = RectangleInstance | BoxInstance | ChordInstance | ExplicitInstance


def _int_rows(value: Any, what: str, width: int | None = None) -> list:
    if not isinstance(value, list):
        raise InstanceError(f"{what} must be a list")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in row):
            raise InstanceError(f"{what}[{i}] must be a list of integers")
        if width is not None and len(row) != width:
            raise InstanceError(f"{what}[{i}] must have {width} entries, got {len(row)}")
        rows.append(tuple(row))
    return rows


def instance_from_dict(data: Dict[str, Any]) -> Instance:
    """Validate the instance schema and build the matching frontend instance"""
    if not isinstance(data, dict):
        raise InstanceError("instance must be a JSON object")
    if data.get("v") != FORMAT_VERSION:
        raise InstanceError(f"unsupported instance version {data.get('v')!r}, expected {FORMAT_VERSION}")
    kind = data.get("type")
    try:
        if kind == "rectangles":
            return RectangleInstance(tuple(_int_rows(data.get("rects"), "rects", 4)))
        if kind == "boxes":
            dim = data.get("dim")
            if not isinstance(dim, int) or isinstance(dim, bool):
                raise InstanceError("dim must be an integer")
            return BoxInstance(dim, tuple(_int_rows(data.get("boxes"), "boxes", 2 * dim if dim > 0 else None)))
        if kind == "chords":
            return ChordInstance(tuple(_int_rows(data.get("chords"), "chords", 2)))
        if kind == "explicit":
            n = data.get("n")
            if not isinstance(n, int) or isinstance(n, bool):
                raise InstanceError("n must be an integer")
            layers_raw = data.get("layers")
            if not isinstance(layers_raw, list):
                raise InstanceError("layers must be a list")
            layers = tuple(tuple(_int_rows(layer, f"layers[{k}]", 2)) for k, layer in enumerate(layers_raw))
            poset = data.get("poset")
            g_edges = data.get("g_edges")
            return ExplicitInstance(
                n, layers,
                poset=None if poset is None else tuple(_int_rows(poset, "poset", 2)),
                g_edges=None if g_edges is None else tuple(_int_rows(g_edges, "g_edges", 2)),
            )
    except (TypeError, ValueError) as e:
        if isinstance(e, InstanceError):
            raise
        raise InstanceError(f"malformed {kind} instance: {e}") from e
    raise InstanceError(f"unknown instance type {kind!r}, expected one of {', '.join(INSTANCE_TYPES)}")


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    if isinstance(instance, RectangleInstance):
        return {"v": FORMAT_VERSION, "type": "rectangles", "rects": [list(r) for r in instance.rects]}
    if isinstance(instance, BoxInstance):
        return {"v": FORMAT_VERSION, "type": "boxes", "dim": instance.dim, "boxes": [list(b) for b in instance.boxes]}
    if isinstance(instance, ChordInstance):
        return {"v": FORMAT_VERSION, "type": "chords", "chords": [list(c) for c in instance.chords]}
    if isinstance(instance, ExplicitInstance):
        return {
            "v": FORMAT_VERSION,
            "type": "explicit",
            "n": instance.n,
            "layers": [[list(iv) for iv in layer] for layer in instance.layers],
            "poset": None if instance.poset is None else [list(p) for p in instance.poset],
            "g_edges": None if instance.g_edges is None else [list(e) for e in instance.g_edges],
        }
    raise InstanceError(f"unknown instance type {type(instance).__name__}")


def dumps_canonical(data: Dict[str, Any]) -> str:
    return json.dumps(data, separators=(",", ":"), ensure_ascii=True) + "\n"


def read_json(path: str | Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InstanceError(f"{path}: invalid JSON ({e})") from e
    except OSError as e:
        raise InstanceError(f"{path}: cannot read ({e.strerror})") from e


def write_text(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InstanceError(f"{path}: cannot write ({e.strerror})") from e


def load_instance(path: str | Path) -> Instance:
    return instance_from_dict(read_json(path))


def save_instance(instance: Instance, path: str | Path) -> None:
    write_text(path, dumps_canonical(instance_to_dict(instance)))
    logger.info("instance written to %s", path)


def certificate_to_dict(cert: CoverCertificate, report: VerificationReport | None = None) -> Dict[str, Any]:
    data = cert.to_dict()
    if report is not None:
        data["checks"] = dict(report.checks)
    return data


def save_certificate(cert: CoverCertificate, path: str | Path, report: VerificationReport | None = None) -> None:
    write_text(path, dumps_canonical(certificate_to_dict(cert, report)))
    logger.info("certificate written to %s", path)


def load_certificate(path: str | Path) -> CoverCertificate:
    data = read_json(path)
    if not isinstance(data, dict) or data.get("v") != FORMAT_VERSION:
        raise InstanceError(f"{path}: not a version {FORMAT_VERSION} certificate")
    return CoverCertificate.from_dict(data)
