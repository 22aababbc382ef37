"""
JSON reading and writing for the objects the command line exchanges.

A spec file names its base loop and group either by a short name
(``"fano"``, ``"klein"``, ``"S3"``, ...) or by a full table object, and gives
either weights ``{"h", "diag"}`` or an explicit factor table ``f``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import tables
from .extension import ExtensionSpec, Variant, spec_from_weighted
from .steiner import SteinerTripleSystem, loop_from_sts
from .weighted import WeightedSteinerLoop


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, numpy scalars and arrays converted."""
    return json.dumps(obj, sort_keys=True, indent=1, default=_default) + "\n"


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def write(path, obj):
    text = dumps(obj)
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text)
    return text


def read(path):
    """Parsed JSON; a command-line output envelope is unwrapped to its result."""
    d = json.loads(Path(path).read_text())
    if isinstance(d, dict) and set(d) == {"run", "result"}:
        return d["result"]
    return d


def load_loop(d) -> tables.LoopTable:
    """A Steiner loop or group given by name, STS object or table object."""
    from .harness import STEINER_LOOPS, group_by_name
    if isinstance(d, str):
        if d in STEINER_LOOPS:
            return STEINER_LOOPS[d]()
        return group_by_name(d)
    if "blocks" in d:
        return loop_from_sts(SteinerTripleSystem.from_json(d))
    return tables.from_json(d)


def load_group(d) -> tables.GroupTable:
    g = load_loop(d)
    return tables.as_group(g)


def load_weighted(d) -> WeightedSteinerLoop:
    w = d.get("weights", d)
    return WeightedSteinerLoop(load_loop(d["s"]), load_group(d["a"]), w["h"], w["diag"])


def load_spec(d) -> ExtensionSpec:
    """An ExtensionSpec from a spec object; weights win over an explicit ``f``."""
    variant = Variant(d.get("variant", "standard"))
    if "weights" in d or "h" in d:
        return spec_from_weighted(load_weighted(d), variant)
    return ExtensionSpec(load_loop(d["s"]), load_group(d["a"]), np.array(d["f"]), variant)
