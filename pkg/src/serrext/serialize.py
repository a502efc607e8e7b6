"""JSON module files.

Two shapes are accepted::

    {"ring": "Z", "relations": [[2, 0], [0, 3]]}                 # presentation
    {"ring": "Z", "relations": [], "generators": 2}              # free of rank 2
    {"ring": "Z_(2)", "atoms": [["Free", 1], ["Prufer", 2, 1]]}  # symbolic

A missing ``ring`` falls back to the caller's default.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .fpmod import FpModule, Presentation, smith_normalize
from .rings import INTEGERS, RingSpec
from .symmod import SymModule


class ModuleParseError(ValueError):
    """Malformed JSON or unknown structure (exit code 2)."""


class InvalidMatrixError(ValueError):
    """Well-formed JSON whose relation matrix is unusable (exit code 3)."""


def _ring(data: dict, default: Optional[RingSpec]) -> RingSpec:
    if "ring" not in data:
        return default or INTEGERS
    try:
        ring = RingSpec.parse(data["ring"])
    except (ValueError, TypeError) as exc:
        raise ModuleParseError(f"bad ring {data['ring']!r}: {exc}") from exc
    if default is not None and default != ring:
        raise ModuleParseError(f"file ring {ring} disagrees with --ring {default}")
    return ring


def presentation_from_json(data: dict, ring: RingSpec) -> Presentation:
    rows = data["relations"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InvalidMatrixError("relations must be a list of rows")
    for r in rows:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise InvalidMatrixError(f"non-integer entry in relation {r}")
    ngens = data.get("generators")
    if ngens is None:
        if not rows:
            raise InvalidMatrixError("empty relation list needs a 'generators' count")
        ngens = len(rows[0])
    if not isinstance(ngens, int) or ngens < 0:
        raise InvalidMatrixError(f"bad generator count {ngens!r}")
    try:
        return Presentation.from_rows(ring, rows, ngens)
    except ValueError as exc:
        raise InvalidMatrixError(str(exc)) from exc


def module_from_json(data, ring: Optional[RingSpec] = None) -> Union[FpModule, SymModule]:
    if not isinstance(data, dict):
        raise ModuleParseError("module file must hold a JSON object")
    r = _ring(data, ring)
    if "relations" in data:
        return smith_normalize(presentation_from_json(data, r))
    if "atoms" in data:
        try:
            return SymModule.from_json({**data, "ring": str(r)})
        except (ValueError, TypeError, KeyError) as exc:
            raise ModuleParseError(f"bad atom list: {exc}") from exc
    raise ModuleParseError("module file needs 'relations' or 'atoms'")


def load_module(path: Union[str, Path], ring: Optional[RingSpec] = None) -> Union[FpModule, SymModule]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ModuleParseError(f"cannot read {path}: {exc}") from exc
    return module_from_json(data, ring)


def module_to_json(m: Union[FpModule, SymModule]) -> dict:
    if isinstance(m, SymModule):
        return m.to_json()
    return {"ring": str(m.ring), "relations": m.relations(), "generators": m.ngens}


def dumps(obj) -> str:
    """Stable JSON text for reports."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
