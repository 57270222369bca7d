"""JSON file formats for fusion rings and modular data.

Fusion ring section::

    {"simples": [...], "unit": 0, "fusion": [[a, b, c, N], ...], "dual": [...]}

``fusion`` is sparse (omitted triples are zero) and ``dual`` is optional.
A modular data file adds ``name``, ``conductor``, ``twists`` and ``smat``
(an n x n array of ``{"conductor": M, "coeffs": ["p/q", ...]}``). Parsing is
strict: unknown fields are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path

from .cyclotomic import CycloNum
from .fusion_ring import FusionRing
from .modular import ModularData

RING_FIELDS = ("name", "simples", "unit", "fusion", "dual")
MODULAR_FIELDS = ("name", "conductor", "simples", "unit", "fusion", "dual", "twists", "smat")


class ParseError(ValueError):
    pass


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def ring_to_json(ring: FusionRing, name: str | None = None) -> dict:
    out: dict = {}
    if name is not None:
        out["name"] = name
    out["simples"] = list(ring.basis_names)
    out["unit"] = ring.unit_index
    n = ring.rank
    out["fusion"] = [
        [a, b, c, ring.tensor[a][b][c]]
        for a in range(n)
        for b in range(n)
        for c in range(n)
        if ring.tensor[a][b][c]
    ]
    if ring.dual is not None:
        out["dual"] = list(ring.dual)
    return out


def modular_to_json(md: ModularData) -> dict:
    ring = ring_to_json(md.ring)
    out = {"name": md.name, "conductor": md.conductor}
    out.update(ring)
    out["twists"] = list(md.twists)
    out["smat"] = [[x.to_json() for x in row] for row in md.smat]
    return out


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def ring_from_json(obj: dict) -> FusionRing:
    simples = obj.get("simples")
    if not isinstance(simples, list) or not simples or not all(isinstance(s, str) for s in simples):
        raise ParseError("field 'simples' must be a non-empty list of strings")
    if len(set(simples)) != len(simples):
        raise ParseError("field 'simples' contains duplicate names")
    n = len(simples)
    unit = obj.get("unit")
    if not _is_int(unit) or not 0 <= unit < n:
        raise ParseError(f"field 'unit' must be an index in [0, {n})")
    fusion = obj.get("fusion")
    if not isinstance(fusion, list):
        raise ParseError("field 'fusion' must be a list of [a, b, c, N] quadruples")
    tensor = [[[0] * n for _ in range(n)] for _ in range(n)]
    seen = set()
    for k, entry in enumerate(fusion):
        if not isinstance(entry, list) or len(entry) != 4 or not all(_is_int(x) for x in entry):
            raise ParseError(f"field 'fusion' entry {k} must be four integers [a, b, c, N]")
        a, b, c, mult = entry
        if not all(0 <= i < n for i in (a, b, c)):
            raise ParseError(f"field 'fusion' entry {k} has an index out of range")
        if (a, b, c) in seen:
            raise ParseError(f"field 'fusion' entry {k} repeats the triple {(a, b, c)}")
        seen.add((a, b, c))
        tensor[a][b][c] = mult
    dual = obj.get("dual")
    if dual is not None:
        if not isinstance(dual, list) or len(dual) != n or not all(_is_int(d) and 0 <= d < n for d in dual):
            raise ParseError(f"field 'dual' must be a list of {n} indices")
        dual = tuple(dual)
    return FusionRing(tuple(simples), unit, tensor, dual)


def _check_fields(obj, allowed) -> None:
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ParseError(f"unknown field(s): {', '.join(repr(e) for e in extra)}")


def modular_from_json(obj: dict) -> ModularData:
    _check_fields(obj, MODULAR_FIELDS)
    for key in ("name", "conductor", "simples", "unit", "fusion", "twists", "smat"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}")
    if not isinstance(obj["name"], str):
        raise ParseError("field 'name' must be a string")
    m = obj["conductor"]
    if not _is_int(m) or m < 1:
        raise ParseError("field 'conductor' must be a positive integer")
    ring = ring_from_json(obj)
    n = ring.rank
    twists = obj["twists"]
    if not isinstance(twists, list) or len(twists) != n or not all(_is_int(t) for t in twists):
        raise ParseError(f"field 'twists' must be a list of {n} integers")
    smat = obj["smat"]
    if not isinstance(smat, list) or len(smat) != n or not all(
        isinstance(row, list) and len(row) == n for row in smat
    ):
        raise ParseError(f"field 'smat' must be a {n}x{n} array")
    rows = []
    for i, row in enumerate(smat):
        out = []
        for j, x in enumerate(row):
            try:
                out.append(CycloNum.from_json(x))
            except ValueError as exc:
                raise ParseError(f"field 'smat'[{i}][{j}]: {exc}") from None
        rows.append(tuple(out))
    try:
        return ModularData(obj["name"], m, ring, tuple(twists), tuple(rows))
    except ValueError as exc:
        raise ParseError(f"field 'smat': {exc}") from None


def load(obj: dict) -> ModularData | FusionRing:
    """Modular data if the modular fields are present, else a bare fusion ring."""
    if isinstance(obj, dict) and any(k in obj for k in ("twists", "smat", "conductor")):
        return modular_from_json(obj)
    _check_fields(obj, RING_FIELDS)
    for key in ("simples", "unit", "fusion"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}")
    if "name" in obj and not isinstance(obj["name"], str):
        raise ParseError("field 'name' must be a string")
    return ring_from_json(obj)


def load_path(path: str | Path) -> ModularData | FusionRing:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    return load(obj)
