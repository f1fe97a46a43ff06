"""JSON formats for collections, operads, monoids, algebras and maps.

Profiles are written as ``{"inputs": [...], "output": c}``; the text form
``"(a,b;c)"`` is accepted on input as well.  Table keys join element names
with commas (``"x,y"``; the empty key for a nullary operation).  When a name
itself contains a comma the table is written as a list of rows instead, and
both forms are read back.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebras import AlgebraStructure
from .collection import Collection
from .operads import FiniteOperad, Monoid
from .perms import Permutation
from .trees import Profile, TreeError, parse_profile


class FormatError(ValueError):
    pass


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _need(obj: Any, key: str, kind: type, where: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise FormatError(f"{where}.{key}: expected {kind.__name__}")
    return value


def _name(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise FormatError(f"{where}: element names must be strings, got {value!r}")
    return value


# ------------------------------------------------------------------ profiles

def profile_from_json(obj: Any, where: str = "profile") -> Profile:
    if isinstance(obj, str):
        try:
            return parse_profile(obj)
        except TreeError as exc:
            raise FormatError(f"{where}: {exc}") from None
    inputs = _need(obj, "inputs", list, where)
    output = _need(obj, "output", str, where)
    if not all(isinstance(c, str) for c in inputs):
        raise FormatError(f"{where}.inputs: colours must be strings")
    return Profile(tuple(inputs), output)


def profile_to_json(p: Profile) -> dict:
    return {"inputs": list(p.inputs), "output": p.output}


# -------------------------------------------------------------------- tables

def _split_key(key: str, arity: int, where: str) -> tuple:
    parts = tuple(key.split(",")) if key != "" else ()
    if len(parts) != arity:
        raise FormatError(f"{where}: key {key!r} should list {arity} names")
    return parts


def _table_from_json(obj: Any, arity: int, where: str) -> dict:
    """``{"x,y": z}`` or ``[[x, y, z], ...]`` to ``{(x, y): z}``."""
    out = {}
    if isinstance(obj, dict):
        rows = [(_split_key(k, arity, where), v) for k, v in obj.items()]
    elif isinstance(obj, list):
        rows = []
        for row in obj:
            if not isinstance(row, list) or len(row) != arity + 1:
                raise FormatError(f"{where}: rows must be lists of {arity + 1} names")
            rows.append((tuple(row[:-1]), row[-1]))
    else:
        raise FormatError(f"{where}: expected an object or a list of rows")
    for key, value in rows:
        key = tuple(_name(k, where) for k in key)
        if key in out:
            raise FormatError(f"{where}: duplicate entry for {','.join(key)!r}")
        out[key] = _name(value, where)
    return out


def _table_to_json(table: dict) -> Any:
    keys = sorted(table)
    if any("," in name for key in keys for name in key):
        return [list(key) + [table[key]] for key in keys]
    return {",".join(key): table[key] for key in keys}


# --------------------------------------------------------------- collections

def collection_from_json(obj: Any) -> Collection:
    colours = _need(obj, "colours", list, "collection")
    if not all(isinstance(c, str) for c in colours):
        raise FormatError("collection.colours: colours must be strings")
    components: dict = {}
    for n, entry in enumerate(_need(obj, "components", list, "collection"), start=1):
        where = f"components[{n}]"
        p = profile_from_json(entry.get("profile") if isinstance(entry, dict) else None, where + ".profile")
        if p in components:
            raise FormatError(f"{where}: profile {p} listed twice")
        components[p] = tuple(_name(e, where) for e in _need(entry, "elements", list, where))
    actions: dict = {}
    for n, entry in enumerate(obj.get("actions", []), start=1):
        where = f"actions[{n}]"
        p = profile_from_json(entry.get("profile") if isinstance(entry, dict) else None, where + ".profile")
        images = _need(entry, "perm", list, where)
        try:
            alpha = Permutation(tuple(images))
        except (ValueError, TypeError) as exc:
            raise FormatError(f"{where}.perm: {exc}") from None
        if (p, alpha) in actions:
            raise FormatError(f"{where}: action of {alpha} on {p} listed twice")
        table = _need(entry, "map", dict, where)
        actions[(p, alpha)] = {_name(k, where): _name(v, where) for k, v in table.items()}
    return Collection(tuple(colours), components, actions)


def collection_to_json(K: Collection) -> dict:
    return {
        "colours": list(K.colours),
        "components": [{"profile": profile_to_json(p), "elements": list(K.elements(p))}
                       for p in K.profiles],
        "actions": [{"profile": profile_to_json(p), "perm": list(alpha.images),
                     "map": {x: table[x] for x in K.elements(p) if x in table}}
                    for (p, alpha), table in sorted(K.actions.items(), key=lambda kv: kv[0])],
    }


# ------------------------------------------------------------------- operads

def operad_from_json(obj: Any) -> FiniteOperad:
    base = collection_from_json(obj)
    units = _need(obj, "units", dict, "operad")
    units = {c: _name(u, f"units.{c}") for c, u in units.items()}
    tables: dict = {}
    for n, entry in enumerate(obj.get("circ", []), start=1):
        where = f"circ[{n}]"
        if not isinstance(entry, dict):
            raise FormatError(f"{where}: expected an object")
        p = profile_from_json(entry.get("outer"), where + ".outer")
        q = profile_from_json(entry.get("inner"), where + ".inner")
        i = _need(entry, "i", int, where)
        if (p, i, q) in tables:
            raise FormatError(f"{where}: table for o_{i} of {p} with {q} listed twice")
        tables[(p, i, q)] = _table_from_json(entry.get("map"), 2, where + ".map")
    name = obj.get("name", "")
    return FiniteOperad(base, units, tables, name if isinstance(name, str) else "")


def operad_to_json(P: FiniteOperad) -> dict:
    out = {"name": P.name} if P.name else {}
    out.update(collection_to_json(P.base))
    out["units"] = dict(sorted(P.units.items()))
    out["circ"] = [{"outer": profile_to_json(p), "i": i, "inner": profile_to_json(q),
                    "map": _table_to_json(table)}
                   for (p, i, q), table in sorted(P.circ_tables.items(), key=lambda kv: kv[0])]
    return out


# ------------------------------------------------------------------- monoids

def monoid_from_json(obj: Any) -> Monoid:
    carrier = [_name(x, "monoid.carrier") for x in _need(obj, "carrier", list, "monoid")]
    unit = _name(obj.get("unit"), "monoid.unit")
    mult = _table_from_json(_need(obj, "mult", (dict, list), "monoid"), 2, "monoid.mult")
    return Monoid(tuple(carrier), mult, unit)


def monoid_to_json(R: Monoid) -> dict:
    return {"carrier": list(R.carrier), "unit": R.unit, "mult": _table_to_json(R.mult)}


# ------------------------------------------------------------------ algebras

def algebra_from_json(obj: Any, base_dir: str | Path = ".") -> AlgebraStructure:
    ref = obj.get("operad") if isinstance(obj, dict) else None
    if isinstance(ref, str):
        P = operad_from_json(load_json(Path(base_dir) / ref))
    elif isinstance(ref, dict):
        P = operad_from_json(ref)
    else:
        raise FormatError("algebra.operad: expected a path or an inline operad")
    family = {}
    for c, xs in _need(obj, "family", dict, "algebra").items():
        if not isinstance(xs, list):
            raise FormatError(f"family.{c}: expected a list")
        family[c] = tuple(_name(x, f"family.{c}") for x in xs)
    action = {}
    for n, entry in enumerate(_need(obj, "action", list, "algebra"), start=1):
        where = f"action[{n}]"
        p = profile_from_json(entry.get("profile") if isinstance(entry, dict) else None, where + ".profile")
        e = _name(entry.get("element"), where + ".element")
        if (p, e) in action:
            raise FormatError(f"{where}: action of {e!r} in {p} listed twice")
        action[(p, e)] = _table_from_json(entry.get("table"), p.arity, where + ".table")
    return AlgebraStructure(P, family, action)


def algebra_to_json(A: AlgebraStructure, operad_ref: str | None = None) -> dict:
    return {
        "operad": operad_ref if operad_ref is not None else operad_to_json(A.operad),
        "family": {c: list(xs) for c, xs in sorted(A.family.items())},
        "action": [{"profile": profile_to_json(p), "element": e, "table": _table_to_json(table)}
                   for (p, e), table in sorted(A.action.items(), key=lambda kv: (kv[0][0], kv[0][1]))],
    }


def map_from_json(obj: Any) -> dict:
    """A colourwise map of families ``{colour: {x: y}}``, optionally wrapped
    as ``{"map": {...}}``."""
    if isinstance(obj, dict) and set(obj) == {"map"}:
        obj = obj["map"]
    if not isinstance(obj, dict):
        raise FormatError("map: expected an object keyed by colour")
    out = {}
    for c, table in obj.items():
        if not isinstance(table, dict):
            raise FormatError(f"map.{c}: expected an object")
        out[c] = {_name(x, f"map.{c}"): _name(y, f"map.{c}") for x, y in table.items()}
    return out
