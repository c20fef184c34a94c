"""JSON wire formats.

Schemas by example::

    group     {"types": [{"name": "tau1", "p_inf": [2]}],
               "B": [{"type": "tau1", "m": 3, "s": 1}],
               "C": [{"type": "tau1", "indices": [1]}]}
    element   {"coords": {"tau1": {"0": "2/3", "1": "4"}}}
    constants {"u": [{"type": "tau1", "i": 0, "j": 1,
                      "value": {"coords": {"tau1": {"0": "1"}}}}]}
    endo      {"alpha": 3, "y": {"tau1": {"0": "1"}},
               "w": {"tau1": {"1": {"1": "0"}}}}
    ideal     {"ideal": {"g": <element>, "ell": {"tau1": "5"}}}

Rationals always travel as "p/q" or "p" strings.  Readers raise
SerializationError carrying the path of the offending node, and accept
exactly what the writers emit (round-trip safe).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .arith import format_rational
from .element import AmbientElement, member_G
from .endo import Endomorphism
from .group import GroupSpec
from .ideal import PrincipalAbsoluteIdeal, ell_tau
from .multiplication import StructureConstants


class SerializationError(ValueError):
    """Malformed payload; `path` names the offending JSON node."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


def _require(condition: bool, path: str, message: str) -> None:
    if not condition:
        raise SerializationError(path, message)


def _rational(value: Any, path: str) -> Fraction:
    _require(isinstance(value, str), path, "rationals must be 'p/q' or 'p' strings")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SerializationError(path, f"bad rational {value!r}: {exc}") from None


def _int(value: Any, path: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), path,
             "expected an integer")
    return value


def _dict(value: Any, path: str) -> dict:
    _require(isinstance(value, dict), path, "expected an object")
    return value


def _list(value: Any, path: str) -> list:
    _require(isinstance(value, list), path, "expected an array")
    return value


# -- group ------------------------------------------------------------------

def group_to_json(spec: GroupSpec) -> dict:
    payload: dict[str, Any] = {
        "types": [
            {"name": t.name, "p_inf": sorted(t.p_inf)} for t in spec.types
        ]
    }
    b = [
        {"type": name, "m": m, "s": s}
        for name, (m, s) in sorted(spec.b_data.items())
    ]
    if b:
        payload["B"] = b
    c = [
        {"type": name, "indices": sorted(idxs)}
        for name, idxs in sorted(spec.c_indices.items())
        if idxs
    ]
    if c:
        payload["C"] = c
    return payload


def group_from_json(data: Any) -> GroupSpec:
    root = _dict(data, "$")
    types = []
    for pos, item in enumerate(_list(root.get("types", []), "types")):
        node = _dict(item, f"types[{pos}]")
        _require("name" in node, f"types[{pos}]", "missing 'name'")
        name = node["name"]
        _require(isinstance(name, str) and bool(name), f"types[{pos}].name",
                 "type names are nonempty strings")
        p_inf = [
            _int(p, f"types[{pos}].p_inf[{q}]")
            for q, p in enumerate(_list(node.get("p_inf", []), f"types[{pos}].p_inf"))
        ]
        types.append((name, p_inf))
    b: dict[str, tuple[int, int]] = {}
    for pos, item in enumerate(_list(root.get("B", []), "B")):
        node = _dict(item, f"B[{pos}]")
        name = node.get("type")
        _require(isinstance(name, str), f"B[{pos}].type", "expected a type name")
        _require(name not in b, f"B[{pos}].type", f"duplicate framing data for {name!r}")
        b[name] = (_int(node.get("m"), f"B[{pos}].m"), _int(node.get("s"), f"B[{pos}].s"))
    c: dict[str, list[int]] = {}
    for pos, item in enumerate(_list(root.get("C", []), "C")):
        node = _dict(item, f"C[{pos}]")
        name = node.get("type")
        _require(isinstance(name, str), f"C[{pos}].type", "expected a type name")
        _require(name not in c, f"C[{pos}].type", f"duplicate free indices for {name!r}")
        c[name] = [
            _int(i, f"C[{pos}].indices[{q}]")
            for q, i in enumerate(_list(node.get("indices", []), f"C[{pos}].indices"))
        ]
    return GroupSpec.build(types, b, c)


# -- element ----------------------------------------------------------------

def element_to_json(x: AmbientElement) -> dict:
    coords: dict[str, dict[str, str]] = {}
    for (tau, i), v in x.support():
        coords.setdefault(tau, {})[str(i)] = format_rational(v)
    return {"coords": coords}


def element_from_json(data: Any) -> AmbientElement:
    root = _dict(data, "$")
    coords: dict[tuple[str, int], Fraction] = {}
    for tau, block in _dict(root.get("coords", {}), "coords").items():
        for key, value in _dict(block, f"coords.{tau}").items():
            path = f"coords.{tau}.{key}"
            try:
                i = int(key)
            except ValueError:
                raise SerializationError(path, "indices must be integer strings") from None
            coords[(tau, i)] = _rational(value, path)
    return AmbientElement(coords)


# -- structure constants ----------------------------------------------------

def constants_to_json(u: StructureConstants) -> dict:
    return {
        "u": [
            {"type": tau, "i": i, "j": j, "value": element_to_json(value)}
            for (tau, i, j), value in u.items()
        ]
    }


def constants_from_json(data: Any) -> StructureConstants:
    root = _dict(data, "$")
    entries: dict[tuple[str, int, int], AmbientElement] = {}
    for pos, item in enumerate(_list(root.get("u", []), "u")):
        node = _dict(item, f"u[{pos}]")
        tau = node.get("type")
        _require(isinstance(tau, str), f"u[{pos}].type", "expected a type name")
        i = _int(node.get("i"), f"u[{pos}].i")
        j = _int(node.get("j"), f"u[{pos}].j")
        key = (tau, i, j)
        _require(key not in entries, f"u[{pos}]", f"duplicate entry for {key}")
        try:
            entries[key] = element_from_json(node.get("value"))
        except SerializationError as exc:
            raise SerializationError(f"u[{pos}].value.{exc.path}", exc.message) from None
    return StructureConstants(entries)


# -- endomorphism -----------------------------------------------------------

def endo_to_json(phi: Endomorphism) -> dict:
    y: dict[str, dict[str, str]] = {}
    for (tau, i), v in sorted(phi.y.items()):
        y.setdefault(tau, {})[str(i)] = format_rational(v)
    w: dict[str, dict[str, dict[str, str]]] = {}
    for (tau, i, j), v in sorted(phi.w.items()):
        w.setdefault(tau, {}).setdefault(str(i), {})[str(j)] = format_rational(v)
    return {"alpha": phi.alpha, "y": y, "w": w}


def endo_from_json(data: Any) -> Endomorphism:
    root = _dict(data, "$")
    alpha = _int(root.get("alpha"), "alpha")
    y: dict[tuple[str, int], Fraction] = {}
    for tau, block in _dict(root.get("y", {}), "y").items():
        for key, value in _dict(block, f"y.{tau}").items():
            path = f"y.{tau}.{key}"
            try:
                i = int(key)
            except ValueError:
                raise SerializationError(path, "indices must be integer strings") from None
            y[(tau, i)] = _rational(value, path)
    w: dict[tuple[str, int, int], Fraction] = {}
    for tau, block in _dict(root.get("w", {}), "w").items():
        for row, inner in _dict(block, f"w.{tau}").items():
            for col, value in _dict(inner, f"w.{tau}.{row}").items():
                path = f"w.{tau}.{row}.{col}"
                try:
                    i, j = int(row), int(col)
                except ValueError:
                    raise SerializationError(path, "indices must be integer strings") from None
                w[(tau, i, j)] = _rational(value, path)
    return Endomorphism.build(alpha, y, w)


# -- ideal ------------------------------------------------------------------

def ideal_to_json(ideal: PrincipalAbsoluteIdeal) -> dict:
    return {
        "ideal": {
            "g": element_to_json(ideal.generator),
            "ell": {name: str(l) for name, l in sorted(ideal.ell.items())},
        }
    }


def ideal_from_json(spec: GroupSpec, data: Any) -> PrincipalAbsoluteIdeal:
    """Load an ideal against a spec.  The generator must be a member; the
    scales are recomputed from it and must match the payload, so a loaded
    ideal always satisfies the library's invariants."""
    root = _dict(data, "$")
    node = _dict(root.get("ideal"), "ideal")
    g = element_from_json(_dict(node.get("g"), "ideal.g"))
    cert = member_G_checked(spec, g)
    ell = ell_tau(spec, g)
    stated = _dict(node.get("ell", {}), "ideal.ell")
    for name, value in stated.items():
        path = f"ideal.ell.{name}"
        _require(name in ell, path, f"unknown type {name!r}")
        _require(isinstance(value, str), path, "scales are integer strings")
        try:
            stated_l = int(value)
        except ValueError:
            raise SerializationError(path, f"bad integer {value!r}") from None
        _require(
            stated_l == ell[name], path,
            f"stated scale {stated_l} disagrees with recomputed {ell[name]}",
        )
    return PrincipalAbsoluteIdeal(g, cert.beta, ell)


def member_G_checked(spec: GroupSpec, g: AmbientElement):
    try:
        cert = member_G(spec, g)
    except ValueError as exc:
        raise SerializationError("ideal.g", str(exc)) from None
    if cert is None:
        raise SerializationError("ideal.g", "generator is not a member of the group")
    return cert
