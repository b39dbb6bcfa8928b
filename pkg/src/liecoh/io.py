"""Canonical JSON forms for every object the CLI exchanges.

Rationals serialize as strings "p/q" (or "p" when the denominator is 1).
Emission is canonical: sorted keys, two-space indent, trailing newline,
so emit(load(x)) reproduces canonically formed input byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Optional

from .catalog import catalog
from .cochains import Cochain
from .errors import InvariantViolation, JacobiError, ParseError, RepresentationError
from .extensions import FactorSystem
from .liealg import LieAlgebra, Representation
from .linalg import Matrix


def scalar_to_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ParseError(f"expected a rational string, got {type(s).__name__}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid rational {s!r}: {exc}") from exc


def matrix_to_json(m: Matrix) -> list:
    return [[scalar_to_str(x) for x in m.row(i)] for i in range(m.rows)]


def matrix_from_json(data, rows: Optional[int] = None,
                     cols: Optional[int] = None) -> Matrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ParseError("a matrix must be a list of rows")
    try:
        m = Matrix([[scalar_from_str(x) for x in row] for row in data],
                   cols=cols if not data else None)
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"invalid matrix: {exc}") from exc
    if rows is not None and m.rows != rows:
        raise ParseError(f"expected {rows} rows, found {m.rows}")
    if cols is not None and m.cols != cols:
        raise ParseError(f"expected {cols} columns, found {m.cols}")
    return m


def algebra_to_json(L: LieAlgebra) -> dict:
    brackets = []
    for (i, j), vec in sorted(L.structure_table().items()):
        brackets.append({
            "i": i,
            "j": j,
            "value": {str(k): scalar_to_str(c) for k, c in enumerate(vec) if c != 0},
        })
    return {"dim": L.dim, "basis": list(L.labels), "brackets": brackets}


def algebra_from_json(data) -> LieAlgebra:
    if isinstance(data, str):
        obj = catalog(data)
        if not isinstance(obj, LieAlgebra):
            raise ParseError(f"catalog entry {data!r} is not an algebra")
        return obj
    if not isinstance(data, dict):
        raise ParseError("an algebra must be an object or a catalog name")
    try:
        dim = int(data["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid algebra dimension: {exc}") from exc
    labels = data.get("basis")
    table = {}
    for entry in data.get("brackets", []):
        try:
            i, j = int(entry["i"]), int(entry["j"])
            value = {int(k): scalar_from_str(v) for k, v in entry["value"].items()}
        except ParseError:
            raise
        except Exception as exc:
            raise ParseError(f"invalid bracket entry {entry!r}: {exc}") from exc
        table[(i, j)] = value
    try:
        return LieAlgebra(dim, table, labels=labels)
    except JacobiError as exc:
        raise InvariantViolation(str(exc), [f"jacobi at triple {exc.triple}"]) from exc


def representation_to_json(rep: Representation) -> dict:
    return {
        "algebra": algebra_to_json(rep.algebra),
        "space_dim": rep.space_dim,
        "matrices": [matrix_to_json(m) for m in rep.matrices],
    }


def representation_from_json(data) -> Representation:
    if not isinstance(data, dict):
        raise ParseError("a representation must be an object")
    algebra = algebra_from_json(data.get("algebra"))
    try:
        space_dim = int(data["space_dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid space_dim: {exc}") from exc
    mats = [matrix_from_json(m, rows=space_dim, cols=space_dim)
            for m in data.get("matrices", [])]
    try:
        return Representation(algebra, space_dim, mats)
    except RepresentationError as exc:
        raise InvariantViolation(str(exc), [f"representation law at {exc.pair}"]) from exc


def cochain_to_json(c: Cochain) -> dict:
    coeffs = {}
    for key in sorted(c.coeffs):
        coeffs[",".join(str(i) for i in key)] = [scalar_to_str(x)
                                                 for x in c.coeffs[key]]
    return {"degree": c.degree, "value_dim": c.value_dim, "coeffs": coeffs}


def cochain_from_json(data, algebra: LieAlgebra) -> Cochain:
    if not isinstance(data, dict):
        raise ParseError("a cochain must be an object")
    try:
        degree = int(data["degree"])
        value_dim = int(data["value_dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid cochain header: {exc}") from exc
    table = {}
    for key_str, vec in data.get("coeffs", {}).items():
        try:
            key = tuple(int(s) for s in key_str.split(",")) if key_str else ()
        except ValueError as exc:
            raise ParseError(f"invalid cochain key {key_str!r}") from exc
        table[key] = [scalar_from_str(x) for x in vec]
    try:
        return Cochain(algebra, degree, value_dim, table)
    except Exception as exc:
        raise ParseError(f"invalid cochain: {exc}") from exc


def factor_system_to_json(fs: FactorSystem) -> dict:
    return {
        "n": algebra_to_json(fs.n),
        "g": algebra_to_json(fs.g),
        "S": [matrix_to_json(m) for m in fs.S.matrices],
        "omega": cochain_to_json(fs.omega),
    }


def factor_system_parts_from_json(data):
    """(n, g, matrices, omega) without the validity check."""
    if not isinstance(data, dict):
        raise ParseError("an extension bundle must be an object")
    n_alg = algebra_from_json(data.get("n"))
    g_alg = algebra_from_json(data.get("g"))
    mats = [matrix_from_json(m, rows=n_alg.dim, cols=n_alg.dim)
            for m in data.get("S", [])]
    if len(mats) != g_alg.dim:
        raise ParseError("one S matrix per basis element of g is required")
    omega_data = data.get("omega")
    if omega_data is None:
        omega = Cochain(g_alg, 2, n_alg.dim)
    else:
        omega = cochain_from_json(omega_data, g_alg)
    return n_alg, g_alg, mats, omega


def factor_system_from_json(data) -> FactorSystem:
    n_alg, g_alg, mats, omega = factor_system_parts_from_json(data)
    return FactorSystem(n_alg, g_alg, mats, omega)


def crossed_module_parts_from_json(data):
    from .liealg import Representation
    if not isinstance(data, dict):
        raise ParseError("a crossed-module bundle must be an object")
    h = algebra_from_json(data.get("h"))
    ghat = algebra_from_json(data.get("ghat"))
    alpha = matrix_from_json(data.get("alpha"), rows=ghat.dim, cols=h.dim)
    mats = [matrix_from_json(m, rows=h.dim, cols=h.dim)
            for m in data.get("action", [])]
    if len(mats) != ghat.dim:
        raise ParseError("one action matrix per basis element of ghat is required")
    try:
        action = Representation(ghat, h.dim, mats)
    except RepresentationError as exc:
        raise InvariantViolation(str(exc), [f"representation law at {exc.pair}"]) from exc
    return h, ghat, alpha, action


def crossed_module_to_json(cm) -> dict:
    return {
        "h": algebra_to_json(cm.h),
        "ghat": algebra_to_json(cm.ghat),
        "alpha": matrix_to_json(cm.alpha),
        "action": [matrix_to_json(m) for m in cm.action.matrices],
    }


def emit(obj) -> str:
    """Canonical JSON text: sorted keys, indent 2, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json_text(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


class Workspace:
    """Loaded objects by name, with source provenance and checksums."""

    def __init__(self):
        self._objects = {}
        self._provenance = {}

    def add(self, name: str, obj, source: Optional[str] = None,
            text: Optional[str] = None) -> None:
        if name in self._objects:
            raise InvariantViolation(f"duplicate workspace name {name!r}")
        checksum = (hashlib.sha256(text.encode()).hexdigest()
                    if text is not None else None)
        self._objects[name] = obj
        self._provenance[name] = {"source": source, "sha256": checksum}

    def get(self, name: str):
        return self._objects[name]

    def provenance(self, name: str) -> dict:
        return dict(self._provenance[name])

    def names(self) -> tuple:
        return tuple(self._objects)


def load_file(path: str, kind: str):
    """Parse and validate one JSON file of the given kind."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    data = load_json_text(text)
    if kind == "algebra":
        return algebra_from_json(data)
    if kind == "representation":
        return representation_from_json(data)
    if kind == "factor-system":
        return factor_system_from_json(data)
    if kind == "factor-system-parts":
        return factor_system_parts_from_json(data)
    if kind == "crossed-module-parts":
        return crossed_module_parts_from_json(data)
    if kind == "json":
        return data
    raise ParseError(f"unknown input kind {kind!r}")
