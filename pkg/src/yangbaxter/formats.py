"""JSON readers and writers for algebras, racks, coalgebras and operators.

Algebra files use 1-based basis indices; everything else is 0-based.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .algebras import LeibnizAlgebra, ThreeLeibnizAlgebra
from .coalgebra import Coalgebra, LinearRackStruct, TrilinearRackStruct
from .errors import InputError
from .linalg import Mat, format_scalar, scalar
from .racks import Finite3Rack, FiniteRack
from .ybe import BASIS_ORDER, DiffReport, YbeOperator


def dumps(obj: Any) -> str:
    """Stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{p}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def sha256_of(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    return obj[key]


# ---------------------------------------------------------------- algebras

def algebra_from_json_obj(obj) -> LeibnizAlgebra | ThreeLeibnizAlgebra:
    dim = _need(obj, "dim", "algebra")
    arity = _need(obj, "arity", "algebra")
    if not isinstance(dim, int) or dim < 0:
        raise InputError(f"algebra: dim must be a non-negative integer, got {dim!r}")
    if arity not in (2, 3):
        raise InputError(f"algebra: arity must be 2 or 3, got {arity!r}")
    table: dict = {}
    for k, br in enumerate(obj.get("brackets", [])):
        where = f"algebra.brackets[{k}]"
        idx = _need(br, "in", where)
        if not isinstance(idx, list) or len(idx) != arity or not all(isinstance(i, int) and 1 <= i <= dim for i in idx):
            raise InputError(f"{where}.in: expected {arity} indices in 1..{dim}, got {idx!r}")
        out = table.setdefault(tuple(i - 1 for i in idx), {})
        for m, term in enumerate(_need(br, "out", where)):
            b = _need(term, "basis", f"{where}.out[{m}]")
            if not isinstance(b, int) or not 1 <= b <= dim:
                raise InputError(f"{where}.out[{m}].basis: expected 1..{dim}, got {b!r}")
            try:
                c = scalar(_need(term, "coeff", f"{where}.out[{m}]"))
            except InputError as exc:
                raise InputError(f"{where}.out[{m}].coeff: {exc}") from exc
            out[b - 1] = out.get(b - 1, 0) + c
    cls = LeibnizAlgebra if arity == 2 else ThreeLeibnizAlgebra
    return cls(dim, table, name=obj.get("name", ""))


def algebra_to_json_obj(alg) -> dict:
    brackets = []
    for key in sorted(alg.table):
        out = alg.table[key]
        brackets.append({
            "in": [i + 1 for i in key],
            "out": [{"basis": l + 1, "coeff": format_scalar(c)} for l, c in sorted(out.items())],
        })
    obj = {"dim": alg.dim, "arity": alg.arity, "brackets": brackets}
    if alg.name:
        obj["name"] = alg.name
    return obj


# ---------------------------------------------------------------- racks

def rack_from_json_obj(obj) -> FiniteRack | Finite3Rack:
    size = _need(obj, "size", "rack")
    arity = _need(obj, "arity", "rack")
    table = _need(obj, "table", "rack")
    if not isinstance(size, int) or size < 1:
        raise InputError(f"rack: size must be a positive integer, got {size!r}")
    if arity == 2:
        return FiniteRack(size, table)
    if arity == 3:
        return Finite3Rack(size, table)
    raise InputError(f"rack: arity must be 2 or 3, got {arity!r}")


def rack_to_json_obj(r) -> dict:
    arity = 2 if isinstance(r, FiniteRack) else 3
    table = [list(row) for row in r.table] if arity == 2 else [[list(c) for c in row] for row in r.table]
    return {"size": r.size, "arity": arity, "table": table}


# ---------------------------------------------------------------- coalgebras

def _mat(obj, key, where):
    try:
        return Mat.from_json_obj(_need(obj, key, where))
    except InputError as exc:
        raise InputError(f"{where}.{key}: {exc}") from exc


def coalgebra_from_json_obj(obj) -> Coalgebra | LinearRackStruct | TrilinearRackStruct:
    """A coalgebra, optionally with ``op``/``tilde`` or ``t``/``ttilde`` operations."""
    dim = _need(obj, "dim", "coalgebra")
    c = Coalgebra(dim, _mat(obj, "delta", "coalgebra"), _mat(obj, "counit", "coalgebra"), name=obj.get("name", ""))
    if "op" in obj:
        return LinearRackStruct(c, _mat(obj, "op", "coalgebra"), _mat(obj, "tilde", "coalgebra"))
    if "t" in obj:
        return TrilinearRackStruct(c, _mat(obj, "t", "coalgebra"), _mat(obj, "ttilde", "coalgebra"))
    return c


def coalgebra_to_json_obj(s) -> dict:
    c = s if isinstance(s, Coalgebra) else s.coalg
    obj = {"dim": c.dim, "delta": c.delta.to_json_obj(), "counit": c.counit.to_json_obj()}
    if c.name:
        obj["name"] = c.name
    if isinstance(s, LinearRackStruct):
        obj["op"], obj["tilde"] = s.op.to_json_obj(), s.tilde.to_json_obj()
    elif isinstance(s, TrilinearRackStruct):
        obj["t"], obj["ttilde"] = s.t.to_json_obj(), s.ttilde.to_json_obj()
    return obj


# ---------------------------------------------------------------- operators

def operator_to_json_obj(op: YbeOperator) -> dict:
    prov = {"basis_order": BASIS_ORDER, **op.provenance}
    return {"base_dim": op.base_dim, "provenance": prov, **op.matrix.to_json_obj()}


def operator_from_json_obj(obj) -> YbeOperator:
    m = Mat.from_json_obj(obj)
    base = obj.get("base_dim")
    if base is None:
        root = int(round(m.rows ** 0.5))
        if root * root != m.rows:
            raise InputError(f"operator: {m.rows} rows is not a square; give base_dim")
        base = root
    return YbeOperator(base, m, dict(obj.get("provenance", {})))


def diff_to_json_obj(d: DiffReport) -> list[dict]:
    return d.to_json_obj()


def load_any(path: str | Path, kind: str):
    obj = load_json(path)
    readers = {
        "algebra": algebra_from_json_obj,
        "rack": rack_from_json_obj,
        "coalgebra": coalgebra_from_json_obj,
        "operator": operator_from_json_obj,
    }
    try:
        return readers[kind](obj)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc
