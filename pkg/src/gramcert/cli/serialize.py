"""JSON encodings of matrices and certificates.

Every document carries a "schema" field; scalars are exact strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from ..gramlin import RepMatrix
from ..scalarfield import MPoly, scalar_to_json
from ..symtensor import BasisOrder, MultiIndex, SymCoords, enumerate_basis

MATRIX_SCHEMA = "gramcert.matrix/1"
REPORT_SCHEMA = "gramcert.{kind}/1"


def schema(kind: str) -> str:
    return REPORT_SCHEMA.format(kind=kind)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)


def scalar(x):
    if isinstance(x, MPoly):
        return x.to_str()
    if isinstance(x, bool) or x is None:
        return x
    return scalar_to_json(x)


def vector(v: Sequence) -> list:
    return [scalar(x) for x in v]


def matrix_rows(rows) -> list:
    return [vector(r) for r in rows]


def matrix_to_json(m: RepMatrix) -> dict:
    return {
        "schema": MATRIX_SCHEMA,
        "n": m.order.n,
        "p": m.order.p,
        "basis_order": m.order.labels(),
        "entries": matrix_rows(m.entries),
    }


def _parse_entry(x) -> Fraction:
    if isinstance(x, (int, str)):
        return Fraction(str(x).strip())
    if isinstance(x, float):
        raise ValueError("floating point entries are not accepted; write them as fractions")
    raise ValueError(f"cannot read matrix entry {x!r}")


def matrix_from_json(doc: dict) -> RepMatrix:
    for key in ("n", "p", "entries"):
        if key not in doc:
            raise ValueError(f"matrix document lacks {key!r}")
    n, p = int(doc["n"]), int(doc["p"])
    if "basis_order" in doc and doc["basis_order"] is not None:
        order = BasisOrder(n, p, tuple(MultiIndex.parse(s) for s in doc["basis_order"]))
    else:
        order = enumerate_basis(n, p)
    rows = [[_parse_entry(x) for x in row] for row in doc["entries"]]
    if len(rows) != len(order) or any(len(r) != len(order) for r in rows):
        raise ValueError(f"entries must be {len(order)} x {len(order)}")
    return RepMatrix.from_rows(order, rows)


def plain_matrix_from_json(doc) -> list[list[Fraction]]:
    """A bare symmetric matrix: either a list of rows or {"entries": rows}."""
    rows = doc["entries"] if isinstance(doc, dict) else doc
    out = [[_parse_entry(x) for x in row] for row in rows]
    if any(len(r) != len(out) for r in out):
        raise ValueError("matrix is not square")
    return out


def load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def coords_to_json(t: SymCoords) -> dict:
    return {a.label(): scalar(c) for a, c in zip(t.order, t.coords) if c}
