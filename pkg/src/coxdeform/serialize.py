"""JSON schemas and canonical serialization.

Input schemas: a polytope is {"n": int, "facets": [...], "ridges": [[i,j],...],
"vertices": [[i,j,k],...]? }, an orbifold adds "orders": [[i,j,m],...], and a
Cartan matrix is {"matrix": [[...]], "orders": [[i,j,m],...]? } (or a bare row
array).  Output reports canonicalize every float to 12 significant digits and
sort keys, so identical inputs and configuration produce byte-identical files.
"""

from __future__ import annotations

import dataclasses
import json

import numpy as np

from coxdeform import cartan as ct
from coxdeform import orbifold as ob
from coxdeform import polytope as pt


class SchemaError(ValueError):
    """Input file does not match the expected schema; message lists all
    offending locations."""


def canonical_float(x):
    return float(f"{float(x):.12g}")


def to_jsonable(obj):
    """Recursively convert reports, dataclasses and arrays to JSON data."""
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    if isinstance(obj, float):
        return canonical_float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return canonical_float(float(obj))
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if dataclasses.is_dataclass(obj):
        return {k: to_jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        out = {}
        for k, v in sorted(obj.items(), key=lambda kv: str(kv[0])):
            key = ",".join(str(x) for x in k) if isinstance(k, (tuple, frozenset)) else str(k)
            out[key] = to_jsonable(v)
        return out
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=str) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    return str(obj)


def dumps(data):
    return json.dumps(to_jsonable(data), sort_keys=True, indent=2) + "\n"


def load_polytope(doc):
    """Validated polytope from parsed JSON; errors are aggregated."""
    problems = []
    if not isinstance(doc, dict):
        raise SchemaError("polytope document must be an object")
    for key in ("n", "facets", "ridges"):
        if key not in doc:
            problems.append(f"missing key {key!r}")
    if problems:
        raise SchemaError("; ".join(problems))
    try:
        return pt.build_combinatorics(doc)
    except pt.CombinatoricsError as exc:
        raise SchemaError(f"polytope: {exc}") from exc


def load_orbifold(doc):
    """Validated orbifold from parsed JSON (polytope keys plus "orders")."""
    P = load_polytope(doc)
    if "orders" not in doc:
        raise SchemaError('missing key "orders"')
    name_to_id = {entry: k for k, entry in enumerate(doc["facets"], start=1)}
    problems = []
    orders = {}
    for item in doc["orders"]:
        try:
            i, j, m = item
        except (TypeError, ValueError):
            problems.append(f"orders entry {item!r} is not a triple")
            continue
        if i not in name_to_id or j not in name_to_id:
            problems.append(f"orders entry ({i},{j}) names an unknown facet")
            continue
        if not isinstance(m, int) or m < 2:
            problems.append(f"ridge ({i},{j}) has order {m!r}; need an integer >= 2")
            continue
        orders[(name_to_id[i], name_to_id[j])] = m
    if problems:
        raise SchemaError("; ".join(problems))
    try:
        return ob.make_orbifold(P, orders)
    except ob.OrbifoldError as exc:
        raise SchemaError(f"orbifold: {exc}") from exc


def load_cartan(doc):
    """Cartan matrix from {"matrix": rows, "orders": [[i,j,m],...]? } or a
    bare row array (pattern inferred from the entries)."""
    if isinstance(doc, list):
        doc = {"matrix": doc}
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise SchemaError('Cartan document needs a "matrix" key or a bare row array')
    entries = np.asarray(doc["matrix"], dtype=float)
    orders = None
    if "orders" in doc:
        orders = {(int(i), int(j)): int(m) for i, j, m in doc["orders"]}
    try:
        return ct.CartanMatrix(entries, orders=orders)
    except ct.CartanError as exc:
        raise SchemaError(f"cartan: {exc}") from exc


def dump_polytope(P):
    doc = {"n": P.n, "facets": list(P.facets),
           "ridges": [list(r) for r in sorted(P.ridges)]}
    if P.vertices is not None:
        doc["vertices"] = sorted(sorted(V) for V in P.vertices)
    return doc


def dump_orbifold(Q):
    doc = dump_polytope(Q.base)
    doc["orders"] = [[i, j, m] for (i, j), m in sorted(Q.orders.items())]
    return doc


def dump_realization(R):
    return {
        "normals": to_jsonable(R.normals),
        "residual_norm": canonical_float(R.residual_norm),
        "vertex_flags": {",".join(map(str, sorted(V))): bool(ok)
                         for V, ok in sorted(R.vertex_flags.items(), key=lambda kv: sorted(kv[0]))},
        "nonadjacent_products": {f"{i},{j}": canonical_float(v)
                                 for (i, j), v in sorted(R.nonadjacent_products.items())},
    }
