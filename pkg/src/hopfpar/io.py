"""JSON interchange.  All rationals travel as exact "p/q" strings; no floats
are ever read or written.  Schema for a Hopf algebra:

    { "dim": n,
      "mult": [[["p/q", ...], ...], ...],   # mult[k][i][j] = coeff of e_k in e_i e_j
      "comult": [...],                      # comult[i][j][k] = coeff of e_i⊗e_j in Δ(e_k)
      "unit": [...], "counit": [...],
      "antipode": [[...]],                  # matrix, rows = codomain
      "antipode_inverse": [[...]] }         # optional

Plain algebras/coalgebras use the relevant subset of keys.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .linalg import LinearMap, Tensor, scalar
from .structures import (
    FinDimAlgebra, FinDimCoalgebra, FinDimHopfAlgebra,
)


class InputError(ValueError):
    """Malformed interchange data; message carries the JSON location."""


def _rat_to_str(x: Fraction) -> str:
    return "%d/%d" % (x.numerator, x.denominator) if x.denominator != 1 \
        else "%d" % x.numerator


def _parse_rat(x, where: str) -> Fraction:
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError("%s: bad rational %r (%s)" % (where, x, exc))
    if isinstance(x, int):
        return Fraction(x)
    raise InputError("%s: expected 'p/q' string or int, got %r" % (where, x))


def tensor_to_nested(t: Tensor):
    def conv(node):
        if isinstance(node, list):
            return [conv(x) for x in node]
        return _rat_to_str(node)

    return conv(t.to_nested())


def nested_to_tensor(nested, shape, where: str) -> Tensor:
    flat = []

    def walk(node, depth):
        if depth == len(shape):
            flat.append(_parse_rat(node, where))
            return
        if not isinstance(node, list) or len(node) != shape[depth]:
            raise InputError("%s: expected list of length %d at depth %d"
                             % (where, shape[depth], depth))
        for sub in node:
            walk(sub, depth + 1)

    walk(nested, 0)
    return Tensor(tuple(shape), flat)


def matrix_to_nested(m: LinearMap):
    return [[_rat_to_str(x) for x in row] for row in m.rows]


def nested_to_matrix(nested, codomain, domain, where: str) -> LinearMap:
    if not isinstance(nested, list) or len(nested) != codomain:
        raise InputError("%s: expected %d rows" % (where, codomain))
    rows = []
    for i, row in enumerate(nested):
        if not isinstance(row, list) or len(row) != domain:
            raise InputError("%s: row %d must have %d entries"
                             % (where, i, domain))
        rows.append([_parse_rat(x, "%s[%d]" % (where, i)) for x in row])
    return LinearMap(codomain, domain, rows)


def hopf_to_dict(H: FinDimHopfAlgebra) -> dict:
    n = H.dim
    d = {
        "dim": n,
        "mult": tensor_to_nested(H.algebra.mult),
        "unit": [_rat_to_str(x) for x in H.algebra.unit.data],
        "comult": tensor_to_nested(H.coalgebra.comult),
        "counit": [_rat_to_str(x) for x in H.coalgebra.counit.data],
        "antipode": matrix_to_nested(H.antipode),
    }
    if H.antipode_inverse is not None:
        d["antipode_inverse"] = matrix_to_nested(H.antipode_inverse)
    return d


def hopf_from_dict(d: dict, where: str = "hopf") -> FinDimHopfAlgebra:
    if not isinstance(d, dict):
        raise InputError("%s: expected an object" % where)
    try:
        n = int(d["dim"])
    except (KeyError, TypeError, ValueError):
        raise InputError("%s.dim: missing or not an integer" % where)
    if n <= 0:
        raise InputError("%s.dim: must be positive" % where)
    for key in ("mult", "unit", "comult", "counit", "antipode"):
        if key not in d:
            raise InputError("%s.%s: missing" % (where, key))
    alg = FinDimAlgebra(
        n,
        nested_to_tensor(d["mult"], (n, n, n), where + ".mult"),
        nested_to_tensor(d["unit"], (n,), where + ".unit"))
    coa = FinDimCoalgebra(
        n,
        nested_to_tensor(d["comult"], (n, n, n), where + ".comult"),
        nested_to_tensor(d["counit"], (n,), where + ".counit"))
    S = nested_to_matrix(d["antipode"], n, n, where + ".antipode")
    S_inv = None
    if "antipode_inverse" in d:
        S_inv = nested_to_matrix(d["antipode_inverse"], n, n,
                                 where + ".antipode_inverse")
    return FinDimHopfAlgebra(alg, coa, S, S_inv)


def coalgebra_to_dict(C: FinDimCoalgebra) -> dict:
    return {
        "dim": C.dim,
        "comult": tensor_to_nested(C.comult),
        "counit": [_rat_to_str(x) for x in C.counit.data],
    }


def coalgebra_from_dict(d: dict, where: str = "coalgebra") -> FinDimCoalgebra:
    try:
        n = int(d["dim"])
    except (KeyError, TypeError, ValueError):
        raise InputError("%s.dim: missing or not an integer" % where)
    return FinDimCoalgebra(
        n,
        nested_to_tensor(d["comult"], (n, n, n), where + ".comult"),
        nested_to_tensor(d["counit"], (n,), where + ".counit"))


def vector_to_list(v):
    return [_rat_to_str(scalar(x)) for x in v]


def list_to_vector(lst, length, where):
    if not isinstance(lst, list) or len(lst) != length:
        raise InputError("%s: expected %d entries" % (where, length))
    return [_parse_rat(x, where) for x in lst]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("malformed JSON: %s" % exc)
