"""JSON wire formats for algebras, cochains, triples, and coordinates.

Scalars are serialized as exact strings ("p/q" over the rationals, the
residue over a prime field) so no consumer can lose precision; omitted
structure constants are zero. Emission order is sorted everywhere, so
output bytes are stable across runs.
"""

from __future__ import annotations

import json

from .algebra import AlgebraHom, GradedAlgebra
from .deformation import Cochain2, DeformationTriple
from .fields import field_by_name


def algebra_to_json(A):
    constants = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in enumerate(A.table[i][j]):
                if c:
                    constants.append([i, j, k, A.field.fmt(c)])
    return {
        "field": A.field.name,
        "basis": [{"name": nm, "degree": dg}
                  for nm, dg in zip(A.names, A.degrees)],
        "unit": A.unit_index,
        "constants": constants,
    }


def algebra_from_json(data):
    field = field_by_name(data["field"])
    names = [b["name"] for b in data["basis"]]
    degrees = [b["degree"] for b in data["basis"]]
    dim = len(names)
    table = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, k, s in data["constants"]:
        table[i][j][k] = field.parse(s)
    return GradedAlgebra(field, names, degrees, data["unit"], table)


def cochain_to_json(c):
    A = c.algebra
    entries = []
    for i in range(A.dim):
        for j in range(A.dim):
            v = c.values[i][j]
            if any(v):
                entries.append([i, j, [A.field.fmt(x) for x in v]])
    return {"d": c.d, "entries": entries}


def cochain_from_json(R, data):
    vals = [[R.zero_vec() for _ in range(R.dim)] for _ in range(R.dim)]
    for i, j, coeffs in data["entries"]:
        vals[i][j] = [R.field.parse(s) for s in coeffs]
    return Cochain2(R, data["d"], vals)


def triple_to_json(T):
    return {
        "algebra": algebra_to_json(T.big),
        "base": algebra_to_json(T.base),
        "t": T.t_index,
        "d": T.d,
        "j": [[T.big.field.fmt(c) for c in row] for row in T.j.matrix],
    }


def triple_from_json(data):
    big = algebra_from_json(data["algebra"])
    base = algebra_from_json(data["base"])
    jmat = [[base.field.parse(s) for s in row] for row in data["j"]]
    j = AlgebraHom(big, base, jmat)
    return DeformationTriple(big, base, data["t"], j, data["d"])


def coordinates_to_json(co, field):
    return {
        "m": co.m,
        "n": co.n,
        "d": co.d,
        "a": {mono: field.fmt(c) for mono, c in sorted(co.monomials("a").items())},
        "b": {mono: field.fmt(c) for mono, c in sorted(co.monomials("b").items())},
    }


def witness_to_json(w):
    big = w.deformation.big
    entries = []
    for i in range(big.dim):
        for j in range(big.dim):
            v = w.values[i][j]
            if any(v):
                entries.append([i, j, [big.field.fmt(x) for x in v]])
    return {"degree_drop": w.degree_drop, "entries": entries}


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
