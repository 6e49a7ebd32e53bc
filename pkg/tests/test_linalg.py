from hypothesis import given, settings, strategies as st

from qdeform.fields import QQ, PrimeField
from qdeform.linalg import (
    Echelon,
    PrecomputedSolver,
    dense_to_dict,
    intersect_spans,
    kernel_basis,
    solve,
    span_echelon,
    subspace_equal,
    vadd,
    vscale,
)
import pytest


def _apply(rows, x, field):
    out = []
    for row in rows:
        acc = field.zero
        for c, v in row.items():
            acc = acc + v * x[c]
        out.append(acc)
    return out


def test_kernel_small():
    f = QQ
    rows = [{0: f.of(1), 1: f.of(2), 2: f.of(3)}]
    ker = kernel_basis(f, rows, 3)
    assert len(ker) == 2
    for v in ker:
        assert not any(_apply(rows, v, f))


def test_solve_and_certificate():
    f = QQ
    eqns = [({0: f.one, 1: f.one}, f.of(3), "r0"),
            ({0: f.one, 1: -f.one}, f.of(1), "r1")]
    x, cert = solve(f, eqns, 2, certificate=True)
    assert cert is None
    assert x == [f.of(2), f.of(1)]
    # inconsistent: x0 + x1 = 3 and x0 + x1 = 4
    eqns = [({0: f.one, 1: f.one}, f.of(3), "r0"),
            ({0: f.one, 1: f.one}, f.of(4), "r1")]
    x, cert = solve(f, eqns, 2, certificate=True)
    assert x is None
    # certificate is a left null combination reading 0 = 1
    lhs = {}
    rhs = f.zero
    for (row, b, tag) in eqns:
        c = cert.get(tag, f.zero)
        if not c:
            continue
        for col, v in row.items():
            lhs[col] = lhs.get(col, f.zero) + c * v
        rhs = rhs + c * b
    assert not any(lhs.values())
    assert rhs


def test_reduce_eliminates_all_pivot_columns():
    # regression: a row whose minimum column is free must still be reduced
    # at larger pivot columns, otherwise stored rows violate RREF
    f = QQ
    ech = Echelon(f)
    ech.add({1: f.one})
    ech.add({0: f.one, 1: f.of(5), 2: f.one})
    for pc, prow in ech.pivots.items():
        for c in prow:
            assert c == pc or c not in ech.pivots


def test_rref_canonical_for_subspace():
    f = QQ
    basis_a = [[f.of(1), f.of(2), f.of(0)], [f.of(0), f.of(1), f.of(1)]]
    basis_b = [[f.of(1), f.of(3), f.of(1)], [f.of(2), f.of(5), f.of(1)]]
    assert subspace_equal(f, basis_a, basis_b)
    basis_c = [[f.of(1), f.of(0), f.of(0)]]
    assert not subspace_equal(f, basis_a, basis_c)


def test_precomputed_solver():
    f = QQ
    rows = [{0: f.of(2)}, {1: f.of(3)}, {0: f.one, 1: f.one}]
    ps = PrecomputedSolver(f, rows, 2)
    x = ps.solve([f.of(4), f.of(6), f.of(4)])
    assert x == [f.of(2), f.of(2)]
    with pytest.raises(ValueError):
        ps.solve([f.of(4), f.of(6), f.of(5)])


def test_intersect_spans():
    f = QQ
    e = lambda *cs: [f.of(c) for c in cs]
    a = [e(1, 0, 0), e(0, 1, 0)]
    b = [e(0, 1, 0), e(0, 0, 1)]
    inter = intersect_spans(f, a, b, 3)
    assert len(inter) == 1
    assert span_echelon(f, inter).contains(e(0, 1, 0))
    assert intersect_spans(f, [e(1, 0, 0)], [e(0, 0, 1)], 3) == []


@st.composite
def sparse_matrix(draw):
    ncols = draw(st.integers(1, 6))
    nrows = draw(st.integers(1, 8))
    rows = []
    for _ in range(nrows):
        row = {}
        for c in range(ncols):
            v = draw(st.integers(-3, 3))
            if v:
                row[c] = v
        rows.append(row)
    return ncols, rows


@settings(max_examples=60, deadline=None)
@given(sparse_matrix())
def test_kernel_property(data):
    ncols, int_rows = data
    for field in (QQ, PrimeField(5)):
        rows = [{c: field.of(v) for c, v in r.items() if field.of(v)}
                for r in int_rows]
        rows = [r for r in rows if r]
        ker = kernel_basis(field, rows, ncols)
        ech = Echelon(field)
        for r in rows:
            ech.add(dict(r))
        assert len(ker) == ncols - ech.rank
        for v in ker:
            assert not any(_apply(rows, v, field))
        # kernel vectors are independent
        kech = Echelon(field)
        for v in ker:
            assert kech.add(dense_to_dict(v)) is not None
