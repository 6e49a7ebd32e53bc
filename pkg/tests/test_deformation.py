import random

import pytest

from qdeform.fields import QQ, PrimeField
from qdeform.algebra import GradedAlgebra, pmn_algebra, truncated_poly, verify_algebra
from qdeform.deformation import (
    Cochain2,
    coboundary,
    coboundary_space,
    cocycle_from_triple,
    cocycle_space,
    def_space,
    flatness_check,
    monogenic_deformation,
    pmn_coefficient_range,
    presented_pmn_deformation,
    sum_deformations,
    triple_from_cocycle,
    trivial_deformation,
)
from qdeform.structure import exterior_product
from qdeform.linalg import Echelon, dense_to_dict, is_zero_vec, vadd, vscale


def test_def_space_odd_d_vanishes():
    for R in (truncated_poly(1, QQ), pmn_algebra(1, 1, QQ)):
        for d in (1, 3, 5):
            assert def_space(R, d).dimension == 0


def test_def_space_monogenic_values():
    # one-variable ring: H^(2n+2-d) for even d != 2, quotient for d = 2
    assert def_space(truncated_poly(2, QQ), 4).dimension == 1
    assert def_space(truncated_poly(2, QQ), 2).dimension == 0
    assert def_space(truncated_poly(2, PrimeField(3)), 2).dimension == 1
    assert def_space(truncated_poly(3, QQ), 8).dimension == 1
    # d beyond the top degree plus the shift: nothing left
    assert def_space(truncated_poly(2, QQ), 8).dimension == 0


def test_def_space_p11_d2():
    assert def_space(pmn_algebra(1, 1, QQ), 2).dimension == 2


def test_coboundary_hand_value():
    # R = F[u]/u^2, d = 2, xi(u) = 1: psi(u, u) = u*1 + 1*u = 2u
    R = truncated_poly(1, QQ)
    c = coboundary(R, 2, {1: R.basis_vec(0)})
    assert c.value(1, 1) == [QQ.zero, QQ.of(2)]
    assert not any(c.value(0, 1))
    assert not any(c.value(0, 0))


def test_coboundaries_are_cocycles():
    for R, d in [(truncated_poly(2, QQ), 2), (pmn_algebra(1, 1, QQ), 2),
                 (pmn_algebra(2, 1, QQ), 4), (truncated_poly(3, PrimeField(2)), 2)]:
        for b in coboundary_space(R, d):
            assert b.is_cocycle()
            assert not b.validate()


def test_zero_map_gives_zero_cochain():
    R = truncated_poly(2, QQ)
    assert coboundary(R, 2, {}).is_zero()


def test_cocycles_satisfy_identity():
    for R, d in [(pmn_algebra(1, 1, QQ), 2), (truncated_poly(2, QQ), 4)]:
        for z in cocycle_space(R, d):
            assert z.is_cocycle()
            assert not z.validate()


def test_monogenic_presentations():
    T = monogenic_deformation(2, 4, 1, QQ)
    u = T.big.basis_vec(T.big.index["u^1"])
    u3 = T.big.power(u, 3)
    want = T.big.zero_vec()
    want[T.big.index["t*u^1"]] = -QQ.one
    assert u3 == want
    # n=1, d=2: the relation reads u~^2 = -t u~
    T = monogenic_deformation(1, 2, 1, QQ)
    u = T.big.basis_vec(T.big.index["u^1"])
    want = T.big.zero_vec()
    want[T.big.index["t*u^1"]] = -QQ.one
    assert T.big.power(u, 2) == want
    assert not T.validate()
    with pytest.raises(ValueError):
        monogenic_deformation(2, 3, 1, QQ)
    with pytest.raises(ValueError):
        monogenic_deformation(2, 8, 1, QQ)


def test_monogenic_trivial_alpha_zero():
    T = monogenic_deformation(2, 4, 0, QQ)
    assert cocycle_from_triple(T).is_zero()


def test_presented_pmn_paper_instance():
    # m = n = 1, d = 2, a = v: u~^2 = -t v~, v~^2 = 0, dim 8
    T = presented_pmn_deformation(1, 1, 2, {1: 1}, {}, QQ)
    big = T.big
    assert big.dim == 8
    u = big.basis_vec(big.index["u^1*v^0"])
    v = big.basis_vec(big.index["u^0*v^1"])
    want = big.zero_vec()
    want[big.index["t*u^0*v^1"]] = -QQ.one
    assert big.mul(u, u) == want
    assert not any(big.mul(v, v))
    assert verify_algebra(big).ok
    assert not T.validate()


def test_presented_pmn_zero_coeffs_is_tensor_of_trivials():
    for m, n, d in [(1, 1, 2), (2, 1, 4), (2, 2, 2)]:
        P = presented_pmn_deformation(m, n, d, {}, {}, QQ)
        E = exterior_product(monogenic_deformation(m, d, 0, QQ, gen="u"),
                             monogenic_deformation(n, d, 0, QQ, gen="v"))
        assert P.big == E.big


def test_presented_pmn_random_coeffs_verify():
    rng = random.Random(7)
    m, n, d = 2, 1, 4
    ra = pmn_coefficient_range(m, n, d, "a")
    rb = pmn_coefficient_range(m, n, d, "b")
    for _ in range(5):
        a = {i: rng.randint(-4, 4) for i in ra}
        b = {i: rng.randint(-4, 4) for i in rb}
        T = presented_pmn_deformation(m, n, d, a, b, QQ)
        assert verify_algebra(T.big).ok
        assert flatness_check(T.big, T.t_index).ok
        assert not T.validate()


def test_presented_pmn_errors():
    with pytest.raises(ValueError):
        presented_pmn_deformation(1, 1, 3, {}, {}, QQ)
    with pytest.raises(ValueError):
        presented_pmn_deformation(1, 1, 2, {5: 1}, {}, QQ)
    with pytest.raises(ValueError):
        presented_pmn_deformation(2, 1, 4, {}, {3: 1}, QQ)


def test_triple_from_cocycle_trivial_and_errors():
    R = pmn_algebra(1, 1, QQ)
    T = trivial_deformation(R, 2)
    assert not T.validate()
    assert flatness_check(T.big, T.t_index).ok
    # products of base lifts have no t-part
    assert cocycle_from_triple(T).is_zero()
    # a non-cocycle is rejected: with psi(u, uv) = uv the identity fails at
    # (u, u, v), where the only surviving term is +psi(u, uv)
    iu, iuv = R.index["u^1*v^0"], R.index["u^1*v^1"]
    bad = [[R.zero_vec() for _ in range(R.dim)] for _ in range(R.dim)]
    bad[iu][iuv][iuv] = QQ.one
    bad[iuv][iu][iuv] = QQ.one
    nc = Cochain2(R, 2, bad)
    assert not nc.validate() and not nc.is_cocycle()
    with pytest.raises(ValueError):
        triple_from_cocycle(R, 2, nc)


def test_cocycle_from_monogenic_matches_hand_formula():
    # u~^i u~^j = -alpha t u~^(i+j-d/2) once i+j > n, zero past the top
    n, d, alpha = 2, 4, 3
    T = monogenic_deformation(n, d, alpha, QQ)
    c = cocycle_from_triple(T)
    R = T.base
    for i in range(n + 1):
        for j in range(n + 1):
            want = R.zero_vec()
            e = i + j - d // 2
            if i + j >= n + 1 and 0 <= e <= n:
                want[e] = -QQ.of(alpha)
            assert c.value(i, j) == want


def test_sections_differ_by_coboundary():
    n, d, alpha = 2, 4, 5
    T = monogenic_deformation(n, d, alpha, QQ)
    R, big = T.base, T.big
    sec = [list(v) for v in T.section_matrix()]
    # perturb the section by t-multiples in matching degrees
    sec2 = [list(v) for v in sec]
    for b in range(R.dim):
        shift_deg = R.degrees[b] - d
        for i, deg in enumerate(R.degrees):
            if deg == shift_deg:
                sec2[b] = vadd(sec2[b], big.mul(T.t_vec(), sec[i]))
    c1 = cocycle_from_triple(T)
    c2 = cocycle_from_triple(T, section=sec2)
    diff = c1.sub(c2)
    ds = def_space(R, d)
    ech = Echelon(QQ)
    for bnd in ds.coboundary_basis:
        ech.add(dense_to_dict(ds.index.from_cochain(bnd)))
    assert ech.contains(ds.index.from_cochain(diff))
    # and both classify to the same class
    assert ds.class_coords(c1) == ds.class_coords(c2)


def test_flatness_counterexample():
    # F[t, x]/(t^2, tx, x^2) with deg x = 2: x kills t but is not in t*R~
    f = QQ
    z = [f.zero] * 3
    e = lambda i: [f.one if k == i else f.zero for k in range(3)]
    table = [[e(0), e(1), e(2)], [e(1), z, z], [e(2), z, z]]
    A = GradedAlgebra(f, ["1", "t", "x"], [0, 2, 2], 0, table)
    assert verify_algebra(A).ok
    rep = flatness_check(A, 1)
    assert not rep.ok
    assert rep.witness is not None
    assert not any(A.mul(rep.witness, A.basis_vec(1)))  # witness kills t


def test_flatness_requires_square_zero():
    R = truncated_poly(2, QQ)
    with pytest.raises(ValueError):
        flatness_check(R, 1)  # u^2 != 0


def test_triple_validation_catches_wrong_t():
    T = monogenic_deformation(2, 4, 1, QQ)
    from qdeform.deformation import DeformationTriple
    bad = DeformationTriple(T.big, T.base, T.big.index["u^1"], T.j, 4)
    assert bad.validate()


def test_sum_with_trivial_is_identity():
    R = truncated_poly(2, QQ)
    d = 4
    T = monogenic_deformation(2, d, 3, QQ)
    S = sum_deformations(T, trivial_deformation(R, d))
    assert not S.validate()
    ds = def_space(R, d)
    assert ds.class_coords(cocycle_from_triple(S)) == \
        ds.class_coords(cocycle_from_triple(T))


def test_sum_of_monogenic_adds_coefficients():
    ds = def_space(truncated_poly(3, QQ), 4)
    Ta = monogenic_deformation(3, 4, 2, QQ)
    Tb = monogenic_deformation(3, 4, 7, QQ)
    Ts = sum_deformations(Ta, Tb)
    Tab = monogenic_deformation(3, 4, 9, QQ)
    assert ds.class_coords(cocycle_from_triple(Ts)) == \
        ds.class_coords(cocycle_from_triple(Tab))


def test_sum_cocycle_is_sum_of_cocycles_mod_coboundaries():
    R = pmn_algebra(1, 1, QQ)
    d = 2
    T1 = presented_pmn_deformation(1, 1, d, {1: 2}, {2: 1}, QQ)
    T2 = presented_pmn_deformation(1, 1, d, {1: 1}, {}, QQ)
    Ts = sum_deformations(T1, T2)
    c = cocycle_from_triple(Ts)
    csum = cocycle_from_triple(T1).add(cocycle_from_triple(T2))
    ds = def_space(R, d)
    assert ds.class_coords(c) == ds.class_coords(csum)


def test_sum_rejects_mismatched_inputs():
    T1 = monogenic_deformation(2, 4, 1, QQ)
    T2 = monogenic_deformation(1, 4, 1, QQ)
    with pytest.raises(ValueError):
        sum_deformations(T1, T2)
    T3 = monogenic_deformation(2, 2, 1, QQ)
    with pytest.raises(ValueError):
        sum_deformations(T1, T3)


def test_class_coords_rejects_non_cocycle():
    R2 = pmn_algebra(1, 1, QQ)
    iu, iuv = R2.index["u^1*v^0"], R2.index["u^1*v^1"]
    vals = [[R2.zero_vec() for _ in range(R2.dim)] for _ in range(R2.dim)]
    vals[iu][iuv][iuv] = QQ.one
    vals[iuv][iu][iuv] = QQ.one
    c = Cochain2(R2, 2, vals)
    assert not c.is_cocycle()
    ds2 = def_space(R2, 2)
    with pytest.raises(ValueError):
        ds2.class_coords(c)


def test_round_trip_preserves_class_small_random():
    rng = random.Random(11)
    R = pmn_algebra(1, 1, QQ)
    d = 2
    ds = def_space(R, d)
    for _ in range(10):
        lam = [QQ.of(rng.randint(-3, 3)) for _ in range(ds.dimension)]
        c = Cochain2.zero(R, d)
        for coef, rep in zip(lam, ds.representatives):
            c = c.add(rep.scale(coef))
        T = triple_from_cocycle(R, d, c)
        assert flatness_check(T.big, T.t_index).ok
        back = cocycle_from_triple(T)
        assert ds.class_coords(back) == ds.class_coords(c)
