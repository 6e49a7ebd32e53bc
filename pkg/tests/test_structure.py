import random

import pytest

from qdeform.fields import QQ, PrimeField
from qdeform.algebra import pmn_algebra, pmn_index, truncated_poly, verify_algebra
from qdeform.deformation import (
    Cochain2,
    cocycle_from_triple,
    def_space,
    monogenic_deformation,
    pmn_coefficient_range,
    presented_pmn_deformation,
    sum_deformations,
    triple_from_cocycle,
    trivial_deformation,
)
from qdeform.structure import (
    chern_deformation,
    classify_monogenic,
    classify_pmn,
    exterior_cochain,
    exterior_product,
    is_semisplit,
    is_split,
    pmn_shape,
    semisplit_subalgebra_criterion,
    subalgebra_span,
)
from qdeform.linalg import Echelon, dense_to_dict, vadd, vscale


def test_pmn_shape():
    assert pmn_shape(pmn_algebra(2, 3, QQ)) == (2, 3)
    with pytest.raises(ValueError):
        pmn_shape(truncated_poly(2, QQ))


def test_classify_monogenic_round_trip():
    for n, d, alpha in [(2, 4, 3), (3, 6, -2), (1, 4, 5), (3, 8, 1)]:
        T = monogenic_deformation(n, d, alpha, QQ)
        assert classify_monogenic(T) == QQ.of(alpha)
    assert classify_monogenic(trivial_deformation(truncated_poly(2, QQ), 4)) == QQ.zero


def test_classify_monogenic_d2_coset():
    # over Q every d=2 deformation of F[u]/u^(n+1) is trivial
    assert classify_monogenic(monogenic_deformation(2, 2, 5, QQ)) == QQ.zero
    # over F_3 with n = 2 the coefficient survives
    F3 = PrimeField(3)
    assert classify_monogenic(monogenic_deformation(2, 2, 2, F3)) == F3.of(2)


def test_classify_monogenic_sum_law_fp():
    F3 = PrimeField(3)
    Ta = monogenic_deformation(2, 2, 1, F3)
    Tb = monogenic_deformation(2, 2, 1, F3)
    assert classify_monogenic(sum_deformations(Ta, Tb)) == F3.of(2)


def test_classify_pmn_round_trip():
    T = presented_pmn_deformation(2, 1, 4, {2: 5, 3: 7}, {2: 11}, QQ)
    co = classify_pmn(T)
    assert co.a == {2: QQ.of(5), 3: QQ.of(7)}
    assert co.b == {2: QQ.of(11)}
    assert co.monomials("a") == {"u^0*v^1": QQ.of(5), "u^1*v^0": QQ.of(7)}
    co0 = classify_pmn(trivial_deformation(pmn_algebra(2, 1, QQ), 4))
    assert co0.a == {} and co0.b == {}


def test_classify_pmn_d2_lift_independent():
    # canonical coordinates do not change under u~ -> u~ + gamma t
    T = presented_pmn_deformation(2, 2, 2, {2: 4, 3: 9}, {2: 1}, QQ)
    m, n = 2, 2
    sec = T.section_matrix()
    ulift = sec[pmn_index(m, n, 1, 0)]
    vlift = sec[pmn_index(m, n, 0, 1)]
    co = classify_pmn(T)
    for gamma_u, gamma_v in [(1, 0), (0, 2), (3, -1)]:
        u2 = vadd(ulift, vscale(QQ.of(gamma_u), T.t_vec()))
        v2 = vadd(vlift, vscale(QQ.of(gamma_v), T.t_vec()))
        assert classify_pmn(T, lifts=(u2, v2)) == co


def test_classify_pmn_additive_under_sums():
    m, n, d = 2, 1, 4
    T1 = presented_pmn_deformation(m, n, d, {2: 1, 3: 2}, {2: 3}, QQ)
    T2 = presented_pmn_deformation(m, n, d, {2: 4}, {2: -3}, QQ)
    co = classify_pmn(sum_deformations(T1, T2))
    assert co.a == {2: QQ.of(5), 3: QQ.of(2)}
    assert co.b == {}


def test_exterior_of_trivials_is_trivial():
    E = exterior_product(monogenic_deformation(1, 2, 0, QQ, gen="u"),
                         monogenic_deformation(1, 2, 0, QQ, gen="v"))
    assert cocycle_from_triple(E).is_zero()
    assert not E.validate()


def test_exterior_product_coordinates():
    E = exterior_product(monogenic_deformation(2, 4, 3, QQ, gen="u"),
                         monogenic_deformation(1, 4, 5, QQ, gen="v"))
    assert not E.validate()
    assert verify_algebra(E.big).ok
    co = classify_pmn(E)
    assert co.a == {3: QQ.of(3)}
    assert co.b == {2: QQ.of(5)}


def test_exterior_cochain_matches_triple_picture():
    # the cochain of the glued triple equals the formula on factor cochains,
    # up to a coboundary
    m, n, d = 2, 1, 4
    T1 = monogenic_deformation(m, d, 2, QQ, gen="u")
    T2 = monogenic_deformation(n, d, -3, QQ, gen="v")
    R = pmn_algebra(m, n, QQ)
    E = exterior_product(T1, T2)
    c_triple = cocycle_from_triple(E)
    c_formula = exterior_cochain(cocycle_from_triple(T1),
                                 cocycle_from_triple(T2), R)
    assert c_formula.is_cocycle()
    ds = def_space(R, d)
    assert ds.class_coords(c_triple) == ds.class_coords(c_formula)


def test_exterior_rejects_odd_d_and_mismatch():
    T1 = monogenic_deformation(1, 2, 0, QQ)
    T2 = monogenic_deformation(1, 4, 0, QQ)
    with pytest.raises(ValueError):
        exterior_product(T1, T2)


def test_is_split_on_exterior_products_and_trivial():
    E = exterior_product(monogenic_deformation(2, 4, 1, QQ, gen="u"),
                         monogenic_deformation(2, 4, 2, QQ, gen="v"))
    res = is_split(E)
    assert res.split
    f1, f2 = res.factors
    assert classify_monogenic(f1) == QQ.of(1)
    assert classify_monogenic(f2) == QQ.of(2)
    res = is_split(trivial_deformation(pmn_algebra(1, 1, QQ), 2))
    assert res.split


def test_is_split_rejects_mixed_terms():
    T = presented_pmn_deformation(2, 1, 4, {2: 1}, {}, QQ)
    res = is_split(T)
    assert not res.split
    assert ("a", 2) in res.offending


def test_split_factors_recompose():
    T = presented_pmn_deformation(2, 1, 4, {3: 7}, {2: 11}, QQ)
    res = is_split(T)
    assert res.split
    E = exterior_product(*res.factors)
    assert classify_pmn(E) == classify_pmn(T)


def test_semisplit_directions():
    # a mixed, b pure: semi-split w.r.t. factor 2 only
    T = presented_pmn_deformation(2, 2, 4, {2: 1}, {2: 5}, QQ)
    r1, r2 = is_semisplit(T, 1), is_semisplit(T, 2)
    assert not r1.semisplit and ("a", 2) in r1.offending
    assert r2.semisplit and r2.witness.holds(T)
    # a pure, b mixed: the other way around
    T = presented_pmn_deformation(2, 2, 4, {3: 4}, {3: 1}, QQ)
    assert is_semisplit(T, 1).semisplit
    assert not is_semisplit(T, 2).semisplit


def test_semisplit_witness_equation_and_subalgebra():
    T = presented_pmn_deformation(2, 1, 4, {3: 7}, {2: 2}, QQ)
    res = is_semisplit(T, 1)
    assert res.semisplit
    wit = res.witness
    assert wit.holds(T)
    # the subalgebra generated by {t, lift} meets the subalgebra criterion
    sub = subalgebra_span(T.big, [T.t_vec(), wit.lift])
    ok, fails = semisplit_subalgebra_criterion(T, sub, 1)
    assert ok, fails


def test_semisplit_d2_uses_lift_family():
    # over Q, d=2: a = alpha*u^m is within the coset of 0, found via gamma
    T = presented_pmn_deformation(2, 1, 2, {3: 6}, {}, QQ)
    res = is_semisplit(T, 1)
    assert res.semisplit
    assert res.witness.holds(T)


def test_semisplit_both_iff_split_sweep():
    rng = random.Random(3)
    for m in (1, 2, 3):
        for n in (1, 2, 3):
            for d in range(2, 2 * max(m, n) + 3, 2):
                ra = pmn_coefficient_range(m, n, d, "a")
                rb = pmn_coefficient_range(m, n, d, "b")
                cases = []
                for i in ra:
                    cases.append(({i: 1}, {}))
                for i in rb:
                    cases.append(({}, {i: 1}))
                for _ in range(3):
                    cases.append((
                        {i: rng.randint(-2, 2) for i in ra},
                        {i: rng.randint(-2, 2) for i in rb}))
                for a, b in cases:
                    T = presented_pmn_deformation(m, n, d, a, b, QQ)
                    both = (is_semisplit(T, 1).semisplit
                            and is_semisplit(T, 2).semisplit)
                    assert both == is_split(T).split, (m, n, d, a, b)


def test_exterior_image_is_exactly_the_split_subspace():
    m, n, d = 2, 1, 4
    ra = pmn_coefficient_range(m, n, d, "a")
    rb = pmn_coefficient_range(m, n, d, "b")
    ech = Echelon(QQ)
    count = 0
    for alpha, beta in [(1, 0), (0, 1), (2, 3)]:
        E = exterior_product(monogenic_deformation(m, d, alpha, QQ, gen="u"),
                             monogenic_deformation(n, d, beta, QQ, gen="v"))
        co = classify_pmn(E)
        # image lies in the pure-coordinate subspace
        assert all(i == m + 1 for i in co.a)
        assert all(i == d // 2 for i in co.b)
        vec = [co.a.get(i, QQ.zero) for i in ra] + \
              [co.b.get(i, QQ.zero) for i in rb]
        if ech.add(dense_to_dict(vec)) is not None:
            count += 1
    assert count == 2  # and it spans both pure directions


def test_chern_deformation_cases():
    m, n, d = 2, 2, 4
    assert cocycle_from_triple(chern_deformation(m, n, d, {}, QQ)).is_zero()
    # coefficient index d/2 hits the pure v-power: split
    T = chern_deformation(m, n, d, {d // 2: 2}, QQ)
    assert is_split(T).split
    # any higher index mixes in u: semi-split w.r.t. factor 1 only
    for i in range(d // 2 + 1, min(n + 1, m + d // 2) + 1):
        T = chern_deformation(m, n, d, {i: 1}, QQ)
        assert is_semisplit(T, 1).semisplit
        assert not is_semisplit(T, 2).semisplit
        assert not is_split(T).split
    with pytest.raises(ValueError):
        chern_deformation(m, n, d, {n + 2: 1}, QQ)
    with pytest.raises(ValueError):
        chern_deformation(m, n, d, {1: 1}, QQ)


def test_classify_requires_even_d():
    T = monogenic_deformation(2, 4, 1, QQ)
    object.__setattr__(T, "d", 3)
    with pytest.raises(ValueError):
        classify_monogenic(T)
