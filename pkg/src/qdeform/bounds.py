"""Betti-number arithmetic, cokernel rank lower bounds, and the cusp-curve
integer feasibility test.

The main bound: for odd k, the cokernel of the map on k-th homotopy induced
by including symplectic automorphisms into diffeomorphisms of
CP^m x CP^n has rank at least

    b_{2m+1-k}(P) - b_{2m+1-k}(CP^m) + b_{2n+1-k}(P) - b_{2n+1-k}(CP^n),

which coker_table cross-checks against dim Def_{k+1} - dim Def^s_{k+1}
computed independently by the deformation and structure modules.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import pmn_algebra
from .deformation import def_space, monogenic_deformation, trivial_deformation, \
    pmn_coefficient_range
from .fields import QQ
from .linalg import Echelon, dense_to_dict, intersect_spans
from .quantum import feasible_class_subspace, truncated_psi_pmn
from .structure import classify_pmn, exterior_product
from .deformation import Cochain2, triple_from_cocycle
from .algebra import truncated_poly


def betti_pmn(m, n, j):
    """dim H^j(CP^m x CP^n): lattice points 2p + 2q = j, p <= m, q <= n."""
    if j < 0 or j % 2 != 0:
        return 0
    h = j // 2
    return sum(1 for p in range(min(m, h) + 1) if 0 <= h - p <= n)


def betti_cpn(m, j):
    """dim H^j(CP^m)."""
    return 1 if j >= 0 and j % 2 == 0 and j <= 2 * m else 0


@dataclass
class BoundReport:
    m: int
    n: int
    k: int
    bound: int
    betti_terms: dict
    positive: bool


def theorem1_bound(m, n, k):
    """Cokernel rank lower bound at odd k, from Betti numbers of both factors."""
    if k % 2 == 0 or k < 1:
        raise ValueError("k must be odd and positive, got %r" % (k,))
    terms = {
        "b_pmn_mside": betti_pmn(m, n, 2 * m + 1 - k),
        "b_cpm": betti_cpn(m, 2 * m + 1 - k),
        "b_pmn_nside": betti_pmn(m, n, 2 * n + 1 - k),
        "b_cpn": betti_cpn(n, 2 * n + 1 - k),
    }
    bound = (terms["b_pmn_mside"] - terms["b_cpm"]
             + terms["b_pmn_nside"] - terms["b_cpn"])
    return BoundReport(m, n, k, bound, terms, bound > 0)


@dataclass
class LambdaBoundReport:
    m: int
    n: int
    k: int
    bound: int
    covered: bool    # the statement covers odd k with 1 <= k <= 2m-1


def lambda_bound(m, n, k):
    """One-sided bound valid for integrally weighted product forms."""
    if k % 2 == 0 or k < 1:
        raise ValueError("k must be odd and positive, got %r" % (k,))
    covered = k <= 2 * m - 1
    bound = betti_pmn(m, n, 2 * m + 1 - k) - betti_cpn(m, 2 * m + 1 - k)
    return LambdaBoundReport(m, n, k, bound, covered)


def _floor(x):
    return x.numerator // x.denominator


def _ceil(x):
    return -_floor(-x)


# Pairing of the first Chern class with the two line classes of P_21 is
# (3, 2); a component class k*L1 + l*L2 pairs to 3k + 2l. A simple sphere
# in class A_i exists in the 2-parameter family only if the parametrized
# map space has dimension at least dim PSL_2(C) = 6, i.e. the pairing is
# at least -1; with <c1, A> = 2 the complementary component gives the upper
# bound 3.
C1_PAIRING_MIN = -1
C1_PAIRING_MAX = 3


@dataclass
class CuspFeasibility:
    lam: object            # exact rational > 1
    solutions: list        # [(k, l)] with 0 < lam*k + l < 1 and pairing bounds
    feasible: bool
    exhaustive: bool
    kmax: int | None


def cusp_feasibility(lam, kmax=200):
    """Integer pairs (k, l) splitting the line class of the weighted product.

    Constraints: 0 < lam*k + l < 1 exactly (both component symplectic areas
    positive) and C1_PAIRING_MIN <= 3k + 2l <= C1_PAIRING_MAX (both
    component moduli spaces nonempty for a generic 2-parameter family). The
    region is bounded unless lam = 3/2, where only |k| <= kmax is scanned
    and the result is flagged non-exhaustive.
    """
    one = QQ.one
    lam = QQ.parse(lam) if isinstance(lam, str) else (
        QQ.of(lam) if isinstance(lam, int) else lam)
    if not lam > QQ.one:
        raise ValueError("lambda must be > 1")
    three_minus = QQ.of(3) - QQ.of(2) * lam
    if three_minus:
        span = QQ.of(C1_PAIRING_MAX - C1_PAIRING_MIN + 2)
        bound = span / (three_minus if three_minus > QQ.zero else -three_minus)
        K = _floor(bound) + 1
        exhaustive = True
    else:
        K = kmax
        exhaustive = False
    sols = []
    for k in range(-K, K + 1):
        lo_open = -lam * QQ.of(k)              # l > -lam k
        hi_open = one - lam * QQ.of(k)         # l < 1 - lam k
        lo_closed = QQ.of(C1_PAIRING_MIN - 3 * k) / QQ.of(2)
        hi_closed = QQ.of(C1_PAIRING_MAX - 3 * k) / QQ.of(2)
        l_min = max(_floor(lo_open) + 1, _ceil(lo_closed))
        l_max = min(_ceil(hi_open) - 1, _floor(hi_closed))
        for l in range(l_min, l_max + 1):
            sols.append((k, l))
    return CuspFeasibility(lam, sols, bool(sols), exhaustive,
                           None if exhaustive else kmax)


def split_subspace_dimension(m, n, d, field=QQ):
    """dim of the split classes, from classification of exterior products.

    Spans the classified coordinates of exterior products of the basis
    one-sided deformations; this is an independent computation, not the
    pure-monomial count.
    """
    ra = pmn_coefficient_range(m, n, d, "a")
    rb = pmn_coefficient_range(m, n, d, "b")
    ncoords = len(ra) + len(rb)
    gens = []
    if d <= 2 * m + 2:
        gens.append((monogenic_deformation(m, d, 1, field, gen="u"),
                     _trivial_factor(n, d, field, "v")))
    if d <= 2 * n + 2:
        gens.append((_trivial_factor(m, d, field, "u"),
                     monogenic_deformation(n, d, 1, field, gen="v")))
    ech = Echelon(field)
    dim = 0
    for f1, f2 in gens:
        co = classify_pmn(exterior_product(f1, f2))
        vec = [co.a.get(i, field.zero) for i in ra] + \
              [co.b.get(i, field.zero) for i in rb]
        if ech.add(dense_to_dict(vec)) is not None:
            dim += 1
    return dim


def _trivial_factor(n, d, field, gen):
    if d <= 2 * n + 2:
        return monogenic_deformation(n, d, 0, field, gen=gen)
    return trivial_deformation(truncated_poly(n, field, gen), d)


@dataclass
class CokerRow:
    k: int
    bound: int
    dim_def: int | None
    dim_split: int | None
    consistent: bool | None


def coker_table(m, n, cross_check=True, field=QQ):
    """Bound table over odd k, cross-checked against the deformation side.

    Each row's Betti-number bound must equal dim Def_{k+1} - dim Def^s_{k+1}
    computed by the deformation and structure modules.
    """
    rows = []
    for k in range(1, 2 * max(m, n) + 2, 2):
        rep = theorem1_bound(m, n, k)
        if not cross_check:
            rows.append(CokerRow(k, rep.bound, None, None, None))
            continue
        d = k + 1
        ds = def_space(pmn_algebra(m, n, field), d)
        dim_split = split_subspace_dimension(m, n, d, field)
        rows.append(CokerRow(k, rep.bound, ds.dimension, dim_split,
                             rep.bound == ds.dimension - dim_split))
    return rows


@dataclass
class PipelineReport:
    m: int
    n: int
    d: int
    dim_def: int
    dim_split: int
    bound: int
    feasible_dim_factor2: int
    feasible_dim_factor1: int
    containment_factor2_semisplit1: bool
    containment_factor1_semisplit2: bool
    intersection_split: bool
    betti_consistent: bool

    @property
    def ok(self):
        return (self.containment_factor2_semisplit1
                and self.containment_factor1_semisplit2
                and self.intersection_split and self.betti_consistent)


def semisplit_pipeline(m, n, d, field=QQ):
    """Full feasibility-vs-splitting run for one (m, n, d).

    Computes the deformation classes, the exact feasible subspaces for the
    line class in either factor, and asserts: feasible-for-factor-2 classes
    are semi-split with respect to factor 1 (zero mixed a-coordinates),
    symmetrically for factor 1, and the intersection is split. Emits
    dim Def_d, dim Def^s_d, and the cokernel bound.
    """
    if d % 2 != 0 or d < 2:
        raise ValueError("d must be even and positive")
    R = pmn_algebra(m, n, field)
    ds = def_space(R, d)
    Q2 = truncated_psi_pmn(m, n, field, line_factor=2)
    Q1 = truncated_psi_pmn(m, n, field, line_factor=1)
    F2 = feasible_class_subspace(ds, Q2)
    F1 = feasible_class_subspace(ds, Q1)
    ra = pmn_coefficient_range(m, n, d, "a")
    rb = pmn_coefficient_range(m, n, d, "b")

    def classify_lambda(lam):
        c = Cochain2.zero(R, d)
        for i, coef in enumerate(lam):
            if coef:
                c = c.add(ds.representatives[i].scale(coef))
        co = classify_pmn(triple_from_cocycle(R, d, c))
        return ([co.a.get(i, field.zero) for i in ra],
                [co.b.get(i, field.zero) for i in rb])

    def a_pure(lam):
        va, _ = classify_lambda(lam)
        return all(not c for i, c in zip(ra, va) if i != m + 1)

    def b_pure(lam):
        _, vb = classify_lambda(lam)
        return all(not c for i, c in zip(rb, vb) if i != d // 2)

    cont2 = all(a_pure(v) for v in F2.basis)
    cont1 = all(b_pure(v) for v in F1.basis)
    inter = intersect_spans(field, F2.basis, F1.basis, ds.dimension)
    inter_ok = all(a_pure(v) and b_pure(v) for v in inter)
    dim_split = split_subspace_dimension(m, n, d, field)
    bound = ds.dimension - dim_split
    betti = theorem1_bound(m, n, d - 1).bound if (d - 1) % 2 == 1 else None
    return PipelineReport(
        m, n, d, ds.dimension, dim_split, bound,
        F2.dimension, F1.dimension,
        cont2, cont1, inter_ok,
        betti == bound,
    )
