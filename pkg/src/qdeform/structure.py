"""Classification of deformations of F[u]/u^(m+1) and F[u,v]/(u^(m+1), v^(n+1)).

Every deformation of the one- or two-variable truncated polynomial ring is
determined by the coefficients appearing when the lifted generator powers
u~^(m+1), v~^(n+1) are expanded as -t times an element of the base; for
d = 2 those coefficients are canonical only modulo (m+1)u^m resp. (n+1)v^n,
and canonical representatives zero the pure-power coefficient whenever m+1
resp. n+1 is invertible.

On top of the coordinates sit the exterior product of deformations, the
split and semi-split decision procedures (the latter an honest search over
the affine family of generator lifts), and projectivized-bundle
deformations from integer Chern coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GradedAlgebra, pmn_index, truncated_poly, tensor
from .deformation import (
    Cochain2,
    DeformationTriple,
    _sign_is_neg,
    monogenic_deformation,
    pmn_coefficient_range,
    presented_pmn_deformation,
    trivial_deformation,
)
from .algebra import AlgebraHom
from .linalg import (
    Echelon,
    PrecomputedSolver,
    dense_to_dict,
    intersect_spans,
    is_zero_vec,
    solve,
    vadd,
    vscale,
    vsub,
)


def pmn_shape(R):
    """(m, n) for an algebra with the canonical u^p*v^q basis."""
    m = n = 0
    for name in R.names:
        up, vp = name.split("*")
        m = max(m, int(up.split("^")[1]))
        n = max(n, int(vp.split("^")[1]))
    for p in range(m + 1):
        for q in range(n + 1):
            i = pmn_index(m, n, p, q)
            if R.names[i] != "u^%d*v^%d" % (p, q) or R.degrees[i] != 2 * (p + q):
                raise ValueError("algebra does not carry the u^p*v^q basis")
    return m, n


@dataclass
class PmnCoordinates:
    """Classifying pair (a, b); keys are the coefficient indices i.

    a_i multiplies u^(i-d/2) v^(m+1-i), b_i multiplies u^(i-d/2) v^(n+1-i).
    Zero coefficients are dropped. reduced means d = 2 canonical
    representatives were taken.
    """

    m: int
    n: int
    d: int
    a: dict
    b: dict
    reduced: bool = False

    def monomials(self, side):
        out = {}
        coeffs = self.a if side == "a" else self.b
        top = self.m if side == "a" else self.n
        for i, c in coeffs.items():
            out["u^%d*v^%d" % (i - self.d // 2, top + 1 - i)] = c
        return out

    def __eq__(self, other):
        if not isinstance(other, PmnCoordinates):
            return NotImplemented
        return ((self.m, self.n, self.d) == (other.m, other.n, other.d)
                and self.a == other.a and self.b == other.b)


def classify_monogenic(T):
    """Classifying coefficient of a deformation of F[u]/u^(n+1).

    For d = 2 a canonical coset representative is returned: zero when n+1 is
    invertible, the raw coefficient when the characteristic divides n+1.
    """
    base = T.base
    f = base.field
    if T.d % 2 != 0:
        raise ValueError("d must be even")
    n = base.dim - 1
    gen = T.section_matrix()[1]
    power = T.big.power(gen, n + 1)
    a = T.t_component([-c for c in power])
    exp = n + 1 - T.d // 2
    alpha = a[exp] if 0 <= exp <= n else f.zero
    # everything else in a must vanish by degree
    if T.d == 2 and f.of(n + 1):
        return f.zero
    return alpha


def _reduce_side(field, coeffs, top, d, pure_i):
    """Canonical d=2 representative: drop the pure coefficient when top+1
    is invertible."""
    out = {i: c for i, c in coeffs.items() if c}
    if d == 2 and field.of(top + 1) and pure_i in out:
        del out[pure_i]
    return out


def classify_pmn(T, lifts=None):
    """Classifying coordinates (a, b) of a deformation of H*(CP^m x CP^n).

    lifts optionally overrides the generator lifts (u-lift, v-lift); the
    returned canonical coordinates are lift-independent.
    """
    if T.d % 2 != 0:
        raise ValueError("d must be even")
    base = T.base
    f = base.field
    m, n = pmn_shape(base)
    d = T.d
    if lifts is None:
        sec = T.section_matrix()
        ulift = sec[pmn_index(m, n, 1, 0)]
        vlift = sec[pmn_index(m, n, 0, 1)]
    else:
        ulift, vlift = lifts
    a_vec = T.t_component([-c for c in T.big.power(ulift, m + 1)])
    b_vec = T.t_component([-c for c in T.big.power(vlift, n + 1)])
    a = {}
    for i in pmn_coefficient_range(m, n, d, "a"):
        c = a_vec[pmn_index(m, n, i - d // 2, m + 1 - i)]
        if c:
            a[i] = c
    b = {}
    for i in pmn_coefficient_range(m, n, d, "b"):
        c = b_vec[pmn_index(m, n, i - d // 2, n + 1 - i)]
        if c:
            b[i] = c
    a = _reduce_side(f, a, m, d, m + 1)
    b = _reduce_side(f, b, n, d, d // 2)
    return PmnCoordinates(m, n, d, a, b, reduced=(d == 2))


def exterior_product(T1, T2):
    """Deformation of R1 (x) R2 obtained by gluing the two t's.

    The balanced tensor product over F[e]/e^2: inside big1 (x) big2 the
    relation (t1 x) (x) y = x (x) (t2 y) is divided out; the quotient basis
    is s1(e) (x) s2(f) together with its t-shift, and products are reduced by
    one precomputed elimination. Requires even d.
    """
    if T1.d != T2.d:
        raise ValueError("factors have different dimensions d")
    if T1.d % 2 != 0:
        raise ValueError("exterior products are defined for even d")
    if T1.base.field != T2.base.field:
        raise ValueError("factors live over different fields")
    f = T1.base.field
    d = T1.d
    base = tensor(T1.base, T2.base)
    amb = tensor(T1.big, T2.big)
    n1, n2 = T1.big.dim, T2.big.dim
    N1, N2 = T1.base.dim, T2.base.dim
    N = N1 * N2

    def kron(x, y):
        v = [f.zero] * (n1 * n2)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        v[i * n2 + j] = xi * yj
        return v

    s1, s2 = T1.section_matrix(), T2.section_matrix()
    t1s1 = [T1.big.mul(T1.t_vec(), w) for w in s1]
    P = [kron(s1[e], s2[g]) for e in range(N1) for g in range(N2)]
    Qv = [kron(t1s1[e], s2[g]) for e in range(N1) for g in range(N2)]
    W = []
    for i in range(n1):
        t1x = T1.big.mul_basis(T1.t_index, i)
        for j in range(n2):
            t2y = T2.big.mul_basis(T2.t_index, j)
            w = vsub(kron(t1x, T2.big.basis_vec(j)),
                     kron(T1.big.basis_vec(i), t2y))
            if any(w):
                W.append(w)
    cols = P + Qv + W
    rows = []
    for comp in range(n1 * n2):
        row = {}
        for pos, v in enumerate(cols):
            if v[comp]:
                row[pos] = v[comp]
        rows.append(row)
    reducer = PrecomputedSolver(f, rows, len(cols))

    names = list(base.names) + ["t*%s" % nm for nm in base.names]
    degrees = list(base.degrees) + [d + deg for deg in base.degrees]
    reps = P + Qv
    dim = 2 * N
    table = [[None] * dim for _ in range(dim)]
    for aidx in range(dim):
        for bidx in range(dim):
            prod = amb.mul(reps[aidx], reps[bidx])
            coords = reducer.solve(prod)
            table[aidx][bidx] = list(coords[:2 * N])
    big = GradedAlgebra(f, names, degrees, base.unit_index, table)
    jmat = [base.basis_vec(i) for i in range(N)] + [base.zero_vec()] * N
    j = AlgebraHom(big, base, jmat)
    return DeformationTriple(big, base, N + base.unit_index, j, d)


def exterior_cochain(c1, c2, R):
    """Cochain of the exterior product from the factor cochains.

    psi(x1 (x) x2, y1 (x) y2) = (-1)^(deg x2 deg y1) (psi1(x1,y1) (x) x2 y2
    + (-1)^(deg(x1 y1) d) x1 y1 (x) psi2(x2,y2)); valid for any d.
    """
    R1, R2 = c1.algebra, c2.algebra
    if c1.d != c2.d:
        raise ValueError("cochains have different d")
    d = c1.d
    f = R1.field
    n1, n2 = R1.dim, R2.dim

    def kron(x, y):
        v = [f.zero] * (n1 * n2)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        v[i * n2 + j] = xi * yj
        return v

    dim = n1 * n2
    vals = [[None] * dim for _ in range(dim)]
    for e in range(n1):
        for g in range(n2):
            for x in range(n1):
                for y in range(n2):
                    term1 = kron(c1.values[e][x], R2.mul_basis(g, y))
                    prod1 = R1.mul_basis(e, x)
                    deg1 = R1.degrees[e] + R1.degrees[x]
                    term2 = kron(prod1, c2.values[g][y])
                    if _sign_is_neg(deg1, d):
                        term2 = [-c for c in term2]
                    v = vadd(term1, term2)
                    if _sign_is_neg(R2.degrees[g], R1.degrees[x]):
                        v = [-c for c in v]
                    vals[e * n2 + g][x * n2 + y] = v
    return Cochain2(R, d, vals)


@dataclass
class SplitResult:
    split: bool
    coords: PmnCoordinates
    factors: tuple | None          # (deformation of factor 1, of factor 2)
    offending: list                # [(side, index)] coordinates blocking a split


def is_split(T):
    """Split = exterior product of deformations of the two factors.

    In canonical coordinates this means a is supported on the pure u-power
    and b on the pure v-power.
    """
    coords = classify_pmn(T)
    m, n, d = coords.m, coords.n, coords.d
    f = T.base.field
    off = [("a", i) for i in sorted(coords.a) if i != m + 1]
    off += [("b", i) for i in sorted(coords.b) if i != d // 2]
    if off:
        return SplitResult(False, coords, None, off)
    alpha = coords.a.get(m + 1, f.zero)
    beta = coords.b.get(d // 2, f.zero)
    if d <= 2 * m + 2:
        f1 = monogenic_deformation(m, d, alpha, f, gen="u")
    else:
        f1 = trivial_deformation(truncated_poly(m, f, "u"), d)
    if d <= 2 * n + 2:
        f2 = monogenic_deformation(n, d, beta, f, gen="v")
    else:
        f2 = trivial_deformation(truncated_poly(n, f, "v"), d)
    return SplitResult(True, coords, (f1, f2), [])


@dataclass
class SemiSplitWitness:
    """Lift and scalar with lift^power + alpha t lift^(power - d/2) = 0 in R~."""

    factor: int
    lift: list
    alpha: object
    power: int
    reduction_exponent: int  # power - d/2; negative means the t-term is absent

    def holds(self, T):
        big = T.big
        lhs = big.power(self.lift, self.power)
        if self.reduction_exponent >= 0:
            term = big.mul(T.t_vec(), big.power(self.lift, self.reduction_exponent))
            lhs = vadd(lhs, vscale(self.alpha, term))
        return is_zero_vec(lhs)


@dataclass
class SemiSplitResult:
    semisplit: bool
    factor: int
    witness: SemiSplitWitness | None
    offending: list


def is_semisplit(T, factor):
    """Search for a generator lift embedding a factor deformation into T.

    The lift of the chosen factor's degree-2 generator is unique for d > 2
    and a one-parameter family lift + gamma*t for d = 2; existence of
    (gamma, alpha) with lift^(top+1) + alpha t lift^(top+1-d/2) = 0 is an
    exact linear solve, and the returned witness satisfies that equation on
    the nose.
    """
    if factor not in (1, 2):
        raise ValueError("factor must be 1 or 2")
    base = T.base
    f = base.field
    m, n = pmn_shape(base)
    d = T.d
    top = m if factor == 1 else n
    gen_idx = pmn_index(m, n, 1, 0) if factor == 1 else pmn_index(m, n, 0, 1)
    lift0 = T.section_matrix()[gen_idx]
    power = T.big.power(lift0, top + 1)
    a_vec = T.t_component([-c for c in power])  # lift0^(top+1) = -t * (lift of a_vec)

    def side_mono(i):
        if factor == 1:
            return pmn_index(m, n, i - d // 2, m + 1 - i)
        return pmn_index(m, n, i - d // 2, n + 1 - i)

    side = "a" if factor == 1 else "b"
    rng = pmn_coefficient_range(m, n, d, side)
    pure_i = (m + 1) if factor == 1 else d // 2
    red_exp = top + 1 - d // 2
    # unknowns: alpha (col 0) and, for d = 2, gamma (col 1); equations per
    # coefficient index: alpha*[i == pure] + (top+1)*gamma*[i == pure] = a_i
    ncols = 2 if d == 2 else 1
    eqns = []
    for i in rng:
        row = {}
        if i == pure_i and red_exp >= 0:
            row[0] = f.one
        if d == 2 and i == pure_i:
            row[1] = f.of(top + 1)
        eqns.append((row, a_vec[side_mono(i)], i))
    x, _ = solve(f, eqns, ncols)
    if x is None:
        off = [(side, i) for i in rng if a_vec[side_mono(i)] and i != pure_i]
        return SemiSplitResult(False, factor, None, off)
    alpha = x[0]
    lift = list(lift0)
    if d == 2 and x[1]:
        lift = vadd(lift, vscale(x[1], T.t_vec()))
    wit = SemiSplitWitness(factor, lift, alpha, top + 1, red_exp)
    if not wit.holds(T):
        raise AssertionError("semi-split witness fails its defining equation")
    return SemiSplitResult(True, factor, wit, [])


def subalgebra_span(A, gens):
    """Basis of the unital subalgebra generated by the given elements."""
    ech = Echelon(A.field)
    basis = []

    def push(v):
        if ech.add(dense_to_dict(v)) is not None:
            basis.append(list(v))
            return True
        return False

    push(A.unit_vec())
    for g in gens:
        push(g)
    while True:
        grew = False
        cur = list(basis)
        for x in cur:
            for y in cur:
                if push(A.mul(x, y)):
                    grew = True
        if not grew:
            return basis


def semisplit_subalgebra_criterion(T, subalg_basis, factor):
    """Subalgebra criterion for being semi-split with respect to a factor.

    Requires: t in the subalgebra, j(subalgebra) = the factor's image in R,
    and dim(subalgebra ∩ t R~) <= dim of the factor. Returns (ok, failures).
    """
    big, base = T.big, T.base
    f = big.field
    m, n = pmn_shape(base)
    fails = []
    ech = Echelon(f)
    for v in subalg_basis:
        ech.add(dense_to_dict(v))
    if not ech.contains(T.t_vec()):
        fails.append("t not in subalgebra")
    for x in subalg_basis:
        for y in subalg_basis:
            if not ech.contains(big.mul(x, y)):
                fails.append("not closed under multiplication")
                break
        else:
            continue
        break
    # image of j on the subalgebra vs the factor's monomials
    img = Echelon(f)
    for v in subalg_basis:
        img.add(dense_to_dict(T.j.apply(v)))
    want = Echelon(f)
    top = m if factor == 1 else n
    for p in range(top + 1):
        idx = pmn_index(m, n, p, 0) if factor == 1 else pmn_index(m, n, 0, p)
        want.add(dense_to_dict(base.basis_vec(idx)))
    if img.rank != want.rank or not all(
            want.contains([row.get(c, f.zero) for c in range(base.dim)])
            for row in img.pivots.values()):
        fails.append("j(subalgebra) differs from the factor image")
    # dim(subalgebra ∩ t R~)
    timg = [big.mul(T.t_vec(), big.basis_vec(i)) for i in range(big.dim)]
    inter = intersect_spans(f, subalg_basis, timg, big.dim)
    if len(inter) > top + 1:
        fails.append("dim(subalgebra ∩ t R~) = %d > %d" % (len(inter), top + 1))
    return (not fails), fails


def chern_deformation(m, n, d, gamma, field):
    """Deformation of H*(CP^m x CP^n) from integer Chern coefficients.

    gamma maps indices d/2 <= i <= min(n+1, m+d/2) to integers; the result
    is the two-relation presentation with a = 0 and
    b = sum_i gamma_i u^(i-d/2) v^(n+1-i).
    """
    nu = min(n + 1, m + d // 2)
    for i in gamma:
        if not (d // 2 <= i <= nu):
            raise ValueError("Chern index %r outside [%d, %d]" % (i, d // 2, nu))
    b = {i: field.of(c) for i, c in gamma.items() if c}
    return presented_pmn_deformation(m, n, d, {}, b, field)
