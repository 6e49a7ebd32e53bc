"""First-order deformations of graded algebras.

A d-dimensional deformation of R is carried in two equivalent pictures:

* a triple (R~, t, j): an algebra R~ with a square-zero element t of degree
  d and a surjection j onto R with kernel t*R~, flat in the sense that the
  annihilator of t is exactly t*R~;
* a 2-cochain: a graded-symmetric bilinear map psi: R x R -> R of degree -d
  satisfying the associator cocycle identity, taken modulo coboundaries of
  linear maps xi: R -> R of degree -d.

The deformation space def_space(R, d) is computed by exact sparse
elimination; triple_from_cocycle / cocycle_from_triple convert between the
pictures, and sum_deformations implements the fibre-sum of triples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraHom, GradedAlgebra, pmn_algebra, pmn_index, truncated_poly
from .linalg import (
    Echelon,
    PrecomputedSolver,
    dense_to_dict,
    is_zero_vec,
    kernel_basis,
    solve,
    vadd,
    vscale,
    vsub,
)


def _sign_is_neg(d, deg):
    # (-1)^(d*deg)
    return (d * deg) % 2 == 1


def _coerce(field, x):
    return field.of(x) if isinstance(x, int) else x


class Cochain2:
    """Graded-symmetric bilinear map R x R -> R, homogeneous of degree -d."""

    def __init__(self, algebra, d, values):
        self.algebra = algebra
        self.d = d
        self.values = tuple(tuple(tuple(v) for v in row) for row in values)

    @classmethod
    def zero(cls, algebra, d):
        z = [[algebra.zero_vec() for _ in range(algebra.dim)]
             for _ in range(algebra.dim)]
        return cls(algebra, d, z)

    def value(self, i, j):
        return list(self.values[i][j])

    def apply(self, x, y):
        A = self.algebra
        out = A.zero_vec()
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                out = vadd(out, vscale(xi * yj, self.values[i][j]))
        return out

    def add(self, other):
        vals = [[vadd(self.values[i][j], other.values[i][j])
                 for j in range(self.algebra.dim)]
                for i in range(self.algebra.dim)]
        return Cochain2(self.algebra, self.d, vals)

    def sub(self, other):
        vals = [[vsub(self.values[i][j], other.values[i][j])
                 for j in range(self.algebra.dim)]
                for i in range(self.algebra.dim)]
        return Cochain2(self.algebra, self.d, vals)

    def scale(self, c):
        vals = [[vscale(c, self.values[i][j])
                 for j in range(self.algebra.dim)]
                for i in range(self.algebra.dim)]
        return Cochain2(self.algebra, self.d, vals)

    def is_zero(self):
        return all(is_zero_vec(v) for row in self.values for v in row)

    def __eq__(self, other):
        if not isinstance(other, Cochain2):
            return NotImplemented
        return (self.algebra == other.algebra and self.d == other.d
                and self.values == other.values)

    def validate(self):
        """Degree and graded-symmetry violations (empty list when valid)."""
        A = self.algebra
        bad = []
        for i in range(A.dim):
            for j in range(A.dim):
                want = A.degrees[i] + A.degrees[j] - self.d
                for k, c in enumerate(self.values[i][j]):
                    if c and A.degrees[k] != want:
                        bad.append("value on (%s, %s) not of degree %d"
                                   % (A.names[i], A.names[j], want))
                        break
        for i in range(A.dim):
            for j in range(i, A.dim):
                mirror = list(self.values[j][i])
                if _sign_is_neg(A.degrees[i], A.degrees[j]):
                    mirror = [-c for c in mirror]
                if list(self.values[i][j]) != mirror:
                    bad.append("not graded symmetric on (%s, %s)"
                               % (A.names[i], A.names[j]))
        return bad

    def is_cocycle(self):
        """Associator cocycle identity on all basis triples."""
        A = self.algebra
        d = self.d
        for x in range(A.dim):
            sx = -1 if _sign_is_neg(d, A.degrees[x]) else 1
            ex = A.basis_vec(x)
            for y in range(A.dim):
                ey = A.basis_vec(y)
                xy = A.mul_basis(x, y)
                for z in range(A.dim):
                    ez = A.basis_vec(z)
                    yz = A.mul_basis(y, z)
                    t1 = A.mul(ex, self.values[y][z])
                    if sx < 0:
                        t1 = [-c for c in t1]
                    t2 = self.apply(list(xy), ez)
                    t3 = self.apply(ex, list(yz))
                    t4 = A.mul(self.values[x][y], ez)
                    acc = vsub(vadd(t1, t3), vadd(t2, t4))
                    if not is_zero_vec(acc):
                        return False
        return True


class CochainIndex:
    """Coordinates for graded-symmetric bilinear maps of total degree drop.

    Slots are triples (i, j, k) with i <= j over the basis of R and
    deg(k) = deg(i) + deg(j) - drop. Entries at (j, i) are recovered by the
    Koszul sign, so a dense coordinate vector over the slots determines the
    whole map.
    """

    def __init__(self, algebra, drop):
        self.algebra = algebra
        self.drop = drop
        self.slots = []
        self.pos = {}
        by_degree = {}
        for k, deg in enumerate(algebra.degrees):
            by_degree.setdefault(deg, []).append(k)
        self.by_degree = by_degree
        for i in range(algebra.dim):
            for j in range(i, algebra.dim):
                want = algebra.degrees[i] + algebra.degrees[j] - drop
                for k in by_degree.get(want, ()):
                    self.pos[(i, j, k)] = len(self.slots)
                    self.slots.append((i, j, k))

    @property
    def n(self):
        return len(self.slots)

    def slot(self, a, b, k):
        """(column, negate) for entry psi[a][b][k]; None when structurally zero."""
        if a <= b:
            col = self.pos.get((a, b, k))
            return (col, False) if col is not None else None
        col = self.pos.get((b, a, k))
        if col is None:
            return None
        deg = self.algebra.degrees
        return (col, _sign_is_neg(deg[a], deg[b]))

    def add_entry(self, row, a, b, k, coeff):
        s = self.slot(a, b, k)
        if s is None or not coeff:
            return
        col, neg = s
        c = -coeff if neg else coeff
        cur = row.get(col)
        new = c if cur is None else cur + c
        if new:
            row[col] = new
        else:
            row.pop(col, None)

    def to_cochain(self, coords, d=None):
        A = self.algebra
        vals = [[A.zero_vec() for _ in range(A.dim)] for _ in range(A.dim)]
        for (i, j, k), col in self.pos.items():
            c = coords[col]
            if not c:
                continue
            vals[i][j][k] = vals[i][j][k] + c
            if i != j:
                vals[j][i][k] = vals[j][i][k] + (
                    -c if _sign_is_neg(A.degrees[i], A.degrees[j]) else c)
        return Cochain2(A, self.drop if d is None else d, vals)

    def from_cochain(self, cochain):
        coords = [self.algebra.field.zero] * self.n
        for (i, j, k), col in self.pos.items():
            coords[col] = cochain.values[i][j][k]
        return coords

    def diagonal_symmetry_rows(self):
        """Rows 2*psi(e,e) = 0 for odd-degree e (vacuous in char 2)."""
        A = self.algebra
        two = A.field.of(2)
        rows = []
        if not two:
            return rows
        for (i, j, k), col in self.pos.items():
            if i == j and A.degrees[i] % 2 == 1:
                rows.append({col: two})
        return rows


def _cocycle_rows(index):
    """Sparse rows of the cocycle identity over the slot coordinates."""
    A = index.algebra
    d = index.drop
    rows = list(index.diagonal_symmetry_rows())
    for x in range(A.dim):
        neg_x = _sign_is_neg(d, A.degrees[x])
        for y in range(A.dim):
            xy = A.mul_basis(x, y)
            for z in range(A.dim):
                total = A.degrees[x] + A.degrees[y] + A.degrees[z] - d
                comps = index.by_degree.get(total)
                if not comps:
                    continue
                yz = A.mul_basis(y, z)
                for comp in comps:
                    row = {}
                    # (+/-) x * psi(y, z)
                    kdeg = A.degrees[y] + A.degrees[z] - d
                    for k in index.by_degree.get(kdeg, ()):
                        c = A.table[x][k][comp]
                        if c:
                            index.add_entry(row, y, z, k, -c if neg_x else c)
                    # - psi(xy, z)
                    for w, c in enumerate(xy):
                        if c:
                            index.add_entry(row, w, z, comp, -c)
                    # + psi(x, yz)
                    for w, c in enumerate(yz):
                        if c:
                            index.add_entry(row, x, w, comp, c)
                    # - psi(x, y) * z
                    kdeg = A.degrees[x] + A.degrees[y] - d
                    for k in index.by_degree.get(kdeg, ()):
                        c = A.table[k][z][comp]
                        if c:
                            index.add_entry(row, x, y, k, -c)
                    if row:
                        rows.append(row)
    return rows


def cocycle_space(R, d):
    """Basis of the space of cocycles of degree -d (exact kernel basis)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    index = CochainIndex(R, d)
    if index.n == 0:
        return []
    seen = set()
    rows = []
    for row in _cocycle_rows(index):
        key = tuple(sorted(row.items()))
        if key not in seen:
            seen.add(key)
            rows.append(row)
    return [index.to_cochain(v, d) for v in kernel_basis(R.field, rows, index.n)]


def coboundary(R, d, xi_entries):
    """Cochain of the linear map xi given as {basis index: image vector}."""
    A = R
    vals = [[A.zero_vec() for _ in range(A.dim)] for _ in range(A.dim)]
    for x in range(A.dim):
        neg_x = _sign_is_neg(d, A.degrees[x])
        xi_x = xi_entries.get(x)
        for y in range(A.dim):
            acc = A.zero_vec()
            xi_y = xi_entries.get(y)
            if xi_y is not None:
                t = A.mul(A.basis_vec(x), xi_y)
                acc = vsub(acc, t) if neg_x else vadd(acc, t)
            for w, c in enumerate(A.mul_basis(x, y)):
                if c and w in xi_entries:
                    acc = vsub(acc, vscale(c, xi_entries[w]))
            if xi_x is not None:
                acc = vadd(acc, A.mul(xi_x, A.basis_vec(y)))
            vals[x][y] = acc
    return Cochain2(A, d, vals)


def coboundary_space(R, d):
    """Basis of the space of coboundaries of degree -d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    index = CochainIndex(R, d)
    cochains = []
    for i in range(R.dim):
        target_deg = R.degrees[i] - d
        for k in R.homogeneous_indices(target_deg):
            cochains.append(coboundary(R, d, {i: R.basis_vec(k)}))
    ech = Echelon(R.field)
    basis = []
    for c in cochains:
        if ech.add(dense_to_dict(index.from_cochain(c))) is not None:
            basis.append(c)
    return basis


@dataclass
class DefSpace:
    """Deformation space of (R, d): dimension and class representatives."""

    algebra: GradedAlgebra
    d: int
    dimension: int
    representatives: list
    cocycle_basis: list
    coboundary_basis: list
    index: CochainIndex

    def class_coords(self, cochain):
        """Coordinates of a cocycle's class in the representative basis."""
        f = self.algebra.field
        cols = len(self.representatives) + len(self.coboundary_basis)
        vecs = [self.index.from_cochain(c)
                for c in self.representatives + self.coboundary_basis]
        target = self.index.from_cochain(cochain)
        eqns = []
        for comp in range(self.index.n):
            row = {i: v[comp] for i, v in enumerate(vecs) if v[comp]}
            eqns.append((row, target[comp], comp))
        x, _ = solve(f, eqns, cols)
        if x is None:
            raise ValueError("cochain does not lie in the cocycle space")
        return x[:len(self.representatives)]

    def classes_equal(self, c1, c2):
        return self.class_coords(c1) == self.class_coords(c2)


def def_space(R, d):
    """Deformation classes: cocycles modulo coboundaries, with representatives."""
    Z = cocycle_space(R, d)
    B = coboundary_space(R, d)
    index = CochainIndex(R, d)
    ech = Echelon(R.field)
    for b in B:
        ech.add(dense_to_dict(index.from_cochain(b)))
    reps = [z for z in Z
            if ech.add(dense_to_dict(index.from_cochain(z))) is not None]
    return DefSpace(R, d, len(reps), reps, Z, B, index)


class DeformationTriple:
    """A deformation (R~, t, j) of R of dimension d."""

    def __init__(self, big, base, t_index, j, d):
        self.big = big
        self.base = base
        self.t_index = t_index
        self.j = j
        self.d = d
        self._section = None
        self._t_solver = None

    def t_vec(self):
        return self.big.basis_vec(self.t_index)

    def section_matrix(self):
        """Degree-respecting linear section of j: preferred basis lifts.

        For each base element the first big basis element mapping exactly to
        it is chosen; if none exists, the first solution of the restricted
        linear system (free variables zero) is used.
        """
        if self._section is not None:
            return self._section
        big, base = self.big, self.base
        f = big.field
        sec = []
        for b in range(base.dim):
            if b == base.unit_index:
                sec.append(big.unit_vec())
                continue
            target = base.basis_vec(b)
            hit = None
            for i in range(big.dim):
                if list(self.j.matrix[i]) == target:
                    hit = i
                    break
            if hit is not None:
                sec.append(big.basis_vec(hit))
                continue
            cols = big.homogeneous_indices(base.degrees[b])
            eqns = []
            for comp in range(base.dim):
                row = {}
                for pos, i in enumerate(cols):
                    c = self.j.matrix[i][comp]
                    if c:
                        row[pos] = c
                eqns.append((row, target[comp], comp))
            x, _ = solve(f, eqns, len(cols))
            if x is None:
                raise ValueError("j is not surjective onto basis element %s"
                                 % base.names[b])
            v = big.zero_vec()
            for pos, i in enumerate(cols):
                v[i] = x[pos]
            sec.append(v)
        self._section = sec
        return sec

    def section(self, x):
        sec = self.section_matrix()
        out = self.big.zero_vec()
        for i, c in enumerate(x):
            if c:
                out = vadd(out, vscale(c, sec[i]))
        return out

    def _solver(self):
        if self._t_solver is None:
            big = self.big
            t = self.t_index
            rows = []
            for comp in range(big.dim):
                row = {}
                for i in range(big.dim):
                    c = big.table[t][i][comp]
                    if c:
                        row[i] = c
                rows.append(row)
            self._t_solver = PrecomputedSolver(big.field, rows, big.dim)
        return self._t_solver

    def t_component(self, w):
        """The z in R with t*(lift of z) = w, for w in t*R~."""
        z = self._solver().solve(w)
        return self.j.apply(z)

    def c_part(self, w):
        """Coefficient of the t-part of w in the splitting w = s(j(w)) + t*s(c)."""
        rem = vsub(w, self.section(self.j.apply(w)))
        return self.t_component(rem)

    def validate(self):
        """All triple invariants; returns a list of failure descriptions."""
        big, base = self.big, self.base
        bad = []
        if big.degrees[self.t_index] != self.d:
            bad.append("t has degree %d, want %d"
                       % (big.degrees[self.t_index], self.d))
        if not is_zero_vec(big.mul_basis(self.t_index, self.t_index)):
            bad.append("t^2 != 0")
        if big.dim != 2 * base.dim:
            bad.append("dim R~ = %d != 2 dim R" % big.dim)
        bad.extend(self.j.validate())
        jech = Echelon(big.field)
        for i in range(big.dim):
            jech.add(dense_to_dict(list(self.j.matrix[i])))
        if jech.rank != base.dim:
            bad.append("j is not surjective")
        # ker j = t R~ and flatness: ann(t) = t R~
        t_rows = [dense_to_dict(big.mul_basis(self.t_index, i))
                  for i in range(big.dim)]
        tech = Echelon(big.field)
        for r in t_rows:
            tech.add(dict(r))
        t_rank = tech.rank
        if big.dim - jech.rank != t_rank:
            bad.append("dim ker j != dim t*R~")
        else:
            for i in range(big.dim):
                if not is_zero_vec(self.j.apply(big.mul_basis(self.t_index, i))):
                    bad.append("t*R~ not contained in ker j")
                    break
        if 2 * t_rank != big.dim:
            bad.append("flatness fails: rank of multiplication by t is %d, want %d"
                       % (t_rank, big.dim // 2))
        return bad


@dataclass
class FlatnessReport:
    ok: bool
    witness: list | None  # element annihilating t but outside t*R~


def flatness_check(big, t_index):
    """ann(t) = t*R~, decided by exact rank computation."""
    if not is_zero_vec(big.mul_basis(t_index, t_index)):
        raise ValueError("t^2 != 0")
    f = big.field
    image = Echelon(f)
    for i in range(big.dim):
        image.add(dense_to_dict(big.mul_basis(t_index, i)))
    if 2 * image.rank == big.dim:
        return FlatnessReport(True, None)
    rows = []
    for comp in range(big.dim):
        row = {}
        for i in range(big.dim):
            c = big.table[t_index][i][comp]
            if c:
                row[i] = c
        if row:
            rows.append(row)
    for v in kernel_basis(f, rows, big.dim):
        if not image.contains(v):
            return FlatnessReport(False, v)
    return FlatnessReport(False, None)


def triple_from_cocycle(R, d, psi):
    """Build the triple on R + t*R with product twisted by the cocycle psi."""
    if psi.algebra != R or psi.d != d:
        raise ValueError("cochain does not match (R, d)")
    if psi.validate():
        raise ValueError("cochain violates degree or symmetry: %s"
                         % psi.validate()[0])
    if not psi.is_cocycle():
        raise ValueError("cochain is not a cocycle; the twisted product "
                         "would not be associative")
    f = R.field
    N = R.dim
    names = list(R.names) + ["t*%s" % nm for nm in R.names]
    degrees = list(R.degrees) + [d + deg for deg in R.degrees]
    dim = 2 * N
    zero = [f.zero] * dim

    def emb_t(v):
        return [f.zero] * N + list(v)

    table = [[None] * dim for _ in range(dim)]
    for i in range(N):
        for j in range(N):
            rr = R.mul_basis(i, j)
            tw = psi.values[i][j]
            table[i][j] = list(rr) + list(tw)
            if _sign_is_neg(d, R.degrees[i]):
                table[i][N + j] = emb_t([-c for c in rr])
            else:
                table[i][N + j] = emb_t(rr)
            table[N + i][j] = emb_t(rr)
            table[N + i][N + j] = list(zero)
    big = GradedAlgebra(f, names, degrees, R.unit_index, table)
    jmat = [R.basis_vec(i) for i in range(N)] + [R.zero_vec() for _ in range(N)]
    j = AlgebraHom(big, R, jmat)
    return DeformationTriple(big, R, N + R.unit_index, j, d)


def trivial_deformation(R, d):
    return triple_from_cocycle(R, d, Cochain2.zero(R, d))


def cocycle_from_triple(T, section=None):
    """Cocycle of a triple w.r.t. a degree-respecting section of j.

    The class modulo coboundaries does not depend on the section; the
    default is the preferred-lift section of the triple.
    """
    base = T.base
    sec = section if section is not None else T.section_matrix()
    vals = [[None] * base.dim for _ in range(base.dim)]
    for i in range(base.dim):
        for j in range(base.dim):
            prod = T.big.mul(sec[i], sec[j])
            rem = vsub(prod, _apply_section(T, sec, base.mul_basis(i, j)))
            vals[i][j] = T.t_component(rem)
    return Cochain2(base, T.d, vals)


def _apply_section(T, sec, x):
    out = T.big.zero_vec()
    for i, c in enumerate(x):
        if c:
            out = vadd(out, vscale(c, sec[i]))
    return out


def sum_deformations(T1, T2):
    """Fibre sum of two deformations of the same R.

    Inside R~1 + R~2, the subalgebra D of pairs with j1(x1) = j2(x2) is
    taken modulo the span of (t1*x, -t2*y) over matching pairs; the quotient
    basis is the diagonal lifts of the R basis together with the t-shifted
    diagonal lifts, and products are computed componentwise and reduced by
    one precomputed elimination.
    """
    if T1.base != T2.base:
        raise ValueError("summands deform different algebras")
    if T1.d != T2.d:
        raise ValueError("summands have different dimensions d")
    base = T1.base
    f = base.field
    N = base.dim
    n1, n2 = T1.big.dim, T2.big.dim
    s1, s2 = T1.section_matrix(), T2.section_matrix()

    def amb(x1, x2):
        return list(x1) + list(x2)

    t1s1 = [T1.big.mul(T1.t_vec(), s1[e]) for e in range(N)]
    t2s2 = [T2.big.mul(T2.t_vec(), s2[e]) for e in range(N)]
    D = [amb(s1[e], s2[e]) for e in range(N)]
    U = [amb(t1s1[e], [f.zero] * n2) for e in range(N)]
    K = [amb(t1s1[e], [-c for c in t2s2[e]]) for e in range(N)]
    cols = D + U + K
    rows = []
    for comp in range(n1 + n2):
        row = {}
        for pos, v in enumerate(cols):
            if v[comp]:
                row[pos] = v[comp]
        rows.append(row)
    reducer = PrecomputedSolver(f, rows, 3 * N)

    def reduce_pair(x1, x2):
        coords = reducer.solve(amb(x1, x2))
        return coords[:N], coords[N:2 * N]

    names = list(base.names) + ["t*%s" % nm for nm in base.names]
    degrees = list(base.degrees) + [T1.d + deg for deg in base.degrees]
    gens1 = [(s1[e], s2[e]) for e in range(N)] + \
            [(t1s1[e], [f.zero] * n2) for e in range(N)]
    dim = 2 * N
    table = [[None] * dim for _ in range(dim)]
    for a in range(dim):
        xa, ya = gens1[a]
        for b in range(dim):
            xb, yb = gens1[b]
            dcoef, ucoef = reduce_pair(T1.big.mul(xa, xb), T2.big.mul(ya, yb))
            table[a][b] = list(dcoef) + list(ucoef)
    big = GradedAlgebra(f, names, degrees, base.unit_index, table)
    jmat = [base.basis_vec(i) for i in range(N)] + [base.zero_vec()] * N
    j = AlgebraHom(big, base, jmat)
    return DeformationTriple(big, base, N + base.unit_index, j, T1.d)


def monogenic_deformation(n, d, alpha, field, gen="u"):
    """Deformation of F[u]/u^(n+1) with relation u^(n+1) = -alpha t u^(n+1-d/2)."""
    if d % 2 != 0 or not (2 <= d <= 2 * n + 2):
        raise ValueError("d must be even with 2 <= d <= 2n+2, got d=%r" % (d,))
    alpha = _coerce(field, alpha)
    base = truncated_poly(n, field, gen)
    N = n + 1
    red_exp = n + 1 - d // 2  # exponent in the reduction of u^(n+1)
    names = ["%s^%d" % (gen, p) for p in range(N)] + \
            ["t*%s^%d" % (gen, p) for p in range(N)]
    degrees = [2 * p for p in range(N)] + [d + 2 * p for p in range(N)]
    dim = 2 * N

    def entry(e, p):
        # t^e u^p as a vector, zero when out of range
        v = [field.zero] * dim
        if e <= 1 and 0 <= p <= n:
            v[e * N + p] = field.one
        return v

    table = [[None] * dim for _ in range(dim)]
    for e1 in range(2):
        for p1 in range(N):
            for e2 in range(2):
                for p2 in range(N):
                    e, p = e1 + e2, p1 + p2
                    if e >= 2:
                        v = [field.zero] * dim
                    elif p <= n:
                        v = entry(e, p)
                    elif e == 1:
                        v = [field.zero] * dim
                    else:
                        # u^p = u^(p-n-1) * u^(n+1) -> single t-monomial
                        v = vscale(-alpha, entry(1, p - n - 1 + red_exp))
                    table[e1 * N + p1][e2 * N + p2] = v
    big = GradedAlgebra(field, names, degrees, 0, table)
    jmat = [base.basis_vec(p) for p in range(N)] + [base.zero_vec()] * N
    j = AlgebraHom(big, base, jmat)
    return DeformationTriple(big, base, N, j, d)


def pmn_coefficient_range(m, n, d, side):
    """Valid coefficient indices i for the u-side ("a") or v-side ("b").

    Side "a": monomials u^(i-d/2) v^(m+1-i); side "b": u^(i-d/2) v^(n+1-i).
    An index is valid precisely when the monomial exists in R.
    """
    lo = d // 2
    if side == "a":
        lo = max(lo, m + 1 - n)
        hi = min(m + d // 2, m + 1)
    else:
        hi = min(m + d // 2, n + 1)
    return list(range(lo, hi + 1))


def presented_pmn_deformation(m, n, d, a_coeffs, b_coeffs, field):
    """Deformation of F[u,v]/(u^(m+1), v^(n+1)) presented by two relations.

    Generators u~, v~, t of degrees 2, 2, d with t^2 = 0 and
        u~^(m+1) = - sum_i a_i t u~^(i-d/2) v~^(m+1-i),
        v~^(n+1) = - sum_i b_i t u~^(i-d/2) v~^(n+1-i).
    Coefficients are dicts {i: scalar}. Monomials falling outside the basis
    after a single reduction vanish, since a second reduction carries t^2.
    """
    if d % 2 != 0 or d < 2:
        raise ValueError("d must be even and positive, got %r" % (d,))
    ra = pmn_coefficient_range(m, n, d, "a")
    rb = pmn_coefficient_range(m, n, d, "b")
    for i in a_coeffs:
        if i not in ra:
            raise ValueError("a-coefficient index %r out of range %s" % (i, ra))
    for i in b_coeffs:
        if i not in rb:
            raise ValueError("b-coefficient index %r out of range %s" % (i, rb))
    base = pmn_algebra(m, n, field)
    N = (m + 1) * (n + 1)
    dim = 2 * N
    # reductions as {(p, q): coeff} over t-monomials t u^p v^q
    red_u = {}
    for i, c in a_coeffs.items():
        c = _coerce(field, c)
        if c:
            red_u[(i - d // 2, m + 1 - i)] = -c
    red_v = {}
    for i, c in b_coeffs.items():
        c = _coerce(field, c)
        if c:
            red_v[(i - d // 2, n + 1 - i)] = -c

    def tmono(p, q):
        v = [field.zero] * dim
        if 0 <= p <= m and 0 <= q <= n:
            v[N + pmn_index(m, n, p, q)] = field.one
        return v

    def product(e1, p1, q1, e2, p2, q2):
        e, p, q = e1 + e2, p1 + p2, q1 + q2
        v = [field.zero] * dim
        if e >= 2:
            return v
        if p <= m and q <= n:
            v[e * N + pmn_index(m, n, p, q)] = field.one
            return v
        if e == 1:
            return v
        if p > m and q > n:
            return v
        if p > m:
            for (pu, qv), c in red_u.items():
                v = vadd(v, vscale(c, tmono(pu + p - m - 1, qv + q)))
        else:
            for (pu, qv), c in red_v.items():
                v = vadd(v, vscale(c, tmono(pu + p, qv + q - n - 1)))
        return v

    names = ["u^%d*v^%d" % (p, q) for p in range(m + 1) for q in range(n + 1)]
    names += ["t*%s" % nm for nm in names]
    degrees = [2 * (p + q) for p in range(m + 1) for q in range(n + 1)]
    degrees += [d + deg for deg in degrees[:N]]
    table = [[None] * dim for _ in range(dim)]
    for a in range(dim):
        e1, r1 = divmod(a, N)
        p1, q1 = divmod(r1, n + 1)
        for b in range(dim):
            e2, r2 = divmod(b, N)
            p2, q2 = divmod(r2, n + 1)
            table[a][b] = product(e1, p1, q1, e2, p2, q2)
    big = GradedAlgebra(field, names, degrees, 0, table)
    jmat = [base.basis_vec(i) for i in range(N)] + [base.zero_vec()] * N
    j = AlgebraHom(big, base, jmat)
    return DeformationTriple(big, base, N, j, d)
