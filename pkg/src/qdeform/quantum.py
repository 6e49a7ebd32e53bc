"""The genus-zero 3-point invariant for M' x CP^n with A the line class,
its axioms, the first-order quantum product, and extension feasibility.

For the line class in the CP^n factor the invariant is the truncated
product

    psi_A(x (x) v^i, y (x) v^j) = xy (x) v^(i+j-n-1)   if i+j >= n+1, else 0,

a graded-symmetric bilinear map of degree -2(n+1). Whether psi_A extends to
a given deformation (R~, t, j) is an exact linear feasibility question;
extension_solve answers it with a verified witness or an infeasibility
certificate, and feasible_class_subspace computes the full subspace of
deformation classes admitting an extension in one elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import random

from .algebra import GradedAlgebra, pmn_algebra, tensor, truncated_poly
from .deformation import (
    Cochain2,
    CochainIndex,
    DefSpace,
    _sign_is_neg,
    cocycle_from_triple,
    def_space,
    triple_from_cocycle,
)
from .linalg import (
    Echelon,
    is_zero_vec,
    kernel_basis,
    solve,
    vadd,
    vscale,
    vsub,
)


class QuantumStructure:
    """A 3-point invariant on R: bilinear values, degree drop, and the
    degree-2 pairing with the curve class."""

    def __init__(self, algebra, values, degree_drop, a_pairing, label=""):
        self.algebra = algebra
        self.values = tuple(tuple(tuple(v) for v in row) for row in values)
        self.degree_drop = degree_drop
        self.a_pairing = tuple(a_pairing)
        self.label = label
        self._axioms = None

    def apply(self, x, y):
        A = self.algebra
        out = A.zero_vec()
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    out = vadd(out, vscale(xi * yj, self.values[i][j]))
        return out

    def pairing(self, x):
        acc = self.algebra.field.zero
        for i, c in enumerate(x):
            if c and self.a_pairing[i]:
                acc = acc + c * self.a_pairing[i]
        return acc

    def axioms_ok(self):
        if self._axioms is None:
            self._axioms = verify_gw_axioms(self)
        return self._axioms.ok


def truncated_psi(Mprime, n):
    """Quantum structure on Mprime (x) F[v]/v^(n+1) for the line class in
    the second factor. Mprime must be concentrated in even degrees."""
    if any(d % 2 for d in Mprime.degrees):
        raise ValueError("the first factor must be concentrated in even degrees")
    field = Mprime.field
    cp = truncated_poly(n, field, "v")
    R = tensor(Mprime, cp)
    nm = Mprime.dim
    dim = R.dim

    def idx(i, q):
        return i * (n + 1) + q

    values = [[R.zero_vec() for _ in range(dim)] for _ in range(dim)]
    for i in range(nm):
        for q in range(n + 1):
            for j in range(nm):
                for s in range(n + 1):
                    if q + s < n + 1:
                        continue
                    prod = Mprime.mul_basis(i, j)
                    v = R.zero_vec()
                    for w, c in enumerate(prod):
                        if c:
                            v[idx(w, q + s - n - 1)] = c
                    values[idx(i, q)][idx(j, s)] = v
    pairing = [field.zero] * dim
    pairing[idx(Mprime.unit_index, 1)] = field.one
    return QuantumStructure(R, values, 2 * (n + 1), pairing,
                            label="line in factor 2 (v, n=%d)" % n)


def truncated_psi_pmn(m, n, field, line_factor=2):
    """Quantum structure on H*(CP^m x CP^n) for the line class in either
    factor; the basis is the canonical u^p*v^q one."""
    R = pmn_algebra(m, n, field)
    dim = R.dim

    def idx(p, q):
        return p * (n + 1) + q

    values = [[R.zero_vec() for _ in range(dim)] for _ in range(dim)]
    for p in range(m + 1):
        for q in range(n + 1):
            for r in range(m + 1):
                for s in range(n + 1):
                    v = R.zero_vec()
                    if line_factor == 2:
                        if q + s >= n + 1 and p + r <= m:
                            v[idx(p + r, q + s - n - 1)] = field.one
                    else:
                        if p + r >= m + 1 and q + s <= n:
                            v[idx(p + r - m - 1, q + s)] = field.one
                    values[idx(p, q)][idx(r, s)] = v
    pairing = [field.zero] * dim
    if line_factor == 2:
        pairing[idx(0, 1)] = field.one
        drop = 2 * (n + 1)
    else:
        pairing[idx(1, 0)] = field.one
        drop = 2 * (m + 1)
    return QuantumStructure(R, values, drop, pairing,
                            label="line in factor %d" % line_factor)


@dataclass
class GWReport:
    ok: bool
    failures: list = dc_field(default_factory=list)


def _pairing_kernel_basis(field, degrees, pairing_values, dim):
    """Basis of {w in degree 2 : <w, A> = 0} as dense vectors."""
    idx2 = [i for i, d in enumerate(degrees) if d == 2]
    if not idx2:
        return []
    row = {pos: pairing_values[i] for pos, i in enumerate(idx2)
           if pairing_values[i]}
    out = []
    for k in kernel_basis(field, [row] if row else [], len(idx2)):
        v = [field.zero] * dim
        for pos, i in enumerate(idx2):
            v[i] = k[pos]
        out.append(v)
    return out


def verify_gw_axioms(Q):
    """Degree, graded symmetry, the associator identity, the unit axiom,
    and the divisor axiom, checked exhaustively over basis elements."""
    A = Q.algebra
    failures = []
    for i in range(A.dim):
        for j in range(A.dim):
            want = A.degrees[i] + A.degrees[j] - Q.degree_drop
            for k, c in enumerate(Q.values[i][j]):
                if c and A.degrees[k] != want:
                    failures.append(("degree", (A.names[i], A.names[j])))
                    break
    for i in range(A.dim):
        for j in range(i, A.dim):
            mirror = list(Q.values[j][i])
            if _sign_is_neg(A.degrees[i], A.degrees[j]):
                mirror = [-c for c in mirror]
            if list(Q.values[i][j]) != mirror:
                failures.append(("symmetry", (A.names[i], A.names[j])))
    u = A.unit_index
    for i in range(A.dim):
        if any(Q.values[u][i]) or any(Q.values[i][u]):
            failures.append(("unit", A.names[i]))
    for x in range(A.dim):
        ex = A.basis_vec(x)
        for y in range(A.dim):
            xy = A.mul_basis(x, y)
            ey = A.basis_vec(y)
            for z in range(A.dim):
                ez = A.basis_vec(z)
                yz = A.mul_basis(y, z)
                acc = A.mul(ex, Q.values[y][z])
                acc = vsub(acc, Q.apply(list(xy), ez))
                acc = vadd(acc, Q.apply(ex, list(yz)))
                acc = vsub(acc, A.mul(Q.values[x][y], ez))
                if not is_zero_vec(acc):
                    failures.append(("associator",
                                     (A.names[x], A.names[y], A.names[z])))
                    return GWReport(False, failures)
    for w in _pairing_kernel_basis(A.field, A.degrees, Q.a_pairing, A.dim):
        for x in range(A.dim):
            if not is_zero_vec(Q.apply(w, A.basis_vec(x))):
                failures.append(("divisor", A.format_element(w)))
                break
    return GWReport(not failures, failures)


def star_product(Q):
    """First-order quantum product on R + qR:
    (x0 + x1 q) * (y0 + y1 q) = x0 y0 + (x0 y1 + x1 y0 + psi(x0, y0)) q."""
    if not Q.axioms_ok():
        raise ValueError("quantum structure fails its axioms: %r"
                         % (Q._axioms.failures[:1],))
    R = Q.algebra
    f = R.field
    N = R.dim
    names = list(R.names) + ["q*%s" % nm for nm in R.names]
    degrees = list(R.degrees) + [deg + Q.degree_drop for deg in R.degrees]
    dim = 2 * N
    zero = [f.zero] * dim
    table = [[None] * dim for _ in range(dim)]
    for i in range(N):
        for j in range(N):
            rr = R.mul_basis(i, j)
            table[i][j] = list(rr) + list(Q.values[i][j])
            table[i][N + j] = [f.zero] * N + list(rr)
            table[N + i][j] = [f.zero] * N + list(rr)
            table[N + i][N + j] = list(zero)
    return GradedAlgebra(f, names, degrees, R.unit_index, table)


@dataclass
class ExtensionWitness:
    """Bilinear extension on R~, as a full table over the R~ basis."""

    deformation: object
    degree_drop: int
    values: tuple

    def apply(self, x, y):
        big = self.deformation.big
        out = big.zero_vec()
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    out = vadd(out, vscale(xi * yj, self.values[i][j]))
        return out


@dataclass
class ExtensionResult:
    feasible: bool
    witness: ExtensionWitness | None
    certificate: list | None    # [(constraint tag, coefficient)] if infeasible


def _check_inputs(T, Q):
    if T.base != Q.algebra:
        raise ValueError("deformation and quantum structure live on different algebras")
    if T.d % 2 != 0:
        raise ValueError("extension feasibility requires even d")
    if not Q.axioms_ok():
        raise ValueError("quantum structure fails its axioms")


def extension_system(T, Q, psi_reps=None):
    """Constraint rows for extensions of psi_A to the deformation T.

    The extension is parameterized as
        psi~ (s(x), s(y)) = s(psi_A(x, y)) + t * s(theta(x, y))
    with theta an unknown graded-symmetric map R x R -> R of degree
    -(drop + d); this realizes the compatibility-with-j requirement and
    degree bookkeeping identically, t-argument instances of the axioms
    become identities, and the remaining constraints are linear rows over
    the theta slots: the unit rows, the divisor rows, and the associator
    rows on lifted base triples.

    With psi_reps given (a list of cochains), rows are assembled jointly in
    (theta, lambda) for the family of deformations with cocycle
    sum(lambda_p psi_p): the lambda columns follow the theta columns and the
    system is homogeneous. Otherwise the concrete T supplies the products
    and rows carry right-hand sides. Returns (index, eqns) with eqns a list
    of (row, rhs, tag).
    """
    R = T.base
    f = R.field
    drop = Q.degree_drop
    d = T.d
    index = CochainIndex(R, drop + d)
    S = index.n
    if psi_reps is None:
        psis = [cocycle_from_triple(T)]
        parametric = False
    else:
        psis = list(psi_reps)
        parametric = True
    eqns = []
    for (e, fidx, k), col in index.pos.items():
        if e == R.unit_index or fidx == R.unit_index:
            eqns.append(({col: f.one}, f.zero, ("unit", e, fidx, k)))
    for widx, w0 in enumerate(
            _pairing_kernel_basis(f, R.degrees, Q.a_pairing, R.dim)):
        for fidx in range(R.dim):
            kdeg = 2 + R.degrees[fidx] - drop - d
            for k in index.by_degree.get(kdeg, ()):
                row = {}
                for e, c in enumerate(w0):
                    if c:
                        index.add_entry(row, e, fidx, k, c)
                if row:
                    eqns.append((row, f.zero, ("divisor", widx, fidx, k)))
    for x in range(R.dim):
        ex = R.basis_vec(x)
        for y in range(R.dim):
            xy = R.mul_basis(x, y)
            ey = R.basis_vec(y)
            for z in range(R.dim):
                total = R.degrees[x] + R.degrees[y] + R.degrees[z] - drop - d
                comps = index.by_degree.get(total)
                if not comps:
                    continue
                ez = R.basis_vec(z)
                yz = R.mul_basis(y, z)
                consts = []
                for p in psis:
                    c = p.apply(ex, Q.values[y][z])
                    c = vsub(c, Q.apply(p.values[x][y], ez))
                    c = vadd(c, Q.apply(ex, p.values[y][z]))
                    c = vsub(c, p.apply(Q.values[x][y], ez))
                    consts.append(c)
                kdeg_yz = R.degrees[y] + R.degrees[z] - drop - d
                kdeg_xy = R.degrees[x] + R.degrees[y] - drop - d
                for comp in comps:
                    row = {}
                    for k in index.by_degree.get(kdeg_yz, ()):
                        c = R.table[x][k][comp]
                        if c:
                            index.add_entry(row, y, z, k, c)
                    for w, c in enumerate(xy):
                        if c:
                            index.add_entry(row, w, z, comp, -c)
                    for w, c in enumerate(yz):
                        if c:
                            index.add_entry(row, x, w, comp, c)
                    for k in index.by_degree.get(kdeg_xy, ()):
                        c = R.table[k][z][comp]
                        if c:
                            index.add_entry(row, x, y, k, -c)
                    rhs = f.zero
                    if parametric:
                        for p_i, cvec in enumerate(consts):
                            if cvec[comp]:
                                row[S + p_i] = cvec[comp]
                    else:
                        rhs = -consts[0][comp]
                    if row or rhs:
                        eqns.append((row, rhs, ("assoc", x, y, z, comp)))
    return index, eqns


def _reconstruct_witness(T, Q, theta):
    """Full table of psi~ over the R~ basis from the theta solution."""
    big, base = T.big, T.base
    sec = T.section_matrix()

    def s_of(vec):
        out = big.zero_vec()
        for i, c in enumerate(vec):
            if c:
                out = vadd(out, vscale(c, sec[i]))
        return out

    tv = T.t_vec()
    beta = [list(T.j.matrix[i]) for i in range(big.dim)]
    cpart = [T.c_part(big.basis_vec(i)) for i in range(big.dim)]
    dim = big.dim
    values = [[None] * dim for _ in range(dim)]
    for p in range(dim):
        for q in range(dim):
            base_val = Q.apply(beta[p], beta[q])
            tval = theta.apply(beta[p], beta[q])
            tval = vadd(tval, Q.apply(beta[p], cpart[q]))
            tval = vadd(tval, Q.apply(cpart[p], beta[q]))
            values[p][q] = vadd(s_of(base_val), big.mul(tv, s_of(tval)))
    return ExtensionWitness(T, Q.degree_drop, tuple(
        tuple(tuple(v) for v in row) for row in values))


def extension_solve(T, Q, verify=False):
    """Decide whether psi_A extends to the deformation T.

    Returns a witness (a full bilinear table on R~ satisfying the extension
    axioms) or an infeasibility certificate: a combination of constraint
    instances that is inconsistent. verify=True re-checks the witness
    against the axioms on every basis pair and triple of R~.
    """
    _check_inputs(T, Q)
    index, eqns = extension_system(T, Q)
    sol, cert = solve(T.base.field, eqns, index.n, certificate=True)
    if sol is None:
        cert_list = sorted(cert.items(), key=lambda kv: str(kv[0]))
        return ExtensionResult(False, None, cert_list)
    theta = index.to_cochain(sol)
    witness = _reconstruct_witness(T, Q, theta)
    if verify:
        rep = verify_extension_axioms(witness, Q)
        if not rep.ok:
            raise AssertionError("reconstructed witness fails axioms: %r"
                                 % rep.failures[:3])
    return ExtensionResult(True, witness, None)


def verify_extension_axioms(witness, Q):
    """Independent check of an extension witness on the whole of R~.

    Checks degree, graded symmetry, the associator identity on all basis
    triples, vanishing on the unit and on t, the divisor axiom for a basis
    of the pairing kernel in degree 2, and compatibility with j.
    """
    T = witness.deformation
    big, base = T.big, T.base
    f = big.field
    vals = witness.values
    failures = []
    for i in range(big.dim):
        for j in range(big.dim):
            want = big.degrees[i] + big.degrees[j] - witness.degree_drop
            for k, c in enumerate(vals[i][j]):
                if c and big.degrees[k] != want:
                    failures.append(("degree", (big.names[i], big.names[j])))
                    break
    for i in range(big.dim):
        for j in range(i, big.dim):
            mirror = list(vals[j][i])
            if _sign_is_neg(big.degrees[i], big.degrees[j]):
                mirror = [-c for c in mirror]
            if list(vals[i][j]) != mirror:
                failures.append(("symmetry", (big.names[i], big.names[j])))
    u = big.unit_index
    for i in range(big.dim):
        if any(vals[u][i]) or any(vals[T.t_index][i]):
            failures.append(("unit-or-t", big.names[i]))
    pa = [Q.pairing(list(T.j.matrix[i])) for i in range(big.dim)]
    for w in _pairing_kernel_basis(f, big.degrees, pa, big.dim):
        for x in range(big.dim):
            if not is_zero_vec(witness.apply(w, big.basis_vec(x))):
                failures.append(("divisor", big.format_element(w)))
                break
    for i in range(big.dim):
        for j in range(big.dim):
            lhs = T.j.apply(vals[i][j])
            rhs = Q.apply(list(T.j.matrix[i]), list(T.j.matrix[j]))
            if not is_zero_vec(vsub(lhs, rhs)):
                failures.append(("j-compatibility", (big.names[i], big.names[j])))
    for x in range(big.dim):
        ex = big.basis_vec(x)
        for y in range(big.dim):
            xy = big.mul_basis(x, y)
            for z in range(big.dim):
                ez = big.basis_vec(z)
                yz = big.mul_basis(y, z)
                acc = big.mul(ex, vals[y][z])
                acc = vsub(acc, witness.apply(list(xy), ez))
                acc = vadd(acc, witness.apply(ex, list(yz)))
                acc = vsub(acc, big.mul(vals[x][y], ez))
                if not is_zero_vec(acc):
                    failures.append(("associator",
                                     (big.names[x], big.names[y], big.names[z])))
                    return GWReport(False, failures)
    return GWReport(not failures, failures)


@dataclass
class FeasibleSubspace:
    """Exact subspace of deformation classes admitting an extension."""

    defspace: DefSpace
    basis: list          # dense vectors in representative coordinates
    constraint_rows: list

    @property
    def dimension(self):
        return len(self.basis)

    def contains(self, lam):
        """Membership of a dense class-coordinate vector."""
        ech = Echelon(self.defspace.algebra.field)
        for v in self.basis:
            ech.add({i: c for i, c in enumerate(v) if c})
        return ech.contains(list(lam))


def feasible_class_subspace(ds, Q):
    """All classes with a feasible extension, from one joint elimination.

    The constraint rows are jointly linear in (theta, class coordinates):
    the class enters only through the t-components of section products,
    which never multiply theta. Eliminating the theta columns first leaves
    the exact linear conditions on the class coordinates.
    """
    R = ds.algebra
    f = R.field
    r = ds.dimension
    if r == 0:
        return FeasibleSubspace(ds, [], [])
    T0 = triple_from_cocycle(R, ds.d, Cochain2.zero(R, ds.d))
    _check_inputs(T0, Q)
    index, eqns = extension_system(T0, Q, psi_reps=ds.representatives)
    S = index.n
    ech = Echelon(f)
    for row, rhs, _tag in eqns:
        ech.add(dict(row))
    lam_rows = []
    for pc, prow in ech.pivots.items():
        if pc >= S:
            lam_rows.append({c - S: v for c, v in prow.items()})
    basis = kernel_basis(f, lam_rows, r)
    return FeasibleSubspace(ds, basis, lam_rows)


@dataclass
class ProbeResult:
    coords: list
    feasible: bool


@dataclass
class ExtensionSubspaceReport:
    defspace: DefSpace
    basis_probes: list        # ProbeResult per class representative
    pair_probes: list         # ProbeResult per representative pair sum
    closure_samples: list     # ProbeResult for random combinations
    closure_ok: bool
    exact: FeasibleSubspace


def _class_cochain(ds, lam):
    c = Cochain2.zero(ds.algebra, ds.d)
    for i, coef in enumerate(lam):
        if coef:
            c = c.add(ds.representatives[i].scale(coef))
    return c


def probe_class(ds, Q, lam):
    T = triple_from_cocycle(ds.algebra, ds.d, _class_cochain(ds, lam))
    return extension_solve(T, Q).feasible


def extension_subspace(R, d, Q, samples=6, seed=0):
    """Feasible classes by probing representatives, pairwise sums, and
    random combinations, next to the exact subspace computation.

    Closure is verified on the sampled combinations: sums and scalings of
    feasible classes must stay feasible.
    """
    ds = def_space(R, d)
    f = R.field
    r = ds.dimension
    unit = lambda i: [f.one if k == i else f.zero for k in range(r)]
    basis_probes = [ProbeResult(unit(i), probe_class(ds, Q, unit(i)))
                    for i in range(r)]
    pair_probes = []
    for i in range(r):
        for j in range(i + 1, r):
            lam = vadd(unit(i), unit(j))
            pair_probes.append(ProbeResult(lam, probe_class(ds, Q, lam)))
    exact = feasible_class_subspace(ds, Q)
    rng = random.Random(seed)
    closure = []
    closure_ok = True
    fb = exact.basis
    for _ in range(samples if fb else 0):
        lam = [f.zero] * r
        for v in fb:
            lam = vadd(lam, vscale(f.of(rng.randint(-3, 3)), v))
        res = ProbeResult(lam, probe_class(ds, Q, lam))
        closure.append(res)
        if not res.feasible:
            closure_ok = False
    return ExtensionSubspaceReport(ds, basis_probes, pair_probes,
                                   closure, closure_ok, exact)
