"""Finite-dimensional graded commutative algebras by structure constants.

An algebra is an ordered homogeneous basis with names and degrees, a unit
index, and the full multiplication table e_i * e_j as exact vectors. All
values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .linalg import is_zero_vec, vadd, vscale, vsub, vzero


def koszul_sign_is_neg(deg_a, deg_b):
    return (deg_a * deg_b) % 2 == 1


class GradedAlgebra:

    def __init__(self, field, names, degrees, unit_index, table):
        self.field = field
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.unit_index = unit_index
        self.table = tuple(tuple(tuple(v) for v in row) for row in table)
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be unique")
        if any(d < 0 for d in self.degrees):
            raise ValueError("degrees must be non-negative")
        self.index = {n: i for i, n in enumerate(self.names)}

    @property
    def dim(self):
        return len(self.names)

    def zero_vec(self):
        return [self.field.zero] * self.dim

    def basis_vec(self, i):
        v = self.zero_vec()
        v[i] = self.field.one
        return v

    def unit_vec(self):
        return self.basis_vec(self.unit_index)

    def mul_basis(self, i, j):
        return self.table[i][j]

    def mul(self, x, y):
        out = self.zero_vec()
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, t in enumerate(row[j]):
                    if t:
                        out[k] = out[k] + c * t
        return out

    def power(self, x, k):
        out = self.unit_vec()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def degree_of(self, vec):
        """Degree of a homogeneous element; None for 0, ValueError if mixed."""
        degs = {self.degrees[i] for i, c in enumerate(vec) if c}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("element is not homogeneous: degrees %s" % sorted(degs))
        return degs.pop()

    def homogeneous_indices(self, degree):
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def format_element(self, vec):
        parts = [
            "%s*%s" % (self.field.fmt(c), self.names[i])
            for i, c in enumerate(vec)
            if c
        ]
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other):
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.names == other.names
            and self.degrees == other.degrees
            and self.unit_index == other.unit_index
            and self.table == other.table
        )

    def __repr__(self):
        return "GradedAlgebra(dim=%d, field=%r)" % (self.dim, self.field)


class AlgebraHom:
    """Degree-0 unital algebra homomorphism, given by images of basis elements.

    matrix[i] is the image of source basis element i, as a vector in the
    target.
    """

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = tuple(tuple(v) for v in matrix)

    def apply(self, x):
        out = self.target.zero_vec()
        for i, c in enumerate(x):
            if c:
                out = vadd(out, vscale(c, self.matrix[i]))
        return out

    def validate(self):
        """List of violated homomorphism properties (empty when valid)."""
        src, tgt = self.source, self.target
        bad = []
        for i in range(src.dim):
            img = self.matrix[i]
            if any(img):
                try:
                    d = tgt.degree_of(list(img))
                except ValueError:
                    bad.append("image of %s is inhomogeneous" % src.names[i])
                    continue
                if d != src.degrees[i]:
                    bad.append("degree of image of %s is %d, want %d"
                               % (src.names[i], d, src.degrees[i]))
        if not all(a == b for a, b in
                   zip(self.apply(src.unit_vec()), tgt.unit_vec())):
            bad.append("unit is not preserved")
        for i in range(src.dim):
            for j in range(src.dim):
                lhs = self.apply(src.mul_basis(i, j))
                rhs = tgt.mul(self.matrix[i], self.matrix[j])
                if not is_zero_vec(vsub(lhs, rhs)):
                    bad.append("not multiplicative on (%s, %s)"
                               % (src.names[i], src.names[j]))
                    return bad
        return bad


@dataclass
class AlgebraReport:
    """Outcome of the algebra invariant checks, with a witness per failure."""

    ok: bool
    failures: list = dc_field(default_factory=list)

    def failed_checks(self):
        return sorted({name for name, _ in self.failures})


def verify_algebra(A: GradedAlgebra) -> AlgebraReport:
    """Check degree additivity, associativity, unit, graded commutativity."""
    failures = []
    n = A.dim
    if A.degrees[A.unit_index] != 0:
        failures.append(("unit", "unit basis element has degree %d"
                         % A.degrees[A.unit_index]))
    for i in range(n):
        for j in range(n):
            v = A.table[i][j]
            want = A.degrees[i] + A.degrees[j]
            for k, c in enumerate(v):
                if c and A.degrees[k] != want:
                    failures.append(
                        ("degree", "(%s)*(%s) has a component %s of degree %d, want %d"
                         % (A.names[i], A.names[j], A.names[k], A.degrees[k], want)))
                    break
    u = A.unit_index
    for i in range(n):
        if not veq_basis(A, A.table[u][i], i) or not veq_basis(A, A.table[i][u], i):
            failures.append(("unit", "1*%s or %s*1 differs from %s"
                             % (A.names[i], A.names[i], A.names[i])))
    for i in range(n):
        for j in range(i, n):
            lhs = list(A.table[i][j])
            rhs = list(A.table[j][i])
            if koszul_sign_is_neg(A.degrees[i], A.degrees[j]):
                rhs = [-c for c in rhs]
            if not is_zero_vec(vsub(lhs, rhs)):
                failures.append(
                    ("commutativity", "(%s)*(%s) != +/- (%s)*(%s)"
                     % (A.names[i], A.names[j], A.names[j], A.names[i])))
    for i in range(n):
        for j in range(n):
            ij = A.table[i][j]
            for k in range(n):
                lhs = A.zero_vec()
                for w, c in enumerate(ij):
                    if c:
                        lhs = vadd(lhs, vscale(c, A.table[w][k]))
                jk = A.table[j][k]
                rhs = A.zero_vec()
                for w, c in enumerate(jk):
                    if c:
                        rhs = vadd(rhs, vscale(c, A.table[i][w]))
                if not is_zero_vec(vsub(lhs, rhs)):
                    failures.append(
                        ("associativity", "witness triple (%s, %s, %s)"
                         % (A.names[i], A.names[j], A.names[k])))
                    return AlgebraReport(False, failures)
    return AlgebraReport(not failures, failures)


def veq_basis(A, vec, i):
    return all((c == A.field.one) if k == i else not c for k, c in enumerate(vec))


def truncated_poly(n, field, gen="u"):
    """F[u]/u^(n+1) with deg(u) = 2; basis u^0, ..., u^n."""
    if n < 1:
        raise ValueError("n must be >= 1, got %r" % (n,))
    names = ["%s^%d" % (gen, p) for p in range(n + 1)]
    degrees = [2 * p for p in range(n + 1)]
    dim = n + 1
    table = []
    for i in range(dim):
        row = []
        for j in range(dim):
            v = vzero(field, dim)
            if i + j <= n:
                v[i + j] = field.one
            row.append(v)
        table.append(row)
    return GradedAlgebra(field, names, degrees, 0, table)


def tensor(A, B, sep="*"):
    """Graded tensor product; basis a_i (x) b_j named "<a_i><sep><b_j>".

    The product carries the Koszul sign (-1)^(deg b * deg a') on
    (a (x) b)(a' (x) b').
    """
    if A.field != B.field:
        raise ValueError("tensor factors live over different fields")
    field = A.field
    na, nb = A.dim, B.dim
    dim = na * nb

    def idx(i, j):
        return i * nb + j

    names = ["%s%s%s" % (A.names[i], sep, B.names[j])
             for i in range(na) for j in range(nb)]
    degrees = [A.degrees[i] + B.degrees[j] for i in range(na) for j in range(nb)]
    table = [[None] * dim for _ in range(dim)]
    for i in range(na):
        for j in range(nb):
            for k in range(na):
                for m in range(nb):
                    v = vzero(field, dim)
                    prod_a = A.table[i][k]
                    prod_b = B.table[j][m]
                    neg = koszul_sign_is_neg(B.degrees[j], A.degrees[k])
                    for p, ca in enumerate(prod_a):
                        if not ca:
                            continue
                        for q, cb in enumerate(prod_b):
                            if not cb:
                                continue
                            c = ca * cb
                            v[idx(p, q)] = -c if neg else c
                    table[idx(i, j)][idx(k, m)] = v
    return GradedAlgebra(field, names, degrees, idx(A.unit_index, B.unit_index), table)


def pmn_algebra(m, n, field):
    """H*(CP^m x CP^n) = F[u,v]/(u^(m+1), v^(n+1)); basis u^p*v^q."""
    return tensor(truncated_poly(m, field, "u"), truncated_poly(n, field, "v"))


def pmn_index(m, n, p, q):
    """Basis index of u^p*v^q in pmn_algebra(m, n, ...)."""
    return p * (n + 1) + q
