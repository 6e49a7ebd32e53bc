"""Exact sparse Gaussian elimination and subspace utilities.

Rows are dicts {column index: scalar}; columns are ints. All arithmetic
happens in a caller-supplied field (see fields.py), so the same code runs
over Q and over F_p. Matrices here are small (a few thousand rows, a few
hundred columns), but rows are sparse, so elimination keeps rows as dicts
throughout.
"""

from __future__ import annotations


def vzero(field, n):
    return [field.zero] * n

def vadd(u, v):
    return [a + b for a, b in zip(u, v)]

def vsub(u, v):
    return [a - b for a, b in zip(u, v)]

def vneg(u):
    return [-a for a in u]

def vscale(c, u):
    return [c * a for a in u]

def is_zero_vec(u):
    return not any(u)

def veq(u, v):
    return all(a == b for a, b in zip(u, v)) and len(u) == len(v)

def dense_to_dict(u):
    return {i: c for i, c in enumerate(u) if c}

def dict_to_dense(field, row, n):
    out = [field.zero] * n
    for i, c in row.items():
        out[i] = c
    return out


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Pivot rows are normalized (leading 1) and fully reduced against each
    other: every stored row has entries only at its own pivot column and at
    free columns. With track=True each pivot row also carries its expression
    as a combination of the original rows (by tag), and combinations that
    reduced to zero are collected in null_traces.
    """

    def __init__(self, field, track=False):
        self.field = field
        self.track = track
        self.pivots = {}        # col -> row dict
        self.traces = {}        # col -> {tag: coeff}
        self.null_traces = []   # traces of rows that reduced to zero

    @staticmethod
    def _axpy(row, c, other):
        # row -= c * other, dropping zeros
        for col, v in other.items():
            cur = row.get(col)
            new = v * (-c) if cur is None else cur - c * v
            if new:
                row[col] = new
            else:
                row.pop(col, None)

    def reduce(self, row, trace=None):
        """Fully reduce a row against the current pivots (returns a new dict).

        Eliminates every pivot column present, not just a leading prefix;
        pivot rows contain no other pivot columns, so each elimination only
        introduces free columns and the loop terminates.
        """
        row = dict(row)
        while True:
            hit = [c for c in row if c in self.pivots]
            if not hit:
                return row
            for c in sorted(hit):
                coef = row.get(c)
                if not coef:
                    continue
                self._axpy(row, coef, self.pivots[c])
                if trace is not None:
                    self._axpy(trace, coef, self.traces[c])

    def add(self, row, tag=None):
        """Insert a row; returns its pivot column, or None if dependent."""
        trace = {tag: self.field.one} if self.track else None
        row = self.reduce(row, trace)
        if not row:
            if self.track:
                self.null_traces.append(trace)
            return None
        c = min(row)
        lead = row[c]
        if lead != self.field.one:
            inv = self.field.one / lead
            row = {col: inv * v for col, v in row.items()}
            if self.track:
                trace = {t: inv * v for t, v in trace.items()}
        for pc, prow in self.pivots.items():
            if c in prow:
                coef = prow[c]
                self._axpy(prow, coef, row)
                if self.track:
                    self._axpy(self.traces[pc], coef, trace)
        self.pivots[c] = row
        if self.track:
            self.traces[c] = trace
        return c

    @property
    def rank(self):
        return len(self.pivots)

    def contains(self, vec):
        """Membership of a dense vector in the row space."""
        return not self.reduce(dense_to_dict(vec))


def kernel_basis(field, rows, ncols):
    """Basis of {x : A x = 0} for A given as an iterable of sparse rows.

    Returns dense vectors, one per free column, in column order.
    """
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    basis = []
    piv = ech.pivots
    for f in range(ncols):
        if f in piv:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for pc, prow in piv.items():
            c = prow.get(f)
            if c:
                v[pc] = -c
        basis.append(v)
    return basis


def solve(field, eqns, ncols, certificate=False):
    """Solve a sparse linear system exactly.

    eqns is an iterable of (row dict, rhs scalar, tag); the rhs is carried in
    an extra augmented column so that eliminating it last detects
    inconsistency. Returns (solution, None) with free variables set to zero,
    or (None, cert) where cert is {tag: coeff} with sum(coeff * eqn) reading
    0 = 1 (a left null combination witnessing infeasibility; requires
    certificate=True, otherwise cert is None).
    """
    AUG = ncols
    ech = Echelon(field, track=certificate)
    for row, rhs, tag in eqns:
        r = dict(row)
        if rhs:
            r[AUG] = rhs
        ech.add(r, tag)
        if AUG in ech.pivots:
            cert = ech.traces[AUG] if certificate else None
            return None, cert
    # each pivot row reads: x_pc + (free terms) = AUG entry; with free
    # variables at zero the particular solution is x_pc = AUG entry
    x = [field.zero] * ncols
    for pc, prow in ech.pivots.items():
        v = prow.get(AUG)
        if v:
            x[pc] = v
    return x, None


def span_echelon(field, vectors):
    """Echelon of the span of dense vectors."""
    ech = Echelon(field)
    for v in vectors:
        ech.add(dense_to_dict(v))
    return ech


def independent_indices(field, vectors):
    """Indices of a maximal independent subset, scanning in order."""
    ech = Echelon(field)
    keep = []
    for i, v in enumerate(vectors):
        if ech.add(dense_to_dict(v)) is not None:
            keep.append(i)
    return keep


def subspace_equal(field, basis_a, basis_b):
    ea = span_echelon(field, basis_a)
    eb = span_echelon(field, basis_b)
    if ea.rank != eb.rank or set(ea.pivots) != set(eb.pivots):
        return False
    return all(ea.pivots[c] == eb.pivots[c] for c in ea.pivots)


def intersect_spans(field, basis_a, basis_b, ncols):
    """Basis of span(basis_a) ∩ span(basis_b), vectors dense of length ncols."""
    if not basis_a or not basis_b:
        return []
    na, nb = len(basis_a), len(basis_b)
    # unknowns (a_0..a_{na-1}, b_0..b_{nb-1}); one equation per coordinate
    rows = []
    for c in range(ncols):
        row = {}
        for i, v in enumerate(basis_a):
            if v[c]:
                row[i] = v[c]
        for jdx, w in enumerate(basis_b):
            if w[c]:
                row[na + jdx] = -w[c]
        if row:
            rows.append(row)
    out = []
    for k in kernel_basis(field, rows, na + nb):
        vec = [field.zero] * ncols
        for i in range(na):
            if k[i]:
                vec = vadd(vec, vscale(k[i], basis_a[i]))
        if any(vec):
            out.append(vec)
    return [out[i] for i in independent_indices(field, out)]


class PrecomputedSolver:
    """Repeated exact solves of A x = w against a fixed matrix.

    Rows of A are tagged (by their index); elimination with tracking runs
    once, after which each solve is a handful of dot products with the
    recorded row combinations. Inconsistent right-hand sides raise.
    """

    def __init__(self, field, rows, ncols):
        self.field = field
        self.ncols = ncols
        self.ech = Echelon(field, track=True)
        for tag, row in enumerate(rows):
            self.ech.add(dict(row), tag)

    def solve(self, rhs, check=True):
        """rhs is indexed by row tag (a dense list). Free variables are zero."""
        f = self.field
        x = [f.zero] * self.ncols
        for pc, trace in self.ech.traces.items():
            acc = f.zero
            for tag, coef in trace.items():
                r = rhs[tag]
                if r:
                    acc = acc + coef * r
            x[pc] = acc
        if check:
            for trace in self.ech.null_traces:
                acc = f.zero
                for tag, coef in trace.items():
                    r = rhs[tag]
                    if r:
                        acc = acc + coef * r
                if acc:
                    raise ValueError("inconsistent right-hand side")
        return x
