"""Exact dense linear algebra over GF(q) and the rationals: reduced
echelon forms with recorded transforms, vector matroids, diagonal
equivalence, and the projective-equivalence decision with witnesses.

Projective equivalence: B = T A S with T invertible and S nonsingular
diagonal.  Field automorphisms are deliberately excluded (over GF(4) this
splits Frobenius-conjugate representations into distinct classes, matching
the T,S formulation used throughout).
"""

from dataclasses import dataclass

from .errors import ColumnLabelMismatch, GroundSetMismatch
from .matroid import MatroidOracle


class FieldMatrix:
    """Immutable rectangular matrix with row and column labels."""

    def __init__(self, field, rows, row_labels=None, col_labels=None):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")
        if row_labels is None:
            row_labels = tuple("r%d" % (i + 1) for i in range(self.nrows))
        if col_labels is None:
            col_labels = tuple("c%d" % (j + 1) for j in range(self.ncols))
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        if len(self.row_labels) != self.nrows or len(self.col_labels) != self.ncols:
            raise ValueError("label count mismatch")
        if len(set(self.row_labels)) != self.nrows or len(set(self.col_labels)) != self.ncols:
            raise ValueError("labels must be unique")

    # -- construction helpers ------------------------------------------------
    @staticmethod
    def identity(field, n, labels=None):
        rows = [
            [field.one if i == j else field.zero for j in range(n)] for i in range(n)
        ]
        return FieldMatrix(field, rows, labels, labels)

    @staticmethod
    def diagonal(field, values, labels=None):
        n = len(values)
        rows = [
            [values[i] if i == j else field.zero for j in range(n)] for i in range(n)
        ]
        return FieldMatrix(field, rows, labels, labels)

    def entry(self, i, j):
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def with_labels(self, row_labels=None, col_labels=None):
        return FieldMatrix(
            self.field,
            self.rows,
            row_labels or self.row_labels,
            col_labels or self.col_labels,
        )

    def submatrix_cols(self, col_indices):
        return FieldMatrix(
            self.field,
            [[r[j] for j in col_indices] for r in self.rows],
            self.row_labels,
            [self.col_labels[j] for j in col_indices],
        )

    def mul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        f = self.field
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = f.zero
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    if a != f.zero:
                        acc = f.add(acc, f.mul(a, other.rows[k][j]))
                row.append(acc)
            out.append(row)
        return FieldMatrix(f, out, self.row_labels, other.col_labels)

    def scale_columns(self, values):
        f = self.field
        return FieldMatrix(
            f,
            [[f.mul(r[j], values[j]) for j in range(self.ncols)] for r in self.rows],
            self.row_labels,
            self.col_labels,
        )

    def transpose(self):
        return FieldMatrix(
            self.field,
            [list(col) for col in zip(*self.rows)] if self.rows else [],
            self.col_labels,
            self.row_labels,
        )

    def is_zero(self):
        z = self.field.zero
        return all(x == z for r in self.rows for x in r)

    def equal_entries(self, other):
        return self.rows == other.rows

    def __repr__(self):
        return "FieldMatrix(%dx%d over %r)" % (self.nrows, self.ncols, self.field)

    def pretty(self):
        f = self.field
        width = max(
            [len(f.show(x)) for r in self.rows for x in r]
            + [len(c) for c in self.col_labels]
        )
        head = " " * (max(len(x) for x in self.row_labels) + 1) + " ".join(
            c.rjust(width) for c in self.col_labels
        )
        lines = [head]
        for lbl, r in zip(self.row_labels, self.rows):
            lines.append(
                lbl.ljust(max(len(x) for x in self.row_labels))
                + " "
                + " ".join(f.show(x).rjust(width) for x in r)
            )
        return "\n".join(lines)


def rref(A):
    """Reduced row echelon form.

    Returns (R, E, pivots) with E invertible, E*A = R, pivot choice
    deterministic: leftmost column, then smallest row index."""
    f = A.field
    rows = [list(r) for r in A.rows]
    n, m = A.nrows, A.ncols
    E = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]
    pivots = []
    pr = 0
    for col in range(m):
        sel = None
        for i in range(pr, n):
            if rows[i][col] != f.zero:
                sel = i
                break
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        E[pr], E[sel] = E[sel], E[pr]
        inv = f.inv(rows[pr][col])
        rows[pr] = [f.mul(inv, x) for x in rows[pr]]
        E[pr] = [f.mul(inv, x) for x in E[pr]]
        for i in range(n):
            if i != pr and rows[i][col] != f.zero:
                c = rows[i][col]
                rows[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(rows[i], rows[pr])]
                E[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(E[i], E[pr])]
        pivots.append(col)
        pr += 1
        if pr == n:
            break
    R = FieldMatrix(f, rows, A.row_labels, A.col_labels)
    Em = FieldMatrix(f, E, A.row_labels, A.row_labels)
    return R, Em, tuple(pivots)


def rank_of_columns(field, columns):
    """Rank of a list of column tuples by forward elimination."""
    basis = []
    f = field
    for col in columns:
        vec = list(col)
        for piv_idx, piv in basis:
            c = vec[piv_idx]
            if c != f.zero:
                vec = [f.sub(x, f.mul(c, y)) for x, y in zip(vec, piv)]
        lead = None
        for i, x in enumerate(vec):
            if x != f.zero:
                lead = i
                break
        if lead is not None:
            inv = f.inv(vec[lead])
            vec = [f.mul(inv, x) for x in vec]
            basis.append((lead, vec))
    return len(basis)


def invert(A):
    """Inverse of a square matrix (ValueError if singular)."""
    if A.nrows != A.ncols:
        raise ValueError("not square")
    R, E, pivots = rref(A)
    if len(pivots) != A.nrows:
        raise ValueError("singular matrix")
    return FieldMatrix(A.field, E.rows, A.col_labels, A.row_labels)


def left_null_space(A):
    """Basis (list of row tuples) of {t : t*A = 0}."""
    R, E, pivots = rref(A)
    r = len(pivots)
    return [tuple(E.rows[i]) for i in range(r, A.nrows)]


def vector_matroid(A, max_cols=20):
    """Column matroid: rank of a subset = rank of its column submatrix."""
    if A.ncols > max_cols:
        raise GroundSetMismatch("vector matroid capped at %d columns" % max_cols)
    cols = A.columns()
    f = A.field

    def fn(mask):
        sel = [cols[j] for j in range(A.ncols) if mask >> j & 1]
        return rank_of_columns(f, sel)

    return MatroidOracle(A.col_labels, fn, "M(A)")


def all_column_ranks(A):
    """Ranks of every column subset, as a list indexed by bitmask.

    Shares elimination work along the subset tree; used by equality checks.
    """
    f = A.field
    m = A.ncols
    cols = A.columns()
    out = [0] * (1 << m)

    def rec(j, mask, basis, rank):
        if j == m:
            out[mask] = rank
            return
        rec(j + 1, mask, basis, rank)
        vec = list(cols[j])
        for piv_idx, piv in basis:
            c = vec[piv_idx]
            if c != f.zero:
                vec = [f.sub(x, f.mul(c, y)) for x, y in zip(vec, piv)]
        lead = None
        for i, x in enumerate(vec):
            if x != f.zero:
                lead = i
                break
        if lead is None:
            rec(j + 1, mask | 1 << j, basis, rank)
        else:
            inv = f.inv(vec[lead])
            vec = [f.mul(inv, x) for x in vec]
            rec(j + 1, mask | 1 << j, basis + [(lead, vec)], rank + 1)

    rec(0, 0, [], 0)
    return out


@dataclass
class ProjWitness:
    """T*A*S = B exactly.  T is square invertible when A and B have the
    same number of rows; rectangular (full column-rank factor) when the
    target carries redundant rows (lift matrices)."""

    T: FieldMatrix
    S: FieldMatrix

    def verify(self, A, B):
        return self.T.mul(A).mul(self.S).equal_entries(B)


def diagonally_equivalent(A, B):
    """Nonsingular diagonal D1, D2 with D1*A*D2 = B, or None.

    Supports must match; scales are fixed along a spanning forest of the
    bipartite row-column support graph, then all entries are verified."""
    if (A.nrows, A.ncols) != (B.nrows, B.ncols):
        return None
    f = A.field
    z = f.zero
    for i in range(A.nrows):
        for j in range(A.ncols):
            if (A.rows[i][j] == z) != (B.rows[i][j] == z):
                return None
    d1 = [None] * A.nrows
    d2 = [None] * A.ncols
    for start_row in range(A.nrows):
        if d1[start_row] is not None:
            continue
        d1[start_row] = f.one
        stack = [("r", start_row)]
        while stack:
            kind, idx = stack.pop()
            if kind == "r":
                for j in range(A.ncols):
                    if A.rows[idx][j] != z and d2[j] is None:
                        # d1[idx] * a * d2[j] = b
                        d2[j] = f.div(
                            B.rows[idx][j], f.mul(d1[idx], A.rows[idx][j])
                        )
                        stack.append(("c", j))
            else:
                for i in range(A.nrows):
                    if A.rows[i][idx] != z and d1[i] is None:
                        d1[i] = f.div(
                            B.rows[i][idx], f.mul(A.rows[i][idx], d2[idx])
                        )
                        stack.append(("r", i))
    for j in range(A.ncols):
        if d2[j] is None:
            d2[j] = f.one
    for i in range(A.nrows):
        for j in range(A.ncols):
            if f.mul(d1[i], f.mul(A.rows[i][j], d2[j])) != B.rows[i][j]:
                return None
    return tuple(d1), tuple(d2)


def projectively_equivalent(A, B):
    """ProjWitness with T*A*S = B, or None.

    Both matrices are reduced to full row rank; ranks must agree and the
    RREF pivot basis of A must be independent in B (otherwise their column
    matroids differ and they cannot be equivalent).  Standardizing both on
    that basis leaves exactly diagonal freedom, decided by
    diagonally_equivalent; the witness is reassembled through the recorded
    transforms."""
    if A.col_labels != B.col_labels:
        raise ColumnLabelMismatch("column labels differ")
    f = A.field
    if f != B.field:
        raise ColumnLabelMismatch("fields differ")
    if A.is_zero() or B.is_zero():
        if A.is_zero() and B.is_zero() and A.nrows == B.nrows:
            return ProjWitness(
                FieldMatrix.identity(f, A.nrows, A.row_labels),
                FieldMatrix.identity(f, A.ncols, A.col_labels),
            )
        return None
    RA, EA, pivA = rref(A)
    RB, EB, pivB = rref(B)
    r = len(pivA)
    if len(pivB) != r:
        return None
    RA_r = FieldMatrix(
        f, RA.rows[:r], ["s%d" % i for i in range(r)], A.col_labels
    )
    RB_r = FieldMatrix(
        f, RB.rows[:r], ["s%d" % i for i in range(r)], B.col_labels
    )
    # transfer A's pivot basis to B
    M = RB_r.submatrix_cols(list(pivA))
    try:
        Minv = invert(M.with_labels(row_labels=None, col_labels=["x%d" % i for i in range(r)]))
    except ValueError:
        return None
    B_std = Minv.with_labels(row_labels=RB_r.row_labels, col_labels=RB_r.row_labels).mul(RB_r)
    dec = diagonally_equivalent(RA_r, B_std)
    if dec is None:
        return None
    d1, d2 = dec
    # B = EB^-1 * [M*D1 ; 0] * P_r * EA * A * D2
    MD1 = FieldMatrix(
        f,
        [[f.mul(M.rows[i][k], d1[k]) for k in range(r)] for i in range(r)],
    )
    stack_rows = list(MD1.rows) + [
        [f.zero] * r for _ in range(B.nrows - r)
    ]
    Pr_EA = FieldMatrix(f, EA.rows[:r])  # r x nrows(A)
    EBinv = invert(EB)
    Tfull = FieldMatrix(f, stack_rows).mul(Pr_EA)
    T = EBinv.with_labels(row_labels=B.row_labels, col_labels=None).mul(
        Tfull.with_labels(row_labels=EBinv.col_labels, col_labels=A.row_labels)
    )
    S = FieldMatrix.diagonal(f, d2, A.col_labels)
    witness = ProjWitness(T, S)
    assert witness.verify(A, B), "witness reassembly failed"
    return witness


def projective_key(A):
    """Canonical invariant: two matrices over the same field with the same
    column labels are projectively equivalent iff their keys are equal.

    Key: (rank, RREF pivot columns of the lex-first basis, support pattern
    of the standardized matrix, entries normalized by the diagonal-scaling
    normal form that fixes a spanning forest of the support graph to 1)."""
    f = A.field
    if A.is_zero():
        return ("zero", A.nrows)
    RA, _, piv = rref(A)
    r = len(piv)
    rows = [RA.rows[i] for i in range(r)]
    # diagonal normal form: scale rows then columns along a forest
    z = f.zero
    m = A.ncols
    d1 = [None] * r
    d2 = [None] * m
    for start in range(r):
        if d1[start] is not None:
            continue
        d1[start] = f.one
        stack = [("r", start)]
        while stack:
            kind, idx = stack.pop()
            if kind == "r":
                for j in range(m):
                    if rows[idx][j] != z and d2[j] is None:
                        d2[j] = f.inv(f.mul(d1[idx], rows[idx][j]))
                        stack.append(("c", j))
            else:
                for i in range(r):
                    if rows[i][idx] != z and d1[i] is None:
                        d1[i] = f.inv(f.mul(rows[i][idx], d2[idx]))
                        stack.append(("r", i))
    for j in range(m):
        if d2[j] is None:
            d2[j] = f.one
    normal = tuple(
        tuple(f.mul(d1[i], f.mul(rows[i][j], d2[j])) for j in range(m))
        for i in range(r)
    )
    return ("mat", r, piv, normal)
