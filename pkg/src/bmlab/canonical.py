"""Canonical frame/lift matrices from gain graphs, matrix-level Delta-Y
exchanges, the canonicalization of arbitrary representations, and
exhaustive representation enumeration.

Frame matrix over F^x gains: rows indexed by vertices, columns by edges;
a link column is tail_hat - phi(e) head_hat (on the declared orientation),
a joint column is head_hat, a balanced loop is the zero column.

Complete lift matrix over F^+ gains: rows are the vertices plus an extra
row v0; a link column is tail_hat - head_hat + psi(e) v0_hat, joints and
the extra element e0 give v0_hat, balanced loops the zero column.  The
lift matrix drops the e0 column.
"""

from dataclasses import dataclass, field as dc_field
from itertools import product

from .bias import (
    ALMOST_BALANCED,
    BALANCED,
    PROPERLY_UNBALANCED,
    BiasedGraph,
    classify_balance,
    unbalancing_classes,
    unroll,
)
from .errors import (
    BoundExceeded,
    GroupMismatch,
    MatroidMismatch,
    NoBasis,
    NotTriad,
    NotTriangle,
    NotVertically2Connected,
)
from .fields import gf
from .gains import (
    AdditiveGroup,
    GainGraph,
    MultiplicativeGroup,
    induced_bias,
    is_realization,
)
from .linalg import (
    FieldMatrix,
    ProjWitness,
    diagonally_equivalent,
    invert,
    left_null_space,
    projective_key,
    rank_of_columns,
    rref,
    vector_matroid,
)
from .matroid import (
    MatroidOracle,
    complete_lift_matroid,
    frame_matroid,
    lift_matroid,
    matroids_equal,
)

FRAME = "frame"
LIFT = "lift"
COMPLETE_LIFT = "lift0"


@dataclass
class CanonicalForm:
    kind: str
    gain_graph: GainGraph
    matrix: FieldMatrix
    orientations: tuple  # (tail, head) per edge, the declared orientations


def frame_matrix(gg):
    """Canonical frame matrix of an F^x gain graph."""
    if not isinstance(gg.group, MultiplicativeGroup):
        raise GroupMismatch("frame matrices need multiplicative field gains")
    f = gg.group.field
    g = gg.graph
    rows = [[f.zero] * g.m for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            if gg.gains[e] != f.one:
                rows[v][e] = f.one  # joint: head_hat
        else:
            rows[u][e] = f.add(rows[u][e], f.one)
            rows[v][e] = f.sub(rows[v][e], gg.gains[e])
    mat = FieldMatrix(f, rows, g.vertex_names, g.edge_names)
    return CanonicalForm(FRAME, gg, mat, g.edges)


def complete_lift_matrix(gg, joint_name="e0"):
    """Canonical complete lift matrix of an F^+ gain graph (extra row v0,
    extra column e0)."""
    if not isinstance(gg.group, AdditiveGroup):
        raise GroupMismatch("lift matrices need additive field gains")
    f = gg.group.field
    g = gg.graph
    rows = [[f.zero] * (g.m + 1) for _ in range(g.n + 1)]
    v0 = g.n
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            if gg.gains[e] != f.zero:
                rows[v0][e] = f.one  # joint: v0_hat
        else:
            rows[u][e] = f.add(rows[u][e], f.one)
            rows[v][e] = f.sub(rows[v][e], f.one)
            rows[v0][e] = gg.gains[e]
    rows[v0][g.m] = f.one
    mat = FieldMatrix(
        f,
        rows,
        tuple(g.vertex_names) + ("v0",),
        tuple(g.edge_names) + (joint_name,),
    )
    return CanonicalForm(COMPLETE_LIFT, gg, mat, g.edges)


def lift_matrix(gg):
    """Canonical lift matrix: complete lift with the e0 column dropped."""
    form = complete_lift_matrix(gg)
    mat = form.matrix.submatrix_cols(list(range(gg.graph.m)))
    return CanonicalForm(LIFT, gg, mat, gg.graph.edges)


def canonical_matrix(gg, kind):
    if kind == FRAME:
        return frame_matrix(gg)
    if kind == LIFT:
        return lift_matrix(gg)
    if kind == COMPLETE_LIFT:
        return complete_lift_matrix(gg)
    raise ValueError("unknown kind %r" % kind)


# -- matrix-level Delta-Y ------------------------------------------------------

def _std_basis_completion(f, vectors, n):
    """Deterministically extend independent column vectors to a basis of
    F^n using standard basis vectors; returns the n x n matrix."""
    cols = [list(v) for v in vectors]
    for i in range(n):
        e_i = [f.one if k == i else f.zero for k in range(n)]
        if rank_of_columns(f, cols + [e_i]) > len(cols):
            cols.append(e_i)
        if len(cols) == n:
            break
    if len(cols) != n:
        raise ValueError("could not complete basis")
    return FieldMatrix(f, [[cols[j][i] for j in range(n)] for i in range(n)])


def delta_y_matrix(A, triangle_cols):
    """Delta-Y exchange on three columns forming a triangle of M(A).

    A is first brought by a recorded row transform to the I(K_4) triangle
    template on those columns, a fresh row is appended, and the columns are
    replaced by the star template (each new column avoids the rows of its
    matching triangle column).  Returns the new matrix.
    """
    f = A.field
    idx = [A.col_labels.index(c) for c in triangle_cols]
    if len(idx) != 3:
        raise NotTriangle("need three column labels")
    cols = [A.column(j) for j in idx]
    if rank_of_columns(f, cols) != 2 or any(
        rank_of_columns(f, [c]) != 1 for c in cols
    ) or rank_of_columns(f, cols[:2]) != 2:
        raise NotTriangle("columns do not form a triangle")
    u, v = cols[0], cols[1]
    # express cols[2] = alpha*u + beta*v
    aug = FieldMatrix(f, [list(u), list(v), list(cols[2])]).transpose()
    R, E, piv = rref(aug)
    if piv != (0, 1):
        raise NotTriangle("third column not spanned by the first two")
    alpha = R.rows[0][2]
    beta = R.rows[1][2]
    if alpha == f.zero or beta == f.zero:
        raise NotTriangle("a pair of the columns is parallel")
    n = A.nrows
    if n < 3:
        raise NotTriangle("need at least three rows")
    # E0 maps u -> e1 - e2 and v -> (-alpha/beta)(e1 - e3)
    base = _std_basis_completion(f, [u, v], n)
    t1 = [f.zero] * n
    t1[0] = f.one
    t1[1] = f.neg(f.one)
    t2 = [f.zero] * n
    coef = f.neg(f.div(alpha, beta))
    t2[0] = coef
    t2[2] = f.neg(coef)
    targets = [t1, t2]
    for _ in range(2, n):
        chosen = None
        for s in range(n):
            t = [f.zero] * n
            t[s] = f.one
            if rank_of_columns(f, targets + [t]) == len(targets) + 1:
                chosen = t
                break
        if chosen is None:
            raise NotTriangle("could not complete the target basis")
        targets.append(chosen)
    Tmat = FieldMatrix(f, [[targets[j][i] for j in range(n)] for i in range(n)])
    E0 = Tmat.mul(invert(base))
    invert(E0)  # must be a genuine row transform
    EA = E0.mul(FieldMatrix(f, A.rows))
    new_rows = [list(r) + [] for r in EA.rows] + [[f.zero] * A.ncols]
    nr = n + 1
    # star columns: triangle col on rows {1,2} -> star col rows {3, new};
    # rows {1,3} -> {2, new}; rows {2,3} -> {1, new}
    star = {
        idx[0]: (2, nr - 1),
        idx[1]: (1, nr - 1),
        idx[2]: (0, nr - 1),
    }
    for j, (rp, rn) in star.items():
        for i in range(nr):
            new_rows[i][j] = f.zero
        new_rows[rp][j] = f.one
        new_rows[rn][j] = f.neg(f.one)
    new_label = _fresh_label(A.row_labels, "w")
    return FieldMatrix(
        f,
        new_rows,
        ["d%d" % (i + 1) for i in range(n)] + [new_label],
        A.col_labels,
    )


def y_delta_matrix(A, triad_cols):
    """Y-Delta exchange on three columns forming a triad of M(A).

    The matrix is brought to the I(K_4) star template on those columns: the
    triad is a cocircuit, so the complement columns span a hyperplane H of
    the column space and each triad column is u_i + c_i z off H with
    c_i != 0; in suitable coordinates the triad columns become e_i - e_c
    and every other column avoids the centre row e_c, which is then deleted
    after substituting the triangle template.
    """
    f = A.field
    idx = [A.col_labels.index(c) for c in triad_cols]
    vm = vector_matroid(A)
    full = (1 << A.ncols) - 1
    tri_mask = 0
    for j in idx:
        tri_mask |= 1 << j
    r = vm.rank_mask(full)
    if vm.rank_mask(full & ~tri_mask) != r - 1:
        raise NotTriad("complement must have rank r-1")
    for j in idx:
        if vm.rank_mask((full & ~tri_mask) | 1 << j) != r:
            raise NotTriad("not a minimal cocircuit")
    cols = [list(A.column(j)) for j in idx]
    if rank_of_columns(f, cols) != 3:
        raise NotTriad("triad columns must be independent")
    n = A.nrows
    if n < 3:
        raise NotTriad("need at least three rows")
    comp_cols = [list(A.column(j)) for j in range(A.ncols) if j not in idx]
    if comp_cols:
        Hcols = FieldMatrix(f, [[col[i] for col in comp_cols] for i in range(n)])
    else:
        Hcols = FieldMatrix(f, [[f.zero] for _ in range(n)])
    # functional vanishing on H but not on the triad columns
    lam = None
    for t in left_null_space(Hcols):
        if all(_dot(f, t, c) != f.zero for c in cols):
            lam = t
            break
    if lam is None:
        raise NotTriad("no separating functional; triad is degenerate")
    c_vals = [_dot(f, lam, c) for c in cols]
    scaled = [[f.div(x, c_vals[i]) for x in cols[i]] for i in range(3)]
    y1 = scaled[0]
    h2 = [f.sub(a, b) for a, b in zip(scaled[1], y1)]
    h3 = [f.sub(a, b) for a, b in zip(scaled[2], y1)]
    if rank_of_columns(f, [h2, h3]) != 2:
        raise NotTriad("degenerate triad geometry")
    # complete with vectors in ker(lam) so only y1 meets the centre row
    comp = []
    for i in range(n):
        e_i = [f.one if k == i else f.zero for k in range(n)]
        li = _dot(f, lam, e_i)
        if li != f.zero:
            corr = f.div(li, _dot(f, lam, y1))
            e_i = [f.sub(a, f.mul(corr, b)) for a, b in zip(e_i, y1)]
        if rank_of_columns(f, [y1, h2, h3] + comp + [e_i]) > 3 + len(comp):
            comp.append(e_i)
        if 3 + len(comp) == n:
            break
    if 3 + len(comp) != n:
        raise NotTriad("could not complete basis off the centre row")
    basis_vecs = [y1, h2, h3] + comp
    base = FieldMatrix(
        f, [[basis_vecs[j][i] for j in range(len(basis_vecs))] for i in range(n)]
    )
    center = n - 1
    # images: y1 -> e1 - e_center, h2 -> e2 - e1, h3 -> e3 - e1,
    # completion -> remaining non-centre coordinates
    t1 = [f.zero] * n
    t1[0] = f.one
    t1[center] = f.sub(t1[center], f.one)
    t2 = [f.zero] * n
    t2[1] = f.one
    t2[0] = f.neg(f.one)
    t3 = [f.zero] * n
    t3[2] = f.one
    t3[0] = f.neg(f.one)
    targets = [t1, t2, t3]
    for _ in comp:
        chosen = None
        for s in range(n):
            if s == center:
                continue
            t = [f.zero] * n
            t[s] = f.one
            if rank_of_columns(f, targets + [t]) == len(targets) + 1:
                chosen = t
                break
        if chosen is None:
            raise NotTriad("could not complete the target basis off the centre row")
        targets.append(chosen)
    if len(targets) != n:
        raise NotTriad("row-count bookkeeping failed")
    Tmat = FieldMatrix(f, [[targets[j][i] for j in range(n)] for i in range(n)])
    E0 = Tmat.mul(invert(base))
    invert(E0)  # must be a genuine row transform
    EA = E0.mul(FieldMatrix(f, A.rows))
    col_scale = [f.one] * A.ncols
    for pos, j in enumerate(idx):
        col_scale[j] = f.inv(c_vals[pos])
    EA = EA.scale_columns(col_scale)
    rows = [list(row) for row in EA.rows]
    for j in range(A.ncols):
        if j in idx:
            continue
        if rows[center][j] != f.zero:
            raise NotTriad("complement columns hit the centre row")
    tri = {idx[0]: (1, 2), idx[1]: (0, 2), idx[2]: (0, 1)}
    for j, (ra, rb) in tri.items():
        for i in range(n):
            rows[i][j] = f.zero
        rows[ra][j] = f.one
        rows[rb][j] = f.neg(f.one)
    del rows[center]
    return FieldMatrix(
        f,
        rows,
        ["d%d" % (i + 1) for i in range(n - 1)],
        A.col_labels,
    )


def _dot(f, a, b):
    acc = f.zero
    for x, y in zip(a, b):
        if x != f.zero and y != f.zero:
            acc = f.add(acc, f.mul(x, y))
    return acc


def _fresh_label(labels, stem):
    i = 1
    while "%s%d" % (stem, i) in labels:
        i += 1
    return "%s%d" % (stem, i)


# -- canonicalization ----------------------------------------------------------

@dataclass
class CanonicalizeResult:
    status: str  # "ok" | "undecided"
    kind: str = None
    form: CanonicalForm = None
    witness: ProjWitness = None
    variant: BiasedGraph = None  # the biased graph the form is particular to
    rolled_edges: tuple = ()  # edges turned into joints (almost-balanced regime)
    other_kind: str = None  # "ok" / "no" / "not-attempted" for the other kind
    reason: str = None


def canonicalize_representation(A, omega, hint=None):
    """Decide which canonical form A is projectively equivalent to.

    Requires vector_matroid(A) to equal F(omega) or L(omega) on all
    subsets (MatroidMismatch otherwise) and omega vertically 2-connected.
    For properly unbalanced omega the result is particular to omega; for
    almost-balanced omega it may be particular to a roll-up variant, with
    the rolled edges reported.  Returns witness with T*A*S equal to the
    canonical matrix entry-exactly.  Undecided only on structural bound
    exhaustion, never wrong.
    """
    g = omega.graph
    if tuple(A.col_labels) != tuple(g.edge_names):
        raise MatroidMismatch("matrix columns must be labeled by the edges")
    ok2, _ = g.is_vertically_k_connected(2)
    if not ok2:
        raise NotVertically2Connected("canonicalization needs vertical 2-connectivity")
    MA = vector_matroid(A)
    FO = frame_matroid(omega)
    LO = lift_matroid(omega)
    match_frame = matroids_equal(MA, FO)[0]
    match_lift = matroids_equal(MA, LO)[0]
    if not match_frame and not match_lift:
        raise MatroidMismatch("matrix does not represent F(omega) or L(omega)")
    kinds = []
    if hint in (FRAME, LIFT):
        kinds = [hint] + [k for k in (FRAME, LIFT) if k != hint]
    else:
        kinds = [FRAME, LIFT]
    kinds = [
        k
        for k in kinds
        if (k == FRAME and match_frame) or (k == LIFT and match_lift)
    ]
    attempts = {}
    for kind in kinds:
        res = (
            _attempt_frame(A, omega)
            if kind == FRAME
            else _attempt_lift(A, omega)
        )
        attempts[kind] = res
        if res.status == "ok":
            other = [k for k in (FRAME, LIFT) if k != kind]
            other_state = "not-attempted"
            if other[0] in attempts:
                other_state = "ok" if attempts[other[0]].status == "ok" else "no"
            elif other[0] in kinds:
                other_res = (
                    _attempt_frame(A, omega)
                    if other[0] == FRAME
                    else _attempt_lift(A, omega)
                )
                other_state = "ok" if other_res.status == "ok" else "no"
            res.other_kind = other_state
            return res
    reasons = "; ".join(
        "%s: %s" % (k, attempts[k].reason) for k in attempts
    )
    return CanonicalizeResult(status="undecided", reason=reasons or "no kind matched")


def _row_candidates(A_rows, f, cols, nrows):
    """Left null space of the chosen columns, as row vectors."""
    sub = FieldMatrix(f, [[row[j] for j in cols] for row in A_rows])
    return left_null_space(sub)


def _attempt_frame(A, omega):
    f = A.field
    g = omega.graph
    R, E, piv = rref(A)
    r = len(piv)
    if r != g.n:
        return CanonicalizeResult(status="undecided", reason="rank != |V|")
    Rr = [list(R.rows[i]) for i in range(r)]
    tag = classify_balance(omega).tag
    bal_vertices = ()
    if tag == ALMOST_BALANCED:
        bal_vertices = classify_balance(omega).balancing_vertices
    elif tag == BALANCED:
        return CanonicalizeResult(status="undecided", reason="balanced input out of scope")
    fixed_rows = {}
    free_rows = {}
    for x in range(g.n):
        cols = [e for e in range(g.m) if x not in g.endpoints(e)]
        null = _row_candidates(Rr, f, cols, r)
        if len(null) == 1:
            fixed_rows[x] = null[0]
        elif len(null) == 2 and x in bal_vertices:
            free_rows[x] = null
        else:
            return CanonicalizeResult(
                status="undecided",
                reason="row space at vertex %d has dimension %d" % (x, len(null)),
            )
    fallback = None
    for choice in _line_choices(f, free_rows):
        T_rows = []
        for x in range(g.n):
            T_rows.append(fixed_rows[x] if x in fixed_rows else choice[x])
        Tm = FieldMatrix(f, T_rows)
        try:
            invert(Tm)
        except ValueError:
            continue
        W = Tm.mul(FieldMatrix(f, Rr))
        parsed = _parse_frame_columns(W, omega, f)
        if parsed is None:
            continue
        gg, variant, rolled = parsed
        if not matroids_equal(vector_matroid(A), frame_matroid(variant))[0]:
            continue
        if rolled and not _roll_reachable(omega, variant):
            continue
        form = frame_matrix(gg)
        scales = _column_scales(W, form.matrix, f)
        if scales is None:
            continue
        Tfull = Tm.mul(FieldMatrix(f, E.rows[:r]))
        witness = ProjWitness(
            Tfull.with_labels(
                row_labels=form.matrix.row_labels, col_labels=A.row_labels
            ),
            FieldMatrix.diagonal(f, scales, A.col_labels),
        )
        if not witness.verify(A, form.matrix):
            continue
        result = CanonicalizeResult(
            status="ok",
            kind=FRAME,
            form=form,
            witness=witness,
            variant=variant,
            rolled_edges=tuple(sorted(rolled)),
        )
        if not rolled:
            return result
        if fallback is None:
            fallback = result
    if fallback is not None:
        return fallback
    return CanonicalizeResult(status="undecided", reason="no frame shaping found")


def _attempt_lift(A, omega):
    f = A.field
    g = omega.graph
    R, E, piv = rref(A)
    r = len(piv)
    if r != g.n:
        return CanonicalizeResult(status="undecided", reason="rank != |V|")
    Rr = [list(R.rows[i]) for i in range(r)]
    tag = classify_balance(omega).tag
    bal_vertices = ()
    if tag == ALMOST_BALANCED:
        bal_vertices = classify_balance(omega).balancing_vertices
    elif tag == BALANCED:
        return CanonicalizeResult(status="undecided", reason="balanced input out of scope")
    fixed_rows = {}
    free_rows = {}
    for x in range(g.n):
        cols = [e for e in range(g.m) if x not in g.endpoints(e)]
        null = _row_candidates(Rr, f, cols, r)
        if len(null) == 1:
            fixed_rows[x] = null[0]
        elif len(null) == 2 and x in bal_vertices:
            free_rows[x] = null
        else:
            return CanonicalizeResult(
                status="undecided",
                reason="row space at vertex %d has dimension %d" % (x, len(null)),
            )
    fallback = None
    for choice in _line_choices(f, free_rows):
        rows = {}
        for x in range(g.n):
            rows[x] = fixed_rows[x] if x in fixed_rows else choice[x]
        # scale rows so they sum to zero: solve sum alpha_x t_x = 0
        stack = FieldMatrix(f, [list(rows[x]) for x in range(g.n)])
        null = left_null_space(stack)
        null = [a for a in null if all(x != f.zero for x in a)]
        if len(null) != 1:
            # try: solution space may be bigger/smaller depending on choice
            continue
        alpha = null[0]
        vrows = [
            [f.mul(alpha[x], val) for val in rows[x]] for x in range(g.n)
        ]
        # v0 row: first standard basis vector completing the V-rows to full rank
        v0 = None
        for i in range(r):
            cand = [f.one if k == i else f.zero for k in range(r)]
            if rank_of_columns(f, [list(col) for col in zip(*(vrows + [cand]))]) == r:
                v0 = cand
                break
        if v0 is None:
            continue
        Wm = FieldMatrix(f, vrows + [v0]).mul(FieldMatrix(f, Rr))
        parsed = _parse_lift_columns(Wm, omega, f)
        if parsed is None:
            continue
        gg, variant, moved = parsed
        if not matroids_equal(vector_matroid(A), lift_matroid(variant))[0]:
            continue
        if moved and not _roll_reachable(omega, variant):
            continue
        form = lift_matrix(gg)
        scales = _column_scales(Wm, form.matrix, f)
        if scales is None:
            continue
        Tfull = FieldMatrix(f, vrows + [v0]).mul(FieldMatrix(f, E.rows[:r]))
        witness = ProjWitness(
            Tfull.with_labels(
                row_labels=form.matrix.row_labels, col_labels=A.row_labels
            ),
            FieldMatrix.diagonal(f, scales, A.col_labels),
        )
        if not witness.verify(A, form.matrix):
            continue
        result = CanonicalizeResult(
            status="ok",
            kind=LIFT,
            form=form,
            witness=witness,
            variant=variant,
            rolled_edges=tuple(sorted(moved)),
        )
        if not moved:
            return result
        if fallback is None:
            fallback = result
    if fallback is not None:
        return fallback
    return CanonicalizeResult(status="undecided", reason="no lift shaping found")


def _line_choices(f, free_rows):
    """Iterate over choices of one vector per 2-dimensional row space."""
    if not free_rows:
        yield {}
        return
    keys = sorted(free_rows)
    per_key = []
    for x in keys:
        b1, b2 = free_rows[x]
        lines = [b1, b2]
        for lam in f.elements:
            if lam != f.zero:
                lines.append(
                    tuple(f.add(a, f.mul(lam, b)) for a, b in zip(b1, b2))
                )
        per_key.append(lines)
    for combo in product(*per_key):
        yield dict(zip(keys, combo))


def _parse_frame_columns(W, omega, f):
    """Read a gain graph off a vertex-row-shaped matrix; returns
    (gain graph, variant biased graph, rolled edge ids) or None."""
    g = omega.graph
    group = MultiplicativeGroup(f.q)
    new_edges = []
    gains = {}
    rolled = []
    for e in range(g.m):
        u, v = g.edges[e]
        support = [i for i in range(g.n) if W.rows[i][e] != f.zero]
        if u == v:
            if frozenset((e,)) in omega.balanced:
                if support:
                    return None
                new_edges.append((u, v))
                gains[e] = f.one
            else:
                if support != [u]:
                    return None
                new_edges.append((u, v))
                gains[e] = _joint_gain_mul(group)
                if gains[e] is None:
                    return None
        else:
            if support == [u, v] or support == [v, u]:
                new_edges.append((u, v))
                gains[e] = f.neg(f.div(W.rows[v][e], W.rows[u][e]))
                if gains[e] == f.zero:
                    return None
            elif len(support) == 1 and support[0] in (u, v):
                w = support[0]
                new_edges.append((w, w))
                gains[e] = _joint_gain_mul(group)
                if gains[e] is None:
                    return None
                rolled.append(e)
            else:
                return None
    from .graph import MultiGraph

    g2 = MultiGraph(g.n, new_edges, g.edge_names, g.vertex_names)
    gg = GainGraph(g2, group, gains)
    variant = induced_bias(gg)
    if not rolled and variant.balanced != omega.balanced:
        return None
    return gg, variant, rolled


def _joint_gain_mul(group):
    try:
        return group.smallest_non_identity()
    except Exception:
        return None


def _parse_lift_columns(W, omega, f):
    """Read an additive gain graph off a (vertex rows + v0)-shaped matrix."""
    g = omega.graph
    group = AdditiveGroup(f.q)
    v0 = g.n
    new_edges = []
    gains = {}
    moved = []
    for e in range(g.m):
        u, v = g.edges[e]
        support = [i for i in range(g.n) if W.rows[i][e] != f.zero]
        gain_entry = W.rows[v0][e]
        if u == v:
            if frozenset((e,)) in omega.balanced:
                if support or gain_entry != f.zero:
                    return None
                new_edges.append((u, v))
                gains[e] = f.zero
            else:
                if support or gain_entry == f.zero:
                    return None
                new_edges.append((u, v))
                gains[e] = f.one
        else:
            if support in ([u, v], [v, u]):
                a = W.rows[u][e]
                if f.add(a, W.rows[v][e]) != f.zero:
                    return None
                new_edges.append((u, v))
                gains[e] = f.div(gain_entry, a)
            elif not support and gain_entry != f.zero:
                # column is v0_hat: the edge becomes a joint; attach at the
                # far end of the balancing vertex when possible
                moved.append(e)
                new_edges.append(None)  # resolved below
                gains[e] = f.one
            else:
                return None
    if moved:
        bal = classify_balance(omega).balancing_vertices
        if not bal:
            return None
        vbal = bal[0]
        for e in moved:
            u, v = g.edges[e]
            if vbal not in (u, v):
                return None
            w = v if u == vbal else u
            new_edges[e] = (w, w)
    from .graph import MultiGraph

    g2 = MultiGraph(g.n, new_edges, g.edge_names, g.vertex_names)
    gg = GainGraph(g2, group, gains)
    variant = induced_bias(gg)
    if not moved and variant.balanced != omega.balanced:
        return None
    return gg, variant, moved


def _column_scales(W, target, f):
    """Per-column scalars s with W[:,e] * s_e = target[:,e]; None if some
    column is not a scalar multiple."""
    scales = []
    for j in range(W.ncols):
        wcol = [W.rows[i][j] for i in range(W.nrows)]
        tcol = [target.rows[i][j] for i in range(target.nrows)]
        if len(wcol) != len(tcol):
            return None
        s = None
        for a, b in zip(wcol, tcol):
            if (a == f.zero) != (b == f.zero):
                return None
            if a != f.zero:
                cand = f.div(b, a)
                if s is None:
                    s = cand
                elif s != cand:
                    return None
        scales.append(s if s is not None else f.one)
    return scales


def _roll_reachable(omega, variant):
    """Variant reachable from omega by rolling: compare full unrollings at
    each balancing vertex of omega (ignoring edge orientations, which
    unrolling does not preserve)."""
    from .bias import biased_equal_unoriented

    bal = classify_balance(omega).balancing_vertices
    for u in bal:
        try:
            a = unroll(omega, u)
            b = unroll(variant, u)
        except Exception:
            continue
        if biased_equal_unoriented(a, b):
            return True
    return False


# -- representation enumeration -------------------------------------------------

@dataclass
class ReprClass:
    matrix: FieldMatrix
    count: int
    kind: str = None  # frame / lift / None (unclassified or not canonical)
    canonical: CanonicalizeResult = None


def enumerate_representations(
    M, q, biased_graph=None, max_rank=4, max_elements=8, max_q=5, hint=None
):
    """All F_q-representations of M up to projective equivalence.

    Fixes the lex-first basis, enumerates standard forms [I | D] whose
    support is forced by the fundamental circuits, filters by matroid
    equality, deduplicates by the projective canonical key, and (when a
    biased graph is supplied) classifies each class via
    canonicalize_representation.
    """
    f = gf(q)
    n = M.size
    r = M.full_rank()
    if r > max_rank or n > max_elements or q > max_q:
        raise BoundExceeded("enumeration bounds exceeded")
    if r == 0:
        raise NoBasis("rank-zero matroid")
    basis = []
    mask = 0
    for i in range(n):
        if M.rank_mask(mask | 1 << i) > M.rank_mask(mask):
            mask |= 1 << i
            basis.append(i)
        if len(basis) == r:
            break
    if len(basis) != r:
        raise NoBasis("could not complete a basis")
    nonbasis = [j for j in range(n) if j not in basis]
    basis_mask = mask
    support = {}
    for j in nonbasis:
        if M.rank_mask(1 << j) == 0:
            support[j] = []
            continue
        circ = []
        withj = basis_mask | 1 << j
        for b in basis:
            if M.rank_mask(withj & ~(1 << b)) == r:
                circ.append(b)
        support[j] = circ
    target_ranks = [M.rank_mask(s) for s in range(1 << n)]
    pos_of = {lbl_i: k for k, lbl_i in enumerate(basis)}

    cols_fixed = {}
    for k, b in enumerate(basis):
        col = [f.zero] * r
        col[k] = f.one
        cols_fixed[b] = col

    classes = {}
    order = []

    def column_options(j):
        rowsj = support[j]
        opts = []
        for values in product(f.nonzero, repeat=len(rowsj)):
            col = [f.zero] * r
            for row_b, val in zip(rowsj, values):
                col[pos_of[row_b]] = val
            opts.append(col)
        if not rowsj:
            opts = [[f.zero] * r]
        return opts

    def pair_ok(cols, j1, j2):
        want = target_ranks[(1 << j1) | (1 << j2)]
        have = rank_of_columns(f, [cols[j1], cols[j2]])
        return want == have

    all_cols = dict(cols_fixed)

    def rec(idx):
        if idx == len(nonbasis):
            collist = [all_cols[j] for j in range(n)]
            A = FieldMatrix(
                f,
                [[collist[j][i] for j in range(n)] for i in range(r)],
                None,
                M.labels,
            )
            if _matroid_matches(A, target_ranks, f):
                key = projective_key(A)
                if key in classes:
                    classes[key].count += 1
                else:
                    classes[key] = ReprClass(A, 1)
                    order.append(key)
            return
        j = nonbasis[idx]
        for col in column_options(j):
            all_cols[j] = col
            ok = True
            for j2 in nonbasis[:idx]:
                if not pair_ok(all_cols, j, j2):
                    ok = False
                    break
            if ok:
                for b in basis:
                    if not pair_ok(all_cols, j, b):
                        ok = False
                        break
            if ok:
                rec(idx + 1)
            del all_cols[j]

    rec(0)
    out = [classes[k] for k in order]
    if biased_graph is not None:
        for cls in out:
            try:
                res = canonicalize_representation(cls.matrix, biased_graph, hint=hint)
            except Exception:
                res = None
            if res is not None and res.status == "ok":
                cls.kind = res.kind
                cls.canonical = res
    return out


def _matroid_matches(A, target_ranks, f):
    from .linalg import all_column_ranks

    have = all_column_ranks(A)
    return have == target_ranks
