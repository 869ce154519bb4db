"""The claim registry behind `bmlab verify`: one registered claim per paper
result, each an exhaustive or seeded desk-scale computation that returns a
VerifyReport.  Fail reports always carry a concrete counterexample object.
"""

import random
import time
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import catalog
from .bias import (
    BiasedGraph,
    balancing_vertices,
    biased_equal_unoriented,
    biased_isomorphic,
    biased_minor,
    classify_balance,
    delta_y,
    fat_theta_parts,
    find_biased_subdivision,
    find_link_minor,
    is_tangled,
    roll_up,
    theta_subgraphs,
    unbalancing_classes,
    unroll,
    double_roll_up,
)
from .canonical import (
    FRAME,
    LIFT,
    CanonicalizeResult,
    canonicalize_representation,
    complete_lift_matrix,
    delta_y_matrix,
    enumerate_representations,
    frame_matrix,
    lift_matrix,
    y_delta_matrix,
)
from .errors import UnknownClaim
from .fields import gf
from .gains import (
    AdditiveGroup,
    CyclicGroup,
    GainGraph,
    MultiplicativeGroup,
    induced_bias,
    induced_gain,
    normalize,
    realizations,
    scaling_orbits,
    switching_equivalent,
    switching_scaling_equivalent,
    walk_gain,
)
from .graph import MultiGraph
from .linalg import (
    FieldMatrix,
    invert,
    projective_key,
    projectively_equivalent,
    vector_matroid,
)
from .matroid import (
    complete_lift_matroid,
    frame_matroid,
    graphic_matroid,
    lift_matroid,
    matroids_equal,
)

DEFAULT_SEED = 20240
DEFAULT_FIELDS = (2, 3, 4, 5)


@dataclass
class VerifyReport:
    claim: str
    status: str  # pass / fail / undecided
    counts: dict = dc_field(default_factory=dict)
    witnesses: list = dc_field(default_factory=list)
    seconds: float = 0.0

    def to_json(self):
        return {
            "claim": self.claim,
            "status": self.status,
            "counts": self.counts,
            "witnesses": self.witnesses,
            "seconds": round(self.seconds, 3),
        }


def _report(claim, failures, counts, t0, undecided=0):
    status = "pass"
    if failures:
        status = "fail"
    elif undecided:
        status = "undecided"
    if undecided:
        counts = dict(counts)
        counts["undecided"] = undecided
    return VerifyReport(claim, status, counts, failures[:10], time.time() - t0)


# -- section 3 counts ------------------------------------------------------------

def claim_seven_dwarves(**kw):
    t0 = time.time()
    names = [nb.name for nb in catalog.classify_k4()]
    failures = [] if len(names) == 7 else [{"got": names}]
    return _report("seven-dwarves", failures, {"classes": len(names)}, t0)


def claim_2c3_proper_count(**kw):
    t0 = time.time()
    names = [nb.name for nb in catalog.classify_2c3_proper()]
    failures = [] if len(names) == 6 else [{"got": names}]
    return _report("2c3-proper-count", failures, {"classes": len(names)}, t0)


def claim_tube_count(**kw):
    t0 = time.time()
    names = [nb.name for nb in catalog.classify_tube_proper()]
    failures = [] if len(names) == 3 else [{"got": names}]
    return _report("tube-count", failures, {"classes": len(names)}, t0)


def claim_base_count(**kw):
    t0 = time.time()
    base = catalog.base_graphs()
    failures = [] if len(base) == 13 else [{"got": [nb.name for nb in base]}]
    return _report("base-count", failures, {"classes": len(base)}, t0)


# -- canonical representation theorems -------------------------------------------

def _random_multigraph(rng, max_vertices=6, max_edges=10, allow_loops=True):
    n = rng.randint(2, max_vertices)
    m = rng.randint(1, max_edges)
    edges = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if not allow_loops:
            while v == u:
                v = rng.randrange(n)
        edges.append((u, v))
    return MultiGraph(n, edges)


def claim_canonical_frame(seed=DEFAULT_SEED, samples=200, q=5, **kw):
    """Thm: vector matroid of the frame matrix equals the frame matroid."""
    t0 = time.time()
    rng = random.Random(seed)
    group = MultiplicativeGroup(q)
    failures = []
    for k in range(samples):
        g = _random_multigraph(rng)
        gains = {e: rng.choice(group.elements) for e in range(g.m)}
        gg = GainGraph(g, group, gains)
        om = induced_bias(gg)
        A = frame_matrix(gg).matrix
        eq, w = matroids_equal(vector_matroid(A), frame_matroid(om))
        if not eq:
            failures.append({"sample": k, "edges": list(g.edges), "gains": gains, "subset": w})
    return _report("canonical-frame", failures, {"samples": samples, "q": q}, t0)


def claim_canonical_lift(seed=DEFAULT_SEED, samples=200, q=5, **kw):
    """Thm: vector matroid of the complete lift matrix equals L0."""
    t0 = time.time()
    rng = random.Random(seed)
    group = AdditiveGroup(q)
    failures = []
    for k in range(samples):
        g = _random_multigraph(rng)
        gains = {e: rng.choice(group.elements) for e in range(g.m)}
        gg = GainGraph(g, group, gains)
        om = induced_bias(gg)
        A = complete_lift_matrix(gg).matrix
        eq, w = matroids_equal(vector_matroid(A), complete_lift_matroid(om))
        if not eq:
            failures.append({"sample": k, "edges": list(g.edges), "gains": gains, "subset": w})
    return _report("canonical-lift", failures, {"samples": samples, "q": q}, t0)


# -- section 4.1 biconditionals ----------------------------------------------------

def _frame_reps_with_matrices(om, q):
    reps = realizations(om, MultiplicativeGroup(q))
    return [(gg, frame_matrix(gg).matrix) for gg in reps]


def _lift_reps_with_matrices(om, q):
    reps = realizations(om, AdditiveGroup(q))
    return [(gg, lift_matrix(gg).matrix) for gg in reps]


def _biconditional_frame(claim, graphs, fields, seed):
    """Exhaustive: distinct normalized realizations (= distinct switching
    classes) must give projectively inequivalent frame matrices; switched
    copies must stay equivalent (seeded samples, exact decision)."""
    t0 = time.time()
    rng = random.Random(seed)
    failures = []
    pairs = reps_total = 0
    for nb in graphs:
        om = nb.omega
        for q in fields:
            reps = _frame_reps_with_matrices(om, q)
            reps_total += len(reps)
            keys = [projective_key(A) for _, A in reps]
            for i, j in combinations(range(len(reps)), 2):
                pairs += 1
                if keys[i] == keys[j]:
                    failures.append({"graph": nb.name, "q": q, "pair": (i, j),
                                     "why": "inequivalent classes projectively equivalent"})
            # spot-check the key decision against the full procedure
            for i, j in _sample_pairs(rng, len(reps), 4):
                w = projectively_equivalent(reps[i][1], reps[j][1])
                if (w is not None) != (keys[i] == keys[j]):
                    failures.append({"graph": nb.name, "q": q, "pair": (i, j),
                                     "why": "key/decision disagreement"})
            # switching => projective equivalence, with exact witnesses
            group = MultiplicativeGroup(q)
            for i in _sample_indices(rng, len(reps), 3):
                gg, A = reps[i]
                eta = {v: rng.choice(group.elements) for v in range(om.graph.n)}
                from .gains import switch

                B = frame_matrix(switch(gg, eta)).matrix
                w = projectively_equivalent(A, B)
                if w is None:
                    failures.append({"graph": nb.name, "q": q, "rep": i,
                                     "why": "switched copy not equivalent"})
    return _report(claim, failures,
                   {"graphs": len(graphs), "fields": list(fields),
                    "realizations": reps_total, "pairs": pairs}, t0)


def _biconditional_lift(claim, graphs, fields, seed):
    """Exhaustive: normalized additive realizations pair up projectively
    exactly within switching-and-scaling orbits."""
    t0 = time.time()
    rng = random.Random(seed)
    failures = []
    pairs = reps_total = 0
    for nb in graphs:
        om = nb.omega
        for q in fields:
            reps = _lift_reps_with_matrices(om, q)
            reps_total += len(reps)
            keys = [projective_key(A) for _, A in reps]
            orbit_of = {}
            orbits = scaling_orbits([gg for gg, _ in reps])
            rep_index = {id(gg): k for k, (gg, _) in enumerate(reps)}
            for oi, orbit in enumerate(orbits):
                for gg in orbit:
                    orbit_of[rep_index[id(gg)]] = oi
            for i, j in combinations(range(len(reps)), 2):
                pairs += 1
                same_orbit = orbit_of[i] == orbit_of[j]
                same_key = keys[i] == keys[j]
                if same_orbit != same_key:
                    failures.append({"graph": nb.name, "q": q, "pair": (i, j),
                                     "same_orbit": same_orbit, "proj_equiv": same_key})
            for i, j in _sample_pairs(rng, len(reps), 4):
                w = projectively_equivalent(reps[i][1], reps[j][1])
                if (w is not None) != (keys[i] == keys[j]):
                    failures.append({"graph": nb.name, "q": q, "pair": (i, j),
                                     "why": "key/decision disagreement"})
    return _report(claim, failures,
                   {"graphs": len(graphs), "fields": list(fields),
                    "realizations": reps_total, "pairs": pairs}, t0)


def _biconditional_cross(claim, graphs, fields):
    """Frame forms are never projectively equivalent to lift forms."""
    t0 = time.time()
    failures = []
    checked = 0
    for nb in graphs:
        om = nb.omega
        for q in fields:
            fr = _frame_reps_with_matrices(om, q)
            lf = _lift_reps_with_matrices(om, q)
            fkeys = {projective_key(A) for _, A in fr}
            lkeys = {projective_key(A) for _, A in lf}
            checked += len(fr) * len(lf)
            both = fkeys & lkeys
            if both:
                failures.append({"graph": nb.name, "q": q,
                                 "why": "frame and lift forms equivalent"})
    return _report(claim, failures,
                   {"graphs": len(graphs), "fields": list(fields), "cross_pairs": checked}, t0)


def _sample_pairs(rng, n, k):
    if n < 2:
        return []
    out = set()
    for _ in range(k * 3):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            out.add((min(i, j), max(i, j)))
        if len(out) >= k:
            break
    return sorted(out)


def _sample_indices(rng, n, k):
    if n == 0:
        return []
    return sorted({rng.randrange(n) for _ in range(k)})


def claim_lemma_2c3_frame(fields=DEFAULT_FIELDS, seed=DEFAULT_SEED, **kw):
    return _biconditional_frame("lemma-2c3-frame", catalog.classify_2c3_proper(), fields, seed)


def claim_lemma_2c3_lift(fields=DEFAULT_FIELDS, seed=DEFAULT_SEED, **kw):
    return _biconditional_lift("lemma-2c3-lift", catalog.classify_2c3_proper(), fields, seed)


def claim_lemma_2c3_cross(fields=DEFAULT_FIELDS, **kw):
    return _biconditional_cross("lemma-2c3-frame-vs-lift", catalog.classify_2c3_proper(), fields)


def _proper_k4():
    return [nb for nb in catalog.classify_k4() if not any(len(c) == 3 for c in nb.omega.balanced)]


def claim_lemma_k4_frame(fields=DEFAULT_FIELDS, seed=DEFAULT_SEED, **kw):
    return _biconditional_frame("lemma-k4-frame", _proper_k4(), fields, seed)


def claim_lemma_k4_lift(fields=DEFAULT_FIELDS, seed=DEFAULT_SEED, **kw):
    return _biconditional_lift("lemma-k4-lift", _proper_k4(), fields, seed)


def claim_lemma_k4_cross(fields=DEFAULT_FIELDS, **kw):
    return _biconditional_cross("lemma-k4-frame-vs-lift", _proper_k4(), fields)


def claim_lemma_tube_frame(fields=DEFAULT_FIELDS, seed=DEFAULT_SEED, **kw):
    return _biconditional_frame("lemma-tube-frame", catalog.classify_tube_proper(), fields, seed)


def claim_lemma_tube_lift(fields=DEFAULT_FIELDS, seed=DEFAULT_SEED, **kw):
    return _biconditional_lift("lemma-tube-lift", catalog.classify_tube_proper(), fields, seed)


def claim_u2_criterion(fields=DEFAULT_FIELDS, **kw):
    """Lemma: A_F(U_2,phi) ~ A_F(U_2,psi) iff the 2-cycle gains agree."""
    t0 = time.time()
    failures = []
    checked = 0
    u2 = catalog.u2().omega
    g = u2.graph
    two_cycle = next(c for c in g.cycles() if len(c) == 2)
    for q in fields:
        group = MultiplicativeGroup(q)
        reps = realizations(u2, group)
        mats = [frame_matrix(gg).matrix for gg in reps]
        keys = [projective_key(A) for A in mats]
        gains = [walk_gain(gg, two_cycle.walk) for gg in reps]
        for i, j in combinations(range(len(reps)), 2):
            checked += 1
            if (keys[i] == keys[j]) != (gains[i] == gains[j]):
                failures.append({"q": q, "pair": (i, j),
                                 "gains": (gains[i], gains[j])})
    return _report("u2-criterion", failures, {"fields": list(fields), "pairs": checked}, t0)


def claim_u3_lift_criterion(fields=DEFAULT_FIELDS, **kw):
    """Lemma: A_L(U_3,phi) ~ A_L(U_3,psi) iff the restrictions to the theta
    links are switching-and-scaling equivalent."""
    t0 = time.time()
    failures = []
    checked = 0
    u3 = catalog.u3().omega
    g = u3.graph
    links = [e for e in range(g.m) if not g.is_loop(e)]
    theta = MultiGraph(2, [g.edges[e] for e in links],
                       [g.edge_names[e] for e in links])
    for q in fields:
        group = AdditiveGroup(q)
        reps = realizations(u3, group)
        mats = [lift_matrix(gg).matrix for gg in reps]
        keys = [projective_key(A) for A in mats]
        restr = [
            GainGraph(theta, group, {k: gg.gains[e] for k, e in enumerate(links)})
            for gg in reps
        ]
        for i, j in combinations(range(len(reps)), 2):
            checked += 1
            equiv = switching_scaling_equivalent(restr[i], restr[j]) is not None
            if (keys[i] == keys[j]) != equiv:
                failures.append({"q": q, "pair": (i, j), "restriction_equiv": equiv})
    return _report("u3-lift-criterion", failures, {"fields": list(fields), "pairs": checked}, t0)


# -- section 4.2: all representations are canonical --------------------------------

def _allreps(claim, named_graphs, q, expect_kinds=("frame", "lift"), hint=None):
    """Enumerate all representations of F(omega); every class must
    canonicalize, and the class count must equal the independent count of
    gain-function classes (switching for frame, switching-and-scaling for
    lift, restricted to the kinds that represent the matroid)."""
    t0 = time.time()
    failures = []
    counts = {}
    for nb in named_graphs:
        om = nb.omega
        FO = frame_matroid(om)
        LO = lift_matroid(om)
        classes = enumerate_representations(FO, q, biased_graph=om, hint=hint)
        n_frame = len(realizations(om, MultiplicativeGroup(q)))
        frame_represents = True
        lift_represents = matroids_equal(FO, LO)[0]
        n_lift = (
            len(scaling_orbits(realizations(om, AdditiveGroup(q))))
            if lift_represents
            else 0
        )
        expected = (n_frame if "frame" in expect_kinds else 0) + (
            n_lift if "lift" in expect_kinds else 0
        )
        got_kinds = [c.kind for c in classes]
        counts[nb.name] = {
            "classes": len(classes),
            "frame_classes": n_frame,
            "lift_classes": n_lift,
        }
        if len(classes) != expected:
            failures.append({"graph": nb.name, "q": q, "classes": len(classes),
                             "expected": expected})
        for k, cls in enumerate(classes):
            if cls.kind not in expect_kinds:
                failures.append({"graph": nb.name, "q": q, "class": k,
                                 "why": "not canonicalizable", "kind": cls.kind})
    return _report(claim, failures, {"q": q, "per_graph": counts}, t0)


def claim_allreps_2c3(q=4, **kw):
    return _allreps("allreps-2c3", catalog.classify_2c3_proper(), q)


def claim_allreps_k4(q=4, **kw):
    return _allreps("allreps-k4", _proper_k4(), q)


def claim_allreps_tube_frame(q=4, **kw):
    return _allreps("allreps-tube-frame", catalog.classify_tube_proper(), q,
                    expect_kinds=("frame",))


def claim_allreps_tube_lift(q=4, **kw):
    """Every representation of L(2C4'',B) is a unique canonical lift."""
    t0 = time.time()
    failures = []
    counts = {}
    for nb in catalog.classify_tube_proper():
        om = nb.omega
        LO = lift_matroid(om)
        classes = enumerate_representations(LO, q, biased_graph=om, hint=LIFT)
        n_lift = len(scaling_orbits(realizations(om, AdditiveGroup(q))))
        counts[nb.name] = {"classes": len(classes), "lift_classes": n_lift}
        if len(classes) != n_lift:
            failures.append({"graph": nb.name, "q": q, "classes": len(classes),
                             "expected": n_lift})
        for k, cls in enumerate(classes):
            if cls.kind != "lift":
                failures.append({"graph": nb.name, "class": k, "kind": cls.kind})
    return _report("allreps-tube-lift", failures, {"q": q, "per_graph": counts}, t0)


def claim_allreps_contracted_tube(q=5, **kw):
    """Lemma: every representation of F(2C3-e,B) is projectively equivalent
    to a frame matrix particular to the graph or one of its roll-ups, and
    to a lift matrix particular to the graph."""
    t0 = time.time()
    failures = []
    counts = {}
    for nb in catalog.contracted_tubes():
        om0 = nb.omega
        g0, _ = om0.graph.drop_isolated()
        emap = {om0.graph.edge_index(nm): g0.edge_index(nm) for nm in g0.edge_names}
        om = BiasedGraph(g0, {frozenset(emap[e] for e in c) for c in om0.balanced})
        FO = frame_matroid(om)
        classes = enumerate_representations(FO, q)
        counts[nb.name] = {"classes": len(classes)}
        for k, cls in enumerate(classes):
            fres = canonicalize_representation(cls.matrix, om, hint=FRAME)
            lres = canonicalize_representation(cls.matrix, om, hint=LIFT)
            if fres.status != "ok" or fres.kind != FRAME:
                failures.append({"graph": nb.name, "class": k, "why": "no frame form"})
            elif fres.rolled_edges and not _roll_up_of(om, fres.variant):
                failures.append({"graph": nb.name, "class": k,
                                 "why": "frame variant not a roll-up"})
            if lres.status != "ok" or lres.kind != LIFT:
                failures.append({"graph": nb.name, "class": k, "why": "no lift form"})
            elif lres.rolled_edges:
                failures.append({"graph": nb.name, "class": k,
                                 "why": "lift form not particular to the graph"})
    return _report("allreps-contracted-tube", failures, {"q": q, "per_graph": counts}, t0)


def _roll_up_of(om, variant):
    """variant equals om with some union of unbalancing classes rolled."""
    bal = classify_balance(om).balancing_vertices
    for u in bal:
        try:
            if biased_equal_unoriented(unroll(om, u), unroll(variant, u)):
                return True
        except Exception:
            continue
    return False


def claim_allreps_t2prime_splits(q=4, seed=DEFAULT_SEED, samples=12, **kw):
    """Lemma L:SplitsOf2C3, verified the way the paper proves it: nabla_Y
    reduces each T'_{2,i} to a smaller graph whose representations are
    exhaustively canonical, Whittle's exchange bijection is checked on
    matrix representatives, and scrambles of canonical T'_{2,i} matrices
    round-trip."""
    t0 = time.time()
    rng = random.Random(seed)
    failures = []
    counts = {}
    for i in (1, 2, 3):
        nb = catalog.t2_prime_split(i)
        om = nb.omega
        # nabla at a degree-3 vertex whose star is a genuine triad
        from .bias import y_delta

        done = False
        g = om.graph
        for v in range(g.n):
            if g.degree(v) != 3 or len(set(g.links_at(v))) != 3:
                continue
            try:
                img, _ = y_delta(om, v)
            except Exception:
                continue
            FO = frame_matroid(om)
            star = [g.edge_names[e] for e in g.incident_edges(v)]
            # matrix-level exchange on a canonical representative
            reps = realizations(om, MultiplicativeGroup(q))
            if not reps:
                break
            A = frame_matrix(reps[0]).matrix
            try:
                NA = y_delta_matrix(A, star)
            except Exception as exc:
                failures.append({"graph": nb.name, "why": "nabla failed: %s" % exc})
                break
            eq, w = matroids_equal(vector_matroid(NA), frame_matroid(img))
            if not eq:
                failures.append({"graph": nb.name, "why": "nabla matroid mismatch",
                                 "subset": w})
            back = delta_y_matrix(NA, star)
            if projectively_equivalent(A, back) is None:
                failures.append({"graph": nb.name, "why": "exchange not involutive"})
            done = True
            break
        if not done and not failures:
            failures.append({"graph": nb.name, "why": "no usable degree-3 vertex"})
        # scramble round-trips directly on T'_{2,i}
        reps = realizations(om, MultiplicativeGroup(q))
        counts[nb.name] = {"frame_classes": len(reps)}
        f = gf(q)
        for k in range(samples):
            if not reps:
                break
            gg = reps[k % len(reps)]
            A = frame_matrix(gg).matrix
            scr = _scramble(rng, f, A)
            res = canonicalize_representation(scr, om)
            if res.status != "ok" or res.kind != FRAME:
                failures.append({"graph": nb.name, "sample": k, "why": "round trip failed"})
            elif switching_equivalent(res.form.gain_graph, gg) is None:
                failures.append({"graph": nb.name, "sample": k,
                                 "why": "recovered gains not switching-equivalent"})
    return _report("allreps-t2prime-splits", failures, {"q": q, "per_graph": counts}, t0)


def _scramble(rng, f, A):
    n = A.nrows
    while True:
        T = FieldMatrix(f, [[rng.randrange(f.q) for _ in range(n)] for _ in range(n)])
        try:
            invert(T)
            break
        except ValueError:
            continue
    S = FieldMatrix.diagonal(
        f, [rng.choice(range(1, f.q)) for _ in range(A.ncols)], A.col_labels
    )
    return (
        T.with_labels(col_labels=A.row_labels)
        .mul(A)
        .mul(S)
        .with_labels(row_labels=["r%d" % k for k in range(n)])
    )


# -- structure theorems -------------------------------------------------------------

def _tangled_targets():
    out = []
    for nb in catalog.classify_k4():
        if not any(len(c) == 3 for c in nb.omega.balanced):
            out.append(nb)
    out.extend(catalog.classify_2c3_proper())
    return out


def claim_tangled_minor(max_vertices=5, max_edges=8, **kw):
    """Thm: every tangled biased graph has a link minor that is a biased K4
    with no balanced triangle or a biased 2C3 with no balanced 2-cycle."""
    t0 = time.time()
    family = catalog.tangled_family(max_vertices, max_edges)
    targets = _tangled_targets()
    failures = []
    for om in family:
        found = None
        for nb in targets:
            if om.graph.m < nb.omega.graph.m:
                continue
            rec = find_link_minor(om, nb.omega)
            if rec is not None:
                found = nb.name
                break
        if found is None:
            failures.append({
                "edges": list(om.graph.edges),
                "balanced": [sorted(c) for c in om.balanced],
            })
    return _report("tangled-minor", failures,
                   {"tangled_graphs": len(family),
                    "bounds": [max_vertices, max_edges]}, t0)


def claim_tangled_subgraph(max_vertices=5, max_edges=8, **kw):
    """Thm: every vertically 2-connected properly unbalanced biased graph
    contains a subdivision of a base biased graph or of T'_{2,i}.

    Checked on the tangled family (the non-tangled case is P:TubeMinor,
    covered by its own property test)."""
    t0 = time.time()
    family = catalog.tangled_family(max_vertices, max_edges)
    patterns = list(catalog.base_graphs()) + [
        catalog.t2_prime_split(1),
        catalog.t2_prime_split(2),
        catalog.t2_prime_split(3),
    ]
    failures = []
    for om in family:
        ok2, _ = om.is_vertically_k_connected(2)
        if not ok2:
            continue
        found = None
        for nb in patterns:
            if nb.omega.graph.m > om.graph.m or nb.omega.graph.n > om.graph.n:
                continue
            emb = find_biased_subdivision(om, nb.omega)
            if emb is not None:
                found = nb.name
                break
        if found is None:
            failures.append({
                "edges": list(om.graph.edges),
                "balanced": [sorted(c) for c in om.balanced],
            })
    return _report("tangled-subgraph", failures,
                   {"tangled_2connected": len(family),
                    "bounds": [max_vertices, max_edges]}, t0)


def claim_tangled_no_extend(fields=(4, 5), **kw):
    """Lemma: a frame matrix of a tangled base graph never extends by a
    joint column to a representation of the lift matroid, and vice versa."""
    t0 = time.time()
    failures = []
    checked = 0
    for nb in _tangled_targets():
        om = nb.omega
        g = om.graph
        for q in fields:
            f = gf(q)
            for vertex in range(min(g.n, 2)):  # joint position (up to symmetry)
                ext = _with_joint(om, vertex)
                L_ext = lift_matroid(ext)
                F_ext = frame_matroid(ext)
                reps = realizations(om, MultiplicativeGroup(q))[:2]
                for gg in reps:
                    A = frame_matrix(gg).matrix
                    found = _extension_exists(A, L_ext, f)
                    checked += 1
                    if found:
                        failures.append({"graph": nb.name, "q": q,
                                         "why": "frame extended to lift"})
                lreps = realizations(om, AdditiveGroup(q))[:2]
                for gg in lreps:
                    A = lift_matrix(gg).matrix
                    found = _extension_exists(A, F_ext, f)
                    checked += 1
                    if found:
                        failures.append({"graph": nb.name, "q": q,
                                         "why": "lift extended to frame"})
    return _report("tangled-no-extend", failures,
                   {"fields": list(fields), "extensions_checked": checked}, t0)


def _with_joint(om, vertex):
    from .matroid import extend_with_joint

    return extend_with_joint(om, vertex=vertex, name="l1")


def _extension_exists(A, target_oracle, f):
    """Does some extra column make M([A | v]) equal the target oracle?"""
    from itertools import product as iproduct

    labels = list(A.col_labels) + ["l1"]
    for vec in iproduct(range(f.q), repeat=A.nrows):
        if all(x == 0 for x in vec):
            continue
        rows = [list(r) + [vec[i]] for i, r in enumerate(A.rows)]
        B = FieldMatrix(f, rows, A.row_labels, labels)
        if matroids_equal(vector_matroid(B), target_oracle)[0]:
            return True
    return False


def claim_unique_balancing_subdivision(max_vertices=4, max_edges=7,
                                       seed=DEFAULT_SEED, samples=40, **kw):
    """Prop: a vertically 2-connected biased graph with a contrabalanced
    theta, a unique balancing vertex, and no joints elsewhere contains a
    subdivision of D_{1,0}, B_0', B_1' or B_2'.

    Exhaustive on small loopless graphs plus seeded random instances."""
    t0 = time.time()
    patterns = [catalog.dwarf("D_{1,0}")]
    for nb in catalog.contracted_tubes():
        g0, _ = nb.omega.graph.drop_isolated()
        emap = {nb.omega.graph.edge_index(nm): g0.edge_index(nm) for nm in g0.edge_names}
        patterns.append(catalog.NamedBiasedGraph(
            nb.name, BiasedGraph(g0, {frozenset(emap[e] for e in c) for c in nb.omega.balanced}), ""))
    failures = []
    hypotheses = 0

    def check(om):
        nonlocal hypotheses
        ok2, _ = om.is_vertically_k_connected(2)
        if not ok2:
            return
        if len(balancing_vertices(om)) != 1:
            return
        if not any(
            all(c not in om.balanced for c in inside)
            for _, inside in theta_subgraphs(om.graph)
        ):
            return
        hypotheses += 1
        for nb in patterns:
            if nb.omega.graph.m > om.graph.m:
                continue
            if find_biased_subdivision(om, nb.omega) is not None:
                return
        failures.append({
            "edges": list(om.graph.edges),
            "balanced": [sorted(c) for c in om.balanced],
        })

    for g in catalog.multigraphs_up_to_iso(max_vertices, max_edges):
        for om in catalog.bias_sets_up_to_aut(g):
            check(om)
    rng = random.Random(seed)
    tried = 0
    while tried < samples:
        g = _random_multigraph(rng, 6, 9, allow_loops=False)
        if g.m > 9:
            continue
        group = CyclicGroup(rng.choice((2, 3)))
        gg = GainGraph(g, group, {e: rng.choice(group.elements) for e in range(g.m)})
        om = induced_bias(gg)
        tried += 1
        check(om)
    return _report("unique-balancing-subdivision", failures,
                   {"hypothesis_instances": hypotheses}, t0)


def claim_inequivalence_localized(seed=DEFAULT_SEED, samples=60, **kw):
    """Thm: switching-inequivalent realizations of a vertically 2-connected
    loopless properly unbalanced biased graph stay inequivalent on a base
    link minor, or on a U_3 link minor (theta part) together with a U_2
    minor (2-cycle part), the latter only when not tangled."""
    t0 = time.time()
    rng = random.Random(seed)
    failures = []
    instances = []
    for g in catalog.multigraphs_up_to_iso(4, 7):
        for om in catalog.bias_sets_up_to_aut(g):
            ok2, _ = om.is_vertically_k_connected(2)
            if not ok2 or classify_balance(om).tag != "properly-unbalanced":
                continue
            for group in (CyclicGroup(2), CyclicGroup(3)):
                reps = realizations(om, group)
                for i, j in combinations(range(len(reps)), 2):
                    instances.append((om, reps[i], reps[j]))
    rng.shuffle(instances)
    instances = instances[:samples]
    for om, phi, psi in instances:
        if not _localization_certificate(om, phi, psi):
            failures.append({
                "edges": list(om.graph.edges),
                "balanced": [sorted(c) for c in om.balanced],
                "phi": phi.gains,
                "psi": psi.gains,
            })
    return _report("inequivalence-localized", failures,
                   {"pairs_checked": len(instances)}, t0)


def _minor_recipes(g, keep_edges):
    """All (forest K, delete D) recipes leaving exactly keep_edges edges."""
    links = [e for e in range(g.m) if not g.is_loop(e)]
    forests = [frozenset()]
    seen = {frozenset()}

    def grow(forest):
        for e in links:
            if e in forest:
                continue
            cand = forest | {e}
            if cand in seen or not g.is_forest_edge_set(cand):
                continue
            seen.add(cand)
            forests.append(cand)
            grow(cand)

    grow(frozenset())
    for K in forests:
        rest = [e for e in range(g.m) if e not in K]
        if len(rest) < keep_edges:
            continue
        for keep in combinations(rest, keep_edges):
            yield K, frozenset(rest) - frozenset(keep)


def _localization_certificate(om, phi, psi):
    targets = catalog.base_graphs()
    g = om.graph
    for nb in targets:
        want = nb.omega.graph.m
        for K, D in _minor_recipes(g, want):
            if not om.is_balanced_set(K):
                continue
            mres = biased_minor(om, K, D, check=False)
            if not mres.is_link_minor:
                continue
            md, _ = mres.omega.graph.drop_isolated()
            if md.n != nb.omega.graph.n:
                continue
            if not biased_isomorphic(
                _dropped(mres.omega), _dropped(nb.omega)
            ):
                continue
            mphi, _, _ = induced_gain(phi, K, D)
            mpsi, _, _ = induced_gain(psi, K, D)
            if switching_equivalent(mphi, mpsi) is None:
                return True
    # U_3 + U_2 route (only when not tangled)
    tangled, _ = is_tangled(om)
    if tangled:
        return False
    u3 = catalog.u3().omega
    found_u3 = False
    for K, D in _minor_recipes(g, 4):
        mres = biased_minor(om, K, D, check=False)
        if not mres.is_link_minor:
            continue
        if not biased_isomorphic(_dropped(mres.omega), _dropped(u3)):
            continue
        mphi, _, _ = induced_gain(phi, K, D)
        mpsi, _, _ = induced_gain(psi, K, D)
        links = [e for e in range(mres.omega.graph.m) if not mres.omega.graph.is_loop(e)]
        th = MultiGraph(
            mres.omega.graph.n,
            [mres.omega.graph.edges[e] for e in links],
            [mres.omega.graph.edge_names[e] for e in links],
        )
        tphi = GainGraph(th, mphi.group, {k: mphi.gains[e] for k, e in enumerate(links)})
        tpsi = GainGraph(th, mpsi.group, {k: mpsi.gains[e] for k, e in enumerate(links)})
        if switching_equivalent(tphi, tpsi) is None:
            found_u3 = True
            break
    if not found_u3:
        return False
    # U_2 minor: compare 2-cycle gains; allow joint contractions by taking
    # any pair of parallel links of a minor with inequivalent 2-cycle gain
    for K, D in _minor_recipes(g, 2):
        mres = biased_minor(om, K, D, check=False)
        mg = mres.omega.graph
        if mg.m != 2:
            continue
        e1, e2 = 0, 1
        if mg.is_loop(e1) or mg.is_loop(e2):
            continue
        if set(mg.edges[e1]) != set(mg.edges[e2]):
            continue
        mphi, _, _ = induced_gain(phi, K, D)
        mpsi, _, _ = induced_gain(psi, K, D)
        cyc = mg.cycles()[0]
        if walk_gain(mphi, cyc.walk) != walk_gain(mpsi, cyc.walk):
            return True
    return False


def _dropped(om):
    g, _ = om.graph.drop_isolated()
    emap = {om.graph.edge_index(nm): g.edge_index(nm) for nm in g.edge_names}
    return BiasedGraph(g, {frozenset(emap[e] for e in c) for c in om.balanced}, check=False)


# -- main theorems -------------------------------------------------------------------

def claim_main2(fields=(4, 5), seed=DEFAULT_SEED, **kw):
    """Thm T:ProjectiveIsSwitching bundled over all 13 base graphs."""
    t0 = time.time()
    base = list(catalog.base_graphs())
    sub = []
    for rep in (
        _biconditional_frame("main2/frame", base, fields, seed),
        _biconditional_lift("main2/lift", base, fields, seed + 1),
        _biconditional_cross("main2/cross", base, fields),
    ):
        sub.append(rep)
    failures = [w for rep in sub for w in rep.witnesses]
    counts = {rep.claim.split("/")[1]: rep.counts for rep in sub}
    return _report("main2", failures, counts, t0)


def claim_main3_roundtrip(seed=DEFAULT_SEED, samples=100, q=5, **kw):
    """Thm T:MainTheorem1 mechanics: seeded scrambles of canonical matrices
    on B_0, D_{0,2}, T_0 are recovered with the correct kind and
    switching-equivalent gains."""
    t0 = time.time()
    rng = random.Random(seed)
    f = gf(q)
    graphs = [catalog.tube("B_0"), catalog.dwarf("D_{0,2}"), catalog.biased_2c3("T_0")]
    jobs = []
    for nb in graphs:
        om = nb.omega
        freps = realizations(om, MultiplicativeGroup(q))
        lreps = realizations(om, AdditiveGroup(q))
        if freps:
            jobs.append((nb.name, om, FRAME, freps))
        if lreps:
            jobs.append((nb.name, om, LIFT, lreps))
    failures = []
    done = 0
    k = 0
    while done < samples:
        name, om, kind, reps = jobs[k % len(jobs)]
        k += 1
        gg = reps[rng.randrange(len(reps))]
        A = (frame_matrix(gg) if kind == FRAME else lift_matrix(gg)).matrix
        scr = _scramble(rng, f, A)
        res = canonicalize_representation(scr, om)
        done += 1
        if res.status != "ok" or res.kind != kind:
            failures.append({"graph": name, "kind": kind, "got": res.kind,
                             "status": res.status})
            continue
        if kind == FRAME:
            ok = switching_equivalent(res.form.gain_graph, gg) is not None
        else:
            ok = switching_scaling_equivalent(res.form.gain_graph, gg) is not None
        if not ok:
            failures.append({"graph": name, "kind": kind,
                             "why": "gains not equivalent"})
        if not res.witness.verify(scr, res.form.matrix):
            failures.append({"graph": name, "kind": kind, "why": "witness inexact"})
    return _report("main3-roundtrip", failures, {"samples": done, "q": q}, t0)


def claim_main4_samples(seed=DEFAULT_SEED, samples=30, q=5, **kw):
    """Thm on almost-balanced graphs: scrambles canonicalize to a form
    particular to the graph or to a roll-up variant (reported)."""
    t0 = time.time()
    rng = random.Random(seed)
    f = gf(q)
    instances = []
    for nb in catalog.contracted_tubes():
        instances.append((nb.name, _dropped(nb.omega)))
    instances.append(("D_{1,0}", catalog.dwarf("D_{1,0}").omega))
    p2 = MultiGraph(3, [(0, 2), (2, 1)])
    instances.append(("fat-theta-3x2", catalog.fat_theta([p2, p2, p2])))
    failures = []
    done = 0
    k = 0
    while done < samples:
        name, om = instances[k % len(instances)]
        k += 1
        kind = (FRAME, LIFT)[k % 2]
        group = MultiplicativeGroup(q) if kind == FRAME else AdditiveGroup(q)
        reps = realizations(om, group)
        if not reps:
            continue
        gg = reps[rng.randrange(len(reps))]
        A = (frame_matrix(gg) if kind == FRAME else lift_matrix(gg)).matrix
        scr = _scramble(rng, f, A)
        res = canonicalize_representation(scr, om, hint=kind)
        done += 1
        if res.status != "ok":
            failures.append({"graph": name, "kind": kind, "status": res.status,
                             "reason": res.reason})
            continue
        if res.rolled_edges and not _roll_up_of(om, res.variant):
            failures.append({"graph": name, "kind": kind,
                             "why": "variant not roll-reachable"})
        if not res.witness.verify(scr, res.form.matrix):
            failures.append({"graph": name, "kind": kind, "why": "witness inexact"})
    return _report("main4-samples", failures, {"samples": done, "q": q}, t0)


# -- gains / operations propositions ---------------------------------------------------

def claim_contraction_inequiv(**kw):
    """Prop: switching-inequivalent gain functions stay inequivalent after
    contracting any forest.  Exhaustive over catalog graphs, all forests,
    all normalized gain pairs over Z_2 and Z_3."""
    t0 = time.time()
    failures = []
    pairs_checked = 0
    graphs = [nb.omega.graph for nb in catalog.base_graphs()[:13]]
    seen = set()
    uniq = []
    for g in graphs:
        key = (g.n, g.edges)
        if key not in seen:
            seen.add(key)
            uniq.append(g)
    for g in uniq:
        forests = [frozenset()]
        fseen = {frozenset()}

        def grow(forest):
            for e in range(g.m):
                if e in forest or g.is_loop(e):
                    continue
                cand = forest | {e}
                if cand in fseen or not g.is_forest_edge_set(cand):
                    continue
                fseen.add(cand)
                forests.append(cand)
                grow(cand)

        grow(frozenset())
        for group in (CyclicGroup(2), CyclicGroup(3)):
            from .gains import normalized_gain_functions

            gfs = list(normalized_gain_functions(g, group))
            for F in forests:
                if not F:
                    continue
                for i, j in combinations(range(len(gfs)), 2):
                    pairs_checked += 1
                    m1, _, _ = induced_gain(gfs[i], F, set())
                    m2, _, _ = induced_gain(gfs[j], F, set())
                    if switching_equivalent(m1, m2) is not None:
                        failures.append({
                            "edges": list(g.edges), "forest": sorted(F),
                            "group": repr(group),
                            "phi": gfs[i].gains, "psi": gfs[j].gains,
                        })
    return _report("contraction-inequiv", failures, {"pairs": pairs_checked}, t0)


def claim_deltawye_matroid(fields=(4, 5), **kw):
    """Prop: F(Delta_X omega) and L0(Delta_X omega) agree with the
    matrix-level exchange of the canonical representations."""
    t0 = time.time()
    failures = []
    checked = 0
    pool = list(catalog.classify_k4()) + list(catalog.classify_2c3_proper())
    for nb in pool:
        om = nb.omega
        tris = [c for c in om.balanced if len(c) == 3]
        if not tris:
            continue
        X = min(tris, key=sorted)
        img = delta_y(om, X)
        Xlabels = [om.graph.edge_names[e] for e in sorted(X)]
        for q in fields:
            freps = realizations(om, MultiplicativeGroup(q))
            if freps:
                A = frame_matrix(freps[0]).matrix
                DA = delta_y_matrix(A, Xlabels)
                eq, w = matroids_equal(vector_matroid(DA), frame_matroid(img))
                checked += 1
                if not eq:
                    failures.append({"graph": nb.name, "q": q, "kind": "frame",
                                     "subset": w})
            lreps = realizations(om, AdditiveGroup(q))
            if lreps:
                A0 = complete_lift_matrix(lreps[0]).matrix
                DA0 = delta_y_matrix(A0, Xlabels)
                eq, w = matroids_equal(vector_matroid(DA0), complete_lift_matroid(img))
                checked += 1
                if not eq:
                    failures.append({"graph": nb.name, "q": q, "kind": "lift0",
                                     "subset": w})
    return _report("deltawye-matroid", failures, {"checked": checked}, t0)


def claim_deltawye_gains(**kw):
    """Prop: realizations of omega correspond to realizations of
    Delta_X omega, up to switching (counts compared; the identity-on-X
    normalized realizations literally coincide)."""
    t0 = time.time()
    failures = []
    checked = 0
    groups = [CyclicGroup(2), CyclicGroup(3), MultiplicativeGroup(4),
              MultiplicativeGroup(5), AdditiveGroup(4), AdditiveGroup(5)]
    pool = list(catalog.classify_k4()) + list(catalog.classify_2c3_proper())
    for nb in pool:
        om = nb.omega
        tris = [c for c in om.balanced if len(c) == 3]
        if not tris:
            continue
        X = min(tris, key=sorted)
        img = delta_y(om, X)
        for group in groups:
            n1 = len(realizations(om, group))
            n2 = len(realizations(img, group))
            checked += 1
            if n1 != n2:
                failures.append({"graph": nb.name, "group": repr(group),
                                 "classes": (n1, n2)})
    return _report("deltawye-gains", failures, {"checked": checked}, t0)


def claim_rollup_frame(**kw):
    """Funk's proposition: rolling preserves the frame matroid; unrolling a
    roll-up restores the graph; double roll-ups preserve F on fat thetas."""
    t0 = time.time()
    failures = []
    checked = 0
    instances = [catalog.dwarf("D_{1,0}"), catalog.dwarf("D_{2,1}")]
    instances += [catalog.NamedBiasedGraph(nb.name, _dropped(nb.omega), "")
                  for nb in catalog.contracted_tubes()]
    for nb in instances:
        om = nb.omega
        cls = classify_balance(om)
        if cls.tag != "almost-balanced":
            continue
        for u in cls.balancing_vertices:
            part = unbalancing_classes(om, u)
            for c in part.classes:
                if any(om.graph.is_loop(e) for e in c):
                    continue
                rolled = roll_up(om, u, c)
                eq, w = matroids_equal(frame_matroid(rolled), frame_matroid(om))
                checked += 1
                if not eq:
                    failures.append({"graph": nb.name, "class": sorted(c), "subset": w})
                if not biased_equal_unoriented(unroll(rolled, u), unroll(om, u)):
                    failures.append({"graph": nb.name, "class": sorted(c),
                                     "why": "unroll does not invert"})
    p2 = MultiGraph(3, [(0, 2), (2, 1)])
    for parts in ([p2, p2, p2], [p2, p2, p2, p2]):
        ft = catalog.fat_theta(parts)
        shape = fat_theta_parts(ft)
        if shape is None:
            failures.append({"why": "fat theta not detected"})
            continue
        for i, j in combinations(range(len(shape[2])), 2):
            dr = double_roll_up(ft, i, j)
            eq, w = matroids_equal(frame_matroid(dr), frame_matroid(ft))
            checked += 1
            if not eq:
                failures.append({"fat_theta": len(parts), "pair": (i, j), "subset": w})
    return _report("rollup-frame", failures, {"checked": checked}, t0)


def claim_subdivision_classes(q=4, **kw):
    """Prop: representation class counts transfer to one-edge subdivisions."""
    t0 = time.time()
    failures = []
    counts = {}
    for name in ("T_2'", "T_4"):
        nb = catalog.biased_2c3(name)
        om = nb.omega
        base_classes = enumerate_representations(frame_matroid(om), q)
        sub = _subdivide_edge(om, 0)
        sub_classes = enumerate_representations(frame_matroid(sub), q, max_elements=9)
        counts[name] = {"base": len(base_classes), "subdivided": len(sub_classes)}
        if len(base_classes) != len(sub_classes):
            failures.append({"graph": name, "q": q, "counts": counts[name]})
    return _report("subdivision-classes", failures, {"q": q, "per_graph": counts}, t0)


def _subdivide_edge(om, e):
    g = om.graph
    u, v = g.endpoints(e)
    w = g.n
    edges = list(g.edges)
    edges[e] = (u, w)
    edges.append((w, v))
    names = list(g.edge_names) + [g.edge_names[e] + "b"]
    g2 = MultiGraph(g.n + 1, edges, names)
    balanced = set()
    for c in om.balanced:
        if e in c:
            balanced.add(frozenset(c | {g.m}))
        else:
            balanced.add(c)
    return BiasedGraph(g2, balanced)


# -- registry ---------------------------------------------------------------------------

CLAIMS = {
    "seven-dwarves": claim_seven_dwarves,
    "2c3-proper-count": claim_2c3_proper_count,
    "tube-count": claim_tube_count,
    "base-count": claim_base_count,
    "canonical-frame": claim_canonical_frame,
    "canonical-lift": claim_canonical_lift,
    "lemma-2c3-frame": claim_lemma_2c3_frame,
    "lemma-2c3-lift": claim_lemma_2c3_lift,
    "lemma-2c3-frame-vs-lift": claim_lemma_2c3_cross,
    "lemma-k4-frame": claim_lemma_k4_frame,
    "lemma-k4-lift": claim_lemma_k4_lift,
    "lemma-k4-frame-vs-lift": claim_lemma_k4_cross,
    "lemma-tube-frame": claim_lemma_tube_frame,
    "lemma-tube-lift": claim_lemma_tube_lift,
    "u2-criterion": claim_u2_criterion,
    "u3-lift-criterion": claim_u3_lift_criterion,
    "allreps-2c3": claim_allreps_2c3,
    "allreps-t2prime-splits": claim_allreps_t2prime_splits,
    "allreps-k4": claim_allreps_k4,
    "allreps-tube-frame": claim_allreps_tube_frame,
    "allreps-tube-lift": claim_allreps_tube_lift,
    "allreps-contracted-tube": claim_allreps_contracted_tube,
    "tangled-minor": claim_tangled_minor,
    "tangled-subgraph": claim_tangled_subgraph,
    "inequivalence-localized": claim_inequivalence_localized,
    "tangled-no-extend": claim_tangled_no_extend,
    "unique-balancing-subdivision": claim_unique_balancing_subdivision,
    "main2": claim_main2,
    "main3-roundtrip": claim_main3_roundtrip,
    "main4-samples": claim_main4_samples,
    "contraction-inequiv": claim_contraction_inequiv,
    "deltawye-matroid": claim_deltawye_matroid,
    "deltawye-gains": claim_deltawye_gains,
    "rollup-frame": claim_rollup_frame,
    "subdivision-classes": claim_subdivision_classes,
}


def run_claim(name, **kwargs):
    try:
        fn = CLAIMS[name]
    except KeyError:
        raise UnknownClaim("no claim registered under %r" % name)
    return fn(**kwargs)


def all_claims():
    return sorted(CLAIMS)
