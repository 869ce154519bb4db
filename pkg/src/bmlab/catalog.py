"""Constructors and classifiers for the named biased graphs.

Everything is generated by exhaustive search over bias sets satisfying the
theta property and classified up to biased-graph isomorphism; the expected
counts (seven biased K_4's, six proper 2C_3's, three proper tubes, thirteen
base graphs) are hard assertions, so loading the catalog re-proves the
classification at desk scale.

Fixed labelings (chosen to match the matrix displays used in the tests):
  2C_3:  vertices v1,v2,v3; e1,e2: v1->v2; e3,e4: v2->v3; e5,e6: v3->v1.
  K_4:   vertices v1..v4; e1: v1-v4, e2: v2-v4, e3: v3-v4 (the star),
         e4: v2-v3, e5: v1-v3, e6: v1-v2 (the triangle); e_i matches e_{i+3}.
  2C_4'' (tube): vertices v1..v4; e1,e2: v1->v2; e3: v1->v3; e4: v2->v4;
         e5,e6: v3->v4.
  2C_3 minus e: e1,e2: v1->v2; e3,e4: v1->v3; e5: v2->v3.
"""

from dataclasses import dataclass
from itertools import combinations

from .bias import (
    BiasedGraph,
    biased_isomorphic,
    biased_minor,
    check_theta_property,
    classify_balance,
    delta_y,
    is_tangled,
)
from .errors import BadGlue, BmlabError
from .graph import MultiGraph


@dataclass(frozen=True)
class NamedBiasedGraph:
    name: str
    omega: BiasedGraph
    note: str


# -- underlying graphs ----------------------------------------------------------

def graph_2c3():
    return MultiGraph(3, [(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0)])


def graph_k4():
    return MultiGraph(4, [(0, 3), (1, 3), (2, 3), (1, 2), (0, 2), (0, 1)])


def graph_tube():
    return MultiGraph(4, [(0, 1), (0, 1), (0, 2), (1, 3), (2, 3), (2, 3)])


def graph_2c3_minus_e():
    return MultiGraph(3, [(0, 1), (0, 1), (0, 2), (0, 2), (1, 2)])


def graph_u2():
    return MultiGraph(
        2, [(0, 0), (1, 1), (0, 1), (0, 1)], edge_names=("e1", "e2", "e3", "e4")
    )


def graph_u3():
    return MultiGraph(
        2, [(0, 0), (0, 1), (0, 1), (0, 1)], edge_names=("e1", "e2", "e3", "e4")
    )


def graph_prism():
    return MultiGraph(
        6,
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )


# -- bias-set enumeration and classification ------------------------------------

def theta_closed_subsets(g, candidate_cycles=None):
    """All subsets of the candidate cycles satisfying the theta property."""
    cycles = [frozenset(c.edges) for c in g.cycles()]
    if candidate_cycles is not None:
        pool = [frozenset(c) for c in candidate_cycles]
    else:
        pool = cycles
    from .bias import theta_subgraphs

    thetas = [inside for _, inside in theta_subgraphs(g)]
    out = []
    for k in range(len(pool) + 1):
        for combo in combinations(pool, k):
            bal = frozenset(combo)
            ok = True
            for inside in thetas:
                if sum(1 for c in inside if c in bal) == 2:
                    ok = False
                    break
            if ok:
                out.append(bal)
    return out


def iso_classes(g, bias_sets):
    """Group bias sets on a fixed graph into biased-isomorphism classes;
    returns one representative per class (first in input order)."""
    reps = []
    for bal in bias_sets:
        om = BiasedGraph(g, bal, check=False)
        if not any(biased_isomorphic(om, r) for r in reps):
            reps.append(om)
    return reps


def _count_by_length(om, length):
    return sum(1 for c in om.balanced if len(c) == length)


_CACHE = {}


def _cached(key, fn):
    if key not in _CACHE:
        _CACHE[key] = fn()
    return _CACHE[key]


def classify_k4():
    """The seven biased K_4's D_{t,q} (the Seven Dwarves)."""

    def build():
        g = graph_k4()
        reps = iso_classes(g, theta_closed_subsets(g))
        assert len(reps) == 7, "expected seven biased K4's, got %d" % len(reps)
        named = []
        for om in reps:
            t = _count_by_length(om, 3)
            q = _count_by_length(om, 4)
            named.append(NamedBiasedGraph("D_{%d,%d}" % (t, q), om, "biased K4"))
        named.sort(key=lambda nb: nb.name)
        # the balanced K4 has all three quads balanced (forced by the theta
        # property once all four triangles are balanced)
        expect = {"D_{0,0}", "D_{0,1}", "D_{0,2}", "D_{0,3}", "D_{1,0}", "D_{2,1}", "D_{4,3}"}
        assert {nb.name for nb in named} == expect
        return tuple(named)

    return _cached("k4", build)


def dwarf(name):
    for nb in classify_k4():
        if nb.name == name:
            return nb
    raise BmlabError("no dwarf named %s" % name)


def classify_2c3_proper():
    """The six biased 2C_3's without a balanced 2-cycle (properly
    unbalanced).  T_2 and T_2' both have two balanced triangles; they are
    split by their Delta-images: Delta(T_2') ~ D_{1,0}, Delta(T_2) ~ D_{0,1}."""

    def build():
        g = graph_2c3()
        triangles = [frozenset(c.edges) for c in g.cycles() if len(c) == 3]
        reps = iso_classes(g, theta_closed_subsets(g, triangles))
        assert len(reps) == 6, "expected six proper biased 2C3's, got %d" % len(reps)
        named = []
        d10 = dwarf("D_{1,0}").omega
        for om in reps:
            t = _count_by_length(om, 3)
            if t != 2:
                named.append(NamedBiasedGraph("T_%d" % t, om, "biased 2C3"))
            else:
                img = delta_y(om, min(om.balanced, key=sorted))
                if biased_isomorphic(img, d10):
                    named.append(NamedBiasedGraph("T_2'", om, "biased 2C3"))
                else:
                    named.append(NamedBiasedGraph("T_2", om, "biased 2C3"))
        named.sort(key=lambda nb: nb.name)
        assert {nb.name for nb in named} == {"T_0", "T_1", "T_2", "T_2'", "T_3", "T_4"}
        return tuple(named)

    return _cached("2c3", build)


def biased_2c3(name):
    for nb in classify_2c3_proper():
        if nb.name == name:
            return nb
    raise BmlabError("no biased 2C3 named %s" % name)


def classify_tube_proper():
    """The three biased tubes (2C_4'') without a balanced 2-cycle, named by
    their balanced quadrilateral count."""

    def build():
        g = graph_tube()
        quads = [frozenset(c.edges) for c in g.cycles() if len(c) == 4]
        reps = iso_classes(g, theta_closed_subsets(g, quads))
        assert len(reps) == 3, "expected three proper tubes, got %d" % len(reps)
        named = [
            NamedBiasedGraph("B_%d" % _count_by_length(om, 4), om, "biased tube")
            for om in reps
        ]
        named.sort(key=lambda nb: nb.name)
        assert {nb.name for nb in named} == {"B_0", "B_1", "B_2"}
        return tuple(named)

    return _cached("tube", build)


def tube(name):
    for nb in classify_tube_proper():
        if nb.name == name:
            return nb
    raise BmlabError("no tube named %s" % name)


def base_graphs():
    """The thirteen link-minor-minimal vertically 2-connected properly
    unbalanced biased graphs: four biased K4's, six biased 2C3's, three
    biased tubes."""

    def build():
        dwarves = [nb for nb in classify_k4() if _count_by_length(nb.omega, 3) == 0]
        out = tuple(dwarves) + classify_2c3_proper() + classify_tube_proper()
        assert len(out) == 13
        for nb in out:
            assert classify_balance(nb.omega).tag == "properly-unbalanced", nb.name
            ok, _ = nb.omega.is_vertically_k_connected(2)
            assert ok, nb.name
        return out

    return _cached("base", build)


def u2():
    """Two vertices, two parallel links, one joint at each vertex,
    contrabalanced; F(U_2) = U_{2,4}."""

    def build():
        om = BiasedGraph(graph_u2(), [])
        return NamedBiasedGraph("U_2", om, "contrabalanced, represents U_{2,4}")

    return _cached("u2", build)


def u3():
    """Two vertices, three parallel links, one joint, contrabalanced;
    F(U_3) = L(U_3) = U_{2,4}."""

    def build():
        om = BiasedGraph(graph_u3(), [])
        return NamedBiasedGraph("U_3", om, "contrabalanced, represents U_{2,4}")

    return _cached("u3", build)


def t2_prime_split(i):
    """T'_{2,i} for i in {1,2,3}: T'_{2,3} is the prism whose two triangles
    are the balanced cycles; T'_{2,3-k} contracts k of the three matching
    links."""
    if i not in (1, 2, 3):
        raise BmlabError("i must be 1, 2 or 3")

    def build():
        g = graph_prism()
        bal = [frozenset({0, 1, 2}), frozenset({3, 4, 5})]
        om = BiasedGraph(g, bal)
        if i == 3:
            return NamedBiasedGraph("T_{2,3}'", om, "prism, two balanced triangles")
        contract = {6, 7, 8}
        keep = sorted(contract)[: 3 - i]
        mn = biased_minor(om, set(keep), set())
        return NamedBiasedGraph(
            "T_{2,%d}'" % i, mn.omega, "prism with %d matching links contracted" % (3 - i)
        )

    return _cached(("t2prime", i), build)


def contracted_tubes():
    """B_i' = B_i with one single (non-doubled) link contracted; the
    underlying graph is 2C_3 minus an edge."""

    def build():
        out = []
        for nb in classify_tube_proper():
            g = nb.omega.graph
            single = next(
                e
                for e in range(g.m)
                if sum(1 for x in range(g.m) if set(g.edges[x]) == set(g.edges[e])) == 1
            )
            mn = biased_minor(nb.omega, {single}, set())
            out.append(
                NamedBiasedGraph(nb.name + "'", mn.omega, "single-link contraction of " + nb.name)
            )
        return tuple(out)

    return _cached("ctube", build)


def contracted_tube(name):
    for nb in contracted_tubes():
        if nb.name == name:
            return nb
    raise BmlabError("no contracted tube named %s" % name)


def fat_theta(parts, hubs=None):
    """Glue biased subgraphs along two hub vertices.

    parts: list of MultiGraphs; hubs: list of (x_i, y_i) per part (default
    (0, 1)).  All x_i are identified to one hub, all y_i to the other, and
    the balanced cycles are exactly the cycles lying within a single part.
    """
    if len(parts) < 2:
        raise BadGlue("need at least two parts")
    if hubs is None:
        hubs = [(0, 1)] * len(parts)
    n = 2
    edges = []
    names = []
    part_edge_sets = []
    for k, (g, (x, y)) in enumerate(zip(parts, hubs)):
        if x == y or not (0 <= x < g.n and 0 <= y < g.n):
            raise BadGlue("hub vertices must be two distinct vertices of the part")
        vmap = {}
        vmap[x] = 0
        vmap[y] = 1
        for v in range(g.n):
            if v not in (x, y):
                vmap[v] = n
                n += 1
        ids = []
        for e, (u, v) in enumerate(g.edges):
            ids.append(len(edges))
            edges.append((vmap[u], vmap[v]))
            names.append("p%d_%s" % (k + 1, g.edge_names[e]))
        part_edge_sets.append(frozenset(ids))
    glued = MultiGraph(n, edges, names)
    balanced = set()
    for c in glued.cycles():
        if any(frozenset(c.edges) <= p for p in part_edge_sets):
            balanced.add(frozenset(c.edges))
    return BiasedGraph(glued, balanced)


def catalog_names():
    names = [nb.name for nb in classify_k4()]
    names += [nb.name for nb in classify_2c3_proper()]
    names += [nb.name for nb in classify_tube_proper()]
    names += [nb.name for nb in contracted_tubes()]
    names += ["U_2", "U_3", "T_{2,1}'", "T_{2,2}'", "T_{2,3}'"]
    return names


def by_name(name):
    for nb in classify_k4() + classify_2c3_proper() + classify_tube_proper() + contracted_tubes():
        if nb.name == name:
            return nb
    if name == "U_2":
        return u2()
    if name == "U_3":
        return u3()
    for i in (1, 2, 3):
        if name == "T_{2,%d}'" % i:
            return t2_prime_split(i)
    raise BmlabError("unknown catalog name %r" % name)


# -- exhaustive small families (for the verify harness) --------------------------

def multigraphs_up_to_iso(max_vertices, max_edges, min_degree=2, connected=True):
    """Connected loopless multigraphs up to isomorphism, as MultiGraphs.

    Generated from multiplicity vectors on vertex pairs, canonicalized by
    minimizing over vertex permutations.  Isolated vertices are excluded
    (every graph uses a dense vertex range)."""
    from itertools import permutations as perms

    out = []
    seen = set()
    for nv in range(1, max_vertices + 1):
        pairs = list(combinations(range(nv), 2))
        if not pairs:
            continue

        def rec(idx, left, mult):
            if idx == len(pairs):
                if sum(mult) == 0:
                    return
                deg = [0] * nv
                for (u, v), m in zip(pairs, mult):
                    deg[u] += m
                    deg[v] += m
                if any(d < min_degree for d in deg):
                    return
                key = None
                for p in perms(range(nv)):
                    table = {}
                    for (u, v), m in zip(pairs, mult):
                        if m:
                            a, b = p[u], p[v]
                            table[(min(a, b), max(a, b))] = m
                    cand = tuple(sorted(table.items()))
                    if key is None or cand < key:
                        key = cand
                if key in seen:
                    return
                seen.add(key)
                edges = []
                for (u, v), m in key:
                    edges.extend([(u, v)] * m)
                g = MultiGraph(nv, edges)
                if connected and not g.is_connected():
                    return
                if g.n != len(g.vertices_of(range(g.m))) and g.m:
                    return
                out.append(g)
                return
            for m in range(0, left + 1):
                mult[idx] = m
                rec(idx + 1, left - m, mult)
            mult[idx] = 0

        rec(0, max_edges, [0] * len(pairs))
    return out


def graph_automorphism_maps(g):
    """All (vertex permutation, edge map) automorphisms of a multigraph."""
    from .graph import edge_bijections, graph_isomorphisms

    out = []
    for perm in graph_isomorphisms(g, g):
        for emap in edge_bijections(g, g, perm):
            out.append((perm, emap))
    return out


def bias_sets_up_to_aut(g, predicate=None):
    """Theta-closed bias sets on g, one per orbit of the automorphism group."""
    auts = graph_automorphism_maps(g)
    all_sets = theta_closed_subsets(g)
    reps = []
    seen = set()
    for bal in all_sets:
        if bal in seen:
            continue
        orbit = set()
        for _, emap in auts:
            orbit.add(frozenset(frozenset(emap[e] for e in c) for c in bal))
        seen |= orbit
        om = BiasedGraph(g, bal, check=False)
        if predicate is None or predicate(om):
            reps.append(om)
    return reps


def tangled_family(max_vertices=5, max_edges=8):
    """All tangled biased graphs on connected loopless min-degree-2
    multigraphs with the given bounds, one per isomorphism class.

    Tangled biased graphs are loopless (a joint would force a balancing
    vertex), and pendant edges, balanced loops and balanced components
    affect neither tangledness nor the target minors, so the normalized
    family is exhaustive for the structure theorems."""
    key = ("tangled", max_vertices, max_edges)
    if key in _CACHE:
        return _CACHE[key]
    out = _CACHE[key] = []
    for g in multigraphs_up_to_iso(max_vertices, max_edges):
        if g.n < 3:
            continue
        # a tangled graph has no balancing vertex: every vertex must be
        # avoided by some cycle
        cycles = g.cycles()
        if not cycles:
            continue
        if any(
            all(v in g.vertices_of(c.edges) for c in cycles) for v in range(g.n)
        ):
            continue
        for om in bias_sets_up_to_aut(g):
            flag, _ = is_tangled(om)
            if flag:
                out.append(om)
    return out
