"""Biased graphs: theta-property validation, balance classification,
tangledness, minors (including joint contraction), Delta-Y exchanges,
roll-ups, and link-minor / subdivision search.

A biased graph is a multigraph together with the set of its balanced
cycles, stored extensionally as frozensets of edge ids.  No theta subgraph
may contain exactly two balanced cycles; the constructor enforces this.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    BoundExceeded,
    NotACycle,
    NotBalancedTriangle,
    NotBalancingVertex,
    NotTriad,
    StructureMissing,
    ThetaViolation,
)
from .graph import Cycle, MultiGraph, edge_bijections, graph_isomorphisms, iter_subdivisions

BALANCED = "balanced"
ALMOST_BALANCED = "almost-balanced"
PROPERLY_UNBALANCED = "properly-unbalanced"


def theta_subgraphs(g, max_edges=24):
    """All theta subgraphs as (edge set, tuple of its three cycles).

    A theta is the union of two distinct cycles whose union is connected
    with exactly two degree-3 vertices and the rest degree 2; it then
    contains exactly three cycles.
    """
    cycles = g.cycles(max_edges)
    masks = [frozenset(c.edges) for c in cycles]
    seen = set()
    out = []
    for i, j in combinations(range(len(masks)), 2):
        union = masks[i] | masks[j]
        if union in seen:
            continue
        if len(union) == len(masks[i]) + len(masks[j]):
            continue  # edge-disjoint cycles never form a theta
        deg = {}
        has_loop = False
        for e in union:
            u, v = g.endpoints(e)
            if u == v:
                has_loop = True
                break
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        if has_loop:
            continue
        degs = sorted(deg.values())
        if degs.count(3) != 2 or any(d not in (2, 3) for d in degs):
            continue
        if len(g.edge_components(union)) != 1:
            continue
        inside = tuple(m for m in masks if m <= union)
        if len(inside) != 3:
            continue
        seen.add(union)
        out.append((union, inside))
    return out


def check_theta_property(g, balanced, max_edges=24):
    """Return None if ok, else (theta edge set, its three cycles)."""
    balanced = frozenset(frozenset(c) for c in balanced)
    cycle_sets = {frozenset(c.edges) for c in g.cycles(max_edges)}
    for c in balanced:
        if c not in cycle_sets:
            raise NotACycle("balanced set member %s is not a cycle" % (sorted(c),))
    for union, inside in theta_subgraphs(g, max_edges):
        if sum(1 for c in inside if c in balanced) == 2:
            return union, inside
    return None


class BiasedGraph:
    """A multigraph with a distinguished theta-closed set of balanced cycles."""

    def __init__(self, graph, balanced, check=True, max_edges=24):
        self.graph = graph
        self.balanced = frozenset(frozenset(c) for c in balanced)
        if check:
            violation = check_theta_property(graph, self.balanced, max_edges)
            if violation is not None:
                raise ThetaViolation(
                    "theta subgraph with exactly two balanced cycles",
                    theta=violation[0],
                    cycles=violation[1],
                )
        self._balance_class = None

    # -- basics ------------------------------------------------------------
    def cycles(self):
        return self.graph.cycles()

    def is_balanced_cycle(self, edge_set):
        return frozenset(edge_set) in self.balanced

    def unbalanced_cycles(self):
        return [c for c in self.cycles() if frozenset(c.edges) not in self.balanced]

    def is_balanced_set(self, edge_ids):
        """A set is balanced when every cycle inside it is balanced."""
        edge_ids = frozenset(edge_ids)
        return all(
            frozenset(c.edges) in self.balanced
            for c in self.cycles()
            if frozenset(c.edges) <= edge_ids
        )

    def joints(self):
        return tuple(
            e
            for e in range(self.graph.m)
            if self.graph.is_loop(e) and frozenset((e,)) not in self.balanced
        )

    def balanced_loops(self):
        return tuple(
            e
            for e in range(self.graph.m)
            if self.graph.is_loop(e) and frozenset((e,)) in self.balanced
        )

    def __eq__(self, other):
        return (
            isinstance(other, BiasedGraph)
            and self.graph == other.graph
            and self.balanced == other.balanced
        )

    def __hash__(self):
        return hash((self.graph, self.balanced))

    def __repr__(self):
        return "BiasedGraph(n=%d, m=%d, balanced=%d)" % (
            self.graph.n,
            self.graph.m,
            len(self.balanced),
        )

    def is_vertically_k_connected(self, k):
        return self.graph.is_vertically_k_connected(k)


@dataclass(frozen=True)
class BalanceClass:
    tag: str
    balancing_vertices: tuple


def balancing_vertices(omega):
    """Vertices contained in every unbalanced cycle (loops included)."""
    unbal = [c.edges for c in omega.unbalanced_cycles()]
    out = []
    for v in range(omega.graph.n):
        if all(v in omega.graph.vertices_of(c) for c in unbal):
            out.append(v)
    return tuple(out)


def classify_balance(omega):
    """Balanced / almost-balanced / properly-unbalanced classification.

    Almost balanced means a balancing vertex exists after deleting loops;
    the reported balancing vertices are those of the loop-deleted graph.
    """
    if omega._balance_class is not None:
        return omega._balance_class
    if not omega.unbalanced_cycles():
        result = BalanceClass(BALANCED, tuple(range(omega.graph.n)))
    else:
        loops = [e for e in range(omega.graph.m) if omega.graph.is_loop(e)]
        stripped = biased_minor(omega, frozenset(), frozenset(loops), check=False).omega
        bv = balancing_vertices(stripped)
        if bv:
            result = BalanceClass(ALMOST_BALANCED, bv)
        else:
            result = BalanceClass(PROPERLY_UNBALANCED, ())
    omega._balance_class = result
    return result


def is_tangled(omega):
    """Tangled: properly unbalanced with no two vertex-disjoint unbalanced
    cycles.  Returns (flag, witness) where the witness is a disjoint
    unbalanced pair when one exists."""
    unbal = omega.unbalanced_cycles()
    witness = None
    for c1, c2 in combinations(unbal, 2):
        if not (
            omega.graph.vertices_of(c1.edges) & omega.graph.vertices_of(c2.edges)
        ):
            witness = (frozenset(c1.edges), frozenset(c2.edges))
            break
    if classify_balance(omega).tag != PROPERLY_UNBALANCED:
        return False, witness
    return witness is None, witness


# -- minors ------------------------------------------------------------------

@dataclass(frozen=True)
class BiasedMinor:
    omega: "BiasedGraph"
    vertex_map: dict
    edge_map: dict  # old edge id -> new edge id, surviving edges only
    is_link_minor: bool


def _contract_link(omega, e):
    g, vmap, emap = omega.graph.minor({e}, set())
    new_cycles = {frozenset(c.edges) for c in g.cycles()}
    old_of_new = {ne: oe for oe, ne in emap.items()}
    balanced = set()
    for c in new_cycles:
        old = frozenset(old_of_new[x] for x in c)
        if old in omega.balanced or (old | {e}) in omega.balanced:
            balanced.add(c)
    return BiasedGraph(g, balanced, check=False), vmap, emap


def _contract_joint(omega, e):
    """Contract an unbalanced loop at v: loops at v become balanced, links
    at v become joints at their other endpoint, cycles through v die."""
    g0 = omega.graph
    (v,) = set(g0.endpoints(e))
    new_edges = []
    new_names = []
    emap = {}
    jointified = []
    for f, (a, b) in enumerate(g0.edges):
        if f == e:
            continue
        if a == v and b == v:
            na, nb = v, v
        elif a == v or b == v:
            w = b if a == v else a
            na, nb = w, w
            jointified.append(f)
        else:
            na, nb = a, b
        emap[f] = len(new_edges)
        new_edges.append((na, nb))
        new_names.append(g0.edge_names[f])
    g = MultiGraph(g0.n, new_edges, new_names, g0.vertex_names)
    balanced = set()
    for c in g.cycles():
        ce = frozenset(c.edges)
        old = frozenset(o for o, nn in emap.items() if nn in ce)
        if len(ce) == 1:
            (x,) = ce
            (old_x,) = old
            if old_x in jointified:
                continue  # new joints stay unbalanced
            a, b = g0.endpoints(old_x)
            if a == v and b == v:
                balanced.add(ce)  # loops at v become balanced
            elif old in omega.balanced:
                balanced.add(ce)
        elif old in omega.balanced:
            balanced.add(ce)
    vmap = {u: u for u in range(g0.n)}
    return BiasedGraph(g, balanced, check=False), vmap, emap


def biased_minor(omega, contract, delete, check=True):
    """Biased minor: deletions first, then contractions.

    Contractions are processed by current edge type: links first (in id
    order), then balanced loops (equal to deletion), then unbalanced loops
    (joint contraction), repeating until the contraction set is exhausted.
    Tracks whether the result is a link minor (no joint was contracted).
    """
    contract = set(contract)
    delete = set(delete)
    if contract & delete:
        raise ValueError("contract and delete sets overlap")
    g = omega.graph
    for e in contract | delete:
        g._check_edge(e)

    # deletions
    gg, vmap, emap = g.minor(set(), delete)
    balanced = {
        frozenset(emap[x] for x in c)
        for c in omega.balanced
        if all(x in emap for x in c)
    }
    current = BiasedGraph(gg, balanced, check=False)
    total_vmap = vmap
    total_emap = {e: emap[e] for e in emap}
    pending = {total_emap[e] for e in contract}
    link_minor = True

    def compose(vm1, em1, vm2, em2):
        vm = {v: vm2[vm1[v]] for v in vm1}
        em = {e: em2[em1[e]] for e in em1 if em1[e] in em2}
        return vm, em

    while pending:
        links = sorted(e for e in pending if not current.graph.is_loop(e))
        if links:
            e = links[0]
            nxt, vm, em = _contract_link(current, e)
        else:
            bal_loops = sorted(
                e for e in pending if frozenset((e,)) in current.balanced
            )
            if bal_loops:
                e = bal_loops[0]
                gg, vm, em = current.graph.minor(set(), {e})
                bal = {
                    frozenset(em[x] for x in c)
                    for c in current.balanced
                    if all(x in em for x in c)
                }
                nxt = BiasedGraph(gg, bal, check=False)
            else:
                e = sorted(pending)[0]
                nxt, vm, em = _contract_joint(current, e)
                link_minor = False
        pending = {em[x] for x in pending if x != e and x in em}
        total_vmap, total_emap = compose(total_vmap, total_emap, vm, em)
        current = nxt

    if check:
        violation = check_theta_property(current.graph, current.balanced)
        if violation is not None:
            raise ThetaViolation("minor violates theta property", *violation)
    return BiasedMinor(current, total_vmap, total_emap, link_minor)


def biased_subgraph(omega, edge_ids):
    """Restriction to an edge subset (vertices kept)."""
    return biased_minor(omega, frozenset(), frozenset(range(omega.graph.m)) - frozenset(edge_ids))


# -- Delta-Y and Y-Delta -------------------------------------------------------

def _triangle_vertices(g, X):
    verts = g.vertices_of(X)
    if len(X) != 3 or len(verts) != 3:
        return None
    deg = {v: 0 for v in verts}
    for e in X:
        u, v = g.endpoints(e)
        if u == v:
            return None
        deg[u] += 1
        deg[v] += 1
    if any(d != 2 for d in deg.values()):
        return None
    return verts


def delta_y(omega, X):
    """Delta-Y exchange on a balanced triangle X (set of 3 edge ids).

    The triangle edges are replaced by a star at a new vertex; the edge on
    {p,q} becomes the star edge at the third triangle vertex (the 2-edge
    matching identification).  Balanced cycles transfer by the rule
    {C : |C cap X| in {0,2}} union {C delta X : |C cap X| = 1}.
    """
    g = omega.graph
    X = frozenset(X)
    verts = _triangle_vertices(g, X)
    if verts is None or X not in omega.balanced:
        raise NotBalancedTriangle("X must be a balanced triangle")
    w = g.n
    new_edges = list(g.edges)
    for e in X:
        u, v = g.endpoints(e)
        (other,) = verts - {u, v}
        new_edges[e] = (other, w)
    g2 = MultiGraph(
        g.n + 1, new_edges, g.edge_names, g.vertex_names + ("w%d" % (g.n + 1),)
    )
    balanced = set()
    for c in omega.balanced:
        k = len(c & X)
        if c == X:
            continue
        if k in (0, 2):
            balanced.add(c)
        elif k == 1:
            balanced.add(c ^ X)
    new_cycles = {frozenset(c.edges) for c in g2.cycles()}
    balanced &= new_cycles
    return BiasedGraph(g2, balanced)


def y_delta(omega, center):
    """Y-Delta exchange at a degree-3 vertex (center of a K_{1,3}).

    The star edges are replaced by the opposite triangle edges and the
    centre vertex deleted.  A cycle D of the new graph is balanced when its
    corresponding cycle of the old graph is balanced, plus the new triangle
    itself, which is always balanced.
    """
    g = omega.graph
    Y = tuple(g.incident_edges(center))
    if len(Y) != 3 or g.degree(center) != 3:
        raise NotTriad("vertex must be the centre of a K_{1,3} with degree 3")
    leaves = [g.other_end(e, center) for e in Y]
    if len(set(leaves)) != 3:
        raise NotTriad("star leaves must be distinct")
    Yset = frozenset(Y)
    new_edges = list(g.edges)
    leafset = set(leaves)
    for e in Y:
        leaf = g.other_end(e, center)
        others = sorted(leafset - {leaf})
        new_edges[e] = (others[0], others[1])
    # delete the centre vertex (now isolated)
    keep = [v for v in range(g.n) if v != center]
    vmap = {v: i for i, v in enumerate(keep)}
    g2 = MultiGraph(
        g.n - 1,
        [(vmap[u], vmap[v]) for (u, v) in new_edges],
        g.edge_names,
        tuple(g.vertex_names[v] for v in keep),
    )
    balanced = set()
    for c in g2.cycles():
        ce = frozenset(c.edges)
        k = len(ce & Yset)
        if ce == Yset:
            balanced.add(ce)
        elif k in (0, 2):
            # same edge ids form the corresponding cycle of the old graph
            if ce in omega.balanced:
                balanced.add(ce)
        elif k == 1:
            if (ce ^ Yset) in omega.balanced:
                balanced.add(ce)
    return BiasedGraph(g2, balanced), vmap


# -- unbalancing classes and rolling ------------------------------------------

@dataclass(frozen=True)
class UnbalancingPartition:
    at_vertex: int
    classes: tuple  # frozensets partitioning delta(u) plus the off-u joints
    joints_at_vertex: frozenset


def unbalancing_classes(omega, u):
    """Partition of delta(u) and the off-u joints at a balancing vertex.

    Two links at u are equivalent when a balanced cycle contains both; all
    off-u joints form one class (any two of them make a loose-handcuff
    circuit with a connecting path); off-u joints are never equivalent to a
    link at u (the corresponding sets are independent).
    """
    g = omega.graph
    loops = [e for e in range(g.m) if g.is_loop(e)]
    stripped = biased_minor(omega, frozenset(), frozenset(loops), check=False).omega
    if u not in balancing_vertices(stripped):
        raise NotBalancingVertex("vertex %d is not balancing after loop deletion" % u)
    delta_u = list(g.links_at(u))
    parent = {e: e for e in delta_u}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in omega.balanced:
        pair = sorted(c & set(delta_u))
        if len(pair) == 2:
            ra, rb = find(pair[0]), find(pair[1])
            if ra != rb:
                parent[ra] = rb
    groups = {}
    for e in delta_u:
        groups.setdefault(find(e), []).append(e)
    classes = [frozenset(v) for _, v in sorted(groups.items())]
    joints = omega.joints()
    j_prime = frozenset(e for e in joints if u not in g.endpoints(e))
    j_at_u = frozenset(e for e in joints if u in g.endpoints(e))
    if j_prime:
        classes.append(j_prime)
    classes.sort(key=lambda c: min(c))
    return UnbalancingPartition(u, tuple(classes), j_at_u)


def roll_up(omega, u, cls):
    """Replace one unbalancing class of links at u by joints at their other
    endpoints.  The frame matroid is preserved (tested invariant)."""
    cls = frozenset(cls)
    part = unbalancing_classes(omega, u)
    if cls not in part.classes or any(omega.graph.is_loop(e) for e in cls):
        raise StructureMissing("not a link unbalancing class at the vertex")
    g = omega.graph
    new_edges = list(g.edges)
    for e in cls:
        w = g.other_end(e, u)
        new_edges[e] = (w, w)
    g2 = MultiGraph(g.n, new_edges, g.edge_names, g.vertex_names)
    new_cycles = {frozenset(c.edges) for c in g2.cycles()}
    balanced = set()
    for c in new_cycles:
        if len(c) == 1:
            (e,) = c
            if e in cls:
                continue  # new joints
            if c in omega.balanced:
                balanced.add(c)
        elif c in omega.balanced and not (c & cls):
            balanced.add(c)
    return BiasedGraph(g2, balanced)


def unroll(omega, u):
    """Replace every off-u joint by a link to u; rebias so that a cycle is
    balanced exactly when it meets every unbalancing class in 0 or 2 edges."""
    part = unbalancing_classes(omega, u)
    g = omega.graph
    j_prime = sorted(
        e for e in omega.joints() if u not in g.endpoints(e)
    )
    new_edges = list(g.edges)
    for e in j_prime:
        (w,) = set(g.endpoints(e))
        new_edges[e] = (u, w)
    g2 = MultiGraph(g.n, new_edges, g.edge_names, g.vertex_names)
    classes = part.classes
    balanced = set()
    for c in g2.cycles():
        ce = frozenset(c.edges)
        if len(ce) == 1:
            if ce in omega.balanced:
                balanced.add(ce)
            continue
        if all(len(ce & s) in (0, 2) for s in classes):
            balanced.add(ce)
    return BiasedGraph(g2, balanced)


def fully_unrolled(omega, u):
    """Canonical representative of the rolling equivalence class at u."""
    return unroll(omega, u)


def biased_equal_unoriented(om1, om2):
    """Equality as labeled biased graphs ignoring declared edge orientations."""
    g1, g2 = om1.graph, om2.graph
    if g1.n != g2.n or g1.edge_names != g2.edge_names:
        return False
    for e in range(g1.m):
        if set(g1.edges[e]) != set(g2.edges[e]):
            return False
    return om1.balanced == om2.balanced


def fat_theta_parts(omega):
    """Decompose a fat theta: returns (x, y, parts) where parts are edge
    sets, or None if the graph is not of that shape.

    A fat theta is vertically 2-connected, unbalanced, with two balancing
    vertices x < y.  Atomic pieces are the x-y links and the components of
    G - {x,y} (each with its edges into {x,y}); pieces joined by a balanced
    cycle must lie in a common part, so parts are the unions of pieces
    under that relation.  The decomposition is valid when every balanced
    cycle lies within a single part and every cross-part cycle is
    unbalanced.
    """
    bv = balancing_vertices(omega)
    if len(bv) < 2 or not omega.unbalanced_cycles():
        return None
    x, y = bv[0], bv[1]
    g = omega.graph
    if any(g.is_loop(e) for e in range(g.m)):
        return None
    piece_of = {}
    npieces = 0
    comp_of = {}
    for s in range(g.n):
        if s in (x, y) or s in comp_of:
            continue
        stack = [s]
        comp_of[s] = npieces
        while stack:
            v = stack.pop()
            for e in g.incident_edges(v):
                w = g.other_end(e, v)
                if w not in (x, y) and w not in comp_of:
                    comp_of[w] = npieces
                    stack.append(w)
        npieces += 1
    for e in range(g.m):
        u, v = g.endpoints(e)
        if {u, v} == {x, y}:
            piece_of[e] = npieces
            npieces += 1
        else:
            w = u if u not in (x, y) else v
            piece_of[e] = comp_of[w]
    parent = list(range(npieces))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in omega.balanced:
        pieces = {piece_of[e] for e in c}
        first = None
        for p in pieces:
            if first is None:
                first = find(p)
            else:
                parent[find(p)] = first
    groups = {}
    for e in range(g.m):
        groups.setdefault(find(piece_of[e]), set()).add(e)
    parts = sorted((frozenset(es) for es in groups.values()), key=min)
    if len(parts) < 2:
        return None
    for p, q in combinations(parts, 2):
        if g.vertices_of(p) & g.vertices_of(q) - {x, y}:
            return None
    for c in omega.cycles():
        inside = any(c.edges <= p for p in parts)
        if inside != (frozenset(c.edges) in omega.balanced):
            return None
    return x, y, tuple(parts)


def double_roll_up(omega, i, j):
    """Double roll-up of a fat theta: roll part i off the first balancing
    vertex and part j off the second."""
    shape = fat_theta_parts(omega)
    if shape is None:
        raise StructureMissing("graph is not a fat theta")
    x, y, parts = shape
    if len(parts) < 3:
        raise StructureMissing("double roll-up needs at least three parts")
    if i == j or not (0 <= i < len(parts)) or not (0 <= j < len(parts)):
        raise ValueError("need two distinct part indices")
    g = omega.graph
    E_i = frozenset(e for e in parts[i] if x in g.endpoints(e))
    E_j = frozenset(e for e in parts[j] if y in g.endpoints(e))
    new_edges = list(g.edges)
    for e in E_i:
        w = g.other_end(e, x)
        new_edges[e] = (w, w)
    for e in E_j:
        w = g.other_end(e, y)
        new_edges[e] = (w, w)
    g2 = MultiGraph(g.n, new_edges, g.edge_names, g.vertex_names)
    rolled = E_i | E_j
    balanced = set()
    for c in g2.cycles():
        ce = frozenset(c.edges)
        if ce & rolled:
            continue
        if ce in omega.balanced:
            balanced.add(ce)
    return BiasedGraph(g2, balanced)


# -- isomorphism and link-minor search ----------------------------------------

def biased_isomorphisms(om1, om2):
    """Generate (vertex_map, edge_map) isomorphisms between biased graphs."""
    g, h = om1.graph, om2.graph
    if len(om1.balanced) != len(om2.balanced):
        return
    if sorted(len(c) for c in om1.balanced) != sorted(len(c) for c in om2.balanced):
        return
    for perm in graph_isomorphisms(g, h):
        for emap in edge_bijections(g, h, perm):
            if {frozenset(emap[e] for e in c) for c in om1.balanced} == om2.balanced:
                yield perm, emap


def biased_isomorphic(om1, om2):
    for _ in biased_isomorphisms(om1, om2):
        return True
    return False


def biased_isomorphic_up_to_isolated(om1, om2):
    g1, _ = om1.graph.drop_isolated()
    g2, _ = om2.graph.drop_isolated()

    def remap(om, g):
        emap = {om.graph.edge_index(nm): g.edge_index(nm) for nm in g.edge_names}
        return BiasedGraph(
            g, {frozenset(emap[e] for e in c) for c in om.balanced}, check=False
        )

    return biased_isomorphic(remap(om1, g1), remap(om2, g2))


@dataclass(frozen=True)
class MinorRecipe:
    contract: frozenset
    delete: frozenset
    iso: tuple = None  # (vertex permutation, edge map) minor -> pattern


def find_link_minor(omega, pattern, max_vertices=10, max_edges=20):
    """Search for a link minor of `omega` isomorphic to `pattern` up to
    isolated vertices.  Contractions range over forests of links (the
    acyclic-contraction normal form).  Returns a MinorRecipe or None."""
    g = omega.graph
    if g.n > max_vertices or g.m > max_edges:
        raise BoundExceeded("link-minor search bound exceeded")
    want_edges = pattern.graph.m
    pat_dropped, _ = pattern.graph.drop_isolated()
    want_vertices = pat_dropped.n
    if want_edges > g.m:
        return None
    links = [e for e in range(g.m) if not g.is_loop(e)]

    forests = [frozenset()]
    seen = {frozenset()}

    def grow(forest):
        for e in links:
            if e in forest:
                continue
            cand = forest | {e}
            if cand in seen:
                continue
            if g.is_forest_edge_set(cand):
                seen.add(cand)
                forests.append(cand)
                grow(cand)

    grow(frozenset())
    forests.sort(key=lambda f: (len(f), sorted(f)))
    for K in forests:
        if g.m - len(K) < want_edges:
            continue
        if not omega.is_balanced_set(K):
            continue
        remaining = [e for e in range(g.m) if e not in K]
        for keep in combinations(remaining, want_edges):
            D = frozenset(remaining) - frozenset(keep)
            result = biased_minor(omega, K, D, check=False)
            if not result.is_link_minor:
                continue
            mg, _ = result.omega.graph.drop_isolated()
            if mg.n != want_vertices:
                continue
            iso = _iso_up_to_isolated(result.omega, pattern)
            if iso is not None:
                return MinorRecipe(K, D, iso)
    return None


def _iso_up_to_isolated(om1, om2):
    g1, _ = om1.graph.drop_isolated()
    g2, _ = om2.graph.drop_isolated()

    def remap(om, g):
        emap = {om.graph.edge_index(nm): g.edge_index(nm) for nm in g.edge_names}
        return BiasedGraph(
            g, {frozenset(emap[e] for e in c) for c in om.balanced}, check=False
        )

    for iso in biased_isomorphisms(remap(om1, g1), remap(om2, g2)):
        return iso
    return None


def find_biased_subdivision(omega, pattern, max_vertices=12, max_edges=24):
    """Find a subgraph of `omega` that is a subdivision of the biased graph
    `pattern` (bias transported along the subdivision).  Returns the
    Embedding or None."""
    for emb in iter_subdivisions(
        omega.graph, pattern.graph, max_vertices, max_edges
    ):
        ok = True
        for c in pattern.graph.cycles():
            host_edges = emb.host_cycle_edges(c.edges)
            want = frozenset(c.edges) in pattern.balanced
            if (host_edges in omega.balanced) != want:
                ok = False
                break
        if ok:
            return emb
    return None
