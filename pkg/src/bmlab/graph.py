"""Labeled multigraphs with oriented edges, cycles, connectivity and minors.

Vertices are dense integers 0..n-1 (with optional display labels, default
"v1".."vn").  Edges are dense integers 0..m-1 with a declared orientation
(the (tail, head) pair given at construction) and a name (default
"e1".."em").  Loops and parallel edges are allowed everywhere.

All values are immutable after construction; operations are pure functions
returning new graphs.
"""

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import BoundExceeded, NotACycle, NotAWalk, UnknownEdge

DEFAULT_CYCLE_EDGE_BOUND = 24
DEFAULT_SUBDIVISION_BOUND = (12, 24)  # host vertices, host edges


@dataclass(frozen=True)
class OrientedEdge:
    """An edge index together with a direction along it."""

    edge: int
    forward: bool = True

    def reverse(self):
        return OrientedEdge(self.edge, not self.forward)


class MultiGraph:
    """Immutable multigraph; loops and parallel edges allowed."""

    def __init__(self, n, edges, edge_names=None, vertex_names=None):
        self.n = int(n)
        self.edges = tuple((int(u), int(v)) for (u, v) in edges)
        self.m = len(self.edges)
        for (u, v) in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise UnknownEdge("edge endpoint out of range")
        if edge_names is None:
            edge_names = tuple("e%d" % (i + 1) for i in range(self.m))
        else:
            edge_names = tuple(edge_names)
            if len(edge_names) != self.m or len(set(edge_names)) != self.m:
                raise ValueError("edge names must be unique, one per edge")
        if vertex_names is None:
            vertex_names = tuple("v%d" % (i + 1) for i in range(self.n))
        else:
            vertex_names = tuple(vertex_names)
            if len(vertex_names) != self.n:
                raise ValueError("need one name per vertex")
        self.edge_names = edge_names
        self.vertex_names = vertex_names
        self._name_to_edge = {nm: i for i, nm in enumerate(edge_names)}
        inc = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            if v != u:
                inc[v].append(e)
        self._incident = tuple(tuple(sorted(es)) for es in inc)
        self._cycles = None

    # -- basics ----------------------------------------------------------
    def endpoints(self, e):
        self._check_edge(e)
        return self.edges[e]

    def is_loop(self, e):
        u, v = self.endpoints(e)
        return u == v

    def edge_index(self, name):
        try:
            return self._name_to_edge[name]
        except KeyError:
            raise UnknownEdge("no edge named %r" % (name,))

    def edge_set(self, names):
        return frozenset(self.edge_index(nm) for nm in names)

    def names_of(self, edge_ids):
        return tuple(self.edge_names[e] for e in sorted(edge_ids))

    def incident_edges(self, v):
        return self._incident[v]

    def links_at(self, v):
        return tuple(e for e in self._incident[v] if not self.is_loop(e))

    def loops_at(self, v):
        return tuple(e for e in self._incident[v] if self.is_loop(e))

    def degree(self, v):
        return sum(2 if self.is_loop(e) else 1 for e in self._incident[v])

    def tail(self, oe):
        u, v = self.endpoints(oe.edge)
        return u if oe.forward else v

    def head(self, oe):
        u, v = self.endpoints(oe.edge)
        return v if oe.forward else u

    def other_end(self, e, v):
        u, w = self.endpoints(e)
        if u == v:
            return w
        if w == v:
            return u
        raise UnknownEdge("edge %d not incident to vertex %d" % (e, v))

    def _check_edge(self, e):
        if not 0 <= e < self.m:
            raise UnknownEdge("edge index %r out of range" % (e,))

    def check_walk(self, walk):
        for a, b in zip(walk, walk[1:]):
            if self.head(a) != self.tail(b):
                raise NotAWalk("consecutive oriented edges do not chain")

    def __eq__(self, other):
        return (
            isinstance(other, MultiGraph)
            and self.n == other.n
            and self.edges == other.edges
            and self.edge_names == other.edge_names
        )

    def __hash__(self):
        return hash((self.n, self.edges, self.edge_names))

    def __repr__(self):
        return "MultiGraph(n=%d, m=%d)" % (self.n, self.m)

    # -- connectivity ----------------------------------------------------
    def vertices_of(self, edge_ids):
        """Vertices incident to at least one edge of the set."""
        out = set()
        for e in edge_ids:
            u, v = self.edges[e]
            out.add(u)
            out.add(v)
        return out

    def edge_components(self, edge_ids):
        """Partition an edge set into connected components (as edge sets)."""
        edge_ids = sorted(edge_ids)
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in edge_ids:
            u, v = self.edges[e]
            for x in (u, v):
                if x not in parent:
                    parent[x] = x
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        comps = {}
        for e in edge_ids:
            r = find(self.edges[e][0])
            comps.setdefault(r, []).append(e)
        return [frozenset(es) for _, es in sorted(comps.items())]

    def components(self):
        """Vertex sets of connected components (isolated vertices included)."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                v = stack.pop()
                for e in self._incident[v]:
                    w = self.other_end(e, v)
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(frozenset(comp))
        return out

    def is_connected(self):
        return len(self.components()) <= 1

    def spanning_forest(self):
        """Maximal forest as a sorted tuple of edge ids (Kruskal, id order)."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        forest = []
        for e, (u, v) in enumerate(self.edges):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                forest.append(e)
        return tuple(forest)

    def is_forest_edge_set(self, edge_ids):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in edge_ids:
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    # -- cycles ----------------------------------------------------------
    def cycles(self, max_edges=DEFAULT_CYCLE_EDGE_BOUND):
        """All cycles, each once, sorted by (length, edge ids).

        A cycle is a connected 2-regular subgraph; loops are length-1 cycles.
        Enumeration is by backtracking over simple paths anchored at the
        smallest vertex of the cycle.
        """
        if self._cycles is not None:
            return self._cycles
        if self.m > max_edges:
            raise BoundExceeded(
                "cycle enumeration bound %d edges exceeded (%d)" % (max_edges, self.m)
            )
        found = set()
        for e in range(self.m):
            if self.is_loop(e):
                found.add(frozenset((e,)))
        for v0 in range(self.n):
            # simple paths from v0 using vertices > v0 internally
            def extend(current, used_edges, visited):
                for e in self._incident[current]:
                    if e in used_edges or self.is_loop(e):
                        continue
                    w = self.other_end(e, current)
                    if w == v0:
                        if len(used_edges) >= 1:
                            found.add(frozenset(used_edges | {e}))
                        continue
                    if w < v0 or w in visited:
                        continue
                    extend(w, used_edges | {e}, visited | {w})

            extend(v0, frozenset(), frozenset((v0,)))
        out = [Cycle.from_edges(self, es) for es in found]
        out.sort(key=lambda c: (len(c.edges), tuple(sorted(c.edges))))
        self._cycles = tuple(out)
        return self._cycles

    # -- vertical connectivity --------------------------------------------
    def is_vertically_k_connected(self, k):
        """Vertical k-connectivity with witness separation when false.

        On >= k+2 vertices: connected with no vertical r-separation, r < k.
        On fewer vertices: connected with a spanning complete subgraph
        (the paper's k+1-vertex clause, extended downward so that 2-vertex
        graphs with a link are vertically 2-connected).
        Returns (True, None) or (False, witness); the witness is a pair of
        edge-name tuples (A, B) forming a vertical r-separation (r < k), or
        None when the failure is degenerate (e.g. too few vertices).
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        comps = self.components()
        if self.n < k + 2:
            complete = all(
                any(set(self.edges[e]) == {u, v} for e in self._incident[u])
                for u, v in combinations(range(self.n), 2)
            )
            if len(comps) <= 1 and complete and self.n >= 1:
                return True, None
            return False, self._any_vertical_separation(k)
        if len(comps) > 1:
            return False, self._any_vertical_separation(k)
        for r in range(1, k):
            sep = self._vertical_separation(r)
            if sep is not None:
                return False, sep
        return True, None

    def _any_vertical_separation(self, k):
        if len(self.components()) > 1:
            withedges = [c for c in self.components() if any(self._incident[v] for v in c)]
            if len(withedges) >= 2:
                a = {e for v in withedges[0] for e in self._incident[v]}
                b = set(range(self.m)) - a
                if b:
                    return (self.names_of(a), self.names_of(b))
            return None
        for r in range(1, k):
            sep = self._vertical_separation(r)
            if sep is not None:
                return sep
        return None

    def _vertical_separation(self, r):
        for S in combinations(range(self.n), r):
            Sset = set(S)
            # components of G - S
            comp_of = {}
            cid = 0
            for s in range(self.n):
                if s in Sset or s in comp_of:
                    continue
                stack = [s]
                comp_of[s] = cid
                while stack:
                    v = stack.pop()
                    for e in self._incident[v]:
                        w = self.other_end(e, v)
                        if w not in Sset and w not in comp_of:
                            comp_of[w] = cid
                            stack.append(w)
                cid += 1
            edges_of_comp = [[] for _ in range(cid)]
            flexible = []
            for e, (u, v) in enumerate(self.edges):
                c = comp_of.get(u)
                if c is None:
                    c = comp_of.get(v)
                if c is None:
                    flexible.append(e)
                else:
                    edges_of_comp[c].append(e)
            live = [c for c in range(cid) if edges_of_comp[c]]
            if len(live) < 2:
                continue
            for size in range(1, len(live)):
                for group in combinations(live, size):
                    forced_a = [e for c in group for e in edges_of_comp[c]]
                    forced_b = [
                        e for c in live if c not in group for e in edges_of_comp[c]
                    ]
                    need_a = max(0, r - len(forced_a))
                    if need_a > len(flexible):
                        continue
                    if len(forced_b) + len(flexible) - need_a < r:
                        continue
                    A = set(forced_a) | set(flexible[:need_a])
                    B = set(forced_b) | set(flexible[need_a:])
                    VA = self.vertices_of(A)
                    VB = self.vertices_of(B)
                    cut = VA & VB
                    if len(cut) > r:
                        continue
                    if len(A) < len(cut) or len(B) < len(cut):
                        continue
                    if VA - VB and VB - VA:
                        return (self.names_of(A), self.names_of(B))
        return None

    # -- minors ------------------------------------------------------------
    def minor(self, contract, delete):
        """Standard minor; returns (graph, vertex_map, edge_map).

        Contracting a loop is deletion.  Vertices are never dropped (isolated
        vertices survive; dropping them is a separate explicit operation).
        vertex_map sends every old vertex to its new index; edge_map sends
        surviving old edge ids to new ids.
        """
        contract = frozenset(contract)
        delete = frozenset(delete)
        if contract & delete:
            raise ValueError("contract and delete sets overlap")
        for e in contract | delete:
            self._check_edge(e)
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in sorted(contract):
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[min(ru, rv)] = max(ru, rv)
        classes = {}
        for v in range(self.n):
            classes.setdefault(find(v), []).append(v)
        reps = sorted(classes, key=lambda r: min(classes[r]))
        new_index = {rep: i for i, rep in enumerate(reps)}
        vmap = {v: new_index[find(v)] for v in range(self.n)}
        new_edges, new_names, emap = [], [], {}
        for e, (u, v) in enumerate(self.edges):
            if e in contract or e in delete:
                continue
            emap[e] = len(new_edges)
            new_edges.append((vmap[u], vmap[v]))
            new_names.append(self.edge_names[e])
        vnames = tuple(
            self.vertex_names[min(classes[rep])] for rep in reps
        )
        g = MultiGraph(len(reps), new_edges, new_names, vnames)
        return g, vmap, emap

    def acyclic_contraction_form(self, contract, delete):
        """Normalize (K, D) so that K is a maximal forest of G|K."""
        contract = frozenset(contract)
        delete = frozenset(delete)
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        keep = []
        moved = []
        for e in sorted(contract):
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                moved.append(e)
            else:
                parent[ru] = rv
                keep.append(e)
        return frozenset(keep), delete | frozenset(moved)

    def drop_isolated(self):
        """Delete isolated vertices; returns (graph, vertex_map)."""
        used = sorted(self.vertices_of(range(self.m)))
        vmap = {v: i for i, v in enumerate(used)}
        g = MultiGraph(
            len(used),
            [(vmap[u], vmap[v]) for (u, v) in self.edges],
            self.edge_names,
            tuple(self.vertex_names[v] for v in used),
        )
        return g, vmap


@dataclass(frozen=True)
class Cycle:
    """Edge set of a connected 2-regular subgraph plus one canonical walk."""

    edges: frozenset
    walk: tuple

    @staticmethod
    def from_edges(g, edge_ids):
        edge_ids = frozenset(edge_ids)
        if len(edge_ids) == 1:
            (e,) = edge_ids
            if not g.is_loop(e):
                raise NotACycle("single non-loop edge is not a cycle")
            return Cycle(edge_ids, (OrientedEdge(e, True),))
        deg = {}
        for e in edge_ids:
            if g.is_loop(e):
                raise NotACycle("loop inside a longer edge set")
            u, v = g.endpoints(e)
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        if any(d != 2 for d in deg.values()):
            raise NotACycle("edge set is not 2-regular")
        if len(g.edge_components(edge_ids)) != 1:
            raise NotACycle("edge set is not connected")
        start = min(deg)
        walk = []
        current = start
        remaining = set(edge_ids)
        while remaining:
            e = min(x for x in remaining if current in g.endpoints(x))
            u, v = g.endpoints(e)
            walk.append(OrientedEdge(e, forward=(u == current)))
            current = v if u == current else u
            remaining.discard(e)
        if current != start:
            raise NotACycle("edge set does not close up")
        return Cycle(edge_ids, tuple(walk))

    def __len__(self):
        return len(self.edges)


# -- subdivision search ----------------------------------------------------

class Embedding:
    """A topological embedding: pattern vertices to branch vertices, pattern
    edges to internally disjoint host paths (tuples of host edge ids)."""

    def __init__(self, vertex_map, edge_paths):
        self.vertex_map = dict(vertex_map)
        self.edge_paths = {e: tuple(p) for e, p in edge_paths.items()}

    def host_edges(self):
        out = set()
        for p in self.edge_paths.values():
            out.update(p)
        return frozenset(out)

    def host_cycle_edges(self, pattern_cycle_edges):
        out = set()
        for e in pattern_cycle_edges:
            out.update(self.edge_paths[e])
        return frozenset(out)


def find_subdivision(host, pattern, max_vertices=None, max_edges=None):
    """First embedding of a subdivision of `pattern` inside `host`, or None."""
    for emb in iter_subdivisions(host, pattern, max_vertices, max_edges):
        return emb
    return None


def iter_subdivisions(host, pattern, max_vertices=None, max_edges=None):
    """Generate embeddings of subdivisions of `pattern` in `host`.

    Pattern must be loopless.  Branch vertices are distinct host vertices;
    each pattern edge maps to a host path; paths are internally disjoint
    from each other and from branch vertices.
    """
    if max_vertices is None:
        max_vertices = DEFAULT_SUBDIVISION_BOUND[0]
    if max_edges is None:
        max_edges = DEFAULT_SUBDIVISION_BOUND[1]
    if host.n > max_vertices or host.m > max_edges:
        raise BoundExceeded("subdivision host exceeds bound")
    if any(pattern.is_loop(e) for e in range(pattern.m)):
        raise ValueError("loop patterns are not supported")
    if pattern.m > host.m or pattern.n > host.n:
        return
    pverts = sorted(range(pattern.n), key=lambda v: -pattern.degree(v))
    pedges = sorted(range(pattern.m))

    def assign_edges(idx, vmap, used_edges, used_internal):
        if idx == len(pedges):
            yield Embedding(vmap, dict(current_paths))
            return
        e = pedges[idx]
        a, b = pattern.endpoints(e)
        fa, fb = vmap[a], vmap[b]
        branch_images = set(vmap.values())

        def paths(current, visited, edges_used_path):
            if current == fb and edges_used_path:
                yield tuple(edges_used_path)
                return
            for he in host.incident_edges(current):
                if he in used_edges or he in edges_used_path or host.is_loop(he):
                    continue
                w = host.other_end(he, current)
                if w == fb:
                    yield from paths_step(w, visited, edges_used_path, he)
                    continue
                if w in visited or w in branch_images or w in used_internal:
                    continue
                yield from paths_step(w, visited | {w}, edges_used_path, he)

        def paths_step(w, visited, edges_used_path, he):
            edges_used_path = edges_used_path + [he]
            if w == fb:
                yield tuple(edges_used_path)
            else:
                yield from paths(w, visited, edges_used_path)

        for path in paths(fa, {fa}, []):
            internal = set()
            cur = fa
            for he in path[:-1]:
                cur = host.other_end(he, cur)
                internal.add(cur)
            current_paths[e] = path
            yield from assign_edges(
                idx + 1, vmap, used_edges | set(path), used_internal | internal
            )
            del current_paths[e]

    current_paths = {}

    def assign_vertices(i, vmap, used):
        if i == len(pverts):
            yield from assign_edges(0, vmap, frozenset(), frozenset())
            return
        pv = pverts[i]
        for hv in range(host.n):
            if hv in used:
                continue
            if host.degree(hv) < pattern.degree(pv):
                continue
            vmap[pv] = hv
            yield from assign_vertices(i + 1, vmap, used | {hv})
            del vmap[pv]

    yield from assign_vertices(0, {}, frozenset())


# -- isomorphism -------------------------------------------------------------

def _adjacency_profile(g, v):
    mult = {}
    loops = 0
    for e in g.incident_edges(v):
        if g.is_loop(e):
            loops += 1
        else:
            w = g.other_end(e, v)
            mult[w] = mult.get(w, 0) + 1
    return loops, sorted(mult.values())


def graph_isomorphisms(g, h):
    """Generate vertex bijections g -> h preserving edge multiplicities."""
    if g.n != h.n or g.m != h.m:
        return
    if sorted(_adjacency_profile(g, v) for v in range(g.n)) != sorted(
        _adjacency_profile(h, v) for v in range(h.n)
    ):
        return

    def mult_table(x):
        t = {}
        for e, (u, v) in enumerate(x.edges):
            key = (u, v) if u <= v else (v, u)
            t.setdefault(key, []).append(e)
        return t

    gm, hm = mult_table(g), mult_table(h)
    profile_g = {v: _adjacency_profile(g, v) for v in range(g.n)}
    profile_h = {v: _adjacency_profile(h, v) for v in range(h.n)}
    for perm in permutations(range(h.n)):
        ok = True
        for v in range(g.n):
            if profile_g[v] != profile_h[perm[v]]:
                ok = False
                break
        if not ok:
            continue
        good = True
        for (u, v), es in gm.items():
            key = (perm[u], perm[v]) if perm[u] <= perm[v] else (perm[v], perm[u])
            if len(hm.get(key, ())) != len(es):
                good = False
                break
        if good:
            yield perm


def edge_bijections(g, h, perm):
    """Generate edge bijections compatible with a vertex bijection."""
    gm = {}
    for e, (u, v) in enumerate(g.edges):
        key = (u, v) if u <= v else (v, u)
        gm.setdefault(key, []).append(e)
    hm = {}
    for e, (u, v) in enumerate(h.edges):
        key = (u, v) if u <= v else (v, u)
        hm.setdefault(key, []).append(e)
    keys = sorted(gm)
    target = []
    for key in keys:
        ku, kv = perm[key[0]], perm[key[1]]
        hkey = (ku, kv) if ku <= kv else (kv, ku)
        target.append(hm[hkey])

    def rec(i, emap):
        if i == len(keys):
            yield dict(emap)
            return
        src = gm[keys[i]]
        for assignment in permutations(target[i]):
            for a, b in zip(src, assignment):
                emap[a] = b
            yield from rec(i + 1, emap)

    yield from rec(0, {})
