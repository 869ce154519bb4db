"""Abelian gain groups and gain graphs: walk gains, the induced bias,
switching, forest normalization, equivalence decisions, induced gains on
minors.

Supported groups: the multiplicative group of GF(q), the additive group of
GF(q), and cyclic Z_n.  Elements are the integers used by the field tables
(multiplicative: 1..q-1, additive: 0..q-1, cyclic: 0..n-1).  Gains are
stored on the declared orientation of each edge; the reverse orientation
carries the inverse.
"""

from dataclasses import dataclass
from itertools import product

from .bias import BiasedGraph, biased_minor
from .errors import (
    BmlabError,
    GraphMismatch,
    GroupMismatch,
    NotMaximalForest,
    UnknownEdge,
)
from .fields import gf
from .graph import MultiGraph


class GainGroup:
    """Shared interface: identity, op, inv, elements, deterministic order."""

    def op(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def is_additive_field_group(self):
        return False

    def smallest_non_identity(self):
        for x in self.elements:
            if x != self.identity:
                return x
        raise BmlabError("group %r is trivial" % (self,))

    def power(self, a, n):
        r = self.identity
        if n >= 0:
            for _ in range(n):
                r = self.op(r, a)
        else:
            inv = self.inv(a)
            for _ in range(-n):
                r = self.op(r, inv)
        return r


class MultiplicativeGroup(GainGroup):
    """F^x of GF(q)."""

    def __init__(self, q):
        self.field = gf(q)
        self.q = q
        self.identity = self.field.one

    @property
    def elements(self):
        return tuple(self.field.nonzero)

    def op(self, a, b):
        return self.field.mul(a, b)

    def inv(self, a):
        return self.field.inv(a)

    def __eq__(self, other):
        return isinstance(other, MultiplicativeGroup) and other.q == self.q

    def __hash__(self):
        return hash(("mul", self.q))

    def __repr__(self):
        return "GF(%d)^x" % self.q

    @property
    def spec(self):
        return ("mul", self.q)


class AdditiveGroup(GainGroup):
    """F^+ of GF(q), with the scalar action of F^x."""

    def __init__(self, q):
        self.field = gf(q)
        self.q = q
        self.identity = self.field.zero

    @property
    def elements(self):
        return tuple(self.field.elements)

    def op(self, a, b):
        return self.field.add(a, b)

    def inv(self, a):
        return self.field.neg(a)

    @property
    def is_additive_field_group(self):
        return True

    def scale(self, a, x):
        """The automorphism x -> a*x for a in F^x."""
        return self.field.mul(a, x)

    @property
    def scalars(self):
        return tuple(self.field.nonzero)

    def __eq__(self, other):
        return isinstance(other, AdditiveGroup) and other.q == self.q

    def __hash__(self):
        return hash(("add", self.q))

    def __repr__(self):
        return "GF(%d)^+" % self.q

    @property
    def spec(self):
        return ("add", self.q)


class CyclicGroup(GainGroup):
    """Z_n written additively."""

    def __init__(self, n):
        if n < 1:
            raise BmlabError("Z_n needs n >= 1")
        self.n = n
        self.identity = 0

    @property
    def elements(self):
        return tuple(range(self.n))

    def op(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return (-a) % self.n

    def __eq__(self, other):
        return isinstance(other, CyclicGroup) and other.n == self.n

    def __hash__(self):
        return hash(("zn", self.n))

    def __repr__(self):
        return "Z_%d" % self.n

    @property
    def spec(self):
        return ("zn", self.n)


def group_axioms_hold(group, max_order=257):
    """Exhaustive associativity/identity/inverse/commutativity check."""
    els = group.elements
    if len(els) > max_order:
        raise BmlabError("group too large for exhaustive axiom check")
    e = group.identity
    for a in els:
        if group.op(a, e) != a or group.op(e, a) != a:
            return False
        if group.op(a, group.inv(a)) != e:
            return False
        for b in els:
            if group.op(a, b) != group.op(b, a):
                return False
            for c in els:
                if group.op(group.op(a, b), c) != group.op(a, group.op(b, c)):
                    return False
    return True


class GainGraph:
    """A multigraph with a gain in an abelian group on each oriented edge."""

    def __init__(self, graph, group, gains):
        self.graph = graph
        self.group = group
        if set(gains) != set(range(graph.m)):
            raise UnknownEdge("need a gain for every edge, keyed by edge id")
        self.gains = {e: gains[e] for e in range(graph.m)}

    def gain(self, oe):
        """Gain of an oriented edge; the declared orientation is forward."""
        g = self.gains[oe.edge]
        return g if oe.forward else self.group.inv(g)

    def with_gains(self, gains):
        return GainGraph(self.graph, self.group, gains)

    def __eq__(self, other):
        return (
            isinstance(other, GainGraph)
            and self.graph == other.graph
            and self.group == other.group
            and self.gains == other.gains
        )

    def __repr__(self):
        return "GainGraph(%r, %r)" % (self.graph, self.group)


def walk_gain(gg, walk):
    """Compose gains along a walk (validates the walk)."""
    gg.graph.check_walk(list(walk))
    out = gg.group.identity
    for oe in walk:
        out = gg.group.op(out, gg.gain(oe))
    return out


def cycle_gain(gg, cycle):
    return walk_gain(gg, cycle.walk)


def induced_bias(gg, max_edges=24):
    """The biased graph (G, B_phi): balanced = identity-gain cycles."""
    balanced = set()
    for c in gg.graph.cycles(max_edges):
        if cycle_gain(gg, c) == gg.group.identity:
            balanced.add(frozenset(c.edges))
    return BiasedGraph(gg.graph, balanced, check=False)


def is_realization(gg, omega):
    if gg.graph != omega.graph:
        raise GraphMismatch("gain graph and biased graph differ")
    return induced_bias(gg).balanced == omega.balanced


def switch(gg, eta):
    """Apply a switching function (vertex -> group element)."""
    group = gg.group
    new = {}
    for e in range(gg.graph.m):
        u, v = gg.graph.endpoints(e)
        # phi^eta(e) = eta(tail)^-1 . phi(e) . eta(head)
        val = group.op(
            group.op(group.inv(eta.get(u, group.identity)), gg.gains[e]),
            eta.get(v, group.identity),
        )
        new[e] = val
    return gg.with_gains(new)


def compose_switchings(group, eta1, eta2):
    keys = set(eta1) | set(eta2)
    return {
        v: group.op(eta1.get(v, group.identity), eta2.get(v, group.identity))
        for v in keys
    }


def invert_switching(group, eta):
    return {v: group.inv(x) for v, x in eta.items()}


def normalize(gg, forest=None):
    """F-normalize: returns (gain graph with identity on the forest, eta)
    with switch(gg, eta) equal to the result; eta is the identity on the
    smallest vertex of each component."""
    g = gg.graph
    if forest is None:
        forest = g.spanning_forest()
    forest = frozenset(forest)
    expected = frozenset(g.spanning_forest())
    if len(forest) != len(expected) or not g.is_forest_edge_set(forest):
        raise NotMaximalForest("edge set is not a maximal forest")
    group = gg.group
    eta = {}
    adj = {v: [] for v in range(g.n)}
    for e in forest:
        u, v = g.endpoints(e)
        adj[u].append((v, e))
        adj[v].append((u, e))
    for comp in g.components():
        root = min(comp)
        eta[root] = group.identity
        stack = [root]
        while stack:
            v = stack.pop()
            for (w, e) in sorted(adj[v]):
                if w in eta:
                    continue
                u0, v0 = g.endpoints(e)
                phi = gg.gains[e] if (u0, v0) == (v, w) else group.inv(gg.gains[e])
                # want phi^eta(v->w) = identity: eta(w) = phi(v->w)^-1 eta(v)
                eta[w] = group.op(group.inv(phi), eta[v])
                stack.append(w)
    return switch(gg, eta), eta


def switching_equivalent(gg1, gg2):
    """Witness eta with switch(gg1, eta) == gg2, or None.

    Decided by normalizing both on the same maximal forest and comparing
    (normalized gain functions are switching equivalent iff equal)."""
    if gg1.graph != gg2.graph:
        raise GraphMismatch("different underlying graphs")
    if gg1.group != gg2.group:
        raise GroupMismatch("different gain groups")
    forest = gg1.graph.spanning_forest()
    n1, eta1 = normalize(gg1, forest)
    n2, eta2 = normalize(gg2, forest)
    if n1.gains != n2.gains:
        return None
    eta = compose_switchings(gg1.group, eta1, invert_switching(gg1.group, eta2))
    assert switch(gg1, eta).gains == gg2.gains
    return eta


def scale_gains(gg, a):
    """a . phi for additive field gains."""
    if not gg.group.is_additive_field_group:
        raise GroupMismatch("scaling needs an additive field group")
    return gg.with_gains({e: gg.group.scale(a, x) for e, x in gg.gains.items()})


def switching_scaling_equivalent(gg1, gg2):
    """Witness (a, eta) with switch(scale(gg1, a), eta) == gg2, or None;
    first witness in field enumeration order."""
    if gg1.graph != gg2.graph:
        raise GraphMismatch("different underlying graphs")
    if gg1.group != gg2.group or not gg1.group.is_additive_field_group:
        raise GroupMismatch("need matching additive field groups")
    for a in gg1.group.scalars:
        eta = switching_equivalent(scale_gains(gg1, a), gg2)
        if eta is not None:
            return a, eta
    return None


def induced_gain(gg, contract, delete, new_joint_gain=None):
    """Induced gains on a minor, following the section-2 semantics.

    Links of the contraction set are contracted first (each normalized to
    identity gain, then merged), then balanced loops are deleted, then
    remaining unbalanced loops are joint-contracted: links at the joint's
    vertex become joints at their other endpoint with the smallest
    non-identity gain, loops there become balanced (identity gain).
    Returns (gain graph, vertex_map, edge_map).
    """
    contract = set(contract)
    delete = set(delete)
    if contract & delete:
        raise ValueError("contract and delete sets overlap")
    g = gg.graph
    for e in contract | delete:
        g._check_edge(e)
    group = gg.group
    if new_joint_gain is None and contract:
        pass  # resolved lazily; only needed when a joint is contracted

    def delete_edges(cur, dels):
        g2, vmap, emap = cur.graph.minor(set(), dels)
        gains = {emap[e]: cur.gains[e] for e in emap}
        return GainGraph(g2, group, gains), vmap, emap

    current, total_vmap, total_emap = delete_edges(gg, delete)
    pending = {total_emap[e] for e in contract}

    def compose(vm1, em1, vm2, em2):
        vm = {v: vm2[vm1[v]] for v in vm1}
        em = {e: em2[em1[e]] for e in em1 if em1[e] in em2}
        return vm, em

    while pending:
        links = sorted(e for e in pending if not current.graph.is_loop(e))
        if links:
            e = links[0]
            u, v = current.graph.endpoints(e)
            # switch at v so the gain becomes the identity, then contract
            eta = {v: current.group.inv(current.gains[e])}
            switched = switch(current, eta)
            g2, vmap, emap = current.graph.minor({e}, set())
            gains = {emap[x]: switched.gains[x] for x in emap}
            nxt = GainGraph(g2, group, gains)
        else:
            loops_bal = sorted(
                e for e in pending if current.gains[e] == group.identity
            )
            if loops_bal:
                e = loops_bal[0]
                nxt, vmap, emap = delete_edges(current, {e})
            else:
                e = sorted(pending)[0]
                (v,) = set(current.graph.endpoints(e))
                joint_gain = (
                    new_joint_gain
                    if new_joint_gain is not None
                    else group.smallest_non_identity()
                )
                new_edges = []
                new_names = []
                emap = {}
                gains = {}
                for f, (a, b) in enumerate(current.graph.edges):
                    if f == e:
                        continue
                    emap[f] = len(new_edges)
                    if a == v and b == v:
                        new_edges.append((v, v))
                        gains[emap[f]] = group.identity
                    elif a == v or b == v:
                        w = b if a == v else a
                        new_edges.append((w, w))
                        gains[emap[f]] = joint_gain
                    else:
                        new_edges.append((a, b))
                        gains[emap[f]] = current.gains[f]
                    new_names.append(current.graph.edge_names[f])
                g2 = MultiGraph(
                    current.graph.n, new_edges, new_names, current.graph.vertex_names
                )
                nxt = GainGraph(g2, group, gains)
                vmap = {u: u for u in range(current.graph.n)}
        pending = {emap[x] for x in pending if x != e and x in emap}
        total_vmap, total_emap = compose(total_vmap, total_emap, vmap, emap)
        current = nxt
    return current, total_vmap, total_emap


def induced_realization_check(gg, omega, contract, delete):
    """Assert the induced gains realize the corresponding biased minor."""
    mg, _, _ = induced_gain(gg, contract, delete)
    bm = biased_minor(omega, contract, delete, check=False)
    return induced_bias(mg).balanced == bm.omega.balanced


# -- enumeration helpers -------------------------------------------------------

def normalized_gain_functions(graph, group, forest=None):
    """All gain functions that are identity on the given maximal forest.

    One per switching class on a connected graph (P:NormalizationUnique).
    Loops are free like any non-forest edge."""
    if forest is None:
        forest = graph.spanning_forest()
    forest = frozenset(forest)
    free = [e for e in range(graph.m) if e not in forest]
    for values in product(group.elements, repeat=len(free)):
        gains = {e: group.identity for e in forest}
        gains.update(dict(zip(free, values)))
        yield GainGraph(graph, group, gains)


def realizations(omega, group, forest=None):
    """Normalized realizations of a biased graph over a group (exhaustive)."""
    out = []
    for gg in normalized_gain_functions(omega.graph, group, forest):
        if induced_bias(gg).balanced == omega.balanced:
            out.append(gg)
    return out


def switching_class_count(omega, group):
    return len(realizations(omega, group))


def scaling_orbits(reps):
    """Group normalized additive realizations into switching-and-scaling
    orbits; returns a list of lists."""
    orbits = []
    seen = set()
    for i, gg in enumerate(reps):
        if i in seen:
            continue
        orbit = [i]
        seen.add(i)
        for j in range(i + 1, len(reps)):
            if j in seen:
                continue
            if switching_scaling_equivalent(gg, reps[j]) is not None:
                orbit.append(j)
                seen.add(j)
        orbits.append([reps[k] for k in orbit])
    return orbits


def switching_scaling_class_count(omega, group):
    return len(scaling_orbits(realizations(omega, group)))
