"""Text file formats and JSON certificate serialization.

Graph format, one declaration per line ('#' starts a comment):
    vertices N
    edge <name> <u> <v>          (u = v for loops)

Biased-graph format adds, one line per balanced cycle:
    balanced <edge-name> <edge-name> ...

Gain-graph format adds a group line and one gain per edge (the gain is on
the orientation u -> v of the edge declaration):
    group mul <q> | group add <q> | group zn <n>
    gain <edge-name> <element>

Matrix format:
    rows <r> cols <c> field gf <q> | rows <r> cols <c> field rational
    labels <col-label> ...       (optional)
    <row of space-separated entries> x r

Matroid interchange format:
    ground <label> ...
    rank <comma-joined-subset | -> <r>    (explicit oracle), or
    source <path-to-biased-graph-file>
    kind frame|lift|lift0
"""

import json
import os

from .bias import BiasedGraph
from .errors import ParseError
from .fields import QQ, gf
from .gains import AdditiveGroup, CyclicGroup, GainGraph, MultiplicativeGroup
from .graph import MultiGraph
from .linalg import FieldMatrix
from .matroid import (
    complete_lift_matroid,
    explicit_matroid,
    frame_matroid,
    lift_matroid,
)


def _lines(text):
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line.split()


def parse_graph(text):
    n = None
    edges = []
    names = []
    for i, parts in _lines(text):
        if parts[0] == "vertices":
            if len(parts) != 2:
                raise ParseError("vertices takes one argument", i)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError("vertex count must be an integer", i)
        elif parts[0] == "edge":
            if len(parts) != 4:
                raise ParseError("edge takes name u v", i)
            if n is None:
                raise ParseError("edge before vertices", i)
            names.append(parts[1])
            try:
                edges.append((int(parts[2]), int(parts[3])))
            except ValueError:
                raise ParseError("edge endpoints must be integers", i)
        elif parts[0] in ("balanced", "group", "gain"):
            continue
        else:
            raise ParseError("unknown declaration %r" % parts[0], i)
    if n is None:
        raise ParseError("missing vertices line")
    try:
        return MultiGraph(n, edges, names or None)
    except Exception as exc:
        raise ParseError(str(exc))


def emit_graph(g):
    out = ["vertices %d" % g.n]
    for e, (u, v) in enumerate(g.edges):
        out.append("edge %s %d %d" % (g.edge_names[e], u, v))
    return "\n".join(out) + "\n"


def parse_biased_graph(text, check=True):
    g = parse_graph(text)
    balanced = []
    for i, parts in _lines(text):
        if parts[0] == "balanced":
            try:
                balanced.append(g.edge_set(parts[1:]))
            except Exception as exc:
                raise ParseError(str(exc), i)
    try:
        return BiasedGraph(g, balanced, check=check)
    except Exception as exc:
        raise ParseError(str(exc))


def emit_biased_graph(om):
    out = emit_graph(om.graph)
    for c in sorted(om.balanced, key=lambda c: (len(c), sorted(c))):
        out += "balanced %s\n" % " ".join(om.graph.names_of(c))
    return out


def _parse_group(parts, i):
    if parts[1] == "mul":
        return MultiplicativeGroup(int(parts[2]))
    if parts[1] == "add":
        return AdditiveGroup(int(parts[2]))
    if parts[1] == "zn":
        return CyclicGroup(int(parts[2]))
    raise ParseError("unknown group kind %r" % parts[1], i)


def parse_gain_graph(text):
    g = parse_graph(text)
    group = None
    gains = {}
    for i, parts in _lines(text):
        if parts[0] == "group":
            if len(parts) != 3:
                raise ParseError("group takes kind and order", i)
            group = _parse_group(parts, i)
        elif parts[0] == "gain":
            if group is None:
                raise ParseError("gain before group", i)
            if len(parts) != 3:
                raise ParseError("gain takes edge-name element", i)
            e = g.edge_index(parts[1])
            val = int(parts[2])
            if val not in group.elements:
                raise ParseError("element %d not in %r" % (val, group), i)
            gains[e] = val
    if group is None:
        raise ParseError("missing group line")
    missing = [g.edge_names[e] for e in range(g.m) if e not in gains]
    if missing:
        raise ParseError("missing gains for %s" % ", ".join(missing))
    return GainGraph(g, group, gains)


def emit_gain_graph(gg):
    out = emit_graph(gg.graph)
    kind, order = gg.group.spec
    out += "group %s %d\n" % (kind, order)
    for e in range(gg.graph.m):
        out += "gain %s %d\n" % (gg.graph.edge_names[e], gg.gains[e])
    return out


def parse_matrix(text):
    header = None
    labels = None
    rows = []
    field = None
    for i, parts in _lines(text):
        if parts[0] == "rows":
            if (
                len(parts) < 6
                or parts[2] != "cols"
                or parts[4] != "field"
            ):
                raise ParseError("header: rows r cols c field {gf q | rational}", i)
            r, c = int(parts[1]), int(parts[3])
            if parts[5] == "gf":
                field = gf(int(parts[6]))
            elif parts[5] == "rational":
                field = QQ
            else:
                raise ParseError("unknown field %r" % parts[5], i)
            header = (r, c)
        elif parts[0] == "labels":
            labels = tuple(parts[1:])
        else:
            if header is None:
                raise ParseError("matrix data before header", i)
            if len(parts) != header[1]:
                raise ParseError(
                    "expected %d entries, got %d" % (header[1], len(parts)), i
                )
            try:
                rows.append([field.parse(tok) for tok in parts])
            except Exception as exc:
                raise ParseError(str(exc), i)
    if header is None:
        raise ParseError("missing matrix header")
    if len(rows) != header[0]:
        raise ParseError("expected %d rows, got %d" % (header[0], len(rows)))
    if labels is not None and len(labels) != header[1]:
        raise ParseError("label count mismatch")
    return FieldMatrix(field, rows, None, labels)


def emit_matrix(A, with_labels=True):
    f = A.field
    if f.q is not None:
        head = "rows %d cols %d field gf %d" % (A.nrows, A.ncols, f.q)
    else:
        head = "rows %d cols %d field rational" % (A.nrows, A.ncols)
    out = [head]
    if with_labels:
        out.append("labels " + " ".join(A.col_labels))
    for r in A.rows:
        out.append(" ".join(f.show(x) for x in r))
    return "\n".join(out) + "\n"


def parse_matroid(text, base_dir="."):
    ground = None
    ranks = {}
    source = None
    kind = None
    for i, parts in _lines(text):
        if parts[0] == "ground":
            ground = tuple(parts[1:])
        elif parts[0] == "rank":
            if len(parts) != 3:
                raise ParseError("rank takes subset and value", i)
            subset = () if parts[1] == "-" else tuple(parts[1].split(","))
            ranks[frozenset(subset)] = int(parts[2])
        elif parts[0] == "source":
            source = parts[1]
        elif parts[0] == "kind":
            kind = parts[1]
        else:
            raise ParseError("unknown declaration %r" % parts[0], i)
    if source is not None:
        if kind not in ("frame", "lift", "lift0"):
            raise ParseError("kind must be frame, lift or lift0")
        with open(os.path.join(base_dir, source)) as fh:
            om = parse_biased_graph(fh.read())
        if kind == "frame":
            return frame_matroid(om)
        if kind == "lift":
            return lift_matroid(om)
        return complete_lift_matroid(om)
    if ground is None:
        raise ParseError("missing ground line")
    full = 1 << len(ground)
    if len(ranks) != full:
        raise ParseError(
            "explicit matroid needs all %d subset ranks, got %d" % (full, len(ranks))
        )
    return explicit_matroid(ground, ranks)


def emit_matroid(M):
    out = ["ground " + " ".join(M.labels)]
    for mask in range(1 << M.size):
        subset = M.subset_of(mask)
        key = ",".join(subset) if subset else "-"
        out.append("rank %s %d" % (key, M.rank_mask(mask)))
    return "\n".join(out) + "\n"


# -- JSON certificates -----------------------------------------------------------

def witness_to_json(w):
    return {
        "kind": "projective-witness",
        "T": emit_matrix(w.T, with_labels=False),
        "S": emit_matrix(w.S, with_labels=False),
    }


def witness_from_json(obj):
    from .linalg import ProjWitness

    if obj.get("kind") != "projective-witness":
        raise ParseError("not a projective-witness object")
    return ProjWitness(parse_matrix(obj["T"]), parse_matrix(obj["S"]))


def edge_names_json(g, edge_ids):
    return sorted(g.edge_names[e] for e in edge_ids)


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True)
