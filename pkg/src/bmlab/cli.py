"""Command-line front end.

Exit codes: 0 pass/success, 1 fail/negative answer, 2 usage or parse
error, 3 bound exhausted / undecided.  Every subcommand takes --json.
The BMLAB_BOUNDS environment variable scales the default search bounds.
"""

import argparse
import json
import os
import sys

from . import catalog, formats, verify
from .bias import (
    biased_minor,
    check_theta_property,
    classify_balance,
    delta_y,
    is_tangled,
    roll_up,
    unbalancing_classes,
    unroll,
    y_delta,
)
from .canonical import (
    canonicalize_representation,
    complete_lift_matrix,
    enumerate_representations,
    frame_matrix,
    lift_matrix,
)
from .errors import BmlabError, BoundExceeded, ParseError
from .gains import induced_bias, switching_equivalent, switching_scaling_equivalent
from .linalg import projectively_equivalent
from .matroid import frame_rank, lift_rank

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3


def bounds_scale():
    try:
        return float(os.environ.get("BMLAB_BOUNDS", "1"))
    except ValueError:
        return 1.0


def _read(path):
    with open(path) as fh:
        return fh.read()


def _emit(payload, as_json, text=None):
    if as_json:
        print(formats.dumps(payload))
    else:
        print(text if text is not None else formats.dumps(payload))


def cmd_catalog(args):
    if args.all:
        table = []
        for name in catalog.catalog_names():
            nb = catalog.by_name(name)
            om = nb.omega
            table.append({
                "name": nb.name,
                "vertices": om.graph.n,
                "edges": om.graph.m,
                "balanced_cycles": len(om.balanced),
                "balance": classify_balance(om).tag,
                "tangled": is_tangled(om)[0],
                "note": nb.note,
            })
        _emit({"catalog": table}, args.json,
              "\n".join("%-9s n=%d m=%d |B|=%d %s" % (
                  r["name"], r["vertices"], r["edges"], r["balanced_cycles"], r["balance"])
                  for r in table))
        return EXIT_PASS
    if not args.name:
        print("catalog: need a name or --all", file=sys.stderr)
        return EXIT_USAGE
    nb = catalog.by_name(args.name)
    text = formats.emit_biased_graph(nb.omega)
    if args.json:
        _emit({"name": nb.name, "file": text}, True)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_check_theta(args):
    om_text = _read(args.biased_graph)
    try:
        om = formats.parse_biased_graph(om_text, check=False)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    violation = check_theta_property(om.graph, om.balanced)
    if violation is None:
        _emit({"status": "ok"}, args.json, "ok: theta property holds")
        return EXIT_PASS
    theta, cycles = violation
    payload = {
        "status": "violation",
        "theta": formats.edge_names_json(om.graph, theta),
        "cycles": [formats.edge_names_json(om.graph, c) for c in cycles],
    }
    _emit(payload, args.json,
          "violation: theta %s" % " ".join(payload["theta"]))
    return EXIT_FAIL


def cmd_classify(args):
    om = formats.parse_biased_graph(_read(args.biased_graph))
    cls = classify_balance(om)
    tangled, witness = is_tangled(om)
    payload = {
        "balance": cls.tag,
        "balancing_vertices": list(cls.balancing_vertices),
        "tangled": tangled,
    }
    if witness is not None:
        payload["disjoint_unbalanced_pair"] = [
            formats.edge_names_json(om.graph, c) for c in witness
        ]
    _emit(payload, args.json,
          "%s; balancing vertices %s; tangled=%s" % (
              cls.tag, list(cls.balancing_vertices), tangled))
    return EXIT_PASS


def cmd_rank(args):
    om = formats.parse_biased_graph(_read(args.biased_graph))
    subset = (
        om.graph.edge_set(args.subset) if args.subset else range(om.graph.m)
    )
    r = frame_rank(om, subset) if args.kind == "frame" else lift_rank(om, subset)
    _emit({"kind": args.kind, "rank": r}, args.json, str(r))
    return EXIT_PASS


def cmd_matrix(args):
    gg = formats.parse_gain_graph(_read(args.gain_graph))
    if args.kind == "frame":
        form = frame_matrix(gg)
    elif args.kind == "lift":
        form = lift_matrix(gg)
    else:
        form = complete_lift_matrix(gg)
    text = formats.emit_matrix(form.matrix)
    if args.json:
        _emit({"kind": args.kind, "matrix": text,
               "rows": list(form.matrix.row_labels)}, True)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_bias(args):
    gg = formats.parse_gain_graph(_read(args.gain_graph))
    om = induced_bias(gg)
    text = formats.emit_biased_graph(om)
    if args.json:
        _emit({"file": text, "balanced": [
            formats.edge_names_json(om.graph, c) for c in sorted(om.balanced, key=sorted)
        ]}, True)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_switch_equiv(args):
    g1 = formats.parse_gain_graph(_read(args.gg1))
    g2 = formats.parse_gain_graph(_read(args.gg2))
    if g1.group.is_additive_field_group and args.scaling:
        res = switching_scaling_equivalent(g1, g2)
        if res is None:
            _emit({"equivalent": False}, args.json, "not equivalent")
            return EXIT_FAIL
        a, eta = res
        _emit({"equivalent": True, "scalar": a,
               "switching": {str(v): x for v, x in eta.items()}},
              args.json, "equivalent (scalar %s)" % a)
        return EXIT_PASS
    eta = switching_equivalent(g1, g2)
    if eta is None:
        _emit({"equivalent": False}, args.json, "not equivalent")
        return EXIT_FAIL
    _emit({"equivalent": True,
           "switching": {str(v): x for v, x in eta.items()}},
          args.json, "equivalent")
    return EXIT_PASS


def cmd_proj_equiv(args):
    A = formats.parse_matrix(_read(args.mat1))
    B = formats.parse_matrix(_read(args.mat2))
    w = projectively_equivalent(A, B)
    if w is None:
        _emit({"equivalent": False}, args.json, "not projectively equivalent")
        return EXIT_FAIL
    _emit({"equivalent": True, "witness": formats.witness_to_json(w)},
          args.json, "projectively equivalent")
    return EXIT_PASS


def cmd_canonicalize(args):
    A = formats.parse_matrix(_read(args.matrix))
    om = formats.parse_biased_graph(_read(args.biased_graph))
    res = canonicalize_representation(A, om, hint=args.kind)
    if res.status != "ok":
        _emit({"status": res.status, "reason": res.reason}, args.json,
              "undecided: %s" % res.reason)
        return EXIT_UNDECIDED
    payload = {
        "status": "ok",
        "kind": res.kind,
        "rolled_edges": formats.edge_names_json(om.graph, res.rolled_edges),
        "gains": {om.graph.edge_names[e]: v
                  for e, v in res.form.gain_graph.gains.items()},
        "matrix": formats.emit_matrix(res.form.matrix),
        "witness": formats.witness_to_json(res.witness),
        "other_kind": res.other_kind,
    }
    _emit(payload, args.json,
          "%s form%s" % (res.kind,
                         "" if not res.rolled_edges else
                         " (rolled: %s)" % ",".join(payload["rolled_edges"])))
    return EXIT_PASS


def cmd_enumerate_reps(args):
    M = formats.parse_matroid(_read(args.matroid),
                              base_dir=os.path.dirname(args.matroid) or ".")
    om = None
    if args.biased_graph:
        om = formats.parse_biased_graph(_read(args.biased_graph))
    scale = bounds_scale()
    classes = enumerate_representations(
        M, args.q, biased_graph=om,
        max_rank=int(4 * scale), max_elements=int(8 * scale),
        max_q=max(5, int(5 * scale)),
    )
    payload = {
        "q": args.q,
        "classes": [
            {"matrix": formats.emit_matrix(c.matrix), "kind": c.kind,
             "standard_forms": c.count}
            for c in classes
        ],
    }
    _emit(payload, args.json, "%d classes" % len(classes))
    return EXIT_PASS


def cmd_minor(args):
    om = formats.parse_biased_graph(_read(args.biased_graph))
    contract = om.graph.edge_set(args.contract or [])
    delete = om.graph.edge_set(args.delete or [])
    res = biased_minor(om, contract, delete)
    text = formats.emit_biased_graph(res.omega)
    if args.json:
        _emit({"file": text, "link_minor": res.is_link_minor}, True)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_deltawye(args):
    om = formats.parse_biased_graph(_read(args.biased_graph))
    X = om.graph.edge_set(args.at)
    out = delta_y(om, X)
    sys.stdout.write(formats.emit_biased_graph(out))
    return EXIT_PASS


def cmd_wyedelta(args):
    om = formats.parse_biased_graph(_read(args.biased_graph))
    out, _ = y_delta(om, args.vertex)
    sys.stdout.write(formats.emit_biased_graph(out))
    return EXIT_PASS


def cmd_rollup(args):
    om = formats.parse_biased_graph(_read(args.biased_graph))
    if args.cls:
        cls = om.graph.edge_set(args.cls)
    else:
        part = unbalancing_classes(om, args.vertex)
        cls = part.classes[0]
    out = roll_up(om, args.vertex, cls)
    sys.stdout.write(formats.emit_biased_graph(out))
    return EXIT_PASS


def cmd_unroll(args):
    om = formats.parse_biased_graph(_read(args.biased_graph))
    out = unroll(om, args.vertex)
    sys.stdout.write(formats.emit_biased_graph(out))
    return EXIT_PASS


def cmd_verify(args):
    names = verify.all_claims() if args.all else [args.claim]
    if not args.all and args.claim not in verify.CLAIMS:
        print("unknown claim %r; known: %s" % (args.claim, ", ".join(verify.all_claims())),
              file=sys.stderr)
        return EXIT_USAGE
    kwargs = {}
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.q is not None:
        kwargs["q"] = args.q
    scale = bounds_scale()
    if scale > 1:
        # raise the family bounds of the structure-theorem claims
        kwargs["max_vertices"] = int(5 * scale)
        kwargs["max_edges"] = int(8 * scale)
    reports = []
    worst = EXIT_PASS
    for name in names:
        rep = verify.run_claim(name, **kwargs)
        reports.append(rep)
        line = "%-30s %-10s %6.2fs %s" % (
            rep.claim, rep.status.upper(), rep.seconds,
            "" if args.json else json.dumps(rep.counts, sort_keys=True))
        if not args.json:
            print(line)
        if rep.status == "fail":
            worst = EXIT_FAIL if worst != EXIT_FAIL else worst
            worst = EXIT_FAIL
        elif rep.status == "undecided" and worst == EXIT_PASS:
            worst = EXIT_UNDECIDED
    if args.json:
        print(formats.dumps({"reports": [r.to_json() for r in reports]}))
    return worst


def build_parser():
    p = argparse.ArgumentParser(
        prog="bmlab",
        description="biased graphs, gain graphs, frame/lift matroids, and "
                    "canonical matrix representations over finite fields",
    )
    sub = p.add_subparsers(dest="command")

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true")
        return sp

    sp = add("catalog", cmd_catalog, help="dump a named biased graph")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--all", action="store_true")

    sp = add("check-theta", cmd_check_theta, help="validate the theta property")
    sp.add_argument("biased_graph")

    sp = add("classify", cmd_classify, help="balance classification")
    sp.add_argument("biased_graph")

    sp = add("rank", cmd_rank, help="frame or lift rank of an edge subset")
    sp.add_argument("kind", choices=("frame", "lift"))
    sp.add_argument("biased_graph")
    sp.add_argument("subset", nargs="*")

    sp = add("matrix", cmd_matrix, help="canonical matrix of a gain graph")
    sp.add_argument("kind", choices=("frame", "lift", "lift0"))
    sp.add_argument("gain_graph")

    sp = add("bias", cmd_bias, help="induced bias of a gain graph")
    sp.add_argument("gain_graph")

    sp = add("switch-equiv", cmd_switch_equiv, help="switching equivalence")
    sp.add_argument("gg1")
    sp.add_argument("gg2")
    sp.add_argument("--scaling", action="store_true",
                    help="allow scaling (additive gains)")

    sp = add("proj-equiv", cmd_proj_equiv, help="projective equivalence")
    sp.add_argument("mat1")
    sp.add_argument("mat2")

    sp = add("canonicalize", cmd_canonicalize,
             help="canonicalize a representation")
    sp.add_argument("matrix")
    sp.add_argument("biased_graph")
    sp.add_argument("--kind", choices=("frame", "lift"))

    sp = add("enumerate-reps", cmd_enumerate_reps,
             help="representation classes of a matroid")
    sp.add_argument("matroid")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--biased-graph")

    sp = add("minor", cmd_minor, help="biased minor")
    sp.add_argument("biased_graph")
    sp.add_argument("--contract", nargs="*")
    sp.add_argument("--delete", nargs="*")

    sp = add("deltawye", cmd_deltawye, help="Delta-Y exchange")
    sp.add_argument("biased_graph")
    sp.add_argument("--at", nargs=3, required=True,
                    help="edge names of a balanced triangle")

    sp = add("wyedelta", cmd_wyedelta, help="Y-Delta exchange")
    sp.add_argument("biased_graph")
    sp.add_argument("--vertex", type=int, required=True)

    sp = add("rollup", cmd_rollup, help="roll up an unbalancing class")
    sp.add_argument("biased_graph")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--class", dest="cls", nargs="*")

    sp = add("unroll", cmd_unroll, help="unroll the joints at a vertex")
    sp.add_argument("biased_graph")
    sp.add_argument("--vertex", type=int, required=True)

    sp = add("verify", cmd_verify, help="run a registered paper claim")
    sp.add_argument("claim", nargs="?")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--q", type=int)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        parser.print_help()
        return EXIT_USAGE
    if args.command == "verify" and not args.all and not args.claim:
        print("verify: need a claim id or --all", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except BoundExceeded as exc:
        print("bound exceeded: %s" % exc, file=sys.stderr)
        return EXIT_UNDECIDED
    except BmlabError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
