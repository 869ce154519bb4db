import json

import pytest

from bmlab import catalog, formats
from bmlab.cli import main


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


@pytest.fixture
def b0_file(tmp_path):
    return write(tmp_path, "b0.bg", formats.emit_biased_graph(catalog.tube("B_0").omega))


@pytest.fixture
def gain_file(tmp_path):
    text = formats.emit_graph(catalog.graph_2c3())
    text += "group mul 5\n"
    for i, val in enumerate((1, 2, 1, 3, 2, 4), 1):
        text += "gain e%d %d\n" % (i, val)
    return write(tmp_path, "g.gg", text)


def test_catalog_dump(capsys):
    assert main(["catalog", "B_0"]) == 0
    out = capsys.readouterr().out
    assert "vertices 4" in out


def test_catalog_all_json(capsys):
    assert main(["catalog", "--all", "--json"]) == 0
    table = json.loads(capsys.readouterr().out)["catalog"]
    assert len(table) == 24  # 7 + 6 + 3 + 3 contracted + U2/U3 + 3 splits


def test_check_theta_ok(capsys, b0_file):
    assert main(["check-theta", b0_file]) == 0


def test_check_theta_violation(tmp_path, capsys):
    g = catalog.graph_k4()
    cyc = [c for c in g.cycles() if len(c) == 3]
    text = formats.emit_graph(g)
    for c in cyc[:2]:
        text += "balanced %s\n" % " ".join(g.names_of(c.edges))
    path = write(tmp_path, "bad.bg", text)
    assert main(["check-theta", path, "--json"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["status"] == "violation"
    assert len(payload["cycles"]) == 3


def test_classify(capsys, b0_file):
    assert main(["classify", b0_file, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["balance"] == "properly-unbalanced"
    assert payload["tangled"] is False


def test_rank(capsys, b0_file):
    assert main(["rank", "frame", b0_file]) == 0
    assert capsys.readouterr().out.strip() == "4"
    assert main(["rank", "lift", b0_file, "e1", "e2"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_matrix_and_bias(capsys, gain_file):
    assert main(["matrix", "frame", gain_file]) == 0
    out = capsys.readouterr().out
    assert out.startswith("rows 3 cols 6 field gf 5")
    assert main(["bias", gain_file]) == 0
    out = capsys.readouterr().out
    assert "balanced" in out


def test_switch_equiv(tmp_path, capsys, gain_file):
    from bmlab.gains import GainGraph, MultiplicativeGroup, switch

    gg = formats.parse_gain_graph(open(gain_file).read())
    other = switch(gg, {0: 2, 1: 3, 2: 1})
    other_file = write(tmp_path, "h.gg", formats.emit_gain_graph(other))
    assert main(["switch-equiv", gain_file, other_file]) == 0
    bad = GainGraph(gg.graph, gg.group, {**gg.gains, 5: 1})
    bad_file = write(tmp_path, "bad.gg", formats.emit_gain_graph(bad))
    assert main(["switch-equiv", gain_file, bad_file]) == 1


def test_proj_equiv_identity(tmp_path, capsys):
    from bmlab.fields import gf
    from bmlab.linalg import FieldMatrix

    A = FieldMatrix(gf(5), [[1, 2], [0, 3]], None, ("a", "b"))
    path = write(tmp_path, "a.mat", formats.emit_matrix(A))
    assert main(["proj-equiv", path, path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["equivalent"] is True
    w = formats.witness_from_json(payload["witness"])
    assert w.verify(A, A)


def test_canonicalize_cli(tmp_path, capsys, b0_file):
    from bmlab.canonical import frame_matrix
    from bmlab.gains import MultiplicativeGroup, realizations

    b0 = catalog.tube("B_0").omega
    gg = realizations(b0, MultiplicativeGroup(5))[0]
    A = frame_matrix(gg).matrix
    mat = write(tmp_path, "a.mat", formats.emit_matrix(A))
    assert main(["canonicalize", mat, b0_file, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "frame"


def test_enumerate_reps_cli(tmp_path, capsys):
    from bmlab.matroid import uniform_matroid

    M = uniform_matroid(2, ("e1", "e2", "e3", "e4"))
    path = write(tmp_path, "u24.matroid", formats.emit_matroid(M))
    assert main(["enumerate-reps", path, "--q", "4", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["classes"]) == 2


def test_minor_cli(capsys, b0_file):
    assert main(["minor", b0_file, "--contract", "e3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["link_minor"] is True
    assert "vertices 3" in payload["file"]


def test_deltawye_cli(tmp_path, capsys):
    t2p = catalog.biased_2c3("T_2'").omega
    path = write(tmp_path, "t2p.bg", formats.emit_biased_graph(t2p))
    X = min(t2p.balanced, key=sorted)
    names = [t2p.graph.edge_names[e] for e in sorted(X)]
    assert main(["deltawye", path, "--at"] + names) == 0
    out = capsys.readouterr().out
    assert "vertices 4" in out


def test_rollup_unroll_cli(tmp_path, capsys):
    d10 = catalog.dwarf("D_{1,0}").omega
    from bmlab.bias import classify_balance

    u = classify_balance(d10).balancing_vertices[0]
    path = write(tmp_path, "d10.bg", formats.emit_biased_graph(d10))
    assert main(["rollup", path, "--vertex", str(u)]) == 0
    rolled = capsys.readouterr().out
    rolled_path = write(tmp_path, "rolled.bg", rolled)
    assert main(["unroll", rolled_path, "--vertex", str(u)]) == 0


def test_verify_cli(capsys):
    assert main(["verify", "seven-dwarves"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out


def test_verify_unknown_claim(capsys):
    assert main(["verify", "nonsense"]) == 2


def test_verify_json(capsys):
    assert main(["verify", "base-count", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["reports"][0]["status"] == "pass"


def test_usage_exit_codes(capsys):
    assert main([]) == 2
    assert main(["verify"]) == 2


def test_parse_error_exit(tmp_path):
    path = write(tmp_path, "bad.bg", "vertices x\n")
    assert main(["check-theta", path]) == 2
