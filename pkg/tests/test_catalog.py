import pytest

from bmlab import catalog
from bmlab.bias import (
    biased_isomorphic,
    biased_minor,
    check_theta_property,
    classify_balance,
    fat_theta_parts,
    find_link_minor,
    is_tangled,
)
from bmlab.errors import BadGlue, BmlabError
from bmlab.graph import MultiGraph
from bmlab.matroid import frame_matroid, lift_matroid, matroids_equal, uniform_matroid


def test_seven_dwarves():
    dwarves = catalog.classify_k4()
    assert len(dwarves) == 7
    names = {nb.name for nb in dwarves}
    assert names == {"D_{0,0}", "D_{0,1}", "D_{0,2}", "D_{0,3}",
                     "D_{1,0}", "D_{2,1}", "D_{4,3}"}


def test_dwarf_counts_are_the_defining_predicate():
    for nb in catalog.classify_k4():
        t = sum(1 for c in nb.omega.balanced if len(c) == 3)
        q = sum(1 for c in nb.omega.balanced if len(c) == 4)
        assert nb.name == "D_{%d,%d}" % (t, q)


def test_six_proper_2c3():
    assert {nb.name for nb in catalog.classify_2c3_proper()} == {
        "T_0", "T_1", "T_2", "T_2'", "T_3", "T_4"
    }


def test_t2_split_by_delta_image():
    from bmlab.bias import delta_y

    t2 = catalog.biased_2c3("T_2").omega
    t2p = catalog.biased_2c3("T_2'").omega
    img2 = delta_y(t2, min(t2.balanced, key=sorted))
    img2p = delta_y(t2p, min(t2p.balanced, key=sorted))
    assert biased_isomorphic(img2, catalog.dwarf("D_{0,1}").omega)
    assert biased_isomorphic(img2p, catalog.dwarf("D_{1,0}").omega)


def test_three_tubes():
    tubes = catalog.classify_tube_proper()
    assert [nb.name for nb in tubes] == ["B_0", "B_1", "B_2"]
    # pinned by generation: 0, 1 and 2 balanced quadrilaterals
    for nb, count in zip(tubes, (0, 1, 2)):
        assert len(nb.omega.balanced) == count


def test_thirteen_base_graphs():
    base = catalog.base_graphs()
    assert len(base) == 13
    for nb in base:
        assert classify_balance(nb.omega).tag == "properly-unbalanced"
        ok, _ = nb.omega.is_vertically_k_connected(2)
        assert ok
        assert check_theta_property(nb.omega.graph, nb.omega.balanced) is None


def test_base_graphs_link_minor_minimal():
    # single-edge deletions and link contractions lose the defining property
    for nb in catalog.base_graphs():
        om = nb.omega
        for e in range(om.graph.m):
            for op in ("delete", "contract"):
                mn = biased_minor(
                    om, {e} if op == "contract" else set(),
                    {e} if op == "delete" else set(), check=False,
                )
                g, _ = mn.omega.graph.drop_isolated()
                still = (
                    classify_balance(mn.omega).tag == "properly-unbalanced"
                    and g.is_vertically_k_connected(2)[0]
                )
                assert not still, (nb.name, op, e)


def test_u2_u3_matroids():
    u2, u3 = catalog.u2().omega, catalog.u3().omega
    u24f = uniform_matroid(2, u2.graph.edge_names)
    assert matroids_equal(frame_matroid(u2), u24f)[0]
    u24 = uniform_matroid(2, u3.graph.edge_names)
    assert matroids_equal(frame_matroid(u3), u24)[0]
    assert matroids_equal(lift_matroid(u3), u24)[0]


def test_u3_contrabalanced_theta():
    u3 = catalog.u3().omega
    links = [e for e in range(u3.graph.m) if not u3.graph.is_loop(e)]
    assert len(links) == 3
    assert not any(c in u3.balanced for c in
                   [frozenset(c.edges) for c in u3.graph.cycles()])


def test_t2_prime_splits():
    for i in (1, 2, 3):
        nb = catalog.t2_prime_split(i)
        assert is_tangled(nb.omega)[0], nb.name
        assert len(nb.omega.balanced) == 2
    prism = catalog.t2_prime_split(3).omega
    mn = biased_minor(prism, {6, 7, 8}, set())
    assert biased_isomorphic(mn.omega, catalog.biased_2c3("T_2'").omega)


def test_contracted_tubes_shape():
    shape = catalog.graph_2c3_minus_e()
    for nb in catalog.contracted_tubes():
        g, _ = nb.omega.graph.drop_isolated()
        from bmlab.graph import graph_isomorphisms

        assert any(True for _ in graph_isomorphisms(g, shape)), nb.name
        assert classify_balance(nb.omega).tag == "almost-balanced"


def test_fat_theta_single_edges():
    k2 = MultiGraph(2, [(0, 1)])
    ft = catalog.fat_theta([k2, k2, k2])
    assert ft.graph.n == 2 and ft.graph.m == 3
    assert not ft.balanced  # contrabalanced theta


def test_fat_theta_balancing_vertices():
    p2 = MultiGraph(3, [(0, 2), (2, 1)])
    ft = catalog.fat_theta([p2, p2, p2])
    from bmlab.bias import balancing_vertices

    assert balancing_vertices(ft) == (0, 1)


def test_fat_theta_needs_two_parts():
    with pytest.raises(BadGlue):
        catalog.fat_theta([MultiGraph(2, [(0, 1)])])


def test_by_name_unknown():
    with pytest.raises(BmlabError):
        catalog.by_name("nonsense")


def test_tangled_family_small():
    fam = catalog.tangled_family(3, 6)
    # the six proper 2C3 biases are the only tangled graphs there
    assert len(fam) == 6
    targets = [nb.omega for nb in catalog.classify_2c3_proper()]
    for om in fam:
        assert any(biased_isomorphic(om, t) for t in targets)


def test_multigraph_generation_counts():
    gs = catalog.multigraphs_up_to_iso(3, 4)
    # derived by brute force: connected min-degree-2 loopless multigraphs
    # on <= 3 vertices with <= 4 edges: 2K2, 3K2, 4K2, the triangle, the
    # triangle with one doubled edge, and the doubled 2-path
    assert len(gs) == 6
    assert sorted((g.n, g.m) for g in gs) == [
        (2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (3, 4)
    ]
