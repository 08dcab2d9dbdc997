import json

import pytest

from mose import lab
from mose.graph import canonicalize
from mose.patterns import family_cycles, spasm_of_cycle
from mose.zoo import complete, cycle, fig1_g, fig1_h, rook_graph, shrikhande, two_triangles


def test_fig_checks_pass():
    for check in (lab.check_fig1, lab.check_fig5, lab.check_fig3, lab.check_rwse_1wl_incomparable):
        rep = check()
        assert rep.passed, (rep.name, rep.details)
        json.dumps(rep.to_dict(), default=str)


def test_fig1_report_details():
    d = lab.check_fig1().details
    assert d["rwse_max_abs_diff_u"] < 1e-12 and d["rwse_max_abs_diff_v"] < 1e-12
    assert d["wl1_colors_differ_u"] and d["wl1_colors_differ_v"]
    # G is a tree: no 6-cycle subgraph, while H has exactly one
    assert (d["c6_subgraph_count_g"], d["c6_subgraph_count_h"]) == (0, 1)
    assert d["mose_c6_separates_v"] and d["mose_c6_v1"] != d["mose_c6_v2"]


def test_fig3_witness_has_treewidth_3():
    rep = lab.check_fig3()
    assert rep.details["wl2_equal"] and rep.details["rwse_equal"] and rep.details["mose_differs"]
    (wit,) = rep.witnesses
    assert wit["treewidth"] == 3 and wit["provenance"].startswith("spasm_of(")


def test_sweeps_small():
    pairs = lab.curated_pairs() + lab.random_pairs(40, seed=3)
    assert lab.check_prop_rwse_is_mose(samples=10, seed=3).passed
    assert lab.check_prop_2wl_dominates_rwse(pairs=pairs, seed=3).passed
    assert lab.check_prop_tw_bound(lab.tree_family(5), pairs, 3).passed
    assert lab.check_prop_tw_bound(family_cycles(8), pairs, 3).passed
    assert lab.check_prop_motif_parameter(pairs[:20]).passed


def test_tw_bound_rejects_treewidth_3():
    with pytest.raises(ValueError):
        lab.check_prop_tw_bound(lab.spasm_c7_c8(), [])


def test_tw_bound_examples():
    pair = [("c6-2k3", cycle(6), two_triangles())]
    assert lab.check_prop_tw_bound(lab.tree_family(5), pair).details["wl_equal_pairs"] == 1
    assert lab.mose_labels_equal(cycle(6), two_triangles(), lab.tree_family(5))
    rs = [("rook-shrik", rook_graph(4), shrikhande())]
    rep = lab.check_prop_tw_bound(family_cycles(8), rs)
    assert rep.passed and rep.details["wl_equal_pairs"] == 1


def test_single_pattern_witnesses():
    stage, p = lab.check_prop_single_pattern(cycle(6), two_triangles())
    assert canonicalize(p.graph).certificate_bytes == canonicalize(cycle(3)).certificate_bytes
    stage, p = lab.check_prop_single_pattern(rook_graph(4), shrikhande())
    assert p.certificate in lab.spasm_c7_c8().canonical_certs
    # fig1: node counts differ so K1 is already a witness; C6 separates as well
    stage, p = lab.check_prop_single_pattern(fig1_g().graph, fig1_h().graph)
    assert p.num_nodes == 1
    c6 = [q for q in family_cycles(6) if q.num_nodes == 6]
    assert not lab.mose_labels_equal(fig1_g().graph, fig1_h().graph, lab.PatternFamily("c6", c6))
    with pytest.raises(lab.NoWitnessFound):
        lab.check_prop_single_pattern(cycle(5), cycle(5))


def test_subgraph_count():
    assert lab.subgraph_count(cycle(3), complete(4)) == 4
    assert lab.subgraph_count(cycle(4), complete(4)) == 3
    assert lab.subgraph_count(cycle(6), fig1_g().graph) == 0


def test_random_pairs_deterministic():
    a = lab.random_pairs(30, seed=5)
    b = lab.random_pairs(30, seed=5)
    assert [(n, g, h) for n, g, h in a] == [(n, g, h) for n, g, h in b]
    assert all(g.num_nodes <= 16 and h.num_nodes <= 16 for _, g, h in a)


def test_reports_deterministic():
    a = lab.check_prop_2wl_dominates_rwse(samples=30, seed=11)
    b = lab.check_prop_2wl_dominates_rwse(samples=30, seed=11)
    assert a.details == b.details and a.witnesses == b.witnesses
