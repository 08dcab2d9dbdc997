import itertools
import json

import networkx as nx
import pytest
from sympy.utilities.iterables import multiset_partitions

from conftest import labeled_graph_classes, mask_graph
from mose.graph import Graph, SizeError, canonicalize
from mose.patterns import (PatternFamily, c1_sentinel, family_connected, family_cycles, family_union,
                           make_pattern, parse_family, spasm, spasm_of_cycle)
from mose.treewidth import validate
from mose.zoo import complete, cycle, path


def iso_class(g):
    return canonicalize(g).certificate_bytes


def test_family_cycles_three():
    fam = family_cycles(3)
    assert [p.provenance for p in fam] == ["cycle(1)", "cycle(2)", "cycle(3)"]
    assert [p.treewidth for p in fam] == [0, 1, 2]
    assert fam[0].count_always_zero and fam[0].root is None
    assert fam[1].graph == complete(2)


def test_family_cycles_degenerate_and_long():
    assert [p.provenance for p in family_cycles(1)] == ["cycle(1)"]
    fam = family_cycles(8)
    assert len(fam) == 8
    assert fam[-1].num_nodes == 8 and fam[-1].num_edges == 8
    assert all(p.root == 0 for p in fam[1:])
    with pytest.raises(ValueError):
        family_cycles(0)


def test_family_connected_examples():
    fam = family_connected(3)
    assert len(fam) == 4
    assert [(p.num_nodes, p.num_edges) for p in fam] == [(1, 0), (2, 1), (3, 2), (3, 3)]
    assert len(family_connected(1)) == 1 and family_connected(1)[0].num_nodes == 1
    assert len(family_connected(5)) == 31


def test_family_connected_guard():
    with pytest.raises(SizeError):
        family_connected(8)
    with pytest.raises(SizeError):
        family_connected(0)


def test_family_connected_matches_oracle():
    """Independent count: brute-force iso classes of labeled graphs, filtered for connectivity."""
    sizes = []
    for n in range(1, 6):
        pairs, masks, best = labeled_graph_classes(n)
        reps = set(best.tolist())
        conn = [m for m in reps if nx.is_connected(_nx(mask_graph(n, pairs, m)))]
        fam_n = [p for p in family_connected(n) if p.num_nodes == n]
        assert len(fam_n) == len(conn)
        assert {iso_class(p.graph) for p in fam_n} == {iso_class(mask_graph(n, pairs, m)) for m in conn}
        sizes.append(len(family_connected(n)))
    assert sizes == sorted(sizes)


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.num_nodes))
    h.add_edges_from(g.edges)
    return h


def test_family_invariants():
    for fam in (family_connected(5), family_cycles(8), spasm_of_cycle(8)):
        certs = fam.canonical_certs
        assert len(set(certs)) == len(certs)
        keys = [p.sort_key() for p in fam]
        assert keys == sorted(keys)
        for p in fam:
            if p.count_always_zero:
                continue
            assert p.decomposition.nodes[p.decomposition.root].bag == (p.root,)
            assert validate(p.graph, p.decomposition) == []
            assert p.treewidth == p.decomposition.width


def test_spasm_small_cycles():
    s3 = spasm_of_cycle(3)
    assert len(s3) == 1 and iso_class(s3[0].graph) == iso_class(cycle(3))
    s4 = spasm_of_cycle(4)
    assert {iso_class(p.graph) for p in s4} == {iso_class(g) for g in (cycle(4), path(3), complete(2))}


def oracle_spasm(g: Graph) -> list[Graph]:
    """Quotients over every set partition (sympy) with independent blocks, deduped by networkx isomorphism."""
    out: list[nx.Graph] = []
    for parts in multiset_partitions(list(range(g.num_nodes))):
        block = {v: i for i, b in enumerate(parts) for v in b}
        if any(block[u] == block[v] for u, v in g.edges):
            continue
        q = nx.Graph()
        q.add_nodes_from(range(len(parts)))
        q.add_edges_from((block[u], block[v]) for u, v in g.edges)
        if not any(nx.is_isomorphic(q, r) for r in out
                   if r.number_of_nodes() == q.number_of_nodes() and r.number_of_edges() == q.number_of_edges()):
            out.append(q)
    return [Graph(q.number_of_nodes(), q.edges) for q in out]


@pytest.mark.parametrize("k", [5, 6, 7, 8])
def test_spasm_matches_independent_oracle(k):
    fam = spasm_of_cycle(k)
    oracle = oracle_spasm(cycle(k))
    assert len(fam) == len(oracle)
    assert set(fam.canonical_certs) == {iso_class(g) for g in oracle}


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7, 8])
def test_spasm_member_properties(k):
    fam = spasm_of_cycle(k)
    assert iso_class(cycle(k)) in fam.canonical_certs
    assert all(p.num_nodes <= k for p in fam)
    assert all(p.provenance == f"spasm_of(C{k})" for p in fam)
    # treewidth: at most 2 up to C7; spasm(C8) contains K4 (merge opposite pairs)
    assert fam.max_treewidth == (3 if k == 8 else 2)


def test_spasm_c8_contains_k4():
    certs = spasm_of_cycle(8).canonical_certs
    assert iso_class(complete(4)) in certs
    tw3 = [p for p in spasm_of_cycle(8) if p.treewidth == 3]
    assert [(p.num_nodes, p.num_edges) for p in tw3] == [(4, 6)]


def test_spasm_guard_and_edgeless():
    with pytest.raises(SizeError):
        spasm(cycle(11))
    # an edgeless graph collapses to every size 1..n
    assert sorted(p.num_nodes for p in spasm(Graph(3))) == [1, 2, 3]


def test_union_examples():
    a = family_cycles(3)
    assert family_union(a, a).canonical_certs == a.canonical_certs
    c3 = make_pattern(cycle(3), 0, "custom")
    u = family_union(family_connected(3), PatternFamily("x", [c3]))
    assert len(u) == 4
    s7, s8 = spasm_of_cycle(7), spasm_of_cycle(8)
    overlap = set(s7.canonical_certs) & set(s8.canonical_certs)
    u78 = family_union(s7, s8)
    assert len(u78) == len(s7) + len(s8) - len(overlap)
    # on overlap the first family's pattern is kept
    for p in u78:
        if p.certificate in overlap:
            assert p.provenance == "spasm_of(C7)"


def test_manifest_roundtrip(tmp_path):
    fam = family_union(family_cycles(4), family_connected(3), "mix")
    data = json.loads(fam.to_json())
    assert data["name"] == "mix"
    assert set(data["patterns"][0]) >= {"edges", "root", "treewidth", "provenance"}
    back = PatternFamily.from_manifest(data)
    assert back.canonical_certs == fam.canonical_certs
    assert [p.root for p in back] == [p.root for p in fam]
    path_ = tmp_path / "m.json"
    path_.write_text(fam.to_json())
    assert parse_family(f"file:{path_}").canonical_certs == fam.canonical_certs


def test_parse_family_spellings():
    assert len(parse_family("cycles:5")) == 5
    assert len(parse_family("connected:4")) == 10
    assert len(parse_family("spasm:C4")) == 3
    u = parse_family("union:spasm:C7,spasm:C8")
    assert u.name == "union:spasm:C7,spasm:C8"
    assert u.canonical_certs == family_union(spasm_of_cycle(7), spasm_of_cycle(8)).canonical_certs
    assert len(parse_family("union:cycles:3,connected:3")) == 5  # C1 sentinel + 4 connected
    for bad in ("bogus:3", "spasm:K4", "union:"):
        with pytest.raises(ValueError):
            parse_family(bad)


def test_c1_sentinel_is_distinct_from_k1():
    assert c1_sentinel().certificate != family_connected(1)[0].certificate
    assert len(family_union(family_cycles(1), family_connected(1))) == 2
