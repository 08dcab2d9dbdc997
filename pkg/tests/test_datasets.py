import json

import numpy as np
import pytest

from mose.datasets import (Dataset, EncodeConfig, SynthSpec, encode_dataset, generate_er, load_dataset,
                           synth_document, write_edge_list_dir, write_synth)
from mose.graph import Graph, GraphError, ParseError, dump_json_graphs
from mose.hom import WeightScheme
from mose.lp import fractional_domination
from mose.patterns import family_cycles
from mose.zoo import complete, cycle, petersen


def test_er_full_density_gives_clique():
    ds = generate_er(SynthSpec(count=1, node_range=(3, 3), density_range=(1.0, 1.0), seed=5))
    assert ds.graphs[0][1] == complete(3)


@pytest.mark.parametrize("density", [(0.0, 0.0), (0.0, 0.5), (0.6, 0.5), (0.5, 1.2)])
def test_er_rejects_bad_density(density):
    with pytest.raises(ValueError):
        SynthSpec(count=1, node_range=(5, 5), density_range=density)


def test_er_rejects_bad_nodes():
    with pytest.raises(ValueError):
        SynthSpec(node_range=(10, 5))


def test_er_defaults_seed_42():
    spec = SynthSpec(seed=42)
    assert (spec.count, spec.node_range, spec.density_range) == (10000, (16, 32), (0.25, 0.75))
    ds = generate_er(spec)
    assert len(ds) == 10000
    sizes = np.array([g.num_nodes for _, g in ds.graphs])
    assert sizes.min() >= 16 and sizes.max() <= 32
    assert set(sizes.tolist()) == set(range(16, 33))
    # edge density tracks the sampled p range
    dens = np.array([g.num_edges / (g.num_nodes * (g.num_nodes - 1) / 2) for _, g in ds.graphs])
    assert abs(dens.mean() - 0.5) < 0.01


def test_er_reproducible_and_seed_sensitive():
    a = generate_er(SynthSpec(count=30, seed=1))
    b = generate_er(SynthSpec(count=30, seed=1))
    c = generate_er(SynthSpec(count=30, seed=2))
    assert a.graphs == b.graphs
    assert a.graphs != c.graphs


def test_connected_only():
    ds = generate_er(SynthSpec(count=50, node_range=(8, 12), density_range=(0.05, 0.15), seed=3,
                               connected_only=True))
    assert len(ds) == 50 and all(g.is_connected() for _, g in ds.graphs)


def test_synth_document_targets():
    doc = synth_document(SynthSpec(count=5, node_range=(6, 9), seed=11))
    assert doc["spec"]["prng"] == "numpy.random.Philox"
    assert json.loads(json.dumps(doc["spec"]))["node_range"] == [6, 9]
    for rec in doc["graphs"]:
        g = Graph(rec["num_nodes"], rec["edges"])
        exact = fractional_domination(g)
        assert rec["target_rational"] == f"{exact.numerator}/{exact.denominator}"
        assert rec["target"] == float(exact)
        assert float(rec["target_decimal"]) == float(exact)


def test_write_synth_byte_identical(tmp_path):
    spec = SynthSpec(count=40, seed=9)
    write_synth(spec, tmp_path / "a.json")
    write_synth(spec, tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    json.loads((tmp_path / "a.json").read_text())


# -- ingestion -----------------------------------------------------------------

def test_load_json_and_edgelist_dir(tmp_path):
    graphs = [("a", cycle(4)), ("b", petersen())]
    (tmp_path / "d.json").write_text(dump_json_graphs(graphs))
    ds = load_dataset(tmp_path / "d.json", "json")
    assert ds.graphs == graphs and ds.format == "json"
    write_edge_list_dir(ds, tmp_path / "el")
    ds2 = load_dataset(tmp_path / "el", "edgelist-dir")
    assert ds2.graphs == graphs


def test_load_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_dataset(tmp_path / "missing", "edgelist-dir")
    with pytest.raises(ValueError):
        load_dataset(tmp_path, "xml")
    (tmp_path / "bad").mkdir()
    (tmp_path / "bad" / "g.txt").write_text("2 1\n0 0\n")
    with pytest.raises(ParseError):
        load_dataset(tmp_path / "bad", "edgelist-dir")
    with pytest.raises(GraphError):
        Dataset([("x", cycle(3)), ("x", cycle(4))])


# -- batch encoding ----------------------------------------------------------------

def test_encode_empty_dataset(tmp_path):
    s = encode_dataset(Dataset([]), EncodeConfig(scheme="rwse", length=4), tmp_path)
    assert s.ok and s.encoded == 0
    assert json.loads((tmp_path / "errors.json").read_text()) == []
    assert (tmp_path / "manifest.json").exists()


def test_isolated_node_is_recorded_not_fatal(tmp_path):
    ds = Dataset([("ok", cycle(5)), ("iso", Graph(3, [(0, 1)])), ("ok2", petersen())])
    s = encode_dataset(ds, EncodeConfig(scheme="rwse", length=5), tmp_path)
    assert (s.encoded, s.failed) == (2, 1) and not s.ok
    errs = json.loads((tmp_path / "errors.json").read_text())
    assert [e["id"] for e in errs] == ["iso"] and "DomainError" in errs[0]["error"]
    assert sorted(p.name for p in tmp_path.glob("*.csv")) == ["ok.csv", "ok2.csv"]


def test_encode_jsonl_and_manifest(tmp_path):
    ds = Dataset([("c5", cycle(5)), ("p", petersen())])
    cfg = EncodeConfig(scheme="mose", family=family_cycles(5), weighting=WeightScheme.constant(),
                       output="jsonl")
    s = encode_dataset(ds, cfg, tmp_path)
    assert s.ok
    lines = (tmp_path / "encodings.jsonl").read_text().splitlines()
    objs = [json.loads(x) for x in lines]
    assert [o["id"] for o in objs] == ["c5", "p"]
    # C1 sentinel, then closed k-walks (A^k)_00 for k = 2..5
    a = cycle(5).adjacency_matrix
    assert objs[0]["rows"][0] == [0] + [int(np.linalg.matrix_power(a, k)[0, 0]) for k in range(2, 6)]
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert man["scheme"] == {"kind": "mose", "family": "cycles:5", "weighting": "const", "log_scale": False}
    assert len(man["family"]["patterns"]) == 5


def test_parallel_matches_serial(tmp_path, monkeypatch):
    ds = generate_er(SynthSpec(count=12, node_range=(8, 14), seed=4))
    cfg = EncodeConfig(scheme="mose", family=family_cycles(6))
    encode_dataset(ds, cfg, tmp_path / "serial", jobs=1)
    monkeypatch.setenv("MOSE_JOBS", "2")
    encode_dataset(ds, cfg, tmp_path / "par", jobs=1)
    for gid, _ in ds.graphs:
        assert (tmp_path / "serial" / f"{gid}.csv").read_text() == (tmp_path / "par" / f"{gid}.csv").read_text()


def test_encode_lappe(tmp_path):
    ds = Dataset([("c6", cycle(6)), ("tiny", complete(2))])
    s = encode_dataset(ds, EncodeConfig(scheme="lappe", dim=3), tmp_path)
    # K2 has only 2 nodes, so dim 3 is a per-graph size error
    assert (s.encoded, s.failed) == (1, 1)
    assert "SizeError" in s.errors[0]["error"]
