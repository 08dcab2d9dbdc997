"""Dataset ingestion, Erdős–Rényi synthesis with exact targets, and batch encoding."""
from __future__ import annotations

import json
import logging
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .encodings import EncodingMatrix, lappe, mose, rwse, write_manifest
from .graph import Graph, GraphError, format_edge_list, load_json_graphs, parse_edge_list
from .hom import WeightScheme
from .lp import fractional_domination
from .patterns import PatternFamily

log = logging.getLogger(__name__)


@dataclass
class Dataset:
    graphs: list[tuple[str, Graph]]
    source: str = ""
    format: str = ""

    def __post_init__(self):
        ids = [gid for gid, _ in self.graphs]
        if len(set(ids)) != len(ids):
            raise GraphError("dataset graph ids must be unique")

    def __len__(self) -> int:
        return len(self.graphs)


def load_dataset(path: str | os.PathLike, fmt: str) -> Dataset:
    path = Path(path)
    if fmt == "json":
        return Dataset(load_json_graphs(path.read_text()), str(path), fmt)
    if fmt == "edgelist-dir":
        if not path.is_dir():
            raise FileNotFoundError(f"{path} is not a directory")
        files = sorted(p for p in path.iterdir() if p.is_file() and not p.name.startswith("."))
        return Dataset([(p.stem, parse_edge_list(p.read_text())) for p in files], str(path), fmt)
    raise ValueError(f"unknown dataset format {fmt!r}")


# ---------------------------------------------------------------------------
# synthetic ER graphs

@dataclass(frozen=True)
class SynthSpec:
    count: int = 10000
    node_range: tuple[int, int] = (16, 32)
    density_range: tuple[float, float] = (0.25, 0.75)
    seed: int = 0
    connected_only: bool = False

    def __post_init__(self):
        lo, hi = self.node_range
        if self.count < 0 or lo < 1 or hi < lo:
            raise ValueError(f"invalid count/node_range: {self.count}, {self.node_range}")
        plo, phi = self.density_range
        if not (0 < plo <= phi <= 1):
            raise ValueError(f"density_range must satisfy 0 < min <= max <= 1, got {self.density_range}")


def generate_er(spec: SynthSpec) -> Dataset:
    """Seeded ER sample using numpy's Philox4x64-10 counter-based generator.

    One stream per dataset. Per graph the draws are: n = integers(lo, hi+1),
    p = uniform(plo, phi), then one uniform per vertex pair (u < v, row-major)
    with the edge kept when the draw is < p. With ``connected_only`` a
    disconnected sample is discarded and redrawn from the same stream.
    """
    rng = np.random.Generator(np.random.Philox(spec.seed))
    lo, hi = spec.node_range
    plo, phi = spec.density_range
    graphs = []
    while len(graphs) < spec.count:
        n = int(rng.integers(lo, hi + 1))
        p = float(rng.uniform(plo, phi)) if phi > plo else plo
        iu, ju = np.triu_indices(n, 1)
        keep = rng.random(iu.size) < p
        g = Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))
        if spec.connected_only and not g.is_connected():
            continue
        graphs.append((f"er_{len(graphs):05d}", g))
    return Dataset(graphs, f"synth:seed={spec.seed}", "synth")


def synth_document(spec: SynthSpec) -> dict:
    ds = generate_er(spec)
    out = []
    for gid, g in ds.graphs:
        target = fractional_domination(g)
        out.append({
            "id": gid,
            "num_nodes": g.num_nodes,
            "edges": [list(e) for e in g.edges],
            "target_rational": f"{target.numerator}/{target.denominator}",
            "target": float(target),
            "target_decimal": format(float(target), ".17g"),
        })
    s = asdict(spec)
    s["prng"] = "numpy.random.Philox"
    return {"spec": s, "graphs": out}


def write_synth(spec: SynthSpec, out) -> None:
    """Write the synthetic dataset as compact JSON to a path or an open text stream."""
    doc = synth_document(spec)
    if hasattr(out, "write"):
        json.dump(doc, out, separators=(",", ":"))
        out.write("\n")
        return
    with open(out, "w") as fh:
        json.dump(doc, fh, separators=(",", ":"))
        fh.write("\n")


# ---------------------------------------------------------------------------
# batch encoding

@dataclass
class EncodeConfig:
    scheme: str = "mose"  # mose | rwse | lappe
    family: PatternFamily | None = None
    weighting: WeightScheme = field(default_factory=WeightScheme)
    log_scale: bool = False
    length: int = 20
    dim: int = 8
    output: str = "csv"  # csv (one file per graph) | jsonl (one consolidated file)

    def describe(self) -> dict:
        if self.scheme == "mose":
            return {"kind": "mose", "family": self.family.name, "weighting": str(self.weighting),
                    "log_scale": self.log_scale}
        if self.scheme == "rwse":
            return {"kind": "rwse", "length": self.length}
        return {"kind": "lappe", "dim": self.dim}


def encode_graph(gid: str, g: Graph, cfg: EncodeConfig) -> EncodingMatrix:
    if cfg.scheme == "mose":
        if cfg.family is None:
            raise ValueError("mose needs a pattern family")
        return mose(g, cfg.family, cfg.weighting, cfg.log_scale, graph_id=gid)
    if cfg.scheme == "rwse":
        return rwse(g, cfg.length, graph_id=gid)
    if cfg.scheme == "lappe":
        return lappe(g, cfg.dim, graph_id=gid)
    raise ValueError(f"unknown scheme {cfg.scheme!r}")


def _encode_one(args):
    gid, g, cfg = args
    t0 = time.perf_counter()
    try:
        enc = encode_graph(gid, g, cfg)
        return gid, enc, None, time.perf_counter() - t0
    except (ValueError, OverflowError) as exc:
        return gid, None, f"{type(exc).__name__}: {exc}", time.perf_counter() - t0


@dataclass
class EncodeSummary:
    encoded: int
    failed: int
    errors: list[dict]
    mean_seconds: float

    @property
    def ok(self) -> bool:
        return self.failed == 0


_SAFE = re.compile(r"[^A-Za-z0-9._-]")


def encode_dataset(ds: Dataset, cfg: EncodeConfig, out_dir: str | os.PathLike, jobs: int = 1) -> EncodeSummary:
    """Encode every graph; per-graph failures go to errors.json instead of aborting."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = int(os.environ.get("MOSE_JOBS", jobs))
    work = [(gid, g, cfg) for gid, g in ds.graphs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_encode_one, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        results = [_encode_one(w) for w in work]

    errors, times = [], []
    jsonl = open(out_dir / "encodings.jsonl", "w") if cfg.output == "jsonl" else None
    try:
        for gid, enc, err, dt in results:
            times.append(dt)
            if err is not None:
                log.warning("graph %s failed: %s", gid, err)
                errors.append({"id": gid, "error": err})
                continue
            if jsonl is not None:
                jsonl.write(json.dumps(enc.to_json_obj()) + "\n")
            else:
                (out_dir / f"{_SAFE.sub('_', gid)}.csv").write_text(enc.to_csv())
    finally:
        if jsonl is not None:
            jsonl.close()
    with open(out_dir / "errors.json", "w") as fh:
        json.dump(errors, fh, indent=2)
    write_manifest(out_dir / "manifest.json", cfg.family if cfg.scheme == "mose" else None,
                   cfg.describe(), __version__)
    mean = float(np.mean(times)) if times else 0.0
    return EncodeSummary(len(results) - len(errors), len(errors), errors, mean)


def write_edge_list_dir(ds: Dataset, out_dir: str | os.PathLike) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for gid, g in ds.graphs:
        (out_dir / f"{_SAFE.sub('_', gid)}.txt").write_text(format_edge_list(g))
