"""Pattern families: cycles, connected graphs up to n nodes, and spasms."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .graph import Graph, SizeError, canonical_graph, canonicalize
from .treewidth import NiceTreeDecomposition, decompose

MAX_CONNECTED_NODES = 7
MAX_SPASM_NODES = 10

# the empty-graph stand-in for C1; it admits no homomorphisms by convention
C1_CERT = b"C1-sentinel"


@dataclass(frozen=True, eq=False)
class Pattern:
    graph: Graph
    root: int | None
    treewidth: int
    decomposition: NiceTreeDecomposition | None
    provenance: str
    certificate: bytes
    count_always_zero: bool = False

    @property
    def num_nodes(self) -> int:
        return self.graph.num_nodes

    @property
    def num_edges(self) -> int:
        return self.graph.num_edges

    def sort_key(self):
        return (self.num_nodes, self.num_edges, self.certificate)

    def to_dict(self) -> dict:
        return {
            "num_nodes": self.num_nodes,
            "edges": [list(e) for e in self.graph.edges],
            "root": self.root,
            "treewidth": self.treewidth,
            "provenance": self.provenance,
        }

    def __repr__(self) -> str:
        return f"Pattern({self.provenance}, n={self.num_nodes}, m={self.num_edges}, tw={self.treewidth})"


def make_pattern(g: Graph, root: int = 0, provenance: str = "custom") -> Pattern:
    tw, td = decompose(g, root)
    return Pattern(g, root, tw, td, provenance, canonicalize(g).certificate_bytes)


def c1_sentinel() -> Pattern:
    return Pattern(Graph(0), None, 0, None, "cycle(1)", C1_CERT, count_always_zero=True)


def canonical_pattern(g: Graph, provenance: str) -> Pattern:
    """Relabel ``g`` canonically and root it at canonical vertex 0."""
    cg, cf = canonical_graph(g)
    tw, td = decompose(cg, 0)
    return Pattern(cg, 0, tw, td, provenance, cf.certificate_bytes)


class PatternFamily:
    """Ordered, isomorphism-free list of patterns."""

    def __init__(self, name: str, patterns: Iterable[Pattern]):
        seen: dict[bytes, Pattern] = {}
        for p in patterns:
            seen.setdefault(p.certificate, p)
        self.name = name
        self.patterns: tuple[Pattern, ...] = tuple(sorted(seen.values(), key=Pattern.sort_key))

    @property
    def canonical_certs(self) -> list[bytes]:
        return [p.certificate for p in self.patterns]

    @property
    def max_treewidth(self) -> int:
        return max((p.treewidth for p in self.patterns), default=0)

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def __getitem__(self, i):
        return self.patterns[i]

    def __repr__(self) -> str:
        return f"PatternFamily({self.name!r}, {len(self)} patterns)"

    def manifest(self) -> dict:
        return {"name": self.name, "patterns": [p.to_dict() for p in self.patterns]}

    def to_json(self) -> str:
        return json.dumps(self.manifest(), indent=2)

    @classmethod
    def from_manifest(cls, data: dict) -> "PatternFamily":
        pats = []
        for d in data["patterns"]:
            if d.get("provenance") == "cycle(1)" and d.get("root") is None:
                pats.append(c1_sentinel())
                continue
            n = d.get("num_nodes")
            if n is None:
                n = 1 + max((max(e) for e in d["edges"]), default=0)
            pats.append(make_pattern(Graph(n, d["edges"]), d["root"], d.get("provenance", "custom")))
        return cls(data.get("name", "custom"), pats)


def family_cycles(max_len: int) -> PatternFamily:
    """[C1 sentinel, C2 = K2, C3, ..., C_max_len], each rooted at u0."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    pats = [c1_sentinel()]
    if max_len >= 2:
        pats.append(make_pattern(Graph(2, [(0, 1)]), 0, "cycle(2)"))
    for i in range(3, max_len + 1):
        g = Graph(i, [(j, (j + 1) % i) for j in range(i)])
        pats.append(make_pattern(g, 0, f"cycle({i})"))
    return PatternFamily(f"cycles:{max_len}", pats)


@lru_cache(maxsize=None)
def _graphs_on(n: int) -> tuple[Graph, ...]:
    """One canonical representative per isomorphism class of graphs on n nodes."""
    if n == 0:
        return (Graph(0),)
    found: dict[bytes, Graph] = {}
    # every graph on n nodes is some graph on n-1 nodes plus a vertex
    for base in _graphs_on(n - 1):
        for mask in range(1 << (n - 1)):
            edges = list(base.edges) + [(i, n - 1) for i in range(n - 1) if mask >> i & 1]
            cg, cf = canonical_graph(Graph(n, edges))
            found.setdefault(cf.certificate_bytes, cg)
    return tuple(found[c] for c in sorted(found))


def connected_graphs(n: int) -> list[Graph]:
    return [g for g in _graphs_on(n) if g.is_connected()]


def family_connected(max_nodes: int) -> PatternFamily:
    if not 1 <= max_nodes <= MAX_CONNECTED_NODES:
        raise SizeError(f"family_connected supports 1..{MAX_CONNECTED_NODES} nodes, got {max_nodes}")
    pats = [canonical_pattern(g, "connected_enum") for n in range(1, max_nodes + 1) for g in connected_graphs(n)]
    return PatternFamily(f"connected:{max_nodes}", pats)


def independent_partitions(g: Graph) -> Iterable[list[int]]:
    """Block assignments (restricted growth strings) whose blocks are independent sets."""
    n = g.num_nodes
    assign = [-1] * n
    block_nbrs: list[int] = []  # neighbourhood bitmask of each block

    def rec(v: int):
        if v == n:
            yield list(assign)
            return
        bit = 1 << v
        for b in range(len(block_nbrs)):
            if not block_nbrs[b] & bit:
                assign[v] = b
                saved = block_nbrs[b]
                block_nbrs[b] |= g.neighbor_bitset[v]
                yield from rec(v + 1)
                block_nbrs[b] = saved
        assign[v] = len(block_nbrs)
        block_nbrs.append(g.neighbor_bitset[v])
        yield from rec(v + 1)
        block_nbrs.pop()

    yield from rec(0)


def quotient(g: Graph, assign: Sequence[int]) -> Graph:
    k = max(assign) + 1 if assign else 0
    return Graph(k, {(assign[u], assign[v]) for u, v in g.edges})


def spasm(g: Graph, name: str | None = None) -> PatternFamily:
    """All loop-free quotients of ``g``, deduplicated up to isomorphism.

    Each quotient is rooted at the block holding vertex 0; among isomorphic
    quotients the first one enumerated wins.
    """
    if g.num_nodes > MAX_SPASM_NODES:
        raise SizeError(f"spasm supports at most {MAX_SPASM_NODES} nodes, got {g.num_nodes}")
    name = name or f"spasm(n={g.num_nodes},m={g.num_edges})"
    seen: dict[bytes, Pattern] = {}
    for assign in independent_partitions(g):
        q = quotient(g, assign)
        cert = canonicalize(q).certificate_bytes
        if cert not in seen:
            tw, td = decompose(q, assign[0])
            seen[cert] = Pattern(q, assign[0], tw, td, f"spasm_of({name})", cert)
    return PatternFamily(f"spasm:{name}", seen.values())


def spasm_of_cycle(k: int) -> PatternFamily:
    if k < 3:
        raise ValueError("cycle length must be >= 3")
    return spasm(Graph(k, [(i, (i + 1) % k) for i in range(k)]), f"C{k}")


def family_union(a: PatternFamily, b: PatternFamily, name: str | None = None) -> PatternFamily:
    """Isomorphism-deduplicated union; on overlap the pattern from ``a`` is kept."""
    return PatternFamily(name or f"union({a.name},{b.name})", list(a) + list(b))


def parse_family(spec: str) -> PatternFamily:
    """Build a family from a CLI spelling.

    ``cycles:L``, ``connected:N``, ``spasm:CK``, ``file:path.json`` and
    ``union:<spec>,<spec>,...``.
    """
    spec = spec.strip()
    kind, _, arg = spec.partition(":")
    if kind == "union":
        parts = [p for p in _split_union(arg) if p]
        if not parts:
            raise ValueError("union needs at least one member")
        fam = parse_family(parts[0])
        for p in parts[1:]:
            fam = family_union(fam, parse_family(p))
        return PatternFamily(spec, fam.patterns)
    if kind == "cycles":
        return family_cycles(int(arg))
    if kind == "connected":
        return family_connected(int(arg))
    if kind == "spasm":
        if not arg.upper().startswith("C"):
            raise ValueError(f"spasm family must name a cycle like C7, got {arg!r}")
        return spasm_of_cycle(int(arg[1:]))
    if kind == "file":
        with open(arg) as fh:
            return PatternFamily.from_manifest(json.load(fh))
    raise ValueError(f"unknown family spec {spec!r}")


def _split_union(arg: str) -> list[str]:
    # "spasm:C7,spasm:C8" and nested unions are not needed; split on commas
    # that begin a new "kind:" token
    out: list[str] = []
    for tok in arg.split(","):
        if ":" in tok or not out:
            out.append(tok)
        else:
            out[-1] += "," + tok
    return out
