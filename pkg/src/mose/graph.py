"""Simple undirected graphs, edge-list/JSON I/O and exact canonical forms."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

BITSET_WIDTH = 128
MAX_CANON_NODES = 16


class GraphError(ValueError):
    """Invalid graph input."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeError(ValueError):
    """An input exceeds an enumeration or table guard."""


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    ``labels`` is an optional per-node integer passed through untouched
    (atom types and the like); nothing in the encoders reads it.
    """

    __slots__ = ("num_nodes", "edges", "adjacency", "neighbor_bitset", "labels", "__dict__")

    def __init__(self, num_nodes: int, edges: Iterable[Sequence[int]] = (), labels=None):
        if num_nodes < 0:
            raise GraphError("num_nodes must be non-negative")
        pairs = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < num_nodes and 0 <= v < num_nodes):
                raise GraphError(f"edge ({u}, {v}) out of bounds for {num_nodes} nodes")
            pairs.add((u, v) if u < v else (v, u))
        adj: list[list[int]] = [[] for _ in range(num_nodes)]
        for u, v in pairs:
            adj[u].append(v)
            adj[v].append(u)
        self.num_nodes = num_nodes
        self.edges = tuple(sorted(pairs))
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        if num_nodes <= BITSET_WIDTH:
            self.neighbor_bitset = tuple(sum(1 << w for w in a) for a in self.adjacency)
        else:
            self.neighbor_bitset = None
        if labels is not None:
            labels = tuple(int(x) for x in labels)
            if len(labels) != num_nodes:
                raise GraphError("labels must have one entry per node")
        self.labels = labels

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        if self.neighbor_bitset is not None:
            return bool(self.neighbor_bitset[u] >> v & 1)
        return v in self.adjacency[u]

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.num_nodes, self.num_nodes), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        a.setflags(write=False)
        return a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        labels = None
        if self.labels is not None:
            labels = [0] * self.num_nodes
            for v, x in enumerate(self.labels):
                labels[perm[v]] = x
        return Graph(self.num_nodes, ((perm[u], perm[v]) for u, v in self.edges), labels)

    def disjoint_union(self, other: "Graph") -> "Graph":
        k = self.num_nodes
        return Graph(k + other.num_nodes, list(self.edges) + [(u + k, v + k) for u, v in other.edges])

    def components(self) -> list[list[int]]:
        seen = [False] * self.num_nodes
        comps = []
        for s in range(self.num_nodes):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.num_nodes <= 1 or len(self.components()) == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.num_nodes == other.num_nodes and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.num_nodes, self.edges))

    def __repr__(self) -> str:
        return f"Graph(num_nodes={self.num_nodes}, num_edges={self.num_edges})"

    def to_dict(self) -> dict:
        d = {"num_nodes": self.num_nodes, "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Graph":
        return cls(int(d["num_nodes"]), d.get("edges", []), d.get("labels"))


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``m`` lines of ``u v`` edge-list format."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty input", 1)
    lineno, header = lines[0]
    try:
        n, m = (int(x) for x in header.split())
    except ValueError:
        raise ParseError(f"expected 'n m' header, got {header!r}", lineno) from None
    if n < 0 or m < 0:
        raise ParseError("negative count in header", lineno)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges but {len(body)} edge lines follow", lineno)
    edges = []
    for lineno, ln in body:
        parts = ln.split()
        try:
            u, v = (int(x) for x in parts)
        except ValueError:
            raise ParseError(f"expected 'u v', got {ln!r}", lineno) from None
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of bounds [0, {n})", lineno)
        edges.append((u, v))
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    return "\n".join([f"{g.num_nodes} {g.num_edges}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def load_json_graphs(text: str) -> list[tuple[str, Graph]]:
    """Read ``{"graphs": [{"num_nodes", "edges", "id"?}, ...]}``."""
    data = json.loads(text)
    out = []
    for i, d in enumerate(data["graphs"]):
        try:
            g = Graph.from_dict(d)
        except (KeyError, TypeError) as exc:
            raise GraphError(f"graph {i}: malformed entry ({exc})") from exc
        out.append((str(d.get("id", i)), g))
    return out


def dump_json_graphs(graphs: Sequence[tuple[str, Graph]]) -> str:
    return json.dumps({"graphs": [{"id": gid, **g.to_dict()} for gid, g in graphs]})


# ---------------------------------------------------------------------------
# canonical forms

@dataclass(frozen=True)
class CanonicalForm:
    canonical_edge_list: tuple[tuple[int, int], ...]
    certificate_bytes: bytes
    labeling: tuple[int, ...]  # labeling[v] = canonical position of v


def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition; cell order is label-invariant."""
    bits = g.neighbor_bitset
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out = []
        for idx, c in enumerate(cells):
            if len(c) == 1:
                out.append(c)
                continue
            keyed = {}
            for v in c:
                key = tuple((bits[v] & m).bit_count() for m in masks)
                keyed.setdefault(key, []).append(v)
            for key in sorted(keyed):
                out.append(keyed[key])
        if len(out) == len(cells):
            return out
        cells = out


def _twin_classes(g: Graph, cell: list[int]) -> list[int]:
    """One representative per class of (open or closed) twins inside ``cell``."""
    bits = g.neighbor_bitset
    reps: list[int] = []
    for v in cell:
        for r in reps:
            if bits[v] & ~(1 << r) == bits[r] & ~(1 << v):
                break
        else:
            reps.append(v)
    return reps


def _leaf_code(g: Graph, order: list[int]) -> int:
    pos = {v: i for i, v in enumerate(order)}
    n = g.num_nodes
    code = 0
    for i in range(n):
        row = 0
        for w in g.adjacency[order[i]]:
            j = pos[w]
            if j > i:
                row |= 1 << (n - 1 - j)
        code = (code << n) | row
    return code


def canonicalize(g: Graph) -> CanonicalForm:
    """Canonical labeling by refinement + individualization search.

    Leaves of the search tree are discrete partitions; the certificate is the
    lexicographically smallest upper-triangular adjacency string among them.
    Branches that only swap twin vertices are pruned (the swap is an
    automorphism fixing the individualized prefix).
    """
    n = g.num_nodes
    if n > MAX_CANON_NODES:
        raise SizeError(f"canonicalize supports at most {MAX_CANON_NODES} nodes, got {n}")
    best: list = [None, None]

    def search(cells):
        cells = _refine(g, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _leaf_code(g, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        cell = cells[target]
        for v in _twin_classes(g, cell):
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search([list(range(n))] if n else [])
    order = best[1] if best[1] is not None else []
    labeling = [0] * n
    for i, v in enumerate(order):
        labeling[v] = i
    edges = tuple(sorted(tuple(sorted((labeling[u], labeling[v]))) for u, v in g.edges))
    nbytes = max(1, (n * n + 7) // 8)
    code = best[0] or 0
    cert = n.to_bytes(1, "big") + code.to_bytes(nbytes, "big")
    return CanonicalForm(edges, cert, tuple(labeling))


def canonical_graph(g: Graph) -> tuple[Graph, CanonicalForm]:
    cf = canonicalize(g)
    return Graph(g.num_nodes, cf.canonical_edge_list), cf
