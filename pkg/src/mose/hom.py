"""Weighted, rooted homomorphism counting.

Two routes: a brute-force enumerator used as the reference, and a dynamic
program over a pattern's nice tree decomposition that produces the rooted
count at every target node in one pass.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, SizeError
from .patterns import Pattern
from .treewidth import FORGET, INTRODUCE, JOIN, LEAF

UINT128_MAX = (1 << 128) - 1


class DomainError(ValueError):
    """A weighting is undefined on the target (e.g. inverse degree of an isolated node)."""


class CountOverflowError(OverflowError):
    pass


@dataclass(frozen=True)
class WeightScheme:
    kind: str = "const"  # "const" | "invdeg" | "table"
    table: tuple[float, ...] | None = None

    @classmethod
    def constant(cls) -> "WeightScheme":
        return cls("const")

    @classmethod
    def inverse_degree(cls) -> "WeightScheme":
        return cls("invdeg")

    @classmethod
    def from_table(cls, values) -> "WeightScheme":
        values = tuple(float(x) for x in values)
        if any(x < 0 or not math.isfinite(x) for x in values):
            raise ValueError("weights must be finite and non-negative")
        return cls("table", values)

    @classmethod
    def parse(cls, name: str) -> "WeightScheme":
        aliases = {"const": "const", "constant": "const", "invdeg": "invdeg", "inverse_degree": "invdeg"}
        if name not in aliases:
            raise ValueError(f"unknown weighting {name!r}")
        return cls(aliases[name])

    @property
    def is_constant(self) -> bool:
        return self.kind == "const"

    def node_weights(self, g: Graph) -> np.ndarray:
        if self.kind == "const":
            return np.ones(g.num_nodes)
        if self.kind == "invdeg":
            deg = g.degrees
            if g.num_nodes and deg.min() == 0:
                raise DomainError(f"inverse-degree weighting undefined: node {int(np.argmin(deg))} is isolated")
            return 1.0 / deg
        if len(self.table) != g.num_nodes:
            raise ValueError("weight table length does not match target size")
        return np.asarray(self.table, dtype=float)

    def __str__(self) -> str:
        return self.kind


@dataclass(frozen=True)
class RootedCountVector:
    values: np.ndarray
    pattern_id: bytes


# ---------------------------------------------------------------------------
# brute force

def _guard(pattern: Graph, target: Graph) -> None:
    n = target.num_nodes
    if pattern.num_nodes > 8 or (n > 1 and pattern.num_nodes * math.log2(n) > 40):
        raise SizeError("brute-force enumeration guard exceeded")


def _enumerate(pattern: Graph, target: Graph, w, fixed: dict[int, int]):
    """Sum over every edge-preserving map extending ``fixed``.

    Plain backtracking; the only pruning is that a vertex with an already
    mapped neighbour can only go to a common neighbour of those images,
    which drops exactly the maps the edge filter would reject.
    """
    k, n = pattern.num_nodes, target.num_nodes
    f = [-1] * k
    for a, b in fixed.items():
        f[a] = b
    const = w is None
    total = 0 if const else 0.0
    if any(f[u] >= 0 and not target.has_edge(f[v], f[u]) for v in fixed for u in pattern.adjacency[v]):
        return total

    # visit order: repeatedly take the vertex with most already-placed neighbours
    order, placed = [], set(fixed)
    while len(placed) < k:
        v = max((v for v in range(k) if v not in placed),
                key=lambda v: (sum(u in placed for u in pattern.adjacency[v]), -v))
        order.append(v)
        placed.add(v)
    everyone = range(n)
    tadj = target.adjacency

    def rec(i: int):
        nonlocal total
        if i == len(order):
            if const:
                total += 1
            else:
                total += math.prod(w[f[v]] for v in range(k))
            return
        v = order[i]
        anchors = [f[u] for u in pattern.adjacency[v] if f[u] >= 0]
        cands = tadj[anchors[0]] if anchors else everyone
        for t in cands:
            if all(target.has_edge(t, a) for a in anchors[1:]):
                f[v] = t
                rec(i + 1)
        f[v] = -1

    rec(0)
    return total


def brute_force_hom(pattern: Graph, target: Graph, weighting: WeightScheme = WeightScheme()):
    """Sum over all homomorphisms of the product of image weights, by enumeration."""
    _guard(pattern, target)
    w = None if weighting.is_constant else weighting.node_weights(target)
    return _enumerate(pattern, target, w, {})


def brute_force_rooted(pattern: Graph, pattern_root: int, target: Graph, target_node: int,
                       weighting: WeightScheme = WeightScheme()):
    _guard(pattern, target)
    w = None if weighting.is_constant else weighting.node_weights(target)
    return _enumerate(pattern, target, w, {pattern_root: target_node})


def count_injective(pattern: Graph, target: Graph) -> int:
    """Injective homomorphisms (subgraph embeddings) by backtracking."""
    k, n = pattern.num_nodes, target.num_nodes
    if k > n:
        return 0
    f = [-1] * k
    used = [False] * n

    def rec(v: int) -> int:
        if v == k:
            return 1
        total = 0
        for t in range(n):
            if used[t] or not all(f[u] < 0 or target.has_edge(t, f[u]) for u in pattern.adjacency[v]):
                continue
            f[v], used[t] = t, True
            total += rec(v + 1)
            f[v], used[t] = -1, False
        return total

    return rec(0)


# ---------------------------------------------------------------------------
# tree-decomposition DP

def _table_dtype(pattern: Pattern, target: Graph, weighting: WeightScheme):
    if not weighting.is_constant:
        return np.float64
    # a table entry counts extensions of forgotten vertices: at most n^k
    if pattern.num_nodes * math.log2(max(target.num_nodes, 2)) < 62:
        return np.int64
    return object


def dp_rooted_counts(pattern: Pattern, target: Graph, weighting: WeightScheme = WeightScheme()) -> RootedCountVector:
    """ω-Hom rooted at ``pattern.root`` for every target node at once."""
    n = target.num_nodes
    if pattern.count_always_zero:
        dtype = np.int64 if weighting.is_constant else np.float64
        return RootedCountVector(np.zeros(n, dtype=dtype), pattern.certificate)
    ntd = pattern.decomposition
    if ntd is None:
        raise ValueError(f"{pattern!r} has no tree decomposition")
    if n == 0:
        raise ValueError("target graph is empty")
    dtype = _table_dtype(pattern, target, weighting)
    adj = np.asarray(target.adjacency_matrix, dtype=dtype)
    weights = None if weighting.is_constant else weighting.node_weights(target)
    exact = dtype is object

    tables: dict[int, tuple[tuple[int, ...], np.ndarray]] = {}
    for i in ntd.postorder():
        nd = ntd.nodes[i]
        if nd.kind == LEAF:
            bag, t = (), np.array(1, dtype=dtype)
        elif nd.kind == INTRODUCE:
            cbag, ct = tables.pop(nd.children[0])
            bag = cbag + (nd.vertex,)
            k = len(bag)
            t = ct[..., None]
            factor = None
            if nd.owns_weight and weights is not None:
                factor = weights
            for u in nd.edge_checks:
                ax = cbag.index(u)
                shape = [1] * k
                shape[ax] = shape[-1] = n
                m = adj.reshape(shape)
                factor = m if factor is None else factor * m
            if factor is None:
                t = np.broadcast_to(t, ct.shape + (n,))
            else:
                t = t * factor
        elif nd.kind == FORGET:
            cbag, ct = tables.pop(nd.children[0])
            ax = cbag.index(nd.vertex)
            bag = cbag[:ax] + cbag[ax + 1:]
            t = ct.sum(axis=ax)
            if not isinstance(t, np.ndarray):
                t = np.array(t, dtype=dtype)
        else:  # JOIN
            abag, at = tables.pop(nd.children[0])
            bbag, bt = tables.pop(nd.children[1])
            if bbag != abag:
                bt = np.transpose(bt, [bbag.index(v) for v in abag])
            bag, t = abag, at * bt
        if exact and t.size and max(t.flat) > UINT128_MAX:
            raise CountOverflowError(f"homomorphism count for {pattern!r} exceeds 128 bits")
        tables[i] = (bag, t)

    bag, top = tables[ntd.root]
    assert bag == (pattern.root,)
    values = np.ascontiguousarray(top)
    if exact:
        # keep exact integers; callers needing floats convert explicitly
        values = np.array(list(values), dtype=object)
    return RootedCountVector(values, pattern.certificate)


def dp_graph_count(pattern: Pattern, target: Graph, weighting: WeightScheme = WeightScheme()):
    vals = dp_rooted_counts(pattern, target, weighting).values
    if vals.dtype == object:
        return sum(vals)
    return vals.sum().item()
