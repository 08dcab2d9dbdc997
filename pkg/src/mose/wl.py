"""1-WL and folklore 2-WL colour refinement with shared colour interning.

Refining several graphs jointly assigns new colours by the sorted order of
all signatures seen in that round, so colour ids are comparable across the
graphs and independent of vertex numbering.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph, SizeError

MAX_WL2_NODES = 64


@dataclass
class ColorRefinementResult:
    node_colors: list  # per node (1-WL) or n x n nested list (2-WL)
    rounds: int
    graph_label: tuple
    history: list | None = None


def _intern(signatures: list[list]) -> list[list[int]]:
    table = {s: i for i, s in enumerate(sorted({s for sigs in signatures for s in sigs}))}
    return [[table[s] for s in sigs] for sigs in signatures]


def wl1_joint(graphs: Sequence[Graph], keep_history: bool = False) -> list[ColorRefinementResult]:
    colors = _intern([[g.degree(v) for v in range(g.num_nodes)] for g in graphs])
    history = [colors] if keep_history else None
    n_classes = len({c for cs in colors for c in cs})
    rounds = 0
    while True:
        rounds += 1
        sigs = [
            [(cs[v], tuple(sorted(cs[w] for w in g.adjacency[v]))) for v in range(g.num_nodes)]
            for g, cs in zip(graphs, colors)
        ]
        colors = _intern(sigs)
        if keep_history:
            history.append(colors)
        k = len({c for cs in colors for c in cs})
        if k == n_classes:
            break
        n_classes = k
    return [
        ColorRefinementResult(cs, rounds, tuple(sorted(cs)), [h[i] for h in history] if keep_history else None)
        for i, cs in enumerate(colors)
    ]


def wl1(g: Graph) -> ColorRefinementResult:
    return wl1_joint([g])[0]


def _atomic(g: Graph) -> np.ndarray:
    # 0: u == v, 1: adjacent, 2: non-adjacent
    n = g.num_nodes
    c = np.where(g.adjacency_matrix > 0, 1, 2)
    c[np.arange(n), np.arange(n)] = 0
    return c


def wl2_joint(graphs: Sequence[Graph], keep_history: bool = False) -> list[ColorRefinementResult]:
    """Folklore 2-WL: c(u,v) <- (c(u,v), {{(c(u,w), c(w,v)) : w}})."""
    for g in graphs:
        if g.num_nodes > MAX_WL2_NODES:
            raise SizeError(f"2-WL supports at most {MAX_WL2_NODES} nodes, got {g.num_nodes}")
    mats = [_atomic(g) for g in graphs]
    history = [[m.tolist() for m in mats]] if keep_history else None
    n_classes = len(set().union(*(np.unique(m).tolist() for m in mats)))
    rounds = 0
    while True:
        rounds += 1
        k = 1 + max(int(m.max()) for m in mats if m.size) if any(m.size for m in mats) else 1
        sigs = []
        for m in mats:
            n = m.shape[0]
            if n == 0:
                sigs.append([])
                continue
            # codes[u, v, w] = (c(u,w), c(w,v)) packed into one integer
            codes = m[:, None, :] * k + m.T[None, :, :]
            codes.sort(axis=2)
            rows = np.concatenate([m[:, :, None], codes], axis=2).reshape(n * n, n + 1)
            sigs.append([tuple(r) for r in rows.tolist()])
        flat = _intern(sigs)
        mats = [np.array(f, dtype=np.int64).reshape(m.shape) for f, m in zip(flat, mats)]
        if keep_history:
            history.append([m.tolist() for m in mats])
        nk = len({c for f in flat for c in f})
        if nk == n_classes:
            break
        n_classes = nk
    return [
        ColorRefinementResult(m.tolist(), rounds, tuple(sorted(m.ravel().tolist())),
                              [h[i] for h in history] if keep_history else None)
        for i, m in enumerate(mats)
    ]


def wl2(g: Graph) -> ColorRefinementResult:
    return wl2_joint([g])[0]


def wl_equivalent(g: Graph, h: Graph, k: int) -> bool:
    if k == 1:
        a, b = wl1_joint([g, h])
    elif k == 2:
        a, b = wl2_joint([g, h])
    else:
        raise ValueError("only k = 1 and k = 2 are supported")
    return a.graph_label == b.graph_label
