"""Named graphs used by the worked examples and the expressivity checks."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .graph import Graph


@dataclass(frozen=True)
class NamedGraph:
    name: str
    graph: Graph
    annotations: dict = field(default_factory=dict)


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 nodes")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def rook_graph(k: int = 4) -> Graph:
    """k x k rook's graph: cells adjacent when they share a row or column."""
    idx = lambda r, c: r * k + c
    edges = []
    for r in range(k):
        for c in range(k):
            for c2 in range(c + 1, k):
                edges.append((idx(r, c), idx(r, c2)))
            for r2 in range(r + 1, k):
                edges.append((idx(r, c), idx(r2, c)))
    return Graph(k * k, edges)


def shrikhande() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}."""
    idx = lambda a, b: (a % 4) * 4 + (b % 4)
    edges = set()
    for a in range(4):
        for b in range(4):
            for da, db in ((1, 0), (0, 1), (1, 1)):
                edges.add(tuple(sorted((idx(a, b), idx(a + da, b + db)))))
    return Graph(16, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def fig1_g() -> NamedGraph:
    # 7-node path 0..6 with a pendant (7) on the centre vertex 3
    g = Graph(8, [(i, i + 1) for i in range(6)] + [(3, 7)])
    return NamedGraph("fig1_G", g, {"u1": 7, "v1": 3})


def fig1_h() -> NamedGraph:
    # 6-cycle 0..5 with a pendant (6) on vertex 3
    g = Graph(7, [(i, (i + 1) % 6) for i in range(6)] + [(3, 6)])
    return NamedGraph("fig1_H", g, {"u2": 6, "v2": 3})


def two_triangles() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])


_FIXED = {
    "fig1_G": fig1_g,
    "fig1_H": fig1_h,
    "two_triangles": lambda: NamedGraph("two_triangles", two_triangles()),
    "rook_4x4": lambda: NamedGraph("rook_4x4", rook_graph(4)),
    "shrikhande": lambda: NamedGraph("shrikhande", shrikhande()),
    "petersen": lambda: NamedGraph("petersen", petersen()),
}
_SIZED = {"path": path, "cycle": cycle, "complete": complete, "star": star}

ZOO_NAMES = sorted(_FIXED) + [f"{k}_<n>" for k in sorted(_SIZED)]


def named_graph(name: str) -> NamedGraph:
    """Look up ``name`` in the zoo; sized families are spelled ``cycle_6`` etc."""
    if name in _FIXED:
        return _FIXED[name]()
    m = re.fullmatch(r"([a-z]+)_(\d+)", name)
    if m and m.group(1) in _SIZED:
        return NamedGraph(name, _SIZED[m.group(1)](int(m.group(2))))
    raise KeyError(f"unknown graph {name!r}; known: {', '.join(ZOO_NAMES)}")
