"""Exact treewidth by memoized elimination-ordering search, and nice tree decompositions."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .graph import Graph, SizeError

MAX_DECOMPOSE_NODES = 10

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass
class NiceNode:
    kind: str
    bag: tuple[int, ...]
    children: tuple[int, ...] = ()
    vertex: int | None = None
    # Introduce only: whether this node applies the vertex weight, and which
    # bag vertices get their edge to ``vertex`` checked here.
    owns_weight: bool = False
    edge_checks: tuple[int, ...] = ()


@dataclass
class NiceTreeDecomposition:
    nodes: list[NiceNode]
    root: int
    parent: list[int | None] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1

    def postorder(self) -> list[int]:
        out, stack = [], [(self.root, False)]
        while stack:
            i, done = stack.pop()
            if done:
                out.append(i)
                continue
            stack.append((i, True))
            for c in reversed(self.nodes[i].children):
                stack.append((c, False))
        return out


def _later_reach(adj_bits: list[int], before: int, v: int) -> int:
    """Vertices outside ``before`` | {v} reachable from v through ``before``."""
    seen = 1 << v
    frontier = adj_bits[v]
    reach = 0
    inner = frontier & before
    reach |= frontier & ~before & ~seen
    seen |= frontier
    while inner:
        w = (inner & -inner).bit_length() - 1
        inner &= inner - 1
        nb = adj_bits[w] & ~seen
        seen |= nb
        reach |= nb & ~before
        inner |= nb & before
    return reach


def _elimination_search(g: Graph, candidates: int):
    """Best (width, ordering) over orderings that eliminate exactly ``candidates`` first."""
    adj = list(g.neighbor_bitset)

    @lru_cache(maxsize=None)
    def best(s: int) -> tuple[int, tuple[int, ...]]:
        if s == 0:
            return -1, ()
        result = None
        rest = s
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            sub = s & ~(1 << v)
            w_sub, order = best(sub)
            w = max(w_sub, _later_reach(adj, sub, v).bit_count())
            if result is None or w < result[0]:
                result = (w, order + (v,))
        return result

    return best(candidates)


def treewidth(g: Graph) -> int:
    n = g.num_nodes
    if n > MAX_DECOMPOSE_NODES:
        raise SizeError(f"exact treewidth supports at most {MAX_DECOMPOSE_NODES} nodes")
    if n == 0:
        return 0
    return max(0, _elimination_search(g, (1 << n) - 1)[0])


def elimination_bags(g: Graph, order: list[int]) -> dict[int, set[int]]:
    """bag(v) = {v} plus v's later neighbours in the fill-in graph."""
    pos = {v: i for i, v in enumerate(order)}
    nbrs = {v: set(g.adjacency[v]) for v in range(g.num_nodes)}
    bags = {}
    for v in order:
        later = {w for w in nbrs[v] if pos[w] > pos[v]}
        bags[v] = {v} | later
        for a in later:
            nbrs[a] |= later - {a}
    return bags


def decompose(g: Graph, root: int) -> tuple[int, NiceTreeDecomposition]:
    """Exact treewidth and a nice tree decomposition whose top bag is {root}."""
    n = g.num_nodes
    if n > MAX_DECOMPOSE_NODES:
        raise SizeError(f"decompose supports at most {MAX_DECOMPOSE_NODES} nodes, got {n}")
    if not 0 <= root < n:
        raise ValueError(f"root {root} not a vertex")
    tw = treewidth(g)
    # any vertex can be eliminated last in some optimal ordering
    w, order = _elimination_search(g, ((1 << n) - 1) & ~(1 << root))
    order = list(order) + [root]
    assert max(w, 0) == tw
    bags = elimination_bags(g, order)
    pos = {v: i for i, v in enumerate(order)}
    children: dict[int, list[int]] = {v: [] for v in order}
    for v in order[:-1]:
        later = bags[v] - {v}
        parent = min(later, key=pos.__getitem__) if later else root
        children[parent].append(v)

    nodes: list[NiceNode] = []

    def add(node: NiceNode) -> int:
        nodes.append(node)
        return len(nodes) - 1

    def grow(top: int, want: set[int]) -> int:
        for x in sorted(set(nodes[top].bag) - want):
            bag = tuple(u for u in nodes[top].bag if u != x)
            top = add(NiceNode(FORGET, bag, (top,), x))
        for x in sorted(want - set(nodes[top].bag)):
            top = add(NiceNode(INTRODUCE, nodes[top].bag + (x,), (top,), x))
        return top

    def build(v: int) -> int:
        tops = [grow(build(c), bags[v]) for c in sorted(children[v])]
        if not tops:
            return grow(add(NiceNode(LEAF, ())), bags[v])
        top = tops[0]
        for other in tops[1:]:
            top = add(NiceNode(JOIN, nodes[top].bag, (top, other)))
        return top

    top = grow(build(root), {root})
    ntd = NiceTreeDecomposition(nodes, top)
    _assign_factors(g, ntd)
    ntd.parent = [None] * len(nodes)
    for i, nd in enumerate(nodes):
        for c in nd.children:
            ntd.parent[c] = i
    return tw, ntd


def _assign_factors(g: Graph, ntd: NiceTreeDecomposition) -> None:
    weighted: set[int] = set()
    checked: set[tuple[int, int]] = set()
    for i in ntd.postorder():
        nd = ntd.nodes[i]
        if nd.kind != INTRODUCE:
            continue
        v = nd.vertex
        if v not in weighted:
            weighted.add(v)
            nd.owns_weight = True
        checks = []
        for u in nd.bag[:-1]:
            e = (min(u, v), max(u, v))
            if g.has_edge(u, v) and e not in checked:
                checked.add(e)
                checks.append(u)
        nd.edge_checks = tuple(checks)


def validate(g: Graph, ntd: NiceTreeDecomposition) -> list[str]:
    """Return a list of violated tree-decomposition / nice-form properties (empty = valid)."""
    errs = []
    nodes = ntd.nodes
    reachable = ntd.postorder()
    if len(reachable) != len(nodes):
        errs.append("decomposition tree is not connected")
    for i, nd in enumerate(nodes):
        cb = [set(nodes[c].bag) for c in nd.children]
        bag = set(nd.bag)
        if len(bag) != len(nd.bag):
            errs.append(f"node {i}: duplicate vertex in bag")
        if nd.kind == LEAF and (nd.children or nd.bag):
            errs.append(f"node {i}: leaf must be empty and childless")
        elif nd.kind == INTRODUCE and (len(cb) != 1 or bag != cb[0] | {nd.vertex} or nd.vertex in cb[0]):
            errs.append(f"node {i}: bad introduce")
        elif nd.kind == FORGET and (len(cb) != 1 or bag | {nd.vertex} != cb[0] or nd.vertex in bag):
            errs.append(f"node {i}: bad forget")
        elif nd.kind == JOIN and (len(cb) != 2 or cb[0] != bag or cb[1] != bag):
            errs.append(f"node {i}: bad join")
    for v in range(g.num_nodes):
        holding = {i for i, nd in enumerate(nodes) if v in nd.bag}
        if not holding:
            errs.append(f"vertex {v} in no bag")
            continue
        # connected: exactly one holder whose parent does not hold v
        tops = [i for i in holding if ntd.parent[i] is None or ntd.parent[i] not in holding]
        if len(tops) != 1:
            errs.append(f"bags holding vertex {v} are disconnected")
        owners = [i for i in holding if nodes[i].kind == INTRODUCE and nodes[i].vertex == v and nodes[i].owns_weight]
        if len(owners) != 1:
            errs.append(f"vertex {v} weighted {len(owners)} times")
    for u, v in g.edges:
        if not any(u in nd.bag and v in nd.bag for nd in nodes):
            errs.append(f"edge ({u}, {v}) not covered")
        hits = sum(
            1 for nd in nodes if nd.kind == INTRODUCE
            and ((nd.vertex == v and u in nd.edge_checks) or (nd.vertex == u and v in nd.edge_checks))
        )
        if hits != 1:
            errs.append(f"edge ({u}, {v}) checked {hits} times")
    return errs
