import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from mose.graph import Graph


def random_graph(rng, n, p=None):
    if p is None:
        p = rng.uniform(0.1, 0.7)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def random_perm(rng, n):
    return [int(x) for x in rng.permutation(n)]


def brute_iso(g: Graph, h: Graph) -> bool:
    """Isomorphism by trying every bijection."""
    if g.num_nodes != h.num_nodes or g.num_edges != h.num_edges:
        return False
    target = set(h.edges)
    for perm in itertools.permutations(range(g.num_nodes)):
        if all(tuple(sorted((perm[u], perm[v]))) in target for u, v in g.edges):
            return True
    return False


def labeled_graph_classes(n):
    """Every labeled graph on n nodes (as an edge bitmask over triu pairs) together
    with its brute-force class id: the minimum bitmask over all relabelings."""
    pairs = list(itertools.combinations(range(n), 2))
    index = {e: i for i, e in enumerate(pairs)}
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    best = masks.copy()
    for perm in itertools.permutations(range(n)):
        img = np.zeros_like(masks)
        for i, (u, v) in enumerate(pairs):
            j = index[tuple(sorted((perm[u], perm[v])))]
            img |= ((masks >> i) & 1) << j
        np.minimum(best, img, out=best)
    return pairs, masks, best


def mask_graph(n, pairs, mask):
    return Graph(n, [e for i, e in enumerate(pairs) if mask >> i & 1])


@st.composite
def graphs(draw, min_nodes=1, max_nodes=8):
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, b in zip(pairs, bits) if b])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
