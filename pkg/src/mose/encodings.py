"""Node encodings (MoSE, RWSE, LapPE), graph-level labels and their file formats."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, SizeError
from .hom import DomainError, WeightScheme, dp_rooted_counts
from .patterns import PatternFamily

DEFAULT_TOLERANCE = 1e-9


@dataclass
class EncodingMatrix:
    graph_id: str
    scheme: dict
    rows: np.ndarray
    eigenvalues: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.rows.shape[1]

    @property
    def is_integer(self) -> bool:
        return self.rows.dtype == object or np.issubdtype(self.rows.dtype, np.integer)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["node"] + [f"c{i}" for i in range(self.dim)])
        for v, row in enumerate(self.rows):
            w.writerow([v] + [_fmt(x) for x in row])
        return buf.getvalue()

    def to_json_obj(self) -> dict:
        rows = [[int(x) if self.is_integer else float(x) for x in row] for row in self.rows]
        return {"id": self.graph_id, "scheme": self.scheme, "rows": rows}


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def mose(g: Graph, family: PatternFamily, weighting: WeightScheme = WeightScheme(),
         log_scale: bool = False, graph_id: str = "") -> EncodingMatrix:
    """Row v, column i: ω-weighted count of homomorphisms of pattern i rooted at v."""
    cols = [dp_rooted_counts(p, g, weighting).values for p in family]
    n = g.num_nodes
    if not cols:
        rows = np.zeros((n, 0))
    elif any(c.dtype == object for c in cols):
        rows = np.empty((n, len(cols)), dtype=object)
        for i, c in enumerate(cols):
            rows[:, i] = [int(x) for x in c]
    else:
        rows = np.stack(cols, axis=1)
    if log_scale:
        if rows.dtype == object:
            rows = np.array([[math.log10(1 + x) for x in r] for r in rows], dtype=float).reshape(n, len(cols))
        else:
            rows = np.log10(1.0 + rows.astype(float))
    scheme = {"kind": "mose", "family": family.name, "weighting": str(weighting), "log_scale": log_scale}
    return EncodingMatrix(graph_id, scheme, rows)


def transition_matrix(g: Graph) -> np.ndarray:
    deg = g.degrees
    if g.num_nodes and deg.min() == 0:
        raise DomainError(f"random walk undefined: node {int(np.argmin(deg))} is isolated")
    return g.adjacency_matrix / deg[:, None]


def rwse(g: Graph, length: int, graph_id: str = "") -> EncodingMatrix:
    """Return probabilities for length 1..``length``, diag of powers of D^-1 A."""
    if length < 1:
        raise ValueError("length must be >= 1")
    m = transition_matrix(g)
    p = np.eye(g.num_nodes)
    rows = np.empty((g.num_nodes, length))
    for i in range(length):
        p = p @ m
        rows[:, i] = np.diagonal(p)
    return EncodingMatrix(graph_id, {"kind": "rwse", "length": length}, rows)


def normalized_laplacian(g: Graph) -> np.ndarray:
    deg = g.degrees
    if g.num_nodes and deg.min() == 0:
        raise DomainError(f"normalized Laplacian undefined: node {int(np.argmin(deg))} is isolated")
    s = 1.0 / np.sqrt(deg)
    return np.eye(g.num_nodes) - s[:, None] * g.adjacency_matrix * s[None, :]


def jacobi_eigh(a: np.ndarray, tol: float = 1e-10, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a real symmetric matrix.

    Sweeps rotations over all (p, q) until the off-diagonal Frobenius norm is
    below ``tol``. Returns unsorted eigenvalues and column eigenvectors.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    for _ in range(max_sweeps):
        # summed directly: ||a||^2 - ||diag||^2 cancels down to ~sqrt(eps)*||a||
        off = math.sqrt((np.triu(a, 1) ** 2).sum() * 2.0)
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * cp - s * cq, s * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * rp - s * rq, s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.diagonal(a).copy(), v


def lappe(g: Graph, dim: int, graph_id: str = "") -> EncodingMatrix:
    """Leading nontrivial eigenvectors of I - D^-1/2 A D^-1/2 as node rows.

    Each eigenvector's largest-magnitude entry is made positive and
    near-equal eigenvalues are ordered by eigenvector; this makes output
    deterministic but, as for any LapPE, not invariant under relabeling.
    If ``dim`` equals the node count the last column is zero padding.
    """
    n = g.num_nodes
    if dim > n:
        raise SizeError(f"dim {dim} exceeds node count {n}")
    evals, evecs = jacobi_eigh(normalized_laplacian(g))
    vecs = []
    for j in range(n):
        x = evecs[:, j]
        k = int(np.argmax(np.abs(x).round(12)))
        vecs.append(x if x[k] > 0 else -x)
    order = sorted(range(n), key=lambda j: (round(evals[j] / 1e-8), tuple(np.round(vecs[j], 10))))
    evals = evals[order]
    q = np.stack([vecs[j] for j in order], axis=1) if n else np.zeros((0, 0))
    rows = np.zeros((n, dim))
    take = min(dim, n - 1)
    rows[:, :take] = q[:, 1:1 + take]
    return EncodingMatrix(graph_id, {"kind": "lappe", "dim": dim}, rows, eigenvalues=evals)


# ---------------------------------------------------------------------------
# graph-level labels

@dataclass(frozen=True)
class GraphLabel:
    multiset_digest: tuple = field(default=())


def graph_label(enc: EncodingMatrix, tolerance: float | None = None) -> GraphLabel:
    """Sorted multiset of rows, each entry rounded to a multiple of ``tolerance``.

    ``tolerance=None`` means exact for integer encodings and 1e-9 otherwise.
    """
    if tolerance is None:
        tolerance = 0 if enc.is_integer else DEFAULT_TOLERANCE
    if tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    if tolerance == 0:
        rows = [tuple(int(x) if enc.is_integer else float(x) for x in r) for r in enc.rows]
    else:
        rows = [tuple(round(float(x) / tolerance) for x in r) for r in enc.rows]
    return GraphLabel(tuple(sorted(rows)))


def labels_match(a: EncodingMatrix, b: EncodingMatrix, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Multiset equality of rows up to ``tolerance`` in max-norm.

    Unlike comparing two :func:`graph_label` results, this cannot be fooled
    by a value sitting on a rounding boundary (dyadic RWSE entries such as
    143/1024 land exactly on a half-multiple of 1e-9). Rows are matched
    greedily after a lexicographic sort; at 1e-9 distinct rows never fall in
    each other's window so greedy matching is exact here.
    """
    ra, rb = np.asarray(a.rows, dtype=float), np.asarray(b.rows, dtype=float)
    if ra.shape != rb.shape:
        return False
    if ra.size == 0:
        return True
    ra = ra[np.lexsort(ra.T[::-1])]
    rb = rb[np.lexsort(rb.T[::-1])]
    used = np.zeros(len(rb), dtype=bool)
    for row in ra:
        close = ~used & (np.abs(rb - row).max(axis=1) <= tolerance)
        hits = np.flatnonzero(close)
        if hits.size == 0:
            return False
        used[hits[0]] = True
    return True


def write_manifest(path, family: PatternFamily | None, scheme: dict, version: str) -> None:
    doc = {"tool": "mose", "version": version, "scheme": scheme}
    if family is not None:
        doc["family"] = family.manifest()
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
