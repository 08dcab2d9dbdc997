"""Exact fractional domination number via a rational bounded-variable simplex."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph


@dataclass
class LPSolution:
    value: Fraction
    alpha: list[Fraction]    # primal weights
    cover_duals: list[Fraction]   # one per closed-neighbourhood constraint
    bound_duals: list[Fraction]   # one per alpha <= 1 bound
    pivots: int


def fractional_domination(g: Graph) -> Fraction:
    return solve_fractional_domination(g).value


def solve_fractional_domination(g: Graph) -> LPSolution:
    """min sum(alpha) s.t. alpha(N[v]) >= 1 for all v, 0 <= alpha <= 1.

    Bounded-variable simplex with Bland's smallest-index rule on a
    fraction-free tableau: ``M / den`` is B^-1 [N | -I | rhs] with integer
    ``M`` (Bareiss updates keep every division exact). Columns 0..n-1 are
    alpha, n..2n-1 the cover surpluses, 2n the right-hand side. The start
    basis has every alpha at its upper bound and the surpluses basic (their
    values are the degrees), which is feasible, so no phase one is needed.
    """
    n = g.num_nodes
    if n == 0:
        raise ValueError("graph must be nonempty")
    cover = np.asarray(g.adjacency_matrix, dtype=np.int64) + np.eye(n, dtype=np.int64)
    m = np.zeros((n, 2 * n + 1), dtype=np.int64)
    m[:, :n] = -cover
    m[:, n:2 * n] = np.eye(n, dtype=np.int64)
    m[:, 2 * n] = g.degrees
    den = 1
    basis = list(range(n, 2 * n))
    has_upper = np.array([True] * n + [False] * n)
    at_upper = np.array([True] * n + [False] * n)
    is_basic = np.array([False] * n + [True] * n)
    cost = np.array([1] * n + [0] * n, dtype=np.int64)
    pivots = 0

    while True:
        alpha_rows = np.array([b < n for b in basis])
        # den * reduced cost = den * c_j - sum of alpha-basic rows
        num = cost * den - m[alpha_rows, :2 * n].sum(axis=0)
        sgn = np.sign(num) * (1 if den > 0 else -1)
        improving = ~is_basic & (((sgn < 0) & ~at_upper) | ((sgn > 0) & at_upper))
        hits = np.flatnonzero(improving)
        if hits.size == 0:
            break
        j = int(hits[0])
        direction = 1 if sgn[j] < 0 else -1
        # ratio test; basic value i is m[i, rhs] / den and moves by
        # -direction * theta * m[i, j] / den. Each candidate step is a ratio of
        # tableau integers (den cancels), compared by cross-multiplication.
        best = (1, 1, j, None, None) if has_upper[j] else None
        sd = 1 if den > 0 else -1
        for i in np.flatnonzero(m[:, j]):
            i = int(i)
            s_ = -direction * int(m[i, j])   # den * delta
            rhs = int(m[i, 2 * n])
            b = basis[i]
            if s_ * sd < 0:
                num, dd = rhs, -s_
            elif has_upper[b]:
                num, dd = den - rhs, s_
            else:
                continue
            if dd < 0:
                num, dd = -num, -dd
            if best is None or num * best[1] < best[0] * dd or (num * best[1] == best[0] * dd and b < best[2]):
                best = (num, dd, b, i, s_ * sd > 0)
        if best is None:
            raise RuntimeError("LP unbounded")  # cannot happen: objective >= 0
        _, _, leaving, r, to_upper = best
        if r is None:
            m[:, 2 * n] -= direction * m[:, j]
            at_upper[j] = not at_upper[j]
            continue
        if m.dtype != object and (np.abs(m).max() >= 1 << 31 or abs(den) >= 1 << 31):
            m = m.astype(object)
        p = m[r, j]
        pivot_row = m[r].copy()
        col = m[:, j].copy()
        col[r] = 0
        m = (m * p - np.outer(col, pivot_row)) // den
        m[r] = pivot_row
        den = int(p)
        if at_upper[j]:
            m[r, 2 * n] += den
        if to_upper:
            m[:, 2 * n] -= m[:, leaving]
        basis[r] = j
        is_basic[j], is_basic[leaving] = True, False
        at_upper[j], at_upper[leaving] = False, to_upper
        pivots += 1

    zero = Fraction(0)
    x = [Fraction(1) if at_upper[j] else zero for j in range(2 * n)]
    for i, b in enumerate(basis):
        x[b] = Fraction(int(m[i, 2 * n]), den)
    alpha_rows = np.array([b < n for b in basis])
    num = cost * den - m[alpha_rows, :2 * n].sum(axis=0)
    red = [Fraction(int(v), den) for v in num]
    cover_duals = red[n:]
    bound_duals = [max(zero, -red[j]) for j in range(n)]
    return LPSolution(sum(x[:n], zero), x[:n], cover_duals, bound_duals, pivots)


def check_certificate(g: Graph, sol: LPSolution) -> list[str]:
    """Verify primal/dual feasibility, equal objectives and complementary slackness exactly."""
    n = g.num_nodes
    errs = []
    a, y, z = sol.alpha, sol.cover_duals, sol.bound_duals
    closed = [[v] + list(g.adjacency[v]) for v in range(n)]
    for v in range(n):
        if not 0 <= a[v] <= 1:
            errs.append(f"alpha[{v}] = {a[v]} outside [0, 1]")
        if sum(a[u] for u in closed[v]) < 1:
            errs.append(f"cover constraint at {v} violated")
        if y[v] < 0 or z[v] < 0:
            errs.append(f"negative dual at {v}")
        # N symmetric: column v of the cover matrix is N[v]
        if sum(y[u] for u in closed[v]) - z[v] > 1:
            errs.append(f"dual constraint at {v} violated")
    primal = sum(a)
    dual = sum(y) - sum(z)
    if primal != dual:
        errs.append(f"duality gap: primal {primal} != dual {dual}")
    if primal != sol.value:
        errs.append("reported value differs from sum of weights")
    for v in range(n):
        slack = sum(a[u] for u in closed[v]) - 1
        if y[v] and slack:
            errs.append(f"complementary slackness fails on cover row {v}")
        if z[v] and a[v] != 1:
            errs.append(f"complementary slackness fails on bound {v}")
        reduced = 1 - sum(y[u] for u in closed[v]) + z[v]
        if a[v] and reduced:
            errs.append(f"complementary slackness fails on column {v}")
    return errs
