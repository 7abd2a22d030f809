"""Integral decompositions into edges and triangles.

Costs are exact: an edge part costs 2, a triangle part costs ``alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from .graph import (
    CanonicalForm,
    Edge,
    Graph,
    GraphError,
    Triangle,
    canonical_form,
    enumerate_unlabeled,
    is_triangle_divisible,
    triangles,
)

DEFAULT_BUDGET = 10**8


class BudgetExhausted(RuntimeError):
    """The search hit its node budget before proving optimality."""

    def __init__(self, nodes: int, best: int):
        super().__init__(f"search budget exhausted after {nodes} nodes (best so far {best})")
        self.nodes = nodes
        self.best = best


class NotTriangleDivisible(ValueError):
    pass


def as_rational(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals; pass a str or Fraction")
    return Fraction(x)


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _norm_tri(t: Sequence[int]) -> Triangle:
    a, b, c = sorted(t)
    return (a, b, c)


@dataclass
class Decomposition:
    host: Graph
    edge_parts: list[Edge] = field(default_factory=list)
    triangle_parts: list[Triangle] = field(default_factory=list)

    def cost(self, alpha=3) -> Fraction:
        return 2 * len(self.edge_parts) + as_rational(alpha) * len(self.triangle_parts)

    def to_text(self) -> str:
        return format_parts(self.edge_parts, self.triangle_parts)


class Cover(Decomposition):
    """Same shape as a decomposition; parts may overlap."""


class PackingResult(NamedTuple):
    nu: int
    witness: list[Triangle]
    nodes: int


class Validation(NamedTuple):
    ok: bool
    cost: Fraction | None
    error: str | None = None


def format_parts(edge_parts, triangle_parts) -> str:
    lines = [f"t {a} {b} {c}" for a, b, c in triangle_parts]
    lines += [f"e {u} {v}" for u, v in edge_parts]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_parts(text: str) -> tuple[list[Edge], list[Triangle]]:
    edges, tris = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok:
            continue
        if tok[0] == "e" and len(tok) == 3:
            edges.append(_norm_edge(int(tok[1]), int(tok[2])))
        elif tok[0] == "t" and len(tok) == 4:
            tris.append(_norm_tri(int(x) for x in tok[1:]))
        else:
            raise ValueError(f"line {lineno}: expected 'e u v' or 't u v w', got {line!r}")
    return edges, tris


# --- search ------------------------------------------------------------------


def _search_arrays(g: Graph):
    edges = g.edges()
    eid = {e: i for i, e in enumerate(edges)}
    tris = triangles(g)
    m = len(edges)
    tri_e = np.zeros((max(len(tris), 1), 3), dtype=np.int64)
    by_edge: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    for t, (a, b, c) in enumerate(tris):
        es = (eid[(a, b)], eid[(a, c)], eid[(b, c)])
        tri_e[t] = es
        by_edge[es[0]].append((c, t))
        by_edge[es[1]].append((b, t))
        by_edge[es[2]].append((a, t))
    tptr = np.zeros(m + 1, dtype=np.int64)
    tlist = []
    for i, lst in enumerate(by_edge):
        lst.sort()
        tlist.extend(t for _, t in lst)
        tptr[i + 1] = len(tlist)
    eu = np.array([u for u, _ in edges], dtype=np.int64)
    ev = np.array([v for _, v in edges], dtype=np.int64)
    return edges, tris, eu, ev, tptr, np.array(tlist, dtype=np.int64), tri_e


def max_triangle_packing(g: Graph, budget: int = DEFAULT_BUDGET) -> PackingResult:
    """Exact maximum set of edge-disjoint triangles.

    Raises BudgetExhausted if the node budget runs out before optimality is
    proved.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if g.num_edges == 0:
        return PackingResult(0, [], 1)
    edges, tris, eu, ev, tptr, tlist, tri_e = _search_arrays(g)
    if not tris:
        return PackingResult(0, [], 1)
    best, sol, nodes, status = _kernels.pack(g.n, eu, ev, tptr, tlist, tri_e, True, budget)
    if status == _kernels.PACK_BUDGET:
        raise BudgetExhausted(nodes, best)
    return PackingResult(best, sorted(tris[t] for t in sol), nodes)


def triangle_decompose_exact(g: Graph, budget: int = DEFAULT_BUDGET) -> list[Triangle] | None:
    """Partition E(g) into triangles, or None if no partition exists."""
    if not is_triangle_divisible(g):
        raise NotTriangleDivisible("graph is not triangle-divisible")
    if g.num_edges == 0:
        return []
    edges, tris, eu, ev, tptr, tlist, tri_e = _search_arrays(g)
    if not tris:
        return None
    best, sol, nodes, status = _kernels.pack(g.n, eu, ev, tptr, tlist, tri_e, False, budget)
    if best * 3 == len(edges):
        return sorted(tris[t] for t in sol)
    if status == _kernels.PACK_BUDGET:
        raise BudgetExhausted(nodes, best)
    return None


def pi3_alpha(g: Graph, alpha=3, budget: int = DEFAULT_BUDGET) -> tuple[Fraction, Decomposition]:
    """Minimum decomposition cost with triangle cost ``alpha`` and a witness."""
    alpha = as_rational(alpha)
    if alpha >= 6:
        d = Decomposition(g, g.edges(), [])
        return Fraction(2 * g.num_edges), d
    pack = max_triangle_packing(g, budget)
    covered = {_norm_edge(x, y) for a, b, c in pack.witness for x, y in ((a, b), (a, c), (b, c))}
    d = Decomposition(g, [e for e in g.edges() if e not in covered], list(pack.witness))
    cost = 2 * g.num_edges - (6 - alpha) * pack.nu
    assert d.cost(alpha) == cost
    return cost, d


def pi3(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    return int(pi3_alpha(g, 3, budget)[0])


def nu_density(g: Graph, budget: int = DEFAULT_BUDGET) -> Fraction:
    if g.n < 2:
        raise GraphError("triangle packing density needs n >= 2")
    return Fraction(3 * max_triangle_packing(g, budget).nu, g.n * (g.n - 1) // 2)


# --- validation ---------------------------------------------------------------


def _part_pairs(d: Decomposition):
    for u, v in d.edge_parts:
        yield ("e", (u, v)), _norm_edge(u, v)
    for t in d.triangle_parts:
        a, b, c = _norm_tri(t)
        for pair in ((a, b), (a, c), (b, c)):
            yield ("t", (a, b, c)), pair


def _check_parts(g: Graph, d: Decomposition, exact: bool) -> Validation:
    seen: dict[Edge, tuple] = {}
    for part, pair in _part_pairs(d):
        u, v = pair
        if u == v or not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            return Validation(False, None, f"part {part[0]} {part[1]} uses non-edge {u} {v}")
        if exact and pair in seen:
            return Validation(False, None, f"pair {u} {v} lies in two parts: {seen[pair]} and {part}")
        seen[pair] = part
    for e in g.edges():
        if e not in seen:
            return Validation(False, None, f"edge {e[0]} {e[1]} uncovered")
    return Validation(True, None)


def validate_decomposition(g: Graph, d: Decomposition, alpha=3) -> Validation:
    v = _check_parts(g, d, exact=True)
    return v._replace(cost=d.cost(alpha)) if v.ok else v


def validate_cover(g: Graph, c: Decomposition, alpha=3) -> Validation:
    v = _check_parts(g, c, exact=False)
    return v._replace(cost=c.cost(alpha)) if v.ok else v


# --- small-order extremal search ---------------------------------------------


@dataclass
class ExtremalSearch:
    n: int
    alpha: Fraction
    max_cost: Fraction
    extremal: list[CanonicalForm]
    graphs_checked: int
    predicted_value: Fraction | None
    predicted_family: list[str]
    matches_prediction: bool
    ell: int | None = None

    @property
    def departs_from_ell(self) -> bool:
        """True when the exact small-n maximum differs from the closed form l(n) (alpha = 3)."""
        return self.ell is not None and self.max_cost != self.ell

    def summary(self) -> dict:
        return {
            "n": self.n,
            "alpha": str(self.alpha),
            "max_cost": str(self.max_cost),
            "extremal_graph6": [str(cf) for cf in self.extremal],
            "graphs_checked": self.graphs_checked,
            "asymptotic_prediction": {
                "value": None if self.predicted_value is None else str(self.predicted_value),
                "family": self.predicted_family,
                "note": "asymptotic only (valid for n >= n0, n0 unspecified)",
            },
            "matches_prediction": self.matches_prediction,
            "ell": self.ell,
            "departs_from_ell": self.departs_from_ell,
        }


def brute_force_extremal(n: int, alpha=3, budget: int = DEFAULT_BUDGET) -> ExtremalSearch:
    """Exact max of pi3_alpha over all n-vertex graphs, all maximisers reported."""
    from . import constructions

    if not 1 <= n <= 7:
        raise GraphError(f"brute force supports 1 <= n <= 7, got {n}")
    alpha = as_rational(alpha)
    best = None
    winners: list[CanonicalForm] = []
    graphs = enumerate_unlabeled(n)
    for g in graphs:
        cost, _ = pi3_alpha(g, alpha, budget)
        if best is None or cost > best:
            best, winners = cost, [canonical_form(g)]
        elif cost == best:
            winners.append(canonical_form(g))
    winners.sort(key=CanonicalForm.sort_key)

    pred = constructions.extremal_family_alpha(n, alpha)
    pred_graphs = {canonical_form(h) for h in pred.graphs()} if n <= 10 else set()
    pred_value = constructions.predicted_value(n, alpha)
    matches = pred_value == best and pred_graphs == set(winners)
    ell = constructions.ell(n) if alpha == 3 else None
    return ExtremalSearch(n, alpha, best, winners, len(graphs), pred_value, pred.family, matches, ell)
