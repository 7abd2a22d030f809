"""Closed-form extremal values and explicit decompositions of complete graphs.

Triple systems come from the Bose (n = 6k+3) and Skolem (n = 6k+1)
constructions; even orders delete one point of a triple system on n+1
points.  Residues 4 and 5 (mod 6) remove the required edge parts and finish
with an exact triangle-decomposition search.  Every output is validated
before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .decomp import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    Cover,
    Decomposition,
    as_rational,
    triangle_decompose_exact,
    validate_cover,
    validate_decomposition,
)
from .graph import Edge, Graph, GraphError, Triangle, complete, complete_minus_matching, t2, turan2


class ConstructionError(RuntimeError):
    pass


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


def ell(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    r = n % 6
    if r in (0, 2):
        return n * n // 2
    if r == 4:
        return n * n // 2 + 1
    return (n * n - 1) // 2


def wfun(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    r = n % 6
    if r in (0, 2):
        return n // 2
    if r in (1, 3):
        return 2
    if r == 4:
        return n // 2 + 1
    return 4


# --- extremal families -----------------------------------------------------------

T2 = "T2(n)"
KN = "K_n"
KN_MINUS = "K_n^-"
KN_EQ = "K_n^="


@dataclass
class ExtremalPrediction:
    n: int
    alpha: Fraction
    family: list[str]
    note: str = "valid for n >= n0 (n0 unspecified)"

    def graphs(self) -> list[Graph]:
        build = {
            T2: lambda: turan2(self.n),
            KN: lambda: complete(self.n),
            KN_MINUS: lambda: complete_minus_matching(self.n, 1),
            KN_EQ: lambda: complete_minus_matching(self.n, 2),
        }
        return [build[name]() for name in self.family]


def extremal_family_alpha(n: int, alpha=3) -> ExtremalPrediction:
    alpha = as_rational(alpha)
    r = n % 6
    odd_class = r in (1, 3)
    if alpha < 3:
        fam = [T2]
    elif alpha == 3:
        fam = [T2, KN] if r in (0, 2) else [T2] if r in (1, 3, 5) else [KN]
    elif alpha < 4:
        fam = [KN_EQ] if odd_class else [KN]
    elif alpha == 4:
        fam = [KN, KN_MINUS, KN_EQ] if odd_class else [KN]
    else:
        fam = [KN]
    return ExtremalPrediction(n, alpha, fam)


def _leftover_lower_bound(e: int, odd: int) -> int:
    if odd == 0:
        return [0, 4, 5][e % 3]
    left = odd // 2
    while (e - left) % 3:
        left += 1
    return left


def asymptotic_cost(n: int, m: int, alpha=3) -> Fraction:
    """Large-n cost of K_n minus an m-matching, assuming the leftover meets its
    parity/divisibility lower bound (true for large n by the minimum-degree
    triangle decomposition theorem)."""
    alpha = as_rational(alpha)
    e = _binom2(n) - m
    if alpha >= 6:
        return Fraction(2 * e)
    odd = 2 * m if n % 2 else n - 2 * m
    nu = (e - _leftover_lower_bound(e, odd)) // 3
    return 2 * e - (6 - alpha) * nu


def predicted_value(n: int, alpha=3) -> Fraction:
    costs = {T2: Fraction(2 * t2(n)), KN: asymptotic_cost(n, 0, alpha)}
    if n >= 2:
        costs[KN_MINUS] = asymptotic_cost(n, 1, alpha)
    if n >= 4:
        costs[KN_EQ] = asymptotic_cost(n, 2, alpha)
    return max(costs[name] for name in extremal_family_alpha(n, alpha).family)


# --- triple systems -----------------------------------------------------------------


@dataclass
class TripleSystem:
    n: int
    triples: list[Triangle]

    def pair_counts(self) -> dict[Edge, int]:
        counts = {p: 0 for p in itertools.combinations(range(self.n), 2)}
        for a, b, c in self.triples:
            for p in ((a, b), (a, c), (b, c)):
                counts[p] += 1
        return counts

    def is_steiner(self) -> bool:
        return all(v == 1 for v in self.pair_counts().values())

    def to_text(self) -> str:
        return "".join(f"t {a} {b} {c}\n" for a, b, c in self.triples)


def _bose(n: int) -> list[Triangle]:
    q = n // 3  # odd
    half = (q + 1) // 2  # inverse of 2 mod q

    def pt(x, i):  # point (x, i) of Z_q x Z_3
        return 3 * x + i

    def op(x, y):  # idempotent commutative quasigroup (x + y) / 2 on Z_q
        return (x + y) * half % q

    out = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(q)]
    for x, y in itertools.combinations(range(q), 2):
        for i in range(3):
            out.append((pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)))
    return out


def _skolem(n: int) -> list[Triangle]:
    k = (n - 1) // 6
    q = 2 * k
    inf = n - 1

    def pt(x, i):
        return 3 * x + i

    def op(x, y):
        # half-idempotent commutative quasigroup on Z_2k: relabel the sums
        # 2i -> i, 2i+1 -> k+i, so x.x = (x+k).(x+k) = x for x < k
        s = (x + y) % q
        return s // 2 if s % 2 == 0 else k + s // 2

    out = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(k)]
    for x in range(k):
        for i in range(3):
            out.append((inf, pt(x + k, i), pt(x, (i + 1) % 3)))
    for x, y in itertools.combinations(range(q), 2):
        for i in range(3):
            out.append((pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)))
    return out


def steiner_triple_system(n: int) -> TripleSystem:
    if n < 3 or n % 6 not in (1, 3):
        raise GraphError(f"no Steiner triple system on {n} points (need n = 1, 3 mod 6, n >= 3)")
    raw = _bose(n) if n % 6 == 3 else _skolem(n)
    sts = TripleSystem(n, sorted(tuple(sorted(t)) for t in raw))
    if not sts.is_steiner():
        raise ConstructionError(f"triple system construction failed validation at n={n}")
    return sts


# --- decompositions ---------------------------------------------------------------------


def _complete_with(n: int, edge_parts: list[Edge], budget: int) -> Decomposition:
    host = complete(n)
    rest = host.remove_edges(edge_parts)
    try:
        tris = triangle_decompose_exact(rest, budget)
    except BudgetExhausted as exc:
        raise ConstructionError(f"triangle completion of K_{n} exhausted its budget") from exc
    if tris is None:
        raise ConstructionError(f"no triangle completion exists for K_{n} minus {edge_parts}")
    return Decomposition(host, sorted(edge_parts), tris)


def _checked(g: Graph, d: Decomposition) -> Decomposition:
    v = validate_decomposition(g, d, 3)
    if not v.ok:
        raise ConstructionError(f"construction failed validation: {v.error}")
    return d


def decompose_complete(n: int, budget: int = DEFAULT_BUDGET) -> Decomposition:
    if n < 3:
        raise GraphError("decompose_complete needs n >= 3")
    r = n % 6
    host = complete(n)
    if r in (1, 3):
        d = Decomposition(host, [], steiner_triple_system(n).triples)
    elif r in (0, 2):
        sts = steiner_triple_system(n + 1)
        # triples through the deleted point n become a perfect matching
        matching = sorted((a, b) for a, b, c in sts.triples if c == n)
        kept = [t for t in sts.triples if n not in t]
        d = Decomposition(host, matching, kept)
    elif r == 4:
        claw = [(0, 1), (0, 2), (0, 3)]
        d = _complete_with(n, claw + [(i, i + 1) for i in range(4, n - 1, 2)], budget)
    else:
        d = _complete_with(n, [(0, 1), (1, 2), (2, 3), (0, 3)], budget)
    return _checked(host, d)


def leftover_shape(n: int, edge_parts: list[Edge]) -> str:
    """Name the edge-part graph of a decomposition of K_n."""
    if not edge_parts:
        return "none"
    deg = [0] * n
    for u, v in edge_parts:
        deg[u] += 1
        deg[v] += 1
    if all(d == 1 for d in deg):
        return "perfect matching"
    if len(edge_parts) == 4 and sorted(deg, reverse=True)[:4] == [2, 2, 2, 2] and sum(deg) == 8:
        return "C4"
    if sorted(deg, reverse=True)[0] == 3 and sorted(deg).count(0) == 0:
        center = deg.index(3)
        leaves = [v for u, v in edge_parts if u == center] + [u for u, v in edge_parts if v == center]
        if all(deg[x] == 1 for x in leaves) and all(deg[x] == 1 for x in range(n) if x != center):
            return "K_{1,3} + perfect matching"
    return "other"


def decompose_matching_removed(n: int, m: int, budget: int = DEFAULT_BUDGET) -> Decomposition:
    """Decomposition of K_n minus {(0,1), (2,3), ...} of size m with cost C(n,2) + 2.

    The odd-degree vertices 0..2m-1 are paired cyclically by
    (1,2), (3,4), ..., (2m-1,0); all of these except (2m-1,0) are taken as
    edge parts and 0, 2m-1 are joined by a 3-edge path, leaving a
    triangle-divisible remainder.  That is m+2 edge parts in total.
    """
    if n % 6 not in (1, 3):
        raise GraphError("K_n minus a matching is extremal only for n = 1, 3 mod 6")
    if m % 3 != 2:
        raise GraphError("matching size must be 2 mod 3")
    if 2 * m > n:
        raise GraphError(f"matching of size {m} does not fit in {n} vertices")
    host = complete_minus_matching(n, m)
    fix = [(2 * i + 1, 2 * i + 2) for i in range(m - 1)]
    x, y = 0, 2 * m - 1
    used = set(fix)

    def ok(u, v):
        e = (min(u, v), max(u, v))
        return host.has_edge(*e) and e not in used

    path = None
    for a in range(n):
        if a in (x, y) or not ok(x, a):
            continue
        for b in range(n):
            if b in (x, y, a) or not (ok(a, b) and ok(b, y)):
                continue
            path = [(min(x, a), max(x, a)), (min(a, b), max(a, b)), (min(b, y), max(b, y))]
            break
        if path:
            break
    if path is None:  # pragma: no cover - n >= 7 always leaves room
        raise ConstructionError("no fixing path found")
    edge_parts = sorted(fix + path)
    rest = host.remove_edges(edge_parts)
    try:
        tris = triangle_decompose_exact(rest, budget)
    except BudgetExhausted as exc:
        raise ConstructionError("triangle completion exhausted its budget") from exc
    if tris is None:
        raise ConstructionError("remainder has no triangle decomposition")
    return _checked(host, Decomposition(host, edge_parts, tris))


def covering_complete(n: int, budget: int = DEFAULT_BUDGET) -> Cover:
    """Cover of K_n (n = 4 mod 6) by edges and triangles of cost n^2/2.

    Starts from the claw-plus-matching decomposition and replaces the claw
    edges 0-1 and 0-2 by the triangle 0-1-2, so the pair 1-2 is covered twice.
    """
    if n % 6 != 4:
        raise GraphError("covering_complete needs n = 4 mod 6")
    d = decompose_complete(n, budget)
    edges = [e for e in d.edge_parts if e not in ((0, 1), (0, 2))]
    cover = Cover(d.host, edges, sorted(d.triangle_parts + [(0, 1, 2)]))
    v = validate_cover(d.host, cover, 3)
    if not v.ok:
        raise ConstructionError(f"cover failed validation: {v.error}")
    return cover
