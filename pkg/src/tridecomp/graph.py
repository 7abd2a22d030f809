"""Simple undirected graphs on at most 64 vertices.

Adjacency is stored as one integer bitmask per vertex.  Vertices are 0-based
everywhere; graph6 I/O is the only place that format's conventions leak in.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels

MAX_ORDER = 64
MAX_CANONICAL_ORDER = 10

Edge = tuple[int, int]
Triangle = tuple[int, int, int]


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    """Malformed graph6 input; ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_ORDER:
            raise GraphError(f"order {self.n} outside 0..{MAX_ORDER}")
        if len(self.rows) != self.n:
            raise GraphError("row count does not match order")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"vertex {v} has neighbours outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency {v}-{u}")

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, adj) -> "Graph":
        adj = np.asarray(adj)
        n = adj.shape[0]
        return cls.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n) if adj[i, j]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[Edge]:
        """Edges (u, v) with u < v in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("not a permutation of the vertex set")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, vertex ``vertices[i]`` becoming ``i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((pos[u], pos[v]) for u, v in itertools.combinations(vertices, 2) if self.has_edge(u, v)),
        )

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + [(min(u, v), max(u, v))])

    def remove_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        drop = {(min(u, v), max(u, v)) for u, v in edges}
        missing = drop - set(self.edges())
        if missing:
            raise GraphError(f"cannot remove non-edge {sorted(missing)[0]}")
        return Graph.from_edges(self.n, (e for e in self.edges() if e not in drop))

    def __repr__(self):
        return f"Graph(n={self.n}, e={self.num_edges}, g6={to_graph6(self)!r})"


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# --- graph6 -----------------------------------------------------------------


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii", errors="replace")
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"character {chr(b)!r} outside graph6 range", i)
    if data[0] != 126:
        n = data[0] - 63
        pos = 1
    else:
        if len(data) < 4:
            raise Graph6Error("truncated long-form header", len(data))
        if data[1] == 126:
            raise Graph6Error("orders above 258047 are not supported", 1)
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
        if n <= 62:
            raise Graph6Error(f"long-form header used for small order {n}", 1)
    if n > MAX_ORDER:
        raise Graph6Error(f"order {n} exceeds {MAX_ORDER}", 0 if pos == 1 else 1)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise Graph6Error(f"expected {need} data bytes, found {len(body)}", len(data))
    if len(body) > need:
        raise Graph6Error("trailing bytes after adjacency data", pos + need)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    pad = need * 6 - nbits
    if pad and (body[-1] - 63) & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", pos + need - 1)
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    else:
        out = ["~", chr((n >> 12 & 63) + 63), chr((n >> 6 & 63) + 63), chr((n & 63) + 63)]
    acc = 0
    k = 0
    for j in range(1, n):
        for i in range(j):
            acc = acc << 1 | (g.rows[i] >> j & 1)
            k += 1
            if k == 6:
                out.append(chr(acc + 63))
                acc = k = 0
    if k:
        out.append(chr((acc << (6 - k)) + 63))
    return "".join(out)


# --- edge-list text ----------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """First non-blank line is ``n``; each further line is ``u v`` (0-based)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge list")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges()]) + "\n"


def read_graph(text: str) -> Graph:
    """Accept graph6 or edge-list text."""
    stripped = text.strip()
    if not stripped:
        raise GraphError("empty graph input")
    first = stripped.splitlines()[0].strip()
    # digits lie below graph6's character range, so this is unambiguous
    if first.isdigit():
        return parse_edge_list(text)
    return parse_graph6(first)


# --- named families ------------------------------------------------------------


NAMED_KINDS = ("complete", "turan2", "complete_minus_edge", "complete_minus_matching", "empty")


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def turan2(n: int) -> Graph:
    """K_{floor(n/2), ceil(n/2)} with parts {0..floor(n/2)-1} and the rest."""
    a = n // 2
    return Graph.from_edges(n, ((u, v) for u in range(a) for v in range(a, n)))


def matching_pairs(m: int) -> list[Edge]:
    return [(2 * i, 2 * i + 1) for i in range(m)]


def complete_minus_matching(n: int, m: int) -> Graph:
    if m < 0 or 2 * m > n:
        raise GraphError(f"matching of size {m} does not fit in {n} vertices")
    return complete(n).remove_edges(matching_pairs(m))


def make_named(kind: str, n: int, m: int | None = None) -> Graph:
    if n < 1:
        raise GraphError("order must be at least 1")
    if kind == "complete":
        return complete(n)
    if kind == "turan2":
        return turan2(n)
    if kind == "complete_minus_edge":
        if n < 2:
            raise GraphError("K_n minus an edge needs n >= 2")
        return complete_minus_matching(n, 1)
    if kind == "complete_minus_matching":
        return complete_minus_matching(n, 2 if m is None else m)
    if kind == "empty":
        return Graph.empty(n)
    raise GraphError(f"unknown graph family {kind!r}")


def t2(n: int) -> int:
    """Edge count of the balanced complete bipartite graph."""
    return n * n // 4


# --- triangles -----------------------------------------------------------------


def triangles(g: Graph) -> list[Triangle]:
    out = []
    for u in range(g.n):
        hi_u = g.rows[u] >> (u + 1) << (u + 1)
        for v in _bits(hi_u):
            common = hi_u & g.rows[v] >> (v + 1) << (v + 1)
            for w in _bits(common):
                out.append((u, v, w))
    return out


def is_triangle_divisible(g: Graph) -> bool:
    return all(d % 2 == 0 for d in g.degrees()) and g.num_edges % 3 == 0


# --- canonical forms -----------------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Order n plus the minimal upper-triangle bitstring (graph6 bit order)."""

    n: int
    bits: str

    @property
    def num_edges(self) -> int:
        return self.bits.count("1")

    def graph(self) -> Graph:
        rows = [0] * self.n
        k = 0
        for j in range(1, self.n):
            for i in range(j):
                if self.bits[k] == "1":
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                k += 1
        return Graph(self.n, tuple(rows))

    def sort_key(self):
        return (self.n, self.num_edges, self.bits)

    def __str__(self):
        return to_graph6(self.graph())


def _invariant_cells(g: Graph):
    deg = g.degrees()
    key = {v: (deg[v], tuple(sorted(deg[u] for u in _bits(g.rows[v])))) for v in range(g.n)}
    order = sorted(range(g.n), key=lambda v: (key[v], v))
    bounds = [0]
    for i in range(1, g.n):
        if key[order[i]] != key[order[i - 1]]:
            bounds.append(i)
    bounds.append(g.n)
    return order, bounds


def canonical_labeling(g: Graph) -> tuple[CanonicalForm, list[int]]:
    """Canonical form and ``perm`` with ``perm[position] = original vertex``."""
    if g.n > MAX_CANONICAL_ORDER:
        raise GraphError(f"canonical form supports n <= {MAX_CANONICAL_ORDER}, got {g.n}")
    if g.n <= 1:
        return CanonicalForm(g.n, ""), list(range(g.n))
    order, bounds = _invariant_cells(g)
    code, perm = _kernels.min_code(g.adjacency_matrix(), np.array(order), np.array(bounds))
    nbits = g.n * (g.n - 1) // 2
    return CanonicalForm(g.n, format(code, f"0{nbits}b")), [int(p) for p in perm]


def canonical_form(g: Graph) -> CanonicalForm:
    return canonical_labeling(g)[0]


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges == h.num_edges and canonical_form(g) == canonical_form(h)


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph.empty(1),)
    seen: dict[CanonicalForm, Graph] = {}
    for g in _enumerate(n - 1):
        for mask in range(1 << (n - 1)):
            rows = list(g.rows) + [mask]
            for u in _bits(mask):
                rows[u] |= 1 << (n - 1)
            cf = canonical_form(Graph(n, tuple(rows)))
            if cf not in seen:
                seen[cf] = cf.graph()
    return tuple(seen[cf] for cf in sorted(seen, key=CanonicalForm.sort_key))


def enumerate_unlabeled(n: int) -> list[Graph]:
    """One canonically labelled representative per isomorphism class.

    Ordered by edge count, then canonical bitstring.
    """
    if not 1 <= n <= 7:
        raise GraphError(f"enumeration supports 1 <= n <= 7, got {n}")
    return list(_enumerate(n))
