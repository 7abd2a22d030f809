"""Exact re-verification of the 7-vertex flag-algebra certificate.

The certificate is a 7x7 PSD matrix M indexed by seven rooted 4-vertex
graphs (root 0, other vertices a=1, b=2, c=3):

    F1  no edges                      F5  rb rc ac bc
    F2  bc                            F6  rb rc ab ac   (4-cycle through r)
    F3  rc ac bc  (claw at c)         F7  all pairs but ra
    F4  ra rb rc  (claw at r)

For a 7-vertex graph H, every choice of root w and ordered split of the six
other vertices into 3-sets (A, B) picks the entry M[f(A), f(B)], where f(S)
is the flag induced on S + w (unlisted flags contribute 0).  There are
7 * 20 = 140 such choices.  The certificate coefficient is

    c(H) = pi3f(H) + q(H),   q(H) = sum of those 140 entries,

and the claim being checked is c(H) <= 21 for every H.  ``quadratic_density``
is the same sum divided by 140, i.e. the expectation of M[f(A), f(B)].
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .fraclp import pi3f
from .graph import Graph, GraphError, canonical_form, enumerate_unlabeled, to_graph6

DENOMINATOR = 12 * 10**9
BOUND = 21
SPLITS_PER_GRAPH = 7 * 20

M_NUMERATORS = (
    (1800000000, 2444365956, 640188285, -1524146769, 1386815580, -732139362, -129387078),
    (2444365956, 4759879134, 1177441152, -1783771230, 2546923788, -1397639394, -143552208),
    (640188285, 1177441152, 484273772, -317303211, 1038156300, -591902130, -6783162),
    (-1524146769, -1783771230, -317303211, 1558870290, -651906630, 305728704, 154602378),
    (1386815580, 2546923788, 1038156300, -651906630, 2285399634, -1283125950, -10755036),
    (-732139362, -1397639394, -591902130, 305728704, -1283125950, 734039016, -1621938),
    (-129387078, -143552208, -6783162, 154602378, -10755036, -1621938, 23860164),
)

KERNEL_VECTOR = (1, 0, 3, 1, 0, 3, 0)

# rooted flags on {0 = root, 1, 2, 3}
FLAG_EDGES = (
    (),
    ((2, 3),),
    ((0, 3), (1, 3), (2, 3)),
    ((0, 1), (0, 2), (0, 3)),
    ((0, 2), (0, 3), (1, 3), (2, 3)),
    ((0, 2), (0, 3), (1, 2), (1, 3)),
    ((0, 2), (0, 3), (1, 2), (1, 3), (2, 3)),
)
NOT_LISTED = None
FLAG_NAMES = tuple(f"F{i + 1}" for i in range(7))

# bit index of each pair in a 6-bit rooted 4-vertex pattern
_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_PAIR_BIT = {p: i for i, p in enumerate(_PAIRS)}

Matrix = list[list[Fraction]]


def matrix_M() -> Matrix:
    return [[Fraction(x, DENOMINATOR) for x in row] for row in M_NUMERATORS]


def _pattern(edges) -> int:
    return sum(1 << _PAIR_BIT[(min(u, v), max(u, v))] for u, v in edges)


def _rooted_key(pattern: int) -> int:
    # smallest pattern over the 6 permutations fixing the root
    best = None
    for p in itertools.permutations((1, 2, 3)):
        relabel = (0,) + p
        img = 0
        for i, (u, v) in enumerate(_PAIRS):
            if pattern >> i & 1:
                a, b = relabel[u], relabel[v]
                img |= 1 << _PAIR_BIT[(min(a, b), max(a, b))]
        if best is None or img < best:
            best = img
    return best


@lru_cache(maxsize=None)
def _flag_table() -> tuple:
    keys = {_rooted_key(_pattern(e)): i for i, e in enumerate(FLAG_EDGES)}
    return tuple(keys.get(_rooted_key(p), NOT_LISTED) for p in range(64))


def classify_rooted_flag(h: Graph, root: int) -> int | None:
    """Index 0..6 of the flag (h, root) is rooted-isomorphic to, or None."""
    if h.n != 4:
        raise GraphError(f"rooted flags have 4 vertices, got {h.n}")
    order = [root] + [v for v in range(4) if v != root]
    pos = {v: i for i, v in enumerate(order)}
    return _flag_table()[_pattern((pos[u], pos[v]) for u, v in h.edges())]


def _classify_in(g: Graph, w: int, others: Sequence[int]) -> int | None:
    verts = (w, *others)
    pat = 0
    for i, (a, b) in enumerate(_PAIRS):
        if g.has_edge(verts[a], verts[b]):
            pat |= 1 << i
    return _flag_table()[pat]


def flag_vector(g: Graph, w: int) -> list[Fraction]:
    """Densities of F1..F7 rooted at w over all 3-subsets of the other vertices."""
    if g.n < 4:
        raise GraphError("flag densities need at least 4 vertices")
    counts = [0] * 7
    rest = [v for v in range(g.n) if v != w]
    for s in itertools.combinations(rest, 3):
        f = _classify_in(g, w, s)
        if f is not None:
            counts[f] += 1
    total = math.comb(g.n - 1, 3)
    return [Fraction(c, total) for c in counts]


def quadratic_form(m: Matrix, v: Sequence[Fraction]) -> Fraction:
    return sum((v[i] * m[i][j] * v[j] for i in range(7) for j in range(7) if v[i] and v[j]), Fraction(0))


def _split_sum(h: Graph) -> int:
    """Sum of numerators M[f(A), f(B)] over all roots and ordered 3+3 splits."""
    if h.n != 7:
        raise GraphError(f"certificate coefficients are defined on 7 vertices, got {h.n}")
    total = 0
    for w in range(7):
        rest = [v for v in range(7) if v != w]
        for a in itertools.combinations(rest, 3):
            b = [v for v in rest if v not in a]
            fa = _classify_in(h, w, a)
            fb = _classify_in(h, w, b)
            if fa is not None and fb is not None:
                total += M_NUMERATORS[fa][fb]
    return total


def q_coefficient(h: Graph) -> Fraction:
    return Fraction(_split_sum(h), DENOMINATOR)


def quadratic_density(h: Graph) -> Fraction:
    return Fraction(_split_sum(h), DENOMINATOR * SPLITS_PER_GRAPH)


def coefficient_c(h: Graph) -> Fraction:
    return pi3f(h)[0] + q_coefficient(h)


# --- exact symmetric elimination ---------------------------------------------------


@dataclass
class Inertia:
    positive: int
    negative: int
    zero: int
    pivots: list[Fraction]
    determinant: Fraction


def _is_symmetric(m: Matrix) -> bool:
    k = len(m)
    return all(len(r) == k for r in m) and all(m[i][j] == m[j][i] for i in range(k) for j in range(i))


def inertia(m: Matrix) -> Inertia:
    """Sylvester inertia by exact symmetric elimination.

    Uses 1x1 diagonal pivots where possible and a 2x2 block pivot when every
    remaining diagonal entry is zero (such a block has one positive and one
    negative eigenvalue).
    """
    if not _is_symmetric(m):
        raise ValueError("matrix is not symmetric")
    a = [[Fraction(x) for x in row] for row in m]
    idx = list(range(len(a)))
    pos = neg = 0
    pivots: list[Fraction] = []
    det = Fraction(1)
    while idx:
        diag = [i for i in idx if a[i][i] != 0]
        if diag:
            p = max(diag, key=lambda i: abs(a[i][i]))
            piv = a[p][p]
            pivots.append(piv)
            det *= piv
            if piv > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(p)
            for i in idx:
                f = a[i][p] / piv
                if f:
                    for j in idx:
                        a[i][j] -= f * a[p][j]
            continue
        pair = next(((i, j) for i in idx for j in idx if i < j and a[i][j] != 0), None)
        if pair is None:
            break
        p, q = pair
        # block [[0, b], [b, 0]], inverse [[0, 1/b], [1/b, 0]]
        bval = a[p][q]
        pivots.extend([bval, -bval])
        det *= -bval * bval
        pos += 1
        neg += 1
        idx.remove(p)
        idx.remove(q)
        for i in idx:
            ip, iq = a[i][p], a[i][q]
            if ip or iq:
                for j in idx:
                    a[i][j] -= (ip * a[q][j] + iq * a[p][j]) / bval
    zero = len(idx)
    if zero:
        det = Fraction(0)
    return Inertia(pos, neg, zero, pivots, det)


def nullspace(m: Matrix) -> list[list[Fraction]]:
    """Exact kernel basis via reduced row echelon form."""
    rows = [[Fraction(x) for x in r] for r in m]
    ncol = len(rows[0]) if rows else 0
    pivcols = []
    r = 0
    for c in range(ncol):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivcols.append(c)
        r += 1
    free = [c for c in range(ncol) if c not in pivcols]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncol
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivcols):
            v[pc] = -rows[i][fcol]
        basis.append(v)
    return basis


@dataclass
class PSDReport:
    rank: int
    pivot_signs: list[int]
    kernel_basis: list[list[Fraction]]
    is_psd: bool


def psd_check(m: Matrix) -> PSDReport:
    inn = inertia(m)
    signs = [1 if p > 0 else -1 for p in inn.pivots]
    rank = inn.positive + inn.negative
    return PSDReport(rank, signs, nullspace(m), inn.negative == 0)


def mat_vec(m: Matrix, v: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in m]


def count_below(m: Matrix, t: Fraction) -> int:
    """Number of eigenvalues of m strictly less than t."""
    shifted = [[m[i][j] - (t if i == j else 0) for j in range(len(m))] for i in range(len(m))]
    return inertia(shifted).negative


@dataclass
class Lambda2Bracket:
    lo: Fraction
    hi: Fraction
    det_sign_lo: int
    det_sign_hi: int

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)


def lambda2_bracket(m: Matrix, tol: Fraction = Fraction(1, 10**10)) -> Lambda2Bracket:
    """Bracket the smallest positive eigenvalue of a PSD matrix by bisection.

    Each probe is an exact inertia count of m - tI; at the final endpoints the
    number of eigenvalues below lo equals the nullity and below hi exceeds it.
    """
    inn = inertia(m)
    if inn.negative:
        raise ValueError("matrix is not positive semidefinite")
    k = inn.zero
    if k == len(m):
        raise ValueError("zero matrix has no positive eigenvalue")
    lo = Fraction(0)
    hi = max(Fraction(1), sum((abs(x) for row in m for x in row), Fraction(0)))
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if count_below(m, mid) > k:
            hi = mid
        else:
            lo = mid

    def sign_det(t):
        d = inertia([[m[i][j] - (t if i == j else 0) for j in range(len(m))] for i in range(len(m))]).determinant
        return (d > 0) - (d < 0)

    return Lambda2Bracket(lo, hi, sign_det(lo), sign_det(hi))


def lambda2(m: Matrix, tol: Fraction = Fraction(1, 10**10)) -> float:
    return lambda2_bracket(m, tol).value


# --- full certificate -----------------------------------------------------------------


@dataclass
class CertificateRow:
    graph6: str
    canonical_bits: str
    edges: int
    pi3f: Fraction
    q: Fraction

    @property
    def c(self) -> Fraction:
        return self.pi3f + self.q


@dataclass
class CertificateReport:
    rows: list[CertificateRow]
    max_c: Fraction
    maximizers: list[str]
    violations: list[CertificateRow]
    psd: PSDReport
    kernel_check: bool
    lambda2: Lambda2Bracket | None = None
    bound: int = BOUND
    extra: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return not self.violations and self.max_c <= self.bound

    def to_csv(self) -> str:
        lines = ["canonical_form,graph6,edges,pi3f_num,pi3f_den,q_num,q_den,c_num,c_den"]
        for r in self.rows:
            c = r.c
            lines.append(
                f"{r.canonical_bits},{r.graph6},{r.edges},{r.pi3f.numerator},{r.pi3f.denominator},"
                f"{r.q.numerator},{r.q.denominator},{c.numerator},{c.denominator}"
            )
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        out = {
            "graphs": len(self.rows),
            "bound": self.bound,
            "max_c": str(self.max_c),
            "maximizers": self.maximizers,
            "violations": [{"graph6": r.graph6, "c": str(r.c)} for r in self.violations],
            "verdict": "pass" if self.verdict else "fail",
            "psd": {
                "rank": self.psd.rank,
                "pivot_signs": self.psd.pivot_signs,
                "kernel_basis": [[str(x) for x in v] for v in self.psd.kernel_basis],
                "is_psd": self.psd.is_psd,
                "kernel_vector_check": self.kernel_check,
            },
        }
        if self.lambda2 is not None:
            out["lambda2"] = {
                "value": self.lambda2.value,
                "lo": str(self.lambda2.lo),
                "hi": str(self.lambda2.hi),
                "det_sign_lo": self.lambda2.det_sign_lo,
                "det_sign_hi": self.lambda2.det_sign_hi,
            }
        out.update(self.extra)
        return out


def _row(h: Graph) -> CertificateRow:
    value, _ = pi3f(h)
    return CertificateRow(to_graph6(h), canonical_form(h).bits, h.num_edges, value, q_coefficient(h))


def verify_certificate(workers: int | None = None, with_lambda2: bool = True) -> CertificateReport:
    graphs = enumerate_unlabeled(7)
    if workers == 1:
        rows = [_row(h) for h in graphs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, graphs, chunksize=16))
    max_c = max(r.c for r in rows)
    maximizers = [r.graph6 for r in rows if r.c == max_c]
    violations = [r for r in rows if r.c > BOUND]
    m = matrix_M()
    kernel_ok = all(x == 0 for x in mat_vec(m, KERNEL_VECTOR))
    bracket = lambda2_bracket(m) if with_lambda2 else None
    return CertificateReport(rows, max_c, maximizers, violations, psd_check(m), kernel_ok, bracket)


def turan_sample_average(n: int) -> Fraction:
    """Average of c_H over the induced 7-vertex subgraphs of T2(n), exactly."""
    a, b = n // 2, n - n // 2
    total = math.comb(n, 7)
    avg = Fraction(0)
    for k in range(8):
        weight = math.comb(a, k) * math.comb(b, 7 - k)
        if weight:
            avg += Fraction(weight, total) * coefficient_c(turan2_parts(k, 7 - k))
    return avg


def turan2_parts(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((u, v) for u in range(a) for v in range(a, a + b)))
