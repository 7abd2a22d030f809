"""Exact rational linear programming and fractional edge/triangle decompositions.

The solver is a dense two-phase tableau simplex over ``fractions.Fraction``
with Bland's rule.  Every optimum it reports carries a dual vector, and both
primal and dual feasibility are re-checked exactly against the input
problem before returning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graph import Edge, Graph, Triangle, triangles

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

SENSES = (">=", "<=", "=")

MAX_PI3F_ORDER = 12

ZERO = Fraction(0)
ONE = Fraction(1)


class LPError(ValueError):
    pass


@dataclass
class LinearProgram:
    """minimize c.x  s.t.  rows[i] . x  (sense[i])  rhs[i],  lower <= x <= upper.

    ``lower`` entries default to 0; ``None`` means unbounded on that side.
    """

    objective: list[Fraction]
    rows: list[list[Fraction]] = field(default_factory=list)
    senses: list[str] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)
    lower: list[Fraction | None] | None = None
    upper: list[Fraction | None] | None = None
    names: list[str] | None = None

    def __post_init__(self):
        nv = len(self.objective)
        self.objective = [Fraction(c) for c in self.objective]
        self.rows = [[Fraction(a) for a in row] for row in self.rows]
        self.rhs = [Fraction(b) for b in self.rhs]
        if self.lower is None:
            self.lower = [ZERO] * nv
        if self.upper is None:
            self.upper = [None] * nv
        self.lower = [None if x is None else Fraction(x) for x in self.lower]
        self.upper = [None if x is None else Fraction(x) for x in self.upper]
        if self.names is None:
            self.names = [f"x{j}" for j in range(nv)]
        if not (len(self.rows) == len(self.senses) == len(self.rhs)):
            raise LPError("rows, senses and rhs differ in length")
        if any(len(r) != nv for r in self.rows):
            raise LPError("constraint row length differs from objective length")
        if len(self.lower) != nv or len(self.upper) != nv or len(self.names) != nv:
            raise LPError("bounds or names differ in length from objective")
        bad = [s for s in self.senses if s not in SENSES]
        if bad:
            raise LPError(f"unknown constraint sense {bad[0]!r}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add_row(self, coeffs: dict[int, Fraction] | Sequence, sense: str, rhs) -> None:
        if isinstance(coeffs, dict):
            row = [ZERO] * self.num_vars
            for j, a in coeffs.items():
                row[j] = Fraction(a)
        else:
            row = [Fraction(a) for a in coeffs]
        self.rows.append(row)
        self.senses.append(sense)
        self.rhs.append(Fraction(rhs))
        self.__post_init__()

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        for j, xj in enumerate(x):
            lo, hi = self.lower[j], self.upper[j]
            if (lo is not None and xj < lo) or (hi is not None and xj > hi):
                return False
        for row, s, b in zip(self.rows, self.senses, self.rhs):
            lhs = sum((a * xj for a, xj in zip(row, x) if a), ZERO)
            if (s == ">=" and lhs < b) or (s == "<=" and lhs > b) or (s == "=" and lhs != b):
                return False
        return True

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * xj for c, xj in zip(self.objective, x) if c), ZERO)

    def to_text(self) -> str:
        def term_list(coeffs):
            parts = [f"{'+' if a > 0 else '-'} {abs(a)} {self.names[j]}" for j, a in enumerate(coeffs) if a]
            s = " ".join(parts) if parts else "0"
            return s[2:] if s.startswith("+ ") else s

        lines = [f"minimize {term_list(self.objective)}", "subject to"]
        for i, (row, s, b) in enumerate(zip(self.rows, self.senses, self.rhs)):
            lines.append(f"  c{i}: {term_list(row)} {s} {b}")
        lines.append("bounds")
        for j in range(self.num_vars):
            lo = "-inf" if self.lower[j] is None else str(self.lower[j])
            hi = "+inf" if self.upper[j] is None else str(self.upper[j])
            lines.append(f"  {lo} <= {self.names[j]} <= {hi}")
        return "\n".join(lines) + "\n"


@dataclass
class LPResult:
    status: str
    optimum: Fraction | None = None
    solution: list[Fraction] | None = None
    dual: list[Fraction] | None = None
    pivots: int = 0


class _Standard:
    """min c.y, A y = b, y >= 0, b >= 0, built from a LinearProgram.

    x_j is recovered as ``offset[j] + sum(sign * y_k for (k, sign) in cols[j])``.
    """

    def __init__(self, lp: LinearProgram):
        nv = lp.num_vars
        self.cols: list[list[tuple[int, int]]] = []
        self.offset: list[Fraction] = []
        ny = 0
        for j in range(nv):
            lo, hi = lp.lower[j], lp.upper[j]
            if lo is not None:
                self.cols.append([(ny, 1)])
                self.offset.append(lo)
                ny += 1
            elif hi is not None:
                self.cols.append([(ny, -1)])
                self.offset.append(hi)
                ny += 1
            else:
                self.cols.append([(ny, 1), (ny + 1, -1)])
                self.offset.append(ZERO)
                ny += 2
        rows, senses, rhs = [], [], []
        for row, s, b in zip(lp.rows, lp.senses, lp.rhs):
            rows.append(row)
            senses.append(s)
            rhs.append(b)
        for j in range(nv):
            if lp.lower[j] is not None and lp.upper[j] is not None:
                unit = [ZERO] * nv
                unit[j] = ONE
                rows.append(unit)
                senses.append("<=")
                rhs.append(lp.upper[j])

        def to_y(row):
            out = [ZERO] * ny
            for j, a in enumerate(row):
                if a:
                    for k, sg in self.cols[j]:
                        out[k] += sg * a
            return out

        self.c = to_y(lp.objective)
        self.c0 = sum((c * o for c, o in zip(lp.objective, self.offset) if c), ZERO)
        self.A: list[list[Fraction]] = []
        self.b: list[Fraction] = []
        self.slack_sign: list[int] = []
        self.row_flip: list[int] = []
        self.senses = senses
        for row, s, b in zip(rows, senses, rhs):
            shift = sum((a * o for a, o in zip(row, self.offset) if a), ZERO)
            self.A.append(to_y(row))
            self.b.append(b - shift)
        self.ny = ny
        self.m = len(self.A)


def lp_solve_min(lp: LinearProgram) -> LPResult:
    std = _Standard(lp)
    m, ny = std.m, std.ny
    # columns: y (ny) | slack/surplus (one per inequality row) | artificial (m)
    slack_col: list[int | None] = []
    nslack = 0
    for s in std.senses:
        if s == "=":
            slack_col.append(None)
        else:
            slack_col.append(ny + nslack)
            nslack += 1
    art0 = ny + nslack
    ncol = art0 + m
    T: list[list[Fraction]] = []
    flip: list[int] = []
    for i in range(m):
        row = std.A[i] + [ZERO] * (nslack + m)
        if slack_col[i] is not None:
            row[slack_col[i]] = ONE if std.senses[i] == "<=" else -ONE
        b = std.b[i]
        sgn = 1
        if b < 0:
            row = [-a for a in row]
            b = -b
            sgn = -1
        row[art0 + i] = ONE
        row.append(b)
        T.append(row)
        flip.append(sgn)
    basis = [art0 + i for i in range(m)]
    pivots = 0

    def run(cost: list[Fraction], allowed: int) -> str:
        nonlocal pivots
        # reduced-cost row d_j = cost_j - cost_B . T[:, j]; last entry is -objective
        d = list(cost) + [ZERO]
        for i, bi in enumerate(basis):
            cb = cost[bi]
            if cb:
                Ti = T[i]
                for j in range(ncol + 1):
                    if Ti[j]:
                        d[j] -= cb * Ti[j]
        while True:
            enter = next((j for j in range(allowed) if d[j] < 0), None)
            if enter is None:
                return OPTIMAL
            best = None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][ncol] / a
                    key = (ratio, basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            _pivot(T, d, best[1], enter)
            basis[best[1]] = enter
            pivots += 1

    phase1 = [ZERO] * art0 + [ONE] * m
    run(phase1, ncol)
    infeas = sum((T[i][ncol] for i, bi in enumerate(basis) if bi >= art0), ZERO)
    if infeas > 0:
        return LPResult(INFEASIBLE, pivots=pivots)
    # drive remaining (zero-level) artificials out of the basis where possible
    for i, bi in enumerate(basis):
        if bi >= art0:
            j = next((j for j in range(art0) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, None, i, j)
                basis[i] = j
                pivots += 1
    phase2 = std.c + [ZERO] * (nslack + m)
    status = run(phase2, art0)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=pivots)

    y = [ZERO] * ncol
    for i, bi in enumerate(basis):
        y[bi] = T[i][ncol]
    # duals from the artificial columns, which started as the identity
    d = list(phase2) + [ZERO]
    for i, bi in enumerate(basis):
        cb = phase2[bi]
        if cb:
            for j in range(ncol + 1):
                if T[i][j]:
                    d[j] -= cb * T[i][j]
    dual_std = [-d[art0 + i] * flip[i] for i in range(m)]

    x = []
    for j in range(lp.num_vars):
        x.append(std.offset[j] + sum((sg * y[k] for k, sg in std.cols[j]), ZERO))
    opt = lp.value(x)
    _certify(lp, std, x, dual_std, opt)
    return LPResult(OPTIMAL, opt, x, dual_std[: len(lp.rows)], pivots)


def _pivot(T, d, r, c):
    pr = T[r]
    piv = pr[c]
    if piv != 1:
        inv = 1 / piv
        for j in range(len(pr)):
            if pr[j]:
                pr[j] *= inv
    nz = [j for j in range(len(pr)) if pr[j]]
    for i, row in enumerate(T):
        if i != r:
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * pr[j]
    if d is not None:
        f = d[c]
        if f:
            for j in nz:
                d[j] -= f * pr[j]


def _certify(lp: LinearProgram, std: _Standard, x, dual, opt):
    """Exact optimality certificate: primal feasible, dual feasible, equal objectives."""
    if not lp.is_feasible(x):
        raise AssertionError("simplex returned an infeasible point")
    for i, s in enumerate(std.senses):
        if (s == ">=" and dual[i] < 0) or (s == "<=" and dual[i] > 0):
            raise AssertionError(f"dual sign violated on row {i}")
    for k in range(std.ny):
        reduced = std.c[k] - sum((dual[i] * std.A[i][k] for i in range(std.m) if std.A[i][k]), ZERO)
        if reduced < 0:
            raise AssertionError(f"dual infeasible on column {k}")
    dual_obj = std.c0 + sum((dual[i] * std.b[i] for i in range(std.m) if dual[i]), ZERO)
    if dual_obj != opt:
        raise AssertionError(f"duality gap {opt - dual_obj}")


# --- fractional decompositions -------------------------------------------------


@dataclass
class FractionalWeights:
    host: Graph
    edge_weight: dict[Edge, Fraction]
    triangle_weight: dict[Triangle, Fraction]

    def cost(self) -> Fraction:
        return 2 * sum(self.edge_weight.values(), ZERO) + 3 * sum(self.triangle_weight.values(), ZERO)

    def coverage(self) -> dict[Edge, Fraction]:
        cov = dict(self.edge_weight)
        for (a, b, c), w in self.triangle_weight.items():
            for e in ((a, b), (a, c), (b, c)):
                cov[e] += w
        return cov

    def is_valid(self) -> bool:
        ws = list(self.edge_weight.values()) + list(self.triangle_weight.values())
        return all(0 <= w <= 1 for w in ws) and all(c >= 1 for c in self.coverage().values())


def pi3f_program(g: Graph) -> tuple[LinearProgram, list[Edge], list[Triangle]]:
    edges = g.edges()
    tris = triangles(g)
    eid = {e: i for i, e in enumerate(edges)}
    ne = len(edges)
    nv = ne + len(tris)
    names = [f"e{u}_{v}" for u, v in edges] + [f"t{a}_{b}_{c}" for a, b, c in tris]
    lp = LinearProgram(
        [Fraction(2)] * ne + [Fraction(3)] * len(tris),
        lower=[ZERO] * nv,
        upper=[ONE] * nv,
        names=names,
    )
    rows = [[ZERO] * nv for _ in range(ne)]
    for i in range(ne):
        rows[i][i] = ONE
    for k, (a, b, c) in enumerate(tris):
        for e in ((a, b), (a, c), (b, c)):
            rows[eid[e]][ne + k] = ONE
    lp.rows = rows
    lp.senses = [">="] * ne
    lp.rhs = [ONE] * ne
    return lp, edges, tris


def pi3f(g: Graph) -> tuple[Fraction, FractionalWeights]:
    if g.n > MAX_PI3F_ORDER:
        raise LPError(f"fractional decomposition LP is limited to n <= {MAX_PI3F_ORDER}")
    if g.num_edges == 0:
        return ZERO, FractionalWeights(g, {}, {})
    lp, edges, tris = pi3f_program(g)
    res = lp_solve_min(lp)
    if res.status != OPTIMAL:
        raise AssertionError(f"fractional LP reported {res.status}")
    ne = len(edges)
    w = FractionalWeights(
        g,
        dict(zip(edges, res.solution[:ne])),
        dict(zip(tris, res.solution[ne:])),
    )
    assert w.is_valid() and w.cost() == res.optimum
    return res.optimum, w
