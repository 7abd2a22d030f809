"""Hot combinatorial kernels.

Every kernel is written in the numba-compatible subset of Python/numpy and is
compiled with ``numba.njit`` unless ``TRIDECOMP_NUMBA=0`` is set in the
environment (or numba is not importable), in which case the same source runs
as plain Python.  The canonical-code kernel additionally has a vectorised
numpy implementation used on the fallback path.

The flag is read once at import time; ``benchmarks/bench_kernels.py`` runs
each path in its own interpreter.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _env_wants_numba() -> bool:
    flag = os.environ.get("TRIDECOMP_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


USE_NUMBA = HAVE_NUMBA and _env_wants_numba()

PACK_OPTIMAL = 0
PACK_BUDGET = 1


def kernel(fn):
    """``numba.njit`` when enabled, identity otherwise."""
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


# ---------------------------------------------------------------------------
# canonical code: minimum graph6-ordered adjacency code over permutations that
# keep every vertex inside its invariant cell
# ---------------------------------------------------------------------------


def _next_perm(perm, lo, hi):
    # in-place lexicographic successor of perm[lo:hi]; on wrap-around the
    # segment is reset to ascending order and False is returned
    i = hi - 2
    while i >= lo and perm[i] >= perm[i + 1]:
        i -= 1
    if i < lo:
        a = lo
        b = hi - 1
        while a < b:
            tmp = perm[a]
            perm[a] = perm[b]
            perm[b] = tmp
            a += 1
            b -= 1
        return False
    j = hi - 1
    while perm[j] <= perm[i]:
        j -= 1
    tmp = perm[i]
    perm[i] = perm[j]
    perm[j] = tmp
    a = i + 1
    b = hi - 1
    while a < b:
        tmp = perm[a]
        perm[a] = perm[b]
        perm[b] = tmp
        a += 1
        b -= 1
    return True


def _min_code(adj, order, cell_bounds):
    """Return (code, perm) minimising the code; perm[position] = vertex."""
    n = order.shape[0]
    perm = order.copy()
    ncells = cell_bounds.shape[0] - 1
    nbits = n * (n - 1) // 2
    best = np.int64(-1)
    best_perm = perm.copy()
    while True:
        code = np.int64(0)
        used = 0
        pruned = False
        for j in range(1, n):
            pj = perm[j]
            for i in range(j):
                code = code * 2 + adj[perm[i], pj]
            used += j
            if best >= 0 and (code << (nbits - used)) > best:
                pruned = True
                break
        if not pruned and (best < 0 or code < best):
            best = code
            best_perm[:] = perm
        c = ncells - 1
        while c >= 0:
            if _next_perm(perm, cell_bounds[c], cell_bounds[c + 1]):
                break
            c -= 1
        if c < 0:
            break
    return best, best_perm


def _min_code_numpy(adj, order, cell_bounds, chunk=65536):
    """Vectorised fallback: materialise cell-respecting permutations in chunks."""
    n = order.shape[0]
    cells = [order[cell_bounds[c]:cell_bounds[c + 1]] for c in range(len(cell_bounds) - 1)]
    ii, jj = [], []
    for j in range(1, n):
        for i in range(j):
            ii.append(i)
            jj.append(j)
    ii = np.asarray(ii, dtype=np.int64)
    jj = np.asarray(jj, dtype=np.int64)
    weights = (np.int64(1) << np.arange(len(ii) - 1, -1, -1, dtype=np.int64)) if len(ii) else np.zeros(0, np.int64)
    best = -1
    best_perm = order.copy()
    gen = itertools.product(*(itertools.permutations(c.tolist()) for c in cells))
    while True:
        block = list(itertools.islice(gen, chunk))
        if not block:
            break
        perms = np.array([sum(p, ()) for p in block], dtype=np.int64).reshape(len(block), n)
        if len(ii):
            bits = adj[perms[:, ii], perms[:, jj]].astype(np.int64)
            codes = bits @ weights
        else:
            codes = np.zeros(len(block), dtype=np.int64)
        k = int(np.argmin(codes))
        if best < 0 or codes[k] < best:
            best = int(codes[k])
            best_perm = perms[k].copy()
    return np.int64(best), best_perm


# ---------------------------------------------------------------------------
# triangle packing / triangle decomposition by depth-first branch and bound
# ---------------------------------------------------------------------------


def _pack_bound(avail, odd, sum_half):
    # triangles preserve degree parity, so the leftover graph has the same odd
    # vertex set as the available graph; it needs >= odd/2 edges, its size is
    # congruent to avail mod 3, and a nonempty even graph has >= 3 edges
    b1 = sum_half // 3
    if odd == 0:
        r = avail % 3
        if r == 0:
            leftover = 0
        elif r == 1:
            leftover = 4
        else:
            leftover = 5
    else:
        leftover = odd // 2
        while (avail - leftover) % 3 != 0:
            leftover += 1
    b2 = (avail - leftover) // 3
    if b2 < 0:
        b2 = 0
    return b1 if b1 < b2 else b2


def _pack(n, eu, ev, tptr, tlist, tri_e, allow_discard, budget):
    """Exact maximum edge-disjoint triangle packing.

    Branches on the lowest-indexed available edge: each of its available
    triangles in stored order, then (if ``allow_discard``) leaving it out.
    With ``allow_discard`` false the search is a perfect-decomposition
    backtrack and only succeeds when every edge is used.

    Returns (best, solution, nodes, status).  ``best`` is -1 when no complete
    leaf was reached.
    """
    m = eu.shape[0]
    status = np.zeros(m, dtype=np.int8)  # 0 available, 1 in triangle, 2 discarded
    deg = np.zeros(n, dtype=np.int64)
    for k in range(m):
        deg[eu[k]] += 1
        deg[ev[k]] += 1
    odd = 0
    sum_half = 0
    for v in range(n):
        odd += deg[v] % 2
        sum_half += deg[v] // 2
    avail = m

    if allow_discard:
        target = _pack_bound(avail, odd, sum_half)
    else:
        target = m // 3

    stack_e = np.zeros(m + 1, dtype=np.int64)
    stack_k = np.zeros(m + 1, dtype=np.int64)
    stack_applied = np.zeros(m + 1, dtype=np.int64)
    cur_sol = np.zeros(m // 3 + 1, dtype=np.int64)
    best_sol = np.zeros(m // 3 + 1, dtype=np.int64)
    cur = 0
    best = -1
    nodes = 0
    depth = 0
    start = 0
    entering = True

    while True:
        if entering:
            entering = False
            nodes += 1
            e = start
            while e < m and status[e] != 0:
                e += 1
            pushed = False
            if e == m:
                if cur > best:
                    best = cur
                    for q in range(cur):
                        best_sol[q] = cur_sol[q]
            elif allow_discard:
                if cur + _pack_bound(avail, odd, sum_half) > best:
                    pushed = True
            else:
                pushed = True
            if pushed:
                stack_e[depth] = e
                stack_k[depth] = 0
                stack_applied[depth] = -1
            else:
                depth -= 1
        if depth < 0 or best >= target or nodes > budget:
            break

        e = stack_e[depth]
        a = stack_applied[depth]
        if a >= 0:
            cur -= 1
            for r in range(3):
                f = tri_e[a, r]
                status[f] = 0
                avail += 1
                for x in (eu[f], ev[f]):
                    sum_half -= deg[x] // 2
                    deg[x] += 1
                    sum_half += deg[x] // 2
                    if deg[x] % 2 == 1:
                        odd += 1
                    else:
                        odd -= 1
        elif a == -2:
            status[e] = 0
            avail += 1
            for x in (eu[e], ev[e]):
                sum_half -= deg[x] // 2
                deg[x] += 1
                sum_half += deg[x] // 2
                if deg[x] % 2 == 1:
                    odd += 1
                else:
                    odd -= 1
        stack_applied[depth] = -1

        k = stack_k[depth]
        nt = tptr[e + 1] - tptr[e]
        applied = False
        while k < nt:
            t = tlist[tptr[e] + k]
            k += 1
            if status[tri_e[t, 0]] == 0 and status[tri_e[t, 1]] == 0 and status[tri_e[t, 2]] == 0:
                for r in range(3):
                    f = tri_e[t, r]
                    status[f] = 1
                    avail -= 1
                    for x in (eu[f], ev[f]):
                        sum_half -= deg[x] // 2
                        deg[x] -= 1
                        sum_half += deg[x] // 2
                        if deg[x] % 2 == 1:
                            odd += 1
                        else:
                            odd -= 1
                cur_sol[cur] = t
                cur += 1
                stack_applied[depth] = t
                applied = True
                break
        if not applied and allow_discard and k == nt:
            k += 1
            status[e] = 2
            avail -= 1
            for x in (eu[e], ev[e]):
                sum_half -= deg[x] // 2
                deg[x] -= 1
                sum_half += deg[x] // 2
                if deg[x] % 2 == 1:
                    odd += 1
                else:
                    odd -= 1
            stack_applied[depth] = -2
            applied = True
        stack_k[depth] = k
        if not applied:
            depth -= 1
            if depth < 0:
                break
            continue
        depth += 1
        start = e + 1
        entering = True

    if best >= target:
        code = 0
    elif nodes > budget:
        code = 1
    else:
        code = 0
    if best < 0:
        best = -1
    return best, best_sol[: max(best, 0)].copy(), nodes, code


_next_perm = kernel(_next_perm)
_pack_bound = kernel(_pack_bound)
_min_code = kernel(_min_code)
_pack = kernel(_pack)


def min_code(adj, order, cell_bounds):
    adj = np.ascontiguousarray(adj, dtype=np.int64)
    order = np.ascontiguousarray(order, dtype=np.int64)
    cell_bounds = np.ascontiguousarray(cell_bounds, dtype=np.int64)
    if USE_NUMBA:
        code, perm = _min_code(adj, order, cell_bounds)
    else:
        code, perm = _min_code_numpy(adj, order, cell_bounds)
    return int(code), perm


def pack(n, eu, ev, tptr, tlist, tri_e, allow_discard, budget):
    best, sol, nodes, code = _pack(
        np.int64(n), eu, ev, tptr, tlist, tri_e, bool(allow_discard), np.int64(budget)
    )
    return int(best), [int(t) for t in sol], int(nodes), int(code)
