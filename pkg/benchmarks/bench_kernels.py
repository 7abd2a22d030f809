"""Compare the numba kernels against the pure-Python/numpy fallback.

Each path runs in a fresh interpreter with TRIDECOMP_NUMBA set accordingly,
because the flag is read when the kernels module is imported.  A warm-up call
precedes timing so JIT compilation (or cache loading) is excluded.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from tridecomp import _kernels
from tridecomp.graph import canonical_form, complete, complete_minus_matching, enumerate_unlabeled
from tridecomp.decomp import max_triangle_packing

repeat = int(sys.argv[1])
rng = np.random.default_rng(7)
graphs = enumerate_unlabeled(7)
shuffled = [g.relabel(rng.permutation(g.n).tolist()) for g in graphs]
hosts = [complete(n) for n in range(9, 14)] + [complete_minus_matching(13, m) for m in (2, 5)]

def canon():
    for g in shuffled:
        canonical_form(g)

def pack():
    for g in hosts:
        max_triangle_packing(g)

out = {"numba": _kernels.USE_NUMBA}
for name, fn in (("canonical_forms_1044x", canon), ("triangle_packing_7_hosts", pack)):
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter(); fn(); times.append(time.perf_counter() - t)
    out[name] = min(times)
print(json.dumps(out))
"""


def run_path(use_numba: bool, repeat: int) -> dict:
    env = dict(os.environ, TRIDECOMP_NUMBA="1" if use_numba else "0")
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run_path(True, args.repeat)
    slow = run_path(False, args.repeat)
    print(f"{'workload':28s} {'numba s':>10s} {'python s':>10s} {'speedup':>8s}")
    for key in fast:
        if key == "numba":
            continue
        print(f"{key:28s} {fast[key]:10.4f} {slow[key]:10.4f} {slow[key] / fast[key]:7.1f}x")
    if not fast["numba"]:
        print("note: numba unavailable, both columns ran the fallback")


if __name__ == "__main__":
    main()
