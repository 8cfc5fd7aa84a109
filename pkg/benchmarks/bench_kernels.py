"""Time the jitted kernels against the pure-numpy fallback.

Runs the same workload twice in subprocesses, once as installed and once
with the fallback env flag set, and prints a small comparison table.  The
workload covers the three hot paths: single constraint-integral
evaluations (the unit of work of a root scan), a full best_constant solve
(scan + refinement + objective evaluations), and the direct variational
descent.
"""

import json
import os
import subprocess
import sys
import time

FLAG = "WIRTINGER_NO_NUMBA"


def _workload():
    import numpy as np

    from wirtinger._jit import NUMBA_ENABLED
    from wirtinger.core import F_of_m, Params
    from wirtinger.oracle import minimize_direct
    from wirtinger.solver import best_constant

    prm = Params(2.0, 8.0, 2.0)
    # Warm up: compile (jitted path) and fault in caches on both paths.
    F_of_m(0.7, prm)
    best_constant(Params(2.0, 2.0, 2.0))
    minimize_direct(Params(2.0, 2.0, 2.0), n_grid=100, restarts=0,
                    max_iters=300)

    out = {"numba": NUMBA_ENABLED}

    t0 = time.perf_counter()
    for m in np.linspace(0.2, 0.99, 100):
        F_of_m(float(m), prm)
    out["F_eval_x100"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    best_constant(Params(2.0, 10.0, 2.0))
    out["best_constant_2_10_2"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    minimize_direct(Params(2.0, 2.0, 2.0), n_grid=200, seed=0, restarts=1)
    out["oracle_2_2_2_n200"] = time.perf_counter() - t0

    print(json.dumps(out))


def main() -> int:
    if "--worker" in sys.argv:
        _workload()
        return 0

    here = os.path.abspath(__file__)
    results = {}
    for label, disable in (("jitted", False), ("numpy", True)):
        env = dict(os.environ)
        env.pop(FLAG, None)
        if disable:
            env[FLAG] = "1"
        proc = subprocess.run([sys.executable, here, "--worker"],
                              capture_output=True, text=True, env=env)
        if proc.returncode != 0:
            print(proc.stderr, file=sys.stderr)
            return 1
        results[label] = json.loads(proc.stdout.strip().splitlines()[-1])

    if results["jitted"]["numba"] is not True:
        print("note: numba unavailable, both columns ran the numpy path")

    names = [k for k in results["jitted"] if k != "numba"]
    width = max(len(n) for n in names)
    print(f"{'case':<{width}}  {'jitted':>10}  {'numpy':>10}  {'speedup':>8}")
    for name in names:
        tj = results["jitted"][name]
        tn = results["numpy"][name]
        print(f"{name:<{width}}  {tj:>9.3f}s  {tn:>9.3f}s  {tn / tj:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
