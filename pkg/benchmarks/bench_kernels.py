#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Each lane runs in a subprocess with LENSROOTS_KERNELS pinned, so the
import-time backend selection is exercised exactly as in production.

    python benchmarks/bench_kernels.py [--boxes 20000] [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import textwrap

WORKER = textwrap.dedent("""
    import json, sys, time
    import numpy as np
    from lensroots import families as fam, mixedpoly as mp, solver
    from lensroots import _kernels as K

    nboxes = int(sys.argv[1])
    repeat = int(sys.argv[2])

    f = fam.ell_eps(7, 3, 0.7, 1e-9)
    F = f.as_arrays()
    FZ = mp.diff_z(f).as_arrays()
    FZB = mp.diff_zb(f).as_arrays()
    rng = np.random.default_rng(0)
    lo = rng.uniform(-2, 2, (nboxes, 2))
    w = rng.uniform(1e-3, 0.3, (nboxes, 2))
    boxes = np.stack([lo[:, 0], lo[:, 0] + w[:, 0], lo[:, 1], lo[:, 1] + w[:, 1]], axis=1)
    pts = rng.uniform(-2, 2, (2, 200000))

    def best(fn):
        times = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t0)
        return min(times)

    # warm (possible jit compile) before timing
    K.enclose(*F, boxes[:64]); K.enclose_taylor(*F, boxes[:64])
    K.krawczyk(*F, *FZ, *FZB, boxes[:64], 0.5)
    K.eval_points(*F, pts[0][:64], pts[1][:64])

    out = {"backend": K.backend_name()}
    out["enclose"] = best(lambda: K.enclose(*F, boxes))
    out["enclose_taylor"] = best(lambda: K.enclose_taylor(*F, boxes))
    out["krawczyk"] = best(lambda: K.krawczyk(*F, *FZ, *FZB, boxes, 0.5))
    out["eval_points"] = best(lambda: K.eval_points(*F, pts[0], pts[1]))

    t0 = time.perf_counter()
    inv = solver.isolate_roots(f, solver.default_box(f))
    out["solve_ell_eps_7_3"] = time.perf_counter() - t0
    out["rho"] = inv.rho
    print(json.dumps(out))
""")


def run_lane(backend: str, nboxes: int, repeat: int) -> dict:
    env = dict(os.environ, LENSROOTS_KERNELS=backend)
    proc = subprocess.run([sys.executable, "-c", WORKER, str(nboxes), str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--boxes", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    lanes = [run_lane(b, args.boxes, args.repeat) for b in ("numpy", "numba")]
    assert lanes[0]["rho"] == lanes[1]["rho"], "backends disagree on rho"

    keys = ["enclose", "enclose_taylor", "krawczyk", "eval_points",
            "solve_ell_eps_7_3"]
    print(f"{'kernel':<22}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for key in keys:
        a, b = lanes[0][key], lanes[1][key]
        print(f"{key:<22}{a:>12.4f}{b:>12.4f}{a / b:>10.2f}x")
    print(f"\nidentical certified count on both lanes: rho = {lanes[0]['rho']}")


if __name__ == "__main__":
    main()
