"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py --repeat 5 --json bench.json
"""
import argparse
import json
import time

import numpy as np

from equitc import backend
from equitc.cohomology.algebra import Element, tensor_power
from equitc.cohomology.rings import build_ring


def _random_element(ring, rng, terms):
    keys = rng.choice(ring.dim, size=min(terms, ring.dim), replace=False)
    return Element(ring, {int(k): int(rng.integers(1, 5)) for k in keys})


def _time(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases(seed):
    rng = np.random.default_rng(seed)
    ring = tensor_power(build_ring("surface_Z", 3), 3)
    x, y = _random_element(ring, rng, 300), _random_element(ring, rng, 300)
    yield "tensor_mul 300x300 terms, surface_Z(3)^3", lambda: x * y
    ring2 = tensor_power(build_ring("surface_F2", 2), 4)
    u, v = _random_element(ring2, rng, 400), _random_element(ring2, rng, 400)
    yield "tensor_mul 400x400 terms, surface_F2(2)^4", lambda: u * v
    for n in (200, 600):
        m = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
        yield f"gf2_rref {n}x{n}", lambda m=m: backend.kernels.gf2_rref(m)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write the timings here")
    args = ap.parse_args()

    names = sorted(backend.BACKENDS)
    rows = []
    for label, fn in cases(args.seed):
        times = {}
        for name in names:
            backend.use(name)
            fn()
            times[name] = _time(fn, args.repeat)
        rows.append({"case": label, **{f"{k}_s": v for k, v in times.items()}})
    backend.use("compiled" if "compiled" in names else "python")

    width = max(len(r["case"]) for r in rows)
    print(f"{'case':<{width}}  " + "  ".join(f"{n:>10}" for n in names) + ("    speedup" if len(names) > 1 else ""))
    for r in rows:
        line = f"{r['case']:<{width}}  " + "  ".join(f"{r[n + '_s'] * 1e3:>8.2f}ms" for n in names)
        if len(names) > 1:
            line += f"  {r['python_s'] / r['compiled_s']:>8.1f}x"
        print(line)
    if len(names) == 1:
        print("compiled extension not built; only the numpy fallback was timed")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
