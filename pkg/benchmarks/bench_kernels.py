"""Compare the compiled kernels against the pure-Python fallback.

Run:  python3 benchmarks/bench_kernels.py
Both backends are imported directly so one process can time them side by
side, regardless of which one the package selected at import.
"""

import time

import numpy as np

from feedsim._kernels import py_kernels
from feedsim.ik import IKRequest, solve_ik
from feedsim.kinematics import fk_position_only
from feedsim.model import load_default_model

try:
    from feedsim._kernels import _fastkin
except ImportError:
    _fastkin = None


def time_call(fn, *args, repeat=3, number=2000):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(number):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / number)
    return best


def bench_backend(name, mod, model, qs):
    dh = model.dh_array
    q = qs[0]
    fk_t = time_call(mod.fk_position, dh, q)
    jac_t = time_call(mod.jacobian_central, dh, q, 1e-4, number=500)
    batch_t = time_call(mod.fk_positions_batch, dh, qs, number=20)
    print(f"{name:>8}: fk {fk_t * 1e6:8.2f} µs   jacobian {jac_t * 1e6:8.2f} µs   "
          f"batch[{len(qs)}] {batch_t * 1e3:8.3f} ms")
    return fk_t, jac_t, batch_t


def bench_ik(model, n=100):
    rng = np.random.default_rng(3)
    lo, hi = model.limits_lo, model.limits_hi
    total = 0.0
    solved = 0
    for _ in range(n):
        q_true = rng.uniform(lo, hi)
        target = fk_position_only(model, q_true)
        seed = model.clamp(q_true + rng.uniform(-5, 5, 5))
        t0 = time.perf_counter()
        res = solve_ik(model, IKRequest(target, seed, tol=1e-3))
        total += time.perf_counter() - t0
        solved += res.converged
    print(f"      ik: {total / n * 1e3:8.3f} ms/solve  ({solved}/{n} converged, "
          f"active backend)")


def main():
    model = load_default_model()
    rng = np.random.default_rng(0)
    qs = np.ascontiguousarray(rng.uniform(model.limits_lo, model.limits_hi, (1000, 5)))

    results = {}
    results["python"] = bench_backend("python", py_kernels, model, qs)
    if _fastkin is not None:
        results["cython"] = bench_backend("cython", _fastkin, model, qs)
        speedups = [p / c for p, c in zip(results["python"], results["cython"])]
        print("speedup: " + "   ".join(f"{s:.1f}x" for s in speedups)
              + "   (fk / jacobian / batch)")
    else:
        print("compiled backend not available; showing fallback only")
    bench_ik(model)


if __name__ == "__main__":
    main()
