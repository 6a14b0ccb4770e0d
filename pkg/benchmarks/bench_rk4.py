"""Compare the compiled and numpy RK4 kernels on the sweep workload.

Usage: python benchmarks/bench_rk4.py [--sites 3 4 5 6 7 8] [--steps 2000] [--repeat 3]
"""
import argparse
import time

import numpy as np

from majorana_ions import kernels
from majorana_ions.dynamics import Schedule, _sweep_operators, all_down_state
from majorana_ions.model import perturbed_chain, with_nnn


def workload(n, steps):
    ops = _sweep_operators(with_nnn(perturbed_chain(n)))
    sched = Schedule(float(steps) * 0.01)
    dt = sched.T_total / steps
    grid = np.arange(steps) * dt
    coefs = np.empty((steps, 3, 3))
    for k, off in enumerate((0.0, 0.5 * dt, dt)):
        coefs[:, k, 0] = sched.h_z(grid + off)
        coefs[:, k, 1] = sched.J(grid + off)
        coefs[:, k, 2] = 1.0
    record = np.array([0, steps], dtype=np.int64)
    return ops, coefs, all_down_state(n), dt, record


def best_time(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sites", type=int, nargs="+", default=[3, 4, 5, 6, 7, 8])
    parser.add_argument("--steps", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if kernels.rk4_propagate_compiled is None:
        print("compiled kernel not available; only the numpy backend can run")
    print(f"{'N':>3} {'dim':>5} {'numpy [ms/step]':>16} {'cython [ms/step]':>17} {'speedup':>8} {'max diff':>9}")
    for n in args.sites:
        problem = workload(n, args.steps)
        t_py, out_py = best_time(kernels.rk4_propagate_py, problem, args.repeat)
        row = f"{n:>3} {1 << n:>5} {1e3 * t_py / args.steps:>16.4f}"
        if kernels.rk4_propagate_compiled is not None:
            t_c, out_c = best_time(kernels.rk4_propagate_compiled, problem, args.repeat)
            diff = np.abs(out_c - out_py).max()
            row += f" {1e3 * t_c / args.steps:>17.4f} {t_py / t_c:>8.2f} {diff:>9.1e}"
        print(row)


if __name__ == "__main__":
    main()
