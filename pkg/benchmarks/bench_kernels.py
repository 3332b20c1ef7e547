"""Compare the compiled and pure-Python echelon kernels on real workloads.

    python benchmarks/bench_kernels.py [--repeat N]

Workloads: the octonion envelope (64-dim spin in 64-dim space), a
simplicity verdict on a direct sum, and raw random spins.
"""

import argparse
import random
import timeit

from homalt import kernels
from homalt.constructions import direct_sum
from homalt.fixtures import oct_alpha
from homalt.spinning import OperatorSet, _int_columns, _left_mult_columns


def envelope_workload(impl):
    alg = oct_alpha()
    n = alg.dim
    ops = [_left_mult_columns(g) for g in alg.operators]
    ident = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return lambda: impl.spin(ops, [ident], n * n, -1)


def module_workload(impl):
    alg = direct_sum(oct_alpha(), oct_alpha())
    ops = [_int_columns(m) for m in alg.operators]
    n = alg.dim
    seeds = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    return lambda: [impl.spin(ops, [s], n, -1) for s in seeds]


def random_workload(impl, seed=1):
    rng = random.Random(seed)
    n = 24
    dense = [[[rng.randint(-3, 3) if rng.random() < 0.2 else 0 for _ in range(n)] for _ in range(n)] for _ in range(3)]
    ops = [[[(i, d[i][j]) for i in range(n) if d[i][j]] for j in range(n)] for d in dense]
    seed_vec = [[rng.randint(-2, 2) for _ in range(n)]]
    return lambda: impl.spin(ops, seed_vec, n, -1)


WORKLOADS = {
    "octonion envelope (64)": envelope_workload,
    "unit spins on O+O (16)": module_workload,
    "random sparse spin (24)": random_workload,
}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python backend is timed")
    # sanity: both backends must agree before timing them
    for label, make in WORKLOADS.items():
        results = {name: make(mod)() for name, mod in backends.items()}
        assert len({repr(r) for r in results.values()}) == 1, label

    print(f"{'workload':<26}" + "".join(f"{b:>12}" for b in backends) + "   speedup")
    for label, make in WORKLOADS.items():
        times = {}
        for name, mod in backends.items():
            fn = make(mod)
            times[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        row = f"{label:<26}" + "".join(f"{times[b] * 1e3:>10.1f}ms" for b in backends)
        if "cython" in times:
            row += f"   {times['python'] / times['cython']:.1f}x"
        print(row)


if __name__ == "__main__":
    main()
