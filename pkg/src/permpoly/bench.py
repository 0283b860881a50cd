"""Benchmark comparing the pure-Python and compiled kernel backends.

Run with ``python -m permpoly.bench``.  Workloads mirror the hot loops of the
verification sweeps: dense Horner tabulation, full-table interpolation, and a
projector-style pointwise pass (pow + compose + scale + compare).
"""

import random
import time

from ._kernels import pure as pure_backend

try:
    from ._kernels import _core as compiled_backend  # type: ignore[attr-defined]
except ImportError:
    compiled_backend = None

from .fields import field_spec, prime_field, tower


def _time(fn, repeat=3) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads():
    rng = random.Random(7)
    f343 = field_spec("7^3:1,1,0,1").field
    t2197 = tower(prime_field(13), 3)

    dense = [rng.randrange(f343.size) for _ in range(f343.size)]
    table = [rng.randrange(f343.size) for _ in range(f343.size)]
    proj = [rng.randrange(t2197.size) for _ in range(t2197.size)]
    perm = list(range(t2197.size))
    rng.shuffle(perm)

    def tabulate(backend):
        backend.tabulate_dense(dense, f343.exp, f343.log, f343.zech)

    def interp(backend):
        backend.interpolate(table, f343.exp, f343.log, f343.zech, f343.neg_one)

    def sweep(backend):
        p = backend.pointwise_pow(proj, 5, t2197.exp, t2197.log)
        c = backend.compose_tables(perm, p)
        backend.scale_table(3, c, t2197.exp, t2197.log)

    return [
        ("tabulate_dense  GF(343), deg 342", tabulate),
        ("interpolate     GF(343)", interp),
        ("pointwise sweep GF(13^3)", sweep),
    ]


def main(argv=None) -> int:
    rows = []
    for name, work in _workloads():
        t_pure = _time(lambda: work(pure_backend))
        if compiled_backend is not None:
            t_comp = _time(lambda: work(compiled_backend))
            rows.append((name, t_pure, t_comp, t_pure / t_comp))
        else:
            rows.append((name, t_pure, None, None))

    print(f"{'workload':36} {'pure':>10} {'compiled':>10} {'speedup':>9}")
    for name, tp, tc, sp in rows:
        if tc is None:
            print(f"{name:36} {tp * 1e3:9.2f}ms {'-':>10} {'-':>9}")
        else:
            print(f"{name:36} {tp * 1e3:9.2f}ms {tc * 1e3:8.2f}ms {sp:8.1f}x")
    if compiled_backend is None:
        print("compiled backend unavailable; install with a C compiler to build it")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
