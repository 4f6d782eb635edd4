"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs once per available backend; the best of ``--repeat``
wall times is reported along with the speedup over the Python kernel.
Results are checked for equality across backends before timing is shown.
"""

import argparse
import random
import time

import riordanlab.grouplab as gl
from riordanlab import parse_ring
from riordanlab.kernels import available_backends, kernel_for

OMEGA = "Z/6[X]/(X^2+X+1)"


def _raw_series(ring, backend, n=12, count=2000):
    K = kernel_for(ring, backend)
    rng = random.Random(0)
    els = list(ring.raw_elements)
    data = [
        ([rng.choice(els) for _ in range(n + 1)], [ring.zero] + [rng.choice(els) for _ in range(n)])
        for _ in range(count)
    ]

    def run():
        out = 0
        for a, g in data:
            out ^= hash(tuple(K.series_compose(a, g))) ^ hash(tuple(K.series_mul(a, g)))
        return out

    return run


def _raw_matrices(ring, backend, n=6, count=2000):
    K = kernel_for(ring, backend)
    rng = random.Random(1)
    els, units = list(ring.raw_elements), list(ring.raw_units)
    size = (n + 1) * (n + 2) // 2
    mats = []
    for _ in range(count + 1):
        m = [rng.choice(els) for _ in range(size)]
        for i in range(n + 1):
            m[i * (i + 1) // 2 + i] = rng.choice(units)
        mats.append(m)

    def run():
        acc = mats[0]
        for m in mats[1:]:
            acc = K.tri_mul(acc, m, n)
        return tuple(acc)

    return run


def _through_grouplab(fn):
    def factory(ring, backend):
        def run():
            saved = gl.kernel_for
            gl.kernel_for = lambda r, b=backend: kernel_for(r, b)
            try:
                return fn(ring)
            finally:
                gl.kernel_for = saved

        return run

    return factory


WORKLOADS = [
    ("series compose+mul, N=12, 2000 pairs", "Z/6", _raw_series),
    ("triangular products, level 6, 2000", OMEGA, _raw_matrices),
    ("substitution search J_7(Z/6)", "Z/6", _through_grouplab(lambda r: gl.search_substitution_relations(r, 7))),
    ("substitution search J_10(Z/3)", "Z/3", _through_grouplab(lambda r: gl.search_substitution_relations(r, 10))),
    ("involution sweep, level 2, 20000 pairs", OMEGA, _through_grouplab(lambda r: gl.claim5_sweep(r, 2, samples=20000))),
]


def best_of(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = sorted(available_backends(), key=lambda b: b != "python")
    print(f"backends: {', '.join(backends)}")
    header = f"{'workload':42s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else "")
    print(header)
    print("-" * len(header))
    for title, spec, factory in WORKLOADS:
        ring = parse_ring(spec)
        times, results = [], []
        for b in backends:
            t, res = best_of(factory(ring, b), args.repeat)
            times.append(t)
            results.append(res)
        if any(r != results[0] for r in results[1:]):
            raise SystemExit(f"backends disagree on {title!r}")
        line = f"{title:42s}" + "".join(f"{t:11.3f}s" for t in times)
        if len(times) > 1:
            line += f"{times[0] / times[-1]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
