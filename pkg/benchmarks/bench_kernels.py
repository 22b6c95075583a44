"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import timeit

from lamplight import _fallback

try:
    from lamplight import _kernels
except ImportError:
    _kernels = None


def cases(rng):
    for length in (128, 512):
        a = [rng.randrange(2) for _ in range(length)]
        b = [rng.randrange(2) for _ in range(length)]
        yield f"cauchy_mod L={length} n=2", "cauchy_mod", (a, b, 2)
    u = [1] + [rng.randrange(3) for _ in range(511)]
    yield "inverse_mod L=512 n=3", "inverse_mod", (u, 3, 1)
    transition = [(s + r) % 2 for s in range(2) for r in range(2)]
    word = [rng.randrange(2) for _ in range(100_000)]
    yield "transduce_flat 10^5 letters", "transduce_flat", (transition, transition, 2, 0, word)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    rng = random.Random(0)
    print(f"{'kernel':32} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, name, call_args in cases(rng):
        py = min(timeit.repeat(lambda: getattr(_fallback, name)(*call_args), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{label:32} {py * 1e3:10.2f} {'n/a':>10} {'n/a':>8}")
            continue
        assert getattr(_kernels, name)(*call_args) == getattr(_fallback, name)(*call_args)
        cy = min(timeit.repeat(lambda: getattr(_kernels, name)(*call_args), number=1, repeat=args.repeat))
        print(f"{label:32} {py * 1e3:10.2f} {cy * 1e3:10.3f} {py / cy:7.0f}x")


if __name__ == "__main__":
    main()
