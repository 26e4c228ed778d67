#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Run from the repository root after an editable install::

    python benchmarks/bench_backends.py
"""

import importlib
import time

import numpy as np

from qreservoir._kernels import pure


def _load_compiled():
    try:
        return importlib.import_module("qreservoir._kernels._core")
    except ImportError:
        return None


def _time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    compiled = _load_compiled()
    rng = np.random.default_rng(0)
    mats = [rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)) for _ in range(200)]
    herms = [m + m.conj().T for m in mats]
    grid = np.linspace(0.0, 30.0, 100_000)

    cases = [
        ("decay_envelope (1e5 samples)", lambda mod: mod.decay_envelope(grid, 1.0, 0.5, 2.0, 6.0)),
        ("eig_general (200 x 8x8)", lambda mod: [mod.eig_general(m) for m in mats]),
        ("eig_hermitian (200 x 8x8)", lambda mod: [mod.eig_hermitian(m) for m in herms]),
    ]

    print(f"{'kernel':<32} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name, fn in cases:
        t_pure = _time(lambda: fn(pure))
        if compiled is None:
            print(f"{name:<32} {t_pure * 1e3:>8.1f}ms {'n/a':>10} {'n/a':>8}")
            continue
        t_comp = _time(lambda: fn(compiled))
        print(
            f"{name:<32} {t_pure * 1e3:>8.1f}ms {t_comp * 1e3:>8.2f}ms "
            f"{t_pure / t_comp:>7.1f}x"
        )
    if compiled is None:
        print("compiled extension not available; build it with "
              "`pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
