"""Compare the compiled and pure-Python enumeration kernels.

    python benchmarks/bench_kernels.py [--max-n 5] [--repeat 3]

Times the sign-vector bucketing and the click union-find over the longest
element of S_{n+1}, and checks both backends produce identical output.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bruhatstrata import kernels
from bruhatstrata.combinatorics import faces, longest_word


def _best(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def bench(n: int, backend: str, repeat: int) -> tuple[float, float, tuple]:
    word = longest_word(n)
    triples = [(f.k1 - 1, f.k2 - 1, f.mask()) for f in faces(word)]
    t_lift, (ids, elements) = _best(lambda: kernels.lift_table(word.letters, n, backend=backend), repeat)
    t_click, result = _best(
        lambda: kernels.click_components(ids, triples, len(word), backend=backend), repeat
    )
    roots = np.asarray(result[0])
    return t_lift, t_click, (len(elements), len(np.unique(roots)), result[2])


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=5)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (active: {kernels.BACKEND})")
    print(f"{'n':>2} {'length':>6} {'backend':>8} {'lift s':>10} {'click s':>10} {'speedup':>8}")
    for n in range(3, args.max_n + 1):
        ell = len(longest_word(n))
        rows = {b: bench(n, b, args.repeat) for b in backends}
        summaries = {r[2] for r in rows.values()}
        if len(summaries) != 1:
            raise SystemExit(f"backends disagree at n={n}: {rows}")
        base = rows["python"][0] + rows["python"][1]
        for b, (tl, tc, _) in rows.items():
            print(f"{n:>2} {ell:>6} {b:>8} {tl:>10.4f} {tc:>10.4f} {base / (tl + tc):>7.1f}x")
        buckets, comps, edges = summaries.pop()
        print(f"   buckets {buckets}, components {comps}, edges {edges}")


if __name__ == "__main__":
    main()
