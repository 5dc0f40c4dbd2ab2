"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

Times the batched payment selection over every (wallet, price) pair of the
US big-spender chain, the full chain build plus stationary solve, and the
four-denomination currency search.
"""

import argparse
import time

import numpy as np

from coinpurse import US, build_chain, kernels, preset, stationary_distribution
from coinpurse.wallet import enumerate_states


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    spec, _ = preset("big-spender", US)
    space = enumerate_states(US, spec.constraints)
    wallets = np.repeat(space.counts, US.modulus, axis=0)
    prices = np.tile(np.arange(US.modulus, dtype=np.int64), len(space))
    denoms = np.array(US.denominations, dtype=np.int64)

    def chain():
        _, m = build_chain(US, spec)
        stationary_distribution(m)

    cases = {
        f"select_payments ({len(prices)} pairs)": lambda: kernels.select_payments(wallets, prices, denoms),
        "build + solve US big spender": chain,
        "min_average_search k=4": lambda: kernels.min_average_search(4, 100),
    }
    before = kernels.backend()
    results = {}
    for name in sorted(kernels.BACKENDS):
        kernels.use_backend(name)
        results[name] = {case: best_of(fn, args.repeat) for case, fn in cases.items()}
    kernels.use_backend(before)

    names = sorted(results)
    print(f"{'case':40s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for case in cases:
        row = [results[n][case] for n in names]
        line = f"{case:40s}" + "".join(f"{t:11.3f}s" for t in row)
        if "compiled" in results and "python" in results:
            line += f"{results['python'][case] / results['compiled'][case]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
