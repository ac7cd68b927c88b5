"""Noise sensitivity three ways: spectral, brute force, and Monte Carlo.

NS_eps(f) is the chance f changes value when each input bit flips
independently with probability eps. The spectral route sums degree weights
against (1 - 2 eps)^d; the brute-force route enumerates every (input, flip
pattern) pair; Monte Carlo samples them. All three must agree.
"""

import numpy as np

from hsf import (
    BooleanFunction,
    canonicalize,
    ns_bruteforce,
    ns_exact,
    ns_mc,
    truth_table,
    wht,
)


def majority(n):
    rows = np.arange(1 << n)
    ones = n - sum((rows >> j) & 1 for j in range(n))
    return BooleanFunction(n, np.where(2 * ones >= n, 1, -1))


def main():
    eps_grid = [0.01, 0.05, 0.1, 0.25, 0.5]

    print("dictator: NS equals eps exactly")
    dictator = BooleanFunction(1, [1, -1])
    spectrum = wht(dictator)
    for eps in eps_grid:
        print(f"  eps={eps:<5} exact={ns_exact(spectrum, eps):.6f}")

    print("\nparity on 2 bits: NS = 2 eps (1 - eps), flips cancel in pairs")
    parity = BooleanFunction(2, [1, -1, -1, 1])
    spectrum = wht(parity)
    for eps in eps_grid:
        exact = ns_exact(spectrum, eps)
        print(f"  eps={eps:<5} exact={exact:.6f}  closed form={2*eps*(1-eps):.6f}")

    print("\nmajority-9: three routes on the same function")
    f = majority(9)
    spectrum = wht(f)
    for eps in (0.05, 0.1, 0.25):
        exact = ns_exact(spectrum, eps)
        brute = ns_bruteforce(f, eps)
        mc = ns_mc(f, eps, samples=200_000, seed=1)
        print(
            f"  eps={eps:<5} exact={exact:.6f}  brute={brute:.6f}  "
            f"mc={mc.value:.6f} (+-{mc.radius:.4f})"
        )

    print("\nwide majority via its weight vector (no table enumeration in mc)")
    wide = canonicalize(np.ones(23), 0.0)
    est = ns_mc(wide, 0.1, samples=400_000, seed=5)
    small = truth_table(canonicalize(np.ones(15), 0.0))
    print(f"  majority-23 mc : {est.value:.4f} (+-{est.radius:.4f})")
    print(f"  majority-15 ns : {ns_exact(wht(small), 0.1):.4f} (exact, for scale)")


if __name__ == "__main__":
    main()
