"""Feasible PDS parameter quadruples for a given group order.

Run:  python3 demos/sieve_demo.py [v]
"""

import sys

from pds_forge import complement, enumerate_feasible


def main() -> None:
    v = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
    feasible = enumerate_feasible(v)
    print(f"feasible (v, k, lambda, mu) with k <= v/2 for v = {v}:")
    for params in feasible:
        comp = complement(params)
        print(
            f"  {params}  beta={params.beta} Delta={params.delta}"
            f"  complement k={comp.k}"
        )
    print(f"{len(feasible)} parameter set(s)")


if __name__ == "__main__":
    main()
