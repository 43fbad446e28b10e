"""The projective plane living inside the subgroup lattice of Z_p^3.

Run:  python3 demos/plane_demo.py [p]
"""

import sys
from itertools import combinations

from pds_forge import build_plane


def main() -> None:
    p = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    design = build_plane(p)
    n = len(design.points)
    print(f"order-p subgroups (points): {n}")
    print(f"order-p^2 subgroups (lines): {len(design.lines)}")
    print(f"points per line: {design.incidence[:, 0].sum()}")
    print(f"lines per point: {design.incidence[0, :].sum()}")

    pairs_on_one_line = sum(
        1
        for i, j in combinations(range(n), 2)
        if (design.incidence[i] & design.incidence[j]).sum() == 1
    )
    total = n * (n - 1) // 2
    print(f"point pairs on exactly one line: {pairs_on_one_line}/{total}")


if __name__ == "__main__":
    main()
