"""Escher walls keep one disjoint odd cycle while their transversal grows.

For each height, prints the wall size, the linking paths, and the odd
cycle packing and transversal numbers found by exhaustive search.
"""

from __future__ import annotations

import time

from deltaip.instances import elementary_wall, escher_wall
from deltaip.stableset import oct_brute, ocp_brute, odd_cycle_transversal


def main() -> None:
    base = elementary_wall(3)
    print(f"elementary wall h=3: {base.graph.n} vertices, bipartite {base.graph.is_bipartite()}")
    for h in (3, 4):
        start = time.perf_counter()
        w = escher_wall(h)
        g = w.graph
        ocp = ocp_brute(g, cap=40)
        oct_ = oct_brute(g, cap=40)
        X = odd_cycle_transversal(g, cap=40)
        print(f"escher wall h={h}: {g.n} vertices, {g.m} edges")
        print(f"  linking paths {list(w.linking_paths)}")
        print(f"  ocp = {ocp}, oct = {oct_}, a transversal {list(X)} "
              f"({time.perf_counter() - start:.2f} s)")


if __name__ == "__main__":
    main()
