"""K4 drawn in the projective plane: slack vectors versus dual circulations.

Traces the faces, orients the dual alternately, and lists the 0/1 slack
vectors next to the 0/1 circulations in the homology class of all-ones.
Each circulation is then split into cross-free directed cycles.
"""

from __future__ import annotations

from deltaip.instances import k4_projective_fixture
from deltaip.surface import crossfree_decompose, omega, trace_faces, verify_dual_representation


def main() -> None:
    eg = k4_projective_fixture()
    g = eg.graph
    fs = trace_faces(eg)
    print(f"edges {list(g.edges)}")
    print(f"{len(fs.faces)} faces of lengths {[len(f) for f in fs.faces]}, "
          f"Euler genus {fs.euler_genus}, orientable {fs.orientable}")

    rep = verify_dual_representation(eg)
    D, basis = rep.orientation, rep.basis
    print(f"odd cycle {basis.odd_cycle}, {len(basis.walks)} even walks")
    for f, ring in enumerate(D.ends):
        print(f"  dual node {f}: " + " ".join(f"{e}{'+' if d > 0 else '-'}" for e, d in ring))

    print("\nslack vectors      circulations")
    for a, b in zip(sorted(rep.slack_vectors), sorted(rep.circulations)):
        print(f"  {a}  {b}")
    print(f"sets equal: {rep.equal}")

    for y in sorted(rep.circulations):
        dec = crossfree_decompose(D, y)
        print(f"  {y} class {omega(g, y, basis)} cycles {dec.cycles}")


if __name__ == "__main__":
    main()
