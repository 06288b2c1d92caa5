"""Walk one two-nonzeros-per-row program through the stable set reduction.

Prints the certified subdeterminant bound, the clearing columns, every
guess with its outcome, and the reduction trace of the winning guess,
then checks the answer against brute force.

    python demos/row_pipeline_walkthrough.py [seed]
"""

from __future__ import annotations

import sys

from deltaip.exactmat import find_row_clearing_columns, max_abs_subdeterminant
from deltaip.formats import format_ip
from deltaip.instances import random_two_per_row_ip
from deltaip.lp import solve
from deltaip.oracle import brute_force_ip
from deltaip.rowpipe import enumerate_proximity_guesses, run_guess, solve_two_per_row


def main(seed: int = 11) -> None:
    gen = random_two_per_row_ip(seed, n=4, m=6, delta_target=2)
    ip = gen.ip
    print(format_ip(ip))
    cert = max_abs_subdeterminant(ip.A)
    print(f"largest |subdeterminant| = {cert.delta} (exhaustive: {cert.exhaustive})")

    J = find_row_clearing_columns(ip.A, gen.delta).columns
    lp = solve(ip.relaxation())
    print(f"clearing columns J = {list(J)}")
    print(f"LP {lp.status}, vertex {[str(v) for v in lp.x_star or ()]}")

    if lp.optimal:
        for guess in enumerate_proximity_guesses(ip, J, lp.x_star, gen.delta):
            out = run_guess(ip, guess, gen.delta)
            tag = dict(guess.fixed) or "none"
            print(f"  guess {tag}: {out.status} {out.objective if out.objective is not None else ''}")

    res = solve_two_per_row(ip, gen.delta)
    print(f"\npipeline: {res.status} {res.objective} at {res.solution}")
    for rec in res.trace:
        print(f"  {rec}")
    oracle = brute_force_ip(ip)
    print(f"brute force: {oracle.status} {oracle.objective}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 11)
