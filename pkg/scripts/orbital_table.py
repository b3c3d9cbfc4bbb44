"""Orbital integrals and predicted intersection numbers on the example tower.

    python3 scripts/orbital_table.py [--degree 2] [--config configs/f5.tower]
"""

import argparse

from biquad import orbital
from biquad.config import SessionConfig, load_tower


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--degree", type=int, default=2)
    ap.add_argument("--config")
    ap.add_argument("--oracle", action="store_true")
    args = ap.parse_args()
    t = load_tower(args.config)
    cfg = SessionConfig("orbital", degree=args.degree)
    print(f"{'D':<24} {'#a':>3}  {'J(u)':<40} j_0 j_1 j_2 j_3  oracle")
    for D in cfg.divisors(t):
        pts = orbital.enumerate_AD(t, D)
        J = orbital.j_global(t, D, pts)
        js = [orbital.j_r(t, D, r, pts) for r in range(4)]
        verdict = ""
        if args.oracle:
            verdict = all(orbital.oracle_count(t, D, p.a) == orbital.j_of_a(t, D, p) for p in pts)
        print(f"{D.label or '{}':<24} {len(pts):>3}  {J!r:<40} " + " ".join(f"{j!s:>3}" for j in js)
              + f"  {verdict}")


if __name__ == "__main__":
    main()
