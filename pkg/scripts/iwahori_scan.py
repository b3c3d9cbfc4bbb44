"""Scan the local lattice conditions over k0 and report the solution sets per mode."""

import argparse

from biquad.local_iwahori import MODES, iwahori_orbit_search


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--k0-range", type=int, default=3)
    ap.add_argument("--window", type=int, default=8)
    args = ap.parse_args()
    for k0 in range(-args.k0_range, args.k0_range + 1):
        row = {m: iwahori_orbit_search(k0, max(args.window, abs(k0) + 2), m) for m in MODES}
        print(f"k0={k0:+d}  " + "  ".join(f"{m}={row[m]}" for m in MODES))


if __name__ == "__main__":
    main()
