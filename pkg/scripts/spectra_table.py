"""Eigenspaces of H on functions on the signed cube, with induced-character matches."""

from biquad.spectra import MAX_DPRIME, decompose, verify_induced_iso


def main():
    print("d'  d1 d2'  eig  dim  irr  Ind(1 x eta)  Ind(eta x 1)  swap  swap*eta")
    for d in range(1, MAX_DPRIME + 1):
        for d1, d2, lam, dim, stable, irr in decompose(d):
            r = verify_induced_iso(d1, d2)
            print(f"{d:>2} {d1:>3} {d2:>3} {lam:>4} {dim:>4}  {irr!s:<5} "
                  f"{r['matches_ind_1_x_eta']!s:<13} {r['matches_ind_eta_x_1']!s:<13} "
                  f"{r['symmetry_literal']!s:<5} {r['symmetry_up_to_eta_twist']}")


if __name__ == "__main__":
    main()
