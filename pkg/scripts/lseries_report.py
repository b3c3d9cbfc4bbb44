"""Character sums and zeta data for a few small curves."""

from biquad.characters import TowerConfig
from biquad.curve import Curve
from biquad.lseries import char_sum, triangulate, zeta_numerator

CURVES = [(3, (0, 1, 2)), (5, (0, 1, 4)), (5, (0, 2, 3)), (7, (0, 1, 6))]


def main():
    for q, roots in CURVES:
        c = Curve(q, roots)
        t = TowerConfig(c, (), (), ())
        sums = {ch: [str(char_sum(t, ch, n)) for n in range(4)] for ch in ("chi1", "chi2", "chi3")}
        print(f"q={q} roots={roots} P(T)={zeta_numerator(c)} all_ok={triangulate(t, 3)['all_ok']} {sums}")


if __name__ == "__main__":
    main()
