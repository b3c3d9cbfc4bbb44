"""Abelian L-series of the descent characters, the Euler-factor identity for
eta against chi1, chi2, and zeta-function consistency checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import TowerConfig, eta_value, places_y3_over
from .curve import Curve
from .errors import ConfigurationError

CHARACTERS = ("chi1", "chi2", "chi3", "trivial")


@dataclass(frozen=True)
class PowerSeriesT:
    """sum c_i T^i + O(T^(order+1))."""

    coeffs: tuple[Fraction, ...]
    order: int

    @classmethod
    def from_poly(cls, coeffs, order: int) -> "PowerSeriesT":
        c = [Fraction(a) for a in coeffs][: order + 1]
        c += [Fraction(0)] * (order + 1 - len(c))
        return cls(tuple(c), order)

    @classmethod
    def one(cls, order: int) -> "PowerSeriesT":
        return cls.from_poly([1], order)

    def __mul__(self, o: "PowerSeriesT") -> "PowerSeriesT":
        n = min(self.order, o.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if self.coeffs[i]:
                for j in range(n + 1 - i):
                    out[i + j] += self.coeffs[i] * o.coeffs[j]
        return PowerSeriesT(tuple(out), n)

    def inv(self) -> "PowerSeriesT":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("constant term is zero")
        out = [Fraction(0)] * (self.order + 1)
        out[0] = 1 / c0
        for k in range(1, self.order + 1):
            out[k] = -sum((self.coeffs[j] * out[k - j] for j in range(1, k + 1)), Fraction(0)) / c0
        return PowerSeriesT(tuple(out), self.order)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def _char(t: TowerConfig, name: str):
    if name == "trivial":
        return lambda D: 1
    if name not in CHARACTERS:
        raise ConfigurationError(f"unknown character {name!r}")
    return getattr(t, name)


def char_sum(t: TowerConfig, chr: str, n: int) -> Fraction:
    """Sum of chr(D) over effective divisors D of degree n."""
    f = _char(t, chr)
    return Fraction(sum(f(D) for D in t.curve.effective_divisors(n)))


def euler_factor_eta(t: TowerConfig, x) -> list[int]:
    """Coefficients of prod_{w | x} (1 - eta(w) T^deg w)."""
    poly = [1]
    for w in places_y3_over(t, x):
        fac = [0] * (w.degree + 1)
        fac[0], fac[w.degree] = 1, -eta_value(t, w)
        poly = _polymul(poly, fac)
    return poly


def euler_factor_chis(t: TowerConfig, x) -> list[int]:
    d = x.degree
    f1 = [1] + [0] * (d - 1) + [-t.chi1.value(x)]
    f2 = [1] + [0] * (d - 1) + [-t.chi2.value(x)]
    return _polymul(f1, f2)


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def euler_factorization_check(t: TowerConfig, up_to_degree: int) -> dict:
    """Per-place comparison of the eta Euler factor with the chi1 * chi2 factors."""
    rows = []
    for x in t.curve.places_up_to(up_to_degree):
        lhs, rhs = euler_factor_eta(t, x), euler_factor_chis(t, x)
        rows.append({"place": x.label, "split": t.is_split(x), "lhs": lhs, "rhs": rhs,
                     "ok": lhs == rhs})
    return {"up_to_degree": up_to_degree, "all_ok": all(r["ok"] for r in rows), "places": rows}


def euler_product(t: TowerConfig, chr: str, order: int) -> PowerSeriesT:
    """prod over places of degree <= order of (1 - chr(x) T^deg x)^-1, truncated."""
    f = _char(t, chr)
    out = PowerSeriesT.one(order)
    for x in t.curve.places_up_to(order):
        d = x.degree
        fac = [0] * (d + 1)
        fac[0], fac[d] = 1, -(f(x) if chr != "trivial" else 1)
        out = out * PowerSeriesT.from_poly(fac, order).inv()
    return out


def eta_euler_product(t: TowerConfig, order: int) -> PowerSeriesT:
    out = PowerSeriesT.one(order)
    for x in t.curve.places_up_to(order):
        out = out * PowerSeriesT.from_poly(euler_factor_eta(t, x), order).inv()
    return out


def zeta_numerator(c: Curve) -> list[int]:
    """P(T) = 1 - a T + q T^2 with a = q + 1 - #E(F_q)."""
    a = c.q + 1 - len(c.points_over(1))
    return [1, -a, c.q]


def zeta_series(c: Curve, order: int) -> PowerSeriesT:
    P = PowerSeriesT.from_poly(zeta_numerator(c), order)
    den = PowerSeriesT.from_poly(_polymul([1, -1], [1, -c.q]), order)
    return P * den.inv()


def triangulate(t: TowerConfig, order: int) -> dict:
    """Tie divisor enumeration, characters and series algebra together."""
    c = t.curve
    Z = zeta_series(c, order)
    counts = [sum(1 for _ in c.effective_divisors(n)) for n in range(order + 1)]
    zeta_ok = [Fraction(k) for k in counts] == list(Z.coeffs)
    trivial_ep = euler_product(t, "trivial", order)
    euler_zeta_ok = trivial_ep.coeffs == Z.coeffs
    sums = {ch: [char_sum(t, ch, n) for n in range(order + 1)] for ch in ("chi1", "chi2", "chi3")}
    products = {ch: euler_product(t, ch, order) for ch in ("chi1", "chi2", "chi3")}
    sums_match = all(list(products[ch].coeffs) == sums[ch] for ch in sums)
    eta_prod = eta_euler_product(t, order)
    eta_ok = eta_prod.coeffs == (products["chi1"] * products["chi2"]).coeffs
    # point counts over F_{q^m} from the zeta numerator against enumeration
    a = -zeta_numerator(c)[1]
    pc_ok = True
    s_prev, s_cur = 2, a  # alpha^m + alphabar^m
    for m in range(1, order + 1):
        if m > 1:
            s_prev, s_cur = s_cur, a * s_cur - c.q * s_prev
        direct = sum(x.degree for x in c.places_up_to(m) if m % x.degree == 0)
        if direct != c.q**m + 1 - s_cur:
            pc_ok = False
    return {
        "order": order,
        "divisor_counts": counts,
        "zeta_coefficients": Z.to_json(),
        "zeta_matches_divisor_counts": zeta_ok,
        "euler_product_matches_zeta": euler_zeta_ok,
        "char_sums": {ch: [str(v) for v in vals] for ch, vals in sums.items()},
        "char_sums_vanish": all(v == 0 for vals in sums.values() for v in vals[1:]),
        "char_sums_match_euler_products": sums_match,
        "eta_product_matches_chi_products": eta_ok,
        "point_counts_match_zeta": pc_ok,
        "all_ok": (zeta_ok and euler_zeta_ok and sums_match and eta_ok and pc_ok
                   and all(v == 0 for vals in sums.values() for v in vals[1:])),
    }
