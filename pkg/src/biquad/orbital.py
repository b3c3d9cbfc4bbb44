"""Orbital integrals J(a, h_D, s) for the biquadratic tower.

Two independent routes compute the same Laurent polynomial in u = q^s:

* ``j_of_a`` sums eta(E1) u^(2 deg E1 - 2d) over splittings B = E1 + E2 of
  the effective divisor B = div(a) + nu3*D - D'3 on Y3;
* ``oracle_count`` counts lattice data (E, E1) with the Div(X) action
  normalized by E2 = 0, place by place, from the map
  z -> (Tr(alpha1 z), Tr(alpha2 z)) attached to a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from .characters import (DivisorY3, PlaceY3, TowerConfig, eta_value, places_y3_over,
                         pullback_divisor)
from .curve import INFINITY, Divisor, Place
from .errors import ConfigurationError, InvariantDomainError, PropertyFailure
from .function_field import (ElemK3, FuncF, affine_trace_one_slice, candidate_places_K3,
                             divisor_of, ord_K3)


class SpectralPoly:
    """Finite Laurent polynomial sum c_m u^m with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                t[int(m)] = c
        self.terms = dict(sorted(t.items()))

    @classmethod
    def monomial(cls, m: int, c=1) -> "SpectralPoly":
        return cls({m: c})

    @classmethod
    def zero(cls) -> "SpectralPoly":
        return cls()

    @classmethod
    def one(cls) -> "SpectralPoly":
        return cls({0: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, o):
        return isinstance(o, SpectralPoly) and self.terms == o.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, o):
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = t.get(m, 0) + c
        return SpectralPoly(t)

    def __neg__(self):
        return SpectralPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, SpectralPoly):
            return SpectralPoly({m: c * o for m, c in self.terms.items()})
        t: dict[int, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                t[m1 + m2] = t.get(m1 + m2, 0) + c1 * c2
        return SpectralPoly(t)

    __rmul__ = __mul__

    def invert_u(self) -> "SpectralPoly":
        """Substitute u -> 1/u."""
        return SpectralPoly({-m: c for m, c in self.terms.items()})

    def shift(self, n: int) -> "SpectralPoly":
        """Multiply by u^n."""
        return SpectralPoly({m + n: c for m, c in self.terms.items()})

    def at_one(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def derivative_coefficient(self, r: int, N: int = 0) -> Fraction:
        """Coefficient of (log q)^r in d^r/ds^r at s = 0 of q^(Ns) * self(q^s)."""
        return sum((c * (m + N) ** r for m, c in self.terms.items()), Fraction(0))

    @property
    def exponents(self) -> list[int]:
        return list(self.terms)

    def to_json(self) -> dict[str, str]:
        return {str(m): str(c) for m, c in self.terms.items()}

    @classmethod
    def from_json(cls, d: dict) -> "SpectralPoly":
        return cls({int(m): Fraction(c) for m, c in d.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*u^{m}" for m, c in self.terms.items())


@dataclass(frozen=True)
class InvariantPoint:
    a: ElemK3
    B: DivisorY3
    D: Divisor

    @property
    def label(self) -> str:
        return self.a.encode()


def _target_divisor(t: TowerConfig, D: Divisor) -> DivisorY3:
    return pullback_divisor(t, D) - t.D3_prime


def _check_D(t: TowerConfig, D: Divisor) -> None:
    if not (D.is_effective() or D.is_zero()):
        raise ConfigurationError(f"D = {D.label} must be effective")
    bad = [p.label for p in D.support if p in t.sigma]
    if bad:
        raise ConfigurationError(f"D must be an effective divisor on X - Sigma; meets {bad}")


def ad_diagnostic(t: TowerConfig, D: Divisor) -> str | None:
    """Reason the invariant set is empty for degree reasons, if any."""
    if 2 * D.degree < t.N + 1:
        return f"2 deg D = {2 * D.degree} < N + 1 = {t.N + 1}: no invariants"
    return None


def enumerate_AD(t: TowerConfig, D: Divisor) -> list[InvariantPoint]:
    """All a = 1/2 + v beta with div(a) + nu3*D - D'3 >= 0, in canonical order."""
    _check_D(t, D)
    M = _target_divisor(t, D)
    if M.degree < 0:
        return []
    elems, _ = affine_trace_one_slice(t, M)
    out = []
    for a in elems:
        B = divisor_of(t, a) + M
        if not (B.is_effective() or B.is_zero()):
            raise PropertyFailure(f"enumerated a = {a.encode()} fails the membership recheck")
        out.append(InvariantPoint(a, B, D))
    out.sort(key=lambda p: p.label)
    return out


def in_AD(t: TowerConfig, D: Divisor, a: ElemK3) -> bool:
    c = t.curve
    if a.trace() != FuncF.const(c, 1):
        return False
    if a.is_zero():
        return False
    B = divisor_of(t, a) + _target_divisor(t, D)
    return B.is_effective() or B.is_zero()


def splittings(B: DivisorY3) -> Iterator[DivisorY3]:
    """All effective E1 <= B, canonical order."""
    items = B.items
    for ks in product(*(range(m + 1) for _, m in items)):
        yield DivisorY3({w: k for (w, _), k in zip(items, ks)})


def j_of_a(t: TowerConfig, D: Divisor, pt: InvariantPoint) -> SpectralPoly:
    if not (pt.B.is_effective() or pt.B.is_zero()) or pt.D != D:
        raise InvariantDomainError("invariant point does not belong to this D")
    d = D.degree
    out = SpectralPoly.monomial(-2 * d)
    for w, m in pt.B.items:
        eta = eta_value(t, w)
        out = out * SpectralPoly({2 * w.degree * k: eta**k for k in range(m + 1)})
    return out


def j_of_invariant(t: TowerConfig, D: Divisor, a: ElemK3) -> SpectralPoly:
    """J(a, h_D, s); zero when a lies outside the invariant set of D."""
    _check_D(t, D)
    if not in_AD(t, D, a):
        return SpectralPoly.zero()
    B = divisor_of(t, a) + _target_divisor(t, D)
    return j_of_a(t, D, InvariantPoint(a, B, D))


def j_global(t: TowerConfig, D: Divisor, points=None) -> SpectralPoly:
    points = enumerate_AD(t, D) if points is None else points
    out = SpectralPoly.zero()
    for pt in points:
        out = out + j_of_a(t, D, pt)
    return out


def j_r_direct(t: TowerConfig, pt: InvariantPoint, r: int) -> Fraction:
    degB = pt.B.degree
    total = Fraction(0)
    for E1 in splittings(pt.B):
        d1 = E1.degree
        total += eta_value(t, E1) * Fraction(d1 - (degB - d1)) ** r
    return total


def j_r(t: TowerConfig, D: Divisor, r: int, points=None) -> Fraction:
    """(log q)^-r times the r-th derivative at s = 0 of q^(Ns) J(h_D, s).

    Computed by differentiating the Laurent polynomial and by the direct
    weighted sum over splittings; the two must agree.
    """
    if r < 0:
        raise ConfigurationError("derivative order must be nonnegative")
    points = enumerate_AD(t, D) if points is None else points
    symbolic = j_global(t, D, points).derivative_coefficient(r, t.N)
    direct = sum((j_r_direct(t, pt, r) for pt in points), Fraction(0))
    if symbolic != direct:
        raise PropertyFailure(f"j_r mismatch for r={r}: symbolic {symbolic} vs direct {direct}")
    return symbolic


def functional_equation_holds(t: TowerConfig, D: Divisor, pt: InvariantPoint) -> bool:
    J = j_of_a(t, D, pt).shift(t.N)
    return J.invert_u() == J * eta_value(t, pt.B)


# ---------------------------------------------------------------------------
# The map gamma and the lattice oracle


@dataclass(frozen=True)
class GammaMap:
    alpha1: ElemK3
    alpha2: ElemK3

    def detform(self) -> ElemK3:
        return self.alpha1 * self.alpha2.sigma() - self.alpha1.sigma() * self.alpha2

    def is_regular(self) -> bool:
        return not self.detform().is_zero()

    def inv(self) -> ElemK3:
        det = self.detform()
        if det.is_zero():
            raise InvariantDomainError("gamma is not regular")
        return self.alpha1 * self.alpha2.sigma() / det

    def apply(self, z: ElemK3) -> tuple[FuncF, FuncF]:
        return (self.alpha1 * z).trace(), (self.alpha2 * z).trace()


def gamma_of_invariant(a: ElemK3) -> GammaMap:
    if a.trace() != FuncF.const(a.curve, 1):
        raise InvariantDomainError("gamma_of_invariant needs Tr(a) = 1")
    c = a.curve
    return GammaMap(ElemK3(c, FuncF.const(c, 1)), ElemK3.beta(c) * a.sigma())


@dataclass
class LocalFactor:
    place: Place
    poly: SpectralPoly
    count: int


def _local_factor(t: TowerConfig, D: Divisor, x: Place, ords1, ords2, odet, W: int) -> LocalFactor:
    ws = places_y3_over(t, x)
    Dx = D[x]
    in_sigma = x in t.sigma
    wp = t.wprime_of(x) if in_sigma else None
    poly = SpectralPoly.zero()
    count = 0
    for es in product(range(-W, W + 1), repeat=len(ws)):
        f = odet + sum((1 if w.is_split else 2) * e for w, e in zip(ws, es)) - Dx
        ok = True
        for w, e in zip(ws, es):
            if ords1[w] + e < f:
                ok = False
                break
            need2 = 1 if (in_sigma and w != wp) else 0
            if ords2[w] + e < need2:
                ok = False
                break
        if not ok:
            continue
        if any(abs(e) >= W for e in es):
            raise PropertyFailure(f"oracle window {W} exhausted at {x.label}")
        sign = 1
        for w, e in zip(ws, es):
            if e % 2:
                sign *= eta_value(t, w)
        poly = poly + SpectralPoly.monomial(-2 * x.degree * f, sign)
        count += 1
    return LocalFactor(x, poly, count)


def oracle_support(t: TowerConfig, D: Divisor, g: GammaMap) -> list[Place]:
    c = t.curve
    S = set(D.support) | set(t.sigma) | {INFINITY, c.two_torsion(2)}
    for el in (g.alpha1, g.alpha2, g.detform()):
        S |= candidate_places_K3(el)
    return sorted(S)


def oracle_local_factors(t: TowerConfig, D: Divisor, a: ElemK3) -> list[LocalFactor]:
    _check_D(t, D)
    g = gamma_of_invariant(a)
    if not g.is_regular():
        raise InvariantDomainError("gamma is not regular")
    det = g.detform()
    S = oracle_support(t, D, g)
    data = []
    maxval = 0
    for x in S:
        ws = places_y3_over(t, x)
        o1 = {w: ord_K3(g.alpha1, w) for w in ws}
        o2 = {w: ord_K3(g.alpha2, w) for w in ws}
        od = ord_K3(det, ws[0])
        maxval = max([maxval, abs(od), *map(abs, o1.values()), *map(abs, o2.values())])
        data.append((x, o1, o2, od))
    W = 2 * D.degree + t.N + maxval + 2
    return [_local_factor(t, D, x, o1, o2, od, W) for x, o1, o2, od in data]


def oracle_count(t: TowerConfig, D: Divisor, a: ElemK3) -> SpectralPoly:
    """Lattice-count route to J(a, h_D, s) (E2 normalized to 0)."""
    out = SpectralPoly.one()
    for lf in oracle_local_factors(t, D, a):
        out = out * lf.poly
        if out.is_zero():
            break
    return out


def oracle_triple_count(t: TowerConfig, D: Divisor, a: ElemK3) -> int:
    n = 1
    for lf in oracle_local_factors(t, D, a):
        n *= lf.count
    return n
