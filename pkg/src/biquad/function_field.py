"""The function field F of X and its quadratic extension K3 = F(beta),
beta^2 = x - e3: element arithmetic, valuations at places of X and Y3,
divisors, and Riemann-Roch spaces on X and on Y3."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (Poly, factor, nullspace_mod, poly_gcd, solve_affine_mod,
                      span_elements)
from .characters import INERT, DivisorY3, PlaceY3, TowerConfig, places_y3_over
from .curve import INFINITY, Curve, Divisor, Place
from .errors import InvariantDomainError, PrecisionError
from .series import EXACT, Series


class FuncF:
    """(p(x) + s(x) y) / r(x) in canonical form: gcd(p, s, r) = 1, r monic."""

    __slots__ = ("curve", "p", "s", "r")

    def __init__(self, curve: Curve, p: Poly, s: Poly | None = None, r: Poly | None = None):
        q = curve.q
        s = s if s is not None else Poly(q)
        r = r if r is not None else Poly(q, (1,))
        if not r:
            raise ZeroDivisionError("zero denominator")
        if not p and not s:
            r = Poly(q, (1,))
        else:
            g = poly_gcd(poly_gcd(p, s) if (p and s) else (p if p else s), r)
            if g.degree > 0:
                p, s, r = p // g, s // g, r // g
            lc = r.lc
            if lc != 1:
                inv = pow(lc, q - 2, q)
                p, s, r = p * inv, s * inv, r * inv
        self.curve, self.p, self.s, self.r = curve, p, s, r

    @classmethod
    def const(cls, curve: Curve, a: int) -> "FuncF":
        return cls(curve, Poly(curve.q, (a,)))

    @classmethod
    def x(cls, curve: Curve) -> "FuncF":
        return cls(curve, Poly.x(curve.q))

    @classmethod
    def y(cls, curve: Curve) -> "FuncF":
        return cls(curve, Poly(curve.q), Poly(curve.q, (1,)))

    def _c(self, o) -> "FuncF":
        return o if isinstance(o, FuncF) else FuncF.const(self.curve, o)

    def is_zero(self) -> bool:
        return not self.p and not self.s

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, o):
        if isinstance(o, int):
            o = FuncF.const(self.curve, o)
        return (isinstance(o, FuncF) and self.p == o.p and self.s == o.s and self.r == o.r)

    def __hash__(self):
        return hash((self.p, self.s, self.r))

    def __add__(self, o):
        o = self._c(o)
        return FuncF(self.curve, self.p * o.r + o.p * self.r, self.s * o.r + o.s * self.r, self.r * o.r)

    __radd__ = __add__

    def __neg__(self):
        return FuncF(self.curve, -self.p, -self.s, self.r)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        f = self.curve.f
        return FuncF(self.curve, self.p * o.p + self.s * o.s * f, self.p * o.s + self.s * o.p, self.r * o.r)

    __rmul__ = __mul__

    def norm_poly(self) -> Poly:
        """Numerator norm p^2 - s^2 f to F_q(x)."""
        return self.p * self.p - self.s * self.s * self.curve.f

    def inv(self) -> "FuncF":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero function")
        return FuncF(self.curve, self.r * self.p, -(self.r * self.s), self.norm_poly())

    def __truediv__(self, o):
        return self * self._c(o).inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        out = FuncF.const(self.curve, 1)
        for _ in range(e):
            out = out * self
        return out

    def __repr__(self):
        return f"({self.p.encode()}|{self.s.encode()}|{self.r.encode()})"

    encode = __repr__

    @classmethod
    def decode(cls, curve: Curve, text: str) -> "FuncF":
        body = text.strip()[1:-1]
        p, s, r = body.split("|")
        q = curve.q
        return cls(curve, Poly.decode(q, p), Poly.decode(q, s), Poly.decode(q, r))


class ElemK3:
    """u + v beta with u, v in F."""

    __slots__ = ("curve", "e3", "u", "v")

    def __init__(self, curve: Curve, u: FuncF, v: FuncF | None = None):
        self.curve = curve
        self.e3 = curve.roots[2]
        self.u = u if isinstance(u, FuncF) else FuncF.const(curve, u)
        self.v = v if isinstance(v, FuncF) else FuncF.const(curve, v or 0)

    @classmethod
    def beta(cls, curve: Curve) -> "ElemK3":
        return cls(curve, FuncF.const(curve, 0), FuncF.const(curve, 1))

    def _xe3(self) -> FuncF:
        return FuncF(self.curve, Poly(self.curve.q, (-self.e3, 1)))

    def _c(self, o) -> "ElemK3":
        if isinstance(o, ElemK3):
            return o
        return ElemK3(self.curve, o if isinstance(o, FuncF) else FuncF.const(self.curve, o))

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def __eq__(self, o):
        o = self._c(o)
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __add__(self, o):
        o = self._c(o)
        return ElemK3(self.curve, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return ElemK3(self.curve, -self.u, -self.v)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        h = self._xe3()
        return ElemK3(self.curve, self.u * o.u + self.v * o.v * h, self.u * o.v + self.v * o.u)

    __rmul__ = __mul__

    def sigma(self) -> "ElemK3":
        return ElemK3(self.curve, self.u, -self.v)

    def trace(self) -> FuncF:
        return self.u * 2

    def norm(self) -> FuncF:
        return self.u * self.u - self.v * self.v * self._xe3()

    def inv(self) -> "ElemK3":
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero")
        ninv = n.inv()
        return ElemK3(self.curve, self.u * ninv, -(self.v * ninv))

    def __truediv__(self, o):
        return self * self._c(o).inv()

    def encode(self) -> str:
        return f"{self.u.encode()}+{self.v.encode()}b"

    __repr__ = encode

    @classmethod
    def decode(cls, curve: Curve, text: str) -> "ElemK3":
        u, _, v = text.strip().partition(")+(")
        return cls(curve, FuncF.decode(curve, u + ")"), FuncF.decode(curve, "(" + v[:-1]))


def trace_k3(a: ElemK3) -> FuncF:
    return a.trace()


# ---------------------------------------------------------------------------
# Local expansions and valuations


def series_F(g: FuncF, p: Place, prec: int) -> Series:
    """Laurent expansion of g at p, known at least modulo t^prec."""
    c = g.curve
    F0 = c.field(p.degree)
    if g.is_zero():
        return Series(F0, 0, [], EXACT)
    work = max(prec, 4) + 4
    while True:
        F, xs, ys = c.local_expansion(p, work)
        num = xs.eval_poly(g.p)
        if g.s:
            num = num + xs.eval_poly(g.s) * ys
        den = xs.eval_poly(g.r).truncate(work)
        try:
            out = num * den.inv() if not den.is_known_zero() else None
        except PrecisionError:
            out = None
        if out is not None and out.prec >= prec:
            return out.truncate(prec)
        work *= 2
        if work > 1 << 14:
            raise PrecisionError("could not expand function to requested precision")


def ord_F(g: FuncF, p: Place) -> int:
    if g.is_zero():
        raise InvariantDomainError("valuation of zero")
    prec = 8
    while True:
        s = series_F(g, p, prec)
        if not s.is_known_zero():
            return s.ord
        prec *= 2
        if prec > 1 << 13:
            raise PrecisionError("valuation not determined")


def _xe3_series(c: Curve, p: Place, prec: int) -> Series:
    F, xs, _ = c.local_expansion(p, prec)
    return xs - Series(F, 0, [c.roots[2]], EXACT)


@lru_cache(maxsize=None)
def beta_shape(c: Curve, p: Place) -> tuple[int, list[int] | tuple]:
    """(m, roots): x - e3 = t^(2m) c(t) at p, roots = sorted square roots of c(0)."""
    s = _xe3_series(c, p, 8)
    m2 = s.ord
    if m2 % 2:
        raise AssertionError("x - e3 has odd valuation")
    F = c.field(p.degree)
    return m2 // 2, tuple(F.sqrt_all(s.lead()))


def beta_series(c: Curve, w: PlaceY3, prec: int) -> Series:
    """Expansion of beta at a split place w (root label chooses the sign)."""
    m, roots = beta_shape(c, w.base)
    if not roots:
        raise InvariantDomainError(f"{w.label}: base place is inert in Y3")
    s = _xe3_series(c, w.base, prec + abs(m) + 4)
    cc = s.shift(-2 * m)
    return cc.sqrt(roots[w.tag]).shift(m).truncate(prec)


def series_K3(a: ElemK3, w: PlaceY3, prec: int) -> Series:
    c = a.curve
    out = series_F(a.u, w.base, prec)
    if not a.v.is_zero():
        m, _ = beta_shape(c, w.base)
        ov = ord_F(a.v, w.base)
        if ov + m < prec:
            out = out + series_F(a.v, w.base, prec - m) * beta_series(c, w, prec - ov)
    return out.truncate(prec)


def ord_K3(a: ElemK3, w: PlaceY3) -> int:
    if a.is_zero():
        raise InvariantDomainError("valuation of zero")
    c = a.curve
    if not w.is_split:
        m, _ = beta_shape(c, w.base)
        vals = []
        if not a.u.is_zero():
            vals.append(ord_F(a.u, w.base))
        if not a.v.is_zero():
            vals.append(ord_F(a.v, w.base) + m)
        return min(vals)
    prec = 8
    while True:
        s = series_K3(a, w, prec)
        if not s.is_known_zero():
            return s.ord
        prec *= 2
        if prec > 1 << 13:
            raise PrecisionError("valuation not determined")


# ---------------------------------------------------------------------------
# Divisors


def _places_over_poly(c: Curve, poly: Poly) -> set[Place]:
    out: set[Place] = set()
    if poly.degree <= 0:
        return out
    for pi, _ in factor(poly):
        out.update(c.places_over_x(pi))
    return out


def candidate_places_F(g: FuncF) -> set[Place]:
    c = g.curve
    return _places_over_poly(c, g.norm_poly()) | _places_over_poly(c, g.r) | {INFINITY}


def divisor_F(g: FuncF) -> Divisor:
    if g.is_zero():
        raise InvariantDomainError("divisor of zero")
    return Divisor({p: ord_F(g, p) for p in sorted(candidate_places_F(g))})


def candidate_places_K3(a: ElemK3) -> set[Place]:
    c = a.curve
    out = {INFINITY, c.two_torsion(2)}
    n = a.norm()
    out |= candidate_places_F(n)
    out |= _places_over_poly(c, a.u.r) | _places_over_poly(c, a.v.r)
    return out


def divisor_of(t: TowerConfig, a: ElemK3) -> DivisorY3:
    if a.is_zero():
        raise InvariantDomainError("divisor of the zero element")
    d = {}
    for x in sorted(candidate_places_K3(a)):
        for w in places_y3_over(t, x):
            d[w] = ord_K3(a, w)
    return DivisorY3(d)


# ---------------------------------------------------------------------------
# Riemann-Roch spaces


def _coords_rows(F, coeffs: list[list[int]]) -> list[list[int]]:
    """coeffs[k][j] in F_{q^d} -> rows of F_q-linear conditions (one per coordinate)."""
    rows = []
    ncond = len(coeffs[0]) if coeffs else 0
    for j in range(ncond):
        for i in range(F.d):
            rows.append([F.coords(col[j])[i] for col in coeffs])
    return rows


def riemann_roch_X(c: Curve, G: Divisor) -> list[FuncF]:
    """Basis of L_X(G) = {g : div g + G >= 0}."""
    q = c.q
    if G.degree < 0:
        return []
    # denominator clearing all allowed finite poles
    need: dict[Poly, int] = {}
    for p, m in G.items:
        if p.is_infinity or m <= 0:
            continue
        pi = c.x_minpoly(p)
        e = 2 if c.two_torsion_index(p) is not None else 1
        need[pi] = max(need.get(pi, 0), -(-m // e))
    r = Poly(q, (1,))
    for pi, k in need.items():
        r = r * pi**k
    M = G[INFINITY] + 2 * r.degree
    if M < 0:
        return []
    cands = [(Poly(q, [0] * i + [1]), Poly(q)) for i in range(M // 2 + 1)]
    cands += [(Poly(q), Poly(q, [0] * j + [1])) for j in range((M - 3) // 2 + 1) if 2 * j + 3 <= M]
    # conditions: ord_P(h) >= ord_P(r) - G(P) at finite places
    places = set()
    for pi in need:
        places.update(c.places_over_x(pi))
    places.update(p for p, m in G.items if m < 0 and not p.is_infinity)
    rows = []
    for p in sorted(places):
        e = 2 if c.two_torsion_index(p) is not None else 1
        ordr = sum(k * e for pi, k in need.items() if pi == c.x_minpoly(p))
        n = ordr - G[p]
        if n <= 0:
            continue
        F, xs, ys = c.local_expansion(p, n)
        cols = []
        for hp, hs in cands:
            s = xs.eval_poly(hp) + xs.eval_poly(hs) * ys
            cols.append([s.coeff(k) for k in range(n)])
        rows += _coords_rows(F, cols)
    basis = nullspace_mod(rows, len(cands), q) if rows else [
        [int(i == j) for i in range(len(cands))] for j in range(len(cands))]
    out = []
    for vec in basis:
        hp, hs = Poly(q), Poly(q)
        for a, (cp, cs) in zip(vec, cands):
            if a:
                hp, hs = hp + cp * a, hs + cs * a
        out.append(FuncF(c, hp, hs, r))
    return out


def _g_of(t: TowerConfig, M: DivisorY3) -> Divisor:
    """Smallest X-divisor G with nu3*G >= M."""
    d: dict[Place, int] = {}
    for x in sorted({w.base for w, _ in M.items}):
        d[x] = max(M[w] for w in places_y3_over(t, x))
    return Divisor(d)


def _extra_conditions(t: TowerConfig, M: DivisorY3, G: Divisor, elems: list[ElemK3]):
    """Laurent coefficients that must vanish for ord_w >= -M(w) at split w
    with M(w) < G(x).  Returns per-element columns and the (F, w, lo, hi) layout."""
    c = t.curve
    cols_all = [[] for _ in elems]
    layout = []
    for x in sorted({w.base for w, _ in M.items}):
        if not t.is_split(x):
            continue
        gx = G[x]
        for k in (0, 1):
            w = PlaceY3(x, k)
            mw = M[w]
            if mw >= gx:
                continue
            lo, hi = -gx, -mw
            layout.append((c.field(x.degree), w, lo, hi))
            for col, a in zip(cols_all, elems):
                s = series_K3(a, w, hi)
                col.append([s.coeff(e) for e in range(lo, hi)])
    return cols_all, layout


def _flatten_rows(cols_all, layout) -> list[list[int]]:
    rows = []
    for idx, (F, w, lo, hi) in enumerate(layout):
        for j in range(hi - lo):
            for i in range(F.d):
                rows.append([F.coords(col[idx][j])[i] for col in cols_all])
    return rows


@dataclass
class RRSpace:
    tower: TowerConfig
    M: DivisorY3
    basis: list[ElemK3]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, a: ElemK3) -> bool:
        if a.is_zero():
            return True
        return (divisor_of(self.tower, a) + self.M) >= DivisorY3()

    def combination(self, coeffs) -> ElemK3:
        c = self.tower.curve
        out = ElemK3(c, FuncF.const(c, 0))
        for a, b in zip(coeffs, self.basis):
            if a % c.q:
                out = out + b * (a % c.q)
        return out


def rr_space(t: TowerConfig, M: DivisorY3) -> RRSpace:
    """Basis of L(M) = {a in K3 : div(a) + M >= 0}."""
    c = t.curve
    if M.degree < 0:
        return RRSpace(t, M, [])
    G = _g_of(t, M)
    U = riemann_roch_X(c, G)
    V = riemann_roch_X(c, G + Divisor({c.two_torsion(2): 1, INFINITY: -1}))
    zero = FuncF.const(c, 0)
    gens = [ElemK3(c, u, zero) for u in U] + [ElemK3(c, zero, v) for v in V]
    cols, layout = _extra_conditions(t, M, G, gens)
    rows = _flatten_rows(cols, layout)
    if rows:
        null = nullspace_mod(rows, len(gens), c.q)
    else:
        null = [[int(i == j) for i in range(len(gens))] for j in range(len(gens))]
    basis = []
    for vec in null:
        out = ElemK3(c, zero, zero)
        for a, g in zip(vec, gens):
            if a:
                out = out + g * a
        basis.append(out)
    return RRSpace(t, M, basis)


def affine_trace_one_slice(t: TowerConfig, M: DivisorY3):
    """All a = 1/2 + v beta in L(M).  Returns (list of ElemK3, dim or None)."""
    c = t.curve
    q = c.q
    half = (q + 1) // 2
    G = _g_of(t, M)
    if M.degree < 0 or any(m < 0 for _, m in G.items):
        # the constant 1/2 must itself lie in L_X(G)
        return [], None
    V = riemann_roch_X(c, G + Divisor({c.two_torsion(2): 1, INFINITY: -1}))
    zero = FuncF.const(c, 0)
    gens = [ElemK3(c, zero, v) for v in V]
    const = ElemK3(c, FuncF.const(c, half), zero)
    cols, layout = _extra_conditions(t, M, G, gens + [const])
    rows_full = _flatten_rows(cols, layout)
    if not rows_full:
        part, null = [0] * len(gens), [[int(i == j) for i in range(len(gens))] for j in range(len(gens))]
    else:
        rows = [r[:-1] for r in rows_full]
        rhs = [-r[-1] % q for r in rows_full]
        sol = solve_affine_mod(rows, rhs, len(gens), q)
        if sol is None:
            return [], None
        part, null = sol
    out = []
    for vec in span_elements(part, null, q):
        v = zero
        for a, g in zip(vec, V):
            if a:
                v = v + g * a
        out.append(ElemK3(c, FuncF.const(c, half), v))
    return out, len(null)
