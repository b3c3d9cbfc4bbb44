"""The elliptic curve y^2 = (x-e1)(x-e2)(x-e3) over F_q: points, places,
divisors, effective-divisor enumeration and local expansions at places."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .algebra import MAX_FIELD_ORDER, Poly, embed, field, roots_in_field, _check_prime
from .errors import CapacityError, ConfigurationError, PrecisionError
from .series import EXACT, Series

INF = -1


@dataclass(frozen=True, order=True)
class Place:
    """A closed point: degree plus the canonical orbit representative.

    Coordinates are encodings in F_{q^degree}; infinity has x = y = -1.
    """

    degree: int
    x: int
    y: int

    @property
    def is_infinity(self) -> bool:
        return self.x == INF

    @property
    def label(self) -> str:
        return "inf" if self.is_infinity else f"{self.degree}:{self.x}:{self.y}"

    def __str__(self):
        return self.label

    @classmethod
    def parse(cls, text: str) -> "Place":
        text = text.strip()
        if text in ("inf", "1:inf"):
            return INFINITY
        try:
            d, x, y = (int(v) for v in text.split(":"))
        except ValueError:
            raise ConfigurationError(f"bad place label {text!r}") from None
        return cls(d, x, y)


INFINITY = Place(1, INF, INF)


@dataclass(frozen=True)
class Point:
    """A geometric point with coordinates in F_{q^d}; x is None at infinity."""

    d: int
    x: int | None
    y: int | None

    @property
    def is_infinity(self) -> bool:
        return self.x is None


class FormalSum:
    """Finitely supported integer combination of places, hashable."""

    __slots__ = ("items",)

    def __init__(self, data=None):
        if isinstance(data, FormalSum):
            data = dict(data.items)
        d = {}
        for p, m in (data or {}).items() if isinstance(data, dict) else (data or ()):
            if m:
                d[p] = d.get(p, 0) + m
        self.items = tuple(sorted((p, m) for p, m in d.items() if m))

    def __getitem__(self, p) -> int:
        for k, m in self.items:
            if k == p:
                return m
        return 0

    def as_dict(self) -> dict:
        return dict(self.items)

    @property
    def support(self):
        return [p for p, _ in self.items]

    @property
    def degree(self) -> int:
        return sum(m * p.degree for p, m in self.items)

    def is_effective(self) -> bool:
        return all(m > 0 for _, m in self.items)

    def is_zero(self) -> bool:
        return not self.items

    def __add__(self, o):
        d = self.as_dict()
        for p, m in o.items:
            d[p] = d.get(p, 0) + m
        return type(self)(d)

    def __neg__(self):
        return type(self)({p: -m for p, m in self.items})

    def __sub__(self, o):
        return self + (-o)

    def __rmul__(self, k: int):
        return type(self)({p: k * m for p, m in self.items})

    def __eq__(self, o):
        return type(self) is type(o) and self.items == o.items

    def __hash__(self):
        return hash((type(self).__name__, self.items))

    def __le__(self, o):
        return (o - self).is_effective() or (o - self).is_zero()

    def __ge__(self, o):
        return o <= self

    @property
    def label(self) -> str:
        return "{" + ",".join(f"{p.label}^{m}" for p, m in self.items) + "}"

    def __repr__(self):
        return self.label

    __str__ = __repr__


class Divisor(FormalSum):
    @classmethod
    def parse(cls, text: str) -> "Divisor":
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ConfigurationError(f"bad divisor {text!r}")
        body = text[1:-1].strip()
        d: dict[Place, int] = {}
        for part in filter(None, (s.strip() for s in body.split(","))):
            lab, _, mult = part.partition("^")
            p = Place.parse(lab)
            d[p] = d.get(p, 0) + (int(mult) if mult else 1)
        return cls(d)

    @classmethod
    def point(cls, p: Place, m: int = 1) -> "Divisor":
        return cls({p: m})


@dataclass(frozen=True)
class Curve:
    q: int
    roots: tuple[int, int, int]

    def __post_init__(self):
        _check_prime(self.q)
        r = tuple(e % self.q for e in self.roots)
        if len(r) != 3 or len(set(r)) != 3:
            raise ConfigurationError("the three roots must be pairwise distinct")
        object.__setattr__(self, "roots", r)

    @property
    def f(self) -> Poly:
        return Poly.from_roots(self.q, self.roots)

    def two_torsion(self, i: int) -> Place:
        return Place(1, self.roots[i], 0)

    def field(self, d: int):
        if self.q**d > MAX_FIELD_ORDER:
            raise CapacityError(f"F_{self.q}^{d} exceeds the session field bound")
        return field(self.q, d)

    def on_curve(self, pt: Point) -> bool:
        if pt.is_infinity:
            return True
        F = self.field(pt.d)
        return F.mul(pt.y, pt.y) == F.eval_poly(self.f, pt.x)

    # --- points and places

    def points_over(self, d: int) -> list[Point]:
        F = self.field(d)
        out = [Point(d, None, None)]
        for x in F.elements():
            for y in F.sqrt_all(F.eval_poly(self.f, x)):
                out.append(Point(d, x, y))
        return out

    def place_of_point(self, pt: Point) -> Place:
        if pt.is_infinity:
            return INFINITY
        F = self.field(pt.d)
        k = 1
        while not (F.frob(pt.x, k) == pt.x and F.frob(pt.y, k) == pt.y):
            k += 1
        x, y = _restrict(self.q, pt.x, pt.d, k), _restrict(self.q, pt.y, pt.d, k)
        return _canonical(self.q, k, x, y)

    def places_of_degree(self, d: int) -> list[Place]:
        return _places_of_degree(self, d)

    def places_up_to(self, n: int) -> list[Place]:
        out = []
        for d in range(1, n + 1):
            out.extend(self.places_of_degree(d))
        return out

    def places_over_x(self, pi: Poly) -> list[Place]:
        """Places of X lying over the x-line place cut out by irreducible pi."""
        k = pi.degree
        F = self.field(k)
        x0 = roots_in_field(F, pi)[0]
        fx = F.eval_poly(self.f, x0)
        if fx == 0:
            return [_canonical(self.q, k, x0, 0)]
        ys = F.sqrt_all(fx)
        if ys:
            return sorted({_canonical(self.q, k, x0, y) for y in ys})
        F2 = self.field(2 * k)
        x2 = embed(self.q, x0, k, 2 * k)
        y2 = F2.sqrt_all(F2.eval_poly(self.f, x2))[0]
        return [_canonical(self.q, 2 * k, x2, y2)]

    def x_minpoly(self, p: Place) -> Poly:
        """Minimal polynomial over F_q of the x-coordinate of a finite place."""
        from .algebra import minimal_polynomial

        return minimal_polynomial(self.q, p.degree, p.x)

    def two_torsion_index(self, p: Place) -> int | None:
        if p.degree == 1 and p.y == 0 and not p.is_infinity:
            return self.roots.index(p.x)
        return None

    # --- divisors

    def effective_divisors(self, n: int) -> Iterator[Divisor]:
        """All effective divisors of degree exactly n, lexicographic order."""
        if n < 0:
            return
        places = self.places_up_to(n) if n else []
        yield from _multisets(places, 0, n, {})

    def divisor_of_coordinate_function(self, kind: str, c0: int = 0) -> Divisor:
        """div(x - c0) for kind 'x', or div(y) for kind 'y'."""
        if kind == "y":
            d = {self.two_torsion(i): 1 for i in range(3)}
            d[INFINITY] = -3
            return Divisor(d)
        if kind != "x":
            raise ValueError("kind must be 'x' or 'y'")
        pi = Poly(self.q, (-c0, 1))
        d = {p: 2 if self.two_torsion_index(p) is not None else 1
             for p in self.places_over_x(pi)}
        d[INFINITY] = -2
        return Divisor(d)

    # --- local expansions

    def local_expansion(self, p: Place, prec: int):
        """(F, x(t), y(t)) at place p in a uniformizer t, to absolute precision prec."""
        return _local_expansion(self, p, prec)


def _multisets(places, start, n, acc) -> Iterator[Divisor]:
    if n == 0:
        yield Divisor(dict(acc))
        return
    for i in range(start, len(places)):
        p = places[i]
        if p.degree > n:
            continue
        acc[p] = acc.get(p, 0) + 1
        yield from _multisets(places, i, n - p.degree, acc)
        acc[p] -= 1
        if not acc[p]:
            del acc[p]


@lru_cache(maxsize=None)
def _restriction_table(q: int, k: int, d: int) -> dict[int, int]:
    return {embed(q, a, k, d): a for a in range(q**k)}


def _restrict(q: int, a: int, d: int, k: int) -> int:
    if k == d:
        return a
    return _restriction_table(q, k, d)[a]


def _canonical(q: int, k: int, x: int, y: int) -> Place:
    F = field(q, k)
    best = (x, y)
    cx, cy = x, y
    for _ in range(k - 1):
        cx, cy = F.frob(cx), F.frob(cy)
        best = min(best, (cx, cy))
    return Place(k, *best)


@lru_cache(maxsize=None)
def _places_of_degree(c: Curve, d: int) -> list[Place]:
    if d == 1:
        out = {INFINITY}
    else:
        out = set()
    F = c.field(d)
    for pt in c.points_over(d):
        if pt.is_infinity:
            continue
        if any(F.frob(pt.x, k) == pt.x and F.frob(pt.y, k) == pt.y for k in range(1, d)):
            continue
        out.add(_canonical(c.q, d, pt.x, pt.y))
    return sorted(out)


@lru_cache(maxsize=4096)
def _local_expansion(c: Curve, p: Place, prec: int):
    F = c.field(p.degree)
    if p.is_infinity:
        return F, *_expand_infinity(c, F, prec)
    idx = c.two_torsion_index(p)
    if idx is None:
        x = Series(F, 0, [p.x, 1], EXACT)
        fx = x.eval_poly(c.f).truncate(prec)
        y = fx.sqrt(p.y)
        return F, x.truncate(max(prec, 2)), y
    e = c.roots[idx]
    others = [r for j, r in enumerate(c.roots) if j != idx]
    g = Poly.from_roots(c.q, others)
    t2 = Series(F, 2, [1], EXACT)
    x = Series(F, 0, [e], prec)
    for _ in range(prec // 2 + 1):
        x = Series(F, 0, [e], prec) + t2 * x.eval_poly(g).truncate(prec).inv()
        x = x.truncate(prec)
    y = Series(F, 1, [1], EXACT).truncate(prec)
    return F, x, y


def _expand_infinity(c: Curve, F, prec: int):
    # t = x/y, s = 1/x; t^2 = s / h(s), so s = t^2 h(s), h = 1 + A s + B s^2 + C s^3
    C, B, A = c.f.c[0], c.f.c[1], c.f.c[2]
    h = Poly(c.q, (1, A, B, C))
    P = prec + 5
    t2 = Series(F, 2, [1], EXACT)
    s = Series(F, 2, [1], P)
    for _ in range(P // 2 + 1):
        s = (t2 * s.eval_poly(h).truncate(P)).truncate(P)
    x = s.inv()
    y = x * Series(F, -1, [1], EXACT)
    return x.truncate(prec), y.truncate(prec)


def ord_at(c: Curve, p: Place, poly_x: Poly, poly_y: Poly | None = None) -> int:
    """ord_p(poly_x(x) + poly_y(x) * y) for a nonzero polynomial function."""
    prec = 8
    while True:
        F, xs, ys = c.local_expansion(p, prec)
        val = xs.eval_poly(poly_x)
        if poly_y is not None and poly_y.c:
            val = val + xs.eval_poly(poly_y) * ys
        try:
            return val.ord
        except PrecisionError:
            if prec > 4096:
                raise
            prec *= 2
