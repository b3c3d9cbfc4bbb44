"""Exact arithmetic over F_q and F_{q^d} (q an odd prime), univariate
polynomials over F_q, factorization, and linear algebra mod q.

Extension-field elements are stored as integers ``sum(c_i * q**i)`` where
``c_0 .. c_{d-1}`` are the coordinates in the polynomial basis modulo the
field's defining polynomial.  Base-field elements therefore have the same
integer in every extension, which keeps F_q-coefficients free to use
anywhere.  Multiplication goes through exp/log tables and addition through a
Zech-logarithm table, so every field operation is O(1).
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from .errors import CapacityError, ConfigurationError

#: Largest field order any computation may build tables for (13**4 fits).
MAX_FIELD_ORDER = 30_000
ALLOWED_PRIMES = (3, 5, 7, 11, 13)


def _check_prime(q: int) -> None:
    if q not in ALLOWED_PRIMES:
        raise ConfigurationError(f"q must be an odd prime <= 13, got {q}")


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomials over F_q


class Poly:
    """Univariate polynomial over F_q, coefficients low degree first."""

    __slots__ = ("q", "c")

    def __init__(self, q: int, coeffs=()):
        c = [int(a) % q for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.q = q
        self.c = tuple(c)

    @classmethod
    def x(cls, q: int) -> "Poly":
        return cls(q, (0, 1))

    @classmethod
    def const(cls, q: int, a: int) -> "Poly":
        return cls(q, (a,))

    @classmethod
    def from_roots(cls, q: int, roots) -> "Poly":
        out = cls(q, (1,))
        for r in roots:
            out = out * cls(q, (-r, 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == (1,)

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly(self.q, (other,))
        return isinstance(other, Poly) and self.q == other.q and self.c == other.c

    def __hash__(self):
        return hash((self.q, self.c))

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(f"{a}{'*' if mon else ''}{mon}" if a != 1 or not mon else mon)
        return " + ".join(reversed(terms))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly(self.q, (other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (0,) * (n - len(self.c))
        b = other.c + (0,) * (n - len(other.c))
        return Poly(self.q, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.q, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.c or not other.c:
            return Poly(self.q)
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return Poly(self.q, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out, base = Poly(self.q, (1,)), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        q = self.q
        r = list(self.c)
        inv = pow(other.lc, q - 2, q)
        dq = len(r) - len(other.c)
        if dq < 0:
            return Poly(q), self
        quo = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            coef = r[k + len(other.c) - 1] * inv % q
            quo[k] = coef
            if coef:
                for j, b in enumerate(other.c):
                    r[k + j] = (r[k + j] - coef * b) % q
        return Poly(q, quo), Poly(q, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, a: int) -> int:
        acc = 0
        for coef in reversed(self.c):
            acc = (acc * a + coef) % self.q
        return acc

    def monic(self) -> "Poly":
        if not self.c:
            return self
        inv = pow(self.lc, self.q - 2, self.q)
        return Poly(self.q, [a * inv for a in self.c])

    def deriv(self) -> "Poly":
        return Poly(self.q, [i * a for i, a in enumerate(self.c)][1:])

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        out, base = Poly(self.q, (1,)), self % mod
        while e:
            if e & 1:
                out = out * base % mod
            base = base * base % mod
            e >>= 1
        return out

    def sort_key(self):
        return (len(self.c), tuple(reversed(self.c)))

    def encode(self) -> str:
        return ",".join(str(a) for a in self.c) if self.c else "0"

    @classmethod
    def decode(cls, q: int, text: str) -> "Poly":
        return cls(q, [int(a) for a in text.split(",")])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g monic."""
    q = a.q
    r0, r1 = a, b
    s0, s1 = Poly(q, (1,)), Poly(q)
    t0, t1 = Poly(q), Poly(q, (1,))
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    inv = pow(r0.lc, q - 2, q)
    return r0 * inv, s0 * inv, t0 * inv


def is_irreducible(f: Poly) -> bool:
    """Rabin's test."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    q = f.q
    x = Poly.x(q)
    f = f.monic()
    if x.powmod(q**n, f) != x % f:
        return False
    for p in _prime_factors(n):
        h = x.powmod(q ** (n // p), f) - x
        if not poly_gcd(f, h).is_one():
            return False
    return True


def _pth_root(f: Poly) -> Poly:
    p = f.q
    return Poly(p, f.c[::p])


def _squarefree(f: Poly) -> list[tuple[Poly, int]]:
    out: list[tuple[Poly, int]] = []
    p = f.q
    fp = f.deriv()
    if not fp:
        for g, j in _squarefree(_pth_root(f)):
            out.append((g, j * p))
        return out
    c = poly_gcd(f, fp)
    w = f // c
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        z = w // y
        if not z.is_one():
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if not c.monic().is_one():
        for g, j in _squarefree(_pth_root(c.monic())):
            out.append((g, j * p))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    q = f.q
    x = Poly.x(q)
    out = []
    h = x
    i = 1
    rest = f
    while rest.degree >= 2 * i:
        h = h.powmod(q, rest)
        g = poly_gcd(rest, h - x)
        if not g.is_one():
            out.append((g, i))
            rest = rest // g
            h = h % rest
        i += 1
    if rest.degree > 0:
        out.append((rest.monic(), rest.degree))
    return out


def _equal_degree(f: Poly, i: int, rng: random.Random) -> list[Poly]:
    n = f.degree
    if n == i:
        return [f.monic()]
    q = f.q
    while True:
        a = Poly(q, [rng.randrange(q) for _ in range(n)])
        if a.degree < 1:
            continue
        b = a.powmod((q**i - 1) // 2, f) - 1
        d = poly_gcd(f, b)
        if 0 < d.degree < n:
            return _equal_degree(d, i, rng) + _equal_degree(f // d, i, rng)


def factor(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, in canonical order.

    The leading coefficient ``p.lc`` is the unit not covered by the factors.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if p.degree == 0:
        return []
    rng = random.Random(hash(p.c) & 0xFFFFFFFF)
    mult: dict[Poly, int] = {}
    for sf, m in _squarefree(p.monic()):
        for g, i in _distinct_degree(sf):
            for h in _equal_degree(g, i, rng):
                mult[h] = mult.get(h, 0) + m
    return sorted(mult.items(), key=lambda t: t[0].sort_key())


def expand_factors(q: int, lc: int, factors) -> Poly:
    out = Poly(q, (lc,))
    for g, m in factors:
        out = out * g**m
    return out


@lru_cache(maxsize=None)
def conway_like_modulus(q: int, d: int) -> Poly:
    """First monic irreducible of degree d, tails ordered by sum(c_i q^i)."""
    for idx in range(q**d):
        tail = [(idx // q**j) % q for j in range(d)]
        f = Poly(q, tail + [1])
        if is_irreducible(f):
            return f
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# Finite fields


class GF:
    """The field F_{q^d} with table-driven arithmetic on integer encodings."""

    def __init__(self, q: int, d: int):
        _check_prime(q)
        if d < 1:
            raise ValueError("extension degree must be positive")
        order = q**d
        if order > MAX_FIELD_ORDER:
            raise CapacityError(f"F_{q}^{d} has {order} elements, limit {MAX_FIELD_ORDER}")
        self.q, self.d, self.order = q, d, order
        self.m = order - 1
        self.modulus = conway_like_modulus(q, d) if d > 1 else Poly.x(q)
        self._build_tables()

    def __repr__(self):
        return f"GF({self.q}^{self.d})"

    # slow-path multiplication of coordinate vectors, used only to build tables
    def _slow_mul(self, a: list[int], b: list[int]) -> list[int]:
        q, d = self.q, self.d
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        mod = self.modulus.c
        for k in range(2 * d - 2, d - 1, -1):
            coef = prod[k] % q
            if coef:
                for j in range(d + 1):
                    prod[k - d + j] -= coef * mod[j]
        return [v % q for v in prod[:d]]

    def _encode(self, coords) -> int:
        return sum(c * self.q**i for i, c in enumerate(coords))

    def coords(self, a: int) -> list[int]:
        q = self.q
        return [(a // q**i) % q for i in range(self.d)]

    def _build_tables(self):
        q, d, m = self.q, self.d, self.m
        one = [1] + [0] * (d - 1)
        for cand in range(2, self.order):
            g = self.coords(cand)
            exp = [0] * m
            cur = one
            ok = True
            for k in range(m):
                enc = self._encode(cur)
                if k > 0 and enc == 1:
                    ok = False
                    break
                exp[k] = enc
                cur = self._slow_mul(cur, g)
            if ok and self._encode(cur) == 1:
                break
        else:  # pragma: no cover - q=2 excluded
            raise AssertionError("no primitive element")
        self.generator = cand
        self._exp = exp
        log = [-1] * self.order
        for k, v in enumerate(exp):
            log[v] = k
        self._log = log
        zech = [-1] * m
        for k, v in enumerate(exp):
            c0 = v % q
            w = v - c0 + (c0 + 1) % q
            zech[k] = log[w] if w else -1
        self._zech = zech
        self._half = m // 2

    # --- arithmetic on encodings
    def add(self, a: int, b: int) -> int:
        if not a:
            return b
        if not b:
            return a
        if self.d == 1:
            return (a + b) % self.q
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self.m]
        if z < 0:
            return 0
        return self._exp[(la + z) % self.m]

    def neg(self, a: int) -> int:
        if not a:
            return 0
        if self.d == 1:
            return self.q - a
        return self._exp[(self._log[a] + self._half) % self.m]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self.m]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self._exp[(-self._log[a]) % self.m]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if not a:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % self.m]

    def frob(self, a: int, k: int = 1) -> int:
        return self.pow(a, self.q**k) if a else 0

    def legendre(self, a: int) -> int:
        if not a:
            return 0
        return 1 if self.pow(a, self._half) == 1 else -1

    def sqrt_all(self, a: int) -> list[int]:
        """Both square roots, smaller encoding first; [] for non-squares."""
        if not a:
            return [0]
        la = self._log[a]
        if la % 2:
            return []
        r = self._exp[la // 2]
        return sorted({r, self.neg(r)})

    def norm(self, a: int) -> int:
        return self.pow(a, self.m // (self.q - 1)) if a else 0

    def trace(self, a: int) -> int:
        acc, cur = 0, a
        for _ in range(self.d):
            acc = self.add(acc, cur)
            cur = self.frob(cur)
        return acc

    def from_int(self, a: int) -> int:
        return a % self.q

    def elements(self):
        return range(self.order)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def eval_poly(self, p: Poly, a: int) -> int:
        acc = 0
        for coef in reversed(p.c):
            acc = self.add(self.mul(acc, a), coef)
        return acc

    def in_subfield(self, a: int, k: int) -> bool:
        return self.frob(a, k) == a

    def element(self, a: int) -> "ExtElem":
        return ExtElem(self, a)


@lru_cache(maxsize=None)
def field(q: int, d: int = 1) -> GF:
    return GF(q, d)


class ExtElem:
    """An element of F_{q^d} with operator overloading."""

    __slots__ = ("F", "v")

    def __init__(self, F: GF, v: int):
        self.F, self.v = F, v

    @property
    def degree(self) -> int:
        return self.F.d

    @property
    def coords(self) -> list[int]:
        return self.F.coords(self.v)

    def _other(self, o):
        if isinstance(o, ExtElem):
            if o.F is not self.F:
                raise ValueError("elements of different fields")
            return o.v
        return self.F.from_int(o)

    def __add__(self, o):
        return ExtElem(self.F, self.F.add(self.v, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return ExtElem(self.F, self.F.sub(self.v, self._other(o)))

    def __rsub__(self, o):
        return ExtElem(self.F, self.F.sub(self._other(o), self.v))

    def __mul__(self, o):
        return ExtElem(self.F, self.F.mul(self.v, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return ExtElem(self.F, self.F.div(self.v, self._other(o)))

    def __neg__(self):
        return ExtElem(self.F, self.F.neg(self.v))

    def __pow__(self, e: int):
        return ExtElem(self.F, self.F.pow(self.v, e))

    def __eq__(self, o):
        if isinstance(o, ExtElem):
            return self.F is o.F and self.v == o.v
        if isinstance(o, int):
            return self.v == self.F.from_int(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.F.q, self.F.d, self.v))

    def __repr__(self):
        return f"{self.v}@F{self.F.q}^{self.F.d}"

    def frobenius(self, k: int = 1) -> "ExtElem":
        return ExtElem(self.F, self.F.frob(self.v, k))


def legendre(e: ExtElem) -> int:
    """Quadratic residue symbol in F_{q^d}: sign of e^((q^d-1)/2)."""
    return e.F.legendre(e.v)


def norm_to_base(e: ExtElem) -> int:
    return e.F.norm(e.v)


def trace_to_base(e: ExtElem) -> int:
    return e.F.trace(e.v)


# --- polynomials with coefficients in an extension field (lists of encodings)


def _xp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _xp_mul(F: GF, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _xp_trim(out)


def _xp_divmod(F: GF, a, b):
    r = list(a)
    inv = F.inv(b[-1])
    if len(r) < len(b):
        return [], _xp_trim(r)
    quo = [0] * (len(r) - len(b) + 1)
    for k in range(len(quo) - 1, -1, -1):
        coef = F.mul(r[k + len(b) - 1], inv)
        quo[k] = coef
        if coef:
            for j, y in enumerate(b):
                r[k + j] = F.sub(r[k + j], F.mul(coef, y))
    return _xp_trim(quo), _xp_trim(r)


def _xp_gcd(F: GF, a, b):
    a, b = _xp_trim(list(a)), _xp_trim(list(b))
    while b:
        a, b = b, _xp_divmod(F, a, b)[1]
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(c, inv) for c in a]
    return a


def _xp_powmod(F: GF, base, e: int, mod):
    out = [1]
    base = _xp_divmod(F, base, mod)[1]
    while e:
        if e & 1:
            out = _xp_divmod(F, _xp_mul(F, out, base), mod)[1]
        base = _xp_divmod(F, _xp_mul(F, base, base), mod)[1]
        e >>= 1
    return out


def roots_in_field(F: GF, p: Poly) -> list[int]:
    """All distinct roots in F of a polynomial with F_q coefficients."""
    f = _xp_trim(list(p.c))
    if len(f) <= 1:
        return []
    # restrict to the part splitting into linear factors over F
    xQ = _xp_powmod(F, [0, 1], F.order, f)
    g = _xp_gcd(F, f, _xp_sub(F, xQ, [0, 1]))
    return sorted(_xp_split_roots(F, g, 0))


def _xp_sub(F: GF, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _xp_trim([F.sub(x, y) for x, y in zip(a, b)])


def _xp_split_roots(F: GF, g, shift: int) -> list[int]:
    if len(g) <= 1:
        return []
    if len(g) == 2:
        return [F.neg(F.div(g[0], g[1]))]
    delta = shift
    while True:
        delta += 1
        c = delta % F.order
        h = _xp_powmod(F, [c, 1], F.m // 2, g)
        h = _xp_sub(F, h, [1])
        d = _xp_gcd(F, g, h)
        if 1 < len(d) < len(g):
            rest = _xp_divmod(F, g, d)[0]
            return _xp_split_roots(F, d, delta) + _xp_split_roots(F, rest, delta)


@lru_cache(maxsize=None)
def embedding(q: int, d: int, D: int) -> tuple[int, ...]:
    """Images of 1, z, .., z^{d-1} (z the generator of F_{q^d}) in F_{q^D}.

    Computed once by root matching: z is sent to the smallest root of the
    degree-d modulus inside F_{q^D}.
    """
    if D % d:
        raise ValueError(f"F_{q}^{d} does not embed in F_{q}^{D}")
    small, big = field(q, d), field(q, D)
    rho = roots_in_field(big, small.modulus)[0] if d > 1 else 0
    if d == 1:
        return (1,)
    return tuple(big.pow(rho, i) for i in range(d))


def embed(q: int, a: int, d: int, D: int) -> int:
    if d == D:
        return a
    small, big = field(q, d), field(q, D)
    basis = embedding(q, d, D)
    acc = 0
    for c, b in zip(small.coords(a), basis):
        if c:
            acc = big.add(acc, big.mul(c, b))
    return acc


def minimal_polynomial(q: int, d: int, a: int) -> Poly:
    """Minimal polynomial over F_q of an element of F_{q^d}."""
    F = field(q, d)
    conj = [a]
    cur = F.frob(a)
    while cur != a:
        conj.append(cur)
        cur = F.frob(cur)
    coeffs = [1]
    for r in conj:
        coeffs = _xp_mul(F, coeffs, [F.neg(r), 1])
    if any(c >= q for c in coeffs):
        raise AssertionError("minimal polynomial escaped F_q")
    return Poly(q, coeffs)


# ---------------------------------------------------------------------------
# Linear algebra mod q


def rref_mod(rows: list[list[int]], ncols: int, q: int):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [[v % q for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], q - 2, q)
        m[r] = [v * inv % q for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace_mod(rows: list[list[int]], ncols: int, q: int) -> list[list[int]]:
    red, pivots = rref_mod(rows, ncols, q) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [0] * ncols
        vec[fcol] = 1
        for row, pc in zip(red, pivots):
            vec[pc] = -row[fcol] % q
        basis.append(vec)
    return basis


def solve_affine_mod(rows: list[list[int]], rhs: list[int], ncols: int, q: int):
    """Solve rows * c = rhs.  Returns (particular, nullspace basis) or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return [0] * ncols, nullspace_mod([], ncols, q)
    red, pivots = rref_mod(aug, ncols + 1, q)
    if ncols in pivots:
        return None
    part = [0] * ncols
    for row, pc in zip(red, pivots):
        part[pc] = row[ncols]
    return part, nullspace_mod(rows, ncols, q)


def span_elements(part: list[int], basis: list[list[int]], q: int):
    """Iterate the affine space part + span(basis) in canonical order."""
    for coeffs in product(range(q), repeat=len(basis)):
        vec = list(part)
        for c, b in zip(coeffs, basis):
            if c:
                vec = [(x + c * y) % q for x, y in zip(vec, b)]
        yield vec
