"""Truncated Laurent series over a finite field with absolute precision.

A ``Series`` stands for ``sum c[i] t^(val+i) + O(t^prec)``.  Products and
quotients propagate precision the usual way; asking for the valuation of a
series whose known part is all zero raises ``PrecisionError`` so callers can
retry with more terms.
"""

from __future__ import annotations

from .algebra import GF, Poly
from .errors import PrecisionError


#: Precision used for exact (polynomial) constants.
EXACT = 10**9


class Series:
    __slots__ = ("F", "val", "c", "prec")

    def __init__(self, F: GF, val: int, coeffs, prec: int):
        c = list(coeffs[: max(0, prec - val)])
        k = 0
        while k < len(c) and c[k] == 0:
            k += 1
        if k == len(c):
            self.F, self.val, self.c, self.prec = F, prec, [], prec
            return
        self.F, self.val, self.c, self.prec = F, val + k, c[k:], prec

    @classmethod
    def const(cls, F: GF, a: int, prec: int) -> "Series":
        return cls(F, 0, [a], prec)

    @classmethod
    def monomial(cls, F: GF, a: int, e: int, prec: int) -> "Series":
        return cls(F, e, [a], prec)

    def is_known_zero(self) -> bool:
        return not self.c

    @property
    def ord(self) -> int:
        if not self.c:
            raise PrecisionError(f"series is zero to precision {self.prec}")
        return self.val

    def lead(self) -> int:
        if not self.c:
            raise PrecisionError("leading coefficient not determined")
        return self.c[0]

    def coeff(self, e: int) -> int:
        if e >= self.prec:
            raise PrecisionError(f"coefficient t^{e} beyond precision {self.prec}")
        i = e - self.val
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __add__(self, o: "Series") -> "Series":
        F = self.F
        prec = min(self.prec, o.prec)
        lo = min(self.val, o.val)
        hi = max([s.val + len(s.c) for s in (self, o) if s.c], default=lo)
        out = [0] * max(0, min(prec, hi) - lo)
        for s in (self, o):
            for i, a in enumerate(s.c):
                e = s.val + i
                if e < prec and a:
                    out[e - lo] = F.add(out[e - lo], a)
        return Series(F, lo, out, prec)

    def __neg__(self) -> "Series":
        return Series(self.F, self.val, [self.F.neg(a) for a in self.c], self.prec)

    def __sub__(self, o: "Series") -> "Series":
        return self + (-o)

    def scale(self, a: int) -> "Series":
        if a == 0:
            return Series(self.F, self.prec, [], self.prec)
        return Series(self.F, self.val, [self.F.mul(a, b) for b in self.c], self.prec)

    def shift(self, k: int) -> "Series":
        return Series(self.F, self.val + k, self.c, self.prec + k)

    def __mul__(self, o: "Series") -> "Series":
        F = self.F
        prec = min(self.prec + o.val, o.prec + self.val)
        val = self.val + o.val
        n = max(0, min(prec - val, len(self.c) + len(o.c) - 1))
        out = [0] * n
        for i, a in enumerate(self.c[:n]):
            if not a:
                continue
            la = F._log[a]
            for j in range(min(len(o.c), n - i)):
                b = o.c[j]
                if b:
                    out[i + j] = F.add(out[i + j], F._exp[(la + F._log[b]) % F.m])
        return Series(F, val, out, prec)

    def truncate(self, prec: int) -> "Series":
        return Series(self.F, self.val, self.c, min(prec, self.prec))

    def _rel_coeffs(self) -> list[int]:
        n = self.prec - self.val
        if n > 100_000:
            raise ValueError("truncate an exact series before inverting it")
        return self.c + [0] * (n - len(self.c))

    def inv(self) -> "Series":
        F = self.F
        if not self.c:
            raise PrecisionError("cannot invert a series with unknown leading term")
        c = self._rel_coeffs()
        n = len(c)
        c0inv = F.inv(self.c[0])
        out = [0] * n
        out[0] = c0inv
        for k in range(1, n):
            acc = 0
            for j in range(1, k + 1):
                if c[j] and out[k - j]:
                    acc = F.add(acc, F.mul(c[j], out[k - j]))
            out[k] = F.neg(F.mul(acc, c0inv))
        return Series(F, -self.val, out, -self.val + n)

    def __truediv__(self, o: "Series") -> "Series":
        return self * o.inv()

    def __pow__(self, e: int) -> "Series":
        if e < 0:
            return self.inv() ** (-e)
        out = Series(self.F, 0, [1], EXACT)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def sqrt(self, root0: int) -> "Series":
        """Square root whose leading coefficient is ``root0``."""
        F = self.F
        if not self.c or self.val % 2:
            raise PrecisionError("square root needs a known even-order leading term")
        if F.mul(root0, root0) != self.c[0]:
            raise ValueError("root0 is not a square root of the leading coefficient")
        c = self._rel_coeffs()
        n = len(c)
        out = [0] * n
        out[0] = root0
        inv2r = F.inv(F.add(root0, root0))
        for k in range(1, n):
            acc = c[k]
            for j in range(1, k):
                if out[j] and out[k - j]:
                    acc = F.sub(acc, F.mul(out[j], out[k - j]))
            out[k] = F.mul(acc, inv2r)
        half = self.val // 2
        return Series(F, half, out, half + n)

    def eval_poly(self, p: Poly) -> "Series":
        """p(self) for p with F_q coefficients, by Horner."""
        if not p.c:
            return Series(self.F, 0, [], EXACT)
        acc = Series(self.F, 0, [p.c[-1]], EXACT)
        for coef in reversed(p.c[:-1]):
            acc = acc * self
            if coef:
                acc = acc + Series(self.F, 0, [coef], EXACT)
        return acc

    def __repr__(self):
        return f"Series(val={self.val}, c={self.c}, prec={self.prec})"
