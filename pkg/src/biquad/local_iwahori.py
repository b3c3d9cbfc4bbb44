"""Local lattice model at a split place of the level set.

K_{3,x} = F_x e + F_x f through the split idempotents e, f.  Up to scaling,
the O-lattices of K_{3,x} are span{e, pi^l f}.  The map
(a, b) -> ((a + b)/2, c (a - b)/2) with ord(c) = k0 sends these lattices into
F_x^2, and we ask when the image is a pi-power multiple of the standard
lattice span{(1, 0), (0, pi^k)}, with or without the Iwahori refinement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly
from .errors import ConfigurationError, InvariantDomainError


def _pi_adic_ord(p: Poly) -> int:
    for i, a in enumerate(p.c):
        if a:
            return i
    raise InvariantDomainError("valuation of zero")


@dataclass(frozen=True)
class LocalElem:
    """Rational function num/den in the uniformizer pi over F_q."""

    q: int
    num: Poly
    den: Poly

    @classmethod
    def const(cls, q: int, a: int) -> "LocalElem":
        return cls(q, Poly(q, (a,)), Poly(q, (1,)))

    @classmethod
    def pi_power(cls, q: int, k: int, a: int = 1) -> "LocalElem":
        if k >= 0:
            return cls(q, Poly(q, [0] * k + [a]), Poly(q, (1,)))
        return cls(q, Poly(q, (a,)), Poly(q, [0] * (-k) + [1]))

    def is_zero(self) -> bool:
        return not self.num

    @property
    def val(self) -> int:
        return _pi_adic_ord(self.num) - _pi_adic_ord(self.den)

    def __add__(self, o: "LocalElem") -> "LocalElem":
        return LocalElem(self.q, self.num * o.den + o.num * self.den, self.den * o.den)

    def __neg__(self):
        return LocalElem(self.q, -self.num, self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "LocalElem") -> "LocalElem":
        return LocalElem(self.q, self.num * o.num, self.den * o.den)

    def inv(self) -> "LocalElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return LocalElem(self.q, self.den, self.num)

    def __truediv__(self, o):
        return self * o.inv()

    def __eq__(self, o):
        return isinstance(o, LocalElem) and self.num * o.den == o.num * self.den

    def __hash__(self):  # pragma: no cover - not used as dict key
        return 0


@dataclass(frozen=True)
class LocalLattice:
    """Columns (m11, m21) and (m12, m22) generate an O-lattice in F_x^2."""

    m11: LocalElem
    m12: LocalElem
    m21: LocalElem
    m22: LocalElem

    def det(self) -> LocalElem:
        return self.m11 * self.m22 - self.m12 * self.m21

    def scaled(self, k: int) -> "LocalLattice":
        s = LocalElem.pi_power(self.m11.q, k)
        return LocalLattice(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)

    def inverse_matrix(self):
        d = self.det()
        if d.is_zero():
            raise InvariantDomainError("singular lattice matrix")
        return (self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)


def lattice_equal_up_to_scaling(L1: LocalLattice, L2: LocalLattice) -> tuple[bool, int | None]:
    """Is L1 = pi^alpha L2 for some alpha?  Decided by the elementary divisors
    of C = L2^-1 L1: equal up to scaling iff both have the same valuation."""
    a, b, c, d = L2.inverse_matrix()
    C = (a * L1.m11 + b * L1.m21, a * L1.m12 + b * L1.m22,
         c * L1.m11 + d * L1.m21, c * L1.m12 + d * L1.m22)
    detC = C[0] * C[3] - C[1] * C[2]
    if detC.is_zero():
        raise InvariantDomainError("singular lattice matrix")
    s1 = min(e.val for e in C if not e.is_zero())
    s2 = detC.val - s1
    return (True, s1) if s1 == s2 else (False, None)


def gamma_image(q: int, k0: int, l: int, shift_e: int = 0, shift_f: int = 0) -> LocalLattice:
    """Image of span{pi^shift_e e, pi^(l+shift_f) f} under the local gamma."""
    half = (q + 1) // 2
    c = LocalElem.pi_power(q, k0)
    h = LocalElem.const(q, half)
    pe = LocalElem.pi_power(q, shift_e)
    pf = LocalElem.pi_power(q, l + shift_f)
    # e -> (1/2, c/2), f -> (1/2, -c/2)
    return LocalLattice(h * pe, h * pf, h * c * pe, -(h * c * pf))


def target_lattice(q: int, k: int) -> LocalLattice:
    one, zero = LocalElem.const(q, 1), LocalElem.const(q, 0)
    return LocalLattice(one, zero, zero, LocalElem.pi_power(q, k))


def local_invariant(q: int, k0: int) -> LocalElem:
    """m11 m22 / det of the gamma matrix on span{e, f}."""
    g = gamma_image(q, k0, 0)
    return g.m11 * g.m22 / g.det()


def _full(q, k0, k, l):
    return lattice_equal_up_to_scaling(gamma_image(q, k0, l), target_lattice(q, k))


def _sub(q, k0, k, l, side):
    # the w'-sublattice: pi times the w'-coordinate
    se, sf = (1, 0) if side == "e" else (0, 1)
    return lattice_equal_up_to_scaling(gamma_image(q, k0, l, se, sf), target_lattice(q, k + 1))


MODES = ("both", "full", "sublattice")


def iwahori_orbit_search(k0: int, window: int, mode: str = "both", q: int = 5,
                         side: str | None = None) -> list[tuple[int, int]]:
    """Pairs (k, l) in [-window, window]^2 satisfying the chosen conditions.

    ``side`` fixes which idempotent is w'; None tries both.
    """
    if mode not in MODES:
        raise ConfigurationError(f"mode must be one of {MODES}")
    # every candidate solution has |k| <= |k0| + 1 and |l| <= 1
    if window < abs(k0) + 2:
        raise ConfigurationError(f"window must be at least |k0| + 2 = {abs(k0) + 2}")
    sides = ("e", "f") if side is None else (side,)
    out = []
    for k in range(-window, window + 1):
        for l in range(-window, window + 1):
            full_ok, _ = _full(q, k0, k, l)
            subs = [_sub(q, k0, k, l, s) for s in sides]
            if mode == "full":
                hit = full_ok
            elif mode == "sublattice":
                hit = any(ok for ok, _ in subs)
            else:
                hit = full_ok and any(ok for ok, _ in subs)
            if hit:
                out.append((k, l))
    return out
