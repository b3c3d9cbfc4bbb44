"""Descent characters on X, the tower configuration with its level set, and
places/divisors of the double cover Y3 described by splitting data."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .curve import Curve, Divisor, FormalSum, Place
from .errors import ConfigurationError, PropertyFailure

INERT = -1


@dataclass(frozen=True)
class DescentChar:
    """chi_e: the quadratic character cut out by the 2-torsion root e = roots[index]."""

    curve: Curve
    index: int

    @property
    def e(self) -> int:
        return self.curve.roots[self.index]

    def value(self, p: Place) -> int:
        return _chi_value(self.curve, self.index, p)

    def __call__(self, D) -> int:
        if isinstance(D, Place):
            return self.value(D)
        out = 1
        for p, m in D.items:
            if m % 2:
                out *= self.value(p)
        return out


@lru_cache(maxsize=None)
def _chi_value(c: Curve, i: int, p: Place) -> int:
    if p.is_infinity:
        return 1
    e = c.roots[i]
    q = c.q
    if c.two_torsion_index(p) == i:
        o = [r for r in c.roots if r != e]
        v = (e - o[0]) * (e - o[1]) % q
        return 1 if pow(v, (q - 1) // 2, q) == 1 else -1
    F = c.field(p.degree)
    s = F.legendre(F.sub(p.x, e))
    if s == 0:  # pragma: no cover - only 2-torsion x-values vanish
        raise AssertionError("x - e vanished off the 2-torsion point")
    return s


def chi_value(chr: DescentChar, p: Place) -> int:
    return chr.value(p)


@dataclass(frozen=True, order=True)
class PlaceY3:
    """A place of Y3: base place of X plus tag 0/1 (split) or INERT."""

    base: Place
    tag: int

    @property
    def is_split(self) -> bool:
        return self.tag != INERT

    @property
    def degree(self) -> int:
        return self.base.degree if self.is_split else 2 * self.base.degree

    @property
    def label(self) -> str:
        return f"{self.base.label}/{'i' if self.tag == INERT else self.tag}"

    def __str__(self):
        return self.label

    def conjugate(self) -> "PlaceY3":
        return self if not self.is_split else PlaceY3(self.base, 1 - self.tag)

    @classmethod
    def parse(cls, text: str) -> "PlaceY3":
        base, _, tag = text.strip().rpartition("/")
        if tag not in ("0", "1", "i") or not base:
            raise ConfigurationError(f"bad Y3 place label {text!r}")
        return cls(Place.parse(base), INERT if tag == "i" else int(tag))


class DivisorY3(FormalSum):
    def sigma(self) -> "DivisorY3":
        """Image under the involution of Y3 over X (swaps split labels)."""
        return DivisorY3({w.conjugate(): m for w, m in self.items})

    @classmethod
    def parse(cls, text: str) -> "DivisorY3":
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ConfigurationError(f"bad divisor {text!r}")
        d: dict[PlaceY3, int] = {}
        for part in filter(None, (s.strip() for s in text[1:-1].split(","))):
            lab, _, mult = part.partition("^")
            w = PlaceY3.parse(lab)
            d[w] = d.get(w, 0) + (int(mult) if mult else 1)
        return cls(d)


@dataclass(frozen=True)
class TowerConfig:
    """Base curve, level Sigma = Sigma_f + Sigma_inf and the choice of w'_x.

    chi1, chi2, chi3 are the descent characters of roots[0], roots[1], roots[2].
    """

    curve: Curve
    sigma_f: tuple[Place, ...] = ()
    sigma_inf: tuple[Place, ...] = ()
    wprime: tuple[tuple[Place, int], ...] = dc_field(default=())

    def __post_init__(self):
        object.__setattr__(self, "sigma_f", tuple(sorted(self.sigma_f)))
        object.__setattr__(self, "sigma_inf", tuple(sorted(self.sigma_inf)))
        wp = self.wprime.items() if isinstance(self.wprime, dict) else self.wprime
        object.__setattr__(self, "wprime", tuple(sorted(wp)))

    @property
    def q(self) -> int:
        return self.curve.q

    @property
    def chi1(self) -> DescentChar:
        return DescentChar(self.curve, 0)

    @property
    def chi2(self) -> DescentChar:
        return DescentChar(self.curve, 1)

    @property
    def chi3(self) -> DescentChar:
        return DescentChar(self.curve, 2)

    @property
    def sigma(self) -> tuple[Place, ...]:
        return tuple(sorted(self.sigma_f + self.sigma_inf))

    @property
    def N(self) -> int:
        return sum(p.degree for p in self.sigma)

    def wprime_of(self, x: Place) -> PlaceY3:
        return PlaceY3(x, dict(self.wprime)[x])

    @property
    def D3_prime(self) -> DivisorY3:
        return DivisorY3({self.wprime_of(x): 1 for x in self.sigma})

    def is_split(self, x: Place) -> bool:
        return self.chi3.value(x) == 1


def validate_sigma(t: TowerConfig) -> dict:
    """Check the level-set conditions; returns a per-place report."""
    c = t.curve
    sig = t.sigma
    if not sig:
        raise ConfigurationError("Sigma must be nonempty (N >= 1)")
    if set(t.sigma_f) & set(t.sigma_inf):
        raise ConfigurationError("Sigma_f and Sigma_inf must be disjoint")
    if len(set(sig)) != len(sig):
        raise ConfigurationError("repeated place in Sigma")
    for x in sig:
        if x not in _known_places(c, x.degree):
            raise ConfigurationError(f"{x.label} is not a canonical place of the curve")
    report = {}
    for x in sig:
        c1, c2, c3 = t.chi1.value(x), t.chi2.value(x), t.chi3.value(x)
        kind = "f" if x in t.sigma_f else "inf"
        want = 1 if kind == "f" else -1
        if c1 != want:
            raise ConfigurationError(f"chi1({x.label}) = {c1}, Sigma_{kind} needs {want}")
        if c2 != want:
            raise ConfigurationError(f"chi2({x.label}) = {c2}, Sigma_{kind} needs {want}")
        if c3 != 1:
            raise PropertyFailure(f"chi3({x.label}) = {c3}: place in Sigma does not split")
        report[x.label] = {"kind": kind, "chi1": c1, "chi2": c2, "chi3": c3,
                           "candidates": [PlaceY3(x, 0).label, PlaceY3(x, 1).label]}
    wp = dict(t.wprime)
    if set(wp) != set(sig):
        missing = sorted(p.label for p in set(sig) - set(wp))
        extra = sorted(p.label for p in set(wp) - set(sig))
        raise ConfigurationError(f"wprime must cover Sigma exactly (missing {missing}, extra {extra})")
    for x, tag in wp.items():
        if tag not in (0, 1):
            raise ConfigurationError(f"wprime label for {x.label} must be 0 or 1")
        report[x.label]["wprime"] = PlaceY3(x, tag).label
    return report


def _known_places(c: Curve, d: int) -> set[Place]:
    return set(c.places_of_degree(d))


def places_y3_over(t: TowerConfig, x: Place) -> list[PlaceY3]:
    if t.is_split(x):
        return [PlaceY3(x, 0), PlaceY3(x, 1)]
    return [PlaceY3(x, INERT)]


def eta_value(t: TowerConfig, w) -> int:
    """eta on a Y3 place (chi1 of the base if split, +1 if inert), or on a DivisorY3."""
    if isinstance(w, PlaceY3):
        return t.chi1.value(w.base) if w.is_split else 1
    out = 1
    for p, m in w.items:
        if m % 2:
            out *= eta_value(t, p)
    return out


def norm_divisor(t: TowerConfig, E: DivisorY3) -> Divisor:
    d: dict[Place, int] = {}
    for w, m in E.items:
        d[w.base] = d.get(w.base, 0) + (m if w.is_split else 2 * m)
    return Divisor(d)


def pullback_divisor(t: TowerConfig, D: Divisor) -> DivisorY3:
    d = {}
    for x, m in D.items:
        for w in places_y3_over(t, x):
            d[w] = m
    return DivisorY3(d)
