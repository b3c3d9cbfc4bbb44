"""Tower files and session configuration.

Tower file grammar (UTF-8, one ``key = value`` per line, ``#`` comments)::

    q = 5
    roots = 0,1,4
    sigma_f =
    sigma_inf = 1:3:2
    wprime = 1:3:2=0

Place labels are ``deg:x:y`` with x, y integer encodings in F_{q^deg}, or
``inf``.  ``wprime`` lists ``place=label`` pairs, label 0 or 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .characters import TowerConfig, validate_sigma
from .curve import Curve, Divisor, Place
from .errors import CapacityError, ConfigurationError

REQUIRED_KEYS = ("q", "roots", "wprime")
KNOWN_KEYS = ("q", "roots", "sigma_f", "sigma_inf", "wprime")

#: Hard limits on session bounds.
MAX_DEGREE = 4
MAX_R = 8

DEFAULT_TOWER = """\
# y^2 = x^3 - x over F_5 with a single level place of degree 1
q = 5
roots = 0,1,4
sigma_f =
sigma_inf = 1:3:2
wprime = 1:3:2=0
"""


def parse_tower_text(text: str, source: str = "<tower>") -> TowerConfig:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{source}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in KNOWN_KEYS:
            raise ConfigurationError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigurationError(f"{source}:{lineno}: duplicate key {key!r}")
        values[key] = value.strip()
    for key in REQUIRED_KEYS:
        if key not in values:
            raise ConfigurationError(f"{source}: missing required key {key!r}")
    try:
        q = int(values["q"])
        roots = tuple(int(v) for v in values["roots"].split(","))
    except ValueError:
        raise ConfigurationError(f"{source}: q and roots must be integers") from None
    if len(roots) != 3:
        raise ConfigurationError(f"{source}: roots needs exactly three values")
    curve = Curve(q, roots)

    def places(key):
        body = values.get(key, "")
        return tuple(Place.parse(s) for s in body.split(",") if s.strip())

    wprime = []
    for item in filter(None, (s.strip() for s in values["wprime"].split(","))):
        lab, sep, tag = item.rpartition("=")
        if not sep or tag.strip() not in ("0", "1"):
            raise ConfigurationError(f"{source}: bad wprime entry {item!r} (want place=0|1)")
        wprime.append((Place.parse(lab), int(tag)))
    t = TowerConfig(curve, places("sigma_f"), places("sigma_inf"), tuple(wprime))
    validate_sigma(t)
    return t


def load_tower(path: str | None) -> TowerConfig:
    if path is None:
        return parse_tower_text(DEFAULT_TOWER, "<default>")
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read tower file {path}: {exc}") from None
    return parse_tower_text(text, str(p))


def format_tower(t: TowerConfig) -> str:
    lines = [f"q = {t.q}", "roots = " + ",".join(map(str, t.curve.roots)),
             "sigma_f = " + ",".join(p.label for p in t.sigma_f),
             "sigma_inf = " + ",".join(p.label for p in t.sigma_inf),
             "wprime = " + ",".join(f"{p.label}={k}" for p, k in t.wprime)]
    return "\n".join(lines) + "\n"


@dataclass
class SessionConfig:
    command: str
    tower_path: str | None = None
    degree: int | None = None
    divisor: str | None = None
    r: list[int] = field(default_factory=lambda: [0, 1, 2])
    oracle: bool = False
    window: int | None = None
    workers: int = 1
    out: str | None = None
    k0: int | None = None
    mode: str = "both"
    timing: bool = False

    def validate(self) -> None:
        if self.degree is not None and self.degree < 0:
            raise ConfigurationError("degree must be nonnegative")
        if self.degree is not None and self.degree > MAX_DEGREE and self.command in ("orbital", "lseries"):
            raise CapacityError(f"degree {self.degree} exceeds the session bound {MAX_DEGREE}")
        if any(r < 0 for r in self.r):
            raise ConfigurationError("r must be nonnegative")
        if any(r > MAX_R for r in self.r):
            raise CapacityError(f"r exceeds {MAX_R}")
        if self.workers < 1:
            raise ConfigurationError("workers must be positive")
        if self.window is not None and self.window < 1:
            raise ConfigurationError("window must be positive")

    def divisors(self, t: TowerConfig) -> list[Divisor]:
        """The D's to run: an explicit divisor, or all of the given degree on X - Sigma."""
        if self.divisor is not None:
            D = Divisor.parse(self.divisor)
            for p in D.support:
                if p not in t.curve.places_of_degree(p.degree):
                    raise ConfigurationError(f"{p.label} is not a place of the curve")
            if any(p in t.sigma for p in D.support):
                raise ConfigurationError("D must be an effective divisor on X - Sigma")
            return [D]
        d = 1 if self.degree is None else self.degree
        return [D for D in t.curve.effective_divisors(d) if not any(p in t.sigma for p in D.support)]
