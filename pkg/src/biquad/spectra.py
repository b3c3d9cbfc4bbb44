"""The hyperoctahedral group Gamma_d = {+-1}^d x| S_d acting on functions on
S_d \\ Gamma_d (basis Phi_x, x a sign vector), the operator H = sum of the
sign flips, its spectrum, and character-level identifications of the
eigenspaces with induced representations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, factorial

from .errors import ConfigurationError

MAX_DPRIME = 5


@dataclass(frozen=True)
class SignedPerm:
    """(s, sigma) with s in {+-1}^d and sigma a permutation of range(d).

    (s, sigma)(t, tau) = (s * sigma(t), sigma tau), sigma(t)_i = t_{sigma^-1(i)}.
    """

    signs: tuple[int, ...]
    perm: tuple[int, ...]

    @classmethod
    def identity(cls, d: int) -> "SignedPerm":
        return cls((1,) * d, tuple(range(d)))

    def permute(self, t: tuple[int, ...]) -> tuple[int, ...]:
        out = [0] * len(t)
        for i, p in enumerate(self.perm):
            out[p] = t[i]
        return tuple(out)

    def __mul__(self, o: "SignedPerm") -> "SignedPerm":
        st = self.permute(o.signs)
        return SignedPerm(tuple(a * b for a, b in zip(self.signs, st)),
                          tuple(self.perm[o.perm[i]] for i in range(len(o.perm))))

    def inverse(self) -> "SignedPerm":
        d = len(self.perm)
        pinv = [0] * d
        for i, p in enumerate(self.perm):
            pinv[p] = i
        inv_perm = SignedPerm((1,) * d, tuple(pinv))
        return SignedPerm(inv_perm.permute(self.signs), tuple(pinv))

    def act(self, x: tuple[int, ...]) -> tuple[int, ...]:
        """Action on cosets: g . Phi_x = Phi_{s * sigma(x)}."""
        px = self.permute(x)
        return tuple(a * b for a, b in zip(self.signs, px))

    @property
    def sign_product(self) -> int:
        out = 1
        for s in self.signs:
            out *= s
        return out


def group_elements(d: int) -> list[SignedPerm]:
    return [SignedPerm(s, p) for s in product((1, -1), repeat=d) for p in permutations(range(d))]


def generators(d: int) -> list[SignedPerm]:
    gens = [SignedPerm(tuple(-1 if j == 0 else 1 for j in range(d)), tuple(range(d)))]
    for i in range(d - 1):
        p = list(range(d))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(SignedPerm((1,) * d, tuple(p)))
    return gens


Matrix = list[list[Fraction]]


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    n, m, k = len(A), len(B[0]), len(B)
    return [[sum((A[i][j] * B[j][l] for j in range(k) if A[i][j]), Fraction(0)) for l in range(m)]
            for i in range(n)]


@dataclass
class RepModule:
    dprime: int
    basis: list[tuple[int, ...]]
    H: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, x) -> int:
        return self.basis.index(x)

    def action(self, g: SignedPerm) -> Matrix:
        n = self.dim
        A = [[Fraction(0)] * n for _ in range(n)]
        for j, x in enumerate(self.basis):
            A[self.index(g.act(x))][j] = Fraction(1)
        return A


def build_module(dprime: int) -> RepModule:
    if not 1 <= dprime <= MAX_DPRIME:
        raise ConfigurationError(f"d' must lie in [1, {MAX_DPRIME}]")
    basis = list(product((1, -1), repeat=dprime))
    n = len(basis)
    idx = {x: i for i, x in enumerate(basis)}
    H = [[Fraction(0)] * n for _ in range(n)]
    for j, x in enumerate(basis):
        for i in range(dprime):
            y = tuple(-v if k == i else v for k, v in enumerate(x))
            H[idx[y]][j] += 1
    return RepModule(dprime, basis, H)


def _nullspace_q(A: Matrix) -> list[list[Fraction]]:
    rows = [list(r) for r in A]
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def _rank(vectors: list[list[Fraction]]) -> int:
    if not vectors:
        return 0
    n = len(vectors[0])
    T = [[v[i] for v in vectors] for i in range(n)]
    return len(vectors) - len(_nullspace_q(T))


def projector(m: RepModule, lam: int) -> Matrix:
    n = m.dim
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for mu in range(-m.dprime, m.dprime + 1, 2):
        if mu == lam:
            continue
        Hm = [[m.H[i][j] - (mu if i == j else 0) for j in range(n)] for i in range(n)]
        P = _matmul(P, [[v / (lam - mu) for v in row] for row in Hm])
    return P


def eigenspace_character(m: RepModule, lam: int) -> dict[SignedPerm, Fraction]:
    """chi(g) = trace of g on the lam-eigenspace, via the spectral projector."""
    return dict(_eigen_char(m.dprime, lam))


@lru_cache(maxsize=None)
def _eigen_char(dprime: int, lam: int) -> tuple:
    m = build_module(dprime)
    P = projector(m, lam)
    idx = {x: i for i, x in enumerate(m.basis)}
    out = {}
    for g in group_elements(m.dprime):
        out[g] = sum((P[i][idx[g.act(x)]] for i, x in enumerate(m.basis)), Fraction(0))
    return tuple(out.items())


def inner(chi1: dict, chi2: dict) -> Fraction:
    """<chi1, chi2> for real-valued class functions."""
    return sum((chi1[g] * chi2[g] for g in chi1), Fraction(0)) / len(chi1)


def eta_char(g: SignedPerm, block: range) -> int:
    out = 1
    for i in block:
        out *= g.signs[i]
    return out


def _in_block_subgroup(g: SignedPerm, d1: int) -> bool:
    return all((p < d1) == (i < d1) for i, p in enumerate(g.perm))


def induced_character(dprime: int, d1: int, eta_on: str) -> dict[SignedPerm, Fraction]:
    """Character of Ind_{Gamma_d1 x Gamma_d2'}(rho), rho = eta_d1 x 1
    (eta_on='first') or 1 x eta_d2' (eta_on='second').

    Cosets of the block subgroup are the d1-subsets S of positions; g fixes
    the coset of S iff its permutation preserves S, and then contributes the
    product of its signs over S (first) or over the complement (second).
    """
    out = {}
    subsets = [set(S) for S in combinations(range(dprime), d1)]
    for g in group_elements(dprime):
        total = 0
        for S in subsets:
            if all((g.perm[i] in S) == (i in S) for i in range(dprime)):
                block = S if eta_on == "first" else set(range(dprime)) - S
                total += eta_char(g, block)
        out[g] = Fraction(total)
    return out


def induced_character_bruteforce(dprime: int, d1: int, eta_on: str) -> dict[SignedPerm, Fraction]:
    """Frobenius formula (1/|K|) sum_h rho(h^-1 g h); quadratic in the group order."""
    G = group_elements(dprime)
    K_order = (2**d1) * factorial(d1) * (2 ** (dprime - d1)) * factorial(dprime - d1)
    block = range(d1) if eta_on == "first" else range(d1, dprime)
    out = {}
    for g in G:
        total = 0
        for h in G:
            c = h.inverse() * g * h
            if _in_block_subgroup(c, d1):
                total += eta_char(c, block)
        out[g] = Fraction(total, K_order)
    return out


@lru_cache(maxsize=None)
def decompose(dprime: int) -> tuple:
    """Rows (d1, d2', eigenvalue, dim, stable, irreducible), by descending eigenvalue."""
    m = build_module(dprime)
    n = m.dim
    gens = generators(dprime)
    rows = []
    for d1 in range(dprime, -1, -1):
        d2 = dprime - d1
        lam = d1 - d2
        A = [[m.H[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        V = _nullspace_q(A)
        stable = True
        for g in gens:
            Ag = m.action(g)
            for v in V:
                w = [sum((Ag[i][j] * v[j] for j in range(n)), Fraction(0)) for i in range(n)]
                if _rank(V + [w]) != len(V):
                    stable = False
        chi = eigenspace_character(m, lam)
        irreducible = inner(chi, chi) == 1
        rows.append((d1, d2, lam, len(V), stable, irreducible))
    return tuple(rows)


def spectrum_ok(dprime: int) -> bool:
    rows = decompose(dprime)
    return (sorted(r[2] for r in rows) == sorted(dprime - 2 * j for j in range(dprime + 1))
            and all(r[3] == comb(dprime, r[0]) for r in rows)
            and sum(r[3] for r in rows) == 2**dprime)


@lru_cache(maxsize=None)
def verify_induced_iso(d1: int, d2: int) -> dict:
    """Character-level checks of the eigenspace V(d1, d2') (H-eigenvalue d1 - d2').

    Literal forms: V(d1,d2') ~ Ind(eta_d1 x 1), V(d1,d2') ~ V(d2',d1).
    Corrected forms: V(d1,d2') ~ Ind(1 x eta_d2'), V(d2',d1) ~ V(d1,d2') (x) eta_d'.
    """
    dprime = d1 + d2
    if not 1 <= dprime <= MAX_DPRIME or d1 < 0 or d2 < 0:
        raise ConfigurationError(f"need 1 <= d1 + d2' <= {MAX_DPRIME}")
    m = build_module(dprime)
    chi = eigenspace_character(m, d1 - d2)
    chi_swap = eigenspace_character(m, d2 - d1)
    ind_first = induced_character(dprime, d1, "first")
    ind_second = induced_character(dprime, d1, "second")
    twisted = {g: chi[g] * g.sign_product for g in chi}
    return {
        "d1": d1, "d2": d2,
        "matches_ind_1_x_eta": chi == ind_second,
        "matches_ind_eta_x_1": chi == ind_first,
        "swap_matches_ind_eta_x_1": chi_swap == ind_first,
        "symmetry_literal": chi == chi_swap,
        "symmetry_up_to_eta_twist": twisted == chi_swap,
    }
