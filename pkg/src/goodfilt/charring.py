"""Character ring of a root system.

Characters are kept as dominant-weight multiplicity tables; full weight
multisets are only produced transiently (orbit by orbit) for Klimyk-style
antisymmetrisation, Adams operations and branching.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Mapping

from .budget import BudgetError, budgets
from .rootsys import (
    RootSystem,
    Weight,
    dominant_representative,
    dominant_weights_below,
    is_dominant,
    iter_orbit,
)


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    """W-invariant weight multiplicity function, stored on dominant weights."""

    host: RootSystem
    dom_mult: Mapping[Weight, int]
    virtual: bool = False

    def __post_init__(self):
        clean = {tuple(k): v for k, v in self.dom_mult.items() if v}
        for k in clean:
            if len(k) != self.host.rank or not is_dominant(k):
                raise CharacterError(f"key {k} is not a dominant weight of {self.host.name}")
        object.__setattr__(self, "dom_mult", clean)

    def __add__(self, other: "Character") -> "Character":
        _same_host(self, other)
        out = dict(self.dom_mult)
        for k, v in other.dom_mult.items():
            out[k] = out.get(k, 0) + v
        return Character(self.host, out, self.virtual or other.virtual)

    def __sub__(self, other: "Character") -> "Character":
        return self + other.scale(-1)

    def scale(self, c: int) -> "Character":
        return Character(self.host, {k: c * v for k, v in self.dom_mult.items()}, self.virtual or c < 0)

    def __eq__(self, other):
        return isinstance(other, Character) and self.host == other.host and self.dom_mult == other.dom_mult

    def __hash__(self):
        return hash((self.host, frozenset(self.dom_mult.items())))

    @property
    def dimension(self) -> int:
        return sum(v * self.host.orbit_size(k) for k, v in self.dom_mult.items())

    @property
    def n_weights(self) -> int:
        """Number of distinct weights (orbit-expanded support)."""
        return sum(self.host.orbit_size(k) for k in self.dom_mult)

    def weights(self) -> Iterator[tuple[Weight, int]]:
        """Every weight with its multiplicity, one orbit at a time."""
        if self.n_weights > budgets().weights:
            raise BudgetError(f"character with {self.n_weights} weights exceeds weight budget")
        for k in sorted(self.dom_mult):
            m = self.dom_mult[k]
            for w in iter_orbit(self.host, k):
                yield w, m


def _same_host(a, b):
    if a.host != b.host:
        raise CharacterError(f"host mismatch {a.host.name} vs {b.host.name}")


@dataclass(frozen=True)
class Decomposition:
    """Coefficients n_lambda of a character in the basis of Weyl characters."""

    host: RootSystem
    terms: Mapping[Weight, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {tuple(k): v for k, v in self.terms.items() if v})

    def __add__(self, other: "Decomposition") -> "Decomposition":
        _same_host(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Decomposition(self.host, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "Decomposition":
        out = {}
        for k, v in self.terms.items():
            x = Fraction(v) * c
            if x.denominator != 1:
                raise CharacterError(f"non-integral coefficient {x} at {k}")
            out[k] = int(x)
        return Decomposition(self.host, out)

    def __eq__(self, other):
        return isinstance(other, Decomposition) and self.host == other.host and self.terms == other.terms

    def __hash__(self):
        return hash((self.host, frozenset(self.terms.items())))

    @property
    def support(self) -> list[Weight]:
        return sorted(self.terms, key=lambda w: (_level(self.host, w), w))

    @property
    def nonnegative(self) -> bool:
        return all(v > 0 for v in self.terms.values())

    @property
    def dimension(self) -> int:
        return sum(v * weyl_dimension(self.host, k) for k, v in self.terms.items())

    def expand(self) -> Character:
        out = Character(self.host, {})
        for k, v in self.terms.items():
            out = out + irreducible_character(self.host, k).scale(v)
        return out

    def to_json(self) -> dict:
        # ascending height, so the JSON lists terms from the bottom of the dominance order up
        return {"terms": [{"weight": list(k), "mult": self.terms[k]} for k in self.support]}

    @classmethod
    def from_json(cls, host: RootSystem, data: dict) -> "Decomposition":
        return cls(host, {tuple(t["weight"]): t["mult"] for t in data["terms"]})


def _level(rs: RootSystem, w: Weight) -> Fraction:
    return sum(rs.root_coordinates(w), Fraction(0))


# -- Freudenthal ----------------------------------------------------------

_freud_lock = threading.Lock()
_freud_cache: dict[tuple[RootSystem, Weight], dict[Weight, int]] = {}


def irreducible_character(rs: RootSystem, lam: Iterable[int]) -> Character:
    """Character of the induced module with highest weight lam (Freudenthal)."""
    lam = tuple(lam)
    if len(lam) != rs.rank or not is_dominant(lam):
        raise CharacterError(f"{lam} is not a dominant weight of {rs.name}")
    key = (rs, lam)
    with _freud_lock:
        hit = _freud_cache.get(key)
    if hit is None:
        hit = _freudenthal(rs, lam)
        with _freud_lock:
            _freud_cache.setdefault(key, hit)
    return Character(rs, hit)


def _freudenthal(rs: RootSystem, lam: Weight) -> dict[Weight, int]:
    levels = dominant_weights_below(rs, lam)
    order = sorted(levels, key=lambda w: levels[w])
    scale, G = rs.gram_scaled
    r = rs.rank
    rho = rs.rho

    def norm(v):
        return sum(G[i][j] * v[i] * v[j] for i in range(r) if v[i] for j in range(r) if v[j])

    lr = tuple(a + b for a, b in zip(lam, rho))
    top = norm(lr)
    roots = rs.positive_roots_as_weights
    coroots = rs.coroots
    rlens = rs.root_sq_lengths
    mult: dict[Weight, int] = {lam: 1}
    dom_cache: dict[Weight, Weight] = {}

    def dom(v):
        d = dom_cache.get(v)
        if d is None:
            d = dominant_representative(rs, v)[0]
            dom_cache[v] = d
        return d

    for mu in order[1:]:
        acc = 0
        for a, co, la in zip(roots, coroots, rlens):
            base = sum(x * y for x, y in zip(co, mu))
            k = 1
            nu = mu
            while True:
                nu = tuple(x + y for x, y in zip(nu, a))
                m = mult.get(dom(nu))
                if not m:
                    break
                # (mu + k alpha, alpha) = (<mu, alpha^vee> + 2k) |alpha|^2 / 2
                acc += m * (base + 2 * k) * la
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        den = top - norm(mr)
        # acc carries the factor 2 * (1/2); gram is scaled by `scale`
        num = acc * scale
        if num % den:
            raise ArithmeticError(f"Freudenthal non-integral at {mu}: {num}/{den}")
        val = num // den
        if val:
            mult[mu] = val
    return mult


def weyl_dimension(rs: RootSystem, lam: Iterable[int]) -> int:
    lam = tuple(lam)
    if not is_dominant(lam):
        raise CharacterError(f"{lam} is not dominant")
    num, den = 1, 1
    for co in rs.coroots:
        s = sum(co)
        num *= sum(c * (x + 1) for c, x in zip(co, lam))
        den *= s
    assert num % den == 0
    return num // den


# -- antisymmetrisation ---------------------------------------------------

def antisymmetrize(rs: RootSystem, weights: Iterable[tuple[Weight, int]], shift: Weight | None = None) -> Decomposition:
    """Coefficients of sum_w m(w) e^{w + shift} in the Weyl character basis.

    Each w + shift + rho is moved to the dominant chamber; regular results
    contribute sign * m to (result - rho), singular ones cancel.
    """
    r = rs.rank
    A = rs.cartan
    add = tuple(1 + (shift[i] if shift else 0) for i in range(r))
    acc: dict[Weight, int] = {}
    for w, m in weights:
        x = [a + b for a, b in zip(w, add)]
        sign = 1
        while True:
            for i in range(r):
                c = x[i]
                if c <= 0:
                    break
            else:
                break
            if c == 0:
                sign = 0
                break
            row = A[i]
            for j in range(r):
                x[j] -= c * row[j]
            sign = -sign
        if sign:
            nu = tuple(v - 1 for v in x)
            acc[nu] = acc.get(nu, 0) + sign * m
    return Decomposition(rs, acc)


def decompose(c: Character) -> Decomposition:
    """Subtract-leading-term decomposition into Weyl characters."""
    rs = c.host
    rem = dict(c.dom_mult)
    terms: dict[Weight, int] = {}
    while rem:
        top = max(rem, key=lambda w: (_level(rs, w), w))
        coef = rem[top]
        terms[top] = coef
        for k, v in irreducible_character(rs, top).dom_mult.items():
            nv = rem.get(k, 0) - coef * v
            if nv:
                rem[k] = nv
            else:
                rem.pop(k, None)
    return Decomposition(rs, terms)


@lru_cache(maxsize=4096)
def tensor_decompose(rs: RootSystem, lam: Weight, mu: Weight) -> Decomposition:
    """Klimyk: iterate the weights of the factor with fewer weights."""
    lam, mu = tuple(lam), tuple(mu)
    for w in (lam, mu):
        if not is_dominant(w):
            raise CharacterError(f"{w} is not dominant")
    small, big = (lam, mu) if _n_weights(rs, lam) <= _n_weights(rs, mu) else (mu, lam)
    return antisymmetrize(rs, irreducible_character(rs, small).weights(), shift=big)


def _n_weights(rs: RootSystem, lam: Weight) -> int:
    """Number of distinct weights of H^0(lam) (support only, no multiplicities)."""
    return sum(rs.orbit_size(k) for k in dominant_weights_below(rs, lam))


def product_decompose(a: Decomposition, b: Decomposition) -> Decomposition:
    _same_host(a, b)
    out = Decomposition(a.host, {})
    for la, ca in a.terms.items():
        for lb, cb in b.terms.items():
            out = out + tensor_decompose(a.host, la, lb).scale(ca * cb)
    return out


def adams(k: int, c: Character) -> Character:
    """Adams operation: weights scaled by k, multiplicities kept."""
    if k < 1:
        raise CharacterError("Adams operation needs k >= 1")
    return Character(c.host, {tuple(k * x for x in w): m for w, m in c.dom_mult.items()}, virtual=k > 1 or c.virtual)


@lru_cache(maxsize=1024)
def adams_decompose(k: int, rs: RootSystem, lam: Weight) -> Decomposition:
    """Decomposition of psi^k chi(lam), by antisymmetrising the scaled weights."""
    ch = irreducible_character(rs, lam)
    return antisymmetrize(rs, ((tuple(k * x for x in w), m) for w, m in ch.weights()))


def _power_decompose(m: int, rs: RootSystem, lam: Weight, sign: int) -> Decomposition:
    # Newton: m e_m = sum_i (-1)^(i-1) p_i e_{m-i};  m h_m = sum_i p_i h_{m-i}
    zero = tuple([0] * rs.rank)
    seq = [Decomposition(rs, {zero: 1})]
    for n in range(1, m + 1):
        tot = Decomposition(rs, {})
        for i in range(1, n + 1):
            term = product_decompose(adams_decompose(i, rs, lam), seq[n - i])
            coef = (sign ** (i - 1))
            tot = tot + term.scale(coef)
        seq.append(tot.scale(Fraction(1, n)))
    return seq[m]


@lru_cache(maxsize=1024)
def exterior_power_decompose(m: int, rs: RootSystem, lam: Weight) -> Decomposition:
    lam = tuple(lam)
    if m < 0:
        raise CharacterError("m must be >= 0")
    if m > weyl_dimension(rs, lam):
        return Decomposition(rs, {})
    return _power_decompose(m, rs, lam, -1)


@lru_cache(maxsize=1024)
def sym_power_decompose(m: int, rs: RootSystem, lam: Weight) -> Decomposition:
    lam = tuple(lam)
    if m < 0:
        raise CharacterError("m must be >= 0")
    return _power_decompose(m, rs, lam, 1)


def expected_dimension(kind: str, m: int, d: int) -> int:
    if kind == "ext":
        return comb(d, m)
    if kind == "sym":
        return comb(d + m - 1, m)
    raise ValueError(kind)
