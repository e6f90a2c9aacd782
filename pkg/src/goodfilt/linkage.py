"""Linkage under the affine Weyl group W_p = W ⋉ pΛ_R.

Dot-action conjugacy is decided by reducing the shifted point x = μ + ρ into
the closed fundamental p-alcove; two weights are linked iff the reduced
points coincide.  A brute-force orbit scan is kept as an independent route
for small orbits.

``convention="rho"`` (default) is the dot action w(μ+ρ) − ρ.  The variant
``"minus_rho"`` uses w(μ−ρ) + ρ and exists only for comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Sequence

from sympy import primefactors, primerange

from .budget import BudgetError, budgets
from .primes import PrimeConditionSet, least_prime_at_least
from .rootsys import RootSystem, Weight, dominant_representative, dominant_weights_below, weyl_orbit

CONVENTIONS = ("rho", "minus_rho")


def _shift(rs: RootSystem, mu: Sequence[int], convention: str) -> Weight:
    if convention == "rho":
        return tuple(x + 1 for x in mu)
    if convention == "minus_rho":
        return tuple(x - 1 for x in mu)
    raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def root_lattice_test(rs: RootSystem, delta: Sequence[int]) -> bool:
    den, v = rs.root_coordinates_scaled(delta)
    return all(x % den == 0 for x in v)


def _lattice_gcd(rs: RootSystem, delta: Sequence[int]) -> int | None:
    """gcd of the root-lattice coordinates of delta, or None off the lattice."""
    den, v = rs.root_coordinates_scaled(delta)
    g = 0
    for x in v:
        if x % den:
            return None
        g = gcd(g, x // den)
    return g


@lru_cache(maxsize=None)
def _alcove_data(rs: RootSystem):
    """Per component: (slice, coroot row of the highest short root, that root as a weight)."""
    out = []
    for k, sl in enumerate(rs.component_slices):
        beta = rs.highest_short_roots[k]
        idx = rs.positive_roots.index(beta)
        out.append((sl, rs.coroots[idx], rs.root_to_weight(beta)))
    return out


def alcove_reduce(rs: RootSystem, x: Sequence[int], p: int) -> Weight:
    """Representative of the W_p-orbit of x in the closed fundamental alcove."""
    x = list(x)
    r = rs.rank
    A = rs.cartan
    data = _alcove_data(rs)
    while True:
        moved = False
        for i in range(r):
            c = x[i]
            if c < 0:
                row = A[i]
                for j in range(r):
                    x[j] -= c * row[j]
                moved = True
                break
        if moved:
            continue
        for sl, co, w in data:
            v = sum(a * b for a, b in zip(co, x)) - p
            if v > 0:
                for j in range(sl.start, sl.stop):
                    x[j] -= v * w[j]
                moved = True
        if not moved:
            return tuple(x)


def wp_dot_conjugate(rs: RootSystem, mu: Sequence[int], nu: Sequence[int], p: int,
                     convention: str = "rho") -> bool:
    delta = [a - b for a, b in zip(mu, nu)]
    if not root_lattice_test(rs, delta):
        return False
    x, y = _shift(rs, mu, convention), _shift(rs, nu, convention)
    return alcove_reduce(rs, x, p) == alcove_reduce(rs, y, p)


def wp_dot_conjugate_scan(rs: RootSystem, mu: Sequence[int], nu: Sequence[int], p: int,
                          convention: str = "rho") -> bool:
    """Orbit-scan oracle: some w(x) − y lies in pΛ_R."""
    if not root_lattice_test(rs, [a - b for a, b in zip(mu, nu)]):
        return False
    x, y = _shift(rs, mu, convention), _shift(rs, nu, convention)
    for wx in weyl_orbit(rs, x):
        g = _lattice_gcd(rs, [a - b for a, b in zip(wx, y)])
        if g is not None and g % p == 0:
            return True
    return False


def wp_conjugacy_primes(rs: RootSystem, mu: Sequence[int], nu: Sequence[int],
                        convention: str = "rho", method: str = "alcove") -> PrimeConditionSet:
    """All primes p for which mu and nu are W_p-dot-conjugate.

    ``method="alcove"`` bounds the candidate primes by a norm estimate and
    decides each by alcove reduction; ``method="scan"`` walks the W-orbit of
    mu + rho and collects the prime divisors of each w(mu+rho) - (nu+rho).
    """
    mu, nu = tuple(mu), tuple(nu)
    if not root_lattice_test(rs, [a - b for a, b in zip(mu, nu)]):
        return PrimeConditionSet.none()
    x, y = _shift(rs, mu, convention), _shift(rs, nu, convention)
    if dominant_representative(rs, x)[0] == dominant_representative(rs, y)[0]:
        return PrimeConditionSet.all()
    if method == "scan":
        if rs.orbit_size(x) > budgets().scan:
            raise BudgetError(f"orbit of {x} exceeds the scan budget {budgets().scan}")
        return _primes_by_scan(rs, x, y)
    if method != "alcove":
        raise ValueError(f"unknown method {method!r}")
    return _primes_by_bound(rs, mu, nu, x, y, convention)


def _primes_by_scan(rs: RootSystem, x: Weight, y: Weight) -> PrimeConditionSet:
    found: set[int] = set()
    for wx in weyl_orbit(rs, x):
        g = _lattice_gcd(rs, [a - b for a, b in zip(wx, y)])
        if g:
            found.update(primefactors(g))
    return PrimeConditionSet.finite(found)


def _sq_norm_scaled(rs: RootSystem, v: Sequence[int]) -> tuple[int, int]:
    scale, G = rs.gram_scaled
    r = rs.rank
    return sum(G[i][j] * v[i] * v[j] for i in range(r) for j in range(r)), scale


def _primes_by_bound(rs, mu, nu, x, y, convention) -> PrimeConditionSet:
    # w(x) - y = p*beta with beta a nonzero root-lattice vector, so
    # p^2 |short root|^2 <= (|x| + |y|)^2 <= 2(|x|^2 + |y|^2).
    nx, _ = _sq_norm_scaled(rs, x)
    ny, _ = _sq_norm_scaled(rs, y)
    bound = isqrt(2 * (nx + ny) // _short_sq_scaled(rs)) + 2
    return PrimeConditionSet.finite(
        p for p in primerange(2, bound + 1) if wp_dot_conjugate(rs, mu, nu, p, convention)
    )


@lru_cache(maxsize=None)
def _short_sq_scaled(rs: RootSystem) -> int:
    best = None
    for k in range(rs.rank):
        simple = tuple(1 if i == k else 0 for i in range(rs.rank))
        n, _ = _sq_norm_scaled(rs, rs.root_to_weight(simple))
        best = n if best is None else min(best, n)
    return best


@dataclass(frozen=True)
class AlcoveBound:
    bound: int
    least_prime: int

    def condition(self) -> PrimeConditionSet:
        return PrimeConditionSet.all_geq(self.least_prime)


def low_alcove_min_prime(rs: RootSystem, lam: Sequence[int]) -> AlcoveBound:
    """B = max over positive roots of <lam + rho, alpha^vee>; low alcove iff p >= B."""
    shifted = [a + 1 for a in lam]
    b = max(sum(c * v for c, v in zip(co, shifted)) for co in rs.coroots) if rs.coroots else 1
    return AlcoveBound(b, least_prime_at_least(b))


@dataclass(frozen=True)
class OrderComparison:
    leq_root: bool
    prec_rational: bool


def order_compare(rs: RootSystem, mu: Sequence[int], lam: Sequence[int]) -> OrderComparison:
    """Compare mu against lam: is lam - mu a nonnegative (integer / rational) root combination?"""
    coords = rs.root_coordinates([a - b for a, b in zip(lam, mu)])
    nonneg = all(c >= 0 for c in coords)
    return OrderComparison(nonneg and all(c.denominator == 1 for c in coords), nonneg)


def linkage_minimal_test(rs: RootSystem, lam: Sequence[int], p: int, convention: str = "rho") -> bool:
    lam = tuple(lam)
    target = alcove_reduce(rs, _shift(rs, lam, convention), p)
    for nu in dominant_weights_below(rs, lam):
        if nu != lam and alcove_reduce(rs, _shift(rs, nu, convention), p) == target:
            return False
    return True


def linkage_witness(rs: RootSystem, lam: Sequence[int], p: int, convention: str = "rho") -> Weight | None:
    """A dominant weight below lam linked to it at p, or None."""
    lam = tuple(lam)
    target = alcove_reduce(rs, _shift(rs, lam, convention), p)
    below = dominant_weights_below(rs, lam)
    for nu in sorted(below, key=lambda w: (-below[w], w)):
        if nu != lam and alcove_reduce(rs, _shift(rs, nu, convention), p) == target:
            return nu
    return None
