"""Symbolic sets of primes.

Every set is stored in one of two normal forms: cofinite (all primes except a
finite set) or finite.  ``all``, ``all_geq(k)`` and ``excluding(S)`` are all
cofinite; intersections and unions stay in normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from sympy import isprime, nextprime, primerange


def least_prime_at_least(n: int) -> int:
    return 2 if n <= 2 else int(nextprime(n - 1))


@dataclass(frozen=True)
class PrimeConditionSet:
    cofinite: bool
    primes: frozenset[int]
    witnesses: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    # -- constructors -----------------------------------------------------
    @classmethod
    def all(cls) -> "PrimeConditionSet":
        return cls(True, frozenset())

    @classmethod
    def none(cls) -> "PrimeConditionSet":
        return cls(False, frozenset())

    @classmethod
    def all_geq(cls, k: int) -> "PrimeConditionSet":
        return cls(True, frozenset(primerange(2, max(k, 2))))

    @classmethod
    def excluding(cls, primes: Iterable[int]) -> "PrimeConditionSet":
        ps = frozenset(int(p) for p in primes)
        _check(ps)
        return cls(True, ps)

    @classmethod
    def finite(cls, primes: Iterable[int]) -> "PrimeConditionSet":
        ps = frozenset(int(p) for p in primes)
        _check(ps)
        return cls(False, ps)

    @classmethod
    def intersection(cls, *sets: "PrimeConditionSet") -> "PrimeConditionSet":
        out = cls.all()
        for s in sets:
            out = out & s
        return out

    # -- algebra ----------------------------------------------------------
    def __contains__(self, p: int) -> bool:
        return (p not in self.primes) if self.cofinite else (p in self.primes)

    def __and__(self, other: "PrimeConditionSet") -> "PrimeConditionSet":
        if self.cofinite and other.cofinite:
            return PrimeConditionSet(True, self.primes | other.primes)
        if self.cofinite:
            return PrimeConditionSet(False, other.primes - self.primes)
        if other.cofinite:
            return PrimeConditionSet(False, self.primes - other.primes)
        return PrimeConditionSet(False, self.primes & other.primes)

    def __or__(self, other: "PrimeConditionSet") -> "PrimeConditionSet":
        return (self.complement() & other.complement()).complement()

    def complement(self) -> "PrimeConditionSet":
        return PrimeConditionSet(not self.cofinite, self.primes)

    def issubset(self, other: "PrimeConditionSet") -> bool:
        return (self & other) == self

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.primes

    def members_below(self, bound: int) -> list[int]:
        return [p for p in primerange(2, bound) if p in self]

    def with_witnesses(self, witnesses: dict) -> "PrimeConditionSet":
        return PrimeConditionSet(self.cofinite, self.primes, dict(witnesses))

    # -- description ------------------------------------------------------
    @property
    def kind(self) -> str:
        if not self.cofinite:
            return "finite"
        if not self.primes:
            return "all"
        if self._geq_bound() is not None:
            return "all_geq"
        return "excluding"

    def _geq_bound(self) -> int | None:
        if not self.cofinite or not self.primes:
            return None
        k = least_prime_at_least(max(self.primes) + 1)
        if self.primes == frozenset(primerange(2, k)):
            return k
        return None

    @property
    def least(self) -> int | None:
        if self.cofinite:
            p = 2
            while p in self.primes:
                p = int(nextprime(p))
            return p
        return min(self.primes) if self.primes else None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "all_geq":
            out["bound"] = self._geq_bound()
        elif self.kind == "excluding":
            out["excluded"] = sorted(self.primes)
        elif self.kind == "finite":
            out["primes"] = sorted(self.primes)
        if self.witnesses:
            out["witnesses"] = {str(k): v for k, v in sorted(self.witnesses.items())}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PrimeConditionSet":
        kind = data["kind"]
        if kind == "all":
            return cls.all()
        if kind == "all_geq":
            return cls.all_geq(data["bound"])
        if kind == "excluding":
            return cls.excluding(data["excluded"])
        if kind == "finite":
            return cls.finite(data["primes"])
        raise ValueError(f"unknown prime-set kind {kind!r}")

    def __str__(self) -> str:
        k = self.kind
        if k == "all":
            return "all p"
        if k == "all_geq":
            return f"p >= {self._geq_bound()}"
        if k == "excluding":
            ps = sorted(self.primes)
            if len(ps) == 1:
                return f"p != {ps[0]}"
            return "p not in {" + ", ".join(map(str, ps)) + "}"
        if not self.primes:
            return "no p"
        return "p in {" + ", ".join(map(str, sorted(self.primes))) + "}"


def _check(ps: frozenset[int]) -> None:
    bad = [p for p in ps if not isprime(p)]
    if bad:
        raise ValueError(f"not prime: {sorted(bad)}")
