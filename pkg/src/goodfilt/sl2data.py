"""Distinguished nilpotent orbits, gradings and restriction to SL2."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .charring import Character
from .primes import PrimeConditionSet, least_prime_at_least
from .rootsys import RootSystem, _inverse, build_root_system

DATA_FILE = "distinguished_orbits.tsv"

# Bad primes per simple type letter; A has none.
BAD_PRIMES = {"A": (), "B": (2,), "C": (2,), "D": (2,), "G": (2, 3), "F": (2, 3), "E": (2, 3)}


class OrbitDataError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitDatum:
    host: str
    bala_carter_label: str
    labels: tuple[int, ...]

    @property
    def distinguished(self) -> bool:
        return all(x in (0, 2) for x in self.labels) and any(self.labels)

    def to_json(self) -> dict:
        return {"host": self.host, "label": self.bala_carter_label, "labels": list(self.labels)}


def _data_path() -> Path:
    return Path(str(resources.files("goodfilt") / "data" / DATA_FILE))


def load_orbit_file(path: str | Path) -> list[OrbitDatum]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OrbitDataError(f"cannot read orbit data {path}: {exc}") from exc
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise OrbitDataError(f"{path}:{n}: expected 3 tab-separated fields")
        host, label, vec = parts
        try:
            labels = tuple(int(x) for x in vec.split(","))
            rs = build_root_system(host)
        except ValueError as exc:
            raise OrbitDataError(f"{path}:{n}: {exc}") from exc
        if len(labels) != rs.rank:
            raise OrbitDataError(f"{path}:{n}: {len(labels)} labels for rank {rs.rank}")
        od = OrbitDatum(host, label, labels)
        if not od.distinguished:
            raise OrbitDataError(f"{path}:{n}: labels {labels} are not a distinguished labelling")
        out.append(od)
    return out


def load_distinguished_orbits(host: str, path: str | Path | None = None) -> list[OrbitDatum]:
    records = load_orbit_file(path or _data_path())
    out = [r for r in records if r.host == host]
    if not out:
        raise OrbitDataError(f"no distinguished orbit data for {host} in {path or _data_path()}")
    return out


def find_orbit(host: str, label: str) -> OrbitDatum:
    for od in load_distinguished_orbits(host):
        if od.bala_carter_label == label:
            return od
    raise OrbitDataError(f"unknown orbit {label!r} for {host}")


@dataclass(frozen=True)
class GradingProfile:
    dims: Mapping[int, int]

    @property
    def max_grade(self) -> int:
        return max(i for i, d in self.dims.items() if d)

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def __getitem__(self, i: int) -> int:
        return self.dims.get(i, 0)

    @property
    def symmetric(self) -> bool:
        return all(self[i] == self[-i] for i in self.dims)


def grading_profile(rs: RootSystem, labels: Sequence[int] | OrbitDatum) -> GradingProfile:
    if isinstance(labels, OrbitDatum):
        labels = labels.labels
    if len(labels) != rs.rank:
        raise ValueError(f"{len(labels)} labels for rank {rs.rank}")
    dims: dict[int, int] = {0: rs.rank}
    for c in rs.positive_roots:
        g = sum(a * b for a, b in zip(labels, c))
        dims[g] = dims.get(g, 0) + 1
        dims[-g] = dims.get(-g, 0) + 1
    return GradingProfile(dict(sorted(dims.items())))


def orbit_dimension(rs: RootSystem, labels: Sequence[int]) -> int:
    return rs.dim - grading_profile(rs, labels)[0]


@dataclass(frozen=True)
class ThresholdReport:
    """Least primes for X^[p] = 0 under the two readings of the grade bound.

    ``vanish_from_2p``: g(i) = 0 for every i >= 2p (max grade < 2p).
    ``vanish_above_2p``: g(i) = 0 for every i > 2p (max grade <= 2p).
    """

    max_grade: int
    vanish_from_2p: int
    vanish_above_2p: int

    def to_json(self) -> dict:
        return {"max_grade": self.max_grade, "vanish_from_2p": self.vanish_from_2p,
                "vanish_above_2p": self.vanish_above_2p}


def optimal_prime_threshold(profile: GradingProfile) -> ThresholdReport:
    m = profile.max_grade
    return ThresholdReport(m, least_prime_at_least(m // 2 + 1), least_prime_at_least((m + 1) // 2))


@dataclass(frozen=True)
class SL2Character:
    mult: Mapping[int, int]

    @property
    def dimension(self) -> int:
        return sum(m * (n + 1) for n, m in self.mult.items())

    @property
    def max_weight(self) -> int:
        return max(self.mult, default=0)

    def to_json(self) -> dict:
        return {"terms": [{"n": n, "mult": m} for n, m in sorted(self.mult.items())]}

    def __str__(self) -> str:
        return " + ".join((f"{m}*" if m != 1 else "") + f"chi({n})" for n, m in sorted(self.mult.items())) or "0"


def coroot_coefficients(rs: RootSystem, labels: Sequence[int]) -> tuple[int, ...]:
    """c with h = sum c_i alpha_i^vee and <alpha_j, h> = labels_j."""
    inv = _inverse([[Fraction(x) for x in row] for row in rs.cartan])
    c = [sum((inv[i][j] * labels[j] for j in range(rs.rank)), Fraction(0)) for i in range(rs.rank)]
    if any(x.denominator != 1 for x in c):
        raise ValueError(f"labels {tuple(labels)} do not give an integral cocharacter")
    return tuple(int(x) for x in c)


def sl2_weight_multiset(c: Character, labels: Sequence[int]) -> dict[int, int]:
    h = coroot_coefficients(c.host, labels)
    out: dict[int, int] = {}
    for w, m in c.weights():
        k = sum(a * b for a, b in zip(h, w))
        out[k] = out.get(k, 0) + m
    return out


def sl2_decompose(weights: Mapping[int, int]) -> SL2Character:
    for k, v in weights.items():
        if weights.get(-k, 0) != v:
            raise ValueError(f"SL2 weight multiset is not symmetric at {k}")
    mult = {}
    for n in range(max(weights, default=-1) + 1):
        v = weights.get(n, 0) - weights.get(n + 2, 0)
        if v < 0:
            raise ValueError(f"negative SL2 multiplicity at n={n}; input is not a module character")
        if v:
            mult[n] = v
    return SL2Character(mult)


def sl2_restrict(c: Character, labels: Sequence[int]) -> SL2Character:
    return sl2_decompose(sl2_weight_multiset(c, labels))


def restricted_semisimple_min_prime(sc: SL2Character) -> PrimeConditionSet:
    """Primes p with every n < p, so the restriction is restricted semisimple."""
    return PrimeConditionSet.all_geq(least_prime_at_least(sc.max_weight + 1))


def good_prime_condition(rs: RootSystem) -> PrimeConditionSet:
    bad: set[int] = set()
    for letter, n in rs.components:
        bad.update(BAD_PRIMES[letter])
        if letter == "E" and n == 8:
            bad.add(5)
    return PrimeConditionSet.excluding(bad)


# Minimum primes printed in the optimal-SL2 table for orthogonal groups.
SPIN_TABLE = {6: 5, 8: 7, 10: 11, 12: 17, 14: 23, 5: 7, 7: 11}


@dataclass(frozen=True)
class SpinThreshold:
    dim_v: int
    rank: int
    binomial: int
    condition: PrimeConditionSet
    table_value: int | None

    @property
    def least_prime(self) -> int:
        return self.condition.least

    @property
    def agrees_with_table(self) -> bool | None:
        return None if self.table_value is None else self.table_value == self.least_prime

    def to_json(self) -> dict:
        return {"dim_v": self.dim_v, "rank": self.rank, "bound": self.binomial,
                "condition": self.condition.to_json(), "least_prime": self.least_prime,
                "table_value": self.table_value, "agrees_with_table": self.agrees_with_table}


def spin_threshold(dim_v: int) -> SpinThreshold:
    """p > binom(d+1, 2) for dim V = 2d+1 and p > binom(d, 2) for dim V = 2d."""
    if dim_v < 5:
        raise ValueError(f"dim V must be at least 5, got {dim_v}")
    d = dim_v // 2
    b = d * (d + 1) // 2 if dim_v % 2 else d * (d - 1) // 2
    cond = PrimeConditionSet.all_geq(least_prime_at_least(b + 1))
    return SpinThreshold(dim_v, d, b, cond, SPIN_TABLE.get(dim_v))
