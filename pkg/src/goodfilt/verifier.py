"""Certificates for good-filtration statements at the character level.

The core step: if a module F is known to have good filtrations for G and H,
lam lies in Supp(F), and every other mu in Supp(F) is either strictly below
lam and already certified, or not W_p-linked to lam, then lam is certified.
Each step records a prime condition and everything needed to re-check it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import primerange

from .budget import BudgetError, budgets
from .charring import (
    Decomposition,
    _n_weights,
    exterior_power_decompose,
    irreducible_character,
    sym_power_decompose,
    tensor_decompose,
    weyl_dimension,
)
from .linkage import linkage_witness, low_alcove_min_prime, order_compare, wp_conjugacy_primes
from .primes import PrimeConditionSet, least_prime_at_least
from .rootsys import RootSystem, Weight, build_root_system
from .sl2data import (
    OrbitDatum,
    good_prime_condition,
    grading_profile,
    optimal_prime_threshold,
    restricted_semisimple_min_prime,
    sl2_restrict,
)
from .subsys import SubsystemEmbedding, branch_decompose


def fundamental(rank: int, i: int) -> Weight:
    return tuple(int(j == i - 1) for j in range(rank))


def weight_name(w: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(w, 1):
        if c == 1:
            parts.append(f"w{i}")
        elif c:
            parts.append(f"{c}w{i}")
    return "+".join(parts) or "0"


# Seed weights assumed to lie in W(G,H), and the prime condition under which
# they force every fundamental weight in.  G2 is handled by seeding both
# fundamental weights, which needs no construction at all.
PROTOCOL_SEEDS = {"G2": (1, 2), "F4": (4,), "E6": (1, 6), "E7": (1, 7), "E8": (1, 8)}
PROTOCOL_CONDITIONS = {
    "G2": PrimeConditionSet.all(),
    "F4": PrimeConditionSet.all_geq(5),
    "E6": PrimeConditionSet.all_geq(5),
    "E7": PrimeConditionSet.excluding([2, 5, 7]),
    "E8": PrimeConditionSet.all_geq(7),
}


def protocol_seeds(rs: RootSystem) -> list[Weight]:
    if rs.name not in PROTOCOL_SEEDS:
        raise ValueError(f"no seed set for {rs.name}")
    return [fundamental(rs.rank, i) for i in PROTOCOL_SEEDS[rs.name]]


class KnownGoodSet:
    """Dominant weights with the primes for which they are certified."""

    def __init__(self, host: RootSystem, entries: dict | None = None):
        self.host = host
        self.entries: dict[Weight, PrimeConditionSet] = {tuple([0] * host.rank): PrimeConditionSet.all()}
        for k, v in (entries or {}).items():
            self.add(k, v)

    def __getitem__(self, w: Sequence[int]) -> PrimeConditionSet:
        return self.entries.get(tuple(w), PrimeConditionSet.none())

    def __contains__(self, w) -> bool:
        return not self[w].is_empty

    def add(self, w: Sequence[int], cond: PrimeConditionSet) -> bool:
        """Union cond into the entry for w; report whether it grew."""
        w = tuple(w)
        old = self[w]
        new = old | cond
        if new == old:
            return False
        self.entries[w] = new
        return True

    def copy(self) -> "KnownGoodSet":
        out = KnownGoodSet(self.host)
        out.entries = dict(self.entries)
        return out

    def to_json(self) -> dict:
        return {weight_name(k): v.to_json() for k, v in sorted(self.entries.items())}


@dataclass(frozen=True)
class Construction:
    kind: str  # "ext2", "sym2" or "tensor"
    args: tuple[Weight, ...]

    def describe(self) -> str:
        if self.kind == "tensor":
            a, b = self.args
            return f"H0({weight_name(a)}) (x) H0({weight_name(b)})"
        op = {"ext2": "Ext^2", "sym2": "Sym^2"}[self.kind]
        return f"{op} H0({weight_name(self.args[0])})"

    def support(self, rs: RootSystem) -> Decomposition:
        if self.kind == "tensor":
            return tensor_decompose(rs, *self.args)
        if self.kind == "ext2":
            return exterior_power_decompose(2, rs, self.args[0])
        if self.kind == "sym2":
            return sym_power_decompose(2, rs, self.args[0])
        raise ValueError(self.kind)

    def module_condition(self, known: KnownGoodSet) -> PrimeConditionSet:
        """Primes for which F and its restriction have good filtrations."""
        if self.kind == "tensor":
            return known[self.args[0]] & known[self.args[1]]
        # m-th exterior and symmetric powers need m < p
        return known[self.args[0]] & PrimeConditionSet.excluding([2])

    def dimension(self, rs: RootSystem) -> int:
        if self.kind == "tensor":
            return weyl_dimension(rs, self.args[0]) * weyl_dimension(rs, self.args[1])
        d = weyl_dimension(rs, self.args[0])
        return d * (d - 1) // 2 if self.kind == "ext2" else d * (d + 1) // 2

    def work(self, rs: RootSystem) -> int:
        return min(_n_weights(rs, a) for a in self.args)

    def to_json(self) -> dict:
        return {"kind": self.kind, "args": [list(a) for a in self.args], "text": self.describe()}

    @classmethod
    def from_json(cls, data: dict) -> "Construction":
        return cls(data["kind"], tuple(tuple(a) for a in data["args"]))


@dataclass(frozen=True)
class Justification:
    weight: Weight
    below: bool
    known: PrimeConditionSet
    linked: PrimeConditionSet
    allowed: PrimeConditionSet

    def to_json(self) -> dict:
        return {
            "weight": list(self.weight),
            "below_target": self.below,
            "known": self.known.to_json(),
            "linked_primes": self.linked.to_json(),
            "allowed": self.allowed.to_json(),
        }


@dataclass
class CertStep:
    construction: Construction | None
    support: Decomposition
    target: Weight
    justifications: list[Justification]
    module_condition: PrimeConditionSet
    condition: PrimeConditionSet
    known_after: PrimeConditionSet | None = None

    def to_json(self) -> dict:
        return {
            "construction": self.construction.to_json() if self.construction else None,
            "support": self.support.to_json(),
            "target": list(self.target),
            "justifications": [j.to_json() for j in self.justifications],
            "module_condition": self.module_condition.to_json(),
            "condition": self.condition.to_json(),
            "known_after": self.known_after.to_json() if self.known_after else None,
        }

    def transcript(self) -> str:
        terms = " + ".join(
            (f"{m}*" if m != 1 else "") + f"chi({weight_name(w)})" for w, m in
            sorted(self.support.terms.items(), key=lambda t: (sum(t[0]), t[0]))
        )
        head = self.construction.describe() if self.construction else "given module"
        lines = [f"F = {head}; chi(F) = {terms}."]
        for j in self.justifications:
            how = []
            if j.below and not j.known.is_empty:
                how.append(f"below target and certified for {j.known}")
            how.append("never linked" if j.linked.is_empty else f"linked only for {j.linked}")
            lines.append(f"  {weight_name(j.weight)}: {'; '.join(how)}")
        lines.append(f"  => {weight_name(self.target)} certified for {self.condition}")
        return "\n".join(lines)


@dataclass
class Certificate:
    host: str
    seeds: list[Weight]
    convention: str = "rho"
    steps: list[CertStep] = field(default_factory=list)
    result: PrimeConditionSet | None = None
    uncertified: list[Weight] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "host": self.host,
            "seeds": [list(s) for s in self.seeds],
            "convention": self.convention,
            "steps": [s.to_json() for s in self.steps],
            "result": self.result.to_json() if self.result else None,
            "uncertified": [list(w) for w in self.uncertified],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def transcript(self) -> str:
        out = [f"{self.host}: seeds {', '.join(weight_name(s) for s in self.seeds)}"]
        for n, s in enumerate(self.steps, 1):
            out.append(f"Step {n}. " + s.transcript())
        if self.result is not None:
            out.append(f"All fundamental weights certified for {self.result}.")
        if self.uncertified:
            out.append("Uncertified: " + ", ".join(weight_name(w) for w in self.uncertified))
        return "\n".join(out)


@lru_cache(maxsize=200_000)
def _linked_primes(rs: RootSystem, mu: Weight, lam: Weight, convention: str) -> PrimeConditionSet:
    return wp_conjugacy_primes(rs, mu, lam, convention)


def vdk_certify(host: RootSystem, lam: Sequence[int], support: Decomposition, known: KnownGoodSet,
                module_condition: PrimeConditionSet | None = None,
                construction: Construction | None = None,
                certificate: Certificate | None = None,
                convention: str = "rho") -> PrimeConditionSet:
    """Primes for which lam is forced into W(G,H) by a module with this support."""
    lam = tuple(lam)
    if support.terms.get(lam, 0) < 1:
        raise ValueError(f"{weight_name(lam)} is not in the support")
    cond = PrimeConditionSet.all() if module_condition is None else module_condition
    justs = []
    for mu in sorted(support.terms):
        if mu == lam:
            continue
        below = order_compare(host, mu, lam).leq_root
        k = known[mu] if below else PrimeConditionSet.none()
        linked = _linked_primes(host, mu, lam, convention)
        allowed = k | linked.complement()
        justs.append(Justification(mu, below, known[mu], linked, allowed))
        cond = cond & allowed
    if certificate is not None:
        certificate.steps.append(CertStep(construction, support, lam, justs, module_condition or PrimeConditionSet.all(), cond))
    return cond


def _candidates(rs: RootSystem, known: KnownGoodSet, work_budget: int) -> list[Construction]:
    funds = [fundamental(rs.rank, i) for i in range(1, rs.rank + 1)]
    have = [w for w in funds if w in known]
    out = []
    for i, a in enumerate(have):
        out.append(Construction("ext2", (a,)))
        out.append(Construction("sym2", (a,)))
        for b in have[i:]:
            out.append(Construction("tensor", (a, b)))
    out = [c for c in out if c.work(rs) <= work_budget]
    out.sort(key=lambda c: (c.dimension(rs), c.kind, c.args))
    return out


def exceptional_protocol(rs: RootSystem | str, seeds: Iterable[Sequence[int]] | None = None,
                         work_budget: int | None = None, convention: str = "rho",
                         max_steps: int = 400, saturate: bool = False,
                         constructions: Iterable[Construction] | None = None,
                         progress=None) -> tuple[Certificate, PrimeConditionSet]:
    """Certify all fundamental weights from the seeds by a cheapest-first search.

    Constructions (Ext^2, Sym^2, tensor products of certified fundamental
    weights) are tried in order of module dimension; after every
    improvement of the known set the search restarts from the cheapest.
    The search stops once every fundamental weight is certified, or with
    ``saturate=True`` only when no construction within the work budget
    improves anything.  ``constructions`` restricts the search to a given
    list (for instance a hand-written chain).
    """
    if isinstance(rs, str):
        rs = build_root_system(rs)
    seeds = [tuple(s) for s in (seeds if seeds is not None else protocol_seeds(rs))]
    limit = work_budget if work_budget is not None else budgets().weights // 10
    known = KnownGoodSet(rs)
    for s in seeds:
        known.add(s, PrimeConditionSet.all())
    cert = Certificate(rs.name, seeds, convention)
    allowed = list(constructions) if constructions is not None else None
    supports: dict[Construction, Decomposition] = {}
    funds = [fundamental(rs.rank, i) for i in range(1, rs.rank + 1)]
    while len(cert.steps) < max_steps:
        if not saturate and all(w in known for w in funds):
            break
        improved = False
        if constructions is None:
            cands = _candidates(rs, known, limit)
        else:
            cands = [c for c in allowed if all(a in known for a in c.args)]
        for con in cands:
            if con not in supports:
                supports[con] = con.support(rs)
            sup = supports[con]
            mc = con.module_condition(known)
            if mc.is_empty:
                continue
            for lam in sorted(sup.terms, key=lambda w: (_height(rs, w), w)):
                trial = Certificate(rs.name, seeds, convention)
                cond = vdk_certify(rs, lam, sup, known, mc, con, trial, convention)
                if known.add(lam, cond):
                    step = trial.steps[0]
                    step.known_after = known[lam]
                    cert.steps.append(step)
                    if progress:
                        progress(step)
                    improved = True
                    break
            if improved:
                break
        if not improved:
            break
    cert.uncertified = [w for w in funds if w not in known]
    result = PrimeConditionSet.intersection(*(known[w] for w in funds))
    cert.result = result
    return cert, result


def _w(*idx: int) -> Weight:
    return tuple(sum(1 for i in idx if i == j) for j in range(1, 8))


# The eight constructions of the classical E7 argument, in its order.
E7_REFERENCE_CHAIN = (
    Construction("ext2", (_w(1),)),
    Construction("ext2", (_w(7),)),
    Construction("tensor", (_w(1), _w(7))),
    Construction("sym2", (_w(7),)),
    Construction("sym2", (_w(1),)),
    Construction("tensor", (_w(2), _w(7))),
    Construction("ext2", (_w(2),)),
    Construction("tensor", (_w(1), _w(2))),
)


def _height(rs: RootSystem, w: Sequence[int]):
    return sum(rs.root_coordinates(w))


class ReplayError(AssertionError):
    pass


def replay(cert: Certificate | dict) -> PrimeConditionSet:
    """Re-derive every step from the seeds alone and compare with the record."""
    data = cert.to_json() if isinstance(cert, Certificate) else cert
    rs = build_root_system(data["host"])
    conv = data.get("convention", "rho")
    known = KnownGoodSet(rs)
    for s in data["seeds"]:
        known.add(s, PrimeConditionSet.all())
    for n, step in enumerate(data["steps"], 1):
        con = Construction.from_json(step["construction"])
        sup = _fresh_support(rs, con)
        if sup.to_json() != step["support"]:
            raise ReplayError(f"step {n}: support differs from record")
        target = tuple(step["target"])
        cond = PrimeConditionSet.all() & con.module_condition(known)
        for mu in sorted(sup.terms):
            if mu == target:
                continue
            below = order_compare(rs, mu, target).leq_root
            k = known[mu] if below else PrimeConditionSet.none()
            cond = cond & (k | wp_conjugacy_primes(rs, mu, target, conv).complement())
        if cond.to_json() != step["condition"]:
            raise ReplayError(f"step {n}: condition {cond} differs from record {step['condition']}")
        known.add(target, cond)
    funds = [fundamental(rs.rank, i) for i in range(1, rs.rank + 1)]
    result = PrimeConditionSet.intersection(*(known[w] for w in funds))
    if data.get("result") is not None and result.to_json() != data["result"]:
        raise ReplayError(f"final condition {result} differs from record")
    return result


def _fresh_support(rs: RootSystem, con: Construction) -> Decomposition:
    """Recompute a support bypassing the decomposition caches."""
    for fn in (tensor_decompose, exterior_power_decompose, sym_power_decompose):
        fn.cache_clear()
    return con.support(rs)


# -- subsystem reports ------------------------------------------------------

@dataclass
class WeightAnalysis:
    weight: Weight
    component_bounds: list[int]
    least_prime: int
    linkage: dict[int, bool] = field(default_factory=dict)
    witnesses: dict[int, list] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "weight": list(self.weight),
            "alcove_bounds": self.component_bounds,
            "alcove_prime": self.least_prime,
            "linkage_minimal": {str(p): ok for p, ok in sorted(self.linkage.items())},
            "witnesses": {str(p): w for p, w in sorted(self.witnesses.items())},
        }


@dataclass
class SubsystemReport:
    host: str
    sub_type: str
    seeds: list[Weight]
    branches: dict[Weight, Decomposition]
    weights: list[WeightAnalysis]
    alcove_prime: int
    accepted_below: list[int]
    protocol_condition: PrimeConditionSet
    condition: PrimeConditionSet

    @property
    def alcove_condition(self) -> PrimeConditionSet:
        return PrimeConditionSet.all_geq(self.alcove_prime)

    def to_json(self) -> dict:
        return {
            "host": self.host,
            "sub_type": self.sub_type,
            "seeds": [list(s) for s in self.seeds],
            "branches": {weight_name(k): v.to_json() for k, v in self.branches.items()},
            "weights": [w.to_json() for w in self.weights],
            "alcove_prime": self.alcove_prime,
            "accepted_below_alcove_prime": self.accepted_below,
            "protocol_condition": self.protocol_condition.to_json(),
            "condition": self.condition.to_json(),
            "condition_text": str(self.condition),
        }


def _split_weight(sub: RootSystem, w: Sequence[int]):
    for sl, comp in zip(sub.component_slices, sub.components):
        yield build_root_system(f"{comp[0]}{comp[1]}"), tuple(w[sl])


def subsystem_prime_report(host: RootSystem, emb: SubsystemEmbedding,
                           protocol_condition: PrimeConditionSet | None = None,
                           convention: str = "rho") -> SubsystemReport:
    """Alcove bound for the branched seed modules, refined below it by linkage.

    A product weight is treated componentwise: it passes at q if each of its
    component weights is in the closed low alcove at q or is the least
    dominant weight of its linkage class.
    """
    seeds = protocol_seeds(host)
    cond0 = protocol_condition if protocol_condition is not None else PROTOCOL_CONDITIONS[host.name]
    branches = {s: branch_decompose(emb, s) for s in seeds}
    hw = sorted({w for d in branches.values() for w in d.terms})
    analyses = []
    for w in hw:
        bounds = [low_alcove_min_prime(c, cw).bound for c, cw in _split_weight(emb.sub, w)]
        analyses.append(WeightAnalysis(w, bounds, least_prime_at_least(max(bounds, default=1))))
    p_alc = max((a.least_prime for a in analyses), default=2)
    accepted = []
    for q in primerange(2, p_alc):
        ok_all = True
        for a in analyses:
            ok = True
            for (c, cw), b in zip(_split_weight(emb.sub, a.weight), a.component_bounds):
                if b <= q:
                    continue
                wit = linkage_witness(c, cw, q, convention)
                if wit is not None:
                    ok = False
                    a.witnesses.setdefault(q, []).append(list(wit))
            a.linkage[q] = ok
            ok_all &= ok
        if ok_all:
            accepted.append(q)
    cond = (PrimeConditionSet.all_geq(p_alc) | PrimeConditionSet.finite(accepted)) & cond0
    return SubsystemReport(host.name, emb.sub_type, seeds, branches, analyses, p_alc, accepted, cond0, cond)


# -- SL2 reports ------------------------------------------------------------

@dataclass
class SL2Report:
    host: str
    orbit: OrbitDatum
    good_primes: PrimeConditionSet
    threshold: object
    existence: PrimeConditionSet
    restrictions: dict
    semisimple: dict
    condition: PrimeConditionSet

    def to_json(self) -> dict:
        return {
            "host": self.host,
            "orbit": self.orbit.to_json(),
            "good_primes": self.good_primes.to_json(),
            "threshold": self.threshold.to_json(),
            "existence": self.existence.to_json(),
            "restrictions": {weight_name(k): v.to_json() for k, v in self.restrictions.items()},
            "semisimple": {weight_name(k): v.to_json() for k, v in self.semisimple.items()},
            "condition": self.condition.to_json(),
            "condition_text": str(self.condition),
        }


READINGS = ("vanish_above_2p", "vanish_from_2p")


def sl2_orbit_report(host: RootSystem, orbit: OrbitDatum, reading: str = "vanish_above_2p") -> SL2Report:
    if not orbit.distinguished:
        raise ValueError(f"{orbit.bala_carter_label} is not distinguished")
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    good = good_prime_condition(host)
    th = optimal_prime_threshold(grading_profile(host, orbit))
    exist = PrimeConditionSet.all_geq(getattr(th, reading))
    restr, ss = {}, {}
    for s in protocol_seeds(host):
        sc = sl2_restrict(irreducible_character(host, s), orbit.labels)
        restr[s] = sc
        ss[s] = restricted_semisimple_min_prime(sc)
    cond = PrimeConditionSet.intersection(good, exist, *ss.values())
    return SL2Report(host.name, orbit, good, th, exist, restr, ss, cond)


def compose_chain(*conditions: PrimeConditionSet) -> PrimeConditionSet:
    """Condition for H ⊆ L ⊆ G from the conditions of the consecutive pairs."""
    return PrimeConditionSet.intersection(*conditions)
