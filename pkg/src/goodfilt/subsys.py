"""Subsystem subgroups by repeated node removal from extended Dynkin diagrams."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from .charring import Decomposition, antisymmetrize, irreducible_character
from .rootsys import (
    Root,
    RootSystem,
    RootSystemError,
    Weight,
    bourbaki_order,
    classify_connected,
    connected_components,
    product_system,
)


def canonical_components(comps: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    return tuple(sorted(comps, key=lambda c: (-c[1], c[0])))


def type_string(comps: Iterable[tuple[str, int]]) -> str:
    return "x".join(f"{a}{n}" for a, n in comps) or "T"


def type_key(label: str) -> tuple:
    """Multiset key so that "A1xA7" and "A7xA1" compare equal."""
    from .rootsys import parse_components

    if label in ("", "T", "0"):
        return ()
    return tuple(sorted(parse_components(label)))


@dataclass(frozen=True, eq=False)
class SubsystemEmbedding:
    host: RootSystem
    chosen_roots: tuple[Root, ...]
    components: tuple[tuple[str, int], ...]
    removed_nodes: tuple[int, ...] = ()
    depth: int = 1
    marks_removed: tuple[int, ...] = field(default=())

    @property
    def sub_type(self) -> str:
        return type_string(self.components)

    @cached_property
    def sub(self) -> RootSystem:
        return product_system(self.components)

    @property
    def rank(self) -> int:
        return len(self.chosen_roots)

    @property
    def maximal_rank(self) -> bool:
        return self.rank == self.host.rank

    @cached_property
    def restriction_rows(self) -> tuple[tuple[int, ...], ...]:
        """Row i evaluates <lam, beta_i^vee> as a dot product with lam."""
        rows = []
        for beta in self.chosen_roots:
            lb = self.host.root_norm(beta)
            row = []
            for c, li in zip(beta, self.host.lengths):
                v = Fraction(c * li, lb)
                assert v.denominator == 1
                row.append(int(v))
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def pairing_matrix(self) -> tuple[tuple[int, ...], ...]:
        """<beta_i, beta_j^vee>; equals the Cartan matrix of sub_type."""
        weights = [self.host.root_to_weight(b) for b in self.chosen_roots]
        return tuple(
            tuple(sum(a * b for a, b in zip(row, w)) for row in self.restriction_rows)
            for w in weights
        )

    @cached_property
    def root_set(self) -> frozenset[Root]:
        out = set()
        for c in self.sub.positive_roots:
            v = tuple(sum(ci * b[k] for ci, b in zip(c, self.chosen_roots)) for k in range(self.host.rank))
            out.add(v)
            out.add(tuple(-x for x in v))
        return frozenset(out)

    @property
    def key(self) -> tuple:
        return (self.components, self.root_set)

    def to_json(self) -> dict:
        return {
            "host": self.host.name,
            "sub_type": self.sub_type,
            "removed_nodes": list(self.removed_nodes),
            "involution_centralizer": involution_centralizer_test(self),
        }


def _component_extended(host: RootSystem, roots: Sequence[Root], letter: str, n: int):
    """Extended diagram of one component: node 0 is minus its highest root."""
    sub = product_system(((letter, n),))
    theta = sub.highest_root
    top = tuple(sum(t * b[k] for t, b in zip(theta, roots)) for k in range(host.rank))
    nodes = [tuple(-x for x in top)] + list(roots)
    return nodes, [1] + list(theta)


def _pairings(host: RootSystem, nodes: Sequence[Root]) -> list[list[int]]:
    """Cartan-style matrix <node_i, node_j^vee>."""
    rows = []
    for b in nodes:
        lb = host.root_norm(b)
        rows.append([Fraction(c * li, lb) for c, li in zip(b, host.lengths)])
    weights = [host.root_to_weight(b) for b in nodes]
    return [[int(sum(r * x for r, x in zip(rows[j], weights[i]))) for j in range(len(nodes))]
            for i in range(len(nodes))]


def _identify(host: RootSystem, nodes: Sequence[Root], keep: Sequence[int]):
    """Split kept nodes into components in Bourbaki order, canonically sorted."""
    M = _pairings(host, nodes)
    # priority: simple nodes in order, then the affine node last
    priority = sorted(range(len(nodes)), key=lambda v: (v == 0, v))
    parts = []
    for comp in connected_components(M, keep):
        letter, n = classify_connected(M, comp)
        order = bourbaki_order(M, comp, letter, n, priority=priority)
        parts.append(((letter, n), [nodes[v] for v in order], min(priority.index(v) for v in comp)))
    parts.sort(key=lambda t: (-t[0][1], t[0][0], t[2]))
    return tuple(t[0] for t in parts), tuple(r for t in parts for r in t[1])


def _removals(size: int):
    for k in range(1, size + 1):
        yield from combinations(range(size), k)


def enumerate_subsystems(rs: RootSystem, depth: int = 1) -> list[SubsystemEmbedding]:
    """Proper subsystems reachable by ``depth`` rounds of node removal.

    Round one removes a nonempty set of nodes from the extended diagram of
    each simple factor; later rounds do the same to each resulting
    component (removing nothing from a component keeps it).  Results are
    deduplicated by (type, generated root set); the full system is dropped,
    the empty (torus) subsystem is kept.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    found: dict[tuple, SubsystemEmbedding] = {}
    start = [(rs.components, _simple_roots(rs))]
    frontier = [(start, ())]
    full = frozenset(_full_root_set(rs))
    for d in range(1, depth + 1):
        nxt = []
        for state, _ in frontier:
            for emb in _one_round(rs, state, d, first=(d == 1)):
                if emb.root_set == full or emb.key in found:
                    continue
                found[emb.key] = emb
                nxt.append(([(emb.components[i:i + 1], r) for i, r in _split(emb)], ()))
        frontier = nxt
    return list(found.values())


def _simple_roots(rs: RootSystem) -> tuple[Root, ...]:
    return tuple(tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank))


def _full_root_set(rs: RootSystem):
    for b in rs.positive_roots:
        yield b
        yield tuple(-x for x in b)


def _split(emb: SubsystemEmbedding):
    off = 0
    for i, (_, n) in enumerate(emb.components):
        yield i, emb.chosen_roots[off:off + n]
        off += n


def _one_round(host: RootSystem, state, depth: int, first: bool):
    """state: list of (components, roots) blocks; each block is split per simple factor."""
    blocks = []
    for comps, roots in state:
        off = 0
        for letter, n in comps:
            blocks.append((letter, n, roots[off:off + n]))
            off += n
    options = []
    for letter, n, roots in blocks:
        nodes, marks = _component_extended(host, roots, letter, n)
        opts = []
        if not first:
            opts.append(((), None, nodes, marks))
        for rem in _removals(len(nodes)):
            opts.append((rem, None, nodes, marks))
        options.append(opts)
    for choice in product(*options):
        comps, roots, removed, marks_removed = [], [], [], []
        for (rem, _, nodes, marks) in choice:
            keep = [v for v in range(len(nodes)) if v not in rem]
            if not rem:
                keep = list(range(1, len(nodes)))
            c, r = _identify(host, nodes, keep)
            comps.extend(c)
            roots.extend(r)
            removed.append(rem)
            marks_removed.append(tuple(marks[v] for v in rem))
        comps_c, roots_c = _canonical_merge(comps, roots)
        yield SubsystemEmbedding(
            host,
            roots_c,
            comps_c,
            removed_nodes=removed[0] if len(removed) == 1 else tuple(),
            depth=depth,
            marks_removed=marks_removed[0] if len(marks_removed) == 1 else tuple(),
        )


def _canonical_merge(comps, roots):
    blocks = []
    off = 0
    for idx, (letter, n) in enumerate(comps):
        blocks.append(((letter, n), tuple(roots[off:off + n]), idx))
        off += n
    blocks.sort(key=lambda t: (-t[0][1], t[0][0], t[2]))
    return tuple(b[0] for b in blocks), tuple(r for b in blocks for r in b[1])


def involution_centralizer_test(emb: SubsystemEmbedding) -> bool:
    """True iff emb comes from removing one node of mark 2 from the extended diagram."""
    return emb.depth == 1 and len(emb.removed_nodes) == 1 and emb.marks_removed == (2,)


def maximal_rank_subsystems(rs: RootSystem) -> list[SubsystemEmbedding]:
    return [e for e in enumerate_subsystems(rs, 1) if e.maximal_rank]


def find_subsystem(rs: RootSystem, label: str) -> SubsystemEmbedding:
    """First depth-1 maximal-rank embedding of the given type (multiset match)."""
    want = type_key(label)
    for emb in enumerate_subsystems(rs, 1):
        if tuple(sorted(emb.components)) == want:
            return emb
    raise RootSystemError(f"no subsystem of type {label} found in {rs.name}")


def identity_embedding(rs: RootSystem) -> SubsystemEmbedding:
    return SubsystemEmbedding(rs, _simple_roots(rs), rs.components, depth=0)


def embedding_from_roots(rs: RootSystem, roots: Sequence[Root]) -> SubsystemEmbedding:
    """Embedding on an explicit list of roots, which must already be in Bourbaki order."""
    M = _pairings(rs, roots)
    comps = []
    for comp in connected_components(M, range(len(roots))):
        comps.append(classify_connected(M, comp))
    emb = SubsystemEmbedding(rs, tuple(tuple(r) for r in roots), tuple(comps), depth=0)
    if emb.pairing_matrix != emb.sub.cartan:
        raise RootSystemError("roots are not in the Bourbaki order of their type")
    return emb


def restrict_weight(emb: SubsystemEmbedding, lam: Sequence[int]) -> Weight:
    return tuple(sum(a * b for a, b in zip(row, lam)) for row in emb.restriction_rows)


def branch_decompose(emb: SubsystemEmbedding, lam: Sequence[int]) -> Decomposition:
    """Decomposition of the restriction of H^0(lam) to the subsystem."""
    ch = irreducible_character(emb.host, tuple(lam))
    rows = emb.restriction_rows
    restricted = ((tuple(sum(a * b for a, b in zip(row, w)) for row in rows), m) for w, m in ch.weights())
    return antisymmetrize(emb.sub, restricted)
