"""Root systems of types A-G in Bourbaki numbering.

Weights are integer tuples in the fundamental-weight basis, so ``lam[i]`` is
the pairing of ``lam`` with the i-th simple coroot.  Roots are integer tuples
in the simple-root basis.  A :class:`RootSystem` may be a product of simple
components; products keep the component coordinates concatenated.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .budget import BudgetError, budgets

Weight = tuple[int, ...]
Root = tuple[int, ...]

_EXCEPTIONAL_WEYL = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12}
_TYPE_RE = re.compile(r"^([A-G])(\d+)$")


class RootSystemError(ValueError):
    pass


def _simple_data(letter: str, n: int) -> tuple[list[tuple[int, int]], list[int]]:
    """Edges (0-based) and squared root lengths for a simple type."""
    if letter == "A" and n >= 1:
        return [(i, i + 1) for i in range(n - 1)], [2] * n
    if letter == "B" and n >= 2:
        return [(i, i + 1) for i in range(n - 1)], [2] * (n - 1) + [1]
    if letter == "C" and n >= 2:
        return [(i, i + 1) for i in range(n - 1)], [1] * (n - 1) + [2]
    if letter == "D" and n >= 3:
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)], [2] * n
    if letter == "E" and n in (6, 7, 8):
        return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)], [2] * n
    if letter == "F" and n == 4:
        return [(0, 1), (1, 2), (2, 3)], [2, 2, 1, 1]
    if letter == "G" and n == 2:
        return [(0, 1)], [1, 3]
    raise RootSystemError(f"invalid simple type {letter}{n}")


def parse_components(label: str) -> list[tuple[str, int]]:
    """Split "D5xA3" into [("D", 5), ("A", 3)]."""
    out = []
    for tok in label.replace("×", "x").split("x"):
        m = _TYPE_RE.match(tok.strip())
        if not m:
            raise RootSystemError(f"cannot parse type token {tok!r} in {label!r}")
        letter, n = m.group(1), int(m.group(2))
        if n > 8:
            raise RootSystemError(f"rank {n} exceeds 8 in {tok!r}")
        _simple_data(letter, n)
        out.append((letter, n))
    return out


def simple_weyl_order(letter: str, n: int) -> int:
    if letter == "A":
        return math.factorial(n + 1)
    if letter in "BC":
        return 2**n * math.factorial(n)
    if letter == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return _EXCEPTIONAL_WEYL[f"{letter}{n}"]


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable root datum built from a list of simple components."""

    components: tuple[tuple[str, int], ...]
    cartan: tuple[tuple[int, ...], ...] = field(repr=False)
    lengths: tuple[int, ...] = field(repr=False)

    # -- identity ---------------------------------------------------------
    @property
    def name(self) -> str:
        if not self.components:
            return "empty"
        return "x".join(f"{a}{n}" for a, n in self.components)

    @property
    def type_label(self) -> str:
        if len(self.components) != 1:
            return self.name
        return self.components[0][0]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def is_simple(self) -> bool:
        return len(self.components) == 1

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"RootSystem({self.name})"

    @cached_property
    def component_slices(self) -> tuple[slice, ...]:
        out, start = [], 0
        for _, n in self.components:
            out.append(slice(start, start + n))
            start += n
        return tuple(out)

    # -- roots ------------------------------------------------------------
    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        """Positive roots by closure over simple-root strings, sorted by height."""
        r = self.rank
        A = self.cartan
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        roots = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(r):
                    # <beta, alpha_i^vee>
                    pair = sum(beta[j] * A[j][i] for j in range(r))
                    down = 0
                    b = list(beta)
                    while True:
                        b[i] -= 1
                        if tuple(b) in roots:
                            down += 1
                        else:
                            break
                    if down - pair > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in roots:
                            roots.add(up)
                            nxt.append(up)
            layer = nxt
        return tuple(sorted(roots, key=lambda c: (sum(c), tuple(-x for x in c))))

    @cached_property
    def root_sq_lengths(self) -> tuple[int, ...]:
        """Squared length of each positive root (short roots of B/C/F/G have 1)."""
        return tuple(self.root_norm(b) for b in self.positive_roots)

    def root_norm(self, beta: Root) -> int:
        r = self.rank
        tot = Fraction(0)
        for i in range(r):
            if beta[i]:
                for j in range(r):
                    if beta[j]:
                        tot += beta[i] * beta[j] * self._form[i][j]
        assert tot.denominator == 1
        return int(tot)

    @cached_property
    def _form(self) -> tuple[tuple[Fraction, ...], ...]:
        # (alpha_i, alpha_j) = A[i][j] * |alpha_j|^2 / 2
        return tuple(
            tuple(Fraction(self.cartan[i][j] * self.lengths[j], 2) for j in range(self.rank))
            for i in range(self.rank)
        )

    @cached_property
    def coroots(self) -> tuple[tuple[int, ...], ...]:
        """Row k gives <lam, beta_k^vee> = sum_i row[i] * lam[i]."""
        out = []
        for beta, lb in zip(self.positive_roots, self.root_sq_lengths):
            row = []
            for i, c in enumerate(beta):
                v = Fraction(c * self.lengths[i], lb)
                assert v.denominator == 1
                row.append(int(v))
            out.append(tuple(row))
        return tuple(out)

    def root_to_weight(self, beta: Sequence[int]) -> Weight:
        r = self.rank
        return tuple(sum(beta[i] * self.cartan[i][j] for i in range(r)) for j in range(r))

    @cached_property
    def positive_roots_as_weights(self) -> tuple[Weight, ...]:
        return tuple(self.root_to_weight(b) for b in self.positive_roots)

    @cached_property
    def simple_roots_as_weights(self) -> tuple[Weight, ...]:
        return tuple(tuple(row) for row in self.cartan)

    def _component_max_root(self, k: int, short: bool) -> Root:
        sl = self.component_slices[k]
        best = None
        for beta, lb in zip(self.positive_roots, self.root_sq_lengths):
            if any(beta[:sl.start]) or any(beta[sl.stop:]):
                continue
            if short and lb != min(self.lengths[sl]):
                continue
            if best is None or sum(beta) > sum(best):
                best = beta
        return best

    @cached_property
    def highest_roots(self) -> tuple[Root, ...]:
        return tuple(self._component_max_root(k, False) for k in range(len(self.components)))

    @cached_property
    def highest_short_roots(self) -> tuple[Root, ...]:
        return tuple(self._component_max_root(k, True) for k in range(len(self.components)))

    @property
    def highest_root(self) -> Root:
        if not self.is_simple:
            raise RootSystemError(f"{self.name} is not simple; use highest_roots")
        return self.highest_roots[0]

    @property
    def marks(self) -> tuple[int, ...]:
        return self.highest_root

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def weyl_order(self) -> int:
        return math.prod(simple_weyl_order(a, n) for a, n in self.components)

    @property
    def dim(self) -> int:
        return 2 * len(self.positive_roots) + self.rank

    # -- rational linear algebra ------------------------------------------
    @cached_property
    def _cartan_T_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return _inverse([[Fraction(self.cartan[j][i]) for j in range(self.rank)] for i in range(self.rank)])

    @cached_property
    def _root_coord_int(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        M = self._cartan_T_inverse
        den = 1
        for row in M:
            for x in row:
                den = math.lcm(den, x.denominator)
        return den, tuple(tuple(int(x * den) for x in row) for row in M)

    def root_coordinates_scaled(self, lam: Sequence[int]) -> tuple[int, tuple[int, ...]]:
        """(d, v) with v / d the simple-root coordinates of lam."""
        den, M = self._root_coord_int
        return den, tuple(sum(a * b for a, b in zip(row, lam)) for row in M)

    def root_coordinates(self, lam: Sequence[int]) -> tuple[Fraction, ...]:
        """Coordinates of a weight in the simple-root basis (rational)."""
        den, v = self.root_coordinates_scaled(lam)
        return tuple(Fraction(x, den) for x in v)

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """(varpi_i, varpi_j) = (A^{-1} D)_{ij}, D = diag(|alpha_j|^2 / 2)."""
        A = [[Fraction(x) for x in row] for row in self.cartan]
        inv = _inverse(A)
        return tuple(
            tuple(inv[i][j] * Fraction(self.lengths[j], 2) for j in range(self.rank))
            for i in range(self.rank)
        )

    @cached_property
    def gram_scaled(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        """Integer Gram matrix N*G together with the scale N."""
        den = 1
        for row in self.gram:
            for x in row:
                den = math.lcm(den, x.denominator)
        return den, tuple(tuple(int(x * den) for x in row) for row in self.gram)

    def inner(self, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
        G = self.gram
        r = self.rank
        return sum((G[i][j] * lam[i] * mu[j] for i in range(r) for j in range(r) if lam[i] and mu[j]), Fraction(0))

    def pairing(self, lam: Sequence[int], k: int) -> int:
        """<lam, beta_k^vee> for the k-th positive root."""
        row = self.coroots[k]
        return sum(a * b for a, b in zip(row, lam))

    # -- Weyl group -------------------------------------------------------
    def reflect(self, lam: Sequence[int], i: int) -> Weight:
        c = lam[i]
        if c == 0:
            return tuple(lam)
        a = self.cartan[i]
        return tuple(x - c * y for x, y in zip(lam, a))

    def stabilizer_order(self, lam: Sequence[int]) -> int:
        """Order of the parabolic subgroup fixing a dominant weight."""
        zero = [i for i in range(self.rank) if lam[i] == 0]
        return subdiagram_weyl_order(self.cartan, zero)

    def orbit_size(self, lam: Sequence[int]) -> int:
        dom, _ = dominant_representative(self, lam)
        return self.weyl_order // self.stabilizer_order(dom)


def _inverse(M: list[list[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(M)
    aug = [list(M[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _cartan_from(edges, lengths) -> list[list[int]]:
    n = len(lengths)
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2
    for i, j in edges:
        m = max(lengths[i], lengths[j])
        A[i][j] = -m // lengths[j]
        A[j][i] = -m // lengths[i]
    return A


@lru_cache(maxsize=None)
def build_root_system(label: str, rank: int | None = None) -> RootSystem:
    """Build a (possibly product) root system from a label like "E7" or "D5xA3".

    ``build_root_system("E", 7)`` is accepted as well.
    """
    if rank is not None:
        label = f"{label}{rank}"
    comps = parse_components(label)
    return product_system(tuple(comps))


@lru_cache(maxsize=None)
def product_system(comps: tuple[tuple[str, int], ...]) -> RootSystem:
    total = sum(n for _, n in comps)
    A = [[0] * total for _ in range(total)]
    lengths: list[int] = []
    off = 0
    for letter, n in comps:
        edges, lens = _simple_data(letter, n)
        sub = _cartan_from(edges, lens)
        for i in range(n):
            for j in range(n):
                A[off + i][off + j] = sub[i][j]
        lengths.extend(lens)
        off += n
    return RootSystem(tuple(comps), tuple(tuple(r) for r in A), tuple(lengths))


# -- classification of Cartan matrices -------------------------------------

def connected_components(cartan: Sequence[Sequence[int]], nodes: Sequence[int]) -> list[list[int]]:
    nodes = list(nodes)
    seen: set[int] = set()
    comps = []
    for start in nodes:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in nodes:
                if w not in seen and cartan[v][w] != 0:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def classify_connected(cartan: Sequence[Sequence[int]], nodes: Sequence[int]) -> tuple[str, int]:
    """Identify the simple type of a connected sub-Cartan matrix."""
    nodes = list(nodes)
    n = len(nodes)
    sub = [[cartan[i][j] for j in nodes] for i in nodes]
    prod = [sub[i][j] * sub[j][i] for i in range(n) for j in range(i + 1, n)]
    if 3 in prod:
        return ("G", 2)
    if 2 in prod:
        if n == 2:
            return ("B", 2)
        if n == 4:
            i, j = next((i, j) for i in range(n) for j in range(n) if i != j and sub[i][j] * sub[j][i] == 2)
            deg = lambda v: sum(1 for w in range(n) if w != v and sub[v][w] != 0)
            if deg(i) == 2 and deg(j) == 2:
                return ("F", 4)
        # B_n: the end node of the double bond is short (it has the -2 entry).
        i, j = next((i, j) for i in range(n) for j in range(n) if i != j and sub[i][j] * sub[j][i] == 2)
        deg = lambda v: sum(1 for w in range(n) if w != v and sub[v][w] != 0)
        end = i if deg(i) == 1 else j
        other = j if end == i else i
        # sub[short][long] = -1, sub[long][short] = -2
        return ("B", n) if sub[other][end] == -2 else ("C", n)
    degs = [sum(1 for w in range(n) if w != v and sub[v][w] != 0) for v in range(n)]
    if max(degs, default=0) <= 2:
        return ("A", n)
    if n == 4:
        return ("D", 4)
    # branch node: arm lengths decide D vs E
    b = degs.index(3)
    arms = []
    for w in range(n):
        if w != b and sub[b][w] != 0:
            length, prev, cur = 1, b, w
            while True:
                nbrs = [u for u in range(n) if u != cur and u != prev and sub[cur][u] != 0]
                if not nbrs:
                    break
                prev, cur = cur, nbrs[0]
                length += 1
            arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms[:2] == [1, 2] and n in (6, 7, 8):
        return ("E", n)
    raise RootSystemError(f"unrecognized Cartan matrix on nodes {nodes}")


def subdiagram_weyl_order(cartan: Sequence[Sequence[int]], nodes: Sequence[int]) -> int:
    if not nodes:
        return 1
    return math.prod(
        simple_weyl_order(*classify_connected(cartan, comp)) for comp in connected_components(cartan, nodes)
    )


def bourbaki_order(cartan: Sequence[Sequence[int]], nodes: Sequence[int], letter: str, n: int,
                   priority: Sequence[int] | None = None) -> list[int]:
    """Order ``nodes`` so that their Cartan submatrix equals the Bourbaki one.

    Among matching orders (diagram automorphisms) the one that is
    lexicographically smallest in ``priority`` rank is returned.
    """
    target = product_system(((letter, n),)).cartan
    nodes = list(nodes)
    rank_of = {v: (priority.index(v) if priority is not None else v) for v in nodes}
    cands = sorted(nodes, key=lambda v: rank_of[v])
    chosen: list[int] = []

    def extend() -> bool:
        k = len(chosen)
        if k == n:
            return True
        for v in cands:
            if v in chosen:
                continue
            if cartan[v][v] != 2:
                continue
            if all(cartan[chosen[i]][v] == target[i][k] and cartan[v][chosen[i]] == target[k][i] for i in range(k)):
                chosen.append(v)
                if extend():
                    return True
                chosen.pop()
        return False

    if not extend():
        raise RootSystemError(f"nodes {nodes} do not form type {letter}{n}")
    return chosen


# -- Weyl group actions ---------------------------------------------------

def is_dominant(lam: Sequence[int]) -> bool:
    return all(x >= 0 for x in lam)


def dominant_representative(rs: RootSystem, lam: Sequence[int]) -> tuple[Weight, int]:
    """Return the dominant weight in the W-orbit of lam and the parity (0 even, 1 odd)
    of a Weyl word carrying lam to it."""
    lam = list(lam)
    A = rs.cartan
    parity = 0
    r = rs.rank
    while True:
        for i in range(r):
            c = lam[i]
            if c < 0:
                row = A[i]
                for j in range(r):
                    lam[j] -= c * row[j]
                parity ^= 1
                break
        else:
            return tuple(lam), parity


def weyl_orbit(rs: RootSystem, lam: Sequence[int], budget: int | None = None) -> set[Weight]:
    """Full W-orbit of lam by simple-reflection closure."""
    limit = budgets().orbit if budget is None else budget
    dom, _ = dominant_representative(rs, lam)
    size = rs.weyl_order // rs.stabilizer_order(dom)
    if size > limit:
        raise BudgetError(f"orbit of {dom} in {rs.name} has {size} elements (budget {limit})")
    return set(iter_orbit(rs, dom))


def iter_orbit(rs: RootSystem, dom: Weight) -> Iterator[Weight]:
    """Yield each element of the orbit of a dominant weight once.

    Walks downward: from mu only reflections with mu[i] > 0 are applied, so
    each new weight is strictly lower and a per-level set suffices.
    """
    r = rs.rank
    A = rs.cartan
    level = {tuple(dom)}
    while level:
        yield from level
        nxt = set()
        for mu in level:
            for i in range(r):
                c = mu[i]
                if c > 0:
                    row = A[i]
                    nxt.add(tuple(x - c * y for x, y in zip(mu, row)))
        level = nxt


def dominant_weights_below(rs: RootSystem, lam: Weight, budget: int | None = None) -> dict[Weight, int]:
    """Dominant mu <= lam (root order), mapped to the height of lam - mu."""
    limit = budgets().dominant if budget is None else budget
    roots = rs.positive_roots_as_weights
    heights = [sum(b) for b in rs.positive_roots]
    out = {tuple(lam): 0}
    frontier = [tuple(lam)]
    while frontier:
        nxt = []
        for mu in frontier:
            h0 = out[mu]
            for a, h in zip(roots, heights):
                nu = tuple(x - y for x, y in zip(mu, a))
                if min(nu) < 0 or nu in out:
                    continue
                out[nu] = h0 + h
                nxt.append(nu)
                if len(out) > limit:
                    raise BudgetError(f"more than {limit} dominant weights below {lam} in {rs.name}")
        frontier = nxt
    return out


def extended_diagram(rs: RootSystem) -> dict:
    """Extended Dynkin diagram: node 0 is -theta, nodes 1..r the simple roots."""
    if not rs.is_simple:
        raise RootSystemError("extended diagram is defined for simple types")
    r = rs.rank
    theta = rs.highest_root
    theta_w = rs.root_to_weight(theta)
    k_theta = rs.positive_roots.index(theta)
    theta_co = rs.coroots[k_theta]
    # <-theta, alpha_i^vee> = -theta_w[i];  <alpha_i, theta^vee> = sum_j theta_co[j] * A[i][j]
    ext = [[0] * (r + 1) for _ in range(r + 1)]
    ext[0][0] = 2
    for i in range(r):
        ext[0][i + 1] = -theta_w[i]
        ext[i + 1][0] = -sum(theta_co[j] * rs.cartan[i][j] for j in range(r))
        for j in range(r):
            ext[i + 1][j + 1] = rs.cartan[i][j]
    nodes = [tuple(-c for c in theta)] + [tuple(int(i == j) for j in range(r)) for i in range(r)]
    edges = [(i, j) for i in range(r + 1) for j in range(i + 1, r + 1) if ext[i][j] != 0]
    if r == 1:
        edges = [(0, 1)]
    return {
        "type": rs.name,
        "nodes": nodes,
        "cartan": ext,
        "edges": edges,
        "marks": [1] + list(theta),
    }
