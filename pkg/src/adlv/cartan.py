"""Exact root-system core: Cartan data, roots, coweight lattices, root subsets.

Conventions used throughout the package:

- Roots are integer tuples in the simple-root basis, so ``alpha_i`` is the
  i-th unit vector and a root is positive iff its coordinates are >= 0.
- Coweights are tuples of ints/Fractions in the fundamental-coweight basis,
  so ``pair(alpha_i, mu) == mu[i]`` and dominance is a sign check.
- ``cartan[i][j]`` is the pairing of ``alpha_j`` against the coroot
  ``alpha_i^v``; consequently ``alpha_i^v`` has fundamental-coweight
  coordinates ``cartan[i]``.

Reducible systems are ordered direct sums, e.g. descriptor ``"A2+A2"``.

>>> system = RootSystem.from_descriptor("A2")
>>> sorted(system.positive_roots)
[(0, 1), (1, 0), (1, 1)]
>>> system.inverse_cartan[0]
(Fraction(2, 3), Fraction(1, 3))
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _linalg
from .errors import NotationError

Root = tuple[int, ...]
Coweight = tuple  # int/Fraction entries, fundamental-coweight basis

# positive-root counts and Weyl group orders per irreducible type, keyed by letter
_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def _chain(rank: int) -> list[list[int]]:
    m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i in range(rank - 1):
        m[i][i + 1] = -1
        m[i + 1][i] = -1
    return m


def cartan_matrix(type_label: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of an irreducible type in Bourbaki numbering."""
    lo, hi = _RANK_RANGE.get(type_label, (None, None))
    if lo is None or rank < lo or (hi is not None and rank > hi):
        raise NotationError(f"invalid Dynkin type {type_label}{rank}")
    m = _chain(rank)
    if type_label == "B":
        m[rank - 1][rank - 2] = -2  # alpha_rank is short
    elif type_label == "C":
        m[rank - 2][rank - 1] = -2  # alpha_rank is long
    elif type_label == "D":
        m[rank - 1][rank - 2] = m[rank - 2][rank - 1] = 0
        m[rank - 1][rank - 3] = m[rank - 3][rank - 1] = -1
    elif type_label == "E":
        # node 2 hangs off node 4 (1-based); the chain is 1-3-4-...-rank
        m[0][1] = m[1][0] = 0
        m[1][2] = m[2][1] = 0
        m[0][2] = m[2][0] = -1
        m[1][3] = m[3][1] = -1
    elif type_label == "F":
        m[2][1] = -2  # alpha_3, alpha_4 short
    elif type_label == "G":
        m[0][1] = -3  # alpha_1 short
    return tuple(tuple(row) for row in m)


def _generate_positive_roots(cartan) -> tuple[Root, ...]:
    """Closure of the simple roots under root-string addition."""
    rank = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    roots: set[Root] = set(simple)
    level = list(simple)
    while level:
        nxt = []
        for beta in level:
            for i in range(rank):
                # alpha_i-string through beta: q = p - <beta, alpha_i^v> > 0 iff beta+alpha_i is a root
                down = list(beta)
                p = 0
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(cartan[i][j] * beta[j] for j in range(rank))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    cand = tuple(up)
                    if cand not in roots:
                        roots.add(cand)
                        nxt.append(cand)
        level = nxt
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


@dataclass(frozen=True)
class Component:
    """One irreducible summand and its slice of the global index range."""

    type_label: str
    rank: int
    start: int  # global index of its first simple root

    @property
    def indices(self) -> range:
        return range(self.start, self.start + self.rank)


class RootSystem:
    """A reduced root system, possibly a direct sum of irreducible ones.

    Instances are immutable after construction and compared by identity;
    build one per run and share it freely.
    """

    def __init__(self, components: list[tuple[str, int]]):
        if not components:
            raise NotationError("empty root-system descriptor")
        comps = []
        start = 0
        for type_label, rank in components:
            comps.append(Component(type_label, rank, start))
            start += rank
        self.components: tuple[Component, ...] = tuple(comps)
        self.rank: int = start
        self.type_label: str = "+".join(f"{c.type_label}{c.rank}" for c in self.components)

        blocks = [cartan_matrix(c.type_label, c.rank) for c in self.components]
        cartan = [[0] * self.rank for _ in range(self.rank)]
        for comp, block in zip(self.components, blocks):
            for i in range(comp.rank):
                for j in range(comp.rank):
                    cartan[comp.start + i][comp.start + j] = block[i][j]
        self.cartan_matrix: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in cartan)
        self.inverse_cartan: tuple[tuple[Fraction, ...], ...] = _linalg.invert(self.cartan_matrix)

        pos: list[Root] = []
        for comp, block in zip(self.components, blocks):
            for root in _generate_positive_roots(block):
                embedded = [0] * self.rank
                for i, coeff in enumerate(root):
                    embedded[comp.start + i] = coeff
                pos.append(tuple(embedded))
        pos.sort(key=lambda r: (sum(r), r))
        self.positive_roots: tuple[Root, ...] = tuple(pos)
        self.all_roots: tuple[Root, ...] = tuple(pos) + tuple(
            tuple(-c for c in r) for r in pos
        )
        self._root_set = frozenset(self.all_roots)
        self.highest_roots: tuple[Root, ...] = tuple(
            max((r for r in pos if any(r[i] for i in comp.indices)),
                key=lambda r: (sum(r), r))
            for comp in self.components
        )

    def __repr__(self) -> str:
        return f"RootSystem({self.type_label!r})"

    @classmethod
    def from_descriptor(cls, descriptor: str) -> "RootSystem":
        """Parse descriptors like ``"A2"``, ``"B3"``, ``"A2+A2"``."""
        parts = []
        for chunk in descriptor.strip().split("+"):
            m = re.fullmatch(r"([A-G])(\d+)", chunk.strip())
            if not m:
                raise NotationError(f"bad root-system descriptor {chunk!r}")
            parts.append((m.group(1), int(m.group(2))))
        return cls(parts)

    # -- membership and signs ------------------------------------------------

    def is_root(self, coords) -> bool:
        return tuple(coords) in self._root_set

    def is_positive(self, root: Root) -> bool:
        if root not in self._root_set:
            raise ValueError(f"{root} is not a root")
        return sum(root) > 0

    def negate(self, root: Root) -> Root:
        return tuple(-c for c in root)

    def component_of_index(self, i: int) -> int:
        for ci, comp in enumerate(self.components):
            if i in comp.indices:
                return ci
        raise ValueError(f"index {i} out of range")

    # -- pairings and lattices -----------------------------------------------

    def pair(self, root, mu) -> Fraction:
        """Pairing <root, mu> of a root with a coweight; bilinear, exact."""
        if len(root) != self.rank or len(mu) != self.rank:
            raise ValueError("dimension mismatch")
        return sum((Fraction(a) * Fraction(m) for a, m in zip(root, mu)), Fraction(0))

    def coroot_coordinates(self, mu) -> tuple[Fraction, ...]:
        """Coordinates c with mu = sum_i c_i * alpha_i^v (inverse-Cartan transform)."""
        if len(mu) != self.rank:
            raise ValueError("dimension mismatch")
        return tuple(
            sum((self.inverse_cartan[j][i] * Fraction(mu[j]) for j in range(self.rank)),
                Fraction(0))
            for i in range(self.rank)
        )

    def in_coweight_lattice(self, mu) -> bool:
        return all(Fraction(c).denominator == 1 for c in mu)

    def in_coroot_lattice(self, mu) -> bool:
        return all(c.denominator == 1 for c in self.coroot_coordinates(mu))

    def is_dominant(self, mu) -> bool:
        return all(Fraction(c) >= 0 for c in mu)

    def simple_coroot(self, i: int) -> Coweight:
        """alpha_i^v in fundamental-coweight coordinates (row i of the Cartan matrix)."""
        return self.cartan_matrix[i]

    def coroot_of(self, root: Root) -> tuple[Fraction, ...]:
        """The coroot root^v = 2*root/(root,root) in fundamental-coweight coordinates."""
        d = self._symmetrizer()
        gram_row = [
            sum(Fraction(root[i]) * d[i] * self.cartan_matrix[i][j] for i in range(self.rank))
            for j in range(self.rank)
        ]
        norm = sum(gram_row[j] * root[j] for j in range(self.rank))
        if norm == 0:
            raise ValueError(f"{root} is not a root")
        return tuple(2 * gram_row[j] / norm for j in range(self.rank))

    @lru_cache(maxsize=None)
    def _symmetrizer(self) -> tuple[Fraction, ...]:
        """d with d_i * cartan[i][j] symmetric, positive; found by graph propagation."""
        d = [Fraction(0)] * self.rank
        for comp in self.components:
            d[comp.start] = Fraction(1)
            pending = [comp.start]
            while pending:
                i = pending.pop()
                for j in comp.indices:
                    if d[j] == 0 and self.cartan_matrix[i][j] != 0:
                        d[j] = d[i] * self.cartan_matrix[i][j] / self.cartan_matrix[j][i]
                        pending.append(j)
        return tuple(d)

    # -- base alcove geometry --------------------------------------------------

    @lru_cache(maxsize=None)
    def base_alcove_vertices(self) -> tuple[tuple[tuple[Fraction, ...], ...], ...]:
        """Per component: the vertices 0 and fundamental-coweight/mark of its base simplex."""
        out = []
        for comp, theta in zip(self.components, self.highest_roots):
            vertices = [tuple(Fraction(0) for _ in range(self.rank))]
            for i in comp.indices:
                mark = theta[i]
                vertices.append(tuple(
                    Fraction(1, mark) if j == i else Fraction(0) for j in range(self.rank)
                ))
            out.append(tuple(vertices))
        return tuple(out)

    @lru_cache(maxsize=None)
    def base_alcove_barycenter(self) -> tuple[Fraction, ...]:
        """Barycenter of the base alcove (product of per-component simplex barycenters)."""
        coords = [Fraction(0)] * self.rank
        for comp, vertices in zip(self.components, self.base_alcove_vertices()):
            for vertex in vertices:
                for i in comp.indices:
                    coords[i] += vertex[i]
            for i in comp.indices:
                coords[i] /= len(vertices)
        return tuple(coords)

    # -- classical invariants ------------------------------------------------

    def positive_root_count(self) -> int:
        return len(self.positive_roots)

    def weyl_order(self) -> int:
        order = 1
        for comp in self.components:
            order *= _irreducible_weyl_order(comp.type_label, comp.rank)
        return order


def _irreducible_weyl_order(type_label: str, rank: int) -> int:
    import math

    if type_label == "A":
        return math.factorial(rank + 1)
    if type_label in ("B", "C"):
        return 2 ** rank * math.factorial(rank)
    if type_label == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(type_label, rank)]


def classical_positive_count(type_label: str, rank: int) -> int:
    """Number of positive roots of an irreducible type (textbook values)."""
    if type_label == "A":
        return rank * (rank + 1) // 2
    if type_label in ("B", "C"):
        return rank * rank
    if type_label == "D":
        return rank * (rank - 1)
    return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[
        (type_label, rank)
    ]


# -- root subsets (closed / radical / parabolic) -------------------------------


@dataclass(frozen=True)
class SubsetProperties:
    closed: bool
    radical: bool
    parabolic: bool


def subset_predicates(system: RootSystem, members) -> SubsetProperties:
    """Classify a subset of the roots.

    closed: alpha, beta in the set and alpha+beta a root implies alpha+beta in it;
    radical: disjoint from its negation; parabolic: union with its negation is all roots.
    """
    psi = frozenset(tuple(m) for m in members)
    for m in psi:
        if m not in system._root_set:
            raise ValueError(f"{m} is not a root")
    closed = True
    for a in psi:
        for b in psi:
            s = tuple(x + y for x, y in zip(a, b))
            if s in system._root_set and s not in psi:
                closed = False
                break
        if not closed:
            break
    neg = frozenset(system.negate(m) for m in psi)
    radical = not (psi & neg)
    parabolic = (psi | neg) == system._root_set
    return SubsetProperties(closed, radical, parabolic)


def sandwich_positivizer(system: RootSystem, psi_r, psi_p):
    """Find w with w(psi_r) inside the positive roots inside w(psi_p).

    psi_r must be radical closed, psi_p parabolic closed, psi_r a subset of
    psi_p.  Brute-force over the finite Weyl group (correctness first); the
    statement guarantees a witness exists, so exhausting the group without
    one is an internal error.
    """
    from .errors import InternalCheckError
    from .weyl import enumerate_w0

    psi_r = frozenset(tuple(m) for m in psi_r)
    psi_p = frozenset(tuple(m) for m in psi_p)
    if not psi_r <= psi_p:
        raise ValueError("psi_r must be contained in psi_p")
    props_r = subset_predicates(system, psi_r)
    if not (props_r.radical and props_r.closed):
        raise ValueError("psi_r must be radical and closed")
    props_p = subset_predicates(system, psi_p)
    if not (props_p.parabolic and props_p.closed):
        raise ValueError("psi_p must be parabolic and closed")
    positive = frozenset(system.positive_roots)
    for w in enumerate_w0(system):
        image_r = {w.act_on_root(m) for m in psi_r}
        if not image_r <= positive:
            continue
        image_p = {w.act_on_root(m) for m in psi_p}
        if positive <= image_p:
            return w
    raise InternalCheckError("no sandwich positivizer found; contradicts the classification")
