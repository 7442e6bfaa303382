"""The finite Weyl group: elements, lengths, reduced words, supports, sigma-action.

Elements are stored by their canonical form: the tuple of images of all
simple roots (an integer matrix determining the permutation of the roots).
Instances are interned per root system, so there are at most |W0| of them
alive and every derived quantity (length, inverse, reduced word, support,
root images) is computed once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from weakref import WeakKeyDictionary

from . import _linalg
from .cartan import Coweight, Root, RootSystem
from .errors import CapExceeded

W0_CAP_DEFAULT = 10 ** 6

_INTERN: "WeakKeyDictionary[RootSystem, dict]" = WeakKeyDictionary()


def _intern(system: RootSystem, images: tuple[Root, ...]) -> "FiniteWeylElement":
    table = _INTERN.get(system)
    if table is None:
        table = {}
        _INTERN[system] = table
    element = table.get(images)
    if element is None:
        element = FiniteWeylElement(system, images)
        table[images] = element
    return element


class FiniteWeylElement:
    """An element of W0, canonically the tuple of images of the simple roots."""

    __slots__ = ("system", "images", "_length", "_inverse", "_support",
                 "_word", "_pos_images", "_inv_positive", "__weakref__")

    def __init__(self, system: RootSystem, images: tuple[Root, ...]):
        self.system = system
        self.images = images
        self._length: int | None = None
        self._inverse: "FiniteWeylElement | None" = None
        self._support: frozenset[int] | None = None
        self._word: tuple[int, ...] | None = None
        self._pos_images: tuple[Root, ...] | None = None
        self._inv_positive: tuple[bool, ...] | None = None

    @classmethod
    def identity(cls, system: RootSystem) -> "FiniteWeylElement":
        return _intern(system, tuple(
            tuple(1 if j == i else 0 for j in range(system.rank))
            for i in range(system.rank)
        ))

    @classmethod
    def simple(cls, system: RootSystem, i: int) -> "FiniteWeylElement":
        cartan = system.cartan_matrix
        images = []
        for j in range(system.rank):
            coords = [1 if k == j else 0 for k in range(system.rank)]
            coords[i] -= cartan[i][j]  # s_i(alpha_j) = alpha_j - <alpha_j, alpha_i^v> alpha_i
            images.append(tuple(coords))
        return _intern(system, tuple(images))

    def __eq__(self, other) -> bool:
        return self is other or (
            isinstance(other, FiniteWeylElement)
            and self.images == other.images and self.system is other.system
        )

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        word = reduced_word(self)
        return "W0<e>" if not word else "W0<" + " ".join(f"s{i+1}" for i in word) + ">"

    def act_on_root(self, root) -> Root:
        cols = self.images
        n = self.system.rank
        out = [0] * n
        for j, coeff in enumerate(root):
            if coeff:
                col = cols[j]
                for k in range(n):
                    out[k] += coeff * col[k]
        return tuple(out)

    def __mul__(self, other: "FiniteWeylElement") -> "FiniteWeylElement":
        return _intern(
            self.system, tuple(self.act_on_root(img) for img in other.images)
        )

    def inverse(self) -> "FiniteWeylElement":
        if self._inverse is None:
            n = self.system.rank
            matrix = tuple(tuple(self.images[j][i] for j in range(n)) for i in range(n))
            inv = _linalg.invert(matrix)
            images = tuple(
                tuple(int(inv[i][j]) for i in range(n)) for j in range(n)
            )
            self._inverse = _intern(self.system, images)
            self._inverse._inverse = self
        return self._inverse

    def act_on_coweight(self, mu) -> Coweight:
        """w·mu, defined so that <w(a), w·mu> = <a, mu>."""
        inv = self.inverse()
        return tuple(self.system.pair(inv.images[i], mu) for i in range(self.system.rank))

    def act_on_int_coweight(self, mu) -> tuple[int, ...]:
        """Integer fast path of the coweight action."""
        inv_images = self.inverse().images
        return tuple(sum(a * m for a, m in zip(row, mu)) for row in inv_images)

    @property
    def length(self) -> int:
        if self._length is None:
            self._length = sum(1 for img in self.positive_images() if sum(img) < 0)
        return self._length

    def positive_images(self) -> tuple[Root, ...]:
        """Images of the positive roots, aligned with system.positive_roots."""
        if self._pos_images is None:
            self._pos_images = tuple(
                self.act_on_root(alpha) for alpha in self.system.positive_roots
            )
        return self._pos_images

    def inverse_positive(self) -> tuple[bool, ...]:
        """Whether w^{-1}(alpha) is positive, per positive root alpha."""
        if self._inv_positive is None:
            inv = self.inverse()
            self._inv_positive = tuple(sum(img) > 0 for img in inv.positive_images())
        return self._inv_positive

    def is_identity(self) -> bool:
        return self.length == 0

    def right_descents(self) -> list[int]:
        """Indices i with w(alpha_i) negative, i.e. length(w s_i) < length(w)."""
        return [i for i, img in enumerate(self.images) if sum(img) < 0]

    def sort_key(self):
        return (self.length, self.images)


def compose(u: FiniteWeylElement, v: FiniteWeylElement) -> FiniteWeylElement:
    return u * v


def act_on_root(w: FiniteWeylElement, root) -> Root:
    return w.act_on_root(root)


def act_on_coweight(w: FiniteWeylElement, mu) -> Coweight:
    return w.act_on_coweight(mu)


def reduced_word(w: FiniteWeylElement, pick: str = "smallest") -> tuple[int, ...]:
    """A reduced word for w as a tuple of 0-based simple indices.

    Deterministic: strip the smallest-index right descent at each step (or the
    largest, used by tests to confirm support is word-independent).  The
    returned letters multiply left-to-right to w.
    """
    if pick == "smallest" and w._word is not None:
        return w._word
    select = min if pick == "smallest" else max
    letters: list[int] = []
    current = w
    while True:
        descents = current.right_descents()
        if not descents:
            break
        i = select(descents)
        letters.append(i)
        current = current * FiniteWeylElement.simple(w.system, i)
    word = tuple(reversed(letters))
    if pick == "smallest":
        w._word = word
    return word


def support(w: FiniteWeylElement) -> frozenset[int]:
    """Simple indices appearing in any (equivalently each) reduced word."""
    if w._support is None:
        w._support = frozenset(reduced_word(w))
    return w._support


def longest_element(system: RootSystem) -> FiniteWeylElement:
    """w0, computed by anti-dominantizing a strictly dominant vector."""
    mu = tuple(Fraction(1) for _ in range(system.rank))
    w = FiniteWeylElement.identity(system)
    while True:
        i = next((k for k in range(system.rank) if mu[k] > 0), None)
        if i is None:
            return w
        s = FiniteWeylElement.simple(system, i)
        mu = s.act_on_coweight(mu)
        w = s * w


@lru_cache(maxsize=None)
def _all_elements(system: RootSystem, cap: int) -> tuple[FiniteWeylElement, ...]:
    order = system.weyl_order()
    if order > cap:
        raise CapExceeded(f"|W0| = {order} exceeds the cap {cap}", estimate=order)
    identity = FiniteWeylElement.identity(system)
    seen = {identity.images}
    result = [identity]
    frontier = [identity]
    simples = [FiniteWeylElement.simple(system, i) for i in range(system.rank)]
    while frontier:
        nxt = {}
        for w in frontier:
            for s in simples:
                cand = w * s
                if cand.images not in seen:
                    nxt[cand.images] = cand
        frontier = [nxt[k] for k in sorted(nxt)]
        seen.update(nxt)
        result.extend(frontier)
    assert len(result) == order
    return tuple(result)


def enumerate_w0(system: RootSystem, cap: int = W0_CAP_DEFAULT):
    """All elements of W0, once each, by breadth-first closure (deterministic order)."""
    return iter(_all_elements(system, cap))


@dataclass(frozen=True)
class DiagramAutomorphism:
    """A Cartan-matrix-preserving permutation of the simple indices (the sigma-action)."""

    system: RootSystem
    perm: tuple[int, ...]
    order: int = field(init=False)

    def __post_init__(self):
        n = self.system.rank
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"{self.perm} is not a permutation of 0..{n - 1}")
        cartan = self.system.cartan_matrix
        for i in range(n):
            for j in range(n):
                if cartan[self.perm[i]][self.perm[j]] != cartan[i][j]:
                    raise ValueError("permutation does not preserve the Cartan matrix")
        object.__setattr__(self, "order", self._order())

    def _order(self) -> int:
        result = 1
        seen = set()
        for start in range(len(self.perm)):
            if start in seen:
                continue
            size = 0
            i = start
            while i not in seen:
                seen.add(i)
                i = self.perm[i]
                size += 1
            result = lcm(result, size)
        return result

    @classmethod
    def identity(cls, system: RootSystem) -> "DiagramAutomorphism":
        return cls(system, tuple(range(system.rank)))

    def is_identity(self) -> bool:
        return all(self.perm[i] == i for i in range(len(self.perm)))

    def inverse(self) -> "DiagramAutomorphism":
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return DiagramAutomorphism(self.system, tuple(inv))

    def index(self, i: int) -> int:
        return self.perm[i]

    def orbit(self, i: int) -> frozenset[int]:
        out = {i}
        j = self.perm[i]
        while j not in out:
            out.add(j)
            j = self.perm[j]
        return frozenset(out)

    def root(self, root) -> Root:
        out = [0] * len(self.perm)
        for i, coeff in enumerate(root):
            out[self.perm[i]] = coeff
        return tuple(out)

    def coweight(self, mu) -> Coweight:
        out = [0] * len(self.perm)
        for i, coeff in enumerate(mu):
            out[self.perm[i]] = coeff
        return tuple(out)

    def weyl(self, w: FiniteWeylElement) -> FiniteWeylElement:
        """The automorphism of W0 sending s_i to s_{perm(i)}; preserves length."""
        images: list[Root] = [()] * len(self.perm)
        for i in range(len(self.perm)):
            images[self.perm[i]] = self.root(w.images[i])
        return _intern(self.system, tuple(images))

    def component_image(self, component_index: int) -> int:
        start = self.system.components[component_index].start
        return self.system.component_of_index(self.perm[start])

    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Matrix of the coweight action in the fundamental-coweight basis."""
        n = len(self.perm)
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            m[self.perm[i]][i] = Fraction(1)
        return tuple(tuple(row) for row in m)


def apply_sigma(sigma: DiagramAutomorphism, w: FiniteWeylElement) -> FiniteWeylElement:
    return sigma.weyl(w)


def sigma_support(w: FiniteWeylElement, sigma: DiagramAutomorphism) -> frozenset[int]:
    """Minimal sigma-stable set of simple indices containing the support."""
    out: set[int] = set()
    for i in support(w):
        out |= sigma.orbit(i)
    return frozenset(out)


def weyl_matrix(w: FiniteWeylElement) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix of the coweight action of w in the fundamental-coweight basis."""
    n = w.system.rank
    cols = [
        w.act_on_coweight(tuple(Fraction(1) if k == j else Fraction(0) for k in range(n)))
        for j in range(n)
    ]
    return tuple(tuple(Fraction(cols[j][i]) for j in range(n)) for i in range(n))
