"""The extended affine (Iwahori-Weyl) group: coweight lattice semidirect W0.

An element x = t^mu * w is a pair (integral coweight, finite Weyl element).
This module provides the group law, the Iwahori-Matsumoto length, the class
map to the coweight-modulo-coroot quotient with its sigma-coinvariants, the
Newton point, the base-alcove stabilizer and the affine sigma-support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _linalg
from .cartan import RootSystem
from .errors import CapExceeded, InternalCheckError
from .weyl import (
    DiagramAutomorphism,
    FiniteWeylElement,
    enumerate_w0,
    weyl_matrix,
)

ENUM_CAP_DEFAULT = 500_000


def _as_int_tuple(mu) -> tuple[int, ...]:
    if all(type(c) is int for c in mu):
        return tuple(mu)
    out = []
    for c in mu:
        f = Fraction(c)
        if f.denominator != 1:
            raise ValueError(f"translation coordinate {c} is not integral")
        out.append(int(f))
    return tuple(out)


class AffineElement:
    """x = t^translation * finite, with integral fundamental-coweight coordinates."""

    __slots__ = ("translation", "finite", "_length")

    def __init__(self, translation, finite: FiniteWeylElement):
        self.translation = _as_int_tuple(translation)
        self.finite = finite
        self._length: int | None = None

    @property
    def system(self) -> RootSystem:
        return self.finite.system

    @classmethod
    def identity(cls, system: RootSystem) -> "AffineElement":
        return cls((0,) * system.rank, FiniteWeylElement.identity(system))

    @classmethod
    def from_translation(cls, system: RootSystem, mu) -> "AffineElement":
        return cls(mu, FiniteWeylElement.identity(system))

    @classmethod
    def from_finite(cls, w: FiniteWeylElement) -> "AffineElement":
        return cls((0,) * w.system.rank, w)

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        # (t^a u)(t^b v) = t^{a + u.b} uv
        moved = self.finite.act_on_int_coweight(other.translation)
        translation = tuple(a + b for a, b in zip(self.translation, moved))
        return AffineElement(translation, self.finite * other.finite)

    def inverse(self) -> "AffineElement":
        w_inv = self.finite.inverse()
        moved = w_inv.act_on_int_coweight(self.translation)
        return AffineElement(tuple(-c for c in moved), w_inv)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AffineElement)
                and self.translation == other.translation
                and self.finite == other.finite)

    def __hash__(self) -> int:
        return hash((self.translation, self.finite.images))

    def __repr__(self) -> str:
        return f"Wt<t{list(self.translation)} {self.finite!r}>"

    def is_identity(self) -> bool:
        return all(c == 0 for c in self.translation) and self.finite.is_identity()

    @property
    def length(self) -> int:
        if self._length is None:
            self._length = _im_length(self)
        return self._length

    def key(self):
        return (self.translation, self.finite.images)

    def sort_key(self):
        return (self.length, self.translation, self.finite.images)

    def act_on_point(self, point) -> tuple[Fraction, ...]:
        """The affine action on the apartment: x(p) = finite(p) + translation."""
        moved = self.finite.act_on_coweight(point)
        return tuple(Fraction(a) + b for a, b in zip(moved, self.translation))


def multiply(x: AffineElement, y: AffineElement) -> AffineElement:
    return x * y


def invert(x: AffineElement) -> AffineElement:
    return x.inverse()


def apply_sigma_affine(sigma: DiagramAutomorphism, x: AffineElement) -> AffineElement:
    return AffineElement(sigma.coweight(x.translation), sigma.weyl(x.finite))


def _im_length(x: AffineElement) -> int:
    """Iwahori-Matsumoto count of hyperplanes separating x(base alcove) from it."""
    total = 0
    mu = x.translation
    for alpha, positive in zip(x.system.positive_roots, x.finite.inverse_positive()):
        pairing = sum(a * m for a, m in zip(alpha, mu))
        total += abs(pairing) if positive else abs(pairing - 1)
    return total


def length(x: AffineElement) -> int:
    return x.length


# -- Kottwitz map ---------------------------------------------------------------


def _mod1(value: Fraction) -> Fraction:
    return value - (value.numerator // value.denominator)


@dataclass(frozen=True)
class KottwitzClass:
    """An element of the coweight-mod-coroot quotient, by fractional coroot coordinates."""

    system: RootSystem
    rep: tuple[Fraction, ...]

    @classmethod
    def from_translation(cls, system: RootSystem, mu) -> "KottwitzClass":
        coords = system.coroot_coordinates(mu)
        return cls(system, tuple(_mod1(c) for c in coords))

    @classmethod
    def zero(cls, system: RootSystem) -> "KottwitzClass":
        return cls(system, (Fraction(0),) * system.rank)

    def __add__(self, other: "KottwitzClass") -> "KottwitzClass":
        return KottwitzClass(
            self.system, tuple(_mod1(a + b) for a, b in zip(self.rep, other.rep))
        )

    def __neg__(self) -> "KottwitzClass":
        return KottwitzClass(self.system, tuple(_mod1(-a) for a in self.rep))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.rep)

    def sigma_image(self, sigma: DiagramAutomorphism) -> "KottwitzClass":
        # sigma permutes the simple coroots, hence the coroot coordinates
        out = [Fraction(0)] * len(self.rep)
        for i, c in enumerate(self.rep):
            out[sigma.index(i)] = c
        return KottwitzClass(self.system, tuple(out))

    def coinvariant(self, sigma: DiagramAutomorphism) -> tuple[Fraction, ...]:
        """Canonical representative of the class modulo the (1 - sigma) subgroup."""
        denom = _coinvariant_denominator(self.system, sigma)
        return min(tuple(_mod1(a + d) for a, d in zip(self.rep, delta)) for delta in denom)


@lru_cache(maxsize=None)
def kottwitz_group(system: RootSystem) -> tuple[KottwitzClass, ...]:
    """All elements of the finite quotient group, by closure from the generators."""
    generators = [
        KottwitzClass.from_translation(
            system, tuple(1 if j == i else 0 for j in range(system.rank))
        )
        for i in range(system.rank)
    ]
    seen = {KottwitzClass.zero(system)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                cand = g + h
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return tuple(sorted(seen, key=lambda k: k.rep))


@lru_cache(maxsize=None)
def _coinvariant_denominator(
    system: RootSystem, sigma: DiagramAutomorphism
) -> tuple[tuple[Fraction, ...], ...]:
    """The subgroup {g - sigma(g)} of the quotient, as a tuple of representatives."""
    group = kottwitz_group(system)
    generators = [g + (-(g.sigma_image(sigma))) for g in group]
    seen = {KottwitzClass.zero(system)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                cand = g + h
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return tuple(sorted(k.rep for k in seen))


def kottwitz(x: AffineElement) -> KottwitzClass:
    """The class of the translation part; a homomorphism killing the affine Weyl group."""
    return KottwitzClass.from_translation(x.system, x.translation)


# -- Newton map -----------------------------------------------------------------


def make_dominant(system: RootSystem, mu) -> tuple[tuple[Fraction, ...], FiniteWeylElement]:
    """(dominant representative, u) with u . mu dominant."""
    coords = [Fraction(c) for c in mu]
    u = FiniteWeylElement.identity(system)
    while True:
        i = next((k for k in range(system.rank) if coords[k] < 0), None)
        if i is None:
            return tuple(coords), u
        # s_i . mu = mu - <alpha_i, mu> alpha_i^v
        ci = coords[i]
        for j in range(system.rank):
            coords[j] -= ci * system.cartan_matrix[i][j]
        u = FiniteWeylElement.simple(system, i) * u


@dataclass(frozen=True)
class NewtonPoint:
    vector: tuple[Fraction, ...]
    dominant: tuple[Fraction, ...]

    @classmethod
    def zero(cls, system: RootSystem) -> "NewtonPoint":
        zero = (Fraction(0),) * system.rank
        return cls(zero, zero)

    def is_central(self) -> bool:
        return all(c == 0 for c in self.dominant)


def newton(x: AffineElement, sigma: DiagramAutomorphism,
           force_multiple: int = 1) -> NewtonPoint:
    """Average translation part of the first sigma-twisted power that is a pure
    translation; independent of which valid power is used (``force_multiple``
    demands a larger power, for the independence audit).

    The raw vector is only fixed by the twisted action; its dominant
    representative is genuinely sigma-invariant.
    """
    system = x.system
    twists = [x]
    for _ in range(sigma.order - 1):
        twists.append(apply_sigma_affine(sigma, twists[-1]))
    step = sigma.order * force_multiple
    cap = 2 * system.weyl_order() * step + 2
    z = x
    n = 1
    while n <= cap:
        if n % step == 0 and z.finite.is_identity():
            vector = tuple(Fraction(c, n) for c in z.translation)
            dominant, _ = make_dominant(system, vector)
            return NewtonPoint(vector, dominant)
        z = z * twists[n % sigma.order]
        n += 1
    raise InternalCheckError("Newton iteration did not terminate within the cap")


# -- base-alcove stabilizer and the affine simple reflections --------------------


@lru_cache(maxsize=None)
def omega_elements(system: RootSystem) -> tuple[AffineElement, ...]:
    """All length-zero elements, one per Kottwitz class, sorted by class representative."""
    barycenter = system.base_alcove_barycenter()
    out = []
    for w in enumerate_w0(system):
        moved = w.act_on_coweight(barycenter)
        mu = tuple(Fraction(b) - m for b, m in zip(barycenter, moved))
        if all(c.denominator == 1 for c in mu):
            candidate = AffineElement(mu, w)
            if candidate.length == 0:
                out.append(candidate)
    out.sort(key=lambda el: kottwitz(el).rep)
    if len(out) != len(kottwitz_group(system)):
        raise InternalCheckError("base-alcove stabilizer does not match the class group")
    return tuple(out)


def omega_of_kottwitz(system: RootSystem, kappa: KottwitzClass) -> AffineElement:
    for el in omega_elements(system):
        if kottwitz(el) == kappa:
            return el
    raise InternalCheckError(f"no length-zero element for class {kappa.rep}")


def omega_component(x: AffineElement) -> tuple[AffineElement, AffineElement]:
    """Decompose x = x_a * omega with omega the length-zero element of the same class."""
    omega = omega_of_kottwitz(x.system, kottwitz(x))
    return x * omega.inverse(), omega


@dataclass(frozen=True)
class AffineSimple:
    """One affine simple reflection: finite s_i or the extra node of a component."""

    index: int  # 0..rank-1 finite; rank + c for component c's affine node
    label: str
    element: AffineElement


@lru_cache(maxsize=None)
def affine_simples(system: RootSystem) -> tuple[AffineSimple, ...]:
    out = [
        AffineSimple(i, f"s{i + 1}", AffineElement.from_finite(
            FiniteWeylElement.simple(system, i)))
        for i in range(system.rank)
    ]
    single = len(system.components) == 1
    for ci, theta in enumerate(system.highest_roots):
        theta_coroot = system.coroot_of(theta)
        images = []
        for j in range(system.rank):
            alpha_j = tuple(1 if k == j else 0 for k in range(system.rank))
            coeff = theta_coroot[j]
            images.append(tuple(
                int(alpha_j[k] - coeff * theta[k]) for k in range(system.rank)
            ))
        s_theta = FiniteWeylElement(system, tuple(images))
        element = AffineElement(theta_coroot, s_theta)
        if element.length != 1:
            raise InternalCheckError("affine node reflection must have length 1")
        label = "S0" if single else f"S0@{ci + 1}"
        out.append(AffineSimple(system.rank + ci, label, element))
    return tuple(out)


@lru_cache(maxsize=None)
def _affine_simple_lookup(system: RootSystem) -> dict:
    return {s.element.key(): s.index for s in affine_simples(system)}


@lru_cache(maxsize=None)
def twisted_affine_action(
    system: RootSystem, sigma: DiagramAutomorphism, omega: AffineElement
) -> tuple[int, ...]:
    """Permutation of the affine simple indices by conjugation-by-omega after sigma."""
    lookup = _affine_simple_lookup(system)
    simples = affine_simples(system)
    omega_inv = omega.inverse()
    out = []
    for s in simples:
        sigma_elt = apply_sigma_affine(sigma, s.element)
        conjugated = omega * sigma_elt * omega_inv
        target = lookup.get(conjugated.key())
        if target is None:
            raise InternalCheckError("conjugate of an affine simple is not simple")
        out.append(target)
    return tuple(out)


@dataclass(frozen=True)
class AffineSupport:
    letters: frozenset[int]
    full: bool


def affine_sigma_support(x: AffineElement, sigma: DiagramAutomorphism) -> AffineSupport:
    """Support of the affine-Weyl part, closed under the omega-twisted sigma-action."""
    system = x.system
    x_a, omega = omega_component(x)
    simples = affine_simples(system)
    letters: set[int] = set()
    y = x_a
    while y.length > 0:
        for s in simples:
            if (s.element * y).length < y.length:
                letters.add(s.index)
                y = s.element * y
                break
        else:
            raise InternalCheckError("no descent found for a positive-length element")
    if not y.is_identity():
        raise InternalCheckError("affine part did not reduce to the identity")
    xi = twisted_affine_action(system, sigma, omega)
    while True:
        extra = {xi[i] for i in letters} - letters
        if not extra:
            break
        letters |= extra
    return AffineSupport(frozenset(letters), len(letters) == len(simples))


def fixes_point_of_closed_base_alcove(x: AffineElement, sigma: DiagramAutomorphism) -> bool:
    """Whether the affine map p -> x(sigma(p)) fixes a point of the closed base alcove.

    Exact: solve the fixed-point equation over the rationals, then test the
    alcove inequalities on the solution subspace by Fourier-Motzkin.
    """
    system = x.system
    n = system.rank
    m = _linalg.mat_mul(weyl_matrix(x.finite), sigma.matrix())
    shifted = tuple(
        tuple(m[i][j] - (1 if i == j else 0) for j in range(n)) for i in range(n)
    )
    solved = _linalg.solve_affine(shifted, tuple(-Fraction(c) for c in x.translation))
    if solved is None:
        return False
    particular, basis = solved
    constraints = []
    for i in range(n):
        alpha = tuple(1 if k == i else 0 for k in range(n))
        coeffs = tuple(system.pair(alpha, b) for b in basis)
        constraints.append((coeffs, system.pair(alpha, particular)))
    for theta in system.highest_roots:
        coeffs = tuple(-system.pair(theta, b) for b in basis)
        constraints.append((coeffs, 1 - system.pair(theta, particular)))
    return _linalg.feasible(constraints, len(basis))


def basic_class_of(kappa: KottwitzClass) -> tuple[NewtonPoint, KottwitzClass]:
    """The basic class with the given Kottwitz invariant: central Newton point."""
    return NewtonPoint.zero(kappa.system), kappa


# -- bounded enumeration of the whole group --------------------------------------


def enumerate_affine(system: RootSystem, length_bound: int,
                     cap: int = ENUM_CAP_DEFAULT):
    """All x with length(x) <= length_bound, in (length, translation, finite) order."""
    simples = affine_simples(system)
    level = sorted(omega_elements(system), key=lambda el: el.sort_key())
    count = len(level)
    yield from level
    for target in range(1, length_bound + 1):
        nxt = {}
        for x in level:
            for s in simples:
                y = x * s.element
                if y.length == target:
                    nxt[y.key()] = y
        level = sorted(nxt.values(), key=lambda el: el.sort_key())
        count += len(level)
        if count > cap:
            raise CapExceeded(
                f"enumeration at length {target} exceeds cap {cap}", estimate=count)
        yield from level
