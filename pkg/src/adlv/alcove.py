"""Alcove geometry: k-values, critical strips, the dominant decomposition,
the essential finite part eta, the strip set Phi_x and the embedding set W_x.

The k-value of an alcove against a root a is the integer k with the alcove
strictly between the level-k and level-(k+1) hyperplanes of a.  The base
alcove has k-value 0 against positive roots and -1 against negative ones;
"x lies in the critical strip of a" is uniformly k(a, x) == k(a, base).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .cartan import Root, RootSystem
from .errors import InternalCheckError
from .iwahori import AffineElement, make_dominant
from .weyl import DiagramAutomorphism, FiniteWeylElement, enumerate_w0


def base_k(system: RootSystem, root: Root) -> int:
    """k-value of the base alcove: 0 on positive roots, -1 on negative ones."""
    return 0 if system.is_positive(root) else -1


def barycenter(x: AffineElement) -> tuple[Fraction, ...]:
    """Barycenter of the alcove x(base); an interior point, never on a wall."""
    return x.act_on_point(x.system.base_alcove_barycenter())


@dataclass(frozen=True)
class DominantDecomposition:
    """x = v * t^mu * w with t^mu w in the dominant chamber and mu dominant."""

    v: FiniteWeylElement
    mu: tuple[int, ...]
    w: FiniteWeylElement


def dominant_decompose(x: AffineElement) -> DominantDecomposition:
    system = x.system
    point = barycenter(x)
    dominant_point, u = make_dominant(system, point)
    if any(c <= 0 for c in dominant_point):
        raise InternalCheckError("alcove barycenter landed on a chamber wall")
    v = u.inverse()
    rest = AffineElement.from_finite(u) * x  # v^{-1} x = t^mu w
    mu = rest.translation
    if not system.is_dominant(mu):
        raise InternalCheckError("dominant decomposition produced a nondominant part")
    return DominantDecomposition(v, mu, rest.finite)


def k_value(a: Root, x: AffineElement,
            decomposition: DominantDecomposition | None = None) -> int:
    """Closed-form k-value: <a, v.mu> + (0 if w^{-1}v^{-1}a > 0 else -1)."""
    system = x.system
    if tuple(a) not in system._root_set:
        raise ValueError(f"{a} is not a root")
    d = decomposition or dominant_decompose(x)
    inner = d.v.inverse().act_on_root(a)
    pairing = sum(c * m for c, m in zip(inner, d.mu))
    delta = 0 if sum(d.w.inverse().act_on_root(inner)) > 0 else -1
    return pairing + delta


def eta_sigma(x: AffineElement, sigma: DiagramAutomorphism,
              decomposition: DominantDecomposition | None = None) -> FiniteWeylElement:
    """sigma^{-1}(w_x) * v_x, the finite part seen from the dominant chamber."""
    d = decomposition or dominant_decompose(x)
    return sigma.inverse().weyl(d.w) * d.v


@dataclass(frozen=True)
class AlcoveProfile:
    """All per-element alcove data the nonemptiness criterion consumes."""

    x: AffineElement
    sigma: DiagramAutomorphism
    decomposition: DominantDecomposition

    @classmethod
    def build(cls, x: AffineElement, sigma: DiagramAutomorphism) -> "AlcoveProfile":
        return cls(x, sigma, dominant_decompose(x))

    @property
    def system(self) -> RootSystem:
        return self.x.system

    @property
    def v(self) -> FiniteWeylElement:
        return self.decomposition.v

    @property
    def mu(self) -> tuple[int, ...]:
        return self.decomposition.mu

    @property
    def w(self) -> FiniteWeylElement:
        return self.decomposition.w

    @cached_property
    def eta(self) -> FiniteWeylElement:
        return eta_sigma(self.x, self.sigma, self.decomposition)

    @cached_property
    def k_values(self) -> dict[Root, int]:
        """k(a, x) for every root a, by the closed form on one decomposition."""
        system = self.system
        mu = self.decomposition.mu
        v_inv_images = self.v.inverse().positive_images()
        vw_inv_positive = (self.v * self.w).inverse_positive()
        out: dict[Root, int] = {}
        for idx, alpha in enumerate(system.positive_roots):
            inner = v_inv_images[idx]
            pairing = sum(a * m for a, m in zip(inner, mu))
            out[alpha] = pairing + (0 if vw_inv_positive[idx] else -1)
            out[system.negate(alpha)] = -pairing + (-1 if vw_inv_positive[idx] else 0)
        return out

    @cached_property
    def phi_x(self) -> frozenset[Root]:
        """Positive roots alpha with x inside the strip of v(alpha)."""
        system = self.system
        out = []
        for alpha in system.positive_roots:
            image = self.v.act_on_root(alpha)
            if self.k_values[image] == base_k(system, image):
                out.append(alpha)
        return frozenset(out)

    @cached_property
    def strips(self) -> tuple[Root, ...]:
        """Critical strips containing x, one positive representative each."""
        return tuple(
            beta for beta in self.system.positive_roots if self.k_values[beta] == 0
        )

    @property
    def shrunken(self) -> bool:
        return not self.strips

    @cached_property
    def w_x(self) -> frozenset[FiniteWeylElement]:
        """Elements r with r(positives minus phi_x) still positive.

        Found by upward breadth-first search from the identity (the set is
        left-closed, so every member is reached through members).
        """
        system = self.system
        complement_idx = tuple(
            idx for idx, alpha in enumerate(system.positive_roots)
            if alpha not in self.phi_x
        )
        simples = [FiniteWeylElement.simple(system, i) for i in range(system.rank)]

        def member(r: FiniteWeylElement) -> bool:
            images = r.positive_images()
            return all(sum(images[idx]) > 0 for idx in complement_idx)

        identity = FiniteWeylElement.identity(system)
        out = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for r in frontier:
                for i, s in enumerate(simples):
                    cand = s * r
                    if cand.length != r.length + 1:
                        continue
                    if cand not in out and member(cand):
                        out.add(cand)
                        nxt.append(cand)
            frontier = nxt
        return frozenset(out)


def phi_x_set(x: AffineElement) -> frozenset[Root]:
    profile = AlcoveProfile.build(x, DiagramAutomorphism.identity(x.system))
    return profile.phi_x


def w_x_set(x: AffineElement) -> frozenset[FiniteWeylElement]:
    profile = AlcoveProfile.build(x, DiagramAutomorphism.identity(x.system))
    return profile.w_x


def w_x_set_bruteforce(x: AffineElement) -> frozenset[FiniteWeylElement]:
    """Reference implementation: filter the whole finite Weyl group."""
    system = x.system
    phi = phi_x_set(x)
    complement = [a for a in system.positive_roots if a not in phi]
    return frozenset(
        r for r in enumerate_w0(system)
        if all(sum(r.act_on_root(g)) > 0 for g in complement)
    )


def is_shrunken(x: AffineElement) -> bool:
    return AlcoveProfile.build(x, DiagramAutomorphism.identity(x.system)).shrunken


def critical_strips_containing(x: AffineElement) -> tuple[Root, ...]:
    return AlcoveProfile.build(x, DiagramAutomorphism.identity(x.system)).strips
