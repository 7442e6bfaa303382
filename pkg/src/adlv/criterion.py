"""Nonemptiness of single affine Deligne-Lusztig varieties, basic case.

Two independent deciders are provided and cross-checked:

- ``decide_nonempty``: the sigma-support test over the embedding set W_x,
  with the class-mismatch obstruction and the finite-affine-support
  shortcut applied first (on a sigma-connected diagram the shortcut fires
  exactly when the affine sigma-support is not full; reducible sums are
  decided factor by factor);
- ``oracle_nonempty``: the Levi-avoidance scan — x is nonempty iff it is
  not a (J, w)-alcove for any proper sigma-stable J — asserted only when
  the affine sigma-support of x is full.

Alongside: the generic-class set for cordial v*t^mu elements, bounded
enumeration of the class set below a dominant coweight, the defect of a
basic class, and the dimension-formula evaluators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _linalg
from .alcove import AlcoveProfile, base_k
from .cartan import RootSystem
from .errors import AdlvError, InternalCheckError
from .iwahori import (
    AffineElement,
    AffineSimple,
    KottwitzClass,
    affine_sigma_support,
    apply_sigma_affine,
    enumerate_affine,
    kottwitz,
    newton,
    omega_of_kottwitz,
)
from .weyl import (
    DiagramAutomorphism,
    FiniteWeylElement,
    enumerate_w0,
    sigma_support,
    support,
    weyl_matrix,
)

RULE_KOTTWITZ = "kottwitz-mismatch"
RULE_SHORTCUT = "shortcut-firstlemma"
RULE_CRITERION = "sigma-support-criterion"
RULE_ORACLE = "alcove-oracle"


@dataclass(frozen=True)
class Verdict:
    nonempty: bool
    rule: str
    witnesses: dict


def _sorted_wx(profile: AlcoveProfile) -> list[FiniteWeylElement]:
    return sorted(profile.w_x, key=lambda r: r.sort_key())


@lru_cache(maxsize=None)
def sigma_component_groups(
    system: RootSystem, sigma: DiagramAutomorphism
) -> tuple[tuple[frozenset[int], frozenset[int]], ...]:
    """Sigma-orbits of the irreducible summands, as (finite indices, all
    affine-diagram node indices) pairs.  These are the factors over which the
    decision problem splits."""
    seen: set[int] = set()
    groups = []
    for start in range(len(system.components)):
        if start in seen:
            continue
        orbit = {start}
        while True:
            extra = {sigma.component_image(c) for c in orbit} - orbit
            if not extra:
                break
            orbit |= extra
        seen |= orbit
        finite = frozenset(i for c in orbit for i in system.components[c].indices)
        nodes = finite | frozenset(system.rank + c for c in orbit)
        groups.append((finite, nodes))
    return tuple(groups)


def shortcut_applies(x: AffineElement, sigma: DiagramAutomorphism) -> bool:
    """Whether the affine sigma-support generates a finite reflection group
    (misses a node in every factor), which forces a central Newton point and
    membership in the basic class."""
    letters = affine_sigma_support(x, sigma).letters
    return not any(
        nodes <= letters for _, nodes in sigma_component_groups(x.system, sigma)
    )


def decide_nonempty(
    x: AffineElement,
    b_kappa: KottwitzClass,
    sigma: DiagramAutomorphism,
    profile: AlcoveProfile | None = None,
) -> Verdict:
    """Decide nonemptiness against the basic class with invariant b_kappa.

    Order of rules: the class obstruction; then the shortcut when the affine
    sigma-support generates a finite group (such x are sigma-conjugate into
    the basic class); then the support test over every r in W_x.  The problem
    splits over the sigma-orbits of components: factors whose affine diagram
    is not fully supported are nonempty by the shortcut, the remaining ones
    each need their full support test.  For a sigma-connected diagram this is
    exactly the all-or-nothing rule.
    """
    system = x.system
    kappa_x = kottwitz(x)
    if kappa_x.coinvariant(sigma) != b_kappa.coinvariant(sigma):
        return Verdict(False, RULE_KOTTWITZ, {
            "kappa_x": kappa_x, "kappa_b": b_kappa,
        })
    letters = affine_sigma_support(x, sigma).letters
    active = [
        finite for finite, nodes in sigma_component_groups(system, sigma)
        if nodes <= letters
    ]
    if not active:
        return Verdict(True, RULE_SHORTCUT, {"affine_support": tuple(sorted(letters))})
    if profile is None:
        profile = AlcoveProfile.build(x, sigma)
    sigma_inv = sigma.inverse()
    checked = []
    for r in _sorted_wx(profile):
        conjugate = sigma_inv.weyl(r) * profile.eta * r.inverse()
        j_set = sigma_support(conjugate, sigma)
        for finite in active:
            if not finite <= j_set:
                return Verdict(False, RULE_CRITERION, {"r": r, "j_rx": j_set})
        checked.append(r)
    return Verdict(True, RULE_CRITERION, {"checked_r": tuple(checked)})


# -- the (J, w)-alcove oracle -----------------------------------------------------


@lru_cache(maxsize=None)
def sigma_stable_subsets(
    system: RootSystem, sigma: DiagramAutomorphism, proper_only: bool = True
) -> tuple[frozenset[int], ...]:
    """All sigma-stable subsets of the simple indices (unions of orbits), sorted."""
    orbits = sorted({sigma.orbit(i) for i in range(system.rank)}, key=sorted)
    subsets = [frozenset()]
    for orbit in orbits:
        subsets += [s | orbit for s in subsets]
    if proper_only:
        subsets = [s for s in subsets if len(s) < system.rank]
    return tuple(sorted(subsets, key=lambda s: tuple(sorted(s))))


@lru_cache(maxsize=None)
def _outside_stabilized_coweight(system: RootSystem, j_set: frozenset[int]):
    return tuple(0 if i in j_set else 1 for i in range(system.rank))


def is_jw_alcove(
    x: AffineElement,
    j_set: frozenset[int],
    w: FiniteWeylElement,
    sigma: DiagramAutomorphism,
    profile: AlcoveProfile | None = None,
) -> bool:
    """Both defining conditions, literally: the twisted conjugate lands in the
    standard J-parabolic, and the k-values on w(positives outside J) dominate
    the base alcove's."""
    system = x.system
    j_set = frozenset(j_set)
    if frozenset(sigma.index(i) for i in j_set) != j_set:
        raise ValueError(f"J = {sorted(j_set)} is not sigma-stable")
    w_affine = AffineElement.from_finite(w)
    twisted = w_affine.inverse() * x * AffineElement.from_finite(sigma.weyl(w))
    marker = _outside_stabilized_coweight(system, j_set)
    if twisted.finite.act_on_coweight(marker) != tuple(Fraction(c) for c in marker):
        return False
    if profile is None:
        profile = AlcoveProfile.build(x, sigma)
    for alpha in system.positive_roots:
        if all(alpha[i] == 0 for i in range(system.rank) if i not in j_set):
            continue  # alpha lies in the J-subsystem
        a = w.act_on_root(alpha)
        if profile.k_values[a] < base_k(system, a):
            return False
    return True


@lru_cache(maxsize=None)
def _scan_elements(system: RootSystem, sigma: DiagramAutomorphism):
    """Sorted W0 with the affine forms of w^{-1} and sigma(w) precomputed."""
    out = []
    for w in sorted(enumerate_w0(system), key=lambda u: u.sort_key()):
        out.append((
            w,
            AffineElement.from_finite(w.inverse()),
            AffineElement.from_finite(sigma.weyl(w)),
        ))
    return tuple(out)


def _minimal_alcove_support(
    x: AffineElement, w, w_inv_affine, sigma_w_affine, profile: AlcoveProfile
) -> frozenset[int]:
    """Smallest index set T with: x is a (J, w)-alcove iff T is a subset of J.

    T collects the support of the twisted conjugate's finite part (condition
    one) and the supports of the positive roots whose w-image violates the
    k-value inequality (condition two).
    """
    system = x.system
    twisted = w_inv_affine * x * sigma_w_affine
    letters = set(support(twisted.finite))
    for alpha in system.positive_roots:
        a = w.act_on_root(alpha)
        if profile.k_values[a] < base_k(system, a):
            letters.update(i for i, c in enumerate(alpha) if c)
    return frozenset(letters)


def oracle_nonempty(
    x: AffineElement,
    b_kappa: KottwitzClass,
    sigma: DiagramAutomorphism,
    profile: AlcoveProfile | None = None,
) -> Verdict:
    """Nonempty iff x is not a (J, w)-alcove for any proper sigma-stable J.

    Only asserted under its hypotheses: matching class invariant and full
    affine sigma-support.  The first witness pair in (J, w) order is reported;
    the scan uses the per-w minimal alcove support, which agrees with testing
    ``is_jw_alcove`` pair by pair (cross-checked in the audit suite).
    """
    if kottwitz(x).coinvariant(sigma) != b_kappa.coinvariant(sigma):
        raise ValueError("oracle precondition: class invariants must match")
    if not affine_sigma_support(x, sigma).full:
        raise ValueError("oracle precondition: affine sigma-support must be full")
    return _oracle_scan(x, sigma, profile)


def _oracle_scan(
    x: AffineElement, sigma: DiagramAutomorphism, profile: AlcoveProfile | None = None
) -> Verdict:
    """The raw (J, w) scan, without the oracle's hypotheses."""
    if profile is None:
        profile = AlcoveProfile.build(x, sigma)
    scan = _scan_elements(x.system, sigma)
    supports = [
        _minimal_alcove_support(x, w, w_inv, sigma_w, profile)
        for w, w_inv, sigma_w in scan
    ]
    subsets = sigma_stable_subsets(x.system, sigma, True)
    for j_set in subsets:
        for (w, _, _), t_set in zip(scan, supports):
            if t_set <= j_set:
                return Verdict(False, RULE_ORACLE, {"j": j_set, "w": w})
    return Verdict(True, RULE_ORACLE, {"pairs_scanned": len(scan) * len(subsets)})


def j_rx(
    x: AffineElement,
    r: FiniteWeylElement,
    sigma: DiagramAutomorphism,
    profile: AlcoveProfile | None = None,
) -> frozenset[int]:
    """The sigma-support of the r-twisted eta; x is then a (J, v_x r^{-1})-alcove
    for this J (enforced as a postcondition)."""
    if profile is None:
        profile = AlcoveProfile.build(x, sigma)
    if r not in profile.w_x:
        raise ValueError("r is not in the embedding set W_x")
    conjugate = sigma.inverse().weyl(r) * profile.eta * r.inverse()
    j_set = sigma_support(conjugate, sigma)
    if not is_jw_alcove(x, j_set, profile.v * r.inverse(), sigma, profile):
        raise InternalCheckError("x is not a (J_{r,x}, v_x r^{-1})-alcove")
    return j_set


def oracle_length_bound(system: RootSystem, sigma: DiagramAutomorphism) -> int:
    """A computed sufficient length for the oracle's positivity argument to close.

    Conservative: past this length, subtracting at most one simple coroot per
    letter of any W_x member cannot cancel the positivity of the coroot
    coefficients of the dominant part.  Diagnostic only.
    """
    n_pos = len(system.positive_roots)
    p_min = min(
        entry
        for comp in system.components
        for i in comp.indices
        for j in comp.indices
        for entry in [system.inverse_cartan[i][j]]
        if entry > 0
    )
    max_column = max(
        sum(alpha[i] for alpha in system.positive_roots) for i in range(system.rank)
    )
    return int(2 * n_pos + Fraction(max_column * n_pos, 1) / p_min) + 1


# -- class points below a dominant coweight ---------------------------------------


@dataclass(frozen=True)
class SigmaConjClassPoint:
    """A class of the group, identified by (dominant Newton point, class invariant)."""

    system: RootSystem
    newton_dominant: tuple[Fraction, ...]
    kappa_coinv: tuple[Fraction, ...]

    def sort_key(self):
        # coroot height strictly increases along the partial order, so sorting
        # by it first makes the listing a linear extension
        height = sum(self.system.coroot_coordinates(self.newton_dominant), Fraction(0))
        return (height, self.newton_dominant, self.kappa_coinv)

    def leq(self, other: "SigmaConjClassPoint") -> bool:
        """Partial order: same invariant, Newton difference in the nonneg coroot cone."""
        if self.kappa_coinv != other.kappa_coinv:
            return False
        diff = tuple(b - a for a, b in zip(self.newton_dominant, other.newton_dominant))
        return all(c >= 0 for c in self.system.coroot_coordinates(diff))


def class_point(x: AffineElement, sigma: DiagramAutomorphism) -> SigmaConjClassPoint:
    return SigmaConjClassPoint(
        x.system,
        newton(x, sigma).dominant,
        kottwitz(x).coinvariant(sigma),
    )


def sigma_average(system: RootSystem, mu, sigma: DiagramAutomorphism) -> tuple[Fraction, ...]:
    total = [Fraction(0)] * system.rank
    current = tuple(Fraction(c) for c in mu)
    for _ in range(sigma.order):
        total = [t + c for t, c in zip(total, current)]
        current = sigma.coweight(current)
    return tuple(t / sigma.order for t in total)


def translation_length(system: RootSystem, mu) -> int:
    """length(t^mu) for dominant mu: the sum of all positive pairings."""
    return int(sum(system.pair(alpha, mu) for alpha in system.positive_roots))


def enumerate_b_g_mu(
    system: RootSystem,
    mu,
    sigma: DiagramAutomorphism,
    length_cap: int | None = None,
    enum_cap: int | None = None,
) -> tuple[SigmaConjClassPoint, ...]:
    """Distinct class points with matching invariant and Newton point below the
    sigma-average of mu, collected from a length-capped scan of the group.

    The default cap length(t^mu) + #positive-roots is a heuristic; see
    ``b_g_mu_cap_stable`` for the doubling audit.
    """
    if not system.is_dominant(mu) or not system.in_coweight_lattice(mu):
        raise ValueError("mu must be a dominant integral coweight")
    if length_cap is None:
        length_cap = translation_length(system, mu) + len(system.positive_roots)
    target_kappa = KottwitzClass.from_translation(system, mu).coinvariant(sigma)
    average = sigma_average(system, mu, sigma)
    points: set[SigmaConjClassPoint] = set()
    kwargs = {} if enum_cap is None else {"cap": enum_cap}
    for y in enumerate_affine(system, length_cap, **kwargs):
        if kottwitz(y).coinvariant(sigma) != target_kappa:
            continue
        point = class_point(y, sigma)
        diff = tuple(a - n for a, n in zip(average, point.newton_dominant))
        if all(c >= 0 for c in system.coroot_coordinates(diff)):
            points.add(point)
    return tuple(sorted(points, key=lambda p: p.sort_key()))


def b_g_mu_cap_stable(system, mu, sigma, enum_cap: int | None = None) -> bool:
    """Doubling audit for the scan cap: True when the point set is already stable."""
    base_cap = translation_length(system, mu) + len(system.positive_roots)
    first = enumerate_b_g_mu(system, mu, sigma, base_cap, enum_cap)
    second = enumerate_b_g_mu(system, mu, sigma, 2 * base_cap, enum_cap)
    return first == second


# -- the generic-class report for v t^mu -------------------------------------------


@dataclass(frozen=True)
class BgxReport:
    x: AffineElement
    w_x_formula: frozenset[FiniteWeylElement]
    w_x_alcove: frozenset[FiniteWeylElement]
    support_tests: tuple[tuple[FiniteWeylElement, frozenset[int], bool], ...]
    all_full: bool
    mu_central: bool
    conclusion: str  # "single-central-class" | "equals-b-g-mu" | "undetermined"
    points: tuple[SigmaConjClassPoint, ...] | None
    cap_stable: bool | None


def bgx_cordial(
    v: FiniteWeylElement, mu, sigma: DiagramAutomorphism,
    with_points: bool = True,
) -> BgxReport:
    """The embedding set of x = v t^mu by the stabilizer/length-additivity formula,
    cross-checked against the alcove computation, and the resulting class-set report."""
    system = v.system
    if not system.is_dominant(mu) or not system.in_coweight_lattice(mu):
        raise ValueError("mu must be a dominant integral coweight")
    x = AffineElement.from_finite(v) * AffineElement.from_translation(system, mu)
    formula = frozenset(
        r for r in enumerate_w0(system)
        if r.act_on_coweight(mu) == tuple(Fraction(c) for c in mu)
        and (v * r.inverse()).length == v.length + r.length
    )
    profile = AlcoveProfile.build(x, sigma)
    if formula != profile.w_x:
        raise InternalCheckError("stabilizer formula disagrees with the alcove computation")
    full = frozenset(range(system.rank))
    sigma_inv = sigma.inverse()
    tests = []
    for r in _sorted_wx(profile):
        j_set = sigma_support(sigma_inv.weyl(r) * profile.eta * r.inverse(), sigma)
        tests.append((r, j_set, j_set == full))
    all_full = all(ok for _, _, ok in tests)
    central = all(Fraction(c) == 0 for c in mu)
    points: tuple[SigmaConjClassPoint, ...] | None = None
    cap_stable = None
    if central:
        conclusion = "single-central-class"
        points = (class_point(AffineElement.from_translation(system, mu), sigma),)
    elif all_full:
        conclusion = "equals-b-g-mu"
        if with_points:
            points = enumerate_b_g_mu(system, mu, sigma)
            cap_stable = b_g_mu_cap_stable(system, mu, sigma)
    else:
        conclusion = "undetermined"
    return BgxReport(x, formula, profile.w_x, tuple(tests), all_full,
                     central, conclusion, points, cap_stable)


# -- defect and dimension formulas --------------------------------------------------


def defect(b_kappa: KottwitzClass, sigma: DiagramAutomorphism) -> int:
    """Fixed-space defect of the basic class: dim V^sigma - dim V^(p(omega) sigma)."""
    system = b_kappa.system
    omega = omega_of_kottwitz(system, b_kappa)
    sigma_matrix = sigma.matrix()
    twisted = _linalg.mat_mul(weyl_matrix(omega.finite), sigma_matrix)
    return (_linalg.fixed_space_dimension(sigma_matrix)
            - _linalg.fixed_space_dimension(twisted))


def defect_validated(system: RootSystem, sigma: DiagramAutomorphism) -> bool:
    """Where the fixed-space formula has an independent confirmation (split type A)."""
    return sigma.is_identity() and all(c.type_label == "A" for c in system.components)


def dim_shrunken(
    x: AffineElement,
    b_kappa: KottwitzClass,
    sigma: DiagramAutomorphism,
    profile: AlcoveProfile | None = None,
) -> int | None:
    """(length(x) + length(eta) - defect)/2 for nonempty shrunken x; None otherwise."""
    if profile is None:
        profile = AlcoveProfile.build(x, sigma)
    if not profile.shrunken:
        return None
    if not decide_nonempty(x, b_kappa, sigma, profile).nonempty:
        return None
    doubled = x.length + profile.eta.length - defect(b_kappa, sigma)
    if doubled % 2 != 0:
        raise InternalCheckError(f"odd dimension numerator {doubled} for {x!r}")
    return doubled // 2


def dim_one_strip_rank2(
    x: AffineElement,
    b_kappa: KottwitzClass,
    sigma: DiagramAutomorphism,
    profile: AlcoveProfile | None = None,
) -> int | None:
    """The rank-2 single-strip formula with its longest-element correction."""
    system = x.system
    if system.rank != 2 or not sigma.is_identity():
        return None
    if profile is None:
        profile = AlcoveProfile.build(x, sigma)
    if len(profile.phi_x) != 1:
        return None
    if not decide_nonempty(x, b_kappa, sigma, profile).nonempty:
        return None
    (alpha_x,) = profile.phi_x
    if sum(alpha_x) != 1:
        raise InternalCheckError("single-strip root is not simple")
    s_x = FiniteWeylElement.simple(system, alpha_x.index(1))
    eta = profile.eta
    conjugated = sigma.inverse().weyl(s_x) * eta * s_x
    doubled = x.length + min(eta.length, conjugated.length) - defect(b_kappa, sigma)
    if doubled % 2 != 0:
        raise InternalCheckError(f"odd dimension numerator {doubled} for {x!r}")
    from .weyl import longest_element

    epsilon = 1 if eta == longest_element(system) else 0
    return doubled // 2 - epsilon


class DimConflictError(AdlvError):
    """A propagation step contradicts an existing table entry."""


class DimTable:
    """Partial dimension table; records known-empty elements separately and
    refuses to overwrite entries with different values."""

    def __init__(self):
        self._dims: dict[AffineElement, int] = {}
        self._empty: set[AffineElement] = set()

    def mark_empty(self, x: AffineElement) -> None:
        if x in self._dims:
            raise DimConflictError(f"{x!r} already has dimension {self._dims[x]}")
        self._empty.add(x)

    def set_dim(self, x: AffineElement, value: int) -> bool:
        if x in self._empty:
            raise DimConflictError(f"{x!r} is marked empty but got dimension {value}")
        existing = self._dims.get(x)
        if existing is None:
            self._dims[x] = value
            return True
        if existing != value:
            raise DimConflictError(f"{x!r}: {existing} vs {value}")
        return False

    def dim(self, x: AffineElement) -> int | None:
        return self._dims.get(x)

    def is_empty(self, x: AffineElement) -> bool:
        return x in self._empty

    def known(self, x: AffineElement) -> bool:
        return x in self._dims or x in self._empty

    def items(self):
        return self._dims.items()


def dim_recursion_step(
    x: AffineElement,
    s: AffineSimple,
    dims: DimTable,
    sigma: DiagramAutomorphism,
) -> list[tuple[AffineElement, int]]:
    """One application of the two-branch recursion at x along s.

    Requires length(s x sigma(s)) = length(x) - 2.  Propagates bottom-up when
    both branch statuses are known, and top-down into a branch when the other
    branch is empty and x itself is known.
    """
    sigma_s = apply_sigma_affine(sigma, s.element)
    sx = s.element * x
    sxs = sx * sigma_s
    if sxs.length != x.length - 2:
        raise ValueError("descent condition length(s x sigma(s)) = length(x) - 2 fails")
    if sx.length != x.length - 1:
        raise InternalCheckError("branch length must drop by exactly one")
    new_entries: list[tuple[AffineElement, int]] = []

    if dims.known(sx) and dims.known(sxs):
        branches = [dims.dim(y) for y in (sx, sxs) if not dims.is_empty(y)]
        if branches:
            value = max(branches) + 1
            if dims.set_dim(x, value):
                new_entries.append((x, value))
        elif dims.dim(x) is not None:
            raise DimConflictError(f"both branches of {x!r} empty but x has a dimension")

    if dims.dim(x) is not None:
        for known_empty, target in ((sxs, sx), (sx, sxs)):
            if dims.is_empty(known_empty) and not dims.is_empty(target):
                value = dims.dim(x) - 1
                if dims.set_dim(target, value):
                    new_entries.append((target, value))
    return new_entries


def anresult_filter(x: AffineElement, sigma: DiagramAutomorphism) -> bool:
    """The type-A genericity filter: dominant part in the coroot lattice with
    both end fundamental-weight pairings strictly above one."""
    system = x.system
    if len(system.components) != 1 or system.components[0].type_label != "A":
        raise ValueError("the filter is defined for irreducible type A only")
    from .alcove import dominant_decompose

    mu = dominant_decompose(x).mu
    coords = system.coroot_coordinates(mu)
    if any(c.denominator != 1 for c in coords):
        return False
    return coords[0] > 1 and coords[-1] > 1
