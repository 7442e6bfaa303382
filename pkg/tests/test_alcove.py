"""Alcove geometry: k-values, decomposition, eta, strip sets, embedding sets."""

from fractions import Fraction

import pytest

from adlv import audit
from adlv.alcove import (
    AlcoveProfile,
    barycenter,
    base_k,
    critical_strips_containing,
    dominant_decompose,
    eta_sigma,
    is_shrunken,
    k_value,
    phi_x_set,
    w_x_set,
    w_x_set_bruteforce,
)
from adlv.cartan import RootSystem
from adlv.iwahori import AffineElement, enumerate_affine
from adlv.notation import parse_affine
from adlv.weyl import DiagramAutomorphism, FiniteWeylElement, enumerate_w0


def sid(system):
    return DiagramAutomorphism.identity(system)


def test_k_value_base_alcove(a2):
    identity = AffineElement.identity(a2)
    for a in a2.positive_roots:
        assert k_value(a, identity) == 0
        assert k_value(a2.negate(a), identity) == -1


def test_k_value_translation_example(a2):
    # x = t^{alpha_1^v}; the barycenter oracle gives floor <alpha_1, x(p)> = 2
    x = AffineElement.from_translation(a2, a2.cartan_matrix[0])
    point = barycenter(x)
    pairing = a2.pair((1, 0), point)
    assert pairing.numerator // pairing.denominator == 2
    assert k_value((1, 0), x) == 2


def test_k_value_rejects_nonroot(a2):
    with pytest.raises(ValueError):
        k_value((2, 0), AffineElement.identity(a2))


@pytest.mark.parametrize("descriptor,bound", [("A2", 6), ("B2", 6), ("G2", 5), ("A3", 8)])
def test_k_value_oracle_battery(descriptor, bound):
    system = RootSystem.from_descriptor(descriptor)
    result = audit.check_k_value_oracle(system, bound)
    assert result.passed, result.counterexample


def test_dominant_decompose_examples(a2, a1):
    x = AffineElement.from_translation(a2, (2, 1))  # dominant regular
    d = dominant_decompose(x)
    assert d.v.is_identity() and d.mu == (2, 1) and d.w.is_identity()

    s1 = FiniteWeylElement.simple(a2, 0)
    d = dominant_decompose(AffineElement.from_finite(s1))
    assert d.v == s1 and d.mu == (0, 0) and d.w.is_identity()

    omega = parse_affine(a1, "t[1] s1")
    d = dominant_decompose(omega)
    assert d.v.is_identity() and d.mu == (1,) and d.w == FiniteWeylElement.simple(a1, 0)


def test_dominant_decompose_unique_and_reassembles(b2):
    system = b2
    for x in enumerate_affine(system, 5):
        d = dominant_decompose(x)
        assert system.is_dominant(d.mu)
        rebuilt = (AffineElement.from_finite(d.v)
                   * AffineElement.from_translation(system, d.mu)
                   * AffineElement.from_finite(d.w))
        assert rebuilt == x
        point = barycenter(x)
        candidates = [
            v for v in enumerate_w0(system)
            if all(c > 0 for c in v.inverse().act_on_coweight(point))
        ]
        assert candidates == [d.v]


def test_eta_examples(a2, a1):
    sigma2 = sid(a2)
    x = AffineElement.from_translation(a2, (1, 2))
    assert eta_sigma(x, sigma2).is_identity()
    s1 = FiniteWeylElement.simple(a2, 0)
    assert eta_sigma(AffineElement.from_finite(s1), sigma2) == s1
    omega = parse_affine(a1, "t[1] s1")
    assert eta_sigma(omega, sid(a1)) == FiniteWeylElement.simple(a1, 0)


def test_eta_twisted(a3, a3_flip):
    # x = s1 as an alcove: v = s1, w = e, so eta is independent of sigma here
    s1 = FiniteWeylElement.simple(a3, 0)
    assert eta_sigma(AffineElement.from_finite(s1), a3_flip) == s1
    # x = t^mu s1 with mu dominant regular: v = e, w = s1, eta = sigma^{-1}(s1) = s3
    x = AffineElement.from_translation(a3, (1, 1, 1)) * AffineElement.from_finite(s1)
    assert eta_sigma(x, a3_flip) == FiniteWeylElement.simple(a3, 2)


def test_phi_x_examples(a2):
    identity = AffineElement.identity(a2)
    assert phi_x_set(identity) == frozenset(a2.positive_roots)
    deep = AffineElement.from_translation(a2, (2, 2))
    assert phi_x_set(deep) == frozenset()
    assert is_shrunken(deep)
    one_strip = parse_affine(a2, "t[-2,1] s2")
    assert phi_x_set(one_strip) == {(1, 0)}
    assert sum((1, 0)) == 1  # the strip root is simple


def test_w_x_examples(a2):
    identity_w = FiniteWeylElement.identity(a2)
    deep = AffineElement.from_translation(a2, (2, 2))
    assert w_x_set(deep) == {identity_w}
    one_strip = parse_affine(a2, "t[-2,1] s2")
    assert w_x_set(one_strip) == {identity_w, FiniteWeylElement.simple(a2, 0)}
    assert w_x_set(AffineElement.identity(a2)) == frozenset(enumerate_w0(a2))


@pytest.mark.parametrize("descriptor,bound", [("A2", 6), ("B2", 5), ("A3", 4)])
def test_w_x_bfs_equals_bruteforce(descriptor, bound):
    system = RootSystem.from_descriptor(descriptor)
    for x in enumerate_affine(system, bound):
        assert w_x_set(x) == w_x_set_bruteforce(x)


def test_strips_examples(a2):
    identity = AffineElement.identity(a2)
    assert set(critical_strips_containing(identity)) == set(a2.positive_roots)
    assert len(critical_strips_containing(identity)) == 3  # one band per positive root
    assert not is_shrunken(identity)
    deep = AffineElement.from_translation(a2, (2, 2))
    assert critical_strips_containing(deep) == ()


def test_strips_match_phi_x_via_v(a2):
    sigma = sid(a2)
    for x in enumerate_affine(a2, 6):
        profile = AlcoveProfile.build(x, sigma)
        expected = set()
        for alpha in profile.phi_x:
            image = profile.v.act_on_root(alpha)
            expected.add(image if sum(image) > 0 else a2.negate(image))
        assert set(profile.strips) == expected


@pytest.mark.parametrize("descriptor,bound", [("A2", 8), ("B2", 8), ("G2", 8), ("A3", 5)])
def test_strip_complement_radical_closed(descriptor, bound):
    system = RootSystem.from_descriptor(descriptor)
    result = audit.check_strip_complement_radical_closed(system, bound)
    assert result.passed, result.counterexample


@pytest.mark.parametrize("descriptor,bound", [("A2", 8), ("B2", 6), ("A3", 4)])
def test_wx_structure_battery(descriptor, bound):
    system = RootSystem.from_descriptor(descriptor)
    result = audit.check_wx_structure(system, bound)
    assert result.passed, result.counterexample


def test_left_closedness_direct(g2):
    for x in enumerate_affine(g2, 6):
        members = w_x_set(x)
        for w in members:
            for i in range(g2.rank):
                s = FiniteWeylElement.simple(g2, i)
                if (s * w).length < w.length:
                    assert s * w in members


def test_profile_k_values_match_function(b2):
    sigma = sid(b2)
    for x in enumerate_affine(b2, 4):
        profile = AlcoveProfile.build(x, sigma)
        decomposition = dominant_decompose(x)
        for a in b2.all_roots:
            assert profile.k_values[a] == k_value(a, x, decomposition)
