"""Acceptance suite: one test per criterion, at the stated ranges and tolerances.

Every criterion prints a single PASS/FAIL line; all comparisons are exact
(integers and rationals), so the tolerance everywhere is zero.
"""

import subprocess
import sys
import time

import pytest

from adlv import audit
from adlv.cartan import RootSystem
from adlv.iwahori import KottwitzClass
from adlv.weyl import DiagramAutomorphism

RANK2_SPLIT = ["A2", "B2", "G2"]


def _report(number: int, passed: bool, detail: str) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {number} {status}: {detail}")
    assert passed, detail


def _system(descriptor: str) -> tuple[RootSystem, DiagramAutomorphism]:
    system = RootSystem.from_descriptor(descriptor)
    return system, DiagramAutomorphism.identity(system)


@pytest.fixture(scope="module")
def a3_twisted():
    system = RootSystem.from_descriptor("A3")
    return system, DiagramAutomorphism(system, (2, 1, 0))


def test_acceptance_01_flagship_equivalence_split():
    start = time.time()
    details = []
    for descriptor in RANK2_SPLIT:
        system, sigma = _system(descriptor)
        result = audit.check_criterion_oracle_equivalence(system, sigma, 12)
        assert result.passed, (descriptor, result.counterexample)
        details.append(f"{descriptor}: {result.detail}")
    elapsed = time.time() - start
    assert elapsed < 120, f"took {elapsed:.1f}s, budget 120s"
    _report(1, True, f"criterion == oracle at length <= 12 ({'; '.join(details)}; "
                     f"{elapsed:.1f}s)")


def test_acceptance_02_flagship_equivalence_twisted(a3_twisted):
    start = time.time()
    system, sigma = a3_twisted
    result = audit.check_criterion_oracle_equivalence(system, sigma, 8)
    elapsed = time.time() - start
    assert result.passed, result.counterexample
    assert elapsed < 300, f"took {elapsed:.1f}s, budget 300s"
    _report(2, True, f"A3 with diagram flip, length <= 8: {result.detail} "
                     f"({elapsed:.1f}s)")


def test_acceptance_03_strip_complement_radical_closed(a3_twisted):
    details = []
    for descriptor in RANK2_SPLIT:
        system, sigma = _system(descriptor)
        result = audit.check_strip_complement_radical_closed(system, 12, sigma)
        assert result.passed, (descriptor, result.counterexample)
        details.append(f"{descriptor}: {result.detail}")
    system, sigma = a3_twisted
    result = audit.check_strip_complement_radical_closed(system, 8, sigma)
    assert result.passed, result.counterexample
    details.append(f"A3: {result.detail}")
    _report(3, True, "; ".join(details))


def test_acceptance_04_one_strip_structure(a3_twisted):
    details = []
    for descriptor in RANK2_SPLIT:
        system, sigma = _system(descriptor)
        structure = audit.check_wx_structure(system, 12)
        assert structure.passed, (descriptor, structure.counterexample)
        two_support = audit.check_one_strip_two_support(system, sigma, 12)
        assert two_support.passed, (descriptor, two_support.counterexample)
        details.append(f"{descriptor}: {two_support.detail}")
    system, sigma = a3_twisted
    structure = audit.check_wx_structure(system, 8)
    assert structure.passed, structure.counterexample
    two_support = audit.check_one_strip_two_support(system, sigma, 8)
    assert two_support.passed, two_support.counterexample
    details.append(f"A3: {two_support.detail}")
    _report(4, True, "; ".join(details))


def test_acceptance_05_shrunken_specialization(a3_twisted):
    details = []
    for descriptor in RANK2_SPLIT:
        system, sigma = _system(descriptor)
        result = audit.check_shrunken_specialization(system, sigma, 12)
        assert result.passed, (descriptor, result.counterexample)
        details.append(f"{descriptor}: {result.detail}")
    system, sigma = a3_twisted
    result = audit.check_shrunken_specialization(system, sigma, 8)
    assert result.passed, result.counterexample
    details.append(f"A3: {result.detail}")
    _report(5, True, "; ".join(details))


def test_acceptance_06_translation_elements():
    details = []
    for descriptor in RANK2_SPLIT:
        system, sigma = _system(descriptor)
        result = audit.check_translation_elements(system, sigma, 12)
        assert result.passed, (descriptor, result.counterexample)
        details.append(f"{descriptor}: {result.detail}")
    _report(6, True, "; ".join(details))


def test_acceptance_07_inverse_cartan_positive():
    start = time.time()
    descriptors = (
        [f"A{n}" for n in range(1, 9)]
        + [f"B{n}" for n in range(2, 9)]
        + [f"C{n}" for n in range(2, 9)]
        + [f"D{n}" for n in range(3, 9)]
        + ["E6", "E7", "E8", "F4", "G2"]
    )
    systems = [RootSystem.from_descriptor(d) for d in descriptors]
    result = audit.check_inverse_cartan_positive(systems)
    elapsed = time.time() - start
    assert result.passed, result.counterexample
    assert elapsed < 1.0, f"took {elapsed:.3f}s, budget 1s"
    _report(7, True, f"{len(systems)} irreducible types up to rank 8: {result.detail} "
                     f"({elapsed * 1000:.0f}ms)")


def test_acceptance_08_k_value_oracle():
    details = []
    for descriptor in RANK2_SPLIT:
        system, _ = _system(descriptor)
        result = audit.check_k_value_oracle(system, 10)
        assert result.passed, (descriptor, result.counterexample)
        details.append(f"{descriptor}: {result.detail}")
    _report(8, True, "; ".join(details))


def test_acceptance_09_defect_gcd():
    result = audit.check_defect_gcd_type_a(6)
    assert result.passed, result.counterexample
    _report(9, True, result.detail)


def test_acceptance_10_dimension_consistency():
    system, sigma = _system("A2")
    result = audit.check_dim_recursion_consistency(
        system, sigma, KottwitzClass.zero(system), 10)
    assert result.passed, result.counterexample
    _report(10, True, f"A2, trivial class, length <= 10: {result.detail}")


def test_acceptance_11_bgx_formula():
    details = []
    for descriptor in ["A2", "B2"]:
        system, sigma = _system(descriptor)
        result = audit.check_bgx_formula(system, sigma, 12)
        assert result.passed, (descriptor, result.counterexample)
        details.append(f"{descriptor}: {result.detail}")
    _report(11, True, "; ".join(details))


def test_acceptance_12_jobs_determinism():
    outputs = {}
    for fmt in ("csv", "json"):
        for jobs in ("1", "8"):
            proc = subprocess.run(
                [sys.executable, "-m", "adlv.cli", "enumerate",
                 "--system", "A2", "--length-bound", "8",
                 "--kappa-b", "match-x", "--format", fmt, "--jobs", jobs],
                capture_output=True, timeout=600)
            assert proc.returncode == 0, proc.stderr.decode()
            outputs[(fmt, jobs)] = proc.stdout
        assert outputs[(fmt, "1")] == outputs[(fmt, "8")], f"{fmt} output differs"
    _report(12, True, "enumeration output byte-identical for --jobs 1 and --jobs 8 "
                      "(csv and json)")
