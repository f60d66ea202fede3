# -*- coding: utf-8 -*-
"""Tests for FacetFlow.checker.leak on the shipped scenarios."""

import pytest

from FacetFlow.checker.leak import measure_leak
from FacetFlow.checker.verdict import Status
from FacetFlow.errors import ContractError, ScenarioError
from FacetFlow.reader.read_scenario import scenario_from_dict


def test_exploit3_leaks_four_bits_only_under_design1(exploit3_4bit):
    trapeze = measure_leak(exploit3_4bit, 'trapeze', 'e')
    assert trapeze.status is Status.PASS
    assert trapeze.bits == 0.0
    assert trapeze.classes == [list(range(16))]

    design1 = measure_leak(exploit3_4bit, 'design1', 'e')
    assert design1.bits == pytest.approx(4.0)
    assert len(design1.classes) == 16
    assert len(design1.witnesses) == 15


def test_exploit2_leaks_one_bit_only_without_facets(exploit2):
    assert measure_leak(exploit2, 'trapeze', 'e').bits == 0.0
    naive = measure_leak(exploit2, 'naive', 'e')
    assert naive.bits == pytest.approx(1.0)
    witness = naive.witnesses[0]
    assert witness['secrets'] == [0, 1]
    assert all(event['type'] == 'send' for event in witness['trace'])


@pytest.mark.parametrize('mode', ['trapeze', 'trapeze-unique-read', 'naive',
                                  'design1', 'design2-total',
                                  'design2-partial'])
def test_constant_program_leaks_nothing(constant, mode):
    report = measure_leak(constant, mode, 'e')
    assert report.bits == 0.0
    assert report.mode == mode


def test_declassifier_releases_its_bit(declassify):
    assert measure_leak(declassify, 'trapeze', 'e').bits == pytest.approx(
        1.0)
    assert measure_leak(declassify, 'design1', 'e').bits == 0.0


def test_observer_above_the_secret_is_not_an_attacker(exploit2):
    report = measure_leak(exploit2, 'trapeze', 'top')
    assert report.observer == 'top'
    assert report.bits == 0.0


def test_bits_only_grow_with_depth(exploit3_4bit):
    previous = 0.0
    for depth in (14, 18, 40):
        report = measure_leak(exploit3_4bit, 'design1', 'e', depth=depth,
                              secrets=[0, 1, 2, 3])
        if report.status is Status.INCONCLUSIVE:
            assert report.bits is None
            continue
        assert report.bits >= previous
        previous = report.bits
    assert previous == pytest.approx(2.0)


def test_tiny_depth_is_inconclusive(exploit3_4bit):
    report = measure_leak(exploit3_4bit, 'design1', 'e', depth=1)
    assert report.status is Status.INCONCLUSIVE
    assert report.bits is None


def test_threads_match_a_single_worker(exploit3_4bit):
    single = measure_leak(exploit3_4bit, 'design1', 'e', secrets=[0, 5, 10])
    pooled = measure_leak(exploit3_4bit, 'design1', 'e', secrets=[0, 5, 10],
                          threads=2)
    assert single.classes == pooled.classes
    assert single.bits == pooled.bits


def test_leak_needs_a_secret(diamond):
    bare = scenario_from_dict({'lattice': diamond.to_dict()})
    with pytest.raises(ScenarioError):
        measure_leak(bare)
    with pytest.raises(ContractError):
        measure_leak(scenario_from_dict({
            'lattice': diamond.to_dict(),
            'secret_slot': {'key': 's', 'label': 'top'},
            'secret_values': [1]}), depth=-1)
