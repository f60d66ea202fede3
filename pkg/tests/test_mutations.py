# -*- coding: utf-8 -*-
"""Broken rules must be caught by the checks that guard them."""

import pytest

from FacetFlow.checker.projection_lemma import (check_invisibility,
                                                check_projection_part1,
                                                check_store_invariant)
from FacetFlow.checker.verdict import Status
from FacetFlow.core.facet_store import store_from_writes
from FacetFlow.core.semantics import Process, Semantics, SystemState
from FacetFlow.core.thread_lang import Lit, Read, Send, Thread, Var, Write


def single(store, label, *block):
    return SystemState.of(store, [Process(Thread.start(block), label)])


@pytest.fixture
def hidden_send(diamond):
    return single(store_from_writes([], diamond), 'top',
                  Send('eve', Lit(1)))


@pytest.fixture
def second_write(diamond):
    return single(store_from_writes([('k', 1, 'e')], diamond), 'e',
                  Write(Lit('k'), Lit(2)))


@pytest.fixture
def hidden_read(diamond):
    return single(store_from_writes([('k', 7, 'top')], diamond), 'e',
                  Read(Lit('k'), 'y'), Send('eve', Var('y')))


@pytest.mark.parametrize('mutation, check, fixture', [
    ('drop-send-check', check_invisibility, 'hidden_send'),
    ('no-write-gc', check_store_invariant, 'second_write'),
    ('ignore-read-visibility', check_projection_part1, 'hidden_read'),
])
def test_mutation_is_caught(request, diamond, channels, mutation, check,
                            fixture):
    state = request.getfixturevalue(fixture)
    sound = check(Semantics(diamond, channels), state, 'e')
    assert sound.status is Status.PASS

    broken = check(Semantics(diamond, channels, mutations=[mutation]), state,
                   'e')
    assert broken.status is Status.FAIL
    assert broken.counterexample
    assert broken.counterexample[0]['rule'] in ('s-send', 's-write', 's-read')


def test_hidden_send_reports_the_visible_event(diamond, channels,
                                               hidden_send):
    semantics = Semantics(diamond, channels, mutations=['drop-send-check'])
    verdict = check_invisibility(semantics, hidden_send, 'e')
    assert 'event is visible' in verdict.reason
    assert verdict.counterexample[0]['event'] == {
        'type': 'send', 'channel': 'eve', 'value': 1}


def test_naive_mode_fails_projection(diamond, channels, hidden_read):
    semantics = Semantics(diamond, channels, mode='naive')
    assert check_projection_part1(semantics, hidden_read,
                                  'e').status is Status.FAIL
