# -*- coding: utf-8 -*-
"""Tests for FacetFlow.core.semantics."""

import pytest

from FacetFlow.checker.random_state import (Bounds, gen_random_inputs,
                                            gen_random_state)
from FacetFlow.core.lattice import chain_lattice, diamond_lattice
from FacetFlow.core.facet_store import (EMPTY_STORE, LabeledValue,
                                        store_from_writes)
from FacetFlow.core.semantics import (NOP, Declassifier, Process, SendEvent,
                                      Semantics, StartEvent, SystemState,
                                      invoke_declassifier, run_schedule,
                                      thread_operation)
from FacetFlow.core.thread_lang import (CallDeclassifier, Fork, Lit,
                                        RaiseLabel, Read, Send, Stop, Thread,
                                        Var, Write, run)
from FacetFlow.errors import ConfigurationError, ContractError
from tests.test_lattice import powerset_lattice


def process(label, *block):
    return Process(Thread.start(block), label)


def rules(transitions):
    return [transition.rule for transition in transitions]


def test_empty_state_only_skips(trapeze):
    transitions = trapeze.enabled(SystemState.initial())
    assert rules(transitions) == ['s-skip']
    assert transitions[0].event == NOP


def test_start_consumes_the_head_input(trapeze):
    pending = (StartEvent(process('e', Stop())),
               StartEvent(process('b', Stop())))
    transitions = trapeze.enabled(SystemState.initial(), pending)
    assert rules(transitions) == ['s-start', 's-skip']
    assert transitions[0].consumes_input
    assert transitions[0].state.processes[0].label == 'e'


def test_send_needs_a_channel_at_or_above_the_label(trapeze):
    state = SystemState.of(EMPTY_STORE, [process('e', Send('eve', Lit(1))),
                                         process('top', Send('eve', Lit(2)))])
    transitions = trapeze.enabled(state)
    assert rules(transitions) == ['s-send', 's-skip']
    assert transitions[0].event == SendEvent('eve', 1)


def test_read_sees_only_visible_facets(trapeze):
    store = store_from_writes([('k', 1, 'e'), ('k', 2, 'b')],
                              trapeze.lattice)
    state = SystemState.of(store, [process('e', Read(Lit('k'), 'y'),
                                           Send('eve', Var('y')))])
    after_read = trapeze.enabled(state)[0].state
    sent = trapeze.enabled(after_read)[0]
    assert sent.event == SendEvent('eve', 1)


def test_write_collects_hidden_facets(trapeze):
    store = store_from_writes([('k', 1, 'b'), ('k', 2, 'top')],
                              trapeze.lattice)
    assert len(store.get('k')) == 2
    state = SystemState.of(store, [process('e', Write(Lit('k'), Lit(3)))])
    written = trapeze.enabled(state)[0].state.store.get('k')
    assert written == (LabeledValue(1, 'b'), LabeledValue(3, 'e'))


def test_fork_and_raise(trapeze):
    state = SystemState.of(EMPTY_STORE, [process(
        'e', Fork((Stop(),)), RaiseLabel('top'), RaiseLabel('b'))])
    forked = trapeze.enabled(state)[0]
    assert forked.rule == 's-fork'
    assert [p.label for p in forked.state.processes] == ['e', 'e']
    raised = [t for t in trapeze.enabled(forked.state)
              if t.rule == 's-raise-label'][0]
    assert {p.label for p in raised.state.processes} == {'e', 'top'}
    lowered = SystemState.of(EMPTY_STORE, [process('top', RaiseLabel('b'))])
    assert rules(trapeze.enabled(lowered)) == ['s-skip']


def test_unique_read_mode_halts_on_two_visible_facets(diamond, channels):
    semantics = Semantics(diamond, channels, mode='trapeze-unique-read')
    store = store_from_writes([('k', 1, 'b'), ('k', 2, 'e')], diamond)
    state = SystemState.of(store, [process('top', Read(Lit('k'), 'y'))])
    transition = semantics.enabled(state)[0]
    assert transition.rule == 's-read-error'
    assert rules(semantics.enabled(transition.state)) == ['s-skip']


def test_declassify_starts_the_body_at_the_low_label(diamond, channels):
    release = Declassifier('release', 'top', 'e',
                           (Send('eve', Lit('ok')),))
    semantics = Semantics(diamond, channels, {'release': release})
    state = SystemState.of(EMPTY_STORE, [process(
        'top', CallDeclassifier('release'))])
    transition = semantics.enabled(state)[0]
    assert transition.rule == 's-declassify'
    assert transition.event == NOP
    assert sorted(p.label for p in transition.state.processes) == ['e',
                                                                   'top']


def test_invoke_declassifier_formula_exhaustively():
    for lattice in (powerset_lattice(2), chain_lattice(6), diamond_lattice()):
        labels = lattice.labels
        for high in labels:
            for low in labels:
                if not lattice.less(low, high):
                    continue
                declassifier = Declassifier('d', high, low, ())
                for caller in labels:
                    expected = (low if lattice.leq(low, caller) and
                                lattice.leq(caller, high) else caller)
                    assert invoke_declassifier(declassifier, caller,
                                               lattice) == expected


def test_identical_processes_step_once(trapeze):
    twin = process('e', Send('eve', Lit(1)))
    state = SystemState.of(EMPTY_STORE, [twin, twin])
    assert rules(trapeze.enabled(state)) == ['s-send', 's-skip']
    after = trapeze.enabled(state)[0].state
    assert len(after.processes) == 2


def test_process_order_does_not_matter(trapeze):
    first = process('e', Stop())
    second = process('b', Send('bob', Lit(1)))
    assert (SystemState.of(EMPTY_STORE, [first, second]) ==
            SystemState.of(EMPTY_STORE, [second, first]))


def test_step_rejects_stale_choices(trapeze):
    with pytest.raises(ContractError, match='stale choice'):
        trapeze.step(SystemState.initial(), 3)
    event, state = trapeze.step(SystemState.initial(), 0)
    assert event == NOP and state == SystemState.initial()


def test_unknown_mode_and_mutation(diamond, channels):
    with pytest.raises(ConfigurationError):
        Semantics(diamond, channels, mode='design1')
    with pytest.raises(ConfigurationError):
        Semantics(diamond, channels, mutations=['teleport'])
    with pytest.raises(ConfigurationError):
        Semantics(diamond, {'x': 'nowhere'})


def test_naive_mode_overwrites(diamond, channels):
    semantics = Semantics(diamond, channels, mode='naive')
    store = store_from_writes([('k', 1, 'top')], diamond)
    state = SystemState.of(store, [process('e', Write(Lit('k'), Lit(2)))])
    assert semantics.enabled(state)[0].state.store.get('k') == (
        LabeledValue(2, 'e'),)


def test_run_schedule_is_reproducible(exploit3_4bit):
    semantics = exploit3_4bit.semantics('design1')
    initial = exploit3_4bit.initial_state(semantics, 9)
    first = run_schedule(semantics, initial, seed=5)
    second = run_schedule(semantics, initial, seed=5)
    assert [t.event for t in first] == [t.event for t in second]
    assert all(t.rule != 's-skip' for t in first)


def test_run_schedule_fifo_and_limits(exploit2):
    semantics = exploit2.semantics()
    initial = exploit2.initial_state(semantics, 1)
    taken = run_schedule(semantics, initial, policy='fifo', max_steps=2)
    assert len(taken) == 2
    with pytest.raises(ContractError):
        run_schedule(semantics, initial, max_steps=-1)
    with pytest.raises(ContractError):
        run_schedule(semantics, initial, policy='lifo')


def added_processes(before, after):
    remaining = list(before.processes)
    added = []
    for proc in after.processes:
        if proc in remaining:
            remaining.remove(proc)
        else:
            added.append(proc)
    return added


def random_steps(semantics, diamond, channels, trials):
    for seed in range(trials):
        state = gen_random_state(seed, Bounds(), diamond, channels)
        inputs = gen_random_inputs(seed, Bounds(), diamond, channels)
        yield state, inputs, semantics.enabled(state, inputs)


def test_labels_only_rise(trapeze, diamond, channels):
    for state, _, transitions in random_steps(trapeze, diamond, channels,
                                              1000):
        for transition in transitions:
            if transition.rule in ('s-start', 's-skip'):
                continue
            for proc in added_processes(state, transition.state):
                assert diamond.leq(transition.actor.label, proc.label)


def test_sends_go_to_channels_at_or_above_the_sender(trapeze, diamond,
                                                     channels):
    sent = 0
    for _, _, transitions in random_steps(trapeze, diamond, channels, 1000):
        for transition in transitions:
            if transition.rule == 's-send':
                sent += 1
                assert isinstance(transition.event, SendEvent)
                assert diamond.leq(transition.actor.label,
                                   channels[transition.event.channel])
    assert sent > 0


def test_only_writes_change_the_store(trapeze, diamond, channels):
    for state, _, transitions in random_steps(trapeze, diamond, channels,
                                              1000):
        for transition in transitions:
            if transition.rule != 's-write':
                assert transition.state.store == state.store


def test_every_state_can_step(trapeze, diamond, channels):
    for state, _, transitions in random_steps(trapeze, diamond, channels,
                                              1000):
        assert transitions
        assert transitions[-1].rule == 's-skip'
        assert transitions[-1].state == state


def test_operation_cache_is_bounded(trapeze):
    thread = Thread.start((Send('eve', Lit(1)),))
    assert trapeze.operation(thread) == run(thread, trapeze.fuel)
    info = thread_operation.cache_info()
    assert info.maxsize is not None
    assert info.currsize <= info.maxsize
