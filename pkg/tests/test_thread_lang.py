# -*- coding: utf-8 -*-
"""Tests for FacetFlow.core.thread_lang."""

import numpy as np
import pytest

from FacetFlow.checker.random_state import Bounds, gen_random_program
from FacetFlow.core.facet_store import ABSENT, LabeledValue
from FacetFlow.core.lattice import diamond_lattice
from FacetFlow.core.thread_lang import (DEFAULT_FUEL, BinOp, CallDeclassifier,
                                        For, Fork, If, IsAbsent, Let, Lit,
                                        OpDeclassify, OpFork, OpRaiseLabel,
                                        OpRead, OpSend, OpStop, OpWrite,
                                        RaiseLabel, Read, Send, Stop, Thread,
                                        Var, Write, apply_continuation,
                                        evaluate, key_text, run)
from FacetFlow.errors import ContractError


def test_pure_statements_run_to_the_first_operation():
    thread = Thread.start((Let('x', Lit(2)),
                           Let('y', BinOp('*', Var('x'), Lit(21))),
                           Send('eve', Var('y'))))
    operation = run(thread)
    assert isinstance(operation, OpSend)
    assert operation.channel == 'eve' and operation.value == 42


def test_read_binds_value_and_label():
    operation = run(Thread.start((Read(Lit('k'), 'y'),
                                  Send('eve', Var('y_label')))))
    assert isinstance(operation, OpRead) and operation.key == 'k'
    resumed = apply_continuation(operation.cont, LabeledValue(7, 'e'))
    assert resumed.binding('y') == 7
    sent = run(resumed)
    assert sent.value == 'e'


def test_absent_read_binds_absent():
    operation = run(Thread.start((Read(Lit('k'), 'y'),
                                  If(IsAbsent(Var('y')),
                                     (Send('eve', Lit('none')),)))))
    resumed = apply_continuation(operation.cont, ABSENT)
    assert resumed.binding('y_label') is ABSENT
    assert run(resumed).value == 'none'


def test_for_bounds_are_inclusive():
    thread = Thread.start((For('i', Lit(0), Lit(2),
                               (Write(Var('i'), Var('i')),)),))
    keys = []
    operation = run(thread)
    while isinstance(operation, OpWrite):
        keys.append(operation.key)
        operation = run(operation.cont)
    assert keys == ['0', '1', '2']
    assert isinstance(operation, OpStop) and operation.diagnostic is None


def test_fork_child_copies_the_environment():
    thread = Thread.start((Let('i', Lit(3)),
                           Fork((Send('eve', Var('i')),)),
                           Let('i', Lit(4))))
    operation = run(thread)
    assert isinstance(operation, OpFork)
    assert run(operation.child).value == 3


@pytest.mark.parametrize('stmt, expected', [
    (RaiseLabel('top'), OpRaiseLabel),
    (CallDeclassifier('release'), OpDeclassify),
    (Stop(), OpStop),
])
def test_operation_kinds(stmt, expected):
    assert isinstance(run(Thread.start((stmt,))), expected)


@pytest.mark.parametrize('block, diagnostic', [
    ((Send('eve', Var('missing')),), 'unbound variable'),
    ((Let('x', BinOp('+', Lit(1), Lit(True))),), 'expects integers'),
    ((Let('x', BinOp('bit', Lit(1), Lit(64))),), 'out of range'),
    ((Let('x', BinOp('*', Lit(2 ** 62), Lit(4))),), 'overflow'),
    ((Write(Lit(''), Lit(1)),), 'empty key'),
    ((Read(Lit('k'), 'y'),), None),
])
def test_crashes_stop_the_thread(block, diagnostic):
    operation = run(Thread.start(block))
    if diagnostic is None:
        assert isinstance(operation, OpRead)
    else:
        assert isinstance(operation, OpStop)
        assert diagnostic in operation.diagnostic


def test_fuel_exhaustion_stops_the_thread():
    loop = (For('i', Lit(0), Lit(1000), (Let('x', Var('i')),)),)
    operation = run(Thread.start(loop), fuel=50)
    assert isinstance(operation, OpStop)
    assert operation.diagnostic == 'fuel exhausted'


def test_fuel_must_be_positive():
    with pytest.raises(ContractError):
        run(Thread.start((Stop(),)), fuel=0)


def test_equality_keeps_kinds_apart():
    operation = run(Thread.start((
        Send('eve', BinOp('==', Lit(True), Lit(1))),)))
    assert operation.value is False


def test_key_text():
    assert key_text(5) == '5'
    assert key_text(True) == 'true'
    assert key_text('k') == 'k'


def test_bit_and_concat():
    operation = run(Thread.start((
        Send('eve', BinOp('concat', Lit('b'),
                          BinOp('bit', Lit(5), Lit(2)))),)))
    assert operation.value == 'b1'


def random_threads(count):
    for seed in range(count):
        rng = np.random.default_rng(seed)
        yield seed, Thread.start(gen_random_program(
            rng, Bounds(), diamond_lattice(), ['eve', 'vault']))


def test_run_is_deterministic():
    for seed, thread in random_threads(300):
        again = Thread.start(gen_random_program(
            np.random.default_rng(seed), Bounds(), diamond_lattice(),
            ['eve', 'vault']))
        assert again == thread
        assert run(thread) == run(again) == run(thread)


@pytest.mark.parametrize('count', [0, 3, 40])
def test_more_fuel_never_changes_a_result(count):
    loop = Thread.start((For('i', Lit(1), Lit(count),
                             (Let('x', Var('i')),)),
                         Send('eve', Var('x'))))
    threads = [loop] + [thread for _, thread in random_threads(100)]
    for thread in threads:
        for fuel in (1, 2, 5, 20, 100):
            operation = run(thread, fuel)
            if operation == OpStop('fuel exhausted'):
                continue
            for more in (fuel + 1, fuel * 10, DEFAULT_FUEL):
                assert run(thread, more) == operation


def test_operations_leave_effects_to_the_caller():
    thread = Thread.start((Write(Lit('k'), Lit(1)),
                           Read(Lit('k'), 'y'),
                           RaiseLabel('top'),
                           Send('eve', Var('y'))))
    write = run(thread)
    assert isinstance(write, OpWrite)
    assert (write.key, write.value) == ('k', 1)
    read = run(write.cont)
    assert isinstance(read, OpRead)
    assert read.cont.thread.binding('y') is ABSENT
    raised = run(apply_continuation(read.cont, LabeledValue(5, 'b')))
    assert isinstance(raised, OpRaiseLabel) and raised.label == 'top'
    assert run(raised.cont).value == 5
    assert run(thread) == write


def test_evaluate_leaves_the_environment_alone():
    env = {'x': 1}
    assert evaluate(BinOp('+', Var('x'), Lit(2)), env) == 3
    assert env == {'x': 1}
