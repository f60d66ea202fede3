# -*- coding: utf-8 -*-
"""Tests for FacetFlow.reader.read_program."""

import pytest

from FacetFlow.core.lattice import diamond_lattice
from FacetFlow.core.thread_lang import (BinOp, For, Fork, If, Let, Lit, Read,
                                        Send, Stop, Var, Write)
from FacetFlow.errors import ProgramError
from FacetFlow.reader.read_program import (count_statements, parse_expr,
                                           parse_program)


def test_empty_program_is_stop():
    assert parse_program([]) == (Stop(),)


def test_statements_parse():
    block = parse_program([
        {'op': 'let', 'var': 'x', 'value': {'lit': 1}},
        {'op': 'read', 'key': {'lit': 'k'}, 'bind': 'y'},
        {'op': 'write', 'key': {'var': 'x'}, 'value': {'lit': True}},
        {'op': 'send', 'channel': 'eve', 'value': {'var': 'y'}},
        {'op': 'if', 'cond': {'lit': True}, 'then': [{'op': 'stop'}]},
        {'op': 'for', 'var': 'i', 'from': {'lit': 0}, 'to': {'lit': 3},
         'body': [{'op': 'fork', 'body': []}]},
    ], diamond_lattice(), {'eve': 'e'})
    assert block[0] == Let('x', Lit(1))
    assert block[1] == Read(Lit('k'), 'y')
    assert block[2] == Write(Var('x'), Lit(True))
    assert block[3] == Send('eve', Var('y'))
    assert block[4] == If(Lit(True), (Stop(),), ())
    assert block[5] == For('i', Lit(0), Lit(3), (Fork(()),))


def test_nested_expression():
    expr = parse_expr({'binop': '==',
                       'lhs': {'binop': 'bit', 'lhs': {'var': 's'},
                               'rhs': {'var': 'i'}},
                       'rhs': {'lit': 1}})
    assert expr == BinOp('==', BinOp('bit', Var('s'), Var('i')), Lit(1))


@pytest.mark.parametrize('document, path', [
    ([{'op': 'jump'}], '$[0].op'),
    ([{'op': 'let', 'var': 'x'}], '$[0]'),
    ([{'op': 'send', 'channel': 'nowhere', 'value': {'lit': 1}}],
     '$[0].channel'),
    ([{'op': 'raise_label', 'label': 'secret'}], '$[0].label'),
    ([{'op': 'call_declassifier', 'name': 'ghost'}], '$[0].name'),
    ([{'op': 'if', 'cond': {'lit': 1.5}, 'then': []}], '$[0].cond.lit'),
    ([{'op': 'fork', 'body': [{'op': 'let', 'var': 'x',
                               'value': {'binop': '^', 'lhs': {'lit': 1},
                                         'rhs': {'lit': 2}}}]}],
     '$[0].body[0].value.binop'),
    ([{'op': 'let', 'var': 'x',
      'value': {'binop': ['+'], 'lhs': {'lit': 1}, 'rhs': {'lit': 2}}}],
     '$[0].value.binop'),
])
def test_errors_carry_the_node_path(document, path):
    with pytest.raises(ProgramError) as raised:
        parse_program(document, diamond_lattice(), {'eve': 'e'}, ())
    assert raised.value.path == path


def test_unknown_statement_message():
    with pytest.raises(ProgramError, match='unknown statement kind'):
        parse_program([{'op': 'jump'}])


def test_count_statements_is_recursive(exploit2):
    fe = exploit2.processes[1].process.thread.frames[0].block
    assert count_statements(fe) == 6
