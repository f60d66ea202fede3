# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.reader read program documents.

Functions:
  - parse_program
  - parse_expr
  - count_statements
"""

from typing import Collection, Optional

from FacetFlow.core.facet_store import value_kind
from FacetFlow.core.lattice import Lattice
from FacetFlow.core.thread_lang import (BINARY_OPERATORS, BinOp, Block,
                                        CallDeclassifier, For, Fork, If,
                                        IsAbsent, Let, Lit, RaiseLabel, Read,
                                        Send, Stop, Var, Write)
from FacetFlow.errors import ProgramError

EXPRESSION_KEYS = ('lit', 'var', 'binop', 'is_absent')


def _field(node: dict, name: str, path: str):
    if name not in node:
        raise ProgramError(path, f'missing field {name!r}')
    return node[name]


def _name(node: dict, name: str, path: str) -> str:
    value = _field(node, name, path)
    if not isinstance(value, str) or not value:
        raise ProgramError(f'{path}.{name}', 'expected a non-empty string')
    return value


def parse_expr(node, path: str = '$'):
    """Parse one expression node.

    Args:
        node (dict): {'lit': v}, {'var': n}, {'binop': op, 'lhs', 'rhs'}
                     or {'is_absent': e}.
        path (str): JSON path of the node for error messages.

    Returns:
        (Expr): the expression.

    Raises:
        ProgramError: the node violates the expression schema.
    """
    if not isinstance(node, dict):
        raise ProgramError(path, 'expression must be an object')
    tags = [key for key in EXPRESSION_KEYS if key in node]
    if len(tags) != 1:
        raise ProgramError(
            path, f'expression needs exactly one of {list(EXPRESSION_KEYS)}')
    tag = tags[0]
    if tag == 'lit':
        value = node['lit']
        try:
            value_kind(value)
        except (TypeError, ValueError) as error:
            raise ProgramError(f'{path}.lit',
                               f'unsupported literal {value!r}') from error
        return Lit(value)
    if tag == 'var':
        return Var(_name(node, 'var', path))
    if tag == 'is_absent':
        return IsAbsent(parse_expr(node['is_absent'], f'{path}.is_absent'))
    op = node['binop']
    if not isinstance(op, str) or op not in BINARY_OPERATORS:
        raise ProgramError(f'{path}.binop', f'unknown operator {op!r}')
    return BinOp(op,
                 parse_expr(_field(node, 'lhs', path), f'{path}.lhs'),
                 parse_expr(_field(node, 'rhs', path), f'{path}.rhs'))


class _ProgramParser(object):
    """Parse statement lists against the scenario's names."""

    def __init__(self,
                 lattice: Optional[Lattice],
                 channels: Optional[Collection[str]],
                 declassifiers: Optional[Collection[str]]) -> None:
        self.lattice = lattice
        self.channels = channels
        self.declassifiers = declassifiers
        super().__init__()

    def block(self, nodes, path: str) -> Block:
        if not isinstance(nodes, list):
            raise ProgramError(path, 'block must be a list of statements')
        return tuple(self.statement(node, f'{path}[{index}]')
                     for index, node in enumerate(nodes))

    def statement(self, node, path: str):
        if not isinstance(node, dict):
            raise ProgramError(path, 'statement must be an object')
        op = _field(node, 'op', path)
        if op == 'let':
            return Let(_name(node, 'var', path),
                       parse_expr(_field(node, 'value', path),
                                  f'{path}.value'))
        if op == 'read':
            return Read(parse_expr(_field(node, 'key', path), f'{path}.key'),
                        _name(node, 'bind', path))
        if op == 'write':
            return Write(
                parse_expr(_field(node, 'key', path), f'{path}.key'),
                parse_expr(_field(node, 'value', path), f'{path}.value'))
        if op == 'send':
            channel = _name(node, 'channel', path)
            if self.channels is not None and channel not in self.channels:
                raise ProgramError(f'{path}.channel',
                                   f'unknown channel {channel!r}')
            return Send(channel, parse_expr(_field(node, 'value', path),
                                            f'{path}.value'))
        if op == 'fork':
            return Fork(self.block(_field(node, 'body', path),
                                   f'{path}.body'))
        if op == 'raise_label':
            label = _name(node, 'label', path)
            if self.lattice is not None and label not in self.lattice:
                raise ProgramError(f'{path}.label',
                                   f'unknown label {label!r}')
            return RaiseLabel(label)
        if op == 'if':
            return If(parse_expr(_field(node, 'cond', path), f'{path}.cond'),
                      self.block(_field(node, 'then', path), f'{path}.then'),
                      self.block(node.get('else', []), f'{path}.else'))
        if op == 'for':
            return For(_name(node, 'var', path),
                       parse_expr(_field(node, 'from', path), f'{path}.from'),
                       parse_expr(_field(node, 'to', path), f'{path}.to'),
                       self.block(_field(node, 'body', path), f'{path}.body'))
        if op == 'stop':
            return Stop()
        if op == 'call_declassifier':
            name = _name(node, 'name', path)
            if (self.declassifiers is not None and
                    name not in self.declassifiers):
                raise ProgramError(f'{path}.name',
                                   f'unknown declassifier {name!r}')
            return CallDeclassifier(name)
        raise ProgramError(f'{path}.op', f'unknown statement kind {op!r}')


def parse_program(document,
                  lattice: Optional[Lattice] = None,
                  channels: Optional[Collection[str]] = None,
                  declassifiers: Optional[Collection[str]] = None,
                  path: str = '$') -> Block:
    """Parse and validate a program document.

    Names are only checked against the collections that are given.

    Args:
        document (list): statement objects.
        lattice (Lattice): labels raise_label may name.
        channels (Collection[str]): channels send may name.
        declassifiers (Collection[str]): declassifiers a call may name.
        path (str): JSON path of the document for error messages.

    Returns:
        (tuple): the program block; the empty list parses to (Stop(),).

    Raises:
        ProgramError: schema violation, with the path of the bad node.
    """
    block = _ProgramParser(lattice, channels, declassifiers).block(
        document, path)
    return block or (Stop(),)


def count_statements(block: Block) -> int:
    """Count statements of a block, nested blocks included."""
    total = 0
    for stmt in block:
        total += 1
        if isinstance(stmt, (Fork, For)):
            total += count_statements(stmt.body)
        elif isinstance(stmt, If):
            total += count_statements(stmt.then)
            total += count_statements(stmt.orelse)
    return total
