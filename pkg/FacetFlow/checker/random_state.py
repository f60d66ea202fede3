# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.checker random states.

Every generator takes an integer seed and builds its numpy Generator from
(seed, stream), so equal seeds give equal states.

What's here:

Classes:
  - Bounds

Functions:
  - gen_random_program
  - gen_random_state
  - gen_random_inputs
  - gen_equivalent_pair
"""

from dataclasses import dataclass
from typing import List, Mapping, Sequence, Tuple

import numpy as np

from FacetFlow.core.facet_store import Store, write_seq
from FacetFlow.core.lattice import Lattice
from FacetFlow.core.projection import project_state
from FacetFlow.core.semantics import Process, StartEvent, SystemState
from FacetFlow.core.thread_lang import (BinOp, Block, Fork, If, IsAbsent, Let,
                                        Lit, RaiseLabel, Read, Send, Stop,
                                        Thread, Var, Write)
from FacetFlow.errors import ContractError

KEY_POOL = ('k0', 'k1', 'k2', 'k3', 'k4', 'k5', 'k6', 'k7')
VALUE_POOL = (0, 1, 2, 3, True, False, 'a', 'b')
STATE_STREAM, INPUT_STREAM, LEFT_STREAM, RIGHT_STREAM = range(4)


@dataclass(frozen=True)
class Bounds(object):
    """Size limits of generated states.

    Attributes:
        max_processes (int): processes per state.
        max_keys (int): distinct store keys.
        max_program_length (int): statements per program, nested included.
        max_facets (int): writes applied per key.
    """

    max_processes: int = 4
    max_keys: int = 3
    max_program_length: int = 6
    max_facets: int = 3

    def __post_init__(self) -> None:
        if min(self.max_processes, self.max_keys, self.max_program_length,
               self.max_facets) < 0:
            raise ContractError(f'bounds must be non-negative: {self}')
        if self.max_keys > len(KEY_POOL):
            raise ContractError(f'at most {len(KEY_POOL)} keys supported')

    @property
    def keys(self) -> Tuple[str, ...]:
        return KEY_POOL[:self.max_keys]


def _pick(rng: np.random.Generator, items: Sequence):
    return items[int(rng.integers(len(items)))]


class _ProgramGenerator(object):
    """Draw well-formed programs over a fixed vocabulary."""

    def __init__(self,
                 rng: np.random.Generator,
                 lattice: Lattice,
                 channels: Sequence[str],
                 keys: Sequence[str]) -> None:
        self.rng = rng
        self.labels = lattice.labels
        self.channels = tuple(channels)
        self.keys = tuple(keys)
        self.counter = 0
        super().__init__()

    def fresh(self, prefix: str) -> str:
        self.counter += 1
        return f'{prefix}{self.counter}'

    def value(self, bound: List[str]):
        if bound and self.rng.random() < 0.5:
            return Var(_pick(self.rng, bound))
        return Lit(_pick(self.rng, VALUE_POOL))

    def condition(self, bound: List[str]):
        if bound and self.rng.random() < 0.5:
            return IsAbsent(Var(_pick(self.rng, bound)))
        return BinOp('==', self.value(bound), Lit(_pick(self.rng,
                                                        VALUE_POOL)))

    def block(self, budget: int, bound: List[str]) -> Tuple[Block, int]:
        """Draw statements until the budget runs out or a coin says stop.

        Returns:
            (tuple): (block, statements used).
        """
        statements, used = [], 0
        while used < budget:
            stmt, cost = self.statement(budget - used, bound)
            statements.append(stmt)
            used += cost
            if self.rng.random() < 0.15:
                break
        return tuple(statements), used

    def statement(self, budget: int, bound: List[str]):
        kinds = ['let', 'raise_label', 'stop']
        if self.keys:
            kinds += ['read', 'read', 'write', 'write']
        if self.channels:
            kinds += ['send', 'send']
        if budget >= 2:
            kinds += ['fork', 'if']
        kind = _pick(self.rng, kinds)
        if kind == 'let':
            name = self.fresh('v')
            stmt = Let(name, self.value(bound))
            bound.append(name)
            return stmt, 1
        if kind == 'read':
            name = self.fresh('x')
            stmt = Read(Lit(_pick(self.rng, self.keys)), name)
            bound.extend((name, name + '_label'))
            return stmt, 1
        if kind == 'write':
            return Write(Lit(_pick(self.rng, self.keys)),
                         self.value(bound)), 1
        if kind == 'send':
            return Send(_pick(self.rng, self.channels), self.value(bound)), 1
        if kind == 'raise_label':
            return RaiseLabel(_pick(self.rng, self.labels)), 1
        if kind == 'fork':
            body, used = self.block(budget - 1, list(bound))
            return Fork(body), used + 1
        if kind == 'if':
            then, used_then = self.block(max(1, (budget - 1) // 2),
                                         list(bound))
            orelse, used_else = (), 0
            if budget - 1 - used_then > 0 and self.rng.random() < 0.5:
                orelse, used_else = self.block(budget - 1 - used_then,
                                               list(bound))
            return (If(self.condition(bound), then, orelse),
                    used_then + used_else + 1)
        return Stop(), 1


def gen_random_program(rng: np.random.Generator,
                       bounds: Bounds,
                       lattice: Lattice,
                       channels: Sequence[str]) -> Block:
    """Draw one program of at most bounds.max_program_length statements."""
    if bounds.max_program_length == 0:
        return (Stop(),)
    generator = _ProgramGenerator(rng, lattice, sorted(channels),
                                  bounds.keys)
    budget = int(rng.integers(1, bounds.max_program_length + 1))
    block, _ = generator.block(budget, [])
    return block


def _random_store(rng: np.random.Generator,
                  bounds: Bounds,
                  labels: Sequence[str],
                  lattice: Lattice,
                  store: Store = None) -> Store:
    store = store or Store()
    if not labels:
        return store
    for key in bounds.keys:
        seq = store.get(key)
        for _ in range(int(rng.integers(0, bounds.max_facets + 1))):
            seq = write_seq(seq, _pick(rng, VALUE_POOL), _pick(rng, labels),
                            lattice)
        store = store.assign(key, seq)
    return store


def _random_processes(rng: np.random.Generator,
                      bounds: Bounds,
                      labels: Sequence[str],
                      lattice: Lattice,
                      channels: Sequence[str],
                      limit: int) -> List[Process]:
    if not labels or limit <= 0:
        return []
    return [Process(Thread.start(gen_random_program(rng, bounds, lattice,
                                                    channels)),
                    _pick(rng, labels))
            for _ in range(int(rng.integers(0, limit + 1)))]


def gen_random_state(seed: int,
                     bounds: Bounds,
                     lattice: Lattice,
                     channels: Mapping[str, str]) -> SystemState:
    """Draw a reproducible random state.

    Args:
        seed (int): non-negative seed.
        bounds (Bounds): size limits.
        lattice (Lattice): labels of facets and processes.
        channels (Mapping): channels programs may send on.

    Returns:
        (SystemState): a state whose stores satisfy the write invariant.
    """
    rng = np.random.default_rng([seed, STATE_STREAM])
    labels = lattice.labels
    store = _random_store(rng, bounds, labels, lattice)
    processes = _random_processes(rng, bounds, labels, lattice, channels,
                                  bounds.max_processes)
    return SystemState.of(store, processes)


def gen_random_inputs(seed: int,
                      bounds: Bounds,
                      lattice: Lattice,
                      channels: Mapping[str, str]) -> Tuple[StartEvent, ...]:
    """Draw zero or one pending activation."""
    rng = np.random.default_rng([seed, INPUT_STREAM])
    if rng.random() < 0.5:
        return ()
    program = gen_random_program(rng, bounds, lattice, channels)
    return (StartEvent(Process(Thread.start(program),
                               _pick(rng, lattice.labels))),)


def gen_equivalent_pair(seed: int,
                        bounds: Bounds,
                        lattice: Lattice,
                        channels: Mapping[str, str],
                        observer: str) -> Tuple[SystemState, SystemState]:
    """Draw two states that look the same at observer.

    A random state is projected at observer; each side then gets its own
    random invisible facets and processes on top of that projection.

    Returns:
        (tuple): (state1, state2), l-equivalent at observer.
    """
    common = project_state(gen_random_state(seed, bounds, lattice, channels),
                           observer, lattice)
    hidden = [label for label in lattice.labels
              if not lattice.leq(label, observer)]
    room = bounds.max_processes - len(common.processes)
    pair = []
    for stream in (LEFT_STREAM, RIGHT_STREAM):
        rng = np.random.default_rng([seed, stream])
        store = _random_store(rng, bounds, hidden, lattice, common.store)
        extra = _random_processes(rng, bounds, hidden, lattice, channels,
                                  room)
        pair.append(SystemState.of(store, common.processes + tuple(extra)))
    return pair[0], pair[1]
