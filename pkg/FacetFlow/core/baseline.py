# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.core floating-label comparison semantics.

Processes carry an effective label that floats up as they read, and in the
max-label designs a maximal label fixed at activation. Store cells hold
one labeled value, or a set of pairwise incomparable facets in
design2-partial. A failed read or write halts the process for good.

What's here:

Floating processes and cell rules.
----------------------------------

Classes:
  - FloatingProcess
  - BaselineState
  - CellOutcome

Functions:
  - baseline_read
  - baseline_write
  - baseline_send
  - baseline_raise

Transition rules.
-----------------

Classes:
  - BaselineSemantics
"""

from dataclasses import dataclass
from enum import Enum
from logging import getLogger
from typing import List, Optional, Tuple

from FacetFlow.core.facet_store import ABSENT, LabeledValue, Store
from FacetFlow.core.lattice import Lattice
from FacetFlow.core.semantics import (NOP, SendEvent, Semantics, StartEvent,
                                      SystemState, Transition, thread_key)
from FacetFlow.core.thread_lang import (OpDeclassify, OpFork, OpRaiseLabel,
                                        OpRead, OpSend, OpStop, OpWrite,
                                        Thread, apply_continuation)
from FacetFlow.errors import ConfigurationError, ContractError

logger = getLogger(__name__)  # pylint: disable=invalid-name

FLOATING_MODES = ('design1', 'design2-total', 'design2-partial')


class CellOutcome(Enum):
    """Non-value results of the cell rules."""

    EMPTY = 'empty'
    ERROR = 'error'


EMPTY = CellOutcome.EMPTY
ERROR = CellOutcome.ERROR


@dataclass(frozen=True)
class FloatingProcess(object):
    """A thread with an effective label and an optional maximal label.

    Attributes:
        thread (Thread): the running thread.
        effective (str): effective label e.
        max_label (str): maximal label m, None in design1.
    """

    thread: Thread
    effective: str
    max_label: Optional[str] = None

    @property
    def label(self) -> str:
        return self.effective

    def sort_key(self) -> Tuple[str, str, str]:
        return self.effective, self.max_label or '', thread_key(self.thread)


@dataclass(frozen=True)
class BaselineState(SystemState):
    """(store of cells, floating processes) in canonical order."""


def baseline_read(cell: tuple,
                  process: FloatingProcess,
                  mode: str,
                  lattice: Lattice):
    """Read a cell under a floating-label design.

    Args:
        cell (tuple): LabeledValue facets of the cell, maybe empty.
        process (FloatingProcess): the reader.
        mode (str): one of FLOATING_MODES.
        lattice (Lattice): active lattice.

    Returns:
        (tuple): (LabeledValue, EMPTY or ERROR; updated process).
    """
    if not cell:
        return EMPTY, process
    if mode == 'design2-partial':
        visible = [facet for facet in cell
                   if lattice.leq(facet.label, process.max_label)]
        if not visible:
            return EMPTY, process
        if len(visible) > 1:
            return ERROR, process
        facet = visible[0]
    else:
        facet = cell[-1]
        if mode == 'design2-total' and not lattice.leq(facet.label,
                                                       process.max_label):
            return EMPTY, process
    effective = lattice.join(process.effective, facet.label)
    return facet, FloatingProcess(process.thread, effective,
                                  process.max_label)


def baseline_write(cell: tuple,
                   process: FloatingProcess,
                   value,
                   mode: str,
                   lattice: Lattice):
    """Write a cell under a floating-label design.

    design1 only overwrites cells labeled at or above the writer's effective
    label; design2-total refuses when the cell label is strictly below it.
    design2-partial replaces the facets at or above the effective label and
    refuses when any facet is strictly below it.

    Returns:
        (tuple or CellOutcome): the new cell, or ERROR.
    """
    effective = process.effective
    written = LabeledValue(value, effective)
    if not cell:
        return (written,)
    if mode == 'design2-partial':
        if any(lattice.less(facet.label, effective) for facet in cell):
            return ERROR
        kept = [facet for facet in cell
                if not lattice.leq(effective, facet.label)]
        return tuple(kept) + (written,)
    current = cell[-1].label
    if mode == 'design1':
        refused = not lattice.leq(effective, current)
    else:
        refused = lattice.less(current, effective)
    return ERROR if refused else (written,)


def baseline_send(process: FloatingProcess,
                  channel_label: str,
                  mode: str,
                  lattice: Lattice) -> bool:
    """Gate a send: design1 on the effective label, design2 on m."""
    gate = process.effective if mode == 'design1' else process.max_label
    return lattice.leq(gate, channel_label)


def baseline_raise(process: FloatingProcess,
                   target: str,
                   mode: str,
                   lattice: Lattice) -> Optional[FloatingProcess]:
    """Join target into the effective label; None when it would pass m."""
    effective = lattice.join(process.effective, target)
    if mode != 'design1' and not lattice.leq(effective, process.max_label):
        return None
    return FloatingProcess(process.thread, effective, process.max_label)


class BaselineSemantics(Semantics):
    """Floating-label rules over the same thread language and scheduler.

    Declassifier calls are not part of these designs and leave the caller
    stuck.
    """

    modes = FLOATING_MODES
    state_type = BaselineState

    def __init__(self, lattice: Lattice, channels, declassifiers=None,
                 mode: str = 'design1', mutations=(), **kwargs) -> None:
        """Initialize BaselineSemantics.

        Raises:
            ConfigurationError: unknown mode or any mutation requested.
        """
        if mutations:
            raise ConfigurationError(
                'mutations apply to the faceted semantics only')
        super().__init__(lattice, channels, declassifiers, mode, (),
                         **kwargs)

    def start(self, state: SystemState, event: StartEvent) -> BaselineState:
        process = event.process
        max_label = None
        if self.mode != 'design1':
            max_label = event.max_label or process.label
            if not self.lattice.leq(process.label, max_label):
                raise ConfigurationError(
                    f'maximal label {max_label!r} is below the activation '
                    f'label {process.label!r}')
        started = FloatingProcess(process.thread, process.label, max_label)
        return self.state_type.of(state.store,
                                  state.processes + (started,))

    def process_steps(self,
                      store: Store,
                      process: FloatingProcess,
                      rest: tuple) -> List[Transition]:
        operation = self.operation(process.thread)

        def successor(store_, *processes) -> BaselineState:
            return self.state_type.of(store_, rest + processes)

        def resumed(thread: Thread, template=process) -> FloatingProcess:
            return FloatingProcess(thread, template.effective,
                                   template.max_label)

        def halted(rule: str) -> List[Transition]:
            return [Transition(rule, NOP,
                               successor(store, resumed(Thread.halted())),
                               process)]

        if isinstance(operation, (OpStop, OpDeclassify)):
            return []
        if isinstance(operation, OpSend):
            channel_label = self.channel_label(operation.channel)
            if not baseline_send(process, channel_label, self.mode,
                                 self.lattice):
                return []
            event = SendEvent(operation.channel, operation.value)
            return [Transition('s-send', event,
                               successor(store, resumed(operation.cont)),
                               process)]
        if isinstance(operation, OpRead):
            result, reader = baseline_read(store.get(operation.key), process,
                                           self.mode, self.lattice)
            if result is ERROR:
                return halted('s-read-error')
            value = ABSENT if result is EMPTY else result
            thread = apply_continuation(operation.cont, value)
            return [Transition('s-read', NOP,
                               successor(store, resumed(thread, reader)),
                               process)]
        if isinstance(operation, OpWrite):
            cell = baseline_write(store.get(operation.key), process,
                                  operation.value, self.mode, self.lattice)
            if cell is ERROR:
                return halted('s-write-error')
            return [Transition('s-write', NOP,
                               successor(store.assign(operation.key, cell),
                                         resumed(operation.cont)),
                               process)]
        if isinstance(operation, OpFork):
            return [Transition('s-fork', NOP,
                               successor(store, resumed(operation.cont),
                                         resumed(operation.child)),
                               process)]
        if isinstance(operation, OpRaiseLabel):
            raised = baseline_raise(process, operation.label, self.mode,
                                    self.lattice)
            if raised is None:
                return []
            return [Transition('s-raise-label', NOP,
                               successor(store, resumed(operation.cont,
                                                        raised)),
                               process)]
        raise ContractError(f'unexpected operation {operation!r}')

