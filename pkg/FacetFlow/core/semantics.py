# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.core labeled transition system.

System states pair a faceted store with a multiset of statically labeled
processes. Semantics.enabled lists every transition one rule application
can take; run_schedule strings transitions together into a trace.

What's here:

States and events.
------------------

Classes:
  - Process
  - SystemState
  - StartEvent
  - SendEvent
  - Nop
  - Transition
  - Declassifier

Rules and schedules.
--------------------

Classes:
  - Semantics

Functions:
  - thread_operation
  - invoke_declassifier
  - canonical_processes
  - run_schedule
"""

from dataclasses import dataclass, field
from functools import lru_cache
from logging import getLogger
from typing import (Iterable, List, Mapping, Optional, Sequence,
                    Tuple, Union)

import numpy as np

from FacetFlow.core.facet_store import (EMPTY_STORE, LabeledValue, Store,
                                        last, project_seq, value_kind,
                                        write)
from FacetFlow.core.lattice import Lattice
from FacetFlow.core.thread_lang import (DEFAULT_FUEL, Block, OpDeclassify,
                                        OpFork, OpRaiseLabel, OpRead,
                                        OpSend, OpStop, OpWrite, Operation,
                                        Thread, apply_continuation, run)
from FacetFlow.errors import ConfigurationError, ContractError

logger = getLogger(__name__)  # pylint: disable=invalid-name

FACETED_MODES = ('trapeze', 'trapeze-unique-read', 'naive')
MUTATIONS = ('drop-send-check', 'no-write-gc', 'ignore-read-visibility',
             'ignore-conflicting-writes', 'overwrite-store')
NAIVE_MUTATIONS = frozenset({'overwrite-store', 'ignore-read-visibility'})


@lru_cache(maxsize=1 << 16)
def thread_operation(thread: Thread, fuel: int) -> Operation:
    """Run a thread to its next operation, memoized across semantics."""
    return run(thread, fuel)


@lru_cache(maxsize=1 << 16)
def thread_key(thread: Thread) -> str:
    """Structural encoding of a thread, stable across interpreters."""
    return repr(thread)


@dataclass(frozen=True)
class Process(object):
    """A thread running at a static label."""

    thread: Thread
    label: str

    def sort_key(self) -> Tuple[str, str]:
        return self.label, thread_key(self.thread)


def canonical_processes(processes: Iterable) -> tuple:
    """Sort a process multiset into its canonical tuple."""
    return tuple(sorted(processes, key=lambda process: process.sort_key()))


@dataclass(frozen=True)
class SystemState(object):
    """Σ = (σ, ps); processes are always held in canonical order.

    Build states with SystemState.of so that equal multisets compare equal.
    """

    store: Store
    processes: tuple = ()

    @classmethod
    def of(cls, store: Store, processes: Iterable = ()) -> 'SystemState':
        return cls(store, canonical_processes(processes))

    @classmethod
    def initial(cls) -> 'SystemState':
        """σ0 with the empty multiset."""
        return cls(EMPTY_STORE, ())


@dataclass(frozen=True)
class StartEvent(object):
    """An incoming activation.

    Attributes:
        process (Process): the process to add.
        max_label (str): maximal label for max-label baseline modes.
    """

    process: Process
    max_label: Optional[str] = None


@dataclass(frozen=True)
class SendEvent(object):
    channel: str
    value: Union[int, bool, str]
    kind: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'kind', value_kind(self.value))


@dataclass(frozen=True)
class Nop(object):
    """The silent event."""

    def __repr__(self) -> str:
        return 'NOP'


NOP = Nop()
Event = Union[StartEvent, SendEvent, Nop]


@dataclass(frozen=True)
class Transition(object):
    """One enabled transition.

    Attributes:
        rule (str): rule tag, e.g. 's-send'.
        event (Event): emitted event.
        state: successor state.
        actor: the process that stepped, the started process for s-start,
            None for s-skip.
        consumes_input (bool): True iff the head pending input was used.
    """

    rule: str
    event: Event
    state: object
    actor: object = None
    consumes_input: bool = False


@dataclass(frozen=True)
class Declassifier(object):
    """A trusted ⟨high, low, body⟩ triple with low strictly below high."""

    name: str
    high: str
    low: str
    body: Block


def invoke_declassifier(declassifier: Declassifier,
                        caller_label: str,
                        lattice: Lattice) -> str:
    """Label a declassifier body starts at when called from caller_label.

    Args:
        declassifier (Declassifier): the called declassifier.
        caller_label (str): label of the calling process.
        lattice (Lattice): active lattice.

    Returns:
        (str): declassifier.low when low ⊑ caller ⊑ high, else the caller
            label unchanged.
    """
    if (lattice.leq(declassifier.low, caller_label) and
            lattice.leq(caller_label, declassifier.high)):
        return declassifier.low
    return caller_label


class Semantics(object):
    """The faceted-store transition rules.

    Attributes:
        lattice (Lattice): active lattice.
        channels (dict): channel name as key and label as value.
        declassifiers (dict): declassifier name as key and Declassifier as
            value.
        mode (str): one of the class's modes.
        mutations (frozenset): deliberately broken rules, see MUTATIONS.
        fuel (int): pure-step budget handed to run.
    """

    modes = FACETED_MODES
    state_type = SystemState

    def __init__(self,
                 lattice: Lattice,
                 channels: Mapping[str, str],
                 declassifiers: Mapping[str, Declassifier] = None,
                 mode: str = 'trapeze',
                 mutations: Iterable[str] = (),
                 fuel: int = DEFAULT_FUEL) -> None:
        """Initialize Semantics.

        Raises:
            ConfigurationError: unknown mode, mutation or channel label.
        """
        if mode not in self.modes:
            raise ConfigurationError(
                f'unknown mode {mode!r} for {type(self).__name__}')
        mutations = frozenset(mutations)
        unknown = sorted(mutations.difference(MUTATIONS))
        if unknown:
            raise ConfigurationError(f'unknown mutations {unknown}')
        if mode == 'naive':
            mutations = mutations | NAIVE_MUTATIONS
        for channel, label in channels.items():
            if label not in lattice:
                raise ConfigurationError(
                    f'channel {channel!r} has unknown label {label!r}')
        self.lattice = lattice
        self.channels = dict(channels)
        self.declassifiers = dict(declassifiers or {})
        self.mode = mode
        self.mutations = mutations
        self.fuel = fuel
        super().__init__()

    def operation(self, thread: Thread) -> Operation:
        """Memoized run of a thread."""
        return thread_operation(thread, self.fuel)

    def channel_label(self, channel: str) -> str:
        try:
            return self.channels[channel]
        except KeyError:
            raise ConfigurationError(f'unknown channel {channel!r}') from None

    def start(self, state: SystemState, event: StartEvent) -> SystemState:
        """Add an activated process to the multiset."""
        return self.state_type.of(state.store,
                                  state.processes + (event.process,))

    def initial_state(self, store: Store, activations=()) -> SystemState:
        """Build the state reached by starting each activation over store.

        Args:
            store (Store): initial store.
            activations (Iterable[StartEvent]): processes present from the
                beginning.

        Returns:
            (SystemState): the initial state of this semantics.
        """
        state = self.state_type.of(store, ())
        for event in activations:
            state = self.start(state, event)
        return state

    def write_store(self, store: Store, key: str, value, label: str) -> Store:
        """Apply the write rule, honouring storage mutations."""
        seq = store.get(key)
        if 'overwrite-store' in self.mutations:
            return store.assign(key, (LabeledValue(value, label),))
        if 'ignore-conflicting-writes' in self.mutations and any(
                not self.lattice.comparable(facet.label, label)
                for facet in seq):
            return store
        if 'no-write-gc' in self.mutations:
            return store.assign(key, seq + (LabeledValue(value, label),))
        return write(store, key, value, label, self.lattice)

    def visible_facets(self, store: Store, key: str, label: str) -> tuple:
        if 'ignore-read-visibility' in self.mutations:
            return store.get(key)
        return project_seq(store.get(key), label, self.lattice)

    def process_steps(self,
                      store: Store,
                      process: Process,
                      rest: tuple) -> List[Transition]:
        """Transitions of one process; empty when it is stuck or stopped.

        Args:
            store (Store): current store.
            process (Process): the stepping process.
            rest (tuple): every other process of the multiset.

        Returns:
            (list): zero or one Transition.
        """
        label = process.label
        operation = self.operation(process.thread)

        def successor(store_, *processes) -> SystemState:
            return self.state_type.of(store_, rest + processes)

        if isinstance(operation, OpStop):
            return []
        if isinstance(operation, OpSend):
            allowed = ('drop-send-check' in self.mutations or
                       self.lattice.leq(
                           label, self.channel_label(operation.channel)))
            if not allowed:
                return []
            event = SendEvent(operation.channel, operation.value)
            return [Transition(
                's-send', event,
                successor(store, Process(operation.cont, label)), process)]
        if isinstance(operation, OpRead):
            visible = self.visible_facets(store, operation.key, label)
            if self.mode == 'trapeze-unique-read' and len(visible) > 1:
                return [Transition(
                    's-read-error', NOP,
                    successor(store, Process(Thread.halted(), label)),
                    process)]
            thread = apply_continuation(operation.cont, last(visible))
            return [Transition('s-read', NOP,
                               successor(store, Process(thread, label)),
                               process)]
        if isinstance(operation, OpWrite):
            store_ = self.write_store(store, operation.key, operation.value,
                                      label)
            return [Transition('s-write', NOP,
                               successor(store_, Process(operation.cont,
                                                         label)),
                               process)]
        if isinstance(operation, OpFork):
            return [Transition('s-fork', NOP,
                               successor(store,
                                         Process(operation.cont, label),
                                         Process(operation.child, label)),
                               process)]
        if isinstance(operation, OpRaiseLabel):
            if not self.lattice.leq(label, operation.label):
                return []
            return [Transition(
                's-raise-label', NOP,
                successor(store, Process(operation.cont, operation.label)),
                process)]
        if isinstance(operation, OpDeclassify):
            declassifier = self.declassifiers.get(operation.name)
            if declassifier is None:
                raise ConfigurationError(
                    f'unknown declassifier {operation.name!r}')
            child_label = invoke_declassifier(declassifier, label,
                                              self.lattice)
            child = Process(Thread.start(declassifier.body), child_label)
            return [Transition('s-declassify', NOP,
                               successor(store,
                                         Process(operation.cont, label),
                                         child),
                               process)]
        raise ContractError(f'unexpected operation {operation!r}')

    def enabled(self,
                state: SystemState,
                pending: Sequence[StartEvent] = ()) -> List[Transition]:
        """Enumerate every transition one rule application can take.

        Only the head of pending can be started. Identical processes of
        the multiset contribute one transition. s-skip is always last.

        Args:
            state (SystemState): current state.
            pending (Sequence[StartEvent]): inputs not yet consumed.

        Returns:
            (list): enabled Transition objects, never empty.
        """
        transitions = []
        if pending:
            head = pending[0]
            transitions.append(Transition('s-start', head,
                                          self.start(state, head),
                                          head.process, True))
        processes = state.processes
        for index, process in enumerate(processes):
            if index and processes[index - 1] == process:
                continue
            rest = processes[:index] + processes[index + 1:]
            transitions.extend(self.process_steps(state.store, process, rest))
        transitions.append(Transition('s-skip', NOP, state))
        return transitions

    def step(self,
             state: SystemState,
             choice: int,
             pending: Sequence[StartEvent] = ()) -> Tuple[Event, object]:
        """Apply the transition at position choice of enabled.

        Raises:
            ContractError: choice does not index the enabled list.
        """
        transitions = self.enabled(state, pending)
        if not 0 <= choice < len(transitions):
            raise ContractError(
                f'stale choice index {choice}: {len(transitions)} '
                'transitions enabled')
        transition = transitions[choice]
        return transition.event, transition.state


def run_schedule(semantics,
                 initial,
                 inputs: Sequence[StartEvent] = (),
                 policy: str = 'random',
                 max_steps: int = 1000,
                 seed: int = 0) -> List[Transition]:
    """Run one schedule and record the transitions taken.

    s-skip is never chosen. The 'random' policy draws uniformly among the
    other enabled transitions with a seeded numpy generator; 'fifo' takes
    the first one, so pending inputs go before internal steps and
    processes step in canonical order.

    Args:
        semantics: Semantics or BaselineSemantics.
        initial: initial state.
        inputs (Sequence[StartEvent]): pending inputs, consumed in order.
        policy (str): 'random' or 'fifo'.
        max_steps (int): step limit, non-negative.
        seed (int): generator seed for the random policy.

    Returns:
        (list): taken Transition objects; their events form the trace.

    Raises:
        ContractError: negative max_steps or unknown policy.
    """
    if max_steps < 0:
        raise ContractError(f'max_steps must be >= 0, got {max_steps}')
    if policy not in ('random', 'fifo'):
        raise ContractError(f'unknown scheduler policy {policy!r}')
    rng = np.random.default_rng(seed)
    inputs = tuple(inputs)
    state, cursor, taken = initial, 0, []
    while len(taken) < max_steps:
        candidates = [transition for transition in
                      semantics.enabled(state, inputs[cursor:cursor + 1])
                      if transition.rule != 's-skip']
        if not candidates:
            break
        if policy == 'fifo':
            transition = candidates[0]
        else:
            transition = candidates[int(rng.integers(len(candidates)))]
        taken.append(transition)
        state = transition.state
        cursor += transition.consumes_input
    logger.debug(f'Schedule stopped after {len(taken)} steps.')
    return taken
