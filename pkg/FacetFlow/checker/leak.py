# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.checker leak measurement.

For each candidate secret the scenario is explored exhaustively and the
observer's view of every quiescent run is collected: the run's events
projected at the observer with NOPs dropped. A run is quiescent when it
ends in a state where only s-skip is enabled. Secrets with equal sets of
views are indistinguishable; the leak is log2 of the number of classes.

What's here:

Classes:
  - LeakReport

Functions:
  - observable_runs
  - explore_secret
  - measure_leak
"""

from dataclasses import dataclass, field
from logging import getLogger
from multiprocessing import Pool
from time import perf_counter
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from FacetFlow.checker.verdict import Status
from FacetFlow.core.projection import project_event
from FacetFlow.core.semantics import NOP
from FacetFlow.errors import ContractError, ScenarioError
from FacetFlow.writer.write_trace import event_to_dict

logger = getLogger(__name__)  # pylint: disable=invalid-name

DEFAULT_MAX_STATES = 500000


class _BudgetExceeded(Exception):
    """A run was longer than the depth or the state budget ran out."""


@dataclass
class LeakReport(object):
    """Result of one leak measurement.

    Attributes:
        mode (str): policy mode measured.
        observer (str): observer label.
        depth (int): longest run explored.
        status (Status): PASS when measured, INCONCLUSIVE otherwise.
        bits (float): log2 of the number of classes, None if inconclusive.
        classes (list): lists of secrets the observer cannot tell apart.
        witnesses (list): one distinguishing view per extra class.
        states_explored (int): states visited over all secrets.
        wall_time (float): seconds spent.
    """

    mode: str
    observer: str
    depth: int
    status: Status = Status.PASS
    bits: Optional[float] = None
    classes: List[list] = field(default_factory=list)
    witnesses: List[dict] = field(default_factory=list)
    states_explored: int = 0
    wall_time: float = 0.0


def observable_runs(semantics,
                    initial,
                    inputs: Sequence,
                    observer: str,
                    depth: int,
                    max_states: int = DEFAULT_MAX_STATES
                    ) -> Tuple[FrozenSet[tuple], int]:
    """Collect the observer's views of every quiescent run.

    Args:
        semantics: Semantics or BaselineSemantics.
        initial: initial state.
        inputs (Sequence[StartEvent]): pending inputs.
        observer (str): observer label.
        depth (int): longest run allowed.
        max_states (int): state budget.

    Returns:
        (tuple): (frozenset of views, states explored).

    Raises:
        _BudgetExceeded: a run is longer than depth or the budget ran out.
    """
    inputs = tuple(inputs)
    lattice, channels = semantics.lattice, semantics.channels
    memo: Dict[tuple, Tuple[FrozenSet[tuple], int]] = {}

    def runs(node: tuple, remaining: int) -> Tuple[FrozenSet[tuple], int]:
        cached = memo.get(node)
        if cached is not None:
            if cached[1] > remaining:
                raise _BudgetExceeded
            return cached
        state, cursor = node
        steps = [transition for transition in
                 semantics.enabled(state, inputs[cursor:cursor + 1])
                 if transition.rule != 's-skip']
        if not steps:
            result = (frozenset({()}), 0)
        else:
            if remaining == 0:
                raise _BudgetExceeded
            views, longest = set(), 0
            for transition in steps:
                tails, length = runs(
                    (transition.state, cursor + transition.consumes_input),
                    remaining - 1)
                event = project_event(transition.event, observer, lattice,
                                      channels)
                head = () if event == NOP else (event,)
                views.update(head + tail for tail in tails)
                longest = max(longest, length + 1)
            result = (frozenset(views), longest)
        if len(memo) >= max_states:
            raise _BudgetExceeded
        memo[node] = result
        return result

    views, _ = runs((initial, 0), depth)
    return views, len(memo)


def explore_secret(explore_args: tuple) -> tuple:
    """Explore one secret; the Pool worker of measure_leak.

    Args:
        explore_args (tuple): (scenario, mode, mutations, secret, observer,
                              depth, max_states).

    Returns:
        (tuple): (secret, frozenset of views or None, states explored).
    """
    (scenario, mode, mutations, secret, observer, depth,
     max_states) = explore_args
    semantics = scenario.semantics(mode, mutations)
    initial = scenario.initial_state(semantics, secret)
    try:
        views, explored = observable_runs(semantics, initial,
                                          scenario.pending_inputs, observer,
                                          depth, max_states)
    except _BudgetExceeded:
        return secret, None, max_states
    return secret, views, explored


def measure_leak(scenario,
                 mode=None,
                 observer: Optional[str] = None,
                 depth: int = 40,
                 secrets: Optional[Sequence] = None,
                 mutations: Sequence[str] = (),
                 threads: int = 1,
                 max_states: int = DEFAULT_MAX_STATES) -> LeakReport:
    """Count how many secrets an observer can tell apart.

    Args:
        scenario (Scenario): scenario with a secret slot.
        mode (PolicyMode or str): policy mode, default the scenario's.
        observer (str): observer label, default the lattice bottom.
        depth (int): longest run explored.
        secrets (Sequence): candidate secrets, default the scenario's.
        mutations (Sequence[str]): broken rules for faceted modes.
        threads (int): worker processes.
        max_states (int): state budget per secret.

    Returns:
        (LeakReport): bits, classes and distinguishing views.

    Raises:
        ScenarioError: the scenario has no secret slot or no secrets.
        ContractError: negative depth.
    """
    if scenario.secret_slot is None:
        raise ScenarioError('leak measurement needs a secret_slot')
    secrets = tuple(scenario.secret_values if secrets is None else secrets)
    if not secrets:
        raise ScenarioError('leak measurement needs secret values')
    if depth < 0:
        raise ContractError(f'depth must be >= 0, got {depth}')
    mode = mode or scenario.mode
    mode_name = getattr(mode, 'value', mode)
    observer = observer or scenario.lattice.bottom
    started = perf_counter()
    explore_args = [(scenario, mode, tuple(mutations), secret, observer,
                     depth, max_states) for secret in secrets]
    if threads > 1:
        with Pool(processes=threads) as pool:
            results = pool.map(explore_secret, explore_args)
    else:
        results = [explore_secret(args) for args in explore_args]

    report = LeakReport(mode_name, observer, depth)
    report.states_explored = sum(explored for _, _, explored in results)
    if any(views is None for _, views, _ in results):
        report.status = Status.INCONCLUSIVE
        report.wall_time = perf_counter() - started
        return report

    class_views: List[FrozenSet[tuple]] = []
    for secret, views, _ in results:
        for index, known in enumerate(class_views):
            if known == views:
                report.classes[index].append(secret)
                break
        else:
            class_views.append(views)
            report.classes.append([secret])
    for index in range(1, len(class_views)):
        difference = class_views[index] ^ class_views[0]
        witness = min(difference, key=lambda view: (len(view), repr(view)))
        report.witnesses.append({
            'secrets': [report.classes[0][0], report.classes[index][0]],
            'seen_with': report.classes[index][0]
            if witness in class_views[index] else report.classes[0][0],
            'trace': [event_to_dict(event) for event in witness]})
    report.bits = float(np.log2(len(class_views)))
    report.wall_time = perf_counter() - started
    logger.debug(f'Leak under {mode_name} at {observer}: {report.bits} bits '
                 f'over {len(secrets)} secrets')
    return report
