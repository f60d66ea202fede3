# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.checker single-state properties.

Each check enumerates every enabled transition of a state, s-skip
included and s-declassify left out, and compares what an observer sees.
Two transitions match when their events project to the same event and
their successors project to the same state.

What's here:

Functions:
  - check_projection_part1
  - check_projection_part2
  - check_invisibility
  - check_store_invariant
  - check_single_step_tsni
"""

from time import perf_counter
from typing import Sequence

from FacetFlow.checker.explore import checked_steps, describe_transition
from FacetFlow.checker.verdict import Verdict
from FacetFlow.core.facet_store import project_store, seq_invariant_holds
from FacetFlow.core.projection import (l_equiv, project_event,
                                       project_processes, project_state)
from FacetFlow.core.semantics import NOP
from FacetFlow.errors import ContractError


def _observed(semantics, transition, observer: str) -> tuple:
    lattice = semantics.lattice
    return (project_event(transition.event, observer, lattice,
                          semantics.channels),
            project_state(transition.state, observer, lattice))


def _simulated_by(semantics, left, right, observer: str, inputs: Sequence,
                  name: str, sides: tuple) -> Verdict:
    """Every step of left must have an l-equivalent step of right."""
    started = perf_counter()
    pending = tuple(inputs)[:1]
    left_steps = checked_steps(semantics, left, pending)
    right_steps = checked_steps(semantics, right, pending)
    available = {_observed(semantics, step, observer) for step in right_steps}
    verdict = Verdict(name, parameters={'observer': observer},
                      states_explored=len(left_steps) + len(right_steps))
    for step in left_steps:
        if _observed(semantics, step, observer) not in available:
            verdict = verdict.fail(
                f'{sides[0]} step {step.rule} has no matching step on the '
                f'{sides[1]} side',
                [describe_transition(step, side=sides[0])])
            break
    verdict.wall_time = perf_counter() - started
    return verdict


def check_projection_part1(semantics, state, observer: str,
                           inputs: Sequence = ()) -> Verdict:
    """Every step of Σ is matched by a step of Σ↾observer."""
    projected = project_state(state, observer, semantics.lattice)
    return _simulated_by(semantics, state, projected, observer, inputs,
                         'projection1', ('full', 'projected'))


def check_projection_part2(semantics, state, observer: str,
                           inputs: Sequence = ()) -> Verdict:
    """Every step of Σ↾observer is matched by a step of Σ."""
    projected = project_state(state, observer, semantics.lattice)
    return _simulated_by(semantics, projected, state, observer, inputs,
                         'projection2', ('projected', 'full'))


def check_single_step_tsni(semantics, state1, state2, observer: str,
                           inputs: Sequence = ()) -> Verdict:
    """Every step of state1 is matched by a step of state2.

    Raises:
        ContractError: the states are not l-equivalent at observer.
    """
    if not l_equiv(state1, state2, observer, semantics.lattice):
        raise ContractError('single-step TSNI needs l-equivalent states')
    return _simulated_by(semantics, state1, state2, observer, inputs,
                         'tsni-step', ('first', 'second'))


def check_invisibility(semantics, state, observer: str,
                       inputs: Sequence = ()) -> Verdict:
    """Steps of processes above observer must not show at observer.

    For every transition whose actor label is not ⊑ observer the projected
    store and process multiset stay the same and the event projects to NOP.
    """
    started = perf_counter()
    lattice = semantics.lattice
    store_view = project_store(state.store, observer, lattice)
    process_view = project_processes(state.processes, observer, lattice)
    steps = checked_steps(semantics, state, tuple(inputs)[:1])
    verdict = Verdict('invisibility', parameters={'observer': observer},
                      states_explored=len(steps))
    for step in steps:
        if step.actor is None or lattice.leq(step.actor.label, observer):
            continue
        problems = []
        if project_store(step.state.store, observer, lattice) != store_view:
            problems.append('store projection changed')
        if project_event(step.event, observer, lattice,
                         semantics.channels) != NOP:
            problems.append('event is visible')
        if project_processes(step.state.processes, observer,
                             lattice) != process_view:
            problems.append('process projection changed')
        if problems:
            verdict = verdict.fail(
                f'{step.rule} at {step.actor.label}: ' + ', '.join(problems),
                [describe_transition(step)])
            break
    verdict.wall_time = perf_counter() - started
    return verdict


def check_store_invariant(semantics, state, observer: str = '',
                          inputs: Sequence = ()) -> Verdict:
    """Every successor store keeps the write invariant on every key.

    observer is unused; it keeps the signature of the other checks.
    """
    started = perf_counter()
    steps = checked_steps(semantics, state, tuple(inputs)[:1])
    verdict = Verdict('store-invariant', states_explored=len(steps))
    for step in steps:
        broken = [key for key, seq in step.state.store.items()
                  if not seq_invariant_holds(seq, semantics.lattice)]
        if broken:
            verdict = verdict.fail(
                f'{step.rule} breaks the write invariant on key {broken[0]!r}',
                [describe_transition(step)])
            break
    verdict.wall_time = perf_counter() - started
    return verdict
