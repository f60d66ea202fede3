# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.checker bounded trace non-interference.

Every trace of length at most depth from the first state must be matched,
step for step, by a trace of the same length from the second state whose
events project to the same events and whose states stay l-equivalent.

The second side is tracked as the set of all its states reachable with a
matching history, so a single search over first-side traces decides the
property exactly. Results are memoized on (first node, second set).

What's here:

Functions:
  - check_trace_tsni
  - check_trace_tsni_pair
"""

from logging import getLogger
from time import perf_counter
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from FacetFlow.checker.explore import checked_steps, describe_transition
from FacetFlow.checker.verdict import Status, Verdict, merge_verdicts
from FacetFlow.core.projection import l_equiv, project_event, project_state
from FacetFlow.errors import ContractError

logger = getLogger(__name__)  # pylint: disable=invalid-name

MAX_DEPTH = 64
DEFAULT_MAX_STATES = 200000


class _BudgetExceeded(Exception):
    """The search visited more nodes than allowed."""


class _TraceMatcher(object):
    """Search state of one check_trace_tsni call."""

    def __init__(self, semantics, observer: str, inputs: Sequence,
                 max_states: int) -> None:
        self.semantics = semantics
        self.observer = observer
        self.inputs = tuple(inputs)
        self.max_states = max_states
        self.explored = 0
        self.proven: Dict[Tuple[tuple, FrozenSet], int] = {}
        self.successor_index: Dict[tuple, Dict[tuple, tuple]] = {}
        super().__init__()

    def steps(self, node: tuple) -> list:
        state, cursor = node
        return checked_steps(self.semantics, state,
                             self.inputs[cursor:cursor + 1])

    def observed(self, transition) -> tuple:
        lattice = self.semantics.lattice
        return (project_event(transition.event, self.observer, lattice,
                              self.semantics.channels),
                project_state(transition.state, self.observer, lattice))

    def successors(self, node: tuple) -> Dict[tuple, tuple]:
        """Second-side successors of a node grouped by what is observed."""
        index = self.successor_index.get(node)
        if index is None:
            grouped: Dict[tuple, list] = {}
            for transition in self.steps(node):
                grouped.setdefault(self.observed(transition), []).append(
                    (transition.state,
                     node[1] + transition.consumes_input))
            index = {key: tuple(nodes) for key, nodes in grouped.items()}
            self.successor_index[node] = index
        return index

    def match(self, node: tuple, group: FrozenSet, remaining: int,
              path: List[dict]) -> Optional[List[dict]]:
        """Return a first-side trace no member of group can follow."""
        if remaining == 0:
            return None
        key = (node, group)
        if self.proven.get(key, -1) >= remaining:
            return None
        self.explored += 1
        if self.explored > self.max_states:
            raise _BudgetExceeded
        for transition in self.steps(node):
            if transition.rule == 's-skip':
                continue
            observed = self.observed(transition)
            followers = frozenset(
                successor for member in group
                for successor in self.successors(member).get(observed, ()))
            trace = path + [describe_transition(transition, side='first')]
            if not followers:
                return trace
            following = (transition.state,
                         node[1] + transition.consumes_input)
            found = self.match(following, followers, remaining - 1, trace)
            if found is not None:
                return found
        self.proven[key] = remaining
        return None


def check_trace_tsni(semantics, state1, state2, observer: str, depth: int,
                     inputs: Sequence = (),
                     max_states: int = DEFAULT_MAX_STATES) -> Verdict:
    """Check bounded trace inclusion of state1 in state2 at observer.

    Args:
        semantics: faceted Semantics.
        state1: first state.
        state2: second state, l-equivalent to state1.
        observer (str): observer label.
        depth (int): maximal trace length, 0..MAX_DEPTH.
        inputs (Sequence[StartEvent]): pending inputs of both sides.
        max_states (int): search budget; running out is INCONCLUSIVE.

    Returns:
        (Verdict): PASS, FAIL with the unmatched first-side trace, or
                   INCONCLUSIVE.

    Raises:
        ContractError: states not l-equivalent or depth out of range.
    """
    if not 0 <= depth <= MAX_DEPTH:
        raise ContractError(f'depth must be within 0..{MAX_DEPTH}')
    if not l_equiv(state1, state2, observer, semantics.lattice):
        raise ContractError('trace TSNI needs l-equivalent states')
    started = perf_counter()
    matcher = _TraceMatcher(semantics, observer, inputs, max_states)
    verdict = Verdict('tsni-trace',
                      parameters={'observer': observer, 'depth': depth})
    try:
        trace = matcher.match((state1, 0), frozenset({(state2, 0)}), depth,
                              [])
        if trace is not None:
            verdict = verdict.fail(
                f'a first-side trace of length {len(trace)} has no '
                'l-equivalent second-side trace', trace)
    except _BudgetExceeded:
        verdict.status = Status.INCONCLUSIVE
        verdict.reason = f'search budget of {max_states} nodes exceeded'
    verdict.states_explored = matcher.explored
    verdict.wall_time = perf_counter() - started
    logger.debug(f'Trace TSNI at depth {depth}: {verdict.status.name}, '
                 f'{matcher.explored} nodes')
    return verdict


def check_trace_tsni_pair(semantics, state1, state2, observer: str,
                          depth: int, inputs: Sequence = (),
                          max_states: int = DEFAULT_MAX_STATES) -> Verdict:
    """Run check_trace_tsni in both directions and merge the verdicts."""
    forward = check_trace_tsni(semantics, state1, state2, observer, depth,
                               inputs, max_states)
    backward = check_trace_tsni(semantics, state2, state1, observer, depth,
                                inputs, max_states)
    return merge_verdicts('tsni-trace', (forward, backward),
                          forward.parameters)
