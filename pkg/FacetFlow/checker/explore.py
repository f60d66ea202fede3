# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.checker state-space helpers.

Declassifier calls fall outside non-interference, so the checks step
through checked_steps, which leaves s-declassify out.

Functions:
  - checked_steps
  - describe_transition
  - reachable_states
"""

from collections import deque
from typing import List, Sequence, Tuple

from FacetFlow.writer.write_trace import event_to_dict

UNCHECKED_RULES = frozenset({'s-declassify'})


def checked_steps(semantics, state, pending: Sequence = ()) -> list:
    """Enabled transitions of state that non-interference speaks about."""
    return [transition for transition in semantics.enabled(state, pending)
            if transition.rule not in UNCHECKED_RULES]


def describe_transition(transition, **extra) -> dict:
    """Encode a transition for a counterexample."""
    described = {'rule': transition.rule,
                 'event': event_to_dict(transition.event)}
    if transition.actor is not None:
        described['actor_label'] = transition.actor.label
    described.update(extra)
    return described


def reachable_states(semantics,
                     initial,
                     inputs: Sequence = (),
                     depth: int = 5,
                     max_states: int = 100000) -> Tuple[List[tuple], bool]:
    """Breadth-first search of the states reachable within depth steps.

    s-skip is not followed. Pending inputs are consumed in order, so a node
    is a (state, cursor) pair.

    Args:
        semantics: Semantics or BaselineSemantics.
        initial: initial state.
        inputs (Sequence[StartEvent]): pending inputs.
        depth (int): maximum number of steps from initial.
        max_states (int): node budget.

    Returns:
        (tuple): (list of (state, cursor) nodes, True iff the budget cut
                 the search short).
    """
    inputs = tuple(inputs)
    start = (initial, 0)
    seen = {start}
    order = [start]
    frontier = deque([(start, 0)])
    while frontier:
        (state, cursor), distance = frontier.popleft()
        if distance >= depth:
            continue
        for transition in checked_steps(semantics, state,
                                        inputs[cursor:cursor + 1]):
            if transition.rule == 's-skip':
                continue
            node = (transition.state, cursor + transition.consumes_input)
            if node in seen:
                continue
            if len(seen) >= max_states:
                return order, True
            seen.add(node)
            order.append(node)
            frontier.append((node, distance + 1))
    return order, False
