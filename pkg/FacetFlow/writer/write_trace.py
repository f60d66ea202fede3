# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.writer write trace files.

Traces are JSON lines, one object per step:

    {"step": 0, "rule": "s-send",
     "event": {"type": "send", "channel": "eve", "value": 3}}

Functions:
  - event_to_dict
  - transition_to_dict
  - trace_lines
  - observer_lines
  - write_lines
"""

from json import dumps
from typing import Iterable, List, Mapping

from FacetFlow.core.lattice import Lattice
from FacetFlow.core.projection import project_event
from FacetFlow.core.semantics import SendEvent, StartEvent


def event_to_dict(event) -> dict:
    """Encode an event as a JSON-compatible dict."""
    if isinstance(event, SendEvent):
        return {'type': 'send', 'channel': event.channel,
                'value': event.value}
    if isinstance(event, StartEvent):
        encoded = {'type': 'start', 'label': event.process.label}
        if event.max_label is not None:
            encoded['max_label'] = event.max_label
        return encoded
    return {'type': 'nop'}


def transition_to_dict(step: int, transition) -> dict:
    """Encode one taken transition."""
    return {'step': step, 'rule': transition.rule,
            'event': event_to_dict(transition.event)}


def trace_lines(transitions: Iterable) -> List[str]:
    """Encode a schedule as JSON lines."""
    return [dumps(transition_to_dict(step, transition))
            for step, transition in enumerate(transitions)]


def observer_lines(transitions: Iterable,
                   observer: str,
                   lattice: Lattice,
                   channels: Mapping[str, str]) -> List[str]:
    """Encode the projection of a schedule's events at observer.

    Rules are left out: which rule fired is not observable.
    """
    return [dumps({'step': step,
                   'event': event_to_dict(project_event(
                       transition.event, observer, lattice, channels))})
            for step, transition in enumerate(transitions)]


def write_lines(output_path: str, lines: Iterable[str]) -> None:
    """Write lines, each terminated by a newline.

    Args:
        output_path (str): output file path string.
        lines (Iterable[str]): lines without terminators.
    """
    with open(output_path, 'w', encoding='utf-8', newline='\n') as opened:
        for line in lines:
            opened.write(line + '\n')
