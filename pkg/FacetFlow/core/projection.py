# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.core projection at an observer label.

What's here:

Projection functions.
---------------------

Functions:
  - project_processes
  - project_event
  - project_trace
  - project_state
  - visible_trace
  - project

Observer equivalence.
---------------------

Functions:
  - l_equiv
"""

from typing import Iterable, Mapping, Optional

from FacetFlow.core.facet_store import Store, project_store
from FacetFlow.core.lattice import Lattice
from FacetFlow.core.semantics import (NOP, Nop, SendEvent, StartEvent,
                                      SystemState)


def project_processes(processes: Iterable,
                      label: str,
                      lattice: Lattice) -> tuple:
    """Keep the processes whose label is ⊑ label, canonical order kept."""
    return tuple(process for process in processes
                 if lattice.leq(process.label, label))


def project_event(event, label: str, lattice: Lattice,
                  channels: Mapping[str, str]):
    """Keep visible starts and sends, everything else becomes NOP."""
    if isinstance(event, StartEvent):
        return event if lattice.leq(event.process.label, label) else NOP
    if isinstance(event, SendEvent):
        return event if lattice.leq(channels[event.channel], label) else NOP
    return NOP


def project_trace(events: Iterable, label: str, lattice: Lattice,
                  channels: Mapping[str, str]) -> tuple:
    """Project a trace elementwise; its length is unchanged."""
    return tuple(project_event(event, label, lattice, channels)
                 for event in events)


def visible_trace(events: Iterable, label: str, lattice: Lattice,
                  channels: Mapping[str, str]) -> tuple:
    """Project a trace and drop the NOPs."""
    return tuple(event for event in
                 project_trace(events, label, lattice, channels)
                 if event != NOP)


def project_state(state: SystemState, label: str,
                  lattice: Lattice) -> SystemState:
    """(σ, ps)↾l = (σ↾l, ps↾l)."""
    return SystemState(project_store(state.store, label, lattice),
                       project_processes(state.processes, label, lattice))


def project(item, label: str, lattice: Lattice,
            channels: Optional[Mapping[str, str]] = None):
    """Project a state, store, event, trace or process multiset.

    A sequence counts as a trace when it holds events and as a process
    multiset otherwise; the empty sequence projects to itself either way.
    """
    if isinstance(item, SystemState):
        return project_state(item, label, lattice)
    if isinstance(item, Store):
        return project_store(item, label, lattice)
    if isinstance(item, (StartEvent, SendEvent, Nop)):
        return project_event(item, label, lattice, channels or {})
    items = tuple(item)
    if all(isinstance(element, (StartEvent, SendEvent, Nop))
           for element in items):
        return project_trace(items, label, lattice, channels or {})
    return project_processes(items, label, lattice)


def l_equiv(left, right, label: str, lattice: Lattice,
            channels: Optional[Mapping[str, str]] = None) -> bool:
    """Check whether two items look the same to an observer at label."""
    return (project(left, label, lattice, channels) ==
            project(right, label, lattice, channels))
