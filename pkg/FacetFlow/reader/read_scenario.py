# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.reader read scenario files.

A scenario is a JSON document:

    {"lattice": {"labels": [...], "edges": [[lower, higher], ...]},
     "channels": {"eve": "e"},
     "initial_store": [{"key": "100", "value": 7, "label": "top"}],
     "processes": [{"label": "e", "program": [...]}],
     "pending_inputs": [{"label": "e", "program": [...]}],
     "declassifiers": [{"name": "release", "high": "top", "low": "bot",
                        "body": [...]}],
     "mode": "trapeze",
     "secret_slot": {"key": "100", "label": "top"},
     "secret_values": [0, 1],
     "observer": "e"}

Only "lattice" is required.

Classes:
  - Scenario

Functions:
  - load_scenario
  - scenario_from_dict
  - parse_value
"""

from dataclasses import dataclass, field
from json import JSONDecodeError, load, loads
from logging import getLogger
from pathlib import Path
from typing import Dict, Optional, Tuple

from FacetFlow.core.facet_store import Store, store_from_writes, value_kind
from FacetFlow.core.lattice import Lattice
from FacetFlow.core.policy import PolicyMode, make_semantics
from FacetFlow.core.semantics import Declassifier, Process, StartEvent
from FacetFlow.core.thread_lang import DEFAULT_FUEL, Thread
from FacetFlow.errors import ConfigurationError, ScenarioError
from FacetFlow.reader.read_program import parse_program

logger = getLogger(__name__)  # pylint: disable=invalid-name


@dataclass
class Scenario(object):
    """A validated scenario.

    Attributes:
        lattice (Lattice): security lattice.
        channels (dict): channel name as key and label as value.
        initial_store (tuple): (key, value, label) writes, oldest first.
        processes (tuple): StartEvent for every process present at start.
        pending_inputs (tuple): StartEvent inputs consumed in order.
        declassifiers (dict): name as key and Declassifier as value.
        mode (PolicyMode): default policy mode.
        secret_slot (tuple): (key, label) of the secret, or None.
        secret_values (tuple): candidate secrets for leak measurement.
        path (str): file the scenario came from.
        default_observer (str): observer used when none is asked for.
    """

    lattice: Lattice
    channels: Dict[str, str] = field(default_factory=dict)
    initial_store: Tuple = ()
    processes: Tuple = ()
    pending_inputs: Tuple = ()
    declassifiers: Dict[str, Declassifier] = field(default_factory=dict)
    mode: PolicyMode = PolicyMode.TRAPEZE
    secret_slot: Optional[Tuple[str, str]] = None
    secret_values: Tuple = ()
    path: str = ''
    default_observer: Optional[str] = None

    def store(self, secret=None) -> Store:
        """Build σ from the initial writes, then the secret if given.

        Raises:
            ScenarioError: a secret is given but there is no secret slot.
        """
        writes = list(self.initial_store)
        if secret is not None:
            if self.secret_slot is None:
                raise ScenarioError('scenario has no secret_slot')
            key, label = self.secret_slot
            writes.append((key, secret, label))
        return store_from_writes(writes, self.lattice)

    def default_secret(self):
        """First candidate secret, None when there is none."""
        if self.secret_slot is None or not self.secret_values:
            return None
        return self.secret_values[0]

    def observer(self, label: Optional[str] = None) -> str:
        """Resolve an observer label.

        Defaults to the scenario's observer, else the lattice bottom.

        Raises:
            ScenarioError: the label is not in the lattice.
        """
        if label is None:
            label = self.default_observer or self.lattice.bottom
        return _label(self.lattice, label, 'observer')

    def semantics(self, mode=None, mutations=(), fuel: int = DEFAULT_FUEL):
        """Build the transition rules of a mode, default the scenario's."""
        return make_semantics(mode or self.mode, self.lattice, self.channels,
                              self.declassifiers, mutations, fuel)

    def initial_state(self, semantics, secret=None):
        """Initial state of this scenario under the given semantics."""
        return semantics.initial_state(self.store(secret), self.processes)


def parse_value(text: str):
    """Read a command-line value: a JSON literal, else the raw text.

    Returns:
        (int, bool or str): the value.
    """
    try:
        value = loads(text)
    except JSONDecodeError:
        return text
    try:
        value_kind(value)
    except (TypeError, ValueError):
        return text
    return value


def _label(lattice: Lattice, label, where: str) -> str:
    if not isinstance(label, str) or label not in lattice:
        raise ScenarioError(f'{where}: unknown label {label!r}')
    return label


def _value(value, where: str):
    try:
        kind = value_kind(value)
    except (TypeError, ValueError) as error:
        raise ScenarioError(f'{where}: {error}') from error
    if kind == 'absent':
        raise ScenarioError(f'{where}: a value is required')
    return value


def _activations(nodes, section: str, lattice: Lattice, channels,
                 declassifiers) -> tuple:
    if not isinstance(nodes, list):
        raise ScenarioError(f'{section} must be a list')
    activations = []
    for index, node in enumerate(nodes):
        where = f'{section}[{index}]'
        if not isinstance(node, dict):
            raise ScenarioError(f'{where} must be an object')
        label = _label(lattice, node.get('label'), where)
        max_label = node.get('max_label')
        if max_label is not None:
            _label(lattice, max_label, where)
            if not lattice.leq(label, max_label):
                raise ScenarioError(
                    f'{where}: max_label {max_label!r} is not above '
                    f'label {label!r}')
        program = parse_program(node.get('program', []), lattice, channels,
                                declassifiers, f'{where}.program')
        activations.append(StartEvent(Process(Thread.start(program), label),
                                      max_label))
    return tuple(activations)


def scenario_from_dict(document: dict, path: str = '') -> Scenario:
    """Validate a scenario document.

    Args:
        document (dict): parsed JSON document.
        path (str): file name used in messages.

    Returns:
        (Scenario): the validated scenario.

    Raises:
        ConfigurationError: any reference that does not resolve.
    """
    if not isinstance(document, dict):
        raise ScenarioError('scenario must be a JSON object')
    if 'lattice' not in document:
        raise ScenarioError('scenario has no lattice section')
    lattice = Lattice.from_dict(document['lattice'])

    channels = document.get('channels', {})
    if not isinstance(channels, dict):
        raise ScenarioError('channels must map names to labels')
    for name, label in channels.items():
        _label(lattice, label, f'channel {name!r}')

    declassifier_nodes = document.get('declassifiers', [])
    if not isinstance(declassifier_nodes, list):
        raise ScenarioError('declassifiers must be a list')
    names = [node.get('name') for node in declassifier_nodes
             if isinstance(node, dict)]
    declassifiers = {}
    for index, node in enumerate(declassifier_nodes):
        where = f'declassifiers[{index}]'
        if not isinstance(node, dict) or not isinstance(node.get('name'),
                                                         str):
            raise ScenarioError(f'{where} needs a name')
        high = _label(lattice, node.get('high'), where)
        low = _label(lattice, node.get('low'), where)
        if not lattice.less(low, high):
            raise ScenarioError(
                f'{where}: low {low!r} must be strictly below high {high!r}')
        body = parse_program(node.get('body', []), lattice, channels, names,
                             f'{where}.body')
        declassifiers[node['name']] = Declassifier(node['name'], high, low,
                                                   body)

    writes = []
    store_nodes = document.get('initial_store', [])
    if not isinstance(store_nodes, list):
        raise ScenarioError('initial_store must be a list')
    for index, node in enumerate(store_nodes):
        where = f'initial_store[{index}]'
        if not isinstance(node, dict):
            raise ScenarioError(f'{where} must be an object')
        key = node.get('key')
        if not isinstance(key, str) or not key:
            raise ScenarioError(f'{where}: key must be a non-empty string')
        writes.append((key, _value(node.get('value'), where),
                       _label(lattice, node.get('label'), where)))

    processes = _activations(document.get('processes', []), 'processes',
                             lattice, channels, names)
    pending = _activations(document.get('pending_inputs', []),
                           'pending_inputs', lattice, channels, names)

    try:
        mode = PolicyMode.parse(document.get('mode', 'trapeze'))
    except ConfigurationError as error:
        raise ScenarioError(str(error)) from error

    secret_slot = None
    slot = document.get('secret_slot')
    if slot is not None:
        if not isinstance(slot, dict) or not isinstance(slot.get('key'), str):
            raise ScenarioError('secret_slot needs a key and a label')
        secret_slot = (slot['key'],
                       _label(lattice, slot.get('label'), 'secret_slot'))
    secret_values = tuple(
        _value(value, f'secret_values[{index}]')
        for index, value in enumerate(document.get('secret_values', [])))
    if secret_values and secret_slot is None:
        raise ScenarioError('secret_values given without a secret_slot')
    default_observer = document.get('observer')
    if default_observer is not None:
        _label(lattice, default_observer, 'observer')

    return Scenario(lattice, dict(channels), tuple(writes), processes,
                    pending, declassifiers, mode, secret_slot,
                    secret_values, path, default_observer)


def load_scenario(path: str) -> Scenario:
    """Read and validate a scenario file.

    Args:
        path (str): scenario file path string.

    Returns:
        (Scenario): the validated scenario.

    Raises:
        ScenarioError: the file is missing or is not valid JSON.
        ConfigurationError: the document does not validate.
    """
    scenario_path = Path(path)
    if not scenario_path.is_file():
        raise ScenarioError(f'scenario file {path} not found')
    with scenario_path.open('r', encoding='utf-8') as opened_scenario:
        try:
            document = load(opened_scenario)
        except JSONDecodeError as error:
            raise ScenarioError(
                f'{path}: line {error.lineno} column {error.colno}: '
                f'{error.msg}') from error
    scenario = scenario_from_dict(document, str(path))
    logger.debug(f'Loaded scenario {path}: {len(scenario.processes)} '
                 f'processes, {len(scenario.pending_inputs)} pending inputs')
    return scenario
