# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""Shared fixtures."""

from pathlib import Path

import pytest

from FacetFlow.core.lattice import diamond_lattice
from FacetFlow.core.semantics import Semantics
from FacetFlow.reader.read_scenario import load_scenario

SCENARIO_DIR = Path(__file__).resolve().parent.parent / 'scenarios'


def scenario_path(name: str) -> str:
    return str(SCENARIO_DIR / f'{name}.scenario')


@pytest.fixture
def diamond():
    return diamond_lattice()


@pytest.fixture
def channels():
    return {'pub': 'bot', 'bob': 'b', 'eve': 'e', 'vault': 'top'}


@pytest.fixture
def trapeze(diamond, channels):
    return Semantics(diamond, channels)


@pytest.fixture
def exploit2():
    return load_scenario(scenario_path('exploit2'))


@pytest.fixture
def exploit3_4bit():
    return load_scenario(scenario_path('exploit3_4bit'))


@pytest.fixture
def exploit3_scaled():
    return load_scenario(scenario_path('exploit3_scaled'))


@pytest.fixture
def constant():
    return load_scenario(scenario_path('constant'))


@pytest.fixture
def declassify():
    return load_scenario(scenario_path('declassify'))
