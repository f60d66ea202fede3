# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.core policy modes.

What's here:

Selects the semantics of a policy mode.
---------------------------------------

Classes:
  - PolicyMode

Functions:
  - make_semantics
"""

from enum import Enum
from typing import Iterable, Mapping

from FacetFlow.core.baseline import BaselineSemantics
from FacetFlow.core.lattice import Lattice
from FacetFlow.core.semantics import Declassifier, Semantics
from FacetFlow.core.thread_lang import DEFAULT_FUEL
from FacetFlow.errors import ConfigurationError


class PolicyMode(Enum):
    """Every mode a run, check or leak measurement can use."""

    TRAPEZE = 'trapeze'
    TRAPEZE_UNIQUE_READ = 'trapeze-unique-read'
    NAIVE = 'naive'
    DESIGN1 = 'design1'
    DESIGN2_TOTAL = 'design2-total'
    DESIGN2_PARTIAL = 'design2-partial'

    @classmethod
    def parse(cls, name: str) -> 'PolicyMode':
        """Look a mode up by its command-line name.

        Raises:
            ConfigurationError: no mode has this name.
        """
        try:
            return cls(name)
        except ValueError:
            choices = ', '.join(mode.value for mode in cls)
            raise ConfigurationError(
                f'unknown mode {name!r}, choose from {choices}') from None

    @property
    def faceted(self) -> bool:
        """True for the modes built on the faceted store."""
        return self.value in Semantics.modes


def make_semantics(mode,
                   lattice: Lattice,
                   channels: Mapping[str, str],
                   declassifiers: Mapping[str, Declassifier] = None,
                   mutations: Iterable[str] = (),
                   fuel: int = DEFAULT_FUEL) -> Semantics:
    """Build the transition rules for a mode.

    Args:
        mode (PolicyMode or str): the policy mode.
        lattice (Lattice): active lattice.
        channels (Mapping): channel name as key and label as value.
        declassifiers (Mapping): declassifier name as key and Declassifier
            as value.
        mutations (Iterable[str]): broken rules, faceted modes only.
        fuel (int): pure-step budget of every run.

    Returns:
        (Semantics): a Semantics or BaselineSemantics.
    """
    if not isinstance(mode, PolicyMode):
        mode = PolicyMode.parse(mode)
    factory = Semantics if mode.faceted else BaselineSemantics
    return factory(lattice, channels, declassifiers, mode.value,
                   tuple(mutations), fuel=fuel)
