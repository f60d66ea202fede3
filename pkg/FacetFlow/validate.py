# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""Validate a scenario file.

What's here:

Validate the process.
---------------------

Classes:
  - Validate
"""

from logging import getLogger

from FacetFlow.reader.read_program import count_statements
from FacetFlow.reader.read_scenario import load_scenario
from FacetFlow.sys_output import Output

logger = getLogger(__name__)  # pylint: disable=invalid-name


class Validate(object):
    """The Validate process.

    Attributes:
        args: Arguments.
        output: Output info, warning and error.
    """

    def __init__(self, arguments) -> None:
        self.args = arguments
        self.output = Output()
        self.output.info(
            f'Initializing {self.__class__.__name__}: (args: {arguments}')
        logger.debug(
            f'Initializing {self.__class__.__name__}: (args: {arguments}')
        super().__init__()

    def process(self) -> int:
        """Call the Validate object.

        Loading raises on the first problem, so reaching the summary means
        the scenario is valid.
        """
        self.output.info('Starting Validate Process')
        logger.debug('Starting Validate Process')
        scenario = load_scenario(self.args.input)
        rows = [['labels', ', '.join(scenario.lattice.labels)],
                ['bottom / top',
                 f'{scenario.lattice.bottom} / {scenario.lattice.top}'],
                ['channels', ', '.join(f'{name}@{label}' for name, label
                                       in sorted(scenario.channels.items()))],
                ['store facets', scenario.store().facet_count()],
                ['mode', scenario.mode.value]]
        for section in ('processes', 'pending_inputs'):
            for index, event in enumerate(getattr(scenario, section)):
                block = event.process.thread.frames[0].block
                rows.append([f'{section}[{index}]',
                             f'{event.process.label}, '
                             f'{count_statements(block)} statements'])
        for name, declassifier in sorted(scenario.declassifiers.items()):
            rows.append([f'declassifier {name}',
                         f'{declassifier.high} -> {declassifier.low}, '
                         f'{count_statements(declassifier.body)} statements'])
        if scenario.secret_slot is not None:
            rows.append(['secret slot', '{} at {}'.format(
                *scenario.secret_slot)])
            rows.append(['secret values', len(scenario.secret_values)])
        self.output.table(scenario.path, ['field', 'value'], rows)
        self.output.info(f'{self.args.input} is valid')
        logger.debug('Completed Validate Process')
        return 0
