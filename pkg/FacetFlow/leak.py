# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""Measure how many bits of a scenario's secret an observer learns.

What's here:

Leak the process.
-----------------

Classes:
  - Leak
"""

from logging import getLogger

from FacetFlow.checker.leak import measure_leak
from FacetFlow.checker.verdict import Status
from FacetFlow.core.policy import PolicyMode
from FacetFlow.reader.read_scenario import load_scenario, parse_value
from FacetFlow.sys_output import Output
from FacetFlow.writer.write_report import leak_report_to_dict, write_report

logger = getLogger(__name__)  # pylint: disable=invalid-name


class Leak(object):
    """The Leak process.

    Attributes:
        args: Arguments.
        output: Output info, warning and error.
    """

    def __init__(self, arguments) -> None:
        """Initialize Leak.

        Args:
            arguments: arguments.
        """
        self.args = arguments
        self.output = Output()
        if not self.args.out:
            self.args.out = self.args.input + '.leak.json'
        self.output.info(
            f'Initializing {self.__class__.__name__}: (args: {arguments}')
        logger.debug(
            f'Initializing {self.__class__.__name__}: (args: {arguments}')
        super().__init__()

    def prepare(self) -> None:
        """Load the scenario and resolve modes, observer and secrets."""
        self.scenario = load_scenario(self.args.input)
        self.observer = self.scenario.observer(self.args.observer)
        self.modes = [PolicyMode.parse(mode) for mode in
                      self.args.modes or [self.scenario.mode.value]]
        self.secrets = None
        if self.args.secrets:
            self.secrets = [parse_value(text) for text in self.args.secrets]

    def measure(self) -> None:
        """Measure every requested mode in turn."""
        self.reports = []
        for mode in self.modes:
            self.output.info(f'Measuring leak under {mode.value} at '
                             f'{self.observer} with {self.args.threads} '
                             'workers')
            mutations = (self.args.mutations or ()) if mode.faceted else ()
            self.reports.append(measure_leak(
                self.scenario, mode, self.observer, self.args.depth,
                self.secrets, mutations, self.args.threads,
                self.args.max_states))

    def report(self) -> None:
        """Show the reports side by side and write them."""
        rows = []
        for report in self.reports:
            bits = '-' if report.bits is None else f'{report.bits:.1f}'
            rows.append([report.mode, report.observer, report.status.name,
                         bits, len(report.classes), report.states_explored,
                         f'{report.wall_time:.3f}'])
        self.output.table(
            'Leak',
            ['mode', 'observer', 'verdict', 'bits', 'classes', 'states',
             'seconds'],
            rows)
        write_report(self.args.out,
                     [leak_report_to_dict(report) for report in self.reports])
        self.output.info(f'Writing leak report into {self.args.out}')

    def process(self) -> int:
        """Call the Leak object.

        Returns:
            (int): 2 if any mode was inconclusive, else 0.
        """
        self.output.info('Starting Leak Process')
        logger.debug('Starting Leak Process')
        self.prepare()
        self.measure()
        self.report()
        self.output.info('Completed Leak Process')
        logger.debug('Completed Leak Process')
        if any(report.status is Status.INCONCLUSIVE
               for report in self.reports):
            return Status.INCONCLUSIVE.value
        return 0
