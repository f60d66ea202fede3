# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""Check a non-interference property on a scenario and on random states.

What's here:

Check the process.
------------------

Classes:
  - Check
"""

from logging import getLogger

from FacetFlow.checker.random_state import Bounds
from FacetFlow.checker.trials import (check_scenario, label_channels,
                                      run_trials)
from FacetFlow.checker.verdict import merge_verdicts
from FacetFlow.core.lattice import diamond_lattice
from FacetFlow.core.policy import PolicyMode
from FacetFlow.errors import UsageError
from FacetFlow.reader.read_scenario import load_scenario
from FacetFlow.sys_output import Output
from FacetFlow.writer.write_report import verdict_to_dict, write_report

logger = getLogger(__name__)  # pylint: disable=invalid-name


class Check(object):
    """The Check process.

    Attributes:
        args: Arguments.
        output: Output info, warning and error.
    """

    def __init__(self, arguments) -> None:
        """Initialize Check.

        Args:
            arguments: arguments.
        """
        self.args = arguments
        self.output = Output()
        if not self.args.input and not self.args.trials:
            raise UsageError('check needs a scenario (-i) or --trials > 0')
        if not self.args.out and self.args.input:
            self.args.out = f'{self.args.input}.{self.args.property}.json'
        self.output.info(
            f'Initializing {self.__class__.__name__}: (args: {arguments}')
        logger.debug(
            f'Initializing {self.__class__.__name__}: (args: {arguments}')
        super().__init__()

    def prepare(self) -> None:
        """Resolve the lattice, channels, mode and observer."""
        self.scenario = None
        self.mutations = tuple(self.args.mutations or ())
        if self.args.input:
            self.scenario = load_scenario(self.args.input)
            self.lattice = self.scenario.lattice
            self.channels = self.scenario.channels
            self.observer = self.scenario.observer(self.args.observer)
            self.mode = (PolicyMode.parse(self.args.mode) if self.args.mode
                         else self.scenario.mode)
        else:
            self.lattice = diamond_lattice()
            self.channels = label_channels(self.lattice)
            self.observer = self.args.observer or self.lattice.bottom
            if self.observer not in self.lattice:
                raise UsageError(f'unknown observer label {self.observer!r}')
            self.mode = PolicyMode.parse(self.args.mode or 'trapeze')
        if not self.mode.faceted:
            raise UsageError(
                f'{self.mode.value} has floating labels; properties are '
                'checked under faceted modes only, use leak to compare')

    def check(self) -> None:
        """Check the scenario, then the random trials."""
        verdicts = []
        if self.scenario is not None:
            self.output.info(f'Checking {self.args.property} on '
                             f'{self.args.input}')
            verdicts.append(check_scenario(
                self.args.property, self.scenario, self.mode, self.mutations,
                self.observer, self.args.depth, self.args.max_states))
        if self.args.trials:
            self.output.info(f'Checking {self.args.property} on '
                             f'{self.args.trials} random states with '
                             f'{self.args.threads} workers')
            verdicts.append(run_trials(
                self.args.property, self.lattice, self.channels, self.mode,
                self.mutations, self.args.trials, self.args.seed, Bounds(),
                self.observer, self.args.depth, self.args.threads,
                self.args.max_states))
        if len(verdicts) == 1:
            self.verdict = verdicts[0]
        else:
            self.verdict = merge_verdicts(self.args.property, verdicts,
                                          verdicts[0].parameters)

    def report(self) -> None:
        """Show the verdict and write the report."""
        verdict = self.verdict
        self.output.table(
            'Verdict',
            ['property', 'verdict', 'states', 'seconds', 'reason'],
            [[verdict.property, verdict.status.name,
              verdict.states_explored, f'{verdict.wall_time:.3f}',
              verdict.reason]])
        if self.args.out:
            write_report(self.args.out, verdict_to_dict(verdict))
            self.output.info(f'Writing verdict into {self.args.out}')

    def process(self) -> int:
        """Call the Check object.

        Returns:
            (int): 0 PASS, 1 FAIL, 2 INCONCLUSIVE.
        """
        self.output.info('Starting Check Process')
        logger.debug('Starting Check Process')
        self.prepare()
        self.check()
        self.report()
        self.output.info('Completed Check Process')
        logger.debug('Completed Check Process')
        return self.verdict.status.value
