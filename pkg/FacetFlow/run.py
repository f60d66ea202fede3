# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""Run one schedule of a scenario and write its traces.

What's here:

Run the process.
----------------

Classes:
  - Run
"""

from logging import getLogger
from pathlib import Path

from FacetFlow.core.semantics import run_schedule
from FacetFlow.reader.read_scenario import load_scenario, parse_value
from FacetFlow.sys_output import Output
from FacetFlow.writer.write_trace import (observer_lines, trace_lines,
                                          write_lines)

logger = getLogger(__name__)  # pylint: disable=invalid-name


class Run(object):
    """The Run process.

    Attributes:
        args: Arguments.
        output: Output info, warning and error.
    """

    def __init__(self, arguments) -> None:
        """Initialize Run.

        Args:
            arguments: arguments.
        """
        self.args = arguments
        self.output = Output()
        if not self.args.out:
            self.args.out = self.args.input + '.trace.jsonl'
        self.output.info(
            f'Initializing {self.__class__.__name__}: (args: {arguments}')
        logger.debug(
            f'Initializing {self.__class__.__name__}: (args: {arguments}')
        super().__init__()

    def prepare(self) -> None:
        """Load the scenario and build its initial state."""
        self.scenario = load_scenario(self.args.input)
        self.observer = self.scenario.observer(self.args.observer)
        self.semantics = self.scenario.semantics(self.args.mode,
                                                 self.args.mutations or ())
        if self.args.secret is None:
            secret = self.scenario.default_secret()
        else:
            secret = parse_value(self.args.secret)
        self.initial = self.scenario.initial_state(self.semantics, secret)
        self.output.info(f'Running under {self.semantics.mode} with '
                         f'secret {secret!r}')

    def schedule(self) -> None:
        """Take transitions until quiescence or the step limit."""
        self.transitions = run_schedule(
            self.semantics, self.initial, self.scenario.pending_inputs,
            self.args.policy, self.args.max_steps, self.args.seed)
        self.output.info(f'Schedule took {len(self.transitions)} steps')

    def write_traces(self) -> None:
        """Write the full trace and its projection at the observer."""
        out_path = Path(self.args.out)
        self.observer_path = out_path.with_suffix(
            f'.{self.observer}{out_path.suffix or ".jsonl"}')
        write_lines(str(out_path), trace_lines(self.transitions))
        write_lines(str(self.observer_path), observer_lines(
            self.transitions, self.observer, self.scenario.lattice,
            self.semantics.channels))
        self.output.info(f'Writing trace into {out_path} and observer '
                         f'trace into {self.observer_path}')

    def process(self) -> int:
        """Call the Run object."""
        self.output.info('Starting Run Process')
        logger.debug('Starting Run Process')
        self.prepare()
        self.schedule()
        self.write_traces()
        self.output.info('Completed Run Process')
        logger.debug('Completed Run Process')
        return 0
