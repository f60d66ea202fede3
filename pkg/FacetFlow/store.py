# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""Dump a scenario's initial store, or load a store file and list it.

What's here:

Store the process.
------------------

Classes:
  - Store
"""

from logging import getLogger

from FacetFlow.errors import UsageError
from FacetFlow.reader.read_scenario import load_scenario, parse_value
from FacetFlow.reader.read_store import read_store
from FacetFlow.sys_output import Output
from FacetFlow.writer.write_store import encode_value, write_store

logger = getLogger(__name__)  # pylint: disable=invalid-name


class Store(object):
    """The Store process.

    dump writes the initial store of the scenario, secret included when
    --secret is given. load reads a store file against the scenario's
    lattice, lists it and, with --out, writes it back.

    Attributes:
        args: Arguments.
        output: Output info, warning and error.
    """

    def __init__(self, arguments) -> None:
        """Initialize Store.

        Args:
            arguments: arguments.
        """
        self.args = arguments
        self.output = Output()
        if self.args.action == 'load' and not self.args.store:
            raise UsageError('store load needs --store <path>')
        if self.args.action == 'dump' and not self.args.out:
            self.args.out = self.args.input + '.store.tsv'
        self.output.info(
            f'Initializing {self.__class__.__name__}: (args: {arguments}')
        logger.debug(
            f'Initializing {self.__class__.__name__}: (args: {arguments}')
        super().__init__()

    def dump(self) -> None:
        """Write the scenario's initial store."""
        secret = None
        if self.args.secret is not None:
            secret = parse_value(self.args.secret)
        self.facet_store = self.scenario.store(secret)
        write_store(self.args.out, self.facet_store)
        self.output.info(f'Writing {self.facet_store.facet_count()} facets '
                         f'into {self.args.out}')

    def load(self) -> None:
        """Read a store file and list its facets."""
        self.facet_store = read_store(self.args.store,
                                      self.scenario.lattice)
        self.output.table(
            self.args.store, ['key', 'value', 'label'],
            [[key, encode_value(facet.value), facet.label]
             for key, seq in self.facet_store.items() for facet in seq])
        if self.args.out:
            write_store(self.args.out, self.facet_store)
            self.output.info(f'Writing store into {self.args.out}')

    def process(self) -> int:
        """Call the Store object."""
        self.output.info('Starting Store Process')
        logger.debug('Starting Store Process')
        self.scenario = load_scenario(self.args.input)
        if self.args.action == 'dump':
            self.dump()
        else:
            self.load()
        self.output.info('Completed Store Process')
        logger.debug('Completed Store Process')
        return 0
