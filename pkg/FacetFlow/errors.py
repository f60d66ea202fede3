# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""Errors raised by FacetFlow.

What's here:

Configuration and data errors.
------------------------------

Classes:
  - FacetFlowError
  - ConfigurationError
  - LatticeError
  - ScenarioError
  - ProgramError
  - StoreFormatError

Contract and usage errors.
--------------------------

Classes:
  - ContractError
  - UsageError
"""


class FacetFlowError(Exception):
    """Base class of every error FacetFlow raises on purpose."""


class ConfigurationError(FacetFlowError):
    """A label, channel or declassifier reference does not resolve."""


class LatticeError(ConfigurationError):
    """The security lattice is malformed or a label is unknown."""


class ScenarioError(ConfigurationError):
    """A scenario document is malformed."""


class ProgramError(ConfigurationError):
    """A program document violates the AST schema.

    Attributes:
        path (str): JSON path of the offending node.
    """

    def __init__(self, path: str, message: str) -> None:
        """Initialize ProgramError.

        Args:
            path (str): JSON path of the offending node, e.g. '$[2].body[0]'.
            message (str): what is wrong with the node.
        """
        self.path = path
        super().__init__(f'{path}: {message}')


class StoreFormatError(FacetFlowError):
    """A line of a faceted store file cannot be decoded.

    Attributes:
        line_number (int): 1-based line number, 0 when not line specific.
    """

    def __init__(self, line_number: int, message: str) -> None:
        """Initialize StoreFormatError.

        Args:
            line_number (int): 1-based line number of the bad record.
            message (str): what is wrong with the record.
        """
        self.line_number = line_number
        super().__init__(f'line {line_number}: {message}')


class ContractError(FacetFlowError):
    """An operation was called outside its precondition."""


class UsageError(FacetFlowError):
    """The command line asks for something that cannot be done."""
