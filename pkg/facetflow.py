# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow is a Python3 package for simulating faceted information flow.

It runs serverless-style processes over a faceted key-value store under a
security lattice, checks non-interference properties by exhaustive
exploration of small instances and measures how many bits of a secret leak
under faceted and floating-label designs.

For more in-depth instructions, see README.rst.
"""

from sys import exit, version_info

from FacetFlow import fullhelp_argumentparser
from FacetFlow.sys_output import Output

# version control
if version_info[0] == 3 and version_info[1] >= 8:
    pass
else:
    output = Output()
    output.error('Please run this script with Python version '
                 '3.8 or later and try again.')
    exit()


def build_parser() -> fullhelp_argumentparser.FullHelpArgumentParser:
    """Create the parser with every subcommand."""
    PARSER = fullhelp_argumentparser.FullHelpArgumentParser(prog='facetflow')
    SUBPARSER = PARSER.add_subparsers()
    RUN = fullhelp_argumentparser.RunArgs(
        SUBPARSER,
        'run',
        """Run one schedule of a scenario and write the full trace
            and its projection at the observer.""")
    CHECK = fullhelp_argumentparser.CheckArgs(
        SUBPARSER,
        'check',
        """Check projection, invisibility, store invariant or
            termination-sensitive non-interference.""")
    LEAK = fullhelp_argumentparser.LeakArgs(
        SUBPARSER,
        'leak',
        """Measure how many bits of the secret an observer learns.""")
    STORE = fullhelp_argumentparser.StoreArgs(
        SUBPARSER,
        'store',
        """Dump or load a faceted store file.""")
    VALIDATE = fullhelp_argumentparser.ValidateArgs(
        SUBPARSER,
        'validate',
        """Validate a scenario file.""")

    def bad_args(args) -> None:
        """Print help on bad arguments."""
        PARSER.print_help()
        exit(fullhelp_argumentparser.EX_USAGE)

    PARSER.set_defaults(func=bad_args)
    return PARSER


def main() -> None:
    """Create subcommands and execute."""
    ARGUMENTS = build_parser().parse_args()
    ARGUMENTS.func(ARGUMENTS)


if __name__ == '__main__':
    main()
