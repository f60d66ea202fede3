# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""Represent a full help argument parser and execute.

What's here:

Loads the relevant script modules and executes the script.
----------------------------------------------------------

Classes:
  - ScriptExecutor

Identical to the built-in argument parser.
------------------------------------------

Classes:
  - FullHelpArgumentParser

Smart formatter for allowing raw formatting in help
text and lists in the helptext.
---------------------------------------------------

Classes:
  - SmartFormatter

FacetFlow argument parser functions.
------------------------------------

Classes:
  - FacetFlowArgs

Parse the sub-command line arguments.
-------------------------------------

Classes:
  - RunArgs
  - CheckArgs
  - LeakArgs
  - StoreArgs
  - ValidateArgs
"""

from argparse import ArgumentParser, HelpFormatter
from importlib import import_module
from logging import DEBUG, basicConfig, getLogger
from os import getpid
from re import ASCII, compile
from sys import exit, stderr
from textwrap import wrap

from rich.logging import RichHandler

from FacetFlow import __version__
from FacetFlow.checker.trials import PROPERTIES
from FacetFlow.core.policy import PolicyMode
from FacetFlow.core.semantics import MUTATIONS
from FacetFlow.errors import FacetFlowError, UsageError
from FacetFlow.sys_output import Output

logger = getLogger(__name__)  # pylint: disable=invalid-name

EX_USAGE = 64
EX_DATAERR = 65
EX_SOFTWARE = 70
MODE_CHOICES = [mode.value for mode in PolicyMode]


class ScriptExecutor(object):
    """Loads the relevant script modules and executes the script.

    This class is initialized in each of the argparsers for the relevant
    command, then execute script is called within their set_default function.

    Attributes:
        command (str): Full commands.
        subparsers: Subparsers for each subcommand.
        output: Output info, warning and error.
    """

    def __init__(self, command: str, subparsers=None) -> None:
        """Initialize ScriptExecutor.

        Args:
            command (str): full commands.
            subparsers: subparsers for each subcommand, default None.
        """
        self.command = command.lower()
        self.subparsers = subparsers
        self.output = Output()
        super().__init__()

    def import_script(self):
        """Only import a script's modules when running that script."""
        src = 'FacetFlow'
        mod = '.'.join((src, self.command.lower()))
        module = import_module(mod)
        script = getattr(module, self.command.title().replace('_', ''))
        return script

    def run_script(self, arguments) -> int:
        """Run the script for called command and map errors to exit codes.

        Returns:
            (int): the command's own status, 64 on usage errors, 65 on
                   other FacetFlow errors, 70 on unexpected crashes.
        """
        if getattr(arguments, 'verbose', False):
            basicConfig(level=DEBUG, format='%(message)s',
                        handlers=[RichHandler(rich_tracebacks=True)])
        self.output.info(f'Executing: {self.command}. PID: {getpid()}')
        logger.debug(f'Executing: {self.command}. PID: {getpid()}')
        try:
            script = self.import_script()
            process = script(arguments)
            return process.process() or 0
        except KeyboardInterrupt:  # pylint: disable=try-except-raise
            raise
        except UsageError as error:
            self.output.error(str(error))
            return EX_USAGE
        except FacetFlowError as error:
            self.output.error(str(error))
            return EX_DATAERR
        except Exception:  # pylint: disable=broad-except
            logger.exception('Got Exception on main handler:')
            logger.critical(
                'An unexpected crash has occurred. '
                'The traceback is shown above. '
                'Please verify you are running the latest '
                'version of FacetFlow before reporting.')
            return EX_SOFTWARE

    def execute_script(self, arguments) -> None:
        """Run the script and exit with its status."""
        exit(self.run_script(arguments))


class FullHelpArgumentParser(ArgumentParser):
    """Identical to the built-in argument parser.

    On error it prints full help message instead of just usage information
    and exits with the usage status.
    """

    def error(self, message: str) -> None:
        """Print full help messages.

        Args:
            message (str): message for args.
        """
        self.print_help(stderr)
        self.exit(EX_USAGE, f'{self.prog}: error: {message}\n')


class SmartFormatter(HelpFormatter):
    """Smart formatter for allowing raw formatting.

    Mainly acting in help text and lists in the helptext.

    To use: prefix the help item with 'R|' to overide
    default formatting. List items can be marked with 'L|'
    at the start of a newline.

    Adapted from: https://stackoverflow.com/questions/3853722
    """

    def __init__(self,
                 prog: str,
                 indent_increment: int = 2,
                 max_help_position: int = 24,
                 width=None) -> None:
        """Initialize SmartFormatter.

        Args:
            prog (str): program name.
            indent_increment (int): indent increment. default 2.
            max_help_position (int): max help position. default 24.
            width: width, default None.
        """
        super().__init__(prog, indent_increment, max_help_position, width)
        self._whitespace_matcher_limited = compile(r'[ \r\f\v]+', ASCII)

    def _split_lines(self, text: str, width) -> list:
        if text.startswith('R|'):
            text = self._whitespace_matcher_limited.sub(' ', text).strip()[2:]
            output = []
            for txt in text.splitlines():
                indent = ''
                if txt.startswith('L|'):
                    indent = '    '
                    txt = '  - {}'.format(txt[2:])
                output.extend(wrap(
                    txt, width, subsequent_indent=indent))
            return output
        return HelpFormatter._split_lines(self, text, width)


class FacetFlowArgs(object):
    """FacetFlow argument parser functions.

    It is universal to all commands.
    Should be the parent function of all subsequent argparsers.

    Attributes:
        global_arguments: Global arguments.
        argument_list: Argument list.
        optional_arguments: Optional arguments.
        parser: Parser.
    """

    def __init__(self,
                 subparser,
                 command: str,
                 description: str = 'default',
                 subparsers=None) -> None:
        """Initialize FacetFlowArgs.

        Args:
            subparser: subparser.
            command (str): command.
            description (str): description. default 'default'.
            subparsers: subparsers, default None.
        """
        self.global_arguments = self.get_global_arguments()
        self.argument_list = self.get_argument_list()
        self.optional_arguments = self.get_optional_arguments()
        if not subparser:
            return
        self.parser = self.create_parser(subparser, command, description)
        self.add_arguments()
        script = ScriptExecutor(command, subparsers)
        self.parser.set_defaults(func=script.execute_script)
        super().__init__()

    @staticmethod
    def get_argument_list() -> list:
        """Put the arguments in a list so that they are accessible."""
        argument_list = []
        return argument_list

    @staticmethod
    def get_optional_arguments() -> list:
        """Flags shared by the commands that execute a scenario.

        Override this for commands that never run the semantics.
        """
        argument_list = []
        argument_list.append({
            'opts': ('--observer',),
            'dest': 'observer',
            'required': False,
            'default': None,
            'type': str,
            'help': 'Observer label [default=lattice bottom].'})
        argument_list.append({
            'opts': ('--mutation',),
            'dest': 'mutations',
            'action': 'append',
            'required': False,
            'default': None,
            'choices': MUTATIONS,
            'help': 'R|Break one rule of the faceted semantics; repeatable.'
                    '\nL|drop-send-check: sends ignore the channel label.'
                    '\nL|no-write-gc: writes keep every older facet.'
                    '\nL|ignore-read-visibility: reads see every facet.'
                    '\nL|ignore-conflicting-writes: writes next to an '
                    'incomparable facet are dropped.'
                    '\nL|overwrite-store: writes replace every facet.'})
        argument_list.append({
            'opts': ('--max-states',),
            'dest': 'max_states',
            'required': False,
            'type': int,
            'default': 200000,
            'help': 'Search budget; running out is INCONCLUSIVE '
                    '[default=200000].'})
        return argument_list

    @staticmethod
    def get_global_arguments() -> list:
        """Arguments that are used in ALL parts of FacetFlow.

        DO NOT override this!
        """
        global_args = []
        global_args.append({'opts': ('-v', '--version'),
                            'action': 'version',
                            'version': f'FacetFlow v{__version__}'})
        global_args.append({
            'opts': ('--verbose',),
            'dest': 'verbose',
            'action': 'store_true',
            'required': False,
            'default': False,
            'help': 'Increase verbosity.'})
        return global_args

    @staticmethod
    def create_parser(subparser, command: str, description: str):
        """Create the parser for the selected command.

        Args:
            command (str): command string.
            description (str): description string.
        """
        parser = subparser.add_parser(
            command,
            help=description,
            description=description,
            epilog='Exit status: 0 PASS/OK, 1 FAIL, 2 INCONCLUSIVE, '
                   '64 usage error, 65 data error.',
            formatter_class=SmartFormatter)
        return parser

    def add_arguments(self) -> None:
        """Parse the arguments passed in from argparse."""
        options = (self.global_arguments + self.argument_list +
                   self.optional_arguments)
        for option in options:
            args = option['opts']
            kwargs = {key: option[key]
                      for key in option.keys() if key != 'opts'}
            self.parser.add_argument(*args, **kwargs)


class RunArgs(FacetFlowArgs):
    """Run one schedule of a scenario."""

    @staticmethod
    def get_argument_list() -> list:
        """Put the arguments in a list so that they are accessible."""
        argument_list = []
        argument_list.append({
            'opts': ('-i', '--input'),
            'dest': 'input',
            'required': True,
            'type': str,
            'help': 'Input a scenario file.'})
        argument_list.append({
            'opts': ('--mode',),
            'dest': 'mode',
            'required': False,
            'default': None,
            'choices': MODE_CHOICES,
            'help': 'Policy mode [default=scenario mode].'})
        argument_list.append({
            'opts': ('--seed',),
            'dest': 'seed',
            'required': False,
            'type': int,
            'default': 0,
            'help': 'Scheduler seed [default=0].'})
        argument_list.append({
            'opts': ('--max-steps',),
            'dest': 'max_steps',
            'required': False,
            'type': int,
            'default': 1000,
            'help': 'Step limit of the schedule [default=1000].'})
        argument_list.append({
            'opts': ('--policy',),
            'dest': 'policy',
            'required': False,
            'default': 'random',
            'choices': ('random', 'fifo'),
            'help': 'R|Scheduler policy [default=random].'
                    '\nL|random: uniform among enabled transitions.'
                    '\nL|fifo: first enabled transition.'})
        argument_list.append({
            'opts': ('--secret',),
            'dest': 'secret',
            'required': False,
            'default': None,
            'type': str,
            'help': 'Secret placed in the secret slot, as a JSON literal '
                    '[default=first secret value].'})
        argument_list.append({
            'opts': ('--out',),
            'dest': 'out',
            'required': False,
            'default': '',
            'type': str,
            'help': 'Output trace file [default=input.trace.jsonl]; the '
                    'observer trace goes next to it.'})
        return argument_list


class CheckArgs(FacetFlowArgs):
    """Check a non-interference property."""

    @staticmethod
    def get_argument_list() -> list:
        """Put the arguments in a list so that they are accessible."""
        argument_list = []
        argument_list.append({
            'opts': ('-i', '--input'),
            'dest': 'input',
            'required': False,
            'default': '',
            'type': str,
            'help': 'Input a scenario file; without it only random states '
                    'on the diamond lattice are checked.'})
        argument_list.append({
            'opts': ('--property',),
            'dest': 'property',
            'required': True,
            'choices': PROPERTIES,
            'help': 'Property to check.'})
        argument_list.append({
            'opts': ('--mode',),
            'dest': 'mode',
            'required': False,
            'default': None,
            'choices': MODE_CHOICES,
            'help': 'Policy mode [default=scenario mode or trapeze].'})
        argument_list.append({
            'opts': ('--depth',),
            'dest': 'depth',
            'required': False,
            'type': int,
            'default': 5,
            'help': 'Exploration depth [default=5].'})
        argument_list.append({
            'opts': ('--trials',),
            'dest': 'trials',
            'required': False,
            'type': int,
            'default': 0,
            'help': 'Number of random states or pairs [default=0].'})
        argument_list.append({
            'opts': ('--seed',),
            'dest': 'seed',
            'required': False,
            'type': int,
            'default': 0,
            'help': 'First random seed [default=0].'})
        argument_list.append({
            'opts': ('-t', '--threads'),
            'dest': 'threads',
            'required': False,
            'type': int,
            'default': 1,
            'help': 'Number of worker processes to use [default=1].'})
        argument_list.append({
            'opts': ('--out',),
            'dest': 'out',
            'required': False,
            'default': '',
            'type': str,
            'help': 'Output verdict report [default=input.property.json].'})
        return argument_list


class LeakArgs(FacetFlowArgs):
    """Measure the leak of a scenario's secret."""

    @staticmethod
    def get_argument_list() -> list:
        """Put the arguments in a list so that they are accessible."""
        argument_list = []
        argument_list.append({
            'opts': ('-i', '--input'),
            'dest': 'input',
            'required': True,
            'type': str,
            'help': 'Input a scenario file with a secret slot.'})
        argument_list.append({
            'opts': ('--mode',),
            'dest': 'modes',
            'action': 'append',
            'required': False,
            'default': None,
            'choices': MODE_CHOICES,
            'help': 'Policy mode to measure; repeat to compare modes '
                    '[default=scenario mode].'})
        argument_list.append({
            'opts': ('--depth',),
            'dest': 'depth',
            'required': False,
            'type': int,
            'default': 40,
            'help': 'Longest run explored [default=40].'})
        argument_list.append({
            'opts': ('--secret',),
            'dest': 'secrets',
            'action': 'append',
            'required': False,
            'default': None,
            'help': 'Candidate secret as a JSON literal; repeatable '
                    '[default=scenario secret values].'})
        argument_list.append({
            'opts': ('-t', '--threads'),
            'dest': 'threads',
            'required': False,
            'type': int,
            'default': 1,
            'help': 'Number of worker processes to use [default=1].'})
        argument_list.append({
            'opts': ('--out',),
            'dest': 'out',
            'required': False,
            'default': '',
            'type': str,
            'help': 'Output leak report [default=input.leak.json].'})
        return argument_list


class StoreArgs(FacetFlowArgs):
    """Dump or load a faceted store file."""

    @staticmethod
    def get_argument_list() -> list:
        """Put the arguments in a list so that they are accessible."""
        argument_list = []
        argument_list.append({
            'opts': ('action',),
            'choices': ('dump', 'load'),
            'help': 'R|What to do.'
                    '\nL|dump: write the scenario\'s initial store.'
                    '\nL|load: read --store against the scenario lattice.'})
        argument_list.append({
            'opts': ('-i', '--input'),
            'dest': 'input',
            'required': True,
            'type': str,
            'help': 'Input a scenario file; it supplies the lattice.'})
        argument_list.append({
            'opts': ('--store',),
            'dest': 'store',
            'required': False,
            'default': '',
            'type': str,
            'help': 'Store file to load.'})
        argument_list.append({
            'opts': ('--secret',),
            'dest': 'secret',
            'required': False,
            'default': None,
            'type': str,
            'help': 'Secret written into the secret slot before dumping.'})
        argument_list.append({
            'opts': ('--out',),
            'dest': 'out',
            'required': False,
            'default': '',
            'type': str,
            'help': 'Output store file [default=input.store.tsv on dump].'})
        return argument_list

    @staticmethod
    def get_optional_arguments() -> list:
        """Store never runs the semantics."""
        return []


class ValidateArgs(FacetFlowArgs):
    """Validate a scenario file."""

    @staticmethod
    def get_argument_list() -> list:
        """Put the arguments in a list so that they are accessible."""
        argument_list = []
        argument_list.append({
            'opts': ('-i', '--input'),
            'dest': 'input',
            'required': True,
            'type': str,
            'help': 'Input a scenario file.'})
        return argument_list

    @staticmethod
    def get_optional_arguments() -> list:
        """Validate never runs the semantics."""
        return []
