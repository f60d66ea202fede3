# -*- coding: utf-8 -*-
"""setup script for FacetFlow.

Installs the python packages of requirements.txt that are missing from
the running interpreter:

    python setup.py install

or create the conda environment instead:

    conda env create -f FacetFlow.yml
"""

from pathlib import Path
from subprocess import CalledProcessError, run
import sys

from FacetFlow.sys_output import Output

REQUIREMENTS = Path(__file__).resolve().parent / 'requirements.txt'


class Environment(object):
    """The interpreter FacetFlow is installed into.

    Attributes:
        output (Output): output info, warning and error.
        is_installer (bool): install without asking.
        installed_packages (dict): lower-cased name to version.
        required_packages (list): requirement lines.
    """

    def __init__(self) -> None:
        self.output = Output()
        self.is_installer = 'install' in sys.argv
        self.check_python()
        self.installed_packages = self.get_installed_packages()
        self.required_packages = [
            line.strip() for line in REQUIREMENTS.read_text().splitlines()
            if line.strip() and not line.startswith('#')]
        super().__init__()

    @property
    def in_virtualenv(self) -> bool:
        return sys.prefix != getattr(sys, 'base_prefix', sys.prefix)

    def check_python(self) -> None:
        if sys.version_info < (3, 8):
            self.output.error('Please run this script with Python version '
                              '3.8 or later and try again.')
            sys.exit(1)
        self.output.info(f'Installed Python: {sys.version.split()[0]}')

    def get_installed_packages(self) -> dict:
        try:
            frozen = run([sys.executable, '-m', 'pip', 'freeze'],
                         check=True, capture_output=True, text=True)
        except CalledProcessError:
            self.output.error(
                'pip is not available. Please install python3-pip')
            sys.exit(1)
        installed = {}
        for line in frozen.stdout.splitlines():
            if '==' in line:
                name, version = line.split('==', 1)
                installed[name.lower()] = version
        return installed


class Install(object):
    """Install the missing requirements with pip."""

    def __init__(self, environment: Environment) -> None:
        self.output = Output()
        self.env = environment
        missing = [pkg for pkg in self.env.required_packages
                   if pkg.split('==')[0].lower()
                   not in self.env.installed_packages]
        if missing and not self.env.is_installer:
            self.ask_continue()
        for package in missing:
            self.pip_installer(package)
        self.output.info('All python3 dependencies are met.\r\n'
                         'Enter:  python facetflow.py -h to see the options')
        super().__init__()

    def ask_continue(self) -> None:
        if input('Install the missing python packages? [y/N] ') not in (
                'y', 'Y'):
            self.output.error('Please install the requirements to continue')
            sys.exit(1)

    def pip_installer(self, package: str) -> None:
        pipexe = [sys.executable, '-m', 'pip', 'install', '-qq', package]
        if not self.env.in_virtualenv:
            pipexe.insert(4, '--user')
        self.output.info(f'Installing {package}')
        try:
            run(pipexe, check=True)
        except CalledProcessError:
            self.output.warning(f'Couldn\'t install {package} with pip. '
                                'Please install this package manually')


def main() -> None:
    """Create an environment and install missing packages."""
    Install(Environment())


if __name__ == '__main__':
    main()
