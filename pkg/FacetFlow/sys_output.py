# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""Represent an output.

What's here:

Format and display output.
--------------------------

Classes:
  - Output
"""

from rich import print as rprint
from rich.console import Console
from rich.table import Table


class Output(object):
    """Format and display output.

    Attributes:
        console (Console): rich console used for tables.
    """

    def __init__(self) -> None:
        """Initialize Output."""
        self.console = Console()
        super().__init__()

    @staticmethod
    def __indent_text_block(text: str) -> str:
        """Indent every continuation line under the level tag."""
        lines = text.splitlines()
        if len(lines) > 1:
            return ('\r\n' + ' ' * 8).join(lines)
        return text

    def info(self, text: str) -> None:
        """Format INFO text."""
        if text:
            trm = (':information_source: ' +
                   '[bright_green]INFO[/bright_green]    ')
            rprint(trm + self.__indent_text_block(text))

    def warning(self, text: str) -> None:
        """Format WARNING text."""
        if text:
            trm = ':warning: [bright_yellow]WARNING[/bright_yellow] '
            rprint(trm + self.__indent_text_block(text))

    def error(self, text: str) -> None:
        """Format ERROR text."""
        if text:
            trm = ':no_entry: [bright_red]ERROR[/bright_red]   '
            rprint(trm + self.__indent_text_block(text))

    def table(self, title: str, columns: list, rows: list) -> None:
        """Render rows as a rich table.

        Args:
            title (str): table title.
            columns (list): column header strings.
            rows (list): row lists, every cell is converted with str.
        """
        table = Table(title=title)
        for column in columns:
            table.add_column(column)
        for row in rows:
            table.add_row(*[str(cell) for cell in row])
        self.console.print(table)
