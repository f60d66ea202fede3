# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.reader read faceted store files.

Records are appended to their key in file order, exactly as written, so a
load of a dump gives back the same store.

Functions:
  - unescape_text
  - decode_value
  - lines_to_store
  - read_store
"""

from logging import getLogger
from typing import Dict, Iterable, List

from FacetFlow.core.facet_store import (LabeledValue, Store,
                                        seq_invariant_holds, value_kind)
from FacetFlow.core.lattice import Lattice
from FacetFlow.errors import StoreFormatError

logger = getLogger(__name__)  # pylint: disable=invalid-name

UNESCAPES = {'\\': '\\', 't': '\t', 'n': '\n', 'r': '\r'}


def unescape_text(text: str, line_number: int = 0) -> str:
    """Undo escape_text.

    Raises:
        StoreFormatError: a dangling or unknown escape sequence.
    """
    chars, index = [], 0
    while index < len(text):
        char = text[index]
        if char == '\\':
            if index + 1 >= len(text) or text[index + 1] not in UNESCAPES:
                raise StoreFormatError(line_number, 'bad escape sequence')
            chars.append(UNESCAPES[text[index + 1]])
            index += 2
        else:
            chars.append(char)
            index += 1
    return ''.join(chars)


def decode_value(field: str, line_number: int = 0):
    """Decode i:<int>, s:<escaped text> or b:<true|false>.

    Raises:
        StoreFormatError: unknown tag or malformed payload.
    """
    tag, _, payload = field.partition(':')
    if tag == 'b' and payload in ('true', 'false'):
        return payload == 'true'
    if tag == 's' and field.startswith('s:'):
        return unescape_text(payload, line_number)
    if tag == 'i':
        try:
            value = int(payload)
            value_kind(value)
        except ValueError:
            raise StoreFormatError(
                line_number, f'bad integer {payload!r}') from None
        return value
    raise StoreFormatError(line_number, f'bad value field {field!r}')


def lines_to_store(lines: Iterable[str], lattice: Lattice) -> Store:
    """Decode record lines into a store.

    Args:
        lines (Iterable[str]): record lines, terminators optional.
        lattice (Lattice): labels every record must use.

    Returns:
        (Store): the decoded store.

    Raises:
        StoreFormatError: malformed record or unknown label, with its
                          line number.
    """
    entries: Dict[str, List[LabeledValue]] = {}
    for line_number, line in enumerate(lines, start=1):
        line = line.rstrip('\n')
        if not line:
            continue
        fields = line.split('\t')
        if len(fields) != 3:
            raise StoreFormatError(
                line_number, f'expected 3 tab-separated fields, '
                             f'got {len(fields)}')
        key = unescape_text(fields[0], line_number)
        if not key:
            raise StoreFormatError(line_number, 'empty key')
        value = decode_value(fields[1], line_number)
        label = unescape_text(fields[2], line_number)
        if label not in lattice:
            raise StoreFormatError(line_number, f'unknown label {label!r}')
        entries.setdefault(key, []).append(LabeledValue(value, label))
    for key, seq in entries.items():
        if not seq_invariant_holds(seq, lattice):
            logger.warning(f'Key {key!r} breaks the write invariant: a '
                           'facet is at or below an older facet.')
    return Store(entries)


def read_store(input_store: str, lattice: Lattice) -> Store:
    """Read a store file.

    Args:
        input_store (str): input store file path string.
        lattice (Lattice): active lattice.

    Returns:
        (Store): the decoded store.
    """
    with open(input_store, 'r', encoding='utf-8', newline='\n') as opened:
        return lines_to_store(opened, lattice)
