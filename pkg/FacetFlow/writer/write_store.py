# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.writer write faceted store files.

One record per facet, three tab-separated columns: key, value, label.
Keys are written in sorted order and the facets of a key oldest first.

Functions:
  - escape_text
  - encode_value
  - store_to_lines
  - write_store
"""

from typing import List

from FacetFlow.core.facet_store import Store, value_kind
from FacetFlow.writer.write_trace import write_lines

ESCAPES = {'\\': '\\\\', '\t': '\\t', '\n': '\\n', '\r': '\\r'}


def escape_text(text: str) -> str:
    """Escape backslash, tab, newline and carriage return."""
    return ''.join(ESCAPES.get(char, char) for char in text)


def encode_value(value) -> str:
    """Encode a value as i:<int>, s:<escaped text> or b:<true|false>."""
    kind = value_kind(value)
    if kind == 'bool':
        return 'b:true' if value else 'b:false'
    if kind == 'int':
        return f'i:{value}'
    if kind == 'str':
        return 's:' + escape_text(value)
    raise TypeError(f'cannot encode {value!r}')


def store_to_lines(store: Store) -> List[str]:
    """Encode every facet of a store as one record line.

    Args:
        store (Store): store to encode.

    Returns:
        (list): record lines without line terminators.
    """
    return ['\t'.join((escape_text(key), encode_value(facet.value),
                       escape_text(facet.label)))
            for key, seq in store.items() for facet in seq]


def write_store(output_store: str, store: Store) -> None:
    """Write a store file.

    Args:
        output_store (str): output store file path string.
        store (Store): store to write.
    """
    write_lines(output_store, store_to_lines(store))
