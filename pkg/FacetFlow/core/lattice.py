# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.core finite security lattice.

What's here:

Storages a validated lattice of security labels.
------------------------------------------------

Classes:
  - Lattice

Builds and validates lattices.
------------------------------

Functions:
  - validate
  - diamond_lattice
  - chain_lattice
"""

from logging import getLogger
from typing import Iterable, Sequence, Tuple

import numpy as np

from FacetFlow.errors import LatticeError

logger = getLogger(__name__)  # pylint: disable=invalid-name


class Lattice(object):
    """A finite lattice of named security labels.

    The order is the reflexive-transitive closure of the Hasse edges and is
    stored as a boolean matrix; joins are precomputed into an index table.
    Instances are immutable after construction.

    Attributes:
        labels (tuple): label names in declaration order.
        edges (tuple): (lower, higher) Hasse edges.
        index (dict): label name as key and matrix index as value.
        order (ndarray): order[i, j] is True iff labels[i] ⊑ labels[j].
        join_table (ndarray): join_table[i, j] is the index of the join.
        bottom (str): the least label.
        top (str): the greatest label.
    """

    def __init__(self,
                 labels: Sequence[str],
                 edges: Iterable[Tuple[str, str]] = ()) -> None:
        """Initialize Lattice and validate it.

        Args:
            labels (Sequence[str]): label names, unique.
            edges (Iterable[tuple]): (lower, higher) Hasse edges.

        Raises:
            LatticeError: the labels and edges do not form a lattice.
        """
        self.labels = tuple(labels)
        self.edges = tuple((lower, higher) for lower, higher in edges)
        self.index = {label: i for i, label in enumerate(self.labels)}
        self.order = np.zeros((0, 0), dtype=bool)
        self.join_table = np.zeros((0, 0), dtype=np.int64)
        self.bottom = ''
        self.top = ''
        validate(self)
        super().__init__()

    @classmethod
    def from_dict(cls, document: dict) -> 'Lattice':
        """Build a lattice from its scenario section.

        Args:
            document (dict): {'labels': [...], 'edges': [[lower, higher]]}.

        Returns:
            (Lattice): the validated lattice.
        """
        if not isinstance(document, dict):
            raise LatticeError('lattice section must be an object')
        labels = document.get('labels', [])
        edges = document.get('edges', [])
        if (not isinstance(labels, list) or
                not all(isinstance(label, str) for label in labels)):
            raise LatticeError('lattice labels must be a list of strings')
        if not isinstance(edges, list) or not all(
                isinstance(edge, list) and len(edge) == 2 for edge in edges):
            raise LatticeError('lattice edges must be [lower, higher] pairs')
        return cls(labels, [tuple(edge) for edge in edges])

    def to_dict(self) -> dict:
        """Return the scenario section describing this lattice."""
        return {'labels': list(self.labels),
                'edges': [list(edge) for edge in self.edges]}

    def position(self, label: str) -> int:
        """Get the matrix index of a label.

        Raises:
            LatticeError: the label is not in this lattice.
        """
        try:
            return self.index[label]
        except (KeyError, TypeError):
            raise LatticeError(f'unknown label {label!r}') from None

    def __contains__(self, label: object) -> bool:
        return label in self.index

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f'Lattice(labels={list(self.labels)}, edges={list(self.edges)})'

    def leq(self, lower: str, higher: str) -> bool:
        """Decide lower ⊑ higher."""
        return bool(self.order[self.position(lower), self.position(higher)])

    def less(self, lower: str, higher: str) -> bool:
        """Decide lower ⊏ higher (strictly below)."""
        return lower != higher and self.leq(lower, higher)

    def comparable(self, first: str, second: str) -> bool:
        """Decide whether two labels are ordered either way."""
        return self.leq(first, second) or self.leq(second, first)

    def join(self, first: str, second: str) -> str:
        """Get the least upper bound of two labels."""
        return self.labels[
            self.join_table[self.position(first), self.position(second)]]

    def join_all(self, labels: Iterable[str]) -> str:
        """Join any number of labels, the empty join being bottom."""
        result = self.bottom
        for label in labels:
            result = self.join(result, label)
        return result

    def upper_set(self, label: str) -> tuple:
        """Get every label l with label ⊑ l, in declaration order."""
        row = self.order[self.position(label)]
        return tuple(self.labels[i] for i in np.flatnonzero(row))

    def lower_set(self, label: str) -> tuple:
        """Get every label l with l ⊑ label, in declaration order."""
        column = self.order[:, self.position(label)]
        return tuple(self.labels[i] for i in np.flatnonzero(column))


def validate(lattice: Lattice) -> None:
    """Check the lattice laws and fill the order and join tables.

    Args:
        lattice (Lattice): lattice whose labels and edges are set.

    Raises:
        LatticeError: duplicate or unknown labels, a cycle, a missing
                      bottom or top, or a pair without a least upper bound.
    """
    labels = lattice.labels
    if not labels:
        raise LatticeError('lattice has no labels')
    if len(set(labels)) != len(labels):
        duplicated = sorted({label for label in labels
                             if labels.count(label) > 1})
        raise LatticeError(f'duplicate labels {duplicated}')
    size = len(labels)
    order = np.eye(size, dtype=bool)
    for lower, higher in lattice.edges:
        for label in (lower, higher):
            if label not in lattice.index:
                raise LatticeError(
                    f'edge ({lower}, {higher}) names unknown label {label!r}')
        order[lattice.index[lower], lattice.index[higher]] = True
    # Warshall closure, one pivot at a time
    for pivot in range(size):
        order |= order[:, pivot][:, None] & order[pivot, :][None, :]

    both_ways = order & order.T & ~np.eye(size, dtype=bool)
    if both_ways.any():
        cycle = sorted({labels[i] for i in np.flatnonzero(both_ways.any(1))})
        raise LatticeError(f'cycle detected among labels {cycle}')

    bottoms = np.flatnonzero(order.all(axis=1))
    tops = np.flatnonzero(order.all(axis=0))
    if not len(bottoms):
        raise LatticeError('missing bottom: no label is below every label')
    if not len(tops):
        raise LatticeError('missing top: no label is above every label')

    join_table = np.zeros((size, size), dtype=np.int64)
    for first in range(size):
        for second in range(first, size):
            upper = np.flatnonzero(order[first] & order[second])
            least = [u for u in upper if order[u, upper].all()]
            if not least:
                raise LatticeError(
                    f'missing join for labels {labels[first]!r} '
                    f'and {labels[second]!r}')
            join_table[first, second] = join_table[second, first] = least[0]

    lattice.order = order
    lattice.join_table = join_table
    lattice.bottom = labels[bottoms[0]]
    lattice.top = labels[tops[0]]
    logger.debug(f'Validated lattice of {size} labels, '
                 f'bottom {lattice.bottom}, top {lattice.top}')


def diamond_lattice() -> Lattice:
    """Build the four-point lattice bot ⊑ b, e ⊑ top with b, e incomparable.

    Returns:
        (Lattice): the diamond lattice.
    """
    return Lattice(['bot', 'b', 'e', 'top'],
                   [('bot', 'b'), ('bot', 'e'), ('b', 'top'), ('e', 'top')])


def chain_lattice(size: int) -> Lattice:
    """Build a total order l0 ⊑ l1 ⊑ ... of the given size.

    Args:
        size (int): number of labels, at least 1.

    Returns:
        (Lattice): the chain.
    """
    labels = [f'l{i}' for i in range(size)]
    return Lattice(labels, list(zip(labels, labels[1:])))
