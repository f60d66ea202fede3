# -*- coding: utf-8 -*-
"""Tests for FacetFlow.core.lattice."""

from itertools import combinations, product

import pytest

from FacetFlow.core.lattice import Lattice, chain_lattice, diamond_lattice
from FacetFlow.errors import LatticeError


def powerset_lattice(size: int) -> Lattice:
    """Subsets of range(size) ordered by inclusion."""
    subsets = [frozenset(c) for n in range(size + 1)
               for c in combinations(range(size), n)]
    name = {s: 's' + ''.join(str(i) for i in sorted(s)) for s in subsets}
    edges = [(name[low], name[high]) for low, high in product(subsets, subsets)
             if low < high and len(high) == len(low) + 1]
    return Lattice([name[s] for s in subsets], edges)


def test_diamond_order():
    lattice = diamond_lattice()
    assert lattice.bottom == 'bot'
    assert lattice.top == 'top'
    assert lattice.leq('bot', 'e')
    assert lattice.leq('b', 'top')
    assert not lattice.leq('b', 'e')
    assert not lattice.comparable('b', 'e')
    assert lattice.less('bot', 'top')
    assert not lattice.less('e', 'e')


def test_diamond_join():
    lattice = diamond_lattice()
    assert lattice.join('b', 'e') == 'top'
    assert lattice.join('bot', 'e') == 'e'
    assert lattice.join_all([]) == 'bot'
    assert lattice.join_all(['b', 'bot']) == 'b'


def test_upper_and_lower_sets():
    lattice = diamond_lattice()
    assert lattice.upper_set('b') == ('b', 'top')
    assert lattice.lower_set('e') == ('bot', 'e')


def test_chain_is_total():
    lattice = chain_lattice(5)
    assert lattice.bottom == 'l0' and lattice.top == 'l4'
    for first, second in product(lattice.labels, repeat=2):
        assert lattice.comparable(first, second)


@pytest.mark.parametrize('lattice', [diamond_lattice(), chain_lattice(6),
                                     powerset_lattice(3)])
def test_join_is_least_upper_bound(lattice):
    for first, second in product(lattice.labels, repeat=2):
        joined = lattice.join(first, second)
        assert lattice.leq(first, joined) and lattice.leq(second, joined)
        for upper in lattice.labels:
            if lattice.leq(first, upper) and lattice.leq(second, upper):
                assert lattice.leq(joined, upper)
        assert joined == lattice.join(second, first)


def test_round_trip_through_dict():
    lattice = powerset_lattice(2)
    again = Lattice.from_dict(lattice.to_dict())
    assert again.labels == lattice.labels
    assert (again.order == lattice.order).all()


@pytest.mark.parametrize('labels, edges, message', [
    ([], [], 'no labels'),
    (['a', 'a'], [], 'duplicate'),
    (['a', 'b'], [('a', 'c')], 'unknown label'),
    (['a', 'b'], [('a', 'b'), ('b', 'a')], 'cycle'),
    (['a', 'b'], [], 'missing bottom'),
    (['a', 'b', 'c'], [('a', 'b'), ('a', 'c')], 'missing top'),
    (['bot', 'x', 'y', 'p', 'q', 'top'],
     [('bot', 'x'), ('bot', 'y'), ('x', 'p'), ('y', 'p'), ('x', 'q'),
      ('y', 'q'), ('p', 'top'), ('q', 'top')], 'missing join'),
])
def test_malformed_lattices_are_rejected(labels, edges, message):
    with pytest.raises(LatticeError, match=message):
        Lattice(labels, edges)


def test_unknown_label_lookup():
    with pytest.raises(LatticeError, match='unknown label'):
        diamond_lattice().leq('bot', 'nope')
