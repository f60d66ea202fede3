# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.core faceted key-value store.

A store maps every key to a temporally ordered sequence of labeled values
(facets), oldest first. Unmapped keys read as the empty sequence.

What's here:

Values and facets.
------------------

Classes:
  - Absent
  - LabeledValue

Functions:
  - value_kind
  - check_value

Facet sequences.
----------------

Functions:
  - write_seq
  - project_seq
  - last
  - seq_invariant_holds

The store.
----------

Classes:
  - Store

Functions:
  - read
  - write
  - project_store
  - delete
  - keys
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterator, Mapping, Tuple, Union

from FacetFlow.core.lattice import Lattice

INT_MIN = -2 ** 63
INT_MAX = 2 ** 63 - 1


class Absent(Enum):
    """The result of reading a key with no visible facet."""

    ABSENT = 'absent'

    def __repr__(self) -> str:
        return 'ABSENT'


ABSENT = Absent.ABSENT


def value_kind(value) -> str:
    """Get the type tag of a value.

    bool is tested before int so that True and 1 stay distinct values.

    Args:
        value: an int, bool, str or ABSENT.

    Returns:
        (str): 'int', 'bool', 'str' or 'absent'.

    Raises:
        TypeError: value is not one of the supported scalars.
        ValueError: an int outside the signed 64-bit range.
    """
    if value is ABSENT:
        return 'absent'
    if isinstance(value, bool):
        return 'bool'
    if isinstance(value, int):
        if not INT_MIN <= value <= INT_MAX:
            raise ValueError(f'integer {value} outside 64-bit range')
        return 'int'
    if isinstance(value, str):
        return 'str'
    raise TypeError(f'unsupported value {value!r}')


def check_value(value) -> None:
    """Reject anything that cannot be stored (ABSENT included)."""
    if value_kind(value) == 'absent':
        raise TypeError('ABSENT cannot be stored')


@dataclass(frozen=True)
class LabeledValue(object):
    """One facet: a value and the label it was written at.

    Attributes:
        value: int, bool or str.
        label (str): security label of the write.
        kind (str): type tag of value, part of equality.
    """

    value: Union[int, bool, str]
    label: str
    kind: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        check_value(self.value)
        object.__setattr__(self, 'kind', value_kind(self.value))


LabeledValueSeq = Tuple[LabeledValue, ...]


def write_seq(seq: LabeledValueSeq,
              value,
              label: str,
              lattice: Lattice) -> LabeledValueSeq:
    """Garbage-collect facets the new write hides, then append it.

    Every older facet (v', l') with label ⊑ l' is removed: any reader that
    could see it also sees the new write.

    Args:
        seq (tuple): facets, oldest first.
        value: value to write.
        label (str): label of the writer.
        lattice (Lattice): active lattice.

    Returns:
        (tuple): the new facet sequence.
    """
    kept = tuple(facet for facet in seq
                 if not lattice.leq(label, facet.label))
    return kept + (LabeledValue(value, label),)


def project_seq(seq: LabeledValueSeq,
                label: str,
                lattice: Lattice) -> LabeledValueSeq:
    """Keep the facets visible at label, order preserved."""
    return tuple(facet for facet in seq if lattice.leq(facet.label, label))


def last(seq: LabeledValueSeq):
    """Get the newest facet of a sequence, ABSENT when it is empty."""
    return seq[-1] if seq else ABSENT


def seq_invariant_holds(seq: LabeledValueSeq, lattice: Lattice) -> bool:
    """Check that no facet's label is ⊑ the label of an older facet."""
    return not any(lattice.leq(seq[j].label, seq[i].label)
                   for j in range(len(seq)) for i in range(j))


class Store(object):
    """An immutable faceted store snapshot.

    Keys mapped to the empty sequence are dropped on construction, so a key
    mapped to ε and an unmapped key are the same store.

    Attributes:
        _entries (dict): key as key and non-empty facet tuple as value.
    """

    def __init__(self,
                 entries: Mapping[str, LabeledValueSeq] = None) -> None:
        """Initialize Store.

        Args:
            entries (Mapping): key as key and facet sequence as value.
        """
        self._entries = {key: tuple(seq)
                         for key, seq in (entries or {}).items() if seq}
        self._hash = None
        super().__init__()

    def get(self, key: str) -> LabeledValueSeq:
        """Get σ(k), ε for unmapped keys."""
        return self._entries.get(key, ())

    def assign(self, key: str, seq: LabeledValueSeq) -> 'Store':
        """Return σ[k ↦ seq], leaving this snapshot untouched."""
        entries = dict(self._entries)
        entries[key] = tuple(seq)
        return Store(entries)

    def items(self) -> Iterator[Tuple[str, LabeledValueSeq]]:
        """Iterate (key, facets) pairs in key order."""
        for key in sorted(self._entries):
            yield key, self._entries[key]

    def facet_count(self) -> int:
        """Count facets over all keys."""
        return sum(len(seq) for seq in self._entries.values())

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._entries))

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: object) -> bool:
        return key in self._entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Store):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __getstate__(self) -> dict:
        # string hashes differ between worker processes
        return {'_entries': self._entries}

    def __setstate__(self, state: dict) -> None:
        self._entries = state['_entries']
        self._hash = None

    def __repr__(self) -> str:
        body = ', '.join(f'{key!r}: {list(seq)!r}'
                         for key, seq in self.items())
        return f'Store({{{body}}})'


EMPTY_STORE = Store()


def read(store: Store, key: str, label: str, lattice: Lattice):
    """Read the newest facet of key visible at label.

    Returns:
        (LabeledValue or Absent): ABSENT when nothing is visible.
    """
    return last(project_seq(store.get(key), label, lattice))


def write(store: Store,
          key: str,
          value,
          label: str,
          lattice: Lattice) -> Store:
    """Write value at label under key; other keys are shared."""
    return store.assign(key, write_seq(store.get(key), value, label, lattice))


def project_store(store: Store, label: str, lattice: Lattice) -> Store:
    """Project every key's facets at label."""
    return Store({key: project_seq(seq, label, lattice)
                  for key, seq in store.items()})


def delete(store: Store, key: str, label: str, lattice: Lattice) -> Store:
    """Delete every facet of key whose label is ⊒ label."""
    seq = store.get(key)
    if not seq:
        return store
    return store.assign(key, tuple(facet for facet in seq
                                   if not lattice.leq(label, facet.label)))


def keys(store: Store, label: str, lattice: Lattice) -> FrozenSet[str]:
    """List the keys with at least one facet visible at label."""
    return frozenset(key for key, seq in store.items()
                     if project_seq(seq, label, lattice))


def store_from_writes(writes, lattice: Lattice) -> Store:
    """Apply (key, value, label) writes to σ0 in order.

    Args:
        writes (Iterable[tuple]): (key, value, label) triples, oldest first.
        lattice (Lattice): active lattice.

    Returns:
        (Store): the resulting store.
    """
    entries: Dict[str, LabeledValueSeq] = {}
    for key, value, label in writes:
        entries[key] = write_seq(entries.get(key, ()), value, label, lattice)
    return Store(entries)
