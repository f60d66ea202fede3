# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.checker verdicts.

What's here:

Classes:
  - Status
  - Verdict

Functions:
  - merge_verdicts
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, List, Optional


class Status(Enum):
    """Outcome of a property check; the value is the exit status."""

    PASS = 0
    FAIL = 1
    INCONCLUSIVE = 2


@dataclass
class Verdict(object):
    """Result of checking one property.

    Attributes:
        property (str): checked property name.
        status (Status): PASS, FAIL or INCONCLUSIVE.
        parameters (dict): observer, depth, seed and the like.
        counterexample (list): encoded steps leading to the failure.
        reason (str): one-line explanation for FAIL or INCONCLUSIVE.
        states_explored (int): states visited.
        wall_time (float): seconds spent.
    """

    property: str
    status: Status = Status.PASS
    parameters: dict = field(default_factory=dict)
    counterexample: Optional[List[dict]] = None
    reason: str = ''
    states_explored: int = 0
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def fail(self, reason: str, counterexample: List[dict]) -> 'Verdict':
        """Return this verdict turned into a FAIL."""
        return replace(self, status=Status.FAIL, reason=reason,
                       counterexample=counterexample)


def merge_verdicts(name: str,
                   verdicts: Iterable[Verdict],
                   parameters: dict = None) -> Verdict:
    """Combine per-trial verdicts.

    The first FAIL wins, then any INCONCLUSIVE; states and times add up.

    Args:
        name (str): property name of the merged verdict.
        verdicts (Iterable[Verdict]): verdicts in trial order.
        parameters (dict): parameters of the merged verdict.

    Returns:
        (Verdict): the merged verdict.
    """
    merged = Verdict(name, parameters=dict(parameters or {}))
    for verdict in verdicts:
        merged.states_explored += verdict.states_explored
        merged.wall_time += verdict.wall_time
        if merged.status is Status.FAIL:
            continue
        if verdict.status is Status.FAIL or (
                verdict.status is Status.INCONCLUSIVE and
                merged.status is Status.PASS):
            merged.status = verdict.status
            merged.reason = verdict.reason
            merged.counterexample = verdict.counterexample
            merged.parameters.update(
                {key: value for key, value in verdict.parameters.items()
                 if key not in merged.parameters})
    return merged
