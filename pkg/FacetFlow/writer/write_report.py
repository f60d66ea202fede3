# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.writer write verdict and leak reports.

Functions:
  - verdict_to_dict
  - leak_report_to_dict
  - write_report
"""

from json import dump
from typing import Union


def verdict_to_dict(verdict) -> dict:
    """Encode a Verdict as a JSON-compatible dict."""
    return {'property': verdict.property,
            'verdict': verdict.status.name,
            'parameters': verdict.parameters,
            'reason': verdict.reason,
            'counterexample': verdict.counterexample,
            'states_explored': verdict.states_explored,
            'wall_time': round(verdict.wall_time, 6)}


def leak_report_to_dict(report) -> dict:
    """Encode a LeakReport as a JSON-compatible dict."""
    return {'mode': report.mode,
            'observer': report.observer,
            'depth': report.depth,
            'verdict': report.status.name,
            'bits': report.bits,
            'classes': report.classes,
            'witnesses': report.witnesses,
            'states_explored': report.states_explored,
            'wall_time': round(report.wall_time, 6)}


def write_report(output_path: str, report: Union[dict, list]) -> None:
    """Write an encoded report as indented JSON.

    Args:
        output_path (str): output file path string.
        report (dict or list): encoded report.
    """
    with open(output_path, 'w', encoding='utf-8') as opened_report:
        dump(report, opened_report, indent=2, sort_keys=True)
        opened_report.write('\n')
