# -*- coding: utf-8 -*-
"""End-to-end tests of the facetflow command line."""

from json import dumps, loads

import pytest

from facetflow import build_parser
from FacetFlow import __version__
from tests.conftest import scenario_path


def invoke(*argv) -> int:
    arguments = build_parser().parse_args([str(arg) for arg in argv])
    return arguments.func.__self__.run_script(arguments)


def json_lines(path) -> list:
    return [loads(line) for line in
            path.read_text(encoding='utf-8').splitlines()]


def test_run_is_reproducible(tmp_path):
    first, second = tmp_path / 'first.jsonl', tmp_path / 'second.jsonl'
    for out in (first, second):
        assert invoke('run', '-i', scenario_path('exploit2'), '--seed', 7,
                      '--out', out) == 0
    assert first.read_bytes() == second.read_bytes()
    assert (tmp_path / 'first.e.jsonl').read_bytes() == (
        tmp_path / 'second.e.jsonl').read_bytes()


def test_observer_trace_is_the_projected_trace(tmp_path):
    out = tmp_path / 'trace.jsonl'
    assert invoke('run', '-i', scenario_path('exploit3_4bit'), '--mode',
                  'design1', '--secret', 5, '--seed', 1, '--out', out) == 0
    full = json_lines(out)
    seen = json_lines(tmp_path / 'trace.e.jsonl')
    assert len(full) == len(seen) > 0
    for step, observed in zip(full, seen):
        assert observed['step'] == step['step']
        if step['event']['type'] == 'send':
            assert observed['event'] == step['event']
        else:
            assert observed['event'] == {'type': 'nop'}


def test_fifo_run_of_the_empty_scenario(tmp_path):
    out = tmp_path / 'empty.jsonl'
    assert invoke('run', '-i', scenario_path('empty'), '--policy', 'fifo',
                  '--out', out) == 0
    assert out.read_text(encoding='utf-8') == ''
    assert (tmp_path / 'empty.bot.jsonl').read_text(encoding='utf-8') == ''


def test_check_pass_and_fail(tmp_path):
    report = tmp_path / 'verdict.json'
    assert invoke('check', '-i', scenario_path('exploit2'), '--property',
                  'tsni-trace', '--depth', 5, '--out', report) == 0
    assert loads(report.read_text(encoding='utf-8'))['verdict'] == 'PASS'

    assert invoke('check', '-i', scenario_path('exploit2'), '--property',
                  'tsni-trace', '--depth', 5, '--mutation',
                  'ignore-conflicting-writes', '--out', report) == 1
    failed = loads(report.read_text(encoding='utf-8'))
    assert failed['verdict'] == 'FAIL'
    assert failed['counterexample']
    assert failed['parameters']['mutations'] == ['ignore-conflicting-writes']


def test_check_declassify_scenario(tmp_path):
    report = tmp_path / 'declassify.json'
    for name in ('tsni-trace', 'invisibility'):
        assert invoke('check', '-i', scenario_path('declassify'),
                      '--property', name, '--depth', 6, '--out',
                      report) == 0
        assert loads(report.read_text(encoding='utf-8'))['verdict'] == 'PASS'


def test_check_random_trials_only(tmp_path):
    report = tmp_path / 'trials.json'
    assert invoke('check', '--property', 'invisibility', '--trials', 50,
                  '--observer', 'e', '--out', report) == 0
    written = loads(report.read_text(encoding='utf-8'))
    assert written['parameters']['trials'] == 50


def test_check_inconclusive_on_a_tiny_budget(tmp_path):
    assert invoke('check', '-i', scenario_path('exploit3_scaled'),
                  '--property', 'tsni-trace', '--depth', 10, '--max-states',
                  5, '--out', tmp_path / 'budget.json') == 2


def test_check_usage_errors(tmp_path):
    assert invoke('check', '--property', 'projection1') == 64
    assert invoke('check', '-i', scenario_path('exploit2'), '--property',
                  'projection1', '--mode', 'design1', '--out',
                  tmp_path / 'x.json') == 64


def test_leak_compares_modes(tmp_path):
    report = tmp_path / 'leak.json'
    assert invoke('leak', '-i', scenario_path('exploit3_4bit'), '--mode',
                  'trapeze', '--mode', 'design1', '--secret', 0, '--secret',
                  15, '--out', report) == 0
    written = loads(report.read_text(encoding='utf-8'))
    assert [entry['mode'] for entry in written] == ['trapeze', 'design1']
    assert [entry['bits'] for entry in written] == [0.0, 1.0]
    assert written[1]['classes'] == [[0], [15]]


def test_leak_inconclusive_exit(tmp_path):
    assert invoke('leak', '-i', scenario_path('exploit2'), '--mode', 'naive',
                  '--depth', 1, '--out', tmp_path / 'leak.json') == 2


def test_store_dump_and_load(tmp_path):
    dumped, again = tmp_path / 'dumped.tsv', tmp_path / 'again.tsv'
    assert invoke('store', 'dump', '-i', scenario_path('constant'),
                  '--secret', 9, '--out', dumped) == 0
    assert dumped.read_text(encoding='utf-8').splitlines() == [
        '100\ti:9\ttop', 'greeting\ts:hello\te']
    assert invoke('store', 'load', '-i', scenario_path('constant'),
                  '--store', dumped, '--out', again) == 0
    assert again.read_bytes() == dumped.read_bytes()


def test_store_errors(tmp_path):
    assert invoke('store', 'load', '-i', scenario_path('constant')) == 64
    bad = tmp_path / 'bad.tsv'
    bad.write_text('k\ti:1\tnobody\n', encoding='utf-8')
    assert invoke('store', 'load', '-i', scenario_path('constant'),
                  '--store', bad) == 65
    assert invoke('store', 'dump', '-i', scenario_path('empty'), '--secret',
                  1, '--out', tmp_path / 'x.tsv') == 65


def test_validate(tmp_path):
    assert invoke('validate', '-i', scenario_path('declassify')) == 0
    broken = tmp_path / 'broken.scenario'
    broken.write_text('{"lattice": {"labels": []}}', encoding='utf-8')
    assert invoke('validate', '-i', broken) == 65
    assert invoke('validate', '-i', tmp_path / 'missing.scenario') == 65
    odd = tmp_path / 'odd_operator.scenario'
    odd.write_text(dumps({
        'lattice': {'labels': ['bot', 'top'], 'edges': [['bot', 'top']]},
        'processes': [{'label': 'bot', 'program': [
            {'op': 'let', 'var': 'x', 'value': {
                'binop': ['+'], 'lhs': {'lit': 1}, 'rhs': {'lit': 2}}}]}]}),
        encoding='utf-8')
    assert invoke('validate', '-i', odd) == 65


def test_argument_errors_exit_with_usage_status():
    with pytest.raises(SystemExit) as raised:
        build_parser().parse_args(['run'])
    assert raised.value.code == 64
    with pytest.raises(SystemExit) as raised:
        build_parser().parse_args(['check', '--property', 'soundness'])
    assert raised.value.code == 64


def test_version(capsys):
    with pytest.raises(SystemExit) as raised:
        build_parser().parse_args(['validate', '--version'])
    assert raised.value.code == 0
    assert f'FacetFlow v{__version__}' in capsys.readouterr().out
