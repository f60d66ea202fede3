# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.checker property drivers.

What's here:

Random trials.
--------------

Functions:
  - label_channels
  - check_trial
  - run_trials

Scenario checks.
----------------

Functions:
  - check_scenario
"""

from logging import getLogger
from multiprocessing import Pool
from time import perf_counter
from typing import Optional, Sequence

from FacetFlow.checker.explore import reachable_states
from FacetFlow.checker.projection_lemma import (check_invisibility,
                                                check_projection_part1,
                                                check_projection_part2,
                                                check_single_step_tsni,
                                                check_store_invariant)
from FacetFlow.checker.random_state import (Bounds, gen_equivalent_pair,
                                            gen_random_inputs,
                                            gen_random_state)
from FacetFlow.checker.tsni import (DEFAULT_MAX_STATES,
                                    check_trace_tsni_pair)
from FacetFlow.checker.verdict import Status, Verdict, merge_verdicts
from FacetFlow.core.policy import make_semantics
from FacetFlow.errors import ContractError, UsageError

logger = getLogger(__name__)  # pylint: disable=invalid-name

STATE_PROPERTIES = {
    'projection1': check_projection_part1,
    'projection2': check_projection_part2,
    'invisibility': check_invisibility,
    'store-invariant': check_store_invariant,
}
PAIR_PROPERTIES = ('tsni-step', 'tsni-trace')
PROPERTIES = tuple(STATE_PROPERTIES) + PAIR_PROPERTIES


def label_channels(lattice) -> dict:
    """One channel per label, named after it, for scenario-free trials."""
    return {f'to_{label}': label for label in lattice.labels}


def _check_pair(name: str, semantics, state1, state2, observer: str,
                depth: int, inputs: Sequence, max_states: int) -> Verdict:
    if name == 'tsni-step':
        return merge_verdicts('tsni-step', (
            check_single_step_tsni(semantics, state1, state2, observer,
                                   inputs),
            check_single_step_tsni(semantics, state2, state1, observer,
                                   inputs)), {'observer': observer})
    return check_trace_tsni_pair(semantics, state1, state2, observer, depth,
                                 inputs, max_states)


def check_trial(trial_args: tuple) -> Verdict:
    """Check one property on one random state or state pair.

    Args:
        trial_args (tuple): (property name, lattice, channels, mode,
                            mutations, seed, bounds, observer, depth,
                            max_states).

    Returns:
        (Verdict): the verdict of this trial, seed recorded.
    """
    (name, lattice, channels, mode, mutations, seed, bounds, observer,
     depth, max_states) = trial_args
    semantics = make_semantics(mode, lattice, channels, None, mutations)
    if name in STATE_PROPERTIES:
        state = gen_random_state(seed, bounds, lattice, channels)
        inputs = gen_random_inputs(seed, bounds, lattice, channels)
        verdict = STATE_PROPERTIES[name](semantics, state, observer, inputs)
    else:
        state1, state2 = gen_equivalent_pair(seed, bounds, lattice,
                                             channels, observer)
        verdict = _check_pair(name, semantics, state1, state2, observer,
                              depth, (), max_states)
    verdict.parameters['seed'] = seed
    return verdict


def run_trials(name: str,
               lattice,
               channels,
               mode='trapeze',
               mutations: Sequence[str] = (),
               trials: int = 1000,
               seed: int = 0,
               bounds: Optional[Bounds] = None,
               observer: Optional[str] = None,
               depth: int = 5,
               threads: int = 1,
               max_states: int = DEFAULT_MAX_STATES) -> Verdict:
    """Check a property over seeds seed .. seed + trials - 1.

    Args:
        name (str): one of PROPERTIES.
        lattice (Lattice): active lattice.
        channels (dict): channel labels.
        mode (PolicyMode or str): a faceted policy mode.
        mutations (Sequence[str]): broken rules.
        trials (int): number of random states or pairs.
        seed (int): first seed.
        bounds (Bounds): generator limits.
        observer (str): observer label, default the lattice bottom.
        depth (int): trace depth of tsni-trace.
        threads (int): worker processes.
        max_states (int): search budget per trial.

    Returns:
        (Verdict): merged verdict; a FAIL names the failing seed.
    """
    if name not in PROPERTIES:
        raise UsageError(f'unknown property {name!r}')
    if trials < 0:
        raise ContractError(f'trials must be >= 0, got {trials}')
    bounds = bounds or Bounds()
    observer = observer or lattice.bottom
    started = perf_counter()
    trial_args = [(name, lattice, channels, mode, tuple(mutations),
                   trial_seed, bounds, observer, depth, max_states)
                  for trial_seed in range(seed, seed + trials)]
    if threads > 1:
        with Pool(processes=threads) as pool:
            verdicts = pool.map(check_trial, trial_args)
    else:
        verdicts = [check_trial(args) for args in trial_args]
    merged = merge_verdicts(name, verdicts, {
        'observer': observer, 'mode': getattr(mode, 'value', mode),
        'mutations': list(mutations), 'trials': trials, 'seed': seed,
        'depth': depth})
    merged.wall_time = perf_counter() - started
    return merged


def check_scenario(name: str,
                   scenario,
                   mode=None,
                   mutations: Sequence[str] = (),
                   observer: Optional[str] = None,
                   depth: int = 5,
                   max_states: int = DEFAULT_MAX_STATES) -> Verdict:
    """Check a property on a scenario.

    Single-state properties are checked at every state reachable within
    depth steps. Pair properties compare the scenario run with its first
    two secrets, or with itself when it has fewer.

    Returns:
        (Verdict): the merged verdict.
    """
    if name not in PROPERTIES:
        raise UsageError(f'unknown property {name!r}')
    started = perf_counter()
    semantics = scenario.semantics(mode, mutations)
    observer = observer or scenario.lattice.bottom
    inputs = tuple(scenario.pending_inputs)
    parameters = {'observer': observer, 'depth': depth,
                  'mode': semantics.mode, 'mutations': list(mutations),
                  'scenario': scenario.path}
    if name in STATE_PROPERTIES:
        initial = scenario.initial_state(semantics,
                                         scenario.default_secret())
        nodes, truncated = reachable_states(semantics, initial, inputs,
                                            depth, max_states)
        verdict = merge_verdicts(name, (
            STATE_PROPERTIES[name](semantics, state, observer,
                                   inputs[cursor:])
            for state, cursor in nodes), parameters)
        verdict.states_explored = len(nodes)
        if truncated and verdict.status is Status.PASS:
            verdict.status = Status.INCONCLUSIVE
            verdict.reason = f'more than {max_states} reachable states'
    else:
        secrets = list(scenario.secret_values[:2]) or [None]
        secrets = (secrets * 2)[:2]
        state1, state2 = (scenario.initial_state(semantics, secret)
                          for secret in secrets)
        verdict = _check_pair(name, semantics, state1, state2, observer,
                              depth, inputs, max_states)
        verdict.parameters.update(parameters)
        verdict.parameters['secrets'] = secrets
    verdict.wall_time = perf_counter() - started
    return verdict
