"""Alignment of strategy profiles with values.

The alignment of a profile with a value, from the point of view of an agent,
is the average preference of that agent over all transitions of all paths the
profile produces. It is computed in two ways:

* :func:`alignment_mc` samples ``num_paths`` paths of ``path_length``
  transitions and averages the preferences over all of them. The standard
  error is computed from the per-path mean preferences.
* :func:`alignment_exact` enumerates all joint action sequences of the given
  length, weights every sequence with its occurrence probability and thus
  returns the expectation of the Monte Carlo estimator. Zero-probability
  branches are pruned, so deterministic profiles are cheap.

Sweeps evaluate whole strategy spaces. All cells of a sweep share the same
random numbers (common random numbers), which makes differences between cells
much less noisy than the cells themselves. Profiles may be evaluated by a
process pool; results are always collected in input order, so the number of
workers never changes any result.
"""
import functools
import logging
import math
import multiprocessing
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import exceptions
from . import ipd
from . import strategies
from . import values

logger = logging.getLogger(__name__)

DEFAULT_PATH_LENGTH = 10
DEFAULT_NUM_PATHS = 10000
EXACT_LENGTH_LIMIT = 10


@dataclass(frozen=True)
class AlignmentEstimate:
    """Result of an alignment computation.

    Attributes:
        mean (float): Estimated (or exact) alignment in [-1, 1].
        std_error (float): Standard error of :attr:`mean`. Always 0 for exact
            results.
        num_paths (int): Number of sampled paths, 0 for exact results.
        path_length (int): Number of transitions per path.
        exact (bool): ``True`` if computed by exhaustive enumeration.
        seed (int): Master seed of the samples, ``None`` for exact results.
        samples (numpy.ndarray): Per-path mean preferences of Monte Carlo
            estimates. Not part of comparisons.
    """

    mean: float
    std_error: float
    num_paths: int
    path_length: int
    exact: bool = False
    seed: Optional[int] = None
    samples: Optional[np.ndarray] = field(default=None, compare=False,
                                          repr=False)

    @classmethod
    def from_samples(cls, samples, path_length, seed):
        """Create a Monte Carlo estimate from per-path mean preferences.

        If all samples are identical, the mean is that sample value and the
        standard error is exactly 0.

        Args:
            samples (numpy.ndarray): Per-path mean preferences.
            path_length (int): Number of transitions per path.
            seed (int): Master seed the paths were sampled with.

        Returns:
            AlignmentEstimate: The estimate.
        """
        samples = np.asarray(samples, dtype='float64')
        if np.all(samples == samples[0]):
            mean = float(samples[0])
            std_error = 0.0
        else:
            mean = float(np.mean(samples))
            std_error = float(np.std(samples, ddof=1) /
                              np.sqrt(len(samples)))
        return cls(mean=mean, std_error=std_error, num_paths=len(samples),
                   path_length=path_length, exact=False, seed=seed,
                   samples=samples)


@dataclass(frozen=True)
class AlignmentQuery:
    """Parameters of a Monte Carlo alignment estimation.

    Attributes:
        profile (valign.strategies.StrategyProfile): Profile to evaluate.
        agent (valign.ipd.AgentId): Agent whose preferences are used.
        value (valign.values.ValueId): Value to evaluate.
        path_length (int): Number of transitions per path.
        num_paths (int): Number of sampled paths.
        rng (valign.strategies.RngSpec): Random number specification.
        matrix (valign.ipd.PayoffMatrix): Outcome matrix.
    """

    profile: strategies.StrategyProfile
    agent: ipd.AgentId
    value: values.ValueId
    path_length: int = DEFAULT_PATH_LENGTH
    num_paths: int = DEFAULT_NUM_PATHS
    rng: strategies.RngSpec = strategies.RngSpec()
    matrix: ipd.PayoffMatrix = ipd.DEFAULT_MATRIX

    def __post_init__(self):
        object.__setattr__(self, 'agent', ipd.AgentId(self.agent))
        object.__setattr__(self, 'value', values.ValueId.from_name(self.value))
        if self.path_length < 1:
            raise ValueError('path_length must be at least 1, got {}.'
                             .format(self.path_length))
        if self.num_paths < 1:
            raise ValueError('num_paths must be at least 1, got {}.'
                             .format(self.num_paths))


class _PreferenceEvaluator:
    """Vectorized preferences for a set of ``(agent, value)`` targets."""

    def __init__(self, matrix):
        self.rewards = matrix.as_array().reshape(4, 2)
        self._gain = None
        self._matrix = matrix

    def gain_table(self, agent):
        if self._gain is None:
            gain = values.GainPreference(self._matrix)
            self._gain = {a: gain.by_joint_action(a) for a in ipd.AgentId}
        return self._gain[agent]

    def __call__(self, target, joint, wealth_alpha, wealth_beta):
        agent, value = target
        if value is values.ValueId.EQUALITY:
            return values.equality_preferences(wealth_alpha, wealth_beta)
        return self.gain_table(agent)[joint]


def _normalize_targets(targets):
    return tuple((ipd.AgentId(agent), values.ValueId.from_name(value))
                 for agent, value in targets)


def estimate_mc(profile, targets, path_length=DEFAULT_PATH_LENGTH,
                num_paths=DEFAULT_NUM_PATHS, rng=strategies.RngSpec(),
                matrix=ipd.DEFAULT_MATRIX):
    """Estimate the alignment for several targets from one set of paths.

    Args:
        profile (valign.strategies.StrategyProfile): Profile to evaluate.
        targets: Iterable of ``(agent, value)`` tuples.
        path_length (int): Number of transitions per path.
        num_paths (int): Number of sampled paths.
        rng (valign.strategies.RngSpec): Random number specification.
        matrix (valign.ipd.PayoffMatrix): Outcome matrix.

    Returns:
        dict: Mapping of ``(agent, value)`` to :class:`AlignmentEstimate`.
    """
    targets = _normalize_targets(targets)
    joint = strategies.simulate_joint_actions(profile, path_length,
                                              num_paths, rng)
    wealth_alpha, wealth_beta = strategies.wealth_trajectories(joint, matrix)
    evaluate = _PreferenceEvaluator(matrix)
    estimates = {}
    for target in targets:
        preferences = evaluate(target, joint, wealth_alpha, wealth_beta)
        samples = preferences.sum(axis=1) / path_length
        estimates[target] = AlignmentEstimate.from_samples(
            samples, path_length, rng.master_seed)
    return estimates


def alignment_mc(query):
    """Estimate the alignment by Monte Carlo sampling of paths.

    Args:
        query (AlignmentQuery): Profile, agent, value and sampling parameters.

    Returns:
        AlignmentEstimate: Mean of the per-path mean preferences, with its
        standard error.
    """
    target = (query.agent, query.value)
    return estimate_mc(query.profile, [target], query.path_length,
                       query.num_paths, query.rng, query.matrix)[target]


def exact_alignments(profile, targets, path_length=DEFAULT_PATH_LENGTH,
                     matrix=ipd.DEFAULT_MATRIX):
    """Compute the exact expected alignment for several targets.

    All joint action sequences are enumerated level by level. Sequences with
    probability 0 are dropped as soon as they occur.

    Args:
        profile (valign.strategies.StrategyProfile): Profile to evaluate.
        targets: Iterable of ``(agent, value)`` tuples.
        path_length (int): Number of transitions per path.
        matrix (valign.ipd.PayoffMatrix): Outcome matrix.

    Returns:
        dict: Mapping of ``(agent, value)`` to :class:`AlignmentEstimate`.

    Raises:
        valign.exceptions.PathTooLongError: if ``path_length`` exceeds
            :data:`EXACT_LENGTH_LIMIT`.
    """
    if path_length < 1:
        raise ValueError('path_length must be at least 1, got {}.'
                         .format(path_length))
    if path_length > EXACT_LENGTH_LIMIT:
        raise exceptions.PathTooLongError(path_length, EXACT_LENGTH_LIMIT)
    targets = _normalize_targets(targets)
    evaluate = _PreferenceEvaluator(matrix)
    rewards = evaluate.rewards
    transitions = profile.transition_matrix()

    first = profile.first_move_probabilities()
    joint = np.flatnonzero(first > 0)
    probability = first[joint]
    wealth_alpha = rewards[joint, 0]
    wealth_beta = rewards[joint, 1]
    sums = {target: evaluate(target, joint, wealth_alpha, wealth_beta)
            for target in targets}
    for _ in range(1, path_length):
        branches = probability[:, np.newaxis] * transitions[joint]
        parent, joint = np.nonzero(branches > 0)
        probability = branches[parent, joint]
        wealth_alpha = wealth_alpha[parent] + rewards[joint, 0]
        wealth_beta = wealth_beta[parent] + rewards[joint, 1]
        for target in targets:
            sums[target] = sums[target][parent] + evaluate(
                target, joint, wealth_alpha, wealth_beta)
    logger.debug('Enumerated %d sequences of length %d for %s.',
                 len(probability), path_length, profile)
    return {target: AlignmentEstimate(
                mean=math.fsum(probability * sums[target]) / path_length,
                std_error=0.0, num_paths=0, path_length=path_length,
                exact=True)
            for target in targets}


def alignment_exact(profile, agent, value, path_length=DEFAULT_PATH_LENGTH,
                    matrix=ipd.DEFAULT_MATRIX):
    """Compute the exact expectation of the Monte Carlo estimator.

    Args:
        profile (valign.strategies.StrategyProfile): Profile to evaluate.
        agent (valign.ipd.AgentId): Agent whose preferences are used.
        value (valign.values.ValueId or str): Value to evaluate.
        path_length (int): Number of transitions per path (at most
            :data:`EXACT_LENGTH_LIMIT`).
        matrix (valign.ipd.PayoffMatrix): Outcome matrix.

    Returns:
        AlignmentEstimate: Exact result with ``std_error`` 0.

    Raises:
        valign.exceptions.PathTooLongError: for paths that are too long.
    """
    target = (ipd.AgentId(agent), values.ValueId.from_name(value))
    return exact_alignments(profile, [target], path_length, matrix)[target]


def combined_std_error(first, second):
    """Standard error of the difference of two estimates.

    Estimates sharing their random numbers (same seed and number of paths)
    are treated as paired samples. Otherwise, they are considered
    independent.

    Args:
        first (AlignmentEstimate): First estimate.
        second (AlignmentEstimate): Second estimate.

    Returns:
        float: Standard error of ``first.mean - second.mean``.
    """
    if first.exact and second.exact:
        return 0.0
    if (first.samples is not None and second.samples is not None and
            first.seed == second.seed and
            len(first.samples) == len(second.samples) and
            len(first.samples) > 1):
        difference = first.samples - second.samples
        if np.all(difference == difference[0]):
            return 0.0
        return float(np.std(difference, ddof=1) / np.sqrt(len(difference)))
    return float(np.hypot(first.std_error, second.std_error))


def _evaluate_profile(profile, targets, path_length, num_paths, master_seed,
                      exact, matrix):
    if exact:
        return exact_alignments(profile, targets, path_length, matrix)
    return estimate_mc(profile, targets, path_length, num_paths,
                       strategies.RngSpec(master_seed), matrix)


def evaluate_profiles(profiles, targets, path_length=DEFAULT_PATH_LENGTH,
                      num_paths=DEFAULT_NUM_PATHS, seed=42, exact=False,
                      matrix=ipd.DEFAULT_MATRIX, workers=1):
    """Compute the alignments of many profiles.

    All profiles share the same master seed and path indices.

    Args:
        profiles: Sequence of :class:`~valign.strategies.StrategyProfile`.
        targets: Iterable of ``(agent, value)`` tuples.
        path_length (int): Number of transitions per path.
        num_paths (int): Number of sampled paths (ignored if ``exact``).
        seed (int): Master seed.
        exact (bool): Use exhaustive enumeration instead of sampling.
        matrix (valign.ipd.PayoffMatrix): Outcome matrix.
        workers (int): Number of worker processes. 1 computes everything in
            the calling process.

    Returns:
        list: One dict ``{(agent, value): AlignmentEstimate}`` per profile,
        in the order of ``profiles``.
    """
    profiles = list(profiles)
    targets = _normalize_targets(targets)
    if exact and path_length > EXACT_LENGTH_LIMIT:
        raise exceptions.PathTooLongError(path_length, EXACT_LENGTH_LIMIT)
    logger.info('Evaluating %d profiles (%s, l=%d) with %d worker(s).',
                len(profiles), 'exact' if exact else 'x={}'.format(num_paths),
                path_length, workers)
    task = functools.partial(_evaluate_profile, targets=targets,
                             path_length=path_length, num_paths=num_paths,
                             master_seed=seed, exact=exact, matrix=matrix)
    if workers > 1 and len(profiles) > 1:
        with multiprocessing.Pool(workers) as pool:
            return pool.map(task, profiles)
    return [task(profile) for profile in profiles]


@dataclass(frozen=True)
class SweepResult:
    """Alignments over a two-dimensional strategy grid.

    Rows correspond to the options of alpha (cooperation probabilities or
    strategy names), columns to beta's cooperation probabilities.

    Attributes:
        kind (str): ``'random'`` or ``'heterogeneous'``.
        rows (tuple): Row labels.
        columns (tuple): Column labels (beta's cooperation probabilities).
        value (valign.values.ValueId): Evaluated value.
        estimates (dict): Mapping of agent to a tuple of rows of
            :class:`AlignmentEstimate`.
    """

    kind: str
    rows: tuple
    columns: tuple
    value: values.ValueId
    estimates: dict

    @property
    def agents(self):
        """tuple: The agents contained in the sweep."""
        return tuple(self.estimates)

    def means(self, agent):
        """Return the mean alignments of ``agent`` as a 2D array."""
        return np.array([[e.mean for e in row]
                         for row in self.estimates[ipd.AgentId(agent)]])

    def std_errors(self, agent):
        """Return the standard errors of ``agent`` as a 2D array."""
        return np.array([[e.std_error for e in row]
                         for row in self.estimates[ipd.AgentId(agent)]])

    def records(self):
        """Return the sweep as a list of flat records, e.g. for CSV output.

        Returns:
            list: One dict per agent and cell, ordered by agent, row and
            column.
        """
        row_key = 'p_alpha' if self.kind == 'random' else 'strategy_alpha'
        records = []
        for agent, rows in self.estimates.items():
            for label, row in zip(self.rows, rows):
                for p_beta, estimate in zip(self.columns, row):
                    records.append({
                        row_key: label,
                        'p_beta': p_beta,
                        'agent': str(agent),
                        'value': str(self.value),
                        'mean': estimate.mean,
                        'std_error': estimate.std_error,
                        'n_paths': estimate.num_paths,
                        'path_length': estimate.path_length,
                    })
        return records


def _normalize_agents(agents):
    if agents is None:
        return tuple(ipd.AgentId)
    if isinstance(agents, (int, ipd.AgentId)):
        return (ipd.AgentId(agents),)
    return tuple(ipd.AgentId(agent) for agent in agents)


def _sweep(kind, row_strategies, row_labels, beta_grid, agents, value,
           **kwargs):
    value = values.ValueId.from_name(value)
    agents = _normalize_agents(agents)
    beta_grid = tuple(float(p) for p in beta_grid)
    if not row_strategies or not beta_grid:
        raise ValueError('Sweep grids must not be empty.')
    beta_strategies = [strategies.random_action(p) for p in beta_grid]
    profiles = [strategies.StrategyProfile(alpha, beta)
                for alpha in row_strategies for beta in beta_strategies]
    targets = [(agent, value) for agent in agents]
    results = evaluate_profiles(profiles, targets, **kwargs)
    width = len(beta_grid)
    estimates = {
        agent: tuple(tuple(results[i * width + j][(agent, value)]
                           for j in range(width))
                     for i in range(len(row_strategies)))
        for agent in agents}
    return SweepResult(kind=kind, rows=tuple(row_labels), columns=beta_grid,
                       value=value, estimates=estimates)


def sweep_random_grid(grid, agents=None, value=values.ValueId.GAIN,
                      **kwargs):
    """Compute alignments for all pairs of random-action strategies.

    Args:
        grid: Cooperation probabilities, used for both agents.
        agents: Agent or agents to evaluate. Defaults to both.
        value (valign.values.ValueId or str): Value to evaluate.
        **kwargs: ``path_length``, ``num_paths``, ``seed``, ``exact``,
            ``matrix`` and ``workers``, see :func:`evaluate_profiles`.

    Returns:
        SweepResult: Estimates indexed by ``(p_alpha, p_beta)``.

    Raises:
        valign.exceptions.OutOfRangeError: for probabilities outside [0, 1].
    """
    grid = tuple(float(p) for p in grid)
    alpha_strategies = [strategies.random_action(p) for p in grid]
    return _sweep('random', alpha_strategies, grid, grid, agents, value,
                  **kwargs)


def sweep_heterogeneous(alpha_strategies, beta_grid, agents=None,
                        value=values.ValueId.GAIN, **kwargs):
    """Compute alignments of named alpha strategies against random betas.

    Args:
        alpha_strategies: Names of alpha's strategies (``tft``,
            ``mostly_cooperate``, ``mostly_defect``).
        beta_grid: Cooperation probabilities of beta.
        agents: Agent or agents to evaluate. Defaults to both.
        value (valign.values.ValueId or str): Value to evaluate.
        **kwargs: See :func:`evaluate_profiles`.

    Returns:
        SweepResult: Estimates indexed by ``(strategy, p_beta)``.

    Raises:
        valign.exceptions.UnknownStrategyError: for names other than the
            named memory-one strategies.
    """
    alpha_strategies = tuple(alpha_strategies)
    for name in alpha_strategies:
        if name not in strategies.NAMED_STRATEGIES:
            raise exceptions.UnknownStrategyError(name)
    options = [strategies.strategy_from_name(name)
               for name in alpha_strategies]
    return _sweep('heterogeneous', options, alpha_strategies, beta_grid,
                  agents, value, **kwargs)
