"""Memory-one strategies, strategy profiles and path sampling.

A memory-one strategy consists of the probability to cooperate in the first
round and a response table holding the cooperation probability for every
possible previous joint action. The response table is always indexed from the
perspective of the strategy's owner, i.e. by ``2 * own + opponent`` where
cooperation is 0 and defection is 1::

    response = (after CC, after CD, after DC, after DD)

Randomness for sampling is drawn from per-path substreams. The substream of a
path is a pure function of the master seed and the path index, so that results
do not depend on the order in which paths are simulated, or on the number of
worker processes.
"""
import functools
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import exceptions
from . import ipd
from . import lts

logger = logging.getLogger(__name__)

NAMED_STRATEGIES = ('tft', 'mostly_cooperate', 'mostly_defect')


def _check_probability(name, value):
    if isinstance(value, bool):
        raise exceptions.OutOfRangeError(name, value)
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise exceptions.OutOfRangeError(name, value) from None
    if not 0.0 <= value <= 1.0:
        raise exceptions.OutOfRangeError(name, value)
    return value


@dataclass(frozen=True)
class MemoryOneStrategy:
    """Strategy depending on the previous joint action only.

    Attributes:
        first_move (float): Cooperation probability in the first round.
        response (tuple): Cooperation probabilities after the previous joint
            action, indexed by ``2 * own + opponent``.
        name (str): Name used in configuration files and results.
    """

    first_move: float
    response: Tuple[float, float, float, float]
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, 'first_move',
                           _check_probability('first_move', self.first_move))
        response = tuple(self.response)
        if len(response) != 4:
            raise ValueError('A response table needs 4 entries, got {}.'
                             .format(len(response)))
        response = tuple(_check_probability('response[{}]'.format(i), p)
                         for i, p in enumerate(response))
        object.__setattr__(self, 'response', response)
        if self.name is None:
            object.__setattr__(self, 'name', 'memory_one:{}:{}'.format(
                self.first_move, ','.join(str(p) for p in response)))

    def __str__(self):
        return self.name

    def cooperation_probability(self, previous=None):
        """Return the cooperation probability for the next round.

        Args:
            previous (tuple): ``(own action, opponent action)`` of the
                previous round, or ``None`` for the first round.

        Returns:
            float: Probability to cooperate.
        """
        if previous is None:
            return self.first_move
        own, opponent = previous
        return self.response[2 * int(own) + int(opponent)]

    @property
    def is_deterministic(self):
        """bool: ``True`` if every probability is either 0 or 1."""
        return all(p in (0.0, 1.0) for p in (self.first_move,) +
                   self.response)

    def response_array(self, agent):
        """Return cooperation probabilities indexed by global joint action.

        The global joint action index is ``2 * alpha + beta``. For beta, the
        joint action is swapped to the strategy owner's perspective first.

        Args:
            agent (valign.ipd.AgentId): Agent playing this strategy.

        Returns:
            numpy.ndarray: Four cooperation probabilities.
        """
        response = np.array(self.response)
        if agent == ipd.AgentId.BETA:
            return response[ipd.SWAPPED_INDEX]
        return response


def random_action(p_coop):
    """Create a strategy cooperating with a fixed probability every round.

    Args:
        p_coop (float): Cooperation probability in [0, 1].

    Returns:
        MemoryOneStrategy: Strategy named ``random:<p>``.

    Raises:
        valign.exceptions.OutOfRangeError: if ``p_coop`` is not in [0, 1].
    """
    p_coop = _check_probability('p_coop', p_coop)
    return MemoryOneStrategy(p_coop, (p_coop,) * 4,
                             name='random:{}'.format(p_coop))


def tit_for_tat():
    """Create tit-for-tat: repeat the opponent's previous action."""
    return MemoryOneStrategy(0.5, (1.0, 0.0, 1.0, 0.0), name='tft')


def mostly_cooperate():
    """Create a strategy that defects only after mutual defection."""
    return MemoryOneStrategy(0.5, (1.0, 1.0, 1.0, 0.0),
                             name='mostly_cooperate')


def mostly_defect():
    """Create a strategy that cooperates only after mutual cooperation."""
    return MemoryOneStrategy(0.5, (1.0, 0.0, 0.0, 0.0),
                             name='mostly_defect')


_FACTORIES = {
    'tft': tit_for_tat,
    'mostly_cooperate': mostly_cooperate,
    'mostly_defect': mostly_defect,
}


def strategy_from_name(name):
    """Create a strategy from its configuration name.

    Valid names are ``random:<p>``, ``tft``, ``mostly_cooperate`` and
    ``mostly_defect``.

    Args:
        name (str): Strategy name.

    Returns:
        MemoryOneStrategy: The strategy.

    Raises:
        valign.exceptions.UnknownStrategyError: if the name is invalid.
        valign.exceptions.OutOfRangeError: for random strategies with a
            probability outside of [0, 1].
    """
    name = name.strip()
    if name.startswith('random:'):
        try:
            p_coop = float(name[len('random:'):])
        except ValueError:
            raise exceptions.UnknownStrategyError(name) from None
        return random_action(p_coop)
    try:
        return _FACTORIES[name]()
    except KeyError:
        raise exceptions.UnknownStrategyError(name) from None


def probability_grid(points):
    """Create an evenly spaced probability grid including 0 and 1.

    Args:
        points (int): Number of grid points (at least 2).

    Returns:
        tuple: ``i / (points - 1)`` for ``i = 0 .. points - 1``.
    """
    if points < 2:
        raise ValueError('A probability grid needs at least 2 points, got {}.'
                         .format(points))
    return tuple(i / (points - 1) for i in range(points))


@dataclass(frozen=True)
class StrategyProfile:
    """Tuple of the strategies of alpha and beta.

    Attributes:
        alpha (MemoryOneStrategy): Strategy of alpha.
        beta (MemoryOneStrategy): Strategy of beta.
        label (str): Optional human-readable name. Not used for equality.
    """

    alpha: MemoryOneStrategy
    beta: MemoryOneStrategy
    label: Optional[str] = None

    def __eq__(self, other):
        if not isinstance(other, StrategyProfile):
            return NotImplemented
        return (self.alpha, self.beta) == (other.alpha, other.beta)

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __str__(self):
        if self.label is not None:
            return self.label
        return '({}, {})'.format(self.alpha, self.beta)

    def strategy(self, agent):
        """Return the strategy of ``agent``."""
        return self.alpha if agent == ipd.AgentId.ALPHA else self.beta

    def replace(self, agent, strategy):
        """Return a profile where only ``agent``'s strategy is replaced."""
        if agent == ipd.AgentId.ALPHA:
            return StrategyProfile(strategy, self.beta)
        return StrategyProfile(self.alpha, strategy)

    @property
    def is_deterministic(self):
        """bool: ``True`` if all strategies are deterministic."""
        return self.alpha.is_deterministic and self.beta.is_deterministic

    def first_move_probabilities(self):
        """Return the probability of every joint action in the first round.

        Returns:
            numpy.ndarray: Four probabilities, indexed by joint action.
        """
        return _joint_probabilities(self.alpha.first_move,
                                    self.beta.first_move)

    def transition_matrix(self):
        """Return the joint action transition probabilities.

        Returns:
            numpy.ndarray: Array of shape ``(4, 4)``, where ``[i, j]`` is the
            probability of joint action ``j`` following joint action ``i``.
        """
        p_alpha = self.alpha.response_array(ipd.AgentId.ALPHA)
        p_beta = self.beta.response_array(ipd.AgentId.BETA)
        return np.stack([_joint_probabilities(p_alpha[i], p_beta[i])
                         for i in range(4)])


def _joint_probabilities(p_alpha, p_beta):
    return np.array([p_alpha * p_beta, p_alpha * (1 - p_beta),
                     (1 - p_alpha) * p_beta, (1 - p_alpha) * (1 - p_beta)])


@dataclass(frozen=True)
class RngSpec:
    """Specification of the random number streams of a simulation.

    Attributes:
        master_seed (int): Unsigned 64 bit master seed.
    """

    master_seed: int = 42

    def __post_init__(self):
        if (isinstance(self.master_seed, bool) or
                int(self.master_seed) != self.master_seed or
                not 0 <= self.master_seed < 2**64):
            raise ValueError('The master seed must be an unsigned 64 bit '
                             'integer, got {!r}.'.format(self.master_seed))

    def generator(self, path_index):
        """Return the random generator of the substream for ``path_index``.

        Substreams are derived from the master seed with a counter-based
        bit generator, keyed by the path index.

        Args:
            path_index (int): Non-negative path index.

        Returns:
            numpy.random.Generator: Independent generator for the path.
        """
        sequence = np.random.SeedSequence(int(self.master_seed),
                                          spawn_key=(int(path_index),))
        return np.random.Generator(np.random.Philox(sequence))

    def uniforms(self, num_paths, length, start=0):
        """Return the uniform random numbers of a block of paths.

        Args:
            num_paths (int): Number of paths.
            length (int): Number of rounds per path.
            start (int): Index of the first path.

        Returns:
            numpy.ndarray: Read-only array of shape ``(num_paths, length,
            2)``. Entry ``[i, t, agent]`` decides the action of ``agent`` in
            round ``t`` of path ``start + i``.
        """
        return _uniform_block(int(self.master_seed), int(num_paths),
                              int(length), int(start))


@functools.lru_cache(maxsize=8)
def _uniform_block(master_seed, num_paths, length, start):
    logger.debug('Drawing uniforms for %d paths of length %d (seed %d).',
                 num_paths, length, master_seed)
    spec = RngSpec(master_seed)
    block = np.empty((num_paths, length, 2))
    for i in range(num_paths):
        block[i] = spec.generator(start + i).random((length, 2))
    block.flags.writeable = False
    return block


def simulate_joint_actions(profile, length, num_paths, rng, start=0):
    """Simulate the joint action sequences of many paths at once.

    Every agent cooperates in a round if its uniform random number is below
    its cooperation probability. All profiles simulated with the same ``rng``
    therefore share their random numbers.

    Args:
        profile (StrategyProfile): Strategies of both agents.
        length (int): Number of rounds per path.
        num_paths (int): Number of paths.
        rng (RngSpec): Random number specification.
        start (int): Index of the first path.

    Returns:
        numpy.ndarray: Joint action indices of shape ``(num_paths, length)``.
    """
    if length < 1:
        raise ValueError('Paths must have at least one transition.')
    uniforms = rng.uniforms(num_paths, length, start)
    joint = np.empty((num_paths, length), dtype='int64')
    p_alpha = profile.alpha.response_array(ipd.AgentId.ALPHA)
    p_beta = profile.beta.response_array(ipd.AgentId.BETA)
    defect_alpha = uniforms[:, 0, 0] >= profile.alpha.first_move
    defect_beta = uniforms[:, 0, 1] >= profile.beta.first_move
    joint[:, 0] = 2 * defect_alpha + defect_beta
    for t in range(1, length):
        previous = joint[:, t - 1]
        defect_alpha = uniforms[:, t, 0] >= p_alpha[previous]
        defect_beta = uniforms[:, t, 1] >= p_beta[previous]
        joint[:, t] = 2 * defect_alpha + defect_beta
    return joint


def wealth_trajectories(joint, matrix=ipd.DEFAULT_MATRIX):
    """Accumulate the wealth along simulated joint action sequences.

    Args:
        joint (numpy.ndarray): Joint action indices, ``(paths, length)``.
        matrix (valign.ipd.PayoffMatrix): Outcome matrix.

    Returns:
        tuple: Integer arrays ``(wealth_alpha, wealth_beta)`` holding the
        post-transition wealth of every round.
    """
    rewards = matrix.as_array().reshape(4, 2)
    return (np.cumsum(rewards[joint, 0], axis=1),
            np.cumsum(rewards[joint, 1], axis=1))


def sample_path(profile, matrix, length, rng, path_index):
    """Sample a single path of the game.

    Args:
        profile (StrategyProfile): Strategies of both agents.
        matrix (valign.ipd.PayoffMatrix): Outcome matrix.
        length (int): Number of transitions (at least 1).
        rng (RngSpec): Random number specification.
        path_index (int): Index selecting the random substream.

    Returns:
        valign.lts.Path: Path starting at ``(0, 0)``.
    """
    if length < 1:
        raise ValueError('Paths must have at least one transition, got {}.'
                         .format(length))
    joint = simulate_joint_actions(profile, length, 1, rng, start=path_index)
    actions = [ipd.JointAction.from_index(int(i)) for i in joint[0]]
    return lts.run_actions(ipd.transition_system(matrix), actions)


def reachable_joint_actions(profile, length=None):
    """Determine the joint actions that occur with positive probability.

    Args:
        profile (StrategyProfile): Strategies of both agents.
        length (int): Number of rounds to consider. ``None`` considers
            arbitrarily long paths.

    Returns:
        frozenset: Reachable joint action indices.
    """
    successors = profile.transition_matrix() > 0
    frontier = set(np.flatnonzero(profile.first_move_probabilities() > 0))
    reachable = set(frontier)
    rounds = 1
    while frontier and (length is None or rounds < length):
        frontier = {int(j) for i in frontier
                    for j in np.flatnonzero(successors[i])} - reachable
        reachable |= frontier
        rounds += 1
    return frozenset(int(i) for i in reachable)


def behaviorally_equivalent(first, second, length=None):
    """Check whether two profiles produce the same joint action process.

    Two profiles are equivalent if their first moves agree and their
    responses agree after every joint action that can actually occur. Such
    profiles have identical path distributions and hence identical
    alignments, even if their strategies differ in unreachable situations.

    Args:
        first (StrategyProfile): First profile.
        second (StrategyProfile): Second profile.
        length (int): Only consider the first ``length`` rounds.

    Returns:
        bool: ``True`` if both profiles are behaviorally equivalent.
    """
    if not np.array_equal(first.first_move_probabilities(),
                          second.first_move_probabilities()):
        return False
    # Responses to the joint action of the last round are never used.
    if length is None:
        reachable = reachable_joint_actions(first)
    elif length > 1:
        reachable = reachable_joint_actions(first, length - 1)
    else:
        reachable = frozenset()
    first_transitions = first.transition_matrix()
    second_transitions = second.transition_matrix()
    return all(np.array_equal(first_transitions[i], second_transitions[i])
               for i in reachable)
