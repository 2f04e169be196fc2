"""Value-based preference functions.

A preference function rates a single transition ``pre -> post`` of the world
with respect to a value, from the point of view of one agent. Ratings lie in
the interval [-1, 1], where +1 means that the transition promotes the value
as much as possible and -1 means that it demotes it as much as possible.

Two values are available:

* **Equality** is based on the Gini Index of the post-transition state. It
  only depends on the post-transition state and is the same for both agents.
* **Personal gain** ranks the reward an agent received in the transition. The
  distinct rewards of the payoff matrix are mapped to equally spaced points in
  [-1, 1], so for the default matrix the rewards 0, 3, 6 and 9 become -1,
  -1/3, 1/3 and 1.

Besides the scalar functions, this module provides vectorized numpy
counterparts that the estimators in :mod:`valign.alignment` work with.
"""
import enum

import numpy as np

from . import exceptions
from . import ipd


class ValueId(enum.Enum):
    """Label of a value."""

    EQUALITY = 'equality'
    GAIN = 'gain'

    def __str__(self):
        return self.value

    @classmethod
    def from_name(cls, name):
        """Look up a value by its label (``equality``/``gain``)."""
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            raise ValueError('Unknown value "{}". Expected one of: {}.'.format(
                name, ', '.join(v.value for v in cls))) from None


def gini(state):
    """Compute the Gini Index of a two-agent wealth state.

    Numerator and denominator are computed as exact integers. If both agents
    own nothing, the state is considered perfectly equal.

    Args:
        state (valign.ipd.State): Wealth state.

    Returns:
        float: Gini Index in [0, 1/2].
    """
    total = state.total
    if total == 0:
        return 0.0
    return abs(state.wealth_alpha - state.wealth_beta) / (2 * total)


def prf_equality(agent, pre, post):
    """Preference of a transition with respect to equality.

    Computes ``1 - 4 * gini(post)``. The result neither depends on the
    pre-transition state nor on the agent.

    Args:
        agent (valign.ipd.AgentId): Agent the preference is computed for.
        pre (valign.ipd.State): Pre-transition state.
        post (valign.ipd.State): Post-transition state.

    Returns:
        float: Preference in [-1, 1].
    """
    total = post.total
    if total == 0:
        return 1.0
    diff = abs(post.wealth_alpha - post.wealth_beta)
    return (total - 2 * diff) / total


class GainPreference:
    """Rank-based personal gain preference for a payoff matrix.

    The distinct rewards of the matrix (pooled over both agents) are sorted
    and mapped to equally spaced points from -1 to +1. A matrix with a single
    distinct reward maps it to 0.

    Attributes:
        levels (tuple): The ranked rewards, in ascending order.
        mapping (dict): Reward to preference mapping.
    """

    def __init__(self, matrix=ipd.DEFAULT_MATRIX):
        """Initialize the gain preference.

        Args:
            matrix (valign.ipd.PayoffMatrix): Matrix whose rewards are
                ranked.
        """
        self.matrix = matrix
        self.levels = matrix.reward_levels()
        count = len(self.levels)
        if count == 1:
            self.mapping = {self.levels[0]: 0.0}
        else:
            # One division per level keeps opposite ranks exact negatives.
            self.mapping = {reward: (2 * rank - (count - 1)) / (count - 1)
                            for rank, reward in enumerate(self.levels)}

    def __call__(self, agent, pre, post):
        """Evaluate the preference of ``agent`` for ``pre -> post``.

        Raises:
            valign.exceptions.UnknownDeltaError: if the wealth increase of
                ``agent`` is not one of the ranked rewards.
        """
        delta = post.wealth(agent) - pre.wealth(agent)
        return self.rank(delta)

    def rank(self, delta):
        """Return the preference for a reward ``delta``.

        Raises:
            valign.exceptions.UnknownDeltaError: for unranked rewards.
        """
        try:
            return self.mapping[delta]
        except KeyError:
            raise exceptions.UnknownDeltaError(delta, self.levels) from None

    def by_joint_action(self, agent):
        """Return the preference of ``agent`` for every joint action.

        Since the reward only depends on the joint action, the gain preference
        of a transition is fully determined by it.

        Args:
            agent (valign.ipd.AgentId): Agent to evaluate.

        Returns:
            numpy.ndarray: Preferences, indexed by joint action index.
        """
        return np.array([self.rank(self.matrix.reward(agent, action))
                         for action in ipd.JOINT_ACTIONS])


DEFAULT_GAIN = GainPreference()


def prf_gain(agent, pre, post):
    """Preference of a transition with respect to personal gain.

    Uses the default payoff matrix, i.e. maps the reward ``agent`` received
    (0, 3, 6 or 9) to -1, -1/3, 1/3 or 1.

    Args:
        agent (valign.ipd.AgentId): Agent the preference is computed for.
        pre (valign.ipd.State): Pre-transition state.
        post (valign.ipd.State): Post-transition state.

    Returns:
        float: Preference in {-1, -1/3, 1/3, 1}.

    Raises:
        valign.exceptions.UnknownDeltaError: if the wealth increase is not
            one of the default rewards.
    """
    return DEFAULT_GAIN(agent, pre, post)


def preference_function(value, matrix=ipd.DEFAULT_MATRIX):
    """Return the scalar preference function for ``value``.

    Args:
        value (ValueId or str): The value.
        matrix (valign.ipd.PayoffMatrix): Matrix the gain preference is built
            for.

    Returns:
        callable: ``f(agent, pre, post) -> float``.
    """
    value = ValueId.from_name(value)
    if value is ValueId.EQUALITY:
        return prf_equality
    if matrix == ipd.DEFAULT_MATRIX:
        return prf_gain
    return GainPreference(matrix)


def equality_preferences(wealth_alpha, wealth_beta):
    """Vectorized :func:`prf_equality` over post-transition wealth arrays.

    Args:
        wealth_alpha (numpy.ndarray): Integer wealth of alpha.
        wealth_beta (numpy.ndarray): Integer wealth of beta, same shape.

    Returns:
        numpy.ndarray: Preferences, same shape as the inputs.
    """
    total = wealth_alpha + wealth_beta
    diff = np.abs(wealth_alpha - wealth_beta)
    safe_total = np.where(total == 0, 1, total)
    return np.where(total == 0, 1.0, (total - 2 * diff) / safe_total)


def path_preferences(path, agent, value, matrix=ipd.DEFAULT_MATRIX):
    """Evaluate a preference function on every transition of a path.

    Args:
        path (valign.lts.Path): Path of the game.
        agent (valign.ipd.AgentId): Agent to evaluate.
        value (ValueId or str): Value to evaluate.
        matrix (valign.ipd.PayoffMatrix): Matrix the path was played with.

    Returns:
        numpy.ndarray: One preference per transition.
    """
    function = preference_function(value, matrix)
    return np.array([function(agent, t.pre, t.post) for t in path])
