"""Two-agent iterated prisoner's dilemma world.

Two agents, alpha and beta, choose to cooperate or defect in every round.
The world state is the tuple of both agents' wealth, i.e. the rewards they
have accumulated since the start of the game. A joint action deterministically
moves the world to a new state by adding the payoff matrix entry of that joint
action to the wealth of each agent.

Wealth is always an exact integer. The default payoff matrix is:

===========  ==========  ==========
alpha\\beta   Cooperate   Defect
===========  ==========  ==========
Cooperate    (6, 6)      (0, 9)
Defect       (9, 0)      (3, 3)
===========  ==========  ==========
"""
import enum
from dataclasses import dataclass

import numpy as np

from . import lts


class Action(enum.IntEnum):
    """Individual action of a single agent."""

    COOPERATE = 0
    DEFECT = 1

    @property
    def code(self):
        """str: Single-letter code, ``'C'`` or ``'D'``."""
        return 'C' if self is Action.COOPERATE else 'D'


class AgentId(enum.IntEnum):
    """Identifier of one of the two agents."""

    ALPHA = 0
    BETA = 1

    @property
    def other(self):
        """AgentId: The opponent of this agent."""
        return AgentId(1 - self)

    def __str__(self):
        return self.name.lower()

    @classmethod
    def from_name(cls, name):
        """Look up an agent by its lower-case name (``alpha``/``beta``)."""
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError('Unknown agent "{}".'.format(name)) from None


@dataclass(frozen=True)
class JointAction:
    """Tuple of the actions of alpha and beta in one round."""

    alpha: Action
    beta: Action

    def __post_init__(self):
        object.__setattr__(self, 'alpha', Action(self.alpha))
        object.__setattr__(self, 'beta', Action(self.beta))

    def __str__(self):
        return self.alpha.code + self.beta.code

    @property
    def index(self):
        """int: Position in :data:`JOINT_ACTIONS` (``2 * alpha + beta``)."""
        return 2 * int(self.alpha) + int(self.beta)

    @classmethod
    def from_index(cls, index):
        """Create a joint action from its :attr:`index`."""
        return cls(Action(index // 2), Action(index % 2))

    @classmethod
    def from_code(cls, code):
        """Create a joint action from a code such as ``'CD'``."""
        letters = {'C': Action.COOPERATE, 'D': Action.DEFECT}
        if len(code) != 2 or any(c not in letters for c in code.upper()):
            raise ValueError('Invalid joint action code "{}".'.format(code))
        return cls(letters[code[0].upper()], letters[code[1].upper()])

    def action_of(self, agent):
        """Return the individual action of ``agent``."""
        return self.alpha if agent == AgentId.ALPHA else self.beta

    def perspective(self, agent):
        """Return ``(own action, opponent action)`` as seen by ``agent``."""
        agent = AgentId(agent)
        return self.action_of(agent), self.action_of(agent.other)

    def swapped(self):
        """Return the joint action with the roles of the agents exchanged."""
        return JointAction(self.beta, self.alpha)


JOINT_ACTIONS = tuple(JointAction.from_index(i) for i in range(4))

# Index of the swapped joint action, i.e. the joint action as seen by beta.
SWAPPED_INDEX = np.array([0, 2, 1, 3])


@dataclass(frozen=True)
class State:
    """World state, i.e. the accumulated wealth of both agents."""

    wealth_alpha: int = 0
    wealth_beta: int = 0

    def __post_init__(self):
        for wealth in (self.wealth_alpha, self.wealth_beta):
            if isinstance(wealth, bool) or int(wealth) != wealth:
                raise ValueError('Wealth must be an integer, got {!r}.'
                                 .format(wealth))
            if wealth < 0:
                raise ValueError('Wealth must not be negative, got {}.'
                                 .format(wealth))
        object.__setattr__(self, 'wealth_alpha', int(self.wealth_alpha))
        object.__setattr__(self, 'wealth_beta', int(self.wealth_beta))

    def __str__(self):
        return '({}, {})'.format(self.wealth_alpha, self.wealth_beta)

    @property
    def total(self):
        """int: Combined wealth of both agents."""
        return self.wealth_alpha + self.wealth_beta

    def swapped(self):
        """Return the state with the roles of the agents exchanged."""
        return State(self.wealth_beta, self.wealth_alpha)

    def wealth(self, agent):
        """Return the wealth of ``agent``."""
        if agent == AgentId.ALPHA:
            return self.wealth_alpha
        return self.wealth_beta


INITIAL_STATE = State(0, 0)

DEFAULT_REWARDS = {
    'CC': (6, 6),
    'CD': (0, 9),
    'DC': (9, 0),
    'DD': (3, 3),
}


class PayoffMatrix:
    """Outcome matrix of the stage game.

    Rewards must be non-negative integers, so that wealth never decreases.

    Attributes:
        rewards (dict): Mapping of :class:`JointAction` to the reward tuple
            ``(reward_alpha, reward_beta)``.
    """

    def __init__(self, rewards=None):
        """Initialize the payoff matrix.

        Args:
            rewards (dict): Mapping of joint actions (either
                :class:`JointAction` or codes like ``'CD'``) to reward pairs.
                Defaults to the classical matrix in :data:`DEFAULT_REWARDS`.
        """
        if rewards is None:
            rewards = DEFAULT_REWARDS
        parsed = {}
        for key, pair in rewards.items():
            if not isinstance(key, JointAction):
                key = JointAction.from_code(key)
            pair = tuple(pair)
            if len(pair) != 2:
                raise ValueError('Rewards for {} must be a pair, got {!r}.'
                                 .format(key, pair))
            for reward in pair:
                if (isinstance(reward, bool) or int(reward) != reward or
                        reward < 0):
                    raise ValueError('Rewards must be non-negative integers, '
                                     'got {!r} for {}.'.format(reward, key))
            parsed[key] = (int(pair[0]), int(pair[1]))
        if set(parsed) != set(JOINT_ACTIONS):
            raise ValueError('Rewards must be given for all four joint '
                             'actions.')
        self.rewards = {action: parsed[action] for action in JOINT_ACTIONS}

    def __eq__(self, other):
        if not isinstance(other, PayoffMatrix):
            return NotImplemented
        return self.rewards == other.rewards

    def __hash__(self):
        return hash(tuple(self.rewards.items()))

    def __repr__(self):
        return 'PayoffMatrix({})'.format(self.to_dict())

    def as_array(self):
        """Return the rewards as an integer array ``[a_alpha, a_beta, agent]``.

        Returns:
            numpy.ndarray: Array of shape ``(2, 2, 2)``.
        """
        array = np.zeros((2, 2, 2), dtype='int64')
        for action, pair in self.rewards.items():
            array[action.alpha, action.beta, :] = pair
        return array

    @property
    def is_default(self):
        """bool: ``True`` if this is the classical default matrix."""
        return self == PayoffMatrix()

    def payoff(self, action):
        """Return ``(reward_alpha, reward_beta)`` for ``action``."""
        return self.rewards[action]

    def reward(self, agent, action):
        """Return the reward of ``agent`` for ``action``."""
        return self.rewards[action][AgentId(agent)]

    def reward_levels(self, agent=None):
        """Return the sorted distinct rewards.

        Args:
            agent (AgentId): If given, only rewards of this agent are
                considered. Otherwise, rewards of both agents are pooled.

        Returns:
            tuple: Sorted distinct reward values.
        """
        agents = (AgentId.ALPHA, AgentId.BETA) if agent is None else (agent,)
        return tuple(sorted({pair[a] for pair in self.rewards.values()
                             for a in agents}))

    def is_symmetric(self):
        """Check ``r_beta(a, b) == r_alpha(b, a)`` for all joint actions."""
        return all(self.rewards[action][1] ==
                   self.rewards[action.swapped()][0]
                   for action in JOINT_ACTIONS)

    def to_dict(self):
        """Return the matrix as a dict with codes as keys.

        Returns:
            dict: e.g. ``{'CC': [6, 6], ...}``.
        """
        return {str(action): list(pair) for action, pair in
                self.rewards.items()}

    @classmethod
    def from_dict(cls, rewards):
        """Create a matrix from :meth:`to_dict` output."""
        return cls(rewards)


DEFAULT_MATRIX = PayoffMatrix()


def payoff(matrix, action):
    """Return the matrix entry ``(reward_alpha, reward_beta)`` for ``action``.

    Args:
        matrix (PayoffMatrix): The outcome matrix.
        action (JointAction): Joint action of both agents.

    Returns:
        tuple: ``(reward_alpha, reward_beta)``.
    """
    return matrix.payoff(action)


def step(matrix, state, action):
    """Apply one round of the game.

    Args:
        matrix (PayoffMatrix): The outcome matrix.
        state (State): Wealth before the round.
        action (JointAction): Joint action of both agents.

    Returns:
        State: Wealth after adding both agents' rewards.
    """
    reward_alpha, reward_beta = matrix.payoff(action)
    return State(state.wealth_alpha + reward_alpha,
                 state.wealth_beta + reward_beta)


def transition_system(matrix=DEFAULT_MATRIX):
    """Create the transition system of the game for ``matrix``.

    Args:
        matrix (PayoffMatrix): The outcome matrix.

    Returns:
        valign.lts.TransitionSystem: System starting at ``(0, 0)``.
    """
    return lts.TransitionSystem(
        initial_state=INITIAL_STATE, actions=JOINT_ACTIONS,
        step=lambda state, action: step(matrix, state, action))
