"""Labelled transition systems, norms and paths.

A normative world is described by a set of states, a finite set of (joint)
actions and a transition rule. In valign, the transition rule is always
deterministic: a state and an action fully determine the next state. All
randomness of a simulated world therefore lives in the strategies that choose
the actions (see :mod:`valign.strategies`).

Norms restrict the transitions that may be taken. Since the transition rule is
deterministic, a norm is modelled as a predicate over ``(state, action)``
pairs, and the normative transition set consists of all transitions whose
``(state, action)`` pair is allowed by every norm.

Paths are finite sequences of consecutive transitions. Every transition stores
both the pre- and the post-transition state, since preference functions (see
:mod:`valign.values`) may depend on both.
"""
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Tuple

from . import exceptions


@dataclass(frozen=True)
class Transition:
    """A single labelled transition ``pre --action--> post``."""

    pre: Any
    action: Hashable
    post: Any


@dataclass(frozen=True)
class TransitionSystem:
    """Deterministic labelled transition system.

    Attributes:
        initial_state: State every path starts from.
        actions (tuple): Finite set of joint actions.
        step (callable): Transition rule ``step(state, action) -> state``.
    """

    initial_state: Any
    actions: Tuple[Hashable, ...]
    step: Callable[[Any, Hashable], Any]

    def successor(self, state, action):
        """Apply the transition rule.

        Args:
            state: Pre-transition state.
            action: Joint action from :attr:`actions`.

        Returns:
            Post-transition state.

        Raises:
            ValueError: if ``action`` is not part of the system.
        """
        if action not in self.actions:
            raise ValueError('Action {} is not part of the transition '
                             'system.'.format(action))
        return self.step(state, action)


@dataclass(frozen=True)
class Norm:
    """Norm restricting the allowed transitions.

    A norm is a pure predicate over ``(state, action)`` pairs. Repeated
    evaluation for the same arguments must always give the same result.

    Attributes:
        name (str): Human-readable name, e.g. for log messages.
        predicate (callable): ``predicate(state, action) -> bool``.
    """

    name: str
    predicate: Callable[[Any, Hashable], bool]

    def allows(self, state, action):
        """Check whether the transition from ``state`` via ``action`` is
        allowed."""
        return bool(self.predicate(state, action))


def prohibit(*actions, name=None):
    """Create a norm that forbids the given actions in every state.

    Args:
        *actions: Joint actions to forbid.
        name (str): Optional norm name. Defaults to a description of the
            forbidden actions.

    Returns:
        Norm: The prohibition norm.
    """
    forbidden = frozenset(actions)
    if name is None:
        name = 'prohibit ' + ', '.join(sorted(str(a) for a in forbidden))
    return Norm(name=name, predicate=lambda state, action:
                action not in forbidden)


def apply_norms(system, norms, state, action):
    """Check whether a transition belongs to the normative transition set.

    Args:
        system (TransitionSystem): The unconstrained system.
        norms: Iterable of :class:`Norm`. An empty set of norms allows every
            transition.
        state: Pre-transition state.
        action: Joint action from ``system.actions``.

    Returns:
        bool: ``True`` if every norm allows ``(state, action)``.
    """
    if action not in system.actions:
        raise ValueError('Action {} is not part of the transition '
                         'system.'.format(action))
    return all(norm.allows(state, action) for norm in norms)


def allowed_actions(system, norms, state):
    """Return the actions that remain available in ``state`` under ``norms``.

    Args:
        system (TransitionSystem): The unconstrained system.
        norms: Iterable of :class:`Norm`.
        state: Current state.

    Returns:
        tuple: Allowed actions, in the order of ``system.actions``.
    """
    norms = tuple(norms)
    return tuple(action for action in system.actions
                 if apply_norms(system, norms, state, action))


@dataclass(frozen=True)
class Path:
    """Finite sequence of transitions.

    Paths must not be empty. Whether the transitions are actually
    consecutive is checked by :func:`validate_path`, since inconsistent paths
    are representable on purpose.

    Attributes:
        transitions (tuple): The :class:`Transition` objects, in order.
    """

    transitions: Tuple[Transition, ...]

    def __post_init__(self):
        if not self.transitions:
            raise ValueError('A path must contain at least one transition.')
        object.__setattr__(self, 'transitions', tuple(self.transitions))

    def __getitem__(self, index):
        return self.transitions[index]

    def __iter__(self):
        return iter(self.transitions)

    def __len__(self):
        return len(self.transitions)

    @property
    def actions(self):
        """tuple: The joint actions along the path."""
        return tuple(t.action for t in self.transitions)

    @property
    def final_state(self):
        """Post-transition state of the last transition."""
        return self.transitions[-1].post

    @property
    def initial_state(self):
        """Pre-transition state of the first transition."""
        return self.transitions[0].pre

    @property
    def length(self):
        """int: Number of transitions."""
        return len(self.transitions)


def validate_path(path):
    """Check that all transitions of ``path`` are consecutive.

    Args:
        path (Path): Path to check.

    Returns:
        bool: ``True`` if the post-state of every transition equals the
        pre-state of the following one.
    """
    return all(current.post == following.pre for current, following in
               zip(path.transitions, path.transitions[1:]))


def run_actions(system, actions: Iterable, norms=()):
    """Build the path that results from taking ``actions`` in order.

    The path starts at ``system.initial_state``.

    Args:
        system (TransitionSystem): System to run.
        actions: Sequence of joint actions (at least one).
        norms: Iterable of :class:`Norm` that every step must satisfy.

    Returns:
        Path: The resulting path.

    Raises:
        valign.exceptions.NormViolationError: if a step is forbidden.
    """
    norms = tuple(norms)
    state = system.initial_state
    transitions = []
    for action in actions:
        if not apply_norms(system, norms, state, action):
            raise exceptions.NormViolationError(state, action)
        post = system.successor(state, action)
        transitions.append(Transition(state, action, post))
        state = post
    return Path(tuple(transitions))
