"""Alignment equilibria and Pareto optimal alignments.

A strategy profile is an alignment equilibrium if no agent can increase its
own alignment, with respect to the value it prioritizes, by unilaterally
switching to another strategy of the strategy space. A profile is Pareto
optimal if no other profile of the space increases the alignment of one agent
without decreasing the alignment of the other.

Both concepts are evaluated on a finite :class:`StrategySpace` using an
:class:`AlignmentTable` that holds the alignment of every profile of the
space for both agents, each under its own value.

Two search methods are available:

``nash``
    Literal check of the equilibrium condition for every profile of the
    space.
``dominance``
    Iterated removal of weakly dominated strategies, followed by the
    equilibrium check on the surviving space. Strategies of the full space
    that reach the same alignment as a surviving equilibrium strategy against
    the same opponent are reported as alternatives. This reproduces the
    analysis of strategy spaces with few named strategies, where several
    strategies behave identically against deterministic opponents.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import asciitree

from . import alignment
from . import exceptions
from . import ipd
from . import strategies
from . import values

logger = logging.getLogger(__name__)

draw_tree = asciitree.LeftAligned(
    draw=asciitree.BoxStyle(gfx=asciitree.drawing.BOX_LIGHT, horiz_len=1)
)

# Absolute slack for comparisons of alignments, which are means of a few
# floating point numbers.
FLOAT_SLACK = 1e-12
# Multiple of the combined standard error used as automatic tolerance.
AUTO_TOLERANCE_FACTOR = 4.0

METHODS = ('auto', 'nash', 'dominance')


@dataclass(frozen=True)
class ValueAssignment:
    """Value prioritized by each agent.

    Attributes:
        value_alpha (valign.values.ValueId): Value of alpha.
        value_beta (valign.values.ValueId): Value of beta.
    """

    value_alpha: values.ValueId
    value_beta: values.ValueId

    def __post_init__(self):
        object.__setattr__(self, 'value_alpha',
                           values.ValueId.from_name(self.value_alpha))
        object.__setattr__(self, 'value_beta',
                           values.ValueId.from_name(self.value_beta))

    def __str__(self):
        return 'alpha: {}, beta: {}'.format(self.value_alpha, self.value_beta)

    def value_for(self, agent):
        """Return the value prioritized by ``agent``."""
        if agent == ipd.AgentId.ALPHA:
            return self.value_alpha
        return self.value_beta

    @property
    def targets(self):
        """tuple: ``(agent, value)`` for both agents."""
        return tuple((agent, self.value_for(agent)) for agent in ipd.AgentId)


@dataclass(frozen=True)
class StrategySpace:
    """Finite set of strategy profiles.

    Attributes:
        alpha_options (tuple): Strategies available to alpha.
        beta_options (tuple): Strategies available to beta.
        kind (str): ``'random'`` for random-action grids, ``'heterogeneous'``
            for named alpha strategies against random-action betas.
    """

    alpha_options: Tuple[strategies.MemoryOneStrategy, ...]
    beta_options: Tuple[strategies.MemoryOneStrategy, ...]
    kind: str = 'random'

    def __post_init__(self):
        object.__setattr__(self, 'alpha_options', tuple(self.alpha_options))
        object.__setattr__(self, 'beta_options', tuple(self.beta_options))
        if not self.alpha_options or not self.beta_options:
            raise ValueError('Both agents need at least one strategy option.')
        if self.kind not in ('random', 'heterogeneous'):
            raise ValueError('Unknown strategy space kind "{}".'
                             .format(self.kind))

    @classmethod
    def random_grid(cls, grid):
        """Create the space of random-action strategies on ``grid``."""
        options = tuple(strategies.random_action(p) for p in grid)
        return cls(options, options, 'random')

    @classmethod
    def heterogeneous(cls, beta_grid,
                      alpha_strategies=strategies.NAMED_STRATEGIES):
        """Create the space of named alpha strategies vs. random betas."""
        return cls(tuple(strategies.strategy_from_name(name)
                         for name in alpha_strategies),
                   tuple(strategies.random_action(p) for p in beta_grid),
                   'heterogeneous')

    def options(self, agent):
        """Return the strategy options of ``agent``."""
        if agent == ipd.AgentId.ALPHA:
            return self.alpha_options
        return self.beta_options

    def profiles(self):
        """Return all profiles, ordered by alpha option, then beta option."""
        return [strategies.StrategyProfile(alpha, beta) for alpha, beta in
                itertools.product(self.alpha_options, self.beta_options)]

    def deviations(self, profile, agent):
        """Return all profiles where only ``agent`` switched its strategy."""
        current = profile.strategy(agent)
        return [profile.replace(agent, option)
                for option in self.options(agent) if option != current]

    def restrict(self, alpha_options, beta_options):
        """Return the subspace with the given options."""
        return StrategySpace(alpha_options, beta_options, self.kind)

    def __contains__(self, profile):
        return (profile.alpha in self.alpha_options and
                profile.beta in self.beta_options)

    def __len__(self):
        return len(self.alpha_options) * len(self.beta_options)


class AlignmentTable:
    """Alignment of every profile for both agents, each under its value.

    Attributes:
        assignment (ValueAssignment): Values the alignments were computed for.
        entries (dict): Mapping of profile to ``{agent: AlignmentEstimate}``.
    """

    def __init__(self, assignment, entries=None):
        self.assignment = assignment
        self.entries = {} if entries is None else dict(entries)

    def __contains__(self, profile):
        return profile in self.entries

    def __len__(self):
        return len(self.entries)

    def add(self, profile, estimates):
        """Store the estimates ``{agent: AlignmentEstimate}`` of a profile."""
        self.entries[profile] = {ipd.AgentId(agent): estimate
                                 for agent, estimate in estimates.items()}

    def get(self, profile, agent):
        """Return the estimate of ``agent`` for ``profile``.

        Raises:
            valign.exceptions.MissingTableEntryError: if it is missing.
        """
        try:
            return self.entries[profile][ipd.AgentId(agent)]
        except KeyError:
            raise exceptions.MissingTableEntryError(profile, agent) from None

    def alignment(self, profile, agent):
        """Return the mean alignment of ``agent`` for ``profile``."""
        return self.get(profile, agent).mean

    @classmethod
    def compute(cls, space, assignment, **kwargs):
        """Compute the table for every profile of ``space``.

        Args:
            space (StrategySpace): The strategy space.
            assignment (ValueAssignment): Value of each agent.
            **kwargs: ``path_length``, ``num_paths``, ``seed``, ``exact``,
                ``matrix`` and ``workers``, see
                :func:`valign.alignment.evaluate_profiles`.

        Returns:
            AlignmentTable: The complete table.
        """
        profiles = space.profiles()
        results = alignment.evaluate_profiles(profiles, assignment.targets,
                                              **kwargs)
        table = cls(assignment)
        for profile, result in zip(profiles, results):
            table.add(profile, {agent: result[(agent, value)]
                                for agent, value in assignment.targets})
        return table


def pair_tolerance(first, second, tol=None):
    """Return the tolerance for comparing two estimates.

    Args:
        first (valign.alignment.AlignmentEstimate): First estimate.
        second (valign.alignment.AlignmentEstimate): Second estimate.
        tol (float): Fixed tolerance. ``None`` selects 0 for exact estimates
            and four combined standard errors otherwise.

    Returns:
        float: Tolerance, including a small floating point slack.
    """
    if tol is None:
        tol = AUTO_TOLERANCE_FACTOR * alignment.combined_std_error(first,
                                                                   second)
    return tol + FLOAT_SLACK


def _check_assignment(table, assign):
    if table.assignment != assign:
        raise ValueError('The alignment table was computed for {}, not {}.'
                         .format(table.assignment, assign))


def _improves(table, profile, alternative, agent, tol):
    current = table.get(profile, agent)
    other = table.get(alternative, agent)
    return other.mean - current.mean > pair_tolerance(current, other, tol)


def is_alignment_equilibrium(space, profile, assign, table, tol=None):
    """Check the alignment equilibrium condition for a profile.

    Args:
        space (StrategySpace): Space whose options are possible deviations.
        profile (valign.strategies.StrategyProfile): Profile to check.
        assign (ValueAssignment): Value of each agent.
        table (AlignmentTable): Alignments of the profile and all of its
            unilateral deviations.
        tol (float): Tolerance, see :func:`pair_tolerance`.

    Returns:
        bool: ``True`` if no agent improves by deviating unilaterally.

    Raises:
        valign.exceptions.MissingTableEntryError: if the table lacks a
            required profile.
    """
    _check_assignment(table, assign)
    for agent in ipd.AgentId:
        for deviation in space.deviations(profile, agent):
            if _improves(table, profile, deviation, agent, tol):
                logger.debug('%s is no equilibrium, %s improves by switching '
                             'to %s.', profile, agent,
                             deviation.strategy(agent))
                return False
    return True


def dominates(table, first, second, tol=None):
    """Check whether profile ``first`` Pareto-dominates ``second``.

    Domination requires that some agent is strictly better off (by more than
    the tolerance) and no agent is worse off (by more than the tolerance).
    """
    strictly_better = False
    for agent in ipd.AgentId:
        mine = table.get(second, agent)
        theirs = table.get(first, agent)
        tolerance = pair_tolerance(mine, theirs, tol)
        difference = theirs.mean - mine.mean
        if difference < -tolerance:
            return False
        if difference > tolerance:
            strictly_better = True
    return strictly_better


def find_pareto(space, assign, table, tol=None):
    """Find the Pareto optimal profiles of a space.

    Args:
        space (StrategySpace): The strategy space.
        assign (ValueAssignment): Value of each agent.
        table (AlignmentTable): Alignments of all profiles of the space.
        tol (float): Tolerance, see :func:`pair_tolerance`.

    Returns:
        list: Non-dominated profiles, in the order of
        :meth:`StrategySpace.profiles`.

    Raises:
        valign.exceptions.MissingTableEntryError: for incomplete tables.
    """
    _check_assignment(table, assign)
    profiles = space.profiles()
    return [profile for profile in profiles
            if not any(dominates(table, other, profile, tol)
                       for other in profiles if other != profile)]


def _weakly_dominated(table, agent, option, alternative, opponents, tol):
    strictly_better = False
    for opponent_option in opponents:
        if agent == ipd.AgentId.ALPHA:
            mine = strategies.StrategyProfile(option, opponent_option)
            theirs = strategies.StrategyProfile(alternative, opponent_option)
        else:
            mine = strategies.StrategyProfile(opponent_option, option)
            theirs = strategies.StrategyProfile(opponent_option, alternative)
        current = table.get(mine, agent)
        other = table.get(theirs, agent)
        tolerance = pair_tolerance(current, other, tol)
        difference = other.mean - current.mean
        if difference < -tolerance:
            return False
        if difference > tolerance:
            strictly_better = True
    return strictly_better


def eliminate_dominated(space, table, tol=None):
    """Iteratively remove weakly dominated strategies.

    In every round, all options that are weakly dominated by another
    remaining option of the same agent are removed at once, for both agents.
    The procedure stops when no option is dominated anymore. If every
    remaining option of an agent is dominated, which a tolerance can cause
    through dominance cycles, that agent keeps its options.

    Args:
        space (StrategySpace): The strategy space.
        table (AlignmentTable): Alignments of all profiles of the space.
        tol (float): Tolerance, see :func:`pair_tolerance`.

    Returns:
        StrategySpace: The reduced space.
    """
    remaining = {agent: list(space.options(agent)) for agent in ipd.AgentId}
    rounds = 0
    while True:
        removed = {}
        for agent in ipd.AgentId:
            opponents = remaining[agent.other]
            removed[agent] = [
                option for option in remaining[agent]
                if any(_weakly_dominated(table, agent, option, alternative,
                                         opponents, tol)
                       for alternative in remaining[agent]
                       if alternative != option)]
        changed = False
        for agent in ipd.AgentId:
            survivors = [option for option in remaining[agent]
                         if option not in removed[agent]]
            # A dominance cycle can remove every option; keep them then.
            if survivors and len(survivors) < len(remaining[agent]):
                remaining[agent] = survivors
                changed = True
        if not changed:
            break
        rounds += 1
    logger.info('Dominance elimination finished after %d round(s) with '
                '%d x %d options.', rounds, len(remaining[ipd.AgentId.ALPHA]),
                len(remaining[ipd.AgentId.BETA]))
    return space.restrict(remaining[ipd.AgentId.ALPHA],
                          remaining[ipd.AgentId.BETA])


def _alternatives(space, table, equilibria, tol):
    found = []
    for profile in equilibria:
        for agent in ipd.AgentId:
            best = table.get(profile, agent)
            for deviation in space.deviations(profile, agent):
                other = table.get(deviation, agent)
                if (abs(other.mean - best.mean) <=
                        pair_tolerance(best, other, tol) and
                        deviation not in equilibria and
                        deviation not in found):
                    found.append(deviation)
    return found


@dataclass
class EquilibriumReport:
    """Result of an equilibrium search.

    Attributes:
        space (StrategySpace): The searched space.
        assignment (ValueAssignment): Value of each agent.
        equilibria (list): Equilibrium profiles found by :attr:`method`.
        pareto_optimal (list): Pareto optimal profiles of the whole space.
        strict_equilibria (list): Profiles satisfying the equilibrium
            condition against all deviations of the whole space.
        alternatives (list): Profiles added by the dominance method as
            alternative best responses.
        equivalences (list): Pairs of equilibria that are behaviorally
            equivalent, see :func:`valign.strategies.behaviorally_equivalent`.
        tolerance (float): Fixed tolerance, ``None`` for automatic.
        table (AlignmentTable): Alignments of all profiles.
        method (str): ``'nash'`` or ``'dominance'``.
    """

    space: StrategySpace
    assignment: ValueAssignment
    equilibria: list
    pareto_optimal: list
    strict_equilibria: list
    alternatives: list
    equivalences: list
    tolerance: Optional[float]
    table: AlignmentTable = field(repr=False)
    method: str = 'nash'

    def is_pareto_optimal(self, profile):
        """Check whether ``profile`` is Pareto optimal within the space."""
        return profile in self.pareto_optimal

    def node_tree(self):
        """Return a ``{label: subtree}`` representation of the report."""
        def entries(profiles):
            return {'{} [{}]'.format(profile_name(p), ', '.join(
                '{:.6f}'.format(self.table.alignment(p, agent))
                for agent in ipd.AgentId)): {} for p in profiles}
        return {'Equilibria ({}; {})'.format(self.assignment, self.method): {
            'equilibria': entries(self.equilibria),
            'pareto optimal equilibria': entries(
                p for p in self.equilibria if self.is_pareto_optimal(p)),
            'strict equilibria': entries(self.strict_equilibria),
            'alternatives': entries(self.alternatives),
            'behavioral equivalences': {
                '{} ~ {}'.format(profile_name(a), profile_name(b)): {}
                for a, b in self.equivalences},
        }}

    def __str__(self):
        return draw_tree(self.node_tree())

    def to_dict(self):
        """Return a JSON-serializable representation of the report."""
        def names(profiles):
            return [profile_name(p) for p in profiles]
        return {
            'space': self.space.kind,
            'value_alpha': str(self.assignment.value_alpha),
            'value_beta': str(self.assignment.value_beta),
            'method': self.method,
            'tolerance': self.tolerance,
            'equilibria': [{
                'profile': profile_name(p),
                'alpha': str(p.alpha),
                'beta': str(p.beta),
                'pareto_optimal': self.is_pareto_optimal(p),
                'alignment_alpha': self.table.alignment(p, ipd.AgentId.ALPHA),
                'alignment_beta': self.table.alignment(p, ipd.AgentId.BETA),
            } for p in self.equilibria],
            'pareto_optimal': names(self.pareto_optimal),
            'strict_equilibria': names(self.strict_equilibria),
            'alternatives': names(self.alternatives),
            'equivalences': [[profile_name(a), profile_name(b)]
                             for a, b in self.equivalences],
            'table': [{
                'profile': profile_name(p),
                'alignment_alpha': self.table.alignment(p, ipd.AgentId.ALPHA),
                'alignment_beta': self.table.alignment(p, ipd.AgentId.BETA),
                'std_error_alpha': self.table.get(p, ipd.AgentId.ALPHA)
                .std_error,
                'std_error_beta': self.table.get(p, ipd.AgentId.BETA)
                .std_error,
            } for p in self.space.profiles()],
        }


def profile_name(profile):
    """Return the canonical name ``'<alpha>|<beta>'`` of a profile."""
    return '{}|{}'.format(profile.alpha, profile.beta)


def resolve_method(method, space):
    """Resolve ``auto`` to the method matching the kind of ``space``."""
    if method not in METHODS:
        raise ValueError('Unknown method "{}". Expected one of: {}.'.format(
            method, ', '.join(METHODS)))
    if method == 'auto':
        return 'dominance' if space.kind == 'heterogeneous' else 'nash'
    return method


def find_alignment_equilibria(space, assign, tol=None, method='auto',
                              table=None, **kwargs):
    """Search the alignment equilibria of a strategy space.

    Args:
        space (StrategySpace): The strategy space.
        assign (ValueAssignment): Value of each agent.
        tol (float): Tolerance, see :func:`pair_tolerance`.
        method (str): ``'nash'``, ``'dominance'`` or ``'auto'``, which uses
            dominance for heterogeneous spaces and nash otherwise.
        table (AlignmentTable): Precomputed table. Computed if omitted.
        **kwargs: Computation parameters for :meth:`AlignmentTable.compute`.

    Returns:
        EquilibriumReport: Equilibria, Pareto optimal profiles and the full
        alignment table.
    """
    method = resolve_method(method, space)
    if table is None:
        table = AlignmentTable.compute(space, assign, **kwargs)
    strict = [profile for profile in space.profiles()
              if is_alignment_equilibrium(space, profile, assign, table, tol)]
    alternatives = []
    if method == 'dominance':
        reduced = eliminate_dominated(space, table, tol)
        equilibria = [profile for profile in reduced.profiles()
                      if is_alignment_equilibrium(reduced, profile, assign,
                                                  table, tol)]
        alternatives = _alternatives(space, table, equilibria, tol)
        equilibria = [profile for profile in space.profiles()
                      if profile in equilibria or profile in alternatives]
    else:
        equilibria = strict
    pareto = find_pareto(space, assign, table, tol)
    equivalences = [
        (first, second)
        for first, second in itertools.combinations(equilibria, 2)
        if strategies.behaviorally_equivalent(first, second)]
    logger.info('Found %d equilibria (%s) for %s.', len(equilibria), method,
                assign)
    return EquilibriumReport(
        space=space, assignment=assign, equilibria=equilibria,
        pareto_optimal=pareto, strict_equilibria=strict,
        alternatives=alternatives, equivalences=equivalences, tolerance=tol,
        table=table, method=method)


def classical_nash_check(matrix=ipd.DEFAULT_MATRIX):
    """Find the pure Nash equilibria of the single-round stage game.

    A joint action is an equilibrium if no agent obtains a strictly higher
    reward by unilaterally switching its action.

    Args:
        matrix (valign.ipd.PayoffMatrix): Outcome matrix.

    Returns:
        list: Equilibrium joint actions, ordered by index.
    """
    equilibria = []
    for action in ipd.JOINT_ACTIONS:
        stable = True
        for agent in ipd.AgentId:
            own = action.action_of(agent)
            other = ipd.Action(1 - own)
            if agent == ipd.AgentId.ALPHA:
                deviation = ipd.JointAction(other, action.beta)
            else:
                deviation = ipd.JointAction(action.alpha, other)
            if matrix.reward(agent, deviation) > matrix.reward(agent, action):
                stable = False
        if stable:
            equilibria.append(action)
    return equilibria


def classical_pareto_outcomes(matrix=ipd.DEFAULT_MATRIX):
    """Find the Pareto optimal joint actions of the stage game.

    Args:
        matrix (valign.ipd.PayoffMatrix): Outcome matrix.

    Returns:
        list: Joint actions not dominated by another joint action.
    """
    def dominated(action):
        mine = matrix.payoff(action)
        return any(all(t >= m for t, m in zip(matrix.payoff(other), mine)) and
                   matrix.payoff(other) != mine
                   for other in ipd.JOINT_ACTIONS)
    return [action for action in ipd.JOINT_ACTIONS if not dominated(action)]
