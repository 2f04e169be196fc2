"""Command-line interface of valign.

Runs a single experiment and writes its results file plus the run manifest.
Available modes:

``align``
    Alignment of a single profile (``--strategy-alpha``/``--strategy-beta``).
``sweep-random``
    Alignments of all random-action profiles on the grid.
``sweep-heterogeneous``
    Alignments of alpha's named strategies against random-action betas.
``equilibria``
    Alignment equilibria and Pareto optimal profiles of a strategy space.
``nash-check``
    Nash equilibria and Pareto optimal outcomes of the single-round game.

Exit codes are 0 on success, 1 for invalid configurations and 2 for I/O
errors.
"""
import argparse
import logging
import sys

from . import __version__
from . import alignment
from . import config
from . import equilibria
from . import exceptions
from . import frontend
from . import ipd
from . import schema
from . import strategies
from . import values

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2

_AGENTS = schema.String(choices=[str(agent) for agent in ipd.AgentId])
_VALUES = schema.String(choices=[value.value for value in values.ValueId])
_ESTIMATE_FIELDS = {
    'agent': _AGENTS,
    'value': _VALUES,
    'mean': schema.Number(),
    'std_error': schema.Number(min_value=0),
    'n_paths': schema.Number('int', min_value=0),
    'path_length': schema.Number('int', min_value=1),
}

RECORD_SCHEMAS = {
    'align': schema.Compilation(dict(
        strategy_alpha=schema.String(), strategy_beta=schema.String(),
        exact=schema.Bool(), **_ESTIMATE_FIELDS)),
    'sweep-random': schema.Compilation(dict(
        p_alpha=schema.Number(min_value=0, max_value=1),
        p_beta=schema.Number(min_value=0, max_value=1), **_ESTIMATE_FIELDS)),
    'sweep-heterogeneous': schema.Compilation(dict(
        strategy_alpha=schema.String(
            choices=strategies.NAMED_STRATEGIES),
        p_beta=schema.Number(min_value=0, max_value=1), **_ESTIMATE_FIELDS)),
    'equilibria': schema.Compilation({
        'profile': schema.String(),
        'alpha': schema.String(),
        'beta': schema.String(),
        'alignment_alpha': schema.Number(),
        'alignment_beta': schema.Number(),
        'std_error_alpha': schema.Number(min_value=0),
        'std_error_beta': schema.Number(min_value=0),
        'equilibrium': schema.Bool(),
        'pareto_optimal': schema.Bool(),
    }),
    'nash-check': schema.Compilation({
        'action': schema.String(choices=[str(a) for a in ipd.JOINT_ACTIONS]),
        'reward_alpha': schema.Number('int', min_value=0),
        'reward_beta': schema.Number('int', min_value=0),
        'nash': schema.Bool(),
        'pareto_optimal': schema.Bool(),
    }),
}

DEFAULT_EXTENSIONS = {
    'align': '.csv',
    'sweep-random': '.csv',
    'sweep-heterogeneous': '.csv',
    'equilibria': '.json',
    'nash-check': '.json',
}


class _ArgumentParser(argparse.ArgumentParser):
    """Argument parser reporting usage errors as invalid configuration."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, '{}: error: {}\n'.format(self.prog, message))


def build_parser():
    """Create the argument parser.

    Flags left out on the command line are ``None`` and do not override the
    configuration file.

    Returns:
        argparse.ArgumentParser: The parser.
    """
    parser = _ArgumentParser(
        prog='valign',
        description='Compute value alignment, alignment equilibria and '
                    'Pareto optimal alignments in the two-agent iterated '
                    "prisoner's dilemma.")
    parser.add_argument('--mode', choices=config.MODES)
    parser.add_argument('--config', metavar='FILE',
                        help='JSON configuration file')
    parser.add_argument('--grid-points', type=int, metavar='N',
                        help='number of cooperation probabilities in [0, 1]')
    parser.add_argument('--length', type=int, dest='path_length',
                        metavar='L', help='number of transitions per path')
    parser.add_argument('--paths', type=int, dest='num_paths', metavar='X',
                        help='number of sampled paths')
    parser.add_argument('--seed', type=int, dest='master_seed', metavar='S',
                        help='master seed of all random number streams')
    parser.add_argument('--value-alpha',
                        choices=[v.value for v in values.ValueId])
    parser.add_argument('--value-beta',
                        choices=[v.value for v in values.ValueId])
    parser.add_argument('--space', choices=config.SPACES)
    parser.add_argument('--exact', action='store_const', const=True,
                        dest='use_exact',
                        help='enumerate all paths instead of sampling')
    parser.add_argument('--tolerance', type=float, metavar='T',
                        help='fixed equilibrium tolerance')
    parser.add_argument('--method', choices=config.METHODS)
    parser.add_argument('--strategy-alpha', metavar='NAME')
    parser.add_argument('--strategy-beta', metavar='NAME')
    parser.add_argument('--workers', type=int, metavar='N',
                        help='number of worker processes')
    parser.add_argument('--out', dest='output_path', metavar='PATH',
                        help='results file (.csv or .json)')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='increase log output (repeatable)')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    return parser


def configure_logging(level):
    """Configure the root logger for command-line use."""
    logging.basicConfig(
        level=level, stream=sys.stderr, force=True,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s')


def _verbosity_level(verbose, default):
    if verbose >= 2:
        return logging.DEBUG
    if verbose == 1:
        return logging.INFO
    return default


def output_path(cfg):
    """Return the results path for ``cfg``, using a default if unset."""
    if cfg.output_path:
        return cfg.output_path
    return cfg.mode + DEFAULT_EXTENSIONS[cfg.mode]


def _computation(cfg):
    return dict(path_length=cfg.path_length, num_paths=cfg.num_paths,
                seed=cfg.master_seed, exact=cfg.use_exact,
                matrix=cfg.payoff_matrix, workers=cfg.workers)


def run_align(cfg):
    """Compute the alignment of a single profile for both agents."""
    profile = strategies.StrategyProfile(
        strategies.strategy_from_name(cfg.strategy_alpha),
        strategies.strategy_from_name(cfg.strategy_beta))
    assignment = equilibria.ValueAssignment(cfg.value_alpha, cfg.value_beta)
    result, = alignment.evaluate_profiles([profile], assignment.targets,
                                          **_computation(cfg))
    records = []
    for agent, value in assignment.targets:
        estimate = result[(agent, value)]
        records.append({
            'strategy_alpha': str(profile.alpha),
            'strategy_beta': str(profile.beta),
            'agent': str(agent),
            'value': str(value),
            'mean': estimate.mean,
            'std_error': estimate.std_error,
            'n_paths': estimate.num_paths,
            'path_length': estimate.path_length,
            'exact': estimate.exact,
        })
        print('{} ({}): {:.6f} +- {:.6f}'.format(agent, value, estimate.mean,
                                                 estimate.std_error))
    return records, {'records': records}


def run_sweep(cfg):
    """Compute a sweep, each agent under its own value."""
    if cfg.mode == 'sweep-random':
        def sweep(agents, value):
            return alignment.sweep_random_grid(cfg.grid, agents, value,
                                               **_computation(cfg))
    else:
        def sweep(agents, value):
            return alignment.sweep_heterogeneous(
                cfg.alpha_strategies, cfg.grid, agents, value,
                **_computation(cfg))
    if cfg.value_alpha == cfg.value_beta:
        results = [sweep(tuple(ipd.AgentId), cfg.value_alpha)]
    else:
        results = [sweep(ipd.AgentId.ALPHA, cfg.value_alpha),
                   sweep(ipd.AgentId.BETA, cfg.value_beta)]
    records = [record for result in results for record in result.records()]
    print('Computed {} cells.'.format(len(records)))
    return records, {'records': records}


def run_equilibria(cfg):
    """Search the alignment equilibria of the configured space."""
    if cfg.space == 'heterogeneous':
        space = equilibria.StrategySpace.heterogeneous(cfg.grid,
                                                       cfg.alpha_strategies)
    else:
        space = equilibria.StrategySpace.random_grid(cfg.grid)
    assignment = equilibria.ValueAssignment(cfg.value_alpha, cfg.value_beta)
    report = equilibria.find_alignment_equilibria(
        space, assignment, tol=cfg.tolerance, method=cfg.method,
        **_computation(cfg))
    print(report)
    document = report.to_dict()
    records = []
    for entry in document['table']:
        profile = entry['profile']
        alpha, beta = profile.split('|')
        records.append(dict(
            profile=profile, alpha=alpha, beta=beta,
            alignment_alpha=entry['alignment_alpha'],
            alignment_beta=entry['alignment_beta'],
            std_error_alpha=entry['std_error_alpha'],
            std_error_beta=entry['std_error_beta'],
            equilibrium=profile in [e['profile']
                                    for e in document['equilibria']],
            pareto_optimal=profile in document['pareto_optimal']))
    return records, document


def run_nash_check(cfg):
    """Find the Nash equilibria and Pareto outcomes of the stage game."""
    matrix = cfg.payoff_matrix
    nash = equilibria.classical_nash_check(matrix)
    pareto = equilibria.classical_pareto_outcomes(matrix)
    records = [{
        'action': str(action),
        'reward_alpha': matrix.reward(ipd.AgentId.ALPHA, action),
        'reward_beta': matrix.reward(ipd.AgentId.BETA, action),
        'nash': action in nash,
        'pareto_optimal': action in pareto,
    } for action in ipd.JOINT_ACTIONS]
    document = {
        'payoff_matrix': matrix.to_dict(),
        'nash_equilibria': [str(action) for action in nash],
        'pareto_outcomes': [str(action) for action in pareto],
        'nash_pareto_dominated': [str(action) for action in nash
                                  if action not in pareto],
    }
    print('Nash equilibria: {}'.format(
        ', '.join(document['nash_equilibria']) or '-'))
    print('Pareto optimal outcomes: {}'.format(
        ', '.join(document['pareto_outcomes']) or '-'))
    return records, document


_RUNNERS = {
    'align': run_align,
    'sweep-random': run_sweep,
    'sweep-heterogeneous': run_sweep,
    'equilibria': run_equilibria,
    'nash-check': run_nash_check,
}


def run(cfg):
    """Run the experiment described by ``cfg`` and write its results.

    Tabular results are written if the output path is a CSV file, the
    structured document otherwise.

    Args:
        cfg (valign.config.ExperimentConfig): Validated configuration.

    Returns:
        The saved result storage.

    Raises:
        valign.exceptions.AutodetectBackendError: for unsupported output
            file extensions.
        OSError: if the results cannot be written.
    """
    path = output_path(cfg)
    # Fail on unsupported extensions before any computation.
    backend = frontend.autodetect_backend(path)
    logger.info('Running %s (manifest %s).', cfg.mode, cfg.manifest_hash())
    records, document = _RUNNERS[cfg.mode](cfg)
    if backend == 'csv':
        data, schema_node = records, schema.List(RECORD_SCHEMAS[cfg.mode])
    else:
        data, schema_node = document, None
    storage = frontend.create(path, cfg.manifest(), backend=backend,
                              overwrite=True, schema_node=schema_node)
    storage.data = data
    storage.save()
    print('Results written to {}.'.format(path))
    return storage


def main(argv=None):
    """Entry point of the ``valign`` command.

    Args:
        argv (list): Command-line arguments, defaults to ``sys.argv[1:]``.

    Returns:
        int: Exit code.
    """
    args = build_parser().parse_args(argv)
    configure_logging(_verbosity_level(args.verbose, logging.WARNING))
    flags = {key: value for key, value in vars(args).items()
             if key not in ('config', 'verbose')}
    try:
        cfg = config.load_config(args.config, **flags)
    except exceptions.ValignError as err:
        print('valign: error: {}'.format(err), file=sys.stderr)
        return EXIT_INVALID
    except OSError as err:
        print('valign: error: {}'.format(err), file=sys.stderr)
        return EXIT_IO
    configure_logging(_verbosity_level(args.verbose,
                                       getattr(logging, cfg.log_level)))
    try:
        run(cfg)
    except exceptions.ValignError as err:
        print('valign: error: {}'.format(err), file=sys.stderr)
        return EXIT_INVALID
    except OSError as err:
        print('valign: error: {}'.format(err), file=sys.stderr)
        return EXIT_IO
    return EXIT_OK
