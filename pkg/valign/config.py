"""Experiment configuration.

An experiment is fully described by an :class:`ExperimentConfig`. Values are
taken from three sources, each overriding the previous one:

1. the defaults of :class:`ExperimentConfig`,
2. an optional JSON configuration file, whose keys mirror the field names,
3. explicitly given flags (e.g. from the command line).

Example configuration file::

    {
        "mode": "equilibria",
        "space": "heterogeneous",
        "value_alpha": "equality",
        "value_beta": "gain",
        "grid_points": 11,
        "path_length": 10,
        "num_paths": 10000,
        "payoff_matrix": {"CC": [6, 6], "CD": [0, 9],
                          "DC": [9, 0], "DD": [3, 3]}
    }

Every configuration is validated against :data:`CONFIG_SCHEMA`, so errors
name the offending key.

The reproducibility manifest of a configuration holds every field that
influences results, plus the package version. Fields that only influence how
or where results are produced (number of workers, output path and log level)
are not part of it.
"""
import dataclasses
import hashlib
import json
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

from . import exceptions
from . import ipd
from . import schema
from . import strategies
from . import values

logger = logging.getLogger(__name__)

MODES = ('align', 'sweep-random', 'sweep-heterogeneous', 'equilibria',
         'nash-check')
SPACES = ('random', 'heterogeneous')
METHODS = ('auto', 'nash', 'dominance')
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')
DEFAULT_GRID_POINTS = 11

_REWARD_PAIR = schema.List(schema.Number('int', min_value=0),
                           min_length=2, max_length=2)
_VALUE = schema.String(choices=[v.value for v in values.ValueId])

CONFIG_SCHEMA = schema.Compilation({
    'mode': schema.String(choices=MODES),
    'payoff_matrix': schema.Compilation({
        'CC': _REWARD_PAIR, 'CD': _REWARD_PAIR,
        'DC': _REWARD_PAIR, 'DD': _REWARD_PAIR,
    }),
    'grid': schema.List(schema.Number('float', min_value=0, max_value=1),
                        min_length=1),
    'grid_points': schema.Number('int', min_value=2),
    'path_length': schema.Number('int', min_value=1),
    'num_paths': schema.Number('int', min_value=1),
    'master_seed': schema.Number('int', min_value=0, max_value=2**64 - 1),
    'value_alpha': _VALUE,
    'value_beta': _VALUE,
    'use_exact': schema.Bool(),
    'tolerance': schema.Number('float', min_value=0),
    'output_path': schema.String(min_length=1),
    'space': schema.String(choices=SPACES),
    'strategy_alpha': schema.String(min_length=1),
    'strategy_beta': schema.String(min_length=1),
    'alpha_strategies': schema.List(
        schema.String(choices=strategies.NAMED_STRATEGIES), min_length=1),
    'method': schema.String(choices=METHODS),
    'workers': schema.Number('int', min_value=1),
    'log_level': schema.String(choices=LOG_LEVELS),
}, optionals=['mode', 'payoff_matrix', 'grid', 'grid_points', 'path_length',
              'num_paths', 'master_seed', 'value_alpha', 'value_beta',
              'use_exact', 'tolerance', 'output_path', 'space',
              'strategy_alpha', 'strategy_beta', 'alpha_strategies', 'method',
              'workers', 'log_level'],
   nullables=['tolerance', 'output_path'])

# Fields that do not influence any result.
NON_SEMANTIC_FIELDS = ('workers', 'output_path', 'log_level')


@dataclass(frozen=True)
class ExperimentConfig:
    """Complete, validated configuration of an experiment.

    Attributes:
        mode (str): One of :data:`MODES`.
        payoff_matrix (valign.ipd.PayoffMatrix): Outcome matrix.
        grid (tuple): Cooperation probabilities of random-action strategies.
        path_length (int): Number of transitions per path.
        num_paths (int): Number of sampled paths.
        master_seed (int): Master seed of all random number streams.
        value_alpha (valign.values.ValueId): Value prioritized by alpha.
        value_beta (valign.values.ValueId): Value prioritized by beta.
        use_exact (bool): Use exhaustive enumeration instead of sampling.
        tolerance (float): Equilibrium tolerance, ``None`` for automatic.
        output_path (str): Results file, ``None`` for a default name.
        space (str): Strategy space for equilibria, one of :data:`SPACES`.
        strategy_alpha (str): Strategy name of alpha in ``align`` mode.
        strategy_beta (str): Strategy name of beta in ``align`` mode.
        alpha_strategies (tuple): Named strategies of alpha in heterogeneous
            spaces.
        method (str): Equilibrium search method, one of :data:`METHODS`.
        workers (int): Number of worker processes.
        log_level (str): Log level name.
    """

    mode: str = 'equilibria'
    payoff_matrix: ipd.PayoffMatrix = ipd.DEFAULT_MATRIX
    grid: Tuple[float, ...] = field(
        default_factory=lambda: strategies.probability_grid(
            DEFAULT_GRID_POINTS))
    path_length: int = 10
    num_paths: int = 10000
    master_seed: int = 42
    value_alpha: values.ValueId = values.ValueId.GAIN
    value_beta: values.ValueId = values.ValueId.GAIN
    use_exact: bool = False
    tolerance: Optional[float] = None
    output_path: Optional[str] = None
    space: str = 'random'
    strategy_alpha: str = 'tft'
    strategy_beta: str = 'random:0.5'
    alpha_strategies: Tuple[str, ...] = strategies.NAMED_STRATEGIES
    method: str = 'auto'
    workers: int = 1
    log_level: str = 'WARNING'

    def replace(self, **changes):
        """Return a copy with the given fields replaced."""
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        """Return the configuration in configuration file format."""
        return {
            'mode': self.mode,
            'payoff_matrix': self.payoff_matrix.to_dict(),
            'grid': list(self.grid),
            'path_length': self.path_length,
            'num_paths': self.num_paths,
            'master_seed': self.master_seed,
            'value_alpha': str(self.value_alpha),
            'value_beta': str(self.value_beta),
            'use_exact': self.use_exact,
            'tolerance': self.tolerance,
            'output_path': self.output_path,
            'space': self.space,
            'strategy_alpha': self.strategy_alpha,
            'strategy_beta': self.strategy_beta,
            'alpha_strategies': list(self.alpha_strategies),
            'method': self.method,
            'workers': self.workers,
            'log_level': self.log_level,
        }

    def manifest(self):
        """Return the reproducibility manifest.

        Returns:
            dict: All fields influencing results, plus the package version.
        """
        from . import __version__
        manifest = {key: value for key, value in self.to_dict().items()
                    if key not in NON_SEMANTIC_FIELDS}
        manifest['version'] = __version__
        return manifest

    def manifest_hash(self):
        """Return the SHA256 hash of the canonical manifest JSON."""
        return hash_manifest(self.manifest())


def hash_manifest(manifest):
    """Return the SHA256 hash (hex) of a manifest dict.

    The manifest is serialized as compact JSON with sorted keys, so equal
    manifests always give the same hash.
    """
    canonical = json.dumps(manifest, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode()).hexdigest()


def read_config_file(path):
    """Read a JSON configuration file.

    Args:
        path (str): Path to the file.

    Returns:
        dict: The raw, unvalidated configuration values.

    Raises:
        valign.exceptions.ParseError: if the file is not a JSON object.
        OSError: if the file cannot be read.
    """
    with open(path, encoding='utf-8') as config_file:
        text = config_file.read()
    if not text.strip():
        return {}
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise exceptions.ParseError(path, '{} at line {}, column {}'.format(
            err.msg, err.lineno, err.colno)) from None
    if not isinstance(raw, dict):
        raise exceptions.ParseError(path, 'top level must be a JSON object')
    return raw


def _check_grid_conflict(source):
    if 'grid' in source and 'grid_points' in source:
        try:
            raise exceptions.ValidationError('Conflicts with "grid".',
                                             None, source['grid_points'])
        except exceptions.ValidationError as err:
            raise exceptions.SubnodeValidationError('grid_points') from err


def load_config(path=None, **flags):
    """Load and validate an experiment configuration.

    Args:
        path (str): Optional JSON configuration file.
        **flags: Field values overriding the file. Flags that are ``None`` are
            considered unset. ``grid_points`` may be given instead of
            ``grid``, but not together with it, neither in the file nor in
            the flags. A flag for one of them replaces the other from the
            file.

    Returns:
        ExperimentConfig: Validated configuration with defaults applied.

    Raises:
        valign.exceptions.ParseError: for malformed configuration files.
        valign.exceptions.SubnodeValidationError: for invalid values, naming
            the offending key.
        valign.exceptions.UnknownStrategyError: for invalid strategy names.
        OSError: if the configuration file cannot be read.
    """
    file_values = read_config_file(path) if path else {}
    overrides = {key: value for key, value in flags.items()
                 if value is not None}
    for source in (file_values, overrides):
        _check_grid_conflict(source)
    merged = dict(file_values)
    if 'grid' in overrides:
        merged.pop('grid_points', None)
    if 'grid_points' in overrides:
        merged.pop('grid', None)
    merged.update(overrides)
    for key in ('grid', 'alpha_strategies'):
        if isinstance(merged.get(key), tuple):
            merged[key] = list(merged[key])
    CONFIG_SCHEMA.validate(merged)
    logger.debug('Merged configuration: %s', merged)

    kwargs = {key: value for key, value in merged.items()
              if key != 'grid_points'}
    if 'grid_points' in merged:
        kwargs['grid'] = strategies.probability_grid(merged['grid_points'])
    elif 'grid' in merged:
        kwargs['grid'] = tuple(float(p) for p in merged['grid'])
    if 'payoff_matrix' in merged:
        kwargs['payoff_matrix'] = ipd.PayoffMatrix.from_dict(
            merged['payoff_matrix'])
    for key in ('value_alpha', 'value_beta'):
        if key in merged:
            kwargs[key] = values.ValueId.from_name(merged[key])
    if 'alpha_strategies' in merged:
        kwargs['alpha_strategies'] = tuple(merged['alpha_strategies'])
    if merged.get('tolerance') is not None:
        kwargs['tolerance'] = float(merged['tolerance'])
    config = ExperimentConfig(**kwargs)
    # Resolve strategy names early, so that errors occur before any work.
    strategies.strategy_from_name(config.strategy_alpha)
    strategies.strategy_from_name(config.strategy_beta)
    return config
