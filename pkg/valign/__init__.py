try:
    from ._version import version as __version__
except ImportError:
    from importlib.metadata import PackageNotFoundError, version
    try:
        __version__ = version('valign')
    except PackageNotFoundError:
        __version__ = 'unknown'

# Convenience imports.
from . import exceptions, schema
from .alignment import alignment_exact, alignment_mc, AlignmentQuery
from .equilibria import (find_alignment_equilibria, StrategySpace,
                         ValueAssignment)
from .frontend import compare, create, create_from, load
from .ipd import AgentId, PayoffMatrix
from .strategies import strategy_from_name, StrategyProfile
from .values import ValueId
