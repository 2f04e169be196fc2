"""Declarative validation of configuration and result data.

Configuration files and results are plain, JSON-like data structures (dicts,
lists, numbers, strings and booleans). Their expected layout is written down
as a tree of schema nodes:

* :class:`Bool`, :class:`Number` and :class:`String` check single values and
  form the leaves of the tree.
* :class:`Compilation` checks a dict with a fixed set of named fields, each
  described by its own node.
* :class:`List` checks a sequence whose entries all match one node.

A failure deep inside the tree surfaces as
:exc:`~valign.exceptions.SubnodeValidationError`, whose
:meth:`~valign.exceptions.SubnodeValidationError.node_path` names the
offending entry, e.g. ``payoff_matrix.CD[1]``.

Example::

    node = Compilation({'grid': List(Number(min_value=0, max_value=1))})
    node.validate({'grid': [0, 0.5, 1]})
"""
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

from .exceptions import SubnodeValidationError, ValidationError


def _check_bounds(what, size, lower, upper):
    # ``what`` selects the wording: value bounds or length bounds.
    if upper is not None and size > upper:
        raise ValidationError('Maximum {} exceeded.'.format(what), upper, size)
    if lower is not None and size < lower:
        raise ValidationError('Minimum {} undercut.'.format(what), lower, size)


def _check_type(test_data, expected, allowed):
    if not isinstance(test_data, allowed):
        raise ValidationError('Invalid type/value.', expected, type(test_data))


class SchemaNode:
    """Base class of all schema nodes."""

    def validate(self, test_data):
        """Check ``test_data`` against the node's constraints.

        Returns silently if the data is valid.

        Raises:
            valign.exceptions.ValidationError: if a constraint is violated.
            valign.exceptions.SubnodeValidationError: if a nested entry is
                invalid.
        """
        raise NotImplementedError


@dataclass(frozen=True)
class Bool(SchemaNode):
    """Accepts ``True`` and ``False`` only, not ints."""

    def validate(self, test_data):
        _check_type(test_data, 'bool', bool)


@dataclass(frozen=True)
class Number(SchemaNode):
    """Numeric value with optional bounds.

    Booleans are rejected, although :class:`bool` subclasses :class:`int`,
    and so is NaN.

    Attributes:
        kind (str): ``'int'`` accepts integers only, ``'float'`` accepts
            integers and floats.
        max_value: Largest allowed value.
        min_value: Smallest allowed value.
    """

    kind: str = 'float'
    max_value: Optional[float] = None
    min_value: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ('int', 'float'):
            raise ValueError('Invalid number kind "{}".'.format(self.kind))

    def validate(self, test_data):
        if isinstance(test_data, bool):
            raise ValidationError('Invalid type/value.', self.kind, bool)
        _check_type(test_data, self.kind,
                    int if self.kind == 'int' else (int, float))
        if test_data != test_data:
            raise ValidationError('Invalid type/value.', 'number', test_data)
        _check_bounds('value', test_data, self.min_value, self.max_value)


@dataclass(frozen=True)
class String(SchemaNode):
    """String value, optionally restricted in length or to fixed choices.

    Attributes:
        min_length (int): Minimum string length.
        max_length (int): Maximum string length.
        choices (tuple): Allowed values. ``None`` allows any string.
    """

    min_length: Optional[int] = None
    max_length: Optional[int] = None
    choices: Optional[Sequence[str]] = None

    def __post_init__(self):
        if self.choices is not None:
            object.__setattr__(self, 'choices', tuple(self.choices))

    def validate(self, test_data):
        _check_type(test_data, 'str', str)
        _check_bounds('string length', len(test_data), self.min_length,
                      self.max_length)
        if self.choices is not None and test_data not in self.choices:
            raise ValidationError('Invalid choice.', list(self.choices),
                                  test_data)


@dataclass(frozen=True)
class List(SchemaNode):
    """Sequence of entries sharing one schema node.

    Tuples are accepted in place of lists.

    Attributes:
        subnode (SchemaNode): Node every entry must match.
        max_length (int): Maximum number of entries.
        min_length (int): Minimum number of entries.
    """

    subnode: SchemaNode
    max_length: Optional[int] = None
    min_length: Optional[int] = None

    def validate(self, test_data):
        _check_type(test_data, 'list', (list, tuple))
        _check_bounds('list length', len(test_data), self.min_length,
                      self.max_length)
        for index, entry in enumerate(test_data):
            try:
                self.subnode.validate(entry)
            except (ValidationError, SubnodeValidationError) as err:
                raise SubnodeValidationError(index) from err


@dataclass(frozen=True)
class Compilation(SchemaNode):
    """Dict with a fixed set of named fields.

    Unknown keys are rejected. Fields named in :attr:`optionals` may be
    missing, fields named in :attr:`nullables` may be ``None``.

    Attributes:
        subnodes (dict): Field names mapped to their schema nodes.
        optionals (tuple): Fields that may be omitted.
        nullables (tuple): Fields that accept ``None``.
    """

    subnodes: Mapping[str, SchemaNode]
    optionals: Sequence[str] = field(default=())
    nullables: Sequence[str] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, 'optionals', tuple(self.optionals or ()))
        object.__setattr__(self, 'nullables', tuple(self.nullables or ()))

    def _validate_field(self, name, test_data):
        if name not in test_data:
            if name not in self.optionals:
                raise ValidationError('Missing required key.', name)
            return
        value = test_data[name]
        if value is None and name in self.nullables:
            return
        self.subnodes[name].validate(value)

    def validate(self, test_data: Any):
        _check_type(test_data, 'dict', dict)
        unknown = sorted(set(test_data) - set(self.subnodes), key=str)
        if unknown:
            try:
                raise ValidationError('Unknown key.', sorted(self.subnodes),
                                      unknown[0])
            except ValidationError as err:
                raise SubnodeValidationError(unknown[0]) from err
        for name in self.subnodes:
            try:
                self._validate_field(name, test_data)
            except (ValidationError, SubnodeValidationError) as err:
                raise SubnodeValidationError(name) from err
