"""Custom exception classes used throughout valign."""


class ValignError(Exception):
    """Base class for custom exceptions raised by valign.

    All valign-specific exceptions are derived from this class.
    """

    pass


class AutodetectBackendError(ValignError):
    """Exception raised when results backend autodetection fails."""

    def __init__(self, storage_path):
        """Initialize AutodetectBackendError.

        Args:
            storage_path: Storage path that auto-detection failed for.
        """
        super().__init__('Could not auto-detect backend for results file '
                         '"{}".'.format(storage_path))


class InvalidManifestError(ValignError):
    """Exception used when results were produced under another manifest."""

    def __init__(self, expected_hash, got_hash):
        """Initialize InvalidManifestError.

        Args:
            expected_hash (str): Hash of the required run manifest.
            got_hash (str): Hash of the manifest that was found instead.
        """
        msg = 'Invalid manifest. Expected {} but got {}.'.format(expected_hash,
                                                                got_hash)
        super().__init__(msg)


class MissingTableEntryError(ValignError):
    """Exception raised when an alignment table lacks a required entry."""

    def __init__(self, profile, agent):
        """Initialize MissingTableEntryError.

        Args:
            profile: Strategy profile (or its key) that was looked up.
            agent: Agent whose alignment was requested.
        """
        super().__init__('No alignment for agent {} under profile {} in the '
                         'alignment table.'.format(agent, profile))
        self.profile = profile
        self.agent = agent


class NormViolationError(ValignError):
    """Exception raised when a forbidden transition is requested."""

    def __init__(self, state, action):
        """Initialize NormViolationError.

        Args:
            state: Pre-transition state.
            action: Joint action that the active norms forbid in ``state``.
        """
        super().__init__('Action {} is not allowed in state {}.'.format(
            action, state))
        self.state = state
        self.action = action


class OutOfRangeError(ValignError):
    """Exception raised for a probability outside of [0, 1]."""

    def __init__(self, name, value):
        """Initialize OutOfRangeError.

        Args:
            name (str): Name of the offending parameter.
            value: The invalid value.
        """
        super().__init__('{} must be within [0, 1], got {}.'.format(name,
                                                                   value))
        self.name = name
        self.value = value


class ParseError(ValignError):
    """Exception raised when configuration text cannot be parsed."""

    def __init__(self, source, detail):
        """Initialize ParseError.

        Args:
            source (str): File name or other description of the input.
            detail (str): Parser message, including the position if known.
        """
        super().__init__('Could not parse "{}": {}'.format(source, detail))
        self.source = source


class PathTooLongError(ValignError):
    """Exception raised when exact path enumeration would be too large."""

    def __init__(self, length, limit):
        """Initialize PathTooLongError.

        Args:
            length (int): Requested path length.
            limit (int): Longest path length supported by enumeration.
        """
        super().__init__('Exact enumeration supports paths of up to {} '
                         'transitions, got {}.'.format(limit, length))
        self.length = length
        self.limit = limit


class UnknownDeltaError(ValignError):
    """Exception raised when a gain preference meets an unranked reward."""

    def __init__(self, delta, known):
        """Initialize UnknownDeltaError.

        This usually means that a custom payoff matrix is used together with
        a gain preference built for another matrix.

        Args:
            delta (int): Wealth increase that could not be ranked.
            known (tuple): Reward levels known to the preference function.
        """
        super().__init__('Reward delta {} is not one of the ranked rewards '
                         '{}.'.format(delta, known))
        self.delta = delta
        self.known = known


class UnknownStrategyError(ValignError):
    """Exception raised for strategy names that cannot be resolved."""

    def __init__(self, name):
        """Initialize UnknownStrategyError.

        Args:
            name (str): The unresolved strategy name.
        """
        super().__init__('Unknown strategy "{}". Expected "random:<p>", '
                         '"tft", "mostly_cooperate" or "mostly_defect".'
                         .format(name))
        self.name = name


class SubnodeValidationError(ValignError):
    """Exception raised when a nested entry fails validation.

    :exc:`ValidationError` only tells which constraint failed. Each container
    node on the way up wraps it into a :exc:`SubnodeValidationError` carrying
    its own key or index, chained via ``raise ... from``. Walking this chain
    yields the full location, see :meth:`node_path`.
    """

    def __init__(self, location):
        """Initialize SubnodeValidationError.

        Args:
            location (str or int): Field name in a
                :class:`~valign.schema.Compilation` or entry index in a
                :class:`~valign.schema.List`.
        """
        super().__init__()
        self._location = location

    def node_path(self):
        """Join the locations of the chain, e.g. ``payoff_matrix.CD[1]``.

        Returns:
            str: Path of the invalid entry.
        """
        head = ('[{}]'.format(self._location)
                if isinstance(self._location, int) else str(self._location))
        if not isinstance(self.__cause__, SubnodeValidationError):
            return head
        tail = self.__cause__.node_path()
        return head + (tail if tail.startswith('[') else '.' + tail)

    def original_cause(self):
        """Return the :exc:`ValidationError` at the end of the chain."""
        cause = self.__cause__
        while isinstance(cause, SubnodeValidationError):
            cause = cause.__cause__
        return cause

    def __str__(self):
        return 'Key "{}" failed validation: {}'.format(self.node_path(),
                                                        self.original_cause())


class ValidationError(ValignError):
    """Exception raised when a value violates a schema constraint.

    Attributes:
        message (str): Which constraint failed, e.g. ``'Invalid choice.'``.
            Suitable for showing to users.
        expected: The constraint, e.g. the bound or the allowed choices.
        got: The offending value or property, if applicable.
    """

    def __init__(self, message, expected, got=None):
        super().__init__()
        self.message = message
        self.expected = expected
        self.got = got

    def __str__(self):
        return '{} (Expected: {}. Got: {})'.format(self.message, self.expected,
                                                   self.got)
