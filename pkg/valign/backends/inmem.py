"""valign backend for in-memory result storage.

This backend keeps all results in memory and cannot save to disk. It is used
to collect results before selecting a storage path, or in tests.
"""
from .. import storage

INMEM_PATH = '::inmem::'


class Storage(storage.ResultStorage):
    """Interface to the in-memory storage.

    Attributes:
        storage_path (str): Always ``'::inmem::'``.
        manifest (dict): Run manifest.
        data: The stored results.
    """

    def __init__(self, storage_path=INMEM_PATH, manifest=None,
                 schema_node=None, overwrite=False):
        """Initialize the in-memory storage interface.

        .. note::
            Since nothing is written to disk, existing storages cannot be
            loaded, so a manifest must always be given.

        Args:
            storage_path: Only supported for API compatibility. If given, this
                must always be "::inmem::".
            manifest (dict): Run manifest of the results.
            schema_node: Optional schema node for validation.
            overwrite (bool): Only supported for API compatibility.
        """
        if storage_path != INMEM_PATH:
            raise ValueError('Invalid storage path for in-memory backend. '
                             'Must be the special string "::inmem::".')
        if manifest is None:
            raise ValueError('A manifest must always be specified.')
        super().__init__(storage_path, manifest, schema_node)

    def save(self, force=False):
        """Validate the data, unless ``force`` is set. Nothing is written."""
        if not force:
            self.validate()
