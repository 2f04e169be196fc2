"""Result storage representation.

Results of an experiment are stored together with the hash of the run
manifest they were produced under, so that results are never compared or
combined across different configurations by accident. In addition,
file-based storages write the full manifest to a sibling file
(``<results>.manifest.json``), making every result reproducible.

The classes here hold the manifest handling and validation shared by all
backends. The formats themselves live in :mod:`valign.backends`.
"""
import json
import logging
import os

from . import config
from . import frontend

logger = logging.getLogger(__name__)

MANIFEST_SUFFIX = '.manifest.json'


class ResultStorage:
    """Generic result storage interface base class.

    Once created, the :class:`ResultStorage` provides access to the results
    via :attr:`data`. The structure of the data depends on the backend, e.g.
    a list of flat records for CSV files.

    Attributes:
        storage_path (str): Path to the current storage (backend-specific).
        manifest (dict): Run manifest, ``None`` if unknown.
        schema_node: Optional schema node used to validate :attr:`data`.
        data: The stored results.
    """

    def __init__(self, storage_path, manifest=None, schema_node=None):
        """Set up an empty storage.

        Args:
            storage_path (str): Path to the storage (backend-specific).
            manifest (dict): Run manifest of the results.
            schema_node: Optional schema node for validation.
        """
        self.data = None
        self.storage_path = storage_path
        self.manifest = manifest
        self.schema_node = schema_node
        self._manifest_hash = (config.hash_manifest(manifest)
                               if manifest is not None else None)

    def manifest_hash(self):
        """Return the SHA256 hash of the run manifest.

        For loaded storages, this is the hash embedded in the results, not a
        hash recomputed from the manifest file.

        Returns:
            str: SHA256 hash (hex) of the manifest.
        """
        return self._manifest_hash

    def save_as(self, storage_path, backend=None, overwrite=False):
        """Create a new storage by copying manifest and data.

        Shorthand for :func:`~valign.frontend.create_from`.

        Args:
            storage_path (str): Path to the new storage.
            backend (str): Backend to use. If omitted, the backend is
                selected based on the ``storage_path``.
            overwrite (bool): Allow replacing an existing file.

        Returns:
            Newly created storage.
        """
        return frontend.create_from(storage_path, self, backend, overwrite)

    def validate(self):
        """Validate the data against :attr:`schema_node`, if one is set.

        Raises:
            valign.exceptions.ValidationError: if validation fails.
            valign.exceptions.SubnodeValidationError: if validation fails for
                a nested value.
        """
        if self.schema_node is not None:
            self.schema_node.validate(self.data)


class FileStorage(ResultStorage):
    """Base class of storages backed by a results file.

    Attributes:
        storage_path (str): Path to the results file.
        manifest (dict): Run manifest, ``None`` if unknown.
        schema_node: Optional schema node used to validate :attr:`data`.
        data: The stored results.
    """

    def __init__(self, storage_path, manifest=None, schema_node=None,
                 overwrite=False):
        """Open or prepare a results file.

        To create a new results file, ``manifest`` must be given. When loading
        an existing file, ``manifest`` must not be given.

        .. note::
            File-based backends keep the results in memory. For writing them
            to disk, :meth:`save` must be called explicitly.

        Args:
            storage_path (str): Path to the results file.
            manifest (dict): Run manifest of new results.
            schema_node: Optional schema node for validation.
            overwrite (bool): Allow creating results over an existing file.

        Raises:
            FileExistsError: when creating over an existing file without
                ``overwrite``.
            FileNotFoundError: when loading a missing file.
        """
        super().__init__(str(storage_path), manifest, schema_node)
        if manifest is not None:
            if os.path.exists(self.storage_path) and not overwrite:
                raise FileExistsError('File {} already exists.'.format(
                    self.storage_path))
        else:
            if not os.path.exists(self.storage_path):
                raise FileNotFoundError('File {} could not be found.'.format(
                    self.storage_path))
            self._load()
            self._load_manifest()

    @property
    def manifest_path(self):
        """str: Path of the sibling run manifest file."""
        return self.storage_path + MANIFEST_SUFFIX

    def _load(self):
        """Load :attr:`data` and the embedded manifest hash."""
        raise NotImplementedError('To be implemented in subclass.')

    def _load_manifest(self):
        if not os.path.exists(self.manifest_path):
            logger.warning('No manifest file found for %s.',
                           self.storage_path)
            return
        with open(self.manifest_path, encoding='utf-8') as manifest_file:
            content = json.load(manifest_file)
        self.manifest = content.get('manifest')

    def save(self, force=False):
        """Save the results and the run manifest.

        The data is checked with :meth:`validate` first, unless ``force`` is
        set.

        Args:
            force (bool): Write without validating.
        """
        if not force:
            self.validate()
        self._save()
        self._save_manifest()
        logger.info('Saved results to %s.', self.storage_path)

    def _save(self):
        """Write :attr:`data` and the manifest hash to the results file."""
        raise NotImplementedError('To be implemented in subclass.')

    def _save_manifest(self):
        content = {'manifest': self.manifest,
                   'manifest_sha256': self.manifest_hash()}
        with open(self.manifest_path, 'w', encoding='utf-8',
                  newline='\n') as manifest_file:
            json.dump(content, manifest_file, sort_keys=True, indent=2)
            manifest_file.write('\n')
