"""valign result frontend.

The frontend provides a convenient, backend-independent interface for creating
new result storages, loading existing ones and comparing results.

Results are only ever compared if they were produced under the same run
manifest, which is checked via the manifest hash embedded in every results
file.
"""
import importlib

from . import exceptions


def create(storage_path, manifest, backend=None, overwrite=False,
           schema_node=None):
    """Create a new result storage.

    Creates a new storage in the location given by ``storage_path``, using
    the desired ``backend``. If no backend is specified, it is detected
    automatically from the file extension.

    Currently, the following backends are available:

    ==========  ==================  ========================
    Name        Description         Path format
    ==========  ==================  ========================
    csv         CSV table           Path ending in ``.csv``
    inmem       In-memory storage   Fixed string "::inmem::"
    json        JSON document       Path ending in ``.json``
    ==========  ==================  ========================

    Args:
        storage_path (str): Path to the new storage (backend-specific).
        manifest (dict): Run manifest of the results.
        backend (str): Backend to use for the new storage.
        overwrite (bool): Allow replacing an existing file.
        schema_node: Optional schema node to validate the data with.

    Returns:
        Storage object. Its :attr:`data` must be set before saving.
    """
    backend_module = _backend_module(storage_path, backend)
    return backend_module.Storage(storage_path=storage_path, manifest=manifest,
                                  schema_node=schema_node, overwrite=overwrite)


def create_from(storage_path, source_storage, backend=None, overwrite=False):
    """Create a new storage by copying from an existing one.

    Manifest and data are copied from ``source_storage``.

    Args:
        storage_path (str): Path to the new storage (backend-specific).
        source_storage: Storage to copy manifest and data from.
        backend (str): Backend to use for the new storage.
        overwrite (bool): Allow replacing an existing file.

    Returns:
        Newly created storage.
    """
    storage = create(storage_path, source_storage.manifest, backend,
                     overwrite, source_storage.schema_node)
    storage.data = source_storage.data
    return storage


def load(storage_path, backend=None, required_manifest_hash=None,
         schema_node=None, force=False):
    """Load a result storage from the given path.

    The ``required_manifest_hash`` argument can be used to ensure that the
    loaded results were produced under a specific manifest, as determined by
    :meth:`valign.config.ExperimentConfig.manifest_hash`.

    If ``schema_node`` is given, the loaded data is validated automatically,
    unless ``force`` is set to ``True``.

    Args:
        storage_path (str): Path to the storage (backend-specific).
        backend (str): Backend to be used. By default, perform auto-detection.
        required_manifest_hash (str): SHA256 hash of the required manifest.
        schema_node: Schema node to validate the data with.
        force (bool): If ``True``, the automatic validation step is skipped.

    Returns:
        Storage object.

    Raises:
        valign.exceptions.InvalidManifestError: if the results were produced
            under another manifest.
        valign.exceptions.ValidationError: if validation failed.
        valign.exceptions.SubnodeValidationError: if validation failed for a
            nested value.
    """
    backend_module = _backend_module(storage_path, backend)
    storage = backend_module.Storage(storage_path=storage_path)
    if (required_manifest_hash and
            storage.manifest_hash() != required_manifest_hash):
        raise exceptions.InvalidManifestError(required_manifest_hash,
                                              storage.manifest_hash())
    storage.schema_node = schema_node
    if not force:
        storage.validate()
    return storage


def compare(first, second):
    """Compare the results of two storages.

    Args:
        first: First storage.
        second: Second storage.

    Returns:
        bool: ``True`` if both storages hold the same data.

    Raises:
        valign.exceptions.InvalidManifestError: if the storages were produced
            under different manifests.
    """
    if first.manifest_hash() != second.manifest_hash():
        raise exceptions.InvalidManifestError(first.manifest_hash(),
                                              second.manifest_hash())
    return first.data == second.data


def _backend_module(storage_path, backend):
    if not backend:
        backend = autodetect_backend(storage_path)
    from .backends import available_backends
    if backend not in available_backends:
        raise ValueError('Unknown backend "{}".'.format(backend))
    return importlib.import_module('valign.backends.' + backend)


def autodetect_backend(storage_path):
    """Find the backend name corresponding to the given storage path.

    Args:
        storage_path (str): Path to the storage.

    Returns:
        str: Corresponding backend name.

    Raises:
        valign.exceptions.AutodetectBackendError: if automatic detection fails.
    """
    storage_path = str(storage_path)
    if storage_path == '::inmem::':
        return 'inmem'
    elif storage_path.lower().endswith('.csv'):
        return 'csv'
    elif storage_path.lower().endswith('.json'):
        return 'json'
    raise exceptions.AutodetectBackendError(storage_path)
