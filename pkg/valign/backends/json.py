"""valign backend for JSON files.

Structured results (e.g. equilibrium reports) are stored as a JSON object
with two keys: ``manifest_sha256`` holds the manifest hash and ``data`` the
results. Keys are sorted and floats are rounded to 9 significant digits, so
that files are byte-stable across runs and platforms.
"""
import json

from .. import storage

SIGNIFICANT_DIGITS = 9


def round_floats(value, digits=SIGNIFICANT_DIGITS):
    """Recursively round all floats in a JSON-like structure.

    Args:
        value: dict, list, tuple or scalar.
        digits (int): Number of significant digits.

    Returns:
        Copy of ``value`` with rounded floats. Tuples become lists.
    """
    if isinstance(value, float):
        return float('{:.{}g}'.format(value, digits))
    if isinstance(value, dict):
        return {key: round_floats(item, digits) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(item, digits) for item in value]
    return value


class Storage(storage.FileStorage):
    """Interface to JSON result files.

    Attributes:
        storage_path (str): Path to the current storage.
        manifest (dict): Run manifest, ``None`` if unknown.
        data: JSON-serializable results.
    """

    def _load(self):
        """Load an existing file from :attr:`storage_path`."""
        with open(self.storage_path, encoding='utf-8') as file_:
            content = json.load(file_)
        if not isinstance(content, dict) or 'manifest_sha256' not in content:
            raise ValueError('File {} lacks the manifest hash.'.format(
                self.storage_path))
        self._manifest_hash = content['manifest_sha256']
        self.data = content.get('data')

    def _save(self):
        """Save the current data to the file in :attr:`storage_path`."""
        content = {'manifest_sha256': self.manifest_hash(),
                   'data': round_floats(self.data)}
        with open(self.storage_path, 'w', encoding='utf-8',
                  newline='\n') as file_:
            json.dump(content, file_, sort_keys=True, indent=2)
            file_.write('\n')
