"""valign backend for CSV files.

Tabular results (e.g. sweeps) are stored as CSV files with a header row, as
produced by :meth:`pandas.DataFrame.to_csv`. The first line of every file is a
comment holding the manifest hash::

    # manifest_sha256: 3f5c...

Floats are written with 9 significant digits, so that files are byte-stable
across runs and platforms.

The data of a CSV storage is a list of flat records (dicts), all with the
same keys. Key order of the first record defines the column order.
"""
import io

import pandas as pd

from .. import storage

HASH_PREFIX = '# manifest_sha256: '
FLOAT_FORMAT = '%.9g'


class Storage(storage.FileStorage):
    """Interface to CSV result files.

    Attributes:
        storage_path (str): Path to the current storage.
        manifest (dict): Run manifest, ``None`` if unknown.
        data (list): List of record dicts.
    """

    def _load(self):
        """Load an existing file from :attr:`storage_path`."""
        with open(self.storage_path, encoding='utf-8', newline='') as file_:
            first_line = file_.readline()
            if not first_line.startswith(HASH_PREFIX):
                raise ValueError('File {} lacks the manifest hash line.'
                                 .format(self.storage_path))
            self._manifest_hash = first_line[len(HASH_PREFIX):].strip()
            content = file_.read()
        if content.strip():
            frame = pd.read_csv(io.StringIO(content))
            self.data = frame.to_dict(orient='records')
        else:
            self.data = []

    def _save(self):
        """Save the current data to the file in :attr:`storage_path`."""
        frame = pd.DataFrame.from_records(self.data)
        with open(self.storage_path, 'w', encoding='utf-8',
                  newline='') as file_:
            file_.write(HASH_PREFIX + self.manifest_hash() + '\n')
            if len(frame.columns):
                frame.to_csv(file_, index=False, float_format=FLOAT_FORMAT,
                             lineterminator='\n')
