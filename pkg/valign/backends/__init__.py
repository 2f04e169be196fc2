"""valign result backends package.

Results can be written in multiple formats. Each backend is implemented in a
separate module inside the ``backends`` package, providing a ``Storage`` class
derived from the classes in :mod:`valign.storage`.

After import, :data:`available_backends` is a tuple of all available backend's
names.
"""
import os
import pkgutil

# Automatically discover all available backends.
_pkg_path = os.path.dirname(__file__)
available_backends = tuple(sorted(
    name for _, name, _ in pkgutil.iter_modules([_pkg_path])
    if not name.startswith('_')))
