import json

import pytest

from valign.backends import json as json_backend

MANIFEST = {'mode': 'equilibria'}


@pytest.fixture
def storage_path(tmpdir):
    return str(tmpdir.join('report.json'))


@pytest.mark.parametrize('value,expected', (
    (1 / 3, 0.333333333),
    ({'a': (2 / 3, 'x')}, {'a': [0.666666667, 'x']}),
    ([1, True, None], [1, True, None]),
    (123456789012.0, 123456789000.0),
))
def test_round_floats(value, expected):
    assert json_backend.round_floats(value) == expected


def test_file_layout(storage_path):
    storage = json_backend.Storage(storage_path, manifest=MANIFEST)
    storage.data = {'equilibria': ['tft|random:1.0'], 'tolerance': None}
    storage.save()
    with open(storage_path) as file_:
        text = file_.read()
    assert text.endswith('}\n')
    content = json.loads(text)
    assert content == {'manifest_sha256': storage.manifest_hash(),
                       'data': storage.data}
    assert list(content) == ['data', 'manifest_sha256']


def test_load(storage_path):
    storage = json_backend.Storage(storage_path, manifest=MANIFEST)
    storage.data = {'alignment': 0.1 + 0.2}
    storage.save()
    loaded = json_backend.Storage(storage_path)
    assert loaded.data == {'alignment': 0.3}
    assert loaded.manifest == MANIFEST


def test_missing_hash(storage_path):
    with open(storage_path, 'w') as file_:
        json.dump({'data': 1}, file_)
    with pytest.raises(ValueError):
        json_backend.Storage(storage_path)
