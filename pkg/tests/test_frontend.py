import importlib
from collections import namedtuple

import pytest

from valign import config, exceptions, frontend, schema
from valign.backends import inmem

backend_data = namedtuple('backend_data', ('module', 'storage_path'))

MANIFEST = config.ExperimentConfig().manifest()
OTHER_MANIFEST = config.ExperimentConfig(master_seed=7).manifest()
RECORDS = [{'agent': 'alpha', 'mean': 0.25}, {'agent': 'beta', 'mean': -0.5}]


@pytest.fixture(params=('csv', 'json'))
def backend(request, tmpdir):
    backend = backend_data(
        module=importlib.import_module('valign.backends.' + request.param),
        storage_path=str(tmpdir.join('test_frontend.' + request.param))
    )
    return backend


@pytest.fixture(params=('csv', 'inmem', 'json'))
def foreign_backend(request, tmpdir):
    if request.param == 'inmem':
        storage_path = '::inmem::'
    else:
        storage_path = str(tmpdir.join('test_frontend_foreign.' +
                                       request.param))
    backend = backend_data(
        module=importlib.import_module('valign.backends.' + request.param),
        storage_path=storage_path
    )
    return backend


def saved(storage_path, manifest=MANIFEST, data=RECORDS, schema_node=None):
    storage = frontend.create(storage_path, manifest, schema_node=schema_node)
    storage.data = data
    storage.save()
    return storage


def test_create(backend):
    storage = frontend.create(backend.storage_path, MANIFEST)
    assert isinstance(storage, backend.module.Storage)
    assert storage.manifest == MANIFEST


def test_create_inmem():
    storage = frontend.create('::inmem::', MANIFEST)
    assert isinstance(storage, inmem.Storage)


def test_create_explicit_backend(tmpdir):
    storage_path = str(tmpdir.join('results.txt'))
    storage = frontend.create(storage_path, MANIFEST, backend='json')
    storage.data = RECORDS
    storage.save()
    assert frontend.load(storage_path, backend='json').data == RECORDS


def test_create_unknown_backend(tmpdir):
    with pytest.raises(ValueError):
        frontend.create(str(tmpdir.join('results.parquet')), MANIFEST,
                        backend='parquet')


def test_create_from(backend, foreign_backend):
    source_storage = frontend.create(foreign_backend.storage_path, MANIFEST)
    source_storage.data = RECORDS

    dest_storage = frontend.create_from(backend.storage_path, source_storage)
    assert dest_storage.manifest_hash() == source_storage.manifest_hash()
    assert dest_storage.data == RECORDS


def test_load(backend):
    saved(backend.storage_path)
    new_storage = frontend.load(backend.storage_path)
    assert isinstance(new_storage, backend.module.Storage)
    assert new_storage.data == RECORDS


def test_load_required_manifest_hash(backend):
    storage = saved(backend.storage_path)
    frontend.load(backend.storage_path,
                  required_manifest_hash=storage.manifest_hash())
    with pytest.raises(exceptions.InvalidManifestError):
        frontend.load(backend.storage_path,
                      required_manifest_hash=config.hash_manifest(
                          OTHER_MANIFEST))


def test_load_validation_fail(backend):
    schema_node = schema.List(schema.Compilation({
        'agent': schema.String(choices=['alpha']),
        'mean': schema.Number()}))
    saved(backend.storage_path)
    with pytest.raises(exceptions.SubnodeValidationError):
        frontend.load(backend.storage_path, schema_node=schema_node)
    # With force=True, no exception must be raised.
    frontend.load(backend.storage_path, schema_node=schema_node, force=True)


def test_compare(tmpdir):
    first = saved(str(tmpdir.join('first.csv')))
    second = saved(str(tmpdir.join('second.json')))
    assert frontend.compare(first, second)
    third = saved(str(tmpdir.join('third.json')), data=RECORDS[:1])
    assert not frontend.compare(first, third)


def test_compare_different_manifests(tmpdir):
    first = saved(str(tmpdir.join('first.json')))
    second = saved(str(tmpdir.join('second.json')), manifest=OTHER_MANIFEST)
    with pytest.raises(exceptions.InvalidManifestError):
        frontend.compare(first, second)


@pytest.mark.parametrize('storage_path,expected', (
    ('::inmem::', 'inmem'),
    ('results.csv', 'csv'),
    ('RESULTS.CSV', 'csv'),
    ('out/report.json', 'json'),
))
def test_autodetect_backend(storage_path, expected):
    assert frontend.autodetect_backend(storage_path) == expected


@pytest.mark.parametrize('storage_path', ('results.h5', 'results', 'csv'))
def test_autodetect_backend_fail(storage_path):
    with pytest.raises(exceptions.AutodetectBackendError):
        frontend.autodetect_backend(storage_path)
