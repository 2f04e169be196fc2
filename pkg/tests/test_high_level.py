import pytest

import valign

GRID = [i / 10 for i in range(11)]


def profile_names(report, pareto=None):
    return {'{}|{}'.format(p.alpha, p.beta) for p in report.equilibria
            if pareto is None or report.is_pareto_optimal(p) is pareto}


def test_alignment_of_single_profile():
    profile = valign.StrategyProfile(valign.strategy_from_name('tft'),
                                     valign.strategy_from_name('random:1'))
    exact = valign.alignment_exact(profile, valign.AgentId.BETA, 'gain',
                                   path_length=4)
    sampled = valign.alignment_mc(valign.AlignmentQuery(
        profile, valign.AgentId.BETA, valign.ValueId.GAIN, path_length=4,
        num_paths=4000))
    assert abs(sampled.mean - exact.mean) <= 4 * sampled.std_error + 1e-12


@pytest.mark.parametrize('value_alpha,value_beta,expected,pareto', (
    ('equality', 'equality',
     {'tft|random:1.0', 'mostly_cooperate|random:1.0'}, True),
    ('gain', 'gain', {'tft|random:0.0', 'mostly_defect|random:0.0'}, False),
    ('gain', 'equality',
     {'tft|random:0.0', 'mostly_defect|random:0.0'}, False),
    ('equality', 'gain',
     {'tft|random:1.0', 'mostly_cooperate|random:1.0'}, True),
))
def test_heterogeneous_equilibria(value_alpha, value_beta, expected, pareto):
    report = valign.find_alignment_equilibria(
        valign.StrategySpace.heterogeneous(GRID),
        valign.ValueAssignment(value_alpha, value_beta), path_length=10,
        exact=True)
    assert profile_names(report) == expected
    assert profile_names(report, pareto) == expected


def test_equal_value_priorities_coincide():
    space = valign.StrategySpace.heterogeneous(GRID)
    both_equality = valign.find_alignment_equilibria(
        space, valign.ValueAssignment('equality', 'equality'),
        path_length=10, exact=True)
    beta_gain = valign.find_alignment_equilibria(
        space, valign.ValueAssignment('equality', 'gain'), path_length=10,
        exact=True)
    assert profile_names(both_equality) == profile_names(beta_gain)


@pytest.mark.slow
def test_random_grid_gain_sampled():
    report = valign.find_alignment_equilibria(
        valign.StrategySpace.random_grid(GRID),
        valign.ValueAssignment('gain', 'gain'), path_length=10,
        num_paths=10000)
    assert profile_names(report) == {'random:0.0|random:0.0'}
    assert profile_names(report, pareto=True) == set()
    assert 'random:1.0|random:1.0' in {'{}|{}'.format(p.alpha, p.beta)
                                       for p in report.pareto_optimal}


@pytest.mark.slow
@pytest.mark.parametrize('value_alpha,value_beta', (
    ('gain', 'equality'), ('equality', 'gain')))
def test_random_grid_mixed_values_sampled(value_alpha, value_beta):
    report = valign.find_alignment_equilibria(
        valign.StrategySpace.random_grid(GRID),
        valign.ValueAssignment(value_alpha, value_beta), path_length=10,
        num_paths=10000, seed=42)
    assert profile_names(report) == {'random:0.0|random:0.0'}
    assert profile_names(report, pareto=True) == set()


@pytest.mark.slow
def test_random_grid_equality_sampled():
    report = valign.find_alignment_equilibria(
        valign.StrategySpace.random_grid(GRID),
        valign.ValueAssignment('equality', 'equality'), path_length=10,
        num_paths=10000, seed=42)
    assert all(p.alpha == p.beta for p in report.equilibria)
    found = profile_names(report)
    assert {'random:0.0|random:0.0', 'random:1.0|random:1.0'} <= found
    assert {'random:0.0|random:0.0', 'random:1.0|random:1.0'} <= {
        '{}|{}'.format(p.alpha, p.beta) for p in report.pareto_optimal}


@pytest.mark.slow
@pytest.mark.parametrize('value_alpha,value_beta,expected,pareto', (
    ('equality', 'equality',
     {'tft|random:1.0', 'mostly_cooperate|random:1.0'}, True),
    ('equality', 'gain',
     {'tft|random:1.0', 'mostly_cooperate|random:1.0'}, True),
    ('gain', 'gain', {'tft|random:0.0', 'mostly_defect|random:0.0'}, False),
    ('gain', 'equality',
     {'tft|random:0.0', 'mostly_defect|random:0.0'}, False),
))
def test_heterogeneous_equilibria_sampled(value_alpha, value_beta, expected,
                                          pareto):
    report = valign.find_alignment_equilibria(
        valign.StrategySpace.heterogeneous(GRID),
        valign.ValueAssignment(value_alpha, value_beta), path_length=10,
        num_paths=10000, seed=42)
    assert report.method == 'dominance'
    assert report.tolerance is None
    assert profile_names(report) == expected
    assert profile_names(report, pareto) == expected


def test_results_roundtrip(tmpdir):
    report = valign.find_alignment_equilibria(
        valign.StrategySpace.random_grid([0, 0.5, 1]),
        valign.ValueAssignment('gain', 'equality'), path_length=3,
        exact=True)
    manifest = {'experiment': 'roundtrip'}
    storage_path = str(tmpdir.join('report.json'))
    storage = valign.create(storage_path, manifest)
    storage.data = report.to_dict()
    storage.save()

    loaded = valign.load(storage_path,
                         required_manifest_hash=storage.manifest_hash())
    assert loaded.data['equilibria'][0]['profile'] == 'random:0.0|random:0.0'
    copy = loaded.save_as('::inmem::')
    assert valign.compare(loaded, copy)
