import json

import pytest

from valign import alignment, equilibria, exceptions, ipd, strategies, values

ALPHA = ipd.AgentId.ALPHA
BETA = ipd.AgentId.BETA
GRID = strategies.probability_grid(11)


def names(profiles):
    return {equilibria.profile_name(profile) for profile in profiles}


def random_names(*pairs):
    return {'random:{}|random:{}'.format(float(p), float(q))
            for p, q in pairs}


def assignment(value_alpha, value_beta):
    return equilibria.ValueAssignment(value_alpha, value_beta)


@pytest.fixture(scope='module')
def random_space():
    return equilibria.StrategySpace.random_grid(GRID)


@pytest.fixture(scope='module')
def heterogeneous_space():
    return equilibria.StrategySpace.heterogeneous(GRID)


class TestStrategySpace:
    def test_random_grid(self, random_space):
        assert len(random_space) == 121
        assert random_space.kind == 'random'
        profiles = random_space.profiles()
        assert equilibria.profile_name(profiles[1]) == 'random:0.0|random:0.1'

    def test_heterogeneous(self, heterogeneous_space):
        assert len(heterogeneous_space) == 33
        assert [str(s) for s in heterogeneous_space.alpha_options] == [
            'tft', 'mostly_cooperate', 'mostly_defect']

    def test_deviations(self, heterogeneous_space):
        profile = heterogeneous_space.profiles()[0]
        assert len(heterogeneous_space.deviations(profile, ALPHA)) == 2
        assert len(heterogeneous_space.deviations(profile, BETA)) == 10
        assert all(p.alpha == profile.alpha for p in
                   heterogeneous_space.deviations(profile, BETA))

    def test_contains(self, random_space):
        inside = strategies.StrategyProfile(strategies.random_action(0.3),
                                            strategies.random_action(0.7))
        outside = strategies.StrategyProfile(strategies.random_action(0.35),
                                             strategies.random_action(0.7))
        assert inside in random_space
        assert outside not in random_space

    def test_invalid(self):
        with pytest.raises(ValueError):
            equilibria.StrategySpace((), (strategies.random_action(1),))
        with pytest.raises(ValueError):
            equilibria.StrategySpace.random_grid([0, 1]).restrict(
                [strategies.random_action(0)], [])


class TestRandomGrid:
    @pytest.mark.parametrize('length,expected', (
        (2, ((0, 0), (1, 1))),
        (4, ((0, 0), (0.4, 0.4), (1, 1))),
        (6, ((0, 0), (0.4, 0.4), (0.5, 0.5), (1, 1))),
    ))
    def test_equality(self, random_space, length, expected):
        report = equilibria.find_alignment_equilibria(
            random_space, assignment('equality', 'equality'),
            path_length=length, exact=True)
        assert report.method == 'nash'
        assert names(report.equilibria) == random_names(*expected)
        # Both endpoints of the diagonal are Pareto optimal equilibria.
        assert random_names((0, 0), (1, 1)) <= names(
            p for p in report.equilibria if report.is_pareto_optimal(p))

    @pytest.mark.slow
    def test_equality_long_paths(self, random_space):
        report = equilibria.find_alignment_equilibria(
            random_space, assignment('equality', 'equality'),
            path_length=10, exact=True)
        assert names(report.equilibria) == random_names(
            (0, 0), (0.3, 0.3), (0.4, 0.4), (0.5, 0.5), (1, 1))

    def test_gain(self, random_space):
        report = equilibria.find_alignment_equilibria(
            random_space, assignment('gain', 'gain'), path_length=4,
            exact=True)
        assert names(report.equilibria) == random_names((0, 0))
        assert not report.is_pareto_optimal(report.equilibria[0])
        assert random_names((1, 1)) <= names(report.pareto_optimal)

    def test_mixed_values(self, random_space):
        report = equilibria.find_alignment_equilibria(
            random_space, assignment('gain', 'equality'), path_length=4,
            exact=True)
        assert names(report.equilibria) == random_names((0, 0))
        assert not report.is_pareto_optimal(report.equilibria[0])

    def test_mc_gain(self):
        space = equilibria.StrategySpace.random_grid((0.0, 0.5, 1.0))
        report = equilibria.find_alignment_equilibria(
            space, assignment('gain', 'gain'), path_length=10,
            num_paths=2000)
        assert names(report.equilibria) == random_names((0, 0))
        assert report.tolerance is None


class TestHeterogeneous:
    @pytest.mark.parametrize('value_alpha,value_beta,expected,pareto', (
        ('equality', 'equality',
         {'tft|random:1.0', 'mostly_cooperate|random:1.0'}, True),
        ('equality', 'gain',
         {'tft|random:1.0', 'mostly_cooperate|random:1.0'}, True),
        ('gain', 'gain',
         {'tft|random:0.0', 'mostly_defect|random:0.0'}, False),
        ('gain', 'equality',
         {'tft|random:0.0', 'mostly_defect|random:0.0'}, False),
    ))
    def test_dominance(self, heterogeneous_space, value_alpha, value_beta,
                       expected, pareto):
        report = equilibria.find_alignment_equilibria(
            heterogeneous_space, assignment(value_alpha, value_beta),
            path_length=6, exact=True)
        assert report.method == 'dominance'
        assert names(report.equilibria) == expected
        assert all(report.is_pareto_optimal(p) is pareto
                   for p in report.equilibria)
        assert len(report.alternatives) == 1
        assert len(report.equivalences) == 1

    def test_literal_gain(self, heterogeneous_space):
        report = equilibria.find_alignment_equilibria(
            heterogeneous_space, assignment('gain', 'gain'), method='nash',
            path_length=10, exact=True)
        assert names(report.equilibria) == {'mostly_defect|random:0.0'}
        assert report.equilibria == report.strict_equilibria

    def test_literal_equality(self, heterogeneous_space):
        report = equilibria.find_alignment_equilibria(
            heterogeneous_space, assignment('equality', 'equality'),
            path_length=10, exact=True)
        assert names(report.strict_equilibria) == {
            'tft|random:1.0', 'mostly_cooperate|random:1.0',
            'mostly_defect|random:0.0'}

    def test_ties_are_exact(self, heterogeneous_space):
        table = equilibria.AlignmentTable.compute(
            heterogeneous_space, assignment('equality', 'equality'),
            path_length=10, exact=True)
        tft, cooperate = heterogeneous_space.alpha_options[:2]
        beta = strategies.random_action(1)
        assert (table.alignment(strategies.StrategyProfile(tft, beta), ALPHA)
                == table.alignment(strategies.StrategyProfile(cooperate,
                                                              beta), ALPHA))


class TestReport:
    @pytest.fixture(scope='class')
    def report(self):
        space = equilibria.StrategySpace.heterogeneous((0.0, 0.5, 1.0))
        return equilibria.find_alignment_equilibria(
            space, assignment('equality', 'equality'), path_length=4,
            exact=True)

    def test_to_dict(self, report):
        document = report.to_dict()
        assert document['space'] == 'heterogeneous'
        assert document['value_alpha'] == 'equality'
        assert document['method'] == 'dominance'
        assert len(document['table']) == 9
        assert {e['profile'] for e in document['equilibria']} == {
            'tft|random:1.0', 'mostly_cooperate|random:1.0'}
        assert all(e['pareto_optimal'] for e in document['equilibria'])
        assert document['equivalences'] == [
            ['tft|random:1.0', 'mostly_cooperate|random:1.0']]
        json.dumps(document)

    def test_str(self, report):
        text = str(report)
        assert text.startswith('Equilibria (alpha: equality, beta: equality')
        assert 'tft|random:1.0' in text
        assert 'behavioral equivalences' in text

    def test_explicit_tolerance(self):
        space = equilibria.StrategySpace.random_grid((0.0, 1.0))
        report = equilibria.find_alignment_equilibria(
            space, assignment('equality', 'equality'), tol=0.05,
            path_length=3, exact=True)
        assert report.tolerance == 0.05
        assert names(report.equilibria) == random_names((0, 0), (1, 1))


class TestTable:
    def test_missing_entry(self):
        space = equilibria.StrategySpace.random_grid((0.0, 1.0))
        assign = assignment('gain', 'gain')
        table = equilibria.AlignmentTable(assign)
        with pytest.raises(exceptions.MissingTableEntryError):
            equilibria.is_alignment_equilibrium(space, space.profiles()[0],
                                                assign, table)

    def test_assignment_mismatch(self):
        space = equilibria.StrategySpace.random_grid((0.0, 1.0))
        table = equilibria.AlignmentTable.compute(
            space, assignment('gain', 'gain'), path_length=2, exact=True)
        with pytest.raises(ValueError):
            equilibria.find_pareto(space, assignment('equality', 'gain'),
                                   table)

    def test_precomputed_table(self):
        space = equilibria.StrategySpace.random_grid((0.0, 0.5, 1.0))
        assign = assignment('gain', 'gain')
        table = equilibria.AlignmentTable.compute(space, assign,
                                                  path_length=3, exact=True)
        report = equilibria.find_alignment_equilibria(space, assign,
                                                      table=table)
        assert report.table is table
        assert names(report.equilibria) == random_names((0, 0))


def test_dominates():
    space = equilibria.StrategySpace.random_grid((0.0, 1.0))
    table = equilibria.AlignmentTable.compute(
        space, assignment('gain', 'gain'), path_length=2, exact=True)
    defect, cooperate = space.profiles()[0], space.profiles()[3]
    assert equilibria.dominates(table, cooperate, defect)
    assert not equilibria.dominates(table, defect, cooperate)
    assert not equilibria.dominates(table, defect, defect)


def test_eliminate_dominated_gain():
    space = equilibria.StrategySpace.random_grid((0.0, 0.5, 1.0))
    table = equilibria.AlignmentTable.compute(
        space, assignment('gain', 'gain'), path_length=3, exact=True)
    reduced = equilibria.eliminate_dominated(space, table)
    assert [str(s) for s in reduced.alpha_options] == ['random:0.0']
    assert [str(s) for s in reduced.beta_options] == ['random:0.0']


def dominance_cycle_table(space):
    # Under tol=0.5, the second option beats the first, the third the
    # second and the first the third. Beta is indifferent.
    rows = ((0, 0, 0), (0.75, -0.375, -0.375), (0.375, 0.375, -0.75))
    table = equilibria.AlignmentTable(assignment('gain', 'gain'))
    for i, option in enumerate(space.alpha_options):
        for j, beta in enumerate(space.beta_options):
            table.add(strategies.StrategyProfile(option, beta), {
                ALPHA: alignment.AlignmentEstimate(rows[i][j], 0, 0, 1, True),
                BETA: alignment.AlignmentEstimate(0, 0, 0, 1, True)})
    return table


def test_eliminate_dominated_cycle():
    space = equilibria.StrategySpace.random_grid((0.0, 0.5, 1.0))
    table = dominance_cycle_table(space)
    reduced = equilibria.eliminate_dominated(space, table, tol=0.5)
    assert reduced.alpha_options == space.alpha_options
    assert reduced.beta_options == space.beta_options


def test_dominance_method_with_cycle():
    space = equilibria.StrategySpace.random_grid((0.0, 0.5, 1.0))
    report = equilibria.find_alignment_equilibria(
        space, assignment('gain', 'gain'), tol=0.5, method='dominance',
        table=dominance_cycle_table(space))
    assert report.method == 'dominance'
    assert all(profile in space for profile in report.equilibria)


def test_resolve_method():
    space = equilibria.StrategySpace.random_grid((0.0, 1.0))
    assert equilibria.resolve_method('auto', space) == 'nash'
    assert equilibria.resolve_method('dominance', space) == 'dominance'
    with pytest.raises(ValueError):
        equilibria.resolve_method('best', space)


class TestClassical:
    def test_default_matrix(self):
        nash = equilibria.classical_nash_check()
        assert [str(a) for a in nash] == ['DD']
        pareto = equilibria.classical_pareto_outcomes()
        assert [str(a) for a in pareto] == ['CC', 'CD', 'DC']

    def test_coordination_game(self):
        matrix = ipd.PayoffMatrix({'CC': (2, 2), 'CD': (0, 0),
                                   'DC': (0, 0), 'DD': (1, 1)})
        nash = equilibria.classical_nash_check(matrix)
        assert [str(a) for a in nash] == ['CC', 'DD']
        assert [str(a) for a in
                equilibria.classical_pareto_outcomes(matrix)] == ['CC']

    def test_indifferent(self):
        matrix = ipd.PayoffMatrix({code: (1, 1) for code in
                                   ('CC', 'CD', 'DC', 'DD')})
        assert len(equilibria.classical_nash_check(matrix)) == 4
        assert len(equilibria.classical_pareto_outcomes(matrix)) == 4


def test_value_assignment():
    assign = assignment('equality', values.ValueId.GAIN)
    assert assign.value_for(BETA) is values.ValueId.GAIN
    assert assign.targets == ((ALPHA, values.ValueId.EQUALITY),
                              (BETA, values.ValueId.GAIN))
    with pytest.raises(ValueError):
        assignment('equality', 'wealth')
