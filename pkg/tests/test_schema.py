import pytest

from valign import schema
from valign.exceptions import SubnodeValidationError, ValidationError


@pytest.mark.parametrize('node1, node2', (
    (schema.Bool(), schema.Bool()),
    (schema.Compilation({'spam': schema.Bool()}),
     schema.Compilation({'spam': schema.Bool()})),
    (schema.List(schema.Bool()), schema.List(schema.Bool())),
    (schema.Number('int'), schema.Number('int')),
    (schema.String(), schema.String()),
))
def test_eq(node1, node2):
    assert node1 == node2


@pytest.mark.parametrize('node1, node2', (
    (schema.Compilation({'spam': schema.Bool()}),
     schema.Compilation({'eggs': schema.Bool()})),
    (schema.Compilation({'spam': schema.Bool()}),
     schema.Compilation({'spam': schema.Bool()}, optionals=['spam'])),
    (schema.List(schema.Bool()), schema.List(schema.String())),
    (schema.Number('int'), schema.Number('float')),
    (schema.String(), schema.String(min_length=3)),
    (schema.Bool(), 'Bool'),
))
def test_ne(node1, node2):
    assert not node1 == node2


class TestBool:
    def test_validate(self):
        schema.Bool().validate(True)

    @pytest.mark.parametrize('value', (1, 'True', None))
    def test_validate_fail(self, value):
        with pytest.raises(ValidationError) as err:
            schema.Bool().validate(value)
        assert err.value.message == 'Invalid type/value.'
        assert err.value.expected == 'bool'


class TestCompilation:
    @pytest.fixture
    def node(self):
        return schema.Compilation({
            'spam': schema.Number('int', min_value=0),
            'eggs': schema.String(),
            'ham': schema.List(schema.Number(max_value=1)),
        }, optionals=['ham'], nullables=['eggs'])

    def test_sequence_options(self, node):
        assert node.optionals == ('ham',)
        assert node.nullables == ('eggs',)

    def test_validate(self, node):
        node.validate({'spam': 3, 'eggs': 'foo', 'ham': [0.5, 1]})
        node.validate({'spam': 3, 'eggs': None})

    def test_validate_fail_missing(self, node):
        with pytest.raises(SubnodeValidationError) as err:
            node.validate({'eggs': 'foo'})
        assert err.value.node_path() == 'spam'
        assert err.value.original_cause().message == 'Missing required key.'

    def test_validate_fail_unknown_key(self, node):
        with pytest.raises(SubnodeValidationError) as err:
            node.validate({'spam': 3, 'eggs': 'foo', 'bacon': 1})
        assert err.value.node_path() == 'bacon'
        assert err.value.original_cause().message == 'Unknown key.'

    def test_validate_fail_nested(self, node):
        with pytest.raises(SubnodeValidationError) as err:
            node.validate({'spam': 3, 'eggs': 'foo', 'ham': [0.5, 2]})
        assert err.value.node_path() == 'ham[1]'
        assert str(err.value) == (
            'Key "ham[1]" failed validation: Maximum value exceeded. '
            '(Expected: 1. Got: 2)')

    def test_validate_fail_not_nullable(self, node):
        with pytest.raises(SubnodeValidationError) as err:
            node.validate({'spam': None, 'eggs': 'foo'})
        assert err.value.node_path() == 'spam'

    def test_validate_fail_type(self, node):
        with pytest.raises(ValidationError):
            node.validate([1, 2])

    def test_validate_nested_compilation(self):
        node = schema.Compilation({'outer': schema.Compilation({
            'inner': schema.List(schema.Number('int'))})})
        with pytest.raises(SubnodeValidationError) as err:
            node.validate({'outer': {'inner': [1, 2.5]}})
        assert err.value.node_path() == 'outer.inner[1]'


class TestList:
    def test_validate(self):
        schema.List(schema.Bool()).validate([True, False])
        schema.List(schema.Bool()).validate((True,))

    def test_validate_fail_max_length(self):
        node = schema.List(schema.Bool(), max_length=1)
        with pytest.raises(ValidationError) as err:
            node.validate([True, False])
        assert err.value.message == 'Maximum list length exceeded.'
        assert err.value.expected == 1
        assert err.value.got == 2

    def test_validate_fail_min_length(self):
        node = schema.List(schema.Bool(), min_length=2)
        with pytest.raises(ValidationError) as err:
            node.validate([True])
        assert err.value.message == 'Minimum list length undercut.'

    def test_validate_fail_item(self):
        with pytest.raises(SubnodeValidationError) as err:
            schema.List(schema.Bool()).validate([True, 1])
        assert err.value.node_path() == '[1]'

    def test_validate_fail_type(self):
        with pytest.raises(ValidationError):
            schema.List(schema.Bool()).validate('spam')


class TestNumber:
    def test_init_fail(self):
        with pytest.raises(ValueError):
            schema.Number('complex')

    def test_validate(self):
        schema.Number('int', min_value=0, max_value=10).validate(10)
        schema.Number().validate(0.5)
        schema.Number().validate(3)

    @pytest.mark.parametrize('node,value', (
        (schema.Number('int'), 1.0),
        (schema.Number(), True),
        (schema.Number(), '1'),
        (schema.Number(), float('nan')),
    ))
    def test_validate_fail_type(self, node, value):
        with pytest.raises(ValidationError) as err:
            node.validate(value)
        assert err.value.message == 'Invalid type/value.'

    def test_validate_fail_max_value(self):
        with pytest.raises(ValidationError) as err:
            schema.Number(max_value=1).validate(1.5)
        assert err.value.message == 'Maximum value exceeded.'
        assert err.value.expected == 1
        assert err.value.got == 1.5

    def test_validate_fail_min_value(self):
        with pytest.raises(ValidationError) as err:
            schema.Number('int', min_value=1).validate(0)
        assert err.value.message == 'Minimum value undercut.'


class TestString:
    def test_validate(self):
        schema.String(min_length=1, max_length=4,
                      choices=['spam', 'eggs']).validate('spam')

    def test_validate_fail_type(self):
        with pytest.raises(ValidationError) as err:
            schema.String().validate(1)
        assert err.value.expected == 'str'

    def test_validate_fail_choices(self):
        with pytest.raises(ValidationError) as err:
            schema.String(choices=['spam', 'eggs']).validate('ham')
        assert err.value.message == 'Invalid choice.'
        assert err.value.got == 'ham'

    def test_validate_fail_max_length(self):
        with pytest.raises(ValidationError) as err:
            schema.String(max_length=3).validate('spam')
        assert err.value.message == 'Maximum string length exceeded.'

    def test_validate_fail_min_length(self):
        with pytest.raises(ValidationError) as err:
            schema.String(min_length=5).validate('spam')
        assert err.value.message == 'Minimum string length undercut.'
