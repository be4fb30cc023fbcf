import unittest

import numpy as np

from src.core import catalog
from src.core.errors import ActionError, BudgetExceededError, GroupAxiomError, SpecError
from src.core.groups import (DirectProductGroup, GroupSpec, TableGroup, check_group_axioms,
                             parse_group_spec, realize)

S3_GENS = '{"kind": "perm-gens", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}'


class TestParseGroupSpec(unittest.TestCase):
    def test_malformed_json(self):
        with self.assertRaises(SpecError):
            parse_group_spec('{"kind": ')

    def test_unknown_kind(self):
        with self.assertRaises(SpecError):
            parse_group_spec('{"kind": "matrix-gens"}')

    def test_ragged_table(self):
        with self.assertRaises(SpecError):
            parse_group_spec('{"kind": "mult-table", "table": [[0, 1], [1]]}')

    def test_entry_out_of_range(self):
        with self.assertRaises(SpecError):
            parse_group_spec('{"kind": "mult-table", "table": [[0, 2], [1, 0]]}')

    def test_permutation_not_bijective(self):
        with self.assertRaises(SpecError):
            parse_group_spec('{"kind": "perm-gens", "degree": 3, "generators": [[0, 0, 1]]}')

    def test_unknown_family(self):
        with self.assertRaises(SpecError):
            parse_group_spec('{"kind": "family", "name": "monster", "params": []}')

    def test_unexpected_field(self):
        with self.assertRaises(SpecError):
            parse_group_spec('{"kind": "family", "name": "cyclic", "params": [2], "x": 1}')

    def test_emit_parses_back(self):
        spec = parse_group_spec(S3_GENS)
        again = parse_group_spec(spec.emit())
        self.assertEqual(spec, again)
        self.assertTrue(spec.emit().endswith('\n'))


class TestRealize(unittest.TestCase):
    def test_permutation_closure(self):
        group = realize(parse_group_spec(S3_GENS))
        self.assertEqual(group.order, 6)
        self.assertEqual(group.exponent, 6)

    def test_table_without_identity(self):
        with self.assertRaises(GroupAxiomError):
            TableGroup(np.zeros((2, 2), dtype=int))

    def test_non_associative_table(self):
        # Latin square with identity 0 where every element squares to 0; no group of order 5 does
        table = [[0, 1, 2, 3, 4],
                 [1, 0, 3, 4, 2],
                 [2, 4, 0, 1, 3],
                 [3, 2, 4, 0, 1],
                 [4, 3, 1, 2, 0]]
        spec = GroupSpec('mult-table', {'table': table})
        with self.assertRaises(GroupAxiomError):
            realize(spec)

    def test_direct_product(self):
        spec = GroupSpec('direct-product', {'factors': [catalog.cyclic(2), catalog.cyclic(3)]})
        group = realize(spec)
        self.assertIsInstance(group, DirectProductGroup)
        self.assertEqual(group.order, 6)
        self.assertEqual(group.exponent, 6)

    def test_semidirect_dihedral(self):
        spec = GroupSpec('semidirect', {
            'kernel': catalog.cyclic(3),
            'actor': catalog.cyclic(2),
            'action': [[0, 2, 1]],
        })
        group = realize(spec)
        self.assertEqual(group.order, 6)
        check_group_axioms(group)
        a, b = group.generators[:2]
        self.assertNotEqual(group.multiply(a, b), group.multiply(b, a))

    def test_action_not_automorphism(self):
        spec = GroupSpec('semidirect', {
            'kernel': catalog.cyclic(4),
            'actor': catalog.cyclic(2),
            'action': [[0, 2, 1, 3]],
        })
        with self.assertRaises(ActionError):
            realize(spec)

    def test_action_wrong_generator_count(self):
        spec = GroupSpec('semidirect', {
            'kernel': catalog.cyclic(3),
            'actor': catalog.cyclic(2),
            'action': [[0, 2, 1], [0, 1, 2]],
        })
        with self.assertRaises(ActionError):
            realize(spec)

    def test_budget(self):
        spec = parse_group_spec(
            '{"kind": "perm-gens", "degree": 5, "generators": [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]]}'
        )
        with self.assertRaises(BudgetExceededError):
            realize(spec, budget=50)

    def test_family_keeps_its_spec(self):
        spec = catalog.family_spec('dihedral', [8])
        group = realize(spec)
        self.assertEqual(group.order, 8)
        self.assertEqual(group.spec, spec)


if __name__ == '__main__':
    unittest.main()
