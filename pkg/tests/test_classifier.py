from math import gcd
from unittest import mock

import pytest

from src.core import catalog
from src.core.chartab import character_kernel, rows_of_degree
from src.core.classifier import (NotGCStarReason, StructuralClass, center_classes,
                                 classify_spec, classify_structure, consistency_of,
                                 corollary_b_classify, corollary_b_label, expected_matches,
                                 frobenius_count_audit, quotient_rows, recognize_nonsolvable,
                                 structural_audits, theorem_a_consistency, type_a_audit,
                                 verdict_by_definition, verdict_on_rows)
from src.core.config import PERFORMANCE_CONFIG
from src.core.groups import GroupSpec, TableGroup, parse_group_spec, realize_shared
from src.core.structure import conjugacy_classes, frobenius_decomposition

S5 = '{"kind": "perm-gens", "degree": 5, "generators": [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]]}'


def product(left, right):
    return GroupSpec('direct-product', {'factors': [left, right]})


def negative(reason):
    return StructuralClass('NotGCStar', (reason.value,))


# -- structural classification ------------------------------------------------------------

@pytest.mark.parametrize('name, params, expected', [
    ('cyclic', (12,), StructuralClass('Abelian')),
    ('abelian', (2, 2), StructuralClass('Abelian')),
    ('extraspecial', (2, 1, -1), StructuralClass('TypeA', (2,))),
    ('dihedral', (8,), StructuralClass('TypeA', (2,))),
    ('extraspecial', (3, 1, 2), StructuralClass('TypeA', (3,))),
    ('modular_maximal_cyclic', (2, 4), StructuralClass('TypeA', (2,))),
    ('dihedral', (16,), negative(NotGCStarReason.P_GROUP_DERIVED_NOT_PRIME)),
    ('affine_frobenius', (3, 1, 1), StructuralClass('TypeB2', (3, 1, 1))),
    ('affine_frobenius', (2, 2, 1), StructuralClass('TypeB2', (2, 2, 1))),
    ('affine_frobenius', (5, 1, 2), StructuralClass('TypeB2', (5, 1, 2))),
    ('affine_frobenius', (3, 2, 2), negative(NotGCStarReason.D_NOT_COPRIME_TO_N)),
    ('affine_frobenius', (2, 4, 3), negative(NotGCStarReason.D_NOT_DIVIDING_Q_MINUS_1)),
    ('affine_frobenius', (3, 2, 4), negative(NotGCStarReason.KERNEL_NOT_MINIMAL_NORMAL)),
    ('v_rtimes_q8', (3,), StructuralClass('TypeB1')),
    ('v_rtimes_q8', (7,), negative(NotGCStarReason.Q8_KERNEL_NOT_9)),
    ('dihedral', (30,), negative(NotGCStarReason.KERNEL_NOT_PRIME_POWER)),
    ('dihedral', (18,), negative(NotGCStarReason.KERNEL_NOT_ELEMENTARY_ABELIAN)),
    ('symmetric4', (), negative(NotGCStarReason.NOT_FROBENIUS)),
    ('alternating5', (), StructuralClass('TypeC', ('A5',))),
    ('psl27', (), StructuralClass('TypeC', ('L3(2)',))),
])
def test_classify_structure(realized, name, params, expected):
    assert classify_structure(realized(name, *params)) == expected


def test_suzuki_frobenius(realized):
    result = classify_structure(realized('suzuki_frobenius', 3))
    assert result == StructuralClass('TypeB3', (3,))
    assert result.witnesses['kernel_order'] == 64
    assert result.witnesses['complement_order'] == 7
    assert result.witnesses['kernel_derived_order'] == 8


def test_frobenius_witnesses(realized):
    result = classify_structure(realized('affine_frobenius', 5, 2, 2))
    assert result == negative(NotGCStarReason.D_NOT_COPRIME_TO_N)
    assert result.witnesses == {'kernel_order': 25, 'complement_order': 12, 'd': 2}


def test_nonsolvable_not_perfect():
    group = realize_shared(parse_group_spec(S5))
    assert classify_structure(group) == negative(NotGCStarReason.NONSOLVABLE_NOT_PERFECT)


def test_nilpotent_not_p_group():
    group = realize_shared(product(catalog.extraspecial(2, 1, -1), catalog.cyclic(3)))
    flat = TableGroup(group.table)
    assert classify_structure(flat) == negative(NotGCStarReason.NILPOTENT_NOT_P_GROUP)


def test_center_not_cyclic():
    group = realize_shared(product(catalog.dihedral(8), catalog.cyclic(2)))
    flat = TableGroup(group.table)
    result = classify_structure(flat)
    assert result == negative(NotGCStarReason.P_GROUP_CENTER_NOT_CYCLIC)
    assert result.witnesses == {'derived_order': 2, 'center_order': 4}


@pytest.mark.parametrize('left, right, expected', [
    (catalog.cyclic(2), catalog.dihedral(6),
     negative(NotGCStarReason.DIRECT_FACTOR_NOT_PERFECT)),
    (catalog.cyclic(2), catalog.extraspecial(2, 1, -1),
     negative(NotGCStarReason.DIRECT_FACTOR_NOT_PERFECT)),
    (catalog.cyclic(2), catalog.cyclic(3), StructuralClass('Abelian')),
])
def test_direct_products(left, right, expected):
    assert classify_spec(product(left, right)) == expected


def test_product_classified_from_factors():
    spec = product(catalog.cyclic(2), catalog.dihedral(6))
    with mock.patch.dict(PERFORMANCE_CONFIG, {'structure_realize_limit': 10}):
        result = classify_spec(spec)
    assert result == negative(NotGCStarReason.DIRECT_FACTOR_NOT_PERFECT)


def test_product_of_simple_groups_outside_catalog():
    spec = product(catalog.alternating5(), catalog.psl27())
    with mock.patch.dict(PERFORMANCE_CONFIG, {'structure_realize_limit': 200}):
        result = classify_spec(spec)
    assert result == negative(NotGCStarReason.NOT_IN_CATALOG)


def test_catalog_only_recognition():
    fp = catalog.fingerprint('J2')
    result = recognize_nonsolvable(order=fp.order)
    assert (result.tag, result.params) == ('TypeC', ('J2',))
    assert result.catalog_only
    assert result.to_dict()['note'] == catalog.CATALOG_ONLY_NOTE
    assert recognize_nonsolvable(order=61) is None


def test_structural_class_text():
    assert str(StructuralClass('TypeB2', (3, 1, 1))) == 'TypeB2(3, 1, 1)'
    assert str(StructuralClass('Abelian')) == 'Abelian'
    assert not negative(NotGCStarReason.NOT_FROBENIUS).positive
    assert StructuralClass('TypeB1').to_dict() == {'tag': 'TypeB1', 'params': []}


# -- definitional verdicts ----------------------------------------------------------------

def test_klein_four_is_not_gc(table_of, orbits_of):
    ct = table_of('abelian', 2, 2)
    verdict = verdict_by_definition(ct, orbits_of('abelian', 2, 2))
    assert verdict.gcstar
    assert not verdict.gc
    assert verdict.distinct_degrees
    assert verdict.witness_list() == [{'predicate': 'gc', 'rows': [1, 2]}]


def test_cyclic_prime_is_gc(table_of, orbits_of):
    verdict = verdict_by_definition(table_of('cyclic', 5), orbits_of('cyclic', 5))
    assert verdict.gcstar and verdict.gc and verdict.distinct_degrees
    assert verdict.witness == {}


def test_a5_verdict(table_of, orbits_of):
    verdict = verdict_by_definition(table_of('alternating5'), orbits_of('alternating5'))
    assert verdict.gcstar
    assert verdict.gc
    assert not verdict.distinct_degrees
    assert verdict.witness['distinct_degrees'] == (1, 2)


def test_s4_verdict(table_of, orbits_of):
    ct = table_of('symmetric4')
    verdict = verdict_by_definition(ct, orbits_of('symmetric4'))
    assert not verdict.gcstar
    assert verdict.witness['gcstar'] == tuple(rows_of_degree(ct, 3))


def test_rational_degree_twelve_rows(table_of, orbits_of):
    ct = table_of('affine_frobenius', 5, 2, 2)
    go = orbits_of('affine_frobenius', 5, 2, 2)
    rows = rows_of_degree(ct, 12)
    assert len(rows) == 2
    assert all(go.orbits[go.orbit_of(i)].field_index == 1 for i in rows)
    verdict = verdict_by_definition(ct, go)
    assert not verdict.gcstar
    assert verdict.witness['gcstar'] == tuple(rows)


def test_gcstar_passes_to_quotients(realized, table_of, orbits_of):
    group = realized('v_rtimes_q8', 3)
    ct = table_of('v_rtimes_q8', 3)
    kernel, _ = frobenius_decomposition(group)
    rows = quotient_rows(ct, conjugacy_classes(group).classes_of(kernel.members))
    assert len(rows) == 5
    assert sorted(ct.degrees[i] for i in rows) == [1, 1, 1, 1, 2]
    assert verdict_on_rows(ct, orbits_of('v_rtimes_q8', 3), rows)


def test_quotient_by_center(table_of, orbits_of):
    ct = table_of('extraspecial', 2, 1, -1)
    rows = quotient_rows(ct, center_classes(ct))
    assert rows == [0, 1, 2, 3]
    assert verdict_on_rows(ct, orbits_of('extraspecial', 2, 1, -1), rows)


@pytest.mark.parametrize('name, params', [
    ('extraspecial', (3, 1, 2)),
    ('affine_frobenius', (2, 3, 1)),
    ('affine_frobenius', (5, 1, 2)),
    ('v_rtimes_q8', (3,)),
    ('alternating5', ()),
])
def test_every_kernel_quotient_keeps_gcstar(table_of, orbits_of, name, params):
    ct = table_of(name, *params)
    go = orbits_of(name, *params)
    for i in range(ct.k):
        assert verdict_on_rows(ct, go, quotient_rows(ct, character_kernel(ct, i)))


# -- agreement ----------------------------------------------------------------------------

@pytest.mark.parametrize('name, params', [
    ('extraspecial', (2, 1, -1)),
    ('extraspecial', (3, 1, 1)),
    ('affine_frobenius', (2, 3, 1)),
    ('affine_frobenius', (3, 2, 2)),
    ('v_rtimes_q8', (3,)),
    ('symmetric4', ()),
    ('alternating5', ()),
])
def test_theorem_a_consistency(name, params):
    report = theorem_a_consistency(catalog.family_spec(name, list(params)))
    assert report.consistent
    assert not report.structural_only
    assert report.to_dict()['consistent']


def test_consistency_of_disagreement(table_of, orbits_of):
    verdict = verdict_by_definition(table_of('symmetric4'), orbits_of('symmetric4'))
    report = consistency_of(StructuralClass('TypeB1'), verdict)
    assert not report.consistent


def test_consistency_without_verdict():
    report = consistency_of(StructuralClass('TypeC', ('J2',)), None)
    assert report.consistent
    assert report.structural_only


@pytest.mark.parametrize('name, params, label, distinct', [
    ('cyclic', (4,), 'abelian', True),
    ('extraspecial', (2, 1, -1), 'extraspecial-2', True),
    ('extraspecial', (2, 2, 1), 'extraspecial-2', True),
    ('v_rtimes_q8', (3,), 'B1', True),
    ('affine_frobenius', (3, 1, 1), 'B2-with-d=1', True),
    ('affine_frobenius', (5, 1, 2), 'none', False),
    ('extraspecial', (3, 1, 1), 'none', False),
    ('alternating5', (), 'none', False),
])
def test_corollary_b(name, params, label, distinct):
    report = corollary_b_classify(catalog.family_spec(name, list(params)))
    assert report.label == label
    assert report.distinct_degrees is distinct
    assert report.passed


def test_corollary_b_label_needs_small_center():
    assert corollary_b_label(StructuralClass('TypeA', (2,), {'center_order': 4})) == 'none'
    assert corollary_b_label(StructuralClass('TypeA', (3,), {'center_order': 3})) == 'none'


# -- audits -------------------------------------------------------------------------------

def test_type_a_audit(table_of):
    assert type_a_audit(table_of('extraspecial', 2, 1, -1), 2).passed
    assert type_a_audit(table_of('extraspecial', 3, 1, 2), 3).passed
    report = type_a_audit(table_of('dihedral', 6), 2)
    assert not report.passed
    assert report.name == 'type-a-count'


def test_frobenius_count_audit(table_of):
    assert frobenius_count_audit(table_of('affine_frobenius', 2, 3, 1), 2, 3, 1).passed
    assert frobenius_count_audit(table_of('affine_frobenius', 5, 1, 2), 5, 1, 2).passed
    assert not frobenius_count_audit(table_of('affine_frobenius', 2, 3, 1), 2, 3, 7).passed


@pytest.mark.parametrize('q, n, d', [
    (2, 3, 1), (3, 2, 2), (5, 1, 2), (5, 2, 1), (5, 2, 2), (7, 1, 3),
])
def test_affine_frobenius_count_law(realized, table_of, orbits_of, q, n, d):
    ct = table_of('affine_frobenius', q, n, d)
    nonlinear = ct.nonlinear_rows()
    assert len(nonlinear) == d
    assert {ct.degrees[i] for i in nonlinear} == {(q ** n - 1) // d}
    assert frobenius_count_audit(ct, q, n, d).passed
    structural = classify_structure(realized('affine_frobenius', q, n, d), ct)
    listed = (q - 1) % d == 0 and gcd(d, n) == 1
    assert (structural == StructuralClass('TypeB2', (q, n, d))) == listed
    assert verdict_by_definition(ct, orbits_of('affine_frobenius', q, n, d)).gcstar == listed


def test_suzuki_audits(realized, table_of, orbits_of):
    group = realized('suzuki_frobenius', 3)
    ct = table_of('suzuki_frobenius', 3)
    assert sorted(ct.degrees[i] for i in ct.nonlinear_rows()) == [7, 14, 14]
    structural = classify_structure(group, ct)
    audits = structural_audits(structural, ct, orbits_of('suzuki_frobenius', 3), group)
    assert [a.name for a in audits] == ['suzuki']
    assert audits[0].passed, audits[0].failure


def test_expected_matches():
    structural = StructuralClass('TypeB2', (3, 1, 1))
    assert expected_matches(structural, 'TypeB2', [3, 1, 1])
    assert expected_matches(structural, None, [])
    assert not expected_matches(structural, 'TypeB2', [3, 1, 2])
    assert not expected_matches(structural, 'TypeB1', [])
