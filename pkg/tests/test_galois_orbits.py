from collections import Counter
from dataclasses import replace

import pytest

from src.core.chartab import rows_of_degree
from src.core.errors import CyclotomicError, TableError
from src.core.galois_orbits import (GaloisOrbits, action_law_audit, conjugation_audit,
                                    conjugation_swaps, definitional_cross_check,
                                    galois_row_action, orbit_invariant_audit)


def test_c5_orbits(orbits_of):
    go = orbits_of('cyclic', 5)
    assert [orbit.rows for orbit in go.orbits] == [(0,), (1, 2, 3, 4)]
    assert go.orbits[1].field_index == 4
    assert go.orbits[1].size == 4
    assert go.orbit_of(3) == 1


def test_a5_orbits(orbits_of):
    go = orbits_of('alternating5')
    assert len(go.orbits) == 4
    assert [orbit.degree for orbit in go.orbits] == [1, 3, 4, 5]
    assert go.orbits[1].rows == (1, 2)
    assert go.orbits[1].field_index == 2


def test_rational_table_has_singleton_orbits(orbits_of):
    go = orbits_of('extraspecial', 2, 1, -1)
    assert len(go.orbits) == 5
    assert all(orbit.size == 1 and orbit.field_index == 1 for orbit in go.orbits)


def test_orbit_of_unknown_row(orbits_of):
    with pytest.raises(TableError):
        orbits_of('cyclic', 5).orbit_of(9)


def test_row_action(table_of):
    ct = table_of('cyclic', 5)
    perm = galois_row_action(ct, 2)
    assert perm[0] == 0
    assert sorted(perm) == [0, 1, 2, 3, 4]
    assert perm != (0, 1, 2, 3, 4)
    assert galois_row_action(ct, 1) == (0, 1, 2, 3, 4)


def test_row_action_rejects_non_unit(table_of):
    with pytest.raises(CyclotomicError):
        galois_row_action(table_of('cyclic', 5), 5)


@pytest.mark.parametrize('name, params', [
    ('cyclic', (5,)),
    ('dihedral', (6,)),
    ('extraspecial', (3, 1, 1)),
    ('alternating5', ()),
    ('psl27', ()),
])
def test_audits_pass(orbits_of, name, params):
    go = orbits_of(name, *params)
    for report in (orbit_invariant_audit(go), definitional_cross_check(go.table),
                   action_law_audit(go.table), conjugation_audit(go)):
        assert report.passed, report.failure


def test_broken_partition_is_caught(orbits_of):
    go = orbits_of('cyclic', 5)
    big = go.orbits[1]
    split = GaloisOrbits(go.table, (go.orbits[0], replace(big, rows=(1, 2)),
                                    replace(big, rows=(3, 4))))
    report = orbit_invariant_audit(split)
    assert not report.passed
    assert 'field index' in report.failure


def test_conjugation_swaps(table_of, orbits_of):
    go = orbits_of('psl27')
    pair = tuple(rows_of_degree(go.table, 3))
    assert conjugation_swaps(go, pair)
    real = orbits_of('alternating5')
    assert not conjugation_swaps(real, tuple(rows_of_degree(real.table, 3)))


def test_to_json(orbits_of):
    data = orbits_of('cyclic', 5).to_json()
    assert data['order'] == 5
    assert data['exponent'] == 5
    assert data['orbits'][1]['rows'] == [1, 2, 3, 4]
    assert data['orbits'][1]['kernel_classes'] == [0]


def test_v_rtimes_q8_seven_degree_eight_orbits(orbits_of):
    go = orbits_of('v_rtimes_q8', 7)
    assert len(rows_of_degree(go.table, 8)) == 6
    eights = [orbit for orbit in go.orbits if orbit.degree == 8]
    assert sorted(orbit.size for orbit in eights) == [3, 3]
    assert all(orbit.field_index == 3 for orbit in eights)


def test_v_rtimes_q8_three_degrees(table_of):
    ct = table_of('v_rtimes_q8', 3)
    assert Counter(ct.degrees) == Counter({1: 4, 2: 1, 8: 1})
    assert {ct.degrees[i] for i in ct.nonlinear_rows()} == {2, 8}
