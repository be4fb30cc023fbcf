"""Galois action on the rows of a character table and its orbit partition."""
import logging
from dataclasses import dataclass
from math import gcd
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from .chartab import AuditReport, CharacterTable, character_center, character_kernel
from .config import PERFORMANCE_CONFIG
from .cyclotomic import field_index
from .errors import CyclotomicError, TableError
from ..utils.numbers import euler_phi, unit_group_generators, units_mod

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitInfo:
    rows: Tuple[int, ...]
    degree: int
    field_index: int
    kernel_classes: FrozenSet[int]
    center_classes: FrozenSet[int]

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'rows': list(self.rows),
            'degree': self.degree,
            'field_index': self.field_index,
            'kernel_classes': sorted(self.kernel_classes),
            'center_classes': sorted(self.center_classes),
        }


@dataclass
class GaloisOrbits:
    """Orbit partition of Irr(G), numbered by least member row."""
    table: CharacterTable
    orbits: Tuple[OrbitInfo, ...]

    def orbit_of(self, row: int) -> int:
        for index, orbit in enumerate(self.orbits):
            if row in orbit.rows:
                return index
        raise TableError(f'row {row} is in no orbit')

    def to_json(self) -> Dict[str, Any]:
        return {
            'order': self.table.order,
            'exponent': self.table.e,
            'orbits': [orbit.to_dict() for orbit in self.orbits],
        }


def galois_row_action(ct: CharacterTable, k: int) -> Tuple[int, ...]:
    """Permutation pi with row pi(i) = sigma_k of row i, using chi(g)^sigma_k = chi(g^k)."""
    e = ct.e
    if gcd(k, e) != 1:
        raise CyclotomicError(f'{k} is not coprime to the exponent {e}')
    power = ct.classes.power_map(k)
    keys = ct.value_keys
    index = ct.row_index
    perm = []
    for i, row_keys in enumerate(keys):
        image = tuple(row_keys[power[c]] for c in range(ct.k))
        j = index.get(image)
        if j is None:
            raise TableError(f'no row matches the image of row {i} under k = {k}')
        perm.append(j)
    return tuple(perm)


def galois_orbits(ct: CharacterTable) -> GaloisOrbits:
    k = ct.k
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in unit_group_generators(ct.e):
        for i, j in enumerate(galois_row_action(ct, g)):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)

    members: Dict[int, List[int]] = {}
    for i in range(k):
        members.setdefault(find(i), []).append(i)
    orbits = []
    for root in sorted(members):
        rows = tuple(members[root])
        first = rows[0]
        orbits.append(OrbitInfo(
            rows=rows,
            degree=ct.degrees[first],
            field_index=field_index(ct.values[first], ct.e),
            kernel_classes=character_kernel(ct, first),
            center_classes=character_center(ct, first),
        ))
    logger.info(f'{k} characters fall into {len(orbits)} Galois orbits')
    return GaloisOrbits(table=ct, orbits=tuple(orbits))


def orbit_invariant_audit(go: GaloisOrbits) -> AuditReport:
    """Members of an orbit share degree, kernel and center; each orbit has size [Q(chi):Q]."""
    name = 'orbit-invariants'
    ct = go.table
    phi = euler_phi(ct.e)
    seen = sorted(i for orbit in go.orbits for i in orbit.rows)
    if seen != list(range(ct.k)):
        return AuditReport(name, False, 'orbits do not partition the rows')
    for n, orbit in enumerate(go.orbits):
        for i in orbit.rows:
            failure = None
            if ct.degrees[i] != orbit.degree:
                failure = 'degree'
            elif character_kernel(ct, i) != orbit.kernel_classes:
                failure = 'kernel'
            elif character_center(ct, i) != orbit.center_classes:
                failure = 'center'
            elif field_index(ct.values[i], ct.e) != orbit.size:
                failure = 'field index'
            if failure:
                return AuditReport(name, False, f'orbit {n}: {failure} differs at row {i}')
        if phi % orbit.size:
            return AuditReport(name, False, f'orbit {n}: size does not divide phi(e)')
    return AuditReport(name, True)


def definitional_cross_check(ct: CharacterTable, samples: Optional[int] = None,
                             seed: Optional[int] = None) -> AuditReport:
    """Apply sigma_k value by value to random rows and compare with the power-map action."""
    samples = samples or PERFORMANCE_CONFIG['cross_check_samples']
    rng = np.random.default_rng(PERFORMANCE_CONFIG['axiom_seed'] if seed is None else seed)
    units = units_mod(ct.e)
    for _ in range(samples):
        i = int(rng.integers(0, ct.k))
        k = int(units[int(rng.integers(0, len(units)))])
        j = galois_row_action(ct, k)[i]
        image = tuple(v.galois(k) for v in ct.values[i])
        if image != ct.values[j]:
            return AuditReport('definitional-cross-check', False,
                               f'sigma_{k} of row {i} differs from row {j}')
    return AuditReport('definitional-cross-check', True)


def action_law_audit(ct: CharacterTable, pairs: int = 8) -> AuditReport:
    """pi_{k k'} = pi_k o pi_{k'} on sampled unit pairs."""
    e = ct.e
    units = units_mod(e)
    rng = np.random.default_rng(PERFORMANCE_CONFIG['axiom_seed'])
    for _ in range(pairs):
        a, b = (int(units[int(x)]) for x in rng.integers(0, len(units), size=2))
        left, right = galois_row_action(ct, a), galois_row_action(ct, b)
        both = galois_row_action(ct, a * b % e)
        if any(both[i] != left[right[i]] for i in range(ct.k)):
            return AuditReport('action-laws', False, f'composition fails for k = {a}, {b}')
    return AuditReport('action-laws', True)


def conjugation_audit(go: GaloisOrbits) -> AuditReport:
    """Complex conjugation maps every orbit onto an orbit of the same degree."""
    ct = go.table
    conj = galois_row_action(ct, -1)
    for n, orbit in enumerate(go.orbits):
        targets = {go.orbit_of(conj[i]) for i in orbit.rows}
        if len(targets) != 1:
            return AuditReport('conjugation', False, f'orbit {n} is split by complex conjugation')
        if go.orbits[targets.pop()].degree != orbit.degree:
            return AuditReport('conjugation', False, f'orbit {n} changes degree under conjugation')
    return AuditReport('conjugation', True)


def conjugation_swaps(go: GaloisOrbits, rows: Tuple[int, int]) -> bool:
    conj = galois_row_action(go.table, -1)
    a, b = rows
    return conj[a] == b and conj[b] == a
