"""GC*, GC and distinct-degree verdicts, the structural classification and their agreement."""
import logging
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import catalog
from .chartab import (AuditReport, CharacterTable, character_kernel, character_table,
                      direct_product_table, fully_ramified_audit, rows_of_degree)
from .config import PERFORMANCE_CONFIG
from .errors import BudgetExceededError
from .galois_orbits import GaloisOrbits, conjugation_swaps, galois_orbits
from .groups import DirectProductGroup, Group, GroupSpec, TableGroup, realize_shared
from .structure import (Subgroup, center, conjugacy_classes, derived_subgroup,
                        frobenius_decomposition, is_abelian, is_cyclic, is_elementary_abelian,
                        is_minimal_normal_under, is_nilpotent, is_p_group, is_perfect,
                        is_solvable, is_suzuki_2group_kernel)

logger = logging.getLogger(__name__)


class NotGCStarReason(str, Enum):
    P_GROUP_DERIVED_NOT_PRIME = 'P_GROUP_DERIVED_NOT_PRIME'
    P_GROUP_CENTER_NOT_CYCLIC = 'P_GROUP_CENTER_NOT_CYCLIC'
    NILPOTENT_NOT_P_GROUP = 'NILPOTENT_NOT_P_GROUP'
    NOT_FROBENIUS = 'NOT_FROBENIUS'
    KERNEL_NOT_PRIME_POWER = 'KERNEL_NOT_PRIME_POWER'
    COMPLEMENT_NOT_CYCLIC_OR_Q8 = 'COMPLEMENT_NOT_CYCLIC_OR_Q8'
    Q8_KERNEL_NOT_9 = 'Q8_KERNEL_NOT_9'
    KERNEL_NOT_ELEMENTARY_ABELIAN = 'KERNEL_NOT_ELEMENTARY_ABELIAN'
    KERNEL_NOT_MINIMAL_NORMAL = 'KERNEL_NOT_MINIMAL_NORMAL'
    D_NOT_DIVIDING_Q_MINUS_1 = 'D_NOT_DIVIDING_Q_MINUS_1'
    D_NOT_COPRIME_TO_N = 'D_NOT_COPRIME_TO_N'
    KERNEL_NOT_SUZUKI = 'KERNEL_NOT_SUZUKI'
    NONSOLVABLE_NOT_PERFECT = 'NONSOLVABLE_NOT_PERFECT'
    NOT_IN_CATALOG = 'NOT_IN_CATALOG'
    DIRECT_FACTOR_NOT_PERFECT = 'DIRECT_FACTOR_NOT_PERFECT'


POSITIVE_TAGS = ('Abelian', 'TypeA', 'TypeB1', 'TypeB2', 'TypeB3', 'TypeC')


@dataclass(frozen=True)
class StructuralClass:
    tag: str
    params: Tuple[Any, ...] = ()
    witnesses: Dict[str, Any] = field(default_factory=dict, compare=False)
    note: Optional[str] = None

    @property
    def positive(self) -> bool:
        return self.tag != 'NotGCStar'

    @property
    def catalog_only(self) -> bool:
        return self.note == catalog.CATALOG_ONLY_NOTE

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'tag': self.tag, 'params': list(self.params)}
        if self.note:
            data['note'] = self.note
        return data

    def __str__(self) -> str:
        if not self.params:
            return self.tag
        return f"{self.tag}({', '.join(str(p) for p in self.params)})"


def _negative(reason: NotGCStarReason, **witnesses: Any) -> StructuralClass:
    return StructuralClass('NotGCStar', (reason.value,), witnesses)


@dataclass
class Verdict:
    """Definitional verdicts; ``witness`` maps each false predicate to a pair of rows."""
    gcstar: bool
    gc: bool
    distinct_degrees: bool
    witness: Dict[str, Tuple[int, int]] = field(default_factory=dict)

    def witness_list(self) -> List[Dict[str, Any]]:
        return [{'predicate': name, 'rows': list(rows)}
                for name, rows in sorted(self.witness.items())]


# -- definitional side --------------------------------------------------------------------

def _same_orbit_witness(ct: CharacterTable, go: GaloisOrbits,
                        rows: Iterable[int]) -> Optional[Tuple[int, int]]:
    """First pair of same-degree rows lying in different orbits."""
    by_degree: Dict[int, List[int]] = {}
    for i in rows:
        by_degree.setdefault(ct.degrees[i], []).append(i)
    for degree in sorted(by_degree):
        members = by_degree[degree]
        first = members[0]
        home = go.orbit_of(first)
        for other in members[1:]:
            if go.orbit_of(other) != home:
                return first, other
    return None


def verdict_on_rows(ct: CharacterTable, go: GaloisOrbits, rows: Iterable[int]) -> bool:
    """GC* restricted to a set of rows, such as the characters inflated from a quotient."""
    nonlinear = [i for i in rows if ct.degrees[i] > 1]
    return _same_orbit_witness(ct, go, nonlinear) is None


def verdict_by_definition(ct: CharacterTable, go: GaloisOrbits) -> Verdict:
    degrees = ct.degrees
    nonlinear = [i for i in range(ct.k) if degrees[i] > 1]
    nonprincipal = list(range(1, ct.k))
    witness: Dict[str, Tuple[int, int]] = {}

    gcstar_pair = _same_orbit_witness(ct, go, nonlinear)
    if gcstar_pair:
        witness['gcstar'] = gcstar_pair
    gc_pair = _same_orbit_witness(ct, go, nonprincipal)
    if gc_pair:
        witness['gc'] = gc_pair
    seen: Dict[int, int] = {}
    for i in nonlinear:
        if degrees[i] in seen:
            witness['distinct_degrees'] = (seen[degrees[i]], i)
            break
        seen[degrees[i]] = i

    verdict = Verdict(
        gcstar=gcstar_pair is None,
        gc=gc_pair is None,
        distinct_degrees='distinct_degrees' not in witness,
        witness=witness,
    )
    logger.info(f'Definitional verdict: gcstar={verdict.gcstar} gc={verdict.gc} '
                f'distinct_degrees={verdict.distinct_degrees}')
    return verdict


def quotient_rows(ct: CharacterTable, normal_classes: Iterable[int]) -> List[int]:
    """Rows whose kernel contains the normal subgroup given as a union of classes."""
    normal = frozenset(normal_classes)
    return [i for i in range(ct.k) if normal <= character_kernel(ct, i)]


# -- structural side ----------------------------------------------------------------------

def _is_q8(sub: Subgroup) -> bool:
    if sub.order != 8:
        return False
    orders = sub.parent.element_orders[sub.members]
    return int((orders == 2).sum()) == 1 and not is_cyclic(sub)


def recognize_nonsolvable(group: Optional[Group] = None, ct: Optional[CharacterTable] = None,
                          order: Optional[int] = None) -> Optional[StructuralClass]:
    """Match against the simple-group catalog by order, class count and degrees."""
    if order is None:
        order = group.order if group is not None else ct.order
    candidates = [fp for fp in catalog.simple_group_catalog() if fp.order == order]
    if not candidates:
        return None
    class_count = None
    degrees = None
    if ct is not None:
        class_count, degrees = ct.k, ct.degrees
    elif group is not None and order <= PERFORMANCE_CONFIG['structure_realize_limit']:
        class_count = conjugacy_classes(group).k
    for fp in candidates:
        if fp.catalog_only:
            return StructuralClass('TypeC', (fp.name,), {'order': order},
                                   catalog.CATALOG_ONLY_NOTE)
        if fp.matches(order, class_count, degrees):
            return StructuralClass('TypeC', (fp.name,),
                                   {'order': order, 'class_count': fp.class_count})
    return None


def _direct_factor_obstruction(left: Group, right: Group) -> bool:
    for b, c in ((left, right), (right, left)):
        if not is_perfect(b) and c.order > 1 and not is_abelian(c):
            return True
    return False


def _classify_p_group(group: Group, p: int) -> StructuralClass:
    derived = derived_subgroup(group)
    z = center(group)
    witnesses = {'derived_order': derived.order, 'center_order': z.order}
    if derived.order != p:
        return _negative(NotGCStarReason.P_GROUP_DERIVED_NOT_PRIME, **witnesses)
    if not is_cyclic(z):
        return _negative(NotGCStarReason.P_GROUP_CENTER_NOT_CYCLIC, **witnesses)
    return StructuralClass('TypeA', (p,), witnesses)


def _classify_frobenius(group: Group) -> StructuralClass:
    decomposition = frobenius_decomposition(group)
    if decomposition is None:
        return _negative(NotGCStarReason.NOT_FROBENIUS)
    kernel, complement = decomposition
    witnesses: Dict[str, Any] = {'kernel_order': kernel.order,
                                 'complement_order': complement.order}
    if is_p_group(kernel) is None:
        return _negative(NotGCStarReason.KERNEL_NOT_PRIME_POWER, **witnesses)
    q8 = _is_q8(complement)
    if not q8 and not is_cyclic(complement):
        return _negative(NotGCStarReason.COMPLEMENT_NOT_CYCLIC_OR_Q8, **witnesses)

    elementary = is_elementary_abelian(kernel)
    if q8:
        if kernel.order != 9:
            return _negative(NotGCStarReason.Q8_KERNEL_NOT_9, **witnesses)
        if elementary is None or not is_minimal_normal_under(group, kernel):
            return _negative(NotGCStarReason.KERNEL_NOT_MINIMAL_NORMAL, **witnesses)
        return StructuralClass('TypeB1', (), witnesses)

    if elementary is not None:
        q, n = elementary
        if not is_minimal_normal_under(group, kernel):
            return _negative(NotGCStarReason.KERNEL_NOT_MINIMAL_NORMAL, **witnesses)
        d = (q ** n - 1) // complement.order
        witnesses['d'] = d
        if (q - 1) % d:
            return _negative(NotGCStarReason.D_NOT_DIVIDING_Q_MINUS_1, **witnesses)
        if gcd(d, n) != 1:
            return _negative(NotGCStarReason.D_NOT_COPRIME_TO_N, **witnesses)
        return StructuralClass('TypeB2', (q, n, d), witnesses)

    if is_abelian(kernel):
        return _negative(NotGCStarReason.KERNEL_NOT_ELEMENTARY_ABELIAN, **witnesses)
    if not is_suzuki_2group_kernel(kernel, complement):
        return _negative(NotGCStarReason.KERNEL_NOT_SUZUKI, **witnesses)
    derived_order = derived_subgroup(group, kernel).order
    witnesses['kernel_derived_order'] = derived_order
    return StructuralClass('TypeB3', (derived_order.bit_length() - 1,), witnesses)


def classify_structure(group: Group, ct: Optional[CharacterTable] = None) -> StructuralClass:
    """Decide the structural type of a realized group."""
    if is_abelian(group):
        result = StructuralClass('Abelian')
    elif isinstance(group, DirectProductGroup) and _direct_factor_obstruction(*group.factors):
        result = _negative(NotGCStarReason.DIRECT_FACTOR_NOT_PERFECT)
    elif is_nilpotent(group):
        p = is_p_group(group)
        if p is None:
            result = _negative(NotGCStarReason.NILPOTENT_NOT_P_GROUP)
        else:
            result = _classify_p_group(group, p)
    elif is_solvable(group):
        result = _classify_frobenius(group)
    elif not is_perfect(group):
        result = _negative(NotGCStarReason.NONSOLVABLE_NOT_PERFECT)
    else:
        recognized = recognize_nonsolvable(group, ct)
        result = recognized or _negative(NotGCStarReason.NOT_IN_CATALOG)
    logger.info(f'Structural class of order-{group.order} group: {result}')
    return result


@dataclass(frozen=True)
class _FactorProfile:
    structural: StructuralClass
    abelian: bool
    perfect: bool
    trivial: bool


def _profile(spec: GroupSpec, budget: Optional[int] = None) -> _FactorProfile:
    order = catalog.spec_order(spec)
    if (spec.kind == 'direct-product' and order is not None
            and order > PERFORMANCE_CONFIG['structure_realize_limit']):
        structural = _classify_product(spec, budget=budget)
        return _FactorProfile(structural, structural.tag == 'Abelian',
                              structural.tag == 'TypeC', order == 1)
    group = realize_shared(spec, budget)
    return _FactorProfile(classify_structure(group), is_abelian(group), is_perfect(group),
                          group.order == 1)


def _classify_product(spec: GroupSpec, ct: Optional[CharacterTable] = None,
                     budget: Optional[int] = None) -> StructuralClass:
    """Classify a direct product from its factors without realizing it."""
    left, right = (_profile(f, budget) for f in spec.payload['factors'])
    if left.abelian and right.abelian:
        return StructuralClass('Abelian')
    for b, c in ((left, right), (right, left)):
        if not b.perfect and not c.trivial and not c.abelian:
            return _negative(NotGCStarReason.DIRECT_FACTOR_NOT_PERFECT)
    if left.structural.tag == 'TypeC' and right.structural.tag == 'TypeC':
        name = f'{left.structural.params[0]} x {right.structural.params[0]}'
        order = catalog.spec_order(spec)
        for fp in catalog.simple_group_catalog():
            if fp.name != name:
                continue
            degrees = ct.degrees if ct is not None else None
            if fp.matches(order, ct.k if ct is not None else None, degrees):
                note = catalog.CATALOG_ONLY_NOTE if fp.catalog_only else None
                return StructuralClass('TypeC', (name,), {'order': order}, note)
    return _negative(NotGCStarReason.NOT_IN_CATALOG)


def classify_spec(spec: GroupSpec, ct: Optional[CharacterTable] = None,
                  group: Optional[Group] = None,
                  budget: Optional[int] = None) -> StructuralClass:
    """Structural class of a spec, compositionally for direct products too large to realize."""
    order = catalog.spec_order(spec)
    if (group is None and spec.kind == 'direct-product' and order is not None
            and order > PERFORMANCE_CONFIG['structure_realize_limit']):
        logger.info(f'Classifying {spec.display_name} from its factors')
        return _classify_product(spec, ct, budget)
    if group is None:
        group = realize_shared(spec, budget)
    return classify_structure(group, ct)


# -- tables for consistency checks --------------------------------------------------------

def table_for_group(group: Group) -> CharacterTable:
    """Character table, tensoring factor tables for direct products."""
    if isinstance(group, DirectProductGroup):
        left, right = group.factors
        return direct_product_table(table_for_group(left), table_for_group(right))
    return character_table(group)


def table_for_spec(spec: GroupSpec) -> CharacterTable:
    if spec.kind == 'direct-product':
        left, right = spec.payload['factors']
        return direct_product_table(table_for_spec(left), table_for_spec(right))
    return character_table(realize_shared(spec))


# -- agreement reports --------------------------------------------------------------------

@dataclass
class ConsistencyReport:
    structural: StructuralClass
    verdict: Optional[Verdict]
    consistent: bool
    structural_only: bool = False
    note: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'structural': self.structural.to_dict(),
            'consistent': self.consistent,
            'structural_only': self.structural_only,
        }
        if self.verdict is not None:
            data.update({
                'gcstar': self.verdict.gcstar,
                'gc': self.verdict.gc,
                'distinct_degrees': self.verdict.distinct_degrees,
                'witness': self.verdict.witness_list(),
            })
        if self.note:
            data['note'] = self.note
        return data


def consistency_of(structural: StructuralClass, verdict: Optional[Verdict]) -> ConsistencyReport:
    """Both sides agree when a positive tag goes with a GC* verdict and vice versa."""
    if verdict is None:
        return ConsistencyReport(structural, None, True, True, 'structural verdict only')
    return ConsistencyReport(structural, verdict, structural.positive == verdict.gcstar)


def theorem_a_consistency(target: Union[Group, GroupSpec],
                          ct: Optional[CharacterTable] = None) -> ConsistencyReport:
    """Compare the definitional verdict with the structural classification."""
    group = target if isinstance(target, Group) else None
    spec = target if isinstance(target, GroupSpec) else target.spec
    if ct is None:
        try:
            ct = table_for_group(group) if group is not None else table_for_spec(spec)
        except BudgetExceededError as e:
            logger.warning(f'Table computation skipped: {e}')
    verdict = verdict_by_definition(ct, galois_orbits(ct)) if ct is not None else None
    if group is not None:
        structural = classify_structure(group, ct)
    else:
        structural = classify_spec(spec, ct)
    report = consistency_of(structural, verdict)
    if not report.consistent:
        logger.error(f'Structural class {structural} disagrees with gcstar={verdict.gcstar}')
    return report


COROLLARY_B_LABELS = ('abelian', 'extraspecial-2', 'B1', 'B2-with-d=1', 'none')


@dataclass
class CorollaryBReport:
    label: str
    distinct_degrees: Optional[bool]
    passed: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {'label': self.label, 'distinct_degrees': self.distinct_degrees,
                'passed': self.passed}


def corollary_b_label(structural: StructuralClass) -> str:
    if structural.tag == 'Abelian':
        return 'abelian'
    if (structural.tag == 'TypeA' and structural.params == (2,)
            and structural.witnesses.get('center_order') == 2):
        return 'extraspecial-2'
    if structural.tag == 'TypeB1':
        return 'B1'
    if structural.tag == 'TypeB2' and structural.params[2] == 1:
        return 'B2-with-d=1'
    return 'none'


def corollary_b_of(structural: StructuralClass, verdict: Optional[Verdict]) -> CorollaryBReport:
    label = corollary_b_label(structural)
    if verdict is None:
        return CorollaryBReport(label, None, None)
    return CorollaryBReport(label, verdict.distinct_degrees,
                            (label != 'none') == verdict.distinct_degrees)


def corollary_b_classify(target: Union[Group, GroupSpec],
                         ct: Optional[CharacterTable] = None) -> CorollaryBReport:
    report = theorem_a_consistency(target, ct)
    return corollary_b_of(report.structural, report.verdict)


# -- type-specific audits -----------------------------------------------------------------

def center_classes(ct: CharacterTable) -> FrozenSet[int]:
    """Z(G) as the classes of size one."""
    return frozenset(c for c, size in enumerate(ct.sizes) if size == 1)


def type_a_audit(ct: CharacterTable, p: int) -> AuditReport:
    """(p-1)|Z:G'| non-linear rows of one degree, fully ramified over Z."""
    name = 'type-a-count'
    z = center_classes(ct)
    z_order = sum(ct.sizes[c] for c in z)
    linear = sum(1 for d in ct.degrees if d == 1)
    derived_order = ct.order // linear
    nonlinear = ct.nonlinear_rows()
    expected = (p - 1) * (z_order // derived_order)
    if len(nonlinear) != expected:
        return AuditReport(name, False, f'{len(nonlinear)} non-linear rows, expected {expected}')
    ramified = fully_ramified_audit(ct, z)
    if not ramified.passed:
        return AuditReport(name, False, ramified.failure)
    return AuditReport(name, True)


def frobenius_count_audit(ct: CharacterTable, q: int, n: int, d: int) -> AuditReport:
    """Exactly d non-linear rows, all of degree (q^n - 1)/d."""
    name = 'frobenius-count'
    l_order = (q ** n - 1) // d
    nonlinear = ct.nonlinear_rows()
    if len(nonlinear) != d:
        return AuditReport(name, False, f'{len(nonlinear)} non-linear rows, expected {d}')
    wrong = [i for i in nonlinear if ct.degrees[i] != l_order]
    if wrong:
        return AuditReport(name, False, f'row {wrong[0]} has degree {ct.degrees[wrong[0]]}')
    return AuditReport(name, True)


def subgroup_as_group(sub: Subgroup) -> Group:
    """A subgroup re-indexed 0..|S|-1 as a standalone table group."""
    members = sub.members
    m = members.size
    xs = np.repeat(members, m)
    ys = np.tile(members, m)
    products = sub.parent.mul_arrays(xs, ys)
    table = np.searchsorted(members, products).reshape(m, m)
    return TableGroup(table)


def suzuki_audit(ct: CharacterTable, go: GaloisOrbits, l_order: int,
                 kernel_table: Optional[CharacterTable] = None) -> AuditReport:
    """Three non-linear rows of degrees |L|, m, m with the two m-rows complex conjugate."""
    name = 'suzuki'
    nonlinear = ct.nonlinear_rows()
    if len(nonlinear) != 3:
        return AuditReport(name, False, f'{len(nonlinear)} non-linear rows, expected 3')
    odd = rows_of_degree(ct, l_order)
    if len(odd) != 1:
        return AuditReport(name, False, f'no single row of degree {l_order}')
    pair = tuple(i for i in nonlinear if i != odd[0])
    if ct.degrees[pair[0]] != ct.degrees[pair[1]]:
        return AuditReport(name, False, 'the remaining two rows differ in degree')
    if not conjugation_swaps(go, pair):
        return AuditReport(name, False, f'rows {pair} are not swapped by complex conjugation')
    if kernel_table is not None:
        count = len(kernel_table.nonlinear_rows())
        if count != 2 * l_order:
            return AuditReport(name, False,
                               f'kernel has {count} non-linear rows, expected {2 * l_order}')
    return AuditReport(name, True)


def structural_audits(structural: StructuralClass, ct: CharacterTable, go: GaloisOrbits,
                      group: Optional[Group] = None) -> List[AuditReport]:
    """Audits that apply to the structural type of the group."""
    audits = []
    if structural.tag == 'TypeA':
        audits.append(type_a_audit(ct, structural.params[0]))
    elif structural.tag == 'TypeB2':
        audits.append(frobenius_count_audit(ct, *structural.params))
    elif structural.tag == 'TypeB3':
        l_order = structural.witnesses['complement_order']
        kernel_table = None
        if group is not None:
            decomposition = frobenius_decomposition(group)
            if decomposition is not None:
                kernel_table = character_table(subgroup_as_group(decomposition[0]))
        audits.append(suzuki_audit(ct, go, l_order, kernel_table))
    return audits


def expected_matches(structural: StructuralClass, tag: Optional[str],
                     params: Sequence[Any]) -> bool:
    if tag is None:
        return True
    return structural.tag == tag and list(structural.params) == list(params)
