"""Exact character tables via Dixon-Schneider splitting over F_p and cyclotomic lifting."""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import isqrt
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
from sympy import Poly, Symbol, isprime, primitive_root, sqrt_mod
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from .config import PERFORMANCE_CONFIG
from .cyclotomic import Cyclotomic, hermitian_sum
from .errors import BudgetExceededError, LiftingError, SplittingError, TableError
from .groups import Group, PermutationGroup
from .structure import ConjugacyClassData, conjugacy_classes
from ..utils.numbers import lcm_all

logger = logging.getLogger(__name__)

_X = Symbol('x')

Row = Tuple[Cyclotomic, ...]


@dataclass(frozen=True)
class ClassConstants:
    """``tensor[i, j, t]`` counts x in C_i with x^-1 z_t in C_j, z_t the representative of t."""
    tensor: np.ndarray

    @property
    def k(self) -> int:
        return int(self.tensor.shape[0])

    def matrix(self, r: int) -> np.ndarray:
        """M_r with M_r[s, t] = a[r, s, t]; central characters are its right eigenvectors."""
        return self.tensor[r]


@dataclass(frozen=True)
class ModularTable:
    """Irreducible characters reduced mod p, in splitting order."""
    prime: int
    rows: Tuple[Tuple[int, ...], ...]
    degrees: Tuple[int, ...]


@dataclass
class TableReport:
    passed: bool
    failure: Optional[str] = None
    checks: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {'passed': self.passed, 'failure': self.failure, 'checks': list(self.checks)}


@dataclass
class AuditReport:
    """Outcome of a named audit; ``failure`` describes the first violation."""
    name: str
    passed: bool
    failure: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'passed': self.passed, 'failure': self.failure}


@dataclass(eq=False)
class CharacterTable:
    """Rows are irreducible characters, columns are conjugacy classes.

    Each value is stored at (a divisor of) the element order of its class, so all values of a
    table live in Q(zeta_e) with ``e`` the exponent.
    """
    classes: ConjugacyClassData
    values: Tuple[Row, ...]
    group: Optional[Group] = None
    factors: Optional[Tuple['CharacterTable', 'CharacterTable']] = None
    prime: Optional[int] = None

    @property
    def k(self) -> int:
        return self.classes.k

    @property
    def order(self) -> int:
        return self.classes.group_order

    @property
    def e(self) -> int:
        return self.classes.exponent

    @property
    def degrees(self) -> Tuple[int, ...]:
        result = []
        for row in self.values:
            d = row[0].is_rational()
            if d is None or d.denominator != 1:
                raise TableError('degree column is not integral')
            result.append(int(d))
        return tuple(result)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return self.classes.sizes

    def nonlinear_rows(self) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d > 1]

    @cached_property
    def value_keys(self) -> Tuple[Tuple[Any, ...], ...]:
        """Canonical (minimized) key of every value, row by row."""
        return tuple(tuple(v.canonical_key for v in row) for row in self.values)

    @cached_property
    def row_index(self) -> Dict[Tuple[Any, ...], int]:
        index = {key: i for i, key in enumerate(self.value_keys)}
        if len(index) != len(self.values):
            raise TableError('table has two identical rows')
        return index

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'order': self.order,
            'exponent': self.e,
            'classes': [
                {'rep': label, 'size': size, 'element_order': o, 'powers': list(powers)}
                for label, size, o, powers in zip(
                    self.classes.rep_labels, self.classes.sizes,
                    self.classes.orders, self.classes.power_classes,
                )
            ],
            'characters': [[v.to_json() for v in row] for row in self.values],
        }
        if self.factors is not None:
            data['factors'] = [f.to_json() for f in self.factors]
        return data

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'CharacterTable':
        """Rebuild a table from its JSON form without realizing the group."""
        try:
            if 'factors' in data:
                left, right = (cls.from_json(f) for f in data['factors'])
                return direct_product_table(left, right)
            classes = data['classes']
            ccd = ConjugacyClassData(
                group=None,
                reps=tuple(range(len(classes))),
                sizes=tuple(int(c['size']) for c in classes),
                orders=tuple(int(c['element_order']) for c in classes),
                power_classes=tuple(tuple(int(x) for x in c['powers']) for c in classes),
                rep_labels=tuple(str(c['rep']) for c in classes),
            )
            values = tuple(
                tuple(Cyclotomic.from_json(v) for v in row) for row in data['characters']
            )
        except (KeyError, TypeError, ValueError) as e:
            raise TableError(f'malformed character table JSON: {e}') from e
        if any(len(row) != ccd.k for row in values) or len(values) != ccd.k:
            raise TableError('character table JSON is not square')
        return cls(classes=ccd, values=values)


# -- class constants -----------------------------------------------------------------------------


def class_constants(ccd: ConjugacyClassData) -> ClassConstants:
    group = ccd.group
    if group is None or ccd.class_of is None:
        raise TableError('class constants need the realized group')
    k, n = ccd.k, group.order
    class_of = ccd.class_of
    inverses = group.inverses
    source = class_of[group.elements()] * k
    tensor = np.zeros((k, k, k), dtype=np.int64)
    for t, z in enumerate(ccd.reps):
        products = group.mul_arrays(inverses, np.full(n, z))
        counts = np.bincount(source + class_of[products], minlength=k * k)
        tensor[:, :, t] = counts.reshape(k, k)
    return ClassConstants(tensor)


# -- modular stage -------------------------------------------------------------------------------


def split_prime(e: int, n: int, after: int = 0) -> int:
    """Least prime p = 1 (mod e) with p > 2*ceil(sqrt(n)) and p > ``after``."""
    bound = max(2 * (isqrt(n - 1) + 1), after)
    candidate = bound + 1
    candidate += (1 - candidate) % e
    while not isprime(candidate):
        candidate += e
    return candidate


def _eigenspaces(space: DomainMatrix, transposed: DomainMatrix,
                 field_p: Any) -> List[DomainMatrix]:
    """Split a common eigenspace (rows in RREF) of the class matrices by one more matrix."""
    p = field_p.mod
    d = space.shape[0]
    _, pivots = space.rref()
    restricted = (space * transposed).extract(list(range(d)), list(pivots))
    roots = Poly(restricted.charpoly(), _X, domain=field_p).ground_roots()
    if sum(roots.values()) != d:
        raise SplittingError(f'characteristic polynomial does not split over F_{p}')
    acting = restricted.transpose()
    pieces = []
    for z in sorted(int(r) % p for r in roots):
        shifted = acting - DomainMatrix.diag([field_p(z)] * d, field_p)
        basis = shifted.nullspace()
        pieces.append((basis * space).rref()[0])
    if sum(piece.shape[0] for piece in pieces) != d:
        raise SplittingError(f'class matrix is not diagonalizable over F_{p}')
    return pieces


def modp_table(cc: ClassConstants, ccd: ConjugacyClassData, p: int) -> ModularTable:
    """Common eigenvectors of all M_r over F_p, converted to character values mod p."""
    k = cc.k
    field_p = GF(p)
    spaces = [DomainMatrix.eye(k, field_p)]
    for r in range(1, k):
        if all(s.shape[0] == 1 for s in spaces):
            break
        transposed = DomainMatrix.from_list(
            [[int(v) % p for v in row] for row in cc.matrix(r).T.tolist()], field_p
        )
        refined = []
        for space in spaces:
            if space.shape[0] == 1:
                refined.append(space)
            else:
                refined.extend(_eigenspaces(space, transposed, field_p))
        spaces = refined
        logger.debug(f'After M_{r}: eigenspace dimensions {[s.shape[0] for s in spaces]}')
    if len(spaces) != k:
        raise SplittingError(f'only {len(spaces)} of {k} characters separated mod {p}')

    n = ccd.group_order
    inverse_classes = ccd.inverse_classes
    size_inv = [pow(s, -1, p) for s in ccd.sizes]
    rows, degrees = [], []
    for space in spaces:
        v = [int(x) % p for x in space.to_list()[0]]
        if v[0] == 0:
            raise SplittingError('eigenvector has no component on the identity class')
        scale = pow(v[0], -1, p)
        w = [x * scale % p for x in v]
        norm = sum(w[t] * w[inverse_classes[t]] * size_inv[t] for t in range(k)) % p
        if norm == 0:
            raise SplittingError('central character has zero norm mod p')
        square = n * pow(norm, -1, p) % p
        root = sqrt_mod(square, p)
        if root is None:
            raise LiftingError(f'degree square {square} has no root mod {p}')
        degree = min(int(root), p - int(root))
        rows.append(tuple(w[t] * degree * size_inv[t] % p for t in range(k)))
        degrees.append(degree)
    return ModularTable(prime=p, rows=tuple(rows), degrees=tuple(degrees))


# -- lifting -------------------------------------------------------------------------------------


def _row_key(row: Row) -> str:
    return ' | '.join(str(v) for v in row)


def lift_characters(modp: ModularTable, ccd: ConjugacyClassData, p: int, e: int) -> CharacterTable:
    """Recover exact values from eigenvalue multiplicities of each class representative."""
    if (p - 1) % e:
        raise LiftingError(f'p = {p} is not 1 mod {e}')
    root_e = pow(int(primitive_root(p)), (p - 1) // e, p)
    lifted: List[Row] = []
    for row, degree in zip(modp.rows, modp.degrees):
        values = []
        for c in range(ccd.k):
            o = ccd.orders[c]
            powers = ccd.power_classes[c]
            root_o = pow(root_e, e // o, p)
            o_inv = pow(o, -1, p)
            samples = [row[powers[l]] for l in range(o)]
            multiplicities = []
            for j in range(o):
                step = pow(root_o, -j % o, p)
                acc, w = 0, 1
                for s in samples:
                    acc += s * w
                    w = w * step % p
                m = acc * o_inv % p
                if m > degree:
                    raise LiftingError(
                        f'multiplicity {m} of zeta_{o}^{j} exceeds degree {degree} at class {c}'
                    )
                multiplicities.append(m)
            values.append(Cyclotomic.from_multiplicities(o, multiplicities))
        lifted.append(tuple(values))

    principal = [i for i, row in enumerate(lifted) if all(v == 1 for v in row)]
    if len(principal) != 1:
        raise LiftingError('no unique principal character after lifting')
    first = lifted.pop(principal[0])
    degrees = [row[0].is_rational() for row in lifted]
    ordered = sorted(zip(degrees, (_row_key(r) for r in lifted), range(len(lifted))))
    values = (first,) + tuple(lifted[i] for _, _, i in ordered)
    return CharacterTable(classes=ccd, values=values, group=ccd.group, prime=p)


def table_from_classes(ccd: ConjugacyClassData) -> CharacterTable:
    """Run the modular and lifting stages, moving to the next admissible prime on failure."""
    n, e = ccd.group_order, ccd.exponent
    cc = class_constants(ccd)
    p = split_prime(e, n)
    attempts = PERFORMANCE_CONFIG['max_split_primes']
    for attempt in range(1, attempts + 1):
        try:
            table = lift_characters(modp_table(cc, ccd, p), ccd, p, e)
        except (SplittingError, LiftingError) as exc:
            logger.warning(f'Prime {p} failed ({exc}); attempt {attempt} of {attempts}')
            p = split_prime(e, n, after=p)
            continue
        report = verify_table(table)
        if not report.passed:
            raise TableError(f'computed table fails verification: {report.failure}')
        logger.info(f'Character table of order {n}: {ccd.k} characters, split prime {p}')
        return table
    raise TableError(f'no admissible prime worked after {attempts} attempts')


def character_table(group: Group) -> CharacterTable:
    """Exact character table of a realized group, within the table budgets."""
    if group.order > PERFORMANCE_CONFIG['table_order_budget']:
        raise BudgetExceededError(f'order {group.order} exceeds the table-computation budget')
    if isinstance(group, PermutationGroup):
        stored = group.order * group.degree
        if stored > PERFORMANCE_CONFIG['encoding_budget']:
            raise BudgetExceededError(f'{stored} stored encodings exceed the encoding budget')
    return group.memo('character_table', lambda: table_from_classes(conjugacy_classes(group)))


# -- verification --------------------------------------------------------------------------------


def _integral_degrees(ct: CharacterTable) -> Optional[str]:
    n = ct.order
    for i, row in enumerate(ct.values):
        d = row[0].is_rational()
        if d is None or d.denominator != 1 or d <= 0:
            return f'degree of row {i} is not a positive integer'
        if n % int(d):
            return f'degree {d} of row {i} does not divide {n}'
    return None


def _row_inner(ct: CharacterTable, i: int, j: int,
               by_order: Dict[int, List[int]]) -> Optional[int]:
    """n * <chi_i, chi_j>, summed per element order; None if a partial sum is irrational."""
    total = 0
    for o, cols in by_order.items():
        terms = [(ct.sizes[c], ct.values[i][c], ct.values[j][c]) for c in cols]
        conductor = lcm_all(v.conductor for _, a, b in terms for v in (a, b))
        partial = hermitian_sum(terms, conductor).is_rational()
        if partial is None:
            return None
        total += partial
    return total if total.denominator == 1 else None


def verify_table(ct: CharacterTable) -> TableReport:
    """Check the orthogonality relations and degree identities exactly."""
    report = TableReport(passed=False)
    k, n = ct.k, ct.order
    if len(ct.values) != k or any(len(row) != k for row in ct.values):
        report.failure = 'table is not square'
        return report
    if any(v != 1 for v in ct.values[0]):
        report.failure = 'first row is not the principal character'
        return report
    report.checks.append('principal')
    failure = _integral_degrees(ct)
    if failure:
        report.failure = failure
        return report
    degrees = ct.degrees
    if sum(d * d for d in degrees) != n:
        report.failure = f'sum of squared degrees is {sum(d * d for d in degrees)}, not {n}'
        return report
    report.checks.append('degrees')

    if ct.factors is not None:
        failure = _verify_tensor(ct)
        if failure:
            report.failure = failure
            return report
        report.checks.append('tensor')
        if k > PERFORMANCE_CONFIG['product_orthogonality_limit']:
            # orthogonality of both factors carries over to their tensor product
            report.checks.append('orthogonality from factors')
            report.passed = True
            return report

    for i, row in enumerate(ct.values):
        for c, v in enumerate(row):
            if not v.is_integral():
                report.failure = f'value at ({i}, {c}) is not an algebraic integer'
                return report
    report.checks.append('integrality')

    by_order: Dict[int, List[int]] = {}
    for c, o in enumerate(ct.classes.orders):
        by_order.setdefault(o, []).append(c)
    for i in range(k):
        for j in range(i, k):
            inner = _row_inner(ct, i, j, by_order)
            if inner != (n if i == j else 0):
                report.failure = f'row orthogonality fails for rows ({i}, {j})'
                return report
    report.checks.append('row orthogonality')

    for c in range(k):
        for d in range(c, k):
            conductor = lcm_all(v.conductor for row in ct.values for v in (row[c], row[d]))
            value = hermitian_sum(((1, row[c], row[d]) for row in ct.values), conductor)
            expected = n // ct.sizes[c] if c == d else 0
            if value != expected:
                report.failure = f'column orthogonality fails for classes ({c}, {d})'
                return report
    report.checks.append('column orthogonality')
    report.passed = True
    logger.info(f'Verified character table of order {n}')
    return report


def _verify_tensor(ct: CharacterTable) -> Optional[str]:
    left, right = ct.factors
    for side in (left, right):
        sub = verify_table(side)
        if not sub.passed:
            return f'factor table fails: {sub.failure}'
    kr = right.k
    for i in range(ct.k):
        a, b = divmod(i, kr)
        for c in range(ct.k):
            x, y = divmod(c, kr)
            if ct.values[i][c] != left.values[a][x] * right.values[b][y]:
                return f'entry ({i}, {c}) is not the tensor product of its factors'
    return None


# -- kernels, centers, products ------------------------------------------------------------------


def character_kernel(ct: CharacterTable, i: int) -> FrozenSet[int]:
    d = ct.degrees[i]
    return frozenset(c for c, v in enumerate(ct.values[i]) if v == d)


def character_center(ct: CharacterTable, i: int) -> FrozenSet[int]:
    d = ct.degrees[i]
    return frozenset(c for c, v in enumerate(ct.values[i]) if v.abs_square() == d * d)


def direct_product_table(left: CharacterTable, right: CharacterTable) -> CharacterTable:
    """Table of G x H from the tables of G and H; rows and classes are numbered i*k_H + j."""
    classes = ConjugacyClassData.product(left.classes, right.classes)
    values = tuple(
        tuple(a * b for a in row_g for b in row_h)
        for row_g in left.values for row_h in right.values
    )
    return CharacterTable(classes=classes, values=values, factors=(left, right))


def fully_ramified_audit(ct: CharacterTable, center_classes: Iterable[int]) -> AuditReport:
    """Each non-linear row has chi(1)^2 = |G:Z|, trivial kernel and vanishes off Z."""
    center_classes = frozenset(center_classes)
    z_order = sum(ct.sizes[c] for c in center_classes)
    index = ct.order // z_order
    for i in ct.nonlinear_rows():
        d = ct.degrees[i]
        if d * d != index:
            return AuditReport('fully-ramified', False, f'row {i}: degree {d} squared != {index}')
        if character_kernel(ct, i) != frozenset({0}):
            return AuditReport('fully-ramified', False, f'row {i} is not faithful')
        for c, v in enumerate(ct.values[i]):
            if c not in center_classes and not v.is_zero():
                return AuditReport('fully-ramified', False, f'row {i} does not vanish on class {c}')
    return AuditReport('fully-ramified', True)


def degree_multiset(ct: CharacterTable) -> Tuple[int, ...]:
    return tuple(sorted(ct.degrees))


def rows_of_degree(ct: CharacterTable, degree: int) -> List[int]:
    return [i for i, d in enumerate(ct.degrees) if d == degree]
