"""Concrete finite groups on dense element indices.

Elements of a realized group are the integers ``0..n-1``. Multiplication goes through a stored
table when ``n <= PERFORMANCE_CONFIG['table_limit']`` and through the construction otherwise
(permutation composition with hashed lookup, or componentwise products).
"""
import json
import logging
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import PERFORMANCE_CONFIG
from .errors import ActionError, BudgetExceededError, GroupAxiomError, SpecError
from ..utils.jsonio import compact_canonical, dumps_canonical

logger = logging.getLogger(__name__)

SPEC_KINDS = ('mult-table', 'perm-gens', 'direct-product', 'semidirect', 'family')

_KIND_KEYS = {
    'mult-table': {'table'},
    'perm-gens': {'degree', 'generators'},
    'direct-product': {'factors'},
    'semidirect': {'kernel', 'actor', 'action'},
    'family': {'name', 'params'},
}

_CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class GroupSpec:
    """A validated group description."""
    kind: str
    payload: Dict[str, Any] = field(default_factory=dict)
    label: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'kind': self.kind}
        for key, value in self.payload.items():
            if isinstance(value, GroupSpec):
                data[key] = value.to_dict()
            elif key == 'factors':
                data[key] = [factor.to_dict() for factor in value]
            else:
                data[key] = value
        if self.label:
            data['label'] = self.label
        return data

    def canonical_json(self) -> str:
        return compact_canonical(self.to_dict())

    def emit(self) -> str:
        return dumps_canonical(self.to_dict())

    @property
    def display_name(self) -> str:
        if self.label:
            return self.label
        if self.kind == 'family':
            params = ','.join(str(p) for p in self.payload['params'])
            return f"{self.payload['name']}({params})"
        if self.kind == 'direct-product':
            left, right = self.payload['factors']
            return f'{left.display_name} x {right.display_name}'
        return self.kind

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupSpec):
            return NotImplemented
        return self.canonical_json() == other.canonical_json()

    def __hash__(self) -> int:
        return hash(self.canonical_json())


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _check_permutation(images: Any, degree: Optional[int], where: str) -> List[int]:
    if not isinstance(images, list) or not all(_is_int(v) for v in images):
        raise SpecError(f'{where}: permutation must be an array of integers')
    if degree is not None and len(images) != degree:
        raise SpecError(f'{where}: permutation has length {len(images)}, expected {degree}')
    if sorted(images) != list(range(len(images))):
        raise SpecError(f'{where}: not a bijection on [0,{len(images)})')
    return list(images)


def spec_from_dict(data: Any, where: str = '$') -> GroupSpec:
    """Validate a decoded JSON document and build a GroupSpec."""
    if not isinstance(data, dict):
        raise SpecError(f'{where}: group spec must be an object')
    kind = data.get('kind')
    if kind not in SPEC_KINDS:
        raise SpecError(f'{where}: unknown kind {kind!r}')
    extra = set(data) - _KIND_KEYS[kind] - {'kind', 'label'}
    if extra:
        raise SpecError(f"{where}: unexpected field(s) {', '.join(sorted(extra))}")
    missing = _KIND_KEYS[kind] - set(data)
    if missing:
        raise SpecError(f"{where}: missing field(s) {', '.join(sorted(missing))}")
    label = data.get('label')
    if label is not None and not isinstance(label, str):
        raise SpecError(f'{where}.label: must be a string')

    if kind == 'mult-table':
        table = data['table']
        if not isinstance(table, list) or not table:
            raise SpecError(f'{where}.table: must be a non-empty array of arrays')
        n = len(table)
        for i, row in enumerate(table):
            if not isinstance(row, list) or len(row) != n:
                raise SpecError(f'{where}.table[{i}]: row must have {n} entries')
            for v in row:
                if not _is_int(v) or not 0 <= v < n:
                    raise SpecError(f'{where}.table[{i}]: index {v!r} out of range [0,{n})')
        payload: Dict[str, Any] = {'table': [list(row) for row in table]}
    elif kind == 'perm-gens':
        degree = data['degree']
        if not _is_int(degree) or degree < 1:
            raise SpecError(f'{where}.degree: must be a positive integer')
        gens = data['generators']
        if not isinstance(gens, list):
            raise SpecError(f'{where}.generators: must be an array')
        payload = {
            'degree': degree,
            'generators': [
                _check_permutation(g, degree, f'{where}.generators[{i}]')
                for i, g in enumerate(gens)
            ],
        }
    elif kind == 'direct-product':
        factors = data['factors']
        if not isinstance(factors, list) or len(factors) != 2:
            raise SpecError(f'{where}.factors: must list exactly two specs')
        payload = {
            'factors': [spec_from_dict(f, f'{where}.factors[{i}]') for i, f in enumerate(factors)]
        }
    elif kind == 'semidirect':
        action = data['action']
        if not isinstance(action, list):
            raise SpecError(f'{where}.action: must be an array of permutations')
        payload = {
            'kernel': spec_from_dict(data['kernel'], f'{where}.kernel'),
            'actor': spec_from_dict(data['actor'], f'{where}.actor'),
            'action': [
                _check_permutation(a, None, f'{where}.action[{i}]') for i, a in enumerate(action)
            ],
        }
    else:
        from . import catalog

        name = data['name']
        params = data['params']
        if not isinstance(name, str) or name not in catalog.FAMILIES:
            raise SpecError(f'{where}.name: unknown family {name!r}')
        if not isinstance(params, list) or not all(_is_int(p) for p in params):
            raise SpecError(f'{where}.params: must be an array of integers')
        payload = {'name': name, 'params': list(params)}
    return GroupSpec(kind=kind, payload=payload, label=label)


def parse_group_spec(text: Union[str, bytes]) -> GroupSpec:
    if isinstance(text, bytes):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as e:
            raise SpecError(f'document is not UTF-8: {e}') from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f'malformed JSON: {e}') from e
    return spec_from_dict(data)


class Group:
    """A finite group on element indices 0..order-1."""

    def __init__(self, order: int, identity: int, spec: Optional[GroupSpec] = None):
        self.order = order
        self.identity = identity
        self.spec = spec
        self.element_labels: Optional[List[str]] = None
        self._table: Optional[np.ndarray] = None
        self._generators: Tuple[int, ...] = ()
        self._action_generators: Optional[Tuple[int, ...]] = None
        self._memo: Dict[Any, Any] = {}
        self._lock = threading.RLock()

    # -- multiplication -------------------------------------------------------------------

    def _mul_arrays(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _inverse_array(self) -> np.ndarray:
        raise NotImplementedError

    def mul_arrays(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        if self._table is not None:
            return self._table[xs, ys].astype(np.int64)
        xs, ys = np.broadcast_arrays(xs, ys)
        return self._mul_arrays(xs.ravel(), ys.ravel()).reshape(xs.shape)

    def multiply(self, x: int, y: int) -> int:
        if self._table is not None:
            return int(self._table[x, y])
        return int(self._mul_arrays(np.array([x]), np.array([y]))[0])

    @property
    def inverses(self) -> np.ndarray:
        return self.memo('inverses', self._inverse_array)

    def inverse(self, x: int) -> int:
        return int(self.inverses[x])

    def power(self, x: int, m: int) -> int:
        if m < 0:
            x, m = self.inverse(x), -m
        result, base = self.identity, x
        while m:
            if m & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            m >>= 1
        return result

    def commutator(self, x: int, y: int) -> int:
        """[x, y] = x^-1 y^-1 x y."""
        left = self.multiply(self.inverse(x), self.inverse(y))
        return self.multiply(left, self.multiply(x, y))

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    @property
    def table(self) -> Optional[np.ndarray]:
        return self._table

    def materialize_table(self) -> None:
        """Store the full multiplication table when the order allows it."""
        n = self.order
        if self._table is not None or n > PERFORMANCE_CONFIG['table_limit']:
            return
        table = np.empty((n, n), dtype=np.int32)
        everything = self.elements()
        rows_per_chunk = max(1, _CHUNK // n)
        for start in range(0, n, rows_per_chunk):
            stop = min(n, start + rows_per_chunk)
            xs = np.repeat(everything[start:stop], n)
            ys = np.tile(everything, stop - start)
            table[start:stop] = self._mul_arrays(xs, ys).reshape(stop - start, n)
        self._table = table

    # -- derived data ---------------------------------------------------------------------

    def memo(self, key: Any, factory: Callable[[], Any]) -> Any:
        """Thread-safe memo for data derived from this immutable group."""
        with self._lock:
            if key not in self._memo:
                self._memo[key] = factory()
            return self._memo[key]

    @property
    def generators(self) -> Tuple[int, ...]:
        return self._generators

    @property
    def action_generators(self) -> Tuple[int, ...]:
        """Generators in the order a semidirect action lists its images."""
        if self._action_generators is not None:
            return self._action_generators
        return self._generators

    @property
    def element_orders(self) -> np.ndarray:
        return self.memo('element_orders', self._compute_element_orders)

    def _compute_element_orders(self) -> np.ndarray:
        everything = self.elements()
        orders = np.ones(self.order, dtype=np.int64)
        current = everything.copy()
        done = current == self.identity
        m = 1
        while not done.all():
            current = self.mul_arrays(current, everything)
            m += 1
            hit = (current == self.identity) & ~done
            orders[hit] = m
            done |= hit
        return orders

    def element_order(self, x: int) -> int:
        return int(self.element_orders[x])

    @property
    def exponent(self) -> int:
        def compute() -> int:
            result = 1
            for o in np.unique(self.element_orders):
                o = int(o)
                result = result // gcd(result, o) * o
            return result

        return self.memo('exponent', compute)

    def conjugation_images(self, g: int) -> np.ndarray:
        """Array whose entry x is g x g^-1."""

        def compute() -> np.ndarray:
            everything = self.elements()
            left = self.mul_arrays(np.full(self.order, g), everything)
            return self.mul_arrays(left, np.full(self.order, self.inverse(g)))

        return self.memo(('conj', int(g)), compute)

    def label(self, x: int) -> str:
        if self.element_labels is not None:
            return self.element_labels[x]
        return str(x)

    def __repr__(self) -> str:
        name = self.spec.display_name if self.spec is not None else 'group'
        return f'<{type(self).__name__} {name} order={self.order}>'


def closure_mask(group: Group, generators: Sequence[int],
                 limit: Optional[int] = None) -> np.ndarray:
    """Membership bitmap of the subgroup generated by ``generators``.

    Enumeration stops early once more than ``limit`` members are found.
    """
    mask = np.zeros(group.order, dtype=bool)
    mask[group.identity] = True
    gens = [int(g) for g in generators if int(g) != group.identity]
    frontier = np.array([group.identity], dtype=np.int64)
    count = 1
    while frontier.size and gens:
        found = []
        for g in gens:
            products = group.mul_arrays(frontier, np.full(frontier.size, g))
            fresh = np.unique(products[~mask[products]])
            if fresh.size:
                mask[fresh] = True
                count += fresh.size
                found.append(fresh)
        if limit is not None and count > limit:
            break
        frontier = np.concatenate(found) if found else np.empty(0, dtype=np.int64)
    return mask


def greedy_generators(group: Group, members: np.ndarray) -> Tuple[int, ...]:
    """Deterministic generating set: scan members in index order, keep non-redundant ones."""
    target = np.zeros(group.order, dtype=bool)
    target[members] = True
    covered = np.zeros(group.order, dtype=bool)
    covered[group.identity] = True
    gens: List[int] = []
    for x in np.asarray(members, dtype=np.int64):
        if not covered[x]:
            gens.append(int(x))
            covered = closure_mask(group, gens)
        if covered.sum() == target.sum():
            break
    return tuple(gens)


class TableGroup(Group):
    """Group given by an explicit multiplication table."""

    def __init__(self, table: np.ndarray, spec: Optional[GroupSpec] = None):
        table = np.asarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupAxiomError('multiplication table must be a non-empty square array')
        n = table.shape[0]
        everything = np.arange(n)
        left_neutral = np.nonzero(np.all(table == everything[None, :], axis=1))[0]
        identity = None
        for e in left_neutral:
            if np.array_equal(table[:, e], everything):
                identity = int(e)
                break
        if identity is None:
            raise GroupAxiomError('table has no two-sided identity')
        super().__init__(n, identity, spec)
        self._table = table
        self._generators = greedy_generators(self, everything)

    def _mul_arrays(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        return self._table[xs, ys].astype(np.int64)

    def _inverse_array(self) -> np.ndarray:
        hits = self._table == self.identity
        inv = np.argmax(hits, axis=1).astype(np.int64)
        everything = np.arange(self.order)
        left_ok = (self._table[inv, everything] == self.identity).all()
        if not hits[everything, inv].all() or not left_ok:
            raise GroupAxiomError('some element has no two-sided inverse')
        return inv


class PermutationGroup(Group):
    """Closure of permutation generators; products compose images and look them up by key."""

    def __init__(self, perms: np.ndarray, generator_indices: Sequence[int],
                 spec: Optional[GroupSpec] = None):
        super().__init__(perms.shape[0], 0, spec)
        self.degree = perms.shape[1]
        self._perms = perms
        self._action_generators = tuple(int(g) for g in generator_indices)
        self._generators = tuple(dict.fromkeys(g for g in self._action_generators if g != 0))
        self._build_index()

    @classmethod
    def from_generators(cls, degree: int, generators: Sequence[Sequence[int]],
                        spec: Optional[GroupSpec] = None,
                        budget: Optional[int] = None) -> 'PermutationGroup':
        budget = budget or PERFORMANCE_CONFIG['element_budget']
        if degree <= 256:
            dtype = np.uint8
        elif degree <= 65536:
            dtype = np.uint16
        else:
            dtype = np.int32
        gens = [np.asarray(g, dtype=dtype) for g in generators]
        identity = np.arange(degree, dtype=dtype)
        rows = [identity]
        index = {identity.tobytes(): 0}
        frontier = [0]
        while frontier:
            batch = np.stack([rows[i] for i in frontier])
            discovered: List[int] = []
            for g in gens:
                for row in batch[:, g]:
                    key = row.tobytes()
                    if key in index:
                        continue
                    if len(rows) >= budget:
                        raise BudgetExceededError(
                            f'permutation closure exceeds the element budget of {budget}'
                        )
                    index[key] = len(rows)
                    rows.append(row.copy())
                    discovered.append(index[key])
            frontier = discovered
        logger.info(f'Permutation closure on {degree} points: {len(rows)} elements')
        generator_indices = [index[g.tobytes()] for g in gens]
        return cls(np.stack(rows), generator_indices, spec)

    def _build_index(self) -> None:
        for attempt in range(8):
            rng = np.random.default_rng(0x5EED + attempt)
            weights = rng.integers(1, 2 ** 62, size=self.degree, dtype=np.int64)
            keys = self._keys(self._perms, weights)
            order = np.argsort(keys, kind='stable')
            sorted_keys = keys[order]
            if self.order < 2 or np.all(sorted_keys[1:] != sorted_keys[:-1]):
                self._weights = weights
                self._sorted_keys = sorted_keys
                self._key_order = order.astype(np.int64)
                return
        raise GroupAxiomError('could not build a collision-free permutation index')

    @staticmethod
    def _keys(rows: np.ndarray, weights: np.ndarray) -> np.ndarray:
        return rows.astype(np.int64) @ weights

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Indices of the given permutation rows, which must lie in the group."""
        keys = self._keys(rows, self._weights)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        if not np.all(self._sorted_keys[pos] == keys):
            raise GroupAxiomError('permutation product left the enumerated group')
        return self._key_order[pos]

    def perm(self, x: int) -> np.ndarray:
        return self._perms[x]

    def _mul_arrays(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        out = np.empty(xs.size, dtype=np.int64)
        for start in range(0, xs.size, _CHUNK):
            stop = start + _CHUNK
            left = self._perms[xs[start:stop]]
            right = self._perms[ys[start:stop]].astype(np.intp)
            out[start:stop] = self.lookup(np.take_along_axis(left, right, axis=1))
        return out

    def _inverse_array(self) -> np.ndarray:
        out = np.empty(self.order, dtype=np.int64)
        for start in range(0, self.order, _CHUNK):
            block = self._perms[start:start + _CHUNK]
            out[start:start + _CHUNK] = self.lookup(np.argsort(block, axis=1).astype(block.dtype))
        return out

    def label(self, x: int) -> str:
        if self.element_labels is not None:
            return self.element_labels[x]
        images = [int(v) for v in self._perms[x]]
        seen = [False] * self.degree
        cycles = []
        for start in range(self.degree):
            if seen[start] or images[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            nxt = images[start]
            while nxt != start:
                cycle.append(nxt)
                seen[nxt] = True
                nxt = images[nxt]
            cycles.append('(' + ' '.join(str(v) for v in cycle) + ')')
        return ''.join(cycles) or '()'


class DirectProductGroup(Group):
    """G x H on indices g*|H| + h."""

    def __init__(self, left: Group, right: Group, spec: Optional[GroupSpec] = None):
        identity = left.identity * right.order + right.identity
        super().__init__(left.order * right.order, identity, spec)
        self.factors = (left, right)
        m = right.order
        self._generators = tuple(
            [g * m + right.identity for g in left.generators]
            + [left.identity * m + h for h in right.generators]
        )

    def split(self, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return np.divmod(np.asarray(xs, dtype=np.int64), self.factors[1].order)

    def _mul_arrays(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        left, right = self.factors
        g1, h1 = self.split(xs)
        g2, h2 = self.split(ys)
        return left.mul_arrays(g1, g2) * right.order + right.mul_arrays(h1, h2)

    def _inverse_array(self) -> np.ndarray:
        left, right = self.factors
        g, h = self.split(self.elements())
        return left.inverses[g] * right.order + right.inverses[h]

    def _compute_element_orders(self) -> np.ndarray:
        left, right = self.factors
        g, h = self.split(self.elements())
        return np.lcm(left.element_orders[g], right.element_orders[h])

    def label(self, x: int) -> str:
        g, h = divmod(x, self.factors[1].order)
        return f'({self.factors[0].label(g)}, {self.factors[1].label(h)})'


class SemidirectProductGroup(Group):
    """N x| H on indices n*|H| + h with (n1,h1)(n2,h2) = (n1 * act[h1](n2), h1 h2)."""

    def __init__(self, kernel: Group, actor: Group, act: np.ndarray,
                 spec: Optional[GroupSpec] = None):
        super().__init__(kernel.order * actor.order,
                         kernel.identity * actor.order + actor.identity, spec)
        self.kernel = kernel
        self.actor = actor
        self.act = act
        m = actor.order
        self._generators = tuple(
            [n * m + actor.identity for n in kernel.generators]
            + [kernel.identity * m + h for h in actor.generators]
        )

    def split(self, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return np.divmod(np.asarray(xs, dtype=np.int64), self.actor.order)

    def _mul_arrays(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        n1, h1 = self.split(xs)
        n2, h2 = self.split(ys)
        n = self.kernel.mul_arrays(n1, self.act[h1, n2])
        return n * self.actor.order + self.actor.mul_arrays(h1, h2)

    def _inverse_array(self) -> np.ndarray:
        n, h = self.split(self.elements())
        h_inv = self.actor.inverses[h]
        return self.act[h_inv, self.kernel.inverses[n]] * self.actor.order + h_inv

    def label(self, x: int) -> str:
        n, h = divmod(x, self.actor.order)
        return f'({self.kernel.label(n)}; {self.actor.label(h)})'


def _check_budget(order: int, budget: Optional[int]) -> None:
    budget = budget or PERFORMANCE_CONFIG['element_budget']
    if order > budget:
        raise BudgetExceededError(f'group order {order} exceeds the element budget of {budget}')


def check_group_axioms(group: Group) -> None:
    """Raise GroupAxiomError unless identity, inverses and associativity hold."""
    n = group.order
    everything = group.elements()
    ident = np.full(n, group.identity)
    if not (np.array_equal(group.mul_arrays(ident, everything), everything)
            and np.array_equal(group.mul_arrays(everything, ident), everything)):
        raise GroupAxiomError('identity is not two-sided')
    inv = group.inverses
    if not (np.all(group.mul_arrays(inv, everything) == group.identity)
            and np.all(group.mul_arrays(everything, inv) == group.identity)):
        raise GroupAxiomError('inverse(x) * x is not the identity for every x')
    table = group.table
    if table is not None and n <= PERFORMANCE_CONFIG['exhaustive_axiom_limit']:
        for a in range(n):
            if not np.array_equal(table[table[a]], table[a][table]):
                raise GroupAxiomError(f'associativity fails for left factor {a}')
        return
    rng = np.random.default_rng(PERFORMANCE_CONFIG['axiom_seed'])
    a, b, c = rng.integers(0, n, size=(3, PERFORMANCE_CONFIG['axiom_samples']))
    lhs = group.mul_arrays(group.mul_arrays(a, b), c)
    rhs = group.mul_arrays(a, group.mul_arrays(b, c))
    bad = np.nonzero(lhs != rhs)[0]
    if bad.size:
        i = int(bad[0])
        raise GroupAxiomError(f'associativity fails on ({a[i]}, {b[i]}, {c[i]})')


def direct_product(left: Group, right: Group, budget: Optional[int] = None) -> Group:
    _check_budget(left.order * right.order, budget)
    spec = None
    if left.spec is not None and right.spec is not None:
        spec = GroupSpec('direct-product', {'factors': [left.spec, right.spec]})
    group = DirectProductGroup(left, right, spec)
    group.materialize_table()
    return group


def _verify_automorphism(kernel: Group, images: np.ndarray, where: str) -> None:
    if images.shape != (kernel.order,) or not np.array_equal(np.sort(images), kernel.elements()):
        raise ActionError(f'{where} is not a permutation of the kernel elements')
    table = kernel.table
    if table is not None:
        ok = np.array_equal(images[table], table[np.ix_(images, images)])
    else:
        rng = np.random.default_rng(PERFORMANCE_CONFIG['axiom_seed'])
        x, y = rng.integers(0, kernel.order, size=(2, PERFORMANCE_CONFIG['axiom_samples']))
        ok = np.array_equal(images[kernel.mul_arrays(x, y)],
                            kernel.mul_arrays(images[x], images[y]))
    if not ok:
        raise ActionError(f'{where} does not preserve multiplication')


def semidirect_product(kernel: Group, actor: Group, action: Sequence[Sequence[int]],
                       budget: Optional[int] = None) -> Group:
    """Realize N x| H from the images of the actor's action generators."""
    _check_budget(kernel.order * actor.order, budget)
    gens = actor.action_generators
    if len(action) != len(gens):
        raise ActionError(
            f'action lists {len(action)} images but the actor has {len(gens)} generators'
        )
    images = [np.asarray(a, dtype=np.int64) for a in action]
    for i, img in enumerate(images):
        _verify_automorphism(kernel, img, f'action[{i}]')

    act = np.full((actor.order, kernel.order), -1, dtype=np.int64)
    act[actor.identity] = kernel.elements()
    frontier = [actor.identity]
    while frontier:
        discovered = []
        for h in frontier:
            for g, img in zip(gens, images):
                hg = actor.multiply(h, g)
                composed = act[h][img]
                if act[hg, 0] < 0:
                    act[hg] = composed
                    discovered.append(hg)
                elif not np.array_equal(act[hg], composed):
                    raise ActionError('action is not a homomorphism on the actor group')
        frontier = discovered
    if np.any(act[:, 0] < 0):
        raise ActionError('actor generators do not generate the actor group')

    rng = np.random.default_rng(PERFORMANCE_CONFIG['axiom_seed'])
    for h1, h2 in rng.integers(0, actor.order, size=(32, 2)):
        if not np.array_equal(act[actor.multiply(int(h1), int(h2))], act[h1][act[h2]]):
            raise ActionError('action is not a homomorphism on the actor group')

    group = SemidirectProductGroup(kernel, actor, act)
    group.materialize_table()
    return group


def realize(spec: GroupSpec, budget: Optional[int] = None) -> Group:
    """Build a fully enumerated Group from a validated spec."""
    kind = spec.kind
    if kind == 'mult-table':
        group: Group = TableGroup(np.array(spec.payload['table']), spec)
    elif kind == 'perm-gens':
        group = PermutationGroup.from_generators(
            spec.payload['degree'], spec.payload['generators'], spec, budget
        )
        group.materialize_table()
    elif kind == 'direct-product':
        left, right = (realize(f, budget) for f in spec.payload['factors'])
        group = direct_product(left, right, budget)
    elif kind == 'semidirect':
        kernel = realize(spec.payload['kernel'], budget)
        actor = realize(spec.payload['actor'], budget)
        group = semidirect_product(kernel, actor, spec.payload['action'], budget)
    else:
        from . import catalog

        group = realize(catalog.expand_family(spec), budget)
    group.spec = spec
    check_group_axioms(group)
    logger.info(f'Realized {spec.display_name}: order {group.order}')
    return group


@lru_cache(maxsize=4)
def realize_shared(spec: GroupSpec, budget: Optional[int] = None) -> Group:
    """Memoized realize, so table and structure work on one realized group per spec."""
    return realize(spec, budget)
