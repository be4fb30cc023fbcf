"""Conjugacy classes, power maps, characteristic subgroups and structural predicates."""
import logging
import string
import threading
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from sympy import factorint

from .config import PERFORMANCE_CONFIG
from .errors import StructureError
from .groups import Group, closure_mask, greedy_generators
from ..utils.numbers import lcm, lcm_all

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subgroup of a realized group, stored as a sorted member array."""
    parent: Group
    members: np.ndarray
    generators: Tuple[int, ...]

    @cached_property
    def mask(self) -> np.ndarray:
        bitmap = np.zeros(self.parent.order, dtype=bool)
        bitmap[self.members] = True
        return bitmap

    @property
    def order(self) -> int:
        return int(self.members.size)

    def contains(self, x: int) -> bool:
        return bool(self.mask[x])

    def is_trivial(self) -> bool:
        return self.order == 1

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and np.array_equal(self.members, other.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members.tobytes()))

    def __repr__(self) -> str:
        return f'<Subgroup order={self.order} of {self.parent!r}>'


GroupLike = Union[Group, Subgroup]


def subgroup_from_mask(group: Group, mask: np.ndarray,
                       generators: Optional[Sequence[int]] = None) -> Subgroup:
    members = np.nonzero(mask)[0].astype(np.int64)
    if generators is None:
        generators = greedy_generators(group, members)
    gens = tuple(dict.fromkeys(int(g) for g in generators if int(g) != group.identity))
    return Subgroup(group, members, gens)


def generated_subgroup(group: Group, generators: Iterable[int]) -> Subgroup:
    gens = [int(g) for g in generators]
    return subgroup_from_mask(group, closure_mask(group, gens), gens)


def whole_group(group: Group) -> Subgroup:
    return group.memo('whole', lambda: Subgroup(group, group.elements(), tuple(group.generators)))


def trivial_subgroup(group: Group) -> Subgroup:
    return Subgroup(group, np.array([group.identity], dtype=np.int64), ())


def _as_subgroup(obj: GroupLike) -> Subgroup:
    return whole_group(obj) if isinstance(obj, Group) else obj


# -- conjugacy classes ------------------------------------------------------------------------


def _class_letters(i: int) -> str:
    letters = ''
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        letters = string.ascii_lowercase[r] + letters
    return letters


def class_names(orders: Sequence[int]) -> Tuple[str, ...]:
    """ATLAS-style names: element order followed by a letter per class of that order."""
    seen: Dict[int, int] = {}
    names = []
    for o in orders:
        names.append(f'{o}{_class_letters(seen.get(o, 0))}')
        seen[o] = seen.get(o, 0) + 1
    return tuple(names)


@dataclass(eq=False)
class ConjugacyClassData:
    """Class partition with sizes, element orders and power classes of each representative.

    ``power_classes[c][l]`` is the class of ``rep_c ** l`` for ``0 <= l < orders[c]``.
    ``group`` and ``class_of`` are absent for tables rebuilt from cache or formed as products.
    """
    group: Optional[Group]
    reps: Tuple[int, ...]
    sizes: Tuple[int, ...]
    orders: Tuple[int, ...]
    power_classes: Tuple[Tuple[int, ...], ...]
    rep_labels: Tuple[str, ...]
    class_of: Optional[np.ndarray] = None
    _power_cache: Dict[int, Tuple[int, ...]] = field(
        default_factory=dict, init=False, repr=False
    )
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def group_order(self) -> int:
        return sum(self.sizes)

    @cached_property
    def exponent(self) -> int:
        return lcm_all(self.orders)

    @cached_property
    def names(self) -> Tuple[str, ...]:
        return class_names(self.orders)

    def power_map(self, m: int) -> Tuple[int, ...]:
        """Class permutation c -> class of rep_c ** m, memoized by m mod exponent."""
        key = m % self.exponent
        with self._lock:
            cached = self._power_cache.get(key)
            if cached is None:
                cached = tuple(pc[key % o] for pc, o in zip(self.power_classes, self.orders))
                self._power_cache[key] = cached
            return cached

    @property
    def inverse_classes(self) -> Tuple[int, ...]:
        return self.power_map(-1)

    def classes_of(self, elements: np.ndarray) -> Tuple[int, ...]:
        if self.class_of is None:
            raise StructureError('class data has no element map')
        return tuple(sorted(set(int(c) for c in self.class_of[np.asarray(elements)])))

    def members_of(self, c: int) -> np.ndarray:
        if self.class_of is None:
            raise StructureError('class data has no element map')
        return np.nonzero(self.class_of == c)[0]

    @classmethod
    def product(cls, left: 'ConjugacyClassData',
                right: 'ConjugacyClassData') -> 'ConjugacyClassData':
        """Classes of G x H as pairs (i, j) numbered i*k_H + j."""
        kr = right.k
        sizes, orders, powers, labels, reps = [], [], [], [], []
        for i in range(left.k):
            for j in range(kr):
                o = lcm(left.orders[i], right.orders[j])
                sizes.append(left.sizes[i] * right.sizes[j])
                orders.append(o)
                powers.append(tuple(
                    left.power_classes[i][l % left.orders[i]] * kr
                    + right.power_classes[j][l % right.orders[j]]
                    for l in range(o)
                ))
                labels.append(f'({left.rep_labels[i]}, {right.rep_labels[j]})')
                reps.append(i * kr + j)
        return cls(group=None, reps=tuple(reps), sizes=tuple(sizes), orders=tuple(orders),
                   power_classes=tuple(powers), rep_labels=tuple(labels))


def conjugacy_classes(group: Group) -> ConjugacyClassData:
    return group.memo('classes', lambda: _compute_classes(group))


def _compute_classes(group: Group) -> ConjugacyClassData:
    n = group.order
    everything = group.elements()
    if group.generators:
        rows = np.concatenate([everything for _ in group.generators])
        cols = np.concatenate([group.conjugation_images(g) for g in group.generators])
        graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
        count, labels = connected_components(graph, directed=True, connection='weak')
    else:
        count, labels = n, everything.copy()

    minimal = np.full(count, n, dtype=np.int64)
    np.minimum.at(minimal, labels, everything)
    not_identity = np.ones(count, dtype=np.int64)
    not_identity[labels[group.identity]] = 0
    order = np.lexsort((minimal, not_identity))
    relabel = np.empty(count, dtype=np.int64)
    relabel[order] = np.arange(count)
    class_of = relabel[labels]
    reps = minimal[order]
    sizes = np.bincount(class_of, minlength=count)
    orders = group.element_orders[reps]

    history = []
    current = np.full(count, group.identity, dtype=np.int64)
    for _ in range(int(orders.max())):
        history.append(class_of[current])
        current = group.mul_arrays(current, reps)
    history = np.stack(history, axis=1)
    power_classes = tuple(
        tuple(int(c) for c in history[i, :int(orders[i])]) for i in range(count)
    )
    logger.info(f'Conjugacy classes of order-{n} group: {count}')
    return ConjugacyClassData(
        group=group,
        reps=tuple(int(r) for r in reps),
        sizes=tuple(int(s) for s in sizes),
        orders=tuple(int(o) for o in orders),
        power_classes=power_classes,
        rep_labels=tuple(group.label(int(r)) for r in reps),
        class_of=class_of,
    )


def power_map(ccd: ConjugacyClassData, m: int) -> Tuple[int, ...]:
    return ccd.power_map(m)


# -- subgroups ----------------------------------------------------------------------------------


def centralizer_mask(group: Group, x: int) -> np.ndarray:
    everything = group.elements()
    xs = np.full(group.order, x)
    return group.mul_arrays(everything, xs) == group.mul_arrays(xs, everything)


def centralizer(group: Group, x: int) -> Subgroup:
    return subgroup_from_mask(group, centralizer_mask(group, x))


def normal_closure(group: Group, subset: Union[Subgroup, Iterable[int]],
                   conjugators: Optional[Sequence[int]] = None) -> Subgroup:
    """Smallest subgroup containing ``subset`` that is invariant under ``conjugators``.

    ``conjugators`` defaults to the generators of the whole group.
    """
    raw = subset.generators if isinstance(subset, Subgroup) else subset
    gens = [g for g in dict.fromkeys(int(x) for x in raw) if g != group.identity]
    conj = group.generators if conjugators is None else tuple(conjugators)
    mask = closure_mask(group, gens)
    changed = True
    while changed:
        changed = False
        for c in conj:
            images = group.conjugation_images(c)
            for s in list(gens):
                t = int(images[s])
                if not mask[t]:
                    gens.append(t)
                    mask = closure_mask(group, gens)
                    changed = True
    return subgroup_from_mask(group, mask, gens)


def center(group: Group, within: Optional[Subgroup] = None) -> Subgroup:
    """Z(G), or the center Z(S) of a subgroup S when ``within`` is given."""
    s = whole_group(group) if within is None else within
    candidates = s.members
    keep = np.ones(candidates.size, dtype=bool)
    for g in s.generators:
        gs = np.full(candidates.size, g)
        keep &= group.mul_arrays(candidates, gs) == group.mul_arrays(gs, candidates)
    mask = np.zeros(group.order, dtype=bool)
    mask[candidates[keep]] = True
    return subgroup_from_mask(group, mask)


def derived_subgroup(group: Group, within: Optional[Subgroup] = None) -> Subgroup:
    """G', or S' for a subgroup S."""
    s = whole_group(group) if within is None else within
    gens = s.generators
    commutators = [group.commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(group, commutators, conjugators=gens)


def lower_central_series(group: Group) -> List[Subgroup]:
    def compute() -> List[Subgroup]:
        series = [whole_group(group)]
        while True:
            current = series[-1]
            commutators = [group.commutator(x, g)
                           for x in current.generators for g in group.generators]
            nxt = normal_closure(group, commutators)
            if nxt.order == current.order:
                return series
            series.append(nxt)

    return group.memo('lower_central', compute)


def derived_series(group: Group) -> List[Subgroup]:
    def compute() -> List[Subgroup]:
        series = [whole_group(group)]
        while True:
            nxt = derived_subgroup(group, series[-1])
            if nxt.order == series[-1].order:
                return series
            series.append(nxt)

    return group.memo('derived_series', compute)


def nilpotent_residual(group: Group) -> Subgroup:
    return lower_central_series(group)[-1]


# -- predicates ---------------------------------------------------------------------------------


def is_abelian(obj: GroupLike) -> bool:
    s = _as_subgroup(obj)
    group = s.parent
    gens = s.generators
    return all(group.multiply(a, b) == group.multiply(b, a)
               for i, a in enumerate(gens) for b in gens[i + 1:])


def is_nilpotent(group: Group) -> bool:
    return nilpotent_residual(group).is_trivial()


def is_solvable(group: Group) -> bool:
    return derived_series(group)[-1].is_trivial()


def is_perfect(group: Group) -> bool:
    return derived_subgroup(group).order == group.order


def is_p_group(obj: GroupLike) -> Optional[int]:
    """The prime p when the order is a nontrivial power of p."""
    order = _as_subgroup(obj).order
    if order == 1:
        return None
    factors = factorint(order)
    return int(next(iter(factors))) if len(factors) == 1 else None


def is_cyclic(obj: GroupLike) -> bool:
    s = _as_subgroup(obj)
    return bool(np.any(s.parent.element_orders[s.members] == s.order))


def is_elementary_abelian(obj: GroupLike) -> Optional[Tuple[int, int]]:
    s = _as_subgroup(obj)
    p = is_p_group(s)
    if p is None or not is_abelian(s):
        return None
    if np.any(s.parent.element_orders[s.members] > p):
        return None
    return p, int(factorint(s.order)[p])


def is_normal(group: Group, sub: Subgroup) -> bool:
    for g in group.generators:
        if not sub.mask[group.conjugation_images(g)[sub.members]].all():
            return False
    return True


def is_minimal_normal_under(group: Group, sub: Subgroup) -> bool:
    """True iff every non-identity element of ``sub`` has normal closure ``sub``."""
    if not is_normal(group, sub):
        raise StructureError('subgroup is not normal')
    if sub.is_trivial():
        raise StructureError('subgroup must be nontrivial')
    ccd = conjugacy_classes(group)
    for c in ccd.classes_of(sub.members):
        if c == 0:
            continue
        if normal_closure(group, [ccd.reps[c]]).order != sub.order:
            return False
    return True


# -- Frobenius groups ---------------------------------------------------------------------------


def frobenius_decomposition(group: Group) -> Optional[Tuple[Subgroup, Subgroup]]:
    """(K, L) with K the nilpotent residual acting as Frobenius kernel, L a complement."""
    if is_nilpotent(group):
        return None
    kernel = nilpotent_residual(group)
    k, n = kernel.order, group.order
    if k in (1, n):
        return None
    m = n // k
    if gcd(k, m) != 1:
        return None
    ccd = conjugacy_classes(group)
    for c in ccd.classes_of(kernel.members):
        if c != 0 and np.any(centralizer_mask(group, ccd.reps[c]) & ~kernel.mask):
            return None
    complement = _find_complement(group, kernel, m)
    if complement is None:
        logger.warning(f'No complement of order {m} found within the candidate budget')
        return None
    return kernel, complement


def _find_complement(group: Group, kernel: Subgroup, m: int) -> Optional[Subgroup]:
    orders = group.element_orders
    candidates = np.nonzero((m % orders == 0) & ~kernel.mask)[0]
    seeds = sorted((int(x) for x in candidates), key=lambda x: (-int(orders[x]), x))
    attempts = 0
    budget = PERFORMANCE_CONFIG['complement_candidates']
    for seed in seeds:
        gens = [seed]
        mask = closure_mask(group, gens, limit=m)
        size = int(mask.sum())
        attempts += 1
        if size > m or m % size:
            continue
        if size == m:
            return subgroup_from_mask(group, mask, gens)
        for x in candidates:
            if mask[x]:
                continue
            attempts += 1
            if attempts > budget:
                return None
            trial = closure_mask(group, gens + [int(x)], limit=m)
            size = int(trial.sum())
            if size <= m and m % size == 0:
                gens.append(int(x))
                mask = trial
                if size == m:
                    return subgroup_from_mask(group, mask, gens)
    return None


def transitive_on_involutions(complement: Subgroup, kernel: Subgroup) -> bool:
    """Whether conjugation by ``complement`` is transitive on the involutions of ``kernel``."""
    group = kernel.parent
    for g in complement.generators:
        if not kernel.mask[group.conjugation_images(g)[kernel.members]].all():
            raise StructureError('complement does not normalize the kernel')
    involutions = kernel.members[group.element_orders[kernel.members] == 2]
    if involutions.size <= 1:
        return True
    seen = {int(involutions[0])}
    frontier = [int(involutions[0])]
    while frontier:
        nxt = []
        for g in complement.generators:
            images = group.conjugation_images(g)
            for x in frontier:
                y = int(images[x])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen) == involutions.size


def is_suzuki_2group_kernel(kernel: Subgroup, complement: Subgroup) -> bool:
    group = kernel.parent
    if is_p_group(kernel) != 2 or is_abelian(kernel):
        return False
    kd = derived_subgroup(group, kernel)
    z = center(group, kernel)
    square_roots_of_one = kernel.members[group.element_orders[kernel.members] <= 2]
    if not (np.array_equal(kd.members, z.members)
            and np.array_equal(kd.members, square_roots_of_one)):
        return False
    if kernel.order != kd.order ** 2:
        return False
    if not is_cyclic(complement) or complement.order != kd.order - 1:
        return False
    return transitive_on_involutions(complement, kernel)
