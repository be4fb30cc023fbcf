"""Group family constructors, simple-group fingerprints and the builtin corpus.

Every constructor returns a concrete GroupSpec (multiplication table, permutation generators
or a semidirect product of those), so realization never depends on this module's internals.
"""
import hashlib
import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import galois
import numpy as np
from sympy import isprime

from .errors import CatalogError, GalconjError, SpecError
from .groups import GroupSpec, PermutationGroup, spec_from_dict

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / 'resources' / 'data'
MANIFEST = 'manifest.json'

CATALOG_ONLY_NOTE = 'catalog-recognized, not independently verified'

SZ8_ORDER = 29120


# -- helpers ------------------------------------------------------------------------------

def _digits(values: np.ndarray, base: int, count: int) -> np.ndarray:
    """Little-endian base-`base` digits, shape (len(values), count)."""
    out = np.empty((len(values), count), dtype=np.int64)
    rest = np.asarray(values, dtype=np.int64).copy()
    for i in range(count):
        rest, out[:, i] = np.divmod(rest, base)
    return out


def _mixed_digits(values: np.ndarray, bases: Sequence[int]) -> np.ndarray:
    out = np.empty((len(values), len(bases)), dtype=np.int64)
    rest = np.asarray(values, dtype=np.int64).copy()
    for i, b in enumerate(bases):
        rest, out[:, i] = np.divmod(rest, b)
    return out


def _weights(bases: Sequence[int]) -> np.ndarray:
    return np.cumprod([1] + list(bases[:-1])).astype(np.int64)


def _table_spec(table: np.ndarray, label: Optional[str] = None) -> GroupSpec:
    return GroupSpec('mult-table', {'table': np.asarray(table).tolist()}, label)


def _perm_spec(degree: int, generators: Sequence[np.ndarray],
               label: Optional[str] = None) -> GroupSpec:
    return GroupSpec('perm-gens', {
        'degree': degree,
        'generators': [[int(v) for v in g] for g in generators],
    }, label)


def _as_ints(values: Any) -> np.ndarray:
    return np.asarray(values.view(np.ndarray), dtype=np.int64)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CatalogError(message)


def _require_prime(q: int, name: str = 'q') -> None:
    _require(isinstance(q, int) and q >= 2 and isprime(q), f'{name} = {q} is not a prime')


def _check_bijection(perm: np.ndarray, where: str) -> None:
    _require(np.array_equal(np.sort(perm), np.arange(len(perm))), f'{where} is not a bijection')


def _assert_fixed_point_free(degree: int, generators: Sequence[np.ndarray],
                             where: str) -> int:
    """Close the generators and check every non-identity element fixes only point 0."""
    group = PermutationGroup.from_generators(degree, [list(g) for g in generators])
    for x in range(1, group.order):
        moved = group.perm(x) != np.arange(degree)
        if int((~moved).sum()) != 1:
            raise CatalogError(f'{where}: a non-identity element fixes a non-zero point')
    return group.order


# -- abelian families ---------------------------------------------------------------------

def cyclic(n: int) -> GroupSpec:
    _require(n >= 1, f'cyclic order must be positive, got {n}')
    idx = np.arange(n)
    return _table_spec((idx[:, None] + idx[None, :]) % n, f'C{n}')


def abelian(*orders: int) -> GroupSpec:
    _require(len(orders) >= 1 and all(d >= 1 for d in orders),
             'abelian needs one or more positive cyclic orders')
    n = int(np.prod(orders))
    digits = _mixed_digits(np.arange(n), orders)
    bases = np.asarray(orders, dtype=np.int64)
    summed = (digits[:, None, :] + digits[None, :, :]) % bases
    table = (summed * _weights(orders)).sum(axis=-1)
    return _table_spec(table, ' x '.join(f'C{d}' for d in orders))


def elementary_abelian(q: int, n: int) -> GroupSpec:
    _require_prime(q)
    _require(n >= 1, f'rank must be positive, got {n}')
    spec = abelian(*([q] * n))
    return GroupSpec(spec.kind, spec.payload, f'{q}^{n}')


def dihedral(n: int) -> GroupSpec:
    """Dihedral group of order n on r^i s^j stored as i + m j."""
    _require(n >= 2 and n % 2 == 0, f'dihedral order must be even and at least 2, got {n}')
    m = n // 2
    idx = np.arange(n)
    i, j = idx % m, idx // m
    sign = np.where(j == 1, -1, 1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % m
    ref = (j[:, None] + j[None, :]) % 2
    return _table_spec(rot + m * ref, f'D{n}')


# -- p-groups -----------------------------------------------------------------------------

_EXTRASPECIAL_VARIANTS = {
    2: {1: '+', -1: '-'},
    'odd': {1: 'exp-p', 2: 'exp-p2'},
}


def extraspecial(p: int, n: int, variant: int) -> GroupSpec:
    """Order p^(1+2n) on triples (a, b, c), a and b in Z_p^n, with a central cocycle in c.

    For p = 2 variant +1/-1 picks the plus or minus type; for odd p variant 1 gives
    exponent p and 2 gives exponent p^2.
    """
    _require_prime(p, 'p')
    _require(n >= 1, f'n must be positive, got {n}')
    variants = _EXTRASPECIAL_VARIANTS[2 if p == 2 else 'odd']
    _require(variant in variants, f'invalid variant {variant} for p = {p}')

    half = p ** n
    order = p * half * half
    idx = np.arange(order)
    c = idx % p
    b = _digits((idx // p) % half, p, n)
    a = _digits(idx // (p * half), p, n)

    cocycle = np.einsum('xi,yi->xy', a, b)
    if p == 2 and variant == -1:
        cocycle = cocycle + np.outer(a[:, 0], a[:, 0]) + np.outer(b[:, 0], b[:, 0])
    elif p != 2 and variant == 2:
        cocycle = cocycle + (a[:, 0][:, None] + a[:, 0][None, :] >= p)

    new_a = (a[:, None, :] + a[None, :, :]) % p
    new_b = (b[:, None, :] + b[None, :, :]) % p
    new_c = (c[:, None] + c[None, :] + cocycle) % p
    w = _weights([p] * n)
    table = new_c + p * (new_b * w).sum(axis=-1) + p * half * (new_a * w).sum(axis=-1)
    return _table_spec(table, f'{p}^(1+{2 * n}){variants[variant]}')


def modular_maximal_cyclic(p: int, n: int) -> GroupSpec:
    """<a, b | a^(p^(n-1)) = b^p = 1, a^b = a^(1 + p^(n-2))>."""
    _require_prime(p, 'p')
    _require(n >= (4 if p == 2 else 3), f'modular_maximal_cyclic({p},{n}) is below threshold')
    m = p ** (n - 1)
    multiplier = 1 + p ** (n - 2)
    action = [int(x * multiplier % m) for x in range(m)]
    return GroupSpec('semidirect', {
        'kernel': cyclic(m),
        'actor': cyclic(p),
        'action': [action],
    }, f'M{p}({n})')


# -- Frobenius groups ---------------------------------------------------------------------

def affine_frobenius(q: int, n: int, d: int) -> GroupSpec:
    """GF(q^n)+ extended by the index-d subgroup of GF(q^n)^x acting by multiplication."""
    _require_prime(q)
    _require(n >= 1, f'n must be positive, got {n}')
    size = q ** n
    _require(d >= 1 and (size - 1) % d == 0, f'd = {d} does not divide {size - 1}')
    field_ = galois.GF(size)
    lam = field_.primitive_element ** d
    perm = _as_ints(field_.elements * lam)
    _check_bijection(perm, 'multiplication map')
    l_order = _assert_fixed_point_free(size, [perm], f'affine_frobenius({q},{n},{d})')
    _require(l_order == (size - 1) // d, 'complement has the wrong order')
    logger.debug(f'affine_frobenius({q},{n},{d}): |K| = {size}, |L| = {l_order}')
    return GroupSpec('semidirect', {
        'kernel': elementary_abelian(q, n),
        'actor': _perm_spec(size, [perm]),
        'action': [[int(v) for v in perm]],
    }, f'AF({q},{n},{d})')


def _q8_pair(q: int) -> Tuple[int, int]:
    for a in range(q):
        for b in range(q):
            if (a * a + b * b + 1) % q == 0:
                return a, b
    raise CatalogError(f'no solution of a^2 + b^2 = -1 modulo {q}')


def v_rtimes_q8(q: int) -> GroupSpec:
    """(C_q x C_q) x| Q8 with Q8 acting through i = [[0,-1],[1,0]] and j = [[a,b],[b,-a]]."""
    _require(q in (3, 7), f'v_rtimes_q8 is defined for q in (3, 7), got {q}')
    a, b = _q8_pair(q)
    mats = [np.array([[0, -1], [1, 0]]), np.array([[a, b], [b, -a]])]
    idx = np.arange(q * q)
    vectors = np.stack([idx % q, idx // q])
    perms = []
    for mat in mats:
        image = (mat @ vectors) % q
        perms.append(image[0] + q * image[1])
    for perm in perms:
        _check_bijection(perm, 'Q8 matrix action')
    l_order = _assert_fixed_point_free(q * q, perms, f'v_rtimes_q8({q})')
    _require(l_order == 8, f'matrix images generate a group of order {l_order}, not Q8')
    return GroupSpec('semidirect', {
        'kernel': elementary_abelian(q, 2),
        'actor': _perm_spec(q * q, perms),
        'action': [[int(v) for v in p] for p in perms],
    }, f'{q}^2:Q8')


def suzuki_frobenius(n: int) -> GroupSpec:
    """Kernel on GF(2^n)^2 with (a,b)(c,d) = (a+c, b+d+a^2 c); L acts by (la, l^3 b)."""
    _require(n >= 3 and n % 2 == 1, f'suzuki_frobenius needs odd n >= 3, got {n}')
    size = 2 ** n
    field_ = galois.GF(size)
    idx = np.arange(size * size)
    a = field_(idx % size)
    b = field_(idx // size)
    new_a = _as_ints(a[:, None] + a[None, :])
    new_b = _as_ints(b[:, None] + b[None, :] + (a ** 2)[:, None] * a[None, :])
    kernel = _table_spec(new_a + size * new_b, f'A({n},2)')

    lam = field_.primitive_element
    perm = _as_ints(a * lam) + size * _as_ints(b * lam ** 3)
    _check_bijection(perm, 'complement action')
    l_order = _assert_fixed_point_free(size * size, [perm], f'suzuki_frobenius({n})')
    _require(l_order == size - 1, 'complement has the wrong order')
    return GroupSpec('semidirect', {
        'kernel': kernel,
        'actor': _perm_spec(size * size, [perm]),
        'action': [[int(v) for v in perm]],
    }, f'2^{2 * n}:{size - 1}')


# -- non-solvable groups ------------------------------------------------------------------

def alternating5() -> GroupSpec:
    return _perm_spec(5, [np.array([1, 2, 3, 4, 0]), np.array([1, 2, 0, 3, 4])], 'A5')


def psl27() -> GroupSpec:
    return _perm_spec(7, [np.array([1, 2, 3, 4, 5, 6, 0]), np.array([0, 1, 6, 3, 5, 4, 2])],
                      'L3(2)')


def symmetric4() -> GroupSpec:
    return _perm_spec(4, [np.array([1, 2, 3, 0]), np.array([1, 0, 2, 3])], 'S4')


def derive_sz8_generators() -> Dict[str, Any]:
    """Sz(8) on the 65 points of the Tits ovoid, sigma(x) = x^4, as stored in sz8.gens.json.

    Point 0 is infinity and the affine point (x, y) is 1 + x + 8y.
    """
    field_ = galois.GF(8)
    idx = np.arange(64)
    x = field_(idx % 8)
    y = field_(idx // 8)

    def encode(u: Any, v: Any) -> np.ndarray:
        return 1 + _as_ints(u) + 8 * _as_ints(v)

    translation = np.concatenate([[0], encode(x + field_(1), y + x)])
    kappa = field_.primitive_element
    diagonal = np.concatenate([[0], encode(kappa * x, kappa ** 5 * y)])

    f = x * y + x ** 6 + y ** 4
    swap = np.empty(65, dtype=np.int64)
    swap[0], swap[1] = 1, 0
    rest = idx[1:]
    if np.any(_as_ints(f[rest]) == 0):
        raise CatalogError('ovoid form vanishes off the origin')
    swap[1 + rest] = encode(y[rest] / f[rest], x[rest] / f[rest])
    _require(np.array_equal(swap[swap], np.arange(65)), 'ovoid swap is not an involution')
    gens = (translation, diagonal, swap)
    return {'degree': 65, 'generators': [[int(v) for v in g] for g in gens]}


@lru_cache(maxsize=1)
def _sz8_generators() -> Tuple[Tuple[int, ...], ...]:
    data = load_bundled('sz8.gens.json')
    _require(data.get('degree') == 65, 'sz8.gens.json: degree must be 65')
    gens = tuple(np.asarray(g, dtype=np.int64) for g in data.get('generators', ()))
    _require(len(gens) == 3, 'sz8.gens.json: expected three generators')
    for i, g in enumerate(gens):
        _check_bijection(g, f'Sz(8) generator {i}')
    return tuple(tuple(int(v) for v in g) for g in gens)


def sz8() -> GroupSpec:
    return _perm_spec(65, [np.array(g) for g in _sz8_generators()], 'Sz(8)')


# -- family registry ----------------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    builder: Callable[..., GroupSpec]
    arity: Tuple[int, Optional[int]]
    order: Callable[..., int]
    summary: str


def _affine_order(q: int, n: int, d: int) -> int:
    return q ** n * ((q ** n - 1) // d)


FAMILIES: Dict[str, Family] = {
    'cyclic': Family(cyclic, (1, 1), lambda n: n, 'cyclic group of order n'),
    'abelian': Family(abelian, (1, None), lambda *ds: int(np.prod(ds)),
                      'direct product of cyclic groups'),
    'elementary_abelian': Family(elementary_abelian, (2, 2), lambda q, n: q ** n,
                                 'elementary abelian group of order q^n'),
    'dihedral': Family(dihedral, (1, 1), lambda n: n, 'dihedral group of order n'),
    'extraspecial': Family(extraspecial, (3, 3), lambda p, n, v: p ** (1 + 2 * n),
                           'extraspecial group of order p^(1+2n)'),
    'modular_maximal_cyclic': Family(modular_maximal_cyclic, (2, 2), lambda p, n: p ** n,
                                     'p-group of order p^n with a cyclic maximal subgroup'),
    'affine_frobenius': Family(affine_frobenius, (3, 3), _affine_order,
                               'GF(q^n) extended by an index-d multiplicative subgroup'),
    'v_rtimes_q8': Family(v_rtimes_q8, (1, 1), lambda q: 8 * q * q,
                          '(C_q x C_q) x| Q8 for q = 3 or 7'),
    'suzuki_frobenius': Family(suzuki_frobenius, (1, 1),
                               lambda n: 4 ** n * (2 ** n - 1),
                               'Suzuki 2-group kernel extended by GF(2^n)^x'),
    'alternating5': Family(alternating5, (0, 0), lambda: 60, 'A5 on 5 points'),
    'psl27': Family(psl27, (0, 0), lambda: 168, 'L3(2) on the 7 points of the Fano plane'),
    'sz8': Family(sz8, (0, 0), lambda: SZ8_ORDER, 'Sz(8) on the 65 points of the ovoid'),
    'symmetric4': Family(symmetric4, (0, 0), lambda: 24, 'S4 on 4 points'),
}


def _family(name: str, params: Sequence[int]) -> Family:
    family = FAMILIES.get(name)
    if family is None:
        raise CatalogError(f'unknown family {name!r}')
    low, high = family.arity
    if len(params) < low or (high is not None and len(params) > high):
        expected = str(low) if low == high else f'{low}..{high if high is not None else "n"}'
        raise CatalogError(f'{name} takes {expected} parameter(s), got {len(params)}')
    return family


@lru_cache(maxsize=64)
def build_family(name: str, params: Tuple[int, ...]) -> GroupSpec:
    spec = _family(name, params).builder(*params)
    logger.debug(f'Built family {name}{params}')
    return spec


def expand_family(spec: GroupSpec) -> GroupSpec:
    """Replace a family spec by the concrete spec its constructor produces."""
    if spec.kind != 'family':
        return spec
    built = build_family(spec.payload['name'], tuple(spec.payload['params']))
    return GroupSpec(built.kind, built.payload, spec.label or spec.display_name)


def family_order(name: str, params: Sequence[int]) -> int:
    return int(_family(name, params).order(*params))


def spec_order(spec: GroupSpec) -> Optional[int]:
    """Order read off the spec without realizing it, when the spec says it directly."""
    if spec.kind == 'family':
        return family_order(spec.payload['name'], spec.payload['params'])
    if spec.kind == 'mult-table':
        return len(spec.payload['table'])
    if spec.kind == 'direct-product':
        left, right = (spec_order(f) for f in spec.payload['factors'])
        return left * right if left and right else None
    if spec.kind == 'semidirect':
        left, right = spec_order(spec.payload['kernel']), spec_order(spec.payload['actor'])
        return left * right if left and right else None
    return None


_VARIANT_TOKENS = {'+': 1, '-': -1, '−': -1, 'exp-p': 1, 'exp-p2': 2, 'exp-p^2': 2}


def parse_family_params(name: str, tokens: Sequence[str]) -> List[int]:
    """Command-line parameters to integers; extraspecial accepts +, -, exp-p and exp-p2."""
    params: List[int] = []
    for i, token in enumerate(tokens):
        if name == 'extraspecial' and i == 2 and token in _VARIANT_TOKENS:
            params.append(_VARIANT_TOKENS[token])
            continue
        try:
            params.append(int(token))
        except ValueError as e:
            raise CatalogError(f'{name}: parameter {token!r} is not an integer') from e
    _family(name, params)
    return params


def family_spec(name: str, params: Sequence[int], label: Optional[str] = None) -> GroupSpec:
    _family(name, params)
    return GroupSpec('family', {'name': name, 'params': list(params)}, label)


# -- bundled data -------------------------------------------------------------------------

@lru_cache(maxsize=1)
def _manifest() -> Dict[str, str]:
    try:
        data = json.loads((DATA_DIR / MANIFEST).read_text(encoding='utf-8'))
    except (OSError, json.JSONDecodeError) as e:
        raise CatalogError(f'cannot read the data manifest: {e}') from e
    return data.get('files', {})


def load_bundled(name: str) -> Any:
    """Load a bundled data file after checking its SHA-256 against the manifest."""
    expected = _manifest().get(name)
    if expected is None:
        raise CatalogError(f'{name} is not listed in the data manifest')
    try:
        raw = (DATA_DIR / name).read_bytes()
    except OSError as e:
        raise CatalogError(f'cannot read bundled file {name}: {e}') from e
    digest = hashlib.sha256(raw).hexdigest()
    if digest != expected:
        raise CatalogError(f'{name} does not match its pinned hash')
    return json.loads(raw.decode('utf-8'))


@dataclass(frozen=True)
class SimpleGroupFingerprint:
    name: str
    order: int
    class_count: Optional[int] = None
    degrees: Optional[Tuple[int, ...]] = None
    catalog_only: bool = False
    spec: Optional[GroupSpec] = field(default=None, compare=False)

    def matches(self, order: int, class_count: Optional[int] = None,
                degrees: Optional[Sequence[int]] = None) -> bool:
        if order != self.order:
            return False
        if class_count is not None and self.class_count is not None:
            if class_count != self.class_count:
                return False
        if degrees is not None and self.degrees is not None:
            return tuple(sorted(degrees)) == self.degrees
        return True


_COMPUTED = (
    ('A5', 60, (1, 3, 3, 4, 5), alternating5),
    ('L3(2)', 168, (1, 3, 3, 6, 7, 8), psl27),
    ('Sz(8)', SZ8_ORDER, (1, 14, 14, 35, 35, 35, 64, 65, 65, 65, 91), sz8),
)

_FEASIBLE_PRODUCTS = (('A5', 'Sz(8)'), ('L3(2)', 'Sz(8)'))


@lru_cache(maxsize=1)
def simple_group_catalog() -> Tuple[SimpleGroupFingerprint, ...]:
    """Fingerprints of the simple groups and products a GC*-group can be."""
    entries = []
    by_name = {}
    for name, order, degrees, builder in _COMPUTED:
        fp = SimpleGroupFingerprint(name, order, len(degrees), degrees, False,
                                    family_spec(builder.__name__, []))
        by_name[name] = fp
        entries.append(fp)
    for left, right in _FEASIBLE_PRODUCTS:
        a, b = by_name[left], by_name[right]
        degrees = tuple(sorted(x * y for x in a.degrees for y in b.degrees))
        spec = GroupSpec('direct-product', {'factors': [a.spec, b.spec]})
        entries.append(SimpleGroupFingerprint(f'{left} x {right}', a.order * b.order,
                                              len(degrees), degrees, False, spec))
    for name, order in sorted(load_bundled('sporadic_orders.json').items()):
        entries.append(SimpleGroupFingerprint(name, int(order), catalog_only=True))
    return tuple(entries)


def fingerprint(name: str) -> SimpleGroupFingerprint:
    for fp in simple_group_catalog():
        if fp.name == name:
            return fp
    raise CatalogError(f'no catalog entry named {name!r}')


# -- corpus -------------------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    name: str
    spec: Optional[GroupSpec]
    expected_tag: Optional[str] = None
    expected_params: Tuple[Any, ...] = ()
    expected_gcstar: Optional[bool] = None
    expected_distinct_degrees: Optional[bool] = None
    provenance: str = ''
    catalog: Optional[str] = None
    slow: bool = False
    error: Optional[str] = None

    @property
    def catalog_only(self) -> bool:
        return self.spec is None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'name': self.name, 'provenance': self.provenance}
        if self.spec is not None:
            data['spec'] = self.spec.to_dict()
        if self.catalog is not None:
            data['catalog'] = self.catalog
        if self.expected_tag is not None:
            data['expected'] = {'tag': self.expected_tag, 'params': list(self.expected_params)}
        if self.expected_gcstar is not None:
            data['expected_gcstar'] = self.expected_gcstar
        if self.expected_distinct_degrees is not None:
            data['expected_distinct_degrees'] = self.expected_distinct_degrees
        if self.slow:
            data['slow'] = True
        if self.error is not None:
            data['error'] = self.error
        return data


def corpus_entry_from_dict(data: Dict[str, Any], where: str = '$') -> CorpusEntry:
    """Accept either a bare group spec or an entry object with expectations."""
    if not isinstance(data, dict):
        raise SpecError(f'{where}: corpus entry must be an object')
    if 'kind' in data:
        spec = spec_from_dict(data, where)
        return CorpusEntry(name=spec.display_name, spec=spec)
    name = data.get('name')
    if not isinstance(name, str):
        raise SpecError(f'{where}.name: must be a string')
    spec = spec_from_dict(data['spec'], f'{where}.spec') if 'spec' in data else None
    catalog = data.get('catalog')
    error = data.get('error')
    if spec is None and catalog is None and error is None:
        raise SpecError(f'{where}: entry needs a spec or a catalog name')
    expected = data.get('expected') or {}
    return CorpusEntry(
        name=name,
        spec=spec,
        expected_tag=expected.get('tag'),
        expected_params=tuple(expected.get('params', ())),
        expected_gcstar=data.get('expected_gcstar'),
        expected_distinct_degrees=data.get('expected_distinct_degrees'),
        provenance=data.get('provenance', ''),
        catalog=catalog,
        slow=bool(data.get('slow', False)),
        error=error,
    )


def builtin_corpus() -> List[CorpusEntry]:
    entries = load_bundled('corpus.json')
    return [corpus_entry_from_dict(e, f'corpus[{i}]') for i, e in enumerate(entries)]


def load_corpus_dir(directory: Path) -> List[CorpusEntry]:
    """Every *.json file in the directory, in file-name order.

    A file that cannot be read or parsed becomes an entry carrying the error, so the rest of the
    directory still runs.
    """
    entries = []
    for path in sorted(Path(directory).glob('*.json')):
        try:
            data = json.loads(path.read_text(encoding='utf-8'))
            entry = corpus_entry_from_dict(data, path.name)
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            entry = _broken_entry(path, f'{path.name}: unreadable corpus file: {e}')
        except GalconjError as e:
            entry = _broken_entry(path, str(e))
        else:
            if 'kind' in data and not entry.spec.label:
                entry = CorpusEntry(name=path.stem, spec=entry.spec)
        entries.append(entry)
    return entries


def _broken_entry(path: Path, message: str) -> CorpusEntry:
    logger.warning(message)
    return CorpusEntry(name=path.stem, spec=None, error=message)
