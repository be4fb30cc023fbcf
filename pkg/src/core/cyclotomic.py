"""Exact arithmetic in cyclotomic fields Q(zeta_e).

A value is stored at a conductor ``e`` as integer numerators over one positive denominator,
in the power basis ``1, z, ..., z^(phi(e)-1)`` reduced modulo the e-th cyclotomic polynomial.
Arithmetic lifts both operands to the lcm of their conductors; results stay there until
``minimize()`` is asked for.
"""
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, Symbol, divisors, primefactors

from .errors import CyclotomicError
from ..utils.numbers import euler_phi, lcm, lcm_all, units_mod

Rat = Fraction
Number = Union[int, Fraction, 'Cyclotomic']

_X = Symbol('x')


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> Tuple[int, ...]:
    """Coefficients of Phi_e, constant term first, by exact division of x^e - 1."""
    if e < 1:
        raise CyclotomicError(f'conductor must be positive, got {e}')
    poly = Poly(_X ** e - 1, _X)
    for d in divisors(e)[:-1]:
        poly = poly.exquo(Poly(list(reversed(cyclotomic_polynomial(d))), _X))
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _modulus(e: int) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    coeffs = cyclotomic_polynomial(e)
    phi = len(coeffs) - 1
    return phi, tuple((i, c) for i, c in enumerate(coeffs[:-1]) if c)


def _reduce(e: int, acc: List[int]) -> Tuple[int, ...]:
    """Reduce exponent-space coefficients (length e) modulo Phi_e."""
    phi, low = _modulus(e)
    for m in range(len(acc) - 1, phi - 1, -1):
        c = acc[m]
        if c:
            acc[m] = 0
            shift = m - phi
            for i, t in low:
                acc[shift + i] -= c * t
    return tuple(acc[:phi])


def _gcd_all(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)


class Cyclotomic:
    """An exact element of Q(zeta_e)."""

    __slots__ = ('_e', '_num', '_den', '_minimal')

    def __init__(self, e: int, coeffs: Sequence[Any] = ()):
        """Build from exponent-space coefficients: ``coeffs[j]`` multiplies ``zeta_e ** j``."""
        if e < 1:
            raise CyclotomicError(f'conductor must be positive, got {e}')
        fracs = [Fraction(c) for c in coeffs]
        den = lcm_all(f.denominator for f in fracs)
        acc = [0] * e
        for j, f in enumerate(fracs):
            if f:
                acc[j % e] += f.numerator * (den // f.denominator)
        self._set(e, _reduce(e, acc), den)

    def _set(self, e: int, num: Tuple[int, ...], den: int) -> None:
        g = _gcd_all(num)
        if g == 0:
            den = 1
        else:
            g = gcd(g, den)
            if g > 1:
                num = tuple(c // g for c in num)
                den //= g
        self._e = e
        self._num = num
        self._den = den
        self._minimal: Optional[Cyclotomic] = None

    @classmethod
    def _raw(cls, e: int, num: Tuple[int, ...], den: int = 1) -> 'Cyclotomic':
        obj = cls.__new__(cls)
        obj._set(e, tuple(num), den)
        return obj

    @classmethod
    def _from_exponents(cls, e: int, acc: List[int], den: int = 1) -> 'Cyclotomic':
        return cls._raw(e, _reduce(e, acc), den)

    @classmethod
    def rational(cls, value: Union[int, Fraction]) -> 'Cyclotomic':
        value = Fraction(value)
        return cls._raw(1, (value.numerator,), value.denominator)

    @classmethod
    def zeta(cls, e: int, j: int = 1) -> 'Cyclotomic':
        acc = [0] * e
        acc[j % e] = 1
        return cls._from_exponents(e, acc)

    @classmethod
    def from_multiplicities(cls, e: int, multiplicities: Sequence[int]) -> 'Cyclotomic':
        """Sum of m_j * zeta_e**j for non-negative integer multiplicities."""
        acc = [0] * e
        for j, m in enumerate(multiplicities):
            acc[j % e] += int(m)
        return cls._from_exponents(e, acc)

    # -- accessors ------------------------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._e

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def key(self) -> Tuple[int, Tuple[int, ...], int]:
        return self._e, self._num, self._den

    @property
    def canonical_key(self) -> Tuple[int, Tuple[int, ...], int]:
        return self.minimize().key

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_integral(self) -> bool:
        """Whether all power-basis coefficients are integers."""
        return self._den == 1

    def is_rational(self) -> Optional[Fraction]:
        if any(self._num[1:]):
            return None
        return Fraction(self._num[0] if self._num else 0, self._den)

    # -- conductor changes ----------------------------------------------------------------

    def _terms(self, target: int, sign: int = 1) -> List[Tuple[int, int]]:
        s = target // self._e
        return [((sign * j * s) % target, c) for j, c in enumerate(self._num) if c]

    def lift(self, target: int) -> 'Cyclotomic':
        if target % self._e:
            raise CyclotomicError(f'cannot lift conductor {self._e} to {target}')
        if target == self._e:
            return self
        acc = [0] * target
        for j, c in self._terms(target):
            acc[j] += c
        return Cyclotomic._from_exponents(target, acc, self._den)

    def minimize(self) -> 'Cyclotomic':
        """The same value at its least conductor (never 2 mod 4)."""
        if self._minimal is not None:
            return self._minimal
        rational = self.is_rational()
        if rational is not None:
            z = Cyclotomic.rational(rational)
        else:
            z = self
            for p in primefactors(self._e):
                while z._e % p == 0 and z._fixed_below(p):
                    z = z._descend(p)
        z._minimal = z
        self._minimal = z
        return z

    def _fixed_below(self, p: int) -> bool:
        e = self._e
        sub = e // p
        for t in range(1, p):
            k = 1 + t * sub
            if gcd(k, e) == 1 and self.galois(k) != self:
                return False
        return True

    def _descend(self, p: int) -> 'Cyclotomic':
        e = self._e
        m = e // p
        if m % p == 0:
            if any(c for j, c in enumerate(self._num) if j % p):
                raise CyclotomicError(f'value is not in Q(zeta_{m})')
            return Cyclotomic._raw(m, self._num[::p][:euler_phi(m)], self._den)
        inv_p = pow(p, -1, m) if m > 1 else 0
        inv_m = pow(m, -1, p)
        acc = [0] * m
        for j, c in enumerate(self._num):
            if not c:
                continue
            x = (j * inv_p) % m
            if (j * inv_m) % p == 0:
                acc[x] += c * (p - 1)
            else:
                acc[x] -= c
        return Cyclotomic._from_exponents(m, acc, self._den * (p - 1))

    # -- field operations -----------------------------------------------------------------

    @staticmethod
    def _coerce(other: Any) -> Optional['Cyclotomic']:
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Cyclotomic.rational(other)
        return None

    def _common(self, other: 'Cyclotomic') -> Tuple['Cyclotomic', 'Cyclotomic']:
        target = lcm(self._e, other._e)
        return self.lift(target), other.lift(target)

    def __add__(self, other: Number) -> 'Cyclotomic':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        num = tuple(x * b._den + y * a._den for x, y in zip(a._num, b._num))
        return Cyclotomic._raw(a._e, num, a._den * b._den)

    __radd__ = __add__

    def __neg__(self) -> 'Cyclotomic':
        return Cyclotomic._raw(self._e, tuple(-c for c in self._num), self._den)

    def __sub__(self, other: Number) -> 'Cyclotomic':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> 'Cyclotomic':
        return (-self) + other

    def scale(self, factor: Union[int, Fraction]) -> 'Cyclotomic':
        factor = Fraction(factor)
        return Cyclotomic._raw(
            self._e, tuple(c * factor.numerator for c in self._num), self._den * factor.denominator
        )

    def __mul__(self, other: Number) -> 'Cyclotomic':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other._e == 1:
            return self.scale(Fraction(other._num[0], other._den))
        if self._e == 1:
            return other.scale(Fraction(self._num[0], self._den))
        target = lcm(self._e, other._e)
        acc = [0] * target
        right = other._terms(target)
        for i, a in self._terms(target):
            for j, b in right:
                acc[(i + j) % target] += a * b
        return Cyclotomic._from_exponents(target, acc, self._den * other._den)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Product of all Galois conjugates over Q(zeta_e)."""
        product: Cyclotomic = Cyclotomic.rational(1)
        for k in units_mod(self._e):
            product = product * self.galois(k)
        value = product.is_rational()
        if value is None:
            raise CyclotomicError('norm did not land in Q')
        return value

    def inverse(self) -> 'Cyclotomic':
        if self.is_zero():
            raise ZeroDivisionError('inverse of zero')
        rational = self.is_rational()
        if rational is not None:
            return Cyclotomic.rational(1 / rational)
        others: Cyclotomic = Cyclotomic.rational(1)
        for k in units_mod(self._e):
            if k != 1:
                others = others * self.galois(k)
        total = (self * others).is_rational()
        if not total:
            raise CyclotomicError('norm did not land in Q')
        return others.scale(1 / total)

    def __truediv__(self, other: Number) -> 'Cyclotomic':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> 'Cyclotomic':
        return self.inverse() * other

    def __eq__(self, other: object) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._e == other._e:
            return self._num == other._num and self._den == other._den
        a, b = self._common(other)
        return a._num == b._num and a._den == b._den

    def __hash__(self) -> int:
        return hash(self.canonical_key)

    # -- Galois action --------------------------------------------------------------------

    def galois(self, k: int) -> 'Cyclotomic':
        """Image under zeta_e -> zeta_e**k."""
        e = self._e
        if gcd(k, e) != 1:
            raise CyclotomicError(f'{k} is not coprime to conductor {e}')
        k %= e
        if k == 1 or e <= 2:
            return self
        acc = [0] * e
        for j, c in enumerate(self._num):
            if c:
                acc[(j * k) % e] += c
        return Cyclotomic._from_exponents(e, acc, self._den)

    def conjugate(self) -> 'Cyclotomic':
        return self.galois(-1)

    def abs_square(self) -> 'Cyclotomic':
        return self * self.conjugate()

    # -- rendering ------------------------------------------------------------------------

    def approx(self) -> complex:
        """Floating approximation, for display and spot checks only."""
        j = np.arange(len(self._num))
        values = np.exp(2j * np.pi * j / self._e) * np.array(self._num, dtype=float)
        return complex(values.sum() / self._den)

    def render(self, with_conductor: bool = True) -> str:
        z = self.minimize()
        text = _render_poly(z.coeffs)
        if with_conductor and z._e > 1:
            text += f' (conductor {z._e})'
        return text

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        coeffs = ', '.join(str(c) for c in self.coeffs)
        return f'Cyclotomic({self._e}, [{coeffs}])'

    def to_json(self) -> Dict[str, Any]:
        return {'e': self._e, 'coeffs': [[f.numerator, f.denominator] for f in self.coeffs]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'Cyclotomic':
        try:
            e = int(data['e'])
            coeffs = [Fraction(int(n), int(d)) for n, d in data['coeffs']]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise CyclotomicError(f'malformed cyclotomic JSON: {exc}') from exc
        if e < 1 or len(coeffs) != euler_phi(e):
            raise CyclotomicError(f'expected {euler_phi(max(e, 1))} coefficients at conductor {e}')
        den = lcm_all(c.denominator for c in coeffs)
        return cls._raw(e, tuple(c.numerator * (den // c.denominator) for c in coeffs), den)


def _render_poly(coeffs: Sequence[Fraction]) -> str:
    parts = []
    for j, c in enumerate(coeffs):
        if not c:
            continue
        monomial = '' if j == 0 else ('z' if j == 1 else f'z^{j}')
        magnitude = abs(c)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f'{magnitude}*{monomial}'
        parts.append(('-' if c < 0 else '+', body))
    if not parts:
        return '0'
    sign, body = parts[0]
    text = ('-' if sign == '-' else '') + body
    for sign, body in parts[1:]:
        text += f' {sign} {body}'
    return text


def galois_apply(z: Cyclotomic, k: int) -> Cyclotomic:
    return z.galois(k)


def conjugate(z: Cyclotomic) -> Cyclotomic:
    return z.conjugate()


def is_rational(z: Cyclotomic) -> Optional[Fraction]:
    return z.is_rational()


def abs_square(z: Cyclotomic) -> Cyclotomic:
    return z.abs_square()


def field_index(values: Iterable[Cyclotomic], e: int) -> int:
    """[(Z/e)^x : Stab] where Stab fixes every value; equals the degree of Q(values) over Q."""
    fixed: Dict[int, set] = {}
    for v in values:
        z = v.minimize()
        o = z.conductor
        if e % o:
            raise CyclotomicError(f'value of conductor {o} is not representable at {e}')
        if o <= 2:
            continue
        allowed = {k for k in units_mod(o) if z.galois(k) == z}
        fixed[o] = fixed[o] & allowed if o in fixed else allowed
    if not fixed:
        return 1
    units = units_mod(e)
    stabilizer = sum(1 for k in units if all(k % o in ks for o, ks in fixed.items()))
    return len(units) // stabilizer


def hermitian_sum(terms: Iterable[Tuple[int, Cyclotomic, Cyclotomic]],
                  conductor: int) -> Cyclotomic:
    """Sum of w * a * conjugate(b) over the terms, reduced once at ``conductor``.

    ``conductor`` must be a multiple of every operand conductor.
    """
    terms = [(w, a, b) for w, a, b in terms if w and not a.is_zero() and not b.is_zero()]
    den = lcm_all(a._den * b._den for _, a, b in terms)
    acc = [0] * conductor
    for w, a, b in terms:
        scale = w * (den // (a._den * b._den))
        right = b._terms(conductor, sign=-1)
        for i, x in a._terms(conductor):
            for j, y in right:
                acc[(i + j) % conductor] += scale * x * y
    return Cyclotomic._from_exponents(conductor, acc, den)
