from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, List, Tuple

from sympy import factorint, primitive_root, totient
from sympy.ntheory.modular import crt


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def lcm_all(values: Iterable[int]) -> int:
    return reduce(lcm, values, 1)


def euler_phi(n: int) -> int:
    return int(totient(n))


@lru_cache(maxsize=256)
def units_mod(n: int) -> Tuple[int, ...]:
    """Residues in [1, n) coprime to n; (0,) stands for the single unit of Z/1."""
    if n == 1:
        return (0,)
    return tuple(k for k in range(1, n) if gcd(k, n) == 1)


@lru_cache(maxsize=256)
def unit_group_generators(n: int) -> Tuple[int, ...]:
    """A generating set of (Z/n)^x built prime power by prime power.

    Each odd prime power contributes a primitive root, 2^a contributes -1 and 5, and every
    local generator is lifted by CRT so that it is 1 modulo the other prime powers.
    """
    if n <= 2:
        return ()
    moduli: List[int] = [p ** a for p, a in sorted(factorint(n).items())]
    local: List[Tuple[int, int]] = []
    for m in moduli:
        if m % 2 == 0:
            if m >= 4:
                local.append((m, m - 1))
            if m >= 8:
                local.append((m, 5))
        else:
            local.append((m, int(primitive_root(m))))
    generators = []
    for modulus, g in local:
        residues = [g if m == modulus else 1 for m in moduli]
        lifted = int(crt(moduli, residues)[0]) % n
        if lifted != 1 and lifted not in generators:
            generators.append(lifted)
    return tuple(generators)
