"""
Copyright (c) 2024 Cisco and/or its affiliates.
This software is licensed to you under the terms of the Cisco Sample
Code License, Version 1.1 (the "License"). You may obtain a copy of the
License at
https://developer.cisco.com/docs/licenses
All use of the material herein must be in accordance with the terms of
the License. All rights not expressly granted by the License are
reserved. Unless required by applicable law or agreed to separately in
writing, software distributed under the License is distributed on an "AS
IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
or implied.
"""

__copyright__ = "Copyright (c) 2024 Cisco and/or its affiliates."
__license__ = "Cisco Sample Code License, Version 1.1"

import itertools
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_irreducible_p, gf_mul, gf_neg, gf_rem, gf_strip

from errors import WittError


class BaseRing(ABC):
    """
    Commutative base ring for Witt coordinates. Elements are plain hashable Python values
    (ints for every shipped base), so Witt vectors built on them can be cached and compared.
    """

    @property
    @abstractmethod
    def tag(self) -> str:
        ...

    @property
    @abstractmethod
    def characteristic(self) -> int:
        ...

    @abstractmethod
    def from_int(self, n: int):
        ...

    @abstractmethod
    def add(self, a, b):
        ...

    @abstractmethod
    def neg(self, a):
        ...

    @abstractmethod
    def mul(self, a, b):
        ...

    @abstractmethod
    def decode(self, n: int):
        """
        Turn a literal integer into an element, rejecting values outside the base
        :param n: Literal value
        :return: Base element
        """

    @abstractmethod
    def random(self, rng: random.Random):
        ...

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    @property
    def is_torsion_free(self) -> bool:
        return self.characteristic == 0

    def is_perfect_over(self, p: int) -> bool:
        """
        True when the base is a perfect F_p-algebra (so Frobenius is the coordinatewise p-th power)
        """
        return False

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def power(self, a, e: int):
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def _in_range(self, n: int, size: int) -> int:
        if not 0 <= n < size:
            raise WittError(f"Literal {n} does not encode an element of {self.tag} (expected 0..{size - 1})")
        return int(n)

    def encode(self, a) -> int:
        return int(a)

    def __str__(self):
        return self.tag


@dataclass(frozen=True)
class IntegerBase(BaseRing):
    """The integers, the torsion-free base used for ghost-component checks"""

    @property
    def tag(self) -> str:
        return "int"

    @property
    def characteristic(self) -> int:
        return 0

    def from_int(self, n: int):
        return int(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def power(self, a, e: int):
        return a ** e

    def decode(self, n: int):
        return int(n)

    def random(self, rng: random.Random):
        return rng.randint(-9, 9)


@dataclass(frozen=True)
class ModularBase(BaseRing):
    """Z/m with canonical representatives 0..m-1"""
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise WittError(f"Modulus must be at least 2, got {self.modulus}")

    @property
    def tag(self) -> str:
        return f"zmod:{self.modulus}"

    @property
    def characteristic(self) -> int:
        return self.modulus

    def is_perfect_over(self, p: int) -> bool:
        return self.modulus == p

    def from_int(self, n: int):
        return int(n) % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def power(self, a, e: int):
        return pow(a, e, self.modulus)

    def decode(self, n: int):
        return self._in_range(n, self.modulus)

    def random(self, rng: random.Random):
        return rng.randrange(self.modulus)


def _int_to_gf(n: int, p: int) -> list:
    # base-p digits, highest degree first (galoistools convention)
    digits = []
    while n:
        n, r = divmod(n, p)
        digits.append(ZZ(r))
    return gf_strip(list(reversed(digits)))


def _gf_to_int(f: list, p: int) -> int:
    n = 0
    for c in f:
        n = n * p + int(c) % p
    return n


@lru_cache(maxsize=None)
def conway_free_modulus(p: int, degree: int) -> tuple:
    """
    First monic irreducible polynomial of the given degree over F_p in lexicographic order
    :param p: Prime
    :param degree: Extension degree
    :return: Coefficient tuple, highest degree first
    """
    for tail in itertools.product(range(p), repeat=degree):
        candidate = [ZZ(1)] + [ZZ(c) for c in tail]
        if gf_irreducible_p(candidate, p, ZZ):
            return tuple(int(c) for c in candidate)
    raise WittError(f"No irreducible polynomial of degree {degree} over F_{p}")


@lru_cache(maxsize=65536)
def _gf_mul(p: int, modulus: tuple, a: int, b: int) -> int:
    product = gf_mul(_int_to_gf(a, p), _int_to_gf(b, p), p, ZZ)
    return _gf_to_int(gf_rem(product, [ZZ(c) for c in modulus], p, ZZ), p)


@dataclass(frozen=True)
class GaloisField(BaseRing):
    """
    F_q for q = p^r. Elements are the integers 0..q-1: the base-p digits of n are the
    coefficients of the polynomial in t, with t a root of conway_free_modulus(p, r).
    """
    prime: int
    degree: int = 1
    modulus: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not isprime(self.prime):
            raise WittError(f"Field characteristic {self.prime} is not prime")
        if self.degree < 1:
            raise WittError(f"Field degree must be positive, got {self.degree}")
        object.__setattr__(self, "modulus", conway_free_modulus(self.prime, self.degree))

    @property
    def order(self) -> int:
        return self.prime ** self.degree

    @property
    def tag(self) -> str:
        return f"gf:{self.order}"

    @property
    def characteristic(self) -> int:
        return self.prime

    def is_perfect_over(self, p: int) -> bool:
        return self.prime == p

    def from_int(self, n: int):
        return int(n) % self.prime

    def add(self, a, b):
        if self.degree == 1:
            return (a + b) % self.prime
        return _gf_to_int(gf_add(_int_to_gf(a, self.prime), _int_to_gf(b, self.prime), self.prime, ZZ),
                          self.prime)

    def neg(self, a):
        if self.degree == 1:
            return (-a) % self.prime
        return _gf_to_int(gf_neg(_int_to_gf(a, self.prime), self.prime, ZZ), self.prime)

    def mul(self, a, b):
        if self.degree == 1:
            return (a * b) % self.prime
        return _gf_mul(self.prime, self.modulus, a, b)

    def decode(self, n: int):
        return self._in_range(n, self.order)

    def random(self, rng: random.Random):
        return rng.randrange(self.order)


def parse_base(text: str) -> BaseRing:
    """
    Parse a base tag: `int`, `zmod:M` or `gf:Q`
    :param text: Base tag
    :return: Base ring
    """
    kind, _, arg = text.partition(":")
    if kind == "int" and not arg:
        return IntegerBase()
    try:
        value = int(arg)
    except ValueError:
        raise WittError(f"Unknown base `{text}` (expected int, zmod:M or gf:Q)")

    if kind == "zmod":
        return ModularBase(value)
    if kind == "gf":
        factors = factorint(value)
        if len(factors) != 1:
            raise WittError(f"Field order {value} is not a prime power")
        (prime, degree), = factors.items()
        return GaloisField(int(prime), int(degree))
    raise WittError(f"Unknown base `{text}` (expected int, zmod:M or gf:Q)")
