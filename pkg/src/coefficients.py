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

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from bases import GaloisField
from config.config import c
from errors import RingError
from logger.logrr import lm
from schemas import CoefficientRingDescriptor, ScalarComponent
from witt import WittVector, witt_F, witt_V, witt_add, witt_from_int, witt_mul, witt_neg, witt_vector


@dataclass(frozen=True)
class GradedScalar:
    """
    Element of the coefficient ring, stored as its nonzero homogeneous parts ((degree, value), ...) in
    ascending degree. Values are in the ring's degree-wise carrier.
    """
    ring: 'CoefficientRing' = field(repr=False)
    parts: tuple

    def is_zero(self) -> bool:
        return not self.parts

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(d for d, _ in self.parts)

    def is_homogeneous(self) -> bool:
        return len(self.parts) <= 1

    @property
    def degree(self) -> int:
        if len(self.parts) > 1:
            raise RingError(f"{self} is not homogeneous")
        return self.parts[0][0] if self.parts else 0

    @property
    def sign(self) -> int:
        """Koszul sign (-1)^|x| of a homogeneous scalar"""
        return -1 if self.degree % 2 else 1

    def component(self, degree: int):
        for d, value in self.parts:
            if d == degree:
                return value
        return None

    def __add__(self, other):
        return self.ring.add(self, other)

    def __sub__(self, other):
        return self.ring.sub(self, other)

    def __neg__(self):
        return self.ring.neg(self)

    def __mul__(self, other):
        return self.ring.mul(self, other)

    def __bool__(self):
        return bool(self.parts)

    def __str__(self):
        return self.ring.format_scalar(self)


class CoefficientRing(ABC):
    """
    Graded commutative coefficient ring with Frobenius F, Verschiebung V, differential d and the class eta.
    Subclasses implement the degree-wise carrier through the `_..._h` hooks; everything else is generic.
    """
    degrees: Tuple[int, ...] = (0,)

    def __init__(self, descriptor: CoefficientRingDescriptor):
        self.descriptor = descriptor
        self.prime = descriptor.prime

    def __eq__(self, other):
        return isinstance(other, CoefficientRing) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor.label()})"

    def __str__(self):
        return self.descriptor.label()

    # Degree-wise carrier
    @abstractmethod
    def _from_int_h(self, m: int):
        ...

    @abstractmethod
    def _is_zero_h(self, degree: int, a) -> bool:
        ...

    @abstractmethod
    def _add_h(self, degree: int, a, b):
        ...

    @abstractmethod
    def _neg_h(self, degree: int, a):
        ...

    @abstractmethod
    def _mul_h(self, da: int, a, db: int, b):
        """Product of homogeneous values, in degree da + db; None when that product vanishes"""

    @abstractmethod
    def _F_h(self, degree: int, a):
        ...

    @abstractmethod
    def _V_h(self, degree: int, a):
        ...

    def _d_h(self, degree: int, a):
        """d_A of a homogeneous value, in degree + 1; None for zero"""
        return None

    @abstractmethod
    def _random_h(self, rng: random.Random, degree: int):
        ...

    @abstractmethod
    def _format_h(self, degree: int, a) -> str:
        ...

    @abstractmethod
    def _encode_h(self, degree: int, a):
        ...

    @abstractmethod
    def _decode_h(self, degree: int, value):
        ...

    # Construction
    def make(self, parts: Iterable[Tuple[int, object]]) -> GradedScalar:
        """
        Canonical scalar from (degree, value) pairs; equal degrees are summed, zero values dropped
        """
        merged: Dict[int, object] = {}
        for degree, value in parts:
            if value is None:
                continue
            if degree not in self.degrees:
                continue
            merged[degree] = self._add_h(degree, merged[degree], value) if degree in merged else value
        return GradedScalar(self, tuple(
            (d, v) for d, v in sorted(merged.items()) if not self._is_zero_h(d, v)
        ))

    @property
    def zero(self) -> GradedScalar:
        return GradedScalar(self, ())

    @property
    def one(self) -> GradedScalar:
        return self.from_int(1)

    def from_int(self, m: int) -> GradedScalar:
        return self.make([(0, self._from_int_h(m))])

    def eta(self) -> GradedScalar:
        return self.zero

    def witt_literal(self, coords: Sequence[int]) -> GradedScalar:
        raise RingError(f"Witt literals are not valid over {self}")

    def tower_literal(self, n: int) -> GradedScalar:
        raise RingError(f"u{n} is not valid over {self}")

    def _own(self, *scalars: GradedScalar):
        for x in scalars:
            if x.ring != self:
                raise RingError(f"Scalar from {x.ring} used with {self}")

    # Arithmetic
    def add(self, a: GradedScalar, b: GradedScalar) -> GradedScalar:
        self._own(a, b)
        return self.make(list(a.parts) + list(b.parts))

    def neg(self, a: GradedScalar) -> GradedScalar:
        self._own(a)
        return GradedScalar(self, tuple((d, self._neg_h(d, v)) for d, v in a.parts))

    def sub(self, a: GradedScalar, b: GradedScalar) -> GradedScalar:
        return self.add(a, self.neg(b))

    def mul(self, a: GradedScalar, b: GradedScalar) -> GradedScalar:
        self._own(a, b)
        return self.make(
            (da + db, self._mul_h(da, va, db, vb)) for da, va in a.parts for db, vb in b.parts
        )

    def eq(self, a: GradedScalar, b: GradedScalar) -> bool:
        self._own(a, b)
        return a.parts == b.parts

    def scale(self, a: GradedScalar, m: int) -> GradedScalar:
        if m == 1:
            return a
        return self.mul(self.from_int(m), a)

    def pow(self, a: GradedScalar, e: int) -> GradedScalar:
        if e < 0:
            raise RingError(f"Negative exponent {e}")
        result, square = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, square)
            e >>= 1
            if e:
                square = self.mul(square, square)
        return result

    # Operators
    def F(self, a: GradedScalar) -> GradedScalar:
        self._own(a)
        return self.make((d, self._F_h(d, v)) for d, v in a.parts)

    def F_power(self, a: GradedScalar, k: int) -> GradedScalar:
        for _ in range(k):
            a = self.F(a)
        return a

    def V(self, a: GradedScalar) -> GradedScalar:
        self._own(a)
        return self.make((d, self._V_h(d, v)) for d, v in a.parts)

    def V_power(self, a: GradedScalar, k: int) -> GradedScalar:
        for _ in range(k):
            a = self.V(a)
        return a

    def d(self, a: GradedScalar) -> GradedScalar:
        self._own(a)
        return self.make((d + 1, self._d_h(d, v)) for d, v in a.parts)

    def homogeneous(self, a: GradedScalar) -> List[GradedScalar]:
        """
        Homogeneous parts of a scalar, ascending by degree
        """
        return [GradedScalar(self, (part,)) for part in a.parts]

    # Sampling, printing and documents
    def random_scalar(self, rng: random.Random, degree: Optional[int] = None) -> GradedScalar:
        """
        Random scalar; homogeneous of the given degree, or spread over every carried degree when degree is None
        :param rng: Seeded generator
        :param degree: Degree to sample in
        :return: GradedScalar
        """
        if degree is not None:
            if degree not in self.degrees:
                return self.zero
            return self.make([(degree, self._random_h(rng, degree))])
        return self.make((d, self._random_h(rng, d)) for d in self.degrees)

    def integer_value(self, a: GradedScalar) -> Optional[int]:
        """
        Smallest m >= 0 with m*1 == a, or None when a is not an integer multiple of the unit
        """
        if a.is_zero():
            return 0
        return None

    def format_scalar(self, a: GradedScalar) -> str:
        m = self.integer_value(a)
        if m is not None:
            return str(m)
        return " + ".join(self._format_h(d, v) for d, v in a.parts)

    def encode(self, a: GradedScalar) -> List[ScalarComponent]:
        return [ScalarComponent(degree=d, value=self._encode_h(d, v)) for d, v in a.parts]

    def decode(self, components: Sequence[ScalarComponent]) -> GradedScalar:
        parts = []
        for component in components:
            if component.degree not in self.degrees:
                raise RingError(f"Degree {component.degree} is not carried by {self}")
            parts.append((component.degree, self._decode_h(component.degree, component.value)))
        return self.make(parts)


class ZmodRing(CoefficientRing):
    """Z/p^n in degree 0 with F = identity, V = multiplication by p and d = 0"""

    def __init__(self, descriptor: CoefficientRingDescriptor):
        super().__init__(descriptor)
        self.modulus = descriptor.prime ** descriptor.truncation

    def _from_int_h(self, m: int):
        return m % self.modulus

    def _is_zero_h(self, degree: int, a) -> bool:
        return a == 0

    def _add_h(self, degree: int, a, b):
        return (a + b) % self.modulus

    def _neg_h(self, degree: int, a):
        return (-a) % self.modulus

    def _mul_h(self, da: int, a, db: int, b):
        return (a * b) % self.modulus

    def _F_h(self, degree: int, a):
        return a

    def _V_h(self, degree: int, a):
        return (self.prime * a) % self.modulus

    def _random_h(self, rng: random.Random, degree: int):
        return rng.randrange(self.modulus)

    def integer_value(self, a: GradedScalar) -> Optional[int]:
        return a.parts[0][1] if a.parts else 0

    def _format_h(self, degree: int, a) -> str:
        return str(a)

    def _encode_h(self, degree: int, a):
        return a

    def _decode_h(self, degree: int, value):
        if not isinstance(value, int):
            raise RingError(f"Z/{self.modulus} coefficients are integers, got {value}")
        return value % self.modulus


class WittRing(CoefficientRing):
    """
    W_n(F_q) in degree 0: F is the coordinatewise p-th power, V the shift with drop, d = 0
    """

    def __init__(self, descriptor: CoefficientRingDescriptor):
        super().__init__(descriptor)
        self.length = descriptor.truncation
        self.base = GaloisField(descriptor.prime, descriptor.field_degree)
        self._integers: Optional[Dict[WittVector, int]] = None

    def _from_int_h(self, m: int):
        return witt_from_int(m, self.prime, self.length, self.base)

    def _is_zero_h(self, degree: int, a) -> bool:
        return a.is_zero()

    def _add_h(self, degree: int, a, b):
        return witt_add(a, b)

    def _neg_h(self, degree: int, a):
        return witt_neg(a)

    def _mul_h(self, da: int, a, db: int, b):
        return witt_mul(a, b)

    def _F_h(self, degree: int, a):
        return witt_F(a)

    def _V_h(self, degree: int, a):
        return witt_V(a)

    def _random_h(self, rng: random.Random, degree: int):
        return WittVector(self.prime, self.base, tuple(self.base.random(rng) for _ in range(self.length)))

    def witt_literal(self, coords: Sequence[int]) -> GradedScalar:
        if len(coords) != self.length:
            raise RingError(f"Witt literal has {len(coords)} coordinates, {self} expects {self.length}")
        return self.make([(0, witt_vector(self.prime, self.base, coords))])

    def integer_value(self, a: GradedScalar) -> Optional[int]:
        if a.is_zero():
            return 0
        if self._integers is None:
            # the characteristic is p^n, so 0..p^n - 1 covers every integer multiple of 1
            lm.lnp(f"Tabulating integer multiples of 1 in {self}", "debug")
            table, value = {}, self._from_int_h(0)
            one = self._from_int_h(1)
            for m in range(self.prime ** self.length):
                table.setdefault(value, m)
                value = witt_add(value, one)
            self._integers = table
        return self._integers.get(a.parts[0][1])

    def _format_h(self, degree: int, a) -> str:
        return str(a)

    def _encode_h(self, degree: int, a):
        return [self.base.encode(x) for x in a.coords]

    def _decode_h(self, degree: int, value):
        if isinstance(value, int):
            return self._from_int_h(value)
        if len(value) != self.length:
            raise RingError(f"Witt coordinates {value} do not have length {self.length}")
        return witt_vector(self.prime, self.base, value)


class FormalEtaRing(CoefficientRing):
    """
    The 2-primary instance carrying a nonzero eta. Degree 0 holds Z/4-combinations of u_0 = 1, u_1, u_2, ...
    (u_n plays V^n(1)) with u_i*u_j = 2^min(i,j) u_max(i,j); degree 1 is Z/2*eta with eta*u_0 = eta and
    eta*u_n = 0 for n >= 1; degree 2 and above vanish.

    F(u_0) = u_0, F(u_n) = 2u_{n-1}, F(eta) = eta; V(u_n) = u_{n+1}, V(eta) = 0;
    d(u_n) = eta for n >= 1, d(u_0) = d(eta) = 0.

    Degree-0 values are tuples of (n, coefficient) pairs with coefficients 1..3; the degree-1 value is 1.
    """
    degrees = (0, 1)

    @staticmethod
    def _tower(coeffs: Dict[int, int]) -> tuple:
        return tuple((n, a % 4) for n, a in sorted(coeffs.items()) if a % 4)

    def _from_int_h(self, m: int):
        return self._tower({0: m})

    def _is_zero_h(self, degree: int, a) -> bool:
        return not a

    def _add_h(self, degree: int, a, b):
        if degree == 1:
            return (a + b) % 2
        coeffs = dict(a)
        for n, x in b:
            coeffs[n] = coeffs.get(n, 0) + x
        return self._tower(coeffs)

    def _neg_h(self, degree: int, a):
        if degree == 1:
            return a
        return self._tower({n: -x for n, x in a})

    def _mul_h(self, da: int, a, db: int, b):
        if da + db >= 2:
            return None
        if da == 1 or db == 1:
            tower, eta = (b, a) if da == 1 else (a, b)
            unit = dict(tower).get(0, 0)
            return (unit * eta) % 2
        coeffs: Dict[int, int] = {}
        for i, x in a:
            for j, y in b:
                top = max(i, j)
                coeffs[top] = coeffs.get(top, 0) + x * y * 2 ** min(i, j)
        return self._tower(coeffs)

    def _F_h(self, degree: int, a):
        if degree == 1:
            return a
        coeffs: Dict[int, int] = {}
        for n, x in a:
            if n == 0:
                coeffs[0] = coeffs.get(0, 0) + x
            else:
                coeffs[n - 1] = coeffs.get(n - 1, 0) + 2 * x
        return self._tower(coeffs)

    def _V_h(self, degree: int, a):
        if degree == 1:
            return None
        return tuple((n + 1, x) for n, x in a)

    def _d_h(self, degree: int, a):
        if degree == 1:
            return None
        return sum(x for n, x in a if n >= 1) % 2

    def eta(self) -> GradedScalar:
        return self.make([(1, 1)])

    def tower_literal(self, n: int) -> GradedScalar:
        return self.make([(0, self._tower({n: 1}))])

    def _random_h(self, rng: random.Random, degree: int):
        if degree == 1:
            return 1
        return self._tower({n: rng.randrange(4) for n in range(c.DEFAULT_SUPPORT)})

    def integer_value(self, a: GradedScalar) -> Optional[int]:
        if a.is_zero():
            return 0
        if len(a.parts) == 1 and a.parts[0][0] == 0 and len(a.parts[0][1]) == 1 and a.parts[0][1][0][0] == 0:
            return a.parts[0][1][0][1]
        return None

    def _format_h(self, degree: int, a) -> str:
        if degree == 1:
            return "eta"
        terms = []
        for n, x in a:
            if n == 0:
                terms.append(str(x))
            else:
                terms.append(f"u{n}" if x == 1 else f"{x}*u{n}")
        return " + ".join(terms)

    def _encode_h(self, degree: int, a):
        if degree == 1:
            return 1
        dense = [0] * (a[-1][0] + 1)
        for n, x in a:
            dense[n] = x
        return dense

    def _decode_h(self, degree: int, value):
        if degree == 1:
            if not isinstance(value, int):
                raise RingError(f"The degree-1 coefficient is an integer multiple of eta, got {value}")
            return value % 2
        if isinstance(value, int):
            return self._from_int_h(value)
        return self._tower(dict(enumerate(value)))


RING_KINDS = {
    "witt-fp": WittRing,
    "witt-perfect": WittRing,
    "zmod-pn": ZmodRing,
    "formal-eta": FormalEtaRing,
}


@lru_cache(maxsize=None)
def _ring_for(descriptor: CoefficientRingDescriptor) -> CoefficientRing:
    lm.lnp(f"Creating coefficient ring {descriptor.label()}", "debug")
    return RING_KINDS[descriptor.kind](descriptor)


def ring_make(descriptor=None, **fields) -> CoefficientRing:
    """
    Coefficient ring handle for a descriptor (one shared handle per descriptor)
    :param descriptor: CoefficientRingDescriptor, or None to build one from keyword fields
    :param fields: prime, truncation, kind, field_degree
    :return: CoefficientRing
    """
    if descriptor is None:
        try:
            descriptor = CoefficientRingDescriptor(**fields)
        except ValidationError as e:
            raise RingError(f"Invalid coefficient ring: {'; '.join(err['msg'] for err in e.errors())}")
    return _ring_for(descriptor)


def scalar_arith(ring: CoefficientRing, op: str, a: GradedScalar, b: Optional[GradedScalar] = None):
    """
    Dispatch one of add, sub, mul, neg, eq
    """
    if op == "neg":
        return ring.neg(a)
    operations = {"add": ring.add, "sub": ring.sub, "mul": ring.mul, "eq": ring.eq}
    if op not in operations:
        raise RingError(f"Unknown scalar operation `{op}`")
    if b is None:
        raise RingError(f"Scalar operation `{op}` needs two operands")
    return operations[op](a, b)


def frobenius_F(ring: CoefficientRing, a: GradedScalar) -> GradedScalar:
    return ring.F(a)


def verschiebung_V(ring: CoefficientRing, a: GradedScalar) -> GradedScalar:
    return ring.V(a)


def differential_d(ring: CoefficientRing, a: GradedScalar) -> GradedScalar:
    return ring.d(a)


def eta_element(ring: CoefficientRing) -> GradedScalar:
    return ring.eta()
