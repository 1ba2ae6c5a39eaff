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

from dataclasses import dataclass, field
from functools import lru_cache
from threading import Lock
from typing import Dict, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.rings import ring as poly_ring

from bases import BaseRing
from errors import InexactDivisionError, WittError
from logger.logrr import lm

FAMILIES = ("S", "P", "I", "F")
FAMILY_NAMES = {"S": "sum", "P": "product", "I": "negation", "F": "Frobenius"}

_family_cache: Dict[Tuple[str, int, int], Tuple['IntPolynomial', ...]] = {}
_family_lock = Lock()


@dataclass(frozen=True)
class IntPolynomial:
    """
    Integer polynomial in named variables. Terms are (exponent vector, coefficient) pairs in descending
    lexicographic order of the exponent vectors; no zero coefficient is stored.
    """
    names: Tuple[str, ...]
    terms: Tuple[Tuple[Tuple[int, ...], int], ...]
    _sparse: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        sparse = tuple(
            (coeff, tuple((idx, e) for idx, e in enumerate(exps) if e))
            for exps, coeff in self.terms
        )
        object.__setattr__(self, "_sparse", sparse)

    @classmethod
    def from_poly(cls, poly, names: Sequence[str]) -> 'IntPolynomial':
        """
        Build from a sympy PolyElement over ZZ
        :param poly: PolyElement
        :param names: Variable names in generator order
        :return: IntPolynomial
        """
        terms = sorted(((tuple(m), int(c)) for m, c in poly.items() if c), reverse=True)
        return cls(tuple(names), tuple(terms))

    def as_dict(self) -> Dict[Tuple[int, ...], int]:
        return dict(self.terms)

    def evaluate(self, base: BaseRing, values: Sequence):
        """
        Substitute base-ring values for the variables
        :param base: Base ring the values live in
        :param values: One value per variable, in `names` order
        :return: Base element
        """
        powers = {}
        total = base.zero
        for coeff, factors in self._sparse:
            term = base.from_int(coeff)
            for idx, e in factors:
                key = (idx, e)
                if key not in powers:
                    powers[key] = base.power(values[idx], e)
                term = base.mul(term, powers[key])
            total = base.add(total, term)
        return total

    def _monomial(self, exps) -> str:
        return "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(self.names, exps) if e
        )

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for n, (exps, coeff) in enumerate(self.terms):
            mono = self._monomial(exps)
            magnitude = abs(coeff)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            if n == 0:
                out.append(f"-{body}" if coeff < 0 else body)
            else:
                out.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(out)


def _variable_names(n: int) -> Tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n)) + tuple(f"y{i}" for i in range(n))


def _exact_div(poly, divisor: int, R):
    quotient = {}
    for monom, coeff in poly.items():
        q, r = divmod(int(coeff), divisor)
        if r:
            raise InexactDivisionError(f"Coefficient {coeff} of monomial {monom} is not divisible by {divisor}")
        if q:
            quotient[monom] = q
    return R.from_dict(quotient) if quotient else R.zero


def _ghost_poly(p: int, coords: Sequence, k: int):
    return sum((p ** i * coords[i] ** (p ** (k - i)) for i in range(k + 1)), coords[0] * 0)


def _solve_ghost_recursion(p: int, targets: list, R) -> list:
    """
    Solve sum_i p^i Phi_i^(p^(k-i)) = G_k for Phi_0, Phi_1, ...; every division by p^k must be exact.
    """
    phis = []
    for k, target in enumerate(targets):
        numerator = target
        for i, phi in enumerate(phis):
            numerator = numerator - p ** i * phi ** (p ** (k - i))
        phis.append(_exact_div(numerator, p ** k, R))
    return phis


def _compute_family(kind: str, p: int, n: int) -> Tuple[IntPolynomial, ...]:
    names = _variable_names(n)
    R, *gens = poly_ring(list(names), ZZ)
    xs, ys = gens[:n], gens[n:]

    if kind == "S":
        targets = [_ghost_poly(p, xs, k) + _ghost_poly(p, ys, k) for k in range(n)]
    elif kind == "P":
        targets = [_ghost_poly(p, xs, k) * _ghost_poly(p, ys, k) for k in range(n)]
    elif kind == "I":
        targets = [-_ghost_poly(p, xs, k) for k in range(n)]
    elif kind == "F":
        targets = [_ghost_poly(p, xs, k + 1) for k in range(n - 1)]
    else:
        raise WittError(f"Unknown polynomial family `{kind}` (expected one of {', '.join(FAMILIES)})")

    return tuple(IntPolynomial.from_poly(phi, names) for phi in _solve_ghost_recursion(p, targets, R))


@lru_cache(maxsize=None)
def _check_prime(p: int):
    if not isprime(p):
        raise WittError(f"{p} is not a prime")


def universal_family(kind: str, p: int, n: int) -> Tuple[IntPolynomial, ...]:
    """
    Universal integer polynomials of one family for length-n Witt vectors, computed once per (family, p, n)
    :param kind: S (sum), P (product), I (negation) or F (Frobenius, n - 1 polynomials)
    :param p: Prime
    :param n: Length
    :return: Tuple of polynomials in x0..x{n-1}, y0..y{n-1}
    """
    _check_prime(p)
    if n < 1:
        raise WittError(f"Witt length must be at least 1, got {n}")

    key = (kind, p, n)
    cached = _family_cache.get(key)
    if cached is not None:
        return cached
    with _family_lock:
        if key not in _family_cache:
            lm.lnp(f"Computing universal {FAMILY_NAMES.get(kind, kind)} polynomials for p={p}, n={n}", "debug")
            _family_cache[key] = _compute_family(kind, p, n)
        return _family_cache[key]


def witt_universal_polys(p: int, n: int) -> Dict[str, Tuple[IntPolynomial, ...]]:
    """
    All four universal families: S_0..S_{n-1}, P_0..P_{n-1}, I_0..I_{n-1}, F_0..F_{n-2}
    """
    return {kind: universal_family(kind, p, n) for kind in FAMILIES}


@dataclass(frozen=True)
class WittVector:
    prime: int
    base: BaseRing
    coords: tuple

    def __post_init__(self):
        if not self.coords:
            raise WittError("Witt vectors need at least one coordinate")
        _check_prime(self.prime)

    @property
    def length(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(self.base.is_zero(a) for a in self.coords)

    def __str__(self):
        return "W[" + ",".join(str(self.base.encode(a)) for a in self.coords) + "]"


def witt_vector(p: int, base: BaseRing, coords: Sequence[int]) -> WittVector:
    """
    Build a Witt vector from literal integers, validating each coordinate against the base
    :param p: Prime
    :param base: Base ring
    :param coords: Literal coordinates a_0..a_{n-1}
    :return: WittVector
    """
    return WittVector(p, base, tuple(base.decode(a) for a in coords))


def witt_zero(p: int, n: int, base: BaseRing) -> WittVector:
    return WittVector(p, base, (base.zero,) * n)


def teichmuller(x, p: int, n: int, base: BaseRing) -> WittVector:
    return WittVector(p, base, (x,) + (base.zero,) * (n - 1))


def witt_one(p: int, n: int, base: BaseRing) -> WittVector:
    return teichmuller(base.one, p, n, base)


def _check_compatible(a: WittVector, b: WittVector):
    if a.prime != b.prime or a.length != b.length or a.base != b.base:
        raise WittError(f"Mismatched Witt vectors: p={a.prime}, n={a.length}, base={a.base} "
                        f"vs p={b.prime}, n={b.length}, base={b.base}")


def _apply_family(kind: str, a: WittVector, b: Optional[WittVector] = None) -> tuple:
    n = a.length
    values = a.coords + (b.coords if b is not None else (a.base.zero,) * n)
    return tuple(poly.evaluate(a.base, values) for poly in universal_family(kind, a.prime, n))


@lru_cache(maxsize=1 << 16)
def witt_add(a: WittVector, b: WittVector) -> WittVector:
    _check_compatible(a, b)
    return WittVector(a.prime, a.base, _apply_family("S", a, b))


@lru_cache(maxsize=1 << 16)
def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    _check_compatible(a, b)
    return WittVector(a.prime, a.base, _apply_family("P", a, b))


@lru_cache(maxsize=1 << 16)
def witt_neg(a: WittVector) -> WittVector:
    # the I family also covers p = 2, where coordinatewise negation is wrong
    return WittVector(a.prime, a.base, _apply_family("I", a))


def witt_sub(a: WittVector, b: WittVector) -> WittVector:
    return witt_add(a, witt_neg(b))


def witt_V(a: WittVector) -> WittVector:
    """
    Verschiebung: shift right, dropping the last coordinate
    """
    return WittVector(a.prime, a.base, (a.base.zero,) + a.coords[:-1])


@lru_cache(maxsize=1 << 16)
def witt_F(a: WittVector, guard=None) -> WittVector:
    """
    Frobenius. Over a perfect F_p-algebra it is the coordinatewise p-th power. Over the integers it
    evaluates the universal F family, which loses one coordinate: the result has length n - 1, or
    length n when a guard coordinate a_n is supplied.
    :param a: Witt vector
    :param guard: Extra coordinate a_n (torsion-free bases only)
    :return: F(a)
    """
    base = a.base
    if base.is_perfect_over(a.prime):
        if guard is not None:
            raise WittError("A guard coordinate only applies to Frobenius over the integers")
        return WittVector(a.prime, base, tuple(base.power(x, a.prime) for x in a.coords))
    if not base.is_torsion_free:
        raise WittError(f"Frobenius over {base} needs a perfect F_{a.prime}-algebra or a torsion-free base")

    coords = a.coords if guard is None else a.coords + (base.decode(guard),)
    if len(coords) < 2:
        raise WittError("Frobenius over the integers needs a guard coordinate for length-1 vectors")
    families = universal_family("F", a.prime, len(coords))
    values = coords + (base.zero,) * len(coords)
    return WittVector(a.prime, base, tuple(poly.evaluate(base, values) for poly in families))


def ghost(a: WittVector) -> tuple:
    """
    Ghost components w_k = sum_{i<=k} p^i a_i^(p^(k-i)), k = 0..n-1
    """
    base, p = a.base, a.prime
    components = []
    for k in range(a.length):
        w = base.zero
        for i in range(k + 1):
            w = base.add(w, base.mul(base.from_int(p ** i), base.power(a.coords[i], p ** (k - i))))
        components.append(w)
    return tuple(components)


@lru_cache(maxsize=4096)
def witt_from_int(m: int, p: int, n: int, base: BaseRing) -> WittVector:
    """
    The image of the integer m in W_n(base), by double-and-add on the unit
    """
    result = witt_zero(p, n, base)
    addend = witt_one(p, n, base)
    k = abs(m)
    while k:
        if k & 1:
            result = witt_add(result, addend)
        k >>= 1
        if k:
            addend = witt_add(addend, addend)
    return witt_neg(result) if m < 0 else result


def witt_scale(a: WittVector, m: int) -> WittVector:
    return witt_mul(witt_from_int(m, a.prime, a.length, a.base), a)
