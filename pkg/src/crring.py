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
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple, Union

from coefficients import CoefficientRing, GradedScalar
from config.config import c
from errors import RingError
from logger.logrr import lm

SHAPES = ("v", "dv", "f", "fd")
D_SHAPES = ("dv", "fd")

# Single-rule corruptions used as negative controls for the verification suites
CORRUPTIONS = {
    "fv": "f^j v^k picks up p^min(j,k) + 1 instead of p^min(j,k)",
    "vd": "v^i d becomes (p^i + 1) d v^i",
    "df": "d f^j becomes (p^j + 1) f^j d",
    "fdv": "f d v reduces to 2d (+ eta)",
    "dd": "d d v^k gains an extra d v^k",
    "fx": "moving a coefficient left across f^j doubles F^j(x)",
    "xv": "moving a coefficient right across v^k doubles F^k(x)",
    "vxf": "v^i x f^j collapses to twice the Verschiebung",
    "dx": "x d gains an extra x term",
}


@dataclass(frozen=True)
class CRMonomial:
    """
    Basis monomial: One (v^0), v^i (i >= 1), d v^i (i >= 0), f^j (j >= 1) or f^j d (j >= 1)
    """
    shape: str
    index: int

    def __post_init__(self):
        if self.shape not in ("one",) + SHAPES:
            raise RingError(f"Unknown monomial shape `{self.shape}`")
        low = 0 if self.shape == "dv" else (0 if self.shape == "one" else 1)
        if self.index < low or (self.shape == "one" and self.index != 0):
            raise RingError(f"Index {self.index} out of range for shape `{self.shape}`")

    @property
    def degree(self) -> int:
        return 1 if self.shape in D_SHAPES else 0

    @property
    def family(self) -> str:
        # One lives in the v family at index 0
        return "v" if self.shape == "one" else self.shape

    def __str__(self):
        if self.shape == "one":
            return "1"
        base = {"v": "v", "dv": "d*v", "f": "f", "fd": "f"}[self.shape]
        text = "d" if self.shape == "dv" and self.index == 0 else (
            base if self.index == 1 else f"{base}^{self.index}")
        return text + "*d" if self.shape == "fd" else text


@dataclass(frozen=True)
class CRElement:
    """
    Normal form sum_i v^i*x_i + sum_i d*v^i*y_i + sum_j z_j*f^j + sum_j w_j*f^j*d. The coefficients
    of the v and dv families sit on the right, those of the f and fd families on the left. Each
    family is a tuple of (index, coefficient) pairs in ascending index with no zero coefficient.
    """
    ring: CoefficientRing
    v: tuple = ()
    dv: tuple = ()
    f: tuple = ()
    fd: tuple = ()

    def is_zero(self) -> bool:
        return not (self.v or self.dv or self.f or self.fd)

    def family(self, shape: str) -> Dict[int, GradedScalar]:
        return dict(getattr(self, shape))

    def terms(self) -> Iterator[Tuple[str, int, GradedScalar]]:
        for shape in SHAPES:
            for index, coeff in getattr(self, shape):
                yield shape, index, coeff

    def coefficient(self, shape: str, index: int) -> GradedScalar:
        return self.family(shape).get(index, self.ring.zero)

    def __len__(self):
        return sum(len(getattr(self, shape)) for shape in SHAPES)


class _Terms:
    """Mutable accumulator of normal-form terms"""

    def __init__(self, ring: CoefficientRing):
        self.ring = ring
        self.parts: Dict[str, Dict[int, GradedScalar]] = {shape: {} for shape in SHAPES}

    @classmethod
    def of(cls, element: CRElement) -> '_Terms':
        out = cls(element.ring)
        for shape, index, coeff in element.terms():
            out.parts[shape][index] = coeff
        return out

    def add(self, shape: str, index: int, coeff: GradedScalar):
        if coeff.is_zero():
            return
        family = self.parts[shape]
        family[index] = self.ring.add(family[index], coeff) if index in family else coeff

    def extend(self, other: '_Terms'):
        for shape, index, coeff in other.items():
            self.add(shape, index, coeff)

    def items(self) -> Iterator[Tuple[str, int, GradedScalar]]:
        for shape in SHAPES:
            yield from ((shape, index, coeff) for index, coeff in list(self.parts[shape].items()))

    def freeze(self) -> CRElement:
        return CRElement(self.ring, *(
            tuple((i, x) for i, x in sorted(self.parts[shape].items()) if not x.is_zero()) for shape in SHAPES
        ))


Letter = Union[str, GradedScalar]


@dataclass(frozen=True)
class Word:
    """
    Free word in the letters v, f, d and coefficient insertions; products read left to right
    """
    letters: Tuple[Letter, ...] = ()

    def __str__(self):
        if not self.letters:
            return "1"
        out = []
        for letter in self.letters:
            if isinstance(letter, str):
                out.append(letter)
            else:
                text = str(letter)
                out.append(f"({text})" if " " in text or text.startswith("-") else text)
        return "*".join(out)


def word(*letters: Letter) -> Word:
    return Word(tuple(letters))


class CRRing:
    """
    Multiplication engine for normal forms over one coefficient ring.

    Products are computed by closed-form left actions of the generators on normal forms
    (lmul_scalar, lmul_vpow, lmul_fpow, lmul_d) instead of letter rewriting. The rules used are
    fv = p, vd = p dv, df = p fd, fdv = d (+ eta at p = 2), dd = eta d, fx = F(x) f, xv = v F(x),
    v x f = V(x) and dx = d_A(x) + (-1)^|x| x d.

    :param coeffs: Coefficient ring
    :param corrupt: Name of a rule from CORRUPTIONS to break on purpose (negative controls)
    """

    def __init__(self, coeffs: CoefficientRing, corrupt: Optional[str] = None):
        if corrupt is not None and corrupt not in CORRUPTIONS:
            raise RingError(f"Unknown corruption `{corrupt}` (expected one of {', '.join(CORRUPTIONS)})")
        self.coeffs = coeffs
        self.p = coeffs.prime
        self.corrupt = corrupt
        self._eta = coeffs.eta()
        self._fdv_eta = self._eta if self.p == 2 else coeffs.zero
        self._d_eta = coeffs.d(self._eta)
        self._fdv_cache: Dict[Tuple[int, int], _Terms] = {}
        if corrupt:
            lm.lnp(f"Multiplication over {coeffs} runs with the `{corrupt}` rule corrupted", "debug")

    def __repr__(self):
        suffix = f", corrupt={self.corrupt}" if self.corrupt else ""
        return f"CRRing({self.coeffs}{suffix})"

    def _p_power(self, rule: str, e: int) -> int:
        return self.p ** e + 1 if self.corrupt == rule else self.p ** e

    def _doubled(self, rule: str, x: GradedScalar) -> GradedScalar:
        return self.coeffs.scale(x, 2) if self.corrupt == rule else x

    def _own(self, *elements: CRElement):
        for e in elements:
            if e.ring != self.coeffs:
                raise RingError(f"Element over {e.ring} used with {self.coeffs}")

    # Constructors
    @property
    def zero(self) -> CRElement:
        return CRElement(self.coeffs)

    @property
    def one(self) -> CRElement:
        return self.from_scalar(self.coeffs.one)

    def from_scalar(self, x: GradedScalar) -> CRElement:
        self.coeffs._own(x)
        return CRElement(self.coeffs, v=((0, x),)) if not x.is_zero() else self.zero

    def monomial_element(self, m: CRMonomial, coeff: Optional[GradedScalar] = None) -> CRElement:
        coeff = self.coeffs.one if coeff is None else coeff
        out = _Terms(self.coeffs)
        out.add(m.family, m.index, coeff)
        return out.freeze()

    @property
    def gen_v(self) -> CRElement:
        return self.monomial_element(CRMonomial("v", 1))

    @property
    def gen_f(self) -> CRElement:
        return self.monomial_element(CRMonomial("f", 1))

    @property
    def gen_d(self) -> CRElement:
        return self.monomial_element(CRMonomial("dv", 0))

    # Additive structure
    def add(self, a: CRElement, b: CRElement) -> CRElement:
        self._own(a, b)
        out = _Terms.of(a)
        for shape, index, coeff in b.terms():
            out.add(shape, index, coeff)
        return out.freeze()

    def neg(self, a: CRElement) -> CRElement:
        self._own(a)
        out = _Terms(self.coeffs)
        for shape, index, coeff in a.terms():
            out.add(shape, index, self.coeffs.neg(coeff))
        return out.freeze()

    def sub(self, a: CRElement, b: CRElement) -> CRElement:
        return self.add(a, self.neg(b))

    def scale(self, a: CRElement, m: int) -> CRElement:
        """Integer multiple m*a (integers are central)"""
        self._own(a)
        out = _Terms(self.coeffs)
        for shape, index, coeff in a.terms():
            out.add(shape, index, self.coeffs.scale(coeff, m))
        return out.freeze()

    # Left actions of the generators on accumulated normal forms
    def _lmul_scalar(self, cval: GradedScalar, terms: _Terms) -> _Terms:
        R = self.coeffs
        out = _Terms(R)
        for shape, index, y in terms.items():
            if shape == "v":
                # x v^k = v^k F^k(x)
                frob = R.F_power(cval, index)
                out.add("v", index, R.mul(self._doubled("xv", frob) if index else frob, y))
            elif shape == "dv":
                # x d = (-1)^|x| (d x - d_A(x)) on each homogeneous part
                for h in R.homogeneous(cval):
                    frob = R.F_power(h, index)
                    out.add("dv", index, R.scale(R.mul(frob, y), h.sign))
                    out.add("v", index, R.scale(R.mul(R.F_power(R.d(h), index), y), -h.sign))
                    if self.corrupt == "dx":
                        out.add("v", index, R.mul(frob, y))
            else:
                out.add(shape, index, R.mul(cval, y))
        return out

    def _lmul_vpow(self, i: int, terms: _Terms) -> _Terms:
        if i == 0:
            return terms
        R = self.coeffs
        out = _Terms(R)
        for shape, index, y in terms.items():
            if shape == "v":
                out.add("v", i + index, y)
            elif shape == "dv":
                out.add("dv", i + index, R.scale(y, self._p_power("vd", i)))
            elif shape == "f":
                # v^i y f^j collapses through v x f = V(x)
                if i >= index:
                    out.add("v", i - index, self._doubled("vxf", R.V_power(y, index)))
                else:
                    out.add("f", index - i, self._doubled("vxf", R.V_power(y, i)))
            elif i < index:
                out.add("fd", index - i, R.V_power(y, i))
            else:
                a = i - index
                for h in R.homogeneous(R.V_power(y, index)):
                    out.add("dv", a, R.scale(h, h.sign * self.p ** a))
                    out.add("v", a, R.scale(R.d(h), -h.sign))
        return out

    def _fdv_expansion(self, j: int, k: int) -> _Terms:
        """
        Normal form of f^j d v^k, peeling one f d v at a time; each step leaves an eta term
        f^(j-t) F^(k-t)(eta) v^(k-t) behind when p = 2
        """
        key = (j, k)
        if key not in self._fdv_cache:
            R = self.coeffs
            out = _Terms(R)
            m = min(j, k)
            for t in range(1, m + 1):
                eta_term = _Terms(R)
                eta_term.add("v", k - t, R.F_power(self._fdv_eta, k - t))
                out.extend(self._lmul_fpow(j - t, eta_term) if j > t else eta_term)
            main = R.from_int(2) if self.corrupt == "fdv" else R.one
            if j == m:
                out.add("dv", k - m, main)
            else:
                out.add("fd", j - m, main)
            self._fdv_cache[key] = out
        return self._fdv_cache[key]

    def _rmul_scalar(self, terms: _Terms, y: GradedScalar) -> _Terms:
        R = self.coeffs
        out = _Terms(R)
        for shape, index, z in terms.items():
            if shape in ("v", "dv"):
                out.add(shape, index, R.mul(z, y))
            elif shape == "f":
                out.add("f", index, R.mul(z, R.F_power(y, index)))
            else:
                # f^b d y = f^b (d_A(y) + (-1)^|y| y d)
                for h in R.homogeneous(y):
                    out.add("f", index, R.mul(z, R.F_power(R.d(h), index)))
                    out.add("fd", index, R.scale(R.mul(z, R.F_power(h, index)), h.sign))
        return out

    def _lmul_fpow(self, j: int, terms: _Terms) -> _Terms:
        if j == 0:
            return terms
        R = self.coeffs
        out = _Terms(R)
        for shape, index, y in terms.items():
            if shape == "v":
                m = min(j, index)
                factor = self._p_power("fv", m) if m else 1
                if j > index:
                    out.add("f", j - index, R.scale(self._doubled("fx", R.F_power(y, j - index)), factor))
                else:
                    out.add("v", index - j, R.scale(y, factor))
            elif shape == "dv":
                out.extend(self._rmul_scalar(self._fdv_expansion(j, index), y))
            else:
                out.add(shape, j + index, self._doubled("fx", R.F_power(y, j)))
        return out

    def _lmul_d(self, terms: _Terms) -> _Terms:
        R = self.coeffs
        out = _Terms(R)
        for shape, index, y in terms.items():
            if shape == "v":
                out.add("dv", index, y)
            elif shape == "dv":
                # d d = eta d, then eta d = d_A(eta) - d eta
                out.add("dv", index, R.neg(R.mul(R.F_power(self._eta, index), y)))
                out.add("v", index, R.mul(R.F_power(self._d_eta, index), y))
                if self.corrupt == "dd":
                    out.add("dv", index, y)
            elif shape == "f":
                # d y f^j = d_A(y) f^j + (-1)^|y| p^j y f^j d
                for h in R.homogeneous(y):
                    out.add("f", index, R.d(h))
                    out.add("fd", index, R.scale(h, h.sign * self._p_power("df", index)))
            else:
                # d y f^j d = d_A(y) f^j d + (-1)^|y| p^j y F^j(eta) f^j d
                for h in R.homogeneous(y):
                    out.add("fd", index, R.d(h))
                    out.add("fd", index, R.scale(R.mul(h, R.F_power(self._eta, index)),
                                                 h.sign * self._p_power("df", index)))
        return out

    def mul(self, a: CRElement, b: CRElement) -> CRElement:
        """
        Product in normal form, bilinear in both arguments
        :param a: Left factor
        :param b: Right factor
        :return: a*b
        """
        self._own(a, b)
        right = _Terms.of(b)
        out = _Terms(self.coeffs)
        d_right = None
        for shape, index, x in a.terms():
            if shape == "v":
                out.extend(self._lmul_vpow(index, self._lmul_scalar(x, right)))
            elif shape == "dv":
                out.extend(self._lmul_d(self._lmul_vpow(index, self._lmul_scalar(x, right))))
            elif shape == "f":
                out.extend(self._lmul_scalar(x, self._lmul_fpow(index, right)))
            else:
                if d_right is None:
                    d_right = self._lmul_d(right)
                out.extend(self._lmul_scalar(x, self._lmul_fpow(index, d_right)))
        return out.freeze()

    def power(self, a: CRElement, e: int) -> CRElement:
        result = self.one
        for _ in range(e):
            result = self.mul(result, a)
        return result

    # Words
    def letter_element(self, letter: Letter) -> CRElement:
        if isinstance(letter, GradedScalar):
            return self.from_scalar(letter)
        generators = {"v": self.gen_v, "f": self.gen_f, "d": self.gen_d}
        if letter not in generators:
            raise RingError(f"Unknown letter `{letter}`")
        return generators[letter]

    def eval_word(self, w: Word) -> CRElement:
        """
        Normal form of a word, multiplying its letters left to right
        """
        result = self.one
        for letter in w.letters:
            result = self.mul(result, self.letter_element(letter))
        return result

    def eval_sum(self, words: List[Word]) -> CRElement:
        total = self.zero
        for w in words:
            total = self.add(total, self.eval_word(w))
        return total

    # Grading and bases
    def degree_split(self, a: CRElement) -> Dict[int, CRElement]:
        """
        Homogeneous components keyed by degree (coefficient degree, plus 1 for d-shapes)
        """
        self._own(a)
        split: Dict[int, _Terms] = {}
        for shape, index, coeff in a.terms():
            for h in self.coeffs.homogeneous(coeff):
                total = h.degree + (1 if shape in D_SHAPES else 0)
                split.setdefault(total, _Terms(self.coeffs)).add(shape, index, h)
        return {degree: terms.freeze() for degree, terms in sorted(split.items())}

    def random_element(self, rng: random.Random, max_terms: int = 3, support: Optional[int] = None,
                       degree: Optional[int] = None) -> CRElement:
        """
        Random sparse element with 1..max_terms terms on indices <= support; homogeneous when degree is given
        """
        support = c.DEFAULT_SUPPORT if support is None else support
        out = _Terms(self.coeffs)
        for _ in range(rng.randint(1, max_terms)):
            shapes = SHAPES if degree is None else [
                s for s in SHAPES if degree - (1 if s in D_SHAPES else 0) in self.coeffs.degrees
            ]
            if not shapes:
                return self.zero
            shape = rng.choice(shapes)
            low = 0 if shape in ("v", "dv") else 1
            index = rng.randint(low, max(low, support))
            coeff_degree = None if degree is None else degree - (1 if shape in D_SHAPES else 0)
            out.add(shape, index, self.coeffs.random_scalar(rng, coeff_degree))
        return out.freeze()

    def table(self, max_index: int) -> List[Tuple[CRMonomial, CRMonomial, CRElement]]:
        """
        Pairwise products of the basis monomials with index <= max_index
        """
        monomials = cr_basis(max_index)
        return [(a, b, self.mul(self.monomial_element(a), self.monomial_element(b)))
                for a in monomials for b in monomials]


def build_element(ring: CoefficientRing, terms) -> CRElement:
    """
    Element from (shape, index, coefficient) triples; repeated positions are summed
    """
    out = _Terms(ring)
    for shape, index, coeff in terms:
        out.add(shape, index, coeff)
    return out.freeze()


def cr_basis(max_index: int, degree: Optional[int] = None) -> List[CRMonomial]:
    """
    Basis monomials One, v^1..v^M, d v^0..d v^M, f^1..f^M, f^1 d..f^M d: 2(2M + 1) of them
    :param max_index: Index bound M >= 0
    :param degree: Keep only monomials of this degree (0 or 1)
    :return: Monomials in printing order
    """
    if max_index < 0:
        raise RingError(f"Index bound must be non-negative, got {max_index}")
    monomials = [CRMonomial("one", 0)]
    monomials += [CRMonomial("v", i) for i in range(1, max_index + 1)]
    monomials += [CRMonomial("dv", i) for i in range(max_index + 1)]
    monomials += [CRMonomial("f", j) for j in range(1, max_index + 1)]
    monomials += [CRMonomial("fd", j) for j in range(1, max_index + 1)]
    if degree is not None:
        monomials = [m for m in monomials if m.degree == degree]
    return monomials


@lru_cache(maxsize=None)
def cr_ring(coeffs: CoefficientRing, corrupt: Optional[str] = None) -> CRRing:
    return CRRing(coeffs, corrupt)


def cr_constructors(coeffs: CoefficientRing) -> dict:
    R = cr_ring(coeffs)
    return {"zero": R.zero, "one": R.one, "from_scalar": R.from_scalar,
            "gen_v": R.gen_v, "gen_f": R.gen_f, "gen_d": R.gen_d}


def cr_add(a: CRElement, b: CRElement) -> CRElement:
    return cr_ring(a.ring).add(a, b)


def cr_mul(a: CRElement, b: CRElement) -> CRElement:
    return cr_ring(a.ring).mul(a, b)


def cr_eval_word(coeffs: CoefficientRing, w: Word) -> CRElement:
    for letter in w.letters:
        if isinstance(letter, GradedScalar) and letter.ring != coeffs:
            raise RingError(f"Coefficient {letter} belongs to {letter.ring}, not {coeffs}")
    return cr_ring(coeffs).eval_word(w)


def cr_degree(a: CRElement) -> Dict[int, CRElement]:
    return cr_ring(a.ring).degree_split(a)
