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
from dataclasses import dataclass, replace
from typing import Any, Callable, Optional

from coefficients import CoefficientRing, GradedScalar
from crring import CRElement, CRRing, Word, cr_ring
from errors import RingError
from lang import format_element
from logger.logrr import lm
from schemas import Counterexample, RelationResult, SuiteReport

MODULE_CHECK_POINTS = 200


@dataclass(frozen=True)
class CRModuleData:
    """
    A carrier with operators V, F (degree 0) and d (degree +1) and a scalar action of the coefficients.
    Elements of the ring act on the left: words apply their letters right to left.
    """
    name: str
    ring: CoefficientRing
    op_V: Callable[[Any], Any]
    op_F: Callable[[Any], Any]
    op_d: Callable[[Any], Any]
    scalar_action: Callable[[GradedScalar, Any], Any]
    add: Callable[[Any, Any], Any]
    zero: Any
    eq: Callable[[Any, Any], bool]
    random_point: Callable[[random.Random], Any]
    format: Callable[[Any], str] = str

    def scale(self, m: int, x):
        return self.scalar_action(self.ring.from_int(m), x)


def identity_failures(m: CRModuleData, points: int = MODULE_CHECK_POINTS, seed: int = 0) -> list:
    """
    Check the operator identities FV = p, dF = pFd, Vd = pdV, FdV = d (+ eta at p = 2) and dd = eta d
    on random carrier points
    :return: (identity name, point) pairs that fail
    """
    rng = random.Random(seed)
    p = m.ring.prime
    eta = m.ring.eta()
    fdv_eta = eta if p == 2 else m.ring.zero
    identities = {
        "fv": lambda x: (m.op_F(m.op_V(x)), m.scale(p, x)),
        "df": lambda x: (m.op_d(m.op_F(x)), m.scale(p, m.op_F(m.op_d(x)))),
        "vd": lambda x: (m.op_V(m.op_d(x)), m.scale(p, m.op_d(m.op_V(x)))),
        "fdv": lambda x: (m.op_F(m.op_d(m.op_V(x))), m.add(m.op_d(x), m.scalar_action(fdv_eta, x))),
        "dd": lambda x: (m.op_d(m.op_d(x)), m.scalar_action(eta, m.op_d(x))),
    }
    failures = []
    for _ in range(points):
        x = m.random_point(rng)
        for name, sides in identities.items():
            lhs, rhs = sides(x)
            if not m.eq(lhs, rhs):
                failures.append((name, x))
    return failures


def _checked(m: CRModuleData, check: bool) -> CRModuleData:
    if check:
        failures = identity_failures(m)
        if failures:
            name, x = failures[0]
            raise RingError(f"Module `{m.name}` over {m.ring} violates `{name}` at {m.format(x)}")
        lm.lnp(f"Module `{m.name}` over {m.ring} satisfies the operator identities", "debug")
    return m


def module_tautological(ring: CoefficientRing, check: bool = True) -> CRModuleData:
    """
    The coefficient ring acting on itself through V, F and d_A
    """
    m = CRModuleData(
        name="tautological", ring=ring, op_V=ring.V, op_F=ring.F, op_d=ring.d, scalar_action=ring.mul,
        add=ring.add, zero=ring.zero, eq=ring.eq, random_point=ring.random_scalar, format=ring.format_scalar,
    )
    return _checked(m, check)


def module_regular(ring: CoefficientRing, engine: Optional[CRRing] = None, check: bool = True) -> CRModuleData:
    """
    The ring of operators acting on itself by left multiplication
    """
    engine = engine or cr_ring(ring)
    m = CRModuleData(
        name="regular", ring=ring,
        op_V=lambda x: engine.mul(engine.gen_v, x),
        op_F=lambda x: engine.mul(engine.gen_f, x),
        op_d=lambda x: engine.mul(engine.gen_d, x),
        scalar_action=lambda cval, x: engine.mul(engine.from_scalar(cval), x),
        add=engine.add, zero=engine.zero, eq=lambda a, b: a == b,
        random_point=lambda rng: engine.random_element(rng, max_terms=2, support=2),
        format=format_element,
    )
    return _checked(m, check)


MODULES = {"tautological": module_tautological, "regular": module_regular}


def module_by_name(name: str, ring: CoefficientRing) -> CRModuleData:
    if name not in MODULES:
        raise RingError(f"Unknown module `{name}` (expected one of {', '.join(MODULES)})")
    return MODULES[name](ring)


def corrupt_operator(m: CRModuleData, operator: str = "F") -> CRModuleData:
    """
    Copy of a module whose V, F or d is doubled (negative controls); the identities are not checked
    """
    field_name = f"op_{operator}"
    if field_name not in ("op_V", "op_F", "op_d"):
        raise RingError(f"Unknown operator `{operator}` (expected V, F or d)")
    original = getattr(m, field_name)
    return replace(m, name=f"{m.name}+corrupt-{operator}", **{field_name: lambda x: m.scale(2, original(x))})


def act_word(m: CRModuleData, w: Word, x):
    """
    Apply a word to a carrier point, rightmost letter first
    :param m: Module
    :param w: Word
    :param x: Carrier point
    :return: Carrier point
    """
    operators = {"v": m.op_V, "f": m.op_F, "d": m.op_d}
    for letter in reversed(w.letters):
        if isinstance(letter, GradedScalar):
            if letter.ring != m.ring:
                raise RingError(f"Scalar from {letter.ring} acting on a module over {m.ring}")
            x = m.scalar_action(letter, x)
        elif letter in operators:
            x = operators[letter](x)
        else:
            raise RingError(f"Unknown letter `{letter}`")
    return x


def _iterate(op, x, times: int):
    for _ in range(times):
        x = op(x)
    return x


def act_element(m: CRModuleData, e: CRElement, x):
    """
    Action of a normal form: v^i c acts as V^i(c x), d v^i c as d V^i(c x), c f^j as c F^j(x)
    and c f^j d as c F^j(d x)
    """
    if e.ring != m.ring:
        raise RingError(f"Element over {e.ring} acting on a module over {m.ring}")
    total = m.zero
    dx = None
    for shape, index, coeff in e.terms():
        if shape == "v":
            term = _iterate(m.op_V, m.scalar_action(coeff, x), index)
        elif shape == "dv":
            term = m.op_d(_iterate(m.op_V, m.scalar_action(coeff, x), index))
        elif shape == "f":
            term = m.scalar_action(coeff, _iterate(m.op_F, x, index))
        else:
            if dx is None:
                dx = m.op_d(x)
            term = m.scalar_action(coeff, _iterate(m.op_F, dx, index))
        total = m.add(total, term)
    return total


def random_word(ring: CoefficientRing, rng: random.Random, max_length: int) -> Word:
    letters = []
    for _ in range(rng.randint(0, max_length)):
        if rng.random() < 0.25:
            letters.append(ring.random_scalar(rng, rng.choice(ring.degrees)))
        else:
            letters.append(rng.choice("vfd"))
    return Word(tuple(letters))


def action_consistency_check(m: CRModuleData, samples: int = 500, max_word_length: int = 8, seed: int = 0,
                             engine: Optional[CRRing] = None) -> SuiteReport:
    """
    Compare act_word(w, x) with act_element(normal form of w, x) on random words and points
    :param m: Module
    :param samples: Number of (word, point) pairs
    :param max_word_length: Longest word sampled
    :param seed: Random seed
    :param engine: Normalizer under test (a corrupted one for negative controls)
    :return: SuiteReport with a single `consistency` result
    """
    engine = engine or cr_ring(m.ring)
    rng = random.Random(seed)
    report = SuiteReport(suite=f"consistency:{m.name}", ring=m.ring.descriptor, seed=seed, samples=samples)
    result = RelationResult(name="consistency", relation="act(w, x) = act(normalize(w), x)")
    lm.lnp(f"Action consistency on `{m.name}` over {m.ring}: {samples} samples, seed {seed}", "debug")

    for _ in range(samples):
        w = random_word(m.ring, rng, max_word_length)
        x = m.random_point(rng)
        normal = engine.eval_word(w)
        by_word = act_word(m, w, x)
        by_element = act_element(m, normal, x)
        result.checked += 1
        if not m.eq(by_word, by_element):
            result.passed = False
            result.counterexample = Counterexample(
                word=str(w), instantiation=[f"x = {m.format(x)}", f"normal form = {format_element(normal)}"],
                lhs=m.format(by_word), rhs=m.format(by_element),
            )
            break
    report.results.append(result)
    return report
