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
from typing import Callable, List, Optional, Tuple

from coefficients import CoefficientRing, GradedScalar
from crring import CRRing, Word, cr_basis, cr_ring, word
from errors import RingError
from lang import format_element
from logger.logrr import lm
from schemas import Counterexample, RelationResult, SuiteReport

RelationBuilder = Callable[[CoefficientRing, Optional[GradedScalar]], Tuple[Word, List[Word]]]


@dataclass(frozen=True)
class Relation:
    """
    One defining relation lhs = sum(rhs). `build` instantiates both sides for a coefficient x
    (ignored when the relation has no coefficient slot).
    """
    name: str
    text: str
    build: RelationBuilder
    takes_scalar: bool = False

    def instantiate(self, ring: CoefficientRing, x: Optional[GradedScalar] = None) -> Tuple[Word, List[Word]]:
        return self.build(ring, x)


@dataclass(frozen=True)
class RelationSet:
    name: str
    relations: Tuple[Relation, ...]

    def names(self) -> List[str]:
        return [r.name for r in self.relations]

    def __iter__(self):
        return iter(self.relations)


def _fdv_eta(ring: CoefficientRing) -> GradedScalar:
    return ring.eta() if ring.prime == 2 else ring.zero


def _p(ring: CoefficientRing) -> GradedScalar:
    return ring.from_int(ring.prime)


FV = Relation("fv", "f*v = p", lambda R, x: (word("f", "v"), [word(_p(R))]))
DD = Relation("dd", "d*d = eta*d", lambda R, x: (word("d", "d"), [word(R.eta(), "d")]))
DF = Relation("df", "d*f = p*f*d", lambda R, x: (word("d", "f"), [word(_p(R), "f", "d")]))
VD = Relation("vd", "v*d = p*d*v", lambda R, x: (word("v", "d"), [word(_p(R), "d", "v")]))
FDV = Relation("fdv", "f*d*v = d (+ eta if p = 2)",
               lambda R, x: (word("f", "d", "v"), [word("d"), word(_fdv_eta(R))]))
FX = Relation("fx", "f*x = F(x)*f", lambda R, x: (word("f", x), [word(R.F(x), "f")]), takes_scalar=True)
XV = Relation("xv", "x*v = v*F(x)", lambda R, x: (word(x, "v"), [word("v", R.F(x))]), takes_scalar=True)
VXF = Relation("vxf", "v*x*f = V(x)", lambda R, x: (word("v", x, "f"), [word(R.V(x))]), takes_scalar=True)
DX = Relation("dx", "d*x = d_A(x) + (-1)^|x| x*d",
              lambda R, x: (word("d", x), [word(R.d(x)), word(R.scale(x, x.sign), "d")]), takes_scalar=True)

FDV_CLASSICAL = Relation("fdv", "f*d*v = d", lambda R, x: (word("f", "d", "v"), [word("d")]))
DD_CLASSICAL = Relation("dd", "d*d = 0", lambda R, x: (word("d", "d"), []))
DX_CLASSICAL = Relation("dx", "d*x = x*d", lambda R, x: (word("d", x), [word(x, "d")]), takes_scalar=True)

ITCART = RelationSet("itcart", (FV, DD, DF, VD, FDV))
IR = RelationSet("ir", (FV, VXF, DF, VD, FDV, DD, FX, XV, DX))
CLASSICAL = RelationSet("classical", (FV, VXF, DF, VD, FX, XV, FDV_CLASSICAL, DD_CLASSICAL, DX_CLASSICAL))

RELATION_SETS = {rs.name: rs for rs in (ITCART, IR, CLASSICAL)}


def relation_set(name: str, ring: Optional[CoefficientRing] = None) -> RelationSet:
    """
    Look up a relation set by name (itcart, ir, classical)
    :param name: Set name
    :param ring: Ring it will be checked over; the classical set needs eta = 0 and d_A = 0
    :return: RelationSet
    """
    key = name.lower().replace("_", "")
    if key not in RELATION_SETS:
        raise RingError(f"Unknown relation set `{name}` (expected one of {', '.join(RELATION_SETS)})")
    if key == "classical" and ring is not None and ring.descriptor.eta_present:
        raise RingError(f"The classical relations do not hold over {ring}; use `ir`")
    return RELATION_SETS[key]


def _random_homogeneous(ring: CoefficientRing, rng: random.Random) -> GradedScalar:
    return ring.random_scalar(rng, rng.choice(ring.degrees))


def check_relation(engine: CRRing, relation: Relation, x: Optional[GradedScalar] = None,
                   left: Optional[Word] = None, right: Optional[Word] = None) -> Optional[Counterexample]:
    """
    Evaluate left*(lhs - rhs)*right; a nonzero value is returned as a counterexample
    """
    ring = engine.coeffs
    lhs_word, rhs_words = relation.instantiate(ring, x)
    left = left or Word()
    right = right or Word()
    lhs = engine.eval_word(Word(left.letters + lhs_word.letters + right.letters))
    rhs = engine.eval_sum([Word(left.letters + w.letters + right.letters) for w in rhs_words])
    if lhs == rhs:
        return None
    context = "" if not (left.letters or right.letters) else f" in context {left} * [ ] * {right}"
    return Counterexample(
        word=f"{lhs_word}{context}",
        instantiation=[f"x = {x}"] if relation.takes_scalar else [],
        lhs=format_element(lhs),
        rhs=format_element(rhs),
    )


def cr_relation_suite(ring: CoefficientRing, rules: str = "ir", samples: int = 100, seed: int = 0,
                      engine: Optional[CRRing] = None) -> SuiteReport:
    """
    Check every relation of a set on random homogeneous coefficient instantiations
    :param ring: Coefficient ring
    :param rules: Relation set name
    :param samples: Instantiations per relation with a coefficient slot
    :param seed: Random seed
    :param engine: Multiplication engine (a corrupted one for negative controls)
    :return: SuiteReport, one result per relation
    """
    relations = relation_set(rules, ring)
    engine = engine or cr_ring(ring)
    rng = random.Random(seed)
    report = SuiteReport(suite=f"relations:{relations.name}", ring=ring.descriptor, seed=seed, samples=samples)
    lm.lnp(f"Checking {len(relations.relations)} relations ({relations.name}) over {ring}, seed {seed}", "debug")

    for relation in relations:
        result = RelationResult(name=relation.name, relation=relation.text)
        trials = samples if relation.takes_scalar else 1
        for _ in range(trials):
            x = _random_homogeneous(ring, rng) if relation.takes_scalar else None
            result.checked += 1
            failure = check_relation(engine, relation, x)
            if failure is not None:
                result.passed = False
                result.counterexample = failure
                break
        report.results.append(result)
    return report


def contextual_suite(ring: CoefficientRing, rules: str = "ir", max_index: int = 3, seed: int = 0,
                     engine: Optional[CRRing] = None) -> SuiteReport:
    """
    Check m*(lhs - rhs)*m' = 0 for every relation and every pair of basis monomials of index <= max_index
    """
    relations = relation_set(rules, ring)
    engine = engine or cr_ring(ring)
    rng = random.Random(seed)
    monomials = cr_basis(max_index)
    words = [_monomial_word(m.shape, m.index) for m in monomials]
    report = SuiteReport(suite=f"context:{relations.name}", ring=ring.descriptor, seed=seed,
                         samples=len(words) ** 2)

    for relation in relations:
        result = RelationResult(name=relation.name, relation=relation.text)
        x = _random_homogeneous(ring, rng) if relation.takes_scalar else None
        for left in words:
            for right in words:
                result.checked += 1
                failure = check_relation(engine, relation, x, left, right)
                if failure is not None:
                    result.passed = False
                    result.counterexample = failure
                    break
            if not result.passed:
                break
        report.results.append(result)
    return report


def _monomial_word(shape: str, index: int) -> Word:
    if shape == "one":
        return Word()
    if shape == "v":
        return Word(("v",) * index)
    if shape == "dv":
        return Word(("d",) + ("v",) * index)
    if shape == "f":
        return Word(("f",) * index)
    return Word(("f",) * index + ("d",))


def format_relations(relations: RelationSet) -> List[str]:
    return [f"{r.name}: {r.text}" for r in relations]
