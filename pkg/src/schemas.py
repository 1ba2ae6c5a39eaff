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

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_serializer, model_validator
from sympy import isprime

CoeffKind = Literal["witt-fp", "witt-perfect", "zmod-pn", "formal-eta"]
Shape = Literal["v", "dv", "f", "fd"]


# Coefficient ring descriptor (hashable so ring handles can be cached per descriptor)
class CoefficientRingDescriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    prime: int
    truncation: int = 1
    kind: CoeffKind = "witt-fp"
    field_degree: int = 1

    @model_validator(mode="after")
    def check_descriptor(self):
        if not isprime(self.prime):
            raise ValueError(f"prime {self.prime} is not a prime number")
        if self.truncation < 1:
            raise ValueError(f"truncation must be at least 1, got {self.truncation}")
        if self.field_degree < 1:
            raise ValueError(f"field degree must be at least 1, got {self.field_degree}")
        if self.field_degree != 1 and self.kind != "witt-perfect":
            raise ValueError(f"field degree {self.field_degree} only applies to witt-perfect coefficients")
        if self.kind == "formal-eta" and self.prime != 2:
            raise ValueError("formal-eta coefficients exist only for prime 2")
        return self

    @property
    def eta_present(self) -> bool:
        return self.kind == "formal-eta"

    @property
    def field_order(self) -> int:
        return self.prime ** self.field_degree

    @model_serializer(mode="wrap")
    def flat_record(self, handler):
        data = handler(self)
        if data.get("field_degree") == 1:
            data.pop("field_degree")
        return data

    def label(self) -> str:
        if self.kind == "formal-eta":
            return "formal-eta (p=2)"
        if self.kind == "zmod-pn":
            return f"Z/{self.prime ** self.truncation}"
        return f"W_{self.truncation}(F_{self.field_order})"


# Structured element documents
class ScalarComponent(BaseModel):
    degree: int
    value: Union[int, List[int]]


class TermRecord(BaseModel):
    shape: Shape
    index: int = Field(ge=0)
    coefficient: List[ScalarComponent]


class ElementDocument(BaseModel):
    ring: CoefficientRingDescriptor
    v: List[TermRecord] = []
    dv: List[TermRecord] = []
    f: List[TermRecord] = []
    fd: List[TermRecord] = []


# Verification reports
class Counterexample(BaseModel):
    word: str
    instantiation: List[str] = []
    lhs: str
    rhs: str


class RelationResult(BaseModel):
    name: str
    relation: str
    checked: int = 0
    passed: bool = True
    counterexample: Optional[Counterexample] = None


class SuiteReport(BaseModel):
    suite: str
    ring: CoefficientRingDescriptor
    seed: int
    samples: int
    results: List[RelationResult] = []

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)


# CLI configuration (settings merged with command-line flags)
class CliConfig(BaseModel):
    prime: int
    truncation: int
    coeff: CoeffKind
    field_degree: int = 1
    output: Literal["text", "structured"] = "text"
    seed: int = 0
    verbosity: int = 0

    def descriptor_fields(self) -> dict:
        return dict(prime=self.prime, truncation=self.truncation, kind=self.coeff, field_degree=self.field_degree)
