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

import jinja2

from schemas import SuiteReport

suite_report = """
{{ report.suite }} over {{ report.ring.label() }} (seed {{ report.seed }}, samples {{ report.samples }})
{% for r in report.results %}
{{ "PASS" if r.passed else "FAIL" }} {{ r.name }}: {{ r.relation }} [{{ r.checked }} checked]
{% if r.counterexample %}
  counterexample: {{ r.counterexample.word }}
{% for item in r.counterexample.instantiation %}
    {{ item }}
{% endfor %}
    lhs = {{ r.counterexample.lhs }}
    rhs = {{ r.counterexample.rhs }}
{% endif %}
{% endfor %}
{{ "all passed" if report.passed else "FAILED" }}
"""

multiplication_table = """
# products of basis monomials over {{ ring }}, index <= {{ max_index }}
{% for a, b, product in rows %}
{{ a }} * {{ b }} = {{ product }}
{% endfor %}
"""

basis_listing = """
# basis monomials, index <= {{ max_index }}{% if degree is not none %}, degree {{ degree }}{% endif %}: {{ monomials|length }}
{% for m in monomials %}
{{ m }}  (degree {{ m.degree }})
{% endfor %}
"""

_suite_template = jinja2.Template(suite_report.lstrip("\n"), trim_blocks=True, lstrip_blocks=True)
_table_template = jinja2.Template(multiplication_table.lstrip("\n"), trim_blocks=True, lstrip_blocks=True)
_basis_template = jinja2.Template(basis_listing.lstrip("\n"), trim_blocks=True, lstrip_blocks=True)


def render_suite(report: SuiteReport) -> str:
    return _suite_template.render(report=report).rstrip("\n")


def render_table(ring, max_index: int, rows) -> str:
    """
    Text form of a multiplication table
    :param ring: Coefficient ring (its label heads the table)
    :param max_index: Index bound of the monomials
    :param rows: (left monomial, right monomial, product text) triples
    :return: One line per product
    """
    return _table_template.render(ring=ring, max_index=max_index, rows=rows).rstrip("\n")


def render_basis(monomials, max_index: int, degree=None) -> str:
    return _basis_template.render(monomials=monomials, max_index=max_index, degree=degree).rstrip("\n")
