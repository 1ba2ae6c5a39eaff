#!/usr/bin/env python3
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

import functools
import json
import sys
from typing import List, Optional

import click

from action import act_element, action_consistency_check, corrupt_operator, module_by_name
from bases import parse_base
from coefficients import CoefficientRing, ring_make
from config.config import c
from crring import CORRUPTIONS, CRRing, cr_basis, cr_ring
from lang import encode, evaluate, format_element, parse_scalar, parse_witt_coords
from logger.logrr import lm
from relations import RELATION_SETS, contextual_suite, cr_relation_suite, format_relations, relation_set
from report import render_basis, render_suite, render_table
from schemas import CliConfig, SuiteReport
from witt import (FAMILIES, FAMILY_NAMES, ghost, teichmuller, universal_family, witt_F, witt_V, witt_add, witt_mul,
                  witt_neg, witt_sub, witt_vector)


class CliError(click.ClickException):
    """Domain or parse error surfaced as a usage failure"""
    exit_code = 2


def domain_errors(f):
    """
    Turn library ValueErrors (bad rings, parse errors, Witt mismatches) into exit-code-2 CLI errors
    """

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ValueError as e:
            lm.lnp(str(e), "debug")
            raise CliError(str(e))

    return wrapper


class AppState:
    """Per-invocation settings plus the lazily built coefficient ring"""

    def __init__(self, config: CliConfig):
        self.config = config
        self._ring: Optional[CoefficientRing] = None

    @property
    def ring(self) -> CoefficientRing:
        if self._ring is None:
            self._ring = ring_make(**self.config.descriptor_fields())
        return self._ring

    @property
    def structured(self) -> bool:
        return self.config.output == "structured"

    def emit(self, text: str, document=None):
        """
        Write one result: its text form, or its JSON document in structured mode
        """
        if self.structured and document is not None:
            payload = document.model_dump(mode="json") if hasattr(document, "model_dump") else document
            click.echo(json.dumps(payload))
        else:
            click.echo(text)


pass_state = click.make_pass_decorator(AppState)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--prime", type=int, default=None, help=f"Prime p (default {c.DEFAULT_PRIME}).")
@click.option("--trunc", "truncation", type=int, default=None,
              help=f"Witt length / exponent n (default {c.DEFAULT_TRUNCATION}).")
@click.option("--coeff", type=click.Choice(["witt-fp", "witt-perfect", "zmod-pn", "formal-eta"]), default=None,
              help=f"Coefficient ring kind (default {c.DEFAULT_COEFF}).")
@click.option("--field-degree", type=int, default=None, help="r with q = p^r for witt-perfect coefficients.")
@click.option("--output", type=click.Choice(["text", "structured"]), default=None, help="Output mode.")
@click.option("--seed", type=int, default=None, help=f"Random seed (default {c.DEFAULT_SEED}).")
@click.option("-v", "--verbose", "verbosity", count=True, help="-v for progress, -vv for debug output.")
@click.pass_context
@domain_errors
def cli(ctx, prime, truncation, coeff, field_degree, output, seed, verbosity):
    """
    Normal forms, relation checks and module actions for the Cartier-Raynaud ring over a coefficient ring.

    Products read left to right; words act on modules right to left (the rightmost letter acts first).
    """
    config = CliConfig(verbosity=verbosity, **c.cli_defaults(
        prime=prime, truncation=truncation, coeff=coeff, field_degree=field_degree, output=output, seed=seed))
    lm.set_verbosity(verbosity)
    if verbosity:
        lm.print_start_panel(app_name=c.APP_NAME)
        ctx.call_on_close(lm.print_exit_panel)
    if verbosity >= 2:
        lm.print_config_table(config.model_dump(), title="Configuration")
    ctx.obj = AppState(config)


def _finish(ctx, report: SuiteReport, state: AppState):
    state.emit(render_suite(report), report)
    if state.config.verbosity:
        lm.print_suite_table(report)
    lm.lnp(f"{report.suite}: {'passed' if report.passed else 'failed'} (seed {report.seed})", "info")
    if not report.passed:
        ctx.exit(1)


@cli.command()
@click.argument("expr")
@pass_state
@domain_errors
def normalize(state: AppState, expr: str):
    """Print the normal form of EXPR."""
    e = evaluate(expr, state.ring)
    state.emit(format_element(e), encode(e))


@cli.command()
@click.argument("left")
@click.argument("right")
@pass_state
@domain_errors
def mul(state: AppState, left: str, right: str):
    """Print the product LEFT * RIGHT."""
    R = cr_ring(state.ring)
    e = R.mul(evaluate(left, state.ring), evaluate(right, state.ring))
    state.emit(format_element(e), encode(e))


@cli.command()
@click.argument("left")
@click.argument("right")
@pass_state
@domain_errors
def add(state: AppState, left: str, right: str):
    """Print the sum LEFT + RIGHT."""
    R = cr_ring(state.ring)
    e = R.add(evaluate(left, state.ring), evaluate(right, state.ring))
    state.emit(format_element(e), encode(e))


@cli.command()
@click.argument("expr")
@pass_state
@domain_errors
def degree(state: AppState, expr: str):
    """Split EXPR into homogeneous components."""
    R = cr_ring(state.ring)
    split = R.degree_split(evaluate(expr, state.ring))
    if not split:
        state.emit("0", {"degree": None, "element": encode(R.zero).model_dump(mode="json")})
    for deg, part in split.items():
        state.emit(f"{deg}: {format_element(part)}", {"degree": deg, "element": encode(part).model_dump(mode="json")})


@cli.command()
@click.option("--max", "max_index", type=int, required=True, help="Index bound M.")
@click.option("--degree", "deg", type=int, default=None, help="Only monomials of this degree.")
@pass_state
@domain_errors
def basis(state: AppState, max_index: int, deg: Optional[int]):
    """List the basis monomials with index <= M."""
    monomials = cr_basis(max_index, deg)
    if state.structured:
        for m in monomials:
            state.emit(str(m), {"shape": m.shape, "index": m.index, "degree": m.degree})
    else:
        state.emit(render_basis(monomials, max_index, deg))
    if state.config.verbosity:
        lm.print_list_as_rich_table([{"monomial": str(m), "degree": m.degree} for m in monomials],
                                    title=f"Basis, index <= {max_index}")


@cli.command()
@click.option("--max", "max_index", type=int, required=True, help="Index bound M.")
@pass_state
@domain_errors
def table(state: AppState, max_index: int):
    """Multiply every pair of basis monomials with index <= M."""
    rows = cr_ring(state.ring).table(max_index)
    if state.structured:
        for a, b, product in rows:
            state.emit("", {"left": str(a), "right": str(b), "product": encode(product).model_dump(mode="json")})
        return
    state.emit(render_table(state.ring, max_index, [(a, b, format_element(p)) for a, b, p in rows]))


@cli.command()
@click.option("--rules", type=click.Choice(sorted(RELATION_SETS)), default="ir", show_default=True)
@click.option("--samples", type=int, default=None, help=f"Instantiations per relation (default {c.DEFAULT_SAMPLES}).")
@click.option("--seed", type=int, default=None, help="Random seed (overrides the global --seed).")
@click.option("--corrupt", type=click.Choice(sorted(CORRUPTIONS)), default=None,
              help="Break one reduction rule on purpose; the run must then fail.")
@click.option("--context/--no-context", default=False, help="Also check every relation between basis monomials.")
@click.pass_context
@domain_errors
def verify(ctx, rules: str, samples: Optional[int], seed: Optional[int], corrupt: Optional[str], context: bool):
    """Check a relation set on random coefficients."""
    state: AppState = ctx.obj
    seed = state.config.seed if seed is None else seed
    samples = c.DEFAULT_SAMPLES if samples is None else samples
    relation_set(rules, state.ring)
    engine = CRRing(state.ring, corrupt) if corrupt else None
    report = cr_relation_suite(state.ring, rules, samples, seed, engine=engine)
    if context:
        extra = contextual_suite(state.ring, rules, seed=seed, engine=engine)
        report.results.extend(extra.results)
    _finish(ctx, report, state)


@cli.command()
@click.option("--samples", type=int, default=500, show_default=True)
@click.option("--len", "max_length", type=int, default=None,
              help=f"Longest word (default {c.DEFAULT_WORD_LENGTH}).")
@click.option("--seed", type=int, default=None, help="Random seed (overrides the global --seed).")
@click.option("--module", "module_name", type=click.Choice(["tautological", "regular"]), default="tautological",
              show_default=True)
@click.option("--corrupt", type=click.Choice(sorted(CORRUPTIONS)), default=None, help="Break one reduction rule.")
@click.option("--corrupt-op", type=click.Choice(["V", "F", "d"]), default=None, help="Double one module operator.")
@click.pass_context
@domain_errors
def consistency(ctx, samples: int, max_length: Optional[int], seed: Optional[int], module_name: str,
                corrupt: Optional[str], corrupt_op: Optional[str]):
    """Compare word actions with normal-form actions on a module."""
    state: AppState = ctx.obj
    seed = state.config.seed if seed is None else seed
    max_length = c.DEFAULT_WORD_LENGTH if max_length is None else max_length
    module = module_by_name(module_name, state.ring)
    if corrupt_op:
        module = corrupt_operator(module, corrupt_op)
    engine = CRRing(state.ring, corrupt) if corrupt else None
    report = action_consistency_check(module, samples, max_length, seed, engine=engine)
    _finish(ctx, report, state)


@cli.command()
@click.argument("expr")
@click.option("--on", "point", required=True, help="Carrier point (a scalar for the tautological module).")
@click.option("--module", "module_name", type=click.Choice(["tautological", "regular"]), default="tautological",
              show_default=True)
@pass_state
@domain_errors
def act(state: AppState, expr: str, point: str, module_name: str):
    """Apply EXPR to a module point."""
    module = module_by_name(module_name, state.ring)
    x = parse_scalar(point, state.ring) if module_name == "tautological" else evaluate(point, state.ring)
    result = act_element(module, evaluate(expr, state.ring), x)
    if module_name == "tautological":
        state.emit(module.format(result), {"coefficient": [comp.model_dump() for comp in state.ring.encode(result)]})
    else:
        state.emit(module.format(result), encode(result))


@cli.command()
@click.option("--rules", type=click.Choice(sorted(RELATION_SETS)), default="ir", show_default=True)
@pass_state
@domain_errors
def relations(state: AppState, rules: str):
    """List the relations of a set."""
    relations_ = relation_set(rules)
    for line, relation in zip(format_relations(relations_), relations_):
        state.emit(line, {"name": relation.name, "relation": relation.text})


@cli.group()
def witt():
    """Truncated Witt vector arithmetic (p from --prime)."""


base_option = click.option("--base", "base_tag", default="int", show_default=True, help="int, zmod:M or gf:Q.")


def _vector(state: AppState, text: str, base_tag: str):
    return witt_vector(state.config.prime, parse_base(base_tag), parse_witt_coords(text))


def _emit_vector(state: AppState, a):
    state.emit(str(a), {"prime": a.prime, "base": str(a.base), "coords": [a.base.encode(x) for x in a.coords]})


def _binary(name: str, op, doc: str):
    @witt.command(name=name, help=doc)
    @click.argument("left")
    @click.argument("right")
    @base_option
    @pass_state
    @domain_errors
    def command(state: AppState, left: str, right: str, base_tag: str):
        _emit_vector(state, op(_vector(state, left, base_tag), _vector(state, right, base_tag)))

    return command


_binary("add", witt_add, "Witt sum of two vectors.")
_binary("sub", witt_sub, "Witt difference of two vectors.")
_binary("mul", witt_mul, "Witt product of two vectors.")


@witt.command(name="neg")
@click.argument("vector")
@base_option
@pass_state
@domain_errors
def witt_neg_cmd(state: AppState, vector: str, base_tag: str):
    """Witt negative of a vector."""
    _emit_vector(state, witt_neg(_vector(state, vector, base_tag)))


@witt.command(name="frob")
@click.argument("vector")
@base_option
@click.option("--guard", type=int, default=None, help="Extra coordinate for a length-preserving F over int.")
@pass_state
@domain_errors
def witt_frob_cmd(state: AppState, vector: str, base_tag: str, guard: Optional[int]):
    """Frobenius of a vector."""
    _emit_vector(state, witt_F(_vector(state, vector, base_tag), guard))


@witt.command(name="versch")
@click.argument("vector")
@base_option
@pass_state
@domain_errors
def witt_versch_cmd(state: AppState, vector: str, base_tag: str):
    """Verschiebung of a vector."""
    _emit_vector(state, witt_V(_vector(state, vector, base_tag)))


@witt.command(name="teich")
@click.argument("value", type=int)
@base_option
@pass_state
@domain_errors
def witt_teich_cmd(state: AppState, value: int, base_tag: str):
    """Teichmueller representative of a base element (length from --trunc)."""
    base = parse_base(base_tag)
    _emit_vector(state, teichmuller(base.decode(value), state.config.prime, state.config.truncation, base))


@witt.command(name="ghost")
@click.argument("vector")
@base_option
@pass_state
@domain_errors
def witt_ghost_cmd(state: AppState, vector: str, base_tag: str):
    """Ghost components of a vector."""
    a = _vector(state, vector, base_tag)
    components = [a.base.encode(w) for w in ghost(a)]
    state.emit("(" + ", ".join(str(w) for w in components) + ")", {"ghost": components})


@witt.command(name="polys")
@click.option("--family", type=click.Choice(list(FAMILIES)), multiple=True, help="Families to print (default all).")
@pass_state
@domain_errors
def witt_polys_cmd(state: AppState, family: List[str]):
    """Universal polynomials for p = --prime and length n = --trunc."""
    p, n = state.config.prime, state.config.truncation
    for kind in family or FAMILIES:
        for k, poly in enumerate(universal_family(kind, p, n)):
            state.emit(f"{kind}_{k} = {poly}", {"family": kind, "name": FAMILY_NAMES[kind], "index": k,
                                                 "polynomial": str(poly)})


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI and return its exit code: 0 success, 1 failed verification, 2 usage or parse error
    :param argv: Arguments (defaults to sys.argv[1:])
    :return: Exit code
    """
    try:
        rv = cli.main(args=argv, prog_name="crring", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return 2
    except click.Abort:
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(run())
