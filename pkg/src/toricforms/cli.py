"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 validation error (bad fan, bad
divisor, ...), 3 computation error (route mismatch, failed audit).
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click
import yaml

from . import engine
from .chow import chow_basis, chow_dim
from .cocycles import emit_cech_cocycle, generators
from .divisor import classify
from .errors import FanValidationError, ParseError, RouteMismatch, ToricError
from .examples import BUILTINS, DESCRIPTIONS
from .ishida import build_ishida, cohomology_dims, star_split
from .lattice import Fan, fan_from_mapping, fan_to_mapping, fan_validate

COMMANDS = ("validate", "classify", "table", "vanishing", "ishida", "chow", "cocycles", "example")


class UsageProblem(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    fan_source: str | None = None
    divisor: tuple[int, ...] | None = None
    route: str = "all"
    k: int | None = None
    l: int | None = None
    fmt: str = "text"
    options: dict = field(default_factory=dict)


def parse_fan_file(path) -> Fan:
    """Read and validate a fan document (YAML or JSON: rank, rays, max_cones)."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ParseError(f"{path}: malformed document{where}") from None
    try:
        fan = fan_from_mapping(doc)
    except ValueError as e:
        raise ParseError(f"{path}: {e}") from None
    report = fan_validate(fan)
    if not report.ok:
        raise FanValidationError(report)
    return fan


def load_fan(source: str) -> Fan:
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in BUILTINS:
            raise UsageProblem(f"unknown builtin {name!r}; available: {', '.join(BUILTINS)}")
        return BUILTINS[name]
    return parse_fan_file(source)


def parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageProblem(f"expected comma-separated integers, got {text!r}") from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _require(job: JobSpec, fan: Fan, complete: bool = True) -> tuple[int, ...]:
    if complete:
        report = fan_validate(fan, require_complete=True)
        if not report.ok:
            raise FanValidationError(report)
    if job.divisor is None:
        raise UsageProblem(f"'{job.command}' needs --divisor")
    if len(job.divisor) != fan.n_rays:
        raise UsageProblem(f"divisor has {len(job.divisor)} entries but the fan has {fan.n_rays} rays")
    return job.divisor


def _run(job: JobSpec) -> tuple[int, str]:
    if job.command == "example":
        name = job.options.get("name")
        if not name:
            if job.fmt == "json":
                return 0, _dump({n: DESCRIPTIONS[n] for n in BUILTINS})
            return 0, "\n".join(f"{n:<7} {DESCRIPTIONS[n]}" for n in BUILTINS)
        if name not in BUILTINS:
            raise UsageProblem(f"unknown builtin {name!r}")
        return 0, _dump(fan_to_mapping(BUILTINS[name]))

    if not job.fan_source:
        raise UsageProblem(f"'{job.command}' needs --fan")
    fan = load_fan(job.fan_source)

    if job.command == "validate":
        report = fan_validate(fan, require_complete=job.options.get("complete", True))
        if job.fmt == "json":
            out = _dump({"valid": report.ok, "complete": report.complete,
                         "errors": [{"code": e.code, "message": e.message} for e in report.errors]})
        else:
            out = "\n".join(["valid" if report.ok else "invalid", f"complete: {report.complete}"]
                            + [f"{e.code}: {e.message}" for e in report.errors])
        return (0 if report.ok else 2), out

    if job.command == "classify":
        a = _require(job, fan)
        c = classify(fan, a)
        if job.fmt == "json":
            return 0, _dump({"cartier": c.cartier, "semiample": c.semiample, "iitaka_dim": c.iitaka_dim})
        i = "none" if c.iitaka_dim is None else c.iitaka_dim
        return 0, f"cartier: {c.cartier}\nsemiample: {c.semiample}\niitaka_dim: {i}"

    if job.command == "table":
        a = _require(job, fan)
        table = engine.full_table(fan, a, job.route)
        if job.k is not None or job.l is not None:
            ks = [job.k] if job.k is not None else range(table.d + 1)
            ls = [job.l] if job.l is not None else range(table.d + 1)
            for k in ks:
                for l in ls:
                    if not (0 <= k <= table.d and 0 <= l <= table.d):
                        raise UsageProblem(f"(k, l) = ({k}, {l}) outside [0, {table.d}]")
            cells = [{"k": k, "l": l, "h": table.entries[k][l]} for k in ks for l in ls]
            if job.fmt == "json":
                return 0, _dump({"d": table.d, "i": table.i, "route": table.route, "cells": cells})
            return 0, "\n".join(f"h^{c['k']}(Omega^{c['l']}(X)) = {c['h']}" for c in cells)
        return 0, _dump(table.to_dict()) if job.fmt == "json" else table.to_text()

    if job.command == "vanishing":
        a = _require(job, fan)
        report = engine.vanishing_audit(fan, a)
        out = _dump(report.to_dict()) if job.fmt == "json" else report.to_text()
        return (0 if report.passed else 3), out

    if job.command == "ishida":
        phi = fan
        star = job.options.get("star")
        if star is not None:
            gamma = tuple(sorted(star))
            if gamma not in fan:
                raise UsageProblem(f"{gamma} is not a cone of the fan")
            phi = star_split(fan, gamma)[0]
        ls = [job.l] if job.l is not None else range(fan.rank + 1)
        rows = []
        for l in ls:
            K = build_ishida(phi, l)
            rows.append({"l": l, "terms": K.dims(), "h": cohomology_dims(K)})
        if job.fmt == "json":
            return 0, _dump(rows)
        return 0, "\n".join(f"l = {r['l']}: dim C = {r['terms']}, h = {r['h']}" for r in rows)

    if job.command == "chow":
        ks = [job.k] if job.k is not None else range(fan.rank + 1)
        rows = [{"k": k, "dim": chow_dim(fan, k), "basis": [list(g) for g in chow_basis(fan, k)]} for k in ks]
        if job.fmt == "json":
            return 0, _dump(rows)
        return 0, "\n".join(f"A_{r['k']}: dim {r['dim']}, basis {r['basis']}" for r in rows)

    if job.command == "cocycles":
        a = _require(job, fan)
        if job.k is None or job.l is None:
            raise UsageProblem("'cocycles' needs --k and --l")
        f = job.options.get("section")
        gens = generators(fan, a, job.k, job.l)
        cocycles = [emit_cech_cocycle(fan, a, g, f) for g in gens]
        if job.fmt == "json":
            return 0, _dump([{"sigma": list(g.sigma), "point": list(g.point), "A": list(g.A),
                              "gamma": list(g.gamma), "omega": [list(w) for w in g.omega],
                              "cocycle": c.to_dict()} for g, c in zip(gens, cocycles)])
        blocks = [f"{len(gens)} generator(s) of H^{job.k}(Omega^{job.l}(X))"]
        for n, (g, c) in enumerate(zip(gens, cocycles), start=1):
            blocks.append(f"[{n}] sigma={g.sigma} point={g.point} A={g.A} gamma={g.gamma} "
                          f"omega={[list(w) for w in g.omega]}\n{c.to_text()}")
        return 0, "\n".join(blocks)

    raise UsageProblem(f"unknown command {job.command!r}")


def run(job: JobSpec) -> tuple[int, str]:
    """Execute a job; returns (exit status, rendered output or diagnostic)."""
    try:
        return _run(job)
    except UsageProblem as e:
        return 1, f"usage error: {e}"
    except RouteMismatch as e:
        return 3, f"error: {e}"
    except (ToricError, ValueError) as e:
        return 2, f"error: {e}"


# -- click wiring -------------------------------------------------------------

_fan = click.option("--fan", "fan_source", required=True, help="fan file or builtin:NAME")
_div = click.option("--divisor", required=True, help="comma-separated coefficients, one per ray")
_fmt = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")


def _finish(job: JobSpec):
    status, out = run(job)
    click.echo(out, err=out.startswith(("error:", "usage error:")))
    sys.exit(status)


@click.group()
def cli():
    """Cohomology of twisted differential forms on complete simplicial toric varieties."""


@cli.command()
@_fan
@click.option("--complete/--no-complete", default=True, help="also require completeness")
@_fmt
def validate(fan_source, complete, fmt):
    """Check a fan: primitive rays, simpliciality, intersections, completeness."""
    _finish(JobSpec("validate", fan_source, fmt=fmt, options={"complete": complete}))


@cli.command("classify")
@_fan
@_div
@_fmt
def classify_cmd(fan_source, divisor, fmt):
    """Cartier / semiample / Kodaira-Iitaka dimension of a divisor."""
    _finish(JobSpec("classify", fan_source, _int_list(divisor), fmt=fmt))


@cli.command()
@_fan
@_div
@click.option("--route", type=click.Choice([r.value for r in engine.Route]), default="all")
@click.option("--k", type=int, default=None)
@click.option("--l", type=int, default=None)
@_fmt
def table(fan_source, divisor, route, k, l, fmt):
    """Table of dim H^k(Omega^l(X)); --route all checks that the three routes agree."""
    _finish(JobSpec("table", fan_source, _int_list(divisor), route=route, k=k, l=l, fmt=fmt))


@cli.command()
@_fan
@_div
@_fmt
def vanishing(fan_source, divisor, fmt):
    """Audit the predicted zero region and the top-degree column."""
    _finish(JobSpec("vanishing", fan_source, _int_list(divisor), fmt=fmt))


@cli.command()
@_fan
@click.option("--l", type=int, default=None)
@click.option("--star", default=None, help="comma-separated ray indices: use the star of this cone")
@_fmt
def ishida(fan_source, l, star, fmt):
    """Cohomology of Ishida's complexes of the fan (or of the star of a cone)."""
    opts = {"star": _int_list(star)} if star else {}
    _finish(JobSpec("ishida", fan_source, l=l, fmt=fmt, options=opts))


@cli.command()
@_fan
@click.option("--k", type=int, default=None)
@_fmt
def chow(fan_source, k, fmt):
    """Graded dimensions and monomial bases of the Chow ring."""
    _finish(JobSpec("chow", fan_source, k=k, fmt=fmt))


@cli.command()
@_fan
@_div
@click.option("--k", type=int, required=True)
@click.option("--l", type=int, required=True)
@click.option("--section", default=None, help="exponents of the section f (default x^a)")
@_fmt
def cocycles(fan_source, divisor, k, l, section, fmt):
    """Čech cocycle generators of H^k(Omega^l(X))."""
    opts = {"section": _int_list(section)} if section else {}
    _finish(JobSpec("cocycles", fan_source, _int_list(divisor), k=k, l=l, fmt=fmt, options=opts))


@cli.command()
@click.argument("name", required=False)
@_fmt
def example(name, fmt):
    """List the built-in fans, or print one as a fan document."""
    _finish(JobSpec("example", fmt=fmt, options={"name": name}))


def _int_list(text):
    try:
        return parse_int_list(text)
    except UsageProblem as e:
        raise click.UsageError(str(e))


def main(argv=None):
    """Console entry point; exits with the job's status."""
    try:
        cli.main(args=argv, prog_name="toricforms", standalone_mode=False)
    except click.exceptions.NoArgsIsHelpError as e:
        click.echo(e.ctx.get_help())
        sys.exit(1)
    except click.UsageError as e:
        click.echo(f"usage error: {e.format_message()}", err=True)
        sys.exit(1)
    except click.exceptions.Abort:
        sys.exit(1)


if __name__ == "__main__":
    main()
