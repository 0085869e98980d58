"""Command-line interface: ``facegroup <command>``.

Exit codes: 0 ok, 1 semantic failure (invalid sphere, not contiguous, search
gave up, ...), 2 usage or parse error.
"""
from __future__ import annotations

import logging
import os
from typing import Optional

import click
from dotenv import load_dotenv

from .config import Config
from .errors import FaceGroupError, ParseError
from .services import bridge as bridge_ops
from .services.catalog import EXAMPLES, example_sphere
from .services.complexes import PointedComplex, octahedron
from .services.degree import check_orientation, degree
from .services.formats import (
    parse_grid_map,
    parse_loop,
    parse_pointed_complex,
    parse_sphere,
    render_grid,
    write_certificate,
    write_complex,
    write_grid_map,
    write_sphere,
)
from .services.loops import loop_search
from .services.moves import normalize
from .services.search import STRATEGIES, SearchBudget, search_equivalence
from .services.spheres import FaceSphere, inverse, is_contiguous, product

logger = logging.getLogger("facegroup")


class FaceGroupCLI(click.Group):
    """Maps library errors to exit codes: parse errors 2, everything else 1."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except ParseError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(2)
        except FaceGroupError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(1)


def _read(path: str) -> str:
    with click.open_file(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with click.open_file(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        logger.info("[cli] wrote %s", out)
    else:
        click.echo(text, nl=False)


def _target(path: Optional[str]) -> PointedComplex:
    if path is None:
        return octahedron()
    return parse_pointed_complex(_read(path))


def _sphere(path: str, target: PointedComplex) -> FaceSphere:
    return parse_sphere(_read(path), target)


complex_option = click.option(
    "-c", "--complex", "complex_path", type=click.Path(allow_dash=True),
    help="Pointed complex (.cx); the built-in octahedron when omitted.",
)
out_option = click.option("-o", "--out", type=click.Path(allow_dash=True), help="Write the result here instead of stdout.")


@click.group(cls=FaceGroupCLI)
@click.option("-v", "--verbose", count=True, help="-v info, -vv debug.")
def cli(verbose: int) -> None:
    """Face spheres over simplicial complexes: validate, multiply, search, certify."""
    load_dotenv()
    level = {0: os.getenv("LOG_LEVEL", Config.LOG_LEVEL), 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.WARNING), format="%(levelname)s %(name)s %(message)s")


@cli.command()
@complex_option
@click.option("-f", "--sphere", "sphere_path", required=True, type=click.Path(allow_dash=True))
@click.pass_context
def validate(ctx: click.Context, complex_path: Optional[str], sphere_path: str) -> None:
    """Check the boundary and simplex conditions of a sphere."""
    target = _target(complex_path)
    try:
        f = _sphere(sphere_path, target)
    except ParseError:
        raise
    except FaceGroupError as e:
        click.echo(f"invalid: {e}")
        ctx.exit(1)
    click.echo(f"ok {f.m}x{f.n}")


@cli.command()
@complex_option
@click.argument("f_path", type=click.Path(allow_dash=True))
@click.argument("g_path", type=click.Path(allow_dash=True))
@out_option
def mul(complex_path: Optional[str], f_path: str, g_path: str, out: Optional[str]) -> None:
    """The product f.g."""
    target = _target(complex_path)
    _emit(write_sphere(product(_sphere(f_path, target), _sphere(g_path, target))), out)


@cli.command()
@complex_option
@click.argument("f_path", type=click.Path(allow_dash=True))
@out_option
def inv(complex_path: Optional[str], f_path: str, out: Optional[str]) -> None:
    """The inverse sphere (horizontal flip)."""
    _emit(write_sphere(inverse(_sphere(f_path, _target(complex_path)))), out)


@cli.command("normalize")
@complex_option
@click.argument("f_path", type=click.Path(allow_dash=True))
@out_option
def normalize_cmd(complex_path: Optional[str], f_path: str, out: Optional[str]) -> None:
    """Delete repeated rows and columns down to the canonical representative."""
    _emit(write_sphere(normalize(_sphere(f_path, _target(complex_path)))), out)


@cli.command()
@complex_option
@click.argument("f_path", type=click.Path(allow_dash=True))
@click.argument("g_path", type=click.Path(allow_dash=True))
@click.pass_context
def contig(ctx: click.Context, complex_path: Optional[str], f_path: str, g_path: str) -> None:
    """Whether two spheres of the same size are contiguous."""
    target = _target(complex_path)
    ok = is_contiguous(_sphere(f_path, target), _sphere(g_path, target))
    click.echo("true" if ok else "false")
    ctx.exit(0 if ok else 1)


@cli.command()
@complex_option
@click.argument("f_path", type=click.Path(allow_dash=True))
@click.argument("g_path", type=click.Path(allow_dash=True))
@click.option("--max-states", type=int, default=None)
@click.option("--max-pad", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--strategy", type=click.Choice(STRATEGIES), default=None, help="bfs (shortest certificates) or sized (best-first by area).")
@click.option("--threads", type=int, default=None, help="Worker threads; overrides FACEGROUP_THREADS.")
@out_option
@click.pass_context
def search(
    ctx: click.Context,
    complex_path: Optional[str],
    f_path: str,
    g_path: str,
    max_states: Optional[int],
    max_pad: Optional[int],
    seed: Optional[int],
    strategy: Optional[str],
    threads: Optional[int],
    out: Optional[str],
) -> None:
    """Bounded search for an extension-contiguity certificate from f to g."""
    target = _target(complex_path)
    f, g = _sphere(f_path, target), _sphere(g_path, target)
    budget = SearchBudget.from_config(
        Config, max_states=max_states, max_pad=max_pad, seed=seed, strategy=strategy, workers=threads
    )
    outcome = search_equivalence(f, g, budget)
    if outcome.equivalent:
        click.echo(f"Equivalent ({len(outcome.certificate)} moves, {outcome.states_explored} states)")
        if out:
            _emit(write_certificate(outcome.certificate), out)
        return
    why = "frontier exhausted" if outcome.frontier_exhausted else "budget reached"
    click.echo(f"Unknown ({why}, {outcome.states_explored} states)")
    ctx.exit(1)


@cli.command("degree")
@complex_option
@click.argument("f_path", type=click.Path(allow_dash=True), default="-")
@click.option("--face", default="e1 e2 e3", show_default=True, help="Oriented face, three vertex names.")
@click.option(
    "--orientation", "orientation_path", type=click.Path(exists=True),
    help="Oriented faces, one triple per line; required unless the target is the octahedron.",
)
def degree_cmd(complex_path: Optional[str], f_path: str, face: str, orientation_path: Optional[str]) -> None:
    """Signed count of triangles landing on the oriented face."""
    target = _target(complex_path)
    f = _sphere(f_path, target)
    orientation = None
    if orientation_path:
        X = target.complex
        faces = []
        for line in _read(orientation_path).splitlines():
            names = line.split("#", 1)[0].split()
            if names:
                faces.append([X.vertex(X.lookup(x)) for x in names])
        orientation = check_orientation(X, faces)
    X = target.complex
    click.echo(str(degree(f, [X.vertex(X.lookup(x)) for x in face.split()], orientation)))


@cli.command()
@click.argument("name", type=click.Choice(EXAMPLES))
@out_option
def example(name: str, out: Optional[str]) -> None:
    """Write built-in data: the octahedron (.cx) or the fig3 / fig10 spheres (.fs)."""
    if name == "octahedron":
        X = octahedron()
        _emit(write_complex(X.complex, X.basepoint), out)
    else:
        _emit(write_sphere(example_sphere(name)), out)


@cli.command()
@complex_option
@click.argument("f_path", type=click.Path(allow_dash=True), default="-")
def render(complex_path: Optional[str], f_path: str) -> None:
    """ASCII grid, top row first."""
    click.echo(render_grid(_sphere(f_path, _target(complex_path))), nl=False)


@cli.command()
@complex_option
@click.argument("l1_path", type=click.Path(allow_dash=True))
@click.argument("l2_path", type=click.Path(allow_dash=True))
@click.option("--max-length", type=int, default=None, help="Longest loop visited (edges).")
@click.option("--max-states", type=int, default=None)
@click.pass_context
def loops(
    ctx: click.Context,
    complex_path: Optional[str],
    l1_path: str,
    l2_path: str,
    max_length: Optional[int],
    max_states: Optional[int],
) -> None:
    """Bounded search for a chain of edge-loop moves between two loops."""
    target = _target(complex_path)
    l1, l2 = parse_loop(_read(l1_path), target), parse_loop(_read(l2_path), target)
    budget = SearchBudget.from_config(Config, max_states=max_states, strategy="bfs")
    outcome = loop_search(l1, l2, budget, max_length or Config.LOOP_MAX_LENGTH)
    if outcome.equivalent:
        click.echo(f"Equivalent ({len(outcome.certificate)} moves, {outcome.states_explored} states)")
        return
    why = "frontier exhausted" if outcome.frontier_exhausted else "budget reached"
    click.echo(f"Unknown ({why}, {outcome.states_explored} states)")
    ctx.exit(1)


@cli.group()
def bridge() -> None:
    """Grid maps on the Cartesian triangulation and the D construction."""


@bridge.command("dconstruct")
@complex_option
@click.argument("g_path", type=click.Path(allow_dash=True))
@out_option
def dconstruct(complex_path: Optional[str], g_path: str, out: Optional[str]) -> None:
    """D_g as a face sphere on I_{2m+1} x I_{2n+1}."""
    g = parse_grid_map(_read(g_path), _target(complex_path))
    _emit(write_sphere(bridge_ops.d_construction(g)), out)


@bridge.command("check-digital")
@complex_option
@click.argument("g_path", type=click.Path(allow_dash=True))
@click.pass_context
def check_digital(ctx: click.Context, complex_path: Optional[str], g_path: str) -> None:
    """Whether g o gamma and D_g o E are contiguous."""
    g = parse_grid_map(_read(g_path), _target(complex_path))
    ok = bridge_ops.check_digital_f(g)
    click.echo("true" if ok else "false")
    ctx.exit(0 if ok else 1)


@bridge.command("check-etd")
@complex_option
@click.argument("f_path", type=click.Path(allow_dash=True))
@out_option
def check_etd(complex_path: Optional[str], f_path: str, out: Optional[str]) -> None:
    """Certificate from D_{f o E} back to f."""
    f = _sphere(f_path, _target(complex_path))
    cert = bridge_ops.check_e_then_d(f)
    click.echo(f"Equivalent ({len(cert)} moves, from {cert.start.m}x{cert.start.n})")
    if out:
        _emit(write_certificate(cert), out)


@bridge.command("collapse-chain")
@click.argument("m", type=click.IntRange(min=1))
@click.argument("n", type=click.IntRange(min=1))
@click.argument("k", type=click.IntRange(min=2))
@click.pass_context
def collapse_chain(ctx: click.Context, m: int, n: int, k: int) -> None:
    """E o rho_k against the collapsing extensions, one contiguity at a time."""
    report = bridge_ops.check_collapse_chain(m, n, k)
    if report.ok:
        click.echo(f"ok ({report.steps} steps)")
        return
    click.echo(f"failed at step {report.failed_step} (exact={str(report.exact_equality).lower()})")
    ctx.exit(1)


@bridge.command("restrict")
@complex_option
@click.argument("f_path", type=click.Path(allow_dash=True))
@out_option
def restrict(complex_path: Optional[str], f_path: str, out: Optional[str]) -> None:
    """A sphere read as a grid map (f o E)."""
    f = _sphere(f_path, _target(complex_path))
    _emit(write_grid_map(bridge_ops.restrict(f)), out)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host: str, port: int) -> None:
    """Run the JSON service (use gunicorn wsgi:app in production)."""
    from . import create_app

    create_app().run(host=host, port=port)


def main() -> None:
    cli(prog_name="facegroup")


if __name__ == "__main__":
    main()
