"""Command line front end: surface grids, the worked example, verification.

``shockcopula surface``   evaluate a bound surface on a unit grid, CSV out
``shockcopula example``   rebuild the exponential reference model, check its
                          closed forms, and write fixture files
``shockcopula verify``    run the named verification suite, JSON report
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path

import click
import numpy as np

from .copulas import joint_maxmin_H, joint_rmm_product, rmm2
from .distfn import DiracStep, Exponential, lifetime_max, lifetime_min
from .genfn import extend_chi, extend_phi, to_rmm
from .imprecise import PBox, ShockModel, build_bounds, rmm_envelope
from .verify import SUITE_NAMES, copula_grid, run_suite

BOUND_CHOICES = ("lower", "upper", "precise", "envelope_inf", "envelope_sup")
DEFAULT_SEED = 20250819
_MAX_GRID_ROWS = 2_000_000


def _fmt(value: float) -> str:
    return repr(float(value))


def write_surface_csv(stream, axes: list[np.ndarray], values: np.ndarray) -> int:
    """Rows in row-major order; floats as shortest round-trip decimals."""
    n = len(axes)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow([f"u{k + 1}" for k in range(n)] + ["value"])
    rows = 0
    for idx in np.ndindex(*values.shape):
        writer.writerow([_fmt(axes[k][idx[k]]) for k in range(n)] + [_fmt(values[idx])])
        rows += 1
    return rows


def read_surface_csv(path) -> tuple[list[str], list[list[float]]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(cell) for cell in row] for row in reader if row]
    return header, rows


@click.group()
@click.version_option(package_name="shockcopula")
def main() -> None:
    """Shock-model copulas with precise or interval-valued inputs."""


@main.command()
@click.option("--config", required=True, type=click.Path(exists=True, dir_okay=False),
              help="JSON shock-model description.")
@click.option("--family", type=click.Choice(["marshall", "maxmin", "rmm"]),
              help="Expected family; rejected if the config disagrees.")
@click.option("--grid", default=101, show_default=True, type=click.IntRange(min=2),
              help="Points per axis on the uniform unit grid.")
@click.option("--bound", default="lower", show_default=True,
              type=click.Choice(BOUND_CHOICES),
              help="lower/upper select the copula built from the lower/upper "
                   "bound generators (for the rmm family those surfaces order "
                   "in reverse); envelope_inf/envelope_sup are the rmm "
                   "pointwise hulls over all generator vertices.")
@click.option("--out", type=click.Path(dir_okay=False, writable=True),
              help="CSV destination (stdout when omitted).")
def surface(config: str, family: str | None, grid: int, bound: str, out: str | None) -> None:
    """Evaluate one bound surface of the model's copula on a unit grid."""
    with open(config) as fh:
        spec = json.load(fh)
    try:
        model = ShockModel.from_spec(spec)
    except (ValueError, KeyError, TypeError) as exc:
        raise click.UsageError(f"bad model config: {exc}")
    if family is not None and family != model.family:
        raise click.UsageError(f"config declares family {model.family!r}, not {family!r}")
    if bound == "precise" and not model.is_precise:
        raise click.UsageError("the model has imprecise marginals; "
                               "choose lower/upper or an envelope bound")
    if bound.startswith("envelope") and model.family != "rmm":
        raise click.UsageError(f"envelope bounds exist only for the rmm family, "
                               f"not {model.family!r}")
    if grid ** model.n > _MAX_GRID_ROWS:
        raise click.UsageError(f"grid^{model.n} = {grid ** model.n} rows; "
                               f"reduce --grid below {int(_MAX_GRID_ROWS ** (1 / model.n)) + 1}")

    bf = build_bounds(model)
    axis = np.linspace(0.0, 1.0, grid)
    axes = [axis] * model.n
    if bound in ("lower", "precise"):
        values = copula_grid(bf.lower_gen, axes)
    elif bound == "upper":
        values = copula_grid(bf.upper_gen, axes)
    else:
        pick = 0 if bound == "envelope_inf" else 1
        values = np.empty([grid] * model.n)
        for idx in np.ndindex(*values.shape):
            values[idx] = rmm_envelope(bf, [float(axis[k]) for k in idx])[pick]

    if out is None:
        buf = io.StringIO()
        write_surface_csv(buf, axes, values)
        click.echo(buf.getvalue(), nl=False)
    else:
        with open(out, "w", newline="") as fh:
            rows = write_surface_csv(fh, axes, values)
        click.echo(f"wrote {out} ({rows} rows, bound={bound}, family={model.family})")


def _rmm_generator_form(threshold: float, u: float) -> float:
    # closed form on (0, 1]; the value at 0 is pinned to 0 separately
    return 0.0 if u == 0.0 else max(threshold - u, 0.0)


def _example_identities(errors: list[dict]) -> dict:
    """Check the exponential reference model; returns the fixture payloads."""
    a = 1.0 - math.exp(-1.0)   # P(shock beats an exponential by time 1)
    b = math.exp(-1.0)

    fx = Exponential(1.0)
    fy = Exponential(1.0)
    fz = DiracStep(1.0)
    fu = lifetime_max(fx, fz)
    fw = lifetime_min(fy, fz)
    phi = extend_phi(fx, fz)
    chi = extend_chi(fy, fz)
    f = to_rmm(phi)
    g = to_rmm(chi)

    def check(name: str, tol: float, witnesses) -> None:
        worst = max(witnesses, key=lambda w: w[1], default=None)
        if worst is not None and worst[1] > tol:
            errors.append({"identity": name, "max_error": worst[1],
                           "tolerance": tol, "witness": worst[0]})

    us = np.linspace(0.0, 1.0, 1000)
    check("phi-closed-form", 1e-12,
          [([float(u)], abs(phi(float(u)) - (0.0 if u == 0.0 else max(float(u), a))))
           for u in us])
    check("chi-closed-form", 1e-12,
          [([float(v)], abs(chi(float(v)) - (1.0 if v == 1.0 else min(float(v), a))))
           for v in us])
    check("f-closed-form", 1e-12,
          [([float(u)], abs(f(float(u)) - _rmm_generator_form(a, float(u)))) for u in us])
    check("g-closed-form", 1e-12,
          [([float(w)], abs(g(float(w)) - _rmm_generator_form(b, float(w)))) for w in us])
    check("f-star-vanishes-at-1", 1e-12, [([1.0], abs(f.star(1.0)))])

    xs = np.linspace(0.0, 3.0, 301)
    check("max-lifetime-closed-form", 1e-12,
          [([float(x)], abs(fu.value(float(x)) -
                            (fx.value(float(x)) if x >= 1.0 else 0.0))) for x in xs])
    check("min-lifetime-closed-form", 1e-12,
          [([float(y)], abs(fw.value(float(y)) -
                            (1.0 if y >= 1.0 else fy.value(float(y))))) for y in xs])

    grid = np.linspace(0.0, 1.0, 101)
    piecewise = []
    for u in grid:
        for w in grid:
            u_, w_ = float(u), float(w)
            want = u_ * w_ if (u_ >= a or w_ >= b) else max(0.0, b * u_ + a * w_ - a * b)
            piecewise.append(([u_, w_], abs(rmm2(f, g, u_, w_) - want)))
    check("copula-three-case-form", 1e-12, piecewise)

    # joint tail product: positive only above the diagonal, and the reflection
    # identity ties the three H routes together
    margins = [fx, fy]
    tail_checks = []
    reflect_checks = []
    for x in np.linspace(0.0, 3.0, 41):
        for y in np.linspace(0.0, 3.0, 41):
            x_, y_ = float(x), float(y)
            hs = joint_rmm_product(margins, fz, [x_, y_], 1)
            want = fx.value(x_) * (1.0 - fy.value(y_)) * max(0.0, fz.value(x_) - fz.value(y_))
            tail_checks.append(([x_, y_], abs(hs - want)))
            h = joint_maxmin_H(margins, fz, [x_, y_], 1)
            reflect_checks.append(([x_, y_], abs(fu.value(x_) - hs - h)))
    check("tail-product-closed-form", 1e-12, tail_checks)
    check("reflection-identity", 1e-12, reflect_checks)

    # interval-rate model for the bound fixtures
    box_model = ShockModel(
        "rmm",
        (PBox(Exponential(1.0), Exponential(2.0)), PBox(Exponential(1.0), Exponential(2.0))),
        fz,
        1,
    )
    bf = build_bounds(box_model)
    f_lo, g_lo = bf.lower_gen.generators
    f_hi, g_hi = bf.upper_gen.generators
    a2 = 1.0 - math.exp(-2.0)
    b2 = math.exp(-2.0)
    check("bound-generators-closed-form", 1e-12,
          [([float(u)],
            max(abs(f_lo(float(u)) - _rmm_generator_form(a, float(u))),
                abs(f_hi(float(u)) - _rmm_generator_form(a2, float(u))),
                abs(g_lo(float(u)) - _rmm_generator_form(b2, float(u))),
                abs(g_hi(float(u)) - _rmm_generator_form(b, float(u)))))
           for u in us])

    lower_vals = np.empty((grid.size, grid.size))
    upper_vals = np.empty((grid.size, grid.size))
    order = []
    for i, u in enumerate(grid):
        for j, w in enumerate(grid):
            u_, w_ = float(u), float(w)
            lower_vals[i, j] = rmm2(f_hi, g_hi, u_, w_)
            upper_vals[i, j] = rmm2(f_lo, g_lo, u_, w_)
            order.append(([u_, w_], max(0.0, lower_vals[i, j] - upper_vals[i, j])))
    check("bound-surfaces-ordered", 1e-12, order)
    spread = float(np.max(upper_vals - lower_vals))
    if spread <= 1e-3:
        errors.append({"identity": "bound-surfaces-strictly-apart", "max_error": spread,
                       "tolerance": "> 1e-3 somewhere", "witness": None})

    env_checks = []
    for u in np.linspace(0.0, 1.0, 21):
        for w in np.linspace(0.0, 1.0, 21):
            u_, w_ = float(u), float(w)
            env_lo, env_hi = rmm_envelope(bf, [u_, w_])
            env_checks.append(([u_, w_],
                               max(abs(env_lo - rmm2(f_hi, g_hi, u_, w_)),
                                   abs(env_hi - rmm2(f_lo, g_lo, u_, w_)))))
    check("bivariate-envelope-is-bound-pair", 1e-12, env_checks)

    return {
        "distributions.csv": ("x,F_X,F_Y,F_Z,F_U,F_W",
                              [[float(x), fx.value(float(x)), fy.value(float(x)),
                                fz.value(float(x)), fu.value(float(x)),
                                fw.value(float(x))] for x in xs]),
        "generators.csv": ("u,phi,chi,f,g",
                           [[float(u), phi(float(u)), chi(float(u)), f(float(u)),
                             g(float(u))] for u in us]),
        "copula_precise.csv": ("u1,u2,value",
                               [[float(u), float(w), rmm2(f, g, float(u), float(w))]
                                for u in grid for w in grid]),
        "bound_generators.csv": ("u,f_lower,f_upper,g_lower,g_upper",
                                 [[float(u), f_lo(float(u)), f_hi(float(u)),
                                   g_lo(float(u)), g_hi(float(u))] for u in us]),
        "figure1_lower.csv": ("u1,u2,value",
                              [[float(grid[i]), float(grid[j]), float(lower_vals[i, j])]
                               for i in range(grid.size) for j in range(grid.size)]),
        "figure1_upper.csv": ("u1,u2,value",
                              [[float(grid[i]), float(grid[j]), float(upper_vals[i, j])]
                               for i in range(grid.size) for j in range(grid.size)]),
    }


@main.command()
@click.option("--out", default="example_fixtures", show_default=True,
              type=click.Path(file_okay=False), help="Fixture directory.")
def example(out: str) -> None:
    """Rebuild the exponential reference model and write its fixtures.

    Exits nonzero with a JSON diff if any closed-form identity is violated.
    """
    errors: list[dict] = []
    fixtures = _example_identities(errors)
    if errors:
        click.echo(json.dumps({"status": "mismatch", "errors": errors}, indent=2))
        sys.exit(1)
    directory = Path(out)
    directory.mkdir(parents=True, exist_ok=True)
    for name, (header, rows) in fixtures.items():
        with open(directory / name, "w", newline="") as fh:
            fh.write(header + "\n")
            writer = csv.writer(fh, lineterminator="\n")
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
    click.echo(f"all identities hold; wrote {len(fixtures)} fixtures to {directory}")


@main.command()
@click.option("--suite", default="all", show_default=True, type=click.Choice(SUITE_NAMES))
@click.option("--seed", default=DEFAULT_SEED, show_default=True, type=int)
@click.option("--out", type=click.Path(dir_okay=False, writable=True),
              help="JSON report destination (stdout summary either way).")
def verify(suite: str, seed: int, out: str | None) -> None:
    """Run a verification suite; exit nonzero if any check fails."""
    report = run_suite(suite, seed)

    def summarize(block: dict) -> None:
        for check in block.get("checks", []):
            status = "PASS" if check["passed"] else "FAIL"
            extra = ""
            total = check["diagnostics"].get("failures_total")
            if total:
                extra = f", failures={total}"
            click.echo(f"  {status} {check['check']} (instances={check['instances']}{extra})")

    if suite == "all":
        for part in report["suites"]:
            click.echo(f"suite {part['suite']}: {'PASS' if part['passed'] else 'FAIL'}")
            summarize(part)
    else:
        click.echo(f"suite {report['suite']}: {'PASS' if report['passed'] else 'FAIL'}")
        summarize(report)

    if out is not None:
        with open(out, "w") as fh:
            json.dump(report, fh, indent=2)
        click.echo(f"report written to {out}")
    if not report["passed"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
