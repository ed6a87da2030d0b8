# CHO Toolkit
# Copyright (C) 2026 RERO.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, version 3 of the License.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program. If not, see <http://www.gnu.org/licenses/>.

"""Batch driver: parameter sweeps written as CSV or JSON tables.

A run is described by a TOML file and/or command line flags::

    system = "cho3d"
    solver = "auto"
    states = "0:0,0:1:1"          # n_r:l[:m] for radial systems, n in 1D
    measures = ["fisher", "shannon"]
    format = "csv"
    out = "fisher.csv"
    tolerance_profile = "paper"

    [parameters]
    omega = 1.0

    [sweep]
    r_c = [0.5, 1.0, 2.0]

Flags override the file. Points are evaluated in parallel, one application
context per worker, and written in sweep order. A failing point is reported
in the ``error`` column; the command fails only when every point fails.
"""

import csv
import io
import itertools
import json
import math
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import click
from flask import Flask, current_app, g
from flask.cli import FlaskGroup, with_appcontext

from .api import solve_states
from .modules.api import ConfinedSystem1D, ConfinedSystemRadial
from .modules.errors import CHOToolkitError
from .modules.measures.api import measure_report
from .modules.measures.virial import virial_check
from .modules.utils import get_config, get_logger, get_worker_count

SYSTEMS = ("scho", "acho", "cho3d", "pisb", "free")
RADIAL_SYSTEMS = ("cho3d", "pisb")
MEASURES = ("shannon", "renyi", "onicescu", "fisher", "complexity", "bounds", "virial")
FORMATS = ("csv", "json")
PROFILES = ("fast", "paper")
BASE_COLUMNS = ("system", "energy", "solver", "error")
# settings reported with every row, next to the grid size and the profile
PROVENANCE_SETTINGS = (
    "CHO_TOOLKIT_ITP_ENERGY_TOLERANCE",
    "CHO_TOOLKIT_KUMMER_TAIL_TOLERANCE",
    "CHO_TOOLKIT_FREE_TAIL_TOLERANCE",
)

MEASURE_COLUMNS = {
    "shannon": ("S_r", "S_p", "S_t"),
    "renyi": ("R_r", "R_p", "R_t"),
    "onicescu": ("E_r", "E_p", "E_t"),
    "fisher": ("I_r", "I_p", "I_t"),
}


def is_radial(system, parameters):
    """Whether the named system is solved radially."""
    return system in RADIAL_SYSTEMS or (system == "free" and int(parameters.get("D", 3)) == 3)


def parse_sweep(text):
    """Parse ``name=v1,v2,...`` into ``(name, [floats])``."""
    name, sep, values = text.partition("=")
    if not sep or not name.strip() or not values.strip():
        raise click.BadParameter(f"expected name=v1,v2,... got {text!r}")
    try:
        return name.strip(), [float(value) for value in values.split(",")]
    except ValueError as err:
        raise click.BadParameter(f"non-numeric sweep value in {text!r}") from err


def parse_states(text, radial):
    """Parse state labels.

    ``"0,1,2"`` gives 1D labels ``(n,)``; radial labels are written
    ``n_r:l`` or ``n_r:l:m``.
    """
    labels = []
    for item in filter(None, (part.strip() for part in str(text).split(","))):
        try:
            numbers = tuple(int(value) for value in item.split(":"))
        except ValueError as err:
            raise click.BadParameter(f"invalid state {item!r}") from err
        if radial:
            if len(numbers) not in (2, 3):
                raise click.BadParameter(f"radial states are n_r:l[:m], got {item!r}")
            numbers = numbers if len(numbers) == 3 else (*numbers, 0)
            if abs(numbers[2]) > numbers[1]:
                raise click.BadParameter(f"|m| must not exceed l in {item!r}")
        elif len(numbers) != 1:
            raise click.BadParameter(f"1D states are single integers, got {item!r}")
        if numbers[0] < 0:
            raise click.BadParameter(f"state indices are non-negative, got {item!r}")
        labels.append(numbers)
    if not labels:
        raise click.BadParameter("no states given")
    return labels


def parse_measures(value):
    """Normalize a list or comma separated string of measures."""
    if isinstance(value, str):
        value = [part.strip() for part in value.split(",")]
    measures = tuple(dict.fromkeys(part for part in (value or ()) if part))
    if "all" in measures:
        return MEASURES
    if unknown := [name for name in measures if name not in MEASURES]:
        raise click.BadParameter(f"unknown measures {', '.join(unknown)}; choose from {', '.join(MEASURES)}")
    return measures


@dataclass
class RunSpec:
    """A batch run: system, solver, sweep, states, measures and output."""

    system: str = "cho3d"
    solver: str = "auto"
    parameters: dict = field(default_factory=dict)
    sweep: dict = field(default_factory=dict)
    states: list = field(default_factory=lambda: [(0, 0, 0)])
    measures: tuple = ()
    out: str = "-"
    fmt: str = "csv"
    profile: str | None = None

    def points(self):
        """Parameter points in sweep order (last sweep varies fastest)."""
        names = list(self.sweep)
        return [
            {**self.parameters, **dict(zip(names, values, strict=True))}
            for values in itertools.product(*(self.sweep[name] for name in names))
        ]


def load_run_spec(
    config_file=None, system=None, solver=None, sweep=(), states=None, measures=None, out=None, fmt=None, profile=None
):
    """Merge the TOML run file with flag overrides.

    :returns: :class:`RunSpec`.
    """
    data = {}
    if config_file:
        with open(config_file, "rb") as fp:
            data = tomllib.load(fp)
    spec_system = system or data.get("system", "cho3d")
    if spec_system not in SYSTEMS:
        raise click.BadParameter(f"unknown system {spec_system!r}")
    parameters = {key: float(value) for key, value in data.get("parameters", {}).items()}
    sweep_values = {key: [float(value) for value in values] for key, values in data.get("sweep", {}).items()}
    sweep_values.update(dict(parse_sweep(item) for item in sweep))
    radial = is_radial(spec_system, parameters)
    raw_states = states or data.get("states") or ("0:0" if radial else "0")
    if isinstance(raw_states, list):
        raw_states = ",".join(str(item) for item in raw_states)
    spec_fmt = fmt or data.get("format", "csv")
    if spec_fmt not in FORMATS:
        raise click.BadParameter(f"unknown format {spec_fmt!r}")
    spec_profile = profile or data.get("tolerance_profile")
    if spec_profile is not None and spec_profile not in PROFILES:
        raise click.BadParameter(f"unknown tolerance profile {spec_profile!r}")
    return RunSpec(
        system=spec_system,
        solver=solver or data.get("solver", "auto"),
        parameters=parameters,
        sweep=sweep_values,
        states=parse_states(raw_states, radial),
        measures=parse_measures(measures if measures is not None else data.get("measures", ())),
        out=out or data.get("out", "-"),
        fmt=spec_fmt,
        profile=spec_profile,
    )


def build_system(name, parameters, l=0):
    """System of a sweep point.

    Recognized parameters: ``omega``, ``x_c``, ``d_m``, ``r_c`` and ``D``
    (1 or 3, for ``free``).
    """
    omega = parameters.get("omega", 1.0)
    if name == "scho":
        return ConfinedSystem1D.symmetric(omega, parameters.get("x_c", 1.0))
    if name == "acho":
        x_c = parameters.get("x_c", 1.0)
        return ConfinedSystem1D(omega=omega, d_m=parameters.get("d_m", 0.0), wall_left=-x_c, wall_right=x_c)
    if name in RADIAL_SYSTEMS:
        return ConfinedSystemRadial(omega=omega, l=l, r_c=parameters.get("r_c", 1.0))
    if is_radial(name, parameters):
        return ConfinedSystemRadial(omega=omega, l=l)
    return ConfinedSystem1D(omega=omega)


@dataclass
class ReportRow:
    """One output row: a state at a sweep point."""

    system: str
    parameters: dict
    labels: tuple
    energy: float | None = None
    values: dict = field(default_factory=dict)
    solver: str | None = None
    provenance: dict = field(default_factory=dict)
    error: str | None = None

    def as_dict(self):
        """Flat column mapping."""
        names = ("n_r", "l", "m") if len(self.labels) == 3 else ("n",)
        return {
            "system": self.system,
            **self.parameters,
            **dict(zip(names, self.labels, strict=True)),
            "energy": self.energy,
            **self.values,
            "solver": self.solver,
            **self.provenance,
            "error": self.error,
        }


def compute_measures(state, system, measures):
    """Requested measure columns of one state."""
    values = {}
    if set(measures) - {"virial"}:
        report = measure_report(state, system, m=state.m)
        for name in measures:
            if name in MEASURE_COLUMNS:
                values.update({column: getattr(report, column) for column in MEASURE_COLUMNS[name]})
        if "complexity" in measures:
            values.update(report.complexities)
        if "bounds" in measures:
            values.update({f"bound_{key}": value for key, value in report.bounds.items()})
            values.update({f"holds_{key}": value for key, value in report.bound_flags.items()})
    if "virial" in measures:
        virial = virial_check(state, system)
        values.update(
            {
                "dT2": virial.kinetic_variance,
                "dV2": virial.potential_variance,
                "TV": virial.cross_tv,
                "VT": virial.cross_vt,
                "virial_stable": virial.stable,
            }
        )
    return values


def _error_tag(err):
    return f"{err.__class__.__name__}: {err}"


def _provenance(state, spec):
    settings = {name.removeprefix("CHO_TOOLKIT_").lower(): get_config(name) for name in PROVENANCE_SETTINGS}
    return {"grid_nodes": len(state.grid), "profile": spec.profile, **settings}


def evaluate_point(spec, point):
    """Solve and measure every state of one sweep point."""
    solver = "pisb" if spec.system == "pisb" and spec.solver == "auto" else spec.solver
    groups = {}
    for labels in spec.states:
        groups.setdefault(labels[1] if len(labels) == 3 else 0, []).append(labels)
    rows = []
    for l, group in groups.items():
        try:
            system = build_system(spec.system, point, l)
            indices = list(dict.fromkeys(labels[0] for labels in group))
            states, solver_name = solve_states(system, indices, solver)
        except (CHOToolkitError, ValueError) as err:
            get_logger().error(f"Point {point} of {spec.system} failed for l={l}: {err!s}")
            rows.extend(ReportRow(spec.system, point, labels, error=_error_tag(err)) for labels in group)
            continue
        solved = dict(zip(indices, states, strict=True))
        for labels in group:
            state = solved[labels[0]]
            if state.is_radial:
                state = state.with_m(labels[2])
            row = ReportRow(
                spec.system,
                point,
                labels,
                energy=state.energy,
                solver=solver_name,
                provenance=_provenance(state, spec),
            )
            try:
                row.values = compute_measures(state, system, spec.measures)
            except (CHOToolkitError, ValueError) as err:
                get_logger().error(f"Measures of {labels} at {point} failed: {err!s}")
                row.error = _error_tag(err)
            rows.append(row)
    return rows


def run_sweep(spec, overrides=None):
    """Evaluate every point of ``spec`` in parallel.

    Must run inside an application context; each worker pushes its own and
    stores ``overrides`` (configuration keys and values) in ``g``, leaving
    the application config untouched.

    :returns: list of :class:`ReportRow` in sweep order.
    """
    app = current_app._get_current_object()
    points = spec.points()

    def task(point):
        with app.app_context():
            g.cho_toolkit_overrides = overrides or {}
            return evaluate_point(spec, point)

    workers = max(1, min(get_worker_count(), len(points)))
    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(task, points))
    return [row for rows in results for row in rows]


def _csv_value(value, digits):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    return value


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def emit_table(rows, out="-", fmt="csv"):
    """Write rows as CSV (LF line endings) or JSON, to a file or stdout.

    An empty run writes the header only.
    """
    records = [row.as_dict() for row in rows]
    if fmt == "json":
        payload = [{key: _json_value(value) for key, value in record.items()} for record in records]
        text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    else:
        digits = get_config("CHO_TOOLKIT_CSV_DIGITS", 12)
        fieldnames = list(dict.fromkeys(key for record in records for key in record)) or list(BASE_COLUMNS)
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=fieldnames, restval="", lineterminator="\n")
        writer.writeheader()
        writer.writerows({key: _csv_value(value, digits) for key, value in record.items()} for record in records)
        text = buffer.getvalue()
    if out == "-":
        click.echo(text, nl=False)
    else:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")


@click.group()
def cho():
    """Confined harmonic oscillator computations."""


@cho.command("run")
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), help="TOML run file.")
@click.option("--system", type=click.Choice(SYSTEMS), help="System to solve.")
@click.option("--solver", help="Solver name or auto.")
@click.option("--sweep", multiple=True, help="Swept parameter, name=v1,v2,...")
@click.option("--states", help="State labels, e.g. 0,1 (1D) or 0:0,0:1:1 (radial).")
@click.option("--measures", help=f"Comma separated subset of {', '.join(MEASURES)} or all.")
@click.option("--out", help="Output file, - for stdout.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), help="Output format.")
@click.option("--tolerance-profile", "profile", type=click.Choice(PROFILES), help="Grid and tolerance preset.")
@with_appcontext
def run(config_file, system, solver, sweep, states, measures, out, fmt, profile):
    """Run a parameter sweep and write the result table."""
    spec = load_run_spec(config_file, system, solver, sweep, states, measures, out, fmt, profile)
    overrides = {}
    if spec.profile:
        overrides = dict(current_app.config["CHO_TOOLKIT_TOLERANCE_PROFILES"][spec.profile])
    rows = run_sweep(spec, overrides)
    emit_table(rows, spec.out, spec.fmt)
    failed = sum(1 for row in rows if row.error)
    if failed:
        get_logger().warning(f"{failed} of {len(rows)} rows failed")
    if rows and failed == len(rows):
        raise click.ClickException("every sweep point failed")


def create_app():
    """Minimal application for the standalone command."""
    from invenio_cache import InvenioCache

    from .ext import CHOToolkit

    app = Flask("cho_toolkit")
    app.config.setdefault("CACHE_TYPE", "SimpleCache")
    InvenioCache(app)
    CHOToolkit(app)
    return app


main = FlaskGroup(create_app=create_app, help="CHO toolkit commands.")
