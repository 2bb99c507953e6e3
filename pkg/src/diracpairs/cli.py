"""Command-line front end: spectra, rates, parameter sweeps, peaks, plots.

Config documents are YAML with a fixed nested schema::

    field:
      F_es: 0.2        # field strength in Schwinger units
      L: 38 pm         # half-extent; unit suffix (lu | pm) is mandatory
    nuclei:
      preset: 2        # 0..5 wells, centered, equally spaced
      R: 8 lu          # internuclei distance; unit suffix mandatory
      g: 0.8
      semi_distance: false   # when true, R is half the spacing
    grid:
      dx: 5e-4
    energy:
      nodes: 400
      inset: 1e-3
    sweep:
      axis: R          # R | F | N
      min: 2
      max: 40
      step: 0.5

Lengths are normalized to natural length units before any computation.
Unknown keys are rejected with their dotted path.  Exit codes: 0 success,
1 usage/config error, 2 partial sweep failure, 3 total computational failure.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click
import numba
import numpy as np
import yaml
from scipy.signal import find_peaks

from .physics import (UNITS, FieldConfig, GeometryError, NucleiConfig,
                      check_wells_inside, nuclei_preset)
from .propagator import ResolutionError
from .scattering import (DegenerateMatchError, EnergyGridSpec,
                         KleinDomainError, QuadratureSpec,
                         ResonantQuadratureSpec, SpectrumTable, resonant_rate,
                         spectrum, total_rate)
from .svgplot import polyline_svg

# exit code 2 is reserved for partially-failed sweeps; click's default
# usage-error code is also 2, so bad flags / missing options go to 1
click.UsageError.exit_code = 1


class ConfigError(ValueError):
    def __init__(self, message: str, key_path: str | None = None):
        self.key_path = key_path
        super().__init__(message if key_path is None
                         else f"{key_path}: {message}")


@dataclass(frozen=True)
class SweepSpec:
    axis: str           # "R" | "F" | "N"
    lo: float
    hi: float
    step: float

    @property
    def values(self) -> np.ndarray:
        n = int(np.floor((self.hi - self.lo) / self.step + 1e-9)) + 1
        return self.lo + self.step * np.arange(n)


@dataclass(frozen=True)
class RunConfig:
    field: FieldConfig
    preset: int
    g: float
    r_value: float | None      # user-facing R in l_u (semi or full)
    semi_distance: bool
    dx: float
    energy: EnergyGridSpec
    sweep: SweepSpec | None
    resolve_resonances: bool
    echo: dict

    def spacing_from(self, r_value: float) -> float:
        return r_value * (2.0 if self.semi_distance else 1.0)

    def nuclei_at(self, preset: int, r_value: float | None) -> NucleiConfig:
        spacing = self.spacing_from(r_value) if r_value is not None else 0.0
        if preset >= 2 and r_value is None:
            raise ConfigError("R required for this preset", "nuclei.R")
        nuc = nuclei_preset(preset, spacing if preset >= 2 else 1.0, self.g)
        check_wells_inside(self.field, nuc, margin=0.0)
        return nuc

    @property
    def nuclei(self) -> NucleiConfig:
        return self.nuclei_at(self.preset, self.r_value)


@dataclass(frozen=True)
class SweepResult:
    axis: np.ndarray
    rates: np.ndarray
    flags: tuple[str, ...]


@dataclass(frozen=True)
class PeakEntry:
    axis_value: float
    rate: float
    prominence: float


@dataclass(frozen=True)
class PeakList:
    entries: tuple[PeakEntry, ...]
    prominence_threshold: float


_SCHEMA = {
    "field": ("F_es", "L"),
    "nuclei": ("preset", "R", "g", "semi_distance"),
    "grid": ("dx",),
    "energy": ("nodes", "inset", "resolve_resonances"),
    "sweep": ("axis", "min", "max", "step"),
}
_REQUIRED = ("field.F_es", "field.L", "nuclei.preset")


def _parse_length(value, key_path: str) -> float:
    """Length with mandatory 'lu' or 'pm' suffix, normalized to l_u."""
    if isinstance(value, (int, float)):
        raise ConfigError("length needs a unit suffix ('lu' or 'pm')",
                          key_path)
    text = str(value).strip()
    for suffix, conv in (("lu", float), ("pm", UNITS.pm_to_lu)):
        if text.endswith(suffix):
            body = text[: -len(suffix)].strip()
            try:
                return float(conv(float(body)))
            except ValueError:
                raise ConfigError(f"cannot parse length {text!r}", key_path)
    raise ConfigError(f"unknown length unit in {text!r} "
                      "(expected 'lu' or 'pm')", key_path)


def _number(value, key_path: str) -> float:
    # YAML 1.1 resolves '5e-4' (no dot) as a string, so accept numeric text.
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            raise ConfigError(f"expected a number, got {value!r}", key_path)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", key_path)
    return float(value)


def parse_config(text: str) -> RunConfig:
    """Validate a config document and normalize all units to l_u."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed document: {exc}")
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigError("top level must be a mapping")

    for section, keys in doc.items():
        if section not in _SCHEMA:
            raise ConfigError("unknown key", str(section))
        if not isinstance(keys, dict):
            raise ConfigError("expected a mapping", str(section))
        for key in keys:
            if key not in _SCHEMA[section]:
                raise ConfigError("unknown key", f"{section}.{key}")

    missing = [path for path in _REQUIRED
               if path.split(".")[1] not in doc.get(path.split(".")[0], {})]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")

    fsec = doc["field"]
    nsec = doc["nuclei"]
    f_es = _number(fsec["F_es"], "field.F_es")
    if f_es < 0:
        raise ConfigError("field strength must be >= 0", "field.F_es")
    l_lu = _parse_length(fsec["L"], "field.L")
    if l_lu <= 0:
        raise ConfigError("half-extent must be > 0", "field.L")

    preset = nsec["preset"]
    if not isinstance(preset, int) or isinstance(preset, bool) \
            or not (0 <= preset <= 5):
        raise ConfigError(f"preset must be an integer 0..5, got {preset!r}",
                          "nuclei.preset")
    if preset >= 1 and "g" not in nsec:
        raise ConfigError("missing required keys: nuclei.g", "nuclei.g")
    g = _number(nsec.get("g", 0.0), "nuclei.g")
    if g < 0:
        raise ConfigError("well strength must be >= 0", "nuclei.g")
    semi = nsec.get("semi_distance", False)
    if not isinstance(semi, bool):
        raise ConfigError("expected true/false", "nuclei.semi_distance")

    sweep = None
    if "sweep" in doc:
        ssec = doc["sweep"]
        for key in ("axis", "min", "max", "step"):
            if key not in ssec:
                raise ConfigError(f"missing required keys: sweep.{key}",
                                  f"sweep.{key}")
        axis = str(ssec["axis"])
        if axis not in ("R", "F", "N"):
            raise ConfigError(f"axis must be R, F or N, got {axis!r}",
                              "sweep.axis")
        lo = _number(ssec["min"], "sweep.min")
        hi = _number(ssec["max"], "sweep.max")
        step = _number(ssec["step"], "sweep.step")
        if not (step > 0 and hi >= lo):
            raise ConfigError("need step > 0 and max >= min", "sweep.step")
        sweep = SweepSpec(axis=axis, lo=lo, hi=hi, step=step)

    r_value = None
    if "R" in nsec:
        r_value = _parse_length(nsec["R"], "nuclei.R")
    needs_r = preset >= 2 and not (sweep is not None and sweep.axis == "R")
    if needs_r and r_value is None:
        raise ConfigError("missing required keys: nuclei.R", "nuclei.R")

    gsec = doc.get("grid", {})
    dx = _number(gsec.get("dx", 5e-4), "grid.dx")
    if dx <= 0:
        raise ConfigError("dx must be > 0", "grid.dx")
    esec = doc.get("energy", {})
    nodes = esec.get("nodes", 400)
    if not isinstance(nodes, int) or isinstance(nodes, bool) or nodes < 3:
        raise ConfigError(f"nodes must be an integer >= 3, got {nodes!r}",
                          "energy.nodes")
    inset = _number(esec.get("inset", 1e-3), "energy.inset")
    if inset <= 0:
        raise ConfigError("inset must be > 0", "energy.inset")
    resolve = esec.get("resolve_resonances", False)
    if not isinstance(resolve, bool):
        raise ConfigError("expected true/false", "energy.resolve_resonances")

    field = FieldConfig(F=f_es, L=l_lu)
    cfg = RunConfig(
        field=field, preset=preset, g=g, r_value=r_value,
        semi_distance=semi, dx=dx,
        energy=EnergyGridSpec(nodes=nodes, inset=inset), sweep=sweep,
        resolve_resonances=resolve,
        echo={
            "field": {"F_es": f_es, "L_lu": l_lu},
            "nuclei": {"preset": preset, "R_lu": r_value, "g": g,
                       "semi_distance": semi},
            "grid": {"dx": dx},
            "energy": {"nodes": nodes, "inset": inset,
                       "resolve_resonances": resolve},
            "sweep": None if sweep is None else {
                "axis": sweep.axis, "min": sweep.lo, "max": sweep.hi,
                "step": sweep.step},
        },
    )
    if preset >= 2 and r_value is not None:
        cfg.nuclei_at(preset, r_value)   # geometric validation at parse time
    return cfg


def _quad(cfg: RunConfig) -> QuadratureSpec:
    return QuadratureSpec(base_nodes=cfg.energy.nodes, inset=cfg.energy.inset)


def _rate_result(field: FieldConfig, nuclei: NucleiConfig, cfg: RunConfig):
    if cfg.resolve_resonances:
        rq = ResonantQuadratureSpec(base_nodes=cfg.energy.nodes,
                                    inset=cfg.energy.inset)
        return resonant_rate(field, nuclei, rq, cfg.dx)
    return total_rate(field, nuclei, _quad(cfg), cfg.dx)


def run_spectrum(cfg: RunConfig) -> SpectrumTable:
    return spectrum(cfg.field, cfg.nuclei, cfg.energy, cfg.dx)


def _sweep_point(cfg: RunConfig, axis: str, value: float):
    if axis == "R":
        return cfg.field, cfg.nuclei_at(cfg.preset, value)
    if axis == "F":
        return FieldConfig(F=value, L=cfg.field.L), cfg.nuclei
    n = int(round(value))
    if abs(value - n) > 1e-9:
        raise ConfigError(f"N-axis values must be integers, got {value}",
                          "sweep.axis")
    return cfg.field, cfg.nuclei_at(n, cfg.r_value)


def run_sweep(cfg: RunConfig) -> SweepResult:
    """Independent rate computation per axis point; failures become flags."""
    if cfg.sweep is None:
        raise ConfigError("missing required keys: sweep.axis", "sweep.axis")
    values = cfg.sweep.values
    rates = np.full(values.shape, np.nan)
    flags = []
    for i, v in enumerate(values):
        try:
            field, nuclei = _sweep_point(cfg, cfg.sweep.axis, float(v))
            result = _rate_result(field, nuclei, cfg)
        except (ConfigError, GeometryError, ResolutionError, KleinDomainError,
                DegenerateMatchError, ValueError, ArithmeticError) as exc:
            flags.append(f"error-{type(exc).__name__}")
            continue
        rates[i] = result.rate
        flags.append("ok" if result.converged else "budget")
    return SweepResult(axis=values, rates=rates, flags=tuple(flags))


def detect_peaks(sweep: SweepResult, prominence_threshold: float) -> PeakList:
    """Strict interior maxima with prominence >= threshold * max(rate)."""
    rates = np.asarray(sweep.rates, dtype=np.float64)
    if rates.shape[0] < 3:
        raise ValueError("peak detection needs at least 3 sweep points")
    if not np.isfinite(rates).all():
        raise ValueError("sweep contains failed points; filter them first")
    floor = prominence_threshold * float(rates.max())
    idx, props = find_peaks(rates, prominence=floor)
    entries = tuple(
        PeakEntry(axis_value=float(sweep.axis[i]), rate=float(rates[i]),
                  prominence=float(p))
        for i, p in zip(idx, props["prominences"])
    )
    return PeakList(entries=entries, prominence_threshold=prominence_threshold)


# ---------------------------------------------------------------------------
# serialization


def _g17(v: float) -> str:
    return f"{v:.17g}"


def write_spectrum_csv(path: Path, table: SpectrumTable) -> None:
    lines = ["E_mc2,absA2,dndEdt"]
    for row in table.rows:
        lines.append(f"{_g17(row.energy)},{_g17(row.abs_a2)},"
                     f"{_g17(row.spectrum)}")
    path.write_text("\n".join(lines) + "\n")


def write_sweep_csv(path: Path, result: SweepResult) -> None:
    lines = ["axis,rate,flag"]
    for v, r, fl in zip(result.axis, result.rates, result.flags):
        lines.append(f"{_g17(float(v))},{_g17(float(r))},{fl}")
    path.write_text("\n".join(lines) + "\n")


def write_peaks_csv(path: Path, peaks: PeakList) -> None:
    lines = ["axis,rate,prominence"]
    for p in peaks.entries:
        lines.append(f"{_g17(p.axis_value)},{_g17(p.rate)},"
                     f"{_g17(p.prominence)}")
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, metadata: dict, rows: list[dict]) -> None:
    path.write_text(json.dumps({"metadata": metadata, "rows": rows},
                               indent=2, sort_keys=True) + "\n")


def _emit(out_dir: Path, stem: str, fmt: str, cfg: RunConfig,
          csv_writer, rows_json: list[dict]) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path = out_dir / f"{stem}.json"
        _write_json(path, cfg.echo, rows_json)
    else:
        path = out_dir / f"{stem}.csv"
        csv_writer(path)
    return path


# ---------------------------------------------------------------------------
# click front end


def _load_config(path: str) -> RunConfig:
    return parse_config(Path(path).read_text())


def _set_jobs(jobs: int | None) -> None:
    if jobs is None:
        return
    if jobs < 1:
        raise ConfigError(f"--jobs must be >= 1, got {jobs}")
    cap = numba.config.NUMBA_NUM_THREADS
    effective = min(jobs, cap)
    if effective != jobs:
        click.echo(f"note: --jobs {jobs} clamped to {effective} "
                   "(launch-time thread cap)", err=True)
    numba.set_num_threads(effective)


def _common(func):
    func = click.option("--config", "config_path", required=True,
                        type=click.Path(exists=True, dir_okay=False),
                        help="YAML config document")(func)
    func = click.option("--out", "out_dir", default=".", show_default=True,
                        type=click.Path(file_okay=False),
                        help="output directory")(func)
    func = click.option("--format", "fmt", default="csv", show_default=True,
                        type=click.Choice(["csv", "json"]))(func)
    func = click.option("--svg", is_flag=True, help="also write an SVG plot")(func)
    func = click.option("--jobs", type=int, default=None,
                        help="worker threads for the energy loop")(func)
    func = click.option("--dx", type=float, default=None,
                        help="override grid.dx")(func)
    func = click.option("--energy-nodes", type=int, default=None,
                        help="override energy.nodes")(func)
    return func


def _apply_overrides(cfg: RunConfig, dx: float | None,
                     energy_nodes: int | None,
                     resolve: bool | None = None) -> RunConfig:
    if dx is None and energy_nodes is None and resolve is None:
        return cfg
    new_dx = cfg.dx if dx is None else dx
    if new_dx <= 0:
        raise ConfigError("--dx must be > 0")
    nodes = cfg.energy.nodes if energy_nodes is None else energy_nodes
    if nodes < 3:
        raise ConfigError("--energy-nodes must be >= 3")
    res = cfg.resolve_resonances if resolve is None else resolve
    echo = dict(cfg.echo)
    echo["grid"] = {"dx": new_dx}
    echo["energy"] = {"nodes": nodes, "inset": cfg.energy.inset,
                      "resolve_resonances": res}
    return RunConfig(field=cfg.field, preset=cfg.preset, g=cfg.g,
                     r_value=cfg.r_value, semi_distance=cfg.semi_distance,
                     dx=new_dx,
                     energy=EnergyGridSpec(nodes=nodes, inset=cfg.energy.inset),
                     sweep=cfg.sweep, resolve_resonances=res, echo=echo)


_USAGE_ERRORS = (ConfigError, GeometryError, ResolutionError, OSError,
                 FileNotFoundError)


@click.group()
def main() -> None:
    """Pair-production spectra and rates for delta wells in a finite field."""


@main.command("spectrum")
@_common
def cmd_spectrum(config_path, out_dir, fmt, svg, jobs, dx, energy_nodes):
    """Pair spectrum over the Klein window for one configuration."""
    try:
        cfg = _apply_overrides(_load_config(config_path), dx, energy_nodes)
        _set_jobs(jobs)
    except _USAGE_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    try:
        table = run_spectrum(cfg)
    except Exception as exc:  # noqa: BLE001 - boundary of the process
        click.echo(f"computation failed: {exc}", err=True)
        sys.exit(3)
    if not table.rows:
        click.echo("warning: empty Klein window (need F*L > 1); "
                   "spectrum is empty", err=True)
    rows_json = [{"E_mc2": r.energy, "absA2": r.abs_a2, "dndEdt": r.spectrum}
                 for r in table.rows]
    path = _emit(Path(out_dir), "spectrum", fmt, cfg,
                 lambda p: write_spectrum_csv(p, table), rows_json)
    click.echo(f"wrote {path}")
    if svg and table.rows:
        svg_path = Path(out_dir) / "spectrum.svg"
        svg_path.write_text(polyline_svg(
            [r.energy for r in table.rows],
            [r.spectrum for r in table.rows],
            xlabel="E (mc^2)", ylabel="d<n>/dtdE (1/t_u mc^2)"))
        click.echo(f"wrote {svg_path}")


_RESOLVE_FLAG = click.option(
    "--resolve-resonances", "resolve", is_flag=True, default=None,
    help="locate narrow spectral peaks and integrate each on a "
         "tangent-stretched grid (weak-field regimes)")


@main.command("rate")
@_common
@_RESOLVE_FLAG
def cmd_rate(config_path, out_dir, fmt, svg, jobs, dx, energy_nodes, resolve):
    """Total pair rate for one configuration (single-row sweep output)."""
    try:
        cfg = _apply_overrides(_load_config(config_path), dx, energy_nodes,
                               resolve)
        _set_jobs(jobs)
        nuclei = cfg.nuclei
    except _USAGE_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    try:
        result = _rate_result(cfg.field, nuclei, cfg)
    except Exception as exc:  # noqa: BLE001
        click.echo(f"computation failed: {exc}", err=True)
        sys.exit(3)
    axis = cfg.r_value if cfg.r_value is not None else float(cfg.preset)
    flag = "ok" if result.converged else "budget"
    sweep_like = SweepResult(axis=np.array([axis]),
                             rates=np.array([result.rate]), flags=(flag,))
    rows_json = [{"axis": float(axis), "rate": result.rate, "flag": flag}]
    path = _emit(Path(out_dir), "rate", fmt, cfg,
                 lambda p: write_sweep_csv(p, sweep_like), rows_json)
    click.echo(f"rate = {result.rate:.6e} per t_u  [{flag}]")
    click.echo(f"wrote {path}")


def _sweep_exit_code(result: SweepResult) -> int:
    failed = sum(1 for f in result.flags if f.startswith("error"))
    if failed == len(result.flags) and failed > 0:
        return 3
    if failed > 0:
        return 2
    return 0


@main.command("sweep")
@_common
@_RESOLVE_FLAG
def cmd_sweep(config_path, out_dir, fmt, svg, jobs, dx, energy_nodes, resolve):
    """Rate sweep over R, F or N; per-point failures are flagged, not fatal."""
    try:
        cfg = _apply_overrides(_load_config(config_path), dx, energy_nodes,
                               resolve)
        _set_jobs(jobs)
        if cfg.sweep is None:
            raise ConfigError("missing required keys: sweep.*", "sweep")
    except _USAGE_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    result = run_sweep(cfg)
    rows_json = [{"axis": float(v), "rate": float(r), "flag": fl}
                 for v, r, fl in zip(result.axis, result.rates, result.flags)]
    path = _emit(Path(out_dir), "sweep", fmt, cfg,
                 lambda p: write_sweep_csv(p, result), rows_json)
    click.echo(f"wrote {path}")
    if svg:
        good = np.isfinite(result.rates)
        if good.any():
            svg_path = Path(out_dir) / "sweep.svg"
            svg_path.write_text(polyline_svg(
                result.axis[good], result.rates[good],
                xlabel=f"{cfg.sweep.axis} (l_u)" if cfg.sweep.axis == "R"
                else cfg.sweep.axis,
                ylabel="d<n>/dt (1/t_u)", log_y=True))
            click.echo(f"wrote {svg_path}")
    sys.exit(_sweep_exit_code(result))


@main.command("peaks")
@_common
@_RESOLVE_FLAG
@click.option("--threshold", type=float, default=0.05, show_default=True,
              help="prominence threshold relative to max(rate)")
@click.option("--from-csv", "from_csv", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="analyze an existing sweep CSV instead of recomputing")
def cmd_peaks(config_path, out_dir, fmt, svg, jobs, dx, energy_nodes,
              resolve, threshold, from_csv):
    """Detect prominent interior maxima of a rate sweep."""
    try:
        cfg = _apply_overrides(_load_config(config_path), dx, energy_nodes,
                               resolve)
        _set_jobs(jobs)
    except _USAGE_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    if from_csv is not None:
        axis, rates, flags = _read_sweep_csv(Path(from_csv))
        result = SweepResult(axis=axis, rates=rates, flags=flags)
        exit_code = 0
    else:
        if cfg.sweep is None:
            click.echo("error: sweep section required", err=True)
            sys.exit(1)
        result = run_sweep(cfg)
        exit_code = _sweep_exit_code(result)
    good = np.isfinite(result.rates)
    if good.sum() < 3:
        click.echo("error: fewer than 3 valid sweep points", err=True)
        sys.exit(3)
    filtered = SweepResult(axis=result.axis[good], rates=result.rates[good],
                           flags=tuple(f for f, ok in
                                       zip(result.flags, good) if ok))
    peaks = detect_peaks(filtered, threshold)
    rows_json = [{"axis": p.axis_value, "rate": p.rate,
                  "prominence": p.prominence} for p in peaks.entries]
    meta = dict(cfg.echo)
    meta["peaks"] = {"threshold": threshold, "count": len(peaks.entries)}
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path = out / "peaks.json"
        _write_json(path, meta, rows_json)
    else:
        path = out / "peaks.csv"
        write_peaks_csv(path, peaks)
    click.echo(f"{len(peaks.entries)} peak(s); wrote {path}")
    sys.exit(exit_code)


def _read_sweep_csv(path: Path) -> tuple[np.ndarray, np.ndarray, tuple[str, ...]]:
    lines = path.read_text().strip().splitlines()
    if not lines or lines[0] != "axis,rate,flag":
        raise click.ClickException(f"{path} is not a sweep CSV")
    axis, rates, flags = [], [], []
    for line in lines[1:]:
        a, r, fl = line.split(",")
        axis.append(float(a))
        rates.append(float(r))
        flags.append(fl)
    return np.array(axis), np.array(rates), tuple(flags)


@main.command("plot")
@click.option("--in", "in_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="spectrum or sweep CSV to render")
@click.option("--out", "out_dir", default=".", show_default=True,
              type=click.Path(file_okay=False))
@click.option("--log/--linear", "log_y", default=False, show_default=True)
def cmd_plot(in_path, out_dir, log_y):
    """Render a previously computed CSV as a standalone SVG."""
    path = Path(in_path)
    lines = path.read_text().strip().splitlines()
    if not lines:
        click.echo("error: empty input", err=True)
        sys.exit(1)
    header = lines[0]
    try:
        if header == "E_mc2,absA2,dndEdt":
            data = [line.split(",") for line in lines[1:]]
            x = [float(r[0]) for r in data]
            y = [float(r[2]) for r in data]
            labels = ("E (mc^2)", "d<n>/dtdE (1/t_u mc^2)")
        elif header == "axis,rate,flag":
            x, y = [], []
            for line in lines[1:]:
                a, r, _ = line.split(",")
                if np.isfinite(float(r)):
                    x.append(float(a))
                    y.append(float(r))
            labels = ("axis", "d<n>/dt (1/t_u)")
        else:
            click.echo(f"error: unrecognized CSV header {header!r}", err=True)
            sys.exit(1)
        svg = polyline_svg(x, y, xlabel=labels[0], ylabel=labels[1],
                           log_y=log_y)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    svg_path = out / (path.stem + ".svg")
    svg_path.write_text(svg)
    click.echo(f"wrote {svg_path}")


if __name__ == "__main__":
    main()
