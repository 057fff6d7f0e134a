"""Experiment runner: configs, presets, single solves, sweeps and oracle cross-checks."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import logging
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import mpmath as mp
import numpy as np

from .capacity import find_threshold_algorithm1, find_threshold_enumeration
from .channel import (
    LinkBudget,
    PowerAllocation,
    UcaLinkGeometry,
    approx_mode_gains,
    build_channel_matrix,
    demux_receive,
    effective_orders,
    exact_mode_gains,
    idft_matrix,
    mode_eigenvalues,
    mux_transmit,
)
from .optimizer import (
    DEFAULT_GRID,
    DesignSolution,
    RadiusConstraint,
    baseline_capacity,
    capacity_derivative,
    evaluate_design,
    radius_capacity,
    solve_joint,
    solve_radius,
)

log = logging.getLogger(__name__)

SWEEP_VARIABLES = ("distance", "snr_db", "n_elements")
CSV_COLUMNS = (
    "sweep_var",
    "sweep_value",
    "r_r_opt_m",
    "threshold",
    "modes_selected",
    "capacity_bps",
    "baseline_capacity_bps",
    "kkt_case",
)
SIG_DIGITS = 12
PRESET_ELEMENT_COUNTS = (4, 8, 16)
WAVELENGTH = 0.1
BETA = 1.0
BANDWIDTH_HZ = 2.0e7


class ConfigError(ValueError):
    """Invalid experiment configuration; the message names the offending field."""


class SweepError(RuntimeError):
    """A module invariant failed at one sweep point."""


@dataclass(frozen=True)
class ExperimentConfig:
    n_elements: int = 8
    r_t: float = 0.5
    d: float = 20.0
    snr_db: float = 10.0
    r_r: Optional[float] = None
    alpha: float = 0.0
    wavelength: float = WAVELENGTH
    beta: float = BETA
    bandwidth_hz: float = BANDWIDTH_HZ
    noise_variance: float = 1.0
    r_min: float = 0.05
    r_max: float = 3.0
    sweep_variable: Optional[str] = None
    sweep_values: tuple = ()
    solver: str = "enumeration"
    refine: bool = False
    seed: int = 0
    output_path: Optional[str] = None
    n_grid: int = DEFAULT_GRID
    notes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "sweep_values", tuple(self.sweep_values))
        object.__setattr__(self, "notes", tuple(self.notes))
        _validate(self)

    @property
    def geometry(self) -> UcaLinkGeometry:
        r_r = self.r_r if self.r_r is not None else self.r_t
        return UcaLinkGeometry(self.n_elements, self.r_t, r_r, self.d, self.alpha, self.wavelength)

    @property
    def budget(self) -> LinkBudget:
        return LinkBudget.from_snr_db(self.snr_db, self.beta, self.bandwidth_hz, self.noise_variance)

    @property
    def constraint(self) -> RadiusConstraint:
        return RadiusConstraint(self.r_min, self.r_max)

    def at(self, variable: str, value) -> "ExperimentConfig":
        """Copy of this config with one sweep variable set."""
        key = {"distance": "d", "snr_db": "snr_db", "n_elements": "n_elements"}[variable]
        if key == "n_elements":
            value = int(value)
        return dataclasses.replace(self, **{key: value})

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out["sweep_values"] = list(self.sweep_values)
        out["notes"] = list(self.notes)
        return out


def _validate(cfg):
    def need(cond, name, msg):
        if not cond:
            raise ConfigError(f"{name}: {msg}")

    need(isinstance(cfg.n_elements, (int, np.integer)) and cfg.n_elements >= 1, "n_elements", "must be an integer >= 1")
    for name in ("r_t", "d", "wavelength", "beta", "bandwidth_hz", "noise_variance", "r_min", "r_max"):
        val = getattr(cfg, name)
        need(isinstance(val, (int, float)) and math.isfinite(val) and val > 0, name, f"must be a finite number > 0, got {val!r}")
    need(isinstance(cfg.snr_db, (int, float)) and math.isfinite(cfg.snr_db), "snr_db", "must be finite")
    need(cfg.r_r is None or (isinstance(cfg.r_r, (int, float)) and cfg.r_r > 0), "r_r", "must be > 0 or null")
    need(cfg.r_min < cfg.r_max, "r_min", f"must be < r_max ({cfg.r_min!r} >= {cfg.r_max!r})")
    need(cfg.solver in ("enumeration", "algorithm1"), "solver", f"must be 'enumeration' or 'algorithm1', got {cfg.solver!r}")
    need(isinstance(cfg.n_grid, int) and cfg.n_grid >= 2, "n_grid", "must be an integer >= 2")
    if cfg.sweep_variable is not None:
        need(cfg.sweep_variable in SWEEP_VARIABLES, "sweep.variable", f"must be one of {SWEEP_VARIABLES}")
        vals = cfg.sweep_values
        need(len(vals) > 0, "sweep.values", "must be non-empty")
        need(all(isinstance(v, (int, float)) and math.isfinite(v) for v in vals), "sweep.values", "must be finite numbers")
        need(all(a < b for a, b in zip(vals, vals[1:])), "sweep.values", "must be strictly increasing")
        if cfg.sweep_variable == "n_elements":
            need(all(float(v).is_integer() and v >= 1 for v in vals), "sweep.values", "n_elements values must be integers >= 1")
        if cfg.sweep_variable == "distance":
            need(all(v > 0 for v in vals), "sweep.values", "distances must be > 0")


_SECTIONS = {
    "geometry": ("n_elements", "r_t", "r_r", "d", "alpha", "wavelength"),
    "budget": ("beta", "bandwidth_hz", "noise_variance", "snr_db", "total_power"),
    "constraint": ("r_min", "r_max"),
}
_TOP = ("solver", "refine", "seed", "output_path", "n_grid", "notes")


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a config from the nested JSON layout (``geometry``/``budget``/``constraint``/``sweep``)."""
    if not isinstance(data, dict):
        raise ConfigError("<root>: expected a JSON object")
    kw = {}
    for section, keys in _SECTIONS.items():
        sub = data.get(section, {})
        if not isinstance(sub, dict):
            raise ConfigError(f"{section}: expected an object")
        for k in sub:
            if k not in keys:
                raise ConfigError(f"{section}.{k}: unknown field")
        for k in keys:
            if k in sub:
                kw[k] = sub[k]
    if "total_power" in kw:
        if "snr_db" in kw:
            raise ConfigError("budget.total_power: give either snr_db or total_power, not both")
        tp = kw.pop("total_power")
        if not (isinstance(tp, (int, float)) and tp > 0):
            raise ConfigError("budget.total_power: must be > 0")
        kw["snr_db"] = 10.0 * math.log10(tp / kw.get("noise_variance", 1.0))
    sweep = data.get("sweep")
    if sweep is not None:
        if not isinstance(sweep, dict) or "variable" not in sweep or "values" not in sweep:
            raise ConfigError("sweep: expected an object with 'variable' and 'values'")
        kw["sweep_variable"] = sweep["variable"]
        if not isinstance(sweep["values"], list):
            raise ConfigError("sweep.values: expected a list")
        kw["sweep_values"] = tuple(sweep["values"])
    for k in data:
        if k not in _SECTIONS and k != "sweep" and k not in _TOP:
            raise ConfigError(f"{k}: unknown field")
    for k in _TOP:
        if k in data:
            kw[k] = data[k]
    if "solver" in kw:
        kw["solver"] = _SOLVER_ALIASES.get(kw["solver"], kw["solver"])
    try:
        return ExperimentConfig(**kw)
    except TypeError as exc:  # pragma: no cover - guarded by the key checks above
        raise ConfigError(str(exc)) from exc


def load_config(path) -> ExperimentConfig:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return config_from_dict(data)


_SOLVER_ALIASES = {"enum": "enumeration", "alg1": "algorithm1"}


# -- presets ------------------------------------------------------------------

_PRESETS = {
    "fig2": dict(
        r_t=0.5 * WAVELENGTH,
        d=10.0,
        snr_db=60.0,
        sweep_variable="distance",
        sweep_values=tuple(float(d) for d in range(2, 32, 2)),
        notes=(
            "r_t = 0.5 lambda = 0.05 m as stated for the radius figure",
            "SNR not stated for this figure; 60 dB assumed so several modes are usable",
            "radius window [0.05, 3.0] m and element counts 4/8/16 assumed",
        ),
    ),
    "fig3": dict(
        r_t=10 * WAVELENGTH,
        d=20.0,
        snr_db=10.0,
        sweep_variable="snr_db",
        sweep_values=tuple(float(s) for s in range(0, 65, 5)),
        notes=(
            "r_t = 10 lambda = 1.0 m, d = 20 m as stated",
            "SNR read as total_power / noise_variance with noise_variance = 1",
            "radius window [0.05, 3.0] m and element counts 4/8/16 assumed",
        ),
    ),
    "fig4": dict(
        r_t=5 * WAVELENGTH,
        d=20.0,
        snr_db=10.0,
        sweep_variable="distance",
        sweep_values=tuple(float(d) for d in range(5, 55, 5)),
        notes=(
            "r_t = 5 lambda = 0.5 m, P = 10 dB read as total_power / noise_variance",
            "distance grid 5..50 m, radius window [0.05, 3.0] m and element counts 4/8/16 assumed",
        ),
    ),
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset(name: str, n_elements: int = 8, **overrides) -> ExperimentConfig:
    """Configuration behind one of the published figures (``fig2``, ``fig3``, ``fig4``)."""
    if name not in _PRESETS:
        raise ConfigError(f"preset: unknown preset {name!r}; choose from {PRESET_NAMES}")
    kw = dict(_PRESETS[name], n_elements=n_elements)
    kw.update(overrides)
    return ExperimentConfig(**kw)


# -- single solve -------------------------------------------------------------


def solution_to_dict(sol: DesignSolution) -> dict:
    return {
        "r_r_opt": sol.r_r_opt,
        "threshold_opt": sol.threshold_opt,
        "selection_mask": list(sol.selection.mask),
        "modes_selected": sol.selection.count,
        "selected_orders": [int(effective_orders(len(sol.selection.mask))[i]) for i in sol.selection.indices],
        "capacity_bps": sol.capacity_bps,
        "kkt_case": sol.kkt_case,
        "stationary_points": [list(pt) for pt in sol.stationary_points],
        "solver": sol.solver,
        "refine_rounds": sol.refine_rounds,
        "threshold_iterations": sol.threshold_iterations,
    }


def solve_config(cfg: ExperimentConfig) -> DesignSolution:
    return solve_joint(cfg.geometry, cfg.budget, cfg.constraint, cfg.solver, cfg.refine, cfg.n_grid)


def run_single(cfg: ExperimentConfig, output_path=None):
    """Solve one configuration; write a JSON report if a path is given.

    Returns ``(solution, report_dict)``.
    """
    sol = solve_config(cfg)
    report = {
        "config": cfg.to_dict(),
        "solution": solution_to_dict(sol),
        "baseline_capacity_bps": baseline_capacity(cfg.geometry, cfg.budget, cfg.constraint),
    }
    path = output_path or cfg.output_path
    if path:
        write_text(path, json.dumps(report, indent=2, sort_keys=True) + "\n")
    return sol, report


def verify_report(report) -> float:
    """Recompute the stored capacity from a report (dict or path); return the relative error."""
    if not isinstance(report, dict):
        report = json.loads(Path(report).read_text())
    cfg_dict = dict(report["config"])
    cfg_dict["sweep_values"] = tuple(cfg_dict["sweep_values"])
    cfg = ExperimentConfig(**cfg_dict)
    sol = report["solution"]
    rep = evaluate_design(cfg.geometry, cfg.budget, sol["r_r_opt"], sol["threshold_opt"])
    if list(rep.selection.mask) != sol["selection_mask"]:
        raise ValueError("stored selection does not match the threshold rule")
    stored = sol["capacity_bps"]
    return abs(rep.total_bps - stored) / max(abs(stored), 1e-300)


def write_text(path, text):
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


# -- sweeps -------------------------------------------------------------------


def _sig(x: float) -> float:
    return float(f"{x:.{SIG_DIGITS}g}")


@dataclass(frozen=True)
class SweepRow:
    sweep_var: str
    sweep_value: float
    r_r_opt_m: float
    threshold: float
    modes_selected: int
    capacity_bps: float
    baseline_capacity_bps: float
    kkt_case: str

    @classmethod
    def rounded(cls, sweep_var, sweep_value, r_r, threshold, modes, cap, base, case):
        # Stored at CSV precision so a written file parses back to identical rows.
        return cls(sweep_var, _sig(sweep_value), _sig(r_r), _sig(threshold), int(modes), _sig(cap), _sig(base), case)

    def fields(self) -> list:
        g = f"{{:.{SIG_DIGITS}g}}"
        return [
            self.sweep_var,
            g.format(self.sweep_value),
            g.format(self.r_r_opt_m),
            g.format(self.threshold),
            str(self.modes_selected),
            g.format(self.capacity_bps),
            g.format(self.baseline_capacity_bps),
            self.kkt_case,
        ]


def run_sweep(cfg: ExperimentConfig, output_path=None) -> list:
    """One optimised design per sweep value, in input order; optionally written as CSV."""
    if cfg.sweep_variable is None:
        raise ConfigError("sweep: configuration has no sweep")
    rows = []
    for value in cfg.sweep_values:
        point = cfg.at(cfg.sweep_variable, value)
        try:
            sol = solve_config(point)
            base = baseline_capacity(point.geometry, point.budget, point.constraint)
            if sol.capacity_bps < base - 1e-9:
                raise SweepError(f"optimised capacity {sol.capacity_bps!r} below baseline {base!r}")
            if not (point.r_min <= sol.r_r_opt <= point.r_max):
                raise SweepError(f"radius {sol.r_r_opt!r} outside the window")
        except (SweepError, ValueError, ArithmeticError) as exc:
            raise SweepError(f"sweep {cfg.sweep_variable}={value!r}: {exc}") from exc
        rows.append(
            SweepRow.rounded(
                cfg.sweep_variable,
                value,
                sol.r_r_opt,
                sol.threshold_opt,
                sol.selection.count,
                sol.capacity_bps,
                base,
                sol.kkt_case,
            )
        )
    path = output_path or cfg.output_path
    if path:
        write_sweep_csv(path, rows)
    return rows


def write_sweep_csv(path, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow(row.fields())
    write_text(path, buf.getvalue())


def read_sweep_csv(path) -> list:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {header!r}")
        return [
            SweepRow(r[0], float(r[1]), float(r[2]), float(r[3]), int(r[4]), float(r[5]), float(r[6]), r[7])
            for r in reader
        ]


# -- oracle cross-checks ------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    trials: int
    detail: str = ""

    def __post_init__(self):
        # Plain Python scalars so reports serialise as JSON.
        self.passed = bool(self.passed)
        self.worst = float(self.worst)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"{status}  {self.name:<22} worst={self.worst:.3e}  tol={self.tolerance:.1e}  trials={self.trials}{extra}"


@dataclass
class CheckReport:
    suites: list = field(default_factory=list)
    seed: int = 0
    trials: int = 0

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def lines(self) -> list:
        return [s.line() for s in self.suites]


def _random_geometry(rng, n=None, far=False):
    n = int(n if n is not None else rng.choice([2, 4, 8, 16, 32]))
    r_t = float(rng.uniform(0.05, 1.5))
    r_r = float(rng.uniform(0.05, 1.5))
    d = float(rng.uniform(5.0, 60.0))
    if far:
        d = max(d, 20.0 * max(r_t, r_r))
    return UcaLinkGeometry(n, r_t, r_r, d, 0.0, WAVELENGTH)


def _suite_circulant(rng, trials):
    worst = 0.0
    for _ in range(trials):
        g = _random_geometry(rng)
        h = build_channel_matrix(g, LinkBudget()).entries
        w = idft_matrix(g.n_elements)
        diag = w.conj().T @ h @ w
        off = diag - np.diag(np.diag(diag))
        worst = max(worst, np.linalg.norm(off) / np.linalg.norm(diag))
    return SuiteResult("circulant_diagonal", worst <= 1e-10, worst, 1e-10, trials)


def _suite_svd(rng, trials, corrupt):
    worst = 0.0
    for t in range(trials):
        g = _random_geometry(rng)
        h = build_channel_matrix(g, LinkBudget())
        gains = np.sort(exact_mode_gains(h).gains)
        if corrupt and t == 0:
            gains = gains.copy()
            gains[-1] *= 1.5
        sv = np.sort(np.linalg.svd(h.entries, compute_uv=False))
        worst = max(worst, float(np.max(np.abs(gains - sv)) / sv.max()))
    return SuiteResult("svd_vs_dft", worst <= 1e-9, worst, 1e-9, trials, "corrupted gain injected" if corrupt else "")


def approximation_error(g: UcaLinkGeometry, max_order: int = 3) -> float:
    """Worst relative gap between Bessel-form and exact gains over ``|l_eff| <= max_order``."""
    b = LinkBudget()
    exact = exact_mode_gains(build_channel_matrix(g, b)).gains
    approx = approx_mode_gains(g, b).gains
    keep = np.abs(effective_orders(g.n_elements)) <= max_order
    return float(np.max(np.abs(approx[keep] - exact[keep]) / exact[keep]))


def approximation_error_scaled(g: UcaLinkGeometry) -> float:
    """Worst gap between Bessel-form and exact gains, relative to the largest exact gain."""
    b = LinkBudget()
    exact = exact_mode_gains(build_channel_matrix(g, b)).gains
    approx = approx_mode_gains(g, b).gains
    return float(np.max(np.abs(approx - exact)) / exact.max())


def _suite_bessel_approx(rng, trials):
    # Per-mode relative error on the reference link; random far-field links are
    # scored against the strongest mode since individual modes may sit on a Bessel zero.
    ref = dict(r_t=0.5, r_r=0.5, d=20.0, wavelength=WAVELENGTH)
    err16 = approximation_error(UcaLinkGeometry(16, **ref))
    err256 = approximation_error(UcaLinkGeometry(256, **ref))
    worst = err256
    for _ in range(trials):
        worst = max(worst, approximation_error_scaled(_random_geometry(rng, n=256, far=True)))
    detail = f"reference |l|<=3: N=16 err={err16:.6e}, N=256 err={err256:.6e}"
    return SuiteResult("bessel_vs_dft", worst <= 0.05, worst, 0.05, trials, detail)


def capacity_mp(g: UcaLinkGeometry, b: LinkBudget, p: PowerAllocation, r_r, dps: int = 30):
    """Independent extended-precision Bessel-form capacity at radius ``r_r`` (mpmath)."""
    with mp.workdps(dps):
        r = mp.mpf(r_r)
        u = 2 * mp.pi * g.r_t * r / (mp.mpf(g.wavelength) * mp.sqrt(mp.mpf(g.d) ** 2 + mp.mpf(g.r_t) ** 2 + r**2))
        k = (mp.mpf(b.beta) * g.wavelength * g.n_elements / (4 * mp.pi * g.d)) ** 2 * mp.mpf(b.total_power) / b.noise_variance
        total = mp.mpf(0)
        for l, pl in zip(effective_orders(g.n_elements), p.factors):
            total += mp.log(1 + k * mp.mpf(float(pl)) ** 2 * mp.besselj(int(l), u) ** 2)
        return total * b.bandwidth_hz / mp.log(2)


def finite_difference_slope(g, b, p, r, rel_step=1e-6, dps=30):
    """Central difference of :func:`capacity_mp` with step ``rel_step * r``.

    Carried out at ``dps`` digits so cancellation in the difference does not
    swamp slopes that are small next to the capacity itself.
    """
    with mp.workdps(dps):
        r = mp.mpf(r)
        h = rel_step * r
        return float((capacity_mp(g, b, p, r + h, dps) - capacity_mp(g, b, p, r - h, dps)) / (2 * h))


def gradient_points(rng, count, snr_db=20.0, exclusion=1e-3):
    """Random ``(g, b, p)`` with ``g.r_r`` at least ``exclusion`` metres from any stationary point.

    N in {2, 4, 8, 16}; r_t in [0.05, 1] m; r_r in [0.05, 3] m; d in [5, 50] m.
    """
    out = []
    while len(out) < count:
        n = int(rng.choice([2, 4, 8, 16]))
        r_t = float(rng.uniform(0.05, 1.0))
        r = float(rng.uniform(0.05, 3.0))
        d = float(rng.uniform(5.0, 50.0))
        g = UcaLinkGeometry(n, r_t, r, d, 0.0, WAVELENGTH)
        b = LinkBudget.from_snr_db(snr_db)
        p = PowerAllocation.uniform(n)
        c = RadiusConstraint(max(0.01, r - 0.05), r + 0.05)
        stat = [pt[0] for pt in solve_radius(g, b, p, c, 200).stationary_points[1:-1]]
        if all(abs(r - s) >= exclusion for s in stat):
            out.append((g, b, p))
    return out


def gradient_error(g, b, p) -> float:
    a = capacity_derivative(g, b, p)
    f = finite_difference_slope(g, b, p, g.r_r)
    return abs(a - f) / max(abs(a), 1e-12)


def _suite_gradient(rng, trials):
    worst = max(gradient_error(*pt) for pt in gradient_points(rng, trials))
    return SuiteResult("gradient_fd", worst <= 1e-6, worst, 1e-6, trials)


def _random_gains(rng):
    n = int(rng.choice([2, 4, 8, 16, 32]))
    g = _random_geometry(rng, n=n)
    return approx_mode_gains(g, LinkBudget()), LinkBudget.from_snr_db(float(rng.uniform(0, 120)))


def _suite_threshold(rng, trials):
    worst = 0.0
    ok = True
    for _ in range(trials):
        gains, b = _random_gains(rng)
        e = find_threshold_enumeration(gains, b)
        a = find_threshold_algorithm1(gains, b)
        ok &= a.converged
        gap = (a.report.total_bps - e.report.total_bps) / max(e.report.total_bps, 1e-300)
        worst = max(worst, gap)
    return SuiteResult("enumeration_vs_alg1", ok and worst <= 1e-12, worst, 1e-12, trials, "alg1 capacity excess over enumeration")


def _suite_pipeline(rng, trials):
    worst = 0.0
    for t in range(trials):
        n = (4, 8, 16)[t % 3]
        # Short, wide links keep every mode eigenvalue well away from zero.
        r = float(rng.uniform(1.0, 1.5))
        g = UcaLinkGeometry(n, r, r, float(rng.uniform(2.0, 5.0)), 0.0, WAVELENGTH)
        h = build_channel_matrix(g, LinkBudget())
        s = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        p = PowerAllocation.uniform(n)
        y = h.entries @ mux_transmit(s, p)
        est = demux_receive(y) / (mode_eigenvalues(h) * p.factors)
        worst = max(worst, float(np.max(np.abs(est - s))))
    return SuiteResult("pipeline_loopback", worst < 1e-10, worst, 1e-10, trials)


def run_crosschecks(seed: int = 0, trials: int = 50, corrupt_gain: bool = False) -> CheckReport:
    """Run every oracle suite on ``trials`` randomised instances."""
    if trials < 1:
        raise ConfigError("trials: must be >= 1")
    report = CheckReport(seed=seed, trials=trials)
    suites = [
        ("circulant", lambda r: _suite_circulant(r, trials)),
        ("svd", lambda r: _suite_svd(r, trials, corrupt_gain)),
        ("bessel", lambda r: _suite_bessel_approx(r, trials)),
        ("gradient", lambda r: _suite_gradient(r, trials)),
        ("threshold", lambda r: _suite_threshold(r, trials)),
        ("pipeline", lambda r: _suite_pipeline(r, trials)),
    ]
    for i, (_, run) in enumerate(suites):
        t0 = time.perf_counter()
        res = run(np.random.default_rng([seed, i]))
        log.info("%s (%.2fs)", res.line(), time.perf_counter() - t0)
        report.suites.append(res)
    return report
