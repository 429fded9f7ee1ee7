"""Parameter sweeps over lambda or kappa, written as CSV.

Each grid point is an independent pure evaluation, so points may be farmed
out to worker processes; rows are always emitted in grid order and every
number is written as its shortest round-trip decimal, so the bytes do not
depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from importlib import resources

import numpy as np

from .cascade import DEFAULT_N, GateConfig, converged_n, tau_closed_form, tau_matrix_oracle
from .distillation import (
    DistillationSpec,
    distilled_cz_success,
    optimize_distilled_cz,
    single_photon_distill,
    two_photon_distill,
)
from .errors import DegenerateClosedFormError, DomainError, InvalidSpecError
from .fusion import fusion_success, optimize_fusion
from .metrics import EQUAL_SUPERPOSITION, cz_target, heralded_fidelity, lossy_cz_output, lossy_gate_report
from .optimize import optimize_free_standing

__all__ = [
    "SCENARIOS",
    "SweepSpec",
    "evaluate_point",
    "grid_values",
    "run_sweep",
    "load_presets",
    "preset_spec",
    "worker_count",
]

log = logging.getLogger(__name__)

SCENARIOS = ("free_standing", "distilled_cz", "fusion_offline", "tau_curve")
AXES = ("lambda", "kappa")
SCALES = ("linear", "log10")

WORKERS_ENV = "ZENO_WORKERS"

_RESULT_COLUMNS = {
    "free_standing": ("tau", "f_heralded", "p_success", "f_unheralded"),
    "distilled_cz": ("tau", "p_success"),
    "fusion_offline": ("tau", "p_success"),
    "tau_curve": ("tau_closed", "tau_oracle"),
}


@dataclass(frozen=True)
class SweepSpec:
    scenario: str
    axis: str
    lo: float
    hi: float
    points: int
    scale: str = "linear"
    fixed: dict = field(default_factory=dict)
    n: int = DEFAULT_N
    output_path: str | None = None

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise InvalidSpecError(f"unknown scenario {self.scenario!r}; choose from {SCENARIOS}")
        if self.axis not in AXES:
            raise InvalidSpecError(f"unknown axis {self.axis!r}; choose from {AXES}")
        if self.scale not in SCALES:
            raise InvalidSpecError(f"unknown scale {self.scale!r}; choose from {SCALES}")
        if not self.lo < self.hi:
            raise InvalidSpecError(f"range needs lo < hi, got {self.lo}, {self.hi}")
        if int(self.points) != self.points or self.points < 2:
            raise InvalidSpecError(f"points must be an integer >= 2, got {self.points}")
        if self.scale == "log10" and not self.lo > 0:
            raise InvalidSpecError("log10 scale needs lo > 0")
        if int(self.n) != self.n or self.n < 3:
            raise InvalidSpecError(f"n must be an integer >= 3, got {self.n}")
        unknown = set(self.fixed) - {"lambda", "kappa", "k", "sign"}
        if unknown:
            raise InvalidSpecError(f"unknown fixed parameters {sorted(unknown)}")
        if self.axis in self.fixed:
            raise InvalidSpecError(f"{self.axis!r} is swept and cannot also be fixed")
        if self.scenario == "tau_curve" and self.axis != "lambda":
            raise InvalidSpecError("tau_curve depends on lambda only; use axis=lambda")
        if self.axis == "lambda" and self.scenario != "tau_curve" and "kappa" not in self.fixed:
            raise InvalidSpecError(f"scenario {self.scenario} swept over lambda needs a fixed kappa")
        if self.axis == "lambda" and self.lo < 0:
            raise InvalidSpecError("lambda must be >= 0")
        if self.axis == "kappa" and not self.lo > 0:
            raise InvalidSpecError("kappa must be > 0")

    @property
    def optimizes_lambda(self) -> bool:
        return self.axis == "kappa" and "lambda" not in self.fixed

    def columns(self) -> list[str]:
        cols = [self.axis]
        if self.optimizes_lambda:
            cols.append("lambda_opt")
        elif self.axis == "kappa":
            cols.append("lambda")
        cols.extend(_RESULT_COLUMNS[self.scenario])
        cols.append("status")
        return cols


def grid_values(spec: SweepSpec) -> list[float]:
    """Ascending axis values; the endpoints are exactly ``lo`` and ``hi``."""
    if spec.scale == "log10":
        grid = np.logspace(math.log10(spec.lo), math.log10(spec.hi), int(spec.points))
    else:
        grid = np.linspace(spec.lo, spec.hi, int(spec.points))
    values = [float(v) for v in grid]
    values[0], values[-1] = float(spec.lo), float(spec.hi)
    return values


def evaluate_point(
    scenario: str,
    kappa: float | None,
    lam: float | None,
    n: int = DEFAULT_N,
    k: int = 0,
    sign: str = "plus",
    tol: float = 1e-6,
) -> dict:
    """Figures of merit for one parameter point.

    ``lam=None`` means "optimize lambda for this kappa".  The returned dict
    holds ``lambda`` (given or optimized) plus the scenario's result columns.
    Raises :class:`DomainError` where tau <= 0 makes the scenario undefined.
    """
    if scenario == "tau_curve":
        gamma2 = math.exp(-lam / n)
        return {"lambda": lam, "tau_closed": tau_closed_form(n, gamma2), "tau_oracle": tau_matrix_oracle(n, gamma2)}

    if scenario == "free_standing":
        if lam is None:
            result, report = optimize_free_standing(kappa, n, tol)
            lam = result.arg_max
        else:
            report = lossy_gate_report(GateConfig(n=n, lam=lam, kappa=kappa, k=k, sign=sign))
        return {
            "lambda": lam,
            "tau": report.tau,
            "f_heralded": report.f_heralded,
            "p_success": report.p_success,
            "f_unheralded": report.f_unheralded,
        }

    if scenario == "distilled_cz":
        if lam is None:
            lam = optimize_distilled_cz(kappa, n, tol).arg_max
        config = GateConfig(n=n, lam=lam, kappa=kappa, k=k, sign=sign)
        p = distilled_cz_success(lam, kappa, n)
        tau = tau_closed_form(n, config.gamma2)
        distilled = two_photon_distill(
            single_photon_distill(lossy_cz_output(config, EQUAL_SUPERPOSITION, tau), config),
            DistillationSpec.from_tau(tau, kappa),
        )
        return {
            "lambda": lam,
            "tau": tau,
            "f_heralded": heralded_fidelity(distilled, cz_target()),
            "p_success": p,
        }

    if scenario == "fusion_offline":
        if lam is None:
            lam = optimize_fusion(kappa, n, tol).arg_max
        return {
            "lambda": lam,
            "tau": tau_closed_form(n, math.exp(-lam / n)),
            "p_success": fusion_success(kappa, lam, n),
        }

    raise InvalidSpecError(f"unknown scenario {scenario!r}")


def _fmt(value) -> str:
    return repr(float(value))


def _row(spec: SweepSpec, value: float) -> list[str]:
    fixed = spec.fixed
    kappa = value if spec.axis == "kappa" else fixed.get("kappa")
    lam = value if spec.axis == "lambda" else fixed.get("lambda")
    cols = spec.columns()
    try:
        result = evaluate_point(
            spec.scenario, kappa, lam, spec.n,
            k=fixed.get("k", 0), sign=fixed.get("sign", "plus"),
        )
    except (DomainError, DegenerateClosedFormError):
        return [_fmt(value)] + [""] * (len(cols) - 2) + ["domain_error"]
    row = [_fmt(value)]
    if spec.axis == "kappa":
        row.append(_fmt(result["lambda"]))
    row.extend(_fmt(result[c]) for c in _RESULT_COLUMNS[spec.scenario])
    row.append("ok")
    return row


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise InvalidSpecError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise InvalidSpecError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return value


def _check_convergence(spec: SweepSpec) -> None:
    if spec.axis == "lambda":
        lam = math.sqrt(spec.lo * spec.hi) if spec.lo > 0 else spec.hi / 2
    else:
        lam = spec.fixed.get("lambda", 1.0)
    try:
        needed = converged_n(lam, spec.n)
    except RuntimeError as exc:
        log.warning("convergence check failed: %s", exc)
        return
    if needed > spec.n:
        log.warning("n=%d is not converged to 1e-9 at lambda=%g (needs n=%d)", spec.n, lam, needed)


def run_sweep(spec: SweepSpec, workers: int | None = None) -> str:
    """Evaluate every grid point and return the CSV text.

    The text is also written to ``spec.output_path`` when that is set.
    """
    if workers is None:
        workers = worker_count()
    _check_convergence(spec)
    values = grid_values(spec)
    task = partial(_row, spec)
    if workers <= 1 or len(values) == 1:
        rows = [task(v) for v in values]
    else:
        workers = min(workers, len(values))
        chunk = max(1, math.ceil(len(values) / workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(task, values, chunksize=chunk))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(spec.columns())
    writer.writerows(rows)
    text = buf.getvalue()
    if spec.output_path is not None:
        with open(spec.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def load_presets() -> dict:
    with resources.files(__package__).joinpath("presets.json").open(encoding="utf-8") as fh:
        return json.load(fh)


def preset_spec(name: str, n: int = DEFAULT_N, output_path: str | None = None) -> SweepSpec:
    presets = load_presets()["presets"]
    if name not in presets:
        raise InvalidSpecError(f"unknown preset {name!r}; choose from {sorted(presets)}")
    p = presets[name]
    r = p["range"]
    return SweepSpec(
        scenario=p["scenario"],
        axis=p["axis"],
        lo=float(r["lo"]),
        hi=float(r["hi"]),
        points=int(r["points"]),
        scale=r["scale"],
        fixed=dict(p.get("fixed", {})),
        n=n,
        output_path=output_path,
    )
