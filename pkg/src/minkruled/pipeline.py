"""End-to-end runs: directrix, synthesis, surface, verification, file outputs.

All emitted files are deterministic for identical configs: floats are
written with 17 significant digits, JSON keys are sorted, and nothing
records timestamps.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .config import RunConfig
from .errors import GeometryError
from .frenet import FrenetCurve, integrate_frenet
from .mesh import export_mesh
from .surface import AngleTrack, RuledSurfaceGrid
from .synthesis import (
    DEFAULT_PHI0_GRID,
    DEFAULT_THETA0_GRID,
    SystemKind,
    build_surface,
    integrate_system,
)
from .verify import InvariantReport, recompute_report


def _fmt(x) -> str:
    if x is None:
        return ""
    x = float(x)
    return f"{x:.17g}"


@dataclass(frozen=True)
class RunResult:
    config: RunConfig
    curve: FrenetCurve
    track: AngleTrack
    surface: RuledSurfaceGrid
    report: InvariantReport
    written: dict[str, str]

    @property
    def exit_code(self) -> int:
        return 0 if self.report.passed else 1


def build_directrix(cfg: RunConfig) -> FrenetCurve:
    d = cfg.directrix
    return integrate_frenet(
        d.k1, d.k2, s_range=d.s_range, step=d.step, initial_frame=d.initial_frame
    )


def run_config(cfg: RunConfig, out_dir=".", *, write_outputs: bool = True) -> RunResult:
    """Run the full pipeline for one config.

    Output paths from the config resolve against ``out_dir``.  The verdict
    decides the exit code; pipeline errors (singular seeds, divergence)
    propagate as exceptions carrying the failure location.
    """
    curve = build_directrix(cfg)
    track = integrate_system(cfg.system, cfg.params, curve)
    surface = build_surface(track, curve)
    report = recompute_report(surface, cfg.params, cfg.system, cfg.tolerances)

    written: dict[str, str] = {}
    if write_outputs:
        out_dir = os.fspath(out_dir)
        os.makedirs(out_dir, exist_ok=True)
        o = cfg.outputs
        if o.csv_path is not None:
            written["csv"] = write_samples_csv(os.path.join(out_dir, o.csv_path), track, report)
        if o.report_path is not None:
            written["report"] = write_report_json(os.path.join(out_dir, o.report_path), report)
        if o.mesh is not None:
            comment = f"system={cfg.system.value} params={_params_comment(cfg)}"
            written["mesh"] = export_mesh(
                surface, o.mesh.v_range, o.mesh.v_samples, os.path.join(out_dir, o.mesh.path), comment=comment
            )
    return RunResult(config=cfg, curve=curve, track=track, surface=surface, report=report, written=written)


def _params_comment(cfg: RunConfig) -> str:
    parts = []
    for key, val in sorted(cfg.to_dict()["params"].items()):
        parts.append(f"{key}={json.dumps(val, sort_keys=True)}")
    return " ".join(parts)


def write_report_json(path, report: InvariantReport) -> str:
    path = os.fspath(path)
    with open(path, "w", newline="\n") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")
    return path


_CSV_COLUMNS = ("s", "theta", "phi", "d", "v0", "K", "mu", "n", "qprime_norm", "cylindrical")


def write_samples_csv(path, track: AngleTrack, report: InvariantReport) -> str:
    """Per-sample table: s, angles, recomputed invariants, cylindrical flag."""
    path = os.fspath(path)
    inv = report.recomputed
    n = track.n_samples
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_CSV_COLUMNS)
        for i in range(n):
            head = [_fmt(track.s[i]), _fmt(track.theta[i]), _fmt(track.phi[i])]
            if inv is None:
                writer.writerow(head + ["", "", "", "", "", "", 1])
            else:
                writer.writerow(
                    head
                    + [
                        _fmt(inv.d[i]),
                        _fmt(inv.v0[i]),
                        _fmt(inv.K[i]),
                        _fmt(inv.mu[i]),
                        _fmt(inv.n[i]),
                        _fmt(inv.qprime_norm[i]),
                        int(inv.cylindrical[i]),
                    ]
                )
    return path


# ---------------------------------------------------------------------------
# seed sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    theta0: float
    phi0: float
    verdict: str  # pass / fail / error
    max_rel_error: float | None
    worst_defect: float | None
    failure_s: float | None
    detail: str


def sweep_grid(
    base: RunConfig,
    theta0_list=None,
    phi0_list=None,
    out_dir=".",
    *,
    summary_name: str = "sweep_summary.csv",
    write_summary: bool = True,
) -> tuple[list[SweepRow], str | None]:
    """Run the pipeline once per seed on the grid; one CSV row per seed.

    Errors are recorded per row and never abort the sweep.  Per-seed file
    outputs are suppressed (only the summary is written).
    """
    theta0_list = list(theta0_list) if theta0_list else list(DEFAULT_THETA0_GRID)
    phi0_list = list(phi0_list) if phi0_list else list(DEFAULT_PHI0_GRID)
    if not theta0_list or not phi0_list:
        raise ValueError("seed lists must be nonempty")

    rows: list[SweepRow] = []
    for theta0 in theta0_list:
        for phi0 in phi0_list:
            cfg = base.with_seed(float(theta0), float(phi0))
            try:
                result = run_config(cfg, write_outputs=False)
            except GeometryError as exc:
                rows.append(
                    SweepRow(
                        theta0=float(theta0),
                        phi0=float(phi0),
                        verdict="error",
                        max_rel_error=None,
                        worst_defect=None,
                        failure_s=getattr(exc, "s", None),
                        detail=f"{type(exc).__name__}: {exc}",
                    )
                )
                continue
            report = result.report
            rels = [st.max_rel for st in report.errors.values() if math.isfinite(st.max_rel)]
            defects = [v for k, v in report.defects.items() if not k.endswith("_endpoints")]
            rows.append(
                SweepRow(
                    theta0=float(theta0),
                    phi0=float(phi0),
                    verdict=report.verdict,
                    max_rel_error=max(rels) if rels else None,
                    worst_defect=max(defects) if defects else None,
                    failure_s=None,
                    detail="" if report.passed else "failed: " + ",".join(report.failures),
                )
            )

    summary_path = None
    if write_summary:
        out_dir = os.fspath(out_dir)
        os.makedirs(out_dir, exist_ok=True)
        summary_path = os.path.join(out_dir, summary_name)
        with open(summary_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["theta0", "phi0", "verdict", "max_rel_error", "worst_defect", "failure_s", "detail"])
            for row in rows:
                writer.writerow(
                    [
                        _fmt(row.theta0),
                        _fmt(row.phi0),
                        row.verdict,
                        _fmt(row.max_rel_error) if row.max_rel_error is not None else "",
                        _fmt(row.worst_defect) if row.worst_defect is not None else "",
                        _fmt(row.failure_s) if row.failure_s is not None else "",
                        row.detail,
                    ]
                )
    return rows, summary_path
