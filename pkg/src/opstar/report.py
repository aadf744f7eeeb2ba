"""Report emission: versioned JSON, delimited curves, rendered figures.

Every run writes one JSON report (schema ``opstar-report/1``) embedding
the exact tolerances, seeds and probe counts used, plus one CSV per
curve for external tooling and a PNG rendering of each curve next to it.
Reports are byte-deterministic for a fixed config and seed except for
the ``created_utc`` field; figures are best-effort renderings and are
not part of the determinism contract.
"""

from __future__ import annotations

import datetime
import json
import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import REPORT_SCHEMA
from ._rng import RNG_ALGORITHM


def _jsonify(value):
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, (np.floating, float)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.ndarray):
        return _jsonify(value.tolist())
    return value


class RunReport:
    """Accumulates checks and curves for one command invocation."""

    def __init__(self, command: str, seed: int | None, params: dict, tolerances: dict):
        self.command = command
        self.seed = seed
        self.params = params
        self.tolerances = tolerances
        self.checks: list[dict] = []
        self.data: dict = {}
        self.curves: dict[str, tuple[list[str], list[list]]] = {}
        self.overflow = False

    def add_check(self, name: str, passed: bool, value=None, bound=None) -> None:
        entry = {"name": name, "passed": bool(passed)}
        if value is not None:
            entry["value"] = _jsonify(value)
        if bound is not None:
            entry["bound"] = _jsonify(bound)
        self.checks.append(entry)

    def add_curve(self, name: str, header: list[str], rows: list) -> None:
        self.curves[name] = (list(header), [list(r) for r in rows])

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def payload(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "seed": self.seed,
            "rng": RNG_ALGORITHM,
            "params": _jsonify(self.params),
            "tolerances": _jsonify(self.tolerances),
            "checks": self.checks,
            "passed": self.passed,
            "overflow": self.overflow,
            "data": _jsonify(self.data),
        }

    def write(self, out_dir: str, basename: str, plot: bool = True) -> dict[str, str]:
        """Write JSON + CSV + PNG files; returns path map."""
        os.makedirs(out_dir, exist_ok=True)
        paths = {}
        json_path = os.path.join(out_dir, f"{basename}.json")
        with open(json_path, "w") as fh:
            json.dump(self.payload(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        paths["json"] = json_path
        for name, (header, rows) in self.curves.items():
            csv_path = os.path.join(out_dir, f"{basename}__{name}.csv")
            write_csv(csv_path, header, rows)
            paths[f"csv:{name}"] = csv_path
            if plot:
                png_path = os.path.join(out_dir, f"{basename}__{name}.png")
                try:
                    render_curve(png_path, name, header, rows)
                    paths[f"png:{name}"] = png_path
                except Exception:
                    # figures are a convenience; never fail the run over them
                    pass
        return paths


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def write_csv(path: str, header: list[str], rows: list) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def render_curve(path: str, name: str, header: list[str], rows: list) -> None:
    """Line plot of every numeric column against the first column."""
    if not rows:
        return
    cols = list(zip(*rows))
    x = np.asarray(cols[0], dtype=float)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    plotted = False
    for label, col in zip(header[1:], cols[1:]):
        try:
            y = np.asarray(col, dtype=float)
        except (TypeError, ValueError):
            continue
        if not np.any(np.isfinite(y)):
            continue
        ax.plot(x, y, marker="o", markersize=2.5, linewidth=1.0, label=label)
        plotted = True
    if not plotted:
        plt.close(fig)
        return
    finite_vals = [
        v
        for col in cols[1:]
        for v in np.asarray(col, dtype=float).ravel().tolist()
        if isinstance(v, float) and math.isfinite(v)
    ]
    if finite_vals and min(finite_vals) > 0 and max(finite_vals) / max(min(finite_vals), 1e-300) > 1e3:
        ax.set_yscale("log")
    if len(x) > 1 and np.all(x > 0) and x[-1] / max(x[0], 1e-300) > 50:
        ax.set_xscale("log")
    ax.set_xlabel(header[0])
    ax.set_title(name)
    ax.grid(True, alpha=0.3)
    if len(header) > 2:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
