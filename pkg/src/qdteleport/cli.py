"""Experiment runner: JSON config in, CSV/JSON artifacts out.

Usage:
    qdteleport <mode> --config <path> [--out <dir>] [--seed <n>] [--windows 70,130,190]

Modes:
    visibility   post-selected TPI visibility curve        -> visibility.csv
    teleport     fidelities, states and the window curve   -> teleport_report.json,
                                                              fidelity_curve.csv
    sweep        source-parameter grid, no post-selection  -> sweep_grid.csv
    tomography   simulated counts + reconstruction + MC    -> counts.csv,
                                                              tomography_report.json
    validate     check a config, write nothing

Exit codes: 0 success, 2 config error, 3 numerical/domain error. Errors are
emitted as one JSON object on stderr. Outputs are byte-identical for identical
(config, seed) pairs. All config fields carry units in their names; the
dephasing times accept the string "inf".
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .interference import model_from_sources, window_visibility
from .noise import NoiseBudget
from .polmath import BellOutcome, basis_state, fidelity
from .qdsource import QdParams
from .teleport import (
    CLASSICAL_FIDELITY_LIMIT,
    SweepScenario,
    TeleportConfig,
    average_fidelity_curve,
    bsm_visibility,
    coincidence_k,
    conjugate_fidelities,
    sweep_grid,
    teleported_state,
)
from . import tomography as tomo

SCHEMA = "qdteleport-config/1"
MODES = ("visibility", "teleport", "sweep", "tomography")

_QD_FIELDS = (
    "tau_x_ps", "tau_xx_ps", "fss_uev", "t2_ps", "tau_hv_ns", "tau_ss_ns",
    "linewidth_ghz", "g2", "brightness",
)


class ConfigError(ValueError):
    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


def _num(value, field: str, allow_inf: bool = False) -> float:
    """Parse a JSON number; the string 'inf' is allowed where physics wants it."""
    if allow_inf and value == "inf":
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", field)
    return float(value)


def _load_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    return doc


def _build_qd(doc: dict, key: str) -> QdParams:
    block = doc.get(key)
    if not isinstance(block, dict):
        raise ConfigError(f"missing '{key}' block", key)
    kwargs = {}
    for f in _QD_FIELDS:
        if f not in block:
            raise ConfigError(f"missing field {key}.{f}", f"{key}.{f}")
        kwargs[f] = _num(block[f], f"{key}.{f}", allow_inf=f in ("tau_hv_ns", "tau_ss_ns"))
    try:
        return QdParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc), key) from exc


def _build_noise(doc: dict) -> NoiseBudget | None:
    block = doc.get("noise")
    if block is None:
        return None
    if not isinstance(block, dict):
        raise ConfigError("'noise' must be an object", "noise")
    kwargs = {}
    for f in ("raman_rate_hz", "dark_rate_hz", "signal_rate_hz", "repetition_rate_hz"):
        if f in block:
            kwargs[f] = _num(block[f], f"noise.{f}")
    try:
        return NoiseBudget(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc), "noise") from exc


def _build_teleport(doc: dict) -> TeleportConfig:
    t = doc.get("teleport", {})
    if not isinstance(t, dict):
        raise ConfigError("'teleport' must be an object", "teleport")
    outcome_name = t.get("outcome", "PsiMinus")
    try:
        outcome = BellOutcome(outcome_name)
    except ValueError:
        raise ConfigError(
            f"unknown outcome {outcome_name!r}; expected one of "
            f"{[o.value for o in BellOutcome]}", "teleport.outcome"
        ) from None
    label = t.get("input_label", "H")

    def opt(field, allow_inf=False):
        v = t.get(field)
        return None if v is None else _num(v, f"teleport.{field}", allow_inf)

    try:
        return TeleportConfig(
            qd1=_build_qd(doc, "qd1"),
            qd2=_build_qd(doc, "qd2"),
            input_label=label,
            outcome=outcome,
            window_ps=opt("window_ps"),
            mode_overlap_mp=_num(t.get("mode_overlap_mp", 1.0), "teleport.mode_overlap_mp"),
            coincidence_ratio_k=opt("coincidence_ratio_k"),
            visibility_override=opt("visibility_override"),
            anchor_window_ps=opt("anchor_window_ps"),
            relative_detuning_ghz=_num(
                t.get("relative_detuning_ghz", 0.0), "teleport.relative_detuning_ghz"
            ),
            apply_correction=bool(t.get("apply_correction", True)),
            noise=_build_noise(doc),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc), "teleport") from exc


def _build_scenarios(doc: dict) -> list[SweepScenario]:
    block = doc.get("sweep", {})
    raw = block.get("scenarios") if isinstance(block, dict) else None
    if not isinstance(raw, list) or not raw:
        raise ConfigError("sweep mode needs a non-empty sweep.scenarios list", "sweep.scenarios")
    scenarios = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict):
            raise ConfigError(f"scenario #{i} must be an object", f"sweep.scenarios[{i}]")
        kwargs = dict(item)
        try:
            if "linewidths_ghz" in kwargs and kwargs["linewidths_ghz"] is not None:
                kwargs["linewidths_ghz"] = tuple(kwargs["linewidths_ghz"])
            scenarios.append(SweepScenario(**kwargs))
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc), f"sweep.scenarios[{i}]") from exc
    return scenarios


def _windows(doc: dict) -> list[float]:
    raw = doc.get("windows_ps", [70.0, 110.0, 150.0, 190.0, 230.0, 270.0, 290.0])
    if not isinstance(raw, list) or not raw:
        raise ConfigError("windows_ps must be a non-empty list", "windows_ps")
    windows = [_num(w, "windows_ps") for w in raw]
    if any(not w > 0.0 for w in windows):
        raise ConfigError("windows must be positive", "windows_ps")
    if windows != sorted(windows):
        raise ConfigError("windows must be sorted ascending", "windows_ps")
    return windows


def validate_doc(doc: dict, mode: str | None = None) -> list[dict]:
    """All detected config violations as {'field', 'message'} records."""
    violations = []

    def bad(message, field=None):
        violations.append({"field": field, "message": message})

    if doc.get("schema") != SCHEMA:
        bad(f"schema must be {SCHEMA!r}, got {doc.get('schema')!r}", "schema")
    cfg_mode = doc.get("mode")
    if cfg_mode is not None and cfg_mode not in MODES:
        bad(f"mode must be one of {MODES}", "mode")
    seed = doc.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        bad("seed must be a non-negative integer", "seed")
    try:
        _windows(doc)
    except ConfigError as exc:
        bad(str(exc), exc.field)

    effective = mode or cfg_mode or "teleport"
    if effective == "sweep":
        try:
            _build_scenarios(doc)
        except ConfigError as exc:
            bad(str(exc), exc.field)
    else:
        for key in ("qd1", "qd2"):
            try:
                _build_qd(doc, key)
            except ConfigError as exc:
                bad(str(exc), exc.field)
        try:
            _build_noise(doc)
        except ConfigError as exc:
            bad(str(exc), exc.field)
        if not violations:
            try:
                _build_teleport(doc)
            except ConfigError as exc:
                bad(str(exc), exc.field)
    return violations


def validate(config_path: str, mode: str | None = None) -> list[dict]:
    """Validate a config file; returns the violation list (empty = valid)."""
    return validate_doc(_load_json(config_path), mode)


# ------------------------------------------------------------------ artifacts


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _write_csv(path: Path, header: str, rows: list[tuple]) -> None:
    lines = [header]
    for row in rows:
        lines.append(",".join(c if isinstance(c, str) else _fmt(c) for c in row))
    path.write_text("\n".join(lines) + "\n")


def _matrix_json(entries: np.ndarray) -> dict:
    return {
        "real": [[float(v.real) for v in row] for row in entries],
        "imag": [[float(v.imag) for v in row] for row in entries],
    }


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _run_visibility(doc: dict, out: Path, seed: int) -> None:
    cfg = _build_teleport(doc)
    model = model_from_sources(cfg.qd1, cfg.qd2, cfg.relative_detuning_ghz)
    rows = [(w, window_visibility(w, model)) for w in _windows(doc)]
    _write_csv(out / "visibility.csv", "window_ps,visibility", rows)


def _run_teleport(doc: dict, out: Path, seed: int) -> None:
    cfg = _build_teleport(doc)
    windows = _windows(doc)
    f_h, f_d, f_r = conjugate_fidelities(cfg)
    curve, crossing = average_fidelity_curve(cfg, windows)
    states = {}
    for label in ("H", "D", "R"):
        sub = replace(cfg, input_label=label, input_state=None)
        corrected = teleported_state(replace(sub, apply_correction=True))
        uncorrected = teleported_state(replace(sub, apply_correction=False))
        states[label] = {
            "corrected": _matrix_json(corrected.entries),
            "uncorrected": _matrix_json(uncorrected.entries),
            "fidelity": fidelity(corrected, basis_state(label)),
        }
    report = {
        "schema": "qdteleport-report/1",
        "mode": "teleport",
        "window_ps": cfg.window_ps,
        "outcome": cfg.outcome.value,
        "visibility": bsm_visibility(cfg),
        "coincidence_ratio_k": coincidence_k(cfg),
        "mode_overlap_mp": cfg.mode_overlap_mp,
        "f_h": f_h,
        "f_d": f_d,
        "f_r": f_r,
        "f_bar": (f_h + f_d + f_r) / 3.0,
        "classical_limit": CLASSICAL_FIDELITY_LIMIT,
        "threshold_crossing_ps": crossing,
        "states": states,
    }
    _write_json(out / "teleport_report.json", report)
    _write_csv(out / "fidelity_curve.csv", "window_ps,f_bar", curve)


def _run_sweep(doc: dict, out: Path, seed: int) -> None:
    rows = sweep_grid(_build_scenarios(doc))
    _write_csv(
        out / "sweep_grid.csv",
        "label,visibility,fss_uev,g2,mode_overlap_mp,k,f_bar",
        [
            (r["label"], r["visibility"], r["fss_uev"], r["g2"],
             r["mode_overlap_mp"], r["k"], r["f_bar"])
            for r in rows
        ],
    )


def _run_tomography(doc: dict, out: Path, seed: int) -> None:
    cfg = _build_teleport(doc)
    block = doc.get("tomography", {})
    shots = int(block.get("shots_per_basis", 100000))
    runs = int(block.get("runs", tomo.DEFAULT_BOOTSTRAP_RUNS))
    rho = teleported_state(cfg)
    counts = tomo.simulate_counts(rho, shots, seed)
    _write_csv(
        out / "counts.csv",
        "projection_label,count",
        [(l, str(counts.counts[l])) for l in tomo.PROJECTION_LABELS],
    )
    reconstructed = tomo.reconstruct(counts)
    targets = [basis_state(l) for l in ("H", "D", "R")]
    stds = tomo.monte_carlo_errors(counts, targets, runs=runs, seed=seed)
    report = {
        "schema": "qdteleport-report/1",
        "mode": "tomography",
        "seed": seed,
        "shots_per_basis": shots,
        "monte_carlo_runs": runs,
        "counts": {l: counts.counts[l] for l in tomo.PROJECTION_LABELS},
        "rho_reconstructed": _matrix_json(reconstructed.entries),
        "fidelity_to_input": fidelity(reconstructed, basis_state(cfg.input_label)),
        "fidelity_std": {"H": stds[0], "D": stds[1], "R": stds[2]},
    }
    _write_json(out / "tomography_report.json", report)


_RUNNERS = {
    "visibility": _run_visibility,
    "teleport": _run_teleport,
    "sweep": _run_sweep,
    "tomography": _run_tomography,
}


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="qdteleport",
        description="Teleportation-between-remote-quantum-dots model runner",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES + ("validate",):
        p = sub.add_parser(mode)
        p.add_argument("--config", required=True, help="JSON experiment config")
        if mode != "validate":
            p.add_argument("--out", default=None, help="output directory (default: config output_dir)")
            p.add_argument("--seed", type=int, default=None, help="override config seed")
            p.add_argument("--windows", default=None, help="comma-separated windows in ps")
    return parser.parse_args(argv)


def _emit_error(kind: str, exc: Exception) -> None:
    payload = {"error": {"type": kind, "message": str(exc)}}
    if isinstance(exc, ConfigError) and exc.field:
        payload["error"]["field"] = exc.field
    sys.stderr.write(json.dumps(payload) + "\n")


def main(argv=None) -> int:
    args = _parse_args(argv)
    try:
        doc = _load_json(args.config)
        if args.mode == "validate":
            violations = validate_doc(doc)
            sys.stdout.write(json.dumps({"violations": violations}, indent=2) + "\n")
            return 0 if not violations else 2
        if args.windows is not None:
            try:
                doc["windows_ps"] = sorted(float(w) for w in args.windows.split(","))
            except ValueError as exc:
                raise ConfigError(f"bad --windows: {exc}") from exc
        violations = validate_doc(doc, args.mode)
        if violations:
            first = violations[0]
            raise ConfigError(first["message"], first["field"])
        seed = args.seed if args.seed is not None else int(doc.get("seed", 0))
        out = Path(args.out or doc.get("output_dir", "out"))
        out.mkdir(parents=True, exist_ok=True)
        _RUNNERS[args.mode](doc, out, seed)
        return 0
    except ConfigError as exc:
        _emit_error("config", exc)
        return 2
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        _emit_error("numerical", exc)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
