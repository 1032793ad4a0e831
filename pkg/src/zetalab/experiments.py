"""Named experiment presets with deterministic CSV/SVG/manifest output.

Every preset maps to one figure of the study and writes its data files plus
a manifest echoing the fully resolved configuration with per-file checksums.
Re-running a preset with the same configuration reproduces byte-identical
CSV/SVG outputs (the manifest records wall time and therefore differs).
"""

from __future__ import annotations

import concurrent.futures
import csv
import hashlib
import io
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path

from mpmath.libmp import to_str as _mpf_to_str

from . import __version__
from .errors import ValidationError
from .precision import ComplexAP, PrecisionContext
from .sigmoid import construct_fit, sigmoid_eval
from .solver import (
    DEFAULT_STABILITY_THRESHOLD,
    GridSpec,
    half_crossing,
    solve_grid,
)
from .series import (
    CALIBRATION_DIGITS,
    DEFAULT_BRACKET,
    calibrate_b,
    fit_power_law,
    fit_sigma_dependence,
    truncation_length,
)
from .spiral import DISPLAY_DIGITS, raw_partial_sums, weighted_partial_sums
from .svgplot import spiral_svg

# ---------------------------------------------------------------------------
# formatting helpers (all deterministic)


def _f(x) -> str:
    return repr(float(x))


def _ap(x, digits: int) -> str:
    """Arbitrary-precision real to exactly `digits` significant digits."""
    return _mpf_to_str(x._mpf_, digits, strip_zeros=False)


def _csv(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class ExperimentConfig:
    """A preset name plus raw string overrides (from CLI flags or key=value file)."""

    preset: str
    overrides: dict

    def resolved(self) -> dict:
        preset = _preset(self.preset)
        params = dict(preset.defaults)
        for key, raw in self.overrides.items():
            if key in _GLOBAL_KEYS:
                params[key] = _coerce(key, raw)
            elif key in preset.defaults:
                params[key] = _coerce(key, raw)
            else:
                raise ValidationError(
                    f"unknown key {key!r} for preset {self.preset!r} "
                    f"(allowed: {sorted(preset.defaults) + sorted(_GLOBAL_KEYS)})"
                )
        return params


_GLOBAL_KEYS = {"seed", "jobs"}


def _coerce(key: str, raw):
    if not isinstance(raw, str):
        return raw
    if key in {"n", "digits", "t", "seed", "jobs"}:
        return int(raw)
    if key == "b":
        return float(raw)
    if key == "bracket":
        lo, hi = (float(part) for part in raw.split(","))
        return (lo, hi)
    if key == "t_list":
        return [float(part) for part in raw.split(",")]
    if key == "sigma_list":
        return [part.strip() for part in raw.split(",")]
    # sigma, t1, dt stay as decimal text
    return raw


def parse_config_file(path: Path) -> dict:
    """Flat `key = value` lines; blank lines and # comments ignored."""
    overrides = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValidationError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = stripped.partition("=")
        overrides[key.strip()] = value.strip()
    return overrides


# ---------------------------------------------------------------------------
# shared output builders


def _coeff_outputs(spec: GridSpec, threshold: float = DEFAULT_STABILITY_THRESHOLD) -> dict:
    cs = solve_grid(spec)
    digits = spec.digits
    rows = [
        [str(i), _ap(z.re, digits), _ap(z.im, digits)]
        for i, z in enumerate(cs.deltas, start=1)
    ]
    diag = {
        "residual_inf": _ap(cs.residual_inf, 12),
        "im_stability": _ap(cs.im_stability, 12),
        "stable": bool(cs.im_stability < threshold),
        "stability_threshold": threshold,
        "ordinate_bound_ok": spec.ordinate_bound_ok,
    }
    try:
        crossing = half_crossing(cs)
        diag["n_hat_star"] = crossing.value
        diag["crossings"] = crossing.crossings
    except Exception as exc:  # profile may be too broken to cross once
        diag["n_hat_star"] = None
        diag["crossing_error"] = str(exc)
    outputs = {
        "coeffs.csv": _csv(["n", "re_delta", "im_delta"], rows),
        "diagnostics.jsonl": json.dumps(diag, sort_keys=True) + "\n",
    }
    return outputs, cs


def _calibration_point(sigma: str, t: float, digits: int, bracket) -> dict:
    ctx = PrecisionContext(digits)
    s = ComplexAP(ctx.real(sigma), ctx.real(t))
    cal = calibrate_b(s, ctx, bracket)
    return {
        "t": t,
        "b_hat": cal.b_hat,
        "err_at_opt": cal.err_at_opt,
        "digits_gained": cal.digits_gained,
        "terms": cal.terms,
    }


def _star_calibration(args):
    return _calibration_point(*args)


# ---------------------------------------------------------------------------
# preset runners


def _run_coeffs(params: dict, jobs: int) -> dict:
    spec = GridSpec(
        sigma=params["sigma"], t1=params["t1"], dt=params["dt"],
        n_rows=params["n"], digits=params["digits"],
    )
    outputs, _ = _coeff_outputs(spec)
    return outputs


def _run_sigmoid(params: dict, jobs: int) -> dict:
    spec = GridSpec(
        sigma=params["sigma"], t1=params["t1"], dt=params["dt"],
        n_rows=params["n"], digits=params["digits"],
    )
    outputs, cs = _coeff_outputs(spec)
    fit = construct_fit(cs)
    rows = [
        [str(i), _ap(z.re, spec.digits), _f(sigmoid_eval(i, fit))]
        for i, z in enumerate(cs.deltas, start=1)
    ]
    outputs["sigmoid.csv"] = _csv(["n", "re_delta", "sigmoid_value"], rows)
    outputs["fit.json"] = _json(
        {"a_param": fit.a_param, "b_param": fit.b_param, "residual": fit.residual}
    )
    return outputs


def _run_nhat_sweep(params: dict, jobs: int) -> dict:
    rows = []
    for t1 in params["t_list"]:
        spec = GridSpec(
            sigma=params["sigma"], t1=repr(float(t1)), dt=params["dt"],
            n_rows=params["n"], digits=params["digits"],
        )
        cs = solve_grid(spec)
        n = spec.n_rows
        mean_t = float(spec.t1) + (n - 1) * float(spec.dt) / 2.0
        n_hat_formula = mean_t / math.pi
        try:
            n_hat_star = half_crossing(cs).value
        except Exception:
            n_hat_star = float("nan")
        rows.append(
            [
                _f(t1),
                _f(n_hat_star),
                _f(n_hat_formula),
                _f(mean_t / float(spec.t1)),
                _ap(cs.im_stability, 12),
            ]
        )
    return {
        "nhat_sweep.csv": _csv(
            ["t1", "n_hat_star", "n_hat_formula", "mean_t_over_t1", "im_stability"], rows
        )
    }


def _run_eps_vs_b(params: dict, jobs: int) -> dict:
    ctx = PrecisionContext(params["digits"])
    s = ComplexAP(ctx.real(params["sigma"]), ctx.real(params["t"]))
    cal = calibrate_b(s, ctx, params["bracket"])
    trace_rows = [[_f(b), _f(e)] for b, e in sorted(cal.trace)]
    return {
        "trace.csv": _csv(["B", "err"], trace_rows),
        "calibration.json": _json(
            {
                "sigma": params["sigma"],
                "t": params["t"],
                "b_hat": cal.b_hat,
                "err_at_opt": cal.err_at_opt,
                "digits_gained": cal.digits_gained,
                "terms": cal.terms,
            }
        ),
    }


def _sweep_rows(params: dict, jobs: int) -> list[dict]:
    items = [
        (params["sigma"], float(t), params["digits"], params["bracket"])
        for t in params["t_list"]
    ]
    if jobs > 1 and len(items) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_star_calibration, items))
    return [_star_calibration(item) for item in items]


def _run_eps_vs_t(params: dict, jobs: int) -> dict:
    points = _sweep_rows(params, jobs)
    rows = [[_f(p["t"]), _f(p["b_hat"]), _f(p["digits_gained"])] for p in points]
    return {"accuracy.csv": _csv(["t", "b_hat", "digits_gained"], rows)}


def _run_power_law(params: dict, jobs: int) -> dict:
    points = _sweep_rows(params, jobs)
    rows = [[_f(p["t"]), _f(p["b_hat"]), _f(p["digits_gained"])] for p in points]
    fit = fit_power_law([(p["t"], p["b_hat"]) for p in points], sigma=float(params["sigma"]))
    return {
        "accuracy.csv": _csv(["t", "b_hat", "digits_gained"], rows),
        "powerfit.json": _json(
            {
                "sigma": float(params["sigma"]),
                "c_coef": fit.c_coef,
                "d_exp": fit.d_exp,
                "r_squared": fit.r_squared,
            }
        ),
    }


def _run_cd_sigma(params: dict, jobs: int) -> dict:
    rows = []
    c_samples, d_samples = [], []
    for sigma in params["sigma_list"]:
        sub = dict(params, sigma=sigma)
        points = _sweep_rows(sub, jobs)
        fit = fit_power_law([(p["t"], p["b_hat"]) for p in points], sigma=float(sigma))
        rows.append([_f(sigma), _f(fit.c_coef), _f(fit.d_exp), _f(fit.r_squared)])
        c_samples.append((float(sigma), fit.c_coef))
        d_samples.append((float(sigma), fit.d_exp))
    outputs = {"cd_sigma.csv": _csv(["sigma", "c_coef", "d_exp", "r_squared"], rows)}
    fits = {}
    for label, samples in (("c_coef", c_samples), ("d_exp", d_samples)):
        try:
            efit = fit_sigma_dependence(samples)
            fits[label] = {"p": efit.p, "q": efit.q, "r_squared": efit.r_squared}
        except Exception as exc:  # d_exp may go non-positive; report, don't abort
            fits[label] = {"error": str(exc)}
    outputs["expfits.json"] = _json(fits)
    return outputs


def _run_b_sigma(params: dict, jobs: int) -> dict:
    items = [
        (sigma, float(params["t"]), params["digits"], params["bracket"])
        for sigma in params["sigma_list"]
    ]
    if jobs > 1 and len(items) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            points = list(pool.map(_star_calibration, items))
    else:
        points = [_star_calibration(item) for item in items]
    rows = [
        [_f(sigma), _f(p["b_hat"]), _f(p["digits_gained"])]
        for sigma, p in zip(params["sigma_list"], points)
    ]
    fit = fit_sigma_dependence(
        [(float(sigma), p["b_hat"]) for sigma, p in zip(params["sigma_list"], points)]
    )
    return {
        "b_sigma.csv": _csv(["sigma", "b_hat", "digits_gained"], rows),
        "expfit.json": _json({"p": fit.p, "q": fit.q, "r_squared": fit.r_squared}),
    }


def _run_spiral(params: dict, jobs: int, weighted: bool) -> dict:
    ctx = PrecisionContext(params["digits"])
    s = ComplexAP(ctx.real(params["sigma"]), ctx.real(params["t"]))
    b = params.get("b")
    if b is None:
        b = calibrate_b(s, ctx, params["bracket"]).b_hat
    n_terms = 2 * truncation_length(s, b, 10.0 ** (-ctx.digits))
    if weighted:
        trace = weighted_partial_sums(s, b, n_terms, ctx)
    else:
        trace = raw_partial_sums(s, n_terms, ctx)
    rows = [
        [str(k), _ap(p.re, DISPLAY_DIGITS), _ap(p.im, DISPLAY_DIGITS)]
        for k, p in enumerate(trace.points, start=1)
    ]
    points_f = [(float(p.re), float(p.im)) for p in trace.points]
    return {
        "spiral.csv": _csv(["k", "re", "im"], rows),
        "spiral.svg": spiral_svg(points_f),
        "spiral.json": _json(
            {
                "sigma": params["sigma"],
                "t": params["t"],
                "weighted": weighted,
                "b_used": b if weighted else None,
                "n_terms": n_terms,
            }
        ),
    }


# ---------------------------------------------------------------------------
# preset table


@dataclass(frozen=True)
class _Preset:
    figure: str
    defaults: dict
    runner: object


_STABLE_GRID = {
    "sigma": "0.5",
    "t1": "188.4955592",
    "dt": "0.628318531",
    "n": 100,
    "digits": 100,
}

_SIGMA_LADDER = ["0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9"]

_PRESETS: dict[str, _Preset] = {
    "fig-coeffs-stable": _Preset(
        "coefficient profile, stable reference grid", dict(_STABLE_GRID), _run_coeffs
    ),
    "fig-coeffs-left": _Preset(
        "coefficient profile deformed left (smaller t1, larger dt)",
        dict(_STABLE_GRID, t1="157.0796327", dt="0.785398163"),
        _run_coeffs,
    ),
    "fig-coeffs-right": _Preset(
        "coefficient profile deformed right (larger t1, smaller dt)",
        dict(_STABLE_GRID, t1="209.4395102", dt="0.523598776"),
        _run_coeffs,
    ),
    "fig-precision-90": _Preset(
        "stable grid at a slightly reduced digit budget",
        dict(_STABLE_GRID, digits=90),
        _run_coeffs,
    ),
    "fig-precision-50": _Preset(
        "stable grid at half the digit budget (profile destroyed)",
        dict(_STABLE_GRID, digits=50),
        _run_coeffs,
    ),
    "fig-sigmoid": _Preset(
        "sigmoid model overlaid on the real coefficient profile",
        dict(_STABLE_GRID),
        _run_sigmoid,
    ),
    "fig-nhat-sweep": _Preset(
        "half-crossing index versus the first ordinate t1",
        {
            "sigma": "0.5",
            "dt": "0.628318531",
            "n": 100,
            "digits": 100,
            "t_list": [175.9291886, 182.2123739, 188.4955592, 194.7787445, 201.0619298],
        },
        _run_nhat_sweep,
    ),
    "fig-eps-vs-b": _Preset(
        "reconstruction error versus the scale factor at s = 0.5 + 1000i",
        {
            "sigma": "0.5",
            "t": 1000,
            "digits": CALIBRATION_DIGITS,
            "bracket": DEFAULT_BRACKET,
        },
        _run_eps_vs_b,
    ),
    "fig-eps-vs-t": _Preset(
        "digits gained versus the ordinate t",
        {
            "sigma": "0.5",
            "t_list": [100.0, 300.0, 1000.0, 3000.0],
            "digits": CALIBRATION_DIGITS,
            "bracket": DEFAULT_BRACKET,
        },
        _run_eps_vs_t,
    ),
    "fig-b-power-law": _Preset(
        "power law of the calibrated scale factor over t",
        {
            "sigma": "0.5",
            "t_list": [100.0, 200.0, 500.0, 1000.0, 2000.0, 5000.0],
            "digits": CALIBRATION_DIGITS,
            "bracket": DEFAULT_BRACKET,
        },
        _run_power_law,
    ),
    "fig-c-d-sigma": _Preset(
        "power-law coefficients C and D versus sigma",
        {
            "sigma_list": list(_SIGMA_LADDER),
            "t_list": [100.0, 300.0, 1000.0],
            "digits": CALIBRATION_DIGITS,
            "bracket": DEFAULT_BRACKET,
        },
        _run_cd_sigma,
    ),
    "fig-b-sigma": _Preset(
        "calibrated scale factor versus sigma at fixed t",
        {
            "sigma_list": list(_SIGMA_LADDER),
            "t": 50000,
            "digits": CALIBRATION_DIGITS,
            "bracket": DEFAULT_BRACKET,
        },
        _run_b_sigma,
    ),
    "fig-spiral-raw": _Preset(
        "divergent partial-sum spiral of the functional-equation combination",
        {
            "sigma": "0.5",
            "t": 200,
            "digits": CALIBRATION_DIGITS,
            "bracket": DEFAULT_BRACKET,
            "b": None,
        },
        lambda params, jobs: _run_spiral(params, jobs, weighted=False),
    ),
    "fig-spiral-weighted": _Preset(
        "sigmoid-weighted spiral converging to the origin",
        {
            "sigma": "0.5",
            "t": 200,
            "digits": CALIBRATION_DIGITS,
            "bracket": DEFAULT_BRACKET,
            "b": None,
        },
        lambda params, jobs: _run_spiral(params, jobs, weighted=True),
    ),
}


def _preset(name: str) -> _Preset:
    if name not in _PRESETS:
        raise ValidationError(f"unknown preset {name!r}; see list-presets")
    return _PRESETS[name]


def preset_names() -> list[str]:
    return list(_PRESETS)


def list_presets() -> list[dict]:
    """Static table of (preset, figure, parameters), parseable as config stubs."""
    table = []
    for name, preset in _PRESETS.items():
        table.append({"preset": name, "figure": preset.figure, "parameters": dict(preset.defaults)})
    return table


# ---------------------------------------------------------------------------
# runner


@dataclass(frozen=True)
class RunManifest:
    preset: str
    figure: str
    config: dict
    version: str
    outputs: dict
    wall_time_s: float

    def to_json(self) -> str:
        payload = {
            "preset": self.preset,
            "figure": self.figure,
            "config": _jsonable(self.config),
            "version": self.version,
            "outputs": self.outputs,
            "wall_time_s": self.wall_time_s,
        }
        return _json(payload)


def _jsonable(params: dict) -> dict:
    out = {}
    for key, value in params.items():
        if isinstance(value, tuple):
            out[key] = list(value)
        else:
            out[key] = value
    return out


def run_preset(config: ExperimentConfig, output_dir: str | Path = ".", jobs: int = 1) -> RunManifest:
    """Execute the preset pipeline and write outputs + manifest.json."""
    preset = _preset(config.preset)
    params = config.resolved()
    jobs = int(params.get("jobs", jobs) or jobs)
    runner_params = {k: v for k, v in params.items() if k not in _GLOBAL_KEYS}

    start = time.perf_counter()
    outputs = preset.runner(runner_params, jobs)
    wall = time.perf_counter() - start

    out_dir = Path(output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    checksums = {}
    for filename, content in outputs.items():
        data = content.encode("utf-8")
        (out_dir / filename).write_bytes(data)
        checksums[filename] = hashlib.sha256(data).hexdigest()

    manifest = RunManifest(
        preset=config.preset,
        figure=preset.figure,
        config=params,
        version=__version__,
        outputs=checksums,
        wall_time_s=wall,
    )
    (out_dir / "manifest.json").write_text(manifest.to_json())
    return manifest
