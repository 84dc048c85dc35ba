"""Batch command-line front-end.

Thin orchestration only: every number printed here is produced by the library
modules.  Four commands (eval-kernel, solve, verify, transform) share one
config layer with precedence CLI flags > config file > preset > defaults.

Exit status: 0 all checks pass / output written, 1 verification failure,
2 malformed or inconsistent configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

from . import cauchy, conservation, symmetry, systems
from .conformable import EvalPoint, SolutionPair, scaled_residual
from .errors import ConfigError, ParameterError
from .fundsol import KernelMatrix, kernel_eq3, kernel_example31, pushforward_kernel

X_MIN_DEFAULT = 0.05
T_MIN_DEFAULT = 1e-3

DEFAULT_TOLERANCES = {
    "residual": 1e-5,
    "laplace": 1e-6,
    "orbit": 1e-5,
    "composition": 1e-8,
    "conservation": 1e-5,
    "pushforward": 1e-4,
    "constraint": 1e-6,
    "identity": 1e-12,
    "transform": 1e-8,
}

PRESETS: dict[str, dict] = {
    "example31": {
        "system": "example31",
        "params": {"a": 2.0, "b": 0.5},
        "alpha": 0.6,
        "grid": {"x": [0.5, 2.0, 5], "t": [0.3, 2.0, 5], "y": {"points": [0.5, 1.0, 2.0]}},
    },
    "eq3": {
        "system": "eq3",
        "params": {"c": 1.0, "m": 1.0, "n": 4.0},
        "alpha": 0.5,
        "grid": {"x": [0.5, 2.0, 5], "t": [0.3, 2.0, 5], "y": {"points": [0.5, 1.0, 2.0]}},
    },
    "transformed33": {
        "system": "transformed33",
        "params": {
            "a1": 1.0,
            "a2": 0.5,
            "b1": 2.0,
            "b2": -1.0,
            "c": 1.5,
            "m": 1.0,
            "n": 4.0,
        },
        "alpha": 0.6,
        "grid": {"x": [0.5, 2.0, 4], "t": [0.3, 1.8, 4], "y": {"points": [0.5, 1.0, 2.0]}},
    },
    "power-transform": {
        "system": "generalequation2",
        "params": {"a": 1.0, "b": 2.0, "q": 0.5},
        "alpha": 0.75,
        "transformation": "power",
        "grid": {"x": [0.5, 2.0, 5], "t": [0.3, 2.0, 5]},
    },
    "negative-control": {
        "system": "eq3",
        "params": {"c": 1.0, "m": 1.0, "n": 4.0},
        "alpha": 0.5,
        "suite": "conservation",
        "perturbed": True,
        "grid": {"x": [0.5, 2.0, 4], "t": [0.3, 2.0, 4]},
    },
}


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _threads() -> int:
    raw = os.environ.get("CONFRACT_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ConfigError(f"CONFRACT_THREADS must be an integer, got {raw!r}") from exc
    return max(1, cap)


def _map_ordered(fn: Callable, items: Sequence) -> list:
    cap = _threads()
    if cap == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


def _axis_values(name: str, spec, lo_min: float) -> list[float]:
    """Grid axis: [lo, hi, count] range, {'points': [...]} or a plain list."""
    if isinstance(spec, dict):
        pts = spec.get("points")
        if not isinstance(pts, list) or not pts:
            raise ConfigError(f"grid.{name}: 'points' must be a non-empty list")
        vals = [float(p) for p in pts]
    elif isinstance(spec, list) and len(spec) == 3 and isinstance(spec[2], (int, float)):
        lo, hi, count = float(spec[0]), float(spec[1]), int(spec[2])
        if count < 2:
            raise ConfigError(f"grid.{name}: range form needs count >= 2, got {count}")
        if not hi > lo:
            raise ConfigError(f"grid.{name}: needs hi > lo, got [{lo}, {hi}]")
        vals = list(np.linspace(lo, hi, count))
    elif isinstance(spec, list) and spec:
        vals = [float(p) for p in spec]
    else:
        raise ConfigError(
            f"grid.{name}: expected [lo, hi, count], a value list or {{'points': [...]}}"
        )
    if min(vals) < lo_min:
        raise ConfigError(
            f"grid.{name}: values must respect the domain margin {name} >= {lo_min}"
        )
    return vals


class RunConfig:
    """Merged configuration of one CLI run."""

    def __init__(self, data: dict):
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")
        self.data = data
        if "system" not in data:
            raise ConfigError("missing required field 'system'")
        if "alpha" not in data:
            raise ConfigError("missing required field 'alpha'")
        try:
            self.alpha = float(data["alpha"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"alpha: {exc}") from exc
        if not 0.0 < self.alpha <= 1.0:
            raise ConfigError(f"alpha must satisfy 0 < alpha <= 1, got {self.alpha}")
        self.system = str(data["system"])
        self.params = dict(data.get("params", {}))
        self.grid = dict(data.get("grid", {}))
        self.tolerances = {**DEFAULT_TOLERANCES, **data.get("tolerances", {})}
        self.out = data.get("out", "-")
        self.fmt = data.get("format", "csv")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', got {self.fmt!r}")
        self.suite = data.get("suite", "all")
        self.perturbed = bool(data.get("perturbed", False))
        self.initial = data.get("initial", "steady-seed")
        self.transformation = data.get("transformation", "identity")
        qcfg = data.get("quadrature", {})
        try:
            self.quadrature = cauchy.QuadratureConfig(
                abs_tol=float(qcfg.get("abs_tol", 1e-10)),
                rel_tol=float(qcfg.get("rel_tol", 1e-9)),
                truncation_threshold=float(qcfg.get("truncation_threshold", 1e-16)),
                max_subdivisions=int(qcfg.get("max_subdivisions", 2000)),
            )
        except (ParameterError, TypeError, ValueError) as exc:
            raise ConfigError(f"quadrature: {exc}") from exc

    def axis(self, name: str, default=None) -> list[float]:
        spec = self.grid.get(name, default)
        if spec is None:
            raise ConfigError(f"grid is missing required axis {name!r}")
        lo_min = T_MIN_DEFAULT if name == "t" else X_MIN_DEFAULT
        return _axis_values(name, spec, lo_min)

    def spec(self) -> systems.SystemSpec:
        try:
            return systems.from_config(
                {"system": self.system, "params": self.params, "alpha": self.alpha}
            )
        except ParameterError as exc:
            raise ConfigError(str(exc)) from exc

    def kernel(self) -> KernelMatrix:
        p = self.params
        try:
            if self.system == "example31":
                return kernel_example31(p["a"], p["b"], self.alpha)
            if self.system == "eq3":
                return kernel_eq3(p["c"], p["m"], p["n"], self.alpha)
            if self.system == "eq2":
                if float(p.get("k", -1.0)) != -1.0:
                    raise ConfigError("kernels exist only for the k = -1 member of eq2")
                return kernel_eq3(p["c"], p["m"], p["n"], self.alpha)
            if self.system == "transformed33":
                td = systems.example33_transformation(
                    p["a1"], p["a2"], p["b1"], p["b2"], p["c"], p["m"], p["n"]
                )
                return pushforward_kernel(
                    kernel_eq3(p["c"], p["m"], p["n"], self.alpha), td
                )
        except KeyError as exc:
            raise ConfigError(f"system {self.system!r} is missing parameter {exc}") from exc
        except ParameterError as exc:
            raise ConfigError(str(exc)) from exc
        raise ConfigError(f"no kernel for system {self.system!r}")


def _parse_kv(pairs: Iterable[str]) -> dict:
    out = {}
    for raw in pairs:
        if "=" not in raw:
            raise ConfigError(f"expected key=value, got {raw!r}")
        key, val = raw.split("=", 1)
        try:
            out[key.strip()] = float(val)
        except ValueError as exc:
            raise ConfigError(f"parameter {key!r}: {exc}") from exc
    return out


def _parse_grid_flag(entries: Iterable[str]) -> dict:
    grid = {}
    for raw in entries:
        if "=" not in raw:
            raise ConfigError(f"--grid expects axis=spec, got {raw!r}")
        name, spec = raw.split("=", 1)
        name = name.strip()
        if ":" in spec:
            parts = spec.split(":")
            if len(parts) != 3:
                raise ConfigError(f"--grid {name}: range form is lo:hi:count")
            grid[name] = [float(parts[0]), float(parts[1]), int(parts[2])]
        else:
            grid[name] = {"points": [float(p) for p in spec.split(",") if p]}
    return grid


def load_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.preset:
        if args.preset not in PRESETS:
            raise ConfigError(
                f"unknown preset {args.preset!r}; expected one of {sorted(PRESETS)}"
            )
        data.update(json.loads(json.dumps(PRESETS[args.preset])))
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                file_data = json.load(fh)
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {args.config}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"malformed JSON in {args.config} at line {exc.lineno}, column {exc.colno}: "
                f"{exc.msg}"
            ) from exc
        if not isinstance(file_data, dict):
            raise ConfigError("config root must be a JSON object")
        data.update(file_data)
    if args.system:
        data["system"] = args.system
    if args.alpha is not None:
        data["alpha"] = args.alpha
    if args.param:
        data.setdefault("params", {}).update(_parse_kv(args.param))
    if args.grid:
        data.setdefault("grid", {}).update(_parse_grid_flag(args.grid))
    if args.out:
        data["out"] = args.out
    if args.format:
        data["format"] = args.format
    if getattr(args, "suite", None):
        data["suite"] = args.suite
    if getattr(args, "perturbed", False):
        data["perturbed"] = True
    if getattr(args, "initial", None):
        data["initial"] = args.initial
    if getattr(args, "transformation", None):
        data["transformation"] = args.transformation
    if not data:
        raise ConfigError("no configuration given; use --preset and/or --config")
    return RunConfig(data)


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _write_table(cfg: RunConfig, header: list[str], rows: list[list[float]]) -> None:
    if cfg.fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        payload = {"columns": header, "rows": [[_fmt(v) for v in row] for row in rows]}
        text = json.dumps(payload, indent=2) + "\n"
    if cfg.out == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_eval_kernel(cfg: RunConfig) -> int:
    kernel = cfg.kernel()
    ts = cfg.axis("t")
    xs = cfg.axis("x")
    ys = cfg.axis("y")
    points = [(t, x, y) for t in ts for x in xs for y in ys]

    def row(point):
        t, x, y = point
        mat = kernel.matrix(t, x, y)
        return [t, x, y, mat[0, 0], mat[0, 1], mat[1, 0], mat[1, 1]]

    rows = _map_ordered(row, points)
    _write_table(cfg, ["t", "x", "y", "A", "B", "C", "D"], rows)
    return 0


def cmd_solve(cfg: RunConfig) -> int:
    kernel = cfg.kernel()
    if isinstance(cfg.initial, dict):
        path = cfg.initial.get("tabulated")
        if not path:
            raise ConfigError("initial: object form must be {'tabulated': <csv path>}")
        try:
            table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        except OSError as exc:
            raise ConfigError(f"initial data file: {exc}") from exc
        if table.shape[1] != 3:
            raise ConfigError("tabulated initial data needs columns y,u,v")
        f = cauchy.tabulated_initial_data(table[:, 0], table[:, 1], table[:, 2])
    else:
        try:
            f = cauchy.initial_data(str(cfg.initial), kernel)
        except ParameterError as exc:
            raise ConfigError(str(exc)) from exc
    xs = cfg.axis("x")
    ts = cfg.axis("t")
    points = [(x, t) for x in xs for t in ts]

    def row(point):
        x, t = point
        u, v = cauchy.solve_cauchy(kernel, f, x, t, cfg.quadrature)
        return [x, t, u, v]

    rows = _map_ordered(row, points)
    _write_table(cfg, ["x", "t", "u", "v"], rows)
    return 0


def _transformation(cfg: RunConfig) -> systems.TransformationData:
    name = cfg.transformation
    if name == "identity":
        return systems.identity_transformation()
    if name == "power":
        q = cfg.params.get("q")
        if q is None:
            raise ConfigError("power transformation needs params.q")
        return systems.power_transformation(q, cfg.alpha)
    if name == "example33":
        p = cfg.params
        try:
            return systems.example33_transformation(
                p["a1"], p["a2"], p["b1"], p["b2"], p["c"], p["m"], p["n"]
            )
        except KeyError as exc:
            raise ConfigError(f"example33 transformation missing parameter {exc}") from exc
    raise ConfigError(
        f"unknown transformation {name!r}; expected identity, power or example33"
    )


def cmd_transform(cfg: RunConfig) -> int:
    spec = cfg.spec()
    td = _transformation(cfg)
    transformed = systems.transform_coefficients(spec, td)
    xs = cfg.axis("x")
    ts = cfg.axis("t")
    points = [(x, t) for x in xs for t in ts]

    def row(point):
        x, t = point
        h, f1, f2, g1, g2 = transformed.coefficients(x, t)
        return [x, t, h, f1, f2, g1, g2]

    rows = _map_ordered(row, points)
    _write_table(cfg, ["x", "t", "h", "f1", "f2", "g1", "g2"], rows)
    return 0


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------


def _seeds_and_orbits(cfg: RunConfig) -> tuple[list[SolutionPair], dict]:
    p = cfg.params
    if cfg.system == "example31":
        seeds = [
            symmetry.steady_seed_example31(j, p["a"], p["b"], cfg.alpha) for j in (1, 2)
        ]
        orbits = [
            symmetry.invariant_solution_example31(j, 0.3, p["a"], p["b"], cfg.alpha)
            for j in (1, 2)
        ]
        pars = {"a": p["a"], "b": p["b"]}
        return seeds + orbits, pars
    if cfg.system in ("eq3", "eq2"):
        seeds = [
            symmetry.steady_seed_eq3(j, p["c"], p["m"], p["n"], cfg.alpha) for j in (1, 2)
        ]
        orbits = [
            symmetry.invariant_solution_eq3(j, 0.2, p["c"], p["m"], p["n"], cfg.alpha)
            for j in (1, 2)
        ]
        pars = {"c": p["c"], "m": p["m"], "n": p["n"]}
        return seeds + orbits, pars
    raise ConfigError(f"verification suites support example31/eq3, got {cfg.system!r}")


def _perturb(sol: SolutionPair) -> SolutionPair:
    extra_x = {
        "u_x": lambda x, t: sol.partials["u_x"](x, t) + 2e-2 * x,
        "u_xx": lambda x, t: sol.partials["u_xx"](x, t) + 2e-2,
    }
    return SolutionPair(
        u=lambda x, t: sol.u(x, t) + 1e-2 * x * x,
        v=sol.v,
        partials={**sol.partials, **extra_x},
        label=sol.label + "+perturbation",
    )


def _suite_residual(cfg: RunConfig, checks: list) -> None:
    tol = cfg.tolerances["residual"]
    kernel = cfg.kernel()
    spec = kernel.system()
    xs = cfg.axis("x", [0.5, 2.0, 5])
    ts = cfg.axis("t", [0.3, 2.0, 5])
    ys = cfg.axis("y", {"points": [0.5, 1.0, 2.0]})
    for y in ys:
        for col in (1, 2):
            sol = kernel.column_solution(col, y)
            devs = _map_ordered(
                lambda pt: max(
                    abs(r) for r in scaled_residual(spec, sol, EvalPoint(pt[0], pt[1]))
                ),
                [(x, t) for x in xs for t in ts],
            )
            checks.append((f"residual/kernel-col{col}-y{_fmt(y)}", max(devs), tol))
    seeds, _ = _seeds_and_orbits(cfg)
    for sol in seeds:
        dev = max(
            max(abs(r) for r in scaled_residual(spec, sol, EvalPoint(x, t)))
            for x in xs
            for t in ts
        )
        checks.append((f"residual/{sol.label}", dev, tol))


def _suite_laplace(cfg: RunConfig, checks: list) -> None:
    tol = cfg.tolerances["laplace"]
    kernel = cfg.kernel()
    p = cfg.params
    if cfg.system == "example31":
        w = math.sqrt(p["a"] * p["b"])
        pw = 1.0 + w
        steady = lambda y: np.array(  # noqa: E731
            [[1.0, y**pw], [w / p["a"], -(w / p["a"]) * y**pw]]
        )
        weight = "exp"
    else:
        w = math.sqrt(p["m"] * p["n"])
        pw = 1.0 + w - p["c"]
        steady = lambda y: np.array(  # noqa: E731
            [[1.0, -(w / p["n"]) * y**pw], [w / p["m"], y**pw]]
        )
        weight = "exp-square"
    lams = [0.1, 0.5, 1.5, 3.0]
    pts = [(0.7, 0.4), (1.2, 0.9), (1.8, 1.6)]
    samples = [(lam, x, t) for lam in lams for (x, t) in pts]

    def dev(sample):
        lam, x, t = sample
        return cauchy.verify_laplace_identity(
            kernel, steady, weight, lam, x, t, cfg.quadrature
        )

    devs = _map_ordered(dev, samples)
    checks.append((f"laplace/{len(samples)}-samples", max(devs), tol))


def _suite_orbit(cfg: RunConfig, checks: list) -> None:
    tol = cfg.tolerances["orbit"]
    ctol = cfg.tolerances["composition"]
    kernel = cfg.kernel()
    spec = kernel.system()
    p = cfg.params
    xs = cfg.axis("x", [0.5, 2.0, 4])
    ts = cfg.axis("t", [0.3, 2.0, 4])
    if cfg.system == "example31":
        flow = lambda sol, eps: symmetry.flow_v3_example31(  # noqa: E731
            sol, eps, p["a"], p["b"], cfg.alpha
        )
        seeds = [symmetry.steady_seed_example31(j, p["a"], p["b"], cfg.alpha) for j in (1, 2)]
    else:
        flow = lambda sol, eps: symmetry.flow_v3_eq3(  # noqa: E731
            sol, eps, p["c"], p["m"], p["n"], cfg.alpha
        )
        seeds = [symmetry.steady_seed_eq3(j, p["c"], p["m"], p["n"], cfg.alpha) for j in (1, 2)]
    for j, seed in enumerate(seeds, start=1):
        for eps in (0.1, 0.3):
            sol = flow(seed, eps)
            dev = max(
                max(abs(r) for r in scaled_residual(spec, sol, EvalPoint(x, t)))
                for x in xs
                for t in ts
            )
            checks.append((f"orbit/seed{j}-eps{_fmt(eps)}", dev, tol))
        ident = flow(seed, 0.0)
        dev = 0.0 if ident is seed else 1.0
        checks.append((f"orbit/seed{j}-eps0-identity", dev, 0.0))
        two = flow(flow(seed, 0.1), 0.15)
        one = flow(seed, 0.25)
        dev = max(
            max(
                abs(two.u(x, t) - one.u(x, t)),
                abs(two.v(x, t) - one.v(x, t)),
            )
            for x in xs
            for t in ts
        )
        checks.append((f"orbit/seed{j}-composition", dev, ctol))


def _suite_conservation(cfg: RunConfig, checks: list) -> None:
    tol = cfg.tolerances["conservation"]
    sols, pars = _seeds_and_orbits(cfg)
    if cfg.perturbed:
        sols = [_perturb(sols[1])]
    system_id = "example31" if cfg.system == "example31" else "eq3"
    rng = random.Random(20240901)
    xs = cfg.axis("x", [0.5, 2.0, 4])
    ts = cfg.axis("t", [0.3, 2.0, 4])
    for case in range(1, 6):
        kvals = [rng.uniform(-1.0, 1.0) for _ in range(4)]
        cv = conservation.conserved_vector(system_id, case, kvals, pars, cfg.alpha)
        dev = max(
            abs(conservation.divergence_scaled(cv, sol, EvalPoint(x, t)))
            for sol in sols
            for x in xs
            for t in ts
        )
        checks.append((f"conservation/case{case}", dev, tol))


def _suite_pushforward(cfg: RunConfig, checks: list) -> None:
    tol = cfg.tolerances["pushforward"]
    kernel = cfg.kernel()
    ident = systems.identity_transformation()
    same = pushforward_kernel(kernel, ident)
    pts = [(0.6, 0.8, 0.9), (1.4, 1.2, 0.5), (2.0, 0.4, 1.7)]
    dev = max(
        float(np.max(np.abs(kernel.matrix(t, x, y) - same.matrix(t, x, y))))
        / max(1e-300, float(np.max(np.abs(kernel.matrix(t, x, y)))))
        for (x, t, y) in pts
    )
    checks.append(("pushforward/identity", dev, cfg.tolerances["identity"]))

    if cfg.system in ("eq3", "eq2"):
        p = cfg.params
        ex33 = {"a1": 1.0, "a2": 0.5, "b1": 2.0, "b2": -1.0, "c": p["c"], "m": p["m"], "n": p["n"]}
        target, td = systems.make_transformed_example33(alpha=cfg.alpha, **ex33)
        spec = kernel.system()
        dev = max(
            abs(val)
            for x in (0.6, 1.1, 1.9)
            for t in (0.4, 1.5)
            for val in systems.constraint_residual(spec, td, EvalPoint(x, t))
        )
        checks.append(("pushforward/example33-constraints", dev, cfg.tolerances["constraint"]))
        pushed = pushforward_kernel(kernel, td)
        dev = max(
            max(
                abs(r)
                for r in scaled_residual(
                    target, pushed.column_solution(col, y), EvalPoint(x, t)
                )
            )
            for col in (1, 2)
            for y in (0.5, 1.0, 2.0)
            for x in (0.6, 1.1, 1.9)
            for t in (0.4, 1.0, 1.8)
        )
        checks.append(("pushforward/example33-residual", dev, tol))
    else:
        # Power change of variables: x^q diffusion reduced to unit diffusion.
        q = 1.0
        p = cfg.params
        gen = systems.make_generalequation2(p["a"], p["b"], q, cfg.alpha)
        td = systems.power_transformation(q, cfg.alpha)
        got = systems.transform_coefficients(gen, td)
        want = systems.make_power_reduced(p["a"], p["b"], q, cfg.alpha)
        dev = 0.0
        for x in (0.6, 1.1, 1.9):
            for t in (0.4, 1.5):
                for gv, wv in zip(got.coefficients(x, t), want.coefficients(x, t)):
                    scale = max(1.0, abs(wv))
                    dev = max(dev, abs(gv - wv) / scale)
        checks.append(("pushforward/power-coefficients", dev, cfg.tolerances["transform"]))


SUITES = {
    "residual": _suite_residual,
    "laplace": _suite_laplace,
    "group-orbit": _suite_orbit,
    "conservation": _suite_conservation,
    "pushforward": _suite_pushforward,
}


def cmd_verify(cfg: RunConfig) -> int:
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    for name in names:
        if name not in SUITES:
            raise ConfigError(
                f"unknown suite {name!r}; expected one of {sorted(SUITES)} or 'all'"
            )
    checks: list[tuple[str, float, float]] = []
    for name in names:
        SUITES[name](cfg, checks)
    report = {
        "suite": cfg.suite,
        "system": cfg.system,
        "checks": [
            {
                "name": name,
                "max_deviation": _fmt(dev),
                "tolerance": _fmt(tol),
                "pass": bool(dev <= tol),
            }
            for name, dev, tol in checks
        ],
        "overall": "pass" if all(dev <= tol for _, dev, tol in checks) else "fail",
    }
    text = json.dumps(report, indent=2) + "\n"
    if cfg.out == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if report["overall"] == "pass" else 1


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confract",
        description="Evaluate and verify kernels, flows, transformations and "
        "conservation laws of conformable time-fractional parabolic systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("eval-kernel", "evaluate a fundamental-solution kernel on a (t, x, y) grid"),
        ("solve", "solve the Cauchy problem by kernel convolution on an (x, t) grid"),
        ("verify", "run verification suites and emit a JSON report"),
        ("transform", "emit transformed coefficients on an (x, t) grid"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--preset", help=f"built-in preset: {', '.join(sorted(PRESETS))}")
        p.add_argument("--system", help="system name (example31, eq2, eq3, transformed33)")
        p.add_argument("--alpha", type=float, help="fractional order in (0, 1]")
        p.add_argument(
            "--param", action="append", default=[], metavar="K=V", help="system parameter"
        )
        p.add_argument(
            "--grid",
            action="append",
            default=[],
            metavar="AXIS=LO:HI:N | AXIS=V1,V2,...",
            help="grid axis specification",
        )
        p.add_argument("--out", help="output path ('-' for stdout)")
        p.add_argument("--format", choices=["csv", "json"], help="output format")
        if name == "verify":
            p.add_argument(
                "--suite",
                help="residual | laplace | conservation | group-orbit | pushforward | all",
            )
            p.add_argument(
                "--perturbed",
                action="store_true",
                help="use a deliberately broken solution (negative control)",
            )
        if name == "solve":
            p.add_argument(
                "--initial",
                help="steady-seed | gaussian-bump | indicator-smooth",
            )
        if name == "transform":
            p.add_argument(
                "--transformation", help="identity | power | example33"
            )
    return parser


_COMMANDS = {
    "eval-kernel": cmd_eval_kernel,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "transform": cmd_transform,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        return _COMMANDS[args.command](cfg)
    except (ConfigError, ParameterError) as exc:
        print(f"confract: config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
