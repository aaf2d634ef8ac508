"""Command-line front end.

``bohemian run`` executes one task on a family (or on a Toeplitz symbol) and
writes its outputs to a directory; ``bohemian merge`` combines shard
directories into exactly the outputs of the unsharded run.

Every task goes through the same three steps: compute a partial result on
an index range, combine partials in shard order, write. ``run`` and
``merge`` share the write step, which is what makes sharded and unsharded
outputs byte-identical. Timings go to ``timings.log`` and stderr only, so
``summary.json`` is reproducible.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from . import bounds as bd
from . import charpoly as cp
from . import family as fam
from . import render as rd
from . import toeplitz as tz
from .eigen import eigenvalues_batch, inverse_corner_batch
from .family import FamilySpec, Kind
from .scalars import CyclotomicScalar, Ring

TASKS = ("size", "eigs", "density", "census", "stability", "bounds-check",
         "schmidt-spitzer", "convergence", "rayleigh-density", "edge-study")
FAMILY_TASKS = {"size", "eigs", "density", "census", "stability", "bounds-check",
                "rayleigh-density", "edge-study"}
UNSHARDABLE = {"size", "convergence", "edge-study"}
SAMPLEABLE = {"eigs", "density", "bounds-check", "rayleigh-density"}
BATCH = 1 << 14


class ConfigError(ValueError):
    """Invalid or inconsistent job configuration."""


@dataclass(frozen=True)
class JobConfig:
    task: str
    family: dict | None = None
    seed: int = 0
    count: int | None = None
    window: tuple | None = None
    grid: tuple = (800, 800)
    palette: str = "greyscale"
    rho: float | None = None
    phi_count: int = 101
    t: tuple | None = None
    m_range: tuple | None = None
    region: str | None = None
    region_param: float | None = None
    tol: float = bd.DEFAULT_TOL
    fold_conjugate: bool = False
    index_column: bool = False
    budget: int = cp.DEFAULT_BUDGET
    shard: tuple = (0, 1)

    @property
    def spec(self) -> FamilySpec:
        return FamilySpec.from_dict(self.family)

    @property
    def mode(self) -> str:
        return "exhaustive" if self.count is None else "sampled"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["t"] = None if self.t is None else [[z.real, z.imag] for z in self.t]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> JobConfig:
        d = dict(d)
        if d.get("t") is not None:
            d["t"] = tuple(complex(a, b) for a, b in d["t"])
        for k in ("window", "grid", "m_range", "shard"):
            if d.get(k) is not None:
                d[k] = tuple(d[k])
        return cls(**d)


# -- argument parsing --------------------------------------------------------------

def _parse_complex_list(text: str) -> tuple[complex, ...]:
    try:
        return tuple(complex(x.strip().replace(" ", "")) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex list {text!r}") from exc


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        w, h = (int(x) for x in text.lower().split("x"))
    except ValueError as exc:
        raise ConfigError(f"grid must look like 800x800, got {text!r}") from exc
    if w < 1 or h < 1:
        raise ConfigError("grid dimensions must be positive")
    return w, h


def _parse_shard(text: str) -> tuple[int, int]:
    try:
        i, n = (int(x) for x in text.split("/"))
    except ValueError as exc:
        raise ConfigError(f"shard must look like i/n, got {text!r}") from exc
    if not 0 <= i < n:
        raise ConfigError("shard index must satisfy 0 <= i < n")
    return i, n


def _parse_range(text: str) -> tuple[int, ...]:
    """``"2:11"`` (half-open) or an explicit list ``"2,3,5"``."""
    if ":" in text:
        lo, hi = (int(x) for x in text.split(":"))
        return tuple(range(lo, hi))
    return tuple(int(x) for x in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bohemian",
                                description="Bohemian matrix eigenvalue experiments.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run one task")
    r.add_argument("--task", required=True, choices=TASKS)
    r.add_argument("--family", type=Path, help="family spec JSON file")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--count", type=int, help="sample this many matrices (default: exhaustive)")
    r.add_argument("--window", help="re_min,re_max,im_min,im_max")
    r.add_argument("--grid", default="800x800", help="WIDTHxHEIGHT")
    r.add_argument("--palette", default="greyscale",
                   choices=sorted(rd.PALETTES) + [k + "-like" for k in sorted(rd.PALETTES)])
    r.add_argument("--rho", type=float)
    r.add_argument("--phi-count", type=int, default=101)
    r.add_argument("--t", help="comma-separated Toeplitz entries t_1,t_2,... (Python complex syntax)")
    r.add_argument("--m-range", help="dimensions for convergence, e.g. 2:11")
    r.add_argument("--region", choices=["strip", "square", "diamond", "radius"])
    r.add_argument("--region-param", type=float,
                   help="half-width, l1 radius or disk radius overriding the default region")
    r.add_argument("--tol", type=float, default=bd.DEFAULT_TOL)
    r.add_argument("--fold-conjugate", action="store_true")
    r.add_argument("--index-column", action="store_true",
                   help="prefix each eigenvalue line with its matrix index")
    r.add_argument("--png", action="store_true", help="also write a PNG (needs Pillow)")
    r.add_argument("--budget", type=int, default=cp.DEFAULT_BUDGET)
    r.add_argument("--shard", default="0/1", help="i/n")
    r.add_argument("--workers", type=int, default=1)
    r.add_argument("--out", type=Path, required=True)

    m = sub.add_parser("merge", help="combine shard output directories")
    m.add_argument("parts", nargs="+", type=Path)
    m.add_argument("--out", type=Path, required=True)
    m.add_argument("--png", action="store_true")
    return p


def config_from_args(a: argparse.Namespace) -> JobConfig:
    family = None
    if a.family is not None:
        try:
            family = FamilySpec.loads(a.family.read_text()).to_dict()
        except (OSError, KeyError, ValueError, TypeError) as exc:
            raise ConfigError(f"bad family file {a.family}: {exc}") from exc
    cfg = JobConfig(
        task=a.task, family=family, seed=a.seed, count=a.count,
        window=rd.Window.parse(a.window).as_tuple() if a.window else None,
        grid=_parse_grid(a.grid), palette=rd.get_palette(a.palette).name,
        rho=a.rho, phi_count=a.phi_count,
        t=_parse_complex_list(a.t) if a.t else None,
        m_range=_parse_range(a.m_range) if a.m_range else None,
        region=a.region, region_param=a.region_param, tol=a.tol,
        fold_conjugate=a.fold_conjugate, index_column=a.index_column,
        budget=a.budget, shard=_parse_shard(a.shard))
    validate(cfg)
    return cfg


def validate(cfg: JobConfig) -> None:
    if cfg.task in FAMILY_TASKS and cfg.family is None:
        raise ConfigError(f"task {cfg.task} needs --family")
    if cfg.task in {"schmidt-spitzer", "convergence", "edge-study"} and not cfg.t:
        raise ConfigError(f"task {cfg.task} needs --t")
    if cfg.task == "convergence" and not cfg.m_range:
        raise ConfigError("task convergence needs --m-range")
    if cfg.count is not None:
        if cfg.task not in SAMPLEABLE:
            raise ConfigError(f"task {cfg.task} is exhaustive only; drop --count")
        if cfg.count < 0:
            raise ConfigError("--count must be nonnegative")
    if cfg.task in UNSHARDABLE and cfg.shard != (0, 1):
        raise ConfigError(f"task {cfg.task} cannot be sharded")
    if cfg.phi_count < 2:
        raise ConfigError("--phi-count must be at least 2")
    if cfg.task in FAMILY_TASKS and cfg.mode == "exhaustive" and cfg.task != "size":
        size = cfg.spec.size
        if size > cfg.budget:
            raise cp.BudgetExceededError(
                f"family size {size} exceeds budget {cfg.budget}; raise --budget or use --count")


# -- index ranges ----------------------------------------------------------------------

def _total(cfg: JobConfig) -> int:
    if cfg.task == "schmidt-spitzer":
        return len(tz.phi_grid(cfg.phi_count))
    return cfg.spec.size if cfg.mode == "exhaustive" else cfg.count


def _split(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    n = hi - lo
    return [(lo + n * k // parts, lo + n * (k + 1) // parts) for k in range(parts)]


def _digits(cfg: JobConfig, spec: FamilySpec, lo: int, hi: int) -> np.ndarray:
    if cfg.mode == "exhaustive":
        return fam.digits_from_indices(spec, np.arange(lo, hi, dtype=np.int64))
    return fam.sample_digits(spec, cfg.seed, hi - lo, lo)


def _batches(cfg: JobConfig, lo: int, hi: int):
    spec = cfg.spec
    for a in range(lo, hi, BATCH):
        b = min(a + BATCH, hi)
        yield a, b, fam.complex_batch(spec, _digits(cfg, spec, a, b))


def _window(cfg: JobConfig) -> rd.Window:
    if cfg.window is not None:
        return rd.Window(*cfg.window)
    if cfg.task == "rayleigh-density":
        return rd.Window(-2.0, 2.0, -2.0, 2.0)
    spec = cfg.spec
    R = spec.m * spec.bound  # infinity-norm bound on the spectral radius
    return rd.Window(-R, R, 0.0 if cfg.fold_conjugate else -R, R)


def _region(cfg: JobConfig) -> bd.RegionBound:
    spec = cfg.spec
    name = cfg.region
    if name is None:
        name = {Kind.SYMMETRIC: "strip", Kind.SKEW_SYMMETRIC_TRIDIAGONAL: "square",
                Kind.UNIT_UH_ZERO_DIAG: "radius", Kind.UH_TOEPLITZ_ZERO_DIAG: "radius"
                }.get(spec.kind)
        if name is None:
            raise ConfigError(f"no default region for {spec.kind.value}; pass --region")
    x = cfg.region_param
    if name == "strip":
        return bd.strip_bound(spec.m)
    if name == "square":
        return bd.square_bound() if x is None else bd.square_bound(x)
    if name == "diamond":
        return bd.diamond_bound() if x is None else bd.diamond_bound(x)
    if x is not None:
        return bd.RegionBound(bd.RegionKind.RADIUS, (float(x),))
    return bd.hessenberg_radius(spec.population.bound)


# -- tasks: compute a partial on [lo, hi) -------------------------------------------

def _compute(cfg: JobConfig, lo: int, hi: int):
    task = cfg.task
    if task == "eigs":
        rows = []
        for a, b, stack in _batches(cfg, lo, hi):
            ev = eigenvalues_batch(stack)
            idx = np.repeat(np.arange(a, b), ev.shape[1]) if cfg.index_column else None
            rows.append(_eig_lines(ev.ravel(), idx))
        return {"lines": [ln for chunk in rows for ln in chunk], "matrices": hi - lo}
    if task in ("density", "rayleigh-density"):
        w, h = cfg.grid
        splat = task == "rayleigh-density"
        grid = rd.DensityGrid(w, h, _window(cfg), np.float64 if splat else np.int64)
        singular = 0
        for _, _, stack in _batches(cfg, lo, hi):
            if splat:
                vals, ok = inverse_corner_batch(stack)
                singular += int((~ok).sum())
                rd.accumulate_splat(grid, vals[ok])
            else:
                pts = eigenvalues_batch(stack).ravel()
                if cfg.fold_conjugate:
                    pts = rd.fold_conjugate(pts)
                rd.accumulate(grid, pts)
        return {"grid": grid, "singular": singular, "matrices": hi - lo}
    if task in ("census", "stability"):
        return cp.census(cfg.spec, cfg.budget, start=lo, stop=hi)
    if task == "bounds-check":
        region = _region(cfg)
        res = {"matrices": 0, "eigenvalues": 0, "violations": 0, "worst_margin": math.inf}
        for a, b, stack in _batches(cfg, lo, hi):
            mg = region.margin(eigenvalues_batch(stack))
            res["matrices"] += b - a
            res["eigenvalues"] += int(mg.size)
            res["violations"] += int((mg < -cfg.tol).sum())
            res["worst_margin"] = min(res["worst_margin"], float(mg.min()))
        return res
    if task == "schmidt-spitzer":
        curve = tz.schmidt_spitzer_points(cfg.t, cfg.rho, cfg.phi_count)
        grid = curve.phi_grid
        keep = set(grid[lo:hi].tolist())
        sel = np.array([p in keep for p in curve.cand_phi.tolist()], dtype=bool)
        rows = [(float(p), float(z.real), float(z.imag), bool(a)) for p, z, a in
                zip(curve.cand_phi[sel], curve.cand_lambda[sel], curve.cand_accepted[sel])]
        return {"rows": rows, "rho": curve.rho,
                "failed_phis": [p for p in curve.failed_phis if p in keep]}
    raise AssertionError(task)


def _eig_lines(vals: np.ndarray, idx) -> list[str]:
    re = vals.real.tolist()
    im = vals.imag.tolist()
    if idx is None:
        return [f"{x!r},{y!r}" for x, y in zip(re, im)]
    return [f"{k},{x!r},{y!r}" for k, x, y in zip(idx.tolist(), re, im)]


def _combine(cfg: JobConfig, parts: list):
    task = cfg.task
    if task == "eigs":
        return {"lines": [ln for p in parts for ln in p["lines"]],
                "matrices": sum(p["matrices"] for p in parts)}
    if task in ("density", "rayleigh-density"):
        return {"grid": rd.merge(*(p["grid"] for p in parts)),
                "singular": sum(p["singular"] for p in parts),
                "matrices": sum(p["matrices"] for p in parts)}
    if task in ("census", "stability"):
        out = parts[0]
        for p in parts[1:]:
            out = out.merge(p)
        return out
    if task == "bounds-check":
        return {"matrices": sum(p["matrices"] for p in parts),
                "eigenvalues": sum(p["eigenvalues"] for p in parts),
                "violations": sum(p["violations"] for p in parts),
                "worst_margin": min(p["worst_margin"] for p in parts)}
    if task == "schmidt-spitzer":
        return {"rows": [r for p in parts for r in p["rows"]], "rho": parts[0]["rho"],
                "failed_phis": [x for p in parts for x in p["failed_phis"]]}
    raise AssertionError(task)


def _compute_job(cfg: JobConfig, lo: int, hi: int, workers: int):
    ranges = [r for r in _split(lo, hi, max(1, workers)) if r[1] > r[0]] or [(lo, hi)]
    if workers <= 1 or len(ranges) == 1:
        return _combine(cfg, [_compute(cfg, a, b) for a, b in ranges])
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_compute, [cfg] * len(ranges),
                            [a for a, _ in ranges], [b for _, b in ranges]))
    return _combine(cfg, parts)


# -- writing and loading outputs ----------------------------------------------------

def _dump_json(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _write(cfg: JobConfig, result, out: Path, png: bool = False) -> dict:
    """Write task outputs plus ``summary.json``; returns the summary."""
    out.mkdir(parents=True, exist_ok=True)
    task = cfg.task
    summary: dict = {"config": cfg.to_dict(), "task": task}
    if task == "size":
        summary["size"] = result
    elif task == "eigs":
        text = "\n".join(result["lines"])
        (out / "eigenvalues.csv").write_text(text + "\n" if text else "")
        summary.update(matrices=result["matrices"], eigenvalues=len(result["lines"]))
    elif task in ("density", "rayleigh-density"):
        g = result["grid"]
        rd.dump_grid(g, out / "grid.bin")
        idx = rd.equalize(g)
        rd.write_ppm(idx, cfg.palette, out / "density.ppm")
        if png:
            rd.write_png(idx, cfg.palette, out / "density.png")
        summary.update(matrices=result["matrices"], total_in=g.total_in,
                       total_out=g.total_out, nonzero_pixels=int((g.counts > 0).sum()),
                       window=list(g.window.as_tuple()), grid=[g.width, g.height])
        if task == "rayleigh-density":
            summary["singular"] = result["singular"]
    elif task in ("census", "stability"):
        if task == "stability":
            result = cp.add_stability(result)
        cp.export_json(result, out / "census.json", cfg.spec)
        summary.update(result.summary())
    elif task == "bounds-check":
        summary.update(result)
        summary["worst_margin"] = (None if math.isinf(result["worst_margin"])
                                   else result["worst_margin"])
        summary["region"] = _region(cfg).to_dict()
        summary["mode"] = cfg.mode
    elif task == "schmidt-spitzer":
        with open(out / "curve.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["phi", "re", "im", "accepted"])
            for p, x, y, a in result["rows"]:
                w.writerow([repr(p), repr(x), repr(y), int(a)])
        acc = sum(1 for r in result["rows"] if r[3])
        summary.update(points=acc, rejected=len(result["rows"]) - acc,
                       rho=result["rho"], failed_phis=result["failed_phis"])
    elif task == "convergence":
        with open(out / "convergence.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["m", "distance"])
            for m, d in result:
                w.writerow([m, repr(float(d))])
        summary["distances"] = [[m, float(d)] for m, d in result]
    elif task == "edge-study":
        with open(out / "edge.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["element", "re", "im"])
            for key, roots in result.items():
                label = key if isinstance(key, str) else str(key)
                for z in roots:
                    w.writerow([label, repr(float(z.real)), repr(float(z.imag))])
        summary["elements"] = len(result) - 1
    _dump_json(out / "summary.json", summary)
    return summary


def _load(cfg: JobConfig, part: Path, summary: dict):
    task = cfg.task
    if task == "eigs":
        text = (part / "eigenvalues.csv").read_text()
        return {"lines": text.splitlines(), "matrices": summary["matrices"]}
    if task in ("density", "rayleigh-density"):
        return {"grid": rd.load_grid(part / "grid.bin"),
                "singular": summary.get("singular", 0), "matrices": summary["matrices"]}
    if task in ("census", "stability"):
        res = cp.import_json(part / "census.json")
        return cp.CensusResult(res.polys, res.total_matrices)
    if task == "bounds-check":
        wm = summary["worst_margin"]
        return {k: summary[k] for k in ("matrices", "eigenvalues", "violations")} | \
            {"worst_margin": math.inf if wm is None else wm}
    if task == "schmidt-spitzer":
        with open(part / "curve.csv", newline="") as fh:
            rows = [(float(p), float(x), float(y), a == "1")
                    for p, x, y, a in list(csv.reader(fh))[1:]]
        return {"rows": rows, "rho": summary["rho"], "failed_phis": summary["failed_phis"]}
    raise ConfigError(f"task {task} outputs cannot be merged")


# -- entry points -------------------------------------------------------------------------

def _to_scalar(z: complex, ring: Ring) -> CyclotomicScalar:
    """Exact ring element for a complex literal; raises on non-members."""
    if ring is Ring.EISEN:
        b = z.imag / (math.sqrt(3) / 2)
        a = z.real + b / 2
    else:
        a, b = z.real, z.imag
    ra, rb = round(a), round(b)
    if abs(a - ra) > 1e-9 or abs(b - rb) > 1e-9 or (ring is Ring.INT and rb != 0):
        raise ConfigError(f"{z} is not an element of the {ring.value} ring")
    return CyclotomicScalar(int(ra), int(rb), ring)


def run(cfg: JobConfig, out: Path, workers: int = 1, png: bool = False) -> dict:
    validate(cfg)
    task = cfg.task
    t0 = time.perf_counter()
    if task == "size":
        result = cfg.spec.size
    elif task == "convergence":
        result = tz.convergence_study(cfg.t, cfg.m_range, cfg.rho, cfg.phi_count)
    elif task == "edge-study":
        pop = cfg.spec.population
        prefix = [_to_scalar(z, pop.ring) for z in cfg.t]
        result = tz.edge_perturbation_study(prefix, pop)
    else:
        i, n = cfg.shard
        lo, hi = _split(0, _total(cfg), n)[i]
        result = _compute_job(cfg, lo, hi, workers if task != "schmidt-spitzer" else 1)
    summary = _write(cfg, result, out, png)
    elapsed = time.perf_counter() - t0
    (out / "timings.log").write_text(f"{task} {elapsed:.3f}s\n")
    print(f"{task}: done in {elapsed:.2f}s -> {out}", file=sys.stderr)
    return summary


def merge(parts: list[Path], out: Path, png: bool = False) -> dict:
    """Combine shard outputs; the result equals the unsharded run exactly."""
    if not parts:
        raise ConfigError("nothing to merge")
    loaded = []
    for p in parts:
        try:
            s = json.loads((Path(p) / "summary.json").read_text())
        except OSError as exc:
            raise ConfigError(f"{p}: missing summary.json") from exc
        loaded.append((JobConfig.from_dict(s["config"]), Path(p), s))
    base = replace(loaded[0][0], shard=(0, 1))
    n = loaded[0][0].shard[1]
    for c, p, _ in loaded:
        if replace(c, shard=(0, 1)) != base:
            raise ConfigError(f"{p}: configuration differs from {parts[0]}")
        if c.shard[1] != n:
            raise ConfigError(f"{p}: shard count {c.shard[1]} differs from {n}")
    loaded.sort(key=lambda x: x[0].shard[0])
    if [c.shard[0] for c, _, _ in loaded] != list(range(n)):
        raise ConfigError(f"need each of the {n} shards exactly once")
    result = _combine(base, [_load(base, p, s) for _, p, s in loaded])
    return _write(base, result, out, png)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "merge":
            summary = merge(args.parts, args.out, args.png)
        else:
            cfg = config_from_args(args)
            if args.workers < 1:
                raise ConfigError("--workers must be at least 1")
            summary = run(cfg, args.out, args.workers, args.png)
    except (ConfigError, cp.BudgetExceededError, OSError) as exc:
        print(f"bohemian: error: {exc}", file=sys.stderr)
        return 2
    if summary["task"] == "size":
        print(summary["size"])
    else:
        print(json.dumps({k: v for k, v in summary.items() if k != "config"},
                         sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
