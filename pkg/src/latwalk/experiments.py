"""Reproducible ensemble experiments over subsets, with persisted records.

A flat key=value config describes the run; everything downstream is a pure
function of (config, seed): walker w of schedule entry i uses stream id
i*walkers + w, aggregation is an ordered reduction, and records serialize
with repr-roundtrip floats, so reruns are bit-identical (wall time is
reported outside the hashed payload).

The asymptotic limit laws are accepted through widened envelopes and
cross-decade stability of the normalized statistic, never through equality:
the a.s. limits are unreachable at desk scale, and the report keeps both
envelope edges visible instead of asserting a limit.
"""

from __future__ import annotations

import hashlib
import io
import json
import re
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels, projections, returns, subsets
from .walk import MAX_STEPS

UNRESTRICTED_MAX_N = 10 ** 7  # dense-ledger memory policy

NORMALIZERS = ("log2", "log", "loglog", "logr")

# study tag -> (allowed normalizer, statistic family)
STUDY_TAGS = {
    "plane-d2": ("log2", "max-local-time"),
    "line-d2": ("log2", "max-local-time"),
    "ball-power-d2": ("log2", "max-local-time"),
    "ball-exp-d2": ("log2b", "max-local-time"),
    "ball-line-d2": ("log2", "max-local-time"),
    "full-space": ("log", "max-local-time"),
    "hyperplane": ("log", "max-local-time"),
    "codim2-axis": ("loglog", "max-local-time"),
    "growing-ball": ("logr", "max-local-time"),
    "origin-law": ("log", "distribution"),
    "origin-geometric": (None, "distribution"),
    "custom": (None, None),
}


class ConfigError(ValueError):
    pass


class MemoryPolicyError(RuntimeError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    study: str
    d: int
    subset: str
    schedule: tuple[int, ...]
    walkers: int
    seed: int
    statistic: str = "max-local-time"
    normalization: str = "log2"
    widen: float = 2.0
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.study not in STUDY_TAGS:
            raise ConfigError(f"unknown study tag {self.study!r}")
        if list(self.schedule) != sorted(set(self.schedule)):
            raise ConfigError("schedule must be strictly increasing")
        if any(n < 0 or n > MAX_STEPS for n in self.schedule):
            raise ConfigError("schedule entries outside [0, 2**40]")
        if self.walkers < 1:
            raise ConfigError("walkers must be >= 1")
        if self.statistic not in ("max-local-time", "distribution", "bound-check"):
            raise ConfigError(f"unknown statistic {self.statistic!r}")
        if self.normalization not in NORMALIZERS:
            raise ConfigError(f"unknown normalization {self.normalization!r}")
        want_norm, want_stat = STUDY_TAGS[self.study]
        if want_norm == "log2b":
            if self.beta is None or not 0.5 <= self.beta < 1.0:
                raise ConfigError(
                    "ball-exp-d2 requires beta in [1/2, 1)")
            want_norm = "log2"
        if want_norm is not None and self.normalization != want_norm:
            raise ConfigError(
                f"{self.study} uses normalization {want_norm!r}, "
                f"got {self.normalization!r}")
        if want_stat is not None and self.statistic != want_stat:
            raise ConfigError(
                f"{self.study} uses statistic {want_stat!r}, got {self.statistic!r}")
        if self.study in ("ball-power-d2", "growing-ball", "ball-line-d2") and self.alpha is None:
            raise ConfigError(f"{self.study} requires alpha")

    def as_dict(self) -> dict:
        return {
            "study": self.study, "d": self.d, "subset": self.subset,
            "schedule": list(self.schedule), "walkers": self.walkers,
            "seed": self.seed, "statistic": self.statistic,
            "normalization": self.normalization, "widen": self.widen,
            "alpha": self.alpha, "beta": self.beta,
        }


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat key = value config format ('#' starts a comment)."""
    kv = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {raw!r}")
        k, v = (s.strip() for s in line.split("=", 1))
        kv[k] = v
    try:
        return ExperimentConfig(
            study=kv.get("study", "custom"),
            d=int(kv["d"]),
            subset=kv.get("subset", "all"),
            schedule=tuple(int(s) for s in kv["schedule"].split(",")),
            walkers=int(kv.get("walkers", "1")),
            seed=int(kv.get("seed", "0")),
            statistic=kv.get("statistic", "max-local-time"),
            normalization=kv.get("normalization", "log2"),
            widen=float(kv.get("widen", "2.0")),
            alpha=float(kv["alpha"]) if "alpha" in kv else None,
            beta=float(kv["beta"]) if "beta" in kv else None,
        )
    except KeyError as e:
        raise ConfigError(f"missing config key {e.args[0]!r}") from None


_DYN_POW = re.compile(r"ball:n\^([0-9.]+)")
_DYN_EXP = re.compile(r"ball:exp\(log\^([0-9.]+)\)")


def resolve_subset(cfg: ExperimentConfig, n: int):
    """Static subset spec and ball radius r_n for one schedule entry.

    Dynamic radii: ``ball:n^a`` means r_n = n**a and ``ball:exp(log^b)``
    means r_n = exp((log n)**b); config alpha/beta override the inline
    exponents when present.
    """
    text = cfg.subset
    r_n = None
    m = _DYN_POW.search(text)
    if m:
        a = cfg.alpha if cfg.alpha is not None else float(m.group(1))
        r_n = float(n) ** a
        text = _DYN_POW.sub(f"ball:{r_n!r}", text)
    m = _DYN_EXP.search(text)
    if m:
        b = cfg.beta if cfg.beta is not None else float(m.group(1))
        r_n = float(np.exp(np.log(n) ** b))
        text = _DYN_EXP.sub(f"ball:{r_n!r}", text)
    if text == "all":
        return None, r_n
    return subsets.parse_subset(text).canonicalize(), r_n


def normalizer_value(normalization: str, n: int, r_n: float | None,
                     beta: float | None = None) -> float:
    ln = np.log(n) if n > 1 else 1.0
    if normalization == "log2":
        if beta is not None:
            return float(ln ** (2 * beta))
        return float(ln * ln)
    if normalization == "log":
        return float(ln)
    if normalization == "loglog":
        return float(np.log(ln)) if ln > 1 else 1.0
    if normalization == "logr":
        if r_n is None:
            raise ConfigError("logr normalization needs a ball radius")
        return float(np.log(r_n))
    raise ConfigError(f"unknown normalization {normalization!r}")


def _full_space_maxima(seed: int, ids: np.ndarray, n: int, d: int) -> np.ndarray:
    """Max local time over all sites, by sort-and-count on the whole path."""
    if n > UNRESTRICTED_MAX_N:
        raise MemoryPolicyError(
            f"unrestricted ledger needs n <= {UNRESTRICTED_MAX_N:.0e}; "
            f"restrict the subset for n = {n}")
    from .walk import WalkConfig, path_positions
    out = np.empty(len(ids), dtype=np.int64)
    for j, wid in enumerate(ids):
        pos = path_positions(WalkConfig(seed, int(wid), d, n))[1:]
        key = pos[:, 0] + (1 << 31)
        for a in range(1, d):
            key = (key << 32) | (pos[:, a] + (1 << 31))
        _, counts = np.unique(key, return_counts=True)
        out[j] = counts.max() if len(counts) else 0
    return out


def _subset_maxima(seed: int, ids: np.ndarray, n: int, d: int, spec) -> np.ndarray:
    """Dispatch the restricted max-local-time simulation to a kernel."""
    master = np.uint64(seed)
    if spec is None:
        return _full_space_maxima(seed, ids, n, d)
    parts = spec.parts if isinstance(spec, subsets.Intersection) else (spec,)
    balls = [p for p in parts if isinstance(p, subsets.Ball)]
    linear = [p for p in parts if isinstance(p, subsets.Hyperplane)]
    codim = [p for p in parts if isinstance(p, subsets.Codim2)]
    if len(balls) + len(linear) + len(codim) != len(parts) or len(linear) > 1 \
            or len(codim) > 1 or (linear and codim):
        raise ConfigError(f"unsupported subset combination: {spec}")
    r2 = min((b.r2 for b in balls), default=-1)
    if linear or codim:
        if d > 3:
            raise ConfigError("compiled subset kernels support d <= 3")
        if linear:
            inc_a = projections.OneDProjection.from_hyperplane(linear[0]).increments()
            inc_b = np.zeros_like(inc_a)
            use_b = False
        else:
            proj = projections.TwoDProjection.from_codim2(codim[0])
            inc2 = proj.increments()
            inc_a, inc_b = inc2[:, 0].copy(), inc2[:, 1].copy()
            use_b = True
        mx, _ = kernels.k_linear_max(master, ids, np.int64(n), np.int64(d),
                                     inc_a, use_b, inc_b, np.int64(r2))
        if np.any(mx < 0):
            raise MemoryPolicyError("kernel coordinate packing overflow")
        return mx
    if balls:
        if d == 2:
            grid_r = int(np.floor(np.sqrt(r2)))
            return kernels.k_ball_max_d2(master, ids, np.int64(n),
                                         np.int64(r2), np.int64(grid_r))
        if d == 3:
            mx = kernels.k_ball_max_dict(master, ids, np.int64(n),
                                         np.int64(d), np.int64(r2))
            if np.any(mx < 0):
                raise MemoryPolicyError("kernel coordinate packing overflow")
            return mx
        raise ConfigError("ball kernels support d in {2, 3}")
    raise ConfigError(f"unsupported subset: {spec}")


@dataclass
class EstimateRecord:
    """Persisted outcome of one experiment (reproducible up to wall time)."""

    config: ExperimentConfig
    ns: list[int]
    values: list[np.ndarray]        # per-walker statistic per schedule entry
    normalizers: list[float]
    wall_time_s: float
    config_hash: str = field(init=False, default="")

    def __post_init__(self):
        self.config_hash = hashlib.sha256(
            json.dumps(self.config.as_dict(), sort_keys=True).encode()).hexdigest()[:16]

    def normalized(self, i: int) -> np.ndarray:
        return self.values[i] / self.normalizers[i]

    def summary(self) -> list[dict]:
        rows = []
        for i, n in enumerate(self.ns):
            v = self.values[i].astype(float)
            z = self.normalized(i)
            rows.append({
                "n": n, "normalizer": self.normalizers[i],
                "mean": float(v.mean()), "median": float(np.median(v)),
                "min": float(v.min()), "max": float(v.max()),
                "norm_mean": float(z.mean()), "norm_median": float(np.median(z)),
                "norm_min": float(z.min()), "norm_max": float(z.max()),
            })
        return rows

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("n,walker,value,normalized\n")
        for i, n in enumerate(self.ns):
            z = self.normalized(i)
            for w, (v, nv) in enumerate(zip(self.values[i], z)):
                out.write(f"{n},{w},{int(v)},{float(nv)!r}\n")
        return out.getvalue()

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_csv().encode()).hexdigest()

    def manifest(self) -> dict:
        man = {
            "config": self.config.as_dict(),
            "config_hash": self.config_hash,
            "content_sha256": self.content_hash(),
            "summary": self.summary(),
            "oracle": {},
            "wall_time_s": self.wall_time_s,  # excluded from hashes
        }
        if self.config.d >= 3:
            esc = returns.escape_constants(self.config.d, n_max=2)
            man["oracle"] = {"gamma": esc.gamma, "lambda": esc.lam}
        return man


def run_experiment(cfg: ExperimentConfig) -> EstimateRecord:
    """Simulate the configured ensemble and assemble the record."""
    t0 = time.monotonic()
    ns, values, norms = [], [], []
    for i, n in enumerate(cfg.schedule):
        ids = np.arange(cfg.walkers, dtype=np.int64) + i * cfg.walkers
        spec, r_n = resolve_subset(cfg, n)
        if cfg.statistic == "distribution":
            vals = kernels.k_origin_visits(np.uint64(cfg.seed), ids,
                                           np.int64(n), np.int64(cfg.d))
        elif cfg.statistic == "max-local-time":
            vals = _subset_maxima(cfg.seed, ids, n, cfg.d, spec)
        else:
            raise ConfigError("bound-check experiments run through latwalk.bounds")
        ns.append(n)
        values.append(vals)
        norms.append(normalizer_value(cfg.normalization, n, r_n, cfg.beta))
    return EstimateRecord(cfg, ns, values, norms, time.monotonic() - t0)


def write_record(record: EstimateRecord, out_dir, stem: str | None = None):
    """Write <stem>.csv and <stem>.manifest.json; returns the two paths."""
    import pathlib
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = stem or f"record_{record.config_hash}"
    csv_path = out / f"{stem}.csv"
    man_path = out / f"{stem}.manifest.json"
    csv_path.write_text(record.to_csv())
    man_path.write_text(json.dumps(record.manifest(), sort_keys=True, indent=1))
    return csv_path, man_path


def load_record_values(csv_path) -> dict[int, np.ndarray]:
    """Per-n value arrays from a record CSV."""
    rows = {}
    with open(csv_path) as fh:
        next(fh)
        for line in fh:
            n, _, v, _ = line.split(",")
            rows.setdefault(int(n), []).append(int(v))
    return {n: np.array(v, dtype=np.int64) for n, v in rows.items()}


@dataclass(frozen=True)
class ScalingReport:
    ns: tuple[int, ...]
    norm_means: tuple[float, ...]
    norm_medians: tuple[float, ...]
    norm_mins: tuple[float, ...]   # liminf-type edges compare against these
    norm_maxs: tuple[float, ...]   # limsup-type edges against these
    envelope: tuple[float, float] | None
    widened: tuple[float, float] | None
    cross_decade_ratio: float
    non_explosive: bool
    within_envelope: bool | None
    plot_data: tuple  # (n, normalized mean) pairs

    @property
    def verdict(self) -> str:
        ok = self.non_explosive and (self.within_envelope is not False)
        return "pass" if ok else "fail"


def study_envelope(cfg: ExperimentConfig) -> tuple[float, float] | None:
    """Reference (liminf, limsup) envelope of the normalized statistic."""
    a = cfg.alpha
    if cfg.study == "plane-d2":
        return (1 / (4 * np.pi), 1 / np.pi)
    if cfg.study == "line-d2":
        return (1 / (8 * np.pi), 1 / (2 * np.pi))
    if cfg.study == "ball-power-d2":
        return (4 * a * a / np.pi, 2 * a / np.pi)
    if cfg.study == "ball-line-d2":
        return (a * a / (2 * np.pi), min(0.5, 2 * a) / np.pi)
    if cfg.study == "ball-exp-d2":
        return (4 / np.pi, None)
    if cfg.d >= 3 and cfg.study in ("full-space", "hyperplane", "codim2-axis", "growing-ball"):
        lam = returns.escape_constants(cfg.d, n_max=2).lam
        target = {"full-space": lam, "hyperplane": lam / 2, "codim2-axis": lam,
                  "growing-ball": 2 * lam}[cfg.study]
        return (target, target)
    return None


def scaling_report(record: EstimateRecord, min_points: int = 3,
                   min_decades: float = 2.0) -> ScalingReport:
    """Envelope and stability verdicts across the schedule."""
    cfg = record.config
    ns = record.ns
    if len(ns) < min_points:
        raise ConfigError(f"scaling report needs >= {min_points} schedule points")
    if np.log10(ns[-1] / ns[0]) < min_decades:
        raise ConfigError(f"schedule must span >= {min_decades} decades")
    means = [float(record.normalized(i).mean()) for i in range(len(ns))]
    medians = [float(np.median(record.normalized(i))) for i in range(len(ns))]
    mins = [float(record.normalized(i).min()) for i in range(len(ns))]
    maxs = [float(record.normalized(i).max()) for i in range(len(ns))]
    ratio = max(means) / min(means) if min(means) > 0 else np.inf
    env = study_envelope(cfg)
    if env is not None:
        lo, hi = env
        wlo = lo / cfg.widen if lo is not None else None
        whi = hi * cfg.widen if hi is not None else None
        inside = all((wlo is None or m >= wlo) and (whi is None or m <= whi)
                     for m in means)
        widened = (wlo, whi)
    else:
        inside, widened = None, None
    return ScalingReport(tuple(ns), tuple(means), tuple(medians), tuple(mins),
                         tuple(maxs), env, widened,
                         float(ratio), bool(ratio < 3.0), inside,
                         tuple(zip(ns, means)))


def samplewise_violations(rec_sub: EstimateRecord, rec_sup: EstimateRecord) -> int:
    """Count xi_A(n) > xi_B(n) violations for A within B on coupled paths.

    Both records must share seed, schedule and walkers so the walker streams
    coincide path-by-path.
    """
    if (rec_sub.config.seed != rec_sup.config.seed
            or rec_sub.ns != rec_sup.ns
            or rec_sub.config.walkers != rec_sup.config.walkers):
        raise ConfigError("records are not path-coupled")
    bad = 0
    for va, vb in zip(rec_sub.values, rec_sup.values):
        bad += int(np.sum(va > vb))
    return bad
