"""Seeded Monte-Carlo sweeps over SBM and ORGM graphs, plus real-network runs.

Each trial draws one graph, shuffles its vertex labels, drops small
connected components and then runs every requested matrix kind on that same
graph. The eigendecomposition is shared by ordering and clustering.
Results are long-format records, one metric per row.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

import numpy as np
from threadpoolctl import threadpool_limits

from .clustering import spectral_cluster
from .graph import Graph
from .matrices import ALL_KINDS, MatrixKind, MatrixSpec
from .metrics import (UndefinedMetricError, kendall_tau, max_group_fraction, nmi,
                      normalized_lce)
from .models import (InfeasibleParametersError, OrgmParams, SbmParams, orgm_generate,
                     sbm_generate)
from .ordering import Ordering, bethe_sweep, default_r_grid, h2, rank_discretize, \
    ordering_vector, spectrum_for, sweep_to_csv
from .partition import Partition

METRICS = ("nmi", "lce", "normalized_lce", "max_group_fraction", "kendall_tau", "h2")
COLUMNS = ("model", "n", "c", "epsilon", "groups", "band_ratio", "matrix", "trial",
           "seed", "metric", "value", "status")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    model: str
    n: int
    c: float
    epsilons: tuple
    groups: tuple = (2,)
    band_ratios: tuple = ()
    matrices: tuple = tuple(k.value for k in ALL_KINDS)
    trials: int = 10
    master_seed: int = 0
    output: str | None = None
    kendall: bool = False
    literal_reg: bool = False
    min_component_fraction: float = 0.1

    def __post_init__(self):
        model = str(self.model).lower()
        if model not in ("sbm", "orgm"):
            raise ConfigError(f"model must be 'sbm' or 'orgm', got {self.model!r}")
        object.__setattr__(self, "model", model)
        for name in ("epsilons", "groups", "band_ratios", "matrices"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "matrices",
                           tuple(MatrixKind.parse(k).value for k in self.matrices))
        if not self.epsilons or not self.groups or not self.matrices:
            raise ConfigError("epsilons, groups and matrices must be non-empty")
        if model == "orgm" and not self.band_ratios:
            raise ConfigError("ORGM sweeps need at least one band ratio")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not 0 <= self.min_component_fraction <= 1:
            raise ConfigError("min_component_fraction must lie in [0, 1]")
        if self.master_seed < 0:
            raise ConfigError("master_seed must be non-negative")

    @classmethod
    def from_dict(cls, d):
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)

    @classmethod
    def from_json(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_json(self):
        return json.dumps(asdict(self), indent=2)

    def cells(self):
        """Grid points in a fixed order; the position is the cell index."""
        if self.model == "sbm":
            return [(e, k, None) for e, k in itertools.product(self.epsilons, self.groups)]
        return list(itertools.product(self.epsilons, self.groups, self.band_ratios))


def trial_seed(master_seed, cell, trial):
    """Stable 64-bit seed mixed from (master, cell index, trial index)."""
    state = np.random.SeedSequence([master_seed, cell, trial]).generate_state(1, np.uint64)
    return int(state[0])


@dataclass
class Record:
    model: str
    n: int
    c: float
    epsilon: float | None
    groups: int | None
    band_ratio: float | None
    matrix: str
    trial: int
    seed: int
    metric: str
    value: float
    status: str = "ok"
    detail: str = field(default="", compare=False)

    def row(self):
        return [_fmt(getattr(self, c)) for c in COLUMNS]


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return "" if math.isnan(x) else repr(x)
    return str(x)


def records_to_csv(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def _prepare(g, shuffle_seed, min_fraction):
    """Shuffle vertex labels and drop small components.

    Components below ``min_fraction`` of the vertices (isolated vertices in
    particular) are removed; see :meth:`Graph.giant_components`.

    Returns the working graph and, for every working vertex, its index in
    the generated graph (``h.ids`` once ids are reset to ``arange``).
    """
    g = Graph(g.n, g.u, g.v)  # ids = generator indices
    perm = np.random.default_rng(shuffle_seed).permutation(g.n)
    shuffled = g.relabel(perm)
    keep = shuffled.giant_components(min_fraction)
    h = shuffled.subgraph(keep)
    return h, np.asarray(h.ids)


def _trial_streams(seed):
    graph_ss, shuffle_ss, kmeans_ss = np.random.SeedSequence(seed).spawn(3)
    return (graph_ss, shuffle_ss,
            int(kmeans_ss.generate_state(1, np.uint64)[0]))


def _sbm_trial(cfg, cell, trial):
    eps, k, _ = cfg.cells()[cell]
    seed = trial_seed(cfg.master_seed, cell, trial)
    base = dict(model="sbm", n=cfg.n, c=float(cfg.c), epsilon=float(eps), groups=int(k),
                band_ratio=None, trial=trial, seed=seed)
    metric_names = ("normalized_lce", "nmi")
    try:
        graph_ss, shuffle_ss, km_seed = _trial_streams(seed)
        g, planted = sbm_generate(SbmParams(cfg.n, k, cfg.c, eps), graph_ss)
    except (InfeasibleParametersError, ValueError) as exc:
        return _failed(base, cfg.matrices, metric_names, exc)
    h, origin = _prepare(g, shuffle_ss, cfg.min_component_fraction)
    truth = Partition(planted.labels[origin], k=planted.k, allow_empty=True)
    out = []
    for kind in cfg.matrices:
        try:
            spec, spectrum = spectrum_for(h, MatrixSpec(kind))
            pi = rank_discretize(ordering_vector(h, spec, spectrum, cfg.literal_reg))
            sigma = spectral_cluster(h, spec, k, km_seed, spectrum)
        except (ValueError, np.linalg.LinAlgError) as exc:
            out += _failed(base, [kind], metric_names, exc)
            continue
        out.append(_metric(base, kind, "normalized_lce", lambda: normalized_lce(pi, truth)))
        out.append(_metric(base, kind, "nmi", lambda: nmi(sigma, truth)))
    return out


def _orgm_trial(cfg, cell, trial):
    eps, k, ratio = cfg.cells()[cell]
    seed = trial_seed(cfg.master_seed, cell, trial)
    base = dict(model="orgm", n=cfg.n, c=float(cfg.c), epsilon=float(eps), groups=int(k),
                band_ratio=float(ratio), trial=trial, seed=seed)
    metric_names = ("normalized_lce", "max_group_fraction")
    if cfg.kendall:
        metric_names += ("kendall_tau",)
    try:
        graph_ss, shuffle_ss, km_seed = _trial_streams(seed)
        g = orgm_generate(OrgmParams.from_ratio(cfg.n, cfg.c, eps, ratio), graph_ss)
    except (InfeasibleParametersError, ValueError) as exc:
        return _failed(base, cfg.matrices, metric_names, exc)
    h, origin = _prepare(g, shuffle_ss, cfg.min_component_fraction)
    # planted sequence restricted to the kept vertices
    planted = Ordering.from_sequence(np.argsort(origin, kind="stable"))
    out = []
    for kind in cfg.matrices:
        try:
            spec, spectrum = spectrum_for(h, MatrixSpec(kind))
            sigma = spectral_cluster(h, spec, k, km_seed, spectrum)
            if cfg.kendall:
                pi = rank_discretize(ordering_vector(h, spec, spectrum, cfg.literal_reg))
        except (ValueError, np.linalg.LinAlgError) as exc:
            out += _failed(base, [kind], metric_names, exc)
            continue
        out.append(_metric(base, kind, "normalized_lce", lambda: normalized_lce(planted, sigma)))
        out.append(_metric(base, kind, "max_group_fraction", lambda: max_group_fraction(sigma)))
        if cfg.kendall:
            out.append(_metric(base, kind, "kendall_tau", lambda: abs(kendall_tau(pi, planted))))
    return out


def _metric(base, kind, name, compute):
    try:
        value = float(compute())
    except (UndefinedMetricError, ValueError) as exc:
        return Record(**base, matrix=kind, metric=name, value=float("nan"),
                      status="failed", detail=type(exc).__name__)
    if not math.isfinite(value):
        return Record(**base, matrix=kind, metric=name, value=float("nan"), status="failed")
    return Record(**base, matrix=kind, metric=name, value=value)


def _failed(base, kinds, metric_names, exc):
    return [Record(**base, matrix=kind, metric=m, value=float("nan"), status="failed",
                   detail=type(exc).__name__)
            for kind in kinds for m in metric_names]


_TRIALS = {"sbm": _sbm_trial, "orgm": _orgm_trial}


def _run_task(task):
    cfg, cell, trial = task
    with threadpool_limits(limits=1):
        return _TRIALS[cfg.model](cfg, cell, trial)


def run_sweep(cfg, workers=1):
    """All (cell, trial) tasks; records come back in cell-then-trial order."""
    tasks = [(cfg, cell, t) for cell in range(len(cfg.cells())) for t in range(cfg.trials)]
    if workers <= 1:
        chunks = map(_run_task, tasks)
        records = [r for chunk in chunks for r in chunk]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [r for chunk in pool.map(_run_task, tasks) for r in chunk]
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(records_to_csv(records))
    return records


def run_sbm_sweep(cfg, workers=1):
    if cfg.model != "sbm":
        raise ConfigError("config model is not 'sbm'")
    return run_sweep(cfg, workers)


def run_orgm_sweep(cfg, workers=1):
    if cfg.model != "orgm":
        raise ConfigError("config model is not 'orgm'")
    return run_sweep(cfg, workers)


def summarize(records):
    """Mean, standard error and count of ok values per (cell, matrix, metric)."""
    groups = {}
    for r in records:
        if r.status != "ok":
            continue
        key = (r.epsilon, r.groups, r.band_ratio, r.matrix, r.metric)
        groups.setdefault(key, []).append(r.value)
    out = {}
    for key, vals in groups.items():
        v = np.asarray(vals)
        se = v.std(ddof=1) / np.sqrt(v.size) if v.size > 1 else float("nan")
        out[key] = (float(v.mean()), float(se), int(v.size))
    return out


def reordered_coordinates(g, pi, sigma):
    """CSV rows ``row,col,group`` of the adjacency permuted by ``pi``.

    Each undirected edge appears twice; ``group`` is the cluster of the
    row vertex.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "group"])
    a = np.concatenate([g.u, g.v])
    b = np.concatenate([g.v, g.u])
    rows, cols = pi.perm[a], pi.perm[b]
    order = np.lexsort((cols, rows))
    for i in order:
        w.writerow([int(rows[i]), int(cols[i]), int(sigma.labels[a[i]])])
    return buf.getvalue()


def run_real(g, kinds=None, ks=(2,), seed=0, literal_reg=False):
    """Order and cluster one graph with every (matrix, K).

    Returns ``(records, exports)`` where ``exports[(kind, K)]`` holds the
    reordered-adjacency CSV. A kind that cannot be built for this graph
    gets failed records and the others still run.
    """
    kinds = [MatrixKind.parse(k).value for k in (kinds or [k.value for k in ALL_KINDS])]
    base = dict(model="real", n=g.n, c=float(2.0 * g.m / g.n), epsilon=None,
                band_ratio=None, trial=0, seed=int(seed))
    records, exports = [], {}
    with threadpool_limits(limits=1):
        for kind in kinds:
            try:
                spec, spectrum = spectrum_for(g, MatrixSpec(kind))
                pi = rank_discretize(ordering_vector(g, spec, spectrum, literal_reg))
            except (ValueError, np.linalg.LinAlgError) as exc:
                for k in ks:
                    records += _failed(dict(base, groups=int(k)), [kind],
                                       ("normalized_lce", "h2"), exc)
                continue
            for k in ks:
                b = dict(base, groups=int(k))
                try:
                    sigma = spectral_cluster(g, spec, int(k), seed, spectrum)
                except ValueError as exc:
                    records += _failed(b, [kind], ("normalized_lce", "h2"), exc)
                    continue
                records.append(_metric(b, kind, "normalized_lce",
                                       lambda: normalized_lce(pi, sigma)))
                records.append(_metric(b, kind, "h2", lambda: h2(pi, g)))
                exports[(kind, int(k))] = reordered_coordinates(g, pi, sigma)
    return records, exports


def run_bethe_sweep(g, r_grid=None, k_max=4, output=None):
    """H2 of the k_max lowest Bethe Hessian eigenvectors over a grid of r, as CSV text."""
    if r_grid is None:
        r_grid = default_r_grid(g)
    with threadpool_limits(limits=1):
        text = sweep_to_csv(bethe_sweep(g, r_grid, k_max))
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
