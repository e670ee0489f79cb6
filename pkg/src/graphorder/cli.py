"""Command-line entry point: ``graphorder <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings

import numpy as np

from .clustering import spectral_cluster
from .experiments import (ConfigError, SweepConfig, records_to_csv, run_bethe_sweep,
                          run_real, run_sweep)
from .graph import EdgeListError, LoadReport, read_edge_list
from .matrices import ALL_KINDS, MatrixKind, MatrixSpec
from .metrics import UndefinedMetricError, LceStats, lce_stats, nmi
from .models import (InfeasibleParametersError, OrgmParams, SbmParams, orgm_generate,
                     sbm_generate)
from .ordering import Ordering, default_r_grid, spectral_order
from .partition import Partition

KIND_NAMES = [k.value for k in ALL_KINDS]


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _load_graph(path):
    report = LoadReport()
    g = read_edge_list(path, report)
    if report.duplicates or report.self_loops:
        print(f"dropped {report.duplicates} duplicate edge(s) and "
              f"{report.self_loops} self-loop(s)", file=sys.stderr)
    return g


def _read_column_csv(path, key, value):
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or key not in rows[0] or value not in rows[0]:
        raise ValueError(f"{path}: expected columns {key},{value}")
    return {int(r[key]): int(r[value]) for r in rows}


def _partition_rows(g, sigma):
    return zip(g.ids.tolist(), sigma.labels.tolist())


def _matrix_spec(args):
    return MatrixSpec(MatrixKind.parse(args.matrix), r=args.r, tau=args.tau)


def cmd_gen_sbm(args):
    params = SbmParams(args.n, args.k, args.c, args.epsilon)
    g, planted = sbm_generate(params, args.seed)
    _write(g.to_edge_list(), args.out)
    if args.labels:
        _write(_csv(["vertex", "label"], _partition_rows(g, planted)), args.labels)


def cmd_gen_orgm(args):
    if (args.band is None) == (args.band_ratio is None):
        raise ValueError("give exactly one of --band and --band-ratio")
    if args.band is not None:
        params = OrgmParams(args.n, args.c, args.epsilon, args.band)
    else:
        params = OrgmParams.from_ratio(args.n, args.c, args.epsilon, args.band_ratio)
    _write(orgm_generate(params, args.seed).to_edge_list(), args.out)


def cmd_order(args):
    g = _load_graph(args.graph)
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        pi = spectral_order(g, _matrix_spec(args), literal_reg=args.literal_reg)
    _write(_csv(["vertex", "position"], zip(g.ids.tolist(), pi.perm.tolist())), args.out)


def cmd_cluster(args):
    g = _load_graph(args.graph)
    sigma = spectral_cluster(g, _matrix_spec(args), args.k, args.seed)
    _write(_csv(["vertex", "label"], _partition_rows(g, sigma)), args.out)


def cmd_lce(args):
    pos = _read_column_csv(args.ordering, "vertex", "position")
    lab = _read_column_csv(args.partition, "vertex", "label")
    if set(pos) != set(lab):
        raise ValueError("ordering and partition cover different vertices")
    vertices = sorted(pos)
    pi = Ordering(np.array([pos[v] for v in vertices]))
    _, labels = np.unique([lab[v] for v in vertices], return_inverse=True)
    stats = lce_stats(pi, Partition(labels))
    _write(_csv(LceStats.FIELDS, [[repr(x) if isinstance(x, float) else x
                                   for x in stats.row()]]), args.out)


def cmd_nmi(args):
    a = _read_column_csv(args.a, "vertex", "label")
    b = _read_column_csv(args.b, "vertex", "label")
    if set(a) != set(b):
        raise ValueError("partitions cover different vertices")
    vs = sorted(a)
    pa = Partition(np.unique([a[v] for v in vs], return_inverse=True)[1])
    pb = Partition(np.unique([b[v] for v in vs], return_inverse=True)[1])
    _write(f"{nmi(pa, pb)!r}\n", args.out)


def _sweep_config(args, model):
    d = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            d = json.load(fh)
    d.setdefault("model", model)
    if d["model"] != model:
        raise ConfigError(f"config is for model {d['model']!r}, not {model!r}")
    overrides = {"n": args.n, "c": args.c, "epsilons": args.epsilon, "groups": args.k,
                 "trials": args.trials, "master_seed": args.seed, "output": args.out,
                 "matrices": args.matrix}
    if model == "orgm":
        overrides["band_ratios"] = args.band_ratio
        overrides["kendall"] = args.kendall or None
    if args.literal_reg:
        overrides["literal_reg"] = True
    d.update({k: v for k, v in overrides.items() if v is not None})
    for required in ("n", "c", "epsilons"):
        if required not in d:
            raise ConfigError(f"missing sweep setting {required!r} (flag or config)")
    return SweepConfig.from_dict(d)


def cmd_sweep(args, model):
    cfg = _sweep_config(args, model)
    records = run_sweep(cfg, workers=args.workers)
    if not cfg.output:
        sys.stdout.write(records_to_csv(records))
    failed = sum(r.status != "ok" for r in records)
    if failed:
        print(f"{failed} record(s) failed", file=sys.stderr)


def cmd_sweep_bethe(args):
    g = _load_graph(args.graph)
    grid = args.r if args.r else default_r_grid(g, args.points)
    text = run_bethe_sweep(g, grid, args.k_max)
    _write(text, args.out)


def cmd_real(args):
    g = _load_graph(args.graph)
    records, exports = run_real(g, args.matrix, args.k or [2], args.seed, args.literal_reg)
    _write(records_to_csv(records), args.out)
    if args.export_dir:
        os.makedirs(args.export_dir, exist_ok=True)
        for (kind, k), text in exports.items():
            _write(text, os.path.join(args.export_dir, f"{kind}_k{k}.csv"))
    for r in records:
        if r.status != "ok":
            print(f"{r.matrix} K={r.groups}: {r.metric} failed ({r.detail})",
                  file=sys.stderr)


def _add_matrix_flags(p, many=False):
    if many:
        p.add_argument("--matrix", action="append", choices=KIND_NAMES,
                       help="matrix kind (repeatable; default all)")
    else:
        p.add_argument("--matrix", default="norm_laplacian", choices=KIND_NAMES)
        p.add_argument("--r", type=float, help="Bethe Hessian r (default from degrees)")
        p.add_argument("--tau", type=float, help="regularization tau (default mean degree)")
    p.add_argument("--literal-reg", action="store_true",
                   help="order reg_laplacian by its second-smallest eigenvector")


def build_parser():
    ap = argparse.ArgumentParser(prog="graphorder", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-sbm", help="sample a planted-partition SBM graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="edge list path (default stdout)")
    p.add_argument("--labels", help="write planted labels as vertex,label CSV")
    p.set_defaults(func=cmd_gen_sbm)

    p = sub.add_parser("gen-orgm", help="sample an ordered random graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--band", type=int)
    p.add_argument("--band-ratio", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_orgm)

    p = sub.add_parser("order", help="spectral ordering -> vertex,position CSV")
    p.add_argument("graph")
    _add_matrix_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("cluster", help="spectral clustering -> vertex,label CSV")
    p.add_argument("graph")
    _add_matrix_flags(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("lce", help="label continuity statistics of an ordering and partition")
    p.add_argument("ordering", help="vertex,position CSV")
    p.add_argument("partition", help="vertex,label CSV")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lce)

    p = sub.add_parser("nmi", help="NMI between two vertex,label CSVs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out")
    p.set_defaults(func=cmd_nmi)

    for model in ("sbm", "orgm"):
        p = sub.add_parser(f"sweep-{model}", help=f"{model.upper()} parameter sweep -> tidy CSV")
        p.add_argument("--config", help="JSON file with SweepConfig fields")
        p.add_argument("--n", type=int)
        p.add_argument("--c", type=float)
        p.add_argument("--epsilon", type=float, action="append")
        p.add_argument("--k", type=int, action="append", help="group count (repeatable)")
        if model == "orgm":
            p.add_argument("--band-ratio", type=float, action="append")
            p.add_argument("--kendall", action="store_true",
                           help="also record |Kendall tau| of the ordering")
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int, help="master seed")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out")
        _add_matrix_flags(p, many=True)
        p.set_defaults(func=lambda a, m=model: cmd_sweep(a, m))

    p = sub.add_parser("sweep-bethe", help="H2 per Bethe Hessian eigenvector over r")
    p.add_argument("graph")
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--points", type=int, default=30)
    p.add_argument("--r", type=float, action="append", help="explicit r value (repeatable)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep_bethe)

    p = sub.add_parser("real", help="order and cluster one edge list")
    p.add_argument("graph")
    _add_matrix_flags(p, many=True)
    p.add_argument("--k", type=int, action="append")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--export-dir", help="directory for row,col,group CSVs")
    p.set_defaults(func=cmd_real)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (EdgeListError, ConfigError, InfeasibleParametersError, UndefinedMetricError,
            ValueError, OSError) as exc:
        print(f"graphorder: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
