"""Batch command-line front end.

One subcommand per module concern; machine-readable JSON (or CSV for the
geometry sweep) first, human tables behind --pretty.  Reports are
deterministic for a fixed seed, and the exit code is nonzero whenever an
underlying check reports a violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from . import charclasses, complexes, geometry, graphs

WORKERS_ENV = "STABLEKNESER_WORKERS"


@dataclass
class RunConfig:
    command: str
    n: Optional[int] = None
    k: Optional[int] = None
    m: Optional[int] = None
    n_range: Optional[tuple[int, int]] = None
    max_degree: int = 64
    zero_tol: float = 1e-9
    samples: int = 100000
    seed: int = 0
    out: Optional[str] = None
    pretty: bool = False
    chromatic: bool = False
    critical: bool = False
    aut: bool = False
    sweep: bool = False
    workers: int = 1


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    a, b = int(lo), int(hi if hi else lo)
    if b < a:
        raise argparse.ArgumentTypeError("empty range %r" % text)
    return a, b


def sphere_betti(k: int) -> list[int]:
    if k == 0:
        return [2]
    return [1] + [0] * (k - 1) + [1]


def cmd_graph(cfg: RunConfig) -> tuple[dict, int]:
    g = graphs.stable_kneser_graph(cfg.n, cfg.k)
    report = {
        "command": "graph",
        "n": cfg.n,
        "k": cfg.k,
        "m": 2 * cfg.n + cfg.k,
        "vertex_count": g.n,
        "edge_count": len(g.edges(include_loops=False)),
    }
    status = 0
    if cfg.chromatic:
        chi, witness = graphs.chromatic_number(g, return_colouring=True)
        report["chi"] = chi
        report["chi_witness"] = witness
        if not graphs.is_valid_colouring(g, witness):
            status = 1
    if cfg.critical:
        report["critical"] = graphs.vertex_criticality_check(g)
    if cfg.aut:
        report["aut_order"] = graphs.automorphism_group_order(g)
    return report, status


def cmd_homology(cfg: RunConfig) -> tuple[dict, int]:
    g = graphs.stable_kneser_graph(cfg.n, cfg.k)
    poset = complexes.hom_poset(graphs.k2(), g)
    hom_betti = list(complexes.z2_betti(complexes.order_complex(poset)))
    nc_betti = list(complexes.z2_betti(complexes.neighbourhood_complex(g)))
    expected = sphere_betti(cfg.k)
    report = {
        "command": "homology",
        "n": cfg.n,
        "k": cfg.k,
        "hom_betti": hom_betti,
        "neighbourhood_betti": nc_betti,
        "expected_sphere_betti": expected,
        "matches_sphere": hom_betti == expected and nc_betti == expected,
    }
    return report, 0 if report["matches_sphere"] else 1


def cmd_matroid(cfg: RunConfig) -> tuple[dict, int]:
    from .matroid import enumerate_cocircuits, enumerate_covectors
    covs = enumerate_covectors(cfg.m, cfg.k)
    cocs = enumerate_cocircuits(cfg.m, cfg.k)
    report = {
        "command": "matroid",
        "m": cfg.m,
        "k": cfg.k,
        "covectors": len(covs),
        "cocircuits": len(cocs),
    }
    status = 0
    try:
        realization = geometry.verify_realization(
            cfg.m, cfg.k, samples=cfg.samples, seed=cfg.seed,
            zero_tol=cfg.zero_tol)
        report["realization"] = realization
    except geometry.RealizationError as exc:
        report["realization"] = exc.report
        report["realization"]["status"] = "fail"
        status = 1
    return report, status


def _classify_cell(args: tuple[int, int, int]) -> dict:
    n, k, max_degree = args
    return charclasses.classify(n, k, max_degree).to_json_dict()


def cmd_classify(cfg: RunConfig) -> tuple[dict, int]:
    lo, hi = cfg.n_range if cfg.n_range else (cfg.n, cfg.n)
    cells = [(n, cfg.k, cfg.max_degree) for n in range(lo, hi + 1)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_classify_cell, cells))
    else:
        rows = [_classify_cell(c) for c in cells]
    rows.sort(key=lambda r: (r["n"], r["k"]))
    report = {"command": "classify", "k": cfg.k,
              "max_degree": cfg.max_degree, "reports": rows}
    return report, 0


GEOMETRY_CSV_HEADER = ("n,k,min_vertex_norm,max_edge_defect,"
                       "eq3_sigma_dev,eq3_rho_dev,eq3_period_dev,group_relation_dev")


def geometry_csv(rows: Sequence[dict]) -> str:
    lines = [GEOMETRY_CSV_HEADER]
    for row in rows:
        lines.append("%d,%d,%s,%s,%s,%s,%s,%s" % (
            row["n"], row["k"],
            repr(row["min_vertex_norm"]), repr(row["max_edge_defect"]),
            repr(row["eq3_sigma_dev"]), repr(row["eq3_rho_dev"]),
            repr(row["eq3_period_dev"]), repr(row["group_relation_dev"])))
    return "\n".join(lines) + "\n"


def cmd_geometry(cfg: RunConfig) -> tuple[str, int]:
    if cfg.sweep:
        lo, hi = cfg.n_range if cfg.n_range else (cfg.n, cfg.n)
        ns = range(lo, hi + 1)
    else:
        ns = [cfg.n]
    rows = [geometry.geometry_row(n, cfg.k) for n in ns]
    status = 0
    for row in rows:
        worst = max(row["eq3_sigma_dev"], row["eq3_rho_dev"],
                    row["eq3_period_dev"], row["group_relation_dev"])
        if worst >= cfg.zero_tol:
            status = 1
    return geometry_csv(rows), status


def _pretty_lines(doc: dict) -> str:
    lines = []
    for key, value in doc.items():
        if key == "reports" and isinstance(value, list):
            lines.append("reports:")
            for row in value:
                lines.append("  n=%-3d k=%-3d m=%-3d %-24s window=%s" % (
                    row["n"], row["k"], row["m"], row["verdict"],
                    row["window"]))
        else:
            lines.append("%s: %s" % (key, value))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true",
                        help="human-readable output instead of JSON")
    common.add_argument("--out", help="write the report to this path")
    parser = argparse.ArgumentParser(
        prog="stablekneser",
        description="stable Kneser graphs, their matroid, homology, "
                    "geometry and characteristic-class classification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", parents=[common],
                       help="graph-level invariants of SG_{n,k}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--chromatic", action="store_true")
    p.add_argument("--critical", action="store_true")
    p.add_argument("--aut", action="store_true")

    p = sub.add_parser("homology", parents=[common], help="Betti numbers of Hom(K_2, SG) and N(SG)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("matroid", parents=[common], help="covector counts and realization check")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--zero-tol", type=float, default=1e-9)

    p = sub.add_parser("classify", parents=[common], help="test-graph classification sweep")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", type=_parse_range)
    p.add_argument("--max-degree", type=int, default=64)

    p = sub.add_parser("geometry", parents=[common], help="norm/defect/equivariance CSV")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--n-range", type=_parse_range)
    p.add_argument("--zero-tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("n", "k", "m", "max_degree", "samples", "seed", "out",
                 "pretty", "chromatic", "critical", "aut", "sweep"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if getattr(args, "zero_tol", None) is not None:
        cfg.zero_tol = args.zero_tol
    if getattr(args, "n_range", None) is not None:
        cfg.n_range = args.n_range
    cfg.workers = max(1, int(os.environ.get(WORKERS_ENV, "1")))
    return cfg


def run(cfg: RunConfig) -> tuple[str, int]:
    if cfg.command == "graph":
        doc, status = cmd_graph(cfg)
    elif cfg.command == "homology":
        doc, status = cmd_homology(cfg)
    elif cfg.command == "matroid":
        doc, status = cmd_matroid(cfg)
    elif cfg.command == "classify":
        if cfg.n_range is None and cfg.n is None:
            raise SystemExit("classify needs --n or --n-range")
        doc, status = cmd_classify(cfg)
    elif cfg.command == "geometry":
        if not cfg.sweep and cfg.n is None:
            raise SystemExit("geometry needs --n (or --sweep with --n-range)")
        if cfg.sweep and cfg.n_range is None and cfg.n is None:
            raise SystemExit("sweep needs --n-range")
        text, status = cmd_geometry(cfg)
        return text, status
    else:  # pragma: no cover - argparse guards this
        raise SystemExit("unknown command %r" % cfg.command)
    if cfg.pretty:
        return _pretty_lines(doc), status
    return json.dumps(doc, sort_keys=True) + "\n", status


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    text, status = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
