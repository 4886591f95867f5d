"""Command-line front end.

Subcommands: census, cluster, synth, eval, core-extract, compare.
JSON is the canonical output format (floats at 12 significant digits);
CSV is a lossy convenience projection.  Failures exit nonzero after
printing a machine-readable error object with a stable code.

Thread count of the underlying BLAS is controlled by the usual
environment variables (OMP_NUM_THREADS / OPENBLAS_NUM_THREADS); the
package's own kernels are single-threaded and deterministic.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .baselines import baseline_spectral_clustering, symmetrize, cut_objectives
from .cluster import ClusterOptions, ClusteringResult, tendency_spectral_clustering
from .errors import MutclustError
from .graph import Digraph, extract_core, load_edge_list, write_edge_list
from .synth import (
    SyntheticSpec,
    generate_planted,
    paper_three_cluster_spec,
    paper_two_cluster_spec,
    planted_ari_experiment,
)
from .tendency import dyad_census, graph_tendency, trcut, average_tendency_report, report_as_dict


def _round_floats(obj, sig: int = 12):
    if isinstance(obj, float):
        return float(f"{obj:.{sig}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v, sig) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, sig) for v in obj]
    return obj


def _emit(payload, args) -> None:
    if getattr(args, "format", "json") == "csv":
        text = _to_csv(payload)
    else:
        text = json.dumps(_round_floats(payload), indent=2) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flatten(prefix: str, obj, rows: list) -> None:
    if isinstance(obj, dict):
        for key, val in obj.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), val, rows)
    elif isinstance(obj, (list, tuple)):
        for idx, val in enumerate(obj):
            _flatten(f"{prefix}[{idx}]", val, rows)
    else:
        rows.append((prefix, obj))


def _to_csv(payload) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["key", "value"])
    rows: list = []
    _flatten("", _round_floats(payload), rows)
    writer.writerows(rows)
    return buf.getvalue()


def _parse_method(name: str):
    if name == "tendency":
        return ("tendency", None)
    if name.startswith("baseline:"):
        return ("baseline", name.split(":", 1)[1])
    raise ValueError(f"unknown method {name!r}; use 'tendency' or 'baseline:<kind>'")


def _cluster_opts(args) -> ClusterOptions:
    return ClusterOptions(
        seed=args.seed,
        k_max=args.k_max,
        tol=args.tol,
        max_iter=args.max_iter,
    )


def _load_graph(args) -> Digraph:
    return load_edge_list(args.input)


def cmd_census(args) -> int:
    g = _load_graph(args)
    census = dyad_census(g)
    payload = {
        "nodes": g.n,
        "edges": g.n_edges,
        "census": census.as_dict(),
        "graph_tendency": graph_tendency(g).as_dict() if g.n >= 2 else None,
    }
    if g.ingest is not None:
        payload["ingest"] = {
            "self_loops_dropped": g.ingest.self_loops_dropped,
            "duplicates_merged": g.ingest.duplicates_merged,
        }
    _emit(payload, args)
    return 0


def _labels_to_dot(g: Digraph, result: ClusteringResult) -> str:
    palette = ["red", "blue", "green", "orange", "purple", "brown", "cyan", "magenta"]
    lines = ["digraph clusters {"]
    for node in range(g.n):
        color = palette[result.labels[node] % len(palette)]
        lines.append(
            f'  n{g.node_labels[node]} [cluster={result.labels[node]}, color={color}];'
        )
    rows, cols = g.edge_array()
    for s, t in zip(g.node_labels[rows].tolist(), g.node_labels[cols].tolist()):
        lines.append(f"  n{s} -> n{t};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_cluster(args) -> int:
    g = _load_graph(args)
    kind, sub = _parse_method(args.method)
    k = args.k if args.k == "auto" else int(args.k)
    opts = _cluster_opts(args)
    if kind == "tendency":
        result = tendency_spectral_clustering(g, k, opts)
    else:
        result = baseline_spectral_clustering(g, sub, k, opts)

    if args.format == "csv":
        text = result.labels_csv()
    elif args.format == "dot":
        text = _labels_to_dot(g, result)
    else:
        text = json.dumps(_round_floats(result.to_dict()), indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


PRESETS = {
    "two-cluster": paper_two_cluster_spec,
    "three-cluster": paper_three_cluster_spec,
}


def _resolve_spec(args) -> SyntheticSpec:
    if getattr(args, "preset", None):
        return PRESETS[args.preset]()
    if not args.spec:
        raise MutclustError("either --spec or --preset is required")
    with open(args.spec) as fh:
        return SyntheticSpec.from_json(fh.read())


def cmd_synth(args) -> int:
    spec = _resolve_spec(args)
    if args.seed is not None:
        from dataclasses import replace

        spec = replace(spec, seed=args.seed)
    g, labels = generate_planted(spec)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        write_edge_list(g, out)
    finally:
        if args.output:
            out.close()
    if args.labels:
        with open(args.labels, "w") as fh:
            fh.write("node,cluster\n")
            for node, lab in enumerate(labels):
                fh.write(f"{node},{lab}\n")
    return 0


def _read_labels(path: str, g: Digraph) -> np.ndarray:
    """Two-column node,cluster CSV (header optional); original node ids."""
    by_label = {}
    with open(path) as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) != 2:
                raise MutclustError(f"labels file line {line_no}: expected two columns")
            if line_no == 1 and not parts[0].lstrip("-").isdigit():
                continue  # header
            by_label[int(parts[0])] = int(parts[1])
    labels = np.empty(g.n, dtype=np.int64)
    for node in range(g.n):
        key = int(g.node_labels[node])
        if key not in by_label:
            raise MutclustError(f"labels file misses node {key}")
        labels[node] = by_label[key]
    return labels


def cmd_eval(args) -> int:
    g = _load_graph(args)
    labels = _read_labels(args.labels, g)
    k = int(labels.max()) + 1
    report = average_tendency_report(g, labels, k)
    affinity = symmetrize(g, "average")
    payload = {
        "k": k,
        "tendency_report": report_as_dict(report),
        "trcut": trcut(g, labels, k),
        "cuts_average_symmetrization": cut_objectives(affinity, labels, k),
    }
    if args.format == "csv":
        scopes = [("graph", report["graph"])]
        scopes += [(f"cluster_{c}", s) for c, s in enumerate(report["clusters"])]
        scopes.append(("cross", report["cross"]))
        lines = ["scope,theta_total,n_pairs,theta_avg"]
        for name, stats in scopes:
            avg = "" if stats.theta_avg is None else f"{stats.theta_avg:.12g}"
            lines.append(f"{name},{stats.theta_total:.12g},{stats.n_pairs},{avg}")
        text = "\n".join(lines) + "\n"
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    _emit(payload, args)
    return 0


def cmd_core_extract(args) -> int:
    g = _load_graph(args)
    core = extract_core(g, threshold=args.core_threshold, mode=args.core_mode)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        write_edge_list(core, out)
    finally:
        if args.output:
            out.close()
    sys.stderr.write(f"core: {core.n} nodes, {core.n_edges} edges\n")
    return 0


def cmd_compare(args) -> int:
    spec = _resolve_spec(args)
    methods = args.method or ["tendency", "baseline:average"]
    for m in methods:
        _parse_method(m)
    k = args.k if args.k is None or args.k == "auto" else int(args.k)
    report = planted_ari_experiment(
        spec, methods, repeats=args.repeats, master_seed=args.seed, k=k
    )
    _emit(report, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mutclust",
        description="Cluster directed social graphs by mutuality tendency.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, input_required=True):
        if input_required:
            p.add_argument("--input", required=True, help="edge-list file (src dst per line)")
        p.add_argument("--output", help="output path (default: stdout)")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("census", help="dyad census and whole-graph tendency")
    add_common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("cluster", help="spectral clustering of one graph")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--format", choices=["json", "csv", "dot"], default="json")
    p.add_argument("--method", default="tendency",
                   help="'tendency' or 'baseline:<average|bibliographic|cocitation|circulation|modularity>'")
    p.add_argument("--k", default="2", help="cluster count or 'auto'")
    p.add_argument("--k-max", type=int, default=None, dest="k_max")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=600, dest="max_iter")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("synth", help="generate a planted-partition digraph")
    p.add_argument("--spec", help="SyntheticSpec JSON file")
    p.add_argument("--preset", choices=sorted(PRESETS), help="built-in benchmark spec")
    p.add_argument("--output", help="edge-list output path")
    p.add_argument("--labels", help="write planted labels CSV here")
    p.add_argument("--seed", type=int, default=None, help="override the spec seed")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("eval", help="tendency/cut report for a given labeling")
    add_common(p)
    p.add_argument("--labels", required=True, help="node,cluster CSV")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("core-extract", help="low-degree filter then largest SCC")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--core-threshold", type=int, default=2, dest="core_threshold")
    p.add_argument("--core-mode", choices=["either_low", "both_low"],
                   default="either_low", dest="core_mode")
    p.set_defaults(func=cmd_core_extract)

    p = sub.add_parser("compare", help="planted-recovery experiment across methods")
    p.add_argument("--spec")
    p.add_argument("--preset", choices=sorted(PRESETS), help="built-in benchmark spec")
    p.add_argument("--output")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--method", action="append",
                   help="repeatable; default: tendency and baseline:average")
    p.add_argument("--k", default=None, help="cluster count, 'auto', or default planted count")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MutclustError as exc:
        error = {"error": {"code": exc.code, "message": str(exc)}}
        sys.stderr.write(json.dumps(error) + "\n")
        return 1
    except (ValueError, OSError) as exc:
        error = {"error": {"code": "invalid-input", "message": str(exc)}}
        sys.stderr.write(json.dumps(error) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
