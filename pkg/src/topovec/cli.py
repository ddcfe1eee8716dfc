"""Command-line entry point binding all modules into file-in/file-out runs.

Subcommands: decompose, betti, dist, embed, mean, simulate,
simulate-benchmark, classify, permtest. Structured reports are JSON with a
"config" echo block and floats at 17 significant digits; tabular data is
CSV. Report subcommands can additionally render a matplotlib figure next to
the data output via --figure.

Exit status: 0 success, 1 input error (bad files or values), 2 usage error
(bad flags), 3 internal invariant violation.
"""

import argparse
import json
import math
import sys
import traceback
from pathlib import Path

import numpy as np

from . import __version__, jsonio
from .barcode import betti_curves, counts_for_size, decompose
from .classify import LabeledDataset, nested_cv, permutation_test
from .embed import embed_dataset, reconstruct_barcode
from .graph import load_dataset, read_network, write_edge_list_csv
from .simulate import ModularSpec, generate, generate_benchmark
from .wasserstein import barcode_mean, product_metric, wasserstein_approx

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_USAGE_ERROR = 2
EXIT_INTERNAL_ERROR = 3


def _parse_p(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        p = float(text)
    except ValueError:
        raise ValueError(f"invalid p value {text!r}; expected a number >= 1 or 'inf'") from None
    if p < 1:
        raise ValueError("p must be >= 1 or 'inf'")
    return p


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ValueError(f"invalid numeric list {text!r}") from None
    if not values:
        raise ValueError(f"empty numeric list {text!r}")
    return values


def _parse_ints(text: str) -> tuple[int, ...]:
    values = _parse_floats(text)
    ints = tuple(int(v) for v in values)
    if any(i != v for i, v in zip(ints, values)):
        raise ValueError(f"expected integers in {text!r}")
    return ints


def _write_text(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _write_json(payload: dict, out: str) -> None:
    _write_text(jsonio.dumps(payload) + "\n", out)


def _config_echo(subcommand: str, **flags) -> dict:
    config = {"subcommand": subcommand, "version": __version__}
    config.update(flags)
    return config


def _load_single_network(path: str, fmt: str, node_count):
    if fmt == "edgelist" and node_count is None:
        raise ValueError(f"--node-count is required for edgelist input {path!r}")
    return read_network(path, fmt, node_count)


def _cmd_decompose(args) -> int:
    net = _load_single_network(args.input, args.format, args.node_count)
    decomposition = decompose(net)
    payload = {
        "node_count": decomposition.node_count,
        "births": decomposition.births,
        "deaths": decomposition.deaths,
        "config": _config_echo(
            "decompose",
            input=args.input,
            format=args.format,
            node_count=args.node_count,
        ),
    }
    _write_json(payload, args.out)
    if args.figure:
        from .figures import save_barcode_figure

        save_barcode_figure(decomposition, args.figure)
    return EXIT_OK


def _cmd_betti(args) -> int:
    net = _load_single_network(args.input, args.format, args.node_count)
    if args.thresholds is None:
        thresholds = np.unique(net.edge_weights())
    else:
        thresholds = np.asarray(_parse_floats(args.thresholds))
    curve = betti_curves(net, thresholds)
    lines = ["epsilon,beta0,beta1"]
    for eps, b0, b1 in zip(curve.thresholds, curve.beta0, curve.beta1):
        lines.append(f"{float(eps)!r},{int(b0)},{int(b1)}")
    _write_text("\n".join(lines) + "\n", args.out)
    if args.figure:
        from .figures import save_betti_figure

        save_betti_figure(curve, args.figure)
    return EXIT_OK


def _cmd_dist(args) -> int:
    p = _parse_p(args.p)
    net_a = _load_single_network(args.network_a, args.format, args.node_count_a)
    net_b = _load_single_network(args.network_b, args.format, args.node_count_b)
    vec_a, vec_b = embed_dataset([net_a, net_b], args.ref_size)
    ref_size = vec_a.ref_size
    m, n = counts_for_size(ref_size)
    w_births = wasserstein_approx(vec_a.births_block, vec_b.births_block, m, p)
    w_deaths = wasserstein_approx(vec_a.deaths_block, vec_b.deaths_block, n, p)
    config = _config_echo(
        "dist",
        network_a=args.network_a,
        network_b=args.network_b,
        format=args.format,
        node_count_a=args.node_count_a,
        node_count_b=args.node_count_b,
        p=args.p,
        ref_size=ref_size,
    )
    if args.ref_size is not None and args.ref_size > max(net_a.node_count, net_b.node_count):
        config["ref_size_exceeds_max"] = True
    payload = {
        "w_births": w_births,
        "w_deaths": w_deaths,
        "d_product": product_metric(vec_a, vec_b, p),
        "config": config,
    }
    _write_json(payload, args.out)
    return EXIT_OK


def _embed_manifest(args):
    networks, labels = load_dataset(args.manifest)
    vectors = embed_dataset(networks, args.ref_size)
    exceeds = args.ref_size is not None and args.ref_size > max(
        net.node_count for net in networks
    )
    return vectors, labels, exceeds


def _cmd_embed(args) -> int:
    vectors, labels, _ = _embed_manifest(args)
    ref_size = vectors[0].ref_size
    m, n = counts_for_size(ref_size)
    header = (
        ["label", "ref_size"]
        + [f"b_{j}" for j in range(1, m + 1)]
        + [f"d_{j}" for j in range(1, n + 1)]
    )
    lines = [",".join(header)]
    for label, vec in zip(labels, vectors):
        fields = [label, str(ref_size)]
        fields += [repr(v) for v in vec.births_block.tolist()]
        fields += [repr(v) for v in vec.deaths_block.tolist()]
        lines.append(",".join(fields))
    _write_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_mean(args) -> int:
    vectors, _, exceeds = _embed_manifest(args)
    births, deaths = reconstruct_barcode(barcode_mean(vectors))
    config = _config_echo("mean", manifest=args.manifest, ref_size=args.ref_size)
    if exceeds:
        config["ref_size_exceeds_max"] = True
    payload = {
        "ref_size": vectors[0].ref_size,
        "births": births,
        "deaths": deaths,
        "config": config,
    }
    _write_json(payload, args.out)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    spec = ModularSpec(
        node_count=args.nodes,
        module_count=args.modules,
        within_probability=args.r,
        seed=args.seed,
    )
    net = generate(spec)
    write_edge_list_csv(net, args.out)
    if args.figure:
        from .figures import save_network_figure

        save_network_figure(net, args.figure)
    return EXIT_OK


def _cmd_simulate_benchmark(args) -> int:
    sizes = _parse_ints(args.sizes)
    modules = _parse_ints(args.modules)
    if len(modules) != 2:
        raise ValueError("--modules needs exactly two module counts, e.g. 3,5")
    networks, labels = generate_benchmark(
        sizes=sizes,
        r=args.r,
        per_group=args.per_group,
        seed=args.seed,
        modules=(modules[0], modules[1]),
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for k, (net, label) in enumerate(zip(networks, labels)):
        name = f"net_{k:03d}_{label}.csv"
        write_edge_list_csv(net, out_dir / name)
        records.append(
            {
                "path": name,
                "format": "edgelist",
                "node_count": net.node_count,
                "label": label,
            }
        )
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(jsonio.dumps(records) + "\n", encoding="utf-8")
    counts: dict[str, int] = {}
    for label in labels:
        counts[label] = counts.get(label, 0) + 1
    payload = {
        "manifest": str(manifest_path),
        "network_count": len(networks),
        "per_label_counts": counts,
        "config": _config_echo(
            "simulate-benchmark",
            sizes=list(sizes),
            modules=list(modules),
            r=args.r,
            per_group=args.per_group,
            seed=args.seed,
            out_dir=str(out_dir),
        ),
    }
    _write_json(payload, args.out)
    return EXIT_OK


def _classification_inputs(args):
    networks, labels = load_dataset(args.manifest)
    data = LabeledDataset.from_networks(networks, labels, args.ref_size)
    exceeds = args.ref_size is not None and args.ref_size > max(
        net.node_count for net in networks
    )
    return data, exceeds


def _cmd_classify(args) -> int:
    grid = _parse_floats(args.grid)
    data, exceeds = _classification_inputs(args)
    report = nested_cv(
        data,
        outer_folds=args.outer,
        inner_folds=args.inner,
        c_grid=grid,
        seed=args.seed,
        threads=args.threads,
        standardize=args.standardize,
    )
    config = _config_echo(
        "classify",
        manifest=args.manifest,
        outer=args.outer,
        inner=args.inner,
        grid=list(grid),
        seed=args.seed,
        ref_size=data.ref_size,
        standardize=args.standardize,
        threads=args.threads,
    )
    if exceeds:
        config["ref_size_exceeds_max"] = True
    payload = {
        "accuracy": report.accuracy,
        "fold_accuracies": list(report.fold_accuracies),
        "chosen_c": list(report.chosen_c),
        "classes": list(report.classes),
        "confusion": report.confusion,
        "outer_folds": report.outer_folds,
        "inner_folds": report.inner_folds,
        "c_grid": list(report.c_grid),
        "seed": report.seed,
        "standardized": report.standardized,
        "config": config,
    }
    _write_json(payload, args.out)
    if args.figure:
        from .figures import save_confusion_figure

        save_confusion_figure(report, args.figure)
    return EXIT_OK


def _cmd_permtest(args) -> int:
    grid = _parse_floats(args.grid)
    data, exceeds = _classification_inputs(args)
    report = permutation_test(
        data,
        trials=args.trials,
        seed=args.seed,
        outer_folds=args.outer,
        inner_folds=args.inner,
        c_grid=grid,
        threads=args.threads,
        standardize=args.standardize,
    )
    config = _config_echo(
        "permtest",
        manifest=args.manifest,
        trials=args.trials,
        outer=args.outer,
        inner=args.inner,
        grid=list(grid),
        seed=args.seed,
        ref_size=data.ref_size,
        standardize=args.standardize,
        threads=args.threads,
    )
    if exceeds:
        config["ref_size_exceeds_max"] = True
    payload = {
        "observed_accuracy": report.observed_accuracy,
        "permutation_accuracies": list(report.permutation_accuracies),
        "p_value": report.p_value,
        "permutation_count": report.permutation_count,
        "rng_seed": report.rng_seed,
        "config": config,
    }
    _write_json(payload, args.out)
    if args.figure:
        from .figures import save_permutation_figure

        save_permutation_figure(report, args.figure)
    return EXIT_OK


def _add_network_input(parser) -> None:
    parser.add_argument("input", help="network file")
    parser.add_argument(
        "--format", choices=("edgelist", "adjacency"), default="edgelist",
        help="input format (default: %(default)s)",
    )
    parser.add_argument(
        "--node-count", type=int, default=None,
        help="number of nodes (required for edgelist input)",
    )


def _add_out(parser, what: str) -> None:
    parser.add_argument(
        "--out", default="-", help=f"{what} output path, '-' for stdout (default)"
    )


def _add_classification_flags(parser) -> None:
    parser.add_argument("--manifest", required=True, help="dataset manifest JSON")
    parser.add_argument("--outer", type=int, default=2,
                        help="outer CV folds (default: %(default)s)")
    parser.add_argument("--inner", type=int, default=5,
                        help="inner CV folds (default: %(default)s)")
    parser.add_argument("--grid", default="0.01,1,100",
                        help="comma-separated C grid (default: %(default)s)")
    parser.add_argument("--seed", type=int, required=True, help="fold/permutation seed")
    parser.add_argument("--ref-size", type=int, default=None,
                        help="reference size override (never below the largest network)")
    parser.add_argument("--standardize", action="store_true",
                        help="standardize features before the SVM (recorded in the report)")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for independent fits/trials (default: 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topovec",
        description="Classify weighted networks by topology via filtration "
        "barcodes and transport-preserving vectors.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("decompose", help="birth-death decomposition of one network")
    _add_network_input(p)
    _add_out(p, "JSON")
    p.add_argument("--figure", default=None, help="render the barcode to this image file")
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("betti", help="Betti curves of one network")
    _add_network_input(p)
    p.add_argument("--thresholds", default=None,
                   help="comma-separated ascending thresholds (default: distinct edge weights)")
    _add_out(p, "CSV")
    p.add_argument("--figure", default=None, help="render the curves to this image file")
    p.set_defaults(handler=_cmd_betti)

    p = sub.add_parser("dist", help="Wasserstein distances between two networks")
    p.add_argument("network_a", help="first network file")
    p.add_argument("network_b", help="second network file")
    p.add_argument("--format", choices=("edgelist", "adjacency"), default="edgelist",
                   help="input format of both files (default: %(default)s)")
    p.add_argument("--node-count-a", type=int, default=None,
                   help="nodes in the first network (edgelist only)")
    p.add_argument("--node-count-b", type=int, default=None,
                   help="nodes in the second network (edgelist only)")
    p.add_argument("--p", default="2", help="distance order, a number >= 1 or 'inf' (default: 2)")
    p.add_argument("--ref-size", type=int, default=None,
                   help="reference size (default: larger node count)")
    _add_out(p, "JSON")
    p.set_defaults(handler=_cmd_dist)

    p = sub.add_parser("embed", help="vector embedding of a dataset, one CSV row per network")
    p.add_argument("--manifest", required=True, help="dataset manifest JSON")
    p.add_argument("--ref-size", type=int, default=None,
                   help="reference size override (never below the largest network)")
    _add_out(p, "CSV")
    p.set_defaults(handler=_cmd_embed)

    p = sub.add_parser("mean", help="mean barcode of a dataset")
    p.add_argument("--manifest", required=True, help="dataset manifest JSON")
    p.add_argument("--ref-size", type=int, default=None,
                   help="reference size override (never below the largest network)")
    _add_out(p, "JSON")
    p.set_defaults(handler=_cmd_mean)

    p = sub.add_parser("simulate", help="generate one random modular network")
    p.add_argument("--nodes", type=int, required=True, help="number of nodes")
    p.add_argument("--modules", type=int, required=True, help="number of modules")
    p.add_argument("--r", type=float, required=True, help="within-module connection probability")
    p.add_argument("--seed", type=int, required=True, help="generator seed")
    p.add_argument("--out", required=True, help="edge-list CSV output path")
    p.add_argument("--figure", default=None, help="render the weight matrix to this image file")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("simulate-benchmark",
                       help="generate a labeled two-group benchmark plus manifest")
    p.add_argument("--sizes", default="90", help="comma-separated network sizes (default: 90)")
    p.add_argument("--modules", default="3,5",
                   help="module counts for groups L1,L2 (default: %(default)s)")
    p.add_argument("--r", type=float, required=True, help="within-module connection probability")
    p.add_argument("--per-group", type=int, required=True,
                   help="networks per (group, size) pair")
    p.add_argument("--seed", type=int, required=True, help="generator seed")
    p.add_argument("--out-dir", required=True, help="directory for networks and manifest.json")
    _add_out(p, "summary JSON")
    p.set_defaults(handler=_cmd_simulate_benchmark)

    p = sub.add_parser("classify", help="nested CV classification of a labeled dataset")
    _add_classification_flags(p)
    _add_out(p, "JSON")
    p.add_argument("--figure", default=None,
                   help="render the confusion matrix to this image file")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("permtest", help="permutation significance test of a labeled dataset")
    _add_classification_flags(p)
    p.add_argument("--trials", type=int, default=1000,
                   help="number of label permutations (default: %(default)s)")
    _add_out(p, "JSON")
    p.add_argument("--figure", default=None,
                   help="render the permutation histogram to this image file")
    p.set_defaults(handler=_cmd_permtest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
