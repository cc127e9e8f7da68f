"""Command-line surface: coeffs, distinguish, gen, bench, train.

Exit codes: 0 success, 1 parse error, 2 descriptor error.  Diagnostics go to
standard error; primary outputs are byte-identical across runs for fixed
seeds (timings excluded).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import wl
from .datasets import (
    build_cycle_dataset,
    read_corpus,
    read_dataset,
    split_dataset,
    write_dataset,
)
from .descriptors import (
    Descriptor,
    DescriptorError,
    Encoding,
    coefficient_table,
    cycle_count,
    edge_descriptor_value,
)
from .graphs import GraphError, GraphParseError, NamedGraphSpec, generate_named, parse_graph
from .neural import ModelSpec, params_to_json_obj, train_classifier

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DESCRIPTOR = 2

THREADS_ENV = "UNIONSUB_THREADS"


def _read_graph(path):
    try:
        return parse_graph(Path(path).read_text(encoding="ascii"))
    except OSError as exc:
        raise GraphParseError(f"cannot read {path}: {exc}") from None


def _write_output(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text, encoding="ascii")


def cmd_coeffs(args):
    g = _read_graph(args.graph)
    kind = Descriptor.parse(args.kind)
    encoding = Encoding.parse(args.enc)
    table = coefficient_table(g, kind, encoding)
    if args.format == "json":
        text = json.dumps(table.to_json_obj(), indent=2) + "\n"
    else:
        text = table.to_csv_text()
    _write_output(text, args.out)
    return EXIT_OK


def cmd_distinguish(args):
    g1 = _read_graph(args.graph1)
    g2 = _read_graph(args.graph2)
    kind = Descriptor.parse(args.kind)
    encoding = Encoding.parse(args.enc)
    verdict = wl.distinguish_pair(g1, g2, kind, encoding)
    sys.stdout.write(json.dumps(verdict.to_json_obj()) + "\n")
    return EXIT_OK


def _gen_graphs(spec_text, count, seed):
    import random

    if spec_text.startswith("er"):
        # synthetic benchmark corpus: er[:NMIN-NMAX[:AVGDEG]]
        parts = spec_text.split(":")
        lo, hi = 20, 50
        avg_degree = 3.7
        if len(parts) > 1 and parts[1]:
            lo, _, hi = parts[1].partition("-")
            lo, hi = int(lo), int(hi or lo)
        if len(parts) > 2:
            avg_degree = float(parts[2])
        rng = random.Random(seed)
        from .graphs import random_graph

        graphs = []
        for _ in range(count):
            n = rng.randint(lo, hi)
            graphs.append(random_graph(n, min(1.0, avg_degree / (n - 1)), rng))
        return graphs, [0] * len(graphs)
    spec = NamedGraphSpec.parse(spec_text)
    if spec.kind == "four-cycle-pair":
        return build_cycle_dataset(spec.param, count, seed)
    graphs = generate_named(spec, seed=seed)
    return graphs, [0] * len(graphs)


def cmd_gen(args):
    graphs, labels = _gen_graphs(args.spec, args.count, args.seed)
    write_dataset(args.out, graphs, labels)
    sys.stderr.write(f"wrote {len(graphs)} graphs to {args.out}\n")
    return EXIT_OK


BENCH_KINDS = ("count-ne", "union-path", "betweenness", "curvature", "cycle-count:6")


def _time_kind(kind, graphs, encoding):
    """Wall-clock one full pass of a descriptor kind over the corpus.

    Per-edge computation is self-contained (no caching across edges), so the
    comparison reflects honest per-edge costs.
    """
    start = time.perf_counter()
    if kind.kind == "cycle-count":
        for g in graphs:
            cycle_count(g, kind.cycle_len)
    else:
        for g in graphs:
            for v, u in g.edges:
                edge_descriptor_value(g, v, u, kind, encoding)
    return time.perf_counter() - start


def _time_kind_parallel(kind, graphs, encoding, threads):
    from concurrent.futures import ThreadPoolExecutor

    start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        if kind.kind == "cycle-count":
            list(pool.map(lambda g: cycle_count(g, kind.cycle_len), graphs))
        else:
            jobs = [(g, v, u) for g in graphs for v, u in g.edges]
            list(
                pool.map(
                    lambda job: edge_descriptor_value(
                        job[0], job[1], job[2], kind, encoding
                    ),
                    jobs,
                )
            )
    return time.perf_counter() - start


def run_bench(graphs, kinds, repeats, encoding=Encoding.SVD_SUM, parallel=False):
    """Median-of-repeats wall times per kind on the identical corpus."""
    threads = int(os.environ.get(THREADS_ENV, "4"))
    total_edges = sum(g.num_edges for g in graphs)
    report = {
        "graphs": len(graphs),
        "edges": total_edges,
        "repeats": repeats,
        "parallel": parallel,
        "kinds": {},
    }
    for kind_text in kinds:
        kind = Descriptor.parse(kind_text)
        times = []
        for _ in range(repeats):
            if parallel:
                times.append(_time_kind_parallel(kind, graphs, encoding, threads))
            else:
                times.append(_time_kind(kind, graphs, encoding))
        times.sort()
        median = times[len(times) // 2]
        report["kinds"][kind_text] = {
            "seconds": median,
            "edges": total_edges,
            "us_per_edge": median / total_edges * 1e6,
        }
    return report


def cmd_bench(args):
    graphs = read_corpus(args.corpus)
    kinds = args.kinds.split(",") if args.kinds else list(BENCH_KINDS)
    report = run_bench(
        graphs, kinds, args.repeats, Encoding.parse(args.enc), args.parallel
    )
    text = json.dumps(report, indent=2) + "\n"
    _write_output(text, args.out)
    return EXIT_OK


def cmd_train(args):
    dataset = read_dataset(args.dataset)
    train, val, test = split_dataset(dataset)
    spec = ModelSpec.parse(args.model, hidden=args.hidden)
    report = train_classifier(
        train, val, test, spec, epochs=args.epochs, seed=args.seed,
        batch_size=args.batch_size,
    )
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    curve_path = out_dir / "training_log.csv"
    with open(curve_path, "w", encoding="ascii") as fh:
        fh.write("epoch,train_loss,val_acc\n")
        for epoch, loss, val_acc in report.loss_curve:
            fh.write(f"{epoch},{loss:.10g},{val_acc:.10g}\n")
    ckpt_path = out_dir / "checkpoint.json"
    ckpt_path.write_text(
        json.dumps(params_to_json_obj(report.model)) + "\n", encoding="ascii"
    )
    metrics = {
        "model": args.model,
        "epochs": args.epochs,
        "seed": args.seed,
        "train_acc": report.train_acc,
        "val_acc": report.val_acc,
        "test_acc": report.test_acc,
        "training_log": str(curve_path),
        "checkpoint": str(ckpt_path),
    }
    sys.stdout.write(json.dumps(metrics, indent=2) + "\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="unionsub",
        description="Union-subgraph structural coefficients and harnesses",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="per-edge coefficient table for one graph")
    p.add_argument("graph")
    p.add_argument("--kind", default="union-path")
    p.add_argument("--enc", default="svd-sum")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("distinguish", help="1-WL vs coefficient verdict for a pair")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--kind", default="union-path")
    p.add_argument("--enc", default="svd-sum")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("gen", help="generate graphs or datasets")
    p.add_argument("spec", help="cycle:N | complete:N | path:N | rook4x4 | "
                                "shrikhande | two-triangles-vs-c6 | "
                                "four-cycle-pair:K | er[:LO-HI[:DEG]]")
    p.add_argument("--count", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="descriptor preprocessing-time comparison")
    p.add_argument("corpus")
    p.add_argument("--kinds", help="comma-separated descriptor kinds")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--enc", default="svd-sum")
    p.add_argument("--parallel", action="store_true",
                   help=f"parallel over edges ({THREADS_ENV} sets thread count)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("train", help="train a toy graph classifier on a dataset")
    p.add_argument("dataset")
    p.add_argument("--model", default="union-gcn",
                   choices=("gcn", "gin", "union-gcn", "union-gin", "union"))
    p.add_argument("--epochs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hidden", type=int, default=32)
    p.add_argument("--batch-size", type=int, default=16)
    p.add_argument("--out")
    p.set_defaults(func=cmd_train)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except DescriptorError as exc:
        sys.stderr.write(f"descriptor error: {exc}\n")
        return EXIT_DESCRIPTOR
    except GraphError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
