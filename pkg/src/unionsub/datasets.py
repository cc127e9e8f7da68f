"""Dataset directories: one graph file per graph plus labels.csv.

The cycle-detection dataset pairs k-cycle-containing positives with
degree-matched k-cycle-free negatives (see graphs.four_cycle_pair) and is
fully determined by its seed.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

from .graphs import Graph, GraphError, four_cycle_pair, parse_graph


def write_dataset(directory, graphs, labels):
    """Write graphs as edge-list files plus labels.csv (filename,label)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    width = max(4, len(str(max(len(graphs) - 1, 0))))
    rows = []
    for i, (g, label) in enumerate(zip(graphs, labels)):
        name = f"graph_{i:0{width}d}.txt"
        (directory / name).write_text(g.to_edge_list_text(), encoding="ascii")
        rows.append((name, label))
    with open(directory / "labels.csv", "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(["filename", "label"])
        writer.writerows(rows)


def read_dataset(directory):
    """Load (graph, label) pairs in labels.csv order."""
    directory = Path(directory)
    labels_path = directory / "labels.csv"
    if not labels_path.exists():
        raise GraphError(f"no labels.csv in {directory}")
    dataset = []
    with open(labels_path, newline="", encoding="ascii") as fh:
        for row in csv.DictReader(fh):
            g = parse_graph((directory / row["filename"]).read_text("ascii"))
            dataset.append((g, int(row["label"])))
    return dataset


def read_corpus(directory):
    """Load all graph files of a directory (no labels required), sorted by name."""
    directory = Path(directory)
    graphs = []
    for path in sorted(directory.iterdir()):
        if path.name == "labels.csv" or path.is_dir():
            continue
        graphs.append(parse_graph(path.read_text("ascii")))
    if not graphs:
        raise GraphError(f"no graph files in {directory}")
    return graphs


def build_cycle_dataset(k, count, seed, num_nodes=14, num_edges=18):
    """`count` graphs with balanced labels: label 1 iff a k-cycle is present.

    Graphs come in degree-matched positive/negative pairs, interleaved so
    any contiguous split stays balanced.
    """
    if count % 2 != 0:
        raise GraphError("count must be even for balanced labels")
    rng = random.Random(seed)
    graphs, labels = [], []
    for _ in range(count // 2):
        pos, neg = four_cycle_pair(
            k, rng, num_nodes=num_nodes, num_edges=num_edges
        )
        graphs += [pos, neg]
        labels += [1, 0]
    return graphs, labels


def split_dataset(dataset, fractions=(0.45, 0.05, 0.5)):
    """Deterministic contiguous train/val/test split by position."""
    n = len(dataset)
    n_train = int(fractions[0] * n)
    n_val = int(fractions[1] * n)
    train = dataset[:n_train]
    val = dataset[n_train : n_train + n_val]
    test = dataset[n_train + n_val :]
    return train, val, test
