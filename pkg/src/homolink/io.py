"""File formats: edge lists, feature matrices, diagrams, dumps, manifests.

Edge list: one edge per line, ``u v [weight]``, whitespace-separated.
Feature matrix: CSV, one row per node. All writers format floats with
``repr`` so seeded runs are byte-identical.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .diagrams import PersistenceDiagram
from .graphs import Graph


def write_edge_list(g: Graph, path: str) -> None:
    with open(path, "w") as fh:
        for u, v in g.edges:
            w = g.edge_weights.get((u, v))
            if w is None:
                fh.write(f"{u} {v}\n")
            else:
                fh.write(f"{u} {v} {w!r}\n")


def read_edge_list(path: str, n: int | None = None) -> Graph:
    edges = []
    weights = {}
    max_node = -1
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise ValueError(f"{path}:{lineno}: expected 'u v [weight]', got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: node ids must be integers") from exc
            if u < 0 or v < 0:
                raise ValueError(f"{path}:{lineno}: node ids must be nonnegative")
            edges.append((u, v))
            if len(parts) == 3:
                weights[(u, v)] = float(parts[2])
            max_node = max(max_node, u, v)
    count = max_node + 1 if n is None else n
    return Graph(count, edges, weights)


def write_features_csv(X: np.ndarray, path: str) -> None:
    with open(path, "w") as fh:
        for row in np.asarray(X, dtype=float):
            fh.write(",".join(repr(float(x)) for x in row) + "\n")


def read_features_csv(path: str) -> np.ndarray:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([float(x) for x in line.split(",")])
    if not rows:
        raise ValueError(f"{path}: empty feature matrix")
    return np.array(rows)


def load_graph(
    edges_path: str, features_path: str | None = None, n: int | None = None
) -> Graph:
    """Edge list plus optional feature CSV; node count comes from whichever is larger."""
    features = read_features_csv(features_path) if features_path else None
    g = read_edge_list(edges_path, n=n)
    if features is not None:
        count = max(g.n, features.shape[0], n or 0)
        g = Graph(count, g.edges, g.edge_weights, features)
    return g


def write_diagram_json(diagram: PersistenceDiagram, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(diagram.to_json_obj(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_diagram_json(path: str) -> PersistenceDiagram:
    with open(path) as fh:
        return PersistenceDiagram.from_json_obj(json.load(fh))


def write_manifest(out_dir: str, manifest: dict) -> None:
    with open(os.path.join(out_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_curvatures(kappa: dict, path: str) -> None:
    with open(path, "w") as fh:
        for (u, v) in sorted(kappa):
            fh.write(f"{u} {v} {float(kappa[(u, v)])!r}\n")


def write_feature_dump(features, path: str) -> None:
    """One CSV row per pair: u, v, then the image values."""
    with open(path, "w") as fh:
        for feat in features:
            u, v = feat.pair
            values = ",".join(repr(float(x)) for x in feat.image)
            fh.write(f"{u},{v},{values}\n")


def read_feature_dump(path: str) -> list[tuple[tuple[int, int], np.ndarray]]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            pair = (int(parts[0]), int(parts[1]))
            out.append((pair, np.array([float(x) for x in parts[2:]])))
    return out


def write_diagrams_jsonl(items, path: str) -> None:
    """One JSON line per pair: {"u", "v", "diagram"}."""
    with open(path, "w") as fh:
        for (u, v), diagram in items:
            fh.write(
                json.dumps({"u": u, "v": v, "diagram": diagram.to_json_obj()}, sort_keys=True)
            )
            fh.write("\n")


def write_metrics_csv(history, path: str) -> None:
    with open(path, "w") as fh:
        fh.write("epoch,train_loss,val_auc\n")
        for epoch, loss, auc in history:
            fh.write(f"{epoch},{float(loss)!r},{float(auc)!r}\n")


def parse_config_file(path: str) -> dict[str, str]:
    """Flat key=value lines; blank lines and # comments ignored."""
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out
