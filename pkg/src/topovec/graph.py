"""Weighted-network data model, validation, and file ingestion.

Networks are undirected with real edge weights stored as a dense symmetric
matrix with a zero diagonal. Node identity is the 0-based row/column index.
Pairs absent from an input file get weight 0, so every stored network is
logically complete; weights may be negative in general ingestion.
"""

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

# Absolute tolerance for symmetry / diagonal checks when parsing matrices.
SYMMETRY_TOL = 1e-12

NETWORK_FORMATS = ("edgelist", "adjacency")


class WeightedNetwork:
    """Immutable undirected weighted network on nodes 0..node_count-1."""

    __slots__ = ("_weights",)

    def __init__(self, weights):
        w = np.array(weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"weight matrix must be square, got shape {w.shape}")
        if w.shape[0] < 2:
            raise ValueError("a network needs at least 2 nodes")
        if not np.all(np.isfinite(w)):
            raise ValueError("weight matrix contains non-finite entries")
        if not np.array_equal(w, w.T):
            raise ValueError("weight matrix must be symmetric")
        if np.any(w.diagonal() != 0.0):
            raise ValueError("diagonal entries must be exactly 0")
        w.setflags(write=False)
        self._weights = w

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def node_count(self) -> int:
        return self._weights.shape[0]

    def __eq__(self, other):
        if not isinstance(other, WeightedNetwork):
            return NotImplemented
        return self._weights.shape == other._weights.shape and np.array_equal(
            self._weights, other._weights
        )

    def __hash__(self):
        return hash((self.node_count, self._weights.tobytes()))

    def __repr__(self):
        return f"WeightedNetwork(node_count={self.node_count})"

    def edge_weights(self) -> np.ndarray:
        """Upper-triangle weights (i < j) in row-major order."""
        iu, ju = np.triu_indices(self.node_count, k=1)
        return self._weights[iu, ju]

    def edges(self) -> list[tuple[int, int, float]]:
        """All (i, j, w) with i < j in row-major order, including weight-0 pairs."""
        iu, ju = np.triu_indices(self.node_count, k=1)
        w = self._weights[iu, ju]
        return list(zip(iu.tolist(), ju.tolist(), w.tolist()))


def _node_index(value, node_count: int) -> int:
    idx = int(value)
    if idx != value:
        raise ValueError(f"node index {value!r} is not an integer")
    if not 0 <= idx < node_count:
        raise ValueError(f"node index {idx} out of range for node_count={node_count}")
    return idx


def from_edge_list(entries, node_count: int) -> WeightedNetwork:
    """Build a network from (i, j, w) triples; unlisted pairs get weight 0."""
    if node_count < 2:
        raise ValueError("node_count must be at least 2")
    weights = np.zeros((node_count, node_count))
    seen: set[tuple[int, int]] = set()
    for i, j, w in entries:
        i = _node_index(i, node_count)
        j = _node_index(j, node_count)
        if i == j:
            raise ValueError(f"self-loop on node {i} is not allowed")
        pair = (min(i, j), max(i, j))
        if pair in seen:
            raise ValueError(f"duplicate edge ({pair[0]}, {pair[1]})")
        seen.add(pair)
        weights[i, j] = weights[j, i] = float(w)
    return WeightedNetwork(weights)


def from_adjacency_text(text: str) -> WeightedNetwork:
    """Parse a whitespace-separated square matrix into a network.

    Asymmetry beyond SYMMETRY_TOL is rejected; diagonal entries within
    SYMMETRY_TOL of 0 are forced to exactly 0, larger ones are rejected.
    """
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValueError("adjacency text is empty")
    n = len(rows)
    for r, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(
                f"adjacency matrix is not square: {n} rows but row {r + 1} "
                f"has {len(row)} columns"
            )
    matrix = np.empty((n, n))
    for r, row in enumerate(rows):
        for c, token in enumerate(row):
            try:
                matrix[r, c] = float(token)
            except ValueError:
                raise ValueError(
                    f"non-numeric token {token!r} at row {r + 1}, column {c + 1}"
                ) from None
    if not np.all(np.isfinite(matrix)):
        raise ValueError("adjacency matrix contains non-finite entries")
    asymmetry = float(np.max(np.abs(matrix - matrix.T)))
    if asymmetry > SYMMETRY_TOL:
        raise ValueError(
            f"adjacency matrix is asymmetric: max |w_ij - w_ji| = {asymmetry:g} "
            f"exceeds tolerance {SYMMETRY_TOL:g}"
        )
    matrix = (matrix + matrix.T) / 2.0
    diag = np.abs(matrix.diagonal())
    if np.any(diag > SYMMETRY_TOL):
        k = int(np.argmax(diag))
        raise ValueError(f"nonzero diagonal entry {matrix[k, k]!r} at node {k}")
    np.fill_diagonal(matrix, 0.0)
    return WeightedNetwork(matrix)


def to_adjacency_text(net: WeightedNetwork) -> str:
    rows = (" ".join(repr(v) for v in row) for row in net.weights.tolist())
    return "\n".join(rows) + "\n"


def parse_edge_list_csv(lines, node_count: int) -> WeightedNetwork:
    """Parse edge-list CSV lines: header `i,j,w`, `#` comment lines ignored."""
    filtered = (ln for ln in lines if not ln.lstrip().startswith("#"))
    reader = csv.reader(filtered)
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["i", "j", "w"]:
        raise ValueError("edge-list CSV must start with the header 'i,j,w'")
    entries = []
    for row in reader:
        if not row:
            continue
        if len(row) != 3:
            raise ValueError(f"edge-list row {row!r} does not have 3 fields")
        entries.append((int(row[0]), int(row[1]), float(row[2])))
    return from_edge_list(entries, node_count)


def read_edge_list_csv(path, node_count: int) -> WeightedNetwork:
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_edge_list_csv(fh, node_count)


def write_edge_list_csv(net: WeightedNetwork, path) -> None:
    """Write nonzero edges as CSV; weights use repr so text round-trips exactly."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["i", "j", "w"])
        for i, j, w in net.edges():
            if w != 0.0:
                writer.writerow([i, j, repr(w)])


def read_network(path, fmt: str, node_count: int | None = None) -> WeightedNetwork:
    if fmt == "edgelist":
        if node_count is None:
            raise ValueError("edgelist format requires node_count")
        return read_edge_list_csv(path, node_count)
    if fmt == "adjacency":
        return from_adjacency_text(Path(path).read_text(encoding="utf-8"))
    raise ValueError(f"unknown network format {fmt!r}")


@dataclass(frozen=True)
class ManifestEntry:
    path: Path
    format: str
    label: str
    node_count: int | None = None


def load_manifest(path) -> list[ManifestEntry]:
    """Load a dataset manifest: a JSON array of records.

    Each record is { "path": str, "format": "edgelist"|"adjacency",
    "node_count": int (edgelist only), "label": str }. Relative paths are
    resolved against the manifest's directory.
    """
    manifest_path = Path(path)
    base = manifest_path.parent
    with open(manifest_path, encoding="utf-8") as fh:
        records = json.load(fh)
    if not isinstance(records, list) or not records:
        raise ValueError("manifest must be a nonempty JSON array of records")
    entries = []
    for k, rec in enumerate(records):
        if not isinstance(rec, dict):
            raise ValueError(f"manifest record {k} is not an object")
        for key in ("path", "format", "label"):
            if key not in rec:
                raise ValueError(f"manifest record {k} is missing key {key!r}")
        fmt = rec["format"]
        if fmt not in NETWORK_FORMATS:
            raise ValueError(f"manifest record {k} has unknown format {fmt!r}")
        node_count = rec.get("node_count")
        if fmt == "edgelist" and node_count is None:
            raise ValueError(f"manifest record {k} (edgelist) is missing node_count")
        entries.append(
            ManifestEntry(
                path=base / rec["path"],
                format=fmt,
                label=str(rec["label"]),
                node_count=None if node_count is None else int(node_count),
            )
        )
    return entries


def load_dataset(manifest_path) -> tuple[list[WeightedNetwork], list[str]]:
    entries = load_manifest(manifest_path)
    networks = [read_network(e.path, e.format, e.node_count) for e in entries]
    labels = [e.label for e in entries]
    return networks, labels
