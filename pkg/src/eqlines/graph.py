"""Undirected simple graph backed by a dense 0/1 adjacency matrix."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from eqlines.errors import ValidationError


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``labels`` optionally maps local vertices back to a parent graph (set by
    :func:`eqlines.graphs.ball` and :meth:`induced`).
    """

    adjacency: np.ndarray
    labels: tuple[int, ...] | None = None
    provenance: dict | None = field(default=None, compare=False)
    degrees: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        A = np.asarray(self.adjacency)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValidationError(f"adjacency must be square, got shape {A.shape}")
        if not np.all((A == 0) | (A == 1)):
            raise ValidationError("adjacency entries must be 0 or 1")
        A = A.astype(np.int8)
        if not np.array_equal(A, A.T):
            i, j = np.argwhere(A != A.T)[0]
            raise ValidationError(f"adjacency is not symmetric at ({i}, {j})")
        if np.any(np.diag(A)):
            i = int(np.flatnonzero(np.diag(A))[0])
            raise ValidationError(f"self-loop at vertex {i}")
        A.setflags(write=False)
        object.__setattr__(self, "adjacency", A)
        deg = A.sum(axis=1).astype(int)
        deg.setflags(write=False)
        object.__setattr__(self, "degrees", deg)
        if self.labels is not None and len(self.labels) != A.shape[0]:
            raise ValidationError("labels must have one entry per vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], strict: bool = False) -> "Graph":
        """Build from an edge list.  ``strict`` enforces the JSON file rules
        (i < j, no duplicates)."""
        if n < 0:
            raise ValidationError("vertex count must be non-negative")
        A = np.zeros((n, n), dtype=np.int8)
        for e in edges:
            if len(e) != 2:
                raise ValidationError(f"edge {e!r} does not have two endpoints")
            i, j = int(e[0]), int(e[1])
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError(f"edge ({i}, {j}) has a vertex outside 0..{n - 1}")
            if i == j:
                raise ValidationError(f"self-loop at vertex {i}")
            if strict and i > j:
                raise ValidationError(f"edge ({i}, {j}) must be written with i < j")
            if A[i, j]:
                if strict:
                    raise ValidationError(f"duplicate edge ({min(i, j)}, {max(i, j)})")
                continue
            A[i, j] = A[j, i] = 1
        return cls(A)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(np.zeros((n, n), dtype=np.int8))

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def num_edges(self) -> int:
        return int(self.degrees.sum()) // 2

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    @property
    def average_degree(self) -> float:
        return float(self.degrees.mean()) if self.n else 0.0

    def edges(self) -> list[tuple[int, int]]:
        I, J = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(i), int(j)) for i, j in zip(I, J)]

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[v])

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i, j])

    def is_regular(self) -> bool:
        return self.n == 0 or bool(np.all(self.degrees == self.degrees[0]))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        vs = [int(v) for v in vertices]
        for v in vs:
            if not 0 <= v < self.n:
                raise ValidationError(f"vertex {v} outside 0..{self.n - 1}")
        sub = self.adjacency[np.ix_(vs, vs)]
        parent = self.labels
        labels = tuple(parent[v] for v in vs) if parent is not None else tuple(vs)
        return Graph(sub, labels=labels)

    def delete_vertex(self, v: int) -> "Graph":
        return self.induced([u for u in range(self.n) if u != v])

    def isolated_vertices(self) -> list[int]:
        return [int(v) for v in np.flatnonzero(self.degrees == 0)]

    def to_json(self) -> dict:
        out = {"n": self.n, "edges": [list(e) for e in self.edges()]}
        if self.provenance is not None:
            out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Graph":
        try:
            n = obj["n"]
            edges = obj["edges"]
        except (KeyError, TypeError):
            raise ValidationError('graph JSON needs keys "n" and "edges"') from None
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValidationError('"n" must be an integer')
        g = cls.from_edges(n, edges, strict=True)
        if obj.get("provenance") is not None:
            g = cls(g.adjacency, provenance=obj["provenance"])
        return g

    @classmethod
    def from_edge_text(cls, text: str, n: int | None = None) -> "Graph":
        """Parse one "u v" pair per line; blank lines and # comments ignored."""
        edges = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValidationError(f"line {lineno}: expected 'u v', got {line!r}")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise ValidationError(f"line {lineno}: vertices must be integers") from None
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls.from_edges(n, edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and np.array_equal(self.adjacency, other.adjacency)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.num_edges})"
