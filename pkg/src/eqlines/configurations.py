"""Deterministic generators for canonical codes and graphs.

Randomised entries draw from numpy's PCG64 generator seeded with the
ConfigSpec seed, so identical (name, params, seed) reproduce bit-identical
output.  Every generated object carries a provenance block.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable

import numpy as np

from eqlines.bounds import parse_alpha
from eqlines.codes import SphericalCode, code_to_graph, restrict_switch, verify_equiangular
from eqlines.errors import PreconditionError, ValidationError
from eqlines.graph import Graph
from eqlines.linalg import helmert_basis

MAX_RESTARTS = 10_000
PRNG = "numpy.random.PCG64"


@dataclass(frozen=True)
class ConfigSpec:
    name: str
    params: dict = field(default_factory=dict)
    seed: int | None = None
    role: str = field(default="", compare=False)


# ---------------------------------------------------------------------------
# codes
# ---------------------------------------------------------------------------

def icosahedron6() -> SphericalCode:
    """One unit vector per diagonal of the regular icosahedron; alpha = 1/sqrt(5)."""
    phi = (1 + math.sqrt(5)) / 2
    rows = [
        (0.0, 1.0, phi), (0.0, 1.0, -phi),
        (1.0, phi, 0.0), (1.0, -phi, 0.0),
        (phi, 0.0, 1.0), (-phi, 0.0, 1.0),
    ]
    V = np.array(rows) / math.sqrt(1 + phi * phi)
    return SphericalCode("real", V)


def johnson28() -> SphericalCode:
    """e_i + e_j - 1/4 over pairs of {0..7}, written in an orthonormal basis
    of the complement of the all-ones vector (so r = 7); alpha = 1/3."""
    W = []
    for i, j in combinations(range(8), 2):
        w = np.full(8, -0.25)
        w[i] += 1.0
        w[j] += 1.0
        W.append(w)
    V = np.array(W) @ helmert_basis(8) / math.sqrt(1.5)
    return SphericalCode("real", V)


def sic_c2() -> SphericalCode:
    """(1, 0) and (1, sqrt(2) w^j)/sqrt(3), w = exp(2 pi i/3); alpha = 1/sqrt(3)."""
    w = np.exp(2j * np.pi / 3)
    rows = [np.array([1.0, 0.0], dtype=complex)]
    for j in range(3):
        rows.append(np.array([1.0, math.sqrt(2) * w**j]) / math.sqrt(3))
    return SphericalCode("complex", np.array(rows))


def weyl_heisenberg_orbit(fiducial) -> np.ndarray:
    """Rows X^a Z^b psi, ordered by 3a + b style (a major), with X|j> = |j+1>
    and Z = diag(w^j), w = exp(2 pi i/d)."""
    psi = np.asarray(fiducial, dtype=complex)
    d = psi.size
    w = np.exp(2j * np.pi / d)
    Z = np.diag(w ** np.arange(d))
    X = np.roll(np.eye(d), 1, axis=0)
    rows = []
    for a in range(d):
        Xa = np.linalg.matrix_power(X, a)
        for b in range(d):
            rows.append(Xa @ np.linalg.matrix_power(Z, b) @ psi)
    return np.array(rows)


def sic_c3() -> SphericalCode:
    """Hesse configuration: Weyl-Heisenberg orbit of (0, 1, -1)/sqrt(2); alpha = 1/2."""
    return SphericalCode("complex", weyl_heisenberg_orbit(np.array([0.0, 1.0, -1.0]) / math.sqrt(2)))


def simplex_plus(n: int, alpha) -> SphericalCode:
    """n unit vectors with every pairwise inner product equal to +alpha.

    v_i = a e_i + b 1 with a = sqrt(1 - alpha), b = (-a + sqrt(a^2 + n alpha))/n.
    """
    if n < 1:
        raise PreconditionError("simplex_plus needs n >= 1")
    al = parse_alpha(alpha).value
    a = math.sqrt(1 - al)
    b = (-a + math.sqrt(a * a + n * al)) / n
    V = a * np.eye(n) + b * np.ones((n, n))
    V /= np.linalg.norm(V, axis=1)[:, None]
    return SphericalCode("real", V)


def basis(r: int, field: str = "real") -> SphericalCode:
    if r < 1:
        raise PreconditionError("basis needs r >= 1")
    return SphericalCode(field, np.eye(r, dtype=complex if field == "complex" else float))


def random_code(n: int, r: int, field: str = "complex", seed: int | None = 0) -> SphericalCode:
    """n Gaussian random unit vectors in dimension r."""
    if n < 1 or r < 1:
        raise PreconditionError("random_code needs n, r >= 1")
    rng = np.random.default_rng(seed)
    V = rng.standard_normal((n, r))
    if field == "complex":
        V = V + 1j * rng.standard_normal((n, r))
    V /= np.linalg.norm(V, axis=1)[:, None]
    return SphericalCode(field, V)


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("complete needs n >= 1")
    return Graph(np.ones((n, n), dtype=np.int8) - np.eye(n, dtype=np.int8))


def complete_multipartite(parts) -> Graph:
    parts = [int(p) for p in parts]
    if not parts or min(parts) < 1:
        raise PreconditionError("complete_multipartite needs positive part sizes")
    block = np.repeat(np.arange(len(parts)), parts)
    A = (block[:, None] != block[None, :]).astype(np.int8)
    return Graph(A)


def star(t: int) -> Graph:
    """K_{1,t} with centre 0."""
    if t < 1:
        raise PreconditionError("star needs t >= 1")
    return Graph.from_edges(t + 1, [(0, i) for i in range(1, t + 1)])


def petersen() -> Graph:
    """Kneser graph K(5, 2): 2-subsets of {0..4}, adjacent when disjoint."""
    pairs = list(combinations(range(5), 2))
    edges = [(i, j) for i, j in combinations(range(10), 2) if not set(pairs[i]) & set(pairs[j])]
    return Graph.from_edges(10, edges)


def hypercube(d: int) -> Graph:
    if d < 1:
        raise PreconditionError("hypercube needs d >= 1")
    n = 1 << d
    return Graph.from_edges(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)])


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, math.isqrt(q) + 1))


def paley(q: int) -> Graph:
    """Quadratic-residue graph on Z_q for a prime q = 1 mod 4."""
    if not _is_prime(q) or q % 4 != 1:
        raise PreconditionError(f"paley needs a prime q = 1 mod 4, got {q}")
    residues = {(x * x) % q for x in range(1, q)}
    edges = [(i, j) for i, j in combinations(range(q), 2) if (j - i) % q in residues]
    return Graph.from_edges(q, edges)


def schlafli_complement() -> Graph:
    """Graph of the restricted Johnson code with the isolated pivot removed:
    10-regular on 27 vertices."""
    g, _ = code_to_graph(restrict_switch(johnson28(), 0))
    return g.delete_vertex(0)


def random_regular(n: int, k: int, seed: int | None = 0) -> Graph:
    """Uniform-ish random simple k-regular graph by stub pairing.

    Each attempt shuffles the stubs and keeps the pairs that are neither loops
    nor repeated edges, then re-pairs the leftover stubs; an attempt fails when
    no admissible pair remains among the leftovers.  Fails after MAX_RESTARTS
    attempts.
    """
    if (n * k) % 2:
        raise PreconditionError("n * k must be even")
    if not 0 <= k < n:
        raise PreconditionError("random_regular needs 0 <= k < n")
    rng = np.random.default_rng(seed)

    def suitable(edges, potential):
        if not potential:
            return True
        nodes = list(potential)
        for a, b in combinations(nodes, 2):
            s1, s2 = min(a, b), max(a, b)
            if (s1, s2) not in edges:
                return True
        return False

    def attempt():
        edges = set()
        stubs = list(range(n)) * k
        while stubs:
            potential = defaultdict(int)
            rng.shuffle(stubs)
            it = iter(stubs)
            for s1, s2 in zip(it, it):
                if s1 > s2:
                    s1, s2 = s2, s1
                if s1 != s2 and (s1, s2) not in edges:
                    edges.add((s1, s2))
                else:
                    potential[s1] += 1
                    potential[s2] += 1
            if not suitable(edges, potential):
                return None
            stubs = [v for v, c in potential.items() for _ in range(c)]
        return edges

    for _ in range(MAX_RESTARTS):
        edges = attempt()
        if edges is not None:
            return Graph.from_edges(n, sorted(edges))
    raise PreconditionError(f"random_regular({n}, {k}) failed after {MAX_RESTARTS} restarts")


# ---------------------------------------------------------------------------
# catalogue
# ---------------------------------------------------------------------------

def _int(v) -> int:
    if isinstance(v, bool):
        raise ValueError
    if isinstance(v, float) and not v.is_integer():
        raise ValueError
    return int(v)


def _alpha_param(v):
    return str(v) if isinstance(v, str) else v


def _parts(v):
    if isinstance(v, str):
        return [int(p) for p in v.split(",") if p.strip()]
    return [int(p) for p in v]


def _field(v):
    if v not in ("real", "complex"):
        raise ValueError
    return v


@dataclass(frozen=True)
class _Entry:
    kind: str
    make: Callable[..., Any]
    params: dict
    role: str
    seeded: bool = False


_CATALOG: dict[str, _Entry] = {
    "icosahedron6": _Entry("code", icosahedron6, {}, "6 lines in R^3, alpha = 1/sqrt(5); meets the absolute bound 6 = C(4,2)"),
    "johnson28": _Entry("code", johnson28, {}, "28 lines in R^7, alpha = 1/3; meets the absolute bound 28 = C(8,2)"),
    "sic_c2": _Entry("code", sic_c2, {}, "SIC of 4 lines in C^2, alpha = 1/sqrt(3); n = r^2"),
    "sic_c3": _Entry("code", sic_c3, {}, "Hesse SIC of 9 lines in C^3, alpha = 1/2; n = r^2"),
    "simplex_plus": _Entry("code", simplex_plus, {"n": (_int, 5), "alpha": (_alpha_param, "1/3")},
                           "n vectors with all inner products +alpha (empty graph)"),
    "basis": _Entry("code", basis, {"r": (_int, 3), "field": (_field, "real")}, "orthonormal basis; Welch equality"),
    "random_code": _Entry("code", random_code, {"n": (_int, 10), "r": (_int, 4), "field": (_field, "complex")},
                          "Gaussian random unit vectors; Welch property tests", seeded=True),
    "cycle": _Entry("graph", cycle, {"n": (_int, 5)}, "C_n; C_5 is a strongly regular equality witness"),
    "petersen": _Entry("graph", petersen, {}, "Petersen graph; regular bounds hold strictly"),
    "complete": _Entry("graph", complete, {"n": (_int, 4)}, "K_n; lambda_2 = -1"),
    "complete_multipartite": _Entry("graph", complete_multipartite, {"parts": (_parts, [2, 2, 2])},
                                    "complete multipartite graph; lambda_2 = 0 is rejected by the construction"),
    "hypercube": _Entry("graph", hypercube, {"d": (_int, 4)}, "hypercube Q_d; bipartite regular example"),
    "star": _Entry("graph", star, {"t": (_int, 4)}, "star K_{1,t}; lambda_1 = sqrt(t)"),
    "schlafli_complement": _Entry("graph", schlafli_complement, {},
                                  "27-vertex 10-regular graph from the restricted Johnson code; equality witness"),
    "paley": _Entry("graph", paley, {"q": (_int, 13)}, "Paley graph on a prime q = 1 mod 4"),
    "random_regular": _Entry("graph", random_regular, {"n": (_int, 20), "k": (_int, 3)},
                             "seeded random simple k-regular graph", seeded=True),
}


def catalog() -> list[ConfigSpec]:
    """Templates with default parameters, in a stable order."""
    out = []
    for name, entry in _CATALOG.items():
        params = {k: d for k, (_, d) in entry.params.items()}
        out.append(ConfigSpec(name, params, 0 if entry.seeded else None, entry.role))
    return out


def _json_safe(v):
    if isinstance(v, (list, tuple)):
        return [_json_safe(x) for x in v]
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return v
    return str(v)


def generate(spec: ConfigSpec | str, **params) -> SphericalCode | Graph:
    """Build a catalogue entry.  ``generate("paley", q=13)`` is shorthand for
    ``generate(ConfigSpec("paley", {"q": 13}))``."""
    from eqlines import __version__

    if isinstance(spec, str):
        seed = params.pop("seed", None)
        spec = ConfigSpec(spec, params, seed)
    entry = _CATALOG.get(spec.name)
    if entry is None:
        raise ValidationError(f"unknown configuration {spec.name!r}; choose from {', '.join(_CATALOG)}")
    unknown = set(spec.params) - set(entry.params)
    if unknown:
        raise ValidationError(f"{spec.name} does not take parameter(s) {', '.join(sorted(unknown))}")
    kwargs = {}
    for key, (conv, default) in entry.params.items():
        raw = spec.params.get(key, default)
        try:
            kwargs[key] = conv(raw)
        except (TypeError, ValueError):
            raise ValidationError(f"invalid value {raw!r} for {spec.name} parameter {key!r}") from None
    seed = None
    if entry.seeded:
        seed = 0 if spec.seed is None else int(spec.seed)
        kwargs["seed"] = seed
    obj = entry.make(**kwargs)
    _self_check(spec.name, obj)
    prov = {
        "name": spec.name,
        "params": {k: _json_safe(v) for k, v in kwargs.items() if k != "seed"},
        "seed": seed,
        "prng": PRNG if entry.seeded else None,
        "version": __version__,
    }
    if isinstance(obj, SphericalCode):
        return SphericalCode(obj.field, obj.vectors, prov)
    return Graph(obj.adjacency, provenance=prov)


def _self_check(name: str, obj) -> None:
    if name in ("icosahedron6", "johnson28", "sic_c2", "sic_c3", "simplex_plus"):
        if obj.n >= 2 and not verify_equiangular(obj, 1e-12).is_equiangular:
            raise AssertionError(f"{name}: generated code is not equiangular")
    elif name in ("cycle", "petersen", "complete", "hypercube", "paley", "schlafli_complement", "random_regular"):
        if not obj.is_regular():
            raise AssertionError(f"{name}: generated graph is not regular")
