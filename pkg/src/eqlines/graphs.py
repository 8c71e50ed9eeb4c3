"""Graph spectra, the Rayleigh parameter mu(G), and dense Alon-Boppana bounds.

mu(G) is the largest Rayleigh quotient of the adjacency matrix over vectors
orthogonal to the all-ones vector; for a regular graph it equals lambda_2.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from eqlines.codes import SphericalCode, factor_gram, gram_from_graph, verify_equiangular
from eqlines.errors import PreconditionError, ValidationError
from eqlines.graph import Graph
from eqlines.linalg import EigenDecomposition, eig_sym, helmert_basis, largest_eigenvalue

VALID_TOL = 1e-8
TIGHT_TOL = 1e-7


def spectrum(g: Graph, method: str = "jacobi") -> EigenDecomposition:
    """Adjacency eigendecomposition, eigenvalues descending."""
    if g.n == 0:
        raise ValidationError("graph has no vertices")
    return eig_sym(g.adjacency.astype(float), method=method)


def _deflated(g: Graph) -> np.ndarray:
    Q = helmert_basis(g.n)
    return Q.T @ g.adjacency.astype(float) @ Q


def mu(g: Graph, method: str = "jacobi") -> float:
    """max x'Ax / x'x over nonzero x orthogonal to the all-ones vector."""
    if g.n < 2:
        raise PreconditionError("mu needs at least two vertices")
    return float(eig_sym(_deflated(g), method=method).eigenvalues[0])


def min_rayleigh_perp(g: Graph, method: str = "jacobi") -> float:
    """Smallest Rayleigh quotient over vectors orthogonal to the all-ones vector."""
    if g.n < 2:
        raise PreconditionError("needs at least two vertices")
    return float(eig_sym(_deflated(g), method=method).eigenvalues[-1])


def lambda1(g: Graph) -> float:
    """Largest adjacency eigenvalue (LAPACK; used inside search loops)."""
    if g.n == 0:
        return 0.0
    return largest_eigenvalue(g.adjacency)


def moore_bound(max_degree: int, q: int) -> int:
    """(D^(q+1) - 1)/(D - 1), the geometric-series bound on a radius-q ball."""
    if max_degree <= 1:
        return 1 if max_degree == 0 else q + 1
    return (max_degree ** (q + 1) - 1) // (max_degree - 1)


def ball_vertices(g: Graph, v: int, q: int) -> list[int]:
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if dist[u] == q:
            continue
        for w in g.neighbors(u):
            w = int(w)
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return sorted(dist)


def ball(g: Graph, v: int, q: int) -> Graph:
    """Subgraph induced on the vertices within distance q of v (labels keep
    the original vertex numbers)."""
    if not 0 <= v < g.n:
        raise ValidationError(f"vertex {v} outside 0..{g.n - 1}")
    if q < 0:
        raise PreconditionError("radius must be non-negative")
    vs = ball_vertices(g, v, q)
    assert len(vs) <= moore_bound(g.max_degree, q), "ball exceeds the Moore-type size bound"
    return g.induced(vs)


def star_lambda1(t: int) -> float:
    """lambda_1(K_{1,t}) = sqrt(t)."""
    if t < 1:
        raise PreconditionError("t must be a positive integer")
    return math.sqrt(t)


def _subgraph(g: Graph, h) -> Graph:
    if isinstance(h, Graph):
        labels = h.labels if h.labels is not None else tuple(range(h.n))
        if len(set(labels)) != h.n or any(not 0 <= int(x) < g.n for x in labels):
            raise PreconditionError("subgraph labels are not distinct vertices of g")
        for i, j in h.edges():
            if not g.has_edge(labels[i], labels[j]):
                raise PreconditionError(f"edge ({labels[i]}, {labels[j]}) of h is not an edge of g")
        return h
    vs = [int(v) for v in h]
    if len(set(vs)) != len(vs):
        raise PreconditionError("subgraph vertex list has repeats")
    return g.induced(vs)


def friedman_lower(g: Graph, h) -> float:
    """lambda_1(H) - (2 Delta - avg_degree) |H| / n for a subgraph H of g.

    ``h`` is either a vertex list (induced subgraph) or a Graph whose labels
    name vertices of g and whose edges are edges of g.
    """
    H = _subgraph(g, h)
    if H.n == 0:
        raise PreconditionError("subgraph is empty")
    return lambda1(H) - (2 * g.max_degree - g.average_degree) * H.n / g.n


@dataclass(frozen=True)
class FriedmanCheck:
    bound: float
    mu: float
    holds: bool
    vacuous: bool
    certified: bool
    notes: str

    def to_json(self) -> dict:
        return asdict(self)


def friedman_check(g: Graph, h) -> FriedmanCheck:
    """Compare mu(g) with the subgraph lower bound.

    The bound is certified only when it is positive: for a non-positive
    value the projected test vector may vanish or have negative Rayleigh
    numerator, and the inequality can fail (H = G = K_4 gives 0 > mu = -1).
    """
    b = friedman_lower(g, h)
    if g.n < 2:
        raise PreconditionError("mu needs at least two vertices")
    w = eig_sym(_deflated(g)).eigenvalues
    m, lo = float(w[0]), float(w[-1])
    holds = m >= b - VALID_TOL
    certified = b > 0
    vacuous = b <= lo + VALID_TOL
    notes = []
    if vacuous:
        notes.append("vacuous: bound at or below the smallest Rayleigh value on 1-perp")
    if not certified:
        notes.append("non-positive bound: not covered by the argument")
    return FriedmanCheck(b, m, holds, vacuous, certified, "; ".join(notes))


def mu_lower_star(g: Graph, t: int) -> float:
    """sqrt(t) - 2 Delta (t + 1)/n, for 1 <= t <= Delta."""
    if not 1 <= t <= g.max_degree:
        raise PreconditionError(f"t must satisfy 1 <= t <= max degree {g.max_degree}, got {t}")
    return math.sqrt(t) - 2 * g.max_degree * (t + 1) / g.n


@dataclass(frozen=True)
class JiangBall:
    vertex: int
    value: float
    q: int
    lower_bound: float
    vertices: tuple[int, ...]

    def __iter__(self):
        return iter((self.vertex, self.value))


def jiang_lower_bound(avg_degree: float, q: int) -> float:
    """2 sqrt(avg_degree - 1) cos(pi/(q+2))."""
    return 2 * math.sqrt(max(avg_degree - 1, 0.0)) * math.cos(math.pi / (q + 2))


def jiang_best_ball(g: Graph, q: int) -> JiangBall:
    """Radius-q ball with the largest lambda_1, lowest vertex index on ties.

    Exhaustive over vertices; stops early once a ball reaches lambda_1 =
    max degree, which no ball can exceed.
    """
    if q < 1:
        raise PreconditionError("q must be at least 1")
    if g.n == 0 or g.average_degree < 1:
        raise PreconditionError("jiang_best_ball needs average degree >= 1")
    ceiling = float(g.max_degree)
    best_v, best_val, best_vs = -1, -math.inf, ()
    for v in range(g.n):
        vs = ball_vertices(g, v, q)
        assert len(vs) <= moore_bound(g.max_degree, q)
        val = largest_eigenvalue(g.adjacency[np.ix_(vs, vs)])
        if val > best_val + 1e-12:
            best_v, best_val, best_vs = v, val, tuple(vs)
            if best_val >= ceiling - 1e-12:
                break
    lb = jiang_lower_bound(g.average_degree, q)
    assert best_val >= lb - VALID_TOL, f"ball eigenvalue {best_val} below {lb}"
    return JiangBall(best_v, best_val, q, lb, best_vs)


# ---------------------------------------------------------------------------
# regular graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegularBoundReport:
    k: int
    n: int
    lambda2: float
    lambda_n: float
    mult_lambda2: int
    gap_ok: bool
    bound1_lhs: float
    bound1_rhs: float
    bound2_lhs: float
    bound2_rhs: float
    holds1: bool
    holds2: bool
    tight1: bool
    tight2: bool
    srg_equality_predicate: bool
    notes: str = ""

    def to_json(self) -> dict:
        return asdict(self)


def _cluster_multiplicity(values: np.ndarray, target: float, tol: float) -> int:
    return int(np.sum(np.abs(values - target) <= tol))


def _regular_degree(g: Graph) -> int:
    if g.n < 2:
        raise PreconditionError("needs at least two vertices")
    if not g.is_regular():
        raise PreconditionError("graph is not regular")
    return int(g.degrees[0])


def regular_graph_bounds(g: Graph, dec: EigenDecomposition | None = None) -> RegularBoundReport:
    """Lower bounds on lambda_2 for a k-regular graph with gap k - lambda_2 < n/2.

      2(k - (k - l2)^2/n)  <=  l2(l2+1)(2 l2+1)/D - l2(3 l2+1)
      -lambda_n            <=  l2(l2+1)/D - l2,     D = 1 - 2(k - l2)/n
    """
    k = _regular_degree(g)
    n = g.n
    dec = dec or spectrum(g)
    w = dec.eigenvalues
    l2, ln = float(w[1]), float(w[-1])
    mult = _cluster_multiplicity(w, l2, 1e-7 * max(1.0, abs(float(w[0]))))
    gap_ok = k - l2 < n / 2
    D = 1 - 2 * (k - l2) / n
    lhs1 = 2 * (k - (k - l2) ** 2 / n)
    lhs2 = -ln
    if D > 0:
        rhs1 = l2 * (l2 + 1) * (2 * l2 + 1) / D - l2 * (3 * l2 + 1)
        rhs2 = l2 * (l2 + 1) / D - l2
    else:
        rhs1 = rhs2 = math.nan
    s1 = max(1.0, abs(lhs1), abs(rhs1)) if D > 0 else 1.0
    s2 = max(1.0, abs(lhs2), abs(rhs2)) if D > 0 else 1.0
    holds1 = D > 0 and lhs1 <= rhs1 + VALID_TOL * s1
    holds2 = D > 0 and lhs2 <= rhs2 + VALID_TOL * s2
    tight1 = holds1 and abs(rhs1 - lhs1) <= TIGHT_TOL * s1
    tight2 = holds2 and abs(rhs2 - lhs2) <= TIGHT_TOL * s2
    r = n - mult
    srg = r >= 1 and n == (r + 1) * r // 2 - 1
    notes = []
    if k == 0:
        notes.append("degenerate: k = 0, both sides are 0")
    if not gap_ok:
        notes.append("gap condition k - lambda_2 < n/2 fails; bounds are advisory")
    return RegularBoundReport(
        k=k, n=n, lambda2=l2, lambda_n=ln, mult_lambda2=mult, gap_ok=gap_ok,
        bound1_lhs=lhs1, bound1_rhs=rhs1, bound2_lhs=lhs2, bound2_rhs=rhs2,
        holds1=bool(holds1), holds2=bool(holds2), tight1=bool(tight1), tight2=bool(tight2),
        srg_equality_predicate=bool(srg), notes="; ".join(notes),
    )


def graph_to_code(g: Graph) -> SphericalCode:
    """Equiangular code with Gram matrix alpha J - 2 alpha A + (1 - alpha) I,
    alpha = 1/(2 lambda_2 + 1), in dimension n - m(lambda_2)."""
    dec = spectrum(g)
    rep = regular_graph_bounds(g, dec)
    if rep.lambda2 <= 1e-9:
        raise PreconditionError(
            "lambda_2 must be positive: a regular graph with lambda_2 <= 0 is complete multipartite"
        )
    if not rep.gap_ok:
        raise PreconditionError("spectral gap k - lambda_2 must be less than n/2")
    n, k, l2 = g.n, rep.k, rep.lambda2
    alpha = 1 / (2 * l2 + 1)
    M = gram_from_graph(g, alpha)
    code = factor_gram(M)
    # a disconnected graph has lambda_2 = k and the all-ones direction stays in the range
    expected_r = n - rep.mult_lambda2 + (1 if abs(l2 - k) <= 1e-7 * max(1, k) else 0)
    if code.r != expected_r:
        raise AssertionError(f"construction produced dimension {code.r}, expected {expected_r}")
    check = verify_equiangular(code)
    if not check.is_equiangular or abs(check.alpha - alpha) > 1e-8:
        raise AssertionError("constructed code is not equiangular at alpha = 1/(2 lambda_2 + 1)")
    lam = (n - 2 * (k - l2)) / (2 * l2 + 1)
    M1 = M.entries @ np.ones(n)
    if lam <= 0 or np.max(np.abs(M1 - lam)) > 1e-8 * max(1.0, lam):
        raise AssertionError("all-ones vector is not an eigenvector with the expected eigenvalue")
    prov = {"construction": "graph_to_code", "alpha": alpha, "lambda": lam, "n": n, "k": k}
    return SphericalCode("real", code.vectors, prov)


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                w = int(w)
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


@dataclass(frozen=True)
class CorollaryReport:
    k: int
    n: int
    epsilon: float
    lambda2: float
    lambda_n: float
    k_cuberoot: float
    sqrt_neg_lambda_n: float
    sqrt_k: float
    ratio_cuberoot: float
    ratio_sqrt_neg_lambda_n: float
    bipartite: bool
    regular: RegularBoundReport

    def to_json(self) -> dict:
        return asdict(self)


def corollary_check(g: Graph, epsilon: float) -> CorollaryReport:
    """Ratios lambda_2/k^(1/3) and lambda_2/sqrt(-lambda_n) for a graph with
    k - lambda_2 <= (1 - epsilon) n/2.  No asymptotic constant is asserted."""
    if not 0 < epsilon < 1:
        raise PreconditionError("epsilon must lie in (0, 1)")
    k = _regular_degree(g)
    rep = regular_graph_bounds(g)
    if k - rep.lambda2 > (1 - epsilon) * g.n / 2 + 1e-12:
        raise PreconditionError(
            f"gap k - lambda_2 = {k - rep.lambda2:.6g} exceeds (1 - epsilon) n/2 = {(1 - epsilon) * g.n / 2:.6g}"
        )
    l2, ln = rep.lambda2, rep.lambda_n
    cube = k ** (1 / 3)
    sq = math.sqrt(max(-ln, 0.0))
    return CorollaryReport(
        k=k, n=g.n, epsilon=epsilon, lambda2=l2, lambda_n=ln,
        k_cuberoot=cube, sqrt_neg_lambda_n=sq, sqrt_k=math.sqrt(k),
        ratio_cuberoot=l2 / cube if cube > 0 else math.nan,
        ratio_sqrt_neg_lambda_n=l2 / sq if sq > 0 else math.nan,
        bipartite=is_bipartite(g), regular=rep,
    )

