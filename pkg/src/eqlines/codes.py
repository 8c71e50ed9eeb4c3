"""Spherical codes, Gram matrices, the code/graph correspondence and switching.

For a real equiangular code with common angle ``alpha`` the corresponding
graph has an edge ij exactly when <v_i, v_j> = -alpha, and the Gram matrix is
recovered as  M = alpha*J - 2*alpha*A + (1 - alpha)*I.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable

import numpy as np

from eqlines.errors import PreconditionError, ValidationError
from eqlines.graph import Graph
from eqlines.linalg import RANK_CUTOFF, eig

UNIT_TOL = 1e-9
EQUIANGULAR_TOL = 1e-8
ZERO_TOL = 1e-9
FIELDS = ("real", "complex")


@dataclass(frozen=True, eq=False)
class SphericalCode:
    """n unit vectors in R^r or C^r, stored as the rows of ``vectors``."""

    field: str
    vectors: np.ndarray
    provenance: dict | None = None

    def __post_init__(self):
        if self.field not in FIELDS:
            raise ValidationError(f"field must be 'real' or 'complex', got {self.field!r}")
        V = np.asarray(self.vectors)
        if V.ndim != 2 or V.shape[0] < 1 or V.shape[1] < 1:
            raise ValidationError(f"vectors must form a non-empty n x r array, got shape {V.shape}")
        if not np.all(np.isfinite(V)):
            raise ValidationError("vectors contain non-finite entries")
        if self.field == "real":
            if np.iscomplexobj(V):
                if np.abs(V.imag).max() > 0:
                    raise ValidationError("real code has complex entries")
                V = V.real
            V = V.astype(float)
        else:
            V = V.astype(complex)
        norms = np.sqrt(np.sum(np.abs(V) ** 2, axis=1))
        bad = np.flatnonzero(np.abs(norms - 1.0) > UNIT_TOL)
        if bad.size:
            i = int(bad[0])
            raise ValidationError(f"vector {i} has norm {norms[i]:.12g}, expected 1")
        V = V.copy()
        V.setflags(write=False)
        object.__setattr__(self, "vectors", V)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def r(self) -> int:
        return self.vectors.shape[1]

    @property
    def is_complex(self) -> bool:
        return self.field == "complex"

    def subcode(self, indices: Iterable[int]) -> "SphericalCode":
        idx = [int(i) for i in indices]
        for i in idx:
            if not 0 <= i < self.n:
                raise ValidationError(f"index {i} outside 0..{self.n - 1}")
        return SphericalCode(self.field, self.vectors[idx], self.provenance)

    def to_json(self) -> dict:
        if self.is_complex:
            vecs = [[[float(z.real), float(z.imag)] for z in row] for row in self.vectors]
        else:
            vecs = [[float(x) for x in row] for row in self.vectors]
        out = {"field": self.field, "r": self.r, "vectors": vecs}
        if self.provenance is not None:
            out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "SphericalCode":
        if not isinstance(obj, dict):
            raise ValidationError("code JSON must be an object")
        for key in ("field", "r", "vectors"):
            if key not in obj:
                raise ValidationError(f'code JSON is missing "{key}"')
        fld, r, vecs = obj["field"], obj["r"], obj["vectors"]
        if fld not in FIELDS:
            raise ValidationError(f'"field" must be "real" or "complex", got {fld!r}')
        if not isinstance(r, int) or isinstance(r, bool) or r < 1:
            raise ValidationError('"r" must be a positive integer')
        if not isinstance(vecs, list) or not vecs:
            raise ValidationError('"vectors" must be a non-empty list')
        rows = []
        for i, row in enumerate(vecs):
            if not isinstance(row, list) or len(row) != r:
                raise ValidationError(f"vector {i} does not have length r = {r}")
            try:
                if fld == "complex":
                    rows.append([_parse_complex(z) for z in row])
                else:
                    rows.append([float(x) for x in row])
            except (TypeError, ValueError):
                raise ValidationError(f"vector {i} has a malformed entry") from None
        prov = obj.get("provenance")
        return cls(fld, np.array(rows, dtype=complex if fld == "complex" else float), prov)


def _parse_complex(z) -> complex:
    if isinstance(z, list):
        if len(z) != 2:
            raise ValueError("complex entry must be [re, im]")
        return complex(float(z[0]), float(z[1]))
    if isinstance(z, bool):
        raise TypeError
    return complex(float(z), 0.0)


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Hermitian matrix with unit diagonal.  PSD is checked on request,
    since :func:`gram_from_graph` may legitimately produce indefinite ones."""

    entries: np.ndarray
    field: str = "real"

    def __post_init__(self):
        M = np.asarray(self.entries)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
            raise ValidationError(f"Gram matrix must be square and non-empty, got {M.shape}")
        M = M.astype(complex if self.field == "complex" else float)
        diag = np.abs(np.diag(M) - 1.0)
        if diag.max() > UNIT_TOL:
            i = int(np.argmax(diag))
            raise ValidationError(f"Gram diagonal entry {i} is {M[i, i]!r}, expected 1")
        asym = np.abs(M - M.conj().T)
        if asym.max() > 1e-10:
            i, j = np.unravel_index(int(np.argmax(asym)), asym.shape)
            raise ValidationError(f"Gram matrix is not Hermitian at ({i}, {j})")
        M = M.copy()
        M.setflags(write=False)
        object.__setattr__(self, "entries", M)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def eig(self, method: str = "jacobi"):
        return eig(self.entries, method=method)

    def min_eigenvalue(self) -> float:
        return float(self.eig().eigenvalues[-1])

    def is_psd(self) -> bool:
        return self.min_eigenvalue() >= -1e-8 * self.n


def gram(code: SphericalCode) -> GramMatrix:
    """Gram matrix M_ij = <v_i, v_j> = v_i* v_j."""
    V = code.vectors
    M = np.conj(V) @ V.T
    if not code.is_complex:
        M = M.real
    M = 0.5 * (M + M.conj().T)
    np.fill_diagonal(M, 1.0)
    return GramMatrix(M, code.field)


@dataclass(frozen=True)
class EquiangularCheck:
    alpha: float
    max_deviation: float
    is_equiangular: bool
    tol: float
    n: int

    def to_json(self) -> dict:
        return asdict(self)


def _off_diagonal(M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    return M[~np.eye(n, dtype=bool)]


def verify_equiangular(code: SphericalCode, tol: float = EQUIANGULAR_TOL) -> EquiangularCheck:
    """Common angle alpha (mean off-diagonal |M_ij|) and the largest deviation."""
    if code.n < 2:
        raise PreconditionError("equiangularity needs at least two vectors")
    mags = np.abs(_off_diagonal(gram(code).entries))
    alpha = float(np.mean(mags))
    dev = float(np.max(np.abs(mags - alpha)))
    return EquiangularCheck(alpha=alpha, max_deviation=dev, is_equiangular=dev <= tol, tol=tol, n=code.n)


def _real_equiangular(code: SphericalCode, tol: float) -> tuple[np.ndarray, float]:
    if code.is_complex:
        raise PreconditionError("the code/graph correspondence needs a real code")
    check = verify_equiangular(code, tol)
    if not check.is_equiangular:
        raise PreconditionError(
            f"code is not equiangular (max deviation {check.max_deviation:.3e} > {tol:g})"
        )
    if check.alpha <= ZERO_TOL:
        raise PreconditionError("alpha is zero; edge signs are undecidable")
    M = gram(code).entries
    off = np.abs(_off_diagonal(M))
    if np.any(off <= ZERO_TOL):
        raise PreconditionError("an inner product is within 1e-9 of zero; its sign is undecidable")
    return M, check.alpha


def code_to_graph(code: SphericalCode, tol: float = EQUIANGULAR_TOL) -> tuple[Graph, float]:
    """Graph with ij an edge iff <v_i, v_j> < 0, and the common angle."""
    M, alpha = _real_equiangular(code, tol)
    A = (M < 0).astype(np.int8)
    np.fill_diagonal(A, 0)
    return Graph(A), alpha


def gram_from_graph(g: Graph, alpha: float) -> GramMatrix:
    """M = alpha*J - 2*alpha*A + (1 - alpha)*I (possibly indefinite)."""
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"alpha must lie in (0, 1), got {alpha}")
    n = g.n
    A = g.adjacency.astype(float)
    M = alpha * np.ones((n, n)) - 2.0 * alpha * A + (1.0 - alpha) * np.eye(n)
    return GramMatrix(M, "real")


def switch(code: SphericalCode, subset: Iterable[int]) -> SphericalCode:
    """Negate the vectors indexed by ``subset``; the lines are unchanged."""
    idx = sorted({int(i) for i in subset})
    for i in idx:
        if not 0 <= i < code.n:
            raise ValidationError(f"switch index {i} outside 0..{code.n - 1}")
    V = np.array(code.vectors)
    V[idx] = -V[idx]
    return SphericalCode(code.field, V, code.provenance)


def restrict_switch(code: SphericalCode, pivot: int = 0, tol: float = EQUIANGULAR_TOL) -> SphericalCode:
    """Switch so that every inner product with the pivot equals +alpha."""
    if not 0 <= pivot < code.n:
        raise ValidationError(f"pivot {pivot} outside 0..{code.n - 1}")
    M, _ = _real_equiangular(code, tol)
    flip = [i for i in range(code.n) if i != pivot and M[i, pivot] < 0]
    return switch(code, flip)


@dataclass(frozen=True)
class SwitchReport:
    mode: str
    n: int
    alpha: float
    threshold: float
    high_degree: list[int]
    high_degree_count: int
    max_degree_before: int
    max_degree_after: int
    hypothesis_ok: bool
    degree_bound: float | None
    consistent: bool
    notes: str = ""

    def to_json(self) -> dict:
        return asdict(self)


def degree_bounded_switch(
    code: SphericalCode, tol: float = EQUIANGULAR_TOL
) -> tuple[SphericalCode, SwitchReport]:
    """Negate the high-degree set H = {v : d(v) > n/2 + 1/alpha - 1}.

    The input must be restricted (its graph has an isolated vertex).  When
    n >= 1/alpha^4 the resulting maximum degree is checked against
    1/(4 alpha^4) + 1/(4 alpha^4 - 3/n); a violation sets ``consistent`` to
    False.
    """
    g, alpha = code_to_graph(code, tol)
    if not g.isolated_vertices():
        raise PreconditionError("degree-bounded switching needs a restricted code (an isolated vertex)")
    n = code.n
    threshold = n / 2 + 1 / alpha - 1
    H = [int(v) for v in np.flatnonzero(g.degrees > threshold + 1e-9)]
    out = switch(code, H) if H else code
    g_after, _ = code_to_graph(out, tol)
    a4 = alpha**4
    hyp = n >= 1 / a4 - 1e-9 and 4 * a4 - 3 / n > 0
    if hyp:
        bound = 1 / (4 * a4) + 1 / (4 * a4 - 3 / n)
        consistent = g_after.max_degree <= bound + 1e-9
        notes = ""
    else:
        bound = None
        consistent = True
        notes = "hypothesis not satisfied (needs n >= 1/alpha^4); degree bound not asserted"
    report = SwitchReport(
        mode="degree",
        n=n,
        alpha=alpha,
        threshold=threshold,
        high_degree=H,
        high_degree_count=len(H),
        max_degree_before=g.max_degree,
        max_degree_after=g_after.max_degree,
        hypothesis_ok=hyp,
        degree_bound=bound,
        consistent=consistent,
        notes=notes,
    )
    return out, report


def factor_gram(M: GramMatrix | np.ndarray, cutoff: float = RANK_CUTOFF) -> SphericalCode:
    """Vectors in dimension rank(M) whose Gram matrix is M.

    With M = U diag(lam) U*, vector j has coordinates sqrt(lam_k) * conj(U_jk)
    over the positive eigenvalues, in descending order.
    """
    if not isinstance(M, GramMatrix):
        A = np.asarray(M)
        M = GramMatrix(A, "complex" if np.iscomplexobj(A) and np.abs(A.imag).max() > 0 else "real")
    A = M.entries
    dec = eig(A, cutoff)
    lam = dec.eigenvalues
    if lam[-1] < -1e-8 * M.n:
        raise PreconditionError(f"Gram matrix is indefinite (smallest eigenvalue {lam[-1]:.3e})")
    keep = lam > cutoff * lam[0]
    V = np.conj(dec.eigenvectors[:, keep]) * np.sqrt(lam[keep])[None, :]
    is_complex = np.iscomplexobj(A) and np.abs(A.imag).max() > 0
    V = V if is_complex else np.real(V)
    V = V / np.linalg.norm(V, axis=1)[:, None]
    return SphericalCode("complex" if is_complex else "real", V)
