"""Dense Hermitian eigensolver, pseudoinverse and Frobenius-space projections.

The eigensolver is a cyclic Jacobi method using a round-robin (Brent-Luk)
ordering, so that each step applies n/2 disjoint plane rotations at once as
vectorised numpy operations.  Complex Hermitian matrices are handled natively:
each rotation is preceded by a diagonal phase change that makes the pivot
entry real and positive.

Inner products that feed equality tests are accumulated with ``math.fsum``
(exactly rounded summation), which is at least as accurate as Kahan
summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from eqlines.errors import ConvergenceError, PreconditionError, ValidationError

SYMMETRY_TOL = 1e-10
RANK_CUTOFF = 1e-9
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


# ---------------------------------------------------------------------------
# compensated inner products
# ---------------------------------------------------------------------------

def fsum_complex(values) -> complex:
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real.ravel()), math.fsum(values.imag.ravel()))
    return math.fsum(values.ravel())


def inner(u, v):
    """<u, v> = u* v, conjugate-linear in the first argument."""
    u = np.asarray(u)
    v = np.asarray(v)
    return fsum_complex(np.conj(u) * v)


def matvec(M, x) -> np.ndarray:
    """M @ x with each row accumulated by exactly rounded summation."""
    M = np.asarray(M)
    x = np.asarray(x)
    prods = M * x[None, :]
    if np.iscomplexobj(prods):
        return np.array([complex(math.fsum(row.real), math.fsum(row.imag)) for row in prods])
    return np.array([math.fsum(row) for row in prods])


# ---------------------------------------------------------------------------
# eigendecomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted descending with paired orthonormal eigenvectors.

    ``eigenvectors[:, i]`` is the unit eigenvector for ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rank: int
    cutoff: float = RANK_CUTOFF

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def vectors(self) -> list[np.ndarray]:
        return [self.eigenvectors[:, i] for i in range(self.n)]

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues[None, :]) @ U.conj().T

    def multiplicity(self, value: float, tol: float | None = None) -> int:
        """Number of eigenvalues within ``tol`` of ``value``.

        The default tolerance, 1e-7 * max(1, |lambda_1|), suits spectra whose
        distinct eigenvalues are integers or quadratic surds.
        """
        if tol is None:
            tol = 1e-7 * max(1.0, abs(float(self.eigenvalues[0])))
        return int(np.sum(np.abs(self.eigenvalues - value) <= tol))


def _as_square(M, name: str = "matrix") -> np.ndarray:
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {A.shape}")
    if A.shape[0] == 0:
        raise ValidationError(f"{name} is empty")
    if not np.all(np.isfinite(A)):
        i, j = np.argwhere(~np.isfinite(A))[0]
        raise ValidationError(f"{name} has a non-finite entry at ({i}, {j})")
    return A


def _check_hermitian(A: np.ndarray, tol: float, what: str) -> None:
    diff = np.abs(A - A.conj().T)
    if diff.max(initial=0.0) > tol:
        i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
        raise ValidationError(
            f"matrix is not {what}: entry ({i}, {j}) = {A[i, j]!r} "
            f"but entry ({j}, {i}) = {A[j, i]!r}"
        )


@lru_cache(maxsize=64)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    # circle method; an odd n gets a dummy player whose pairings are dropped
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        P, Q = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p >= n or q >= n:
                continue
            if p > q:
                p, q = q, p
            P.append(p)
            Q.append(q)
        rounds.append((np.array(P, dtype=int), np.array(Q, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0)
    return float(np.linalg.norm(off))


def jacobi_eigh(M, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi diagonalisation of a real symmetric or Hermitian matrix.

    Returns ``(w, V)`` with ``M = V diag(w) V*`` (unsorted).  Sweeps stop once
    the off-diagonal Frobenius norm drops below ``tol * ||M||_F``.
    """
    a = np.array(M, copy=True)
    is_complex = np.iscomplexobj(a)
    a = a.astype(complex if is_complex else float)
    n = a.shape[0]
    v = np.eye(n, dtype=a.dtype)
    norm = float(np.linalg.norm(a))
    if n == 1 or norm == 0.0:
        return np.real(np.diag(a)).copy(), v
    skip = 1e-17 * norm
    rounds = _round_robin(n)
    for _ in range(max_sweeps):
        if _off_norm(a) < tol * norm:
            break
        for P, Q in rounds:
            apq = a[P, Q]
            mag = np.abs(apq)
            active = mag > skip
            if not active.any():
                continue
            if is_complex:
                phase = np.where(active, apq / np.where(active, mag, 1.0), 1.0)
                a[:, Q] *= np.conj(phase)[None, :]
                a[Q, :] *= phase[:, None]
                v[:, Q] *= np.conj(phase)[None, :]
            app = np.real(a[P, P])
            aqq = np.real(a[Q, Q])
            # after the phase change the complex pivot equals |a_pq|
            pivot = mag if is_complex else apq
            safe = np.where(active, pivot, 1.0)
            tau = (aqq - app) / (2.0 * safe)
            sgn = np.where(tau >= 0, 1.0, -1.0)
            t = sgn / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            c = np.where(active, c, 1.0)
            s = np.where(active, s, 0.0)

            cp, cq = a[:, P].copy(), a[:, Q].copy()
            a[:, P] = cp * c[None, :] - cq * s[None, :]
            a[:, Q] = cp * s[None, :] + cq * c[None, :]
            rp, rq = a[P, :].copy(), a[Q, :].copy()
            a[P, :] = rp * c[:, None] - rq * s[:, None]
            a[Q, :] = rp * s[:, None] + rq * c[:, None]
            vp, vq = v[:, P].copy(), v[:, Q].copy()
            v[:, P] = vp * c[None, :] - vq * s[None, :]
            v[:, Q] = vp * s[None, :] + vq * c[None, :]

            a[P[active], Q[active]] = 0.0
            a[Q[active], P[active]] = 0.0
    else:
        if _off_norm(a) >= tol * norm:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return np.real(np.diag(a)).copy(), v


def _fix_phases(U: np.ndarray) -> np.ndarray:
    # make the largest-magnitude entry of each column real and positive
    U = U.copy()
    idx = np.argmax(np.abs(U), axis=0)
    piv = U[idx, np.arange(U.shape[1])]
    U = U * (np.conj(piv) / np.abs(piv))[None, :]
    return U


def _decompose(A: np.ndarray, method: str, cutoff: float) -> EigenDecomposition:
    if method == "jacobi":
        w, U = jacobi_eigh(A)
    elif method == "lapack":
        w, U = np.linalg.eigh(A)
    else:
        raise ValueError(f"unknown eigensolver method {method!r}")
    order = np.argsort(-w, kind="stable")
    w = w[order]
    U = _fix_phases(U[:, order])
    if not np.iscomplexobj(A):
        U = np.real(U)
    scale = float(np.max(np.abs(w)))
    rank = int(np.sum(np.abs(w) > cutoff * scale)) if scale > 0 else 0
    return EigenDecomposition(eigenvalues=w, eigenvectors=U, rank=rank, cutoff=cutoff)


def eig_sym(M, cutoff: float = RANK_CUTOFF, method: str = "jacobi") -> EigenDecomposition:
    """Eigendecomposition of a real symmetric matrix, eigenvalues descending."""
    A = _as_square(M)
    if np.iscomplexobj(A):
        if np.abs(A.imag).max(initial=0.0) > SYMMETRY_TOL:
            raise ValidationError("eig_sym needs a real matrix; use eig_herm")
        A = A.real
    A = A.astype(float)
    _check_hermitian(A, SYMMETRY_TOL, "symmetric")
    return _decompose(0.5 * (A + A.T), method, cutoff)


def eig_herm(M, cutoff: float = RANK_CUTOFF, method: str = "jacobi") -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix; eigenvalues real and descending."""
    A = _as_square(M).astype(complex)
    _check_hermitian(A, SYMMETRY_TOL, "Hermitian")
    return _decompose(0.5 * (A + A.conj().T), method, cutoff)


def eig(M, cutoff: float = RANK_CUTOFF, method: str = "jacobi") -> EigenDecomposition:
    """Dispatch to :func:`eig_sym` or :func:`eig_herm` by dtype."""
    if np.iscomplexobj(np.asarray(M)):
        return eig_herm(M, cutoff, method)
    return eig_sym(M, cutoff, method)


def rank(M, cutoff: float = RANK_CUTOFF) -> int:
    return eig(M, cutoff).rank


def largest_eigenvalue(A) -> float:
    """lambda_1 of a small real symmetric matrix via LAPACK (hot loops only)."""
    A = np.asarray(A, dtype=float)
    if A.shape[0] == 1:
        return float(A[0, 0])
    return float(np.linalg.eigvalsh(A)[-1])


# ---------------------------------------------------------------------------
# pseudoinverse and Frobenius geometry
# ---------------------------------------------------------------------------

def pinv(M, cutoff: float = RANK_CUTOFF, method: str = "jacobi") -> np.ndarray:
    """Moore-Penrose inverse of a Hermitian PSD matrix.

    Sums (1/lambda_i) u_i u_i* over eigenvalues above ``cutoff * lambda_1``.
    """
    dec = eig(M, cutoff, method)
    lam1 = float(dec.eigenvalues[0])
    lam_min = float(dec.eigenvalues[-1])
    if lam_min < -RANK_CUTOFF * max(lam1, 0.0) or (lam1 <= 0 and lam_min < 0):
        raise PreconditionError(
            f"pinv needs a PSD matrix; smallest eigenvalue {lam_min:.3e} vs largest {lam1:.3e}"
        )
    A = np.asarray(M)
    out = np.zeros(A.shape, dtype=dec.eigenvectors.dtype)
    if lam1 <= 0:
        return out
    keep = dec.eigenvalues > cutoff * lam1
    U = dec.eigenvectors[:, keep]
    return (U / dec.eigenvalues[keep][None, :]) @ U.conj().T


def frobenius_inner(A, B):
    """<A, B>_F = tr(A* B)."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise ValidationError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return inner(A, B)


@dataclass(frozen=True)
class MatrixSpan:
    """Generators W_1..W_n and their Frobenius Gram matrix (W# W)."""

    generators: tuple[np.ndarray, ...]
    gramian: np.ndarray = field(repr=False)

    @classmethod
    def from_generators(cls, generators: Sequence) -> "MatrixSpan":
        gens = tuple(np.asarray(W) for W in generators)
        if not gens:
            raise ValidationError("a span needs at least one generator")
        shape = gens[0].shape
        for i, W in enumerate(gens):
            if W.shape != shape:
                raise ValidationError(f"generator {i} has shape {W.shape}, expected {shape}")
        n = len(gens)
        dtype = complex if any(np.iscomplexobj(W) for W in gens) else float
        G = np.zeros((n, n), dtype=dtype)
        for i in range(n):
            for j in range(i, n):
                G[i, j] = frobenius_inner(gens[i], gens[j])
                G[j, i] = np.conj(G[i, j])
        return cls(generators=gens, gramian=G)

    @classmethod
    def rank_one(cls, vectors) -> "MatrixSpan":
        """Span of v v* over the rows of ``vectors``."""
        return cls.from_generators([np.outer(v, np.conj(v)) for v in np.asarray(vectors)])

    def combine(self, coeffs) -> np.ndarray:
        stacked = np.stack(self.generators)
        return np.tensordot(np.asarray(coeffs), stacked, axes=1)


def span_project(span: MatrixSpan, X) -> tuple[np.ndarray, float]:
    """Orthogonal Frobenius projection of X onto the span of the generators.

    Returns the projection W (W#W)^+ W# X and <X, PX>_F.
    """
    X = np.asarray(X)
    if X.shape != span.generators[0].shape:
        raise ValidationError(f"dimension mismatch: {X.shape} vs {span.generators[0].shape}")
    b = np.array([frobenius_inner(W, X) for W in span.generators])
    coeffs = pinv(span.gramian) @ b
    P = span.combine(coeffs)
    if not (np.iscomplexobj(X) or np.iscomplexobj(span.gramian)):
        P = np.real(P)
    return P, float(np.real(frobenius_inner(X, P)))


def helmert_basis(n: int) -> np.ndarray:
    """n x (n-1) matrix whose columns are an orthonormal basis of the
    complement of the all-ones vector."""
    Q = np.zeros((n, n - 1))
    for k in range(1, n):
        Q[:k, k - 1] = 1.0
        Q[k, k - 1] = -float(k)
        Q[:, k - 1] /= math.sqrt(k * (k + 1))
    return Q
