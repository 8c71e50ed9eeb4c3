"""Projection inequalities for equiangular codes, evaluated numerically.

Every check returns an :class:`InequalityReport` holding both sides of the
inequality as written, the slack oriented so that ``slack >= 0`` means the
inequality holds, and a tightness flag.  Throughout, f is |.|^2 applied
entrywise and D = alpha^2 n + 1 - alpha^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from eqlines.codes import EQUIANGULAR_TOL, SphericalCode, code_to_graph, gram, verify_equiangular
from eqlines.errors import PreconditionError, ValidationError
from eqlines.linalg import EigenDecomposition, eig, fsum_complex, inner, matvec, pinv

VALID_TOL = 1e-8
TIGHT_TOL = 1e-7
DEGENERATE_TOL = 1e-9

GE = "lhs >= rhs"
LE = "lhs <= rhs"
GT = "lhs > rhs"
LT = "lhs < rhs"
EQ = "lhs = rhs"


@dataclass(frozen=True)
class InequalityReport:
    lemma_id: str
    lhs: float
    rhs: float
    slack: float
    relative_slack: float
    holds: bool
    tight: bool
    hypothesis_ok: bool
    notes: str = ""

    def to_json(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "relative_slack": self.relative_slack,
            "holds": self.holds,
            "tight": self.tight,
            "hypothesis_ok": self.hypothesis_ok,
            "notes": self.notes,
        }


def make_report(
    lemma_id: str,
    lhs: float,
    rhs: float,
    relation: str,
    hypothesis_ok: bool = True,
    notes: str | list[str] = "",
    valid_tol: float = VALID_TOL,
    tight_tol: float = TIGHT_TOL,
) -> InequalityReport:
    """Orient the slack by ``relation`` and apply the tolerances relative to
    max(1, |rhs|).  Strict relations are checked as non-strict."""
    lhs, rhs = float(lhs), float(rhs)
    if relation in (GE, GT):
        slack = lhs - rhs
    elif relation in (LE, LT):
        slack = rhs - lhs
    elif relation == EQ:
        slack = -abs(lhs - rhs)
    else:
        raise ValueError(f"unknown relation {relation!r}")
    extra = [notes] if isinstance(notes, str) else list(notes)
    parts = [relation] + [s for s in extra if s]
    if not hypothesis_ok:
        parts.append("advisory: hypothesis not satisfied")
    if math.isnan(slack):
        return InequalityReport(lemma_id, lhs, rhs, math.nan, math.nan, False, False, hypothesis_ok, "; ".join(parts))
    scale = max(1.0, abs(rhs))
    holds = slack >= -valid_tol * scale
    tight = holds and abs(slack) <= tight_tol * scale
    if relation == EQ:
        holds = tight = abs(slack) <= tight_tol * scale
    return InequalityReport(lemma_id, lhs, rhs, slack, slack / scale, bool(holds), bool(tight), hypothesis_ok, "; ".join(parts))


# ---------------------------------------------------------------------------
# per-code precomputation
# ---------------------------------------------------------------------------

@dataclass
class CodeAnalysis:
    """Gram matrix, spectrum and angle of an equiangular code, computed once."""

    code: SphericalCode
    tol: float = EQUIANGULAR_TOL
    M: np.ndarray = field(init=False, repr=False)
    alpha: float = field(init=False)

    def __post_init__(self):
        check = verify_equiangular(self.code, self.tol)
        if not check.is_equiangular:
            raise PreconditionError(
                f"code is not equiangular (max deviation {check.max_deviation:.3e} > {self.tol:g})"
            )
        if not DEGENERATE_TOL < check.alpha < 1:
            raise PreconditionError(f"alpha must lie in (0, 1), got {check.alpha:.6g}")
        self.alpha = check.alpha
        self.M = gram(self.code).entries

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def r(self) -> int:
        return self.code.r

    @property
    def is_complex(self) -> bool:
        return self.code.is_complex

    @property
    def D(self) -> float:
        a2 = self.alpha**2
        return a2 * self.n + 1 - a2

    @cached_property
    def dec(self) -> EigenDecomposition:
        return eig(self.M)

    @property
    def rank(self) -> int:
        return self.dec.rank

    @property
    def lambda1(self) -> float:
        return float(self.dec.eigenvalues[0])

    @cached_property
    def graph(self):
        if self.is_complex:
            raise PreconditionError("graph lemmas need a real code")
        return code_to_graph(self.code, self.tol)[0]

    def real_tight_expected(self, shift: int = 0) -> bool:
        k = self.rank
        return self.n == k * (k + 1) // 2 - shift

    def complex_tight_expected(self) -> bool:
        return self.n == self.rank**2


def analyze(code, tol: float = EQUIANGULAR_TOL) -> CodeAnalysis:
    return code if isinstance(code, CodeAnalysis) else CodeAnalysis(code, tol)


def _vec(x, n: int, name: str, complex_ok: bool) -> np.ndarray:
    v = np.asarray(x)
    if v.ndim != 1 or v.shape[0] != n:
        raise ValidationError(f"{name} must be a vector of length n = {n}, got shape {v.shape}")
    if np.iscomplexobj(v):
        if not complex_ok and np.abs(v.imag).max(initial=0.0) > 0:
            raise ValidationError(f"{name} must be real for a real code")
        return v.astype(complex) if complex_ok else v.real.astype(float)
    return v.astype(complex if complex_ok else float)


def _require_real(ca: CodeAnalysis, lemma_id: str) -> None:
    if ca.is_complex:
        raise PreconditionError(f"{lemma_id} applies to real codes only")


def _expect(flag: bool, what: str) -> list[str]:
    return [f"equality expected ({what})"] if flag else []


# ---------------------------------------------------------------------------
# Welch
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WelchReport:
    n: int
    r: int
    pinv_quadform: float
    classic_sum: float
    welch_lower: float
    improved_lower: float
    first_holds: bool
    second_holds: bool
    identity_in_span: bool
    frame_vector_tight: bool | None
    notes: str = ""

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "pinv_quadform": self.pinv_quadform,
            "classic_sum": self.classic_sum,
            "welch_lower": self.welch_lower,
            "improved_lower": self.improved_lower,
            "first_holds": self.first_holds,
            "second_holds": self.second_holds,
            "identity_in_span": self.identity_in_span,
            "frame_vector_tight": self.frame_vector_tight,
            "notes": self.notes,
        }


def welch(code: SphericalCode, tol: float = VALID_TOL) -> WelchReport:
    """1' f(M)^+ 1 <= r  and  1' f(M) 1 >= (n^2/r)(2 - 1' f(M)^+ 1 / r)."""
    n, r = code.n, code.r
    M = gram(code).entries
    fM = np.abs(M) ** 2
    ones = np.ones(n)
    q = float(fsum_complex(pinv(fM) * np.outer(ones, ones)).real)
    classic = math.fsum(fM.ravel())
    improved = n * n / r * (2 - q / r)
    first = q <= r + tol * max(1.0, r)
    second = classic >= improved - tol * max(1.0, abs(classic), abs(improved))
    in_span = abs(q - r) <= tol * max(1.0, r)
    full_rank = eig(fM).rank == n
    notes = []
    if full_rank:
        resid = np.max(np.abs(matvec(fM, ones) - n / r))
        frame_tight = bool(resid <= tol * max(1.0, n / r))
    else:
        frame_tight = None
        notes.append("frame_vector_tight not applicable: f(M) is singular")
    return WelchReport(n, r, q, classic, n * n / r, improved, bool(first), bool(second),
                       bool(in_span), frame_tight, "; ".join(notes))


# ---------------------------------------------------------------------------
# main projection inequalities
# ---------------------------------------------------------------------------

def projection_ineq_real(code, x, y) -> InequalityReport:
    """(1-a^2)/2 (<x,Mx><y,My> + <x,My>^2) + a^2/D <Mx,My>^2 >= <f(Mx), f(My)>."""
    ca = analyze(code)
    _require_real(ca, "main_r")
    x = _vec(x, ca.n, "x", False)
    y = _vec(y, ca.n, "y", False)
    M, a2 = ca.M, ca.alpha**2
    Mx, My = matvec(M, x), matvec(M, y)
    lhs = (1 - a2) / 2 * (inner(x, Mx) * inner(y, My) + inner(x, My) ** 2) + a2 / ca.D * inner(Mx, My) ** 2
    rhs = math.fsum(Mx**2 * My**2)
    k = ca.rank
    return make_report("main_r", lhs, rhs, GE, True, _expect(ca.real_tight_expected(), f"n = C({k}+1, 2)"))


def projection_ineq_complex(code, x, y) -> InequalityReport:
    """(1-a^2) <x,Mx><y,My> + a^2/D |<Mx,My>|^2 >= <f(Mx), f(My)>.

    When alpha = 1/sqrt(r+1) the notes carry the residual of
    r <x,Mx><y,My> + |<Mx,My>|^2 / r = (r+1) <f(Mx), f(My)>.
    """
    ca = analyze(code)
    x = _vec(x, ca.n, "x", True)
    y = _vec(y, ca.n, "y", True)
    M, a2 = ca.M, ca.alpha**2
    Mx, My = matvec(M, x), matvec(M, y)
    xMx, yMy = inner(x, Mx).real, inner(y, My).real
    cross = abs(inner(Mx, My)) ** 2
    lhs = (1 - a2) * xMx * yMy + a2 / ca.D * cross
    rhs = math.fsum(np.abs(Mx) ** 2 * np.abs(My) ** 2)
    notes = _expect(ca.complex_tight_expected(), f"n = {ca.rank}^2")
    r = ca.r
    if abs(ca.alpha - 1 / math.sqrt(r + 1)) <= VALID_TOL:
        ident = r * xMx * yMy + cross / r - (r + 1) * rhs
        notes.append(f"sic identity residual {ident!r}")
    return make_report("main_c", lhs, rhs, GE, True, notes)


def sic_identity(code, x, y) -> InequalityReport:
    """r <x,Mx><y,My> + |<Mx,My>|^2 / r  vs  (r+1) <f(Mx), f(My)>, for alpha = 1/sqrt(r+1).

    This is (r+1) times the complex inequality; it is an identity when n = r^2.
    """
    ca = analyze(code)
    x = _vec(x, ca.n, "x", True)
    y = _vec(y, ca.n, "y", True)
    r = ca.r
    Mx, My = matvec(ca.M, x), matvec(ca.M, y)
    xMx, yMy = inner(x, Mx).real, inner(y, My).real
    lhs = r * xMx * yMy + abs(inner(Mx, My)) ** 2 / r
    rhs = (r + 1) * math.fsum(np.abs(Mx) ** 2 * np.abs(My) ** 2)
    hyp = abs(ca.alpha - 1 / math.sqrt(r + 1)) <= VALID_TOL
    if ca.n == r * r:
        return make_report("sic_identity", lhs, rhs, EQ, hyp, "identity expected (n = r^2)")
    return make_report("sic_identity", lhs, rhs, GE, hyp)


def projection_ineq_regular(code, x) -> InequalityReport:
    """((1-a^2) n/(2 lam)) <x,Mx> + (lam^2/n - (1-a^2)/2) <x,1>^2 >= <x, M^2 x>,
    for M 1 = lam 1."""
    ca = analyze(code)
    _require_real(ca, "main_r_regular")
    x = _vec(x, ca.n, "x", False)
    n, a2, M = ca.n, ca.alpha**2, ca.M
    ones = np.ones(n)
    M1 = matvec(M, ones)
    lam = math.fsum(M1) / n
    hyp = bool(np.linalg.norm(M1 - lam) <= 1e-7 * np.linalg.norm(M1)) and lam > 0
    Mx = matvec(M, x)
    lhs = (1 - a2) * n / (2 * lam) * inner(x, Mx) + (lam**2 / n - (1 - a2) / 2) * inner(x, ones) ** 2
    rhs = inner(Mx, Mx)
    notes = [f"lambda = {lam!r}"]
    if not hyp:
        notes.append("all-ones vector is not an eigenvector with positive eigenvalue")
    notes += _expect(hyp and ca.real_tight_expected(shift=1), f"n = C({ca.rank}+1, 2) - 1")
    return make_report("main_r_regular", lhs, rhs, GE, hyp, notes)


# ---------------------------------------------------------------------------
# lemma catalogue
# ---------------------------------------------------------------------------

LEMMAS: dict[str, str] = {
    "R1": "sum x_i^2 y_i^2 <= (1-a^2)/(2 lam mu) for orthogonal unit eigenvectors",
    "R2": "(1-a^2)/(2a^2) (<x,Mx> - (Mx)_i^2) + (M^2x)_i^2/D >= <x,M^2x>",
    "R3": "top-eigenvector entries and lambda_2 bound, for lambda_1 > (1-a^2)/(2a^2)",
    "R4": "lambda_1 <= a n + 1 - a",
    "R5": "n < (1+a)/(2a - (1-a^2)/(a lambda_1)) (r-1) + 1, for lambda_1 > (1-a^2)/(2a^2)",
    "R6": "n < lambda_1 sqrt(r)/a",
    "R7": "(n - 2d + 2/a - 2)^2 >= (n + 1/a^2 - 1)(n - (1/a^2-1)(1/a^2-3)/2), restricted code",
    "R8": "degree gap between high and low vertices, restricted code",
    "R9": "|H| <= 1/(4a^4 - 3/n) for n >= 1/a^4, restricted code",
    "R10": "tr(B)^2 <= tr(B^2) rk(B) for B = M - aJ",
    "R11": "n <= (1 + (2a/(1-a))^2 avg_degree)(r+1)",
    "C1": "sum |x_i|^2 |y_i|^2 <= (1-a^2)/(lam mu) for orthogonal unit eigenvectors",
    "C2": "(1-a^2)/a^2 (<x,Mx> - |(Mx)_i|^2) + |(M^2x)_i|^2/D >= <x,M^2x>",
    "C3": "top-eigenvector entries and lambda_2 bound, for lambda_1 > (1-a^2)/a^2",
    "C4": "lambda_1 <= a n + 1 - a",
    "C5": "n < (1+a)/(a - (1-a^2)/(a lambda_1)) (r-1) + 1, for lambda_1 > (1-a^2)/a^2",
    "C6": "n < lambda_1 sqrt(r)/a",
    "main_r": "real projection inequality (params x, y)",
    "main_c": "complex projection inequality (params x, y)",
    "main_r_regular": "projection inequality when 1 is an eigenvector (param x)",
    "sic_identity": "SIC identity with factor r+1 (params x, y)",
}

REAL_ONLY = {"R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R10", "R11", "main_r", "main_r_regular"}


def _param(params: dict, key: str, lemma_id: str):
    if key not in params:
        raise ValidationError(f"{lemma_id} needs parameter {key!r}")
    return params[key]


def _index(params: dict, key: str, n: int, lemma_id: str, default=None) -> int:
    v = params.get(key, default)
    if v is None:
        raise ValidationError(f"{lemma_id} needs parameter {key!r}")
    if isinstance(v, bool) or int(v) != v or not 0 <= int(v) < n:
        raise ValidationError(f"{lemma_id}: {key} = {v!r} is not an index in 0..{n - 1}")
    return int(v)


def _eigenpair_product(ca: CodeAnalysis, params: dict, lemma_id: str, factor: float):
    i = _index(params, "i", ca.n, lemma_id, 0)
    j = _index(params, "j", ca.n, lemma_id, 1)
    if i == j:
        raise ValidationError(f"{lemma_id}: eigenvector indices must differ")
    w = ca.dec.eigenvalues
    U = ca.dec.eigenvectors
    lam, mu = float(w[i]), float(w[j])
    x, y = U[:, i], U[:, j]
    lhs = math.fsum(np.abs(x) ** 2 * np.abs(y) ** 2)
    cut = ca.dec.cutoff * max(abs(float(w[0])), 1e-300)
    if abs(lam) <= cut or abs(mu) <= cut:
        return lhs, math.nan, False, ["eigenvalue is zero"]
    return lhs, factor * (1 - ca.alpha**2) / (lam * mu), True, []


def _standard_vector(ca: CodeAnalysis, params: dict, lemma_id: str, c: float):
    i = _index(params, "i", ca.n, lemma_id)
    x = _vec(_param(params, "x", lemma_id), ca.n, "x", ca.is_complex)
    M = ca.M
    Mx = matvec(M, x)
    M2x = matvec(M, Mx)
    xMx = inner(x, Mx).real
    lhs = c * (xMx - abs(Mx[i]) ** 2) + abs(M2x[i]) ** 2 / ca.D
    rhs = inner(Mx, Mx).real
    return lhs, rhs


def _top_eigen_bounds(ca: CodeAnalysis, params: dict, lemma_id: str, c: float, scale: float, tight: bool):
    part = params.get("part", "lambda2")
    if part not in ("lambda2", "xi"):
        raise ValidationError(f"{lemma_id}: part must be 'lambda2' or 'xi'")
    lam1 = ca.lambda1
    lam2 = float(ca.dec.eigenvalues[1]) if ca.n > 1 else 0.0
    x = ca.dec.eigenvectors[:, 0]
    lhs = float(np.min(np.abs(x) ** 2)) if part == "xi" else lam2
    rel = GE if part == "xi" else LE
    rid = f"{lemma_id}:{part}"
    if abs(lam1 - c) <= DEGENERATE_TOL * lam1:
        return make_report(rid, lhs, math.nan, rel, False,
                           f"boundary-degenerate: lambda_1 = {lam1!r} equals the threshold {c!r}")
    hyp = lam1 > c
    if part == "xi":
        rhs = (1 - c / lam1) / (lam1**2 / ca.D - c)
    else:
        rhs = scale * (lam1 / ca.D - c / lam1) / (1 - c / lam1)
    return make_report(rid, lhs, rhs, rel, hyp, _expect(hyp and tight, "tight configuration"))


def _boundbig(ca: CodeAnalysis, lemma_id: str, c: float, denom_lead: float):
    lam1 = ca.lambda1
    a = ca.alpha
    if abs(lam1 - c) <= DEGENERATE_TOL * lam1:
        return make_report(lemma_id, ca.n, math.nan, LT, False,
                           f"boundary-degenerate: lambda_1 = {lam1!r} equals the threshold {c!r}")
    hyp = lam1 > c
    rhs = (1 + a) / (denom_lead * a - (1 - a * a) / (a * lam1)) * (ca.r - 1) + 1
    return make_report(lemma_id, ca.n, rhs, LT, hyp)


def _restricted(ca: CodeAnalysis, params: dict, lemma_id: str):
    g = ca.graph
    iso = g.isolated_vertices()
    pivot = params.get("pivot")
    if pivot is None:
        pivot = iso[0] if iso else 0
    pivot = _index({"pivot": pivot}, "pivot", ca.n, lemma_id)
    restricted = pivot in iso
    notes = [] if restricted else ["code is not restricted at the pivot; apply restrict_switch first"]
    return g, pivot, restricted, notes


def evaluate_lemma(code, lemma_id: str, params: dict | None = None) -> InequalityReport:
    """Evaluate one catalogue inequality on an equiangular code.

    ``code`` may be a SphericalCode or a precomputed :class:`CodeAnalysis`.
    """
    if lemma_id not in LEMMAS:
        raise ValidationError(f"unknown lemma id {lemma_id!r}; choose from {', '.join(LEMMAS)}")
    params = dict(params or {})
    ca = analyze(code)
    if lemma_id in REAL_ONLY:
        _require_real(ca, lemma_id)
    a = ca.alpha
    a2 = a * a
    n = ca.n
    cR = (1 - a2) / (2 * a2)
    cC = (1 - a2) / a2

    if lemma_id == "main_r":
        return projection_ineq_real(ca, _param(params, "x", lemma_id), _param(params, "y", lemma_id))
    if lemma_id == "main_c":
        return projection_ineq_complex(ca, _param(params, "x", lemma_id), _param(params, "y", lemma_id))
    if lemma_id == "main_r_regular":
        return projection_ineq_regular(ca, _param(params, "x", lemma_id))
    if lemma_id == "sic_identity":
        return sic_identity(ca, _param(params, "x", lemma_id), _param(params, "y", lemma_id))

    if lemma_id in ("R1", "C1"):
        factor = 0.5 if lemma_id == "R1" else 1.0
        lhs, rhs, hyp, notes = _eigenpair_product(ca, params, lemma_id, factor)
        tight = ca.real_tight_expected() if lemma_id == "R1" else ca.complex_tight_expected()
        return make_report(lemma_id, lhs, rhs, LE, hyp, notes + _expect(hyp and tight, "tight configuration"))

    if lemma_id in ("R2", "C2"):
        c = cR if lemma_id == "R2" else cC
        lhs, rhs = _standard_vector(ca, params, lemma_id, c)
        tight = ca.real_tight_expected() if lemma_id == "R2" else ca.complex_tight_expected()
        return make_report(lemma_id, lhs, rhs, GE, True, _expect(tight, "tight configuration"))

    if lemma_id == "R3":
        return _top_eigen_bounds(ca, params, "R3", cR, (1 - a2) / 2, ca.real_tight_expected())
    if lemma_id == "C3":
        return _top_eigen_bounds(ca, params, "C3", cC, 1 - a2, ca.complex_tight_expected())

    if lemma_id in ("R4", "C4"):
        return make_report(lemma_id, ca.lambda1, a * n + 1 - a, LE)

    if lemma_id == "R5":
        return _boundbig(ca, "R5", cR, 2.0)
    if lemma_id == "C5":
        return _boundbig(ca, "C5", cC, 1.0)

    if lemma_id in ("R6", "C6"):
        return make_report(lemma_id, n, ca.lambda1 * math.sqrt(ca.r) / a, LT)

    if lemma_id == "R7":
        g, pivot, restricted, notes = _restricted(ca, params, lemma_id)
        i = _index(params, "i", n, lemma_id)
        if i == pivot:
            raise ValidationError("R7: vertex must differ from the pivot")
        d = int(g.degrees[i])
        inv2 = 1 / a2
        lhs = (n - 2 * d + 2 / a - 2) ** 2
        rhs = (n + inv2 - 1) * (n - 0.5 * (inv2 - 1) * (inv2 - 3))
        notes += _expect(restricted and ca.real_tight_expected(), "tight configuration")
        return make_report("R7", lhs, rhs, GE, restricted, [f"vertex {i}, degree {d}"] + notes)

    if lemma_id == "R8":
        g, pivot, restricted, notes = _restricted(ca, params, lemma_id)
        i = _index(params, "i", n, lemma_id)
        inv2 = 1 / a2
        hyp = restricted and n > 0.5 * (inv2 - 1) * (inv2 - 3)
        d = int(g.degrees[i])
        if d > n / 2 + 1 / a - 1:
            rhs = n - 0.25 * (inv2 - 1) * (inv2 - 3) + 1 / a - 1
            return make_report("R8", d, rhs, GT, hyp, [f"vertex {i} in H, degree {d}"] + notes)
        rhs = 1 / (4 * a2 * a2) - (1 / a - 0.5) ** 2
        return make_report("R8", d, rhs, LT, hyp, [f"vertex {i} in L, degree {d}"] + notes)

    if lemma_id == "R9":
        g, pivot, restricted, notes = _restricted(ca, params, lemma_id)
        a4 = a2 * a2
        H = int(np.sum(g.degrees > n / 2 + 1 / a - 1 + 1e-9))
        denom = 4 * a4 - 3 / n
        hyp = restricted and n >= 1 / a4 - 1e-9 and denom > 0
        rhs = 1 / denom if denom > 0 else math.nan
        return make_report("R9", H, rhs, LE, hyp, notes)

    if lemma_id == "R10":
        B = ca.M - a * np.ones((n, n))
        trB = math.fsum(np.diag(B))
        trB2 = math.fsum((B * B).ravel())
        rk = eig(B).rank
        return make_report("R10", trB**2, trB2 * rk, LE, True, f"rank(M - aJ) = {rk}")

    if lemma_id == "R11":
        dbar = ca.graph.average_degree
        rhs = (1 + (2 * a / (1 - a)) ** 2 * dbar) * (ca.r + 1)
        return make_report("R11", n, rhs, LE, True, f"average degree {dbar!r}")

    raise AssertionError(lemma_id)


# ---------------------------------------------------------------------------
# batch evaluation
# ---------------------------------------------------------------------------

X_LEMMAS = {"R2", "C2"}
XY_LEMMAS = {"main_r", "main_c", "sic_identity"}
VERTEX_LEMMAS = {"R7", "R8"}


def random_vector(rng: np.random.Generator, n: int, is_complex: bool) -> np.ndarray:
    v = rng.standard_normal(n)
    if is_complex:
        v = v + 1j * rng.standard_normal(n)
    return v


def batch_params(code, lemma_id: str, samples: int, seed: int | None) -> list[dict]:
    """Parameter sets for a batch run, drawn in a fixed order from ``seed``.

    Vector lemmas get ``samples`` random draws; vertex lemmas iterate over the
    vertices; eigenvector-pair lemmas iterate over pairs with nonzero
    eigenvalues (at most ``samples`` of them).
    """
    if lemma_id not in LEMMAS:
        raise ValidationError(f"unknown lemma id {lemma_id!r}; choose from {', '.join(LEMMAS)}")
    ca = analyze(code)
    n = ca.n
    rng = np.random.default_rng(seed)
    cplx = ca.is_complex
    if lemma_id in XY_LEMMAS:
        return [{"x": random_vector(rng, n, cplx), "y": random_vector(rng, n, cplx)} for _ in range(samples)]
    if lemma_id == "main_r_regular":
        return [{"x": random_vector(rng, n, False)} for _ in range(samples)]
    if lemma_id in X_LEMMAS:
        return [{"i": s % n, "x": random_vector(rng, n, cplx)} for s in range(samples)]
    if lemma_id in VERTEX_LEMMAS:
        g = ca.graph
        iso = g.isolated_vertices()
        pivot = iso[0] if iso else 0
        return [{"i": i, "pivot": pivot} for i in range(n) if not (lemma_id == "R7" and i == pivot)]
    if lemma_id in ("R1", "C1"):
        k = ca.rank
        pairs = [{"i": i, "j": j} for i in range(k) for j in range(i + 1, k)]
        return pairs[:samples]
    if lemma_id in ("R3", "C3"):
        return [{"part": "xi"}, {"part": "lambda2"}]
    return [{}]
