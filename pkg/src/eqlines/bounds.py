"""Closed-form upper bounds on the number of equiangular lines N_alpha(r).

Angles can be given exactly ("1/3", "0.4", "1/sqrt(5)") so that the
arithmetic gates (relative bound denominator, 1/alpha an odd integer) are
decided exactly rather than by floating-point comparison.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from eqlines.errors import PreconditionError, ValidationError

_SQRT_RE = re.compile(r"^1\s*/\s*sqrt\(\s*([0-9]+(?:\.[0-9]*)?|[0-9]+/[0-9]+)\s*\)$")


@dataclass(frozen=True)
class Alpha:
    """An angle parameter alpha in (0, 1).

    ``alpha_sq`` holds alpha^2 as an exact fraction when it is known exactly
    (rational alpha or alpha = 1/sqrt(k)); ``numeric_guess`` records that an
    exact form was inferred from a float.
    """

    value: float
    alpha_sq: Fraction | None = None
    text: str = ""
    numeric_guess: bool = False

    def __float__(self) -> float:
        return self.value

    @property
    def exact(self) -> bool:
        return self.alpha_sq is not None

    def inverse_is_odd_integer(self) -> bool:
        """Whether 1/alpha is an odd integer (exactly when alpha^2 is known)."""
        if self.alpha_sq is not None:
            inv = 1 / self.alpha_sq
            if inv.denominator != 1:
                return False
            m = math.isqrt(inv.numerator)
            return m * m == inv.numerator and m % 2 == 1
        inv = 1.0 / self.value
        m = round(inv)
        return abs(inv - m) <= 1e-9 and m % 2 == 1

    def le(self, other: Fraction) -> bool:
        """alpha <= other for a rational ``other``, exact when possible."""
        if self.alpha_sq is not None:
            return self.alpha_sq <= other * other
        return self.value <= float(other) + 1e-12


def parse_alpha(a) -> Alpha:
    """Accept a float, Fraction, decimal string, "p/q" or "1/sqrt(k)"."""
    if isinstance(a, Alpha):
        out = a
    elif isinstance(a, Fraction):
        out = Alpha(float(a), a * a, str(a))
    elif isinstance(a, bool):
        raise ValidationError("alpha must be a number")
    elif isinstance(a, int):
        out = Alpha(float(a), Fraction(a) ** 2, str(a))
    elif isinstance(a, float):
        if not math.isfinite(a):
            raise ValidationError("alpha must be finite")
        guess = Fraction(a).limit_denominator(10**6)
        if a != 0 and abs(float(guess) - a) <= 1e-15 * abs(a):
            out = Alpha(a, guess * guess, repr(a), numeric_guess=Fraction(a) != guess)
        else:
            out = Alpha(a, None, repr(a), numeric_guess=True)
    elif isinstance(a, str):
        s = a.strip().replace(" ", "")
        m = _SQRT_RE.match(s)
        try:
            if m:
                k = Fraction(m.group(1))
                if k <= 0:
                    raise ValidationError(f"cannot parse alpha {a!r}")
                out = Alpha(1.0 / math.sqrt(float(k)), 1 / k, s)
            else:
                q = Fraction(s)
                out = Alpha(float(q), q * q, s)
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"cannot parse alpha {a!r}") from None
    else:
        raise ValidationError(f"cannot parse alpha {a!r}")
    if not 0.0 < out.value < 1.0:
        raise PreconditionError(f"alpha must lie in (0, 1), got {out.value}")
    return out


def _check_r(r) -> int:
    if isinstance(r, bool) or int(r) != r or r < 1:
        raise PreconditionError(f"r must be a positive integer, got {r!r}")
    return int(r)


def _check_field(field_: str) -> str:
    if field_ not in ("real", "complex"):
        raise ValidationError(f"field must be 'real' or 'complex', got {field_!r}")
    return field_


def bound_real_spectral(r: int, alpha) -> float:
    """sqrt(r)/(2 alpha^3) + (1 + alpha) r / (2 alpha)."""
    r = _check_r(r)
    a = parse_alpha(alpha).value
    return math.sqrt(r) / (2 * a**3) + (1 + a) * r / (2 * a)


def bound_real_degree(r: int, alpha) -> float:
    """max(2/alpha^5 + 2/(alpha^3 (1 - alpha)), (2 + 8 alpha^2/(1 - alpha)^2)(r + 1))."""
    r = _check_r(r)
    a = parse_alpha(alpha).value
    first = 2 / a**5 + 2 / (a**3 * (1 - a))
    second = (2 + 8 * a**2 / (1 - a) ** 2) * (r + 1)
    return max(first, second)


@dataclass(frozen=True)
class AsymptoticBound:
    value: float
    factor: float
    q: int
    threshold: float
    certified: bool = False
    note: str = "asymptotic only, not a certified finite-r bound; needs alpha >> threshold"


def asymptotic_factor(q: int) -> float:
    """1 + 1/(4 cos^2(pi/(q+2)))."""
    if isinstance(q, bool) or int(q) != q or q < 2:
        raise PreconditionError(f"q must be an integer >= 2, got {q!r}")
    return 1 + 1 / (4 * math.cos(math.pi / (q + 2)) ** 2)


def bound_real_asymptotic(r: int, alpha, q: int) -> AsymptoticBound:
    """(1 + 1/(4 cos^2(pi/(q+2)))) r, reported with the threshold r^(-1/(2q+1))."""
    r = _check_r(r)
    parse_alpha(alpha)
    f = asymptotic_factor(q)
    return AsymptoticBound(value=f * r, factor=f, q=int(q), threshold=r ** (-1 / (2 * q + 1)))


def bound_complex(r: int, alpha) -> float:
    """sqrt(r)/alpha^3 + r/alpha."""
    r = _check_r(r)
    a = parse_alpha(alpha).value
    return math.sqrt(r) / a**3 + r / a


def bound_relative(r: int, alpha, field: str = "real") -> float | None:
    """r (1 - alpha^2)/(1 - alpha^2 r), or None unless alpha^2 r < 1."""
    r = _check_r(r)
    _check_field(field)
    al = parse_alpha(alpha)
    if al.alpha_sq is not None:
        a2 = al.alpha_sq
        if a2 * r >= 1:
            return None
        return float(r * (1 - a2) / (1 - a2 * r))
    a2 = al.value**2
    if a2 * r >= 1:
        return None
    return r * (1 - a2) / (1 - a2 * r)


def bound_absolute(r: int, field: str = "real") -> int:
    """r(r+1)/2 over the reals, r^2 over the complex numbers."""
    r = _check_r(r)
    return r * (r + 1) // 2 if _check_field(field) == "real" else r * r


def bound_neumann(r: int, alpha) -> tuple[float | None, bool]:
    """2r when 1/alpha is not an odd integer (real lines).

    Returns (value or None, numeric_guess)."""
    r = _check_r(r)
    al = parse_alpha(alpha)
    guess = al.numeric_guess or al.alpha_sq is None
    if al.inverse_is_odd_integer():
        return None, guess
    return float(2 * r), guess


def bound_yu(r: int, alpha) -> float | None:
    """(1/alpha^2 - 1)(1/alpha^2 - 2)/2 for 1/sqrt(r+2) <= alpha <= sqrt(3/(r+16)), alpha <= 1/3."""
    r = _check_r(r)
    al = parse_alpha(alpha)
    if al.alpha_sq is not None:
        a2 = al.alpha_sq
        ok = Fraction(1, r + 2) <= a2 <= Fraction(3, r + 16) and a2 <= Fraction(1, 9)
        if not ok:
            return None
        inv = 1 / a2
        return float((inv - 1) * (inv - 2) / 2)
    a2 = al.value**2
    eps = 1e-12
    if not (1 / (r + 2) - eps <= a2 <= 3 / (r + 16) + eps and a2 <= 1 / 9 + eps):
        return None
    return 0.5 * (1 / a2 - 1) * (1 / a2 - 2)


def bound_glazyrin_yu(r: int, alpha) -> float | None:
    """(2/(3 alpha^2) + 4/7) r + 2 for alpha <= 1/3."""
    r = _check_r(r)
    al = parse_alpha(alpha)
    if not al.le(Fraction(1, 3)):
        return None
    if al.alpha_sq is not None:
        return float((Fraction(2, 3) / al.alpha_sq + Fraction(4, 7)) * r + 2)
    return (2 / (3 * al.value**2) + 4 / 7) * r + 2


# ---------------------------------------------------------------------------
# comparison tables
# ---------------------------------------------------------------------------

@dataclass
class BoundEntry:
    name: str
    value: float | None
    applicable: bool
    certified: bool = True
    below_r: bool = False
    note: str = ""


@dataclass
class BoundRow:
    r: int
    alpha: float
    alpha_text: str
    field: str
    entries: list[BoundEntry]
    best_name: str | None
    best_value: float | None

    def get(self, name: str) -> BoundEntry | None:
        for e in self.entries:
            if e.name == name:
                return e
        return None


@dataclass
class BoundTable:
    rows: list[BoundRow] = field(default_factory=list)
    floored: bool = False

    def to_json(self) -> dict:
        rows = []
        for row in self.rows:
            rows.append({
                "r": row.r,
                "alpha": row.alpha,
                "alpha_text": row.alpha_text,
                "field": row.field,
                "bounds": [
                    {
                        "name": e.name,
                        "value": e.value,
                        "applicable": e.applicable,
                        "certified": e.certified,
                        "below_r": e.below_r,
                        "note": e.note,
                    }
                    for e in row.entries
                ],
                "best": {"name": row.best_name, "value": row.best_value},
            })
        return {"floored": self.floored, "rows": rows}

    def to_csv(self, fmt=None) -> str:
        """CSV with columns r, alpha, bound_name, value, applicable, certified.

        Each (r, alpha) block ends with a row named "best"."""
        fmt = fmt or repr
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "alpha", "bound_name", "value", "applicable", "certified"])
        for row in self.rows:
            a = fmt(row.alpha)
            for e in row.entries:
                val = "" if e.value is None else fmt(e.value)
                w.writerow([row.r, a, e.name, val, str(e.applicable).lower(), str(e.certified).lower()])
            best = "" if row.best_value is None else fmt(row.best_value)
            w.writerow([row.r, a, "best", best, "true", "true"])
        return buf.getvalue()


def _entry(name: str, value, r: int, floor: bool, certified: bool = True, note: str = "") -> BoundEntry:
    if value is None:
        return BoundEntry(name, None, False, certified, False, note or "not applicable")
    value = float(value)
    if floor:
        value = float(math.floor(value + 1e-9))
    below = value < r
    if below:
        note = (note + "; " if note else "") + "below r: outside the regime where the bound is meaningful"
    return BoundEntry(name, value, True, certified, below, note)


def bound_row(r: int, alpha, field: str = "real", q: int | None = None, floor: bool = False) -> BoundRow:
    r = _check_r(r)
    al = parse_alpha(alpha)
    _check_field(field)
    entries: list[BoundEntry] = []
    if field == "real":
        entries.append(_entry("thm_spectral_real", bound_real_spectral(r, al), r, floor))
        entries.append(_entry("thm_degree_real", bound_real_degree(r, al), r, floor))
        if q is not None:
            asym = bound_real_asymptotic(r, al, q)
            note = f"asymptotic only (q={asym.q}); threshold r^(-1/(2q+1)) = {asym.threshold!r}"
            entries.append(_entry("thm_asymptotic_real", asym.value, r, floor, certified=False, note=note))
        entries.append(_entry("relative", bound_relative(r, al, "real"), r, floor))
        entries.append(_entry("absolute", bound_absolute(r, "real"), r, floor))
        neu, guess = bound_neumann(r, al)
        entries.append(_entry("neumann", neu, r, floor, note="numeric guess for the odd-integer test" if guess else ""))
        entries.append(_entry("yu", bound_yu(r, al), r, floor))
        entries.append(_entry("glazyrin_yu", bound_glazyrin_yu(r, al), r, floor))
    else:
        entries.append(_entry("thm_complex", bound_complex(r, al), r, floor))
        entries.append(_entry("relative", bound_relative(r, al, "complex"), r, floor))
        entries.append(_entry("absolute", bound_absolute(r, "complex"), r, floor))
    best_name, best_value = None, None
    for e in entries:
        if e.applicable and e.certified and (best_value is None or e.value < best_value):
            best_name, best_value = e.name, e.value
    return BoundRow(r, al.value, al.text, field, entries, best_name, best_value)


def comparison_table(
    r_values: Sequence[int],
    alpha,
    field: str = "real",
    q: int | None = None,
    floor: bool = False,
) -> BoundTable:
    """One row per r, in input order; ``best`` is the smallest certified value."""
    r_values = list(r_values)
    if not r_values:
        raise ValidationError("comparison_table needs at least one r value")
    return BoundTable([bound_row(r, alpha, field, q, floor) for r in r_values], floored=floor)
