"""Exact truncated q-series with rational coefficients.

A :class:`QSeries` stores ``q^lead * (c_0 + c_1 q + ... + c_N q^N) + O(q^(lead+N+1))``
where ``lead`` lives on the lattice ``(1/24) Z``.  Coefficients are
:class:`fractions.Fraction` and every operation is exact.

The zero series has no leading exponent.  Instead it carries ``zero_to``, the
largest exponent through which it is known to vanish (``None`` for the exact
zero).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

LATTICE_DEN = 24

Rational = Fraction


class TruncationExceeded(ValueError):
    """Requested coefficient lies beyond the retained precision."""


class LatticeMismatch(ValueError):
    """Two series whose leading exponents differ by a non-integer were combined."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal.  Decimals are rejected."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _check_lattice(e: Fraction) -> None:
    if (e * LATTICE_DEN).denominator != 1:
        raise LatticeMismatch(f"exponent {e} is off the 1/{LATTICE_DEN} lattice")


def _to_ints(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` terms of the Cauchy product of two integer sequences."""
    out = [0] * n
    nb = len(b)
    for i, ai in enumerate(a[:n]):
        if not ai:
            continue
        for j in range(min(n - i, nb)):
            out[i + j] += ai * b[j]
    return out


@dataclass(frozen=True)
class QSeries:
    lead_exp: Fraction | None
    coeffs: tuple[Fraction, ...]
    zero_to: Fraction | None = None

    def __post_init__(self):
        if self.coeffs:
            if self.lead_exp is None:
                raise ValueError("nonzero series needs a leading exponent")
            _check_lattice(self.lead_exp)
            if self.coeffs[0] == 0:
                raise ValueError("leading coefficient must be nonzero; use QSeries.make")
        elif self.lead_exp is not None:
            raise ValueError("zero series has no leading exponent")

    # -- construction -------------------------------------------------------

    @classmethod
    def make(cls, lead_exp, coeffs: Iterable, trunc: int | None = None) -> "QSeries":
        """Build a series from raw coefficients, stripping leading zeros.

        ``trunc`` defaults to ``len(coeffs) - 1``; missing coefficients are
        padded with zeros and extra ones are dropped.
        """
        lead = as_fraction(lead_exp)
        _check_lattice(lead)
        cs = [as_fraction(c) for c in coeffs]
        if trunc is None:
            trunc = len(cs) - 1
        if trunc < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = (cs + [Fraction(0)] * (trunc + 1 - len(cs)))[: trunc + 1]
        for i, c in enumerate(cs):
            if c:
                return cls(lead + i, tuple(cs[i:]))
        return cls.zero(lead + trunc)

    @classmethod
    def zero(cls, zero_to=None) -> "QSeries":
        return cls(None, (), None if zero_to is None else as_fraction(zero_to))

    @classmethod
    def one(cls, trunc: int) -> "QSeries":
        return cls.make(0, [1], trunc)

    @classmethod
    def monomial(cls, exp, trunc: int, coeff=1) -> "QSeries":
        return cls.make(exp, [coeff], trunc)

    # -- basic properties ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def trunc(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def end(self) -> Fraction | None:
        """Largest exponent whose coefficient is known (``None``: exact)."""
        if self.coeffs:
            return self.lead_exp + len(self.coeffs) - 1
        return self.zero_to

    def coefficient_at(self, e) -> Fraction:
        e = as_fraction(e)
        end = self.end
        if end is not None and e > end:
            raise TruncationExceeded(f"q^{e} is beyond the retained order q^{end}")
        if self.is_zero or e < self.lead_exp:
            return Fraction(0)
        off = e - self.lead_exp
        if off.denominator != 1:
            return Fraction(0)
        return self.coeffs[int(off)]

    def truncate(self, trunc: int) -> "QSeries":
        """Drop coefficients beyond relative offset ``trunc``."""
        if self.is_zero:
            return self
        if trunc > len(self.coeffs) - 1:
            raise TruncationExceeded(f"series only known to offset {len(self.coeffs) - 1}")
        return QSeries(self.lead_exp, self.coeffs[: trunc + 1])

    def truncate_to(self, end) -> "QSeries":
        """Drop coefficients with exponent above ``end`` (absolute)."""
        end = as_fraction(end)
        if self.is_zero:
            if self.zero_to is not None and self.zero_to < end:
                raise TruncationExceeded(f"zero only known through q^{self.zero_to}")
            return QSeries.zero(end)
        off = end - self.lead_exp
        if off < 0:
            return QSeries.zero(end)
        return self.truncate(int(off))

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "QSeries":
        if self.is_zero:
            return self
        return QSeries(self.lead_exp, tuple(-c for c in self.coeffs))

    def scale(self, c) -> "QSeries":
        c = as_fraction(c)
        if self.is_zero:
            return self
        if c == 0:
            return QSeries.zero(self.end)
        return QSeries(self.lead_exp, tuple(c * x for x in self.coeffs))

    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.is_zero or other.is_zero:
            z, f = (self, other) if self.is_zero else (other, self)
            if z.zero_to is None:
                return f
            if f.is_zero:
                ends = [e for e in (z.zero_to, f.zero_to) if e is not None]
                return QSeries.zero(min(ends))
            if z.zero_to < f.lead_exp:
                return QSeries.zero(min(z.zero_to, f.end))
            return f if z.zero_to >= f.end else f.truncate_to(z.zero_to)
        gap = other.lead_exp - self.lead_exp
        if gap.denominator != 1:
            raise LatticeMismatch(
                f"cannot add series at q^{self.lead_exp} and q^{other.lead_exp}"
            )
        start = min(self.lead_exp, other.lead_exp)
        end = min(self.end, other.end)
        n = int(end - start) + 1
        if n <= 0:
            return QSeries.zero(end)
        out = [Fraction(0)] * n
        for s in (self, other):
            off = int(s.lead_exp - start)
            for i in range(max(0, n - off)):
                out[off + i] += s.coeffs[i]
        return QSeries.make(start, out, n - 1)

    def __sub__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            return NotImplemented
        if self.is_zero or other.is_zero:
            return _mul_with_zero(self, other)
        n = min(len(self.coeffs), len(other.coeffs))
        a, da = _to_ints(self.coeffs[:n])
        b, db = _to_ints(other.coeffs[:n])
        prod = _convolve(a, b, n)
        den = da * db
        return QSeries(
            self.lead_exp + other.lead_exp, tuple(Fraction(c, den) for c in prod)
        )

    __rmul__ = __mul__

    def invert(self) -> "QSeries":
        if self.is_zero:
            raise ZeroDivisionError("cannot invert the zero series")
        a, _ = _to_ints(self.coeffs)
        a0 = a[0]
        n = len(a)
        # b_n = d * C_n / a0^(n+1), C_n = -sum_k A_k C_{n-k} a0^(k-1)
        pw = [1] * n
        for k in range(1, n):
            pw[k] = pw[k - 1] * a0
        c = [0] * n
        c[0] = 1
        for m in range(1, n):
            s = 0
            for k in range(1, m + 1):
                if a[k]:
                    s += a[k] * c[m - k] * pw[k - 1]
            c[m] = -s
        d = lcm(*(x.denominator for x in self.coeffs))
        coeffs = tuple(Fraction(d * c[m], a0 ** (m + 1)) for m in range(n))
        return QSeries(-self.lead_exp, coeffs)

    def __pow__(self, e: int) -> "QSeries":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.invert() ** (-e)
        if self.is_zero:
            if e == 0:
                raise ValueError("0**0 of a truncated zero series is undefined")
            return _mul_with_zero(self, self) if e > 1 else self
        result = QSeries.one(len(self.coeffs) - 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def derivative(self) -> "QSeries":
        """Apply ``q d/dq``."""
        if self.is_zero:
            return self
        lead = self.lead_exp
        return QSeries.make(
            lead, [(lead + n) * c for n, c in enumerate(self.coeffs)], len(self.coeffs) - 1
        )

    def rescale(self, m: int) -> "QSeries":
        """Substitute ``q -> q^m``."""
        if m < 1:
            raise ValueError("rescale factor must be a positive integer")
        if self.is_zero:
            return self if self.zero_to is None else QSeries.zero(self.zero_to * m)
        n = len(self.coeffs) - 1
        out = [Fraction(0)] * (m * n + 1)
        out[::m] = self.coeffs
        return QSeries(self.lead_exp * m, tuple(out))

    # -- comparison and presentation ----------------------------------------

    def __str__(self) -> str:
        return to_text(self)


def _mul_with_zero(a: QSeries, b: QSeries) -> QSeries:
    z, f = (a, b) if a.is_zero else (b, a)
    if z.zero_to is None or (f.is_zero and f.zero_to is None):
        return QSeries.zero()
    if f.is_zero:
        return QSeries.zero(z.zero_to + f.zero_to)
    return QSeries.zero(z.zero_to + f.lead_exp)


# Function-style aliases for the operation names used throughout the package.

def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def invert(a: QSeries) -> QSeries:
    return a.invert()


def power(a: QSeries, e: int) -> QSeries:
    return a ** e


def apply_d(a: QSeries) -> QSeries:
    return a.derivative()


def rescale_variable(a: QSeries, m: int) -> QSeries:
    return a.rescale(m)


def coefficient_at(a: QSeries, e) -> Fraction:
    return a.coefficient_at(e)


# -- serialization ----------------------------------------------------------

def to_json_obj(s: QSeries) -> dict:
    if s.is_zero:
        return {
            "lattice_den": LATTICE_DEN,
            "lead_exp": None,
            "coeffs": [],
            "trunc": None,
            "zero_to": None if s.zero_to is None else format_rational(s.zero_to),
        }
    return {
        "lattice_den": LATTICE_DEN,
        "lead_exp": format_rational(s.lead_exp),
        "coeffs": [format_rational(c) for c in s.coeffs],
        "trunc": len(s.coeffs) - 1,
    }


def from_json_obj(obj: dict) -> QSeries:
    if obj.get("lattice_den", LATTICE_DEN) != LATTICE_DEN:
        raise ValueError(f"unsupported lattice denominator {obj['lattice_den']}")
    if obj["lead_exp"] is None:
        zt = obj.get("zero_to")
        return QSeries.zero(None if zt is None else parse_rational(zt))
    coeffs = [parse_rational(c) for c in obj["coeffs"]]
    if len(coeffs) != obj["trunc"] + 1:
        raise ValueError("coefficient count does not match trunc")
    return QSeries.make(parse_rational(obj["lead_exp"]), coeffs, obj["trunc"])


def dumps(s: QSeries) -> str:
    return json.dumps(to_json_obj(s))


def loads(text: str) -> QSeries:
    return from_json_obj(json.loads(text))


def _term(c: Fraction, e: Fraction, latex: bool) -> str:
    if e == 0:
        body = ""
    elif e == 1:
        body = "q"
    elif latex:
        body = "q^{%s}" % format_rational(e)
    else:
        body = f"q^({format_rational(e)})" if e.denominator != 1 or e < 0 else f"q^{e}"
    mag = abs(c)
    if body and mag == 1:
        num = ""
    elif latex and mag.denominator != 1:
        num = r"\frac{%d}{%d}" % (mag.numerator, mag.denominator)
    else:
        num = format_rational(mag)
    return num + ("*" if num and body and not latex else "") + body


def _render(s: QSeries, latex: bool) -> str:
    if s.is_zero:
        tail = "" if s.zero_to is None else (
            f" + O(q^{{{format_rational(s.zero_to + 1)}}})" if latex
            else f" + O(q^({format_rational(s.zero_to + 1)}))"
        )
        return "0" + tail
    parts = []
    for n, c in enumerate(s.coeffs):
        if not c:
            continue
        t = _term(c, s.lead_exp + n, latex)
        if not parts:
            parts.append(("-" if c < 0 else "") + t)
        else:
            parts.append(("- " if c < 0 else "+ ") + t)
    nxt = format_rational(s.end + 1)
    parts.append(f"+ O(q^{{{nxt}}})" if latex else f"+ O(q^({nxt}))")
    return " ".join(parts)


def to_text(s: QSeries) -> str:
    return _render(s, latex=False)


def to_latex(s: QSeries) -> str:
    return _render(s, latex=True)
