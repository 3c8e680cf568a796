"""Exact rationals, the explicit infinity, and the "p/q" string format."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .flow import INF

__all__ = ["INF", "Q", "parse_rational", "fmt", "ext_add", "ext_mul", "farey", "ParamSpace",
           "UNIT", "EXT_NONNEG", "NONNEG"]


def Q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def parse_rational(text, allow_inf: bool = False):
    """Parse ``"p/q"`` (or an integer string); ``"inf"`` when allowed.

    Decimal strings are rejected so no float ever sneaks into an
    interchange file.
    """
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational must be a 'p/q' string, got {text!r}")
    s = text.strip()
    if s in ("inf", "∞"):
        if allow_inf:
            return INF
        raise ValueError("infinity is not allowed here")
    if "." in s or "e" in s.lower():
        raise ValueError(f"decimal rationals are not accepted: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad rational: {text!r}") from None


def fmt(x) -> str:
    if x is INF:
        return "inf"
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def ext_add(a, b):
    if a is INF or b is INF:
        return INF
    return a + b


def ext_mul(a, b):
    # 0 * inf = 0, forced by the law 0 * x = 0
    if a == 0 or b == 0:
        return Fraction(0)
    if a is INF or b is INF:
        return INF
    return a * b


def ext_leq(a, b) -> bool:
    if b is INF:
        return True
    if a is INF:
        return False
    return a <= b


def farey(n: int, lo=0, hi=1) -> tuple:
    """All rationals in ``[lo, hi]`` whose denominator is at most ``n``, sorted."""
    lo, hi = Fraction(lo), Fraction(hi)
    vals = {Fraction(k, d) for d in range(1, n + 1)
            for k in range(int(lo * d) - 1, int(hi * d) + 2)
            if lo <= Fraction(k, d) <= hi}
    return tuple(sorted(vals))


@dataclass(frozen=True)
class ParamSpace:
    """A parameter poset (a subset of the extended nonnegative rationals)."""

    name: str
    hi: Fraction | None = None  # None: unbounded above
    infinite: bool = False      # whether INF belongs to the space
    span: Fraction = Fraction(2)  # upper end of finite grids on unbounded spaces

    def contains(self, v) -> bool:
        if v is INF:
            return self.infinite
        if not isinstance(v, (int, Fraction)) or v < 0:
            return False
        return self.hi is None or v <= self.hi

    def grid(self, denom: int) -> tuple:
        top = self.hi if self.hi is not None else self.span
        vals = farey(denom, 0, top)
        return vals + ((INF,) if self.infinite else ())

    def leq(self, a, b) -> bool:
        return ext_leq(a, b)


UNIT = ParamSpace("unit", hi=Fraction(1))
EXT_NONNEG = ParamSpace("ext_nonneg", infinite=True)
NONNEG = ParamSpace("nonneg")
