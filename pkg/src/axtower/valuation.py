"""Exact valuations normalized by v(p) = 1, with +inf and precision lower bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import PrecisionExhausted


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


@dataclass(frozen=True)
class Valuation:
    """``value=None`` is +inf; ``exact=False`` means "at least ``value``"."""

    value: Fraction | None
    exact: bool = True

    @classmethod
    def of(cls, v) -> Valuation:
        return cls(Fraction(v), True)

    @classmethod
    def infinite(cls) -> Valuation:
        return cls(None, True)

    @classmethod
    def at_least(cls, v) -> Valuation:
        return cls(Fraction(v), False)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @property
    def is_exact(self) -> bool:
        return self.exact and self.value is not None

    @property
    def is_lower_bound(self) -> bool:
        return not self.exact

    def __add__(self, other) -> Valuation:
        if isinstance(other, Valuation):
            if self.is_infinite or other.is_infinite:
                return Valuation.infinite()
            return Valuation(self.value + other.value, self.exact and other.exact)
        if self.is_infinite:
            return self
        return Valuation(self.value + Fraction(other), self.exact)

    __radd__ = __add__

    def __sub__(self, other) -> Valuation:
        return self + (-Fraction(other))

    def ge(self, bound) -> bool:
        """Decide ``self >= bound``; raises when a lower bound cannot decide it."""
        bound = Fraction(bound)
        if self.is_infinite or self.value >= bound:
            return True
        if self.exact:
            return False
        raise PrecisionExhausted(f"cannot decide {self} >= {fmt_rational(bound)}")

    def __str__(self):
        if self.is_infinite:
            return "+inf"
        s = fmt_rational(self.value)
        return s if self.exact else ">= " + s


def vmin(vals: Iterable[Valuation]) -> Valuation:
    """Minimum of a family; exact when the smallest exact value beats every bound.

    With only lower bounds and infinities present the result is +inf: digits
    that vanish to working precision are read as zero when nothing competes.
    """
    vals = list(vals)
    exact = [v.value for v in vals if v.is_exact]
    bounds = [v.value for v in vals if v.is_lower_bound]
    if not exact:
        return Valuation.infinite()
    m = min(exact)
    if bounds and min(bounds) <= m:
        raise PrecisionExhausted(
            f"minimum {fmt_rational(m)} is not separated from the precision bound {fmt_rational(min(bounds))}"
        )
    return Valuation.of(m)


def parse_valuation(text: str) -> Valuation:
    text = text.strip()
    if text in ("+inf", "inf"):
        return Valuation.infinite()
    if text.startswith(">="):
        return Valuation.at_least(Fraction(text[2:].strip()))
    return Valuation.of(Fraction(text))
