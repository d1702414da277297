"""Ramification numerics of the Kummer tower: breaks, differents, Herbrand integral."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def ramification_break(n: int, p: int, e: int) -> Fraction:
    """μ_n = ne − 1 + pe/(p − 1)."""
    if n < 1:
        raise ValueError("breaks are indexed from n = 1")
    return n * e - 1 + Fraction(p * e, p - 1)


@dataclass(frozen=True)
class RamificationProfile:
    """Upper breaks μ_1 < … < μ_n of K_n/K and the step function μ ↦ [K_n : K_n^μ]."""

    p: int
    e: int
    breaks: tuple

    @property
    def level(self) -> int:
        return len(self.breaks)

    def degree(self, mu) -> int:
        """[K_n : K_n^μ]: p^n up to μ_1, dropping by a factor p at each break."""
        mu = Fraction(mu)
        passed = sum(1 for b in self.breaks if b < mu)
        return self.p ** (self.level - passed)

    @property
    def degrees(self) -> list:
        """[(left endpoint, degree)] for each constant piece, starting at μ = −1."""
        ends = [Fraction(-1)] + list(self.breaks)
        return [(ends[j], self.p ** (self.level - j)) for j in range(self.level + 1)]


def ramification_profile(n: int, p: int, e: int) -> RamificationProfile:
    return RamificationProfile(p, e, tuple(ramification_break(j, p, e) for j in range(1, n + 1)))


@dataclass(frozen=True)
class DifferentReport:
    derivative: Fraction
    closed_form: Fraction

    @property
    def agree(self) -> bool:
        return self.derivative == self.closed_form

    @property
    def notice(self) -> str | None:
        if self.agree:
            return None
        return (f"MISMATCH: v(f'(pi_n)) = {self.derivative} but e(n+1) - e/p^n = {self.closed_form}")


def different_derivative(n: int, p: int, e: int) -> Fraction:
    """v(f′(π_n)) for f = X^{p^n} − π: v(p^n π_n^{p^n − 1}) = n + (p^n − 1)/(e p^n)."""
    return n + Fraction(p ** n - 1, e * p ** n)


def different_closed_form(n: int, p: int, e: int) -> Fraction:
    """e(n + 1) − e/p^n, trivial extension giving 0."""
    if n == 0:
        return Fraction(0)
    return e * (n + 1) - Fraction(e, p ** n)


def different_valuation(n: int, p: int, e: int) -> DifferentReport:
    if n < 0:
        raise ValueError("n must be non-negative")
    return DifferentReport(different_derivative(n, p, e), different_closed_form(n, p, e))


def herbrand_integral_check(n: int, p: int, e: int) -> Fraction:
    """(1/e) ∫_{−1}^{∞} (1 − 1/[K_n : K_n^μ]) dμ, summed piece by piece."""
    if n == 0:
        return Fraction(0)
    prof = ramification_profile(n, p, e)
    pieces = prof.degrees
    total = Fraction(0)
    for j in range(n):
        left, deg = pieces[j]
        right = pieces[j + 1][0]
        total += (right - left) * (1 - Fraction(1, deg))
    return total / e
