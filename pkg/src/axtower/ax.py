"""Galois oscillation, best approximants in K_m and the optimal Ax–Sen–Tate constant."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .tower import TowerElement, vp_int
from .valuation import Valuation, vmin


@dataclass(frozen=True)
class OscillationReport:
    """Λ(x) = inf_σ v(σx − x), with the candidate term for every index i ≥ 1."""

    oscillation: Valuation
    per_index_terms: dict
    argmin_index: int | None


def term_offset(i: int, p: int, e: int, n: int) -> Fraction:
    """i/(e p^n) + p^{v_p(i)}/(p^{n-1}(p-1)), added to v(a_i) in the oscillation term."""
    return Fraction(i, e * p ** n) + Fraction(p ** vp_int(i, p) * p, p ** n * (p - 1))


def galois_oscillation(x: TowerElement) -> OscillationReport:
    cfg, n = x.config, x.level
    if n == 0:
        return OscillationReport(Valuation.infinite(), {}, None)
    coeffs = x.coefficients_over_base()
    terms = {}
    for i in range(1, len(coeffs)):
        v = coeffs[i].valuation()
        if not v.is_infinite:
            terms[i] = v + term_offset(i, cfg.p, cfg.e, n)
    osc = vmin(terms.values())
    argmin = None
    if osc.is_exact:
        hits = [i for i, t in terms.items() if t.is_exact and t.value == osc.value]
        # distinct i give distinct terms, so the minimum is attained once
        assert len(hits) == 1, f"oscillation terms tie at indices {hits}"
        argmin = hits[0]
    return OscillationReport(osc, terms, argmin)


def oscillation_terms_distinct(x: TowerElement) -> bool:
    """True when the exact oscillation terms are pairwise distinct."""
    vals = [t.value for t in galois_oscillation(x).per_index_terms.values() if t.is_exact]
    return len(vals) == len(set(vals))


def best_approximant(x: TowerElement, m: int) -> TowerElement:
    """The optimal y in K_m: keep the a_j with p^(n-m) | j."""
    n = x.level
    if m >= n:
        return x
    cfg = x.config
    step = cfg.p ** (n - m)
    coeffs = x.coefficients_over_base()
    kept = [coeffs[step * i] for i in range(cfg.p ** m)]
    return TowerElement.from_base_coefficients(cfg, m, kept)


def defect_formula(x: TowerElement, m: int) -> Valuation:
    """min over v_p(j) < n − m of v(a_j) + j/(e p^n)."""
    n = x.level
    if m >= n:
        return Valuation.infinite()
    cfg = x.config
    step = cfg.p ** (n - m)
    N = cfg.N(n)
    coeffs = x.coefficients_over_base()
    return vmin(coeffs[j].valuation() + Fraction(j, N) for j in range(len(coeffs)) if j % step)


def approximation_defect(x: TowerElement, m: int) -> Valuation:
    """v(x − best_approximant(x, m)), by the closed formula, checked by subtraction."""
    closed = defect_formula(x, m)
    if m >= x.level:
        return closed
    direct = (x - best_approximant(x, m).embed(x.level)).valuation()
    if closed.is_exact:
        assert direct == closed, f"defect mismatch: formula {closed}, subtraction {direct}"
    else:
        assert not direct.is_exact, f"defect mismatch: formula {closed}, subtraction {direct}"
    return closed


def fringe(p: int, m: int) -> Fraction:
    """1/(p^m (p − 1))."""
    return Fraction(1, p ** m * (p - 1))


def oscillation_identity(x: TowerElement) -> tuple:
    """(Λ(x), min_m defect(x, m) + 1/(p^m(p−1))); the two sides agree."""
    p = x.config.p
    lhs = galois_oscillation(x).oscillation
    rhs = vmin(approximation_defect(x, m) + fringe(p, m) for m in range(x.level + 1))
    return lhs, rhs


def theorem_1_7_check(x: TowerElement, A) -> tuple:
    """(Λ(x) ≥ A, defect(x, m) ≥ A − 1/(p^m(p−1)) for every m ≤ n) as two booleans."""
    A = Fraction(A)
    p = x.config.p
    osc_side = galois_oscillation(x).oscillation.ge(A)
    approx_side = all(approximation_defect(x, m).ge(A - fringe(p, m)) for m in range(x.level + 1))
    return osc_side, approx_side


def ax_constants(p: int, m: int = 0) -> tuple:
    """(optimal constant 1/(p^m(p−1)), Ax's original constant p/(p−1)^2)."""
    return fringe(p, m), Fraction(p, (p - 1) ** 2)
