"""Newton polygons of polynomials with exact coefficient valuations."""

from __future__ import annotations

from fractions import Fraction

from .errors import DegenerateInput, PrecisionExhausted
from .tower import vp_int
from .valuation import Valuation


def _finite_points(coeff_vals: dict) -> list:
    return sorted((j, v.value) for j, v in coeff_vals.items() if v.is_exact)


def newton_polygon(coeff_vals: dict) -> list:
    """Lower convex hull of {(j, v(b_j))} as [(slope, length)], slopes increasing.

    Roots have valuations equal to the negated slopes, with the lengths as
    multiplicities.  Coefficients known only as lower bounds must lie strictly
    above the hull, otherwise the hull is undetermined.
    """
    pts = _finite_points(coeff_vals)
    if len(pts) < 2:
        raise DegenerateInput("a Newton polygon needs at least two finite points")
    top = max(coeff_vals)
    if not coeff_vals[top].is_exact:
        raise DegenerateInput("the top coefficient must have an exact valuation")
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segments.append((Fraction(y2 - y1, 1) / (x2 - x1), x2 - x1))
    merged = []
    for slope, length in segments:
        if merged and merged[-1][0] == slope:
            merged[-1] = (slope, merged[-1][1] + length)
        else:
            merged.append((slope, length))
    _check_bounds(coeff_vals, hull)
    return merged


def _hull_height(hull: list, j: int) -> Fraction | None:
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if x1 <= j <= x2:
            return y1 + Fraction(y2 - y1) * (j - x1) / (x2 - x1)
    return None


def _check_bounds(coeff_vals: dict, hull: list):
    for j, v in coeff_vals.items():
        if v.is_lower_bound:
            h = _hull_height(hull, j)
            if h is None or v.value <= h:
                raise PrecisionExhausted(f"coefficient {j} known only as {v}; hull undetermined")


def zero_root_multiplicity(coeff_vals: dict) -> int:
    """Multiplicity of the root 0: the lowest degree with a nonzero coefficient."""
    nonzero = [j for j, v in coeff_vals.items() if not v.is_infinite]
    return min(nonzero) if nonzero else 0


def root_valuations(coeff_vals: dict) -> list:
    """[(valuation, multiplicity)] of the nonzero roots."""
    return [(-slope, length) for slope, length in newton_polygon(coeff_vals)]


def has_positive_valuation_root(coeff_vals: dict) -> bool:
    """Some root has valuation > 0 (a segment of negative slope, or the root 0)."""
    if zero_root_multiplicity(coeff_vals):
        return True
    return any(slope < 0 for slope, _ in newton_polygon(coeff_vals))


def has_integral_root(coeff_vals: dict) -> bool:
    """Some root has valuation >= 0."""
    if zero_root_multiplicity(coeff_vals):
        return True
    return any(slope <= 0 for slope, _ in newton_polygon(coeff_vals))


def valuations_from_ints(coeffs: list, p: int) -> dict:
    """Coefficient valuations of an integer polynomial (low degree first)."""
    return {j: (Valuation.of(vp_int(c, p)) if c else Valuation.infinite()) for j, c in enumerate(coeffs)}
