"""Frobenius-twisted recurrences d_0 x_n + d_1 x_{n+1}^p + … + d_r x_{n+r}^{p^r} = 0 over k."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DegenerateInput, FieldMismatch, LeadingCoefficientZero, UnsupportedConfig, WindowTooShort
from .field import ResidueElement, ResidueField, frobenius, frobenius_inverse
from .linalg import first_kernel_vector, kernel_basis


@dataclass(frozen=True)
class TwistRelation:
    field: ResidueField
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.field(c) if not isinstance(c, ResidueElement) else c for c in self.coeffs)
        if any(c.field != self.field for c in coeffs):
            raise FieldMismatch("relation coefficients from another field")
        if not coeffs or all(c.is_zero() for c in coeffs):
            raise DegenerateInput("a twist relation needs a nonzero coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def trimmed(self) -> tuple:
        """(equivalent relation without zero end coefficients, number of leading zeros dropped).

        Dropping k leading zeros untwists the rest by Frobenius^-k; the trimmed
        relation then holds on the windows starting k terms later.
        """
        c = list(self.coeffs)
        while c[-1].is_zero():
            c.pop()
        k = 0
        while c[0].is_zero():
            c.pop(0)
            k += 1
        return TwistRelation(self.field, tuple(frobenius_inverse(d, k) for d in c)), k

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


@dataclass(frozen=True)
class TwistSequence:
    field: ResidueField
    terms: tuple

    def __post_init__(self):
        terms = tuple(self.field(c) if not isinstance(c, ResidueElement) else c for c in self.terms)
        if any(c.field != self.field for c in terms):
            raise FieldMismatch("sequence terms from another field")
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.terms)

    def to_json(self) -> list:
        return [c.to_json() for c in self.terms]


def _window_value(terms, rel: TwistRelation, n: int) -> ResidueElement:
    k = rel.field
    return sum((d * frobenius(terms[n + s], s) for s, d in enumerate(rel.coeffs) if not d.is_zero()), k.zero())


def check_relation(seq: TwistSequence, rel: TwistRelation) -> bool:
    if seq.field != rel.field:
        raise FieldMismatch("sequence and relation over different fields")
    r = rel.order
    if len(seq) < r + 1:
        raise WindowTooShort(f"need at least {r + 1} terms, got {len(seq)}")
    return all(_window_value(seq.terms, rel, n).is_zero() for n in range(len(seq) - r))


def relation_system(seq: TwistSequence, r: int) -> list:
    """Rows (x_n, x_{n+1}^p, …, x_{n+r}^{p^r}), one per window; the relation is a kernel vector."""
    x = seq.terms
    return [[frobenius(x[n + s], s) for s in range(r + 1)] for n in range(len(x) - r)]


def find_relation(seq: TwistSequence, r_max: int) -> TwistRelation | None:
    """Smallest-order relation satisfied by every window of the data, or None."""
    if len(seq) < max(2 * r_max, 1):
        raise WindowTooShort(f"need at least {2 * r_max} terms to search up to order {r_max}")
    k = seq.field
    for r in range(r_max + 1):
        rows = relation_system(seq, r)
        v = first_kernel_vector(kernel_basis(rows, r + 1, k), k)
        if v is not None:
            return TwistRelation(k, tuple(v))
    return None


def next_term(rel: TwistRelation, window: list) -> ResidueElement:
    """x_{n+r} from x_n, …, x_{n+r−1}."""
    r = rel.order
    d = rel.coeffs
    k = rel.field
    acc = sum((d[s] * frobenius(window[s], s) for s in range(r)), k.zero())
    return frobenius_inverse(-(acc / d[r]), r)


def extend_sequence(rel: TwistRelation, seed, count: int) -> TwistSequence:
    """The first ``count`` terms of the solution with the given r seed terms."""
    r = rel.order
    if rel.coeffs[-1].is_zero():
        raise LeadingCoefficientZero("d_r = 0: the relation does not determine x_{n+r}")
    k = rel.field
    terms = [k(c) if not isinstance(c, ResidueElement) else c for c in seed]
    if len(terms) != r:
        raise ValueError(f"expected {r} seed terms, got {len(terms)}")
    while len(terms) < count:
        terms.append(next_term(rel, terms[len(terms) - r:]))
    return TwistSequence(k, tuple(terms[:max(count, 0)]))


def _solutions(rel: TwistRelation, length: int):
    k, r = rel.field, rel.order
    elems = k.elements()
    if length <= r:
        yield from product(elems, repeat=length)
        return

    def grow(prefix):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for c in elems:
            prefix.append(c)
            n = len(prefix) - 1 - r
            if n < 0 or _window_value(prefix, rel, n).is_zero():
                yield from grow(prefix)
            prefix.pop()

    yield from grow([])


def solution_count(rel: TwistRelation, length: int) -> int:
    """Exhaustive count of length-``length`` sequences satisfying ``rel`` on every window."""
    if rel.field.q > 4 or rel.order > 2:
        raise UnsupportedConfig("exhaustive counting is limited to q <= 4 and r <= 2")
    return sum(1 for _ in _solutions(rel, length))


def solution_space(rel: TwistRelation, length: int) -> list:
    if rel.field.q > 4 or rel.order > 2:
        raise UnsupportedConfig("exhaustive enumeration is limited to q <= 4 and r <= 2")
    return [TwistSequence(rel.field, s) for s in _solutions(rel, length)]


def k_scaling_counterexample(rel: TwistRelation, length: int) -> tuple | None:
    """(solution x, scalar c) with c·x not a solution, if the solution set is not k-stable."""
    k = rel.field
    for sol in solution_space(rel, length):
        for c in k.elements():
            scaled = TwistSequence(k, tuple(c * x for x in sol.terms))
            if not check_relation(scaled, rel):
                return sol, c
    return None
