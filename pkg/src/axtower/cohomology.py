"""Invariant classes in (K̄/O)^G, the digit map ψ and twist-recurrence dictionary.

A class is represented by an element ξ of some K_n with Λ(ξ) ≥ 0; it is
normalized by subtracting its best approximant in K, after which
v(ξ) ≥ −1/(p−1).  For e = 1 the digit x_m of the class is the Teichmüller
digit of ξ at η_m = π_n^{−p^{n−m}}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb

from .ax import approximation_defect, best_approximant, fringe, galois_oscillation
from .errors import DegenerateInput, NoDependenceFound, SupportViolation, UnsupportedConfig
from .field import ResidueElement
from .linalg import first_kernel_vector, kernel_basis
from .newton import has_integral_root, has_positive_valuation_root, newton_polygon
from .tower import TowerConfig, TowerElement, vp_int
from .twistrec import TwistRelation, TwistSequence, check_relation, extend_sequence
from .valuation import Valuation


@dataclass(frozen=True)
class InvariantClass:
    """``rep`` is ξ minus its best approximant in K."""

    rep: TowerElement
    validated: bool

    @property
    def config(self) -> TowerConfig:
        return self.rep.config

    @property
    def level(self) -> int:
        return self.rep.level

    def is_zero(self) -> bool:
        return self.rep.valuation().ge(0)


def validate_invariant(xi: TowerElement) -> InvariantClass:
    p = xi.config.p
    invariant = galois_oscillation(xi).oscillation.ge(0)
    rep = (xi - best_approximant(xi, 0).embed(xi.level)).normalized()
    normalized = rep.valuation().ge(-fringe(p, 0))
    if invariant:
        assert normalized, "an invariant element must be within 1/(p-1) of K"
    return InvariantClass(rep, invariant and normalized)


def same_class(a: InvariantClass, b: InvariantClass) -> bool:
    """Equal in (K̄/O)^G / (K/O): the difference is within O of K."""
    return approximation_defect(a.rep - b.rep, 0).ge(0)


def class_from_digits(cfg: TowerConfig, digits, level: int | None = None) -> TowerElement:
    """Σ [x_m] η_m over the digit list (x_1, x_2, …), at level len(digits) by default."""
    n = len(digits) if level is None else level
    terms = {}
    for m, x in enumerate(digits, start=1):
        if m > n:
            raise ValueError("digit index beyond the target level")
        if not x.is_zero():
            terms[-cfg.p ** (n - m)] = x
    return TowerElement.from_terms(cfg, n, terms)


def class_from_families(cfg: TowerConfig, families, level: int | None = None) -> TowerElement:
    """Σ_j Σ_m [x_{j,m}] η_m^j for families[j−1] = (x_{j,1}, x_{j,2}, …)."""
    n = max(len(f) for f in families) if level is None else level
    terms = {}
    for j, fam in enumerate(families, start=1):
        for m, x in enumerate(fam, start=1):
            if not x.is_zero():
                terms[-j * cfg.p ** (n - m)] = x
    return TowerElement.from_terms(cfg, n, terms)


# --- torsion -----------------------------------------------------------------

def torsion_bound(p: int, e: int) -> int:
    """⌈e/(p−1)⌉."""
    return -(-e // (p - 1))


def torsion_check(cls: InvariantClass) -> int:
    """Smallest n with π^n · cls = 0."""
    cfg = cls.config
    v = cls.rep.valuation()
    if not v.is_exact or v.value >= 0:
        n = 0
    else:
        n = ceil(-cfg.e * v.value)
    if cls.validated:
        assert n <= torsion_bound(cfg.p, cfg.e), f"torsion {n} exceeds the bound"
    return n


# --- the digit map -------------------------------------------------------------

def _negative_digits(cls: InvariantClass) -> dict:
    """Teichmüller digits of the representative at negative indices outside K."""
    rep, cfg = cls.rep, cls.config
    pn = cfg.p ** rep.level
    return {i: c for i, c in rep.teichmuller_expand(stop=0).items() if i % pn}


def psi_digits(cls: InvariantClass, count: int) -> list:
    """(x_1, …, x_count); for 1 < e ≤ p − 1 the list of e families instead."""
    cfg = cls.config
    if cfg.e > 1:
        return psi_families(cls, count)
    n, p = cls.level, cfg.p
    where = {-p ** (n - m): m for m in range(1, n + 1)}
    digits = [cfg.field.zero()] * count
    for i, c in _negative_digits(cls).items():
        if i not in where:
            raise SupportViolation(f"digit at pi_{n}^{i} is not at any eta_m")
        m = where[i]
        if m <= count:
            digits[m - 1] = c
    return digits


def psi_families(cls: InvariantClass, count: int) -> list:
    """families[j−1][m−1] = digit of η_m^j, for e ≤ p − 1."""
    cfg = cls.config
    e, p, n = cfg.e, cfg.p, cls.level
    if e > p - 1:
        raise UnsupportedConfig("digit families need e <= p - 1")
    where = {-j * p ** (n - m): (j, m) for j in range(1, e + 1) for m in range(1, n + 1)}
    fams = [[cfg.field.zero()] * count for _ in range(e)]
    for i, c in _negative_digits(cls).items():
        if i not in where:
            raise SupportViolation(f"digit at pi_{n}^{i} is not at any eta_m^j with j <= e")
        j, m = where[i]
        if m <= count:
            fams[j - 1][m - 1] = c
    return fams


def xi_tower_sequence(cls: InvariantClass, s_max: int) -> list:
    """ξ_0 = rep, ξ_{s+1} = ξ_s^p − [t_s] η_0 with t_s the η_0-digit of ξ_s^p."""
    cfg = cls.config
    if cfg.e != 1:
        raise UnsupportedConfig("the ξ_s recursion is implemented for e = 1")
    n, p = cls.level, cfg.p
    eta0 = -p ** n
    out = [cls.rep]
    for _ in range(s_max):
        y = out[-1] ** p
        t = y.teichmuller_expand(start=eta0, stop=eta0 + 1).get(eta0)
        if t is not None:
            y = y - TowerElement.from_terms(cfg, n, {eta0: t})
        out.append(y.normalized())
    return out


def find_K_linear_dependence(xis: list, r_max: int | None = None) -> TwistRelation:
    """Smallest r and [d_s] with Σ [d_s] ξ_s ∈ K + 𝔞_{n−r}, as a twist relation.

    Coordinates: for e = 1 the digit of ξ at η_m is the residue of p·a_i with
    i = p^n − p^{n−m}; only the rows m ≤ n − r are reliable at level n.
    """
    if not xis:
        raise DegenerateInput("no elements given")
    cfg = xis[0].config
    if cfg.e != 1:
        raise UnsupportedConfig("dependence search is implemented for e = 1")
    n = max(x.level for x in xis)
    xis = [x.embed(n) for x in xis]
    p, k = cfg.p, cfg.field
    if r_max is None:
        r_max = len(xis) - 1
    r_max = min(r_max, len(xis) - 1)
    columns = []
    for x in xis:
        a = x.coefficients_over_base()
        col = []
        for m in range(1, n + 1):
            scaled = a[p ** n - p ** (n - m)] * p
            col.append(_residue_of_integral(scaled))
        columns.append(col)
    if all(c.is_zero() for col in columns for c in col):
        raise DegenerateInput("all elements are integral modulo K")
    for r in range(1, r_max + 1):
        rows = [[columns[s][m] for s in range(r + 1)] for m in range(n - r)]
        v = first_kernel_vector(kernel_basis(rows, r + 1, k), k)
        if v is None:
            continue
        combo = sum((x * TowerElement.from_terms(cfg, n, {0: d}) for x, d in zip(xis, v)),
                    TowerElement.zero(cfg, n))
        defect = approximation_defect(combo, 0)
        assert defect.ge(-fringe(p, n - r)), "kernel vector does not cancel the reliable digits"
        return TwistRelation(k, tuple(v))
    raise NoDependenceFound(f"no relation of order <= {r_max}")


def _residue_of_integral(a: TowerElement) -> ResidueElement:
    """Residue of a level-0 element of valuation >= 0."""
    k = a.config.field
    if a.is_zero():
        return k.zero()
    d = a.teichmuller_expand(stop=1)
    if any(i < 0 for i in d):
        raise SupportViolation("expected an integral coefficient")
    return d.get(0, k.zero())


# --- the witness polynomial ------------------------------------------------------

@dataclass(frozen=True)
class AdditiveWitnessPolynomial:
    """P(X) = constant + Σ_s δ_s X^{p^s}, δ_s = [d_s], constant in the span of η_1, …, η_r."""

    config: TowerConfig
    relation: TwistRelation
    digit_prefix: tuple
    delta: tuple
    constant: TowerElement

    @property
    def order(self) -> int:
        return self.relation.order

    def support(self) -> list:
        return [0] + [self.config.p ** s for s in range(self.order + 1)]

    def evaluate(self, x: TowerElement) -> TowerElement:
        p = self.config.p
        acc = self.constant.embed(max(self.constant.level, x.level))
        power = x
        for s, d in enumerate(self.delta):
            if s:
                power = power ** p
            if not d.is_zero():
                acc = acc + power * d
        return acc


def build_witness_polynomial(rel: TwistRelation, digit_prefix, cfg: TowerConfig) -> AdditiveWitnessPolynomial:
    """P with constant −Σ_{m=1}^r C_m η_m, C_m = Σ_{s=r+1−m}^{r} δ_s [x_{m+s}]^{p^s}.

    X = Σ_{i>r} [x_i] η_i makes Σ_s δ_s X^{p^s} − Σ_m C_m η_m ≡ 0 digit by digit,
    so the prefix must reach x_{2r}.
    """
    if cfg.e != 1:
        raise UnsupportedConfig("witness polynomials are built for e = 1")
    if rel.field != cfg.field:
        raise ValueError("relation over another residue field")
    r, p = rel.order, cfg.p
    if rel.coeffs[-1].is_zero():
        raise ValueError("the relation must have d_r != 0")
    x = tuple(digit_prefix)
    if len(x) < 2 * r:
        raise ValueError(f"need the digits x_1..x_{2 * r}")
    delta = tuple(TowerElement.from_terms(cfg, 0, {0: d}) for d in rel.coeffs)
    constant = TowerElement.zero(cfg, r)
    for m in range(1, r + 1):
        Cm = TowerElement.zero(cfg, r)
        for s in range(r + 1 - m, r + 1):
            lift = TowerElement.from_terms(cfg, r, {0: rel.coeffs[s]}) * \
                TowerElement.from_terms(cfg, r, {0: x[m + s - 1]}) ** (p ** s)
            Cm = Cm + lift
        constant = constant - Cm * TowerElement.eta(cfg, r, p ** (r - m))
    return AdditiveWitnessPolynomial(cfg, rel, x, delta, constant)


def approximate_root(P: AdditiveWitnessPolynomial, n: int) -> TowerElement:
    """ξ_n = Σ_{i=r+1}^{n+r} [x_i] η_i at level n + r, digits continued by the relation."""
    cfg, r = P.config, P.order
    stream = _digit_stream(P, n + r)
    L = n + r
    terms = {-cfg.p ** (L - i): stream[i - 1] for i in range(r + 1, L + 1) if not stream[i - 1].is_zero()}
    return TowerElement.from_terms(cfg, L, terms)


def _digit_stream(P: AdditiveWitnessPolynomial, length: int) -> list:
    r = P.order
    seq = extend_sequence(P.relation, list(P.digit_prefix[:r]), max(length, len(P.digit_prefix)))
    if seq.terms[:len(P.digit_prefix)] != P.digit_prefix:
        raise ValueError("the digit prefix does not satisfy the relation")
    return list(seq.terms)


def approximate_root_defect(P: AdditiveWitnessPolynomial, n: int) -> Valuation:
    """v(P(ξ_n)); at least −1/p^{n+1}."""
    return P.evaluate(approximate_root(P, n)).valuation()


def stage_polynomial(P: AdditiveWitnessPolynomial, n: int) -> dict:
    """Coefficients b_j of Q(y) = P(ξ_n + y η_{n+r+1}), at level n + r + 1."""
    cfg, r, p = P.config, P.order, P.config.p
    L = n + r + 1
    xi = approximate_root(P, n).embed(L)
    eta = TowerElement.eta(cfg, L)
    out = {0: P.evaluate(xi)}
    top = p ** r
    xi_pows = [TowerElement.one(cfg, L)]
    for _ in range(top):
        xi_pows.append(xi_pows[-1] * xi)
    eta_pows = [TowerElement.one(cfg, L)]
    for _ in range(top):
        eta_pows.append(eta_pows[-1] * eta)
    for j in range(1, top + 1):
        acc = TowerElement.zero(cfg, L)
        for s, d in enumerate(P.delta):
            ps = p ** s
            if ps >= j and not d.is_zero():
                acc = acc + d * xi_pows[ps - j] * eta_pows[j] * comb(ps, j)
        out[j] = acc
    return out


@dataclass(frozen=True)
class NewtonCertificate:
    valuations: dict
    segments: list
    positive_root: bool
    integral_root: bool


def stage_newton_certificate(P: AdditiveWitnessPolynomial, n: int) -> NewtonCertificate:
    vals = {j: b.valuation() for j, b in stage_polynomial(P, n).items()}
    # a higher b_0 only steepens the first slope, so its bound is a safe stand-in
    vals = {j: (v if v.is_exact or v.is_infinite else
                Valuation.of(v.value) if j == 0 else Valuation.infinite()) for j, v in vals.items()}
    finite = [j for j, v in vals.items() if v.is_exact]
    segments = newton_polygon(vals) if len(finite) >= 2 else []
    return NewtonCertificate(vals, segments, has_positive_valuation_root(vals), has_integral_root(vals))


# --- ramified case ---------------------------------------------------------------

@dataclass(frozen=True)
class IndexSet:
    p: int
    e: int
    r: int
    tau: int
    rho: int
    pairs: tuple
    pairs_r: tuple

    @property
    def bound(self) -> Fraction:
        return Fraction(self.p * self.e, self.r * (self.p - 1) ** 2)

    @property
    def within_bound(self) -> bool:
        return len(self.pairs_r) <= self.bound


def tau_rho(p: int, e: int) -> tuple:
    return e // (p - 1), e * p // (p - 1)


def gamma(p: int, e: int, i: int, j: int) -> int | None:
    """max{s ∈ [τ+1, ρ] : p^i | s − j}, or None when no such s exists."""
    tau, rho = tau_rho(p, e)
    pi = p ** i
    s = rho - (rho - j) % pi
    return s if s > tau else None


def index_sets(p: int, e: int, r: int) -> IndexSet:
    if e < 1 or r < 1:
        raise ValueError("need e >= 1 and r >= 1")
    tau, rho = tau_rho(p, e)
    assert rho - tau == e
    pairs = set()
    i = 1
    while r * p ** i < rho:
        for j in range(1, p ** i):
            g = gamma(p, e, i, j)
            if g is not None:
                pairs.add((i, g))
        i += 1
    pairs = tuple(sorted(pairs))
    pairs_r = tuple(pr for pr in pairs if r * p ** pr[0] < pr[1])
    return IndexSet(p, e, r, tau, rho, pairs, pairs_r)


def ramified_support(cls: InvariantClass) -> dict:
    """{(i, γ): β_{i,γ} ∈ K} with ξ ≡ Σ β_{i,γ} η_i^γ modulo K + integral terms."""
    cfg = cls.config
    p, e, n = cfg.p, cfg.e, cls.level
    tau, rho = tau_rho(p, e)
    out = {}
    for idx, c in sorted(_negative_digits(cls).items()):
        J = -idx
        a = vp_int(J, p)
        d = J // p ** a
        if d > rho:
            raise SupportViolation(f"digit at pi_{n}^{idx} has prime-to-p part {d} > rho = {rho}")
        b = 0
        while p ** b * d <= tau:
            b += 1
        g0 = p ** b * d
        i = n - a + b
        if i <= 0:
            continue
        g = gamma(p, e, i, g0)
        lam = (g - g0) // p ** i
        term = TowerElement.from_terms(cfg, 0, {lam: c})
        key = (i, g)
        out[key] = out[key] + term if key in out else term
    return out


def resum_ramified_support(cfg: TowerConfig, support: dict, level: int = 0) -> TowerElement:
    """Σ β_{i,γ} η_i^γ, at ``level`` or the highest i present if larger."""
    level = max([level] + [i for i, _ in support])
    acc = TowerElement.zero(cfg, level)
    for (i, g), beta in support.items():
        acc = acc + beta.embed(level) * TowerElement.from_terms(cfg, level, {-g * cfg.p ** (level - i): 1})
    return acc


def psi_is_twist_recurrent(cls: InvariantClass, r_max: int) -> tuple:
    """(relation found from the ξ_s, whether it annihilates ψ(cls))."""
    xis = xi_tower_sequence(cls, r_max)
    rel = find_K_linear_dependence(xis, r_max)
    digits = TwistSequence(cls.config.field, tuple(psi_digits(cls, cls.level)))
    return rel, check_relation(digits, rel)

