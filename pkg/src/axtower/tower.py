"""Truncated arithmetic in the Kummer tower K_n = K(pi_n), pi_n^(p^n) = pi.

K is the totally ramified extension of W(k)[1/p] cut out by an Eisenstein
polynomial E of degree e.  An element of K_n is stored as

    pi_n^shift * (c_0 + c_1 pi_n + ... + c_{N-1} pi_n^{N-1}),   N = e p^n,

with each c_j in the truncated unramified ring W(k)/p^P, itself stored as a
tuple of f integer coordinates in the basis 1, t, ..., t^{f-1} modulo the
lifted residue modulus.  O_{K_n} = W(k)[pi_n]/(E(pi_n^{p^n})) because the
composed polynomial is again Eisenstein, so the integral part is known modulo
p^P O_{K_n} and the element modulo pi_n^{shift + N P}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConfigMismatch, PrecisionExhausted
from .field import ResidueElement, ResidueField
from .valuation import Valuation

DEFAULT_PRECISION = 8


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("v_p(0) is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class TowerConfig:
    """Base data (p, k, e, E, P).  ``eisenstein`` lists E's coefficients low degree first."""

    field: ResidueField
    e: int = 1
    eisenstein: tuple | None = None
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        p, f = self.field.p, self.field.f
        if self.e < 1:
            raise ValueError("e must be a positive integer")
        if self.precision < 2:
            raise ValueError("precision_P must be at least 2")
        E = self.eisenstein
        if E is None:
            E = [[-p]] + [[0]] * (self.e - 1) + [[1]]
        coeffs = []
        for c in E:
            c = [c] if isinstance(c, int) else list(c)
            if len(c) > f:
                raise ValueError("Eisenstein coefficient has more than f coordinates")
            coeffs.append(tuple(c + [0] * (f - len(c))))
        if len(coeffs) != self.e + 1:
            raise ValueError(f"Eisenstein polynomial must have degree e={self.e}")
        if coeffs[-1] != (1,) + (0,) * (f - 1):
            raise ValueError("Eisenstein polynomial must be monic")
        for a in coeffs[:-1]:
            if any(x % p for x in a):
                raise ValueError("lower Eisenstein coefficients must be divisible by p")
        if all(x % (p * p) == 0 for x in coeffs[0]):
            raise ValueError("Eisenstein constant term must have valuation exactly 1")
        object.__setattr__(self, "eisenstein", tuple(coeffs))

    # --- the truncated unramified ring W(k)/p^P ---------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def f(self) -> int:
        return self.field.f

    @property
    def M(self) -> int:
        return self.field.p ** self.precision

    def N(self, level: int) -> int:
        return self.e * self.field.p ** level

    def with_precision(self, precision: int) -> TowerConfig:
        return TowerConfig(self.field, self.e, self.eisenstein, precision)

    def wzero(self) -> tuple:
        return (0,) * self.f

    def wone(self) -> tuple:
        return (1,) + (0,) * (self.f - 1)

    def w(self, x) -> tuple:
        """Coerce an int, coordinate list or tuple into a reduced W element."""
        M = self.M
        if isinstance(x, int):
            return (x % M,) + (0,) * (self.f - 1)
        x = list(x)
        return tuple(c % M for c in x) + (0,) * (self.f - len(x))

    def wadd(self, a, b):
        M = self.M
        return tuple((x + y) % M for x, y in zip(a, b))

    def wsub(self, a, b):
        M = self.M
        return tuple((x - y) % M for x, y in zip(a, b))

    def wneg(self, a):
        M = self.M
        return tuple(-x % M for x in a)

    def wscale(self, a, k: int):
        M = self.M
        return tuple(x * k % M for x in a)

    def wmul(self, a, b):
        M, f = self.M, self.f
        if f == 1:
            return (a[0] * b[0] % M,)
        t = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    t[i + j] += x * y
        return _reduce_t(t, self.field.modulus, f, M)

    def wvp(self, a) -> int | None:
        """p-adic valuation of a W element, or None if it is 0 mod p^P."""
        vs = [vp_int(x, self.p) for x in a if x]
        return min(vs) if vs else None

    def wresidue(self, a) -> ResidueElement:
        return self.field([x % self.p for x in a])

    def wdiv_p_power(self, a, v: int):
        """Exact division by p^v of a W element divisible by p^v (result mod p^(P-v))."""
        pv = self.p ** v
        return tuple(x // pv for x in a)

    def teichmuller(self, c: ResidueElement) -> tuple:
        """[c] in W(k)/p^P."""
        if c.field != self.field:
            raise ConfigMismatch("residue element from another field")
        return _teichmuller(self, c.coords)

    def to_json(self) -> dict:
        d = self.field.to_json()
        d.update(e=self.e, eisenstein=[list(c) for c in self.eisenstein], precision_P=self.precision)
        return d


def _reduce_t(t, modulus, f, M):
    # t^f = -(m_0 + ... + m_{f-1} t^{f-1})
    t = list(t)
    for k in range(len(t) - 1, f - 1, -1):
        c = t[k]
        if c:
            for j in range(f):
                t[k - f + j] -= c * modulus[j]
    return tuple(x % M for x in t[:f])


@lru_cache(maxsize=None)
def _teichmuller(cfg: TowerConfig, coords: tuple) -> tuple:
    x = cfg.w(coords)
    if not any(coords):
        return x
    q = cfg.field.q
    for _ in range(cfg.precision):
        acc, base, n = cfg.wone(), x, q
        while n:
            if n & 1:
                acc = cfg.wmul(acc, base)
            base = cfg.wmul(base, base)
            n >>= 1
        x = acc
    return x


# --- polynomials in pi_n over W(k)/p^P --------------------------------------

@lru_cache(maxsize=None)
def _relation(cfg: TowerConfig, level: int) -> tuple:
    """pi_n^N = sum r_j pi_n^{j p^n}, listed as (degree, r_j) with r_j != 0."""
    step = cfg.p ** level
    out = []
    for j, a in enumerate(cfg.eisenstein[:-1]):
        r = cfg.w(tuple(-x for x in a))
        if any(r):
            out.append((j * step, r))
    return tuple(out)


@lru_cache(maxsize=None)
def _unit_residue_inverse(cfg: TowerConfig) -> ResidueElement:
    """Residue of p / pi_n^N, i.e. of (-a_0/p)^(-1); independent of the level."""
    a0 = cfg.eisenstein[0]
    return cfg.field([(-x // cfg.p) % cfg.p for x in a0]).inverse()


def _fold(cfg: TowerConfig, level: int, poly) -> list:
    N = cfg.N(level)
    poly = list(poly)
    if len(poly) < N:
        return poly + [cfg.wzero()] * (N - len(poly))
    rel = _relation(cfg, level)
    for d in range(len(poly) - 1, N - 1, -1):
        c = poly[d]
        if any(c):
            for deg, r in rel:
                t = d - N + deg
                poly[t] = cfg.wadd(poly[t], cfg.wmul(r, c))
    return poly[:N]


def _kron_mul(cfg: TowerConfig, a, b) -> list:
    """Product of two coefficient lists by Kronecker substitution into one big integer."""
    f, M = cfg.f, cfg.M
    S = 2 * f - 1
    L = min(len(a), len(b))
    nb = (L * f * (M - 1) ** 2).bit_length() // 8 + 1
    pad = bytes(nb * (f - 1))

    def enc(poly):
        parts = []
        for c in poly:
            for x in c:
                parts.append(x.to_bytes(nb, "little"))
            if f > 1:
                parts.append(pad)
        return int.from_bytes(b"".join(parts), "little")

    L_out = len(a) + len(b) - 1
    raw = (enc(a) * enc(b)).to_bytes(L_out * S * nb, "little")
    if f == 1:
        return [(int.from_bytes(raw[i * nb:(i + 1) * nb], "little") % M,) for i in range(L_out)]
    out = []
    for d in range(L_out):
        base = d * S * nb
        t = [int.from_bytes(raw[base + k * nb:base + (k + 1) * nb], "little") for k in range(S)]
        out.append(_reduce_t(t, cfg.field.modulus, f, M))
    return out


def _polymul(cfg: TowerConfig, level: int, a, b) -> list:
    return _fold(cfg, level, _kron_mul(cfg, a, b))


@lru_cache(maxsize=None)
def _pi_N_power(cfg: TowerConfig, level: int, t: int) -> tuple:
    if t == 1:
        poly = [cfg.wzero()] * cfg.N(level)
        for deg, r in _relation(cfg, level):
            poly[deg] = r
        return tuple(poly)
    return tuple(_polymul(cfg, level, _pi_N_power(cfg, level, t - 1), _pi_N_power(cfg, level, 1)))


def _shift(cfg: TowerConfig, level: int, u, k: int) -> list:
    """u * pi_n^k reduced, for k >= 0."""
    N = cfg.N(level)
    t, r = divmod(k, N)
    if t >= cfg.precision:
        return [cfg.wzero()] * N
    poly = _fold(cfg, level, [cfg.wzero()] * r + list(u))
    if t:
        if cfg.e == 1:
            poly = [cfg.wscale(c, cfg.p ** t) for c in poly]
        else:
            poly = _polymul(cfg, level, poly, _pi_N_power(cfg, level, t))
    return poly


@lru_cache(maxsize=None)
def _p_inverse_unit(cfg: TowerConfig, level: int) -> tuple:
    """The unit pi_n^N / p, so that p^(-1) = pi_n^(-N) * (this)."""
    poly = [cfg.wzero()] * cfg.N(level)
    step = cfg.p ** level
    for j, a in enumerate(cfg.eisenstein[:-1]):
        poly[j * step] = cfg.w(tuple(-x // cfg.p for x in a))
    return tuple(poly)



def _winv(cfg: TowerConfig, a) -> tuple:
    """Inverse of a unit of W(k)/p^P by Newton iteration from the residue inverse."""
    y = cfg.w(cfg.wresidue(a).inverse().coords)
    two = cfg.w(2)
    for _ in range(cfg.precision.bit_length() + 1):
        y = cfg.wmul(y, cfg.wsub(two, cfg.wmul(a, y)))
    return y


@lru_cache(maxsize=None)
def _unit_inverse_power(cfg: TowerConfig, level: int, m: int) -> tuple:
    """(p / pi_n^N)^m, so that pi_n^(-mN) = p^(-m) * (this)."""
    N = cfg.N(level)
    if cfg.e == 1:
        return (cfg.wone(),) + (cfg.wzero(),) * (N - 1)
    if m > 1:
        return tuple(_polymul(cfg, level, _unit_inverse_power(cfg, level, m - 1), _unit_inverse_power(cfg, level, 1)))
    U = _p_inverse_unit(cfg, level)
    y = [_winv(cfg, U[0])] + [cfg.wzero()] * (N - 1)
    two = [cfg.w(2)] + [cfg.wzero()] * (N - 1)
    for _ in range((N * cfg.precision).bit_length() + 1):
        uy = _polymul(cfg, level, U, y)
        y = _polymul(cfg, level, y, [cfg.wsub(a, b) for a, b in zip(two, uy)])
    return tuple(y)


def _truncate(cfg: TowerConfig, level: int, coeffs, rel_cut: int) -> tuple:
    """Reduce sum c_j pi_n^j modulo pi_n^rel_cut (c_j taken mod p^ceil((rel_cut - j)/N))."""
    N, P, p = cfg.N(level), cfg.precision, cfg.p
    out = []
    for j, c in enumerate(coeffs):
        t = -((j - rel_cut) // N)
        if t <= 0:
            out.append(cfg.wzero())
        elif t < P:
            pt = p ** t
            out.append(tuple(x % pt for x in c))
        else:
            out.append(c)
    return tuple(out)


def _make(cfg: TowerConfig, level: int, shift: int, coeffs, cut: int | None = None) -> TowerElement:
    """Element known modulo pi_n^cut (absolute index); None or a looser cut means full precision."""
    default = shift + cfg.N(level) * cfg.precision
    if cut is None or cut >= default:
        return TowerElement(cfg, level, shift, tuple(coeffs))
    return TowerElement(cfg, level, shift, _truncate(cfg, level, coeffs, cut - shift), False, cut)


# --- elements ----------------------------------------------------------------

@dataclass(frozen=True)
class TowerElement:
    """pi_n^shift * sum c_j pi_n^j, known modulo pi_n^cutoff_index.

    ``known`` tightens the default cutoff shift + N P after cancellation and
    renormalization; it is None at full precision.
    """

    config: TowerConfig
    level: int
    shift: int
    coeffs: tuple
    exact_zero: bool = False
    known: int | None = None

    # constructors

    @classmethod
    def zero(cls, cfg: TowerConfig, level: int = 0) -> TowerElement:
        return cls(cfg, level, 0, (cfg.wzero(),) * cfg.N(level), True)

    @classmethod
    def from_terms(cls, cfg: TowerConfig, level: int, terms: dict) -> TowerElement:
        """sum of c * pi_n^i over ``terms`` {i: c}.

        ``c`` may be an int, a coordinate list, or a ResidueElement (read as
        its Teichmüller lift).
        """
        terms = {i: (cfg.teichmuller(c) if isinstance(c, ResidueElement) else cfg.w(c))
                 for i, c in terms.items()}
        terms = {i: c for i, c in terms.items() if any(c)}
        if not terms:
            return cls.zero(cfg, level)
        s = min(terms)
        poly = [cfg.wzero()] * (max(terms) - s + 1)
        for i, c in terms.items():
            poly[i - s] = c
        return cls(cfg, level, s, tuple(_fold(cfg, level, poly)))

    @classmethod
    def one(cls, cfg: TowerConfig, level: int = 0) -> TowerElement:
        return cls.from_terms(cfg, level, {0: 1})

    @classmethod
    def pi(cls, cfg: TowerConfig, level: int) -> TowerElement:
        return cls.from_terms(cfg, level, {1: 1})

    @classmethod
    def eta(cls, cfg: TowerConfig, level: int, power: int = 1) -> TowerElement:
        """eta_m^power = pi_m^(-power), stored at level m."""
        return cls.from_terms(cfg, level, {-power: 1})

    @classmethod
    def teichmuller_term(cls, c: ResidueElement, cfg: TowerConfig, level: int, index: int) -> TowerElement:
        return cls.from_terms(cfg, level, {index: c})

    @classmethod
    def from_rational(cls, cfg: TowerConfig, x, level: int = 0) -> TowerElement:
        """A rational number (in Q, hence in K) as a tower element."""
        x = Fraction(x)
        if x == 0:
            return cls.zero(cfg, level)
        p = cfg.p
        num, den = x.numerator, x.denominator
        k = vp_int(den, p)
        unit = num * pow(den // p ** k, -1, cfg.M)
        el = cls.from_terms(cfg, 0, {0: unit})
        for _ in range(k):
            el = el * cls(cfg, 0, -cfg.e, _p_inverse_unit(cfg, 0))
        return el.embed(level)

    @classmethod
    def from_base_coefficients(cls, cfg: TowerConfig, level: int, coeffs) -> TowerElement:
        """sum a_i pi_n^i for level-0 elements a_i."""
        acc = cls.zero(cfg, level)
        for i, a in enumerate(coeffs):
            if a.level != 0:
                raise ConfigMismatch("base coefficients must be level-0 elements")
            if not a.is_zero():
                acc = acc + a.embed(level).mul_pi_power(i)
        return acc

    # basic properties

    @property
    def N(self) -> int:
        return self.config.N(self.level)

    @property
    def cutoff_index(self) -> int:
        """The element is known modulo pi_n^cutoff_index."""
        default = self.shift + self.N * self.config.precision
        return default if self.known is None else min(default, self.known)

    @property
    def precision_cap(self) -> Fraction:
        return Fraction(self.cutoff_index, self.N)

    def is_zero(self) -> bool:
        """True when every stored digit vanishes (zero to working precision)."""
        return self.exact_zero or not any(any(c) for c in self.coeffs)

    def _lead(self):
        """(index within the integral part, position j, p-adic valuation of c_j) of the leading term."""
        return _lead_of(self.config, self.N, self.coeffs)

    def lead_index(self) -> int:
        """Absolute index of the leading digit, or the cutoff when none is known."""
        lead = self._lead()
        return self.cutoff_index if lead is None else self.shift + lead[0]

    def valuation(self) -> Valuation:
        if self.exact_zero:
            return Valuation.infinite()
        lead = self._lead()
        if lead is None:
            return Valuation.at_least(self.precision_cap)
        return Valuation.of(Fraction(self.shift + lead[0], self.N))

    # arithmetic

    def _coerce(self, other) -> TowerElement:
        if isinstance(other, (int, Fraction)):
            return TowerElement.from_rational(self.config, other, self.level)
        if not isinstance(other, TowerElement):
            return NotImplemented
        if other.config != self.config:
            raise ConfigMismatch("tower elements over different configurations")
        return other

    def _common(self, other):
        n = max(self.level, other.level)
        return self.embed(n), other.embed(n)

    def _aligned_coeffs(self, shift: int) -> list:
        return _shift(self.config, self.level, self.coeffs, self.shift - shift)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        x, y = self._common(other)
        if x.exact_zero:
            return y
        if y.exact_zero:
            return x
        cfg = self.config
        s = min(x.shift, y.shift)
        a, b = x._aligned_coeffs(s), y._aligned_coeffs(s)
        return _make(cfg, x.level, s, [cfg.wadd(u, v) for u, v in zip(a, b)],
                     min(x.cutoff_index, y.cutoff_index))

    __radd__ = __add__

    def __neg__(self):
        cfg = self.config
        return TowerElement(cfg, self.level, self.shift, tuple(cfg.wneg(c) for c in self.coeffs),
                            self.exact_zero, self.known)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and other % self.config.p:
            cfg = self.config
            return TowerElement(cfg, self.level, self.shift,
                                tuple(cfg.wscale(c, other) for c in self.coeffs), self.exact_zero, self.known)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        x, y = self._common(other)
        if x.exact_zero or y.exact_zero:
            return TowerElement.zero(self.config, x.level)
        cut = None
        if x.known is not None or y.known is not None:
            cut = min(x.cutoff_index + y.lead_index(), y.cutoff_index + x.lead_index())
        return _make(self.config, x.level, x.shift + y.shift,
                     _polymul(self.config, x.level, x.coeffs, y.coeffs), cut)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TowerElement:
        if k < 0:
            raise ValueError("negative powers are not supported")
        acc, base = TowerElement.one(self.config, self.level), self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    def mul_pi_power(self, j: int) -> TowerElement:
        """Multiply by pi_n^j, any integer j."""
        if self.exact_zero:
            return self
        known = None if self.known is None else self.known + j
        return TowerElement(self.config, self.level, self.shift + j, self.coeffs, False, known)

    def embed(self, target_level: int) -> TowerElement:
        """Same element viewed in K_{target_level} (pi_n -> pi_{n'}^{p^(n'-n)})."""
        if target_level < self.level:
            raise ValueError("can only embed upwards in the tower")
        if target_level == self.level:
            return self
        cfg = self.config
        step = cfg.p ** (target_level - self.level)
        poly = [cfg.wzero()] * cfg.N(target_level)
        for j, c in enumerate(self.coeffs):
            poly[j * step] = c
        known = None if self.known is None else self.known * step
        return TowerElement(cfg, target_level, self.shift * step, tuple(poly), self.exact_zero, known)

    def normalized(self) -> TowerElement:
        """Same element with the shift raised to its leading index; precision is kept, not invented."""
        if self.exact_zero:
            return self
        lead = self._lead()
        if lead is None or lead[0] == 0:
            return self
        cfg, n, N, k = self.config, self.level, self.N, lead[0]
        p = cfg.p
        # c_j pi^(j-k) = (c_j / p^m) pi^(mN - (k - j)) * (p / pi^N)^m with m = ceil((k - j)/N)
        groups = {}
        for j, c in enumerate(self.coeffs):
            if not any(c):
                continue
            m = max(0, -((j - k) // N))
            d = j - k + m * N
            groups.setdefault(m, {})[d] = tuple(x // p ** m for x in c)
        acc = [cfg.wzero()] * N
        for m, terms in groups.items():
            poly = [cfg.wzero()] * N
            for d, c in terms.items():
                poly[d] = c
            if m and cfg.e > 1:
                poly = _polymul(cfg, n, poly, _unit_inverse_power(cfg, n, m))
            acc = [cfg.wadd(a, b) for a, b in zip(acc, poly)]
        return _make(cfg, n, self.shift + k, acc, self.cutoff_index)

    # expansions

    def coefficients_over_base(self) -> list:
        """(a_0, ..., a_{p^n - 1}) in K with self = sum a_i pi_n^i."""
        cfg, n = self.config, self.level
        pn = cfg.p ** n
        if self.exact_zero:
            return [TowerElement.zero(cfg, 0) for _ in range(pn)]
        q, r = divmod(self.shift, pn)
        w = _shift(cfg, n, self.coeffs, r)
        cut = self.cutoff_index
        out = []
        for i in range(pn):
            a_cut = None if self.known is None else -((i - cut) // pn)
            out.append(_make(cfg, 0, q, [w[i + pn * k] for k in range(cfg.e)], a_cut))
        return out

    def teichmuller_expand(self, start: int | None = None, stop: int | None = None) -> dict:
        """Digits {i: c_i} of self = sum [c_i] pi_n^i on the window [start, stop).

        Indices missing from the result carry the digit 0.  ``stop`` defaults to
        the precision cutoff; asking beyond it raises PrecisionExhausted.
        """
        cfg, N = self.config, self.N
        cutoff = self.cutoff_index
        if stop is None:
            stop = cutoff
        if stop > cutoff and not self.exact_zero:
            raise PrecisionExhausted(f"digit window ends at {stop}, beyond the cutoff {cutoff}")
        if self.exact_zero:
            return {}
        u = list(self.coeffs)
        s = self.shift
        unit_inv = _unit_residue_inverse(cfg)
        digits = {}
        while True:
            lead = _lead_of(cfg, N, u)
            if lead is None:
                break
            idx, j, v = lead
            i = s + idx
            if i >= stop:
                break
            c = cfg.wresidue(cfg.wdiv_p_power(u[j], v)) * unit_inv ** v
            if start is None or i >= start:
                digits[i] = c
            sub = _shift(cfg, self.level, [cfg.teichmuller(c)], idx)
            u = [cfg.wsub(a, b) for a, b in zip(u, sub)]
        return digits

    def to_json(self) -> dict:
        d = {"config": self.config.to_json(), "level": self.level, "shift": self.shift,
             "coeffs": [list(c) for c in self.coeffs]}
        if self.known is not None:
            d["known"] = self.known
        return d

    def __repr__(self):
        return f"TowerElement(level={self.level}, shift={self.shift}, v={self.valuation()})"


def _lead_of(cfg, N, u):
    best = None
    for j, c in enumerate(u):
        v = cfg.wvp(c)
        if v is not None:
            idx = v * N + j
            if best is None or idx < best[0]:
                best = (idx, j, v)
    return best


def resum_digits(cfg: TowerConfig, level: int, digits: dict) -> TowerElement:
    """sum [c_i] pi_n^i over a digit map."""
    return TowerElement.from_terms(cfg, level, dict(digits))
