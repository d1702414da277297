"""Brute-force oscillation in L = Q(ζ_{p^n}, p^{1/p^n}) via exact norms.

Elements of L are dense arrays c[a][b] for the basis ζ^a π_n^b with
a < φ(p^n) and b < p^n.  L has a single, totally ramified prime above p,
so v(y) = v_p(N_{L/Q}(y)) / [L : Q].
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedConfig
from .tower import TowerElement, vp_int
from .valuation import Valuation

SUPPORTED = {(2, 1), (2, 2), (3, 1)}


def cyclotomic_polynomial(p: int, n: int) -> list:
    """Φ_{p^n}(z) = sum_{i<p} z^{i p^(n-1)}, low degree first."""
    step = p ** (n - 1)
    out = [0] * (step * (p - 1) + 1)
    for i in range(p):
        out[i * step] = 1
    return out


def _reduce_z(poly, phi):
    poly = list(poly)
    d = len(phi) - 1
    for k in range(len(poly) - 1, d - 1, -1):
        c = poly[k]
        if c:
            for j in range(d + 1):
                poly[k - d + j] -= c * phi[j]
    return (poly + [0] * d)[:d]


def _vp_rational(x: Fraction, p: int) -> int:
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def determinant(rows) -> Fraction:
    """Exact determinant by Gaussian elimination over Q."""
    a = [[Fraction(v) for v in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / a[col][col]
                a[r] = [u - f * v for u, v in zip(a[r], a[col])]
    return det


class CyclotomicKummerField:
    def __init__(self, p: int, n: int):
        self.p, self.n = p, n
        self.pn = p ** n
        self.phi = cyclotomic_polynomial(p, n)
        self.dz = len(self.phi) - 1
        self.degree = self.dz * self.pn

    def zeta_power(self, k: int) -> list:
        poly = [0] * (k % self.pn + 1)
        poly[-1] = 1
        return _reduce_z(poly, self.phi)

    def times_basis(self, y, a: int, b: int) -> list:
        """y · ζ^a π_n^b as a flat coordinate vector."""
        out = [[Fraction(0)] * self.pn for _ in range(self.dz)]
        for r in range(self.pn):
            zpoly = [y[i][r] for i in range(self.dz)]
            if not any(zpoly):
                continue
            zpoly = _reduce_z([0] * a + zpoly, self.phi)
            q, t = divmod(r + b, self.pn)
            scale = self.p ** q
            for i, c in enumerate(zpoly):
                out[i][t] += c * scale
        return [out[i][t] for i in range(self.dz) for t in range(self.pn)]

    def norm(self, y) -> Fraction:
        cols = [self.times_basis(y, a, b) for a in range(self.dz) for b in range(self.pn)]
        return determinant(cols)

    def valuation(self, y) -> Valuation:
        if not any(any(row) for row in y):
            return Valuation.infinite()
        return Valuation.of(Fraction(_vp_rational(self.norm(y), self.p), self.degree))


def _rational_coefficients(x: TowerElement) -> list:
    """b_r in Q with x = sum b_r π_n^r, from the centered lifts of the stored digits."""
    cfg = x.config
    M, pn = cfg.M, cfg.p ** x.level
    b = [Fraction(0)] * pn
    for j, c in enumerate(x.coeffs):
        v = c[0] if c[0] <= M // 2 else c[0] - M
        if v:
            q, r = divmod(x.shift + j, pn)
            b[r] += v * Fraction(cfg.p) ** q
    return b


def cyclotomic_oracle_oscillation(x: TowerElement) -> Valuation:
    """min over σ: π_n ↦ ζ^a π_n (a = 1..p^n − 1) of v(σx − x), by exact norms."""
    cfg = x.config
    if cfg.e != 1 or cfg.f != 1 or (cfg.p, x.level) not in SUPPORTED:
        raise UnsupportedConfig(f"oracle supports e=f=1 and (p, n) in {sorted(SUPPORTED)}")
    L = CyclotomicKummerField(cfg.p, x.level)
    b = _rational_coefficients(x)
    best = Valuation.infinite()
    for a in range(1, L.pn):
        y = [[Fraction(0)] * L.pn for _ in range(L.dz)]
        for r, br in enumerate(b):
            if br:
                zp = L.zeta_power(a * r)
                zp[0] -= 1
                for i, c in enumerate(zp):
                    y[i][r] += br * c
        v = L.valuation(y)
        if not v.is_infinite and (best.is_infinite or v.value < best.value):
            best = v
    return best
