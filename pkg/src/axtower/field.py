"""Residue fields F_{p^f} given by an explicit modulus, and their Frobenius."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import DivisionByZero, FieldMismatch

MAX_P = 97
MAX_F = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# Dense polynomials over F_p, little-endian coefficient lists.

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, m, p):
    a = [c % p for c in a]
    m = _trim(m)
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm]) if len(a) > dm else _trim(a)


def _polymulmod(a, b, m, p):
    out = [0] * max(len(a) + len(b) - 1, 0)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _polymod(out, m, p)


def _polygcd(a, b, p):
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _x_pow_p_power(i, m, p):
    """x^(p^i) reduced modulo m."""
    r = [0, 1]
    for _ in range(i):
        acc, base, e = [1], r, p
        while e:
            if e & 1:
                acc = _polymulmod(acc, base, m, p)
            base = _polymulmod(base, base, m, p)
            e >>= 1
        r = acc
    return _polymod(r, m, p)


def is_irreducible(modulus, p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    f = len(modulus) - 1
    if f == 1:
        return True
    x = [0, 1]
    for i in range(1, f // 2 + 1):
        xp = _x_pow_p_power(i, modulus, p)
        diff = _trim([(a - b) % p for a, b in _zip_pad(xp, x)])
        g = _polygcd(modulus, diff, p)
        if len(g) > 1:
            return False
    xp = _x_pow_p_power(f, modulus, p)
    return _trim([(a - b) % p for a, b in _zip_pad(xp, x)]) == []


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


@dataclass(frozen=True)
class ResidueField:
    """k = F_p[t]/(modulus); ``modulus`` is monic of degree f, low degree first."""

    p: int
    f: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p) or self.p > MAX_P:
            raise ValueError(f"p must be a prime <= {MAX_P}, got {self.p}")
        if not 1 <= self.f <= MAX_F:
            raise ValueError(f"f must lie in 1..{MAX_F}, got {self.f}")
        mod = tuple(c % self.p for c in self.modulus)
        if len(mod) != self.f + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree f")
        object.__setattr__(self, "modulus", mod)
        if not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")

    @classmethod
    def prime(cls, p: int) -> ResidueField:
        return cls(p, 1, (0, 1))

    @property
    def q(self) -> int:
        return self.p ** self.f

    def __call__(self, coords) -> ResidueElement:
        if isinstance(coords, int):
            coords = [coords]
        coords = list(coords)
        if len(coords) > self.f:
            raise ValueError(f"expected at most {self.f} coordinates")
        coords += [0] * (self.f - len(coords))
        return ResidueElement(self, tuple(c % self.p for c in coords))

    def zero(self) -> ResidueElement:
        return self(0)

    def one(self) -> ResidueElement:
        return self(1)

    def gen(self) -> ResidueElement:
        """The class of t (equal to an element of F_p when f = 1)."""
        if self.f == 1:
            return self(-self.modulus[0])
        return self([0, 1])

    def from_index(self, n: int) -> ResidueElement:
        coords = []
        for _ in range(self.f):
            n, r = divmod(n, self.p)
            coords.append(r)
        return ResidueElement(self, tuple(coords))

    def elements(self):
        """All q elements, ordered by ``index``."""
        return [self.from_index(n) for n in range(self.q)]

    @cached_property
    def _mod_list(self):
        return list(self.modulus)

    def to_json(self) -> dict:
        return {"p": self.p, "f": self.f, "modulus": list(self.modulus)}


@dataclass(frozen=True)
class ResidueElement:
    field: ResidueField
    coords: tuple[int, ...]

    @property
    def index(self) -> int:
        return sum(c * self.field.p ** i for i, c in enumerate(self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other) -> ResidueElement:
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, ResidueElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"F_{self.field.q} vs F_{other.field.q}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return ResidueElement(self.field, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return ResidueElement(self.field, tuple(-a % p for a in self.coords))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        k = self.field
        if k.f == 1:
            return ResidueElement(k, (self.coords[0] * other.coords[0] % k.p,))
        r = _polymulmod(self.coords, other.coords, k._mod_list, k.p)
        return k(r)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc, base = self.field.one(), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def inverse(self) -> ResidueElement:
        if self.is_zero():
            raise DivisionByZero("inverse of 0 in the residue field")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __repr__(self):
        return "[" + ",".join(map(str, self.coords)) + "]"

    def to_json(self) -> list[int]:
        return list(self.coords)


def frobenius(a: ResidueElement, s: int = 1) -> ResidueElement:
    """a^(p^s)."""
    k = a.field
    return a ** (k.p ** (s % k.f))


def frobenius_inverse(a: ResidueElement, s: int = 1) -> ResidueElement:
    """The unique b with frobenius(b, s) == a."""
    k = a.field
    return frobenius(a, (-s) % k.f)


def all_vectors(field: ResidueField, length: int):
    """Every tuple of ``length`` field elements (exhaustive enumeration)."""
    return product(field.elements(), repeat=length)
