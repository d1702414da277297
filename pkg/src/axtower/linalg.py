"""Row reduction and kernels over a residue field."""

from __future__ import annotations

from itertools import product

from .field import ResidueElement, ResidueField


def rref(rows: list, field: ResidueField) -> tuple:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    a = [list(r) for r in rows]
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def kernel_basis(rows: list, ncols: int, field: ResidueField) -> list:
    """Basis of {v : rows · v = 0}, one vector per free column with that entry 1."""
    if not rows:
        red, pivots = [], []
    else:
        red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


ENUMERATION_LIMIT = 1 << 14


def first_kernel_vector(basis: list, field: ResidueField) -> list | None:
    """The nonzero kernel vector whose coordinate indices are lexicographically least.

    Falls back to the first basis vector scaled to a leading 1 when the kernel
    is too large to enumerate.
    """
    if not basis:
        return None
    if field.q ** len(basis) > ENUMERATION_LIMIT:
        v = basis[0]
        lead = next(x for x in v if not x.is_zero())
        return [x / lead for x in v]
    best = None
    for coeffs in product(field.elements(), repeat=len(basis)):
        if all(c.is_zero() for c in coeffs):
            continue
        v = [sum((c * b[i] for c, b in zip(coeffs, basis)), field.zero()) for i in range(len(basis[0]))]
        key = tuple(x.index for x in v)
        if best is None or key < best[0]:
            best = (key, v)
    return best[1]


def mat_vec(rows: list, v: list, field: ResidueField) -> list[ResidueElement]:
    return [sum((x * y for x, y in zip(row, v)), field.zero()) for row in rows]
