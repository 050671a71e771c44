"""Square matrices over Q(t): products, inverses, determinants, valuations."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactalg import Poly, RatFn, evaluate, negate_t, poly_gcd, render, residue_inf, val_inf

__all__ = [
    "MatK",
    "SingularMatrixError",
    "char_poly",
    "val_matrix",
    "residue_matrix",
    "specialize_matrix",
    "is_projective_identity",
    "rational_det",
    "rational_mul",
]


class SingularMatrixError(ArithmeticError):
    pass


class PoleError(ZeroDivisionError):
    """Specialization hit a pole of some entry."""


class ModularError(ArithmeticError):
    """A denominator vanished modulo the chosen prime."""


class MatK:
    """Immutable n x n matrix with RatFn entries (row-major)."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(RatFn.coerce(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and non-empty")
        self.rows = rows
        self.n = n

    @classmethod
    def identity(cls, n: int) -> "MatK":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "MatK":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> tuple[RatFn, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "MatK":
        return MatK(zip(*self.rows))

    def __eq__(self, other):
        if not isinstance(other, MatK):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"MatK({render_matrix(self)!r})"

    def __add__(self, other: "MatK") -> "MatK":
        return MatK([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "MatK") -> "MatK":
        return MatK([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return MatK([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, MatK):
            if other.n != self.n:
                raise ValueError("dimension mismatch")
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = RatFn(0)
                    for a, b in zip(r, c):
                        if a.num.coeffs and b.num.coeffs:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return MatK(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "MatK":
        c = RatFn.coerce(c)
        return MatK([[c * a for a in r] for r in self.rows])

    def apply(self, vec: Sequence) -> tuple[RatFn, ...]:
        return tuple(sum((a * RatFn.coerce(x) for a, x in zip(r, vec)), RatFn(0)) for r in self.rows)

    def __pow__(self, k: int) -> "MatK":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = MatK.identity(self.n)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def det(self) -> RatFn:
        return det(self)

    def inverse(self) -> "MatK":
        return inverse(self)

    def map_entries(self, fn) -> "MatK":
        return MatK([[fn(a) for a in r] for r in self.rows])

    def negate_t(self) -> "MatK":
        return self.map_entries(negate_t)

    def is_diagonal(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.n) for j in range(self.n) if i != j)

    def diagonal(self) -> tuple[RatFn, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))


def render_matrix(m: MatK) -> str:
    """Rows separated by ``;``, entries by ``,`` in the exact entry grammar."""
    return "; ".join(", ".join(render(x) for x in r) for r in m.rows)


def det(m: MatK) -> RatFn:
    """Fraction-free Bareiss elimination over Q[t].

    Each row is cleared to polynomials by its denominator lcm first, so the
    only rational-function division happens once at the end.
    """
    n = m.n
    rows = []
    scale = Poly.constant(1)
    for r in m.rows:
        l = Poly.constant(1)
        for x in r:
            l = _lcm(l, x.den)
        rows.append([x.num * l.exact_div(x.den) for x in r])
        scale = scale * l
    sign = 1
    prev = Poly.constant(1)
    for k in range(n - 1):
        if not rows[k][k]:
            for i in range(k + 1, n):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return RatFn(0)
        piv = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * piv - rows[i][k] * rows[k][j]).exact_div(prev)
            rows[i][k] = Poly()
        prev = piv
    d = rows[n - 1][n - 1]
    return RatFn(d.scale(sign), scale)


def _lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def inverse(m: MatK) -> MatK:
    """Gauss-Jordan over K."""
    n = m.n
    aug = [list(r) + [RatFn(1 if i == j else 0) for j in range(n)] for i, r in enumerate(m.rows)]
    for k in range(n):
        piv_row = next((i for i in range(k, n) if aug[i][k]), None)
        if piv_row is None:
            raise SingularMatrixError("singular matrix")
        aug[k], aug[piv_row] = aug[piv_row], aug[k]
        inv = aug[k][k].inv()
        aug[k] = [x * inv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                c = aug[i][k]
                aug[i] = [x - c * y for x, y in zip(aug[i], aug[k])]
    return MatK([r[n:] for r in aug])


def char_poly(m: MatK) -> tuple[RatFn, ...]:
    """Monic characteristic polynomial ``det(x I - M)``, coefficients low to high.

    Faddeev-LeVerrier; fine in characteristic zero.
    """
    n = m.n
    coeffs = [RatFn(0)] * (n + 1)
    coeffs[n] = RatFn(1)
    ident = MatK.identity(n)
    mk = MatK([[0] * n for _ in range(n)])
    for k in range(1, n + 1):
        mk = m * mk + ident.scale(coeffs[n - k + 1])
        tr = sum(((m * mk)[i, i] for i in range(n)), RatFn(0))
        coeffs[n - k] = tr * RatFn(Fraction(-1, k))
    return tuple(coeffs)


def val_matrix(m: MatK) -> tuple[tuple, ...]:
    return tuple(tuple(val_inf(x) for x in r) for r in m.rows)


def residue_matrix(m: MatK) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(residue_inf(x) for x in r) for r in m.rows)


def specialize_matrix(m: MatK, c, p: Optional[int] = None):
    """Evaluate every entry at ``t = c``; reduce mod ``p`` if given.

    Raises PoleError for a genuine pole and ModularError when a denominator
    only vanishes modulo ``p``.
    """
    out = []
    for r in m.rows:
        row = []
        for x in r:
            try:
                v = evaluate(x, c)
            except ZeroDivisionError:
                raise PoleError(f"pole at t = {c}") from None
            if p is not None:
                if v.denominator % p == 0:
                    raise ModularError(f"denominator divisible by {p} at t = {c}")
                v = v.numerator * pow(v.denominator, -1, p) % p
            row.append(v)
        out.append(tuple(row))
    return tuple(out)


def is_projective_identity(m: MatK) -> bool:
    lam = m.rows[0][0]
    if not lam:
        return False
    for i in range(m.n):
        for j in range(m.n):
            x = m.rows[i][j]
            if i == j:
                if x != lam:
                    return False
            elif x:
                return False
    return True


def is_scalar_plain(rows: Sequence[Sequence]) -> bool:
    """Scalar test for specialized (rational or modular) matrices."""
    lam = rows[0][0]
    if not lam:
        return False
    n = len(rows)
    return all(rows[i][j] == (lam if i == j else 0) for i in range(n) for j in range(n))


def rational_mul(a, b, p: Optional[int] = None):
    n = len(a)
    cols = list(zip(*b))
    if p is None:
        return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in a)
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) % p for c in cols) for r in a)


def rational_det(a) -> Fraction:
    """Determinant of a small rational matrix by elimination."""
    rows = [[Fraction(x) for x in r] for r in a]
    n = len(rows)
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if rows[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            d = -d
        d *= rows[k][k]
        for i in range(k + 1, n):
            c = rows[i][k] / rows[k][k]
            if c:
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[k])]
    return d


def cofactor_det(m: MatK) -> RatFn:
    """Laplace expansion along the first row; an independent check on ``det``."""
    n = m.n
    if n == 1:
        return m.rows[0][0]
    total = RatFn(0)
    for j in range(n):
        if not m.rows[0][j]:
            continue
        minor = MatK([[m.rows[i][k] for k in range(n) if k != j] for i in range(1, n)])
        term = m.rows[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


__all__ += ["PoleError", "ModularError", "det", "inverse", "render_matrix", "is_scalar_plain", "cofactor_det"]
