"""Chambers of the spherical link at a vertex, as flags over the residue field Q.

At a vertex ``[L]`` the link is the flag complex of ``L / pi L``, a Q-vector
space whose basis is the residue of the lattice basis of ``L``.  Subspaces are
kept in reduced row echelon form so equal subspaces compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .building import VertexClass, pi_diag
from .exactalg import INFINITY, uniformizer_power, val_inf
from .matqt import SingularMatrixError, rational_det, residue_matrix

__all__ = [
    "Flag",
    "rref",
    "subspace_dim",
    "intersection_dim",
    "flag_from_chain",
    "sector_flags",
    "transport_flags",
    "opposite",
    "plane_criterion",
    "DegenerateError",
]

Subspace = tuple[tuple[Fraction, ...], ...]


class DegenerateError(ValueError):
    pass


def rref(rows: Sequence[Sequence]) -> Subspace:
    """Nonzero rows of the reduced row echelon form."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    out_rows = 0
    for c in range(ncols):
        piv = next((i for i in range(out_rows, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[out_rows], m[piv] = m[piv], m[out_rows]
        p = m[out_rows][c]
        m[out_rows] = [x / p for x in m[out_rows]]
        for i in range(len(m)):
            if i != out_rows and m[i][c]:
                k = m[i][c]
                m[i] = [x - k * y for x, y in zip(m[i], m[out_rows])]
        out_rows += 1
    return tuple(tuple(r) for r in m[:out_rows])


def subspace_dim(rows: Sequence[Sequence]) -> int:
    return len(rref(rows))


def intersection_dim(u: Subspace, w: Subspace) -> int:
    return len(u) + len(w) - subspace_dim(list(u) + list(w))


def _intersection(u: Subspace, w: Subspace) -> Subspace:
    """Basis of ``u & w`` via the kernel of ``[u; -w]^T``."""
    n = len(u) + len(w)
    if not u or not w:
        return ()
    dim = len(u[0])
    # columns: coefficients (x for u, y for w); equations: sum x_i u_i - sum y_j w_j = 0
    eqs = [[u[i][k] for i in range(len(u))] + [-w[j][k] for j in range(len(w))] for k in range(dim)]
    red = rref(eqs)
    pivots = [next(c for c, x in enumerate(r) if x) for r in red]
    free = [c for c in range(n) if c not in pivots]
    vecs = []
    for fcol in free:
        x = [Fraction(0)] * n
        x[fcol] = Fraction(1)
        for r, pc in zip(red, pivots):
            x[pc] = -r[fcol]
        vecs.append([sum(x[i] * u[i][k] for i in range(len(u))) for k in range(dim)])
    return rref(vecs)


@dataclass(frozen=True)
class Flag:
    """Full flag ``V_1 < V_2 < ... < V_{n-1}`` in Q^n; ``V_i`` has dimension i."""

    subspaces: tuple[Subspace, ...]
    n: int

    def __post_init__(self):
        if len(self.subspaces) != self.n - 1:
            raise ValueError("flag must have n-1 subspaces")
        for i, v in enumerate(self.subspaces):
            if len(v) != i + 1:
                raise ValueError(f"subspace {i + 1} has dimension {len(v)}")
            if i and intersection_dim(self.subspaces[i - 1], v) != i:
                raise ValueError("subspaces are not nested")

    @classmethod
    def from_spans(cls, spans: Sequence[Sequence[Sequence]], n: int) -> "Flag":
        return cls(tuple(rref(s) for s in spans), n)

    def to_lists(self) -> list[list[list[str]]]:
        return [[[_fmt(x) for x in row] for row in v] for v in self.subspaces]


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _normalize_into(base: VertexClass, lat: VertexClass):
    """Coordinates of ``lat`` in the basis of ``base`` rescaled by the pi-power
    that puts it inside ``base`` and no further."""
    w = base.basis.inverse() * lat.basis
    lo = min(val_inf(x) for r in w.rows for x in r)
    if lo is INFINITY:
        raise SingularMatrixError("singular lattice basis")
    return w.scale(uniformizer_power(-lo))


def flag_from_chain(x: VertexClass, chain: Sequence[VertexClass]) -> Flag:
    """Flag of images ``L_i / pi L`` for an ascending chain ``pi L < L_1 < ... < L``.

    Each member of ``chain`` is taken up to homothety; it is rescaled so it
    sits inside ``L`` without sitting inside ``pi L``.
    """
    n = x.basis.n
    coords = [_normalize_into(x, lat) for lat in chain]
    spans = []
    for w in coords:
        # pi L must lie in L_i: pi * w^{-1} integral
        winv = w.inverse()
        if any(val_inf(e) < -1 for r in winv.rows for e in r):
            raise ValueError("chain member does not contain pi L")
        res = residue_matrix(w)
        cols = [tuple(res[i][j] for i in range(n)) for j in range(n)]
        spans.append(rref(cols))
    dims = [len(s) for s in spans]
    if dims != list(range(1, n)):
        raise ValueError(f"chain is not a strict full chain between pi L and L (dims {dims})")
    for i in range(1, len(coords)):
        inner = coords[i].inverse() * coords[i - 1]
        if any(val_inf(e) < 0 for r in inner.rows for e in r):
            raise ValueError("chain is not nested")
    return Flag(tuple(spans), n)


def _check_generic(translation: Sequence[int]) -> None:
    if len(set(translation)) != len(translation):
        raise ValueError("non-generic translation")


def wall_chain(translation: Sequence[int], x: Sequence[int]) -> list[VertexClass]:
    """Lattices of the leading chamber at ``L_x`` in the direction ``translation``.

    The chamber vertices are ``x + 1_{top k}`` (indicator of the k largest
    translation coordinates); listed in ascending lattice order.
    """
    _check_generic(translation)
    n = len(translation)
    order = sorted(range(n), key=lambda i: -translation[i])
    chain = []
    for k in range(n - 1, 0, -1):
        top = set(order[:k])
        chain.append(VertexClass(pi_diag([x[i] + (1 if i in top else 0) for i in range(n)])))
    return chain


def sector_flags(translation: Sequence[int], x: Sequence[int]) -> tuple[Flag, Flag]:
    """Leading-chamber flags at ``L_x`` of the sectors toward ``+translation`` and ``-translation``."""
    _check_generic(translation)
    x = tuple(getattr(x, "exps", x))
    base = VertexClass(pi_diag(x))
    plus = flag_from_chain(base, wall_chain(translation, x))
    minus = flag_from_chain(base, wall_chain([-c for c in translation], x))
    return plus, minus


def transport_flags(m_residue, flags: Sequence[Flag]) -> tuple[Flag, ...]:
    """Push flags through a residue change of basis (columns are basis images)."""
    n = len(m_residue)
    if rational_det(m_residue) == 0:
        raise DegenerateError("degenerate parameters: singular residue change of basis")
    out = []
    for fl in flags:
        spans = []
        for v in fl.subspaces:
            spans.append([tuple(sum(Fraction(m_residue[i][k]) * row[k] for k in range(n)) for i in range(n)) for row in v])
        out.append(Flag.from_spans(spans, n))
    return tuple(out)


def opposite(f: Flag, g: Flag) -> bool:
    """General position: ``dim(F_i & G_{n-i}) == 0`` for every i."""
    if f.n != g.n:
        raise ValueError("flags live in different ambient spaces")
    n = f.n
    for i in range(1, n):
        if intersection_dim(f.subspaces[i - 1], g.subspaces[n - i - 1]) != 0:
            return False
    return True


def plane_criterion(f: Flag, g: Flag) -> bool:
    """Rank-3 criterion: the planes meet in a line that is neither special line."""
    if f.n != 3 or g.n != 3:
        raise ValueError("plane criterion is for flags in Q^3")
    f1, f2 = f.subspaces
    g1, g2 = g.subspaces
    line = _intersection(f2, g2)
    if len(line) != 1:
        return False
    return line != f1 and line != g1
