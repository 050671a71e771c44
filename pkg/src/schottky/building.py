"""Vertices of the Bruhat-Tits building of GL_n over (Q(t), val at infinity).

A vertex is the homothety class of an O-lattice, O being the valuation ring
at infinity.  We store a lattice by a basis matrix whose columns O-span it.
The standard apartment consists of the classes ``L_a = sum_i O pi^{a_i} e_i``.

Sign convention used throughout: ``[s L_b] = [L_{-a}]`` exactly when
``diag(pi^a) s diag(pi^b)`` lies in GL_n(O).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .exactalg import INFINITY, RatFn, uniformizer_power, val_inf
from .matqt import MatK, SingularMatrixError, det, residue_matrix, val_matrix

__all__ = [
    "ApartmentVertex",
    "VertexClass",
    "RelPos",
    "IntersectionResult",
    "vertex_eq",
    "diag_translate",
    "snf_dvr",
    "relative_position",
    "vertex_distance",
    "tropical_assignment",
    "apartment_intersection",
    "brute_force_intersection",
    "pi_diag",
]


def pi_diag(exps: Sequence[int]) -> MatK:
    return MatK.diag([uniformizer_power(e) for e in exps])


@dataclass(frozen=True)
class ApartmentVertex:
    """Lattice class ``[L_a]`` in the standard apartment, stored with min exponent 0."""

    exps: tuple[int, ...]

    def __init__(self, exps: Sequence[int]):
        m = min(exps)
        object.__setattr__(self, "exps", tuple(int(e) - m for e in exps))

    @property
    def n(self) -> int:
        return len(self.exps)

    def lattice(self) -> "VertexClass":
        return VertexClass(pi_diag(self.exps))

    def __str__(self):
        return "L[" + ",".join(str(e) for e in self.exps) + "]"


@dataclass(frozen=True)
class VertexClass:
    basis: MatK

    def act(self, g: MatK) -> "VertexClass":
        return VertexClass(g * self.basis)

    @classmethod
    def standard(cls, exps: Sequence[int]) -> "VertexClass":
        return cls(pi_diag(exps))


@dataclass(frozen=True)
class RelPos:
    exps: tuple[int, ...]

    @property
    def distance(self) -> int:
        return self.exps[0] - self.exps[-1]


@dataclass
class IntersectionResult:
    status: str  # EMPTY | UNIQUE | FINITE | UNBOUNDED
    vertices: list = field(default_factory=list)
    tropical_minimum: object = None
    val_det: object = None

    def common_vertices(self) -> list[ApartmentVertex]:
        return [ApartmentVertex([-x for x in a]) for a, _ in self.vertices]


def _is_integral(m: MatK) -> bool:
    return all(val_inf(x) >= 0 for r in m.rows for x in r)


def vertex_eq(g: VertexClass, h: VertexClass) -> bool:
    try:
        w = g.basis.inverse() * h.basis
    except SingularMatrixError:
        raise SingularMatrixError("singular lattice basis") from None
    n = w.n
    d = val_inf(det(w))
    if d % n:
        return False
    k = d // n
    w = w.scale(uniformizer_power(-k))
    return _is_integral(w) and val_inf(det(w)) == 0


def diag_translate(u: MatK, v: ApartmentVertex) -> ApartmentVertex:
    if not u.is_diagonal():
        raise ValueError("expected a diagonal matrix")
    shifts = []
    for x in u.diagonal():
        if not x:
            raise ValueError("zero diagonal entry")
        shifts.append(val_inf(x))
    return ApartmentVertex([a + s for a, s in zip(v.exps, shifts)])


def snf_dvr(m: MatK) -> tuple[tuple[int, ...], MatK, MatK]:
    """Normal form over O: returns ``(d, left, right)`` with
    ``left * m * right == diag(pi^d)``, ``d`` ascending, left/right in GL_n(O).
    """
    n = m.n
    a = [list(r) for r in m.rows]
    left = [[RatFn(1 if i == j else 0) for j in range(n)] for i in range(n)]
    right = [[RatFn(1 if i == j else 0) for j in range(n)] for i in range(n)]
    exps = []
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                v = val_inf(a[i][j])
                if v is not INFINITY and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            raise SingularMatrixError("singular matrix")
        d, pi_, pj = best
        a[k], a[pi_] = a[pi_], a[k]
        left[k], left[pi_] = left[pi_], left[k]
        for r in a:
            r[k], r[pj] = r[pj], r[k]
        for r in right:
            r[k], r[pj] = r[pj], r[k]
        piv = a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                c = a[i][k] / piv
                a[i] = [x - c * y for x, y in zip(a[i], a[k])]
                left[i] = [x - c * y for x, y in zip(left[i], left[k])]
        for j in range(k + 1, n):
            if a[k][j]:
                c = a[k][j] / piv
                for r in a:
                    r[j] = r[j] - c * r[k]
                for r in right:
                    r[j] = r[j] - c * r[k]
        # rescale the pivot row by a unit so the pivot is exactly pi^d
        u = uniformizer_power(d) / piv
        a[k] = [x * u for x in a[k]]
        left[k] = [x * u for x in left[k]]
        exps.append(d)
    return tuple(exps), MatK(left), MatK(right)


def relative_position(x: VertexClass, y: VertexClass) -> RelPos:
    d, _, _ = snf_dvr(x.basis.inverse() * y.basis)
    lo = min(d)
    return RelPos(tuple(sorted((e - lo for e in d), reverse=True)))


def vertex_distance(x: VertexClass, y: VertexClass) -> int:
    return relative_position(x, y).distance


def tropical_assignment(vals) -> tuple[object, list[tuple[int, ...]]]:
    """Minimum of ``sum_i V[i][sigma(i)]`` over permutations, with all minimizers.

    Brute force over n! permutations; intended for n <= 6.
    """
    n = len(vals)
    best = INFINITY
    arg: list[tuple[int, ...]] = []
    for perm in itertools.permutations(range(n)):
        total = 0
        for i, j in enumerate(perm):
            total = total + vals[i][j]
            if total is INFINITY:
                break
        if total is INFINITY:
            continue
        if best is INFINITY or total < best:
            best, arg = total, [perm]
        elif total == best:
            arg.append(perm)
    if best is INFINITY:
        return INFINITY, list(itertools.permutations(range(n)))
    return best, arg


def _normalize_pair(a: Sequence[int], b: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    c = min(a)
    return tuple(x - c for x in a), tuple(x + c for x in b)


def _feasible(vals, a, b) -> bool:
    n = len(vals)
    for i in range(n):
        for j in range(n):
            v = vals[i][j]
            if v is not INFINITY and a[i] + b[j] + v < 0:
                return False
    return True


def apartment_intersection(s: MatK) -> IntersectionResult:
    """Common vertices of the standard apartment and ``s`` applied to it.

    Solutions are pairs ``(a, b)`` with ``a_i + b_j + val(s_ij) >= 0`` and
    ``sum(a) + sum(b) + val(det s) == 0``, modulo ``(a + c, b - c)``; each one
    is the vertex ``[L_{-a}] == [s L_b]``.  Reported with ``min(a) == 0``.
    """
    d = det(s)
    if not d:
        raise SingularMatrixError("singular matrix")
    n = s.n
    vals = val_matrix(s)
    vdet = val_inf(d)
    tmin, perms = tropical_assignment(vals)
    if tmin is INFINITY or tmin != vdet:
        return IntersectionResult("EMPTY", [], tmin, vdet)
    sigma = perms[0]
    dist = _difference_bounds(vals, sigma)
    if any(dist[0][k] is None or dist[k][0] is None for k in range(n)):
        a0 = [dist[0][k] if dist[0][k] is not None else 0 for k in range(n)]
        sol = _from_a(vals, sigma, a0)
        found = [_normalize_pair(*sol)] if _feasible(vals, *sol) else []
        return IntersectionResult("UNBOUNDED", found, tmin, vdet)
    ranges = [range(-dist[k][0], dist[0][k] + 1) for k in range(1, n)]
    found = []
    for rest in itertools.product(*ranges):
        a = (0,) + rest
        if any(a[k] - a[i] > dist[i][k] for i in range(n) for k in range(n)):
            continue
        a_, b_ = _from_a(vals, sigma, a)
        if _feasible(vals, a_, b_):
            found.append(_normalize_pair(a_, b_))
    found = sorted(set(found))
    status = "UNIQUE" if len(found) == 1 else "FINITE"
    return IntersectionResult(status, found, tmin, vdet)


def _difference_bounds(vals, sigma):
    """Shortest-path bounds on ``a_k - a_i`` for solutions tight along ``sigma``.

    Tightness gives ``b[sigma(i)] = -V[i][sigma(i)] - a[i]``; the remaining
    constraints read ``a_k - a_i <= V[i][sigma(k)] - V[k][sigma(k)]``.
    ``None`` marks an unbounded difference.
    """
    n = len(vals)
    dist = [[0 if i == k else None for k in range(n)] for i in range(n)]
    for i in range(n):
        for k in range(n):
            v = vals[i][sigma[k]]
            if i == k or v is INFINITY:
                continue
            w = v - vals[k][sigma[k]]
            if dist[i][k] is None or w < dist[i][k]:
                dist[i][k] = w
    for m in range(n):
        for i in range(n):
            for k in range(n):
                if dist[i][m] is not None and dist[m][k] is not None:
                    w = dist[i][m] + dist[m][k]
                    if dist[i][k] is None or w < dist[i][k]:
                        dist[i][k] = w
    return dist


def leading_candidate(s: MatK) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Exponents ``(a, b)`` making ``diag(pi^a) s diag(pi^b)`` integral with an
    assignment of units; the lattices meet iff its residue is invertible."""
    vals = val_matrix(s)
    tmin, perms = tropical_assignment(vals)
    if tmin is INFINITY:
        raise SingularMatrixError("singular matrix")
    sigma = perms[0]
    dist = _difference_bounds(vals, sigma)
    a0 = [dist[0][k] if dist[0][k] is not None else 0 for k in range(len(vals))]
    return _normalize_pair(*_from_a(vals, sigma, a0))


def _from_a(vals, sigma, a) -> tuple[tuple[int, ...], tuple[int, ...]]:
    n = len(vals)
    b = [0] * n
    for i in range(n):
        b[sigma[i]] = -vals[i][sigma[i]] - a[i]
    return tuple(a), tuple(b)


def brute_force_intersection(s: MatK, bound: int = 6, pin: int = 0) -> list:
    """Independent check: scan every ``(a, b)`` in ``[-bound, bound]^(2n)``
    with ``a[pin] == 0`` against the raw constraint system.

    Membership is decided by ``diag(pi^a) s diag(pi^b)`` having integral
    valuations entrywise and a unit determinant.
    """
    import numpy as np

    n = s.n
    big = 10 ** 6
    v = np.array([[big if x is INFINITY else x for x in r] for r in val_matrix(s)], dtype=np.int64)
    vdet = val_inf(det(s))
    axis = np.arange(-bound, bound + 1)
    grids = np.meshgrid(*([axis] * (2 * n - 1)), indexing="ij")
    flat = [g.ravel() for g in grids]
    a_cols = flat[:pin] + [np.zeros_like(flat[0])] + flat[pin:n - 1]
    b_cols = flat[n - 1:]
    ok = np.ones_like(flat[0], dtype=bool)
    for i in range(n):
        for j in range(n):
            ok &= a_cols[i] + b_cols[j] + v[i, j] >= 0
    total = sum(a_cols) + sum(b_cols) + vdet
    ok &= total == 0
    out = set()
    for idx in np.nonzero(ok)[0]:
        a = tuple(int(c[idx]) for c in a_cols)
        b = tuple(int(c[idx]) for c in b_cols)
        out.add(_normalize_pair(a, b))
    return sorted(out)


def change_of_basis(s: MatK, a: Sequence[int], b: Sequence[int]) -> MatK:
    """``diag(pi^a) s diag(pi^b)``: coordinates of ``s L_b`` in the basis of ``L_{-a}``."""
    return pi_diag(a) * s * pi_diag(b)


def residue_change_of_basis(s: MatK, a: Sequence[int], b: Sequence[int]):
    return residue_matrix(change_of_basis(s, a, b))


__all__ += ["change_of_basis", "residue_change_of_basis", "leading_candidate"]
