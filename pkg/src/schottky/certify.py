"""Free-group certificates for pairs acting on the building of GL_n(Q(t)).

A pair is presented as ``(f, conj f conj^-1)`` with ``f`` diagonal.  The
first generator's invariant apartment is the standard one, the second's is
``conj`` applied to it.  When these meet in one vertex and the leading
chambers of the sectors swallowing the axis ends are opposite in the link
there, the pair generates a free group.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .building import (
    ApartmentVertex,
    apartment_intersection,
    change_of_basis,
    leading_candidate,
)
from .burau import family_pair
from .exactalg import val_inf
from .matqt import MatK, rational_det, residue_matrix
from .sphlink import DegenerateError, opposite, sector_flags, transport_flags

__all__ = [
    "Presentation",
    "Certificate",
    "translation_vector",
    "is_generic",
    "certify_pair",
    "certify_family",
    "sweep_family",
    "POLICIES",
    "PAIR_KEYS",
]

log = logging.getLogger(__name__)

POLICIES = ("matched_ends", "all_pairs")
PAIR_KEYS = ("++", "+-", "-+", "--")


@dataclass(frozen=True)
class Presentation:
    f_diag: MatK
    conj: MatK

    def __post_init__(self):
        if not self.f_diag.is_diagonal():
            raise ValueError("first generator must be diagonal")
        if any(not x for x in self.f_diag.diagonal()):
            raise ValueError("first generator must be invertible")

    def generators(self) -> tuple[MatK, MatK]:
        return self.f_diag, self.conj * self.f_diag * self.conj.inverse()


@dataclass
class Certificate:
    status: str  # CERTIFIED_FREE | NOT_CERTIFIED | DEGENERATE
    policy: str
    intersection_status: Optional[str] = None
    vertex: Optional[ApartmentVertex] = None
    a: Optional[tuple[int, ...]] = None
    b: Optional[tuple[int, ...]] = None
    translations: tuple = ()
    residue: Optional[tuple] = None
    residue_det: Optional[Fraction] = None
    flags: dict = field(default_factory=dict)
    pair_verdicts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "policy": self.policy,
            "intersection_status": self.intersection_status,
            "vertex": None if self.vertex is None else str(self.vertex),
            "a": None if self.a is None else list(self.a),
            "b": None if self.b is None else list(self.b),
            "translations": [list(v) for v in self.translations],
            "residue_change_of_basis": None if self.residue is None else [[_q(x) for x in r] for r in self.residue],
            "residue_det": None if self.residue_det is None else _q(self.residue_det),
            "flags": {k: v.to_lists() for k, v in self.flags.items()},
            "pair_verdicts": dict(self.pair_verdicts),
            "notes": list(self.notes),
        }


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def translation_vector(f_diag: MatK) -> tuple[int, ...]:
    """Valuations of the diagonal, shifted so the first coordinate is 0."""
    if not f_diag.is_diagonal():
        raise ValueError("expected a diagonal matrix")
    vals = [val_inf(x) for x in f_diag.diagonal()]
    if any(not isinstance(v, int) for v in vals):
        raise ValueError("zero diagonal entry")
    return tuple(v - vals[0] for v in vals)


def is_generic(f_diag: MatK) -> bool:
    tv = translation_vector(f_diag)
    return len(set(tv)) == len(tv)


def _policy_ok(verdicts: dict, policy: str) -> bool:
    if policy == "all_pairs":
        return all(verdicts.values())
    # either end assignment of g_2 may be used; g_2 -> g_2^-1 preserves freeness
    return (verdicts["++"] and verdicts["--"]) or (verdicts["+-"] and verdicts["-+"])


def certify_pair(p: Presentation, policy: str = "matched_ends") -> Certificate:
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    cert = Certificate("NOT_CERTIFIED", policy)
    tv = translation_vector(p.f_diag)
    # g_2 is conjugate to g_1, so it translates its apartment by the same vector
    cert.translations = (tv, tv)
    if not is_generic(p.f_diag):
        cert.status = "DEGENERATE"
        cert.notes.append("non-generic generator: translation vector has repeated entries")
        return cert

    inter = apartment_intersection(p.conj)
    cert.intersection_status = inter.status
    if inter.status != "UNIQUE":
        if inter.status == "EMPTY":
            cert.notes.append(
                f"apartments disjoint: val det = {inter.val_det} exceeds tropical minimum {inter.tropical_minimum}"
            )
            a0, b0 = leading_candidate(p.conj)
            rdet = rational_det(residue_matrix(change_of_basis(p.conj, a0, b0)))
            cert.notes.append(f"residue determinant at leading candidate a={list(a0)}, b={list(b0)}: {_q(rdet)}")
            cert.residue_det = rdet
        elif inter.status == "UNBOUNDED":
            cert.notes.append("apartment intersection is unbounded")
        else:
            cert.notes.append(f"unsupported configuration: intersection has {len(inter.vertices)} vertices")
        return cert

    a, b = inter.vertices[0]
    cert.a, cert.b = a, b
    cert.vertex = ApartmentVertex([-x for x in a])
    x_exps = tuple(-x for x in a)
    res = residue_matrix(change_of_basis(p.conj, a, b))
    cert.residue = res
    cert.residue_det = rational_det(res)
    f_plus, f_minus = sector_flags(tv, x_exps)
    try:
        g_plus, g_minus = transport_flags(res, sector_flags(tv, b))
    except DegenerateError as exc:
        cert.status = "DEGENERATE"
        cert.notes.append(str(exc))
        return cert
    cert.flags = {"f+": f_plus, "f-": f_minus, "g+": g_plus, "g-": g_minus}
    cert.pair_verdicts = {
        "++": opposite(f_plus, g_plus),
        "+-": opposite(f_plus, g_minus),
        "-+": opposite(f_minus, g_plus),
        "--": opposite(f_minus, g_minus),
    }
    cert.notes.append("single common vertex with nonzero translation: translation length exceeds intersection length")
    if _policy_ok(cert.pair_verdicts, policy):
        cert.status = "CERTIFIED_FREE"
    else:
        cert.notes.append(f"oppositeness requirement of policy {policy} not met")
    return cert


def certify_family(alpha, beta, policy: str = "matched_ends") -> Certificate:
    f, s = family_pair(alpha, beta)
    cert = certify_pair(Presentation(f, s), policy)
    alpha, beta = Fraction(alpha), Fraction(beta)
    cert.notes.append(f"family residue determinant (alpha+1)(beta-1) = {_q((alpha + 1) * (beta - 1))}")
    return cert


def _family_point(args) -> Certificate:
    alpha, beta, policy = args
    return certify_family(alpha, beta, policy)


def default_workers() -> int:
    env = os.environ.get("SCHOTTKY_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def sweep_family(
    alphas: Sequence, betas: Sequence, policy: str = "matched_ends", workers: Optional[int] = None
) -> list[tuple[Fraction, Fraction, Certificate]]:
    """One certificate per grid point, alpha-major."""
    points = [(Fraction(a), Fraction(b), policy) for a in alphas for b in betas]
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            certs = list(pool.map(_family_point, points))
    else:
        certs = [_family_point(pt) for pt in points]
    log.debug("swept %d points", len(points))
    return [(a, b, c) for (a, b, _), c in zip(points, certs)]
