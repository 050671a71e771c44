from fractions import Fraction

import pytest

from schottky.building import ApartmentVertex
from schottky.burau import family_pair
from schottky.certify import (
    Presentation,
    certify_family,
    certify_pair,
    is_generic,
    sweep_family,
    translation_vector,
)
from schottky.exactalg import RatFn, T
from schottky.matqt import MatK
from schottky.oracle import freeness_scan

F = MatK.diag([RatFn(1), -T.inv(), -T])


def test_translation_vector_examples():
    assert translation_vector(F) == (0, 1, -1)
    assert is_generic(F)
    assert not is_generic(MatK.diag([RatFn(1), RatFn(1), T]))
    central = MatK.diag([T, T, T])
    assert translation_vector(central) == (0, 0, 0) and not is_generic(central)
    with pytest.raises(ValueError):
        translation_vector(MatK([[1, 1], [0, 1]]))


def test_translation_vector_of_powers():
    for m in (-3, -1, 2, 4):
        assert translation_vector(F ** m) == tuple(m * x for x in translation_vector(F))


def test_certified_example():
    cert = certify_family(2, 3)
    assert cert.status == "CERTIFIED_FREE"
    assert cert.intersection_status == "UNIQUE"
    assert cert.vertex == ApartmentVertex((-1, 0, 0))
    assert cert.pair_verdicts == {"++": True, "+-": False, "-+": False, "--": True}
    assert cert.residue_det == 3 * 2


def test_burau_case_not_certified():
    cert = certify_family(0, 0)
    assert cert.status == "NOT_CERTIFIED"
    assert cert.pair_verdicts == {"++": False, "+-": False, "-+": False, "--": False}


def test_identity_conjugator_unbounded():
    cert = certify_pair(Presentation(F, MatK.identity(3)))
    assert cert.status == "NOT_CERTIFIED"
    assert cert.intersection_status == "UNBOUNDED"


def test_non_generic_is_degenerate():
    cert = certify_pair(Presentation(MatK.diag([RatFn(1), RatFn(1), T]), family_pair(2, 3)[1]))
    assert cert.status == "DEGENERATE"
    with pytest.raises(ValueError):
        Presentation(MatK([[1, 1], [0, 1]]), MatK.identity(2))


def test_all_pairs_policy_is_stricter():
    assert certify_family(2, 3, "all_pairs").status == "NOT_CERTIFIED"
    with pytest.raises(ValueError):
        certify_family(2, 3, "some_pairs")


@pytest.mark.parametrize("lam", [T, 1 / (1 - T), RatFn(Fraction(-3, 2)) * T ** 2])
def test_rescaling_invariance(lam):
    f, s = family_pair(2, 3)
    base = certify_pair(Presentation(f, s))
    cert = certify_pair(Presentation(f, s.scale(lam)))
    assert cert.status == base.status
    assert cert.vertex == base.vertex


@pytest.mark.parametrize("ab", [(2, 3), (0, 0), (-2, 5)])
def test_swapped_generators(ab):
    f, s = family_pair(*ab)
    assert certify_pair(Presentation(f, s.inverse())).status == certify_pair(Presentation(f, s)).status


def test_sweep_grid_all_certified():
    grid = [-2, 2, 3]
    rows = sweep_family(grid, grid, workers=1)
    assert [(a, b) for a, b, _ in rows] == [(Fraction(a), Fraction(b)) for a in grid for b in grid]
    assert all(c.status == "CERTIFIED_FREE" for _, _, c in rows)


def test_sweep_parallel_matches_serial():
    grid = [0, 2]
    serial = sweep_family(grid, grid, workers=1)
    parallel = sweep_family(grid, grid, workers=2)
    assert [c.to_dict() for *_, c in serial] == [c.to_dict() for *_, c in parallel]


def test_alpha_zero_row():
    rows = sweep_family([0], [-2, 0, 2, 3, Fraction(1, 2)], workers=1)
    assert all(c.status != "CERTIFIED_FREE" for *_, c in rows)


def test_boundary_diagnostics():
    for ab in [(-1, 2), (3, 1), (-1, 1)]:
        cert = certify_family(*ab)
        assert cert.status in ("NOT_CERTIFIED", "DEGENERATE")
        assert cert.residue_det == 0
        assert any("residue determinant" in note for note in cert.notes)


def test_certified_region_matches_residue_and_verdicts():
    # certified iff alpha not in {0, -1} and beta not in {0, 1}
    values = [-2, -1, 0, 1, 2, Fraction(1, 2)]
    for a, b, cert in sweep_family(values, values, workers=1):
        expect = a not in (0, -1) and b not in (0, 1)
        assert (cert.status == "CERTIFIED_FREE") == expect, (a, b)


def test_certified_pair_has_no_short_relation():
    f, s = family_pair(2, 3)
    assert certify_pair(Presentation(f, s)).status == "CERTIFIED_FREE"
    assert freeness_scan((f, s * f * s.inverse()), 5).relation is None


def test_to_dict_is_json_ready():
    import json

    d = certify_family(Fraction(1, 2), 3).to_dict()
    json.dumps(d)
    assert d["status"] == "CERTIFIED_FREE"
    assert d["vertex"] == "L[0,1,1]"
    assert set(d["pair_verdicts"]) == {"++", "+-", "-+", "--"}
