import io
import random

import pytest

from schottky.building import ApartmentVertex, VertexClass, diag_translate
from schottky.burau import family_generators
from schottky.exactalg import RatFn, T
from schottky.matqt import MatK, PoleError
from schottky.oracle import (
    DEFAULT_PRIME,
    INVERSE,
    F2Word,
    count_reduced,
    displacement_profile,
    eval_word,
    freeness_scan,
    reduced_words,
)

F = MatK.diag([RatFn(1), -T.inv(), -T])
BASE = VertexClass.standard((-1, 0, 0))


def test_reduced_word_counts():
    words = list(reduced_words(2))
    assert len([w for w in words if len(w) == 1]) == 4
    assert len(words) == 4 + 12
    for length in range(1, 11):
        assert count_reduced(length) == 4 * 3 ** (length - 1)
    by_len = {}
    for w in reduced_words(6):
        by_len[len(w)] = by_len.get(len(w), 0) + 1
        assert not any(INVERSE[a] == b for a, b in zip(w.letters, w.letters[1:]))
    assert by_len == {k: 4 * 3 ** (k - 1) for k in range(1, 7)}


def test_enumeration_order():
    words = [str(w) for w in reduced_words(2)]
    assert words[:4] == ["g1", "g1^-1", "g2", "g2^-1"]
    assert words[4:7] == ["g1 g1", "g1 g2", "g1 g2^-1"]
    level3 = [w.letters for w in reduced_words(3) if len(w) == 3]
    assert level3 == sorted(level3)


def test_word_parse_and_reduction():
    w = F2Word.parse("g1 g2^-1 g1^-1")
    assert str(w) == "g1 g2^-1 g1^-1"
    assert str(w.inverse()) == "g1 g2 g1^-1"
    with pytest.raises(ValueError):
        F2Word.parse("g1 g1^-1")


def test_eval_word_examples():
    pair = family_generators(0, 0)
    m, trivial = eval_word(F2Word.parse("g1 g1"), pair)
    assert m == F * F and not trivial
    assert eval_word(F2Word.parse("g1 g2^-1"), (F, F))[1]
    d = MatK.diag([RatFn(1), RatFn(2), RatFn(3)])
    assert eval_word(F2Word.parse("g1 g2 g1^-1 g2^-1"), (F, d))[1]
    with pytest.raises(PoleError):
        eval_word(F2Word.parse("g2"), pair, "specialized", c=1)


def test_scan_controls():
    res = freeness_scan((F, F), 2)
    assert str(res.relation) == "g1 g2^-1"
    d = MatK.diag([RatFn(1), RatFn(2), RatFn(3)])
    res = freeness_scan((F, d), 4)
    assert str(res.relation) == "g1 g2 g1^-1 g2^-1" and len(res.relation) == 4
    exact = freeness_scan((F, d), 4, "exact")
    assert exact.relation == res.relation and exact.words_checked == res.words_checked


def test_scan_projective_scalar_counts():
    # g2 = t * g1 makes g1 g2^-1 scalar but not the identity
    assert str(freeness_scan((F, F.scale(T)), 3).relation) == "g1 g2^-1"


@pytest.mark.parametrize("ab", [(2, 3), (0, 0)])
def test_scan_family_short(ab):
    res = freeness_scan(family_generators(*ab), 6)
    assert res.relation is None
    assert res.words_checked == sum(count_reduced(k) for k in range(1, 7))


def test_scan_exact_agrees_short():
    pair = family_generators(2, 3)
    assert freeness_scan(pair, 3, "exact").relation is None


def test_scan_progress_stream():
    buf = io.StringIO()
    freeness_scan((F, F.scale(2)), 2, progress=buf)
    assert buf.getvalue() == "" or buf.getvalue().startswith("length 1")


def test_scan_retries_pole_points():
    # poles at t = 7 force the next point in the retry sequence
    g = MatK.diag([RatFn(1), 1 / (T - 7), T])
    res = freeness_scan((g, F), 2)
    assert res.relation is None
    assert res.points[0] == 11


def free_reduce(letters):
    out = []
    for x in letters:
        if out and INVERSE[out[-1]] == x:
            out.pop()
        else:
            out.append(x)
    return F2Word(tuple(out))


def test_screen_soundness_on_trivial_words():
    rng = random.Random(14)
    m = MatK([[1, T, 0], [0, 1, 1], [1, 0, 2 - T]])
    # g2 = t^2 * g1^3 plants the relation g1^3 g2^-1 and all its conjugates
    pair = (m, (m ** 3).scale(T ** 2))
    base = F2Word.parse("g1 g1 g1 g2^-1").letters
    short = list(reduced_words(2))
    checked = 0
    for u in rng.sample(short, 15):
        w = free_reduce(u.letters + base + u.inverse().letters)
        assert eval_word(w, pair)[1]
        for c, p in [(7, None), (11, DEFAULT_PRIME), (13, None)]:
            try:
                assert eval_word(w, pair, "specialized", c, p)[1]
            except PoleError:
                continue
            checked += 1
    assert checked >= 15


def test_screen_one_sided():
    rng = random.Random(15)
    pair = family_generators(2, 3)
    words = list(reduced_words(4))
    for w in rng.sample(words, 100):
        screened = eval_word(w, pair, "specialized", 7)[1] and eval_word(w, pair, "specialized", 11, DEFAULT_PRIME)[1]
        if not screened:
            assert not eval_word(w, pair)[1]


def test_eval_homomorphism():
    rng = random.Random(16)
    pair = family_generators(2, 3)
    words = list(reduced_words(3))
    for _ in range(10):
        u, v = rng.choice(words), rng.choice(words)
        if INVERSE[u.letters[-1]] != v.letters[0]:
            uv = F2Word(u.letters + v.letters)
            assert eval_word(uv, pair)[0] == eval_word(u, pair)[0] * eval_word(v, pair)[0]


def test_displacement_examples():
    pair = family_generators(0, 0)
    rows = displacement_profile(pair, BASE, 2)
    assert rows[0] == (F2Word(()), 0)
    dist = {str(w): d for w, d in rows}
    moved = diag_translate(F, ApartmentVertex((-1, 0, 0)))
    assert dist["g1"] == max(moved.exps) - min(moved.exps) == 2
    for w, d in rows[1:]:
        assert dist[str(w.inverse())] == d
    assert len(rows) == 1 + 4 + 12
