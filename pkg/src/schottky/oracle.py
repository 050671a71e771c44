"""Brute-force relation search in the group generated by a pair of matrices.

Words are freely reduced over the letters ``g1, g1^-1, g2, g2^-1`` (coded 0..3,
inverse pairs 0/1 and 2/3) and enumerated by length, lexicographically.  A
word is a relation when its matrix is scalar: scalars act trivially on the
building, so projective triviality is the relevant notion here.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .building import VertexClass, vertex_distance
from .matqt import (
    MatK,
    ModularError,
    PoleError,
    is_projective_identity,
    is_scalar_plain,
    rational_mul,
    specialize_matrix,
)

__all__ = [
    "F2Word",
    "reduced_words",
    "count_reduced",
    "eval_word",
    "freeness_scan",
    "displacement_profile",
    "ScanResult",
    "SPECIALIZATION_POINTS",
    "DEFAULT_PRIME",
]

log = logging.getLogger(__name__)

LETTERS = ("g1", "g1^-1", "g2", "g2^-1")
INVERSE = (1, 0, 3, 2)
DEFAULT_PRIME = 1000003
SPECIALIZATION_POINTS = (7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@dataclass(frozen=True)
class F2Word:
    letters: tuple[int, ...]

    def __post_init__(self):
        for x, y in zip(self.letters, self.letters[1:]):
            if INVERSE[x] == y:
                raise ValueError("word is not freely reduced")

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "F2Word":
        return F2Word(tuple(INVERSE[x] for x in reversed(self.letters)))

    def __str__(self):
        return " ".join(LETTERS[x] for x in self.letters) if self.letters else "1"

    @classmethod
    def parse(cls, text: str) -> "F2Word":
        lookup = {name: i for i, name in enumerate(LETTERS)}
        return cls(tuple(lookup[tok] for tok in text.split()))


def count_reduced(length: int) -> int:
    return 1 if length == 0 else 4 * 3 ** (length - 1)


def _extend(prefixes: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    out = []
    for w in prefixes:
        for x in range(4):
            if not w or INVERSE[w[-1]] != x:
                out.append(w + (x,))
    return out


def reduced_words(max_len: int) -> Iterator[F2Word]:
    """All reduced words of length 1..max_len, by length then lexicographically."""
    level: list[tuple[int, ...]] = [()]
    for _ in range(max_len):
        level = _extend(level)
        for w in level:
            yield F2Word(w)


def _letter_mats(pair: tuple[MatK, MatK]) -> list[MatK]:
    g1, g2 = pair
    return [g1, g1.inverse(), g2, g2.inverse()]


def eval_word(word: F2Word, pair: tuple[MatK, MatK], mode: str = "exact", c=None, p: Optional[int] = None):
    """Return ``(matrix, trivial)``.

    ``mode="exact"`` multiplies over Q(t) and tests for a scalar matrix;
    ``mode="specialized"`` evaluates the letters at ``t = c`` (mod ``p`` if
    given) first.
    """
    mats = _letter_mats(pair)
    n = pair[0].n
    if mode == "exact":
        out = MatK.identity(n)
        for x in word.letters:
            out = out * mats[x]
        return out, is_projective_identity(out)
    if mode != "specialized":
        raise ValueError(f"unknown mode {mode!r}")
    values = [specialize_matrix(m, c, p) for m in mats]
    one = 1 if p is not None else Fraction(1)
    out = tuple(tuple(one if i == j else 0 * one for j in range(n)) for i in range(n))
    for x in word.letters:
        out = rational_mul(out, values[x], p)
    return out, is_scalar_plain(out)


@dataclass
class ScanResult:
    relation: Optional[F2Word]
    words_checked: int
    max_len: int
    strategy: str
    points: tuple = ()
    screen_hits: int = 0

    def to_dict(self) -> dict:
        return {
            "relation": None if self.relation is None else str(self.relation),
            "relation_length": None if self.relation is None else len(self.relation),
            "words_checked": self.words_checked,
            "max_len": self.max_len,
            "strategy": self.strategy,
            "specialization": [str(x) for x in self.points],
            "screen_hits": self.screen_hits,
        }


def _specialize_letters(mats: list[MatK], start: int, p: Optional[int]):
    """First point in the retry sequence, at or after ``start``, where all four
    letters specialize cleanly."""
    for idx in range(start, len(SPECIALIZATION_POINTS)):
        c = SPECIALIZATION_POINTS[idx]
        try:
            return idx, c, [specialize_matrix(m, c, p) for m in mats]
        except (PoleError, ModularError) as exc:
            log.info("specialization at t=%s failed (%s); retrying", c, exc)
    raise RuntimeError("no usable specialization point")


def freeness_scan(
    pair: tuple[MatK, MatK],
    max_len: int,
    strategy: str = "specialize_then_confirm",
    progress=None,
) -> ScanResult:
    """First projectively trivial reduced word up to ``max_len``, in enumeration order.

    Screening multiplies specialized matrices along the enumeration tree, one
    product per word: a rational specialization at the first clean point of
    the retry sequence and a modular one at the next.  A word flagged scalar by
    both is confirmed over Q(t).
    """
    mats = _letter_mats(pair)
    n = pair[0].n
    if strategy == "exact":
        return _exact_scan(mats, n, max_len, progress)
    if strategy != "specialize_then_confirm":
        raise ValueError(f"unknown strategy {strategy!r}")

    i1, c1, rat = _specialize_letters(mats, 0, None)
    _, c2, mod = _specialize_letters(mats, i1 + 1, DEFAULT_PRIME)
    p = DEFAULT_PRIME
    ident_q = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    ident_p = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    level = [((), ident_q, ident_p)]
    checked = hits = 0
    t0 = time.monotonic()
    for length in range(1, max_len + 1):
        nxt = []
        for w, mq, mp in level:
            for x in range(4):
                if w and INVERSE[w[-1]] == x:
                    continue
                mp2 = rational_mul(mp, mod[x], p)
                mq2 = rational_mul(mq, rat[x])
                word = w + (x,)
                checked += 1
                if is_scalar_plain(mp2) and is_scalar_plain(mq2):
                    hits += 1
                    _, trivial = eval_word(F2Word(word), pair, "exact")
                    if trivial:
                        return ScanResult(F2Word(word), checked, max_len, "specialize_then_confirm", (c1, f"{c2} mod {p}"), hits)
                nxt.append((word, mq2, mp2))
        level = nxt
        if progress is not None:
            _report(progress, length, checked, t0)
    return ScanResult(None, checked, max_len, "specialize_then_confirm", (c1, f"{c2} mod {p}"), hits)


def _exact_scan(mats, n, max_len, progress) -> ScanResult:
    level = [((), MatK.identity(n))]
    checked = 0
    t0 = time.monotonic()
    for length in range(1, max_len + 1):
        nxt = []
        for w, m in level:
            for x in range(4):
                if w and INVERSE[w[-1]] == x:
                    continue
                m2 = m * mats[x]
                checked += 1
                if is_projective_identity(m2):
                    return ScanResult(F2Word(w + (x,)), checked, max_len, "exact")
                nxt.append((w + (x,), m2))
        level = nxt
        if progress is not None:
            _report(progress, length, checked, t0)
    return ScanResult(None, checked, max_len, "exact")


def _report(stream, length: int, checked: int, t0: float) -> None:
    elapsed = max(time.monotonic() - t0, 1e-9)
    stream.write(f"length {length}: {checked} words, {checked / elapsed:.0f} words/s\n")
    stream.flush()


def displacement_profile(pair: tuple[MatK, MatK], basepoint: VertexClass, max_len: int) -> list[tuple[F2Word, int]]:
    """Building distance between ``w x0`` and ``x0`` for every reduced word, the empty word first."""
    mats = _letter_mats(pair)
    n = pair[0].n
    rows = [(F2Word(()), 0)]
    level = [((), MatK.identity(n))]
    for _ in range(max_len):
        nxt = []
        for w, m in level:
            for x in range(4):
                if w and INVERSE[w[-1]] == x:
                    continue
                m2 = m * mats[x]
                rows.append((F2Word(w + (x,)), vertex_distance(basepoint, basepoint.act(m2))))
                nxt.append((w + (x,), m2))
        level = nxt
    return rows
