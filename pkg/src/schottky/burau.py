"""Burau representation of the braid group B_n and the two-parameter family of pairs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exactalg import RatFn, T
from .matqt import MatK

__all__ = [
    "BraidWord",
    "burau_unreduced",
    "burau_reduced",
    "quotient_projection",
    "braid_eval",
    "family_pair",
    "family_conjugator",
    "family_generators",
    "WORD_A",
    "WORD_B",
]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i, e in self.letters:
            if not 1 <= i <= self.strands - 1 or e not in (1, -1):
                raise ValueError(f"bad braid letter ({i}, {e}) for B_{self.strands}")

    @classmethod
    def parse(cls, strands: int, text: str) -> "BraidWord":
        """Signed generator indices, e.g. ``"3 -1"`` or ``"3,-1"`` for s3 s1^-1."""
        letters = []
        for tok in text.replace(",", " ").split():
            k = int(tok)
            if k == 0:
                raise ValueError("generator index 0 is not allowed")
            letters.append((abs(k), 1 if k > 0 else -1))
        return cls(strands, tuple(letters))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.strands, self.letters + other.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.letters)


# a = s3 s1^-1 and b = s2 a s2^-1 in B_4
WORD_A = BraidWord(4, ((3, 1), (1, -1)))
WORD_B = BraidWord(4, ((2, 1), (3, 1), (1, -1), (2, -1)))


def burau_unreduced(n: int) -> list[MatK]:
    """Generators acting on K^n; column j is the image of e_j."""
    if n < 2:
        raise ValueError("need n >= 2")
    gens = []
    for i in range(n - 1):
        rows = [[RatFn(1 if r == c else 0) for c in range(n)] for r in range(n)]
        rows[i][i] = 1 - T
        rows[i + 1][i] = RatFn(1)
        rows[i][i + 1] = T
        rows[i + 1][i + 1] = RatFn(0)
        gens.append(MatK(rows))
    return gens


def quotient_projection(n: int) -> list[list[int]]:
    """(n-1) x n matrix of ``K^n -> K^n / K e`` in the basis e_1..e_{n-1}
    (so e_n maps to minus the sum of the others)."""
    return [[1 if r == c else 0 for c in range(n - 1)] + [-1] for r in range(n - 1)]


def burau_reduced(n: int) -> list[MatK]:
    """Induced action on ``K^n / K e``, built by projecting each unreduced image."""
    proj = quotient_projection(n)
    gens = []
    for g in burau_unreduced(n):
        cols = []
        for j in range(n - 1):
            image = g.col(j)
            cols.append([sum((proj[r][k] * image[k] for k in range(n)), RatFn(0)) for r in range(n - 1)])
        gens.append(MatK([[cols[j][r] for j in range(n - 1)] for r in range(n - 1)]))
    return gens


def braid_eval(word: BraidWord, rep: str = "reduced") -> MatK:
    if rep == "reduced":
        gens = burau_reduced(word.strands)
        dim = word.strands - 1
    elif rep == "unreduced":
        gens = burau_unreduced(word.strands)
        dim = word.strands
    else:
        raise ValueError(f"unknown representation {rep!r}")
    inverses: dict[int, MatK] = {}
    out = MatK.identity(dim)
    for i, e in word.letters:
        if e == 1:
            g = gens[i - 1]
        else:
            if i not in inverses:
                inverses[i] = gens[i - 1].inverse()
            g = inverses[i]
        out = out * g
    return out


Rational = Union[int, Fraction]


def family_conjugator(alpha: Rational, beta: Rational) -> MatK:
    """The conjugating matrix s(alpha, beta); s(0, 0) is the Burau case."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    t = T
    scale = (1 - t) ** -2
    rows = [
        [-(1 + t), 1 + t ** 2, -t * (1 + t ** 2)],
        [RatFn(1), -t, t + beta * t ** 2],
        [RatFn(1), -1 + alpha * t, t ** 2],
    ]
    return MatK(rows).scale(scale)


def family_pair(alpha: Rational, beta: Rational) -> tuple[MatK, MatK]:
    """``(f, s)`` with f = diag(1, -1/t, -t); the generator pair is (f, s f s^-1)."""
    f = MatK.diag([RatFn(1), -T.inv(), -T])
    return f, family_conjugator(alpha, beta)


def family_generators(alpha: Rational, beta: Rational) -> tuple[MatK, MatK]:
    f, s = family_pair(alpha, beta)
    return f, s * f * s.inverse()


def word_images(words: Sequence[BraidWord] = (WORD_A, WORD_B)) -> list[MatK]:
    return [braid_eval(w, "reduced") for w in words]


__all__ += ["word_images"]
