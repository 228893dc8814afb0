"""Urn mechanics: Polya urns and urns driven by a reinforcement matrix.

Compositions are immutable; every draw returns a new composition. Counts are
nonnegative reals so that fractional prior strengths are expressible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import EmptyUrnError, InvalidMatrixError
from .rng import as_generator


class Color(str, Enum):
    """Ball colors.

    Two-color urns use WHITE (survive / advance) and BLACK (fatal shock).
    The three-color shock urn uses WHITE for safe, RED for risky and BLACK
    for default.
    """

    WHITE = "white"
    RED = "red"
    BLACK = "black"

    def __str__(self):
        return self.value


TWO_COLORS = (Color.WHITE, Color.BLACK)
THREE_COLORS = (Color.WHITE, Color.RED, Color.BLACK)


@dataclass(frozen=True)
class UrnComposition:
    """Ball counts of one urn over an ordered color set."""

    colors: tuple
    counts: tuple

    def __post_init__(self):
        colors = tuple(Color(c) for c in self.colors)
        counts = tuple(float(x) for x in self.counts)
        if len(set(colors)) != len(colors):
            raise ValueError("duplicate colors")
        if len(colors) != len(counts):
            raise ValueError("colors and counts differ in length")
        if any(not math.isfinite(x) or x < 0 for x in counts):
            raise ValueError(f"counts must be finite and nonnegative, got {counts}")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "counts", counts)

    @classmethod
    def _trusted(cls, colors: tuple, counts: list) -> "UrnComposition":
        # internal: colors already validated, counts known nonnegative
        obj = object.__new__(cls)
        object.__setattr__(obj, "colors", colors)
        object.__setattr__(obj, "counts", tuple(counts))
        return obj

    @classmethod
    def two_color(cls, white: float, black: float) -> "UrnComposition":
        return cls(TWO_COLORS, (white, black))

    @classmethod
    def three_color(cls, white: float, red: float, black: float) -> "UrnComposition":
        return cls(THREE_COLORS, (white, red, black))

    @property
    def total(self) -> float:
        return math.fsum(self.counts)

    def index(self, c) -> int:
        try:
            return self.colors.index(Color(c))
        except ValueError:
            raise KeyError(f"color {c!r} not in urn colors {self.colors}") from None

    def __getitem__(self, c) -> float:
        return self.counts[self.index(c)]

    @property
    def white(self) -> float:
        return self[Color.WHITE]

    @property
    def black(self) -> float:
        return self[Color.BLACK]

    def add(self, c, amount: float) -> "UrnComposition":
        i = self.index(c)
        counts = list(self.counts)
        counts[i] += amount
        return UrnComposition(self.colors, counts)

    def as_dict(self) -> dict:
        return {str(c): x for c, x in zip(self.colors, self.counts)}


@dataclass(frozen=True, eq=False)
class ReinforcementMatrix:
    """Square nonnegative matrix; row ``i`` is what replaces a drawn ball of color ``i``.

    The returned ball is part of the row: a diagonal entry ``1 + s`` means
    "put the ball back together with ``s`` extra balls of the same color".
    """

    colors: tuple
    entries: np.ndarray

    def __post_init__(self):
        colors = tuple(Color(c) for c in self.colors)
        entries = np.array(self.entries, dtype=float)
        if entries.shape != (len(colors), len(colors)):
            raise InvalidMatrixError(f"matrix shape {entries.shape} does not match {len(colors)} colors")
        if not np.all(np.isfinite(entries)) or np.any(entries < 0):
            raise InvalidMatrixError("matrix entries must be finite and nonnegative")
        entries.setflags(write=False)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "entries", entries)
        # net change per drawn color: the row minus the drawn ball itself
        delta = entries - np.eye(len(colors))
        object.__setattr__(self, "_delta", tuple(tuple(float(x) for x in row) for row in delta))

    @classmethod
    def polya(cls, s: float, colors=TWO_COLORS) -> "ReinforcementMatrix":
        if s <= 0:
            raise ValueError("s must be positive")
        return cls(colors, (1.0 + s) * np.eye(len(colors)))

    @classmethod
    def identity(cls, colors=TWO_COLORS) -> "ReinforcementMatrix":
        return cls(colors, np.eye(len(colors)))

    @classmethod
    def ubgesm(cls, s: float, p: float) -> "ReinforcementMatrix":
        """Balanced triangular matrix of the urn-based generalized shock model.

        A safe (white) draw adds ``s`` safe balls, a risky (red) draw adds
        ``r = s - p`` risky balls and ``p`` default balls, a default (black)
        draw adds ``s`` default balls.
        """
        r = s - p
        if s <= 0 or p < 0 or r < 0:
            raise InvalidMatrixError(f"need s > 0 and 0 <= p <= s, got s={s}, p={p}")
        return cls(THREE_COLORS, [[1 + s, 0, 0], [0, 1 + r, p], [0, 0, 1 + s]])

    def row(self, c) -> np.ndarray:
        return self.entries[self.colors.index(Color(c))]

    def growth(self) -> np.ndarray:
        """Net change in total count for each drawn color (row sum minus the drawn ball)."""
        return self.entries.sum(axis=1) - 1.0

    def is_balanced(self) -> bool:
        g = self.growth()
        return bool(np.allclose(g, g[0], rtol=0, atol=1e-12))


def _check_nonempty(urn: UrnComposition) -> float:
    total = urn.total
    if total <= 0:
        raise EmptyUrnError(f"urn {urn.as_dict()} has no balls")
    return total


def draw_probability(urn: UrnComposition, c) -> float:
    """Probability that a single draw from ``urn`` shows color ``c``."""
    total = _check_nonempty(urn)
    return urn[c] / total


def _sample_index(urn: UrnComposition, rng) -> int:
    total = _check_nonempty(urn)
    u = rng.random() * total
    acc = 0.0
    last = 0
    for i, x in enumerate(urn.counts):
        if x <= 0:
            continue
        acc += x
        last = i
        if u < acc:
            return i
    # u landed in the rounding gap at the top end
    return last


def sample_color(urn: UrnComposition, rng) -> Color:
    """Draw one color without modifying the urn."""
    return urn.colors[_sample_index(urn, rng)]


def polya_draw(urn: UrnComposition, s: float, rng) -> tuple[Color, UrnComposition]:
    """Draw a ball and return it with ``s`` extra balls of its color.

    Returns
    -------
    color, new_urn
    """
    if s <= 0:
        raise ValueError("s must be positive")
    i = _sample_index(urn, rng)
    counts = list(urn.counts)
    counts[i] += s
    return urn.colors[i], UrnComposition._trusted(urn.colors, counts)


def matrix_draw(urn: UrnComposition, matrix: ReinforcementMatrix, rng) -> tuple[Color, UrnComposition]:
    """Draw a ball and replace it by the matrix row of its color.

    New counts are ``counts - unit(drawn) + row(drawn)``.
    """
    if tuple(matrix.colors) != tuple(urn.colors):
        raise InvalidMatrixError("matrix colors do not match urn colors")
    i = _sample_index(urn, rng)
    new = [x + y for x, y in zip(urn.counts, matrix._delta[i])]
    if min(new) < 0:
        raise InvalidMatrixError(f"draw of {urn.colors[i]} would leave negative counts {new}")
    return urn.colors[i], UrnComposition._trusted(urn.colors, new)


def limit_distribution_parameters(urn: UrnComposition, s: float) -> tuple[float, float]:
    """Beta shapes of the almost-sure limit of the black fraction of a Polya urn.

    Returned as ``(black / s, white / s)`` so that the limit mean equals the
    initial black fraction.
    """
    if s <= 0:
        raise ValueError("s must be positive")
    _check_nonempty(urn)
    return urn.black / s, urn.white / s


def polya_black_fractions(
    white: float, black: float, s: float, steps: int, replicates: int, rng
) -> np.ndarray:
    """Black fraction after ``steps`` draws for many independent Polya urns.

    Vectorized over replicates; used for limit-law checks where scalar
    stepping would be too slow.
    """
    if s <= 0:
        raise ValueError("s must be positive")
    if white + black <= 0:
        raise EmptyUrnError()
    gen = as_generator(rng)
    w = np.full(replicates, float(white))
    b = np.full(replicates, float(black))
    for _ in range(steps):
        hit = gen.random(replicates) * (w + b) >= w
        b += s * hit
        w += s * ~hit
    return b / (w + b)


def sample_polya_sequence(urn: UrnComposition, s: float, n: int, rng) -> tuple[list, UrnComposition]:
    """Run ``n`` successive Polya draws; returns the colors and the final urn."""
    out = []
    for _ in range(n):
        c, urn = polya_draw(urn, s, rng)
        out.append(c)
    return out, urn


__all__ = [
    "Color",
    "TWO_COLORS",
    "THREE_COLORS",
    "UrnComposition",
    "ReinforcementMatrix",
    "draw_probability",
    "sample_color",
    "polya_draw",
    "matrix_draw",
    "limit_distribution_parameters",
    "polya_black_fractions",
    "sample_polya_sequence",
]
