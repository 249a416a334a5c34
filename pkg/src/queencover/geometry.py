"""Centered square boards and their dihedral symmetries.

Boards use a centered integer coordinate system: the n x n board spans
{floor((2-n)/2), ..., floor(n/2)} on each axis.  Odd boards are symmetric
about (0, 0); even boards have four central squares {0,1} x {0,1} and their
symmetries act about the geometric center (0.5, 0.5).  Squares are plain
``(x, y)`` integer tuples everywhere; board membership is a predicate, not a
type constraint, because attack lines extend off-board and must be
representable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

from .errors import BoardTooSmallError, DomainError

Square = tuple[int, int]

TRANSFORM_KINDS = (
    "identity",
    "rot90",
    "rot180",
    "rot270",
    "mirror-x",
    "mirror-y",
    "mirror-diag",
    "mirror-antidiag",
)


@dataclass(frozen=True, order=True)
class BoardSpec:
    """An n x n board in centered coordinates."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"board side must be >= 1, got {self.n}")

    @property
    def lo(self) -> int:
        return (2 - self.n) // 2

    @property
    def hi(self) -> int:
        return self.n // 2

    @property
    def is_odd(self) -> bool:
        return self.n % 2 == 1

    @property
    def parity_offset(self) -> int:
        """0 for odd boards, 1 for even; the symmetry center is (p/2, p/2)."""
        return 0 if self.is_odd else 1

    def squares(self) -> Iterator[Square]:
        for y in range(self.lo, self.hi + 1):
            for x in range(self.lo, self.hi + 1):
                yield (x, y)

    def center_squares(self) -> tuple[Square, ...]:
        """The single central square (odd n) or the four central ones (even n)."""
        if self.is_odd:
            return ((0, 0),)
        return ((0, 0), (0, 1), (1, 0), (1, 1))

    def max_center_distance(self) -> int:
        """Largest Chebyshev center distance of any on-board square."""
        return (self.n - 1) // 2 if self.is_odd else self.n // 2 - 1


def board_contains(board: BoardSpec, square: Square) -> bool:
    x, y = square
    return board.lo <= x <= board.hi and board.lo <= y <= board.hi


def border_squares(board: BoardSpec) -> set[Square]:
    """The ring B_n minus B_{n-2}; has exactly 4n - 4 squares."""
    if board.n < 2:
        raise BoardTooSmallError(f"border requires n >= 2, got {board.n}")
    inner = BoardSpec(board.n - 2) if board.n > 2 else None
    out = set()
    for s in board.squares():
        if inner is None or not board_contains(inner, s):
            out.add(s)
    return out


def chebyshev_center_distance(board: BoardSpec, square: Square) -> int:
    """Chebyshev distance to the board center (nearest central square for even n)."""
    if not board_contains(board, square):
        raise DomainError(f"square {square} is not on B_{board.n}")
    x, y = square
    if board.is_odd:
        return max(abs(x), abs(y))
    return max(max(0, -x, x - 1), max(0, -y, y - 1))


def parity_of(square: Square) -> Literal["even", "odd"]:
    """Parity of x - y; used to classify queen pairs as congruent or not."""
    x, y = square
    return "even" if (x - y) % 2 == 0 else "odd"


@dataclass(frozen=True)
class Transform:
    """One of the eight board symmetries (the dihedral group of the square)."""

    kind: str

    def __post_init__(self):
        if self.kind not in TRANSFORM_KINDS:
            raise DomainError(f"unknown transform kind {self.kind!r}")


def all_transforms() -> tuple[Transform, ...]:
    return tuple(Transform(k) for k in TRANSFORM_KINDS)


def transform_square(kind: str, parity_offset: int, square: Square) -> Square:
    """Apply a named transform about the center implied by parity_offset.

    With p = parity_offset the symmetry center is (p/2, p/2), so e.g. rot90 is
    (x, y) -> (p - y, x); this is the unique action under which all eight
    transforms permute the board.
    """
    x, y = square
    p = parity_offset
    if kind == "identity":
        return (x, y)
    if kind == "rot90":
        return (p - y, x)
    if kind == "rot180":
        return (p - x, p - y)
    if kind == "rot270":
        return (y, p - x)
    if kind == "mirror-x":
        return (p - x, y)
    if kind == "mirror-y":
        return (x, p - y)
    if kind == "mirror-diag":
        return (y, x)
    if kind == "mirror-antidiag":
        return (p - y, p - x)
    raise DomainError(f"unknown transform kind {kind!r}")


def apply_transform(transform: Transform, board: BoardSpec, square: Square) -> Square:
    """Image of an on-board square under a board symmetry; stays on board."""
    if not board_contains(board, square):
        raise DomainError(f"square {square} is not on B_{board.n}")
    return transform_square(transform.kind, board.parity_offset, square)
