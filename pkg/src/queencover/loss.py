"""Loss calculus: internal loss, center loss, and their decomposition.

On a large enough board the cover of a q-queen configuration equals
``(4n - 3) * q - loss``, where the loss splits into an internal part (squares
attacked more than once) and a centralization part (per-queen penalty growing
with Chebyshev distance from the board center).  The internal loss of a
non-attacking configuration further decomposes as ``crossing_budget - overlap
concentration``, where the crossing budget depends only on the queens' parity
counts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coverage import Configuration, attack_field, is_nonattacking, pair_crossings
from .errors import DomainError, InvariantError, NotStableError, UnboundedLossError
from .geometry import BoardSpec, Square, board_contains, chebyshev_center_distance


@dataclass(frozen=True)
class LossBreakdown:
    """All loss components of one configuration on one board."""

    internal: int
    central: int
    total: int
    crossing_budget: int
    overlap_concentration: int
    even_count: int
    odd_count: int
    stable: bool

    def __post_init__(self):
        if self.total != self.internal + self.central:
            raise InvariantError("loss breakdown does not sum")


def internal_loss(config: Configuration, board: BoardSpec) -> int:
    """Sum of (a(s) - 1) over board squares attacked at least once."""
    return attack_field(config, board).internal_loss()


def _centered(config: Configuration) -> Configuration:
    x0, y0, x1, y1 = config.bounding_box()
    return config.translate(-(x0 + x1) // 2, -(y0 + y1) // 2)


def stable_board_size(config: Configuration) -> int:
    """Odd board side large enough that all attack-line crossings are on board."""
    if not config.queens:
        return 1
    x0, y0, x1, y1 = config.bounding_box()
    span = max(x1 - x0, y1 - y0)
    rho = (span + 1) // 2
    return max(6 * rho + 1, 2 * span + 9)


def internal_loss_stable(config: Configuration) -> int:
    """Board-size-independent internal loss of a non-attacking configuration.

    Evaluated with the configuration centered on a board sized by
    stable_board_size, then certified by recomputing on the next larger board
    of the same parity and requiring equality.
    """
    if not is_nonattacking(config):
        raise UnboundedLossError("internal loss grows with n for attacking configurations")
    if config.q <= 1:
        return 0
    centered = _centered(config)
    n = stable_board_size(centered)
    value = internal_loss(centered, BoardSpec(n))
    check = internal_loss(centered, BoardSpec(n + 2))
    if value != check:
        raise InvariantError(
            f"internal loss not stable at n={n}: {value} != {check}"
        )
    return value


def center_loss_of_square(square: Square, board: BoardSpec) -> int:
    """Per-queen penalty: board-parity base plus 2 per Chebyshev unit off center."""
    if not board_contains(board, square):
        raise DomainError(f"square {square} is not on B_{board.n}")
    base = 0 if board.is_odd else 1
    return base + 2 * chebyshev_center_distance(board, square)


def center_loss(config: Configuration, board: BoardSpec) -> int:
    return sum(center_loss_of_square(s, board) for s in config.queens)


def crossing_budget(even_count: int, odd_count: int) -> int:
    """Total pair crossings as a function of parity counts alone.

    Congruent pairs cross on 12 squares, non-congruent pairs on 10.
    """
    if even_count < 0 or odd_count < 0:
        raise DomainError("parity counts must be non-negative")
    e, o = even_count, odd_count
    return 12 * (e * (e - 1) // 2) + 12 * (o * (o - 1) // 2) + 10 * e * o


def overlap_concentration(config: Configuration, board: BoardSpec) -> int:
    """Sum of C(a(s), 2) - (a(s) - 1) over attacked board squares.

    Squares attacked 2, 3, 4 times contribute 0, 1, 3; concentrating pair
    crossings on fewer squares raises this and so lowers the internal loss.
    """
    return attack_field(config, board).overlap_concentration()


def is_stable_board(config: Configuration, board: BoardSpec) -> bool:
    """True when the configuration's loss is board-size-independent here.

    Requires a non-attacking configuration (attacking pairs overlap along
    whole shared lines, so their internal loss grows with n) placed so that
    every pairwise attack-line crossing lies on the board; growing the board
    further then changes neither the internal loss nor the cover identity.
    """
    if not config.is_feasible(board):
        return False
    if config.q <= 1:
        return True
    if not is_nonattacking(config):
        return False
    qs = config.queens
    for i in range(len(qs)):
        for j in range(i + 1, len(qs)):
            for s in pair_crossings(qs[i], qs[j]):
                if not board_contains(board, s):
                    return False
    return True


def total_loss(config: Configuration, board: BoardSpec) -> LossBreakdown:
    """Full loss breakdown of a board-feasible configuration."""
    if not config.is_feasible(board):
        raise DomainError("total loss requires all queens on board")
    e, o = config.parity_counts
    internal = internal_loss(config, board)
    central = center_loss(config, board)
    return LossBreakdown(
        internal=internal,
        central=central,
        total=internal + central,
        crossing_budget=crossing_budget(e, o),
        overlap_concentration=overlap_concentration(config, board),
        even_count=e,
        odd_count=o,
        stable=is_stable_board(config, board),
    )


def quarter_squares(q: int) -> int:
    """floor(q^2 / 4): the most non-congruent pairs a q-configuration can have."""
    if q < 1:
        raise DomainError(f"quarter_squares requires q >= 1, got {q}")
    return q * q // 4


def noncongruent_pairs(config: Configuration) -> int:
    e, o = config.parity_counts
    return e * o


def predicted_cover(config: Configuration, board: BoardSpec) -> int:
    """Cover via the loss identity (4n - 3) q - loss; exact on stable boards only."""
    breakdown = total_loss(config, board)
    if not breakdown.stable:
        raise NotStableError(
            f"B_{board.n} is too small for the cover identity at radius "
            f"{config.radius(board)}"
        )
    return (4 * board.n - 3) * config.q - breakdown.total


__all__ = [
    "LossBreakdown",
    "center_loss",
    "center_loss_of_square",
    "crossing_budget",
    "internal_loss",
    "internal_loss_stable",
    "is_stable_board",
    "noncongruent_pairs",
    "overlap_concentration",
    "predicted_cover",
    "quarter_squares",
    "stable_board_size",
    "total_loss",
]
