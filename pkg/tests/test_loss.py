"""Loss calculus: internal/center losses, the decomposition and the cover identity."""

from itertools import combinations

import pytest

from queencover import (
    BoardSpec,
    Configuration,
    DomainError,
    NotStableError,
    UnboundedLossError,
    all_transforms,
    apply_transform,
    center_loss,
    center_loss_of_square,
    centralize,
    cover_count,
    crossing_budget,
    internal_loss,
    internal_loss_stable,
    is_nonattacking,
    is_stable_board,
    noncongruent_pairs,
    overlap_concentration,
    parity_of,
    predicted_cover,
    quarter_squares,
    stairs,
    total_loss,
)

from conftest import brute_center_distance, random_nonattacking

KNIGHT = Configuration.of([(-1, 0), (0, 2), (1, -1), (2, 1)])
PAIR = Configuration.of([(0, 0), (1, 2)])


def test_internal_loss_examples():
    assert internal_loss(KNIGHT, BoardSpec(10)) == 48
    assert internal_loss(Configuration.of([(0, 0)]), BoardSpec(9)) == 0
    assert internal_loss(PAIR, BoardSpec(20)) == 10


def test_internal_loss_stable_examples():
    assert internal_loss_stable(PAIR) == 10
    assert internal_loss_stable(Configuration.of([(0, 0), (1, 3)])) == 12
    assert internal_loss_stable(KNIGHT) == 48


def test_internal_loss_stable_rejects_attacking():
    with pytest.raises(UnboundedLossError):
        internal_loss_stable(Configuration.of([(0, 0), (3, 3)]))


def test_internal_loss_stable_translation_and_symmetry_invariant(rng):
    board = BoardSpec(9)
    for q in (2, 3, 5):
        config = random_nonattacking(rng, q, lo=-3, hi=3)
        reference = internal_loss_stable(config)
        assert internal_loss_stable(config.translate(17, -6)) == reference
        for t in all_transforms():
            image = Configuration.of(apply_transform(t, board, s) for s in config)
            assert internal_loss_stable(image) == reference


def test_center_loss_of_square_examples():
    assert center_loss_of_square((0, 0), BoardSpec(9)) == 0
    assert center_loss_of_square((0, 0), BoardSpec(10)) == 1
    assert center_loss_of_square((2, 1), BoardSpec(12)) == 3
    with pytest.raises(DomainError):
        center_loss_of_square((9, 9), BoardSpec(9))


def test_center_loss_of_square_matches_brute_force():
    for n in (7, 8, 11, 12):
        board = BoardSpec(n)
        base = 0 if n % 2 else 1
        for s in board.squares():
            assert center_loss_of_square(s, board) == base + 2 * brute_center_distance(board, s)


def test_center_loss_examples():
    assert center_loss(KNIGHT, BoardSpec(12)) == 12
    assert center_loss(Configuration.of([(0, 0)]), BoardSpec(9)) == 0
    stairs8 = centralize(stairs(8), BoardSpec(27))
    assert {center_loss(c, BoardSpec(27)) for c in stairs8} == {50}


def test_total_loss_examples():
    assert total_loss(KNIGHT, BoardSpec(12)).total == 60
    stairs2 = centralize(stairs(2), BoardSpec(15))[0]
    assert total_loss(stairs2, BoardSpec(15)).total == 14
    single = total_loss(Configuration.of([(0, 0)]), BoardSpec(9))
    assert single.total == 0 and single.stable


def test_crossing_budget_examples():
    assert crossing_budget(2, 2) == 64
    assert crossing_budget(1, 0) == 0
    assert crossing_budget(3, 2) == 108


def test_overlap_concentration_examples():
    board = BoardSpec(25)
    assert overlap_concentration(KNIGHT, board) == 16
    assert overlap_concentration(Configuration.of([(0, 0)]), board) == 0
    assert overlap_concentration(PAIR, board) == 0


def test_quarter_squares():
    assert [quarter_squares(q) for q in range(1, 10)] == [0, 1, 2, 4, 6, 9, 12, 16, 20]
    with pytest.raises(DomainError):
        quarter_squares(0)


def test_noncongruent_pairs_examples():
    assert noncongruent_pairs(Configuration.of([(0, 0), (1, 2), (0, 3), (1, 1)])) == 4
    assert noncongruent_pairs(Configuration.of([(0, 0), (1, 1), (2, 4)])) == 0
    assert noncongruent_pairs(Configuration.of([(0, 0), (1, 2), (0, 3), (1, 1), (4, 0)])) == 6


def test_predicted_cover_examples():
    assert predicted_cover(KNIGHT, BoardSpec(12)) == 120
    assert cover_count(KNIGHT, BoardSpec(12)) == 120
    stairs8 = centralize(stairs(8), BoardSpec(27))[0]
    assert predicted_cover(stairs8, BoardSpec(27)) == 568
    optimal6 = Configuration.of([(-3, -3), (-2, 3), (-1, 0), (0, 2), (1, -1), (2, 1)])
    assert predicted_cover(optimal6, BoardSpec(21)) == 346
    assert cover_count(optimal6, BoardSpec(21)) == 346


def test_predicted_cover_refuses_unstable():
    wide = Configuration.of([(-4, -4), (4, 3)])
    with pytest.raises(NotStableError):
        predicted_cover(wide, BoardSpec(9))
    with pytest.raises(NotStableError):
        predicted_cover(Configuration.of([(0, 0), (2, 2)]), BoardSpec(31))


def test_decomposition_identity_exhaustive_pairs():
    # All non-attacking pairs anchored at the origin within Chebyshev radius 5.
    board = BoardSpec(25)
    for dx in range(-5, 6):
        for dy in range(-5, 6):
            pair = {(0, 0), (dx, dy)}
            if len(pair) < 2:
                continue
            config = Configuration.of(pair)
            if not is_stable_board(config, board):
                continue
            e, o = config.parity_counts
            assert internal_loss(config, board) == crossing_budget(e, o) - overlap_concentration(
                config, board
            )


def test_decomposition_identity_random(rng):
    board = BoardSpec(33)
    for q in (3, 4, 6, 8):
        for _ in range(25):
            config = random_nonattacking(rng, q)
            e, o = config.parity_counts
            assert internal_loss(config, board) == crossing_budget(e, o) - overlap_concentration(
                config, board
            )


def test_pair_law_within_radius_8():
    checked = 0
    for dx in range(0, 9):
        for dy in range(-8, 9):
            other = (dx, dy)
            if other == (0, 0):
                continue
            config = Configuration.of([(0, 0), other])
            if not is_nonattacking(config):
                continue
            expected = 10 if parity_of((0, 0)) != parity_of(other) else 12
            assert internal_loss_stable(config) == expected
            checked += 1
    assert checked > 80


def test_quarter_squares_is_the_balance_maximum():
    window = [(x, y) for x in range(5) for y in range(5)]
    for q in range(1, 7):
        best = max(
            noncongruent_pairs(Configuration.of(subset))
            for subset in combinations(window, q)
        )
        assert best == quarter_squares(q)


def test_cover_identity_on_random_stable_instances(rng):
    for _ in range(60):
        q = rng.choice([2, 3, 4, 5])
        config = random_nonattacking(rng, q, lo=-3, hi=3)
        n = rng.choice([21, 23, 24, 26])
        board = BoardSpec(n)
        breakdown = total_loss(config, board)
        assert breakdown.stable
        assert cover_count(config, board) == (4 * n - 3) * q - breakdown.total


def test_equal_internal_loss_pairs_balance_against_overlap(rng):
    # Configurations with equal internal loss differ equally in crossing
    # budget and overlap concentration.
    board = BoardSpec(33)
    samples = [random_nonattacking(rng, 4) for _ in range(40)]
    by_loss: dict[int, list[Configuration]] = {}
    for c in samples:
        by_loss.setdefault(internal_loss(c, board), []).append(c)
    compared = 0
    for group in by_loss.values():
        for a, b in zip(group, group[1:]):
            ga = crossing_budget(*a.parity_counts)
            gb = crossing_budget(*b.parity_counts)
            ea = overlap_concentration(a, board)
            eb = overlap_concentration(b, board)
            assert gb - ga == eb - ea
            compared += 1
    assert compared > 0
