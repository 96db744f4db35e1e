"""Tests for the certified spectral radius."""

import math
import random
from fractions import Fraction

import pytest

from ifsdim.spectral import spectral_radius
from oracle_helpers import matrix_power_entry_sum


def isqrt_fraction_bounds(n, scale=10**30):
    """Rational bracket around sqrt(n) of width 1/scale."""
    root = math.isqrt(n * scale * scale)
    return Fraction(root, scale), Fraction(root + 1, scale)


def test_single_entry_is_exact():
    result = spectral_radius([[Fraction(1, 14)]])
    assert result.exact == Fraction(1, 14)
    assert result.certified_lo == result.certified_hi == Fraction(1, 14)
    assert abs(result.value - 1 / 14) < 1e-15


def test_symmetric_integer_matrix_is_exact():
    result = spectral_radius([[2, 1], [1, 2]])
    assert result.exact == 3
    assert result.certified_lo == result.certified_hi == 3


def test_golden_like_two_by_two_enclosure():
    # spectral radius is (3 + sqrt 5) / 32, an irrational number
    result = spectral_radius(
        [
            [Fraction(1, 8), Fraction(1, 16)],
            [Fraction(1, 16), Fraction(1, 16)],
        ]
    )
    assert result.exact is None
    s5_lo, s5_hi = isqrt_fraction_bounds(5)
    assert result.certified_lo <= (3 + s5_lo) / 32
    assert (3 + s5_hi) / 32 <= result.certified_hi
    assert result.certified_hi - result.certified_lo <= Fraction(2, 10**12)


def test_rational_dominant_root_found_through_char_poly():
    # char poly (x - 1/4)(x - 1/16) after coupling; dominant root rational
    result = spectral_radius(
        [
            [Fraction(5, 32), Fraction(3, 32)],
            [Fraction(3, 32), Fraction(5, 32)],
        ]
    )
    assert result.exact == Fraction(1, 4)
    # power iteration alone never closes on this one: the support graph is
    # a 2-cycle, so the quotients oscillate and only the char poly settles it
    off_diagonal = spectral_radius([[0, Fraction(1, 4)], [1, 0]])
    assert off_diagonal.exact == Fraction(1, 2)


def test_reducible_matrix_takes_block_maximum():
    result = spectral_radius([[Fraction(1, 14), 1, 0], [0, 2, 1], [0, 1, 2]])
    assert result.exact == 3
    nilpotent = spectral_radius([[0, 5], [0, 0]])
    assert nilpotent.exact == 0
    assert nilpotent.value == 0.0


def test_incidence_counts_are_exact():
    assert spectral_radius([[3]]).exact == 3
    assert spectral_radius([[4]]).exact == 4


def test_quadratic_incidence_matches_two_plus_root_two():
    rows = [[2, 1, 1, 0], [0, 2, 0, 1], [1, 1, 2, 0], [1, 0, 1, 0]]
    result = spectral_radius(rows)
    assert result.exact is None
    s2_lo, s2_hi = isqrt_fraction_bounds(2)
    assert result.certified_lo <= 2 + s2_lo
    assert 2 + s2_hi <= result.certified_hi
    assert abs(result.value - 3.4142135623730951) < 1e-9


def test_golden_incidence_matches_golden_ratio():
    rows = [[0, 1, 0], [2, 0, 1], [1, 0, 0]]
    result = spectral_radius(rows)
    s5_lo, s5_hi = isqrt_fraction_bounds(5)
    assert result.certified_lo <= (1 + s5_lo) / 2
    assert (1 + s5_hi) / 2 <= result.certified_hi
    assert abs(result.value - 1.618033988749895) < 1e-9


def _random_nonnegative(rng, n):
    return [
        [
            Fraction(rng.randrange(0, 6), rng.randrange(1, 9))
            if rng.random() < 0.7
            else Fraction(0)
            for _ in range(n)
        ]
        for _ in range(n)
    ]


def test_norm_growth_certifies_the_enclosure():
    rng = random.Random(20260815)
    fixtures = [
        [[2, 1], [1, 2]],
        [[Fraction(1, 8), Fraction(1, 16)], [Fraction(1, 16), Fraction(1, 16)]],
        [[2, 1, 1, 0], [0, 2, 0, 1], [1, 1, 2, 0], [1, 0, 1, 0]],
        [[0, 1, 0], [2, 0, 1], [1, 0, 0]],
    ] + [_random_nonnegative(rng, rng.randrange(2, 5)) for _ in range(6)]
    for rows in fixtures:
        result = spectral_radius(rows)
        norm8 = matrix_power_entry_sum(rows, 8)
        norm16 = matrix_power_entry_sum(rows, 16)
        # submultiplicativity, exactly in rationals
        assert norm16 <= norm8 * norm8
        # sp <= ||T^8||^(1/8), so the lower bound must stay below it
        if norm8 > 0:
            assert float(result.certified_lo) <= float(norm8) ** (1 / 8) * (1 + 1e-9)
        else:
            assert result.certified_lo == 0
        assert result.certified_lo <= result.certified_hi


def test_loose_rounds_still_bracket_the_tight_answer():
    rows = [[2, 1, 1, 0], [0, 2, 0, 1], [1, 1, 2, 0], [1, 0, 1, 0]]
    tight = spectral_radius(rows)
    loose = spectral_radius(rows, rel_tol=Fraction(1, 100), max_rounds=3)
    assert loose.certified_lo <= tight.certified_hi
    assert loose.certified_hi >= tight.certified_lo
    assert loose.certified_lo <= loose.certified_hi


def test_rejects_invalid_input():
    with pytest.raises(ValueError):
        spectral_radius([[1, 2]])
    with pytest.raises(ValueError):
        spectral_radius([[1, -1], [0, 1]])


def test_accepts_transition_matrix_objects(six_map_quarter_structure):
    from ifsdim.matrices import MatrixTable

    table = MatrixTable(six_map_quarter_structure)
    result = spectral_radius(table.of_edge(1, 0))
    assert result.certified_lo <= result.certified_hi
    assert result.certified_hi <= 1
