"""Exact rational row reduction and nullspace bases."""

from __future__ import annotations

import random
from fractions import Fraction

from gwpa.linalg import nullspace, rref

from sampling import random_rational


def test_rref_frozen_example():
    rows, pivots = rref(
        [
            [Fraction(2), Fraction(4), Fraction(2)],
            [Fraction(1), Fraction(2), Fraction(3)],
        ]
    )
    assert pivots == [0, 2]
    assert rows == [
        [Fraction(1), Fraction(2), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(1)],
    ]


def test_rref_drops_zero_rows():
    rows, pivots = rref([[1, 1], [2, 2], [0, 0]])
    assert pivots == [0]
    assert rows == [[1, 1]]


def test_nullspace_frozen_example():
    basis = nullspace([[1, 2, 3]])
    assert basis == [
        [Fraction(-2), Fraction(1), Fraction(0)],
        [Fraction(-3), Fraction(0), Fraction(1)],
    ]


def test_nullspace_of_identity_is_empty():
    assert nullspace([[1, 0], [0, 1]]) == []


def test_nullspace_of_empty_matrix_spans_everything():
    basis = nullspace([], ncols=2)
    assert basis == [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]


def test_nullspace_vectors_annihilate_matrix():
    rng = random.Random(77)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        matrix = [
            [random_rational(rng) for _ in range(cols)] for _ in range(rows)
        ]
        for vec in nullspace(matrix):
            for row in matrix:
                assert sum(r * x for r, x in zip(row, vec)) == 0


def test_rref_is_idempotent():
    rng = random.Random(78)
    for _ in range(30):
        matrix = [
            [random_rational(rng) for _ in range(4)] for _ in range(3)
        ]
        rows, pivots = rref(matrix)
        again, pivots2 = rref(rows)
        assert rows == again
        assert pivots == pivots2
