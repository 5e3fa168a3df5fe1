from fractions import Fraction

import pytest

from groupforge.linalg import MatrixQ


def unit_matrix(n, i, j):
    """Matrix unit with a single 1 at (i, j), 1-based."""
    m = [[0] * n for _ in range(n)]
    m[i - 1][j - 1] = 1
    return MatrixQ.from_rows(m)


@pytest.fixture
def E():
    return unit_matrix


def frac_matrix(rows):
    return MatrixQ.from_rows([[Fraction(x) for x in row] for row in rows])
