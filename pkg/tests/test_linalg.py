from fractions import Fraction

from noise_lab import linalg

F = Fraction


def test_rref_identifies_rank():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]
    reduced, pivots = linalg.rref(rows)
    assert len(reduced) == 2
    assert pivots == [0, 1]
    assert linalg.rank(rows) == 2


def test_nullspace_solves_exactly():
    # x + 2y + 3z = 0, y + z = 0  ->  one free direction
    rows = [[F(1), F(2), F(3)], [F(0), F(1), F(1)]]
    basis = linalg.nullspace(rows, 3)
    assert len(basis) == 1
    for v in basis:
        assert sum(a * b for a, b in zip(rows[0], v)) == 0
        assert sum(a * b for a, b in zip(rows[1], v)) == 0


def test_nullspace_of_full_rank_is_trivial():
    rows = [[F(1), F(0)], [F(0), F(1)]]
    assert linalg.nullspace(rows, 2) == []


def test_span_contains_and_equal():
    a = [[F(1), F(0), F(1)], [F(0), F(1), F(1)]]
    assert linalg.span_contains(a, [F(1), F(1), F(2)])
    assert not linalg.span_contains(a, [F(1), F(1), F(0)])
    b = [[F(1), F(1), F(2)], [F(1), F(-1), F(0)]]
    assert linalg.span_equal(a, b)
    assert not linalg.span_equal(a, [[F(1), F(0), F(0)]])


def test_spectral_norm_known_matrices():
    assert linalg.spectral_norm([[0.0, 0.0], [0.0, 0.0]]) == 0.0
    assert abs(linalg.spectral_norm([[3.0]]) - 3.0) < 1e-12
    # Singular values of [[1,0],[0,2]] are 1 and 2.
    assert abs(linalg.spectral_norm([[1.0, 0.0], [0.0, 2.0]]) - 2.0) < 1e-9
    # Rank-one 2x3: norm is the Euclidean norm product of the factors.
    mat = [[2.0, 1.0, 2.0]]
    assert abs(linalg.spectral_norm(mat) - 3.0) < 1e-9


def test_spectral_norm_against_gram_eigenvalue():
    mat = [[1.0, 2.0], [3.0, 4.0]]
    # Largest eigenvalue of Gram computed by hand from the characteristic
    # polynomial: lambda = (30 + sqrt(30^2 - 4*4)) / 2.
    lam = (30 + (900 - 16) ** 0.5) / 2
    assert abs(linalg.spectral_norm(mat) - lam**0.5) < 1e-9
