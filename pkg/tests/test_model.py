from fractions import Fraction

import pytest

from noise_lab.boolalg import BoolElem
from noise_lab.model import (
    Cell,
    build_cell_model,
    expectation,
    fair_coin,
    inner_product,
    norm_sq,
    project,
    project_oracle,
    sigma_field_of,
    uniform_cell,
    verify_projection_laws,
    walsh_decompose,
    walsh_reconstruct,
)

from conftest import sign_rv

F = Fraction


def test_two_fair_coins_walsh_structure(two_coins):
    m = two_coins
    assert m.n_points == 4
    assert all(w == F(1, 4) for w in m.point_weights)
    # Supports: every subset of the two cells, each one-dimensional.
    assert sorted(m.support_masks()) == [0, 1, 2, 3]


def test_three_valued_cell_dimensions():
    m = build_cell_model([uniform_cell(3)])
    assert m.n_points == 3
    supports = m.support_masks()
    assert supports.count(0) == 1
    assert supports.count(1) == 2  # k-1 zero-mean directions


def test_cell_validation_errors():
    with pytest.raises(ValueError):
        Cell((F(1),))  # k < 2
    with pytest.raises(ValueError):
        Cell((F(1, 2), F(1, 2), F(0)))  # zero-mass outcome
    with pytest.raises(ValueError, match="sum to 5/6"):
        Cell((F(1, 2), F(1, 3)))
    with pytest.raises(ValueError):
        build_cell_model([Cell((F(1, 2), F(1, 2), F(0)))])


def test_inner_product_examples(two_coins):
    m = two_coins
    one = m.constant(1)
    assert inner_product(m, one, one) == 1
    r1, r2 = sign_rv(m, 0), sign_rv(m, 1)
    assert inner_product(m, r1, r1) == 1
    assert inner_product(m, r1, r2) == 0
    with pytest.raises(ValueError):
        inner_product(m, one, build_cell_model([fair_coin()]).constant(1))


def test_sigma_field_partitions(two_coins):
    m = two_coins
    assert sigma_field_of(m, BoolElem(0, 2)) == (tuple(range(4)),)
    assert sigma_field_of(m, BoolElem(3, 2)) == ((0,), (1,), (2,), (3,))
    by_first = sigma_field_of(m, BoolElem(1, 2))
    assert by_first == ((0, 1), (2, 3))


def test_projection_examples(two_coins):
    m = two_coins
    r1, r2 = sign_rv(m, 0), sign_rv(m, 1)
    psi = m.from_values([F(1), F(2), F(3), F(5)])
    q0 = project(m, BoolElem(0, 2), psi)
    assert all(v == expectation(m, psi) for v in q0.values)
    # A cross term dies under a one-cell conditioning.
    assert project(m, BoolElem(1, 2), r1 * r2).is_zero()
    assert project(m, BoolElem(3, 2), psi) == psi


def test_oracle_equivalence_exhaustive_small():
    for cells in ([fair_coin(), fair_coin()], [fair_coin(), uniform_cell(3)]):
        m = build_cell_model(cells)
        basis = [
            m.from_values([1 if w == j else 0 for w in range(m.n_points)])
            for j in range(m.n_points)
        ]
        for mask in range(1 << m.n_cells):
            x = BoolElem(mask, m.n_cells)
            for v in basis:
                assert project(m, x, v) == project_oracle(m, x, v)


def test_projection_idempotent_selfadjoint(coin_and_triple, rng):
    m = coin_and_triple
    f = m.random_rv(rng)
    g = m.random_rv(rng)
    for mask in range(4):
        x = BoolElem(mask, 2)
        qf = project(m, x, f)
        assert project(m, x, qf) == qf
        assert inner_product(m, qf, g) == inner_product(m, f, project(m, x, g))


def test_walsh_roundtrip_and_reconstruction(coin_and_triple, rng):
    m = coin_and_triple
    for _ in range(5):
        v = m.random_rv(rng)
        wc = walsh_decompose(m, v)
        assert walsh_reconstruct(m, wc) == v


def test_tensor_product_identity(four_coins):
    m = four_coins
    masks = m.support_masks()
    for i in range(m.n_points):
        for j in range(m.n_points):
            if masks[i] & masks[j] == 0:
                prod = m.walsh_vector(i) * m.walsh_vector(j)
                assert prod == m.walsh_vector(i + j)
                assert norm_sq(m, prod) == m.basis_norm_sq(i) * m.basis_norm_sq(j)


def test_projection_laws_two_coins(two_coins):
    rep = verify_projection_laws(two_coins)
    assert rep.passed
    assert rep.pairs_checked == 16
    assert rep.strict_superadditivity_witness is not None


def test_superadditivity_strict_witness(four_coins):
    # The second-chaos vector splits to zero across the two cells but keeps
    # full norm on their union.
    m = four_coins
    psi = sign_rv(m, 0) * sign_rv(m, 1)
    x, y = BoolElem(1, 4), BoolElem(2, 4)
    nx = norm_sq(m, project(m, x, psi))
    ny = norm_sq(m, project(m, y, psi))
    nj = norm_sq(m, project(m, x.join(y), psi))
    assert nx == 0 and ny == 0 and nj == 1


def test_float_backend_consistency(rng):
    m = build_cell_model([fair_coin(), uniform_cell(3), fair_coin()], backend="float")
    rep = verify_projection_laws(m, rng=rng)
    assert rep.passed
    f = m.random_rv(rng)
    for mask in range(1 << 3):
        x = BoolElem(mask, 3)
        assert m.rv_eq(project(m, x, f), project_oracle(m, x, f))


def test_mixed_radix_ordering():
    m = build_cell_model([fair_coin(), uniform_cell(3)])
    # Cell 0 is the slow axis.
    assert [m.point_digits(i) for i in range(6)] == [
        (0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2),
    ]
    assert m.point_index((1, 2)) == 5
