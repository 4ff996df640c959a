from fractions import Fraction

import pytest

from noise_lab.boolalg import BoolElem
from noise_lab.geometry import (
    DyadicBase,
    boundary_dichotomy,
    build_embedding,
    chain_sup,
    closed_set_of_atom,
    inner_approx,
    inner_approx_detail,
    is_dyadic,
    monotone_limit_check,
    sample_hom,
    shrink_chain,
    spectral_set_map,
    uncovered_atoms,
    verify_shrink_chain,
    verify_spectral_map_uniqueness,
    verify_spectral_set_identity,
)
from noise_lab.model import build_cell_model, fair_coin
from noise_lab.regopen import EMPTY, FULL, make_regopen, random_regopen

F = Fraction


@pytest.fixture
def emb():
    model = build_cell_model([fair_coin()] * 3)
    return build_embedding(model, [F(1, 5), F(1, 3), F(2, 3)])


def test_build_embedding_validations():
    model = build_cell_model([fair_coin()] * 3)
    build_embedding(model, [F(1, 5), F(1, 3), F(2, 3)])  # fine
    with pytest.raises(ValueError, match="potential boundary"):
        build_embedding(model, [F(1, 4), F(1, 3), F(2, 3)])
    with pytest.raises(ValueError, match="strictly increasing"):
        build_embedding(model, [F(1, 3), F(1, 5), F(2, 3)])
    with pytest.raises(ValueError, match="sample points"):
        build_embedding(model, [F(1, 5), F(1, 3)])
    with pytest.raises(ValueError, match="outside"):
        build_embedding(build_cell_model([fair_coin()]), [F(3, 2)])


def test_is_dyadic():
    assert is_dyadic(F(1, 4)) and is_dyadic(F(3, 8)) and is_dyadic(F(1))
    assert not is_dyadic(F(1, 3)) and not is_dyadic(F(1, 5)) and not is_dyadic(F(5, 6))


def test_sample_hom_example(emb):
    assert sample_hom(emb, make_regopen([(0, F(1, 2))])) == BoolElem.from_indices([0, 1], 3)
    assert sample_hom(emb, FULL).is_one
    assert sample_hom(emb, EMPTY).is_zero
    with pytest.raises(ValueError):
        sample_hom(emb, make_regopen([(F(1, 3), F(2, 3))]))


def test_sample_hom_is_homomorphism_random(emb, rng):
    dyads = (2, 4, 8, 16, 32)
    for _ in range(300):
        a = random_regopen(rng, denominators=dyads)
        b = random_regopen(rng, denominators=dyads)
        assert sample_hom(emb, a & b) == sample_hom(emb, a) & sample_hom(emb, b)
        assert sample_hom(emb, a | b) == sample_hom(emb, a) | sample_hom(emb, b)
        assert sample_hom(emb, ~a) == ~sample_hom(emb, a)


def test_spectral_set_map_examples(emb):
    assert spectral_set_map(emb, BoolElem(0, 3)).points == ()
    assert spectral_set_map(emb, BoolElem(0, 3)).approx == ()

    res = spectral_set_map(emb, BoolElem.from_indices([0, 2], 3))
    assert res.points == (F(1, 5), F(2, 3))

    res3 = spectral_set_map(emb, BoolElem.from_indices([1], 3), depth=3)
    assert res3.approx == ((F(1, 4), F(3, 8)),)  # the depth-3 cell around 1/3


def test_spectral_set_map_shrinks(emb):
    atom = BoolElem.from_indices([0, 1, 2], 3)
    previous = None
    for depth in range(1, 9):
        res = spectral_set_map(emb, atom, depth=depth)
        for t in res.points:
            assert any(a <= t <= b for a, b in res.approx)
        assert res.hausdorff_distance <= res.hausdorff_bound
        total = sum((b - a for a, b in res.approx), F(0))
        if previous is not None:
            assert total <= previous
        previous = total
    # 1/5 and 1/3 fall in adjacent cells up to depth 3, so the components
    # first separate at depth 4.
    assert res.separation_depth == 4


def test_uniqueness_of_the_union(emb):
    for depth in (2, 3, 4):
        assert verify_spectral_map_uniqueness(emb, depth)


def test_spectral_set_identity(emb):
    assert verify_spectral_set_identity(emb, make_regopen([(0, F(1, 2))]))
    assert verify_spectral_set_identity(emb, FULL)
    assert verify_spectral_set_identity(emb, EMPTY)
    for a in DyadicBase(3).intervals():
        assert verify_spectral_set_identity(emb, a, depth=3)


def test_monotone_limit_growing_chain(emb):
    chain = [make_regopen([(0, 1 - F(1, 2**n))]) for n in range(1, 9)]
    assert monotone_limit_check(emb, chain)
    assert chain_sup(emb, chain).is_one
    assert uncovered_atoms(emb, chain) == []


def test_monotone_limit_constant_chain(emb):
    chain = [make_regopen([(0, F(1, 2))])] * 4
    assert monotone_limit_check(emb, chain)  # both sides of the equivalence fail
    assert chain_sup(emb, chain) == BoolElem.from_indices([0, 1], 3)
    stuck = uncovered_atoms(emb, chain)
    assert BoolElem.from_indices([2], 3) in stuck


def test_monotone_limit_input_errors(emb):
    with pytest.raises(ValueError, match="empty chain"):
        monotone_limit_check(emb, [])
    with pytest.raises(ValueError, match="increasing"):
        monotone_limit_check(
            emb, [make_regopen([(0, F(1, 2))]), make_regopen([(F(1, 2), 1)])]
        )


def test_inner_approx_examples(emb):
    r = make_regopen([(0, F(1, 3))])
    assert inner_approx(emb, r) == BoolElem.from_indices([0], 3)  # 1/3 is on the boundary
    assert inner_approx(emb, FULL).is_one
    half = make_regopen([(0, F(1, 2))])
    assert inner_approx(emb, half) == sample_hom(emb, half)

    elem, depth = inner_approx_detail(emb, r)
    assert elem == BoolElem.from_indices([0], 3)
    assert depth >= 1
    # Reported depth really suffices: the dyadic cell around 1/5 at that
    # depth is compactly inside [0, 1/3).
    q = 1 << depth
    import math

    lo = F(math.floor(F(1, 5) * q), q)
    assert lo + F(1, q) < F(1, 3)


def test_inner_approx_disjointness(emb, rng):
    for _ in range(200):
        r = random_regopen(rng)
        assert inner_approx(emb, r).disjoint(inner_approx(emb, ~r))


def test_boundary_dichotomy_examples(emb):
    rep = boundary_dichotomy(emb, make_regopen([(0, F(1, 3))]))
    assert not rep.holds
    assert rep.join == BoolElem.from_indices([0, 2], 3)
    assert rep.boundary_hits == (1,)
    assert rep.witness_atom == BoolElem.from_indices([1], 3)

    rep2 = boundary_dichotomy(emb, make_regopen([(0, F(1, 2))]))
    assert rep2.holds and rep2.join.is_one and rep2.complementary

    rep3 = boundary_dichotomy(emb, EMPTY)
    assert rep3.holds and rep3.join.is_one


def test_boundary_dichotomy_random(emb, rng):
    for k in range(300):
        if k % 4 == 0:
            t = rng.choice(emb.sample_points)
            hi = max(t, F(7, 8))
            r = make_regopen([(t, hi)]) if t < hi else EMPTY
        else:
            r = random_regopen(rng)
        rep = boundary_dichotomy(emb, r)  # raises if the equivalence breaks
        if rep.holds:
            assert rep.complementary


def test_shrink_chain_properties(emb):
    a = make_regopen([(F(1, 4), F(3, 8)), (F(1, 2), F(3, 4))])
    chain = shrink_chain(a, 6)
    for f, g in zip(chain, chain[1:]):
        assert f.le(g)
    assert verify_shrink_chain(emb, a)
    assert verify_shrink_chain(emb, FULL)
    for x in DyadicBase(2).intervals():
        assert verify_shrink_chain(emb, x)


def test_spectral_set_identity_across_cell_counts():
    # Cell counts 1..5, exhaustive dyadic single intervals of depth <= 4.
    points = [F(1, 7), F(1, 5), F(1, 3), F(3, 5), F(2, 3)]
    for n in range(1, 6):
        model = build_cell_model([fair_coin()] * n)
        e = build_embedding(model, points[:n])
        for a in DyadicBase(4).intervals():
            assert verify_spectral_set_identity(e, a, depth=3)


def test_dyadic_base_is_a_base(emb):
    # Around every sample point and every dyadic point, the family provides
    # arbitrarily small neighborhoods once the depth is large enough.
    targets = list(emb.sample_points) + [F(1, 2), F(3, 4)]
    for t in targets:
        for depth in (4, 6):
            base = DyadicBase(depth)
            hits = [
                iv
                for iv in base.intervals()
                if iv.contains_interior(t)
            ]
            assert hits
            smallest = min(b - a for iv in hits for a, b in iv.intervals)
            assert smallest <= 2 * base.mesh
