from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noise_lab.regopen import (
    EMPTY,
    FULL,
    FiniteSpace,
    closed_intersection,
    closed_subset,
    dyadic_quotient_space,
    finite_space_regopen,
    interior_closure_boundary,
    make_regopen,
    random_regopen,
    reg_ops,
    regopen_to_quotient,
    verify_reg_laws,
)

F = Fraction


def test_make_regopen_fills_punctures():
    r = make_regopen([(0, F(1, 2)), (F(1, 2), 1)])
    assert r.is_full


def test_make_regopen_empty_interval():
    assert make_regopen([(F(1, 4), F(1, 4))]).is_empty


def test_make_regopen_edge_absorption():
    r = make_regopen([(0, F(1, 2))])
    assert r.intervals == ((F(0), F(1, 2)),)
    assert r.contains_interior(F(0))       # [0, 1/2) contains the space edge
    assert not r.contains_interior(F(1, 2))


def test_make_regopen_rejects_bad_endpoints():
    with pytest.raises(ValueError):
        make_regopen([(F(-1, 4), F(1, 2))])
    with pytest.raises(ValueError):
        make_regopen([(F(1, 2), F(5, 4))])
    with pytest.raises(ValueError):
        make_regopen([(F(3, 4), F(1, 4))])


def test_reg_ops_examples():
    r = make_regopen([(0, F(1, 2))])
    meet, join, comp = reg_ops(r, ~r)
    assert comp.intervals == ((F(1, 2), F(1)),)
    assert join.is_full          # the point 1/2 is absorbed
    assert meet.is_empty

    s = make_regopen([(F(1, 4), 1)])
    meet, join, _ = reg_ops(r, s)
    assert meet.intervals == ((F(1, 4), F(1, 2)),)
    assert join.is_full


def test_interior_closure_boundary_examples():
    r = make_regopen([(0, F(1, 2))])
    interior, closure, boundary = interior_closure_boundary(r)
    assert closure == ((F(0), F(1, 2)),)
    assert boundary == (F(1, 2),)

    assert interior_closure_boundary(EMPTY) == ((), (), ())

    mid = make_regopen([(F(1, 4), F(3, 4))])
    assert interior_closure_boundary(mid)[2] == (F(1, 4), F(3, 4))

    assert FULL.boundary_points() == ()


def test_verify_reg_laws(rng):
    rep = verify_reg_laws(rng, iterations=400)
    assert rep.passed
    assert rep.join_strict_witnesses
    assert rep.meet_strict_witnesses


def test_strictness_witness_at_half():
    r = make_regopen([(0, F(1, 2))])
    s = make_regopen([(F(1, 2), 1)])
    join = r | s
    assert join.is_full
    assert not r.contains_interior(F(1, 2)) and not s.contains_interior(F(1, 2))
    assert join.contains_interior(F(1, 2))


def test_equal_elements_give_equalities():
    r = make_regopen([(F(1, 8), F(3, 8)), (F(1, 2), F(3, 4))])
    assert (r & r) == r
    assert (r | r) == r
    assert closed_subset(
        (r & r).closure_intervals(),
        closed_intersection(r.closure_intervals(), r.closure_intervals()),
    )
    assert closed_subset(
        closed_intersection(r.closure_intervals(), r.closure_intervals()),
        (r & r).closure_intervals(),
    )


@st.composite
def raw_intervals(draw):
    pieces = []
    for _ in range(draw(st.integers(0, 4))):
        q = draw(st.sampled_from([2, 3, 4, 5, 8, 16]))
        a = draw(st.integers(0, q))
        b = draw(st.integers(0, q))
        if a > b:
            a, b = b, a
        pieces.append((F(a, q), F(b, q)))
    return pieces


@settings(max_examples=300, derandomize=True)
@given(raw_intervals())
def test_canonical_form_properties(pieces):
    r = make_regopen(pieces)
    # canonical: ordered, strict gaps between closures
    for (a, b), (c, d) in zip(r.intervals, r.intervals[1:]):
        assert b < c
    for a, b in r.intervals:
        assert 0 <= a < b <= 1
    # idempotent and regular
    assert make_regopen(r.intervals) == r
    assert make_regopen(r.closure_intervals()) == r
    # double complement
    assert ~~r == r


@settings(max_examples=200, derandomize=True)
@given(raw_intervals(), raw_intervals())
def test_order_equivalence(p1, p2):
    r, s = make_regopen(p1), make_regopen(p2)
    assert r.le(s) == closed_subset(r.closure_intervals(), s.closure_intervals())


def test_sierpinski_space():
    space = FiniteSpace(
        points=("a", "b"),
        opens=frozenset({frozenset(), frozenset({"a"}), frozenset({"a", "b"})}),
    )
    alg = finite_space_regopen(space)
    assert [sorted(e) for e in alg.elements] == [[], ["a", "b"]]
    assert alg.verify_laws() == []


def test_discrete_and_indiscrete_spaces():
    disc = FiniteSpace(
        points=(0, 1, 2),
        opens=frozenset(
            frozenset(s)
            for s in [set(), {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}]
        ),
    )
    assert len(finite_space_regopen(disc).elements) == 8

    indis = FiniteSpace(points=(0, 1), opens=frozenset({frozenset(), frozenset({0, 1})}))
    assert len(finite_space_regopen(indis).elements) == 2


def test_bad_topology_rejected():
    with pytest.raises(ValueError):
        FiniteSpace(points=(0, 1), opens=frozenset({frozenset({0})}))
    with pytest.raises(ValueError):
        # Not closed under union.
        FiniteSpace(
            points=(0, 1, 2),
            opens=frozenset(
                frozenset(s) for s in [set(), {0}, {1}, {0, 1, 2}]
            ),
        )


def test_dyadic_quotient_agreement():
    for depth in (1, 2):
        space, cells = dyadic_quotient_space(depth)
        qalg = finite_space_regopen(space)
        q = 1 << depth
        elems = []
        for bits in range(1 << q):
            pieces = [(F(j, q), F(j + 1, q)) for j in range(q) if bits >> j & 1]
            elems.append(make_regopen(pieces))
        images = {r: regopen_to_quotient(r, depth, cells) for r in elems}
        assert set(images.values()) == set(qalg.elements)
        for r in elems:
            assert images[~r] == qalg.complement(images[r])
            for s in elems:
                assert images[r & s] == qalg.meet(images[r], images[s])
                assert images[r | s] == qalg.join(images[r], images[s])


def test_random_regopen_is_canonical(rng):
    for _ in range(200):
        r = random_regopen(rng)
        assert make_regopen(r.intervals) == r
