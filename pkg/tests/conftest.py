import random
from fractions import Fraction

import pytest

from noise_lab.boolalg import BoolElem, FinitePowerAlgebra, Subalgebra
from noise_lab.model import Cell, build_cell_model, fair_coin, uniform_cell


def sign_rv(model, cell):
    """The +/-1 coordinate function of one two-valued cell."""
    vals = [1 if model.point_digits(w)[cell] else -1 for w in range(model.n_points)]
    return model.from_values(vals)


def full_subalgebra(model):
    alg = FinitePowerAlgebra(model.n_cells)
    return Subalgebra(alg, alg.atoms())


def block_subalgebra(model, blocks):
    alg = FinitePowerAlgebra(model.n_cells)
    return Subalgebra(
        alg, tuple(BoolElem.from_indices(b, model.n_cells) for b in blocks)
    )


def varied_probs(k: int, salt: int) -> tuple[Fraction, ...]:
    """Deterministic non-uniform probabilities for sweep families."""
    if k == 2:
        options = [
            (Fraction(1, 2), Fraction(1, 2)),
            (Fraction(1, 3), Fraction(2, 3)),
            (Fraction(1, 4), Fraction(3, 4)),
            (Fraction(2, 5), Fraction(3, 5)),
        ]
    elif k == 3:
        options = [
            (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)),
            (Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)),
            (Fraction(1, 5), Fraction(2, 5), Fraction(2, 5)),
            (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)),
        ]
    else:
        base = [Fraction(1, k)] * k
        return tuple(base)
    return options[salt % len(options)]


def model_family(max_cells: int, radix_choices=(2, 3), max_points: int | None = None):
    """Every radix shape with up to max_cells cells, deterministic probs."""
    import itertools

    models = []
    for n in range(max_cells + 1):
        for shape in itertools.product(radix_choices, repeat=n):
            pts = 1
            for k in shape:
                pts *= k
            if max_points is not None and pts > max_points:
                continue
            cells = [Cell(varied_probs(k, i)) for i, k in enumerate(shape)]
            models.append(build_cell_model(cells))
    return models


@pytest.fixture
def two_coins():
    return build_cell_model([fair_coin(), fair_coin()])


@pytest.fixture
def four_coins():
    return build_cell_model([fair_coin()] * 4)


@pytest.fixture
def coin_and_triple():
    return build_cell_model([fair_coin(), uniform_cell(3)])


@pytest.fixture
def rng():
    return random.Random(0)
