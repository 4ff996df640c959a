"""Finite product probability spaces with an exact orthogonal decomposition.

A model is a finite list of independent cells, each with rational outcome
probabilities. Points of the product space are indexed in mixed radix with
cell 0 slowest. Per cell, indicator vectors of outcomes 1..k-1 are
orthogonalized (in outcome order, against the constant and earlier vectors)
WITHOUT normalization, so every basis entry and every squared norm stays
rational; the tensor products of these per-cell vectors form the global
orthogonal basis, indexed by multi-indices whose nonzero digits mark the
cells a basis vector depends on.

Conditioning on the coordinates in a cell set x is the projection that kills
every basis coefficient whose support is not inside x. A naive
block-averaging conditional expectation is kept alongside as an independent
oracle.

Two numeric backends: exact rationals (default) and binary floats for larger
randomized sweeps (absolute tolerance 1e-9).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .boolalg import BoolElem

FLOAT_TOL = 1e-9
EXACT_CAP_DEFAULT = 4096


@dataclass(frozen=True)
class Cell:
    """One independent factor: k >= 2 outcomes with probabilities in (0,1)."""

    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.probs) < 2:
            raise ValueError("cell needs at least 2 outcomes")
        total = Fraction(0)
        for p in self.probs:
            if not isinstance(p, Fraction):
                raise ValueError("cell probabilities must be exact rationals")
            if not 0 < p < 1:
                raise ValueError(f"outcome probability {p} not strictly inside (0,1)")
            total += p
        if total != 1:
            raise ValueError(f"probabilities sum to {total} != 1")

    @property
    def k(self) -> int:
        return len(self.probs)


def fair_coin() -> Cell:
    return Cell((Fraction(1, 2), Fraction(1, 2)))


def uniform_cell(k: int) -> Cell:
    return Cell(tuple(Fraction(1, k) for _ in range(k)))


@dataclass(frozen=True)
class RandomVariable:
    """A function on the product space: one value per point, in point order."""

    values: tuple

    def __len__(self) -> int:
        return len(self.values)

    def _check(self, other: "RandomVariable") -> None:
        if len(self.values) != len(other.values):
            raise ValueError("random variables live on different spaces")

    def __add__(self, other: "RandomVariable") -> "RandomVariable":
        self._check(other)
        return RandomVariable(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "RandomVariable") -> "RandomVariable":
        self._check(other)
        return RandomVariable(tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other: "RandomVariable") -> "RandomVariable":
        """Pointwise product."""
        self._check(other)
        return RandomVariable(tuple(a * b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "RandomVariable":
        return RandomVariable(tuple(c * v for v in self.values))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


@dataclass(frozen=True)
class WalshCoeffs:
    """Coefficients against the unnormalized tensor basis, multi-index order.

    Multi-indices share the mixed-radix layout of points: entry at flat index
    m has digit m_i for cell i; the coefficient of basis vector e_m is
    <psi, e_m> / |e_m|^2, so reconstruction is an exact identity.
    """

    coeffs: tuple


class NoiseModel:
    """Immutable product-space model with precomputed per-cell basis tables."""

    def __init__(self, cells: Sequence[Cell], backend: str = "exact"):
        if backend not in ("exact", "float"):
            raise ValueError(f"unknown backend {backend!r}")
        self.cells = tuple(cells)
        self.backend = backend
        self.n_cells = len(self.cells)
        self.radices = tuple(c.k for c in self.cells)
        strides = [1] * self.n_cells
        for i in range(self.n_cells - 2, -1, -1):
            strides[i] = strides[i + 1] * self.radices[i + 1]
        self.strides = tuple(strides)
        self.n_points = strides[0] * self.radices[0] if self.n_cells else 1

        num = self._num
        # Per-cell orthogonalization: e_0 = 1; e_j = indicator(outcome j)
        # minus its components along earlier vectors, in outcome order.
        self.cell_vectors: list[list[list]] = []
        self.cell_norms_sq: list[list] = []
        for cell in self.cells:
            probs = [num(p) for p in cell.probs]
            k = cell.k
            vectors = [[num(Fraction(1))] * k]
            norms = [num(Fraction(1))]
            for j in range(1, k):
                vec = [num(Fraction(0))] * k
                vec[j] = num(Fraction(1))
                for l in range(j):
                    prev = vectors[l]
                    coef = sum(vec[o] * prev[o] * probs[o] for o in range(k)) / norms[l]
                    vec = [v - coef * p for v, p in zip(vec, prev)]
                vectors.append(vec)
                norms.append(sum(v * v * p for v, p in zip(vec, probs)))
            self.cell_vectors.append(vectors)
            self.cell_norms_sq.append(norms)

        self.point_weights = [
            self._product(num(self.cells[i].probs[d]) for i, d in enumerate(self.point_digits(idx)))
            for idx in range(self.n_points)
        ]

        # k x k transform matrices per cell: analysis maps values along one
        # axis to per-cell coefficients, synthesis maps back.
        self._analysis = []
        self._synthesis = []
        for i, cell in enumerate(self.cells):
            probs = [num(p) for p in cell.probs]
            vecs = self.cell_vectors[i]
            norms = self.cell_norms_sq[i]
            k = cell.k
            self._analysis.append(
                [[vecs[j][o] * probs[o] / norms[j] for o in range(k)] for j in range(k)]
            )
            self._synthesis.append([[vecs[j][o] for j in range(k)] for o in range(k)])

        self._support_masks: list[int] | None = None
        self._walsh_rv_cache: dict[int, RandomVariable] = {}
        self._split_space_checked: set[int] = set()

    # -- numeric backend ------------------------------------------------

    def _num(self, x: Fraction):
        return float(x) if self.backend == "float" else x

    def _product(self, items) -> object:
        acc = self._num(Fraction(1))
        for v in items:
            acc = acc * v
        return acc

    @property
    def tol(self):
        return FLOAT_TOL if self.backend == "float" else 0

    def eq(self, a, b) -> bool:
        return a == b if self.backend == "exact" else abs(a - b) <= FLOAT_TOL

    def leq(self, a, b) -> bool:
        return a <= b if self.backend == "exact" else a <= b + FLOAT_TOL

    def rv_eq(self, f: RandomVariable, g: RandomVariable) -> bool:
        return all(self.eq(a, b) for a, b in zip(f.values, g.values))

    # -- indexing --------------------------------------------------------

    def point_digits(self, idx: int) -> tuple[int, ...]:
        digits = []
        for i in range(self.n_cells):
            digits.append(idx // self.strides[i] % self.radices[i])
        return tuple(digits)

    def point_index(self, digits: Sequence[int]) -> int:
        return sum(d * s for d, s in zip(digits, self.strides))

    def support_masks(self) -> list[int]:
        """Support (bitmask of cells with nonzero digit) per flat multi-index."""
        if self._support_masks is None:
            masks = [0] * self.n_points
            for idx in range(self.n_points):
                m = 0
                for i, d in enumerate(self.point_digits(idx)):
                    if d:
                        m |= 1 << i
                masks[idx] = m
            self._support_masks = masks
        return self._support_masks

    def support_of_index(self, idx: int) -> BoolElem:
        return BoolElem(self.support_masks()[idx], self.n_cells)

    def multi_indices_supported_in(self, x: BoolElem, nonzero: bool = False) -> Iterator[int]:
        """Flat multi-indices whose support lies inside x (optionally nonzero)."""
        for idx, mask in enumerate(self.support_masks()):
            if mask & ~x.mask == 0 and not (nonzero and mask == 0):
                yield idx

    def basis_norm_sq(self, idx: int):
        out = self._num(Fraction(1))
        for i, d in enumerate(self.point_digits(idx)):
            out = out * self.cell_norms_sq[i][d]
        return out

    # -- vectors ----------------------------------------------------------

    def constant(self, c) -> RandomVariable:
        return RandomVariable((self._num(Fraction(c)) if isinstance(c, (int, Fraction)) else c,) * self.n_points)

    def from_values(self, values) -> RandomVariable:
        vals = tuple(self._num(v) if isinstance(v, (int, Fraction)) else v for v in values)
        if len(vals) != self.n_points:
            raise ValueError(f"expected {self.n_points} values, got {len(vals)}")
        return RandomVariable(vals)

    def walsh_vector(self, idx: int) -> RandomVariable:
        """Materialize basis vector e_m for flat multi-index m (cached)."""
        rv = self._walsh_rv_cache.get(idx)
        if rv is None:
            mdig = self.point_digits(idx)
            values = []
            for w in range(self.n_points):
                acc = self._num(Fraction(1))
                for i, o in enumerate(self.point_digits(w)):
                    acc = acc * self.cell_vectors[i][mdig[i]][o]
                values.append(acc)
            rv = RandomVariable(tuple(values))
            self._walsh_rv_cache[idx] = rv
        return rv

    def random_rv(self, rng, zero_mean: bool = False) -> RandomVariable:
        if self.backend == "float":
            vals = [rng.uniform(-1.0, 1.0) for _ in range(self.n_points)]
        else:
            vals = [Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(self.n_points)]
        rv = RandomVariable(tuple(vals))
        if zero_mean:
            rv = rv - RandomVariable((expectation(self, rv),) * self.n_points)
        return rv


def build_cell_model(cells: Sequence[Cell], backend: str = "exact") -> NoiseModel:
    return NoiseModel(cells, backend=backend)


# -- inner product and transforms -----------------------------------------


def inner_product(model: NoiseModel, f: RandomVariable, g: RandomVariable):
    if len(f) != model.n_points or len(g) != model.n_points:
        raise ValueError("random variable does not match the model")
    return sum(a * b * w for a, b, w in zip(f.values, g.values, model.point_weights))


def expectation(model: NoiseModel, f: RandomVariable):
    if len(f) != model.n_points:
        raise ValueError("random variable does not match the model")
    return sum(a * w for a, w in zip(f.values, model.point_weights))


def norm_sq(model: NoiseModel, f: RandomVariable):
    return inner_product(model, f, f)


def _apply_per_cell(model: NoiseModel, values: list, matrices: list) -> list:
    """Apply one k x k matrix along each cell axis of the mixed-radix array."""
    vals = list(values)
    for i in range(model.n_cells):
        k = model.radices[i]
        stride = model.strides[i]
        mat = matrices[i]
        block = k * stride
        for base in range(0, model.n_points, block):
            for off in range(base, base + stride):
                cur = [vals[off + o * stride] for o in range(k)]
                for j in range(k):
                    row = mat[j]
                    acc = row[0] * cur[0]
                    for o in range(1, k):
                        acc += row[o] * cur[o]
                    vals[off + j * stride] = acc
    return vals


def walsh_decompose(model: NoiseModel, f: RandomVariable) -> WalshCoeffs:
    if len(f) != model.n_points:
        raise ValueError("random variable does not match the model")
    return WalshCoeffs(tuple(_apply_per_cell(model, list(f.values), model._analysis)))


def walsh_reconstruct(model: NoiseModel, wc: WalshCoeffs) -> RandomVariable:
    if len(wc.coeffs) != model.n_points:
        raise ValueError("coefficient vector does not match the model")
    return RandomVariable(tuple(_apply_per_cell(model, list(wc.coeffs), model._synthesis)))


# -- sigma-fields and projections -----------------------------------------


def sigma_field_of(model: NoiseModel, x: BoolElem) -> tuple[tuple[int, ...], ...]:
    """Partition of points by equality of the coordinates inside x.

    x = 0 gives one block, x = 1 gives singletons.
    """
    if x.n != model.n_cells:
        raise ValueError("element from a different algebra")
    idxs = x.indices()
    blocks: dict[tuple[int, ...], list[int]] = {}
    for w in range(model.n_points):
        digits = model.point_digits(w)
        key = tuple(digits[i] for i in idxs)
        blocks.setdefault(key, []).append(w)
    return tuple(tuple(b) for b in blocks.values())


def project(model: NoiseModel, x: BoolElem, f: RandomVariable) -> RandomVariable:
    """Conditional expectation given the coordinates in x, via the basis:
    drop every coefficient whose support pokes outside x."""
    if x.n != model.n_cells:
        raise ValueError("element from a different algebra")
    coeffs = list(walsh_decompose(model, f).coeffs)
    zero = model._num(Fraction(0))
    for idx, mask in enumerate(model.support_masks()):
        if mask & ~x.mask:
            coeffs[idx] = zero
    return walsh_reconstruct(model, WalshCoeffs(tuple(coeffs)))


def project_oracle(model: NoiseModel, x: BoolElem, f: RandomVariable) -> RandomVariable:
    """Conditional expectation computed naively: weighted average over each
    block of the coordinate partition."""
    if len(f) != model.n_points:
        raise ValueError("random variable does not match the model")
    out = [None] * model.n_points
    for block in sigma_field_of(model, x):
        wtot = sum(model.point_weights[w] for w in block)
        wsum = sum(f.values[w] * model.point_weights[w] for w in block)
        avg = wsum / wtot
        for w in block:
            out[w] = avg
    return RandomVariable(tuple(out))


# -- law verification -------------------------------------------------------


@dataclass
class ProjectionLawReport:
    passed: bool
    pairs_checked: int
    failures: tuple[str, ...]
    strict_superadditivity_witness: str | None = None


def verify_projection_laws(
    model: NoiseModel,
    *,
    exhaustive_limit: int = 16,
    rng=None,
    sample_pairs: int = 24,
    deep_pairs: int = 6,
) -> ProjectionLawReport:
    """Check, pair by pair: the composition law of the projections, the
    positive-semidefinite operator inequality against join and meet, and
    strict-norm superadditivity on disjoint pairs.

    Exhaustive over all (x, y) when the algebra has at most exhaustive_limit
    elements, else a random sample (rng required). Composition and the
    operator inequality are checked on the diagonalizing basis (entries
    depend only on a coefficient's support); a handful of pairs additionally
    get full projection applications on basis vectors and a random vector.
    """
    n = model.n_cells
    size = 1 << n
    failures: list[str] = []
    strict_witness: str | None = None

    if size <= exhaustive_limit:
        pairs = [(a, b) for a in range(size) for b in range(size)]
    else:
        if rng is None:
            raise ValueError("rng required for sampled law checking")
        pairs = [(rng.randrange(size), rng.randrange(size)) for _ in range(sample_pairs)]
        # Always include a few disjoint pairs so superadditivity is exercised.
        for _ in range(sample_pairs // 2):
            a = rng.randrange(size)
            b = rng.randrange(size) & ~a
            pairs.append((a, b))

    supports = sorted(set(model.support_masks()))
    all_masks = model.support_masks()
    zero = model._num(Fraction(0))
    full = size - 1
    deep_budget = deep_pairs
    fixed_probe = _default_probe(model)
    fixed_coeffs = walsh_decompose(model, fixed_probe).coeffs

    def masked_norm(coeffs, mask: int):
        sub = tuple(
            c if all_masks[i] & ~mask == 0 else zero for i, c in enumerate(coeffs)
        )
        return norm_sq(model, walsh_reconstruct(model, WalshCoeffs(sub)))

    for a, b in pairs:
        x = BoolElem(a, n)
        y = BoolElem(b, n)
        meet = a & b
        join = a | b
        for s in supports:
            below_x = s & ~a == 0
            below_y = s & ~b == 0
            # Composition: masking by y then x equals masking by the meet.
            if (below_x and below_y) != (s & ~meet == 0):
                failures.append(f"composition fails at x={x} y={y} support={s:b}")
            # Operator inequality: the diagonal entry of
            # Q_join + Q_meet - Q_x - Q_y must be 0 or 1.
            d = int(s & ~join == 0) + int(s & ~meet == 0) - int(below_x) - int(below_y)
            if d not in (0, 1):
                failures.append(f"operator inequality fails at x={x} y={y} support={s:b}")

        if meet == 0:
            if rng is None:
                coeffs = fixed_coeffs
            else:
                coeffs = walsh_decompose(model, model.random_rv(rng, zero_mean=True)).coeffs
            nx = masked_norm(coeffs, a)
            ny = masked_norm(coeffs, b)
            nj = masked_norm(coeffs, join)
            if not model.leq(nx + ny, nj):
                failures.append(f"superadditivity fails at x={x} y={y}")
            elif strict_witness is None and not model.eq(nx + ny, nj):
                strict_witness = f"x={x} y={y}: {nx}+{ny} < {nj}"

        if deep_budget > 0 and a != b:
            deep_budget -= 1
            lhs = project(model, x, project(model, y, fixed_probe))
            rhs = project(model, BoolElem(meet, n), fixed_probe)
            if not model.rv_eq(lhs, rhs):
                failures.append(f"composition (full application) fails at x={x} y={y}")

    return ProjectionLawReport(
        passed=not failures,
        pairs_checked=len(pairs),
        failures=tuple(failures),
        strict_superadditivity_witness=strict_witness,
    )


def _default_probe(model: NoiseModel) -> RandomVariable:
    """A deterministic zero-mean vector touching every basis direction."""
    coeffs = [model._num(Fraction(1 + (idx % 3))) for idx in range(model.n_points)]
    coeffs[0] = model._num(Fraction(0))
    return walsh_reconstruct(model, WalshCoeffs(tuple(coeffs)))
