"""First chaos space, additivity on subalgebras, and the atomless defect.

A vector lies in the first chaos when conditioning splits it additively
across every disjoint pair of cell sets. On a finite model this space is
cut out by a linear system; we build that system from naive
conditional-expectation matrices (the oracle path) and eliminate exactly,
then cross-check the solution against the single-cell directions of the
orthogonal basis.

The atomless defect of a vector, relative to a subalgebra it is additive
on, is the largest conditional norm over the subalgebra's atoms; the
defect bounds every mixed third moment E(psi*xi*eta), which is the
quantitative heart of the classicality criterion.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .boolalg import BoolElem, Subalgebra, iter_partitions_of_unity
from .model import (
    NoiseModel,
    RandomVariable,
    expectation,
    inner_product,
    norm_sq,
    project,
    sigma_field_of,
    walsh_decompose,
)


def _require_exact(model: NoiseModel, what: str) -> None:
    if model.backend != "exact":
        raise ValueError(f"{what} requires the exact backend")


@dataclass(frozen=True)
class ChaosSubspace:
    basis: tuple[RandomVariable, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class DefectWitness:
    x: BoolElem
    passed: bool
    attained: float


@dataclass(frozen=True)
class DefectCertificate:
    """Atomless defect delta: recorded as exact delta^2 plus a float delta
    (delta itself is a square root, hence usually irrational)."""

    delta_sq: Fraction
    delta: float
    witnesses: tuple[DefectWitness, ...]


@dataclass
class DefectBoundReport:
    passed: bool
    delta: float
    delta_sq: Fraction
    sigma_max: float
    entrywise_ok: bool
    sigma_ok: bool
    matrix_shape: tuple[int, int]
    counterexamples: tuple[tuple[int, int], ...] = ()


class Classification(enum.Enum):
    CLASSICAL = "classical"
    BLACK = "black"
    INTERMEDIATE = "intermediate"


@dataclass(frozen=True)
class ClassifyResult:
    kind: Classification
    degenerate: bool
    dimension: int
    generated_blocks: int


# -- linear-system machinery -------------------------------------------------


def _projection_matrix(model: NoiseModel, x: BoolElem) -> list[list[Fraction]]:
    """Matrix of conditioning on x in point coordinates, from block averages
    (independent of the basis path)."""
    n = model.n_points
    mat = [[Fraction(0)] * n for _ in range(n)]
    for block in sigma_field_of(model, x):
        wtot = sum(model.point_weights[w] for w in block)
        row = [model.point_weights[w] / wtot for w in block]
        for w in block:
            mw = mat[w]
            for w2, v in zip(block, row):
                mw[w2] = v
    return mat


def _split_constraint_rows(model: NoiseModel, x: BoolElem) -> list[list[Fraction]]:
    """Rows of I - K_x - K_x' where K is the block-averaging matrix."""
    kx = _projection_matrix(model, x)
    kxc = _projection_matrix(model, x.complement())
    n = model.n_points
    rows = []
    for w in range(n):
        row = [-a - b for a, b in zip(kx[w], kxc[w])]
        row[w] += 1
        rows.append(row)
    return rows


def first_chaos_basis(model: NoiseModel) -> ChaosSubspace:
    """Solve the additivity system by exact elimination.

    Constraints: zero mean, plus the per-complement split identity for every
    single cell (sufficient: any coefficient on two or more cells violates
    the split across a cell separating them). The resulting span must equal
    the span of single-cell basis vectors, which is cross-checked.
    """
    _require_exact(model, "first_chaos_basis")
    cached = getattr(model, "_first_chaos_cache", None)
    if cached is not None:
        return cached
    n_pts = model.n_points
    rows: list[list[Fraction]] = [list(model.point_weights)]
    for i in range(model.n_cells):
        rows.extend(_split_constraint_rows(model, BoolElem(1 << i, model.n_cells)))
    basis_vecs = linalg.nullspace(rows, n_pts)
    basis = tuple(RandomVariable(tuple(v)) for v in basis_vecs)

    single = [
        list(model.walsh_vector(idx).values)
        for idx in range(n_pts)
        if bin(model.support_masks()[idx]).count("1") == 1
    ]
    if not linalg.span_equal(basis_vecs, single):
        raise RuntimeError("first chaos space does not match single-cell directions")
    result = ChaosSubspace(basis)
    model._first_chaos_cache = result
    return result


# -- additivity and defect ----------------------------------------------------


def satisfies_additivity(model: NoiseModel, psi: RandomVariable, b: Subalgebra) -> bool:
    """Exact additivity of conditioning over the subalgebra b.

    Checked in both shapes: the disjoint-pair split, and the join+meet
    rearrangement over all pairs; the two must agree.
    """
    memo = getattr(model, "_additivity_memo", None)
    if memo is None:
        memo = model._additivity_memo = {}
    key = (psi.values, tuple(bl.mask for bl in b.blocks))
    if key in memo:
        return memo[key]

    zero = model.eq(expectation(model, psi), 0)
    if not zero:
        memo[key] = False
        return False
    elems = list(b.elements())
    proj = {e.mask: project(model, e, psi) for e in elems}
    disjoint_form = True
    for x in elems:
        for y in elems:
            if x.mask & y.mask == 0:
                lhs = proj[x.mask | y.mask]
                rhs = proj[x.mask] + proj[y.mask]
                if not model.rv_eq(lhs, rhs):
                    disjoint_form = False
                    break
        if not disjoint_form:
            break
    rearranged_form = True
    for x in elems:
        for y in elems:
            lhs = proj[x.mask | y.mask] + proj[x.mask & y.mask]
            rhs = proj[x.mask] + proj[y.mask]
            if not model.rv_eq(lhs, rhs):
                rearranged_form = False
                break
        if not rearranged_form:
            break
    if disjoint_form != rearranged_form:
        raise RuntimeError("disjoint-pair and join+meet additivity disagree")
    memo[key] = disjoint_form
    return disjoint_form


def additive_vector(model: NoiseModel, b: Subalgebra, seedling: RandomVariable) -> RandomVariable:
    """Project a raw vector into the space of b-additive vectors: sum of its
    zero-mean conditionals on the atoms of b."""
    mean = project(model, BoolElem(0, model.n_cells), seedling)
    total = model.constant(0)
    for block in b.blocks:
        total = total + (project(model, block, seedling) - mean)
    return total


def atomless_defect(
    model: NoiseModel, psi: RandomVariable, b: Subalgebra
) -> DefectCertificate:
    """delta = max over atoms of b of the conditional norm of psi.

    The finest partition of unity minimizes the largest per-part norm among
    all partitions of unity in b (superadditivity); brute-forced against all
    partitions when b has at most 5 atoms.
    """
    if not satisfies_additivity(model, psi, b):
        raise ValueError("additivity on b fails")
    per_atom = []
    delta_sq = Fraction(0) if model.backend == "exact" else 0.0
    for block in b.blocks:
        nsq = norm_sq(model, project(model, block, psi))
        per_atom.append((block, nsq))
        if nsq > delta_sq:
            delta_sq = nsq

    if len(b.blocks) <= 5:
        for partition in iter_partitions_of_unity(b):
            worst = max(norm_sq(model, project(model, part, psi)) for part in partition)
            if not model.leq(delta_sq, worst):
                raise RuntimeError("finest partition is not minimal for the defect")

    delta = math.sqrt(float(delta_sq))
    witnesses = tuple(
        DefectWitness(x=block, passed=model.leq(nsq, delta_sq), attained=math.sqrt(float(nsq)))
        for block, nsq in per_atom
    )
    return DefectCertificate(delta_sq=delta_sq, delta=delta, witnesses=witnesses)


def _restrict_index(model: NoiseModel, idx: int, mask: int) -> int:
    """Zero the digits of a flat multi-index outside the given cell mask."""
    out = 0
    for i, d in enumerate(model.point_digits(idx)):
        if mask >> i & 1:
            out += d * model.strides[i]
    return out


def defect_bound_check(
    model: NoiseModel,
    psi: RandomVariable,
    b: Subalgebra,
    x: BoolElem,
    certificate: DefectCertificate | None = None,
) -> DefectBoundReport:
    """Verify |E(psi*xi*eta)| <= delta for unit zero-mean xi measurable in x
    and eta measurable in the complement.

    The mixed component of psi against normalized tensor pairs forms a
    matrix C; each |C_jk| <= delta is checked exactly on squares, and the
    operator norm of C is checked in floats by power iteration.
    """
    if certificate is None:
        certificate = atomless_defect(model, psi, b)
    delta_sq = certificate.delta_sq
    delta = certificate.delta

    coeffs = walsh_decompose(model, psi).coeffs
    masks = model.support_masks()
    comp = x.complement()
    entries: dict[tuple[int, int], tuple] = {}
    for idx, c in enumerate(coeffs):
        m = masks[idx]
        if c != 0 and m & x.mask and m & comp.mask:
            j = _restrict_index(model, idx, x.mask)
            k = _restrict_index(model, idx, comp.mask)
            entries[(j, k)] = (c, model.basis_norm_sq(j), model.basis_norm_sq(k))

    entry_fail: list[tuple[int, int]] = []
    for (j, k), (c, nj, nk) in entries.items():
        if not model.leq(c * c * nj * nk, delta_sq):
            entry_fail.append((j, k))

    row_ids = sorted({j for j, _ in entries})
    col_ids = sorted({k for _, k in entries})
    row_pos = {j: a for a, j in enumerate(row_ids)}
    col_pos = {k: a for a, k in enumerate(col_ids)}
    mat = [[0.0] * len(col_ids) for _ in row_ids]
    for (j, k), (c, nj, nk) in entries.items():
        mat[row_pos[j]][col_pos[k]] = float(c) * math.sqrt(float(nj) * float(nk))
    sigma = linalg.spectral_norm(mat) if entries else 0.0
    sigma_ok = sigma <= delta + 1e-9

    return DefectBoundReport(
        passed=not entry_fail and sigma_ok,
        delta=delta,
        delta_sq=delta_sq,
        sigma_max=sigma,
        entrywise_ok=not entry_fail,
        sigma_ok=sigma_ok,
        matrix_shape=(len(row_ids), len(col_ids)),
        counterexamples=tuple(entry_fail),
    )


# -- split identity and the product criterion ---------------------------------


def split_check(model: NoiseModel, psi: RandomVariable, x: BoolElem) -> bool:
    """Does conditioning on x and on its complement reassemble psi exactly?

    On first use for a given x (exact backend) the full solution space of
    the identity is computed by elimination and matched against the span of
    basis vectors supported inside x or inside its complement.
    """
    xc = x.complement()
    ok = model.rv_eq(psi, project(model, x, psi) + project(model, xc, psi))
    if model.backend == "exact":
        key = min(x.mask, xc.mask)
        if key not in model._split_space_checked:
            space = split_solution_space(model, x)
            expected = _split_span_rows(model, x)
            if not linalg.span_equal([list(v.values) for v in space], expected):
                raise RuntimeError("split solution space mismatch")
            model._split_space_checked.add(key)
    return ok


def split_solution_space(model: NoiseModel, x: BoolElem) -> tuple[RandomVariable, ...]:
    """Basis of {psi : psi = Q_x psi + Q_x' psi}, by exact elimination."""
    _require_exact(model, "split_solution_space")
    rows = _split_constraint_rows(model, x)
    return tuple(RandomVariable(tuple(v)) for v in linalg.nullspace(rows, model.n_points))


def _split_span_rows(model: NoiseModel, x: BoolElem) -> list[list]:
    xc_mask = x.complement().mask
    rows = []
    for idx, m in enumerate(model.support_masks()):
        if m and (m & ~x.mask == 0 or m & ~xc_mask == 0):
            rows.append(list(model.walsh_vector(idx).values))
    return rows


def product_test(model: NoiseModel, psi: RandomVariable, x: BoolElem) -> bool:
    """Zero mean and zero mixed third moments against spanning zero-mean
    factors from x and from its complement (computed pointwise, exactly)."""
    if not model.eq(expectation(model, psi), 0):
        return False
    xc = x.complement()
    left = list(model.multi_indices_supported_in(x, nonzero=True))
    right = list(model.multi_indices_supported_in(xc, nonzero=True))
    for j in left:
        partial = psi * model.walsh_vector(j)
        for k in right:
            if not model.eq(inner_product(model, partial, model.walsh_vector(k)), 0):
                return False
    return True


# -- classification -----------------------------------------------------------


def sigma_field_generated(
    model: NoiseModel, vectors
) -> tuple[tuple[int, ...], ...]:
    """Common refinement of the level-set partitions of the given vectors."""
    _require_exact(model, "sigma_field_generated")
    blocks: dict[tuple, list[int]] = {}
    vec_list = list(vectors)
    for w in range(model.n_points):
        key = tuple(v.values[w] for v in vec_list)
        blocks.setdefault(key, []).append(w)
    return tuple(tuple(b) for b in blocks.values())


def classify(model: NoiseModel) -> ClassifyResult:
    """Classical when the first chaos separates all points; black when it is
    trivial. A zero-cell model is black only by letter and is flagged
    degenerate rather than reported as a genuine example."""
    chaos = first_chaos_basis(model)
    if chaos.dimension == 0:
        return ClassifyResult(
            kind=Classification.BLACK,
            degenerate=model.n_cells == 0,
            dimension=0,
            generated_blocks=1,
        )
    partition = sigma_field_generated(model, chaos.basis)
    kind = (
        Classification.CLASSICAL
        if len(partition) == model.n_points
        else Classification.INTERMEDIATE
    )
    return ClassifyResult(
        kind=kind,
        degenerate=False,
        dimension=chaos.dimension,
        generated_blocks=len(partition),
    )
