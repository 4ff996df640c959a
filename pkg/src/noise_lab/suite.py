"""Verification suite: named checks per module, deterministic given a seed.

Each check group mirrors one module's invariants. Checks are pure and run
sequentially in a fixed order; every randomized check derives its own
generator from the global seed and its name, so reports are byte-identical
across runs. Timings are deliberately kept out of the report payload.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import chaos as chaos_mod
from . import geometry as geo_mod
from . import linalg
from . import regopen as reg_mod
from . import spectrum as spec_mod
from .boolalg import (
    BoolElem,
    FinitePowerAlgebra,
    Subalgebra,
    random_partition_blocks,
)
from .config import ModelConfig, decimal12, format_fraction
from .model import (
    EXACT_CAP_DEFAULT,
    WalshCoeffs,
    inner_product,
    norm_sq,
    project,
    project_oracle,
    verify_projection_laws,
    walsh_decompose,
    walsh_reconstruct,
)

GROUPS = ("laws", "chaos", "spectrum", "regopen", "geometry")


@dataclass(frozen=True)
class CheckResult:
    group: str
    name: str
    status: str  # pass | fail | skip
    detail: str = ""
    witnesses: tuple[str, ...] = ()


@dataclass
class Report:
    seed: int
    backend: str
    selection: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def n_pass(self) -> int:
        return sum(1 for r in self.results if r.status == "pass")

    @property
    def n_fail(self) -> int:
        return sum(1 for r in self.results if r.status == "fail")

    @property
    def n_skip(self) -> int:
        return sum(1 for r in self.results if r.status == "skip")

    def exit_code(self, strict: bool = False) -> int:
        if self.n_fail:
            return 1
        if strict and self.n_skip:
            return 3
        return 0

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "backend": self.backend,
            "selection": self.selection,
            "checks": [
                {
                    "group": r.group,
                    "name": r.name,
                    "status": r.status,
                    "detail": r.detail,
                    "witnesses": list(r.witnesses),
                }
                for r in self.results
            ],
            "summary": {"pass": self.n_pass, "fail": self.n_fail, "skip": self.n_skip},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def render_text(self) -> str:
        lines = []
        for r in self.results:
            lines.append(f"{r.status.upper():4}  {r.group}.{r.name}  {r.detail}".rstrip())
            for w in r.witnesses:
                lines.append(f"      | {w}")
        lines.append(
            f"summary: {self.n_pass} passed, {self.n_fail} failed, {self.n_skip} skipped"
        )
        return "\n".join(lines) + "\n"


class _Ctx:
    def __init__(self, cfg: ModelConfig):
        self.cfg = cfg
        self.model = cfg.build_model()
        self.algebra = FinitePowerAlgebra(cfg.n_cells)
        self._space = None
        self._embedding = None

    def rng(self, name: str) -> random.Random:
        return random.Random(f"{self.cfg.seed}:{name}")

    @property
    def space(self):
        if self._space is None:
            self._space = spec_mod.build_spectral_space(self.model)
        return self._space

    @property
    def embedding(self):
        if self._embedding is None and self.cfg.sample_points is not None:
            self._embedding = geo_mod.build_embedding(
                self.model, self.cfg.sample_points, rng=self.rng("embedding"), random_pairs=40
            )
        return self._embedding

    def exhaustive(self) -> bool:
        return (1 << self.cfg.n_cells) <= self.cfg.exhaustive_limit

    def elements(self, rng: random.Random | None = None, sample: int = 12) -> list[BoolElem]:
        n = self.cfg.n_cells
        if self.exhaustive():
            return list(self.algebra.elements())
        assert rng is not None
        out = [self.algebra.zero, self.algebra.one]
        out.extend(BoolElem(rng.randrange(1 << n), n) for _ in range(sample))
        return out

    def spanning_family(self, rng: random.Random, cap: int = 36):
        if self.model.n_points <= cap:
            return [self.model.walsh_vector(i) for i in range(self.model.n_points)]
        fam = [self.model.walsh_vector(rng.randrange(self.model.n_points)) for _ in range(6)]
        fam.extend(self.model.random_rv(rng) for _ in range(4))
        return fam


def _check(fn):
    """Turn assertion-style check bodies into CheckResult producers."""

    def wrapper(ctx: _Ctx) -> CheckResult:
        group, name = fn.__name__.split("__")
        try:
            out = fn(ctx)
        except _Skip as s:
            return CheckResult(group, name, "skip", detail=str(s))
        except Exception as exc:  # a check crash is a failure with a witness
            return CheckResult(group, name, "fail", witnesses=(repr(exc),))
        detail, witnesses, ok = out
        return CheckResult(group, name, "pass" if ok else "fail", detail, tuple(witnesses))

    wrapper.__name__ = fn.__name__
    return wrapper


class _Skip(Exception):
    pass


def _need_exact(ctx: _Ctx) -> None:
    if ctx.model.backend != "exact":
        raise _Skip("requires the exact backend")


def _need_capacity(ctx: _Ctx) -> None:
    if ctx.model.backend == "exact" and ctx.model.n_points > EXACT_CAP_DEFAULT:
        raise _Skip(
            f"exact backend cap exceeded (N={ctx.model.n_points} > {EXACT_CAP_DEFAULT}); "
            "select the float backend"
        )


# -- laws group ---------------------------------------------------------------


@_check
def laws__projection_lattice(ctx: _Ctx):
    _need_capacity(ctx)
    rep = verify_projection_laws(
        ctx.model, exhaustive_limit=ctx.cfg.exhaustive_limit, rng=ctx.rng("laws.lattice")
    )
    wit = list(rep.failures[:5])
    if rep.strict_superadditivity_witness:
        wit.append("strict superadditivity: " + rep.strict_superadditivity_witness)
    return f"{rep.pairs_checked} pairs", wit, rep.passed


@_check
def laws__oracle_equivalence(ctx: _Ctx):
    _need_capacity(ctx)
    m = ctx.model
    rng = ctx.rng("laws.oracle")
    elements = ctx.elements(rng)
    if m.n_points <= 64:
        basis = [m.from_values([1 if w == j else 0 for w in range(m.n_points)]) for j in range(m.n_points)]
    else:
        basis = [m.random_rv(rng) for _ in range(6)]
    bad = []
    for x in elements:
        for v in basis:
            if not m.rv_eq(project(m, x, v), project_oracle(m, x, v)):
                bad.append(f"x={x}")
                break
    return f"{len(elements)} elements x {len(basis)} vectors", bad, not bad


@_check
def laws__projection_operator(ctx: _Ctx):
    _need_capacity(ctx)
    m = ctx.model
    rng = ctx.rng("laws.operator")
    f = m.random_rv(rng)
    g = m.random_rv(rng)
    bad = []
    for x in ctx.elements(rng):
        qf = project(m, x, f)
        if not m.rv_eq(project(m, x, qf), qf):
            bad.append(f"idempotence fails at x={x}")
        if not m.eq(inner_product(m, qf, g), inner_product(m, f, project(m, x, g))):
            bad.append(f"self-adjointness fails at x={x}")
    return "idempotence + self-adjointness", bad, not bad


@_check
def laws__tensor_basis(ctx: _Ctx):
    _need_capacity(ctx)
    m = ctx.model
    rng = ctx.rng("laws.tensor")
    masks = m.support_masks()
    if m.n_points <= 100:
        pairs = [
            (i, j)
            for i in range(m.n_points)
            for j in range(m.n_points)
            if masks[i] & masks[j] == 0
        ]
    else:
        pairs = []
        while len(pairs) < 60:
            i = rng.randrange(m.n_points)
            j = rng.randrange(m.n_points)
            if masks[i] & masks[j] == 0:
                pairs.append((i, j))
    bad = []
    for i, j in pairs:
        prod = m.walsh_vector(i) * m.walsh_vector(j)
        if not m.rv_eq(prod, m.walsh_vector(i + j)):
            bad.append(f"product fails at {i},{j}")
        if not m.eq(norm_sq(m, prod), m.basis_norm_sq(i) * m.basis_norm_sq(j)):
            bad.append(f"norm product fails at {i},{j}")
    return f"{len(pairs)} disjoint-support pairs", bad, not bad


@_check
def laws__walsh_roundtrip(ctx: _Ctx):
    _need_capacity(ctx)
    m = ctx.model
    rng = ctx.rng("laws.roundtrip")
    probes = [m.random_rv(rng) for _ in range(4)]
    if m.n_points <= 64:
        probes.extend(m.walsh_vector(i) for i in range(m.n_points))
    bad = []
    for i, v in enumerate(probes):
        if not m.rv_eq(walsh_reconstruct(m, walsh_decompose(m, v)), v):
            bad.append(f"roundtrip fails on probe {i}")
    return f"{len(probes)} vectors", bad, not bad


# -- chaos group --------------------------------------------------------------


@_check
def chaos__split_product_equiv(ctx: _Ctx):
    _need_exact(ctx)
    _need_capacity(ctx)
    m = ctx.model
    rng = ctx.rng("chaos.splitprod")
    family = ctx.spanning_family(rng)
    bad = []
    for x in ctx.elements(rng, sample=6):
        for k, psi in enumerate(family):
            if chaos_mod.split_check(m, psi, x) != chaos_mod.product_test(m, psi, x):
                bad.append(f"x={x} vector {k}")
    return f"{len(family)} vectors per element", bad, not bad


@_check
def chaos__split_space(ctx: _Ctx):
    _need_exact(ctx)
    _need_capacity(ctx)
    m = ctx.model
    if m.n_points > 36:
        raise _Skip(f"elimination sweep capped at 36 points (N={m.n_points})")
    bad = []
    for x in ctx.elements(ctx.rng("chaos.splitspace"), sample=4):
        space = chaos_mod.split_solution_space(m, x)
        expected = chaos_mod._split_span_rows(m, x)
        if not linalg.span_equal([list(v.values) for v in space], expected):
            bad.append(f"x={x}")
    return "solution space vs basis span, all elements", bad, not bad


@_check
def chaos__first_chaos(ctx: _Ctx):
    _need_exact(ctx)
    _need_capacity(ctx)
    m = ctx.model
    if m.n_points > 128:
        raise _Skip(f"first-chaos elimination capped at 128 points (N={m.n_points})")
    fc = chaos_mod.first_chaos_basis(m)
    expected = sum(k - 1 for k in m.radices)
    bad = []
    if fc.dimension != expected:
        bad.append(f"dimension {fc.dimension} != {expected}")
    # Full pairwise additivity as an oracle on every basis vector.
    n = m.n_cells
    for v in fc.basis:
        proj = {}
        for x_mask in range(1 << n):
            proj[x_mask] = project(m, BoolElem(x_mask, n), v)
        for x_mask in range(1 << n):
            for y_mask in range(1 << n):
                if x_mask & y_mask == 0:
                    lhs = proj[x_mask | y_mask]
                    rhs = proj[x_mask] + proj[y_mask]
                    if not m.rv_eq(lhs, rhs):
                        bad.append(f"pairwise additivity fails at {x_mask},{y_mask}")
    return f"dimension {fc.dimension}", bad, not bad


@_check
def chaos__classification(ctx: _Ctx):
    _need_exact(ctx)
    _need_capacity(ctx)
    m = ctx.model
    if m.n_points > 128:
        raise _Skip(f"classification elimination capped at 128 points (N={m.n_points})")
    res = chaos_mod.classify(m)
    if res.degenerate:
        return "degenerate zero-cell model", (f"kind={res.kind.value} (flagged degenerate)",), True
    ok = res.kind is chaos_mod.Classification.CLASSICAL
    return f"kind={res.kind.value}, dim={res.dimension}", [] if ok else [f"kind={res.kind.value}"], ok


@_check
def chaos__additive_norm(ctx: _Ctx):
    _need_exact(ctx)
    _need_capacity(ctx)
    m = ctx.model
    if m.n_points > 128:
        raise _Skip(f"capped at 128 points (N={m.n_points})")
    fc = chaos_mod.first_chaos_basis(m)
    rng = ctx.rng("chaos.addnorm")
    probes = list(fc.basis)
    if fc.basis:
        combo = m.constant(0)
        for v in fc.basis:
            combo = combo + v.scale(Fraction(rng.randint(-3, 3)))
        probes.append(combo)
    bad = []
    for psi in probes:
        for x in ctx.elements(rng, sample=5):
            for y in ctx.elements(rng, sample=5):
                if x.mask & y.mask == 0:
                    lhs = norm_sq(m, project(m, x.join(y), psi))
                    rhs = norm_sq(m, project(m, x, psi)) + norm_sq(m, project(m, y, psi))
                    if lhs != rhs:
                        bad.append(f"x={x} y={y}")
    return f"{len(probes)} first-chaos vectors", bad, not bad


@_check
def chaos__defect_zero(ctx: _Ctx):
    _need_exact(ctx)
    _need_capacity(ctx)
    m = ctx.model
    if m.n_cells == 0:
        raise _Skip("no cells")
    rng = ctx.rng("chaos.defectzero")
    bad = []
    zero_cases = 0
    for trial in range(30):
        blocks = random_partition_blocks(rng, m.n_cells)
        sub = Subalgebra(ctx.algebra, tuple(blocks))
        if trial % 3 == 0:
            seed_rv = m.constant(rng.randint(-3, 3))  # collapses to zero
        else:
            seed_rv = m.random_rv(rng)
        psi = chaos_mod.additive_vector(m, sub, seed_rv)
        cert = chaos_mod.atomless_defect(m, psi, sub)
        if cert.delta_sq == 0:
            zero_cases += 1
            if not psi.is_zero():
                bad.append("zero defect with nonzero vector")
    return f"30 additive vectors ({zero_cases} with zero defect)", bad, not bad


@_check
def chaos__defect_bound(ctx: _Ctx):
    _need_exact(ctx)
    _need_capacity(ctx)
    m = ctx.model
    if m.n_cells == 0:
        raise _Skip("no cells")
    rng = ctx.rng("chaos.defectbound")
    bad = []
    for _ in range(25):
        blocks = random_partition_blocks(rng, m.n_cells)
        sub = Subalgebra(ctx.algebra, tuple(blocks))
        psi = chaos_mod.additive_vector(m, sub, m.random_rv(rng))
        x = BoolElem(rng.randrange(1 << m.n_cells), m.n_cells)
        cert = chaos_mod.atomless_defect(m, psi, sub)
        rep = chaos_mod.defect_bound_check(m, psi, sub, x, certificate=cert)
        if not rep.passed:
            bad.append(f"x={x} sigma={rep.sigma_max} delta={rep.delta}")
    return "25 randomized (psi, b, x) cases", bad, not bad


# -- spectrum group -----------------------------------------------------------


@_check
def spectrum__spectral_sets(ctx: _Ctx):
    _need_capacity(ctx)
    space = ctx.space
    rng = ctx.rng("spectrum.sets")
    elements = ctx.elements(rng)
    bad = []
    strict = None
    for x in elements:
        sx = spec_mod.spectral_set(space, x).members
        for y in elements:
            sy = spec_mod.spectral_set(space, y).members
            if sx & sy != spec_mod.spectral_set(space, x.meet(y)).members:
                bad.append(f"meet identity fails at {x},{y}")
            sj = spec_mod.spectral_set(space, x.join(y)).members
            if not sx | sy <= sj:
                bad.append(f"join inclusion fails at {x},{y}")
            elif strict is None and sx | sy < sj:
                strict = f"x={x} y={y}: union misses {len(sj - (sx | sy))} atoms"
    for atom in space.atoms:
        filt = spec_mod.spectral_filter(space, atom)
        for x in elements:
            for y in elements:
                if (filt.member(x) and filt.member(y)) != filt.member(x.meet(y)):
                    bad.append(f"filter law fails at atom {atom}")
    wit = [f"strict inclusion: {strict}"] if strict else []
    return f"{len(elements)}^2 pairs", wit + bad, not bad


@_check
def spectrum__projection_measure(ctx: _Ctx):
    _need_capacity(ctx)
    m = ctx.model
    space = ctx.space
    rng = ctx.rng("spectrum.measure")
    bad = []
    for _ in range(20):
        psi = m.random_rv(rng)
        sm = spec_mod.spectral_measure(m, psi)
        for x in ctx.elements(rng, sample=6):
            members = spec_mod.spectral_set(space, x).members
            mass = sum(
                (sm.masses[i] for i, a in enumerate(space.atoms) if a.mask in members),
                m._num(Fraction(0)),
            )
            if not m.eq(mass, norm_sq(m, project(m, x, psi))):
                bad.append(f"mass mismatch at x={x}")
    return "20 random vectors", bad, not bad


@_check
def spectrum__event_subspaces(ctx: _Ctx):
    _need_exact(ctx)
    _need_capacity(ctx)
    m = ctx.model
    space = ctx.space
    rng = ctx.rng("spectrum.events")
    atoms = [a.mask for a in space.atoms]
    bad = []
    for _ in range(10):
        e1 = frozenset(a for a in atoms if rng.random() < 0.5)
        e2 = frozenset(a for a in atoms if rng.random() < 0.5)
        h1 = spec_mod.subspace_of_event(space, e1)
        h2 = spec_mod.subspace_of_event(space, e2)
        inter = spec_mod.subspace_of_event(space, e1 & e2)
        union = spec_mod.subspace_of_event(space, e1 | e2)
        if set(inter.indices) != set(h1.indices) & set(h2.indices):
            bad.append("intersection identity fails")
        if set(union.indices) != set(h1.indices) | set(h2.indices):
            bad.append("union identity fails")
        if not (e1 & e2):
            for i in h1.indices[:6]:
                for j in h2.indices[:6]:
                    if not m.eq(inner_product(m, m.walsh_vector(i), m.walsh_vector(j)), 0):
                        bad.append("disjoint events not orthogonal")
    if m.n_points <= 64:
        for x in ctx.elements(rng, sample=4):
            hx = spec_mod.subspace_of_event(space, spec_mod.spectral_set(space, x).members)
            image_rows = [
                list(project(m, x, m.walsh_vector(i)).values) for i in range(m.n_points)
            ]
            basis_rows = [list(v.values) for v in hx.basis_rvs()]
            if not linalg.span_equal([r for r in image_rows if any(r)], basis_rows):
                bad.append(f"H(S_x) != range of projection at x={x}")
    return "10 random event pairs", bad, not bad


@_check
def spectrum__sigma_lattice(ctx: _Ctx):
    _need_capacity(ctx)
    space = ctx.space
    rng = ctx.rng("spectrum.sigma")
    elements = ctx.elements(rng, sample=8)
    bad = []
    for x in elements:
        px = spec_mod.sigma_x(space, x)
        for y in elements:
            if x.le(y):
                # Coarser element gives coarser partition: every finer block
                # sits inside one block of the coarser partition.
                py = spec_mod.sigma_x(space, y)
                for b2 in py.blocks:
                    if not any(b2 <= b1 for b1 in px.blocks):
                        bad.append(f"monotonicity fails at {x} <= {y}")
            if not spec_mod.verify_sigma_join(space, x, y):
                bad.append(f"join fails at {x},{y}")
    return f"{len(elements)}^2 pairs", bad, not bad


@_check
def spectrum__independence(ctx: _Ctx):
    _need_capacity(ctx)
    space = ctx.space
    rng = ctx.rng("spectrum.indep")
    elements = ctx.elements(rng, sample=8)
    bad = []
    for x in elements:
        if not spec_mod.verify_independence(space, x, x.complement()):
            bad.append(f"complement independence fails at {x}")
        for y in elements:
            if x.disjoint(y) and not spec_mod.verify_independence(space, x, y):
                bad.append(f"independence fails at {x},{y}")
    return "all sampled disjoint pairs", bad, not bad


@_check
def spectrum__atom_block(ctx: _Ctx):
    _need_capacity(ctx)
    space = ctx.space
    bad = []
    for x in ctx.elements(ctx.rng("spectrum.atom"), sample=10):
        if not spec_mod.check_atom_of_sigma_x(space, x):
            bad.append(f"x={x}")
    return "complement spectral set is one block", bad, not bad


@_check
def spectrum__measure_class(ctx: _Ctx):
    _need_exact(ctx)
    _need_capacity(ctx)
    m = ctx.model
    space = ctx.space
    generic = walsh_reconstruct(m, WalshCoeffs(tuple(Fraction(1) for _ in range(m.n_points))))
    sm = spec_mod.spectral_measure(m, generic)
    ok = spec_mod.mutually_absolutely_continuous(sm.masses, space.measure)
    concentrated = spec_mod.spectral_measure(m, m.constant(1))
    negative = (
        spec_mod.mutually_absolutely_continuous(concentrated.masses, space.measure)
        if m.n_cells > 0
        else False
    )
    bad = []
    if not ok:
        bad.append("generic vector measure not equivalent to the canonical one")
    if negative and m.n_cells > 0:
        bad.append("concentrated measure wrongly declared equivalent")
    return "canonical class uniqueness", bad, not bad


# -- regopen group ------------------------------------------------------------


@_check
def regopen__laws(ctx: _Ctx):
    rep = reg_mod.verify_reg_laws(ctx.rng("regopen.laws"), iterations=1000)
    wit = list(rep.join_strict_witnesses[:2]) + list(rep.meet_strict_witnesses[:2])
    wit = [f"strict inclusion: {w}" for w in wit] + list(rep.failures[:5])
    return f"{rep.checked} pairs", wit, rep.passed


@_check
def regopen__finite_spaces(ctx: _Ctx):
    bad = []
    sier = reg_mod.FiniteSpace(
        points=("a", "b"),
        opens=frozenset({frozenset(), frozenset({"a"}), frozenset({"a", "b"})}),
    )
    alg = reg_mod.finite_space_regopen(sier)
    if [sorted(e) for e in alg.elements] != [[], ["a", "b"]]:
        bad.append("Sierpinski regulars wrong")
    bad.extend(alg.verify_laws())

    disc = reg_mod.FiniteSpace(
        points=(0, 1, 2),
        opens=frozenset(
            frozenset(s) for s in [set(), {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}]
        ),
    )
    dalg = reg_mod.finite_space_regopen(disc)
    if len(dalg.elements) != 8:
        bad.append("discrete space should have all subsets regular")
    bad.extend(dalg.verify_laws())

    indis = reg_mod.FiniteSpace(
        points=(0, 1), opens=frozenset({frozenset(), frozenset({0, 1})})
    )
    ialg = reg_mod.finite_space_regopen(indis)
    if len(ialg.elements) != 2:
        bad.append("indiscrete space should have trivial regulars")

    for depth in (1, 2):
        space, cells = reg_mod.dyadic_quotient_space(depth)
        qalg = reg_mod.finite_space_regopen(space)
        q = 1 << depth
        interval_elems = []
        for bits in range(1 << q):
            pieces = [
                (Fraction(j, q), Fraction(j + 1, q)) for j in range(q) if bits >> j & 1
            ]
            interval_elems.append(reg_mod.make_regopen(pieces))
        images = {r: reg_mod.regopen_to_quotient(r, depth, cells) for r in interval_elems}
        if set(images.values()) != set(qalg.elements):
            bad.append(f"quotient depth {depth}: element sets differ")
        for r in interval_elems:
            for s in interval_elems:
                if images[r & s] != qalg.meet(images[r], images[s]):
                    bad.append(f"quotient depth {depth}: meet differs")
                if images[r | s] != qalg.join(images[r], images[s]):
                    bad.append(f"quotient depth {depth}: join differs")
            if images[~r] != qalg.complement(images[r]):
                bad.append(f"quotient depth {depth}: complement differs")
    return "Sierpinski, discrete, indiscrete, dyadic quotients", bad[:8], not bad


# -- geometry group -----------------------------------------------------------


def _need_embedding(ctx: _Ctx):
    if ctx.embedding is None:
        raise _Skip("no embedding in config")
    return ctx.embedding


@_check
def geometry__homomorphism(ctx: _Ctx):
    emb = _need_embedding(ctx)
    rng = ctx.rng("geometry.hom")
    family = geo_mod.DyadicBase(3).intervals()
    pairs = [(a, b) for a in family for b in family]
    dyads = tuple(1 << d for d in range(1, 5))
    pairs.extend(
        (reg_mod.random_regopen(rng, denominators=dyads), reg_mod.random_regopen(rng, denominators=dyads))
        for _ in range(1000)
    )
    bad = []
    for a, b in pairs:
        ha = geo_mod.sample_hom(emb, a)
        hb = geo_mod.sample_hom(emb, b)
        if geo_mod.sample_hom(emb, a & b) != ha & hb:
            bad.append(f"meet at {a},{b}")
        if geo_mod.sample_hom(emb, a | b) != ha | hb:
            bad.append(f"join at {a},{b}")
        if geo_mod.sample_hom(emb, ~a) != ~ha:
            bad.append(f"complement at {a}")
    return f"{len(pairs)} pairs", bad, not bad


@_check
def geometry__spectral_identity(ctx: _Ctx):
    emb = _need_embedding(ctx)
    depth = min(ctx.cfg.depth, 6)
    bad = []
    count = 0
    for a in geo_mod.DyadicBase(depth).intervals():
        count += 1
        if not geo_mod.verify_spectral_set_identity(emb, a, depth=min(depth, 4)):
            bad.append(f"identity fails at {a}")
    rng = ctx.rng("geometry.identity")
    dyads = tuple(1 << d for d in range(1, depth + 1))
    for _ in range(60):
        a = reg_mod.random_regopen(rng, denominators=dyads)
        count += 1
        if not geo_mod.verify_spectral_set_identity(emb, a, depth=min(depth, 4)):
            bad.append(f"identity fails at {a}")
    return f"{count} dyadic elements, depth {depth}", bad, not bad


@_check
def geometry__approximant(ctx: _Ctx):
    emb = _need_embedding(ctx)
    depth = min(ctx.cfg.depth, 8)
    bad = []
    for mask in range(1 << emb.n):
        atom = BoolElem(mask, emb.n)
        for d in range(1, depth + 1):
            res = geo_mod.spectral_set_map(emb, atom, depth=d)
            for t in res.points:
                if not any(a <= t <= b for a, b in res.approx):
                    bad.append(f"point {t} escapes the depth-{d} cover")
            if res.hausdorff_distance > res.hausdorff_bound:
                bad.append(f"Hausdorff bound broken at atom {atom}, depth {d}")
    return f"all atoms, depths 1..{depth}", bad, not bad


@_check
def geometry__shrink_chains(ctx: _Ctx):
    emb = _need_embedding(ctx)
    bad = []
    family = geo_mod.DyadicBase(3).intervals()
    rng = ctx.rng("geometry.shrink")
    dyads = (2, 4, 8, 16)
    family = family + [reg_mod.random_regopen(rng, denominators=dyads) for _ in range(40)]
    for a in family:
        if a.is_empty:
            continue
        if not geo_mod.verify_shrink_chain(emb, a):
            bad.append(f"shrink chain fails inside {a}")
    return f"{len(family)} dyadic elements", bad, not bad


@_check
def geometry__monotone_limit(ctx: _Ctx):
    emb = _need_embedding(ctx)
    bad = []
    chain = [reg_mod.make_regopen([(0, 1 - Fraction(1, 1 << n))]) for n in range(1, 9)]
    if not geo_mod.monotone_limit_check(emb, chain):
        bad.append("growing chain equivalence fails")
    if not geo_mod.chain_sup(emb, chain).is_one:
        bad.append("growing chain does not reach the full set")
    half = [reg_mod.make_regopen([(0, Fraction(1, 2))])] * 4
    if not geo_mod.monotone_limit_check(emb, half):
        bad.append("constant chain equivalence fails")
    rng = ctx.rng("geometry.chain")
    for _ in range(25):
        acc = reg_mod.EMPTY
        rand_chain = []
        for _ in range(rng.randint(1, 6)):
            acc = acc | reg_mod.random_regopen(rng, denominators=(2, 4, 8, 16))
            rand_chain.append(acc)
        if not geo_mod.monotone_limit_check(emb, rand_chain):
            bad.append("random chain equivalence fails")
    return "structured + 25 random chains", bad, not bad


@_check
def geometry__boundary_dichotomy(ctx: _Ctx):
    emb = _need_embedding(ctx)
    rng = ctx.rng("geometry.dichotomy")
    holds = misses = 0
    bad = []
    for k in range(1000):
        if k % 5 == 0:
            # Force some boundaries straight onto sample points.
            t = rng.choice(emb.sample_points)
            other = Fraction(rng.randint(0, 16), 16)
            lo, hi = min(t, other), max(t, other)
            r = reg_mod.make_regopen([(lo, hi)]) if lo < hi else reg_mod.EMPTY
        else:
            r = reg_mod.random_regopen(rng)
        try:
            rep = geo_mod.boundary_dichotomy(emb, r)
        except RuntimeError as exc:
            bad.append(f"case {k}: {exc}")
            continue
        if rep.holds:
            holds += 1
            if rep.complementary is not True:
                bad.append(f"case {k}: complementarity fails")
        else:
            misses += 1
            if rep.witness_atom is None:
                bad.append(f"case {k}: no witness atom")
    return f"1000 cases ({holds} clear, {misses} boundary-hitting)", bad, not bad


_ALL_CHECKS = [
    laws__projection_lattice,
    laws__oracle_equivalence,
    laws__projection_operator,
    laws__tensor_basis,
    laws__walsh_roundtrip,
    chaos__split_product_equiv,
    chaos__split_space,
    chaos__first_chaos,
    chaos__classification,
    chaos__additive_norm,
    chaos__defect_zero,
    chaos__defect_bound,
    spectrum__spectral_sets,
    spectrum__projection_measure,
    spectrum__event_subspaces,
    spectrum__sigma_lattice,
    spectrum__independence,
    spectrum__atom_block,
    spectrum__measure_class,
    regopen__laws,
    regopen__finite_spaces,
    geometry__homomorphism,
    geometry__spectral_identity,
    geometry__approximant,
    geometry__shrink_chains,
    geometry__monotone_limit,
    geometry__boundary_dichotomy,
]


def run_verification_suite(cfg: ModelConfig, selection: str = "all") -> Report:
    if selection not in GROUPS + ("all",):
        raise ValueError(f"unknown selection {selection!r}")
    ctx = _Ctx(cfg)
    report = Report(seed=cfg.seed, backend=cfg.backend, selection=selection)
    for check in _ALL_CHECKS:
        group = check.__name__.split("__")[0]
        if selection != "all" and group != selection:
            continue
        report.results.append(check(ctx))
    return report


SPECTRUM_HEADERS = ("atom", "dim", "canonical", "mass", "mass_decimal")


def emit_spectrum_report(cfg: ModelConfig, vector_name: str) -> list[tuple[str, ...]]:
    """Rows of the per-atom spectral table for a named config vector:
    atom label, multiplicity, canonical mass, spectral mass (exact fraction
    where the backend is exact), and a 12-significant-digit decimal."""
    model = cfg.build_model()
    psi = cfg.vector(vector_name, model)
    space = spec_mod.build_spectral_space(model)
    sm = spec_mod.spectral_measure(model, psi)
    rows = []
    for i, atom in enumerate(space.atoms):
        exact = (
            format_fraction(sm.masses[i])
            if model.backend == "exact"
            else decimal12(sm.masses[i])
        )
        rows.append(
            (
                repr(atom),
                str(space.dims[i]),
                format_fraction(space.measure[i]),
                exact,
                decimal12(sm.masses[i]),
            )
        )
    return rows
