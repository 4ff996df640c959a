"""Regular open subsets of X = [0,1] with exact rational endpoints.

A canonical element is a sorted tuple of disjoint, non-touching intervals
(a, b); the represented point set is open in [0,1], absorbing the space
edges: an interval starting at 0 contains 0, one ending at 1 contains 1.
Touching intervals cannot appear in canonical form: regularization (the
interior of the closure) would fuse them.

Meet is intersection of interiors, join is the interior of the union of
closures, complement is the space minus the closure. All comparisons are
exact; no tolerances anywhere.

A small brute-force twin for arbitrary finite topological spaces is
included, with the quotient-of-the-interval construction used to
cross-check the two against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

Interval = tuple[Fraction, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class RegOpen:
    intervals: tuple[Interval, ...]

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_full(self) -> bool:
        return self.intervals == ((ZERO, ONE),)

    def contains_interior(self, t: Fraction) -> bool:
        for a, b in self.intervals:
            if a < t < b:
                return True
            if t == 0 and a == 0:
                return True
            if t == 1 and b == 1:
                return True
        return False

    def contains_closure(self, t: Fraction) -> bool:
        return any(a <= t <= b for a, b in self.intervals)

    def closure_intervals(self) -> tuple[Interval, ...]:
        return self.intervals

    def boundary_points(self) -> tuple[Fraction, ...]:
        pts = []
        for a, b in self.intervals:
            if a > 0:
                pts.append(a)
            if b < 1:
                pts.append(b)
        return tuple(pts)

    def le(self, other: "RegOpen") -> bool:
        """Interior inclusion; equivalently closure inclusion."""
        return all(
            any(c <= a and b <= d for c, d in other.intervals) for a, b in self.intervals
        )

    def meet(self, other: "RegOpen") -> "RegOpen":
        pieces = []
        for a, b in self.intervals:
            for c, d in other.intervals:
                lo, hi = max(a, c), min(b, d)
                if lo < hi:
                    pieces.append((lo, hi))
        return RegOpen(tuple(sorted(pieces)))

    def join(self, other: "RegOpen") -> "RegOpen":
        return RegOpen(_merge_hulls(self.intervals + other.intervals))

    def complement(self) -> "RegOpen":
        if not self.intervals:
            return FULL
        pieces = []
        prev = ZERO
        for a, b in self.intervals:
            if prev < a:
                pieces.append((prev, a))
            prev = b
        if prev < ONE:
            pieces.append((prev, ONE))
        return RegOpen(tuple(pieces))

    __and__ = meet
    __or__ = join
    __invert__ = complement

    def __repr__(self) -> str:
        if not self.intervals:
            return "RegOpen(0)"
        return "RegOpen(" + " ".join(f"({a},{b})" for a, b in self.intervals) + ")"


EMPTY = RegOpen(())
FULL = RegOpen(((ZERO, ONE),))


def _merge_hulls(pieces: Iterable[Interval]) -> tuple[Interval, ...]:
    """Merge closed hulls [a,b]; touching hulls fuse (regularization)."""
    items = sorted(pieces)
    merged: list[list[Fraction]] = []
    for a, b in items:
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return tuple((a, b) for a, b in merged)


def make_regopen(raw: Sequence[tuple]) -> RegOpen:
    """Regularize a raw list of rational intervals: drop empty pieces, take
    the interior of the closure of the union, produce canonical form."""
    pieces = []
    for a, b in raw:
        a, b = Fraction(a), Fraction(b)
        if not (0 <= a <= 1 and 0 <= b <= 1):
            raise ValueError(f"endpoint outside [0,1]: ({a},{b})")
        if a > b:
            raise ValueError(f"interval endpoints out of order: ({a},{b})")
        if a < b:
            pieces.append((a, b))
    return RegOpen(_merge_hulls(pieces))


def reg_ops(r: RegOpen, s: RegOpen) -> tuple[RegOpen, RegOpen, RegOpen]:
    """(meet, join, complement of r)."""
    return r.meet(s), r.join(s), r.complement()


def interior_closure_boundary(
    r: RegOpen,
) -> tuple[tuple[Interval, ...], tuple[Interval, ...], tuple[Fraction, ...]]:
    """(interior intervals, closed hulls, boundary points). Boundary excludes
    the space edges 0 and 1, which have no exterior side in [0,1]."""
    return r.intervals, r.closure_intervals(), r.boundary_points()


# -- closed-set helpers (for inclusion laws; degenerate points allowed) ------


def closed_intersection(
    a: Sequence[Interval], b: Sequence[Interval]
) -> tuple[Interval, ...]:
    pieces = []
    for p, q in a:
        for u, v in b:
            lo, hi = max(p, u), min(q, v)
            if lo <= hi:
                pieces.append((lo, hi))
    return tuple(sorted(pieces))


def closed_subset(a: Sequence[Interval], b: Sequence[Interval]) -> bool:
    return all(any(u <= p and q <= v for u, v in b) for p, q in a)


# -- law verification ---------------------------------------------------------


@dataclass
class RegLawReport:
    passed: bool
    checked: int
    failures: tuple[str, ...]
    join_strict_witnesses: tuple[str, ...]
    meet_strict_witnesses: tuple[str, ...]


def random_regopen(rng, max_pieces: int = 3, denominators: Sequence[int] = (2, 3, 4, 5, 6, 8, 12, 16)) -> RegOpen:
    pieces = []
    for _ in range(rng.randint(0, max_pieces)):
        q = rng.choice(denominators)
        a = Fraction(rng.randint(0, q), q)
        b = Fraction(rng.randint(0, q), q)
        if a > b:
            a, b = b, a
        pieces.append((a, b))
    return make_regopen(pieces)


def _pair_laws(r: RegOpen, s: RegOpen) -> Iterator[tuple[str, bool]]:
    yield "double complement", (~~r) == r
    yield "meet complement", (r & ~r) == EMPTY
    yield "join complement", (r | ~r) == FULL
    yield "meet comm", (r & s) == (s & r)
    yield "join comm", (r | s) == (s | r)
    yield "de morgan meet", ~(r & s) == (~r | ~s)
    yield "de morgan join", ~(r | s) == (~r & ~s)
    yield "absorption", (r & (r | s)) == r and (r | (r & s)) == r
    yield "canonical idempotent", make_regopen(r.intervals) == r
    yield "regularity", make_regopen(r.closure_intervals()) == r
    yield "order equivalence", r.le(s) == closed_subset(r.closure_intervals(), s.closure_intervals())


def _inclusion_laws(r: RegOpen, s: RegOpen) -> tuple[bool, bool, str | None, str | None]:
    """The closure-of-meet and interior-of-join inclusions, with strictness
    witnesses. Any witness point must come from a boundary, so candidates
    are finite and the detection is exact."""
    meet = r & s
    join = r | s
    cl_meet_ok = closed_subset(meet.closure_intervals(), closed_intersection(r.closure_intervals(), s.closure_intervals()))
    join_ok = all(
        any(c <= a and b <= d for c, d in join.intervals) for a, b in r.intervals + s.intervals
    )
    candidates = set(r.boundary_points()) | set(s.boundary_points()) | {ZERO, ONE}
    join_witness = None
    for t in sorted(candidates):
        if join.contains_interior(t) and not (r.contains_interior(t) or s.contains_interior(t)):
            join_witness = f"{t} interior to the join only"
            break
    meet_witness = None
    for t in sorted(candidates):
        in_both = r.contains_closure(t) and s.contains_closure(t)
        if in_both and not meet.contains_closure(t):
            meet_witness = f"{t} in both closures, outside the meet closure"
            break
    return cl_meet_ok, join_ok, join_witness, meet_witness


def _triple_laws(r: RegOpen, s: RegOpen, t: RegOpen) -> Iterator[tuple[str, bool]]:
    yield "meet assoc", ((r & s) & t) == (r & (s & t))
    yield "join assoc", ((r | s) | t) == (r | (s | t))
    yield "distrib meet over join", (r & (s | t)) == ((r & s) | (r & t))
    yield "distrib join over meet", (r | (s & t)) == ((r | s) & (r | t))


def dyadic_grid_regopens(depth: int) -> list[RegOpen]:
    """All single-interval elements with endpoints on the 2^-depth grid."""
    q = 1 << depth
    out = []
    for j in range(q + 1):
        for l in range(j + 1, q + 1):
            out.append(make_regopen([(Fraction(j, q), Fraction(l, q))]))
    return out


def verify_reg_laws(rng, iterations: int = 1000) -> RegLawReport:
    """Randomized pairs/triples plus an exhaustive dyadic-grid pass."""
    failures: list[str] = []
    join_strict: list[str] = []
    meet_strict: list[str] = []
    checked = 0

    def run_pair(r: RegOpen, s: RegOpen) -> None:
        nonlocal checked
        checked += 1
        for name, ok in _pair_laws(r, s):
            if not ok:
                failures.append(f"{name} fails: r={r} s={s}")
        cl_ok, join_ok, jw, mw = _inclusion_laws(r, s)
        if not cl_ok:
            failures.append(f"closure-of-meet inclusion fails: r={r} s={s}")
        if not join_ok:
            failures.append(f"interior-of-join inclusion fails: r={r} s={s}")
        if jw and len(join_strict) < 5:
            join_strict.append(f"r={r} s={s}: {jw}")
        if mw and len(meet_strict) < 5:
            meet_strict.append(f"r={r} s={s}: {mw}")

    grid = dyadic_grid_regopens(3)
    for r, s in combinations(grid, 2):
        run_pair(r, s)
    small = dyadic_grid_regopens(2)
    for r in small:
        for s in small:
            for t in small:
                for name, ok in _triple_laws(r, s, t):
                    if not ok:
                        failures.append(f"{name} fails: r={r} s={s} t={t}")

    for _ in range(iterations):
        r = random_regopen(rng)
        s = random_regopen(rng)
        run_pair(r, s)
        t = random_regopen(rng)
        for name, ok in _triple_laws(r, s, t):
            if not ok:
                failures.append(f"{name} fails: r={r} s={s} t={t}")

    return RegLawReport(
        passed=not failures,
        checked=checked,
        failures=tuple(failures),
        join_strict_witnesses=tuple(join_strict),
        meet_strict_witnesses=tuple(meet_strict),
    )


# -- finite topological spaces (brute force) ----------------------------------


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple
    opens: frozenset[frozenset]

    def __post_init__(self) -> None:
        pts = frozenset(self.points)
        if frozenset() not in self.opens or pts not in self.opens:
            raise ValueError("topology must contain the empty set and the space")
        for u in self.opens:
            if not u <= pts:
                raise ValueError("open set contains unknown points")
            for v in self.opens:
                if u | v not in self.opens or u & v not in self.opens:
                    raise ValueError("family not closed under union/intersection")

    def interior(self, a: frozenset) -> frozenset:
        best = frozenset()
        for u in self.opens:
            if u <= a:
                best = best | u
        return best

    def closure(self, a: frozenset) -> frozenset:
        pts = frozenset(self.points)
        return pts - self.interior(pts - a)


@dataclass(frozen=True)
class FiniteRegAlgebra:
    space: FiniteSpace
    elements: tuple[frozenset, ...]

    def meet(self, g1: frozenset, g2: frozenset) -> frozenset:
        return g1 & g2

    def join(self, g1: frozenset, g2: frozenset) -> frozenset:
        return self.space.interior(self.space.closure(g1) | self.space.closure(g2))

    def complement(self, g: frozenset) -> frozenset:
        return frozenset(self.space.points) - self.space.closure(g)

    def verify_laws(self) -> list[str]:
        failures = []
        pts = frozenset(self.space.points)
        elems = self.elements
        for g in elems:
            if self.space.interior(self.space.closure(g)) != g:
                failures.append(f"not regular: {sorted(g)}")
            if self.meet(g, self.complement(g)) != frozenset():
                failures.append(f"complement meet fails: {sorted(g)}")
            if self.join(g, self.complement(g)) != pts:
                failures.append(f"complement join fails: {sorted(g)}")
            if self.complement(self.complement(g)) != g:
                failures.append(f"double complement fails: {sorted(g)}")
        for g1 in elems:
            for g2 in elems:
                if self.meet(g1, g2) not in elems or self.join(g1, g2) not in elems:
                    failures.append(f"not closed under ops: {sorted(g1)}, {sorted(g2)}")
                if frozenset(self.complement(self.meet(g1, g2))) != self.join(
                    self.complement(g1), self.complement(g2)
                ):
                    failures.append(f"de morgan fails: {sorted(g1)}, {sorted(g2)}")
        for g1 in elems:
            for g2 in elems:
                for g3 in elems:
                    if self.meet(g1, self.join(g2, g3)) != self.join(
                        self.meet(g1, g2), self.meet(g1, g3)
                    ):
                        failures.append("distributivity fails")
                        return failures
        return failures


def finite_space_regopen(space: FiniteSpace) -> FiniteRegAlgebra:
    """Enumerate the regular open sets of a finite space by brute force."""
    elems = []
    for u in space.opens:
        if space.interior(space.closure(u)) == u:
            elems.append(u)
    elems.sort(key=lambda s: (len(s), sorted(map(repr, s))))
    return FiniteRegAlgebra(space=space, elements=tuple(elems))


def dyadic_quotient_space(depth: int) -> tuple[FiniteSpace, list]:
    """Quotient of [0,1] collapsing each grid cell and each interior grid
    point of the 2^-depth grid to a point. Returns the space and, per point,
    its description: ('cell', j) for the j-th open cell, ('cut', c) for an
    interior grid point c."""
    q = 1 << depth
    cells: list = []
    for j in range(q):
        cells.append(("cell", j))
        if j < q - 1:
            cells.append(("cut", Fraction(j + 1, q)))
    n = len(cells)
    valid: list[frozenset] = []
    for bits in range(1 << n):
        subset = frozenset(i for i in range(n) if bits >> i & 1)
        ok = True
        for i in subset:
            if cells[i][0] == "cut" and (i - 1 not in subset or i + 1 not in subset):
                ok = False
                break
        if ok:
            valid.append(subset)
    space = FiniteSpace(points=tuple(range(n)), opens=frozenset(valid))
    return space, cells


def regopen_to_quotient(r: RegOpen, depth: int, cells: list) -> frozenset:
    """Image of a dyadic-endpoint element in the quotient space."""
    q = 1 << depth
    out = set()
    for i, c in enumerate(cells):
        if c[0] == "cell":
            j = c[1]
            mid = Fraction(2 * j + 1, 2 * q)
            if r.contains_interior(mid):
                out.add(i)
        else:
            if r.contains_interior(c[1]):
                out.add(i)
    return frozenset(out)
