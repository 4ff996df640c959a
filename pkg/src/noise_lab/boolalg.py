"""Finite Boolean algebras as power sets of cell indices.

Elements are bitmask-backed subsets of {0..n-1}; subalgebras are block
partitions; filters are principal (complete in the finite case). The Stone
space of such an algebra is the discrete space of its n atoms, so closed
subsets are plain index sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class BoolElem:
    """A subset of {0..n-1}, stored as a bitmask."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("algebra size must be nonnegative")
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask} out of range for {self.n} atoms")

    def _check(self, other: "BoolElem") -> None:
        if self.n != other.n:
            raise ValueError(f"mismatched algebra sizes: {self.n} != {other.n}")

    def meet(self, other: "BoolElem") -> "BoolElem":
        self._check(other)
        return BoolElem(self.mask & other.mask, self.n)

    def join(self, other: "BoolElem") -> "BoolElem":
        self._check(other)
        return BoolElem(self.mask | other.mask, self.n)

    def complement(self) -> "BoolElem":
        return BoolElem(self.mask ^ ((1 << self.n) - 1), self.n)

    def le(self, other: "BoolElem") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def disjoint(self, other: "BoolElem") -> bool:
        self._check(other)
        return self.mask & other.mask == 0

    __and__ = meet
    __or__ = join
    __invert__ = complement

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    @property
    def is_one(self) -> bool:
        return self.mask == (1 << self.n) - 1

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.mask >> i & 1)

    @classmethod
    def from_indices(cls, indices, n: int) -> "BoolElem":
        mask = 0
        for i in indices:
            if not 0 <= i < n:
                raise ValueError(f"index {i} out of range for {n} atoms")
            mask |= 1 << i
        return cls(mask, n)

    def __repr__(self) -> str:
        if self.mask == 0:
            return "{}"
        return "{" + ",".join(str(i) for i in self.indices()) + "}"


@dataclass(frozen=True)
class FinitePowerAlgebra:
    """The power set algebra on n_cells atoms; 2**n_cells elements."""

    n_cells: int

    def __post_init__(self) -> None:
        if self.n_cells < 0:
            raise ValueError("n_cells must be nonnegative")

    @property
    def size(self) -> int:
        return 1 << self.n_cells

    @property
    def zero(self) -> BoolElem:
        return BoolElem(0, self.n_cells)

    @property
    def one(self) -> BoolElem:
        return BoolElem((1 << self.n_cells) - 1, self.n_cells)

    def element(self, mask: int) -> BoolElem:
        return BoolElem(mask, self.n_cells)

    def elements(self) -> Iterator[BoolElem]:
        for mask in range(self.size):
            yield BoolElem(mask, self.n_cells)

    def atoms(self) -> tuple[BoolElem, ...]:
        return tuple(BoolElem(1 << i, self.n_cells) for i in range(self.n_cells))


def build_power_algebra(n_cells: int) -> FinitePowerAlgebra:
    return FinitePowerAlgebra(n_cells)


def element_ops(x: BoolElem, y: BoolElem) -> tuple[BoolElem, BoolElem, BoolElem]:
    """(meet, join, complement of x); raises on mismatched algebra sizes."""
    return x.meet(y), x.join(y), x.complement()


@dataclass(frozen=True)
class Subalgebra:
    """Boolean subalgebra given by its atoms: a block partition of the full set.

    Elements of the subalgebra are exactly the unions of blocks.
    """

    algebra: FinitePowerAlgebra
    blocks: tuple[BoolElem, ...]

    def __post_init__(self) -> None:
        union = 0
        for b in self.blocks:
            if b.n != self.algebra.n_cells:
                raise ValueError("block from a different algebra")
            if b.is_zero:
                raise ValueError("empty block in subalgebra")
            if union & b.mask:
                raise ValueError("overlapping blocks in subalgebra")
            union |= b.mask
        if union != (1 << self.algebra.n_cells) - 1:
            raise ValueError("blocks do not cover the full set")

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def contains(self, x: BoolElem) -> bool:
        """x belongs to the subalgebra iff it splits no block."""
        if x.n != self.algebra.n_cells:
            raise ValueError("element from a different algebra")
        return all(b.mask & x.mask in (0, b.mask) for b in self.blocks)

    def elements(self) -> Iterator[BoolElem]:
        for subset in range(1 << len(self.blocks)):
            mask = 0
            for i, b in enumerate(self.blocks):
                if subset >> i & 1:
                    mask |= b.mask
            yield BoolElem(mask, self.algebra.n_cells)

    def from_block_indices(self, indices) -> BoolElem:
        mask = 0
        for i in indices:
            mask |= self.blocks[i].mask
        return BoolElem(mask, self.algebra.n_cells)


def build_subalgebra(alg: FinitePowerAlgebra, blocks) -> Subalgebra:
    return Subalgebra(alg, tuple(blocks))


def enumerate_partition_atoms(b: Subalgebra) -> list[BoolElem]:
    """The finest partition of unity in b: its blocks.

    Nonzero, pairwise disjoint, joining to 1 (guaranteed by construction).
    Superadditivity of x -> |Q_x psi|^2 makes this partition minimize the
    largest per-part norm among all partitions of unity in b.
    """
    return list(b.blocks)


def iter_partitions_of_unity(b: Subalgebra) -> Iterator[tuple[BoolElem, ...]]:
    """All partitions of unity in b: one per set partition of its blocks."""
    k = len(b.blocks)

    def rec(i: int, groups: list[list[int]]) -> Iterator[list[list[int]]]:
        if i == k:
            yield [list(g) for g in groups]
            return
        for g in groups:
            g.append(i)
            yield from rec(i + 1, groups)
            g.pop()
        groups.append([i])
        yield from rec(i + 1, groups)
        groups.pop()

    for grouping in rec(0, []):
        yield tuple(b.from_block_indices(g) for g in grouping)


@dataclass(frozen=True)
class Filter:
    """A filter on the finite algebra, stored by its principal generator.

    member(x) iff generator <= x; improper iff generator = 0.
    """

    generator: BoolElem

    def member(self, x: BoolElem) -> bool:
        return self.generator.le(x)

    @property
    def is_improper(self) -> bool:
        return self.generator.is_zero


def filter_to_closed_set(f: Filter) -> frozenset[int]:
    """Closed subset of the discrete Stone space: atoms below the generator.

    An atom i lies in the clopen set of x iff i is in x, so the closed set
    sits inside clopen(x) exactly when x is a member of the filter.
    """
    return frozenset(f.generator.indices())


def verify_boolean_axioms(n: int, triples) -> list[str]:
    """Check lattice/Boolean axioms on the given (x, y, z) mask triples.

    Returns a list of human-readable violation witnesses (empty = all pass).
    """
    failures = []
    for xm, ym, zm in triples:
        x, y, z = BoolElem(xm, n), BoolElem(ym, n), BoolElem(zm, n)
        checks = [
            ("meet assoc", (x & y) & z == x & (y & z)),
            ("join assoc", (x | y) | z == x | (y | z)),
            ("meet comm", x & y == y & x),
            ("join comm", x | y == y | x),
            ("distrib meet", x & (y | z) == (x & y) | (x & z)),
            ("distrib join", x | (y & z) == (x | y) & (x | z)),
            ("de morgan meet", ~(x & y) == ~x | ~y),
            ("de morgan join", ~(x | y) == ~x & ~y),
            ("complement meet", (x & ~x).is_zero),
            ("complement join", (x | ~x).is_one),
            ("absorption", x & (x | y) == x and x | (x & y) == x),
        ]
        for name, ok in checks:
            if not ok:
                failures.append(f"{name} fails at x={x} y={y} z={z}")
    return failures


def stone_membership_law(n: int) -> bool:
    """closed(filter) inside clopen(x) iff x in filter, for every principal
    filter and every x; exhaustive."""
    for gen_mask in range(1 << n):
        f = Filter(BoolElem(gen_mask, n))
        closed = filter_to_closed_set(f)
        for x_mask in range(1 << n):
            x = BoolElem(x_mask, n)
            inside = closed <= set(x.indices())
            if inside != f.member(x):
                return False
    return True


def subsets_of(x: BoolElem) -> Iterator[BoolElem]:
    """All elements below x, ascending by mask."""
    sub = 0
    while True:
        yield BoolElem(sub, x.n)
        if sub == x.mask:
            return
        sub = (sub - x.mask) & x.mask


def random_partition_blocks(rng, n: int, max_blocks: int | None = None) -> list[BoolElem]:
    """A random block partition of {0..n-1}, for randomized sweeps."""
    if n == 0:
        return []
    k = rng.randint(1, max_blocks or n)
    assignment = [rng.randrange(k) for _ in range(n)]
    groups: dict[int, list[int]] = {}
    for i, g in enumerate(assignment):
        groups.setdefault(g, []).append(i)
    return [BoolElem.from_indices(g, n) for g in sorted(groups.values())]
