"""Points, semipoints and the finite spaces built from them.

A finite space stores its closed sets explicitly as integer bitmasks over the
point list, so topologies that are not given by a specialization order can
still be represented and compared exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import guard_oracle
from .core import FiniteLattice, Label
from .errors import LatticeError, NotASpace
from .props import PropertyReport, meet_prime_indices


def _bits(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class TwoPoint:
    """A map ``L -> 2`` recorded by the set of elements it sends to 0."""

    kind: str  # "semipoint" or "point"
    zero_set: frozenset

    def __call__(self, label: Label) -> int:
        return 0 if label in self.zero_set else 1


class FiniteSpace:
    """Finite topological space given by its family of closed sets."""

    def __init__(self, points: Iterable[Label], closed_sets: Iterable[int], *, name: str = ""):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise NotASpace("duplicate point labels")
        self.name = name
        self.full = (1 << len(self.points)) - 1
        family = set(int(c) for c in closed_sets)
        if any(c & ~self.full for c in family):
            raise NotASpace("closed set mentions unknown points")
        if 0 not in family or self.full not in family:
            raise NotASpace("closed sets must include the empty set and the whole space")
        for a in family:
            for b in family:
                if a | b not in family or a & b not in family:
                    raise NotASpace("closed sets are not closed under union and intersection")
        self.closed_sets = tuple(sorted(family))
        self._index = {p: i for i, p in enumerate(self.points)}

    @classmethod
    def from_closed_labels(cls, points, families, *, name: str = "") -> "FiniteSpace":
        points = tuple(points)
        index = {p: i for i, p in enumerate(points)}
        masks = [sum(1 << index[p] for p in fam) for fam in families]
        return cls(points, masks, name=name)

    @classmethod
    def from_specialization(cls, points, rel, *, name: str = "") -> "FiniteSpace":
        """Alexandrov space whose closed sets are the up-sets of ``rel``.

        ``rel[x][y]`` means ``y`` lies in the closure of ``x``; it must be a
        preorder.
        """
        points = tuple(points)
        n = len(points)
        ups = [sum(1 << j for j in range(n) if rel[i][j]) for i in range(n)]
        family = {0}
        for u in ups:
            family |= {f | u for f in family}
        return cls(points, family, name=name)

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return f"<FiniteSpace{name} with {len(self.points)} points, {len(self.closed_sets)} closed sets>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and self.closed_sets == other.closed_sets

    def __hash__(self) -> int:
        return hash((self.points, self.closed_sets))

    def index(self, point: Label) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise LatticeError(f"unknown point {point!r}") from None

    def mask(self, points: Iterable[Label]) -> int:
        return sum(1 << self.index(p) for p in set(points))

    def labels_of(self, mask: int) -> frozenset:
        return frozenset(self.points[i] for i in _bits(mask))

    def ordered(self, mask: int) -> list[Label]:
        return [self.points[i] for i in _bits(mask)]

    @property
    def open_sets(self) -> tuple[int, ...]:
        return tuple(sorted(self.full & ~c for c in self.closed_sets))

    def is_closed(self, points: Iterable[Label]) -> bool:
        return self.mask(points) in set(self.closed_sets)

    def is_open(self, points: Iterable[Label]) -> bool:
        return self.full & ~self.mask(points) in set(self.closed_sets)

    def closure_mask(self, i: int) -> int:
        acc = self.full
        for c in self.closed_sets:
            if c >> i & 1:
                acc &= c
        return acc

    def closure(self, point: Label) -> frozenset:
        return self.labels_of(self.closure_mask(self.index(point)))

    def specialization(self) -> np.ndarray:
        """``s[x, y]`` iff ``y`` lies in the closure of ``{x}``."""
        n = len(self.points)
        s = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in _bits(self.closure_mask(i)):
                s[i, j] = True
        return s

    def generic_points(self, mask: int) -> list[Label]:
        return [self.points[i] for i in _bits(mask) if self.closure_mask(i) == mask]

    def is_irreducible(self, mask: int) -> bool:
        """Nonempty and not the union of two proper closed subsets.

        For a finite family this is the same as not being the union of all its
        proper closed subsets.
        """
        if mask == 0:
            return False
        covered = 0
        for c in self.closed_sets:
            if c != mask and c & ~mask == 0:
                covered |= c
        return covered != mask


@dataclass(frozen=True, eq=False)
class PointMap:
    """A map of finite spaces; ``mapping[i]`` is the target index of source point ``i``."""

    source: FiniteSpace
    target: FiniteSpace
    mapping: tuple[int, ...]

    def __call__(self, point: Label) -> Label:
        return self.target.points[self.mapping[self.source.index(point)]]

    def as_dict(self) -> dict:
        return {p: self.target.points[j] for p, j in zip(self.source.points, self.mapping)}

    def preimage(self, mask: int) -> int:
        return sum(1 << i for i, j in enumerate(self.mapping) if mask >> j & 1)

    def is_continuous(self) -> bool:
        closed = set(self.source.closed_sets)
        return all(self.preimage(c) in closed for c in self.target.closed_sets)

    def is_homeomorphism(self) -> bool:
        if sorted(self.mapping) != list(range(len(self.target))) or len(self.source) != len(self.target):
            return False
        image = {sum(1 << self.mapping[i] for i in _bits(c)) for c in self.source.closed_sets}
        return self.is_continuous() and image == set(self.target.closed_sets)


# two-point maps


def semipoints(L: FiniteLattice) -> list[TwoPoint]:
    """One semipoint per element ``x``: the map with zero set ``[0, x]``."""
    return [TwoPoint("semipoint", frozenset(L.down(x))) for x in L.labels]


def meet_primes(L: FiniteLattice) -> list[Label]:
    return [L.labels[i] for i in meet_prime_indices(L)]


def points(L: FiniteLattice) -> list[TwoPoint]:
    """One point per meet-prime ``p``: the map with zero set ``[0, p]``."""
    return [TwoPoint("point", frozenset(L.down(p))) for p in meet_primes(L)]


def _two_valued_maps(L: FiniteLattice, *, preserve_meets: bool, chunk: int = 4096):
    """Yield bitmasks (bit i set iff element i goes to 1) of join-preserving maps."""
    guard_oracle("two-valued map enumeration", L.n)
    n = L.n
    J, M = L.join_table, L.meet_table
    shifts = np.arange(n)
    total = 1 << n
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        f = ((codes[:, None] >> shifts) & 1).astype(bool)
        ok = ~f[:, L.bottom_index]
        ok &= (f[:, J] == (f[:, :, None] | f[:, None, :])).all(axis=(1, 2))
        if preserve_meets:
            ok &= f[:, L.top_index]
            ok &= (f[:, M] == (f[:, :, None] & f[:, None, :])).all(axis=(1, 2))
        yield from (int(c) for c in codes[ok])


def semipoints_bruteforce(L: FiniteLattice) -> list[TwoPoint]:
    """Every join-preserving map ``L -> 2``, found by enumerating all ``2**n`` maps."""
    return [TwoPoint("semipoint", frozenset(L.labels[i] for i in range(L.n) if not c >> i & 1))
            for c in _two_valued_maps(L, preserve_meets=False)]


def points_bruteforce(L: FiniteLattice) -> list[TwoPoint]:
    """Every map ``L -> 2`` preserving joins, finite meets and the top."""
    return [TwoPoint("point", frozenset(L.labels[i] for i in range(L.n) if not c >> i & 1))
            for c in _two_valued_maps(L, preserve_meets=True)]


# spaces


def _upset_mask(L: FiniteLattice, i: int) -> int:
    return sum(1 << int(j) for j in np.flatnonzero(L.leq[i]))


def fspcnt(L: FiniteLattice) -> FiniteSpace:
    """Semipoint space: the elements of ``L``, closed sets the finite unions of ``[l, 1]``."""
    family = {0}
    for i in range(L.n):
        u = _upset_mask(L, i)
        family |= {f | u for f in family}
    return FiniteSpace(L.labels, family, name=f"fSpcnt({L.name})" if L.name else "")


def zero_locus(L: FiniteLattice, primes: Sequence[int], l: int) -> int:
    """Bitmask over ``primes`` of those ``p`` with ``l <= p``."""
    return sum(1 << k for k, p in enumerate(primes) if L.leq[l, p])


def spcnt(L: FiniteLattice) -> FiniteSpace:
    """Point space: meet-primes of ``L`` with closed sets ``Z_l = {p : l <= p}``."""
    mp = meet_prime_indices(L)
    family = {zero_locus(L, mp, l) for l in range(L.n)}
    return FiniteSpace([L.labels[p] for p in mp], family, name=f"Spcnt({L.name})" if L.name else "")


def comparison_map(L: FiniteLattice) -> PointMap:
    """Inclusion of the meet-primes into the semipoint space."""
    return PointMap(spcnt(L), fspcnt(L), tuple(meet_prime_indices(L)))


def is_sober(X: FiniteSpace) -> PropertyReport:
    for c in X.closed_sets:
        if X.is_irreducible(c):
            generic = X.generic_points(c)
            if len(generic) != 1:
                return PropertyReport(
                    "sober", False, tuple(X.ordered(c)),
                    f"irreducible closed set with {len(generic)} generic points",
                )
    return PropertyReport("sober", True)


class OpenSetLattice(FiniteLattice):
    """The frame of open sets of a finite space.

    Labels are frozensets of point labels; ``space`` and ``opens`` (bitmasks in
    element order) keep the link back to the space.
    """

    space: FiniteSpace
    opens: tuple[int, ...]

    def open_mask(self, label) -> int:
        return self.opens[self.index(label)]

    def element_of(self, mask: int):
        return self.labels[self._by_mask[mask]]


def open_set_lattice(X: FiniteSpace, *, name: str = "") -> OpenSetLattice:
    opens = sorted(X.open_sets, key=lambda m: (bin(m).count("1"), _bits(m)))
    pos = {m: i for i, m in enumerate(opens)}
    n = len(opens)
    leq = np.array([[a & ~b == 0 for b in opens] for a in opens], dtype=bool).reshape(n, n)
    meet = np.array([[pos[a & b] for b in opens] for a in opens], dtype=np.intp).reshape(n, n)
    join = np.array([[pos[a | b] for b in opens] for a in opens], dtype=np.intp).reshape(n, n)
    lat = OpenSetLattice._trusted([X.labels_of(m) for m in opens], leq, meet, join,
                                  name or (f"O({X.name})" if X.name else ""))
    lat.space = X
    lat.opens = tuple(opens)
    lat._by_mask = pos
    return lat
