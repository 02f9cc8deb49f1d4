"""Finite bounded lattices, lattice maps and the basic constructions on them.

Elements are identified by their position in the input label list. Every
public function speaks labels; the ``leq``, ``meet_table`` and ``join_table``
arrays speak indices. Searches that return a witness return the
lexicographically least one in input order.
"""

from __future__ import annotations

import enum
import graphlib
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .config import guard_elements
from .errors import (
    CyclicCovers,
    DuplicateLabel,
    FlagFailed,
    LatticeError,
    MissingBounds,
    NotALattice,
    NotAutomorphism,
    NotClosed,
    NotMonotone,
    UnknownLabel,
)

Label = Hashable


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _bound_table(leq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Greatest lower bounds for every pair, plus a mask of pairs where one exists.

    The candidate for ``glb(a, b)`` is the common lower bound with the largest
    down-set; it is accepted only if every common lower bound lies below it.
    """
    n = len(leq)
    depth = leq.sum(axis=0)
    cols = np.arange(n)
    table = np.empty((n, n), dtype=np.intp)
    ok = np.empty((n, n), dtype=bool)
    for a in range(n):
        lower = leq[:, a][:, None] & leq
        cand = np.where(lower, depth[:, None], -1).argmax(axis=0)
        exists = lower[cand, cols]
        dominated = ~(lower & ~leq[:, cand]).any(axis=0)
        table[a] = cand
        ok[a] = exists & dominated
    return table, ok


class FiniteLattice:
    """A finite bounded lattice given by its order relation.

    ``leq[i, j]`` is true iff element ``i`` is below element ``j``. Meet and join
    tables are derived at construction and a :class:`NotALattice` error names
    the first pair without a unique bound.
    """

    def __init__(self, labels: Iterable[Label], leq, *, name: str = ""):
        labels = tuple(labels)
        if not labels:
            raise LatticeError("a lattice needs at least one element")
        _check_labels(labels)
        leq = np.array(leq, dtype=bool)
        n = len(labels)
        if leq.shape != (n, n):
            raise LatticeError(f"order relation has shape {leq.shape}, expected {(n, n)}")
        if not leq.diagonal().all():
            raise LatticeError("order relation is not reflexive")
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = np.argwhere(both)[0]
            raise LatticeError(f"order relation is not antisymmetric at ({labels[i]}, {labels[j]})")
        li = leq.astype(np.int64)
        if ((li @ li > 0) & ~leq).any():
            raise LatticeError("order relation is not transitive")
        meet, meet_ok = _bound_table(leq)
        join, join_ok = _bound_table(leq.T)
        bad = np.triu(~(meet_ok & join_ok))
        if bad.any():
            i, j = np.argwhere(bad)[0]
            reason = "no greatest lower bound" if not meet_ok[i, j] else "no least upper bound"
            raise NotALattice(labels[i], labels[j], reason)
        self._init(labels, leq, meet, join, name)

    @classmethod
    def _trusted(cls, labels, leq, meet, join, name=""):
        obj = cls.__new__(cls)
        obj._init(tuple(labels), np.asarray(leq, dtype=bool), meet, join, name)
        return obj

    def _init(self, labels, leq, meet, join, name):
        self.labels = labels
        self.name = name
        self.n = len(labels)
        self.leq = _readonly(np.array(leq, dtype=bool))
        self.meet_table = _readonly(np.array(meet, dtype=np.intp))
        self.join_table = _readonly(np.array(join, dtype=np.intp))
        self._index = {lab: i for i, lab in enumerate(labels)}
        self.bottom_index = int(reduce(lambda a, b: self.meet_table[a, b], range(self.n)))
        self.top_index = int(reduce(lambda a, b: self.join_table[a, b], range(self.n)))

    @classmethod
    def from_relation(cls, labels: Sequence[Label], le, *, name: str = "") -> "FiniteLattice":
        """Build from a predicate ``le(a, b)`` on labels."""
        labels = tuple(labels)
        leq = [[bool(le(a, b)) for b in labels] for a in labels]
        return cls(labels, leq, name=name)

    # label-level access

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise UnknownLabel(label) from None

    def indices(self, labels: Iterable[Label]) -> list[int]:
        return [self.index(x) for x in labels]

    def label(self, i: int) -> Label:
        return self.labels[i]

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        try:
            return label in self._index
        except TypeError:
            return False

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return f"<FiniteLattice{name} with {self.n} elements>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.leq, other.leq)

    def __hash__(self) -> int:
        return hash((self.labels, self.leq.tobytes()))

    @property
    def bottom(self) -> Label:
        return self.labels[self.bottom_index]

    @property
    def top(self) -> Label:
        return self.labels[self.top_index]

    def le(self, a: Label, b: Label) -> bool:
        return bool(self.leq[self.index(a), self.index(b)])

    def meet(self, a: Label, b: Label) -> Label:
        return self.labels[self.meet_table[self.index(a), self.index(b)]]

    def join(self, a: Label, b: Label) -> Label:
        return self.labels[self.join_table[self.index(a), self.index(b)]]

    def meet_all(self, elements: Iterable[Label]) -> Label:
        return meet_all(self, elements)

    def join_all(self, elements: Iterable[Label]) -> Label:
        return join_all(self, elements)

    def down(self, a: Label) -> list[Label]:
        i = self.index(a)
        return [self.labels[j] for j in np.flatnonzero(self.leq[:, i])]

    def up(self, a: Label) -> list[Label]:
        i = self.index(a)
        return [self.labels[j] for j in np.flatnonzero(self.leq[i])]

    # derived structure

    @cached_property
    def covers(self) -> np.ndarray:
        """``covers[i, j]`` iff ``j`` covers ``i``."""
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        li = lt.astype(np.int64)
        return _readonly(lt & ~(li @ li > 0))

    def hasse_edges(self) -> list[tuple[Label, Label]]:
        return [(self.labels[i], self.labels[j]) for i, j in np.argwhere(self.covers)]

    def relabel(self, mapping, *, name: str | None = None) -> "FiniteLattice":
        """Same order structure under new labels; ``mapping`` is a dict or callable."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return FiniteLattice._trusted(
            [f(x) for x in self.labels], self.leq, self.meet_table, self.join_table,
            self.name if name is None else name,
        )


def _check_labels(labels: Sequence[Label]) -> None:
    seen = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabel(lab)
        seen.add(lab)


def from_covers(labels: Sequence[Label], covers: Iterable[tuple[Label, Label]], *, name: str = "") -> FiniteLattice:
    """Build a lattice from its Hasse diagram; ``(a, b)`` means ``a < b``."""
    labels = tuple(labels)
    if not labels:
        raise LatticeError("a lattice needs at least one element")
    _check_labels(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    preds: dict[int, set[int]] = {i: set() for i in range(len(labels))}
    for a, b in covers:
        for x in (a, b):
            if x not in index:
                raise UnknownLabel(x)
        if a == b:
            raise CyclicCovers(f"cover relation has a loop at {a}")
        preds[index[b]].add(index[a])
    try:
        order = list(graphlib.TopologicalSorter(preds).static_order())
    except graphlib.CycleError as exc:
        cycle = [labels[i] for i in exc.args[1]]
        raise CyclicCovers(f"cover relation has a cycle through {cycle}") from None
    below = [0] * len(labels)
    for j in order:
        mask = 1 << j
        for i in preds[j]:
            mask |= below[i]
        below[j] = mask
    n = len(labels)
    leq = np.zeros((n, n), dtype=bool)
    for j, mask in enumerate(below):
        for i in range(n):
            if mask >> i & 1:
                leq[i, j] = True
    return FiniteLattice(labels, leq, name=name)


def meet_all(L: FiniteLattice, elements: Iterable[Label]) -> Label:
    """Greatest lower bound of a set; the empty meet is the top."""
    acc = L.top_index
    for i in L.indices(elements):
        acc = L.meet_table[acc, i]
    return L.labels[acc]


def join_all(L: FiniteLattice, elements: Iterable[Label]) -> Label:
    """Least upper bound of a set; the empty join is the bottom."""
    acc = L.bottom_index
    for i in L.indices(elements):
        acc = L.join_table[acc, i]
    return L.labels[acc]


def singleton(label: Label = "0", *, name: str = "1") -> FiniteLattice:
    return FiniteLattice([label], [[True]], name=name)


def product(L1: FiniteLattice, L2: FiniteLattice, *, name: str = "") -> FiniteLattice:
    """Componentwise product; elements are label pairs in lexicographic order."""
    n1, n2 = L1.n, L2.n
    guard_elements("product", n1 * n2)
    labels = [(a, b) for a in L1.labels for b in L2.labels]
    leq = (L1.leq[:, None, :, None] & L2.leq[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    meet = (L1.meet_table[:, None, :, None] * n2 + L2.meet_table[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    join = (L1.join_table[:, None, :, None] * n2 + L2.join_table[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    name = name or (f"{L1.name}x{L2.name}" if L1.name and L2.name else "")
    return FiniteLattice._trusted(labels, leq, meet, join, name)


def product_projections(L1: FiniteLattice, L2: FiniteLattice):
    """The product together with its two certified projection maps."""
    P = product(L1, L2)
    everything = frozenset(Flag)
    p1 = LatticeMap(P, L1, tuple(i // L2.n for i in range(P.n)), everything)
    p2 = LatticeMap(P, L2, tuple(i % L2.n for i in range(P.n)), everything)
    return P, p1, p2


def opposite(L: FiniteLattice, *, name: str | None = None) -> FiniteLattice:
    """Order-dual lattice on the same labels."""
    return FiniteLattice._trusted(
        L.labels, L.leq.T, L.join_table, L.meet_table,
        f"{L.name}^op" if name is None and L.name else (name or ""),
    )


def bounded_sublattice(L: FiniteLattice, elements: Iterable[Label], *, name: str = ""):
    """Return ``(sub, inclusion)`` if ``elements`` is a bounded sublattice of ``L``.

    The inclusion is certified to preserve joins, meets and both bounds.
    """
    idx = sorted(set(L.indices(elements)))
    members = set(idx)
    if L.bottom_index not in members or L.top_index not in members:
        raise MissingBounds(f"subset must contain {L.bottom} and {L.top}")
    for a in idx:
        for b in idx:
            for op, table in (("meet", L.meet_table), ("join", L.join_table)):
                if table[a, b] not in members:
                    raise NotClosed(L.labels[a], L.labels[b], op)
    pos = {i: k for k, i in enumerate(idx)}
    ix = np.array(idx)
    meet = np.vectorize(pos.__getitem__, otypes=[np.intp])(L.meet_table[np.ix_(ix, ix)])
    join = np.vectorize(pos.__getitem__, otypes=[np.intp])(L.join_table[np.ix_(ix, ix)])
    sub = FiniteLattice._trusted([L.labels[i] for i in idx], L.leq[np.ix_(ix, ix)], meet, join, name)
    return sub, LatticeMap(sub, L, tuple(idx), frozenset(Flag))


def find_diamond_obstruction(L: FiniteLattice) -> tuple[Label, Label, Label] | None:
    """Three distinct elements with pairwise meet bottom and pairwise join top."""
    comp = (L.meet_table == L.bottom_index) & (L.join_table == L.top_index)
    np.fill_diagonal(comp, False)
    n = L.n
    for i in range(n):
        for j in range(i + 1, n):
            if not comp[i, j]:
                continue
            ks = np.flatnonzero(comp[i, j + 1:] & comp[j, j + 1:])
            if len(ks):
                k = j + 1 + int(ks[0])
                return L.labels[i], L.labels[j], L.labels[k]
    return None


def _automorphism_indices(L: FiniteLattice, sigma: Mapping[Label, Label]) -> list[int]:
    missing = [x for x in L.labels if x not in sigma]
    if missing:
        raise NotAutomorphism((missing[0],), "not defined everywhere")
    perm = [L.index(sigma[x]) for x in L.labels]
    seen: dict[int, int] = {}
    for i, p in enumerate(perm):
        if p in seen:
            raise NotAutomorphism((L.labels[seen[p]], L.labels[i]), "not injective")
        seen[p] = i
    moved = L.leq[np.ix_(perm, perm)]
    if not np.array_equal(moved, L.leq):
        i, j = np.argwhere(moved != L.leq)[0]
        raise NotAutomorphism((L.labels[i], L.labels[j]), "order not preserved and reflected")
    return perm


def fixed_sublattice(L: FiniteLattice, sigma: Mapping[Label, Label], *, name: str = "") -> FiniteLattice:
    """Elements fixed by a lattice automorphism, as a bounded sublattice."""
    perm = _automorphism_indices(L, sigma)
    fixed = [L.labels[i] for i, p in enumerate(perm) if i == p]
    sub, _ = bounded_sublattice(L, fixed, name=name)
    return sub


def isomorphism(L1: FiniteLattice, L2: FiniteLattice) -> dict[Label, Label] | None:
    """An order isomorphism ``L1 -> L2`` as a label dict, or None."""
    if L1.n != L2.n:
        return None

    def signature(L):
        return list(zip(L.leq.sum(axis=0).tolist(), L.leq.sum(axis=1).tolist()))

    s1, s2 = signature(L1), signature(L2)
    if sorted(s1) != sorted(s2):
        return None
    order = sorted(range(L1.n), key=lambda i: (s1[i][0], i))
    assign: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        i = order[k]
        for j in range(L2.n):
            if j in used or s2[j] != s1[i]:
                continue
            if all(L1.leq[i, a] == L2.leq[j, b] and L1.leq[a, i] == L2.leq[b, j] for a, b in assign.items()):
                assign[i] = j
                used.add(j)
                if extend(k + 1):
                    return True
                del assign[i]
                used.discard(j)
        return False

    if not extend(0):
        return None
    return {L1.labels[i]: L2.labels[j] for i, j in assign.items()}


def is_isomorphic(L1: FiniteLattice, L2: FiniteLattice) -> bool:
    return isomorphism(L1, L2) is not None


# lattice maps


class Flag(str, enum.Enum):
    JOINS = "preserves_joins"
    MEETS = "preserves_finite_meets"
    BOTTOM = "preserves_bottom"
    TOP = "preserves_top"

    def __str__(self) -> str:
        return self.value


CONFLUENT = frozenset({Flag.JOINS, Flag.MEETS, Flag.TOP})


def _flag_witness(source: FiniteLattice, target: FiniteLattice, image: np.ndarray, flag: Flag):
    """None if ``flag`` holds, else the least failing tuple of source labels."""
    lab = source.labels
    if flag is Flag.BOTTOM:
        return None if image[source.bottom_index] == target.bottom_index else (source.bottom,)
    if flag is Flag.TOP:
        return None if image[source.top_index] == target.top_index else (source.top,)
    if flag is Flag.JOINS:
        src_table, tgt_table = source.join_table, target.join_table
    else:
        src_table, tgt_table = source.meet_table, target.meet_table
    bad = image[src_table] != tgt_table[image[:, None], image[None, :]]
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return lab[i], lab[j]
    if flag is Flag.JOINS and image[source.bottom_index] != target.bottom_index:
        return ()  # the empty join
    return None


@dataclass(frozen=True, eq=False)
class LatticeMap:
    """A monotone map of finite lattices carrying verified preservation flags.

    ``image[i]`` is the target index of source element ``i``. Monotonicity and
    every flag in ``certified`` are checked exhaustively on construction.
    """

    source: FiniteLattice
    target: FiniteLattice
    image: tuple[int, ...]
    certified: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        img = np.asarray(self.image, dtype=np.intp)
        if img.shape != (self.source.n,):
            raise LatticeError("map must be total on the source")
        if ((img < 0) | (img >= self.target.n)).any():
            raise LatticeError("map image lies outside the target")
        object.__setattr__(self, "image", tuple(int(x) for x in img))
        object.__setattr__(self, "certified", frozenset(Flag(f) for f in self.certified))
        bad = self.source.leq & ~self.target.leq[img[:, None], img[None, :]]
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise NotMonotone(self.source.labels[i], self.source.labels[j])
        for flag in sorted(self.certified, key=list(Flag).index):
            witness = _flag_witness(self.source, self.target, img, flag)
            if witness is not None:
                raise FlagFailed(flag.value, witness)

    def __call__(self, label: Label) -> Label:
        return self.target.labels[self.image[self.source.index(label)]]

    def __eq__(self, other) -> bool:
        """Equal as functions; certified flags are not compared."""
        if not isinstance(other, LatticeMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.image == other.image

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.image))

    def as_dict(self) -> dict[Label, Label]:
        return {a: self.target.labels[i] for a, i in zip(self.source.labels, self.image)}

    def holds(self, flag: Flag | str) -> bool:
        img = np.asarray(self.image, dtype=np.intp)
        return _flag_witness(self.source, self.target, img, Flag(flag)) is None

    def verified_flags(self) -> frozenset:
        return frozenset(f for f in Flag if self.holds(f))

    @property
    def is_confluent(self) -> bool:
        return CONFLUENT <= self.verified_flags()

    @property
    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.target.n

    def then(self, g: "LatticeMap") -> "LatticeMap":
        """Composite ``g after self``; keeps the flags both factors carry."""
        if g.source != self.target:
            raise LatticeError("maps are not composable")
        return LatticeMap(self.source, g.target, tuple(g.image[i] for i in self.image),
                          self.certified & g.certified)


def check_map(source: FiniteLattice, target: FiniteLattice, mapping: Mapping[Label, Label],
              flags: Iterable[Flag | str] = ()) -> LatticeMap:
    """Verify a raw label mapping and return it as a certified :class:`LatticeMap`."""
    missing = [x for x in source.labels if x not in mapping]
    if missing:
        raise LatticeError(f"map is undefined at {missing[0]!r}")
    image = tuple(target.index(mapping[x]) for x in source.labels)
    return LatticeMap(source, target, image, frozenset(Flag(f) for f in flags))


def check_confluent(source: FiniteLattice, target: FiniteLattice, mapping: Mapping[Label, Label]) -> LatticeMap:
    return check_map(source, target, mapping, CONFLUENT)


def certify(source: FiniteLattice, target: FiniteLattice, mapping: Mapping[Label, Label]) -> LatticeMap:
    """Certify every flag that holds for a monotone mapping."""
    f = check_map(source, target, mapping)
    return LatticeMap(source, target, f.image, f.verified_flags())


def identity_map(L: FiniteLattice) -> LatticeMap:
    return LatticeMap(L, L, tuple(range(L.n)), frozenset(Flag))
