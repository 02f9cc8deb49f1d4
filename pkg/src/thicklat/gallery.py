"""Named lattices with expected results, plus random lattice generators.

Each :class:`GalleryEntry` carries an ``expected`` dict keyed by the names in
:data:`OBSERVABLES`; :func:`observe` computes the live value for a key so the
test suite can compare the two.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .config import guard_elements
from .core import Flag, FiniteLattice, LatticeMap, find_diamond_obstruction, fixed_sublattice, is_isomorphic
from .props import is_distributive, is_modular, is_semimodular, is_spatial, join_prime_indices
from .spectra import fspcnt, meet_primes, open_set_lattice, spcnt

ATOM_NAMES = "xyzw"


def _atom(i: int) -> str:
    return ATOM_NAMES[i] if i < len(ATOM_NAMES) else f"a{i}"


def _subset_label(bits: int, k: int, empty: str = "{}") -> str:
    members = [_atom(i) for i in range(k) if bits >> i & 1]
    return "{" + ",".join(members) + "}" if members else empty


def _subsets_in_order(k: int) -> list[int]:
    """Bitmasks ordered by size, then lexicographically in atom order."""
    return sorted(range(1 << k), key=lambda m: (bin(m).count("1"), [i for i in range(k) if m >> i & 1]))


# standard lattices


def diamond() -> FiniteLattice:
    labels = ["0", "l", "m", "n", "1"]
    rel = {("0", x) for x in labels} | {(x, "1") for x in labels} | {(x, x) for x in labels}
    return FiniteLattice.from_relation(labels, lambda a, b: (a, b) in rel, name="diamond")


def pentagon() -> FiniteLattice:
    """``0 < m < n < 1`` and ``0 < l < 1``."""
    rank = {"0": 0, "m": 1, "n": 2, "1": 3}
    labels = ["0", "l", "m", "n", "1"]

    def le(a, b):
        if a == b or a == "0" or b == "1":
            return True
        return a in rank and b in rank and rank[a] <= rank[b]

    return FiniteLattice.from_relation(labels, le, name="pentagon")


def stem_diamond() -> FiniteLattice:
    """A diamond whose three atoms sit above a common element ``x > 0``."""
    labels = ["0", "x", "l", "m", "n", "1"]
    height = {"0": 0, "x": 1, "l": 2, "m": 2, "n": 2, "1": 3}
    return FiniteLattice.from_relation(
        labels, lambda a, b: a == b or height[a] < height[b], name="stem",
    )


def boolean(n: int) -> FiniteLattice:
    """Subsets of ``n`` atoms named x, y, z, w (then a4, a5, ...)."""
    guard_elements("boolean lattice", 1 << n)
    masks = _subsets_in_order(n)
    arr = np.array(masks)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    return FiniteLattice([_subset_label(m, n) for m in masks], leq, name=f"B{n}")


def chain(n: int) -> FiniteLattice:
    if n < 1:
        raise ValueError("a chain needs at least one element")
    guard_elements("chain", n)
    idx = np.arange(n)
    return FiniteLattice([str(i) for i in range(n)], idx[:, None] <= idx[None, :], name=f"C{n}")


def two() -> FiniteLattice:
    return chain(2)


def one() -> FiniteLattice:
    return FiniteLattice(["0"], [[True]], name="1")


# entries with expected values


@dataclass(frozen=True, eq=False)
class GalleryEntry:
    lattice: FiniteLattice
    expected: dict
    provenance: str
    serre: dict | None = None
    tensor_sub: tuple | None = None

    @property
    def name(self) -> str:
        return self.lattice.name


def _entry(L: FiniteLattice, provenance: str, **expected) -> GalleryEntry:
    return GalleryEntry(L, expected, provenance)


def a2_lattice() -> GalleryEntry:
    L = diamond().relabel({"0": "0", "l": "P1", "m": "P2", "n": "S2", "1": "1"}, name="a2")
    return GalleryEntry(L, {
        "size": 5,
        "fspcnt_points": 5,
        "fspcnt_generic": ("0",),
        "fspcnt_closed_points": ("1",),
        "fspcnt_specialization_is_order": True,
        "spcnt_points": (),
        "distributive": False,
        "modular": True,
        "omega_size": 1,
        "free_frame_size": 10,
    }, "thick subcategories of the derived category of the A2 quiver")


def k_times_k() -> GalleryEntry:
    labels = ["0", "M", "N", "1"]
    L = FiniteLattice.from_relation(
        labels, lambda a, b: a == b or a == "0" or b == "1", name="kxk",
    )
    return GalleryEntry(L, {
        "size": 4,
        "fspcnt_points": 4,
        "fspcnt_open_lattice_size": 6,
        "fspcnt_generic": ("0",),
        "fspcnt_closed_points": ("1",),
        "spcnt_points": ("M", "N"),
        "spcnt_discrete": True,
        "classify": True,
        "distributive": True,
    }, "thick subcategories of the derived category of k x k")


def p1_model(num_points: int, num_twists: int) -> GalleryEntry:
    """Finite window on thick subcategories of the derived projective line.

    Ideals are the subsets of ``num_points`` closed points (the empty one named
    ``0``), twists ``O(i)`` for ``i`` in Z/num_twists, and a top ``1``.
    Twists are atoms, pairwise complementary, and complementary to every
    nonzero ideal. The Serre automorphism shifts twists by -2.
    """
    p, m = num_points, num_twists
    if p < 0 or m < 0:
        raise ValueError("counts must be non-negative")
    guard_elements("p1 model", (1 << p) + m + 1)
    masks = _subsets_in_order(p)
    ideals = [_subset_label(b, p, empty="0") for b in masks]
    twists = [f"O({i})" for i in range(m)]
    labels = ideals + twists + ["1"]
    n = len(labels)
    leq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            leq[i, j] = a & ~b == 0
    k = len(ideals)
    leq[0, :] = True
    leq[:, -1] = True
    leq[np.arange(k, n), np.arange(k, n)] = True
    L = FiniteLattice(labels, leq, name=f"p1_{p}_{m}")
    serre = {x: x for x in labels}
    serre.update({f"O({i})": f"O({(i - 2) % m})" for i in range(m)})

    obstruction = None
    if p >= 1 and m >= 2:
        obstruction = ("{x}", "O(0)", "O(1)")
    elif m >= 3:
        obstruction = ("O(0)", "O(1)", "O(2)")
    modular = not (p >= 2 and m >= 1)
    fixed = tuple(ideals + (twists if m <= 2 else []) + ["1"])
    expected = {
        "size": n,
        "modular": modular,
        "distributive": modular and obstruction is None,
        "diamond_obstruction": obstruction,
        "fixed_elements": fixed,
    }
    if obstruction is not None:
        expected["spcnt_points"] = ()
    if (p, m) == (2, 1):
        expected["modular_witness"] = ("{x}", "{x,y}", "O(0)")
        expected["semimodular"] = False
        expected["semimodular_witness"] = ("O(0)", "{x}")
    return GalleryEntry(L, expected, "thick subcategories of the derived projective line, truncated",
                        serre=serre, tensor_sub=tuple(ideals + ["1"]))


def preprojective_a2() -> GalleryEntry:
    labels = ["0", "P1", "P2", "A", "B", "1"]
    L = FiniteLattice.from_relation(
        labels, lambda a, b: a == b or a == "0" or b == "1", name="preprojective_a2",
    )
    serre = {"0": "0", "P1": "P2", "P2": "P1", "A": "B", "B": "A", "1": "1"}
    return GalleryEntry(L, {
        "size": 6,
        "spcnt_points": (),
        "fixed_size": 2,
        "fixed_elements": ("0", "1"),
        "diamond_obstruction": ("P1", "P2", "A"),
        "distributive": False,
        "modular": True,
        "omega_size": 1,
    }, "thick subcategories of the stable category of the preprojective algebra of type A2", serre=serre)


def letsnotmeet_map() -> LatticeMap:
    """Base change along the quiver map sending both vertices to vertex 2.

    Known on generators: both projectives go to ``P2``. The non-projective
    simple is a cone of a map between projectives that becomes invertible,
    so it goes to 0, and the top goes to ``P2``. The map preserves joins and
    the bottom, but not meets (witness ``(P1, P2)``) and not the top.
    """
    L = a2_lattice().lattice
    image = {"0": "0", "P1": "P2", "P2": "P2", "S2": "0", "1": "P2"}
    return LatticeMap(L, L, tuple(L.index(image[x]) for x in L.labels), {Flag.JOINS, Flag.BOTTOM})


GALLERY: dict[str, Callable[[], GalleryEntry]] = {
    "diamond": lambda: _entry(
        diamond(), "diamond lattice M3",
        size=5, meet_primes=(), spcnt_points=(), omega_size=1, omega_shape="one",
        distributive=False, distributive_witness=("l", "m", "n"), modular=True,
        diamond_obstruction=("l", "m", "n"), free_frame_size=10, fspcnt_points=5,
        mspec_points=(), classify=False,
    ),
    "pentagon": lambda: _entry(
        pentagon(), "pentagon lattice N5",
        size=5, meet_primes=("l", "n"), spcnt_points=("l", "n"), spcnt_discrete=True,
        omega_size=4, omega_shape="boolean2", distributive=False, modular=False,
        semimodular=False, spatial=False, free_frame_size=8, fspcnt_points=5, classify=False,
    ),
    "stem": lambda: _entry(
        stem_diamond(), "diamond placed on a stem",
        size=6, meet_primes=("0",), spcnt_points=("0",), omega_size=2, omega_shape="two",
        distributive=False,
    ),
    "boolean2": lambda: _entry(
        boolean(2), "Boolean lattice on two atoms",
        size=4, meet_primes=("{x}", "{y}"), spcnt_discrete=True, distributive=True,
        modular=True, semimodular=True, spatial=True, classify=True, omega_shape="boolean2",
        mspec_points=("{x}", "{y}"),
    ),
    "boolean3": lambda: _entry(
        boolean(3), "Boolean lattice on three atoms",
        size=8, meet_primes=("{x,y}", "{x,z}", "{y,z}"), spcnt_discrete=True,
        distributive=True, classify=True, mspec_points=("{x}", "{y}", "{z}"),
    ),
    "chain4": lambda: _entry(
        chain(4), "four-element chain",
        size=4, meet_primes=("0", "1", "2"), join_primes=("1", "2", "3"), distributive=True,
        classify=True, free_frame_size=5,
    ),
    "two": lambda: _entry(
        two(), "two-element chain",
        size=2, meet_primes=("0",), omega_shape="two", classify=True, free_frame_size=3,
        mspec_points=("1",),
    ),
    "one": lambda: _entry(
        one(), "singleton lattice",
        size=1, meet_primes=(), spcnt_points=(), omega_shape="one", free_frame_size=2,
        fspcnt_points=1,
    ),
    "a2": a2_lattice,
    "kxk": k_times_k,
    "p1_2_1": lambda: p1_model(2, 1),
    "p1_0_3": lambda: p1_model(0, 3),
    "p1_2_3": lambda: p1_model(2, 3),
    "preprojective_a2": preprojective_a2,
}

SHAPES: dict[str, Callable[[], FiniteLattice]] = {
    "one": one, "two": two, "boolean2": lambda: boolean(2), "chain3": lambda: chain(3),
}


def names() -> list[str]:
    return sorted(GALLERY)


def get(name: str) -> GalleryEntry:
    try:
        return GALLERY[name]()
    except KeyError:
        raise KeyError(name) from None


# observables


def _fspcnt_generic(L):
    X = fspcnt(L)
    return tuple(X.generic_points(X.full))


def _fspcnt_closed(L):
    X = fspcnt(L)
    return tuple(X.points[i] for i in range(len(X)) if X.closure_mask(i) == 1 << i)


def _omega_size(L):
    from .adjunctions import omega
    return omega(L)[0].n


def _omega_shape(L):
    from .adjunctions import omega
    frame = omega(L)[0]
    for name, make in SHAPES.items():
        if is_isomorphic(frame, make()):
            return name
    return None


def _classify(L):
    from .adjunctions import classify
    return classify(L).is_isomorphism


def _free_frame_size(L):
    from .adjunctions import free_frame_d
    return free_frame_d(L)[0].n


def _mspec_points(L):
    from .compare import mspec
    return tuple(mspec(L).points)


def _spcnt_discrete(L):
    X = spcnt(L)
    return len(X.closed_sets) == 1 << len(X)


def _spec_is_order(L):
    return bool(np.array_equal(fspcnt(L).specialization(), L.leq))


def _fixed(e: GalleryEntry):
    return fixed_sublattice(e.lattice, e.serre)


OBSERVABLES: dict[str, Callable[[GalleryEntry], object]] = {
    "size": lambda e: e.lattice.n,
    "meet_primes": lambda e: tuple(meet_primes(e.lattice)),
    "join_primes": lambda e: tuple(e.lattice.labels[j] for j in join_prime_indices(e.lattice)),
    "distributive": lambda e: is_distributive(e.lattice).verdict,
    "distributive_witness": lambda e: is_distributive(e.lattice).witness,
    "modular": lambda e: is_modular(e.lattice).verdict,
    "modular_witness": lambda e: is_modular(e.lattice).witness,
    "semimodular": lambda e: is_semimodular(e.lattice).verdict,
    "semimodular_witness": lambda e: is_semimodular(e.lattice).witness,
    "spatial": lambda e: is_spatial(e.lattice).verdict,
    "diamond_obstruction": lambda e: find_diamond_obstruction(e.lattice),
    "spcnt_points": lambda e: spcnt(e.lattice).points,
    "spcnt_discrete": lambda e: _spcnt_discrete(e.lattice),
    "fspcnt_points": lambda e: len(fspcnt(e.lattice)),
    "fspcnt_generic": lambda e: _fspcnt_generic(e.lattice),
    "fspcnt_closed_points": lambda e: _fspcnt_closed(e.lattice),
    "fspcnt_open_lattice_size": lambda e: open_set_lattice(fspcnt(e.lattice)).n,
    "fspcnt_specialization_is_order": lambda e: _spec_is_order(e.lattice),
    "omega_size": lambda e: _omega_size(e.lattice),
    "omega_shape": lambda e: _omega_shape(e.lattice),
    "classify": lambda e: _classify(e.lattice),
    "free_frame_size": lambda e: _free_frame_size(e.lattice),
    "mspec_points": lambda e: _mspec_points(e.lattice),
    "fixed_elements": lambda e: _fixed(e).labels,
    "fixed_size": lambda e: _fixed(e).n,
}


def observe(entry: GalleryEntry, key: str):
    return OBSERVABLES[key](entry)


# random lattices


def random_poset(rng: random.Random, k: int, density: float) -> np.ndarray:
    """Reflexive transitive closure of a random relation compatible with ``0 < 1 < ... < k-1``."""
    leq = np.eye(k, dtype=bool)
    for i, j in combinations(range(k), 2):
        if rng.random() < density:
            leq[i, j] = True
    for m in range(k):
        leq |= leq[:, m][:, None] & leq[m, :][None, :]
    return leq


def _set_lattice(family: list[int], k: int, name: str) -> FiniteLattice:
    family = sorted(family, key=lambda m: (bin(m).count("1"), [i for i in range(k) if m >> i & 1]))
    arr = np.array(family)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    names = "abcdefghij"
    labels = ["{" + ",".join(names[i] for i in range(k) if m >> i & 1) + "}" for m in family]
    return FiniteLattice(labels, leq, name=name)


def downset_lattice(leq: np.ndarray, *, name: str = "") -> FiniteLattice:
    """Down-sets of a finite poset under inclusion (always distributive)."""
    k = len(leq)
    below = [sum(1 << i for i in range(k) if leq[i, j]) for j in range(k)]
    family = [m for m in range(1 << k) if all(below[j] & ~m == 0 for j in range(k) if m >> j & 1)]
    return _set_lattice(family, k, name)


def macneille_completion(leq: np.ndarray, *, name: str = "") -> FiniteLattice:
    """Cuts ``A = lower(upper(A))`` of a finite poset under inclusion."""
    k = len(leq)
    full = (1 << k) - 1
    down = [sum(1 << i for i in range(k) if leq[i, j]) for j in range(k)]
    up = [sum(1 << j for j in range(k) if leq[i, j]) for i in range(k)]
    cuts = set()
    for m in range(1 << k):
        ub = full
        for i in range(k):
            if m >> i & 1:
                ub &= up[i]
        lb = full
        for j in range(k):
            if ub >> j & 1:
                lb &= down[j]
        cuts.add(lb)
    return _set_lattice(list(cuts), k, name)


def random_downset_lattice(rng: random.Random, max_elements: int = 12) -> FiniteLattice:
    while True:
        k = rng.randint(1, 6)
        L = downset_lattice(random_poset(rng, k, rng.random()), name="random_downsets")
        if L.n <= max_elements:
            return L


def random_lattice(rng: random.Random, max_elements: int = 12) -> FiniteLattice:
    while True:
        k = rng.randint(2, 8)
        L = macneille_completion(random_poset(rng, k, rng.random() * 0.6), name="random")
        if L.n <= max_elements:
            return L


@dataclass
class Corpus:
    gallery: list = field(default_factory=list)
    downsets: list = field(default_factory=list)
    lattices: list = field(default_factory=list)

    def all(self) -> list[FiniteLattice]:
        return self.gallery + self.downsets + self.lattices


def corpus(seed: int = 0, count: int = 200, max_elements: int = 12) -> Corpus:
    rng = random.Random(seed)
    gal = [get(n).lattice for n in names()]
    return Corpus(
        [L for L in gal if L.n <= max_elements],
        [random_downset_lattice(rng, max_elements) for _ in range(count)],
        [random_lattice(rng, max_elements) for _ in range(count)],
    )
