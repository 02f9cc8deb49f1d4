"""The two spatial-frame approximations of a finite lattice and support data.

``free_frame_d`` is the free spatial frame on a join semilattice, built from
the topology that the sets ``U_l`` generate on the semipoints. ``omega`` is the
approximation on the level of complete lattices, built from the points.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import guard_oracle
from .core import Flag, FiniteLattice, Label, LatticeMap, meet_all
from .errors import InvariantViolation, LatticeError, NotJoinPreserving, NotSober
from .props import is_distributive, meet_prime_indices
from .spectra import (
    FiniteSpace,
    OpenSetLattice,
    PointMap,
    _upset_mask,
    fspcnt,
    is_sober,
    open_set_lattice,
    spcnt,
    zero_locus,
)

ALL_FLAGS = frozenset(Flag)


def semipoint_topology(L: FiniteLattice) -> FiniteSpace:
    """Semipoints (identified with elements) topologized by the subbase ``U_l``.

    ``U_l = {x : l </= x}``. Opens are unions of finite intersections of
    subbasic sets, the empty intersection being the whole space.
    """
    guard_oracle("free spatial frame", L.n)
    full = (1 << L.n) - 1
    subbase = [full & ~_upset_mask(L, l) for l in range(L.n)]
    meets = {full}
    for u in subbase:
        meets |= {m & u for m in meets}
    opens = {0}
    for b in sorted(meets):
        opens |= {o | b for o in opens}
    return FiniteSpace(L.labels, {full & ~o for o in opens}, name=f"spt({L.name})" if L.name else "")


def free_frame_d(L: FiniteLattice) -> tuple[OpenSetLattice, LatticeMap]:
    """``(d(L), unit)`` with unit ``l -> U_l``, certified join-preserving."""
    X = semipoint_topology(L)
    frame = open_set_lattice(X, name=f"d({L.name})" if L.name else "")
    full = X.full
    image = tuple(frame._by_mask[full & ~_upset_mask(L, l)] for l in range(L.n))
    return frame, LatticeMap(L, frame, image, {Flag.JOINS})


def omega(L: FiniteLattice) -> tuple[OpenSetLattice, LatticeMap]:
    """``(Omega(L), eta)``: opens of the point space and ``l -> U_l``.

    ``eta`` is certified to preserve joins, finite meets and both bounds.
    """
    X = spcnt(L)
    frame = open_set_lattice(X, name=f"Omega({L.name})" if L.name else "")
    mp = meet_prime_indices(L)
    image = tuple(frame._by_mask[X.full & ~zero_locus(L, mp, l)] for l in range(L.n))
    return frame, LatticeMap(L, frame, image, ALL_FLAGS)


@dataclass(frozen=True, eq=False)
class Classification:
    lattice: FiniteLattice
    is_isomorphism: bool
    eta: LatticeMap
    inverse: dict = field(repr=False)
    witness: tuple | None = None
    notes: str = ""


def classification_inverse(L: FiniteLattice, frame: OpenSetLattice) -> dict:
    """``U -> meet of the meet-primes outside U`` for every open ``U``."""
    primes = frame.space.points
    return {U: meet_all(L, [p for p in primes if p not in U]) for U in frame.labels}


def classify(L: FiniteLattice) -> Classification:
    """Check whether ``eta: L -> O(Spcnt L)`` is an isomorphism with the explicit inverse."""
    frame, eta = omega(L)
    inverse = classification_inverse(L, frame)
    seen: dict[int, int] = {}
    for i, j in enumerate(eta.image):
        if j in seen:
            pair = (L.labels[seen[j]], L.labels[i])
            return Classification(L, False, eta, inverse, pair, "eta is not injective")
        seen[j] = i
    missed = [frame.labels[j] for j in range(frame.n) if j not in seen]
    if missed:
        return Classification(L, False, eta, inverse, (missed[0],), "eta is not surjective")
    for x in L.labels:
        if inverse[eta(x)] != x:
            return Classification(L, False, eta, inverse, (x,), "inverse formula fails on L")
    for U in frame.labels:
        if eta(inverse[U]) != U:
            return Classification(L, False, eta, inverse, (U,), "inverse formula fails on opens")
    notes = "" if is_distributive(L) else "isomorphism on a non-distributive lattice"
    return Classification(L, True, eta, inverse, None, notes)


def point_restriction(h: LatticeMap) -> dict:
    """Precomposition with ``h: L -> M`` on points, as meet-prime labels ``M -> L``.

    ``h`` must preserve joins, finite meets and the top, so that a point of
    ``M`` pulls back to a point of ``L``.
    """
    L, M = h.source, h.target
    out = {}
    for q in meet_prime_indices(M):
        zero = [i for i in range(L.n) if M.leq[h.image[i], q]]
        p = L.bottom_index
        for i in zero:
            p = L.join_table[p, i]
        if sorted(zero) != [int(i) for i in range(L.n) if L.leq[i, p]] or p == L.top_index:
            raise InvariantViolation("restriction along h is not a point", (M.labels[q],))
        out[M.labels[q]] = L.labels[p]
    return out


def omega_map(h: LatticeMap) -> LatticeMap:
    """``Omega(h): Omega(L) -> Omega(M)``, pulling opens back along the point map."""
    frame_l, _ = omega(h.source)
    frame_m, _ = omega(h.target)
    back = point_restriction(h)
    image = []
    for U in frame_l.labels:
        image.append(frame_m.index(frozenset(q for q, p in back.items() if p in U)))
    return LatticeMap(frame_l, frame_m, tuple(image), ALL_FLAGS)


def counit(F: FiniteLattice) -> LatticeMap:
    """``Omega(F) -> F`` for a distributive (hence spatial) ``F``: the inverse of eta."""
    c = classify(F)
    if not c.is_isomorphism:
        raise LatticeError(f"counit needs a spatial frame; eta fails at {c.witness}")
    frame = c.eta.target
    return LatticeMap(frame, F, tuple(F.index(c.inverse[U]) for U in frame.labels), ALL_FLAGS)


# support data


@dataclass(frozen=True, eq=False)
class SupportDatum:
    """Assignment of open sets to lattice elements.

    Requires ``assign(bottom) = {}`` and ``x <= join(S)`` implying
    ``assign(x) <= union(assign(S))``; on a finite lattice the latter is
    monotonicity plus ``assign(x v y) <= assign(x) | assign(y)``.
    """

    source: FiniteLattice
    space: FiniteSpace
    assign: dict

    def __post_init__(self):
        L, X = self.source, self.space
        masks = {}
        for x in L.labels:
            if x not in self.assign:
                raise InvariantViolation("support datum undefined", (x,))
            m = X.mask(self.assign[x])
            if X.full & ~m not in X.closed_sets:
                raise InvariantViolation("support value is not open", (x,))
            masks[x] = m
        if masks[L.bottom]:
            raise InvariantViolation("support of the bottom element is not empty", (L.bottom,))
        for a in L.labels:
            for b in L.labels:
                if L.le(a, b) and masks[a] & ~masks[b]:
                    raise InvariantViolation("support is not monotone", (a, b))
                if masks[L.join(a, b)] & ~(masks[a] | masks[b]):
                    raise InvariantViolation("support of a join exceeds the union", (a, b))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SupportDatum):
            return NotImplemented
        return (self.source == other.source and self.space == other.space
                and {k: frozenset(v) for k, v in self.assign.items()}
                == {k: frozenset(v) for k, v in other.assign.items()})

    __hash__ = None

    def __call__(self, x: Label) -> frozenset:
        return frozenset(self.assign[x])


def universal_support(L: FiniteLattice) -> SupportDatum:
    """``l -> U_l`` in the semipoint space."""
    X = fspcnt(L)
    return SupportDatum(L, X, {l: X.labels_of(X.full & ~_upset_mask(L, i)) for i, l in enumerate(L.labels)})


def support_from_map(phi: LatticeMap) -> SupportDatum:
    if not isinstance(phi.target, OpenSetLattice):
        raise LatticeError("target of a support map must be an open-set lattice")
    if not phi.holds(Flag.JOINS):
        raise NotJoinPreserving("support maps must preserve joins")
    return SupportDatum(phi.source, phi.target.space, {x: phi(x) for x in phi.source.labels})


def map_from_support(sd: SupportDatum) -> LatticeMap:
    """``M -> union of sigma(x) over x <= M``, certified join-preserving."""
    L, X = sd.source, sd.space
    frame = open_set_lattice(X)
    image = []
    for m in L.labels:
        acc = 0
        for x in L.down(m):
            acc |= X.mask(sd.assign[x])
        image.append(frame._by_mask[acc])
    return LatticeMap(L, frame, tuple(image), {Flag.JOINS})


@dataclass(frozen=True, eq=False)
class Factorization:
    map: PointMap
    unique: bool


def factor_through_fspcnt(f: LatticeMap, X: FiniteSpace | None = None) -> Factorization:
    """The continuous ``g: X -> fSpcnt(L)`` pulling the universal datum back to ``f``.

    ``g(x)`` is the semipoint ``l -> [x in f(l)]``, named by the element whose
    down-set is its zero set. Uniqueness is checked pointwise over all
    candidate elements.
    """
    if not f.holds(Flag.JOINS):
        raise NotJoinPreserving("only join-preserving maps factor through fSpcnt")
    if X is None:
        if not isinstance(f.target, OpenSetLattice):
            raise LatticeError("pass the space explicitly when the target is not an open-set lattice")
        X = f.target.space
    sober = is_sober(X)
    if not sober:
        raise NotSober(sober.witness)
    L = f.source
    values = [X.mask(f(l)) for l in L.labels]
    target = fspcnt(L)
    full = target.full
    ups = [full & ~_upset_mask(L, e) for e in range(L.n)]
    mapping, unique = [], True
    for i in range(len(X)):
        wanted = sum(1 << l for l in range(L.n) if values[l] >> i & 1)
        # l is in U_e iff l </= e, so the candidates are the e with {l : l </= e} == wanted
        cands = [e for e in range(L.n) if sum(1 << l for l in range(L.n) if not L.leq[l, e]) == wanted]
        if not cands:
            raise InvariantViolation("no semipoint matches", (X.points[i],))
        unique &= len(cands) == 1
        mapping.append(cands[0])
    g = PointMap(X, target, tuple(mapping))
    if not g.is_continuous():
        raise InvariantViolation("factorization is not continuous")
    for l in range(L.n):
        if g.preimage(ups[l]) != values[l]:
            raise InvariantViolation("pullback differs from f", (L.labels[l],))
    return Factorization(g, unique)
