"""Hochster duality and the comparison maps to other spectra."""

from __future__ import annotations

from dataclasses import dataclass

from .core import CONFLUENT, Flag, FiniteLattice, LatticeMap, bounded_sublattice, opposite
from .errors import InvariantViolation, LatticeError, NotApplicable, NotDistributive, NotSober, RestrictionNotPoint
from .props import is_distributive, join_prime_indices, meet_prime_indices
from .spectra import FiniteSpace, PointMap, _bits, is_sober, spcnt

TAGS = ("tensor_ideals", "semiprime_ideals", "serre_fixed", "other")


@dataclass(frozen=True, eq=False)
class SublatticeDesignation:
    ambient: FiniteLattice
    inclusion: LatticeMap
    tag: str = "other"

    def __post_init__(self):
        if self.tag not in TAGS:
            raise LatticeError(f"unknown tag {self.tag!r}; expected one of {', '.join(TAGS)}")
        inc = self.inclusion
        if inc.target != self.ambient:
            raise LatticeError("inclusion does not land in the ambient lattice")
        if not (CONFLUENT | {Flag.BOTTOM}) <= inc.certified:
            raise LatticeError("inclusion must be certified for joins, meets and both bounds")
        if not inc.is_injective:
            raise LatticeError("inclusion is not injective")

    @property
    def sub(self) -> FiniteLattice:
        return self.inclusion.source


def designate(ambient: FiniteLattice, elements, tag: str = "other") -> SublatticeDesignation:
    _, inc = bounded_sublattice(ambient, elements)
    return SublatticeDesignation(ambient, inc, tag)


def hochster_dual(X: FiniteSpace) -> FiniteSpace:
    """Same points; the closed sets are the old open sets.

    Every open of a finite space is quasi-compact, so the closed basis of the
    dual topology is the whole family of opens, which is already closed under
    finite unions and intersections. Specialization is reversed.
    """
    sober = is_sober(X)
    if not sober:
        raise NotSober(sober.witness)
    name = f"{X.name}^dual" if X.name else ""
    return FiniteSpace(X.points, X.open_sets, name=name)


def _restrict(d: SublatticeDesignation, p: int) -> int:
    """Index in the sublattice of the largest element below the ambient prime ``p``."""
    L, S, img = d.ambient, d.sub, d.inclusion.image
    zero = [s for s in range(S.n) if L.leq[img[s], p]]
    q = S.bottom_index
    for s in zero:
        q = S.join_table[q, s]
    below = [s for s in range(S.n) if S.leq[s, q]]
    if below != zero or q not in meet_prime_indices(S):
        raise RestrictionNotPoint(f"restriction of {L.labels[p]!r} is not a point of the sublattice")
    return int(q)


def balmer_spectrum(d: SublatticeDesignation) -> FiniteSpace:
    """The spectrum of the designated sublattice, dual to its point space."""
    return hochster_dual(spcnt(d.sub))


def balmer_comparison(d: SublatticeDesignation) -> PointMap:
    """Restriction of ambient points to the sublattice.

    The target is the Hochster dual of ``balmer_spectrum(d)``, which is the
    point space of the sublattice itself.
    """
    source = spcnt(d.ambient)
    target = hochster_dual(balmer_spectrum(d))
    sub_primes = meet_prime_indices(d.sub)
    pos = {q: k for k, q in enumerate(sub_primes)}
    mapping = tuple(pos[_restrict(d, p)] for p in meet_prime_indices(d.ambient))
    f = PointMap(source, target, mapping)
    if not f.is_continuous():
        raise InvariantViolation("comparison map is not continuous")
    return f


def mspec(L: FiniteLattice) -> FiniteSpace:
    """Join-primes of ``L`` with closed sets ``Z_x = {J : J <= x}``."""
    jp = join_prime_indices(L)
    family = {sum(1 << k for k, j in enumerate(jp) if L.leq[j, x]) for x in range(L.n)}
    X = FiniteSpace([L.labels[j] for j in jp], family, name=f"MSpec({L.name})" if L.name else "")
    if X != FiniteSpace(X.points, spcnt(opposite(L)).closed_sets):
        raise InvariantViolation("MSpec differs from the point space of the opposite lattice")
    return X


@dataclass(frozen=True, eq=False)
class MatsuiReport:
    bijection: dict
    map: PointMap | None
    is_homeomorphism: bool
    witness: tuple | None = None


def matsui_comparison(L: FiniteLattice) -> MatsuiReport:
    """Match join-primes with meet-primes by ``j -> join{x : j </= x}``.

    The complement of the prime filter ``[j, 1]`` is a prime ideal whose top is
    the matching meet-prime; the match is then checked to be a homeomorphism
    ``mspec(L) -> hochster_dual(spcnt(L))``.
    """
    if not is_distributive(L):
        raise NotDistributive("the comparison with MSpec needs a distributive lattice")
    jp, mp = join_prime_indices(L), meet_prime_indices(L)
    bij, mapping = {}, []
    for j in jp:
        m = L.bottom_index
        for x in range(L.n):
            if not L.leq[j, x]:
                m = L.join_table[m, x]
        if m not in mp:
            return MatsuiReport(bij, None, False, (L.labels[j],))
        bij[L.labels[j]] = L.labels[m]
        mapping.append(mp.index(m))
    f = PointMap(mspec(L), hochster_dual(spcnt(L)), tuple(mapping))
    if not f.is_homeomorphism():
        return MatsuiReport(bij, f, False, tuple(bij))
    return MatsuiReport(bij, f, True)


@dataclass(frozen=True, eq=False)
class NcSpectrum:
    space: FiniteSpace
    comparison: PointMap | None
    notes: str = ""


def nc_dual_spectrum(d: SublatticeDesignation) -> NcSpectrum:
    """Point space of a semiprime-ideal sublattice with the dual topology.

    When the ambient lattice has points, restriction gives a comparison map
    from the dual of the ambient point space.
    """
    if d.tag != "semiprime_ideals":
        raise NotApplicable(f"designation is tagged {d.tag!r}, not 'semiprime_ideals'")
    space = hochster_dual(spcnt(d.sub))
    ambient = spcnt(d.ambient)
    comparison = None
    if len(ambient):
        sub_primes = meet_prime_indices(d.sub)
        mapping = tuple(sub_primes.index(_restrict(d, p)) for p in meet_prime_indices(d.ambient))
        comparison = PointMap(hochster_dual(ambient), space, mapping)
        if not comparison.is_continuous():
            raise InvariantViolation("dual comparison map is not continuous")
    notes = "finite lattice: every element is finitely presented, so restriction preserves finite presentation"
    return NcSpectrum(space, comparison, notes)


def specialization_pairs(X: FiniteSpace) -> list[tuple]:
    """Pairs ``(x, y)`` with ``x != y`` and ``y`` in the closure of ``x``."""
    return [(X.points[i], X.points[j]) for i in range(len(X)) for j in _bits(X.closure_mask(i)) if i != j]
