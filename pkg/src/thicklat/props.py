"""Lattice property tests that return a witness when they fail."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .config import guard_oracle
from .core import FiniteLattice, Label
from .errors import NotApplicable, NotDistributive


@dataclass(frozen=True)
class PropertyReport:
    name: str
    verdict: bool
    witness: tuple | None = None
    notes: str = ""

    def __bool__(self) -> bool:
        return self.verdict

    def as_dict(self) -> dict:
        return {"property": self.name, "verdict": self.verdict,
                "witness": None if self.witness is None else list(self.witness),
                "notes": self.notes}


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return None if len(hits) == 0 else tuple(int(x) for x in hits[0])


def _labels(L: FiniteLattice, idx) -> tuple:
    return tuple(L.labels[i] for i in idx)


def distributivity_failure(L: FiniteLattice, a: int) -> np.ndarray:
    """``out[b, c]`` iff ``a ^ (b v c) != (a ^ b) v (a ^ c)``."""
    M, J = L.meet_table, L.join_table
    lhs = M[a][J]
    ma = M[a]
    rhs = J[ma[:, None], ma[None, :]]
    return lhs != rhs


def is_distributive(L: FiniteLattice) -> PropertyReport:
    for a in range(L.n):
        hit = _first(distributivity_failure(L, a))
        if hit is not None:
            return PropertyReport("distributive", False, _labels(L, (a, *hit)))
    return PropertyReport("distributive", True)


def is_modular(L: FiniteLattice) -> PropertyReport:
    """Checks ``l v (s ^ m) == (l v s) ^ m`` for every ``l <= m``; witness ``(l, m, s)``."""
    M, J = L.meet_table, L.join_table
    for l in range(L.n):
        for m in np.flatnonzero(L.leq[l]):
            lhs = J[l, M[:, m]]
            rhs = M[J[l, :], m]
            bad = np.flatnonzero(lhs != rhs)
            if len(bad):
                return PropertyReport("modular", False, _labels(L, (l, m, bad[0])))
    return PropertyReport("modular", True)


def is_semimodular(L: FiniteLattice) -> PropertyReport:
    """Upper semimodularity: ``l`` covers ``l ^ m`` implies ``l v m`` covers ``m``.

    The witness is the first pair ``(l, m)`` in input order violating it.
    """
    C, M, J = L.covers, L.meet_table, L.join_table
    n = L.n
    cols = np.arange(n)
    for l in range(n):
        premise = C[M[l, :], l]
        conclusion = C[cols, J[l, :]]
        bad = np.flatnonzero(premise & ~conclusion)
        if len(bad):
            return PropertyReport("semimodular", False, _labels(L, (l, bad[0])))
    return PropertyReport("semimodular", True)


def meet_prime_indices(L: FiniteLattice) -> list[int]:
    """Elements ``p != top`` with ``a ^ b <= p`` implying ``a <= p`` or ``b <= p``."""
    out = []
    for p in range(L.n):
        if p == L.top_index:
            continue
        above = ~L.leq[:, p]
        if not (L.leq[L.meet_table, p] & above[:, None] & above[None, :]).any():
            out.append(p)
    return out


def join_prime_indices(L: FiniteLattice) -> list[int]:
    """Elements ``j != bottom`` with ``j <= a v b`` implying ``j <= a`` or ``j <= b``."""
    out = []
    for j in range(L.n):
        if j == L.bottom_index:
            continue
        below = ~L.leq[j, :]
        if not (L.leq[j, L.join_table] & below[:, None] & below[None, :]).any():
            out.append(j)
    return out


def separation_matrix(L: FiniteLattice) -> np.ndarray:
    """``sep[a, b]`` iff some meet-prime ``p`` has ``b <= p`` and ``a </= p``."""
    mp = meet_prime_indices(L)
    if not mp:
        return np.zeros((L.n, L.n), dtype=bool)
    not_below = (~L.leq[:, mp]).astype(np.int64)
    below = L.leq[:, mp].astype(np.int64)
    return (not_below @ below.T) > 0


def is_spatial(L: FiniteLattice) -> PropertyReport:
    """Enough points: every ``a </= b`` is separated by a meet-prime."""
    unseparated = ~L.leq & ~separation_matrix(L)
    hit = _first(unseparated)
    if hit is not None:
        return PropertyReport("spatial", False, _labels(L, hit))
    return PropertyReport("spatial", True)


def separating_prime(L: FiniteLattice, s: Label, M: Label) -> Label:
    """A meet-prime above ``M`` and not above ``s``, for distributive ``L``.

    Climbs covers from ``M`` while staying off the up-set of ``s``; the element
    reached is maximal among those above ``M`` avoiding ``s``, which forces it
    to be meet-prime once the lattice is distributive.
    """
    if not is_distributive(L):
        raise NotDistributive("separating_prime needs a distributive lattice")
    si, cur = L.index(s), L.index(M)
    if L.leq[si, cur]:
        raise NotApplicable(f"{s} <= {M}; nothing to separate")
    while True:
        for nxt in np.flatnonzero(L.covers[cur]):
            if not L.leq[si, nxt]:
                cur = int(nxt)
                break
        else:
            return L.labels[cur]


def compact_elements(L: FiniteLattice) -> list[Label]:
    """Every element of a finite lattice is compact."""
    return list(L.labels)


def is_compact(L: FiniteLattice, x: Label) -> bool:
    """Definitional check: ``x <= join(D)`` for a directed ``D`` forces ``x <= d`` for some ``d``.

    Enumerates every subset, so it is size guarded.
    """
    guard_oracle("compactness oracle", L.n)
    xi = L.index(x)
    J = L.join_table
    for r in range(1, L.n + 1):
        for D in combinations(range(L.n), r):
            if not all(any(L.leq[a, c] and L.leq[b, c] for c in D) for a, b in combinations(D, 2)):
                continue
            top = D[0]
            for d in D[1:]:
                top = J[top, d]
            if L.leq[xi, top] and not any(L.leq[xi, d] for d in D):
                return False
    return True


def is_coherent(L: FiniteLattice) -> PropertyReport:
    dist = is_distributive(L)
    return PropertyReport(
        "coherent", dist.verdict, dist.witness,
        "finite lattice: every element is compact, so coherence reduces to distributivity",
    )


def all_properties(L: FiniteLattice) -> list[PropertyReport]:
    return [is_distributive(L), is_modular(L), is_semimodular(L), is_spatial(L), is_coherent(L)]
