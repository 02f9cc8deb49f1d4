import itertools

import pytest
from hypothesis import given, settings

from conftest import small_lattices
from thicklat import gallery
from thicklat.config import size_limit
from thicklat.errors import NotApplicable, NotDistributive, SizeGuard
from thicklat.props import (
    all_properties,
    compact_elements,
    is_coherent,
    is_compact,
    is_distributive,
    is_modular,
    is_semimodular,
    is_spatial,
    join_prime_indices,
    meet_prime_indices,
    separating_prime,
)


def brute_distributive(L):
    for a, b, c in itertools.product(range(L.n), repeat=3):
        if L.meet_table[a, L.join_table[b, c]] != L.join_table[L.meet_table[a, b], L.meet_table[a, c]]:
            return False
    return True


def brute_meet_primes(L):
    out = []
    for p in range(L.n):
        if p == L.top_index:
            continue
        if all(L.leq[a, p] or L.leq[b, p]
               for a, b in itertools.product(range(L.n), repeat=2) if L.leq[L.meet_table[a, b], p]):
            out.append(p)
    return out


def test_diamond_and_pentagon():
    D, P = gallery.diamond(), gallery.pentagon()
    r = is_distributive(D)
    assert not r and r.witness == ("l", "m", "n")
    assert is_modular(D)
    m = is_modular(P)
    assert not m
    l, mm, s = m.witness
    assert P.le(l, mm)
    assert P.join(l, P.meet(s, mm)) != P.meet(P.join(l, s), mm)
    assert not is_semimodular(P)
    assert is_semimodular(gallery.boolean(3))
    assert is_semimodular(D)


def test_p1_witnesses():
    L = gallery.p1_model(2, 1).lattice
    assert is_modular(L).witness == ("{x}", "{x,y}", "O(0)")
    sm = is_semimodular(L)
    assert sm.witness == ("O(0)", "{x}")
    # O(0) covers O(0) ^ {x} = 0, yet O(0) v {x} = 1 does not cover {x}
    assert L.meet("O(0)", "{x}") == "0" and L.join("O(0)", "{x}") == "1"
    assert L.le("{x}", "{x,y}") and L.le("{x,y}", "1")


@settings(max_examples=80, deadline=None)
@given(small_lattices())
def test_fast_paths_match_brute(L):
    assert is_distributive(L).verdict == brute_distributive(L)
    assert meet_prime_indices(L) == brute_meet_primes(L)
    if is_distributive(L):
        assert is_modular(L)
        assert is_spatial(L)


@settings(max_examples=80, deadline=None)
@given(small_lattices())
def test_separating_prime(L):
    if not is_distributive(L):
        with pytest.raises(NotDistributive):
            separating_prime(L, L.top, L.bottom) if L.n > 1 else separating_prime(L, L.top, L.top)
        return
    mp = set(meet_prime_indices(L))
    for s, m in itertools.product(L.labels, repeat=2):
        if L.le(s, m):
            with pytest.raises(NotApplicable):
                separating_prime(L, s, m)
            continue
        p = separating_prime(L, s, m)
        assert L.index(p) in mp and L.le(m, p) and not L.le(s, p)


def test_join_primes_of_chain_and_boolean():
    C = gallery.chain(4)
    assert [C.labels[j] for j in join_prime_indices(C)] == ["1", "2", "3"]
    B = gallery.boolean(3)
    assert [B.labels[j] for j in join_prime_indices(B)] == ["{x}", "{y}", "{z}"]


def test_compactness():
    L = gallery.pentagon()
    assert compact_elements(L) == list(L.labels)
    assert all(is_compact(L, x) for x in L.labels)
    with size_limit(3):
        with pytest.raises(SizeGuard):
            is_compact(L, "0")


def test_coherent_tracks_distributive():
    for L in (gallery.diamond(), gallery.boolean(2), gallery.chain(3)):
        assert is_coherent(L).verdict == is_distributive(L).verdict
    names = [r.name for r in all_properties(gallery.two())]
    assert names == ["distributive", "modular", "semimodular", "spatial", "coherent"]
    assert all(all_properties(gallery.boolean(2)))


def test_spatial_witness():
    r = is_spatial(gallery.diamond())
    assert not r
    a, b = r.witness
    assert not gallery.diamond().le(a, b)
