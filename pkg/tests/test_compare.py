import numpy as np
import pytest
from hypothesis import given, settings

from conftest import small_lattices
from thicklat import gallery
from thicklat.compare import (
    SublatticeDesignation,
    balmer_comparison,
    balmer_spectrum,
    designate,
    hochster_dual,
    matsui_comparison,
    mspec,
    nc_dual_spectrum,
    specialization_pairs,
)
from thicklat.core import Flag, LatticeMap, product
from thicklat.errors import LatticeError, NotApplicable, NotDistributive, NotSober
from thicklat.props import is_distributive
from thicklat.spectra import FiniteSpace, fspcnt, spcnt


def test_hochster_dual_sierpinski():
    X = FiniteSpace(["g", "c"], [0, 2, 3])  # c closed, g generic
    D = hochster_dual(X)
    assert D.points == X.points
    assert D.closure("c") == frozenset({"g", "c"})
    assert D.closure("g") == frozenset({"g"})
    assert hochster_dual(D) == X


def test_hochster_dual_reverses_specialization():
    X = fspcnt(gallery.pentagon())
    assert np.array_equal(hochster_dual(X).specialization(), X.specialization().T)


def test_hochster_dual_needs_sober():
    with pytest.raises(NotSober):
        hochster_dual(FiniteSpace(["a", "b"], [0, 3]))


def test_boolean_duals_discrete():
    for n in (1, 2, 3):
        X = spcnt(gallery.boolean(n))
        assert len(X) == n and len(X.closed_sets) == 1 << n
        assert hochster_dual(X) == X


def test_balmer_comparison_identity():
    B = gallery.boolean(2)
    d = designate(B, B.labels, "tensor_ideals")
    f = balmer_comparison(d)
    assert f.as_dict() == {"{x}": "{x}", "{y}": "{y}"}
    assert f.is_homeomorphism()


def test_balmer_comparison_on_chain_sublattice():
    B = gallery.boolean(2)
    d = designate(B, ["{}", "{x}", "{x,y}"])
    f = balmer_comparison(d)
    # the x-coatom restricts to {x}; the y-coatom meets the chain only in {}
    assert f.as_dict() == {"{x}": "{x}", "{y}": "{}"}
    assert f.target == spcnt(d.sub)
    assert hochster_dual(balmer_spectrum(d)) == spcnt(d.sub)


def test_balmer_comparison_p1_is_empty():
    e = gallery.p1_model(2, 3)
    d = designate(e.lattice, e.tensor_sub, "tensor_ideals")
    f = balmer_comparison(d)
    assert len(f.source) == 0 and f.mapping == ()
    # the tensor ideals form a distributive lattice with points
    assert len(spcnt(d.sub)) > 0


def test_designation_checks():
    B = gallery.boolean(2)
    two = gallery.two()
    with pytest.raises(LatticeError):
        designate(B, B.labels, "nonsense")
    f = LatticeMap(two, B, (0, 3), {Flag.JOINS})
    with pytest.raises(LatticeError):
        SublatticeDesignation(B, f)


def test_mspec_examples():
    assert len(mspec(gallery.diamond())) == 0
    M = mspec(gallery.boolean(3))
    assert M.points == ("{x}", "{y}", "{z}") and len(M.closed_sets) == 8
    assert mspec(gallery.two()).points == ("1",)


def test_matsui_boolean3():
    r = matsui_comparison(gallery.boolean(3))
    assert r.is_homeomorphism
    assert r.bijection == {"{x}": "{y,z}", "{y}": "{x,z}", "{z}": "{x,y}"}


def test_matsui_chain4():
    r = matsui_comparison(gallery.chain(4))
    assert r.is_homeomorphism
    assert r.bijection == {"1": "0", "2": "1", "3": "2"}


def test_matsui_needs_distributive():
    with pytest.raises(NotDistributive):
        matsui_comparison(gallery.pentagon())


def test_nc_dual_spectrum():
    B = gallery.boolean(2)
    r = nc_dual_spectrum(designate(B, B.labels, "semiprime_ideals"))
    assert r.space == spcnt(B)
    assert r.comparison is not None and r.comparison.is_homeomorphism()
    two = gallery.two()
    assert len(nc_dual_spectrum(designate(two, two.labels, "semiprime_ideals")).space) == 1
    C = gallery.chain(3)
    r = nc_dual_spectrum(designate(C, C.labels, "semiprime_ideals"))
    # dual of the Sierpinski space spcnt(3-chain): the roles of the two points swap
    assert specialization_pairs(spcnt(C)) == [("0", "1")]
    assert specialization_pairs(r.space) == [("1", "0")]
    with pytest.raises(NotApplicable):
        nc_dual_spectrum(designate(C, C.labels, "tensor_ideals"))


def test_nc_dual_without_ambient_points():
    e = gallery.p1_model(2, 3)
    r = nc_dual_spectrum(designate(e.lattice, e.tensor_sub, "semiprime_ideals"))
    assert r.comparison is None
    assert "finitely presented" in r.notes


@settings(max_examples=80, deadline=None)
@given(small_lattices())
def test_duality_laws(L):
    for X in (spcnt(L), fspcnt(L), mspec(L)):
        assert hochster_dual(hochster_dual(X)) == X
    if is_distributive(L):
        r = matsui_comparison(L)
        assert r.is_homeomorphism, r.witness
    # sub = ambient: the comparison map is the identity on points
    d = designate(L, L.labels)
    f = balmer_comparison(d)
    assert f.mapping == tuple(range(len(f.source)))


def test_balmer_comparison_into_product():
    P = product(gallery.two(), gallery.chain(3))
    sub = [("0", "0"), ("0", "1"), ("1", "1"), ("1", "2")]
    d = designate(P, sub)
    f = balmer_comparison(d)
    assert f.is_continuous()
    assert len(f.source) == len(spcnt(P))
