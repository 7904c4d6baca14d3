from fractions import Fraction
from math import comb

import pytest
import sympy

from mgdiv import registry
from mgdiv.errors import GenusCongruence, RangeViolation, SpaceMismatch
from mgdiv.spaces import DELTA_IRR, LAMBDA, PSI_SYM, BoundaryPointed, BoundarySym, DeltaBase, Psi, SpaceId


def test_canonical_class_base():
    K = registry.canonical_class(SpaceId.base(6))
    assert (K[LAMBDA], K[DELTA_IRR], K[DeltaBase(1)], K[DeltaBase(2)], K[DeltaBase(3)]) == (13, -2, -3, -2, -2)


def test_canonical_class_pointed_and_sym():
    K = registry.canonical_class(SpaceId.pointed(4, 2))
    assert K[Psi(1)] == K[Psi(2)] == 1
    assert K[BoundaryPointed(1, ())] == -3
    assert K[BoundaryPointed(1, (1,))] == -2
    Ks = registry.canonical_class(SpaceId.symmetric(4, 5))
    assert Ks[PSI_SYM] == 1
    assert Ks[BoundarySym(0, 2)] == -1
    assert [Ks[BoundarySym(0, c)] for c in range(3, 6)] == [1, 2, 3]


def test_brill_noether_sympy_slope():
    g = sympy.symbols("g", positive=True)
    expr = (g + 3) / ((g + 1) / 6)
    for n in range(3, 20):
        bn = registry.brill_noether_class(n)
        assert bn[DeltaBase(1)] == -(n - 1)
        a, b0 = bn[LAMBDA].value, -bn[DELTA_IRR].value
        assert sympy.Rational(a / b0) == expr.subs(g, n)


def test_pencil_classes():
    D = registry.logan_class(5)
    assert D[LAMBDA] == -1 and D[Psi(3)] == 1
    assert D[BoundaryPointed(0, (1, 2, 3))] == -comb(4, 2)
    assert D[BoundaryPointed(2, (1, 2))] == 0
    assert D[BoundaryPointed(2, (1, 2, 3))] == -1
    Dt = registry.aj_exceptional_class(5)
    assert Dt[BoundarySym(2, 4)] == -comb(3, 2)


def test_bn11_and_k3_class():
    assert registry.bn11().scale(2) == registry.brill_noether_class(11)
    k = registry.k3_class_g10()
    assert k.params == ("b5",)
    assert registry.PARAM_LOWER_BOUNDS["b5"] == 6


def test_c_g_constant():
    assert registry.c_g_constant(7) == 4
    assert registry.c_g_constant(4) > 0
    for bad in (5, 6, 8, 1):
        with pytest.raises(GenusCongruence):
            registry.c_g_constant(bad)


def test_node_and_cusp():
    node = registry.node_class_partial(7)
    assert node.is_partial
    assert (node[LAMBDA], node[Psi(1)], node[DELTA_IRR], node[BoundaryPointed(0, (1, 2))]) == (44, 6, -6, -28)
    cu = registry.cusp_class(7)
    assert not cu.is_partial
    assert cu[Psi(1)] == 28


def test_d1_mask():
    d1 = registry.d1_class_partial(4)
    assert Psi(3) in d1.mask and d1[Psi(4)] == 0
    assert d1[BoundaryPointed(0, (2, 4))] == -6
    with pytest.raises(RangeViolation):
        registry.d1_class_partial(1)


def test_fano_table():
    assert registry.mukai_fano_data(8).N_g == 14
    with pytest.raises(RangeViolation):
        registry.mukai_fano_data(5)


def test_resolve_and_aliases():
    sp = SpaceId.pointed(6, 6)
    assert registry.resolve("Dbar", [], sp) == registry.logan_class(6)
    assert registry.resolve("K", [], sp) == registry.canonical_class(sp)
    assert registry.resolve("bn", [], SpaceId.base(9)) == registry.brill_noether_class(9)
    with pytest.raises(SpaceMismatch):
        registry.resolve("bn", [8], SpaceId.base(9))
    with pytest.raises(SpaceMismatch):
        registry.resolve("K", [], None)
    assert registry.is_class_name("K10") and not registry.is_class_name("L")


def test_listing_is_sorted():
    rows = registry.listing()
    names = [r["name"] for r in rows]
    assert names == sorted(names)
    assert {"K", "bn", "node", "cusp", "D1"} <= set(names)


def test_lookup_json():
    entry = registry.lookup("cusp", [7])
    data = entry.to_json()
    assert data["name"].startswith("cusp")
    assert Fraction(registry.cusp_class(7)[LAMBDA].value) == 44
