from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgdiv.errors import ForbiddenBoundary, IndexOutOfRange
from mgdiv.spaces import (
    DELTA_IRR,
    LAMBDA,
    PSI_SYM,
    BoundaryPointed,
    BoundarySym,
    DeltaBase,
    Psi,
    SpaceId,
    boundary_elements,
    canonicalize,
    enumerate_basis,
    sort_key,
    sym_image,
)


def brute_pointed(g, n):
    """Quotient all stable (i, T) by the complement involution, pick the preferred representative."""
    labels = tuple(range(1, n + 1))
    seen = set()
    for i in range(g + 1):
        for r in range(n + 1):
            for T in combinations(labels, r):
                comp = tuple(x for x in labels if x not in T)
                if (i == 0 and len(T) < 2) or (i == g and len(comp) < 2):
                    continue
                reps = sorted([(i, len(T), T), (g - i, len(comp), comp)])
                j, _, S = reps[0]
                seen.add(BoundaryPointed(j, S))
    return seen


def brute_sym(g, n):
    seen = set()
    for i in range(g + 1):
        for c in range(n + 1):
            if (i == 0 and c < 2) or (i == g and n - c < 2):
                continue
            seen.add(BoundarySym(*min((i, c), (g - i, n - c))))
    return seen


def test_small_pointed_basis_by_hand():
    sp = SpaceId.pointed(3, 2)
    basis = enumerate_basis(sp)
    assert len(basis) == 9
    assert set(basis) == {LAMBDA, Psi(1), Psi(2), DELTA_IRR, BoundaryPointed(0, (1, 2)), BoundaryPointed(1, ()),
                          BoundaryPointed(1, (1,)), BoundaryPointed(1, (2,)), BoundaryPointed(1, (1, 2))}


@pytest.mark.parametrize("g,n", [(2, 1), (2, 2), (2, 4), (3, 3), (4, 4), (5, 3), (6, 5)])
def test_pointed_basis_matches_brute_force(g, n):
    sp = SpaceId.pointed(g, n)
    assert set(boundary_elements(sp)) == brute_pointed(g, n)
    assert len(enumerate_basis(sp)) == len(set(enumerate_basis(sp)))


@pytest.mark.parametrize("g,n", [(2, 1), (2, 2), (3, 5), (4, 4), (10, 10), (11, 11)])
def test_sym_basis_matches_brute_force(g, n):
    assert set(boundary_elements(SpaceId.symmetric(g, n))) == brute_sym(g, n)


def test_base_basis():
    assert enumerate_basis(SpaceId.base(7)) == (LAMBDA, DELTA_IRR, DeltaBase(1), DeltaBase(2), DeltaBase(3))


def test_basis_is_sorted():
    for sp in (SpaceId.pointed(4, 3), SpaceId.symmetric(5, 4), SpaceId.base(9)):
        b = enumerate_basis(sp)
        assert list(b) == sorted(b, key=sort_key)


def test_canonical_preference():
    sp = SpaceId.pointed(4, 3)
    # smaller genus side wins
    assert canonicalize(sp, 3, (1,)) == BoundaryPointed(1, (2, 3))
    # middle genus: smaller label set, then lexicographic
    assert canonicalize(sp, 2, (1, 2)) == BoundaryPointed(2, (3,))
    sp = SpaceId.pointed(4, 4)
    assert canonicalize(sp, 2, (3, 4)) == BoundaryPointed(2, (1, 2))
    assert canonicalize(SpaceId.base(6), 5) == DeltaBase(1)


def test_symmetric_canonical():
    sp = SpaceId.symmetric(10, 10)
    assert canonicalize(sp, 7, 4) == BoundarySym(3, 6)
    assert canonicalize(sp, 5, 8) == BoundarySym(5, 2)
    assert canonicalize(sp, 10, 8) == BoundarySym(0, 2)


def test_forbidden_and_out_of_range():
    sp = SpaceId.pointed(3, 3)
    with pytest.raises(ForbiddenBoundary):
        canonicalize(sp, 0, (1,))
    with pytest.raises(ForbiddenBoundary):
        canonicalize(sp, 3, (1, 2))
    with pytest.raises(IndexOutOfRange):
        canonicalize(sp, 4, (1,))
    with pytest.raises(IndexOutOfRange):
        canonicalize(sp, 1, (0, 5))
    with pytest.raises(ForbiddenBoundary):
        canonicalize(SpaceId.base(5), 0)
    with pytest.raises(ForbiddenBoundary):
        canonicalize(SpaceId.symmetric(4, 3), 0, 1)


@pytest.mark.parametrize("args", [("pointed", 3, 0), ("base", 3, 2), ("base", 1, 0), ("torus", 4, 1)])
def test_invalid_spaces(args):
    with pytest.raises(ValueError):
        SpaceId(*args)


def test_contains():
    sp = SpaceId.pointed(4, 3)
    assert sp.contains(BoundaryPointed(1, (2,)))
    assert not sp.contains(BoundaryPointed(3, (2,)))  # not canonical
    assert not sp.contains(PSI_SYM)
    assert not sp.contains(Psi(4))
    assert SpaceId.symmetric(4, 3).contains(PSI_SYM)


def test_sym_image():
    assert sym_image(BoundaryPointed(2, (1, 4, 5))) == BoundarySym(2, 3)


@pytest.mark.parametrize("sp", [SpaceId.base(4), SpaceId.pointed(5, 7), SpaceId.symmetric(11, 11)])
def test_space_json_round_trip(sp):
    assert SpaceId.from_json(sp.to_json()) == sp


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 8), st.integers(1, 8), st.data())
def test_symmetric_involution(g, n, data):
    sp = SpaceId.symmetric(g, n)
    i, c = data.draw(st.integers(0, g)), data.draw(st.integers(0, n))
    try:
        e = canonicalize(sp, i, c)
    except ForbiddenBoundary:
        with pytest.raises(ForbiddenBoundary):
            canonicalize(sp, g - i, n - c)
        return
    assert e == canonicalize(sp, g - i, n - c) == canonicalize(sp, e.i, e.c)
    assert sp.contains(e)
