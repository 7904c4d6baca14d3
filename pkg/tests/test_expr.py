from fractions import Fraction

import pytest

from mgdiv.errors import ParseError
from mgdiv.expr import parse_bindings, parse_call, parse_class, parse_generator
from mgdiv.maps import forget_all_pullback
from mgdiv.registry import brill_noether_class, canonical_class
from mgdiv.spaces import DELTA_IRR, LAMBDA, PSI_SYM, BoundaryPointed, BoundarySym, Psi, SpaceId


def test_whitespace_and_implicit_multiplication():
    sp = SpaceId.pointed(3, 2)
    a = parse_class(" 3 L-1/2 psi[2]+ d[1:{2,1}] ", sp)
    assert a[LAMBDA] == 3 and a[Psi(2)] == Fraction(-1, 2)
    assert a[BoundaryPointed(1, (1, 2))] == 1


def test_named_and_pullback():
    sp = SpaceId.pointed(5, 3)
    a = parse_class("K - phi*(bn)", sp)
    assert a == canonical_class(sp) - forget_all_pullback(brill_noether_class(5), sp)
    b = parse_class("pi*(psit + dt[0:2])", SpaceId.pointed(4, 2))
    assert b[Psi(1)] == 1 and b[BoundaryPointed(0, (1, 2))] == -1


def test_symmetric_tokens():
    sp = SpaceId.symmetric(6, 4)
    a = parse_class("Lt + 2*psit - dt_irr + dt[5:4]", sp)
    assert a[PSI_SYM] == 2 and a[DELTA_IRR] == -1
    assert a[BoundarySym(1, 0)] == 1


def test_parameters_and_bindings():
    sp = SpaceId.base(10)
    a = parse_class("7*L - b5*d[5]", sp)
    assert a.params == ("b5",)
    assert parse_class("7*L - b5*d[5]", sp, {"b5": 6})[LAMBDA] == 7
    assert parse_bindings(["b5=6", "c=-1/2"]) == {"b5": 6, "c": Fraction(-1, 2)}


@pytest.mark.parametrize("text,col", [("L +", 4), ("L + )", 5), ("3*", 3), ("psi[x]", 5)])
def test_errors_report_position(text, col):
    with pytest.raises(ParseError) as exc:
        parse_class(text, SpaceId.pointed(3, 2))
    assert f"column {col}" in str(exc.value)
    assert "line 1" in str(exc.value)


def test_error_on_second_line():
    with pytest.raises(ParseError) as exc:
        parse_class("L +\n  d_irr +", SpaceId.base(3))
    assert "line 2" in str(exc.value)


def test_wrong_space_generator():
    with pytest.raises(ParseError):
        parse_class("psit", SpaceId.pointed(3, 2))
    with pytest.raises(ParseError):
        parse_class("d[1]", SpaceId.pointed(3, 2))
    with pytest.raises(ParseError, match="not on the ambient"):
        parse_class("bn[4]", SpaceId.base(5))


def test_parse_call_and_generator():
    assert parse_call("r_T[{1,2}]") == ("r_T", [(1, 2)])
    assert parse_call("g9_pencil") == ("g9_pencil", [])
    assert parse_generator("d[0:{1,2}]", SpaceId.pointed(2, 2)) == BoundaryPointed(0, (1, 2))
