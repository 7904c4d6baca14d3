"""Acceptance gate: every criterion checked exactly, one summary line per criterion."""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from mgdiv.certify import (
    check_fixed_component,
    check_uniruled_pair,
    check_uniruled_single,
    decompose_slope7,
    slope,
    solve_interpolation,
)
from mgdiv.classes import Coefficient, DivisorClass
from mgdiv.curves import (
    abel_jacobi_pencil,
    g5_pencil,
    g7_gamma1,
    g7_gamma2,
    g8_gamma1,
    g8_gamma2,
    g9_pencil,
    gamma_avg,
    gamma_sym,
    k3_section_pencil,
    k3_section_pencil_sym,
    lefschetz_k3,
    pair,
    r_T,
)
from mgdiv.maps import (
    elliptic_tail_pullback,
    forget_all_pullback,
    forget_to_subset_pullback,
    node_to_cusp_pushforward,
    sym_pullback,
)
from mgdiv.registry import (
    aj_exceptional_class,
    bn8_double,
    bn11,
    brill_noether_class,
    c_g_constant,
    canonical_class,
    cusp_class,
    d1_class_partial,
    gonal7_class,
    k3_class_g10,
    logan_class,
    node_class_partial,
)
from mgdiv.spaces import (
    DELTA_IRR,
    LAMBDA,
    PSI_SYM,
    BoundaryPointed,
    BoundarySym,
    Psi,
    SpaceId,
    boundary_elements,
    canonicalize,
)
from mgdiv.verify import FLAGGED, run_suite

from strategies import classes_on

c = pytest.mark.criterion

D11_BASE = {1: 8, 2: 16, 3: 22, 4: 26, 5: 28}


def d_closed(i: int, k: int) -> Fraction:
    if i == 0:
        return Fraction(k * k + k - 4, 2)
    return Fraction(D11_BASE[i] + comb(abs(k - i) + 1, 2))


# -- 1 -----------------------------------------------------------------------------


@c(1)
@pytest.mark.parametrize("g", range(2, 13))
def test_riemann_hurwitz(g):
    for n in range(1, 13):
        sym = SpaceId.symmetric(g, n)
        lhs = sym_pullback(canonical_class(sym))
        if n >= 2:
            lhs = lhs + sym_pullback(DivisorClass(sym, {BoundarySym(0, 2): 1}))
        assert lhs == canonical_class(SpaceId.pointed(g, n)), (g, n)


# -- 2 -----------------------------------------------------------------------------


@c(2)
@pytest.mark.parametrize("g", range(3, 13))
def test_pencil_divisor_pullback(g):
    assert sym_pullback(aj_exceptional_class(g)) == logan_class(g)
    D, Dt = logan_class(g), aj_exceptional_class(g)
    for k in range(2, g + 1):
        assert comb(k, 2) + k == comb(k + 1, 2)
        assert Dt[BoundarySym(0, k)] == -comb(k, 2)
        # the psi-tilde term contributes -k on each delta_{0:T} with #T = k
        assert Dt[BoundarySym(0, k)] - k * Dt[PSI_SYM] == -comb(k + 1, 2)
        assert D[BoundaryPointed(0, tuple(range(1, k + 1)))] == -comb(k + 1, 2)


# -- 3 -----------------------------------------------------------------------------


@c(3)
@pytest.mark.parametrize("g", range(4, 13))
def test_abel_jacobi_pencil(g):
    ell = abel_jacobi_pencil(g)
    assert ell.value(PSI_SYM) == 2 * g - 2
    assert ell.value(BoundarySym(0, 2)) == 2 * g - 1
    assert pair(ell, canonical_class(ell.space)) == -1
    assert pair(ell, aj_exceptional_class(g)) == -1


# -- 4 -----------------------------------------------------------------------------


@c(4)
@pytest.mark.parametrize("g", [3, 4, 5, 6, 7, 8, 9, 11])
def test_k3_pencils(g):
    assert pair(k3_section_pencil(g), logan_class(g)) == -1
    Rt = k3_section_pencil_sym(g)
    assert (Rt.value(LAMBDA), Rt.value(DELTA_IRR), Rt.value(PSI_SYM)) == (g + 1, 6 * g + 18, g)
    assert pair(Rt, canonical_class(Rt.space)) == 2 * g - 23


@c(4)
@pytest.mark.parametrize("g", [3, 4, 5, 6, 7, 8, 10])
def test_gamma_curves(g):
    assert pair(gamma_avg(g), logan_class(g)) == -1
    Gt = gamma_sym(g)
    got = tuple(Gt.value(e) for e in (LAMBDA, DELTA_IRR, PSI_SYM, BoundarySym(0, 2)))
    assert got == (g + 1, 6 * g + 17, g + 1, 1)
    assert pair(Gt, canonical_class(Gt.space)) == 2 * g - 21


# -- 5 -----------------------------------------------------------------------------


def _ledger11(space):
    D = logan_class(11) if space.kind == "pointed" else aj_exceptional_class(11)
    gens = [(D, 1), (forget_all_pullback(bn11(), space), 2)]
    return solve_interpolation(canonical_class(space), gens, boundary_elements(space))


@c(5)
def test_genus11_pointed_ledger():
    sp = SpaceId.pointed(11, 11)
    led = _ledger11(sp)
    assert led.holds
    flagged = []
    for e in boundary_elements(sp):
        want = d_closed(e.i, len(e.T))
        got = led.residual[e]
        if (e.i, len(e.T)) == (1, 0):
            # displayed value is 7; the solve gives 8
            assert got == 8
            assert got != 7
            flagged.append(e)
        else:
            assert got == want, e
    assert len(flagged) == 1


@c(5)
def test_genus11_symmetric_ledger():
    sym = SpaceId.symmetric(11, 11)
    led = _ledger11(sym)
    assert led.holds
    assert led.residual[BoundarySym(0, 2)] == 0
    for e in boundary_elements(sym):
        if e == BoundarySym(0, 2):
            continue
        want = 8 if (e.i, e.c) == (1, 0) else d_closed(e.i, e.c)
        assert led.residual[e] == want, e


@c(5)
def test_genus11_suite_has_one_flag():
    rep = run_suite("canrep11")
    flagged = [ch.id for ch in rep.checks if ch.status == FLAGGED]
    assert flagged == ["canrep11/pointed/d[1:0]"]
    assert rep.exit_code() == 0


# -- 6 -----------------------------------------------------------------------------


@c(6)
@pytest.mark.parametrize("k", range(2, 12))
def test_rational_tail_curves(k):
    sp = SpaceId.pointed(11, 11)
    R = r_T(tuple(range(1, k + 1)))
    K = canonical_class(sp)
    assert pair(R, forget_all_pullback(bn11(), sp)) == 0
    assert pair(R, K) == 1 - k
    assert pair(R, K - logan_class(11)) == -Fraction(k * k + k - 4, 2)
    # one marked point on the tail: R_T . E = -d_{0,c}
    assert pair(R, K - logan_class(11)) == -d_closed(0, k)


@c(6)
def test_lefschetz_11_kills_boundary():
    base = SpaceId.base(11)
    a = {e: Coefficient.param(f"a{e.i}") for e in boundary_elements(base)}
    B = bn11().scale(2) + DivisorClass(base, a)
    assert pair(lefschetz_k3(11), B) == 0


# -- 7 -----------------------------------------------------------------------------


@c(7)
def test_genus10_ledger_symbolic():
    sym = SpaceId.symmetric(10, 10)
    b5 = Coefficient.param("b5")
    gens = [(aj_exceptional_class(10), 1), (forget_all_pullback(k3_class_g10(), sym), 2)]
    led = solve_interpolation(canonical_class(sym), gens, boundary_elements(sym))
    assert led.holds
    for e in boundary_elements(sym):
        got = led.residual[e]
        if (e.i, e.c) == (0, 2):
            assert got == 0
        elif (e.i, e.c) == (1, 0):
            assert got == 8
        elif e.i <= 4:
            assert got == d_closed(e.i, e.c), e
        else:
            assert got == b5 * 2 - 2 + comb(abs(e.c - 5) + 1, 2), e
    assert pair(lefschetz_k3(10), k3_class_g10()) == -1
    assert pair(gamma_sym(10), aj_exceptional_class(10)) == -1
    assert pair(gamma_sym(10), canonical_class(sym)) == 2 * 10 - 21


# -- 8 -----------------------------------------------------------------------------


@c(8)
def test_slopes():
    for g in range(3, 41):
        assert slope(brill_noether_class(g)) == 6 + Fraction(12, g + 1), g
    assert slope(canonical_class(SpaceId.base(11))) == Fraction(13, 2)
    assert slope(k3_class_g10().substitute({"b5": 6})) == 7


# -- 9 -----------------------------------------------------------------------------


@c(9)
def test_decompose_genus13():
    w = decompose_slope7(13, brill_noether_class(13))
    assert w.passed
    assert w.surplus == Fraction(2, 7)
    assert all(v >= 0 for v in w.gamma.values())
    assert w.recombined() == canonical_class(SpaceId.symmetric(13, 13))


@c(9)
def test_decompose_genus10_boundary_case():
    w = decompose_slope7(10, k3_class_g10().substitute({"b5": 6}))
    assert w.surplus == 0
    assert not w.passed


# -- 10 ----------------------------------------------------------------------------


@c(10)
@pytest.mark.parametrize("n", range(1, 14))
def test_genus8_pair(n):
    sp = SpaceId.pointed(8, n)
    cert = check_uniruled_pair(g8_gamma1(n), g8_gamma2(n), forget_all_pullback(bn8_double(), sp),
                               DivisorClass(sp, {DELTA_IRR: 1}), canonical_class(sp))
    six = tuple(cert.value(k) for k in ("c1.D1", "c1.D2", "c2.D1", "c2.D2", "c1.K", "c2.K"))
    assert six == (-1, 59, 28, -14, n - 14, n + 25)
    assert cert.value("det1") == -1638
    assert cert.value("det2") == 29 * n - 367
    assert cert.verdict == (n <= 12)


# -- 11 ----------------------------------------------------------------------------


@c(11)
def test_genus7_pair():
    sp = SpaceId.pointed(7, 13)
    cert = check_uniruled_pair(g7_gamma1(), g7_gamma2(), d1_class_partial(13),
                               forget_all_pullback(gonal7_class(), sp), canonical_class(sp))
    assert tuple(cert.value(k) for k in ("c1.D1", "c1.D2", "c2.D1", "c2.D2")) == (-28, 14, 2, -1)
    assert (cert.value("c1.K"), cert.value("c2.K")) == (22, -2)
    assert cert.value("det1") == 0
    assert cert.value("det2") == -12
    assert cert.verdict


# -- 12 ----------------------------------------------------------------------------


@c(12)
def test_genus5_and_genus9():
    sp5 = SpaceId.pointed(5, 13)
    assert pair(g5_pencil(), canonical_class(sp5)) == -2
    cert5 = check_uniruled_single(g5_pencil(), DivisorClass(sp5, {BoundaryPointed(0, (1, 2)): 1}),
                                  canonical_class(sp5))
    assert cert5.verdict
    sp9 = SpaceId.pointed(9, 10)
    G = g9_pencil()
    assert pair(G, canonical_class(sp9)) == -1
    bn = pair(G, forget_all_pullback(brill_noether_class(9), sp9))
    assert bn == Fraction(4, 3) and bn > 0
    assert check_uniruled_single(G, forget_all_pullback(brill_noether_class(9), sp9), canonical_class(sp9)).verdict


# -- 13 ----------------------------------------------------------------------------


@c(13)
def test_node_cusp_chain():
    assert c_g_constant(7) == 4
    sp = SpaceId.pointed(7, 1)
    cu = elliptic_tail_pullback(brill_noether_class(8).scale(c_g_constant(7)))
    displayed = {LAMBDA: 44, Psi(1): 28, DELTA_IRR: -6}
    for i in range(1, 7):
        displayed[canonicalize(sp, i, (1,))] = -4 * (i + 1) * (7 - i)
    assert cu == DivisorClass(sp, displayed)
    assert cu == cusp_class(7)
    push = node_to_cusp_pushforward(node_class_partial(7))
    assert push.agrees_on(cu, (LAMBDA, Psi(1), DELTA_IRR))
    for n in range(3, 14):
        d1 = d1_class_partial(n)
        assert forget_to_subset_pullback(node_class_partial(7), (1, 2), n).agrees_on(d1, d1.mask), n


# -- 14 ----------------------------------------------------------------------------


@c(14)
@settings(max_examples=1000, deadline=None)
@given(data=st.data())
def test_canonicalization_property(data):
    g = data.draw(st.integers(2, 6))
    n = data.draw(st.integers(1, 6))
    sp = SpaceId.pointed(g, n)
    i = data.draw(st.integers(0, g))
    T = tuple(sorted(data.draw(st.sets(st.integers(1, n)))))
    comp = tuple(x for x in range(1, n + 1) if x not in T)
    try:
        e = canonicalize(sp, i, T)
    except Exception:
        with pytest.raises(Exception):
            canonicalize(sp, g - i, comp)
        return
    assert canonicalize(sp, e.i, e.T) == e
    assert canonicalize(sp, g - i, comp) == e


@c(14)
@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(data=st.data())
def test_pullback_linearity_and_functoriality(data):
    g = data.draw(st.integers(2, 4))
    n = data.draw(st.integers(1, 4))
    base = SpaceId.base(g)
    a = data.draw(classes_on(base))
    b = data.draw(classes_on(base))
    t = data.draw(st.fractions(min_value=-9, max_value=9, max_denominator=5))
    pointed, sym = SpaceId.pointed(g, n), SpaceId.symmetric(g, n)
    lhs = forget_all_pullback(a + b.scale(t), pointed)
    assert lhs == forget_all_pullback(a, pointed) + forget_all_pullback(b, pointed).scale(t)
    assert forget_all_pullback(a, pointed) == sym_pullback(forget_all_pullback(a, sym))
    s1, s2 = data.draw(classes_on(sym)), data.draw(classes_on(sym))
    assert sym_pullback(s1 - s2) == sym_pullback(s1) - sym_pullback(s2)


@c(14)
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_pairing_bilinearity(data):
    g = data.draw(st.sampled_from([3, 4, 5]))
    R = k3_section_pencil(g)
    a, b = data.draw(classes_on(R.space)), data.draw(classes_on(R.space))
    s = data.draw(st.fractions(min_value=-9, max_value=9, max_denominator=7))
    assert pair(R, a + b.scale(s)) == pair(R, a) + pair(R, b) * s
    two = R + R.scale(s)
    assert pair(two, a) == pair(R, a) * (1 + s)


@c(14)
def test_report_determinism(full_report):
    for suite in ("canrep10", "uniruled", "slope"):
        first, again = run_suite(suite), run_suite(suite)
        assert again.render("json") == first.render("json")
        assert again.render("tsv") == first.render("tsv")
    assert type(full_report).from_json(full_report.to_json()) == full_report
    assert full_report.exit_code() == 0
