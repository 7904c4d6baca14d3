"""The verification suites: every published identity, recomputed exactly.

Each check compares an expected value (tagged ``published``, ``derived`` or
``identity``) with the value the library computes.  Checks that correspond to
a documented disagreement with the published tables are listed in
``KNOWN_MISMATCHES`` and reported as ``MISMATCH-FLAGGED`` instead of ``FAIL``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .classes import Coefficient, DivisorClass
from .certify import (
    check_fixed_component,
    check_uniruled_pair,
    check_uniruled_single,
    decompose_slope7,
    slope,
    solve_interpolation,
)
from .curves import (
    abel_jacobi_pencil,
    g5_pencil,
    g7_gamma1,
    g7_gamma2,
    g8_gamma1,
    g8_gamma2,
    g9_pencil,
    gamma_avg,
    gamma_ij,
    gamma_sym,
    k3_section_pencil,
    k3_section_pencil_sym,
    lefschetz_k3,
    pair,
    r_T,
)
from .maps import elliptic_tail_pullback, forget_all_pullback, forget_to_subset_pullback, node_to_cusp_pushforward, \
    sym_pullback
from .registry import (
    aj_exceptional_class,
    bn11,
    bn8_double,
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
from .spaces import DELTA_IRR, LAMBDA, PSI_SYM, BoundaryPointed, BoundarySym, Psi, SpaceId, boundary_elements

PASS = "PASS"
FAIL = "FAIL"
FLAGGED = "MISMATCH-FLAGGED"

PUBLISHED = "published"
DERIVED = "derived"
IDENTITY = "identity"

# the published delta_{1:0} residual is 7; an independent solve gives 8
KNOWN_MISMATCHES = {
    "canrep11/pointed/d[1:0]": "published residual 7 for delta_{1:0}; the exact solve gives 8",
    "canrep10/d[1:0]": "published residual (same as genus 11) 7 for delta_{1:0}; the exact solve gives 8",
}

SUITES = ("eq-consistency", "curves", "canrep11", "canrep10", "uniruled", "slope", "node7")


@dataclass(frozen=True)
class Check:
    id: str
    location: str
    expected: str
    source: str
    computed: str
    status: str
    note: str = ""

    def to_json(self) -> dict:
        out = {"id": self.id, "location": self.location,
               "expected": {"value": self.expected, "source": self.source},
               "computed": self.computed, "status": self.status}
        if self.note:
            out["note"] = self.note
        return out


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "pass" if v else "fail"
    if isinstance(v, DivisorClass):
        return str(v)
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def _same(a, b) -> bool:
    if isinstance(a, (Coefficient, Fraction, int)) and isinstance(b, (Coefficient, Fraction, int)):
        return Coefficient.of(a) == Coefficient.of(b)
    if isinstance(a, (tuple, list)) and isinstance(b, (tuple, list)):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return a == b


class _Collector:
    def __init__(self):
        self.checks: list = []

    def add(self, cid: str, location: str, expected, computed, source: str = PUBLISHED) -> None:
        ok = _same(expected, computed)
        if ok:
            status, note = PASS, ""
        elif cid in KNOWN_MISMATCHES:
            status, note = FLAGGED, KNOWN_MISMATCHES[cid]
        else:
            status, note = FAIL, ""
        self.checks.append(Check(cid, location, _fmt(expected), source, _fmt(computed), status, note))

    def run(self, cid: str, location: str, expected, thunk, source: str = PUBLISHED) -> None:
        try:
            computed = thunk()
        except Exception as exc:  # a crashing check is a failing check
            self.checks.append(Check(cid, location, _fmt(expected), source, f"error: {type(exc).__name__}: {exc}",
                                     FAIL))
            return
        self.add(cid, location, expected, computed, source)


# -- suites -----------------------------------------------------------------------


def _eq_consistency(c: _Collector) -> None:
    loc = "canonical class of the symmetric product vs the pointed space"
    for g in range(2, 13):
        for n in range(1, 13):
            def rh(g=g, n=n):
                sym = SpaceId.symmetric(g, n)
                pointed = SpaceId.pointed(g, n)
                lhs = sym_pullback(canonical_class(sym))
                if n >= 2:
                    lhs = lhs + sym_pullback(DivisorClass(sym, {BoundarySym(0, 2): 1}))
                return lhs == canonical_class(pointed)
            c.run(f"eq/riemann-hurwitz[g={g},n={n}]", loc, True, rh, IDENTITY)
    for g in range(3, 13):
        c.run(f"eq/pencil-pullback[g={g}]", "pencil divisor: symmetric class pulls back to the pointed one", True,
              lambda g=g: sym_pullback(aj_exceptional_class(g)) == logan_class(g), PUBLISHED)

        def binomial(g=g):
            D, Dt = logan_class(g), aj_exceptional_class(g)
            return all(comb(k, 2) + k == comb(k + 1, 2) and -Dt[BoundarySym(0, k)] + k == comb(k + 1, 2)
                       and D[BoundaryPointed(0, tuple(range(1, k + 1)))] == -comb(k + 1, 2)
                       for k in range(2, g + 1))
        c.run(f"eq/binomial-i0[g={g}]", "pencil divisor at i = 0", True, binomial, IDENTITY)


def _curves(c: _Collector) -> None:
    for g in range(4, 13):
        ell = abel_jacobi_pencil(g)
        K = canonical_class(ell.space)
        loc = "Abel-Jacobi pencil numbers"
        c.run(f"curves/ell.psit[g={g}]", loc, 2 * g - 2, lambda: ell.value(PSI_SYM))
        c.run(f"curves/ell.dt02[g={g}]", loc, 2 * g - 1, lambda: ell.value(BoundarySym(0, 2)))
        c.run(f"curves/ell.K[g={g}]", loc, -1, lambda: pair(ell, K))
        c.run(f"curves/ell.Dt[g={g}]", loc, -1, lambda g=g: pair(ell, aj_exceptional_class(g)))
    for g in (3, 4, 5, 6, 7, 8, 9, 11):
        c.run(f"curves/R.Dbar[g={g}]", "K3 section pencil against the pencil divisor", -1,
              lambda g=g: pair(k3_section_pencil(g), logan_class(g)))
        c.run(f"curves/Rtilde.table[g={g}]", "pushed-forward K3 pencil: (lambda, delta_irr, psi)",
              (g + 1, 6 * g + 18, g),
              lambda g=g: tuple(k3_section_pencil_sym(g).value(e) for e in (LAMBDA, DELTA_IRR, PSI_SYM)))
        c.run(f"curves/Rtilde.K[g={g}]", "pushed-forward K3 pencil against K", 2 * g - 23,
              lambda g=g: pair(k3_section_pencil_sym(g), canonical_class(SpaceId.symmetric(g, g))))
    for g in (3, 4, 5, 6, 7, 8, 10):
        c.run(f"curves/Gamma_avg.Dbar[g={g}]", "averaged Gamma_ij against the pencil divisor", -1,
              lambda g=g: pair(gamma_avg(g), logan_class(g)))
        c.run(f"curves/Gamma_ij.Dbar[g={g}]", "Gamma_12 against the pencil divisor", -2,
              lambda g=g: pair(gamma_ij(g, 1, 2), logan_class(g)), DERIVED)
        c.run(f"curves/Gammatilde.table[g={g}]", "pushed-forward Gamma: (lambda, delta_irr, psi, delta_0:2)",
              (g + 1, 6 * g + 17, g + 1, 1),
              lambda g=g: tuple(gamma_sym(g).value(e) for e in (LAMBDA, DELTA_IRR, PSI_SYM, BoundarySym(0, 2))))
        c.run(f"curves/Gammatilde.K[g={g}]", "pushed-forward Gamma against K", 2 * g - 21,
              lambda g=g: pair(gamma_sym(g), canonical_class(SpaceId.symmetric(g, g))))
    for g in (3, 5, 8, 11):
        def proj(g=g):
            R, Rt = k3_section_pencil(g), k3_section_pencil_sym(g)
            return all(pair(Rt, DivisorClass(Rt.space, {x: 1})) == pair(R, sym_pullback(DivisorClass(Rt.space, {x: 1})))
                       for x in Rt.space.basis())
        c.run(f"curves/projection-formula[g={g}]", "pushforward agrees with pullback pairing", True, proj, IDENTITY)


def _canrep11(c: _Collector) -> None:
    pointed = SpaceId.pointed(11, 11)
    sym = SpaceId.symmetric(11, 11)
    loc = "genus-11 canonical class interpolation"
    closed = {1: 8, 2: 16, 3: 22, 4: 26, 5: 28}

    def d(i, k):
        if (i, k) == (1, 0):
            return 7  # published value
        if i == 0:
            return Fraction(k * k + k - 4, 2)
        return closed[i] + comb(abs(k - i) + 1, 2)

    def cells(ledger, cardinality):
        out: dict = {}
        for e in boundary_elements(ledger.target.space):
            out.setdefault((e.i, cardinality(e)), set()).add(ledger.residual[e])
        return out

    try:
        bnp = forget_all_pullback(bn11(), pointed)
        lp = solve_interpolation(canonical_class(pointed), [(logan_class(11), 1), (bnp, 2)],
                                 boundary_elements(pointed))
        pcells = cells(lp, lambda e: len(e.T))
        c.add("canrep11/pointed/recombines", loc, True, lp.holds, IDENTITY)
        for (i, k), vals in sorted(pcells.items()):
            got = next(iter(vals)) if len(vals) == 1 else tuple(sorted(vals))
            c.add(f"canrep11/pointed/d[{i}:{k}]", loc, d(i, k), got)
        ls = solve_interpolation(canonical_class(sym),
                                 [(aj_exceptional_class(11), 1), (forget_all_pullback(bn11(), sym), 2)],
                                 boundary_elements(sym))
        c.add("canrep11/sym/recombines", loc + " (symmetric)", True, ls.holds, IDENTITY)
        c.add("canrep11/sym/d[0:2]", loc + " (symmetric)", 0, ls.residual[BoundarySym(0, 2)], DERIVED)
        for e in boundary_elements(sym):
            if e == BoundarySym(0, 2):
                continue
            cid = f"canrep11/sym/d[{e.i}:{e.c}]"
            if (e.i, e.c) == (1, 0):
                # same cell as the pointed ledger; compared against the pointed solve
                c.add(cid, loc + " (symmetric vs pointed)", next(iter(pcells[(1, 0)])), ls.residual[e], DERIVED)
            else:
                c.add(cid, loc + " (symmetric)", d(e.i, e.c), ls.residual[e])

        def fixed_sym():
            others = [forget_all_pullback(bn11(), sym)] + [DivisorClass(sym, {e: 1}) for e in ls.residual.entries]
            cert = check_fixed_component(abel_jacobi_pencil(11), aj_exceptional_class(11), canonical_class(sym),
                                         others, name="aj_exceptional[11]")
            return (cert.value("curve.D"), cert.value("curve.K"), cert.verdict)
        c.run("canrep11/fixed-component-sym", "symmetric pencil divisor is a fixed component of K",
              (-1, -1, True), fixed_sym)
    except Exception as exc:
        c.checks.append(Check("canrep11/ledger", loc, "ledger", PUBLISHED, f"error: {exc}", FAIL))

    loc = "genus-11 rational tails curves"
    K = canonical_class(pointed)
    bnp = forget_all_pullback(bn11(), pointed)
    rest = K - logan_class(11)
    for k in range(2, 12):
        T = tuple(range(1, k + 1))
        R = r_T(T)
        c.run(f"canrep11/R_T.bn[c={k}]", loc, 0, lambda R=R: pair(R, bnp))
        c.run(f"canrep11/R_T.K[c={k}]", loc, 1 - k, lambda R=R: pair(R, K))
        c.run(f"canrep11/R_T.E[c={k}]", loc, Fraction(-(k * k + k - 4), 2), lambda R=R: pair(R, rest))
    base = SpaceId.base(11)
    R11 = lefschetz_k3(11)
    symbolic = bn11().scale(2) + DivisorClass(base, {e: Coefficient.param(f"a{e.i}") for e in boundary_elements(base)})
    c.run("canrep11/R11.B", "genus-11 Lefschetz pencil", 0, lambda: pair(R11, symbolic), IDENTITY)

    def fixed():
        cert = check_fixed_component(k3_section_pencil(11), logan_class(11), K, [bnp], name="logan[11]")
        return (cert.value("curve.D"), cert.value("curve.K"), cert.value("curve.other[0]"), cert.verdict)
    c.run("canrep11/fixed-component", "pencil divisor is a fixed component of K", (-1, -1, 0, True), fixed)



def _canrep10(c: _Collector) -> None:
    sym = SpaceId.symmetric(10, 10)
    loc = "genus-10 canonical class interpolation (b5 symbolic)"
    b5 = Coefficient.param("b5")
    closed = {1: 8, 2: 16, 3: 22, 4: 26}
    try:
        K3s = forget_all_pullback(k3_class_g10(), sym)
        led = solve_interpolation(canonical_class(sym), [(aj_exceptional_class(10), 1), (K3s, 2)],
                                  boundary_elements(sym))
        c.add("canrep10/recombines", loc, True, led.holds, IDENTITY)
        for e in boundary_elements(sym):
            i, k = e.i, e.c
            if i == 0:
                exp = 0 if k == 2 else Fraction(k * k + k - 4, 2)
            elif (i, k) == (1, 0):
                exp = 7
            elif i <= 4:
                exp = closed[i] + comb(abs(k - i) + 1, 2)
            else:
                exp = b5 * 2 - 2 + comb(abs(k - 5) + 1, 2)
            c.add(f"canrep10/d[{i}:{k}]", loc, exp, led.residual[e], DERIVED if i == 0 and k != 2 else PUBLISHED)
        c.add("canrep10/pullback.d[5:c]", "pullback of the K3 divisor", tuple([-b5] * 6),
              tuple(K3s[BoundarySym(5, k)] for k in range(6)), DERIVED)
    except Exception as exc:
        c.checks.append(Check("canrep10/ledger", loc, "ledger", PUBLISHED, f"error: {exc}", FAIL))
    c.run("canrep10/R10.K10", "K3 pencil against the K3 divisor", -1, lambda: pair(lefschetz_k3(10), k3_class_g10()))
    c.run("canrep10/Gammatilde.Dt", "pushed-forward Gamma against the pencil divisor", -1,
          lambda: pair(gamma_sym(10), aj_exceptional_class(10)))
    c.run("canrep10/Gammatilde.K", "pushed-forward Gamma against K", -1,
          lambda: pair(gamma_sym(10), canonical_class(sym)))


def _uniruled(c: _Collector) -> None:
    loc = "genus-8 pair criterion"
    for n in range(1, 14):
        sp = SpaceId.pointed(8, n)
        try:
            cert = check_uniruled_pair(g8_gamma1(n), g8_gamma2(n), forget_all_pullback(bn8_double(), sp),
                                       DivisorClass(sp, {DELTA_IRR: 1}), canonical_class(sp),
                                       names=("bn8_double", "d_irr"))
        except Exception as exc:
            c.checks.append(Check(f"uniruled/g8[n={n}]", loc, "certificate", PUBLISHED, f"error: {exc}", FAIL))
            continue
        c.add(f"uniruled/g8.pairings[n={n}]", loc, (-1, 59, 28, -14, n - 14, n + 25),
              tuple(cert.value(k) for k in ("c1.D1", "c1.D2", "c2.D1", "c2.D2", "c1.K", "c2.K")))
        c.add(f"uniruled/g8.det1[n={n}]", loc, -1638, cert.value("det1"))
        c.add(f"uniruled/g8.det2[n={n}]", loc, 29 * n - 367, cert.value("det2"))
        c.add(f"uniruled/g8.verdict[n={n}]", loc, n <= 12, cert.verdict, PUBLISHED if n <= 12 else DERIVED)

    def g7():
        sp = SpaceId.pointed(7, 13)
        return check_uniruled_pair(g7_gamma1(), g7_gamma2(), d1_class_partial(13),
                                   forget_all_pullback(gonal7_class(), sp), canonical_class(sp),
                                   names=("D1[13]", "gonal7"))
    loc = "genus-7 pair criterion"
    c.run("uniruled/g7.pairings", loc, (-28, 14, 2, -1, 22, -2, 0, -12), lambda: tuple(v for _, v in g7().trace))
    c.run("uniruled/g7.verdict", loc, True, lambda: g7().verdict)

    def g5():
        sp = SpaceId.pointed(5, 13)
        return check_uniruled_single(g5_pencil(), DivisorClass(sp, {BoundaryPointed(0, (1, 2)): 1}),
                                     canonical_class(sp))
    c.run("uniruled/g5.K", "genus-5 sextic pencil", -2, lambda: g5().value("curve.K"))
    c.run("uniruled/g5.verdict", "genus-5 sextic pencil", True, lambda: g5().verdict)

    def g9():
        sp = SpaceId.pointed(9, 10)
        return check_uniruled_single(g9_pencil(), forget_all_pullback(brill_noether_class(9), sp),
                                     canonical_class(sp), name="bn[9]")
    c.run("uniruled/g9.K", "genus-9 pencil", -1, lambda: g9().value("curve.K"))
    c.run("uniruled/g9.bn", "genus-9 pencil", Fraction(4, 3), lambda: g9().value("curve.D"), DERIVED)
    c.run("uniruled/g9.verdict", "genus-9 pencil", True, lambda: g9().verdict)


def _slope(c: _Collector) -> None:
    for g in range(3, 41):
        c.run(f"slope/bn[g={g}]", "Brill-Noether slope", 6 + Fraction(12, g + 1),
              lambda g=g: slope(brill_noether_class(g)))
    c.run("slope/K[g=11]", "slope of the canonical class", Fraction(13, 2),
          lambda: slope(canonical_class(SpaceId.base(11))))
    c.run("slope/K3class10[b5=6]", "slope of the K3 divisor", 7, lambda: slope(k3_class_g10().substitute({"b5": 6})))
    c.run("slope/K3class10[bound]", "slope of the K3 divisor at the declared bound", 7, lambda: slope(k3_class_g10()))
    c.run("slope/bn11-normalized", "half of bn[11]", True, lambda: brill_noether_class(11).scale(Fraction(1, 2)) == bn11(),
          DERIVED)

    def dec13():
        d = decompose_slope7(13, brill_noether_class(13))
        return (d.surplus, min(d.gamma.values()) >= 0, d.passed,
                d.recombined() == canonical_class(SpaceId.symmetric(13, 13)))
    c.run("slope/decompose[g=13]", "slope-7 decomposition with bn[13]", (Fraction(2, 7), True, True, True), dec13,
          DERIVED)

    def dec10():
        d = decompose_slope7(10, k3_class_g10().substitute({"b5": 6}))
        return (d.surplus, d.passed)
    c.run("slope/decompose[g=10]", "slope-7 decomposition at slope exactly 7", (0, False), dec10, DERIVED)


def _node7(c: _Collector) -> None:
    loc = "genus-7 node and cusp classes"
    c.run("node7/c7", loc, 4, lambda: c_g_constant(7), DERIVED)
    c.run("node7/cusp-from-tail", loc, True,
          lambda: elliptic_tail_pullback(brill_noether_class(8).scale(c_g_constant(7))) == cusp_class(7))
    sp = SpaceId.pointed(7, 1)
    c.run("node7/cusp.d[6:{1}]", loc, -28, lambda: cusp_class(7)[sp.delta(6, (1,))], DERIVED)
    c.run("node7/cusp.d[3:{1}]", loc, -64, lambda: cusp_class(7)[sp.delta(3, (1,))], DERIVED)

    def pushed():
        p = node_to_cusp_pushforward(node_class_partial(7))
        return tuple(p[e] for e in (LAMBDA, Psi(1), DELTA_IRR))
    c.run("node7/node-to-cusp", loc, (44, 28, -6), pushed)
    c.run("node7/node-to-cusp-vs-cusp", loc, True,
          lambda: node_to_cusp_pushforward(node_class_partial(7)).agrees_on(cusp_class(7), (LAMBDA, Psi(1), DELTA_IRR)),
          IDENTITY)
    for n in range(3, 14):
        def d1(n=n):
            b = d1_class_partial(n)
            return forget_to_subset_pullback(node_class_partial(7), (1, 2), n).agrees_on(b, b.mask)
        c.run(f"node7/D1[n={n}]", "pullback of the node class to n points", True, d1)


_RUNNERS = {
    "eq-consistency": _eq_consistency,
    "curves": _curves,
    "canrep11": _canrep11,
    "canrep10": _canrep10,
    "uniruled": _uniruled,
    "slope": _slope,
    "node7": _node7,
}


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    checks: tuple

    @property
    def summary(self) -> dict:
        counts = {PASS: 0, FAIL: 0, FLAGGED: 0}
        for ch in self.checks:
            counts[ch.status] += 1
        return {"total": len(self.checks), "pass": counts[PASS], "fail": counts[FAIL], "flagged": counts[FLAGGED]}

    @property
    def ok(self) -> bool:
        return bool(self.checks) and self.summary["fail"] == 0

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        return {"suite": self.suite, "summary": self.summary, "checks": [ch.to_json() for ch in self.checks]}

    @classmethod
    def from_json(cls, data: dict) -> "VerifyReport":
        checks = tuple(Check(r["id"], r["location"], r["expected"]["value"], r["expected"]["source"], r["computed"],
                             r["status"], r.get("note", "")) for r in data["checks"])
        return cls(data["suite"], checks)

    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"
        if fmt == "tsv":
            buf = io.StringIO()
            w = csv.writer(buf, delimiter="\t", lineterminator="\n")
            w.writerow(["id", "location", "expected", "source", "computed", "status"])
            for ch in self.checks:
                w.writerow([ch.id, ch.location, ch.expected, ch.source, ch.computed, ch.status])
            return buf.getvalue()
        lines = []
        for ch in self.checks:
            line = f"{ch.status:<16} {ch.id}: computed {ch.computed}"
            if ch.status != PASS:
                line += f", expected {ch.expected} ({ch.source})"
            if ch.note:
                line += f" [{ch.note}]"
            lines.append(line)
        s = self.summary
        lines.append(f"{s['total']} checks: {s['pass']} pass, {s['fail']} fail, {s['flagged']} flagged")
        return "\n".join(lines) + "\n"


def run_suite(suite: str = "all") -> VerifyReport:
    if suite != "all" and suite not in _RUNNERS:
        raise KeyError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    c = _Collector()
    for name in (SUITES if suite == "all" else (suite,)):
        _RUNNERS[name](c)
    return VerifyReport(suite, tuple(sorted(c.checks, key=lambda ch: ch.id)))
