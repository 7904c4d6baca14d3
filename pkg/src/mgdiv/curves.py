"""Test curves as intersection vectors, and their pairing with divisor classes.

Every catalog entry is a transcribed table of intersection numbers; nothing is
derived from geometry here.  Entries missing from ``pairing`` are zero unless
they are listed in ``unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping

from .classes import Coefficient, DivisorClass
from .errors import NotAsserted, RangeViolation, SpaceMismatch, UnknownPairing
from .spaces import DELTA_IRR, LAMBDA, PSI_SYM, BasisElement, BoundaryPointed, BoundarySym, Psi, SpaceId, sort_key


@dataclass(frozen=True)
class TestCurve:
    name: str
    space: SpaceId
    pairing: Mapping[BasisElement, Fraction]
    unknown: frozenset = frozenset()
    covers: str | None = None
    through_general_point: bool = False
    description: str = field(default="", compare=False)

    __test__ = False  # not a pytest test class

    def __post_init__(self):
        clean = {}
        for e, v in dict(self.pairing).items():
            if not self.space.contains(e):
                raise SpaceMismatch(f"{e!r} is not a generator of {self.space}")
            v = Fraction(v)
            if v:
                clean[e] = v
        unknown = frozenset(self.unknown)
        for e in unknown:
            if not self.space.contains(e):
                raise SpaceMismatch(f"{e!r} is not a generator of {self.space}")
        if unknown & clean.keys():
            raise ValueError("an element cannot be both paired and unknown")
        object.__setattr__(self, "pairing", clean)
        object.__setattr__(self, "unknown", unknown)

    def __hash__(self):
        return hash((self.name, self.space, frozenset(self.pairing.items()), self.unknown))

    def value(self, e: BasisElement) -> Fraction:
        if e in self.unknown:
            raise UnknownPairing(e, f"{self.name} has unknown pairing with {e.token(self.space)}")
        return self.pairing.get(e, Fraction(0))

    def scale(self, t) -> "TestCurve":
        t = Fraction(t)
        return TestCurve(f"{t}*{self.name}", self.space, {e: v * t for e, v in self.pairing.items()},
                         self.unknown, self.covers, self.through_general_point)

    def __add__(self, other: "TestCurve") -> "TestCurve":
        if other.space != self.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")
        acc = dict(self.pairing)
        for e, v in other.pairing.items():
            acc[e] = acc.get(e, 0) + v
        return TestCurve(f"{self.name}+{other.name}", self.space, acc, self.unknown | other.unknown,
                         self.covers if self.covers == other.covers else None,
                         self.through_general_point and other.through_general_point)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "space": self.space.to_json(),
            "pairing": [{"gen": e.token(self.space), "value": str(v)}
                        for e, v in sorted(self.pairing.items(), key=lambda kv: sort_key(kv[0]))],
            "unknown": [e.token(self.space) for e in sorted(self.unknown, key=sort_key)],
            "covers": self.covers,
            "through_general_point": self.through_general_point,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TestCurve":
        from .expr import parse_generator

        space = SpaceId.from_json(data["space"])
        pairing = {parse_generator(r["gen"], space): Fraction(r["value"]) for r in data["pairing"]}
        unknown = frozenset(parse_generator(t, space) for t in data.get("unknown", ()))
        return cls(data["name"], space, pairing, unknown, data.get("covers"),
                   bool(data.get("through_general_point", False)))


def pair(curve: TestCurve, a: DivisorClass) -> Coefficient:
    """Intersection number of ``curve`` with ``a``; may carry a's parameters."""
    if curve.space != a.space:
        raise SpaceMismatch(f"curve on {curve.space}, class on {a.space}")
    if a.mask is not None:
        for e in list(curve.pairing) + list(curve.unknown):
            if e not in a.mask:
                raise NotAsserted(f"{curve.name} meets {e.token(a.space)}, where the partial class "
                                  f"asserts nothing")
    total = Coefficient.of(0)
    for e, k in a.entries.items():
        if e in curve.unknown:
            raise UnknownPairing(e, f"{curve.name} has unknown pairing with {e.token(a.space)}")
        v = curve.pairing.get(e)
        if v:
            total = total + k * v
    return total


# -- catalog ----------------------------------------------------------------


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise RangeViolation(msg)


def abel_jacobi_pencil(g: int) -> TestCurve:
    """Rational curve in the symmetric g-fold product traced by the divisors of a fixed pencil."""
    _check(g >= 2, f"abel_jacobi_pencil needs g >= 2, got {g}")
    space = SpaceId.symmetric(g, g)
    return TestCurve(f"abel_jacobi_pencil[{g}]", space,
                     {PSI_SYM: 2 * g - 2, BoundarySym(0, 2): 2 * g - 1},
                     covers=f"aj_exceptional[{g}]")


def k3_section_pencil(g: int) -> TestCurve:
    """Pencil of hyperplane sections of a K3 surface through g fixed points."""
    _check(3 <= g <= 11 and g != 10, f"k3_section_pencil needs 3 <= g <= 11, g != 10; got {g}")
    space = SpaceId.pointed(g, g)
    pairing = {LAMBDA: g + 1, DELTA_IRR: 6 * g + 18}
    pairing.update({Psi(i): 1 for i in range(1, g + 1)})
    return TestCurve(f"k3_section_pencil[{g}]", space, pairing, covers=f"logan[{g}]")


def gamma_ij(g: int, i: int, j: int) -> TestCurve:
    _check(3 <= g < 11 and g != 9, f"gamma_ij needs 3 <= g < 11, g != 9; got {g}")
    _check(1 <= i < j <= g, f"gamma_ij needs 1 <= i < j <= g; got ({i}, {j})")
    space = SpaceId.pointed(g, g)
    pairing = {LAMBDA: 2 * (g + 1), DELTA_IRR: 2 * (6 * g + 17), BoundaryPointed(0, (i, j)): 2}
    pairing.update({Psi(l): 2 for l in range(1, g + 1)})
    pairing[Psi(i)] = pairing[Psi(j)] = 5
    return TestCurve(f"gamma_ij[{g},{i},{j}]", space, pairing, covers=f"logan[{g}]")


def gamma_avg(g: int) -> TestCurve:
    """(1/(g(g-1))) times the sum of gamma_ij over unordered pairs i < j."""
    total = None
    for i, j in combinations(range(1, g + 1), 2):
        c = gamma_ij(g, i, j)
        total = c if total is None else total + c
    out = total.scale(Fraction(1, g * (g - 1)))
    return TestCurve(f"gamma_avg[{g}]", out.space, out.pairing, covers=f"logan[{g}]")


def k3_section_pencil_sym(g: int) -> TestCurve:
    from .maps import curve_pushforward_sym

    return curve_pushforward_sym(k3_section_pencil(g), 1, name=f"k3_section_pencil_sym[{g}]")


def gamma_sym(g: int) -> TestCurve:
    from .maps import curve_pushforward_sym

    c = curve_pushforward_sym(gamma_ij(g, 1, 2), Fraction(1, 2), name=f"gamma_sym[{g}]")
    return TestCurve(c.name, c.space, c.pairing, covers=f"aj_exceptional[{g}]", through_general_point=False)


def r_T(T) -> TestCurve:
    """K3 pencil with the points of T bubbled off onto a fixed rational tail."""
    T = tuple(sorted(set(T)))
    _check(len(T) >= 2 and all(1 <= x <= 11 for x in T), f"r_T needs T within 1..11 with #T >= 2; got {T}")
    space = SpaceId.pointed(11, 11)
    pairing = {LAMBDA: 12, DELTA_IRR: 84, BoundaryPointed(0, T): -1}
    pairing.update({Psi(i): 1 for i in range(1, 12) if i not in T})
    return TestCurve(f"r_T[{{{','.join(map(str, T))}}}]", space, pairing, covers=f"d[0:{{{','.join(map(str, T))}}}]")


def lefschetz_k3(g: int) -> TestCurve:
    """Lefschetz pencil of genus-g curves on a fixed K3, as a curve in the unpointed space."""
    _check(g >= 2, f"lefschetz_k3 needs g >= 2, got {g}")
    return TestCurve(f"lefschetz_k3[{g}]", SpaceId.base(g), {LAMBDA: g + 1, DELTA_IRR: 6 * g + 18},
                     covers="K3class10" if g == 10 else None)


def g5_pencil() -> TestCurve:
    """Genus-5 sextic pencil with 13 sections; labels 1, 2 are the two points over the node."""
    space = SpaceId.pointed(5, 13)
    pairing = {LAMBDA: 10, DELTA_IRR: 80, Psi(1): 5, Psi(2): 5, BoundaryPointed(0, (1, 2)): 2}
    pairing.update({Psi(i): 2 for i in range(3, 14)})
    return TestCurve("g5_pencil", space, pairing, through_general_point=True)


def g8_gamma1(n: int) -> TestCurve:
    _check(1 <= n <= 21, f"g8_gamma1 needs 1 <= n <= 21; got {n}")
    pairing = {LAMBDA: 8, DELTA_IRR: 59}
    pairing.update({Psi(i): 1 for i in range(1, n + 1)})
    return TestCurve(f"g8_gamma1[{n}]", SpaceId.pointed(8, n), pairing, covers="bn8_double")


def g8_gamma2(n: int) -> TestCurve:
    _check(n >= 1, f"g8_gamma2 needs n >= 1; got {n}")
    space = SpaceId.pointed(8, n)
    pairing = {LAMBDA: 0, DELTA_IRR: -14, BoundaryPointed(1, ()): 1}
    pairing.update({Psi(i): 1 for i in range(1, n + 1)})
    return TestCurve(f"g8_gamma2[{n}]", space, pairing, covers="d_irr")


def g9_pencil() -> TestCurve:
    pairing = {LAMBDA: 9, DELTA_IRR: 64}
    pairing.update({Psi(i): 1 for i in range(1, 11)})
    return TestCurve("g9_pencil", SpaceId.pointed(9, 10), pairing, covers="bn[9]")


def g7_gamma1() -> TestCurve:
    pairing = {LAMBDA: 98, DELTA_IRR: 728, Psi(1): 35, Psi(2): 35, Psi(13): 22, BoundaryPointed(0, (1, 2)): 14}
    pairing.update({Psi(i): 14 for i in range(3, 13)})
    return TestCurve("g7_gamma1", SpaceId.pointed(7, 13), pairing, covers="D1[13]")


def g7_gamma2() -> TestCurve:
    pairing = {LAMBDA: 7, DELTA_IRR: 53}
    pairing.update({Psi(i): 1 for i in range(1, 14)})
    return TestCurve("g7_gamma2", SpaceId.pointed(7, 13), pairing, covers="gonal7")


def c2_moving_point(g: int) -> TestCurve:
    """Fixed general curve with the second point moving; lambda, delta_irr and the rest of the boundary are unknown."""
    _check(g >= 2, f"c2_moving_point needs g >= 2; got {g}")
    space = SpaceId.pointed(g, 2)
    d012 = BoundaryPointed(0, (1, 2))
    unknown = {e for e in space.basis() if not isinstance(e, Psi) and e != d012}
    return TestCurve(f"c2_moving_point[{g}]", space, {Psi(1): 1, Psi(2): 2 * g - 1, d012: 1}, unknown)


CATALOG: dict[str, Callable[..., TestCurve]] = {
    "abel_jacobi_pencil": abel_jacobi_pencil,
    "k3_section_pencil": k3_section_pencil,
    "gamma_ij": gamma_ij,
    "gamma_avg": gamma_avg,
    "k3_section_pencil_sym": k3_section_pencil_sym,
    "gamma_sym": gamma_sym,
    "r_T": r_T,
    "lefschetz_k3": lefschetz_k3,
    "g5_pencil": g5_pencil,
    "g8_gamma1": g8_gamma1,
    "g8_gamma2": g8_gamma2,
    "g9_pencil": g9_pencil,
    "g7_gamma1": g7_gamma1,
    "g7_gamma2": g7_gamma2,
    "c2_moving_point": c2_moving_point,
}


def catalog(name: str, *args) -> TestCurve:
    try:
        builder = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown curve {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    try:
        return builder(*args)
    except TypeError as exc:
        raise RangeViolation(f"bad arguments for {name}: {exc}") from None
