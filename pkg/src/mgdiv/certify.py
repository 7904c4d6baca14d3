"""Slopes, interpolation ledgers, the slope-7 decomposition and curve certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .classes import Coefficient, DivisorClass
from .curves import TestCurve, pair
from .errors import PreconditionFailed, RangeViolation, ResidualEscapesSupport, SpaceMismatch
from .maps import forget_all_pullback
from .registry import PARAM_LOWER_BOUNDS, aj_exceptional_class, canonical_class
from .spaces import BASE, DELTA_IRR, LAMBDA, BasisElement, SpaceId, boundary_elements, enumerate_basis, sort_key

# -- slope -----------------------------------------------------------------------


def _lower_bound(k: Coefficient, bounds: Mapping[str, Fraction]) -> Fraction:
    """Minimum of an affine form over p >= bounds[p]."""
    out = k.const
    for p, c in k.terms:
        if p not in bounds or c < 0:
            raise PreconditionFailed(f"parameter {p} has no usable lower bound in {k}")
        out += c * bounds[p]
    return out


def slope(a: DivisorClass, bounds: Mapping[str, object] | None = None):
    """a / min b_i for a*lambda - sum b_i delta_i; ``math.inf`` when some b_i <= 0."""
    if a.space.kind != BASE:
        raise SpaceMismatch(f"slope is defined on the unpointed space, got {a.space}")
    bounds = {k: Fraction(v) for k, v in (PARAM_LOWER_BOUNDS if bounds is None else bounds).items()}
    lam = a.coefficient_of(LAMBDA)
    if not lam.is_numeric:
        raise PreconditionFailed("the lambda coefficient must be numeric")
    if lam.value <= 0:
        raise PreconditionFailed(f"slope is undefined for lambda coefficient {lam}")
    bs = [_lower_bound(-a.coefficient_of(e), bounds) for e in (DELTA_IRR,) + boundary_elements(a.space)]
    m = min(bs)
    if m <= 0:
        return math.inf
    return lam.value / m


# -- interpolation ---------------------------------------------------------------


@dataclass(frozen=True)
class InterpolationLedger:
    target: DivisorClass
    generators: tuple  # of (DivisorClass, Coefficient)
    residual: DivisorClass
    allowed_support: frozenset

    def recombined(self) -> DivisorClass:
        total = self.residual
        for g, k in self.generators:
            total = total + _times(g, k)
        return total

    @property
    def holds(self) -> bool:
        return self.recombined() == self.target and set(self.residual.entries) <= self.allowed_support

    def cell(self, e: BasisElement) -> Coefficient:
        return self.residual.coefficient_of(e)

    def to_json(self) -> dict:
        return {
            "target": self.target.to_json(),
            "generators": [{"class": g.to_json(), "coefficient": k.to_json()} for g, k in self.generators],
            "residual": self.residual.to_json(),
            "allowed_support": [e.token(self.target.space) for e in sorted(self.allowed_support, key=sort_key)],
        }


def _times(g: DivisorClass, k: Coefficient) -> DivisorClass:
    k = Coefficient.of(k)
    if k.is_numeric:
        return g.scale(k)
    return DivisorClass(g.space, {e: v * k for e, v in g.entries.items()}, g.mask, check=False)


def solve_interpolation(target: DivisorClass, generators: Sequence, allowed_support) -> InterpolationLedger:
    """Write ``target`` as a combination of generators plus a residual inside ``allowed_support``.

    Each generator is ``(class, coefficient)``; a coefficient of ``None`` is an
    unknown, solved for so that the residual vanishes off the allowed support.
    """
    allowed = frozenset(allowed_support)
    space = target.space
    gens = []
    for g, k in generators:
        if g.space != space:
            raise SpaceMismatch(f"generator on {g.space}, target on {space}")
        gens.append((g, None if k is None else Coefficient.of(k)))
    unknown = [j for j, (_, k) in enumerate(gens) if k is None]
    if unknown:
        known = target
        for g, k in gens:
            if k is not None:
                known = known - _times(g, k)
        rows = [e for e in enumerate_basis(space) if e not in allowed]
        A = [[_numeric(gens[j][0].coefficient_of(e)) for j in unknown] for e in rows]
        b = [known.coefficient_of(e) for e in rows]
        try:
            x = linalg.solve(A, b)
        except linalg.Inconsistent as exc:
            raise ResidualEscapesSupport([rows[exc.row]]) from None
        for j, v in zip(unknown, x):
            gens[j] = (gens[j][0], v)
    residual = target
    for g, k in gens:
        residual = residual - _times(g, k)
    offenders = sorted((e for e in residual.entries if e not in allowed), key=sort_key)
    if offenders:
        raise ResidualEscapesSupport([e.token(space) for e in offenders])
    return InterpolationLedger(target, tuple(gens), residual, allowed)


def _numeric(k: Coefficient) -> Fraction:
    if not k.is_numeric:
        raise PreconditionFailed("generators with unknown coefficients must be numeric")
    return k.value


# -- slope-7 decomposition ---------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    g: int
    D: DivisorClass
    surplus: Fraction  # lambda-tilde coefficient 14 - 2a/b0
    alpha: Fraction
    beta: Fraction
    gamma: Mapping  # BoundarySym -> Fraction
    slope: object
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures

    def recombined(self) -> DivisorClass:
        space = SpaceId.symmetric(self.g, self.g)
        total = DivisorClass(space, {LAMBDA: self.surplus} | dict(self.gamma))
        total = total + aj_exceptional_class(self.g).scale(self.alpha)
        return total + forget_all_pullback(self.D, space).scale(self.beta)

    def to_json(self) -> dict:
        space = SpaceId.symmetric(self.g, self.g)
        return {
            "g": self.g,
            "surplus": str(self.surplus),
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "slope": "inf" if self.slope == math.inf else str(self.slope),
            "gamma": {e.token(space): str(v) for e, v in sorted(self.gamma.items(), key=lambda kv: sort_key(kv[0]))},
            "passed": self.passed,
            "failures": list(self.failures),
        }


def decompose_slope7(g: int, D: DivisorClass) -> Decomposition:
    """Split the canonical class of the symmetric g-fold product along D and the pencil divisor."""
    if D.space != SpaceId.base(g):
        raise SpaceMismatch(f"expected a class on {SpaceId.base(g)}, got {D.space}")
    if not D.is_numeric:
        raise PreconditionFailed("decompose_slope7 needs a numeric class; substitute parameters first")
    s = slope(D)
    if s == math.inf:
        raise PreconditionFailed("decompose_slope7 needs a finite slope")
    a = D.coefficient_of(LAMBDA).value
    b0 = -D.coefficient_of(DELTA_IRR).value
    if b0 <= 0:
        raise PreconditionFailed("the delta_irr coefficient must be negative")
    space = SpaceId.symmetric(g, g)
    beta = 2 / b0
    rest = canonical_class(space) - aj_exceptional_class(g) - forget_all_pullback(D, space).scale(beta)
    surplus = rest.coefficient_of(LAMBDA).value
    gamma = {e: k.value for e, k in rest.entries.items() if e != LAMBDA}
    stray = [e for e in gamma if e not in set(boundary_elements(space))]
    if stray:  # psi-tilde and delta_irr cancel by construction
        raise AssertionError(f"non-boundary residual {stray}")
    failures = [f"gamma[{e.token(space)}] = {v} < 0" for e, v in sorted(gamma.items(), key=lambda kv: sort_key(kv[0]))
                if v < 0]
    if not 14 - 2 * s > 0:
        failures.append(f"14 - 2*slope = {14 - 2 * s} is not positive")
    return Decomposition(g, D, surplus, Fraction(1), beta, gamma, s, tuple(failures))


# -- certificates --------------------------------------------------------------------

FIXED_COMPONENT = "FixedComponent"
UNIRULED_SINGLE = "UniruledSingle"
UNIRULED_PAIR = "UniruledPair"


def _v(trace, label):
    return dict(trace)[label]


def _verdict_fixed(trace) -> bool:
    t = dict(trace)
    others = [v for k, v in trace if k.startswith("curve.other[")]
    return t["curve.D"] < 0 and all(v == 0 for v in others) and t["curve.K"] == t["multiplicity"] * t["curve.D"]


def _verdict_single(trace) -> bool:
    t = dict(trace)
    return t["curve.D"] >= 0 and t["curve.K"] < 0


def _verdict_pair(trace) -> bool:
    t = dict(trace)
    return t["c1.D1"] < 0 and t["c2.D2"] < 0 and t["det1"] <= 0 and t["det2"] < 0


VERDICTS = {FIXED_COMPONENT: _verdict_fixed, UNIRULED_SINGLE: _verdict_single, UNIRULED_PAIR: _verdict_pair}


@dataclass(frozen=True)
class Certificate:
    variant: str
    inputs: Mapping[str, str]
    trace: tuple  # of (label, Fraction)
    notes: tuple = field(default=())

    @property
    def verdict(self) -> bool:
        return VERDICTS[self.variant](self.trace)

    @property
    def passed(self) -> bool:
        return self.verdict

    def value(self, label: str) -> Fraction:
        return _v(self.trace, label)

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "inputs": dict(sorted(self.inputs.items())),
            "trace": [{"label": k, "value": str(v)} for k, v in self.trace],
            "verdict": "pass" if self.verdict else "fail",
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Certificate":
        trace = tuple((r["label"], Fraction(r["value"])) for r in data["trace"])
        return cls(data["variant"], dict(data["inputs"]), trace)


def _num(c: TestCurve, a: DivisorClass, what: str) -> Fraction:
    v = pair(c, a)
    if not v.is_numeric:
        raise PreconditionFailed(f"{what} = {v} still depends on parameters")
    return v.value


def _covers(curve: TestCurve, name: str | None, allow_general: bool = False) -> None:
    if allow_general and curve.through_general_point:
        return
    if curve.covers is None:
        raise PreconditionFailed(f"{curve.name} is not recorded as a covering curve")
    if name is not None and curve.covers != name:
        raise PreconditionFailed(f"{curve.name} covers {curve.covers}, not {name}")


def check_fixed_component(curve: TestCurve, D: DivisorClass, K: DivisorClass, others: Sequence = (),
                          multiplicity=1, name: str | None = None) -> Certificate:
    """A covering curve of D that is negative on D, zero on the rest of K's decomposition."""
    _covers(curve, name)
    trace = [("curve.D", _num(curve, D, "curve.D")), ("curve.K", _num(curve, K, "curve.K"))]
    for j, E in enumerate(others):
        trace.append((f"curve.other[{j}]", _num(curve, E, f"curve.other[{j}]")))
    trace.append(("multiplicity", Fraction(multiplicity)))
    inputs = {"curve": curve.name, "D": name or curve.covers or "", "others": str(len(others))}
    return Certificate(FIXED_COMPONENT, inputs, tuple(trace))


def check_uniruled_single(curve: TestCurve, D: DivisorClass, K: DivisorClass, name: str | None = None) -> Certificate:
    _covers(curve, name, allow_general=True)
    trace = (("curve.D", _num(curve, D, "curve.D")), ("curve.K", _num(curve, K, "curve.K")))
    return Certificate(UNIRULED_SINGLE, {"curve": curve.name, "D": name or curve.covers or ""}, trace)


def check_uniruled_pair(c1: TestCurve, c2: TestCurve, D1: DivisorClass, D2: DivisorClass, K: DivisorClass,
                        names: tuple = (None, None)) -> Certificate:
    """Two covering curves whose pairings rule out K being pseudo-effective."""
    _covers(c1, names[0])
    _covers(c2, names[1])
    p = {
        "c1.D1": _num(c1, D1, "c1.D1"), "c1.D2": _num(c1, D2, "c1.D2"),
        "c2.D1": _num(c2, D1, "c2.D1"), "c2.D2": _num(c2, D2, "c2.D2"),
        "c1.K": _num(c1, K, "c1.K"), "c2.K": _num(c2, K, "c2.K"),
    }
    p["det1"] = p["c1.D1"] * p["c2.D2"] - p["c1.D2"] * p["c2.D1"]
    p["det2"] = p["c1.K"] * p["c2.D1"] - p["c1.D1"] * p["c2.K"]
    order = ("c1.D1", "c1.D2", "c2.D1", "c2.D2", "c1.K", "c2.K", "det1", "det2")
    inputs = {"c1": c1.name, "c2": c2.name, "D1": names[0] or c1.covers or "", "D2": names[1] or c2.covers or ""}
    return Certificate(UNIRULED_PAIR, inputs, tuple((k, p[k]) for k in order))


# -- Reid-Tai ----------------------------------------------------------------------------


def reid_tai_age(exponents) -> Fraction:
    total = Fraction(0)
    for r in exponents:
        r = Fraction(r)
        if not 0 <= r < 1:
            raise RangeViolation(f"exponent {r} outside [0, 1)")
        total += r
    return total


def reid_tai_pass(elements) -> bool:
    """Every element other than the identity and quasi-reflections has age >= 1."""
    for ex in elements:
        age = reid_tai_age(ex)
        nonzero = sum(1 for r in ex if Fraction(r))
        if nonzero >= 2 and age < 1:
            return False
    return True
