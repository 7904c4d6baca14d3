"""Pullbacks and pushforwards between the Picard groups of the supported spaces.

Every map here is linear on generators.  Partial classes keep their status: an
element of the target is asserted exactly when no unasserted source generator
reaches it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .classes import DivisorClass, _accumulate
from .errors import InsufficientSupport, LabelCollision, SpaceMismatch, UnknownPairing
from .spaces import (
    BASE,
    DELTA_IRR,
    LAMBDA,
    POINTED,
    SYMMETRIC,
    BoundaryPointed,
    DeltaIrr,
    Lambda,
    Psi,
    PsiSym,
    SpaceId,
    boundary_elements,
    canonicalize,
    enumerate_basis,
    sym_image,
)

ONE = Fraction(1)


@dataclass(frozen=True)
class MapId:
    """Names one of the supported morphisms; ``source``/``target`` follow from the variant."""

    variant: str
    genus: int
    n: int = 0
    kept: tuple = ()
    symmetric_target: bool = False

    @property
    def source(self) -> SpaceId:
        if self.variant == "sym_quotient":
            return SpaceId.pointed(self.genus, self.n)
        if self.variant == "forget_all":
            return (SpaceId.symmetric if self.symmetric_target else SpaceId.pointed)(self.genus, self.n)
        if self.variant == "forget_to_subset":
            return SpaceId.pointed(self.genus, self.n)
        if self.variant == "elliptic_tail":
            return SpaceId.pointed(self.genus, 1)
        raise ValueError(f"unknown map variant {self.variant!r}")

    @property
    def target(self) -> SpaceId:
        if self.variant == "sym_quotient":
            return SpaceId.symmetric(self.genus, self.n)
        if self.variant == "forget_all":
            return SpaceId.base(self.genus)
        if self.variant == "forget_to_subset":
            return SpaceId.pointed(self.genus, len(self.kept))
        if self.variant == "elliptic_tail":
            return SpaceId.base(self.genus + 1)
        raise ValueError(f"unknown map variant {self.variant!r}")


def _apply(a: DivisorClass, target: SpaceId, image) -> DivisorClass:
    acc: dict = {}
    for e, k in a.entries.items():
        for f, m in image(e):
            _accumulate(acc, f, k if m == 1 else k * m)
    mask = None
    if a.mask is not None:
        blocked = set()
        for e in enumerate_basis(a.space):
            if e not in a.mask:
                blocked.update(f for f, _ in image(e))
        mask = frozenset(f for f in enumerate_basis(target) if f not in blocked)
    return DivisorClass._raw(target, acc, mask)


def _require(a: DivisorClass, kind: str, what: str) -> None:
    if a.space.kind != kind:
        raise SpaceMismatch(f"{what} expects a class on a {kind} space, got {a.space}")


@lru_cache(maxsize=64)
def _pointed_by_sym(space: SpaceId) -> dict:
    groups: dict = {}
    for e in boundary_elements(space):
        groups.setdefault(sym_image(e), []).append(e)
    return {k: tuple(v) for k, v in groups.items()}


@lru_cache(maxsize=64)
def _boundary_by_genus(space: SpaceId) -> dict:
    groups: dict = {}
    for e in boundary_elements(space):
        groups.setdefault(e.i, []).append(e)
    return {k: tuple(v) for k, v in groups.items()}


@lru_cache(maxsize=64)
def _psi_sym_image(space: SpaceId) -> tuple:
    out = [(Psi(i), ONE) for i in range(1, space.markings + 1)]
    for e in _boundary_by_genus(space).get(0, ()):
        out.append((e, Fraction(-len(e.T))))
    return tuple(out)


def sym_pullback(a: DivisorClass) -> DivisorClass:
    """Pull back along the quotient of the pointed space by permutations of the points."""
    _require(a, SYMMETRIC, "sym_pullback")
    target = SpaceId.pointed(a.space.genus, a.space.markings)
    groups = _pointed_by_sym(target)

    def image(e):
        if isinstance(e, (Lambda, DeltaIrr)):
            return ((e, ONE),)
        if isinstance(e, PsiSym):
            return _psi_sym_image(target)
        return tuple((f, ONE) for f in groups.get(e, ()))

    return _apply(a, target, image)


def forget_all_pullback(a: DivisorClass, target: SpaceId) -> DivisorClass:
    """Pull back from the unpointed space along the map forgetting every marking."""
    _require(a, BASE, "forget_all_pullback")
    if target.kind == BASE or target.genus != a.space.genus:
        raise SpaceMismatch(f"cannot pull {a.space} back to {target}")
    groups = _boundary_by_genus(target)

    def image(e):
        if isinstance(e, (Lambda, DeltaIrr)):
            return ((e, ONE),)
        return tuple((f, ONE) for f in groups.get(e.i, ()))

    return _apply(a, target, image)


def _subsets(labels: tuple):
    for r in range(len(labels) + 1):
        yield from combinations(labels, r)


def forget_to_subset_pullback(a: DivisorClass, kept, n: int) -> DivisorClass:
    """Pull back along the map on n-pointed curves that keeps only the labels ``kept``.

    Source label j is carried by target label ``kept[j-1]``; the forgotten labels
    are the rest of 1..n.
    """
    _require(a, POINTED, "forget_to_subset_pullback")
    kept = tuple(kept)
    if len(set(kept)) != len(kept):
        raise LabelCollision(f"kept labels {kept} are not distinct")
    if len(kept) != a.space.markings:
        raise SpaceMismatch(f"{len(kept)} kept labels for a class on {a.space}")
    if any(not 1 <= x <= n for x in kept):
        raise LabelCollision(f"kept labels {kept} outside 1..{n}")
    g = a.space.genus
    target = SpaceId.pointed(g, n)
    forgotten = tuple(x for x in range(1, n + 1) if x not in kept)
    extra = tuple(_subsets(forgotten))

    def image(e):
        if isinstance(e, (Lambda, DeltaIrr)):
            return ((e, ONE),)
        if isinstance(e, Psi):
            a_ = kept[e.i - 1]
            out = [(Psi(a_), ONE)]
            out.extend((canonicalize(target, 0, (a_,) + S), -ONE) for S in extra if S)
            return out
        T = tuple(kept[x - 1] for x in e.T)
        return [(canonicalize(target, e.i, T + S), ONE) for S in extra]

    return _apply(a, target, image)


def elliptic_tail_pullback(a: DivisorClass) -> DivisorClass:
    """Pull back along C -> C with a fixed elliptic tail glued at the marked point.

    The reducible boundary divisor of index i >= 2 meets the image in the loci
    where the genus-(i-1) side carries the point or the genus-(g-i) side does; the
    two coincide when g - i = i - 1 and then count once.
    """
    _require(a, BASE, "elliptic_tail_pullback")
    g = a.space.genus - 1
    if g < 2:
        raise SpaceMismatch("the elliptic tail map needs source genus at least 2")
    target = SpaceId.pointed(g, 1)

    def image(e):
        if isinstance(e, (Lambda, DeltaIrr)):
            return ((e, ONE),)
        i = e.i
        if i == 1:
            return ((Psi(1), -ONE), (canonicalize(target, g - 1, (1,)), ONE))
        terms = {canonicalize(target, g - i, (1,)), canonicalize(target, i - 1, (1,))}
        return tuple((f, ONE) for f in terms)

    return _apply(a, target, image)


def node_to_cusp_pushforward(a: DivisorClass) -> DivisorClass:
    """Push a class on the 2-pointed space, cut with delta_{0:{1,2}}, down to one point.

    Only the lambda, psi and delta_irr coefficients of the image are determined:
    lambda and delta_irr carry over, psi picks up minus the delta_{0:{1,2}}
    coefficient.  The result is partial on exactly those three generators.
    """
    _require(a, POINTED, "node_to_cusp_pushforward")
    if a.space.markings != 2:
        raise SpaceMismatch(f"node_to_cusp_pushforward expects a 2-pointed space, got {a.space}")
    d012 = BoundaryPointed(0, (1, 2))
    for e in (LAMBDA, DELTA_IRR, d012):
        if not a.asserted(e):
            raise InsufficientSupport(f"{e.token(a.space)} is not asserted")
    target = SpaceId.pointed(a.space.genus, 1)
    entries = {
        LAMBDA: a.coefficient_of(LAMBDA),
        DELTA_IRR: a.coefficient_of(DELTA_IRR),
        Psi(1): -a.coefficient_of(d012),
    }
    return DivisorClass(target, entries, (LAMBDA, DELTA_IRR, Psi(1)), check=False)


def curve_pushforward_sym(curve, weight=1, name: str | None = None):
    """Push a test curve to the symmetric quotient by the projection formula."""
    from .curves import TestCurve

    if curve.space.kind != POINTED:
        raise SpaceMismatch(f"curve_pushforward_sym expects a curve on a pointed space, got {curve.space}")
    weight = Fraction(weight)
    target = SpaceId.symmetric(curve.space.genus, curve.space.markings)
    pairing = {}
    for x in enumerate_basis(target):
        pulled = sym_pullback(DivisorClass(target, {x: 1}, check=False))
        total = Fraction(0)
        for e, k in pulled.entries.items():
            if e in curve.unknown:
                raise UnknownPairing(e, f"curve {curve.name} has unknown pairing with "
                                        f"{e.token(curve.space)}, needed for {x.token(target)}")
            v = curve.pairing.get(e)
            if v:
                total += v * k.value
        if total:
            pairing[x] = weight * total
    return TestCurve(name or f"pushforward({curve.name})", target, pairing,
                     covers=curve.covers, through_general_point=curve.through_general_point)

