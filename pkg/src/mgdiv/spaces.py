"""Moduli space identifiers and the standard generators of their rational Picard groups.

Three families of spaces are supported:

* ``base``       -- the moduli space of stable curves of genus g,
* ``pointed``    -- stable n-pointed curves of genus g,
* ``symmetric``  -- the quotient of the pointed space by permutations of the points.

Basis elements are small frozen dataclasses that do not carry their space; a
:class:`~mgdiv.classes.DivisorClass` knows its space and validates membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Union

from .errors import ForbiddenBoundary, IndexOutOfRange

BASE = "base"
POINTED = "pointed"
SYMMETRIC = "symmetric"
KINDS = (BASE, POINTED, SYMMETRIC)


@dataclass(frozen=True, slots=True)
class Lambda:
    def token(self, space: "SpaceId") -> str:
        return "Lt" if space.kind == SYMMETRIC else "L"


@dataclass(frozen=True, slots=True)
class DeltaIrr:
    def token(self, space: "SpaceId") -> str:
        return "dt_irr" if space.kind == SYMMETRIC else "d_irr"


@dataclass(frozen=True, slots=True)
class DeltaBase:
    """Reducible boundary divisor on the unpointed space, 1 <= i <= g/2."""

    i: int

    def token(self, space: "SpaceId") -> str:
        return f"d[{self.i}]"


@dataclass(frozen=True, slots=True)
class Psi:
    i: int

    def token(self, space: "SpaceId") -> str:
        return f"psi[{self.i}]"


@dataclass(frozen=True, slots=True)
class PsiSym:
    def token(self, space: "SpaceId") -> str:
        return "psit"


@dataclass(frozen=True, slots=True)
class BoundaryPointed:
    """delta_{i:T}: a genus-i component carrying exactly the labels in T (sorted tuple)."""

    i: int
    T: tuple

    def token(self, space: "SpaceId") -> str:
        return f"d[{self.i}:{{{','.join(map(str, self.T))}}}]"


@dataclass(frozen=True, slots=True)
class BoundarySym:
    """Symmetrised boundary divisor: genus-i component carrying c of the points."""

    i: int
    c: int

    def token(self, space: "SpaceId") -> str:
        return f"dt[{self.i}:{self.c}]"


BasisElement = Union[Lambda, DeltaIrr, DeltaBase, Psi, PsiSym, BoundaryPointed, BoundarySym]

LAMBDA = Lambda()
DELTA_IRR = DeltaIrr()
PSI_SYM = PsiSym()


def sort_key(e: BasisElement) -> tuple:
    """Deterministic basis order: lambda, psi block, delta_irr, boundary block."""
    if isinstance(e, Lambda):
        return (0,)
    if isinstance(e, Psi):
        return (1, e.i)
    if isinstance(e, PsiSym):
        return (1, 0)
    if isinstance(e, DeltaIrr):
        return (2,)
    if isinstance(e, DeltaBase):
        return (3, e.i)
    if isinstance(e, BoundaryPointed):
        return (3, e.i, len(e.T), e.T)
    if isinstance(e, BoundarySym):
        return (3, e.i, e.c)
    raise TypeError(f"not a basis element: {e!r}")


def is_boundary(e: BasisElement) -> bool:
    return isinstance(e, (DeltaBase, BoundaryPointed, BoundarySym))


@dataclass(frozen=True, slots=True)
class SpaceId:
    kind: str
    genus: int
    markings: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.genus < 2:
            raise ValueError(f"genus must be at least 2, got {self.genus}")
        if self.kind == BASE and self.markings != 0:
            raise ValueError("base spaces carry no markings")
        if self.kind != BASE and self.markings < 1:
            raise ValueError(f"{self.kind} spaces need at least one marking")

    @classmethod
    def base(cls, g: int) -> "SpaceId":
        return cls(BASE, g, 0)

    @classmethod
    def pointed(cls, g: int, n: int) -> "SpaceId":
        return cls(POINTED, g, n)

    @classmethod
    def symmetric(cls, g: int, n: int) -> "SpaceId":
        return cls(SYMMETRIC, g, n)

    @property
    def g(self) -> int:
        return self.genus

    @property
    def n(self) -> int:
        return self.markings

    @property
    def labels(self) -> tuple:
        return tuple(range(1, self.markings + 1))

    def __str__(self) -> str:
        if self.kind == BASE:
            return f"Mbar_{self.genus}"
        if self.kind == POINTED:
            return f"Mbar_{self.genus},{self.markings}"
        return f"Cbar_{self.genus},{self.markings}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "genus": self.genus, "markings": self.markings}

    @classmethod
    def from_json(cls, data: dict) -> "SpaceId":
        return cls(data["kind"], int(data["genus"]), int(data.get("markings", 0)))

    # -- generator helpers -------------------------------------------------

    def psi(self, i: int | None = None) -> BasisElement:
        if self.kind == SYMMETRIC:
            if i is not None:
                raise IndexOutOfRange("the symmetric space has a single psi class")
            return PSI_SYM
        if self.kind != POINTED or i is None or not 1 <= i <= self.markings:
            raise IndexOutOfRange(f"psi[{i}] does not exist on {self}")
        return Psi(i)

    def delta(self, i: int, T: Iterable[int] | int | None = None) -> BasisElement:
        return canonicalize(self, i, T)

    def contains(self, e: BasisElement) -> bool:
        return _contains(self, e)

    def basis(self) -> tuple:
        return enumerate_basis(self)


def _orientations_pointed(space: SpaceId, i: int, T: tuple):
    comp = tuple(x for x in range(1, space.markings + 1) if x not in T)
    return (i, T), (space.genus - i, comp)


def _pointed_pref(pair):
    i, T = pair
    return (len(T), T)


def canonicalize(space: SpaceId, i: int, T: Iterable[int] | int | None = None) -> BasisElement:
    """Return the canonical boundary generator named by the raw pair (i, T).

    ``T`` is a label set on pointed spaces, a cardinality on symmetric spaces and
    is omitted on base spaces.  The boundary divisor with a genus-i side carrying T
    is the same as the one with a genus-(g-i) side carrying the complement; the
    representative with the smaller genus wins, ties broken by the smaller label
    set (cardinality first, then lexicographic).
    """
    g = space.genus
    if not 0 <= i <= g:
        raise IndexOutOfRange(f"boundary genus index {i} outside 0..{g}")
    if space.kind == BASE:
        if T not in (None, (), frozenset(), set()):
            raise IndexOutOfRange("base boundary divisors take no labels")
        j = min(i, g - i)
        if j == 0:
            raise ForbiddenBoundary(f"no reducible boundary divisor with index {i} on {space}")
        return DeltaBase(j)
    if space.kind == SYMMETRIC:
        if not isinstance(T, int):
            raise IndexOutOfRange("symmetric boundary divisors are indexed by a cardinality")
        c, n = T, space.markings
        if not 0 <= c <= n:
            raise IndexOutOfRange(f"cardinality {c} outside 0..{n}")
        cands = [(i, c), (g - i, n - c)]
        cands.sort(key=lambda p: (p[0], p[1]))
        j, cc = cands[0]
        if j == 0 and cc < 2:
            raise ForbiddenBoundary(f"dt[{j}:{cc}] is not a stable boundary stratum")
        return BoundarySym(j, cc)
    if T is None or isinstance(T, int):
        raise IndexOutOfRange("pointed boundary divisors are indexed by a label set")
    Tt = tuple(sorted(set(T)))
    if Tt and (Tt[0] < 1 or Tt[-1] > space.markings):
        raise IndexOutOfRange(f"labels {Tt} outside 1..{space.markings}")
    a, b = _orientations_pointed(space, i, Tt)
    if a[0] != b[0]:
        j, S = a if a[0] < b[0] else b
    else:
        j, S = min(a, b, key=_pointed_pref)
    if j == 0 and len(S) < 2:
        raise ForbiddenBoundary(f"d[0:{{{','.join(map(str, S))}}}] is not a stable boundary stratum")
    return BoundaryPointed(j, S)


def _contains(space: SpaceId, e: BasisElement) -> bool:
    if isinstance(e, (Lambda, DeltaIrr)):
        return True
    k = space.kind
    if isinstance(e, DeltaBase):
        return k == BASE and 1 <= e.i <= space.genus // 2
    if isinstance(e, Psi):
        return k == POINTED and 1 <= e.i <= space.markings
    if isinstance(e, PsiSym):
        return k == SYMMETRIC
    if isinstance(e, BoundaryPointed):
        if k != POINTED or not 0 <= e.i <= space.genus:
            return False
        if any(not 1 <= x <= space.markings for x in e.T) or tuple(sorted(set(e.T))) != e.T:
            return False
        try:
            return canonicalize(space, e.i, e.T) == e
        except (ForbiddenBoundary, IndexOutOfRange):
            return False
    if isinstance(e, BoundarySym):
        if k != SYMMETRIC or not 0 <= e.i <= space.genus:
            return False
        try:
            return canonicalize(space, e.i, e.c) == e
        except (ForbiddenBoundary, IndexOutOfRange):
            return False
    return False


@lru_cache(maxsize=256)
def enumerate_basis(space: SpaceId) -> tuple:
    """All canonical generators of the space, in :func:`sort_key` order."""
    g, n = space.genus, space.markings
    out: list = [LAMBDA]
    if space.kind == POINTED:
        out.extend(Psi(i) for i in range(1, n + 1))
    elif space.kind == SYMMETRIC:
        out.append(PSI_SYM)
    out.append(DELTA_IRR)
    if space.kind == BASE:
        out.extend(DeltaBase(i) for i in range(1, g // 2 + 1))
    elif space.kind == SYMMETRIC:
        for i in range(0, g // 2 + 1):
            for c in range(0, n + 1):
                if i == 0 and c < 2:
                    continue
                if 2 * i == g and c > n - c:
                    continue
                out.append(BoundarySym(i, c))
    else:
        labels = range(1, n + 1)
        for i in range(0, g // 2 + 1):
            for size in range(0, n + 1):
                if i == 0 and size < 2:
                    continue
                if 2 * i == g and size > n - size:
                    continue
                for T in combinations(labels, size):
                    if 2 * i == g and size == n - size:
                        comp = tuple(x for x in labels if x not in T)
                        if comp < T:
                            continue
                    out.append(BoundaryPointed(i, T))
    return tuple(out)


def boundary_elements(space: SpaceId) -> tuple:
    return tuple(e for e in enumerate_basis(space) if is_boundary(e))


def sym_image(e: BoundaryPointed) -> BoundarySym:
    """The symmetrised boundary generator whose pullback contains ``e``."""
    return BoundarySym(e.i, len(e.T))
