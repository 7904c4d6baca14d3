"""Named divisor classes and constants, built from closed forms at any valid (g, n)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .classes import Coefficient, DivisorClass
from .errors import GenusCongruence, RangeViolation, SpaceMismatch
from .spaces import (
    BASE,
    DELTA_IRR,
    LAMBDA,
    POINTED,
    PSI_SYM,
    BoundaryPointed,
    DeltaBase,
    Psi,
    SpaceId,
    boundary_elements,
    canonicalize,
)

# declared lower bounds for symbolic coefficients; slope() evaluates at these
PARAM_LOWER_BOUNDS = {"b5": Fraction(6)}


@dataclass(frozen=True)
class NamedClass:
    name: str
    cls: DivisorClass
    location: str
    description: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "location": self.location, "description": self.description,
                "class": self.cls.to_json()}


@dataclass(frozen=True)
class FanoDatum:
    g: int
    n_g: int
    N_g: int
    description: str

    def __post_init__(self):
        if self.N_g != self.g + self.n_g - 2:
            raise ValueError("N_g must equal g + n_g - 2")

    def to_json(self) -> dict:
        return {"g": self.g, "n_g": self.n_g, "N_g": self.N_g, "description": self.description}


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise RangeViolation(msg)


# -- canonical classes ----------------------------------------------------------


@lru_cache(maxsize=128)
def canonical_class(space: SpaceId) -> DivisorClass:
    """Canonical class of the base, pointed or symmetric space."""
    acc: dict = {LAMBDA: 13, DELTA_IRR: -2}
    if space.kind == BASE:
        for e in boundary_elements(space):
            acc[e] = -2
        acc[DeltaBase(1)] = -3
    elif space.kind == POINTED:
        for i in range(1, space.markings + 1):
            acc[Psi(i)] = 1
        for e in boundary_elements(space):
            acc[e] = -2
        d10 = canonicalize(space, 1, ())
        acc[d10] -= 1
    else:
        acc[PSI_SYM] = 1
        for e in boundary_elements(space):
            if e.i == 0:
                acc[e] = -1 if e.c == 2 else e.c - 2
            else:
                acc[e] = -2
        acc[canonicalize(space, 1, 0)] = -3
    return DivisorClass(space, acc, check=False)


# -- pencil divisors -------------------------------------------------------------


@lru_cache(maxsize=128)
def logan_class(g: int) -> DivisorClass:
    """Class of the locus of g-pointed curves whose points move in a pencil."""
    _need(g >= 3, f"logan_class needs g >= 3, got {g}")
    space = SpaceId.pointed(g, g)
    acc: dict = {LAMBDA: -1}
    for i in range(1, g + 1):
        acc[Psi(i)] = 1
    for e in boundary_elements(space):
        acc[e] = -comb(abs(len(e.T) - e.i) + 1, 2)
    return DivisorClass(space, acc, check=False)


@lru_cache(maxsize=128)
def aj_exceptional_class(g: int) -> DivisorClass:
    """The Abel-Jacobi exceptional divisor on the universal symmetric product."""
    _need(g >= 3, f"aj_exceptional_class needs g >= 3, got {g}")
    space = SpaceId.symmetric(g, g)
    acc: dict = {LAMBDA: -1, PSI_SYM: 1}
    for e in boundary_elements(space):
        acc[e] = -comb(e.c, 2) if e.i == 0 else -comb(abs(e.c - e.i) + 1, 2)
    return DivisorClass(space, acc, check=False)


# -- classes on the unpointed space ------------------------------------------------


def _base_class(g: int, lam, d0, ds) -> DivisorClass:
    space = SpaceId.base(g)
    acc = {LAMBDA: lam, DELTA_IRR: -Coefficient.of(d0)}
    for i, b in enumerate(ds, start=1):
        acc[DeltaBase(i)] = -Coefficient.of(b)
    return DivisorClass(space, acc)


@lru_cache(maxsize=128)
def brill_noether_class(g: int) -> DivisorClass:
    """The class every Brill-Noether divisor on the unpointed space is proportional to."""
    _need(g >= 3, f"brill_noether_class needs g >= 3, got {g}")
    return _base_class(g, g + 3, Fraction(g + 1, 6), [i * (g - i) for i in range(1, g // 2 + 1)])


def bn11() -> DivisorClass:
    return _base_class(11, 7, 1, [5, 9, 12, 14, 15])


def k3_class_g10() -> DivisorClass:
    """Divisor of genus-10 curves on K3 surfaces; the last coefficient is the symbol b5 >= 6."""
    return _base_class(10, 7, 1, [5, 9, 12, 14, Coefficient.param("b5")])


def gonal7_class() -> DivisorClass:
    return _base_class(7, 15, 2, [9, 15, 18])


def bn8_double() -> DivisorClass:
    return _base_class(8, 22, 3, [14, 24, 30, 32])


# -- node and cusp loci -------------------------------------------------------------


def c_g_constant(g: int) -> Fraction:
    if g % 3 != 1 or g < 4:
        raise GenusCongruence(f"c_g needs g = 1 mod 3 and g >= 4, got {g}")
    d = (2 * g + 7) // 3
    num = 24 * factorial(g - 2)
    return Fraction(num, factorial(g - d + 5) * factorial(g - d + 3) * factorial(g - d + 1))


@lru_cache(maxsize=128)
def node_class_partial(g: int) -> DivisorClass:
    """Locus of 2-pointed curves whose points map to a node of a plane model; partial."""
    c = c_g_constant(g)
    space = SpaceId.pointed(g, 2)
    d012 = BoundaryPointed(0, (1, 2))
    k = Fraction(g + 2, 6)
    entries = {LAMBDA: c * (g + 4), Psi(1): c * k, Psi(2): c * k, DELTA_IRR: -c * k, d012: -c * g}
    return DivisorClass(space, entries, entries.keys())


@lru_cache(maxsize=128)
def cusp_class(g: int) -> DivisorClass:
    c = c_g_constant(g)
    space = SpaceId.pointed(g, 1)
    acc: dict = {LAMBDA: c * (g + 4), Psi(1): c * g, DELTA_IRR: -c * Fraction(g + 2, 6)}
    for i in range(1, g):
        acc[canonicalize(space, i, (1,))] = -c * (i + 1) * (g - i)
    return DivisorClass(space, acc)


@lru_cache(maxsize=128)
def d1_class_partial(n: int) -> DivisorClass:
    """Genus-7 divisor of points x1, x2 collapsing to a node; asserted on the displayed terms.

    Besides the displayed coefficients, the psi classes of the remaining points
    are asserted to vanish.
    """
    _need(n >= 2, f"d1_class_partial needs n >= 2, got {n}")
    space = SpaceId.pointed(7, n)
    entries: dict = {LAMBDA: 44, Psi(1): 6, Psi(2): 6, DELTA_IRR: -6, BoundaryPointed(0, (1, 2)): -28}
    mask = set(entries) | {Psi(j) for j in range(3, n + 1)}
    for j in range(3, n + 1):
        for a in (1, 2):
            e = BoundaryPointed(0, (a, j))
            entries[e] = -6
            mask.add(e)
    return DivisorClass(space, entries, mask)


# -- static data -------------------------------------------------------------------

FANO_TABLE = {
    6: FanoDatum(6, 5, 9, "quadric section of G(2,5)"),
    7: FanoDatum(7, 10, 15, "spinor variety OG(5,10)"),
    8: FanoDatum(8, 8, 14, "Grassmannian G(2,6)"),
    9: FanoDatum(9, 6, 13, "symplectic Grassmannian SG(3,6)"),
}


def mukai_fano_data(g: int) -> FanoDatum:
    try:
        return FANO_TABLE[g]
    except KeyError:
        raise RangeViolation(f"Fano data exists only for g = 6..9, got {g}") from None


# -- lookup by name ------------------------------------------------------------------


@dataclass(frozen=True)
class _Entry:
    build: Callable
    arity: int  # number of integer arguments
    location: str
    description: str
    default: Callable | None = None  # derive the argument from a context space


def _genus_of(space):
    return None if space is None else space.genus


def _markings_of(space):
    return None if space is None or space.kind != POINTED else space.markings


ENTRIES = {
    "K": _Entry(canonical_class, 0, "canonical class", "canonical class of the ambient space"),
    "logan": _Entry(logan_class, 1, "pencil divisor", "g-pointed curves whose points move in a pencil",
                    _genus_of),
    "aj_exceptional": _Entry(aj_exceptional_class, 1, "pencil divisor (symmetric)",
                             "exceptional divisor of the Abel-Jacobi map", _genus_of),
    "bn": _Entry(brill_noether_class, 1, "Brill-Noether class", "(g+3)L - (g+1)/6 d_irr - sum i(g-i) d[i]",
                 _genus_of),
    "bn11": _Entry(bn11, 0, "Brill-Noether class, g = 11", "half of bn[11]"),
    "K3class10": _Entry(k3_class_g10, 0, "K3 divisor, g = 10", "curves on K3 surfaces; b5 >= 6"),
    "gonal7": _Entry(gonal7_class, 0, "4-gonal divisor, g = 7", "rational multiple of the 4-gonal locus"),
    "bn8_double": _Entry(bn8_double, 0, "Brill-Noether class, g = 8", "twice the Brill-Noether class"),
    "node": _Entry(node_class_partial, 1, "node divisor (partial)", "points over a node of a plane model",
                   _genus_of),
    "cusp": _Entry(cusp_class, 1, "cusp divisor", "point at a cusp of a plane model", _genus_of),
    "D1": _Entry(d1_class_partial, 1, "genus-7 node pullback (partial)", "pullback of node[7] keeping 1, 2",
                 _markings_of),
}
ALIASES = {"Dbar": "logan", "Dt": "aj_exceptional", "K10": "K3class10"}


def is_class_name(name: str) -> bool:
    return name in ENTRIES or name in ALIASES


def names() -> list:
    return sorted(ENTRIES)


def resolve(name: str, args=(), space: SpaceId | None = None) -> DivisorClass:
    """Build the named class; missing genus or marking arguments come from ``space``."""
    name = ALIASES.get(name, name)
    entry = ENTRIES[name]
    args = list(args)
    if name == "K":
        if args:
            raise RangeViolation("K takes no arguments; it uses the ambient space")
        if space is None:
            raise SpaceMismatch("K needs an ambient space")
        return canonical_class(space)
    if not args and entry.arity and entry.default is not None:
        d = entry.default(space)
        if d is not None:
            args = [d]
    if len(args) != entry.arity or any(not isinstance(a, int) for a in args):
        raise RangeViolation(f"{name} takes {entry.arity} integer argument(s), got {args}")
    cls = entry.build(*args)
    if space is not None and cls.space != space:
        raise SpaceMismatch(f"{name} lives on {cls.space}, not on the ambient {space}")
    return cls


def lookup(name: str, args=(), space: SpaceId | None = None) -> NamedClass:
    key = ALIASES.get(name, name)
    if key not in ENTRIES:
        raise KeyError(f"unknown class {name!r}; known: {', '.join(names())}")
    entry = ENTRIES[key]
    cls = resolve(key, args, space)
    label = key + (f"[{','.join(map(str, args))}]" if args else "")
    return NamedClass(label, cls, entry.location, entry.description)


def listing() -> list:
    return [{"name": k, "arguments": ENTRIES[k].arity, "location": ENTRIES[k].location,
             "description": ENTRIES[k].description} for k in names()]

