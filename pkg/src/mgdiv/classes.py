"""Exact affine-linear coefficients and divisor classes over a space's basis."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import NonAffine, NonNumericScalar, NotAsserted, SpaceMismatch
from .spaces import BasisElement, SpaceId, enumerate_basis, sort_key


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Coefficient):
        return x.value
    raise TypeError(f"cannot use {x!r} as an exact rational")


class Coefficient:
    """``const + sum(k_p * p)`` for named parameters p, all exact rationals.

    Coefficients are immutable and hashable.  Products are allowed only when at
    least one factor is numeric, which keeps every value affine.
    """

    __slots__ = ("const", "terms", "_hash")

    def __init__(self, const=0, terms: Mapping[str, object] | Iterable | None = None):
        self.const = frac(const)
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        clean = {}
        for name, k in items:
            k = frac(k)
            if k:
                clean[name] = clean.get(name, 0) + k
        self.terms = tuple(sorted((p, k) for p, k in clean.items() if k))
        self._hash = None

    @classmethod
    def param(cls, name: str, k=1) -> "Coefficient":
        return cls(0, {name: k})

    @staticmethod
    def of(x) -> "Coefficient":
        if isinstance(x, Coefficient):
            return x
        c = Coefficient.__new__(Coefficient)
        c.const = frac(x)
        c.terms = ()
        c._hash = None
        return c

    @property
    def is_numeric(self) -> bool:
        return not self.terms

    @property
    def value(self) -> Fraction:
        if self.terms:
            raise NonNumericScalar(f"{self} depends on parameters {self.params}")
        return self.const

    @property
    def params(self) -> tuple:
        return tuple(p for p, _ in self.terms)

    def coeff_of(self, name: str) -> Fraction:
        return dict(self.terms).get(name, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.const) or bool(self.terms)

    def _combine(self, other, sign: int) -> "Coefficient":
        if not isinstance(other, Coefficient):
            other = Coefficient.of(other)
        if not self.terms and not other.terms:
            return Coefficient.of(self.const + sign * other.const)
        d = dict(self.terms)
        for p, k in other.terms:
            d[p] = d.get(p, 0) + sign * k
        return Coefficient(self.const + sign * other.const, d)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return Coefficient.of(other)._combine(self, -1)

    def __neg__(self):
        return Coefficient(-self.const, {p: -k for p, k in self.terms})

    def __mul__(self, other):
        if not isinstance(other, Coefficient):
            other = Coefficient.of(other)
        if self.terms and other.terms:
            raise NonAffine(f"({self})*({other}) is not affine in the parameters")
        if other.terms:
            self, other = other, self
        t = other.const
        if not self.terms:
            return Coefficient.of(self.const * t)
        return Coefficient(self.const * t, {p: k * t for p, k in self.terms})

    __rmul__ = __mul__

    def __truediv__(self, other):
        t = Coefficient.of(other).value
        return self * (1 / t)

    def __eq__(self, other):
        if not isinstance(other, Coefficient):
            try:
                other = Coefficient.of(other)
            except TypeError:
                return NotImplemented
        return self.const == other.const and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.const, self.terms))
        return self._hash

    def __lt__(self, other):
        return self.value < Coefficient.of(other).value

    def __le__(self, other):
        return self.value <= Coefficient.of(other).value

    def __gt__(self, other):
        return self.value > Coefficient.of(other).value

    def __ge__(self, other):
        return self.value >= Coefficient.of(other).value

    def substitute(self, bindings: Mapping[str, object]) -> "Coefficient":
        if not self.terms:
            return self
        const = self.const
        rest = {}
        for p, k in self.terms:
            if p in bindings:
                const += k * frac(bindings[p])
            else:
                rest[p] = k
        return Coefficient(const, rest)

    def __str__(self):
        parts = []
        for p, k in self.terms:
            if k == 1:
                parts.append(p)
            elif k == -1:
                parts.append(f"-{p}")
            else:
                parts.append(f"{k}*{p}")
        if self.const or not parts:
            parts.append(str(self.const))
        out = parts[0]
        for s in parts[1:]:
            out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
        return out

    def __repr__(self):
        return f"Coefficient({self})"

    def to_json(self) -> dict:
        return {"const": str(self.const), "params": {p: str(k) for p, k in self.terms}}

    @classmethod
    def from_json(cls, data: Mapping) -> "Coefficient":
        return cls(data.get("const", "0"), data.get("params", {}))


ZERO = Coefficient.of(0)


def _accumulate(acc: dict, e, coeff) -> None:
    old = acc.get(e)
    if old is None:
        if coeff:
            acc[e] = coeff if isinstance(coeff, Coefficient) else Coefficient.of(coeff)
        return
    new = old + coeff
    if new:
        acc[e] = new
    else:
        del acc[e]


class DivisorClass:
    """A finitely supported assignment basis element -> Coefficient on one space.

    A class may be *partial*: ``mask`` is then the frozenset of basis elements
    on which the coefficients are asserted.  Outside the mask nothing is claimed,
    so :meth:`coefficient_of` raises :class:`NotAsserted` there.
    """

    __slots__ = ("space", "entries", "mask", "_hash")

    def __init__(self, space: SpaceId, entries: Mapping | Iterable = (), mask: Iterable | None = None,
                 *, check: bool = True):
        self.space = space
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict = {}
        for e, k in items:
            if check and not space.contains(e):
                raise SpaceMismatch(f"{e!r} is not a canonical generator of {space}")
            _accumulate(clean, e, Coefficient.of(k))
        self.mask = None if mask is None else frozenset(mask)
        if check and self.mask is not None:
            for e in self.mask:
                if not space.contains(e):
                    raise SpaceMismatch(f"mask element {e!r} is not a generator of {space}")
            stray = [e for e in clean if e not in self.mask]
            if stray:
                raise NotAsserted(f"entries outside the asserted support: {stray[:4]}")
        self.entries = clean
        self._hash = None

    @classmethod
    def _raw(cls, space: SpaceId, entries: dict, mask) -> "DivisorClass":
        """Trusted constructor: ``entries`` maps canonical elements to nonzero Coefficients."""
        self = cls.__new__(cls)
        self.space = space
        self.entries = entries
        self.mask = mask
        self._hash = None
        return self

    @classmethod
    def zero(cls, space: SpaceId) -> "DivisorClass":
        return cls(space)

    @classmethod
    def gen(cls, space: SpaceId, e: BasisElement, k=1) -> "DivisorClass":
        return cls(space, {e: k})

    @property
    def is_partial(self) -> bool:
        return self.mask is not None

    @property
    def is_numeric(self) -> bool:
        return all(k.is_numeric for k in self.entries.values())

    @property
    def params(self) -> tuple:
        return tuple(sorted({p for k in self.entries.values() for p in k.params}))

    def asserted(self, e: BasisElement) -> bool:
        return self.mask is None or e in self.mask

    def support(self) -> list:
        return sorted(self.entries, key=sort_key)

    def items(self):
        return ((e, self.entries[e]) for e in self.support())

    def coefficient_of(self, e: BasisElement) -> Coefficient:
        if not self.space.contains(e):
            raise SpaceMismatch(f"{e!r} is not a generator of {self.space}")
        if not self.asserted(e):
            raise NotAsserted(f"{e.token(self.space)} is outside the asserted support")
        return self.entries.get(e, ZERO)

    __getitem__ = coefficient_of

    def _check_space(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected a DivisorClass, got {type(other).__name__}")
        if other.space != self.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_space(other)
        acc = dict(self.entries)
        for e, k in other.entries.items():
            _accumulate(acc, e, k)
        return DivisorClass._raw(self.space, acc, _meet(self.mask, other.mask))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + other.scale(-1)

    def __neg__(self) -> "DivisorClass":
        return self.scale(-1)

    def scale(self, t) -> "DivisorClass":
        t = Coefficient.of(t)
        if not t.is_numeric:
            raise NonNumericScalar(f"scalar {t} is not numeric")
        if not t:
            return DivisorClass(self.space, (), self.mask, check=False)
        return DivisorClass._raw(self.space, {e: k * t for e, k in self.entries.items()}, self.mask)

    def __mul__(self, t):
        return self.scale(t)

    __rmul__ = __mul__

    def __truediv__(self, t):
        return self.scale(1 / Coefficient.of(t).value)

    def substitute(self, bindings: Mapping[str, object]) -> "DivisorClass":
        return DivisorClass(self.space, {e: k.substitute(bindings) for e, k in self.entries.items()},
                            self.mask, check=False)

    def restrict(self, support: Iterable) -> "DivisorClass":
        """The partial class asserting only ``support`` (which must already be asserted)."""
        support = frozenset(support)
        for e in support:
            if not self.asserted(e):
                raise NotAsserted(f"{e.token(self.space)} is outside the asserted support")
        return DivisorClass(self.space, {e: k for e, k in self.entries.items() if e in support}, support)

    def full(self) -> "DivisorClass":
        """Drop the mask, declaring every unlisted coefficient zero."""
        return DivisorClass(self.space, self.entries, None, check=False)

    def agrees_on(self, other: "DivisorClass", support: Iterable) -> bool:
        self._check_space(other)
        return all(self.coefficient_of(e) == other.coefficient_of(e) for e in support)

    def mismatches(self, other: "DivisorClass") -> list:
        """Basis elements, asserted in both, where the coefficients differ."""
        self._check_space(other)
        keys = set(self.entries) | set(other.entries)
        return sorted((e for e in keys if self.asserted(e) and other.asserted(e)
                       and self.entries.get(e, ZERO) != other.entries.get(e, ZERO)), key=sort_key)

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.space == other.space and self.mask == other.mask and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, self.mask, frozenset(self.entries.items())))
        return self._hash

    def __bool__(self):
        return bool(self.entries)

    def __str__(self):
        return format_class(self)

    def __repr__(self):
        tail = " (partial)" if self.is_partial else ""
        return f"<DivisorClass on {self.space}: {format_class(self)}{tail}>"

    def to_json(self) -> dict:
        out = {
            "space": self.space.to_json(),
            "entries": [{"gen": e.token(self.space), **k.to_json()} for e, k in self.items()],
        }
        if self.mask is not None:
            out["mask"] = [e.token(self.space) for e in sorted(self.mask, key=sort_key)]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "DivisorClass":
        from .expr import parse_generator

        space = SpaceId.from_json(data["space"])
        entries = [(parse_generator(row["gen"], space), Coefficient.from_json(row)) for row in data["entries"]]
        mask = data.get("mask")
        if mask is not None:
            mask = [parse_generator(t, space) for t in mask]
        return cls(space, entries, mask)


def _meet(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a & b


def add(a: DivisorClass, b: DivisorClass) -> DivisorClass:
    return a + b


def scale(t, a: DivisorClass) -> DivisorClass:
    return a.scale(t)


def coefficient_of(a: DivisorClass, e: BasisElement) -> Coefficient:
    return a.coefficient_of(e)


def substitute_params(a: DivisorClass, bindings: Mapping[str, object]) -> DivisorClass:
    return a.substitute(bindings)


def equals(a: DivisorClass, b: DivisorClass) -> bool:
    """Coefficient-wise equality over the whole (finite) basis of the common space."""
    if a.space != b.space:
        return False
    return all(a.coefficient_of(e) == b.coefficient_of(e) for e in enumerate_basis(a.space))


def _fmt_terms(k: Coefficient, token: str):
    pieces = [(c, f"{p}*") for p, c in k.terms]
    if k.const:
        pieces.append((k.const, ""))
    for c, p in pieces:
        sign = "-" if c < 0 else "+"
        c = abs(c)
        lead = "" if c == 1 else f"{c}*"
        yield sign, f"{lead}{p}{token}"


def format_class(a: DivisorClass) -> str:
    """Render in the text grammar understood by :func:`mgdiv.expr.parse_class`."""
    out = ""
    for e, k in a.items():
        for sign, body in _fmt_terms(k, e.token(a.space)):
            if not out:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
    return out or "0"
