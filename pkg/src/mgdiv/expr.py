"""Text grammar for divisor classes.

::

    class  := term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := rational | param | gen | name ['[' args ']']
            | 'phi*(' class ')' | 'pi*(' class ')' | '(' class ')'
    gen    := 'L' | 'Lt' | 'd_irr' | 'dt_irr' | 'psi[' int ']' | 'psit'
            | 'd[' int ':' '{' int-list '}' ']' | 'd[' int ']' | 'dt[' int ':' int ']'

Names are looked up in :mod:`mgdiv.registry` (``K``, ``bn[11]``, ``K3class10``, ...).
Any other identifier is a parameter, so ``7*L - b5*d[5]`` is affine in ``b5``.
``phi*(...)`` pulls a class on the unpointed space back to the context space and
``pi*(...)`` pulls a class back from the symmetric quotient.
"""

from __future__ import annotations

import re
from typing import Mapping

from .classes import Coefficient, DivisorClass
from .errors import MgdivError, ParseError
from .spaces import (
    BASE,
    DELTA_IRR,
    LAMBDA,
    POINTED,
    PSI_SYM,
    SYMMETRIC,
    BasisElement,
    SpaceId,
    canonicalize,
)

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/()\[\]{}:,]))")

GENERATOR_NAMES = {"L", "Lt", "d_irr", "dt_irr", "psi", "psit", "d", "dt"}


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, space: SpaceId | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.space = space

    # -- token helpers ----------------------------------------------------

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, value: str):
        t = self.next()
        if t[1] != value or t[0] == "end":
            self.error(f"expected {value!r}, found {t[1] or 'end of input'!r}", t)
        return t

    def is_op(self, value: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t[0] == "op" and t[1] == value

    def integer(self) -> int:
        sign = 1
        if self.is_op("-"):
            self.next()
            sign = -1
        t = self.next()
        if t[0] != "num":
            self.error("expected an integer", t)
        return sign * int(t[1])

    # -- grammar ----------------------------------------------------------

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return val

    def expr(self):
        sign = 1
        if self.is_op("+") or self.is_op("-"):
            sign = -1 if self.next()[1] == "-" else 1
        total = self._scaled(self.term(), sign)
        while self.is_op("+") or self.is_op("-"):
            op = self.next()
            sign = -1 if op[1] == "-" else 1
            total = self._add(total, self._scaled(self.term(), sign), op)
        return total

    @staticmethod
    def _scaled(v, sign):
        return v if sign == 1 else (v.scale(-1) if isinstance(v, DivisorClass) else -v)

    def _add(self, a, b, tok):
        if isinstance(a, DivisorClass) != isinstance(b, DivisorClass):
            self.error("cannot add a bare coefficient to a divisor class", tok)
        try:
            return a + b
        except MgdivError as exc:
            self.error(str(exc), tok)

    def _starts_factor(self) -> bool:
        t = self.peek()
        return t[0] in ("num", "ident") or (t[0] == "op" and t[1] == "(")

    def term(self):
        tok = self.peek()
        val = self.factor()
        while True:
            if self.is_op("*"):
                self.next()
            elif not self._starts_factor():
                break
            tok = self.peek()
            val = self._mul(val, self.factor(), tok)
        return val

    def _mul(self, a, b, tok):
        if isinstance(a, DivisorClass) and isinstance(b, DivisorClass):
            self.error("product of two divisor classes", tok)
        try:
            if isinstance(b, DivisorClass):
                return b.scale(a) if a.is_numeric else _param_scale(b, a)
            if isinstance(a, DivisorClass):
                return a.scale(b) if b.is_numeric else _param_scale(a, b)
            return a * b
        except MgdivError as exc:
            self.error(str(exc), tok)

    def factor(self):
        t = self.peek()
        if t[0] == "num":
            self.next()
            num = int(t[1])
            if self.is_op("/"):
                self.next()
                den = self.next()
                if den[0] != "num" or int(den[1]) == 0:
                    self.error("expected a nonzero denominator", den)
                return Coefficient.of(num) / int(den[1])
            return Coefficient.of(num)
        if t[0] == "op" and t[1] == "(":
            self.next()
            val = self.expr()
            self.expect(")")
            return val
        if t[0] != "ident":
            self.error(f"unexpected {t[1] or 'end of input'!r}", t)
        name = t[1]
        if name in ("phi", "pi") and self.is_op("*", 1) and self.is_op("(", 2):
            self.next()
            self.next()
            self.next()
            return self.pullback(name, t)
        if name in GENERATOR_NAMES:
            return self.generator()
        self.next()
        if self.is_op("["):
            args = self.args()
            return self.named(name, args, t)
        if self.is_op("*") and self.peek(1)[0] == "end":
            self.error("dangling '*'", self.peek())
        from . import registry

        if registry.is_class_name(name):
            return self.named(name, [], t)
        return Coefficient.param(name)

    def args(self) -> list:
        self.expect("[")
        out = []
        if self.is_op("]"):
            self.next()
            return out
        while True:
            if self.is_op("{"):
                out.append(self.label_set())
            else:
                out.append(self.integer())
            if self.is_op(","):
                self.next()
                continue
            self.expect("]")
            return out

    def label_set(self) -> tuple:
        self.expect("{")
        labels = []
        if not self.is_op("}"):
            while True:
                labels.append(self.integer())
                if self.is_op(","):
                    self.next()
                    continue
                break
        self.expect("}")
        return tuple(labels)

    def need_space(self, tok) -> SpaceId:
        if self.space is None:
            self.error("no ambient space: pass --g/--n/--sym or use a named class", tok)
        return self.space

    def generator(self):
        tok = self.next()
        space = self.need_space(tok)
        try:
            e = _generator(self, tok[1], space)
        except MgdivError as exc:
            if isinstance(exc, ParseError):
                raise
            self.error(str(exc), tok)
        return DivisorClass(space, {e: 1})

    def named(self, name, args, tok):
        from . import registry

        try:
            return registry.resolve(name, args, self.space)
        except MgdivError as exc:
            self.error(str(exc), tok)
        except KeyError:
            self.error(f"unknown class name {name!r}", tok)

    def pullback(self, which, tok):
        from . import maps

        target = self.need_space(tok)
        saved = self.space
        if which == "phi":
            if target.kind == BASE:
                self.error("phi* needs a pointed or symmetric ambient space", tok)
            self.space = SpaceId.base(target.genus)
        else:
            if target.kind != POINTED:
                self.error("pi* needs a pointed ambient space", tok)
            self.space = SpaceId.symmetric(target.genus, target.markings)
        inner = self.expr()
        self.expect(")")
        self.space = saved
        if not isinstance(inner, DivisorClass):
            self.error("cannot pull back a bare coefficient", tok)
        try:
            if which == "phi":
                return maps.forget_all_pullback(inner, target)
            return maps.sym_pullback(inner)
        except MgdivError as exc:
            self.error(str(exc), tok)


def _param_scale(cls: DivisorClass, k: Coefficient) -> DivisorClass:
    return DivisorClass(cls.space, {e: v * k for e, v in cls.entries.items()}, cls.mask, check=False)


def _generator(p: _Parser, name: str, space: SpaceId) -> BasisElement:
    sym = space.kind == SYMMETRIC
    if name in ("L", "Lt"):
        if (name == "Lt") != sym:
            raise ParseError(f"{name} is not a generator of {space}", p.text, p.toks[p.i - 1][2])
        return LAMBDA
    if name in ("d_irr", "dt_irr"):
        if (name == "dt_irr") != sym:
            raise ParseError(f"{name} is not a generator of {space}", p.text, p.toks[p.i - 1][2])
        return DELTA_IRR
    if name == "psit":
        if not sym:
            raise ParseError(f"psit is not a generator of {space}", p.text, p.toks[p.i - 1][2])
        return PSI_SYM
    p.expect("[")
    first = p.integer()
    if name == "psi":
        p.expect("]")
        if space.kind != POINTED:
            raise ParseError(f"psi[{first}] is not a generator of {space}", p.text, p.toks[p.i - 1][2])
        return space.psi(first)
    if name == "dt":
        if not sym:
            raise ParseError(f"dt[...] is not a generator of {space}", p.text, p.toks[p.i - 1][2])
        p.expect(":")
        c = p.integer()
        p.expect("]")
        return canonicalize(space, first, c)
    # name == "d"
    if p.is_op("]"):
        p.next()
        if space.kind != BASE:
            raise ParseError(f"d[{first}] needs a label set on {space}", p.text, p.toks[p.i - 1][2])
        return DELTA_IRR if first == 0 else canonicalize(space, first)
    p.expect(":")
    T = p.label_set()
    p.expect("]")
    if space.kind != POINTED:
        raise ParseError(f"d[i:T] is not a generator of {space}", p.text, p.toks[p.i - 1][2])
    return canonicalize(space, first, T)


def parse_class(text: str, space: SpaceId | None = None, bindings: Mapping[str, object] | None = None):
    """Parse ``text`` into a :class:`DivisorClass` on ``space``."""
    val = _Parser(text, space).parse()
    if not isinstance(val, DivisorClass):
        if not val:
            if space is None:
                raise ParseError("a bare zero needs an ambient space", text, 0)
            return DivisorClass(space)
        raise ParseError("expression has no divisor generator", text, 0)
    if bindings:
        val = val.substitute(bindings)
    return val


def parse_generator(token: str, space: SpaceId) -> BasisElement:
    """Parse a single generator token (as emitted by ``element.token(space)``)."""
    p = _Parser(token, space)
    t = p.next()
    if t[0] != "ident" or t[1] not in GENERATOR_NAMES:
        p.error(f"not a generator token: {token!r}", t)
    e = _generator(p, t[1], space)
    if p.peek()[0] != "end":
        p.error(f"trailing input in generator token {token!r}")
    return e


def parse_call(text: str) -> tuple:
    """Split ``name[arg, {1,2}, ...]`` into ``(name, [args])``."""
    p = _Parser(text, None)
    t = p.next()
    if t[0] != "ident":
        p.error("expected a name", t)
    args = p.args() if p.is_op("[") else []
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return t[1], args


def parse_bindings(items) -> dict:
    """``["b5=6", "c=1/2"]`` -> ``{"b5": Fraction(6), "c": Fraction(1, 2)}``."""
    from fractions import Fraction

    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ParseError(f"binding {item!r} is not of the form name=value", item, 0)
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"binding value {value!r} is not a rational", item, len(name) + 1) from None
    return out
