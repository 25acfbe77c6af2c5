"""Text format for Young functions and integrands.

Grammar (whitespace and ``#`` comments are ignored)::

    fn        := "catalog(" name ("," number)* ")"
               | "splice(" ["base=" fn ","] segment ("," segment)* ")"
               | "normalized(" fn ")" | "scaled(" fn "," number ")"
               | "sum(" number "," fn ("," number "," fn)* ")"
               | "max(" fn ("," fn)* ")"
    segment   := "[(" number "," number "):" kind "(" number "," number "," number ")]"
    integrand := "zero" ["(2)"] | "cauchy(" number ["," "half"] ")"
               | "gauss_quad(" number ")" | "indicator(" number "," number ["," number] ")"
               | "separable(" integrand "," integrand ")"
               | "sum(" number "," integrand ("," number "," integrand)* ")"

Numbers accept ``inf``.  Every object renders back through its ``spec()``
method, and parsing a rendering reproduces the object exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InvalidYoungFunction, OrliczError, SpecParseError
from .integrands import CauchyPower, FiniteSum, GaussQuad, Indicator, Integrand, Separable, Zero
from .young import Combination, Scaled, Segment, Splice, YoungFunction, catalog, validate

__all__ = ["parse_spec", "parse_young", "parse_integrand", "render"]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<num>[-+]?(?:inf|(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?))
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\],:=])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


@dataclass
class _Call:
    name: str
    args: list
    pos: int
    bare: bool = False  # written without parentheses


@dataclass
class _Seg:
    lo: float
    hi: float
    kind: str
    coeffs: list
    pos: int


@dataclass
class _Kw:
    key: str
    value: object
    pos: int


def _tokenize(text):
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            out.append(_Tok(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, pos=None):
        return SpecParseError(msg, self.text, self.tok.pos if pos is None else pos)

    def expect(self, text):
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        self.i += 1

    def number(self):
        if self.tok.kind != "num":
            raise self.error(f"expected a number, found {self.tok.text or 'end of input'!r}")
        val = float(self.tok.text)
        self.i += 1
        return val

    def top(self):
        node = self.value()
        if self.tok.kind != "end":
            raise self.error(f"trailing input {self.tok.text!r}")
        return node

    def value(self):
        tok = self.tok
        if tok.kind == "num":
            return self.number()
        if tok.text == "[":
            return self.segment()
        if tok.kind != "name":
            raise self.error(f"unexpected {tok.text or 'end of input'!r}")
        self.i += 1
        if self.tok.text == "=":
            self.i += 1
            return _Kw(tok.text, self.value(), tok.pos)
        if self.tok.text != "(":
            return _Call(tok.text, [], tok.pos, bare=True)
        self.i += 1
        args = []
        if self.tok.text != ")":
            args.append(self.value())
            while self.tok.text == ",":
                self.i += 1
                args.append(self.value())
        self.expect(")")
        return _Call(tok.text, args, tok.pos)

    def segment(self):
        pos = self.tok.pos
        self.expect("[")
        self.expect("(")
        lo = self.number()
        self.expect(",")
        hi = self.number()
        self.expect(")")
        self.expect(":")
        if self.tok.kind != "name":
            raise self.error("expected a segment kind")
        kind = self.tok.text
        self.i += 1
        self.expect("(")
        coeffs = [self.number()]
        while self.tok.text == ",":
            self.i += 1
            coeffs.append(self.number())
        self.expect(")")
        self.expect("]")
        return _Seg(lo, hi, kind, coeffs, pos)


class _Builder:
    def __init__(self, text):
        self.text = text

    def error(self, msg, pos):
        return SpecParseError(msg, self.text, pos)

    def build(self, node):
        if not isinstance(node, _Call):
            raise self.error("expected a function or integrand", getattr(node, "pos", 0))
        handler = getattr(self, "_" + node.name.lower(), None)
        if handler is None:
            raise self.error(f"unknown constructor {node.name!r}", node.pos)
        try:
            return handler(node)
        except SpecParseError:
            raise
        except OrliczError as exc:
            raise self.error(str(exc), node.pos) from None

    def _numbers(self, node, args):
        if not all(isinstance(a, float) for a in args):
            raise self.error(f"{node.name} takes numbers only", node.pos)
        return args

    def _objects(self, node, args):
        return [self.build(a) for a in args]

    # -- Young functions ---------------------------------------------------

    def _catalog(self, node):
        if not node.args or not isinstance(node.args[0], _Call) or not node.args[0].bare:
            raise self.error("catalog needs a form name first", node.pos)
        return catalog(node.args[0].name, *self._numbers(node, node.args[1:]))

    def _splice(self, node):
        base, segs = None, []
        for a in node.args:
            if isinstance(a, _Kw) and a.key == "base":
                if segs or base is not None:
                    raise self.error("base= must come first and only once", a.pos)
                base = self.build(a.value)
                if not isinstance(base, YoungFunction):
                    raise self.error("base must be a Young function", a.pos)
            elif isinstance(a, _Seg):
                if len(a.coeffs) != 3:
                    raise self.error(f"segment {a.kind} needs 3 coefficients", a.pos)
                if segs and not (segs[-1].hi == a.lo < a.hi):
                    raise self.error(f"malformed knot ordering: ({a.lo!r}, {a.hi!r}] after ({segs[-1].lo!r}, {segs[-1].hi!r}]", a.pos)
                segs.append(Segment(a.lo, a.hi, a.kind, tuple(a.coeffs)))
            else:
                raise self.error("splice arguments are segments", getattr(a, "pos", node.pos))
        return Splice(segs, base=base)

    def _normalized(self, node):
        if len(node.args) != 1:
            raise self.error("normalized takes one function", node.pos)
        return Scaled(self._young(node.args[0]))

    def _scaled(self, node):
        if len(node.args) != 2 or not isinstance(node.args[1], float):
            raise self.error("scaled takes a function and a factor", node.pos)
        return Scaled(self._young(node.args[0]), node.args[1])

    def _max(self, node):
        parts = [self._young(a) for a in node.args]
        if len(parts) < 2:
            raise self.error("max needs at least two functions", node.pos)
        return Combination(parts, "max")

    def _sum(self, node):
        args = node.args
        if not args or len(args) % 2:
            raise self.error("sum takes weight, object pairs", node.pos)
        weights = self._numbers(node, args[0::2])
        objs = self._objects(node, args[1::2])
        if all(isinstance(o, YoungFunction) for o in objs):
            return Combination(objs, "sum", weights)
        if all(isinstance(o, Integrand) for o in objs):
            return FiniteSum(list(zip(weights, objs)))
        raise self.error("sum mixes Young functions and integrands", node.pos)

    def _young(self, node):
        obj = self.build(node)
        if not isinstance(obj, YoungFunction):
            raise self.error("expected a Young function", node.pos)
        return obj

    # -- integrands ----------------------------------------------------------

    def _zero(self, node):
        dims = self._numbers(node, node.args)
        return Zero(int(dims[0]) if dims else 1)

    def _cauchy(self, node):
        args = node.args
        half = bool(args) and isinstance(args[-1], _Call) and args[-1].bare and args[-1].name == "half"
        nums = self._numbers(node, args[:-1] if half else args)
        if len(nums) != 1:
            raise self.error("cauchy takes one exponent", node.pos)
        return CauchyPower(nums[0], half=half)

    def _gauss_quad(self, node):
        nums = self._numbers(node, node.args)
        if len(nums) != 1:
            raise self.error("gauss_quad takes one index", node.pos)
        return GaussQuad(nums[0])

    def _indicator(self, node):
        nums = self._numbers(node, node.args)
        if len(nums) not in (2, 3):
            raise self.error("indicator takes measure, height and an optional offset", node.pos)
        return Indicator(*nums)

    def _separable(self, node):
        objs = self._objects(node, node.args)
        if len(objs) != 2 or not all(isinstance(o, Integrand) for o in objs):
            raise self.error("separable takes two integrands", node.pos)
        return Separable(*objs)


def parse_spec(text, check=True):
    """Parse a Young function or an integrand.

    Young functions are validated on the default grid unless ``check`` is
    false; failures raise InvalidYoungFunction listing the violated axioms.
    """
    obj = _Builder(text).build(_Parser(text).top())
    if check and isinstance(obj, YoungFunction):
        rep = validate(obj)
        if not rep.valid:
            bad = rep.convexity + rep.monotonicity + rep.knots
            kinds = sorted({v.kind for v in bad})
            raise InvalidYoungFunction(f"{obj.spec()} violates: {', '.join(kinds)} (first at t={bad[0].t:.6g})", rep)
    return obj


def parse_young(text, check=True):
    obj = parse_spec(text, check)
    if not isinstance(obj, YoungFunction):
        raise SpecParseError("expected a Young function", text, 0)
    return obj


def parse_integrand(text):
    obj = parse_spec(text, check=False)
    if not isinstance(obj, Integrand):
        raise SpecParseError("expected an integrand", text, 0)
    return obj


def render(obj):
    return obj.spec()
