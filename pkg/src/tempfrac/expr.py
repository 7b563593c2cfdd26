r"""Expression language for functions of ``t``.

Grammar (whitespace is ignored)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := unary ('^' literal)*          # right-associative: t^2^3 = t^(2^3)
    unary   := '-'? atom
    atom    := number | 't' | call | '(' expr ')'
    call    := 'exp' '(' expr ')'
             | 'pow' '(' expr ',' literal ')'
             | 'ml3' '(' literal ',' literal ',' literal ',' literal ')'
    literal := ('+' | '-')? number | '(' ('+' | '-')? real ('+' | '-') imag ')'
    number  := real | imag
    real    := digits ['.' digits] [('e' | 'E') ('+' | '-')? digits]
    imag    := real? 'i'

Exponents are literals, never expressions in ``t``.  ``ml3(mu, nu, g, w)``
is the kernel :math:`t^{\nu-1}E^{g}_{\mu,\nu}(w\,t^\mu)`.

Note that the unary minus binds tighter than ``^``, so ``-t^2`` is
``(-t)^2``; write ``-(t^2)`` for the other reading.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import EvalError, ParseError
from .functions import FunctionHandle, Interval, Regularity
from .specfun import mittag_leffler3

# {{{ syntax tree


@dataclass(frozen=True)
class Num:
    value: complex


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    """``base ^ e1 ^ e2 ...``; the chain is kept so printing reproduces it."""

    base: object
    exps: tuple[complex, ...]

    @property
    def exponent(self) -> complex:
        e = self.exps[-1]
        for x in reversed(self.exps[:-1]):
            e = x**e
        return e


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple

    ARITY = {"exp": 1, "pow": 2, "ml3": 4}


# }}}


# {{{ lexer

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, name, op, end
    text: str
    offset: int  # byte offset


def _tokenize(text: str) -> list[_Tok]:
    text = text.replace("−", "-")
    out = []
    pos = 0
    byte = 0
    n = len(text)
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            skipped = len(text[pos:]) - len(text[pos:].lstrip())
            start = pos + skipped
            off = byte + len(text[pos:start].encode())
            if start >= n:
                out.append(_Tok("end", "", off))
                return out
            raise ParseError(f"unexpected character {text[start]!r}", off,
                             ("number", "t", "function name", "operator", "'('", "')'"))
        kind = m.lastgroup
        tok = m.group(kind)
        start = m.start(kind)
        off = byte + len(text[pos:start].encode())
        out.append(_Tok(kind, tok, off))
        byte = off + len(tok.encode())
        pos = m.end()


def _number(tok: _Tok) -> complex:
    text = tok.text
    x = (float(text[:-1]) if len(text) > 1 else 1.0) if text.endswith("i") else float(text)
    if not np.isfinite(x):
        raise ParseError(f"number {text} overflows", tok.offset, ("finite number",))
    return complex(0.0, x) if text.endswith("i") else complex(x, 0.0)


# }}}


# {{{ parser


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _fail(self, expected, what=None):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(what or f"unexpected {found}", t.offset, tuple(expected))

    def _accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def _expect(self, text: str) -> None:
        if not self._accept(text):
            self._fail([f"'{text}'"])

    def parse(self):
        e = self.expr()
        if self.tok.kind != "end":
            self._fail(["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"])
        return e

    def expr(self):
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            e = BinOp(op, e, self.term())
        return e

    def term(self):
        e = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            e = BinOp(op, e, self.factor())
        return e

    def factor(self):
        base = self.unary()
        exps = []
        while self._accept("^"):
            exps.append(self.literal())
        return Pow(base, tuple(exps)) if exps else base

    def unary(self):
        if self._accept("-"):
            return Neg(self.atom(signed=True))
        return self.atom()

    def atom(self, signed: bool = False):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Num(_number(t))
        if t.kind == "name":
            if t.text == "t":
                self.i += 1
                return Var()
            if t.text == "i":
                self.i += 1
                return Num(1j)
            if t.text in Call.ARITY:
                return self.call()
            raise ParseError(f"unknown name {t.text!r}", t.offset, ("t", "exp", "pow", "ml3"))
        if self._accept("("):
            e = self.expr()
            self._expect(")")
            return e
        self._fail(["number", "'t'", "'exp'", "'pow'", "'ml3'", "'('"] + ([] if signed else ["'-'"]))

    def call(self):
        name = self.tok.text
        self.i += 1
        self._expect("(")
        if name == "exp":
            args = (self.expr(),)
        elif name == "pow":
            base = self.expr()
            self._expect(",")
            args = (base, self.literal())
        else:
            args = [self.literal()]
            for _ in range(3):
                self._expect(",")
                args.append(self.literal())
            args = tuple(args)
        self._expect(")")
        return Call(name, args)

    def _signed_number(self, expected) -> complex:
        sign = 1.0
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = -1.0 if self.tok.text == "-" else 1.0
            self.i += 1
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return sign * _number(t)
        if t.kind == "name" and t.text == "i":
            self.i += 1
            return sign * 1j
        self._fail(expected)

    def literal(self) -> complex:
        """Signed number, or a parenthesised complex constant ``(re +/- im i)``."""
        if self._accept("("):
            re_part = self._signed_number(["number"])
            if self.tok.kind == "op" and self.tok.text in "+-":
                im_part = self._signed_number(["imaginary number"])
                if im_part.real != 0:
                    raise ParseError("complex literal needs an imaginary second part",
                                     self.toks[self.i - 1].offset, ("imaginary number",))
                value = re_part + im_part
            else:
                value = re_part
            self._expect(")")
            return value
        return self._signed_number(["number", "'-'", "'('"])


def parse(text: str):
    """Parse ``text`` into a syntax tree; raises :class:`ParseError`."""
    if not isinstance(text, str):
        raise TypeError("expression must be a string")
    return _Parser(text).parse()


# }}}


# {{{ printing


def _fmt_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def format_literal(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return _fmt_real(z.real)
    if z.real == 0:
        return _fmt_real(z.imag) + "i"
    im = _fmt_real(abs(z.imag)) + "i"
    return f"({_fmt_real(z.real)} {'-' if z.imag < 0 else '+'} {im})"


def _fmt_number(z: complex) -> str:
    # atoms are non-negative; a negative value is printed as a negation
    s = format_literal(z)
    return f"({s})" if s.startswith("-") else s


_LEVEL = {"+": 0, "-": 0, "*": 1, "/": 1}


def _level(e) -> int:
    if isinstance(e, BinOp):
        return _LEVEL[e.op]
    if isinstance(e, (Pow, Neg)):
        return 2
    return 3


def _wrap(e, min_level: int) -> str:
    s = to_text(e)
    return f"({s})" if _level(e) < min_level else s


def to_text(e) -> str:
    """Canonical text of a tree; ``parse(to_text(e))`` rebuilds ``e``."""
    if isinstance(e, Num):
        return _fmt_number(e.value)
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, 3)
    if isinstance(e, BinOp):
        lvl = _LEVEL[e.op]
        return f"{_wrap(e.left, lvl)} {e.op} {_wrap(e.right, lvl + 1)}"
    if isinstance(e, Pow):
        base = to_text(e.base) if isinstance(e.base, Neg) else _wrap(e.base, 3)
        return base + "".join("^" + format_literal(x) for x in e.exps)
    if isinstance(e, Call):
        if e.name == "exp":
            return f"exp({to_text(e.args[0])})"
        if e.name == "pow":
            return f"pow({to_text(e.args[0])}, {format_literal(e.args[1])})"
        return "ml3(" + ", ".join(format_literal(x) for x in e.args) + ")"
    raise TypeError(f"not an expression node: {e!r}")


# }}}


# {{{ evaluation


def _as_real(z: complex):
    return z.real if z.imag == 0 else z


def _power(base, p: complex):
    p = _as_real(p)
    if isinstance(p, float) and p.is_integer() and not np.iscomplexobj(base):
        return np.power(np.asarray(base, dtype=float), p)
    if not np.iscomplexobj(base) and not isinstance(p, complex):
        with np.errstate(invalid="ignore"):
            out = np.power(np.asarray(base, dtype=float), p)
        if np.any(np.asarray(base) < 0):
            raise EvalError(f"negative base raised to the non-integer power {p:g}")
        return out
    return np.power(np.asarray(base, dtype=complex), p)


def _eval(e, x):
    if isinstance(e, Num):
        v = _as_real(e.value)
        return np.full(np.shape(x), v, dtype=complex if isinstance(v, complex) else np.result_type(x, float))
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        return -_eval(e.arg, x)
    if isinstance(e, BinOp):
        left, right = _eval(e.left, x), _eval(e.right, x)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        if np.any(right == 0):
            raise EvalError("division by zero")
        return left / right
    if isinstance(e, Pow):
        return _power(_eval(e.base, x), e.exponent)
    if e.name == "exp":
        return np.exp(_eval(e.args[0], x))
    if e.name == "pow":
        return _power(_eval(e.args[0], x), e.args[1])
    mu, nu, g, w = e.args
    return _power(x, nu - 1) * mittag_leffler3(mu, nu, g, w * _power(x, mu))


def evaluate(e, x):
    """Evaluate a tree on an array; non-finite results raise :class:`EvalError`."""
    x = np.asarray(x)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        out = np.asarray(_eval(e, x))
    if not np.all(np.isfinite(out)):
        raise EvalError(f"{to_text(e)} is not finite at some evaluation point")
    return np.broadcast_to(out, x.shape)


def _left_order(e, a: float) -> float | None:
    """Exponent k with f ~ c (t - a)^k near ``a``, when it is easy to read off."""
    if isinstance(e, Num):
        return 0.0 if e.value != 0 else None
    if isinstance(e, Var):
        return 1.0 if a == 0 else 0.0
    if isinstance(e, Neg):
        return _left_order(e.arg, a)
    if isinstance(e, BinOp):
        if e.op == "-" and isinstance(e.left, Var) and isinstance(e.right, Num) and e.right.value == a:
            return 1.0
        lo, ro = _left_order(e.left, a), _left_order(e.right, a)
        if lo is None or ro is None:
            return None
        if e.op in "+-":
            return min(lo, ro)
        return lo + ro if e.op == "*" else lo - ro
    if isinstance(e, Pow):
        bo, p = _left_order(e.base, a), e.exponent
        return None if bo is None or p.imag != 0 else bo * p.real
    if e.name == "exp":
        return 0.0
    if e.name == "pow":
        bo, p = _left_order(e.args[0], a), complex(e.args[1])
        return None if bo is None or p.imag != 0 else bo * p.real
    return (complex(e.args[1]).real - 1.0) if a == 0 else 0.0


def compile(e, domain: Interval | None = None, regularity: Regularity | None = None,
            label: str | None = None) -> FunctionHandle:
    """Turn a tree (or expression text) into a :class:`FunctionHandle`.

    Evaluation errors surface when the handle is called, not here.
    """
    if isinstance(e, str):
        e = parse(e)
    domain = domain or Interval(0.0, np.inf)
    k = _left_order(e, domain.a) if np.isfinite(domain.a) else None
    singular = k is not None and not (k >= 0 and float(k).is_integer())
    return FunctionHandle(
        evaluator=lambda x: evaluate(e, x),
        domain=domain,
        regularity=regularity or Regularity.smooth(),
        left_exponent=k if singular else None,
        label=label or to_text(e),
    )


# }}}
