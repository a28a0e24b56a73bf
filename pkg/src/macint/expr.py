"""Elementary-function expressions in the single free variable ``x``.

Grammar, lowest to highest precedence::

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := number | 'x' | 'pi' | 'e' | 'euler_gamma'
            | ident '(' expr ')' | '(' expr ')'

``^`` is right-associative and binds tighter than unary minus, so ``-x^2``
is ``-(x^2)`` and ``2^3^2`` is ``2^(3^2)``.  Implicit multiplication is not
accepted.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import ParseError, UnknownIdentifierError

FUNCTIONS = ("sin", "cos", "tan", "exp", "ln", "sqrt", "gamma")
NAMED_CONSTANTS = ("pi", "e", "euler_gamma")


class Expr:
    """Base class of all expression nodes.  Nodes are immutable."""

    __slots__ = ()

    def __str__(self):
        return format_expr(self)


@dataclass(frozen=True)
class Constant(Expr):
    value: Union[int, float]


@dataclass(frozen=True)
class NamedConstant(Expr):
    name: str

    def __post_init__(self):
        if self.name not in NAMED_CONSTANTS:
            raise ValueError(f"unknown named constant {self.name!r}")


@dataclass(frozen=True)
class Variable(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: Expr


@dataclass(frozen=True)
class Call(Expr):
    fn: str
    arg: Expr

    def __post_init__(self):
        if self.fn not in FUNCTIONS:
            raise ValueError(f"unsupported function {self.fn!r}")


X = Variable()

_BINARY = {"+": Add, "-": Sub, "*": Mul, "/": Div}


# --------------------------------------------------------------------------
# Tokenizer and parser
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)

_ATOM_START = frozenset({"number", "x", "pi", "e", "euler_gamma", "function", "(", "-"})
_AFTER_OPERAND = frozenset({"+", "-", "*", "/", "^"})


@dataclass(frozen=True)
class _Token:
    kind: str  # 'number', 'ident', an operator character, or 'end'
    text: str
    offset: int  # byte offset into the UTF-8 encoding


def _tokenize(text):
    tokens = []
    pos = 0
    byte_pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", byte_pos, _ATOM_START)
        lexeme = m.group()
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(lexeme if kind == "op" else kind, lexeme, byte_pos))
        pos = m.end()
        byte_pos += len(lexeme.encode("utf-8"))
    tokens.append(_Token("end", "", byte_pos))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        tok = self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"unexpected {found}", tok.offset, expected)

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            self.fail(_AFTER_OPERAND | {"end of input"})
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            node = _BINARY[op](node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind in ("*", "/"):
            op = self.advance().kind
            node = _BINARY[op](node, self.unary())
        return node

    def unary(self):
        if self.tok.kind == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind != "^":
            return base
        self.advance()
        exponent = self.unary()
        if isinstance(exponent, Constant) and float(exponent.value).is_integer():
            exponent = Constant(int(exponent.value))
        return Pow(base, exponent)

    def atom(self):
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            return Constant(_number(tok))
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            if self.tok.kind != ")":
                self.fail(_AFTER_OPERAND | {")"})
            self.advance()
            return node
        if tok.kind == "ident":
            name = tok.text
            if name == "x":
                self.advance()
                return X
            if name in NAMED_CONSTANTS:
                self.advance()
                return NamedConstant(name)
            if name in FUNCTIONS:
                self.advance()
                if self.tok.kind != "(":
                    self.fail({"("})
                self.advance()
                arg = self.expr()
                if self.tok.kind != ")":
                    self.fail(_AFTER_OPERAND | {")"})
                self.advance()
                return Call(name, arg)
            raise UnknownIdentifierError(
                f"unknown identifier {name!r}", tok.offset,
                {"x", *NAMED_CONSTANTS, *FUNCTIONS},
            )
        self.fail(_ATOM_START)


def _number(tok):
    text = tok.text
    if text.isdigit():
        return int(text)
    value = float(text)
    if not math.isfinite(value):
        raise ParseError(f"numeric literal {text!r} overflows", tok.offset)
    return value


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree.

    Raises :class:`ParseError` (with byte offset and expected-token set) on
    malformed input and :class:`UnknownIdentifierError` on names outside the
    supported vocabulary.
    """
    return _Parser(text).parse()


def as_expr(f) -> Expr:
    """Accept either an :class:`Expr` or expression text."""
    return parse(f) if isinstance(f, str) else f


# --------------------------------------------------------------------------
# Evaluation
# --------------------------------------------------------------------------

def _euler_gamma():
    from .oracle import euler_gamma_const
    return euler_gamma_const()


def _gamma(v):
    from .oracle import gamma_weierstrass
    return gamma_weierstrass(v)


def _ln(v):
    return math.log(v)


def _pow(b, e):
    if float(e).is_integer():
        return b ** int(e)
    return math.pow(b, e)


_EVAL_FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "ln": _ln,
    "sqrt": math.sqrt,
    "gamma": _gamma,
}


def _eval(node, x):
    if isinstance(node, Variable):
        return x
    if isinstance(node, Constant):
        return float(node.value)
    if isinstance(node, NamedConstant):
        if node.name == "pi":
            return math.pi
        if node.name == "e":
            return math.e
        return _euler_gamma()
    if isinstance(node, Neg):
        return -_eval(node.operand, x)
    if isinstance(node, Add):
        return _eval(node.left, x) + _eval(node.right, x)
    if isinstance(node, Sub):
        return _eval(node.left, x) - _eval(node.right, x)
    if isinstance(node, Mul):
        return _eval(node.left, x) * _eval(node.right, x)
    if isinstance(node, Div):
        return _eval(node.left, x) / _eval(node.right, x)
    if isinstance(node, Pow):
        return _pow(_eval(node.base, x), _eval(node.exponent, x))
    if isinstance(node, Call):
        return _EVAL_FUNCTIONS[node.fn](_eval(node.arg, x))
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(f: Expr, x: float) -> float:
    """Evaluate ``f`` at the real point ``x``.

    Points outside the natural domain (division by zero, ``ln`` of a
    non-positive number, overflow, ...) give ``nan`` instead of raising.
    """
    try:
        value = _eval(f, float(x))
    except (ZeroDivisionError, ValueError, OverflowError):
        return math.nan
    if isinstance(value, complex) or not math.isfinite(value):
        return math.nan
    return value


def is_constant(f: Expr) -> bool:
    """True when ``f`` does not depend on ``x``."""
    if isinstance(f, Variable):
        return False
    if isinstance(f, (Constant, NamedConstant)):
        return True
    if isinstance(f, Neg):
        return is_constant(f.operand)
    if isinstance(f, Call):
        return is_constant(f.arg)
    if isinstance(f, Pow):
        return is_constant(f.base) and is_constant(f.exponent)
    return is_constant(f.left) and is_constant(f.right)


# --------------------------------------------------------------------------
# Printing
# --------------------------------------------------------------------------

# Binding strength of the construct a node prints as.
_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = range(1, 6)
_SYMBOL = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def _prec(node):
    if isinstance(node, (Add, Sub)):
        return _PREC_ADD
    if isinstance(node, (Mul, Div)):
        return _PREC_MUL
    if isinstance(node, Neg):
        return _PREC_NEG
    if isinstance(node, Pow):
        return _PREC_POW
    if isinstance(node, Constant) and node.value < 0:
        return _PREC_NEG
    return _PREC_ATOM


def _wrap(node, min_prec):
    text = _fmt(node)
    return f"({text})" if _prec(node) < min_prec else text


def _fmt(node):
    if isinstance(node, Variable):
        return "x"
    if isinstance(node, NamedConstant):
        return node.name
    if isinstance(node, Constant):
        v = node.value
        if isinstance(v, int):
            return str(v)
        return repr(float(v))
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _PREC_NEG)
    if isinstance(node, Pow):
        return _wrap(node.base, _PREC_ATOM) + "^" + _wrap(node.exponent, _PREC_NEG)
    if isinstance(node, Call):
        return f"{node.fn}({_fmt(node.arg)})"
    prec = _prec(node)
    # Left-associative: the right operand needs parentheses at equal precedence.
    return _wrap(node.left, prec) + _SYMBOL[type(node)] + _wrap(node.right, prec + 1)


def format_expr(f: Expr) -> str:
    """Render ``f`` with the minimum parentheses needed to reparse it exactly."""
    return _fmt(f)
