"""Textual series expressions for ``g(t)`` and ``f(t)``.

Grammar (ASCII, whitespace ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" unary)?            # right associative
    atom    := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
    NUMBER  := DIGITS ("." DIGITS)?
    IDENT   := [A-Za-z_][A-Za-z0-9_]*

``t`` is the series variable; ``exp``, ``log``, ``sqrt``, ``sin`` and
``cos`` are functions; any other identifier is a parameter that must be
bound to a rational before evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainViolation, ExpressionSyntaxError, UnboundParameter
from .powerseries import (
    FormalPowerSeries,
    as_rational,
    cos_series,
    exp_series,
    log_series,
    pow_series,
    sin_series,
    sqrt_series,
)

FUNCTIONS = ("exp", "log", "sqrt", "sin", "cos")
MAX_DEPTH = 60
MAX_EXPONENT_BITS = 1 << 16


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "end"
    text: str
    offset: int


def tokenize(source: str) -> list[Token]:
    if not source.isascii():
        for i, ch in enumerate(source):
            if not ch.isascii():
                raise ExpressionSyntaxError("non-ASCII character %r" % ch,
                                            len(source[:i].encode()), ("ASCII input",))
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and source[j] == ".":
                j += 1
                if j >= n or not source[j].isdigit():
                    raise ExpressionSyntaxError("malformed number", j, ("digit",))
                while j < n and source[j].isdigit():
                    j += 1
            tokens.append(Token("num", source[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("ident", source[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append(Token("op", ch, i))
            i += 1
            continue
        raise ExpressionSyntaxError("unexpected character %r" % ch, i,
                                    ("number", "identifier", "operator", "("))
    tokens.append(Token("end", "", n))
    return tokens


_ATOM_START = ("number", "identifier", "(", "-")


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0
        self.depth = 0

    def enter(self, tok: Token):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ExpressionSyntaxError("nesting deeper than %d" % MAX_DEPTH, tok.offset,
                                        ("shallower expression",))

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_op(self, *ops) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in ops

    def expect_op(self, op: str, expected_extra=()):
        tok = self.peek()
        if tok.kind == "op" and tok.text == op:
            return self.advance()
        raise ExpressionSyntaxError("unexpected %s" % _describe(tok), tok.offset,
                                    (repr(op),) + tuple(expected_extra))

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExpressionSyntaxError("unexpected %s" % _describe(tok), tok.offset,
                                        ("'+'", "'-'", "'*'", "'/'", "'^'", "end of input"))
        return node

    def expr(self):
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.at_op("*", "/"):
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.at_op("-"):
            self.enter(self.advance())
            node = Neg(self.unary())
            self.depth -= 1
            return node
        return self.power()

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.enter(self.advance())
            node = BinOp("^", base, self.unary())
            self.depth -= 1
            return node
        return base

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Num(Fraction(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text in FUNCTIONS:
                self.enter(self.expect_op("("))
                arg = self.expr()
                self.expect_op(")", ("'+'", "'-'", "'*'", "'/'", "'^'"))
                self.depth -= 1
                return Call(tok.text, arg)
            if tok.text == "t":
                return Var()
            return Param(tok.text)
        if self.at_op("("):
            self.enter(self.advance())
            node = self.expr()
            self.expect_op(")", ("'+'", "'-'", "'*'", "'/'", "'^'"))
            self.depth -= 1
            return node
        raise ExpressionSyntaxError("unexpected %s" % _describe(tok), tok.offset,
                                    tuple(repr(x) if len(x) == 1 else x for x in _ATOM_START))


def _describe(tok: Token) -> str:
    if tok.kind == "end":
        return "end of input"
    return "%r" % tok.text


def parse(source: str):
    """Parse ``source`` into an expression tree."""
    return _Parser(source).parse()


def parameters(node) -> set[str]:
    """Names of all parameters referenced by a tree."""
    if isinstance(node, Param):
        return {node.name}
    if isinstance(node, Neg):
        return parameters(node.operand)
    if isinstance(node, BinOp):
        return parameters(node.left) | parameters(node.right)
    if isinstance(node, Call):
        return parameters(node.arg)
    return set()


def _constant_of(s: FormalPowerSeries):
    if any(s.coeffs[1:]):
        return None
    return s.coeffs[0]


def _divide(a: FormalPowerSeries, b: FormalPowerSeries) -> FormalPowerSeries:
    if b.coeffs[0] != 0:
        return a / b
    m = b.valuation()
    if m is None:
        raise DomainViolation("division by a series that vanishes to the working order")
    va = a.valuation()
    if va is not None and va < m:
        raise DomainViolation(
            "division by a series with zero constant term: numerator order %d is below "
            "denominator order %d" % (va, m))
    if va is None and a.order < m:
        raise DomainViolation("division leaves no known coefficients")
    return a.shift_down(m) / b.shift_down(m)


def _power(base: FormalPowerSeries, exponent: FormalPowerSeries) -> FormalPowerSeries:
    r = _constant_of(exponent)
    if r is None:
        raise DomainViolation("exponent must evaluate to a rational constant")
    if r.denominator == 1:
        k = int(r)
        size = max(c.numerator.bit_length() + c.denominator.bit_length() for c in base.coeffs)
        if abs(k) > 1 and abs(k) * max(size, 1) > MAX_EXPONENT_BITS:
            raise DomainViolation("exponent %d too large for exact evaluation" % k)
        if k < 0 and base.coeffs[0] == 0:
            raise DomainViolation("negative power of a series with zero constant term")
        return base ** k
    if base.coeffs[0] != 1:
        raise DomainViolation(
            "non-integer exponent %s needs a base with constant term 1 (got %s)"
            % (r, base.coeffs[0]))
    return pow_series(base, r)


def _call(func: str, arg: FormalPowerSeries) -> FormalPowerSeries:
    if func == "exp":
        if arg.coeffs[0] != 0:
            raise DomainViolation("exp needs an argument with zero constant term")
        return exp_series(arg)
    if func == "log":
        if arg.coeffs[0] != 1:
            raise DomainViolation("log needs an argument with constant term 1")
        return log_series(arg)
    if func == "sqrt":
        if arg.coeffs[0] != 1:
            raise DomainViolation("sqrt needs an argument with constant term 1")
        return sqrt_series(arg)
    if func == "sin":
        if arg.coeffs[0] != 0:
            raise DomainViolation("sin needs an argument with zero constant term")
        return sin_series(arg)
    if arg.coeffs[0] != 0:
        raise DomainViolation("cos needs an argument with zero constant term")
    return cos_series(arg)


def _eval(node, bindings, order: int) -> FormalPowerSeries:
    if isinstance(node, Num):
        return FormalPowerSeries.constant(node.value, order)
    if isinstance(node, Var):
        return FormalPowerSeries.variable(order)
    if isinstance(node, Param):
        if node.name not in bindings:
            raise UnboundParameter("parameter %r is not bound" % node.name)
        return FormalPowerSeries.constant(bindings[node.name], order)
    if isinstance(node, Neg):
        return -_eval(node.operand, bindings, order)
    if isinstance(node, Call):
        return _call(node.func, _eval(node.arg, bindings, order))
    left = _eval(node.left, bindings, order)
    right = _eval(node.right, bindings, order)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        return _divide(left, right)
    return _power(left, right)


def evaluate(expr, bindings=None, N: int = 10) -> FormalPowerSeries:
    """Exact series of a tree (or source string) modulo ``t^(N+1)``.

    Divisions that cancel powers of ``t`` lose precision; the working order
    is raised until the result is known to order ``N``.
    """
    if isinstance(expr, str):
        expr = parse(expr)
    bindings = {k: as_rational(v) for k, v in (bindings or {}).items()}
    try:
        missing = parameters(expr) - set(bindings)
    except RecursionError:
        raise DomainViolation("expression tree too deep to evaluate") from None
    if missing:
        raise UnboundParameter("unbound parameter(s): %s" % ", ".join(sorted(missing)))
    work = N
    for _ in range(64):
        try:
            result = _eval(expr, bindings, work)
        except RecursionError:
            raise DomainViolation("expression tree too deep to evaluate") from None
        if result.order >= N:
            return result.truncate(N)
        work += N - result.order
    raise DomainViolation("could not reach order %d" % N)
