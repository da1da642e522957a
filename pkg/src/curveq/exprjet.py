"""Expression parsing and truncated-Taylor (jet) evaluation.

A small scientific-calculator grammar over one free variable is parsed into
an immutable AST.  Evaluation propagates truncated Taylor series, so a single
pass yields the value together with derivatives up to fourth order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import ExprDomainError, ExprSyntaxError

JET_LEN = 5  # value + four derivatives

_FACTORIALS = np.array([math.factorial(k) for k in range(JET_LEN)], dtype=float)


# ---------------------------------------------------------------------------
# Truncated Taylor series ("jets")
# ---------------------------------------------------------------------------

class Jet:
    """Truncated Taylor series around the evaluation point.

    coeffs[k] is the k-th Taylor coefficient f^(k)/k!.  Binary operations
    truncate to the shorter operand, so derived quantities carry exactly the
    derivative depth their inputs support.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = np.asarray(coeffs, dtype=float)

    @staticmethod
    def variable(t, n=JET_LEN):
        c = np.zeros(n)
        c[0] = t
        if n > 1:
            c[1] = 1.0
        return Jet(c)

    @staticmethod
    def constant(v, n=JET_LEN):
        c = np.zeros(n)
        c[0] = float(v)
        return Jet(c)

    @property
    def value(self):
        return float(self.coeffs[0])

    def derivative(self, k):
        """k-th derivative value carried by this jet."""
        return float(self.coeffs[k] * _FACTORIALS[k])

    def truncate(self, n):
        return Jet(self.coeffs[:n])

    def deriv(self):
        """Jet of d/dt of this quantity (one order shorter)."""
        c = self.coeffs
        k = np.arange(1, len(c))
        return Jet(c[1:] * k)

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return Jet(-self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Jet):
            c = self.coeffs.copy()
            c[0] += other
            return Jet(c)
        n = min(len(self.coeffs), len(other.coeffs))
        return Jet(self.coeffs[:n] + other.coeffs[:n])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -float(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.coeffs * other)
        n = min(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs[:n], other.coeffs[:n]
        out = np.zeros(n)
        for k in range(n):
            out[k] = np.dot(a[: k + 1], b[k::-1])
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.coeffs / other)
        return self * other._reciprocal()

    def __rtruediv__(self, other):
        return self._reciprocal() * other

    def _reciprocal(self):
        c0 = self.coeffs[0]
        if c0 == 0.0:
            raise ZeroDivisionError("jet reciprocal of zero value")
        n = len(self.coeffs)
        ders = [(-1.0) ** k * _FACTORIALS[k] / c0 ** (k + 1) for k in range(n)]
        return _compose(self, ders)

    def __pow__(self, p):
        return jet_pow(self, p)


def _compose(u, ders):
    """Series of f(u) given the derivatives of f at u.value.

    Horner evaluation of sum_k f^(k)(c0)/k! * w^k with w the nonconstant
    part of u, truncated to len(u).
    """
    n = len(u.coeffs)
    w = Jet(np.concatenate(([0.0], u.coeffs[1:])))
    r = Jet.constant(ders[n - 1] / _FACTORIALS[n - 1], n)
    for k in range(n - 2, -1, -1):
        r = r * w + (ders[k] / _FACTORIALS[k])
    return r


def jet_sin(u):
    c0 = u.coeffs[0]
    s, c = math.sin(c0), math.cos(c0)
    return _compose(u, [s, c, -s, -c, s][: len(u.coeffs)])


def jet_cos(u):
    c0 = u.coeffs[0]
    s, c = math.sin(c0), math.cos(c0)
    return _compose(u, [c, -s, -c, s, c][: len(u.coeffs)])


def jet_exp(u):
    e = math.exp(u.coeffs[0])
    return _compose(u, [e] * len(u.coeffs))


def jet_log(u, offset=0):
    c0 = u.coeffs[0]
    if c0 <= 0.0:
        raise ExprDomainError(f"log of non-positive value {c0:g}", offset)
    n = len(u.coeffs)
    ders = [math.log(c0)]
    for k in range(1, n):
        ders.append((-1.0) ** (k - 1) * _FACTORIALS[k - 1] / c0**k)
    return _compose(u, ders)


def jet_sqrt(u, offset=0):
    c0 = u.coeffs[0]
    if c0 <= 0.0:
        raise ExprDomainError(f"sqrt of non-positive value {c0:g}", offset)
    return jet_pow(u, 0.5, offset)


def jet_tan(u, offset=0):
    c = jet_cos(u)
    if c.coeffs[0] == 0.0:
        raise ExprDomainError("tan at a pole of cos", offset)
    return jet_sin(u) / c


def jet_pow(u, p, offset=0):
    """u**p with constant exponent p."""
    p = float(p)
    if p == round(p):
        k = int(round(p))
        if k >= 0:
            result = Jet.constant(1.0, len(u.coeffs))
            base = u
            m = k
            while m:
                if m & 1:
                    result = result * base
                base = base * base
                m >>= 1
            return result
        if u.coeffs[0] == 0.0:
            raise ExprDomainError("negative power of zero", offset)
        return Jet.constant(1.0, len(u.coeffs)) / jet_pow(u, -k, offset)
    c0 = u.coeffs[0]
    if c0 <= 0.0:
        raise ExprDomainError(
            f"non-integer power of non-positive value {c0:g}", offset
        )
    n = len(u.coeffs)
    ders, fac = [], 1.0
    for k in range(n):
        ders.append(fac * c0 ** (p - k))
        fac *= p - k
    return _compose(u, ders)


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: float
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Unary:
    op: str  # neg, sin, cos, tan, exp, log, sqrt
    operand: object
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Binary:
    op: str  # add, sub, mul, div, pow
    left: object
    right: object
    pos: int = field(default=0, compare=False)


FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt")

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            bad = len(text) - len(stripped)
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", bad)
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, var_name):
        if not text or not text.strip():
            raise ExprSyntaxError("empty expression", 0)
        self.text = text
        self.var_name = var_name
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)
        return self.next()

    def parse(self):
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected trailing input {val!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                node = Binary("add" if val == "+" else "sub", node, rhs, pos)
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                node = Binary("mul" if val == "*" else "div", node, rhs, pos)
            else:
                return node

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.next()
            inner = self.factor()
            # Fold a minus applied to a bare constant so "-2.5" stays one
            # node; "-t^2" still parses as neg(pow(t, 2)).
            if isinstance(inner, Const):
                return Const(-inner.value, pos)
            return Unary("neg", inner, pos)
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            exponent = self.pow_exponent()
            return Binary("pow", base, exponent, pos)
        return base

    def pow_exponent(self):
        # Exponents are numeric constants only; a leading minus and one
        # level of parentheses are allowed.
        kind, val, pos = self.peek()
        if kind == "op" and val == "(":
            self.next()
            inner = self.pow_exponent()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            self.next()
            inner = self.pow_exponent()
            return Const(-inner.value, pos)
        if kind == "num":
            self.next()
            return Const(float(val), pos)
        raise ExprSyntaxError("exponent must be a numeric constant", pos)

    def atom(self):
        kind, val, pos = self.next()
        if kind == "num":
            return Const(float(val), pos)
        if kind == "name":
            if val in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Unary(val, arg, pos)
            if val == self.var_name:
                return Var(pos)
            raise ExprSyntaxError(f"unknown identifier {val!r}", pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", pos)
        raise ExprSyntaxError(f"unexpected token {val!r}", pos)


def parse_expression(text, var_name="t"):
    """Parse an expression of one variable into an AST."""
    return _Parser(text, var_name).parse()


def ast_to_string(node):
    """Render an AST back to parseable text (fully parenthesized)."""
    if isinstance(node, Const):
        if node.value < 0 or (node.value == 0 and math.copysign(1, node.value) < 0):
            return f"(-{abs(node.value)!r})"
        return repr(node.value)
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Unary):
        if node.op == "neg":
            return f"(-{ast_to_string(node.operand)})"
        return f"{node.op}({ast_to_string(node.operand)})"
    if isinstance(node, Binary):
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}[node.op]
        if node.op == "pow":
            exp = node.right.value
            exp_txt = f"({exp!r})" if exp < 0 else repr(exp)
            return f"({ast_to_string(node.left)}^{exp_txt})"
        return f"({ast_to_string(node.left)} {sym} {ast_to_string(node.right)})"
    raise TypeError(f"not an AST node: {node!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def evaluate_series(node, t, n=JET_LEN):
    """Evaluate an AST to a Jet of length n at parameter value t."""
    return _eval(node, Jet.variable(float(t), n))


def _eval(node, var_jet):
    if isinstance(node, Const):
        return Jet.constant(node.value, len(var_jet.coeffs))
    if isinstance(node, Var):
        return var_jet
    if isinstance(node, Unary):
        u = _eval(node.operand, var_jet)
        if node.op == "neg":
            return -u
        if node.op == "sin":
            return jet_sin(u)
        if node.op == "cos":
            return jet_cos(u)
        if node.op == "tan":
            return jet_tan(u, node.pos)
        if node.op == "exp":
            return jet_exp(u)
        if node.op == "log":
            return jet_log(u, node.pos)
        if node.op == "sqrt":
            return jet_sqrt(u, node.pos)
        raise ValueError(f"unknown unary op {node.op}")
    if isinstance(node, Binary):
        left = _eval(node.left, var_jet)
        if node.op == "pow":
            return jet_pow(left, node.right.value, node.pos)
        right = _eval(node.right, var_jet)
        if node.op == "add":
            return left + right
        if node.op == "sub":
            return left - right
        if node.op == "mul":
            return left * right
        if node.op == "div":
            if right.coeffs[0] == 0.0:
                raise ExprDomainError("division by zero", node.pos)
            return left / right
        raise ValueError(f"unknown binary op {node.op}")
    raise TypeError(f"not an AST node: {node!r}")


@dataclass(frozen=True)
class Jet4:
    """Value and first four derivatives at the evaluation point."""

    value: float
    d1: float
    d2: float
    d3: float
    d4: float


def eval_jet(node, t):
    """Value and derivatives up to order four of the expression at t."""
    jet = evaluate_series(node, t, JET_LEN)
    return Jet4(*(jet.derivative(k) for k in range(JET_LEN)))
