"""
A small expression language in u for user-defined models.

    expression := NUMBER | NAME | func(expression) | (expression)
                | expression op expression | -expression

Operators are + - * / and ^ (or **). Names are u (alias rho), pi and e.
Functions are sin, cos, exp, log and sqrt. Expressions evaluate over numpy
arrays and can be differentiated symbolically in u.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import ply.lex as lex
import ply.yacc as yacc

from imex_relax.errors import ValidationError

from .model import HKind, RelaxationModel

VARIABLES = {"u", "rho"}
CONSTANTS = {"pi": math.pi, "e": math.e}
FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
}


class Node:
    def evaluate(self, u):
        raise NotImplementedError

    def derivative(self) -> "Node":
        raise NotImplementedError

    def depends_on_u(self) -> bool:
        raise NotImplementedError

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(all="ignore"):
            value = self.evaluate(u)
        return np.array(np.broadcast_to(value, u.shape), dtype=float)


@dataclass(frozen=True)
class Number(Node):
    value: float

    def evaluate(self, u):
        return self.value

    def derivative(self):
        return Number(0.0)

    def depends_on_u(self):
        return False

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Variable(Node):
    def evaluate(self, u):
        return u

    def derivative(self):
        return Number(1.0)

    def depends_on_u(self):
        return True

    def __str__(self):
        return "u"


@dataclass(frozen=True)
class Negate(Node):
    arg: Node

    def evaluate(self, u):
        return -self.arg.evaluate(u)

    def derivative(self):
        return negate(self.arg.derivative())

    def depends_on_u(self):
        return self.arg.depends_on_u()

    def __str__(self):
        return f"-({self.arg})"


@dataclass(frozen=True)
class BinaryOp(Node):
    op: str
    left: Node
    right: Node

    def evaluate(self, u):
        a = self.left.evaluate(u)
        b = self.right.evaluate(u)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if self.op == "/":
            return a / b
        return np.power(a, b)

    def derivative(self):
        a, b = self.left, self.right
        da, db = a.derivative(), b.derivative()
        if self.op == "+":
            return add(da, db)
        if self.op == "-":
            return subtract(da, db)
        if self.op == "*":
            return add(multiply(da, b), multiply(a, db))
        if self.op == "/":
            return divide(subtract(multiply(da, b), multiply(a, db)), power(b, Number(2.0)))

        # a^b with a constant exponent, else the general log form
        if not b.depends_on_u():
            return multiply(multiply(b, power(a, subtract(b, Number(1.0)))), da)
        return multiply(
            self, add(multiply(db, Call("log", a)), divide(multiply(b, da), a))
        )

    def depends_on_u(self):
        return self.left.depends_on_u() or self.right.depends_on_u()

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call(Node):
    func: str
    arg: Node

    def evaluate(self, u):
        return FUNCTIONS[self.func](self.arg.evaluate(u))

    def derivative(self):
        inner = self.arg.derivative()
        if self.func == "sin":
            outer = Call("cos", self.arg)
        elif self.func == "cos":
            outer = negate(Call("sin", self.arg))
        elif self.func == "exp":
            outer = self
        elif self.func == "log":
            outer = divide(Number(1.0), self.arg)
        else:
            outer = divide(Number(0.5), self)
        return multiply(outer, inner)

    def depends_on_u(self):
        return self.arg.depends_on_u()

    def __str__(self):
        return f"{self.func}({self.arg})"


def _constant(node):
    return node.value if isinstance(node, Number) else None


def negate(a):
    if _constant(a) is not None:
        return Number(-a.value)
    return Negate(a)


def add(a, b):
    if _constant(a) == 0.0:
        return b
    if _constant(b) == 0.0:
        return a
    if _constant(a) is not None and _constant(b) is not None:
        return Number(a.value + b.value)
    return BinaryOp("+", a, b)


def subtract(a, b):
    if _constant(b) == 0.0:
        return a
    if _constant(a) == 0.0:
        return negate(b)
    if _constant(a) is not None and _constant(b) is not None:
        return Number(a.value - b.value)
    return BinaryOp("-", a, b)


def multiply(a, b):
    if _constant(a) == 0.0 or _constant(b) == 0.0:
        return Number(0.0)
    if _constant(a) == 1.0:
        return b
    if _constant(b) == 1.0:
        return a
    if _constant(a) is not None and _constant(b) is not None:
        return Number(a.value * b.value)
    return BinaryOp("*", a, b)


def divide(a, b):
    if _constant(a) == 0.0:
        return Number(0.0)
    if _constant(b) == 1.0:
        return a
    return BinaryOp("/", a, b)


def power(a, b):
    if _constant(b) == 1.0:
        return a
    if _constant(b) == 0.0:
        return Number(1.0)
    return BinaryOp("^", a, b)


class ExpressionParser:
    tokens = (
        "NUMBER",
        "NAME",
        "PLUS",
        "MINUS",
        "TIMES",
        "DIVIDE",
        "POWER",
        "LPAREN",
        "RPAREN",
    )

    t_PLUS = r"\+"
    t_MINUS = r"-"
    t_POWER = r"\^|\*\*"
    t_TIMES = r"\*"
    t_DIVIDE = r"/"
    t_LPAREN = r"\("
    t_RPAREN = r"\)"
    t_ignore = " \t"

    precedence = (
        ("left", "PLUS", "MINUS"),
        ("left", "TIMES", "DIVIDE"),
        ("right", "UMINUS"),
        ("right", "POWER"),
    )

    def __init__(self):
        self.lexer = lex.lex(module=self)
        self.parser = yacc.yacc(
            module=self, write_tables=False, debug=False, errorlog=yacc.NullLogger()
        )

    def t_NUMBER(self, t):
        r"(\d+\.\d*|\.\d+|\d+)([eE][-+]?\d+)?"
        t.value = float(t.value)
        return t

    def t_NAME(self, t):
        r"[A-Za-z_][A-Za-z_0-9]*"
        return t

    def t_error(self, t):
        raise ValidationError(f"unexpected character {t.value[0]!r} at position {t.lexpos}")

    def p_expression_binary(self, p):
        """expression : expression PLUS expression
        | expression MINUS expression
        | expression TIMES expression
        | expression DIVIDE expression
        | expression POWER expression"""
        op = "^" if p[2] == "**" else p[2]
        p[0] = BinaryOp(op, p[1], p[3])

    def p_expression_negate(self, p):
        "expression : MINUS expression %prec UMINUS"
        p[0] = negate(p[2])

    def p_expression_group(self, p):
        "expression : LPAREN expression RPAREN"
        p[0] = p[2]

    def p_expression_number(self, p):
        "expression : NUMBER"
        p[0] = Number(p[1])

    def p_expression_name(self, p):
        "expression : NAME"
        name = p[1]
        if name in VARIABLES:
            p[0] = Variable()
        elif name in CONSTANTS:
            p[0] = Number(CONSTANTS[name])
        else:
            raise ValidationError(f"unknown name {name!r}, expected one of u, rho, pi, e")

    def p_expression_call(self, p):
        "expression : NAME LPAREN expression RPAREN"
        if p[1] not in FUNCTIONS:
            raise ValidationError(
                f"unknown function {p[1]!r}, expected one of {', '.join(FUNCTIONS)}"
            )
        p[0] = Call(p[1], p[3])

    def p_error(self, p):
        if p is None:
            raise ValidationError("unexpected end of expression")
        raise ValidationError(f"unexpected {p.value!r} at position {p.lexpos}")

    def parse(self, text: str) -> Node:
        if not text or not text.strip():
            raise ValidationError("expression is empty")
        return self.parser.parse(text, lexer=self.lexer.clone())


_parser = None


def parse_expression(text: str) -> Node:
    global _parser
    if _parser is None:
        _parser = ExpressionParser()
    return _parser.parse(text)


def compile_expression(text: str) -> Tuple[Node, Node]:
    """
    Parse an expression and return it with its derivative in u.
    """
    node = parse_expression(text)
    return node, node.derivative()


def make_custom(f_expr: str, p_expr: str = "u", name: str = "custom") -> RelaxationModel:
    """
    A relaxation model with G = f given by f_expr, pressure p given by p_expr and H(v) = -v.
    """
    f, f_prime = compile_expression(f_expr)
    p, p_prime = compile_expression(p_expr)
    return RelaxationModel(
        name=name,
        p=p,
        p_prime=p_prime,
        f=f,
        f_prime=f_prime,
        g=f,
        h_kind=HKind.LinearInV,
        p_is_linear=not p_prime.depends_on_u(),
        parameters={"f": f_expr, "p": p_expr},
    )
