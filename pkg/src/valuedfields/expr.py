"""Expression grammar for the command line.

Recognized language, with no implicit multiplication:

    expr     :=  term (('+' | '-') term)*
    term     :=  unary (('*' | '/') unary)*
    unary    :=  ('-' | '+') unary | power
    power    :=  atom ('^' exponent)?
    exponent :=  INT | '-' INT | '(' exponent ')'
    atom     :=  INT | NAME | '(' expr ')'

Names are short lowercase identifiers such as x1, y2, or t; the caller
decides which names are in scope when converting to a rational function.
Integer literals combined with '/' give rational constants.  Every failure
raises ExprError carrying the offending position.
"""

from dataclasses import dataclass

from .errors import ExprError
from .fields import FieldDesc
from .polys import RatFn, const_poly, var_poly

_OPS = set("+-*/^()")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            out.append(Token("op", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("int", text[i:j], i))
            i = j
            continue
        if "a" <= ch <= "z":
            j = i
            while j < n and (("a" <= text[j] <= "z") or text[j].isdigit()):
                j += 1
            out.append(Token("name", text[i:j], i))
            i = j
            continue
        raise ExprError(f"unexpected character {ch!r} at position {i}")
    out.append(Token("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, symbol: str) -> Token:
        t = self.peek()
        if t.kind != "op" or t.text != symbol:
            raise ExprError(f"expected {symbol!r} at position {t.pos}")
        return self.take()

    # grammar rules, one method each

    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take().text
            rhs = self.unary()
            node = ("mul" if op == "*" else "div", node, rhs)
        return node

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            inner = self.unary()
            return inner if t.text == "+" else ("neg", inner)
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t.kind == "op" and t.text == "^":
            self.take()
            return ("pow", base, self.exponent())
        return base

    def exponent(self) -> int:
        t = self.peek()
        if t.kind == "op" and t.text == "(":
            self.take()
            k = self.exponent()
            self.expect_op(")")
            return k
        negate = False
        if t.kind == "op" and t.text == "-":
            self.take()
            negate = True
            t = self.peek()
        if t.kind != "int":
            raise ExprError(f"exponent must be an integer at position {t.pos}")
        self.take()
        k = int(t.text)
        return -k if negate else k

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return ("int", int(t.text))
        if t.kind == "name":
            return ("var", t.text)
        if t.kind == "op" and t.text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprError(f"expected a value at position {t.pos}")


def parse_expr(text: str):
    """Parse to a nested-tuple syntax tree; reject trailing input."""
    if not text.strip():
        raise ExprError("empty expression")
    p = _Parser(text)
    node = p.expr()
    t = p.peek()
    if t.kind != "end":
        raise ExprError(f"unexpected {t.text!r} at position {t.pos}")
    return node


def to_ratfn(node, vars: tuple[str, ...], field: FieldDesc) -> RatFn:
    """Evaluate a syntax tree to a rational function in the given variables.

    Names outside `vars` raise ExprError.  Division by the zero function
    raises ZeroDivisionError (from the rational-function layer)."""
    kind = node[0]
    if kind == "int":
        return RatFn.from_poly(const_poly(vars, field.elem(node[1])), field)
    if kind == "var":
        if node[1] not in vars:
            known = ", ".join(vars) if vars else "(none)"
            raise ExprError(f"unknown variable {node[1]!r}; in scope: {known}")
        return RatFn.from_poly(var_poly(vars, node[1], field), field)
    if kind == "neg":
        return -to_ratfn(node[1], vars, field)
    if kind == "pow":
        return to_ratfn(node[1], vars, field) ** node[2]
    a = to_ratfn(node[1], vars, field)
    b = to_ratfn(node[2], vars, field)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    return a / b


def expr_to_ratfn(text: str, vars, field: FieldDesc) -> RatFn:
    """Parse and evaluate in one call."""
    return to_ratfn(parse_expr(text), tuple(vars), field)
