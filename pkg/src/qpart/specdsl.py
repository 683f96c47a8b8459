"""A small language for stating q-series / weighted-partition identities.

Grammar::

    file     := identity* ;
    identity := "identity" NAME ["@" INT] "{" expr ("=" expr)+ "}" ;
    expr     := term (("+"|"-") term)* ;
    term     := factor (("*"|"/") factor)* ;
    factor   := INT | "q" "^" "(" poly ")" | "q" | "(" expr ")"
              | "(" "-" "1" ")" "^" "(" poly ")"
              | "poch" "(" ("+"|"-") "," poly "," INT "," (poly|"inf") ")"
              | "sum" "(" VAR "," INT "," expr ")"
              | "weighted" "(" SETNAME "," WEIGHTNAME ")" ;
    poly     := integer-valued polynomial of degree <= 2 in the innermost
                bound VAR, built from INT, VAR, + - * ^ ( ) and division by
                integer constants.

``poch(+, a, b, L)`` is ``(q^a; q^b)_L`` and ``poch(-, a, b, L)`` is
``(-q^a; q^b)_L``.  ``(-1)^(poly)`` is a sign factor.  ``sum`` runs from its
lower bound until a term vanishes to the working order.  Comments run from
``#`` to end of line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import partitions as P
from . import weights as W
from .qseries import (
    DEFAULT_DIVERGENCE_GUARD,
    QSeries,
    QSeriesError,
    constant,
    monomial,
    poch,
    reciprocal,
    sum_of_terms,
)

KEYWORDS = {"identity", "q", "poch", "sum", "weighted", "inf"}
MAX_DEGREE = 2


class DslError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0, expected: Sequence[str] = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(set(expected)))
        loc = f"{line}:{col}: " if line else ""
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{loc}{message}{exp}")


class DslEvalError(ValueError):
    def __init__(self, message: str, path: Sequence[str] = ()):
        self.path = tuple(path)
        where = "/".join(self.path) or "<root>"
        super().__init__(f"at {where}: {message}")


# --- polynomials ----------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Polynomial with rational coefficients ``coeffs[k] * var^k``."""

    coeffs: Tuple[Fraction, ...] = ()
    var: Optional[str] = None

    @staticmethod
    def make(coeffs, var=None) -> "Poly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) <= 1:
            var = None
        elif var is None:
            raise ValueError("a non-constant polynomial needs a variable")
        return Poly(tuple(cs), var)

    @staticmethod
    def const(c) -> "Poly":
        return Poly.make([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _join_var(self, other: "Poly") -> Optional[str]:
        if self.var and other.var and self.var != other.var:
            raise ValueError(f"mixed variables {self.var!r} and {other.var!r}")
        return self.var or other.var

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Poly.make([x + y for x, y in zip(a, b)], self._join_var(other))

    def __neg__(self) -> "Poly":
        return Poly.make([-c for c in self.coeffs], self.var)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly.make(out, self._join_var(other))

    def __call__(self, x: int = 0) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def int_at(self, x: int = 0) -> int:
        v = self(x)
        if v.denominator != 1:
            raise ValueError(f"{self.to_source()} is not an integer at {self.var}={x}")
        return int(v)

    def is_integer_valued(self) -> bool:
        """Integral at every integer argument.

        With L the lcm of the coefficient denominators, p(x+L) - p(x) is an
        integer, so checking x = 0..L-1 covers all residues.
        """
        period = lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1
        return all(self(x).denominator == 1 for x in range(period))

    def to_source(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            num = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if k == 0:
                body = num
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                body = mono if mag == 1 else f"{num}*{mono}"
            sign = "-" if c < 0 else "+"
            if not pieces:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)


# --- AST ------------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class QPow:
    exponent: Poly


@dataclass(frozen=True)
class Sign:
    exponent: Poly


@dataclass(frozen=True)
class Poch:
    sign: int  # +1 for (q^a;q^b), -1 for (-q^a;q^b)
    offset: Poly
    step: int
    length: Optional[Poly]  # None is infinite


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sum:
    var: str
    lower: int
    body: "Node"


@dataclass(frozen=True)
class Weighted:
    set_name: str
    weight_name: str


Node = Union[Int, QPow, Sign, Poch, BinOp, Sum, Weighted]


@dataclass(frozen=True)
class IdentityDecl:
    name: str
    sides: Tuple[Node, ...]
    order: Optional[int] = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class IdentityFile:
    identities: Tuple[IdentityDecl, ...] = ()

    def __len__(self):
        return len(self.identities)

    def __iter__(self):
        return iter(self.identities)


# --- tokenizer ------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>\#[^\n]*)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[{}(),=+\-*/^@])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, PUNCT, EOF
    text: str
    line: int
    col: int

    def describe(self) -> str:
        return "end of input" if self.kind == "EOF" else repr(self.text)


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise DslError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "int":
            tokens.append(Token("INT", s, line, col))
        elif kind == "ident":
            tokens.append(Token("IDENT", s, line, col))
        elif kind == "punct":
            tokens.append(Token("PUNCT", s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            line_start = pos + s.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# --- parser ---------------------------------------------------------------


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.scopes: List[str] = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, expected: Sequence[str] = (), tok: Optional[Token] = None):
        tok = tok or self.tok
        raise DslError(message, tok.line, tok.col, expected)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("PUNCT", "IDENT") and t.text == text

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"unexpected {self.tok.describe()}", [repr(text)])
        return self.advance()

    def expect_int(self) -> int:
        if self.tok.kind != "INT":
            self.error(f"unexpected {self.tok.describe()}", ["INT"])
        return int(self.advance().text)

    def expect_ident(self, what: str) -> Token:
        if self.tok.kind != "IDENT":
            self.error(f"unexpected {self.tok.describe()}", [what])
        return self.advance()

    # file := identity*
    def parse_file(self) -> IdentityFile:
        decls = []
        seen: Dict[str, int] = {}
        while self.tok.kind != "EOF":
            if not self.at("identity"):
                self.error(f"unexpected {self.tok.describe()}", ["'identity'", "end of input"])
            start = self.tok
            d = self.parse_identity()
            if d.name in seen:
                self.error(
                    f"duplicate identity name {d.name!r} (first defined on line {seen[d.name]})",
                    tok=start,
                )
            seen[d.name] = start.line
            decls.append(d)
        return IdentityFile(tuple(decls))

    def parse_identity(self) -> IdentityDecl:
        start = self.expect("identity")
        name_tok = self.expect_ident("NAME")
        if name_tok.text in KEYWORDS:
            self.error(f"keyword {name_tok.text!r} cannot name an identity", tok=name_tok)
        order = None
        if self.at("@"):
            self.advance()
            order = self.expect_int()
        self.expect("{")
        sides = [self.parse_expr()]
        if not self.at("="):
            self.error(f"unexpected {self.tok.describe()}", ["'='", "'+'", "'-'", "'*'", "'/'"])
        while self.at("="):
            self.advance()
            sides.append(self.parse_expr())
        if not self.at("}"):
            self.error(f"unexpected {self.tok.describe()}", ["'}'", "'='", "'+'", "'-'", "'*'", "'/'"])
        self.advance()
        return IdentityDecl(name_tok.text, tuple(sides), order, start.line)

    def parse_expr(self) -> Node:
        node = self.parse_term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self) -> Node:
        node = self.parse_factor()
        while self.at("*") or self.at("/"):
            op = self.advance().text
            node = BinOp(op, node, self.parse_factor())
        return node

    FACTOR_START = ["INT", "'q'", "'('", "'poch'", "'sum'", "'weighted'"]

    def parse_factor(self) -> Node:
        t = self.tok
        if t.kind == "INT":
            return Int(int(self.advance().text))
        if t.kind == "IDENT":
            if t.text == "q":
                self.advance()
                if self.at("^"):
                    self.advance()
                    return QPow(self.parse_paren_poly("exponent"))
                return QPow(Poly.const(1))
            if t.text == "poch":
                return self.parse_poch()
            if t.text == "sum":
                return self.parse_sum()
            if t.text == "weighted":
                return self.parse_weighted()
            self.error(f"unexpected identifier {t.text!r}", self.FACTOR_START)
        if self.at("("):
            nxt = self.tokens[self.i + 1]
            if nxt.kind == "PUNCT" and nxt.text == "-":
                return self.parse_sign()
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        self.error(f"unexpected {t.describe()}", self.FACTOR_START)

    def parse_sign(self) -> Node:
        self.expect("(")
        self.expect("-")
        one_tok = self.tok
        if self.expect_int() != 1:
            self.error("only (-1) may be raised to a power", tok=one_tok)
        self.expect(")")
        self.expect("^")
        return Sign(self.parse_paren_poly("sign exponent"))

    def parse_paren_poly(self, what: str) -> Poly:
        self.expect("(")
        start = self.tok
        p = self.parse_poly()
        self.expect(")")
        self.check_poly(p, what, start)
        return p

    def parse_poch(self) -> Node:
        self.expect("poch")
        self.expect("(")
        if not (self.at("+") or self.at("-")):
            self.error(f"unexpected {self.tok.describe()}", ["'+'", "'-'"])
        sign = 1 if self.advance().text == "+" else -1
        self.expect(",")
        start = self.tok
        offset = self.parse_poly()
        self.check_poly(offset, "offset", start)
        self.expect(",")
        step_tok = self.tok
        step = self.expect_int()
        if step < 1:
            self.error("poch step must be positive", tok=step_tok)
        self.expect(",")
        if self.at("inf"):
            self.advance()
            length = None
        else:
            start = self.tok
            length = self.parse_poly()
            self.check_poly(length, "length", start)
        self.expect(")")
        return Poch(sign, offset, step, length)

    def parse_sum(self) -> Node:
        self.expect("sum")
        self.expect("(")
        var_tok = self.expect_ident("VAR")
        var = var_tok.text
        if var in KEYWORDS:
            self.error(f"keyword {var!r} cannot be a summation variable", tok=var_tok)
        if var in self.scopes:
            self.error(f"variable {var!r} is already bound by an enclosing sum", tok=var_tok)
        self.expect(",")
        lower = self.expect_int()
        self.expect(",")
        self.scopes.append(var)
        try:
            body = self.parse_expr()
        finally:
            self.scopes.pop()
        self.expect(")")
        return Sum(var, lower, body)

    def parse_weighted(self) -> Node:
        self.expect("weighted")
        self.expect("(")
        set_tok = self.expect_ident("SETNAME")
        if set_tok.text not in P.SETS:
            self.error(f"unknown set {set_tok.text!r}", [repr(s) for s in P.SETS], tok=set_tok)
        self.expect(",")
        w_tok = self.expect_ident("WEIGHTNAME")
        if w_tok.text not in W.WEIGHTS:
            self.error(f"unknown weight {w_tok.text!r}", [repr(w) for w in W.WEIGHTS], tok=w_tok)
        self.expect(")")
        return Weighted(set_tok.text, w_tok.text)

    # poly := pterm (("+"|"-") pterm)*
    def parse_poly(self) -> Poly:
        p = self.parse_pterm()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            rhs = self.parse_pterm()
            p = p + rhs if op == "+" else p - rhs
        return p

    def parse_pterm(self) -> Poly:
        p = self.parse_pfactor()
        while self.at("*") or self.at("/"):
            op_tok = self.advance()
            rhs = self.parse_pfactor()
            if op_tok.text == "*":
                p = p * rhs
            else:
                if rhs.degree > 0:
                    self.error("division by a non-constant polynomial", tok=op_tok)
                if not rhs.coeffs:
                    self.error("division by zero", tok=op_tok)
                p = p * Poly.const(1 / rhs.coeffs[0])
        return p

    def parse_pfactor(self) -> Poly:
        if self.at("-"):
            self.advance()
            return -self.parse_pfactor()
        base = self.parse_patom()
        if self.at("^"):
            self.advance()
            k = self.expect_int()
            out = Poly.const(1)
            for _ in range(k):
                out = out * base
            return out
        return base

    POLY_START = ["INT", "VAR", "'('", "'-'"]

    def parse_patom(self) -> Poly:
        t = self.tok
        if t.kind == "INT":
            return Poly.const(int(self.advance().text))
        if t.kind == "IDENT":
            if t.text in KEYWORDS:
                self.error(f"unexpected keyword {t.text!r} in polynomial", self.POLY_START)
            if not self.scopes or t.text not in self.scopes:
                self.error(f"unbound variable {t.text!r}", tok=t)
            if t.text != self.scopes[-1]:
                self.error(
                    f"variable {t.text!r} is not the innermost bound variable {self.scopes[-1]!r}",
                    tok=t,
                )
            self.advance()
            return Poly.make([0, 1], t.text)
        if self.at("("):
            self.advance()
            p = self.parse_poly()
            self.expect(")")
            return p
        self.error(f"unexpected {t.describe()}", self.POLY_START)

    def check_poly(self, p: Poly, what: str, tok: Token) -> None:
        if p.degree > MAX_DEGREE:
            self.error(f"{what} polynomial {p.to_source()} has degree {p.degree} > {MAX_DEGREE}", tok=tok)
        if not p.is_integer_valued():
            var = p.var or "its variable"
            self.error(f"{what} {p.to_source()} is not an integer for every value of {var}", tok=tok)


def parse(text: str) -> IdentityFile:
    return Parser(text).parse_file()


def parse_expr(text: str) -> Node:
    """Parse a standalone expression (no enclosing identity)."""
    p = Parser(text)
    node = p.parse_expr()
    if p.tok.kind != "EOF":
        p.error(f"unexpected {p.tok.describe()}", ["'+'", "'-'", "'*'", "'/'", "end of input"])
    return node


def check_integral(text: str, var: str = "n") -> bool:
    """Whether a polynomial in ``var`` is integer-valued (parse-time check)."""
    p = Parser(text)
    p.scopes.append(var)
    poly = p.parse_poly()
    if p.tok.kind != "EOF":
        p.error(f"unexpected {p.tok.describe()}", ["end of input"])
    return poly.is_integer_valued()


# --- printer --------------------------------------------------------------


def to_source(node) -> str:
    if isinstance(node, IdentityFile):
        return "".join(to_source(d) + "\n" for d in node.identities)
    if isinstance(node, IdentityDecl):
        order = f" @{node.order}" if node.order is not None else ""
        body = "\n  = ".join(to_source(s) for s in node.sides)
        return f"identity {node.name}{order} {{\n  {body}\n}}"
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, QPow):
        return f"q^({node.exponent.to_source()})"
    if isinstance(node, Sign):
        return f"(-1)^({node.exponent.to_source()})"
    if isinstance(node, Poch):
        sign = "+" if node.sign == 1 else "-"
        length = "inf" if node.length is None else node.length.to_source()
        return f"poch({sign}, {node.offset.to_source()}, {node.step}, {length})"
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Sum):
        return f"sum({node.var}, {node.lower}, {to_source(node.body)})"
    if isinstance(node, Weighted):
        return f"weighted({node.set_name}, {node.weight_name})"
    raise TypeError(f"not an AST node: {node!r}")


# --- evaluator ------------------------------------------------------------


def _poly_value(p: Poly, env: Dict[str, int], path) -> int:
    x = env.get(p.var, 0) if p.var else 0
    if p.var and p.var not in env:
        raise DslEvalError(f"unbound variable {p.var!r}", path)
    v = p(x)
    if v.denominator != 1:
        raise DslEvalError(f"{p.to_source()} is not an integer at {p.var}={x}", path)
    return int(v)


def evaluate(
    node: Node,
    order: int,
    env: Optional[Dict[str, int]] = None,
    path: Tuple[str, ...] = (),
    guard: int = DEFAULT_DIVERGENCE_GUARD,
) -> QSeries:
    env = env or {}
    if isinstance(node, Int):
        return constant(node.value, order)
    if isinstance(node, QPow):
        e = _poly_value(node.exponent, env, path + ("q^",))
        if e < 0:
            raise DslEvalError(f"negative exponent {e}", path + ("q^",))
        return monomial(e, order)
    if isinstance(node, Sign):
        e = _poly_value(node.exponent, env, path + ("sign",))
        return constant(-1 if e % 2 else 1, order)
    if isinstance(node, Poch):
        here = path + ("poch",)
        offset = _poly_value(node.offset, env, here)
        length = None if node.length is None else _poly_value(node.length, env, here)
        try:
            return poch(node.sign, offset, node.step, length, order)
        except QSeriesError as exc:
            raise DslEvalError(str(exc), here) from exc
    if isinstance(node, BinOp):
        left = evaluate(node.left, order, env, path + (f"{node.op}.left",), guard)
        right = evaluate(node.right, order, env, path + (f"{node.op}.right",), guard)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        try:
            return left * reciprocal(right)
        except QSeriesError as exc:
            raise DslEvalError(f"division by a non-unit series: {exc}", path + ("div",)) from exc
    if isinstance(node, Sum):
        here = path + (f"sum({node.var})",)

        def term(n):
            inner = dict(env)
            inner[node.var] = n
            return evaluate(node.body, order, inner, here + (f"{node.var}={n}",), guard)

        try:
            return sum_of_terms(term, order, start=node.lower, guard=guard)
        except DslEvalError:
            raise
        except QSeriesError as exc:
            raise DslEvalError(str(exc), here) from exc
    if isinstance(node, Weighted):
        return W.weighted_series(node.set_name, node.weight_name, order)
    raise TypeError(f"not an AST node: {node!r}")


# --- bridge to the verification engine ------------------------------------


def to_identity_spec(decl: IdentityDecl):
    from .identities import ENUM_DEFAULT_ORDER, SERIES_DEFAULT_ORDER, IdentitySpec, enum, series

    sides = []
    for node in decl.sides:
        if isinstance(node, Weighted):
            sides.append(enum(node.set_name, node.weight_name))
        else:
            sides.append(series(to_source(node), lambda m, node=node: evaluate(node, m, path=(decl.name,))))
    order = decl.order
    if order is None:
        order = ENUM_DEFAULT_ORDER if _mentions_weighted(decl) else SERIES_DEFAULT_ORDER
    return IdentitySpec(decl.name, tuple(sides), order, notes="from identity file")


def _mentions_weighted(node) -> bool:
    if isinstance(node, IdentityDecl):
        return any(_mentions_weighted(s) for s in node.sides)
    if isinstance(node, Weighted):
        return True
    if isinstance(node, BinOp):
        return _mentions_weighted(node.left) or _mentions_weighted(node.right)
    if isinstance(node, Sum):
        return _mentions_weighted(node.body)
    return False


def load_specs(text: str):
    return [to_identity_spec(d) for d in parse(text)]


def load_file(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return load_specs(fh.read())


def paper_qid_path():
    from importlib.resources import files

    return files("qpart").joinpath("data/paper.qid")


def paper_specs():
    return load_specs(paper_qid_path().read_text(encoding="utf-8"))
