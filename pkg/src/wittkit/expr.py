"""Expression language for the command line: tokenizer, parser, printer, evaluator.

Grammar (whitespace-insensitive)::

    expr    := sum [ ("==" | "eq") sum ]
    sum     := product { ("+" | "-" | "add" | "sub") product }
    product := unary { ("*" | "mul" | "mulplus") unary }
    unary   := ("neg" | "invol") unary
             | ("frob" | "ver" | "lambda" | "ghost" | "truncate") INT unary
             | ("add" | "sub" | "mul" | "mulplus" | "eq") unary unary
             | atom
    atom    := "(" poly ")" [ "/" "(" poly ")" ] | INT | matrix | "(" expr ")"
    matrix  := "[" "[" entries "]" { "," "[" entries "]" } "]"
    poly    := ["+" | "-"] term { ("+" | "-") term }
    term    := factor { factor }
    factor  := ( INT | letters | "(" poly ")" ) [ "^" INT ]

Inside a poly each letter is a variable: ``r`` is the Witt variable and any
other letter must be a variable of the coefficient ring.  Products inside a
poly are written by juxtaposition ("2tr", "(1 - r)(1 + r)"); "*" always means
the Witt product of two operands.  Error offsets are
byte offsets into the UTF-8 encoded source.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .endo import (
    ZT,
    EndoClass,
    OperationElement,
    class_neg,
    class_of,
    dsum,
    frobenius_on_class,
    frobenius_op,
    identity_op,
    multiple_op,
    tensor,
    verschiebung_on_class,
    verschiebung_op,
)
from .errors import DomainError, ParseError
from .matrix import Matrix
from .poly import Polynomial
from .rings import Ring, p_add, p_mul, p_neg, p_trim
from .witt import (
    GhostVector,
    TruncatedWitt,
    WittFraction,
    frobenius,
    ghost,
    invol,
    lambda_op,
    trunc_add,
    trunc_mul,
    trunc_neg,
    truncate,
    verschiebung,
    witt_add,
    witt_eq,
    witt_mul,
    witt_mul_plus,
    witt_neg,
    witt_sub,
)

UNARY = ("neg", "invol")
INDEXED = ("frob", "ver", "lambda", "ghost", "truncate")
BINARY = ("add", "sub", "mul", "mulplus", "eq")
KEYWORDS = UNARY + INDEXED + BINARY
SYMBOLS = {"+": "add", "-": "sub", "*": "mul", "==": "eq"}


# ---------------------------------------------------------------------------
# tokens
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # "int", "word", "sym", "end"
    text: str
    offset: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    i, n = 0, len(source)
    byte = 0  # byte offset of source[i]
    while i < n:
        ch = source[i]
        if ch.isspace():
            byte += len(ch.encode())
            i += 1
            continue
        start, start_byte = i, byte
        if ch.isdigit():
            while i < n and source[i].isdigit():
                i += 1
            kind = "int"
        elif ch.isascii() and ch.isalpha():
            while i < n and source[i].isascii() and source[i].isalpha():
                i += 1
            kind = "word"
        elif source.startswith("==", i):
            i += 2
            kind = "sym"
        elif ch in "()[],/+-*^":
            i += 1
            kind = "sym"
        else:
            raise ParseError(f"unexpected character {ch!r}", byte)
        text = source[start:i]
        byte = start_byte + len(text.encode())
        tokens.append(Token(kind, text, start_byte))
    tokens.append(Token("end", "", byte))
    return tokens


# ---------------------------------------------------------------------------
# syntax tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyAtom:
    num: Polynomial
    den: Polynomial | None = None
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MatrixAtom:
    matrix: Matrix
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Unary:
    op: str
    operand: object
    index: int | None = None


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object


Expression = PolyAtom | MatrixAtom | Unary | Binary


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class Parser:
    def __init__(self, source: str, ring: Ring):
        self.source = source
        self.ring = ring
        self.tokens = tokenize(source)
        self.pos = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def at(self, text) -> bool:
        return self.tok.kind in ("sym", "word") and self.tok.text == text

    def expect(self, text) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}", [text])
        return self.advance()

    def fail(self, message, expected=()):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.offset, expected)

    # expressions
    def parse_expression(self):
        e = self.expr()
        if self.tok.kind != "end":
            self.fail("unexpected trailing input", ["end of input"])
        return e

    def expr(self):
        left = self.sum()
        if self.at("==") or self.at("eq"):
            self.advance()
            left = Binary("eq", left, self.sum())
        return left

    def sum(self):
        left = self.product()
        while any(self.at(s) for s in ("+", "-", "add", "sub")):
            op = SYMBOLS.get(self.advance().text) or self.tokens[self.pos - 1].text
            left = Binary(op, left, self.product())
        return left

    def product(self):
        left = self.unary()
        while any(self.at(s) for s in ("*", "mul", "mulplus")):
            op = SYMBOLS.get(self.advance().text) or self.tokens[self.pos - 1].text
            left = Binary(op, left, self.unary())
        return left

    def index(self) -> int:
        if self.tok.kind != "int":
            self.fail("expected an integer index", ["integer"])
        return int(self.advance().text)

    def unary(self):
        t = self.tok
        if t.kind == "word" and t.text in UNARY:
            self.advance()
            return Unary(t.text, self.unary())
        if t.kind == "word" and t.text in INDEXED:
            self.advance()
            k = self.index()
            return Unary(t.text, self.unary(), k)
        if t.kind == "word" and t.text in BINARY:
            self.advance()
            a = self.unary()
            return Binary(t.text, a, self.unary())
        return self.atom()

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            if self.at("^") or self.tok.kind == "word" and self.tok.text not in KEYWORDS:
                self.fail("polynomial literals must be parenthesized, as in (1 - 2r)", ["("])
            num = p_trim(self.ring, (self.ring.from_int(int(t.text)),))
            return self._poly_atom(num, None, t.offset)
        if self.at("["):
            return MatrixAtom(self.matrix(), t.offset)
        if self.at("("):
            nxt = self.peek()
            if nxt.kind == "word" and nxt.text in KEYWORDS or nxt.text == "[":
                return self.group()
            save = self.pos
            try:
                num = self.paren_poly()
            except ParseError:
                if nxt.text != "(":
                    raise
                self.pos = save
                return self.group()
            den = None
            if self.at("/"):
                self.advance()
                if not self.at("("):
                    self.fail("expected a parenthesized denominator", ["("])
                den = self.paren_poly()
            return self._poly_atom(num, den, t.offset)
        self.fail("expected an operand", ["(", "[", "integer"] + list(KEYWORDS))

    def group(self):
        self.expect("(")
        e = self.expr()
        self.expect(")")
        return e

    def _poly_atom(self, num, den, offset):
        R = self.ring
        for part in (num, den):
            if part is not None and (not part or part[0] != R.one):
                shown = format_r_poly(R, part)
                raise DomainError(f"constant term must be 1 in ({shown}) at offset {offset}")
        return PolyAtom(Polynomial(R, num), Polynomial(R, den) if den is not None else None, offset)

    # polynomial literals: payload tuples of ring elements, ascending in r
    def paren_poly(self):
        self.expect("(")
        p = self.poly(allow_r=True)
        self.expect(")")
        return p

    def poly(self, allow_r):
        R = self.ring
        negate = False
        if self.at("+") or self.at("-"):
            negate = self.advance().text == "-"
        acc = self.term(allow_r)
        if negate:
            acc = p_neg(R, acc)
        while self.at("+") or self.at("-"):
            sign = self.advance().text
            t = self.term(allow_r)
            acc = p_add(R, acc, t if sign == "+" else p_neg(R, t))
        return acc

    def _starts_factor(self):
        return self.tok.kind in ("int", "word") and self.tok.text not in KEYWORDS or self.at("(")

    def term(self, allow_r):
        acc = self.factor(allow_r)
        while self._starts_factor():
            acc = p_mul(self.ring, acc, self.factor(allow_r))
        return acc

    def factor(self, allow_r):
        R = self.ring
        t = self.tok
        if t.kind == "int":
            self.advance()
            base = p_trim(R, (R.from_int(int(t.text)),))
            return self._power(base)
        if t.kind == "word" and t.text not in KEYWORDS:
            self.advance()
            acc = (R.one,)
            letters = t.text
            for k, v in enumerate(letters):
                val = self._variable(v, allow_r, t.offset + k)
                if k == len(letters) - 1:
                    val = self._power(val)
                acc = p_mul(R, acc, val)
            return acc
        if self.at("("):
            self.advance()
            inner = self.poly(allow_r)
            self.expect(")")
            return self._power(inner)
        self.fail("expected a coefficient, variable or '('", ["(", "integer", "variable"])

    def _power(self, base):
        if not self.at("^"):
            return base
        self.advance()
        e = self.index()
        out = (self.ring.one,)
        for _ in range(e):
            out = p_mul(self.ring, out, base)
        return p_trim(self.ring, out)

    def _variable(self, v, allow_r, offset):
        R = self.ring
        if v == "r":
            if not allow_r:
                raise DomainError(f"the Witt variable r cannot appear in a matrix entry (offset {offset})")
            return (R.zero, R.one)
        if v not in R.variables():
            fix = f"use a ring selector such as {R}[{v}]" if R.variables() == () else \
                f"the ring {R} has variables {', '.join(R.variables())}"
            raise DomainError(f"variable {v!r} at offset {offset} is not in {R}: {fix}")
        return (R.variable(v),)

    # matrices
    def matrix(self) -> Matrix:
        self.expect("[")
        rows = [self.matrix_row()]
        ncols = len(rows[0])
        while self.at(","):
            self.advance()
            start = self.tok.offset
            rows.append(self.matrix_row())
            if len(rows[-1]) != ncols:
                raise ParseError(f"ragged matrix literal: row of length {len(rows[-1])}, expected {ncols}", start)
        self.expect("]")
        return Matrix.from_payload_rows(self.ring, rows, ncols)

    def matrix_row(self) -> list:
        self.expect("[")
        if self.at("]"):
            self.fail("empty matrix row", ["entry"])
        row = [self.entry()]
        while self.at(","):
            self.advance()
            row.append(self.entry())
        self.expect("]")
        return row

    def entry(self):
        p = self.poly(allow_r=False)
        return p[0] if p else self.ring.zero


def parse(source: str, ring: Ring):
    return Parser(source, ring).parse_expression()


def parse_matrix(source: str, ring: Ring) -> Matrix:
    p = Parser(source, ring)
    m = p.matrix()
    if p.tok.kind != "end":
        p.fail("unexpected trailing input", ["end of input"])
    return m


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------

def format_r_poly(R: Ring, coeffs) -> str:
    return str(Polynomial(R, tuple(coeffs)))


def format_matrix(m: Matrix) -> str:
    return str(m)


def to_source(e) -> str:
    """Fully prefix rendering; compound operands are parenthesized."""
    if isinstance(e, PolyAtom):
        s = f"({e.num})"
        return s + f"/({e.den})" if e.den is not None else s
    if isinstance(e, MatrixAtom):
        return format_matrix(e.matrix)
    if isinstance(e, Unary):
        head = e.op if e.index is None else f"{e.op} {e.index}"
        return f"{head} {_operand(e.operand)}"
    if isinstance(e, Binary):
        return f"{e.op} {_operand(e.left)} {_operand(e.right)}"
    raise TypeError(f"not an expression: {e!r}")


def _operand(e) -> str:
    s = to_source(e)
    return s if isinstance(e, (PolyAtom, MatrixAtom)) else f"({s})"


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _kind(v) -> str:
    return {
        WittFraction: "Witt vector",
        EndoClass: "endomorphism class",
        GhostVector: "ghost vector",
        TruncatedWitt: "truncated Witt vector",
        bool: "truth value",
    }.get(type(v), type(v).__name__)


def _unsupported(op, *vals):
    kinds = " and ".join(_kind(v) for v in vals)
    return DomainError(f"'{op}' is not defined for {kinds}")


def evaluate(e):
    if isinstance(e, PolyAtom):
        return WittFraction.from_polys(e.num, e.den)
    if isinstance(e, MatrixAtom):
        return class_of(e.matrix)
    if isinstance(e, Unary):
        return _eval_unary(e.op, e.index, evaluate(e.operand))
    if isinstance(e, Binary):
        return _eval_binary(e.op, evaluate(e.left), evaluate(e.right))
    raise TypeError(f"not an expression: {e!r}")


def _positive(op, k):
    if k < 1:
        raise DomainError(f"{op} index must be positive, got {k}")


def _eval_unary(op, k, x):
    if isinstance(x, WittFraction):
        if op == "neg":
            return witt_neg(x)
        if op == "invol":
            return invol(x)
        if op == "frob":
            _positive(op, k)
            return frobenius(k, x)
        if op == "ver":
            _positive(op, k)
            return verschiebung(k, x)
        if op == "lambda":
            return lambda_op(k, x)
        if op == "ghost":
            return ghost(k, x)
        if op == "truncate":
            return truncate(k, x)
    if isinstance(x, EndoClass):
        if op == "neg":
            return class_neg(x)
        if op == "frob":
            _positive(op, k)
            return frobenius_on_class(k, x)
        if op == "ver":
            _positive(op, k)
            return verschiebung_on_class(k, x)
    if isinstance(x, GhostVector) and op == "neg":
        return x.scale(-1)
    if isinstance(x, TruncatedWitt) and op == "neg":
        return trunc_neg(x)
    raise _unsupported(op, x)


def _eval_binary(op, x, y):
    if type(x) is not type(y):
        raise _unsupported(op, x, y)
    if isinstance(x, WittFraction):
        fn = {"add": witt_add, "sub": witt_sub, "mul": witt_mul, "mulplus": witt_mul_plus, "eq": witt_eq}[op]
        return fn(x, y)
    if isinstance(x, EndoClass):
        if op == "add":
            return dsum(x, y)
        if op == "sub":
            return dsum(x, class_neg(y))
        if op in ("mul", "mulplus"):
            return tensor(x, y)
        if op == "eq":
            return x == y
    if isinstance(x, GhostVector):
        if op == "add":
            return x + y
        if op == "sub":
            return x + y.scale(-1)
        if op == "mul":
            return x * y
        if op == "eq":
            return x == y
    if isinstance(x, TruncatedWitt):
        if op == "add":
            return trunc_add(x, y)
        if op == "sub":
            return trunc_add(x, trunc_neg(y))
        if op == "mul":
            return trunc_mul(x, y)
        if op == "eq":
            return x == y
    raise _unsupported(op, x, y)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _cells(R: Ring, coeffs) -> str:
    return " ".join(R.fmt(c).replace(" ", "") for c in coeffs)


def render(value, structured: bool = False) -> str:
    if isinstance(value, bool):
        text = "true" if value else "false"
        return f"kind bool\nvalue {text}" if structured else text
    if isinstance(value, WittFraction):
        if not structured:
            return str(value)
        R = value.ring
        return f"kind witt\nnum {_cells(R, value.num)}\nden {_cells(R, value.den)}"
    if isinstance(value, EndoClass):
        if not structured:
            return str(value)
        R, w = value.ring, value.witt
        return f"kind class\nrank {value.rank}\nnum {_cells(R, w.num)}\nden {_cells(R, w.den)}"
    if isinstance(value, GhostVector):
        if not structured:
            return str(value)
        return f"kind ghost\nvalues {_cells(value.ring, value.components)}"
    if isinstance(value, TruncatedWitt):
        if not structured:
            return str(value)
        return f"kind truncated\ncoeffs {_cells(value.ring, value.coeffs)}"
    raise TypeError(f"cannot render {value!r}")


# ---------------------------------------------------------------------------
# operation expressions (the --op argument of `apply`)
# ---------------------------------------------------------------------------
#
#   op      := opterm { ("+" | "-") opterm }
#   opterm  := "id" | INT | "frob" INT | "ver" INT | matrix over Z[t]
#            | "neg" opterm | ("add" | "sub" | "compose") opterm opterm
#            | "(" op ")"
#
# "compose a b" is a after b; an integer k stands for k copies of the identity.

OP_WORDS = ("id", "frob", "ver", "neg", "add", "sub", "compose")


class OperationParser(Parser):
    def __init__(self, source: str):
        super().__init__(source, ZT)

    def parse_operation(self):
        op = self.op()
        if self.tok.kind != "end":
            self.fail("unexpected trailing input", ["end of input"])
        return op

    def op(self):
        left = self.opterm()
        while self.at("+") or self.at("-"):
            sign = self.advance().text
            right = self.opterm()
            left = left + right if sign == "+" else left - right
        return left

    def opterm(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return multiple_op(int(t.text))
        if t.kind == "word":
            if t.text == "id":
                self.advance()
                return identity_op()
            if t.text in ("frob", "ver"):
                self.advance()
                k = self.index()
                _positive(t.text, k)
                return frobenius_op(k) if t.text == "frob" else verschiebung_op(k)
            if t.text == "neg":
                self.advance()
                return -self.opterm()
            if t.text in ("add", "sub", "compose"):
                self.advance()
                a = self.opterm()
                b = self.opterm()
                if t.text == "compose":
                    return a.compose(b)
                return a + b if t.text == "add" else a - b
        if self.at("["):
            m = self.matrix()
            m.require_square()
            return OperationElement((m,))
        if self.at("("):
            self.advance()
            inner = self.op()
            self.expect(")")
            return inner
        self.fail("expected an operation", ["(", "[", "integer"] + list(OP_WORDS))


def parse_operation(source: str):
    return OperationParser(source).parse_operation()
