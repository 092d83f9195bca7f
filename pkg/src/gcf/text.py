"""Text formats: field specs, polynomials, field elements and matrix files.

Field spec::

    GF(p) | GF(p^k) | GF(p^k;mod=<polynomial in t>)

Polynomials are sums of terms ``c``, ``c*X^e``, ``X^e`` or ``X``.  Over an
extension field a coefficient is a parenthesized polynomial in the generator
``t``, e.g. ``(t+1)*X^2+t``.  The parser also accepts ``-`` and nested
parentheses; the printer only emits the plain form above.
"""

from __future__ import annotations

import re

from .field import Field, FieldError

__all__ = [
    "ParseError",
    "parse_field",
    "format_field",
    "parse_poly",
    "format_poly",
    "parse_element",
    "format_element",
    "parse_matrix",
    "format_matrix",
]


class ParseError(ValueError):
    pass


_FIELD_RE = re.compile(r"^GF\(\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:;\s*mod\s*=\s*(.+?))?\s*\)$")


def parse_field(text: str) -> Field:
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad field spec {text!r}; expected GF(p), GF(p^k) or GF(p^k;mod=...)")
    p = int(m.group(1))
    k = int(m.group(2) or 1)
    modulus = None
    try:
        if m.group(3):
            prime = Field(p)
            mod = _Parser(m.group(3), prime, var="t").parse()
            modulus = mod.coeffs
        return Field(p, k, modulus)
    except FieldError as exc:
        raise ParseError(str(exc)) from exc


def format_field(F: Field) -> str:
    if F.k == 1:
        return f"GF({F.p})"
    from .field import least_irreducible

    if F.modulus == least_irreducible(F.p, F.k):
        return f"GF({F.p}^{F.k})"
    from .poly import Poly

    mod = _format_terms(Poly(Field(F.p), F.modulus), "t")
    return f"GF({F.p}^{F.k};mod={mod})"


# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([Xt])|(\^)|([+\-*()]))")


class _Parser:
    """Recursive descent over ``expr := ['-'] term (('+'|'-') term)*``."""

    def __init__(self, text: str, field: Field, var: str = "X"):
        self.field = field
        self.var = var
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[str]:
        out = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos} in {text!r}")
            out.append(next(g for g in m.groups() if g is not None))
            pos = m.end()
        if not out:
            raise ParseError("empty polynomial")
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'}, got {tok!r}")
        self.pos += 1
        return tok

    def parse(self):
        val = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at token {self.peek()!r}")
        return val

    def expr(self):
        from .poly import Poly

        F = self.field
        total = Poly.zero(F)
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        while True:
            t = self.term()
            total = total + t if sign > 0 else total - t
            tok = self.peek()
            if tok == "+":
                sign = 1
            elif tok == "-":
                sign = -1
            else:
                return total
            self.take()

    def term(self):
        val = self.factor()
        while self.peek() in ("*", "(") or self.peek() in ("X", "t"):
            if self.peek() == "*":
                self.take()
            val = val * self.factor()
        return val

    def _exponent(self) -> int:
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"bad exponent {tok!r}")
            return int(tok)
        return 1

    def factor(self):
        from .poly import Poly

        F = self.field
        tok = self.take()
        if tok.isdigit():
            return Poly.const(F, F.scalar(int(tok)))
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val ** self._exponent()
        if tok == "X":
            if self.var != "X":
                raise ParseError("X not allowed here")
            return Poly.monomial(F, 1, self._exponent())
        if tok == "t":
            e = self._exponent()
            if self.var == "t":
                return Poly.monomial(F, 1, e)
            if F.k == 1:
                raise ParseError(f"generator t is not defined over {F}")
            return Poly.const(F, F.pow(F.from_vector([0, 1]), e))
        raise ParseError(f"unexpected token {tok!r}")


def parse_poly(text: str, field: Field):
    return _Parser(text, field).parse()


def parse_element(text: str, field: Field) -> int:
    val = _Parser(text, field).parse()
    if val.degree > 0:
        raise ParseError(f"{text!r} is not a field element")
    return val[0]


# ---------------------------------------------------------------------------


def _format_terms(poly, var: str) -> str:
    if not poly.coeffs:
        return "0"
    F = poly.field
    parts = []
    for e in range(poly.degree, -1, -1):
        c = poly.coeffs[e]
        if not c:
            continue
        mono = var if e == 1 else f"{var}^{e}"
        if e == 0:
            parts.append(format_element(c, F))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{format_element(c, F)}*{mono}")
    return "+".join(parts)


def format_element(a: int, field: Field) -> str:
    if field.k == 1 or a < field.p:
        return str(a)
    from .poly import Poly

    vec = field.vector(a)
    s = _format_terms(Poly(Field(field.p), vec), "t")
    nonzero = [c for c in vec if c]
    if len(nonzero) == 1 and nonzero[0] == 1:
        return s
    return f"({s})"


def format_poly(poly) -> str:
    return _format_terms(poly, "X")


# ---------------------------------------------------------------------------

_CELL_RE = re.compile(r"\([^()]*\)|[^\s()]+")


def parse_matrix(text: str):
    """Parse the matrix file format: field spec, size, then ``n`` rows of ``n`` entries."""
    from .matrix import Matrix

    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 2:
        raise ParseError("matrix file needs a field line and a size line")
    F = parse_field(lines[0])
    try:
        n = int(lines[1])
    except ValueError:
        raise ParseError(f"bad matrix size {lines[1]!r}") from None
    if n < 1:
        raise ParseError("matrix size must be positive")
    rows = lines[2:]
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}")
    entries = []
    for i, ln in enumerate(rows):
        cells = _CELL_RE.findall(ln)
        if len(cells) != n:
            raise ParseError(f"row {i + 1}: expected {n} entries, found {len(cells)}")
        entries.append([parse_element(c, F) for c in cells])
    return Matrix(F, entries)


def format_matrix(A) -> str:
    F = A.field
    cells = [[format_element(x, F) for x in row] for row in A.rows]
    lines = [format_field(F), str(A.n)]
    lines += [" ".join(row) for row in cells]
    return "\n".join(lines) + "\n"
