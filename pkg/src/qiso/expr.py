"""Text grammar for algebra elements.

Expressions support ``+``/``-``, products by juxtaposition or ``*``,
integer powers ``^n`` (negative powers of a generator mean powers of its
adjoint), trailing ``*`` or ``'`` for adjoints (a ``*`` directly attached to
an identifier or closing parenthesis is an adjoint; a spaced ``*`` is a
product), scalar factors ``e(r)`` and ``e(s*t)`` with rational r, s and the
formal parameter ``t``, rational constants, parentheses, and ``(x)`` as the
tensor separator.

Example: ``A1* A1 + B1* B1 - 1`` or ``U (x) A1 + e(-t) * V (x) B1``.
"""

from __future__ import annotations

from fractions import Fraction

from .freealg import Element, tensor
from .scalars import Scalar, ThetaLin

Frac = Fraction


class ParseError(ValueError):
    pass


# -- tokenizer ---------------------------------------------------------------

_SYMBOLS = "+-*^/()'"


def _tokenize(text: str):
    toks = []  # (kind, value); kinds: IDENT INT SYM ADJ TENSOR
    i = 0
    n = len(text)
    prev_end = -2  # end index of previous token
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("(x)", i):
            toks.append(("TENSOR", "(x)"))
            prev_end = i + 3
            i += 3
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("IDENT", text[i:j]))
            prev_end = j
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("INT", int(text[i:j])))
            prev_end = j
            i = j
            continue
        if ch == "*":
            attached = (
                i == prev_end
                and toks
                and (toks[-1][0] in ("IDENT", "ADJ") or toks[-1] == ("SYM", ")"))
            )
            toks.append(("ADJ" if attached else "SYM", "*"))
            prev_end = i + 1
            i += 1
            continue
        if ch == "'":
            toks.append(("ADJ", "'"))
            prev_end = i + 1
            i += 1
            continue
        if ch in _SYMBOLS:
            toks.append(("SYM", ch))
            prev_end = i + 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    return toks


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, toks, algebras, theta):
        self.toks = toks
        self.pos = 0
        self.algebras = algebras
        self.theta = theta

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.pos += 1
        return t

    def expect(self, kind, value=None):
        k, v = self.take()
        if k != kind or (value is not None and v != value):
            raise ParseError(f"expected {value or kind}, got {v!r}")
        return v

    # expr := ['-'] tensterm (('+'|'-') tensterm)*
    def parse_expr(self):
        neg = False
        if self.peek() == ("SYM", "-"):
            self.take()
            neg = True
        acc = self.parse_tensterm()
        if neg:
            acc = _negate(acc)
        while self.peek() in (("SYM", "+"), ("SYM", "-")):
            _, op = self.take()
            term = self.parse_tensterm()
            acc = _combine(acc, term, op, self.algebras)
        return acc

    # tensterm := product ((x) product)*
    def parse_tensterm(self):
        parts = [self.parse_product()]
        while self.peek()[0] == "TENSOR":
            self.take()
            parts.append(self.parse_product())
        if len(parts) == 1:
            return parts[0]
        if len(parts) != len(self.algebras):
            raise ParseError(
                f"{len(parts)} tensor factors for {len(self.algebras)} algebras"
            )
        elems = [
            _as_element(p, alg) for p, alg in zip(parts, self.algebras)
        ]
        return tensor(*elems)

    # product := factor+   ('*' as explicit separator also allowed)
    def parse_product(self):
        acc = None
        while True:
            k, v = self.peek()
            if k == "SYM" and v == "*":
                self.take()
                continue
            if k in ("IDENT", "INT") or (k == "SYM" and v == "("):
                f = self.parse_factor()
                acc = f if acc is None else _mul(acc, f)
            else:
                break
        if acc is None:
            raise ParseError(f"empty product near token {self.peek()!r}")
        return acc

    def parse_factor(self):
        a = self.parse_atom()
        while True:
            k, v = self.peek()
            if k == "ADJ":
                self.take()
                a = _star(a)
            elif k == "SYM" and v == "^":
                self.take()
                sign = 1
                if self.peek() == ("SYM", "-"):
                    self.take()
                    sign = -1
                p = self.expect("INT") * sign
                a = _power(a, p)
            else:
                return a

    def parse_atom(self):
        k, v = self.take()
        if k == "INT":
            if self.peek() == ("SYM", "/"):
                self.take()
                den = self.expect("INT")
                return Scalar.rational(Frac(v, den))
            return Scalar.rational(v)
        if k == "IDENT":
            if v == "e" and self.peek() == ("SYM", "("):
                self.take()
                lin = self.parse_exponent()
                self.expect("SYM", ")")
                return self._exp_scalar(lin)
            for alg in self.algebras:
                if v in alg.index:
                    return alg.gen(v)
            raise ParseError(f"unknown generator {v!r}")
        if k == "SYM" and v == "(":
            e = self.parse_expr()
            self.expect("SYM", ")")
            return e
        raise ParseError(f"unexpected token {v!r}")

    # exponent := ['-'] item (('+'|'-') item)*;  item := rat ['*' t] | t
    def parse_exponent(self):
        acc = ThetaLin(0, 0)
        sign = 1
        if self.peek() == ("SYM", "-"):
            self.take()
            sign = -1
        while True:
            acc = acc + self.parse_exp_item() * sign
            k, v = self.peek()
            if k == "SYM" and v in "+-":
                self.take()
                sign = 1 if v == "+" else -1
            else:
                return acc

    def parse_exp_item(self):
        k, v = self.take()
        if k == "IDENT" and v == "t":
            return ThetaLin(0, 1)
        if k == "INT":
            q = Frac(v)
            if self.peek() == ("SYM", "/"):
                self.take()
                q = Frac(v, self.expect("INT"))
            if self.peek() == ("SYM", "*"):
                self.take()
                self.expect("IDENT", "t")
                return ThetaLin(0, q)
            return ThetaLin(q, 0)
        raise ParseError(f"bad exponent term {v!r}")

    def _exp_scalar(self, lin: ThetaLin) -> Scalar:
        if self.theta is not None and lin.coef:
            return Scalar.root(lin.const + lin.coef * self.theta)
        return Scalar.exponential(lin)


def _negate(x):
    return -x


def _combine(a, b, op, algebras):
    if op == "-":
        b = _negate(b)
    return a + b


def _star(x):
    if isinstance(x, Scalar):
        return x.conj()
    return x.star()


def _power(x, p: int):
    if isinstance(x, Scalar):
        return x**p
    if p < 0:
        return x.star() ** (-p)
    return x**p


def _mul(a, b):
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        return a * b
    if isinstance(a, Scalar):
        return b * a  # scalars commute
    return a * b


def _as_element(x, alg) -> Element:
    if isinstance(x, Scalar):
        return Element.unit(alg) * x
    return x


def parse(text: str, algebras, theta: Fraction | None = None):
    """Parse an expression over one or more algebras.

    ``algebras`` is a single free algebra or a list (tensor factors, in
    order).  With ``theta`` set, occurrences of the formal parameter inside
    e(..) are specialised to the given rational.  Returns an Element, or a
    Scalar for purely scalar expressions.
    """
    if not isinstance(algebras, (list, tuple)):
        algebras = [algebras]
    p = _Parser(_tokenize(text), list(algebras), theta)
    out = p.parse_expr()
    if p.pos != len(p.toks):
        raise ParseError(f"trailing input at token {p.peek()!r}")
    return out


def parse_element(text: str, algebras, theta: Fraction | None = None) -> Element:
    out = parse(text, algebras, theta)
    if isinstance(out, Scalar):
        algs = algebras if isinstance(algebras, (list, tuple)) else [algebras]
        if len(algs) > 1:
            return tensor(*[Element.unit(a) for a in algs]) * out
        return Element.unit(algs[0]) * out
    return out
