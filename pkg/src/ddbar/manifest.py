"""Line-oriented manifest language for CDBAs and their automorphisms.

Example (the Iwasawa manifold with its Z3 action)::

    manifold iwasawa
    field zeta 3
    gens 3
    del phi3 = -1 phi1^phi2
    action sigma: phi1 -> z phi1, phi2 -> z phi2, phi3 -> z^2 phi3

Statements: ``manifold NAME``, ``field zeta N`` (default 1, i.e. Q),
``gens N``, ``del phiK = EXPR``, ``delbar phiK = EXPR`` and
``action NAME: phiK -> EXPR, ...``. ``#`` starts a comment. ``field`` and
``gens`` must precede equations and actions; omitted equations are zero and
omitted action images are the identity.

In expressions a term is an optional coefficient followed by a wedge
monomial. Coefficients multiply rational literals (``3``, ``-1/2``), powers
of zeta (``z``, ``z^2``) and parenthesised sums (``(1 + z)``), optionally
joined by ``*``. Monomials are ``phi1^bphi2`` or the shorthand
``phi[1 ~2]``; a coefficient on its own is a multiple of the unit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import CyclotomicNumber
from .errors import BadCoefficient, ManifestSyntaxError, ParseError, UndeclaredGenerator
from .exterior import Form, wedge

__all__ = ["Manifest", "parse_manifest", "parse_expression"]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<arrow>->)|(?P<op>[-+*/^(),:=\[\]~]))")
_GEN = re.compile(r"(b?)phi(\d+)$")
_NAME = re.compile(r"[A-Za-z0-9_.\-]+$")


@dataclass
class Token:
    kind: str  # num, ident, op, end
    text: str
    col: int  # 1-based


def tokenize(text: str, line: int) -> list[Token]:
    tokens, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ManifestSyntaxError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        value = m.group(kind)
        col = m.start(kind) + 1
        if kind == "arrow":
            kind = "op"
        tokens.append(Token(kind, value, col))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token], line: int):
        self.tokens = tokens
        self.i = 0
        self.line = line

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "end":
            self.i += 1
        return t

    def at(self, text) -> bool:
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def error(self, message, expected=(), tok=None):
        tok = tok or self.tok
        found = "end of line" if tok.kind == "end" else repr(tok.text)
        return ManifestSyntaxError(f"{message}, found {found}", self.line, tok.col, expected)

    def expect(self, text, what=None):
        if not self.at(text):
            raise self.error(f"expected {what or repr(text)}", expected=(repr(text),))
        return self.advance()

    def expect_int(self, what="integer") -> int:
        if self.tok.kind != "num":
            raise self.error(f"expected {what}", expected=(what,))
        return int(self.advance().text)

    def expect_end(self):
        if self.tok.kind != "end":
            raise self.error("unexpected trailing input", expected=("end of line",))


class _ExprParser:
    """Recursive descent over one line's tokens, producing a Form."""

    def __init__(self, cur: _Cursor, n: int, order: int):
        self.cur = cur
        self.n = n
        self.order = order

    # coefficients

    def _is_factor_start(self, t: Token | None = None) -> bool:
        t = t or self.cur.tok
        return t.kind == "num" or (t.kind == "ident" and t.text == "z") or (t.kind == "op" and t.text == "(")

    def _factor(self) -> CyclotomicNumber:
        cur = self.cur
        t = cur.tok
        if t.kind == "num":
            cur.advance()
            num = int(t.text)
            if cur.at("/"):
                cur.advance()
                if cur.tok.kind != "num":
                    raise BadCoefficient(f"malformed rational literal after {t.text}/", cur.line, cur.tok.col)
                den = int(cur.advance().text)
                if den == 0:
                    raise BadCoefficient(f"zero denominator in {num}/0", cur.line, t.col)
                return CyclotomicNumber.from_rational(self.order, Fraction(num, den))
            return CyclotomicNumber.from_rational(self.order, num)
        if t.kind == "ident" and t.text == "z":
            cur.advance()
            power = 1
            if cur.at("^"):
                cur.advance()
                sign = 1
                if cur.at("-"):
                    cur.advance()
                    sign = -1
                if cur.tok.kind != "num":
                    raise BadCoefficient("expected an integer exponent after z^", cur.line, cur.tok.col)
                power = sign * int(cur.advance().text)
            return CyclotomicNumber.zeta(self.order, power)
        if cur.at("("):
            cur.advance()
            value = self._coeff_sum()
            cur.expect(")")
            return value
        raise cur.error("expected a coefficient", expected=("number", "z", "("))

    def _coeff_product(self) -> CyclotomicNumber:
        value = self._factor()
        while True:
            if self.cur.at("*") and self._is_factor_start(self.cur.peek()):
                self.cur.advance()
                value = value * self._factor()
            elif self._is_factor_start():
                value = value * self._factor()
            else:
                return value

    def _coeff_sum(self) -> CyclotomicNumber:
        sign = self._sign()
        value = self._coeff_product() * sign
        while self.cur.at("+") or self.cur.at("-"):
            s = self._sign()
            value = value + self._coeff_product() * s
        return value

    def _sign(self) -> int:
        sign = 1
        while self.cur.at("+") or self.cur.at("-"):
            if self.cur.advance().text == "-":
                sign = -sign
        return sign

    # monomials

    def _check_index(self, idx: int, tok: Token):
        if not 1 <= idx <= self.n:
            raise UndeclaredGenerator(
                f"generator {tok.text!r} is not declared (gens {self.n})", self.cur.line, tok.col)

    def _is_atom_start(self) -> bool:
        t = self.cur.tok
        return t.kind == "ident" and (t.text == "phi" or _GEN.match(t.text) is not None)

    def _atom(self) -> Form:
        cur = self.cur
        t = cur.advance()
        if t.text == "phi":
            cur.expect("[", "'[' after phi")
            holo, anti = [], []
            repeated = False
            while not cur.at("]"):
                bar = False
                if cur.at("~"):
                    cur.advance()
                    bar = True
                itok = cur.tok
                if itok.kind != "num":
                    raise cur.error("expected a generator index", expected=("integer", "~", "]"))
                idx = int(cur.advance().text)
                self._check_index(idx, itok)
                target = anti if bar else holo
                repeated = repeated or idx in target
                target.append(idx)
            cur.advance()
            if repeated:
                return Form.zero(self.n, self.order)
            f = Form.unit(self.n, self.order)
            for i in holo:
                f = wedge(f, Form.phi(self.n, self.order, i))
            for j in anti:
                f = wedge(f, Form.bphi(self.n, self.order, j))
            return f
        m = _GEN.match(t.text)
        idx = int(m.group(2))
        self._check_index(idx, t)
        if m.group(1):
            return Form.bphi(self.n, self.order, idx)
        return Form.phi(self.n, self.order, idx)

    def _monomial(self) -> Form:
        f = self._atom()
        while self.cur.at("^"):
            self.cur.advance()
            if not self._is_atom_start():
                raise self.cur.error("expected a generator after '^'", expected=("phiK", "bphiK", "phi[...]"))
            f = wedge(f, self._atom())
        return f

    def term(self) -> Form:
        coeff = None
        if self._is_factor_start():
            coeff = self._coeff_product()
            if self.cur.at("*"):
                self.cur.advance()
        if self._is_atom_start():
            mono = self._monomial()
        elif coeff is not None:
            mono = Form.unit(self.n, self.order)
        else:
            raise self.cur.error("expected a term", expected=("coefficient", "phiK", "bphiK", "phi[...]"))
        return mono if coeff is None else mono.scale(coeff)

    def expr(self) -> Form:
        sign = self._sign()
        total = self.term().scale(sign)
        while self.cur.at("+") or self.cur.at("-"):
            s = self._sign()
            total = total + self.term().scale(s)
        return total


def parse_expression(text: str, n: int, order: int, line: int = 1) -> Form:
    """Parse a standalone form expression such as ``phi[1 2 ~3] - 1/2 phi[3 ~1 ~2]``."""
    cur = _Cursor(tokenize(text, line), line)
    form = _ExprParser(cur, n, order).expr()
    cur.expect_end()
    return form


@dataclass
class ActionSpec:
    name: str
    images: list[Form]
    line: int = 0


@dataclass
class Manifest:
    name: str = "unnamed"
    field_order: int = 1
    n: int = 0
    del_eqs: dict[int, Form] = field(default_factory=dict)
    delbar_eqs: dict[int, Form] = field(default_factory=dict)
    actions: dict[str, ActionSpec] = field(default_factory=dict)


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_manifest(text: str) -> Manifest:
    man = Manifest()
    gens_seen = field_seen = name_seen = False
    body_started = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        # the manifold name is free text, so only its keyword goes through the tokenizer
        stripped = line.lstrip()
        if stripped.split(None, 1)[0] == "manifold":
            head_text = line[:len(line) - len(stripped) + len("manifold")]
            cur = _Cursor(tokenize(head_text, lineno), lineno)
        else:
            cur = _Cursor(tokenize(line, lineno), lineno)
        head = cur.tok
        if head.kind != "ident":
            raise cur.error("expected a statement keyword",
                            expected=("manifold", "field", "gens", "del", "delbar", "action"))
        kw = head.text
        cur.advance()
        if kw == "manifold":
            if name_seen:
                raise ManifestSyntaxError("duplicate 'manifold' header", lineno, head.col)
            rest = line[head.col - 1 + len(kw):].strip()
            if not _NAME.match(rest):
                raise ManifestSyntaxError("expected a manifold name", lineno, head.col + len(kw) + 1,
                                          expected=("NAME",))
            man.name = rest
            name_seen = True
        elif kw == "field":
            if field_seen or body_started:
                raise ManifestSyntaxError(
                    "'field' must appear once, before equations and actions", lineno, head.col)
            cur.expect("zeta", "'zeta'")
            tok = cur.tok
            order = cur.expect_int("field order")
            if order < 1:
                raise ManifestSyntaxError("field order must be positive", lineno, tok.col)
            man.field_order = order
            field_seen = True
            cur.expect_end()
        elif kw == "gens":
            if gens_seen or body_started:
                raise ManifestSyntaxError(
                    "'gens' must appear once, before equations and actions", lineno, head.col)
            man.n = cur.expect_int("generator count")
            gens_seen = True
            cur.expect_end()
        elif kw in ("del", "delbar"):
            if not gens_seen:
                raise ManifestSyntaxError("'gens' must be declared before equations", lineno, head.col)
            body_started = True
            gtok = cur.tok
            m = _GEN.match(gtok.text) if gtok.kind == "ident" else None
            if not m or m.group(1):
                raise cur.error("expected a holomorphic generator", expected=("phiK",))
            idx = int(m.group(2))
            if not 1 <= idx <= man.n:
                raise UndeclaredGenerator(
                    f"generator {gtok.text!r} is not declared (gens {man.n})", lineno, gtok.col)
            cur.advance()
            cur.expect("=")
            form = _ExprParser(cur, man.n, man.field_order).expr()
            cur.expect_end()
            eqs = man.del_eqs if kw == "del" else man.delbar_eqs
            if idx in eqs:
                raise ManifestSyntaxError(f"duplicate equation for {kw} phi{idx}", lineno, head.col)
            eqs[idx] = form
        elif kw == "action":
            if not gens_seen:
                raise ManifestSyntaxError("'gens' must be declared before actions", lineno, head.col)
            body_started = True
            if cur.tok.kind != "ident":
                raise cur.error("expected an action name", expected=("NAME",))
            name_tok = cur.advance()
            if name_tok.text in man.actions:
                raise ManifestSyntaxError(f"duplicate action {name_tok.text!r}", lineno, name_tok.col)
            cur.expect(":")
            images: dict[int, Form] = {}
            while True:
                gtok = cur.tok
                m = _GEN.match(gtok.text) if gtok.kind == "ident" else None
                if not m or m.group(1):
                    raise cur.error("expected a holomorphic generator", expected=("phiK",))
                idx = int(m.group(2))
                if not 1 <= idx <= man.n:
                    raise UndeclaredGenerator(
                        f"generator {gtok.text!r} is not declared (gens {man.n})", lineno, gtok.col)
                if idx in images:
                    raise ManifestSyntaxError(f"phi{idx} mapped twice", lineno, gtok.col)
                cur.advance()
                cur.expect("->")
                images[idx] = _ExprParser(cur, man.n, man.field_order).expr()
                if cur.at(","):
                    cur.advance()
                    continue
                cur.expect_end()
                break
            full = [images.get(i, Form.phi(man.n, man.field_order, i)) for i in range(1, man.n + 1)]
            man.actions[name_tok.text] = ActionSpec(name_tok.text, full, lineno)
        else:
            raise ManifestSyntaxError(
                f"unknown statement {kw!r}", lineno, head.col,
                expected=("manifold", "field", "gens", "del", "delbar", "action"))
    if not gens_seen:
        raise ParseError("manifest declares no 'gens'")
    return man
