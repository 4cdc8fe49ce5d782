"""Parsing and formatting of chain expressions.

Grammar:
    chain  := [sign] term ((\'+\'|\'-\') term)*
    term   := [coeff [\'*\']] factor+
    coeff  := int [\'/\' int]
    factor := letters | \'[\' word \',\' word \']\' | factor \'^\' int

Lowercase letters are the generators a..z in order, uppercase letters
their inverses; a letters run is a single factor, so "ab^2" means
(ab)^2.  "[u,v]" expands to u v u^-1 v^-1.  Parsed chains are returned
in canonical form; the ambient rank is the largest generator mentioned.
"""

from dataclasses import dataclass

from .errors import ChainSyntaxError
from .freegroup import (Chain, ChainTerm, Word, canonicalize, letter_from_char,
                        letter_to_char, reduce_letters)
from .rational import QQ, qq

_SYMBOLS = "+-*/[],^"


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "letters", or one of the symbol characters
    text: str
    pos: int


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("num", text[i:j], i))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            tokens.append(Token("letters", text[i:j], i))
            i = j
        elif ch in _SYMBOLS:
            tokens.append(Token(ch, ch, i))
            i += 1
        else:
            raise ChainSyntaxError("unexpected character %r" % ch, i)
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is not None:
            self.i += 1
        return tok

    def fail(self, message, tok=None):
        pos = tok.pos if tok is not None else len(self.text)
        raise ChainSyntaxError(message, pos)

    def expect(self, kind, what):
        tok = self.next()
        if tok is None or tok.kind != kind:
            self.fail("expected %s" % what, tok)
        return tok

    # chain := [sign] term ((\'+\'|\'-\') term)*
    def parse_chain_terms(self):
        terms = []
        sign = 1
        tok = self.peek()
        if tok is not None and tok.kind in "+-":
            self.next()
            sign = -1 if tok.kind == "-" else 1
        terms.append(self.parse_term(sign))
        while True:
            tok = self.peek()
            if tok is None:
                return terms
            if tok.kind not in "+-":
                self.fail("expected '+' or '-'", tok)
            self.next()
            terms.append(self.parse_term(-1 if tok.kind == "-" else 1))

    # term := [coeff [\'*\']] factor+
    def parse_term(self, sign):
        coeff = qq(sign)
        tok = self.peek()
        if tok is not None and tok.kind == "num":
            self.next()
            num = int(tok.text)
            den = 1
            nxt = self.peek()
            if nxt is not None and nxt.kind == "/":
                self.next()
                dtok = self.expect("num", "denominator")
                den = int(dtok.text)
                if den == 0:
                    self.fail("zero denominator", dtok)
            coeff = coeff * QQ(num, den)
            nxt = self.peek()
            if nxt is not None and nxt.kind == "*":
                self.next()
        letters = self.parse_factor()
        while True:
            tok = self.peek()
            if tok is None or tok.kind in "+-,]":
                break
            letters = letters + self.parse_factor()
        return coeff, letters

    # factor := letters | \'[\' word \',\' word \']\' | factor \'^\' int
    def parse_factor(self):
        tok = self.next()
        if tok is None:
            self.fail("expected a word")
        if tok.kind == "letters":
            letters = [letter_from_char(ch) for ch in tok.text]
        elif tok.kind == "[":
            u = self.parse_factors_until(",")
            self.expect(",", "','")
            v = self.parse_factors_until("]")
            self.expect("]", "']'")
            letters = (u + v + [-x for x in reversed(u)]
                       + [-x for x in reversed(v)])
        else:
            self.fail("expected a word", tok)
        while True:
            nxt = self.peek()
            if nxt is None or nxt.kind != "^":
                return letters
            caret = self.next()
            exp = self.parse_exponent(caret)
            base = letters if exp >= 0 else [-x for x in reversed(letters)]
            letters = base * abs(exp)

    def parse_factors_until(self, stop):
        letters = self.parse_factor()
        while True:
            tok = self.peek()
            if tok is None or tok.kind in (stop, ",", "]"):
                return letters
            letters = letters + self.parse_factor()

    def parse_exponent(self, caret):
        sign = 1
        tok = self.peek()
        if tok is not None and tok.kind == "-":
            self.next()
            sign = -1
            tok = self.peek()
        if tok is None or tok.kind != "num":
            self.fail("missing exponent after '^'", caret)
        self.next()
        return sign * int(tok.text)


@dataclass(frozen=True)
class ChainExpression:
    source: str
    chain: Chain  # canonical


def parse_chain(text, min_rank=1):
    """Parse a chain expression; the result is canonicalized."""
    parser = _Parser(text)
    if parser.peek() is None:
        raise ChainSyntaxError("empty chain expression", 0)
    # the zero chain is spelled "0", matching format_chain
    if len(parser.tokens) == 1 and parser.tokens[0].kind == "num" \
            and int(parser.tokens[0].text) == 0:
        return ChainExpression(text, Chain((), min_rank))
    pairs = parser.parse_chain_terms()
    rank = max(min_rank, max((abs(x) for _, ls in pairs for x in ls), default=1))
    terms = []
    for coeff, letters in pairs:
        w = Word(reduce_letters(letters), rank)
        terms.append(ChainTerm(coeff, w))
    return ChainExpression(text, canonicalize(Chain(tuple(terms), rank)))


def parse_word(text, min_rank=1):
    """Parse a single word expression (letters, brackets, powers); the
    word is freely reduced but not cyclically normalized."""
    parser = _Parser(text)
    if parser.peek() is None:
        raise ChainSyntaxError("empty word expression", 0)
    letters = parser.parse_factors_until(None)
    tok = parser.peek()
    if tok is not None:
        parser.fail("unexpected token in word expression", tok)
    rank = max(min_rank, max((abs(x) for x in letters), default=1))
    return Word(reduce_letters(letters), rank)


def format_coefficient(c):
    c = qq(c)
    if c.denominator == 1:
        return "%d" % c.numerator
    return "%d/%d" % (c.numerator, c.denominator)


def format_chain(chain):
    """Deterministic text form.  The text only records the letters that
    occur, so the round trip is parse_chain(format_chain(C),
    min_rank=C.rank) == C for canonical C of rank <= 26."""
    if not chain.terms:
        return "0"
    if chain.rank > 26:
        raise ValueError("cannot format words beyond generator 'z'")
    parts = []
    for idx, t in enumerate(chain.terms):
        mag = abs(t.coefficient)
        negative = t.coefficient < 0
        body = str(t.word) if mag == 1 else "%s*%s" % (format_coefficient(mag), t.word)
        if idx == 0:
            parts.append("-" + body if negative else body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


def format_word(w):
    if len(w) == 0:
        return "1"
    return "".join(letter_to_char(x) for x in w.letters)
