"""Parser for the ring-spec DSL.

Grammar (whitespace is ignored)::

    spec   := zn | poly | prod | ga | quot | corner
    zn     := "zn:" INT
    poly   := "poly:p=" INT ",mod=" ints
    prod   := "prod:(" spec ("," spec)* ")"
    ga     := "ga:base=" spec ",group=" ints
    quot   := "quot:" spec "/gens=" ints
    corner := "corner:" spec "/e=" INT
    ints   := "[" [INT ("," INT)*] "]"

``quot`` divides by the ideal generated by the listed carrier indices.
Every ring built by this package has a descriptor in this language, so
``parse_ring(r.descriptor)`` rebuilds ``r``.
"""

from __future__ import annotations

from .errors import SpecSyntaxError
from .finite_ring import (DEFAULT_CAP, corner_ring, make_group_algebra,
                          make_poly_quotient, make_product, make_quotient, make_zn)


class _Parser:
    def __init__(self, text, cap):
        self.text = "".join(text.split())
        self.pos = 0
        self.cap = cap

    def fail(self, what):
        near = self.text[self.pos:self.pos + 12] or "end of input"
        raise SpecSyntaxError(f"expected {what} at position {self.pos} (near {near!r})")

    def take(self, literal):
        if not self.text.startswith(literal, self.pos):
            self.fail(repr(literal))
        self.pos += len(literal)

    def peek(self, literal):
        return self.text.startswith(literal, self.pos)

    def integer(self):
        start = self.pos
        if self.peek("-"):
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.pos = start
            self.fail("an integer")
        return int(self.text[start:self.pos])

    def int_list(self):
        self.take("[")
        out = []
        if not self.peek("]"):
            out.append(self.integer())
            while self.peek(","):
                self.pos += 1
                out.append(self.integer())
        self.take("]")
        return out

    def spec(self):
        if self.peek("zn:"):
            self.take("zn:")
            return make_zn(self.integer(), cap=self.cap)
        if self.peek("poly:"):
            self.take("poly:p=")
            p = self.integer()
            self.take(",mod=")
            return make_poly_quotient(p, self.int_list(), cap=self.cap)
        if self.peek("prod:"):
            self.take("prod:(")
            factors = [self.spec()]
            while self.peek(","):
                self.pos += 1
                factors.append(self.spec())
            self.take(")")
            return make_product(factors, cap=self.cap)
        if self.peek("ga:"):
            self.take("ga:base=")
            base = self.spec()
            self.take(",group=")
            return make_group_algebra(base, self.int_list(), cap=self.cap)
        if self.peek("quot:"):
            from .ideals import generated_ideal

            self.take("quot:")
            r = self.spec()
            self.take("/gens=")
            gens = self.int_list()
            if any(g < 0 or g >= r.order for g in gens):
                raise SpecSyntaxError(f"generator outside the carrier of {r.name}")
            q, _ = make_quotient(r, generated_ideal(r, gens))
            return q
        if self.peek("corner:"):
            self.take("corner:")
            r = self.spec()
            self.take("/e=")
            e = self.integer()
            if not 0 <= e < r.order:
                raise SpecSyntaxError(f"idempotent outside the carrier of {r.name}")
            return corner_ring(r, e)[0]
        self.fail("one of zn:, poly:, prod:, ga:, quot:, corner:")


def parse_ring(text, *, cap=DEFAULT_CAP):
    """Build the ring described by ``text``; raises SpecSyntaxError on bad syntax."""
    if not isinstance(text, str) or not text.strip():
        raise SpecSyntaxError("empty ring spec")
    p = _Parser(text, cap)
    ring = p.spec()
    if p.pos != len(p.text):
        p.fail("end of input")
    return ring
