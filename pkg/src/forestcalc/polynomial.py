"""
Sparse polynomials in x_1, x_2, ... over the rationals.

Exponents are tuples ``(e_1, e_2, ...)`` with trailing zeros stripped.
Terms are ordered degree first, then revlex: among equal degrees the larger
exponent is the one with the larger entry at the last index where they
differ.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .combinatorics import ParseError

__all__ = [
    "Polynomial", "revlex_key", "revlex_leading", "trim", "add_exponents", "ZERO", "ONE",
]

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


def trim(e: Sequence[int]) -> Exponent:
    e = list(e)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def add_exponents(a: Exponent, b: Exponent) -> Exponent:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b):]


def revlex_key(e: Exponent, length: int):
    padded = tuple(e) + (0,) * (length - len(e))
    return (sum(e), padded[::-1])


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], Scalar] | None = None):
        d: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if any(x < 0 for x in e):
                    raise ValueError("negative exponent")
                e = trim(e)
                d[e] = d.get(e, 0) + Fraction(c)
        self._terms = {e: c for e, c in d.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> Polynomial:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> Polynomial:
        return cls({(): c})

    @classmethod
    def variable(cls, i: int) -> Polynomial:
        if i < 1:
            raise ValueError("variables are x_1, x_2, ...")
        return cls({(0,) * (i - 1) + (1,): 1})

    @classmethod
    def monomial(cls, e: Sequence[int], c: Scalar = 1) -> Polynomial:
        return cls({tuple(e): c})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(trim(e), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self._terms)
        for e, c in other._terms.items():
            v = d.get(e, 0) + c
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return Polynomial._raw(d)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def scale(self, c: Scalar) -> Polynomial:
        c = Fraction(c)
        if c == 0:
            return Polynomial._raw({})
        return Polynomial._raw({e: c * v for e, v in self._terms.items()})

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        d: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = add_exponents(e1, e2)
                d[e] = d.get(e, 0) + c1 * c2
        return Polynomial._raw({e: c for e, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Largest term weight; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    @property
    def nvars(self) -> int:
        """Index of the largest variable occurring."""
        return max((len(e) for e in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_components(self) -> dict[int, Polynomial]:
        comps: dict[int, dict] = {}
        for e, c in self._terms.items():
            comps.setdefault(sum(e), {})[e] = c
        return {d: Polynomial._raw(t) for d, t in sorted(comps.items())}

    def eval(self, point: Sequence[Scalar]) -> Fraction:
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            if len(e) > len(pt):
                raise ValueError(f"unbound variable x{len(e)}")
            t = c
            for v, k in zip(pt, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def ones(self, n: int) -> Fraction:
        """Value at x_1 = ... = x_n = 1 and x_i = 0 beyond."""
        return sum((c for e, c in self._terms.items() if len(e) <= n), Fraction(0))

    def truncate(self, n: int) -> Polynomial:
        """Set x_i = 0 for i > n."""
        return Polynomial._raw({e: c for e, c in self._terms.items() if len(e) <= n})

    def substitute(self, images: Sequence[Polynomial]) -> Polynomial:
        """Replace x_i by ``images[i-1]``."""
        out = Polynomial._raw({})
        cache: dict[tuple[int, int], Polynomial] = {}
        for e, c in self._terms.items():
            if len(e) > len(images):
                raise ValueError(f"unbound variable x{len(e)}")
            t = Polynomial.constant(c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    t = t * cache[(i, k)]
            out = out + t
        return out

    def leading_exponent(self) -> Exponent:
        return revlex_leading(self)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in decreasing degree-then-revlex order."""
        n = self.nvars
        return sorted(self._terms.items(), key=lambda t: revlex_key(t[0], n), reverse=True)

    # -- serialization ---------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for k, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(f"x{i + 1}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if k == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial('{self}')"

    def to_json(self) -> dict:
        return {"terms": [{"exp": list(e), "num": c.numerator, "den": c.denominator}
                          for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: Union[str, dict]) -> Polynomial:
        if isinstance(data, str):
            data = json.loads(data)
        return cls({tuple(t["exp"]): Fraction(t["num"], t["den"]) for t in data["terms"]})

    @classmethod
    def parse(cls, text: str) -> Polynomial:
        return _PolyParser(text).parse()


_TERM_TOKEN = re.compile(r"\s*(?:(x)(\d+)(?:\^(\d+))?|(\d+)(?:/(\d+))?)")


class _PolyParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Polynomial:
        terms: dict[Exponent, Fraction] = {}
        sign = 1
        if self._peek() in "+-" and self._peek():
            sign = -1 if self._peek() == "-" else 1
            self.pos += 1
        while True:
            e, c = self._term()
            e = trim(e)
            terms[e] = terms.get(e, 0) + sign * c
            ch = self._peek()
            if not ch:
                break
            if ch not in "+-":
                raise ParseError(self.text, self.pos, "'+', '-' or end of input")
            sign = -1 if ch == "-" else 1
            self.pos += 1
        return Polynomial(terms)

    def _factor(self):
        self._skip()
        m = _TERM_TOKEN.match(self.text, self.pos)
        if not m or m.end() == self.pos:
            raise ParseError(self.text, self.pos, "coefficient or variable x<i>")
        self.pos = m.end()
        if m.group(1):
            i = int(m.group(2))
            if i < 1:
                raise ParseError(self.text, m.start(2), "variable index >= 1")
            k = int(m.group(3) or 1)
            return (0,) * (i - 1) + (k,), Fraction(1)
        den = int(m.group(5) or 1)
        if den == 0:
            raise ParseError(self.text, m.start(5), "nonzero denominator")
        return (), Fraction(int(m.group(4)), den)

    def _term(self):
        e, c = self._factor()
        while self._peek() == "*":
            self.pos += 1
            e2, c2 = self._factor()
            e, c = add_exponents(e, e2), c * c2
        return e, c


def revlex_leading(f: Polynomial) -> Exponent:
    if not f:
        raise ValueError("no leading term")
    n = f.nvars
    return max((e for e, _ in f.items()), key=lambda e: revlex_key(e, n))


ZERO = Polynomial()
ONE = Polynomial.constant(1)
