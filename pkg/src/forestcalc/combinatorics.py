"""
Ground types: N-vectors, permutations of Z with finite support, Lehmer codes,
reduced words, ABB/Artin compositions and the barred alphabet.

>>> w = Permutation.parse("14253")
>>> w.code()
NVector([0,2,0,1])
>>> [format_word(r) for r in reduced_words(w.inverse())]
['243', '423']
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

__all__ = [
    "ParseError", "NVector", "Permutation", "BarredLetter", "underlined",
    "flat", "lehmer_code", "permutation_from_code", "reduced_words",
    "abb_sets", "is_abb", "catalan", "to_barred", "shift_permutation",
    "parse_word", "format_word", "permutations_of_length",
]


class ParseError(ValueError):
    """Malformed text input; carries the offending position."""

    def __init__(self, text: str, pos: int, expected: str):
        self.text, self.pos, self.expected = text, pos, expected
        super().__init__(f"parse error at position {pos} in {text!r}: expected {expected}")


class BarredLetter(NamedTuple):
    """
    Letter ``value^copy`` of the barred alphabet.

    Copy 0 encodes the underlined point ``_value``; tuple order then gives
    ``_i < i^1 < i^2 < ... < _(i+1)``.
    """
    value: int
    copy: int = 1

    @property
    def is_underlined(self) -> bool:
        return self.copy == 0

    def __str__(self) -> str:
        if self.copy == 0:
            return f"_{self.value}"
        return f"{self.value}^{self.copy}"

    def __repr__(self) -> str:
        return f"BarredLetter({self.value}, {self.copy})"


def underlined(i: int) -> BarredLetter:
    return BarredLetter(i, 0)


Letter = Union[int, BarredLetter]
Word = tuple


class NVector:
    """
    Finitely supported sequence of nonnegative integers indexed by Z.

    Only positive entries are stored. A plain sequence is read starting at
    index ``start`` (default 1).
    """

    __slots__ = ("_items",)

    def __init__(self, values: Union[Sequence[int], Mapping[int, int]] = (), start: int = 1):
        if isinstance(values, Mapping):
            pairs = values.items()
        else:
            pairs = ((start + k, v) for k, v in enumerate(values))
        items = []
        for i, v in pairs:
            if v < 0:
                raise ValueError("N-vector entries must be nonnegative")
            if v:
                items.append((int(i), int(v)))
        items.sort()
        self._items = tuple(items)

    def __getitem__(self, i: int) -> int:
        for j, v in self._items:
            if j == i:
                return v
        return 0

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self._items)

    @property
    def weight(self) -> int:
        return sum(v for _, v in self._items)

    def flat(self) -> tuple[int, ...]:
        return tuple(v for _, v in self._items)

    def is_positive(self) -> bool:
        return not self._items or self._items[0][0] >= 1

    def as_tuple(self, n: int | None = None) -> tuple[int, ...]:
        """Entries ``(c_1, ..., c_n)``; ``n`` defaults to the last support index."""
        if not self.is_positive():
            raise ValueError("N-vector has non-positive support")
        if n is None:
            n = self._items[-1][0] if self._items else 0
        out = [0] * n
        for i, v in self._items:
            if i > n:
                raise ValueError(f"support exceeds {n}")
            out[i - 1] = v
        return tuple(out)

    def shift(self, j: int) -> NVector:
        return NVector({i + j: v for i, v in self._items})

    def __add__(self, other: NVector) -> NVector:
        d = dict(self._items)
        for i, v in other._items:
            d[i] = d.get(i, 0) + v
        return NVector(d)

    def __eq__(self, other) -> bool:
        return isinstance(other, NVector) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __lt__(self, other: NVector) -> bool:
        return self._items < other._items

    def __repr__(self) -> str:
        return f"NVector({self})"

    def __str__(self) -> str:
        if self.is_positive():
            return "[" + ",".join(map(str, self.as_tuple())) + "]"
        return "{" + ",".join(f"{i}:{v}" for i, v in self._items) + "}"

    @classmethod
    def parse(cls, text: str) -> NVector:
        """Read ``[0,2,0,1]``, ``0,2,0,1`` or the mapping form ``{-1:2,3:1}``."""
        s = text.strip()
        if s.startswith("{"):
            if not s.endswith("}"):
                raise ParseError(text, len(text), "'}'")
            body = s[1:-1].strip()
            d = {}
            pos = text.index("{") + 1
            for chunk in filter(None, body.split(",")):
                m = re.fullmatch(r"\s*(-?\d+)\s*:\s*(\d+)\s*", chunk)
                if not m:
                    raise ParseError(text, pos, "index:value")
                d[int(m.group(1))] = int(m.group(2))
                pos += len(chunk) + 1
            return cls(d)
        if s.startswith("["):
            if not s.endswith("]"):
                raise ParseError(text, len(text), "']'")
            s = s[1:-1]
        return cls(_parse_int_list(text, s))


def _parse_int_list(text: str, body: str) -> list[int]:
    if not body.strip():
        return []
    out = []
    pos = 0
    for chunk in body.split(","):
        if not re.fullmatch(r"\s*-?\d+\s*", chunk):
            raise ParseError(text, text.find(body) + pos, "integer")
        out.append(int(chunk))
        pos += len(chunk) + 1
    return out


def flat(c: NVector) -> tuple[int, ...]:
    return c.flat()


class Permutation:
    """
    Permutation of Z fixing all but finitely many integers.

    Stored as a window of one-line values on an interval, trimmed of fixed
    endpoints, so ``21543`` and ``215436`` compare equal.
    """

    __slots__ = ("_lo", "_window")

    def __init__(self, one_line: Sequence[int] = (), start: int = 1):
        vals = list(one_line)
        if sorted(vals) != list(range(start, start + len(vals))):
            raise ValueError(f"{vals} is not a permutation of [{start},{start + len(vals) - 1}]")
        lo = start
        while vals and vals[0] == lo:
            vals.pop(0)
            lo += 1
        while vals and vals[-1] == lo + len(vals) - 1:
            vals.pop()
        self._lo = lo if vals else 0
        self._window = tuple(vals)

    @classmethod
    def identity(cls) -> Permutation:
        return cls()

    @classmethod
    def simple(cls, i: int) -> Permutation:
        """The adjacent transposition s_i exchanging i and i+1."""
        return cls((i + 1, i), start=i)

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """One-line notation ``2,1,5,4,3`` or digit shorthand ``21543``."""
        s = text.strip()
        if re.fullmatch(r"\d+", s):
            vals = [int(ch) for ch in s]
        else:
            vals = _parse_int_list(text, s)
        if not vals:
            raise ParseError(text, 0, "permutation")
        try:
            return cls(vals)
        except ValueError:
            raise ParseError(text, 0, "a permutation of 1..n") from None

    def __call__(self, i: int) -> int:
        k = i - self._lo
        if 0 <= k < len(self._window):
            return self._window[k]
        return i

    @property
    def window(self) -> tuple[int, tuple[int, ...]]:
        return self._lo, self._window

    def support(self) -> tuple[int, ...]:
        return tuple(self._lo + k for k, v in enumerate(self._window) if v != self._lo + k)

    def is_positive(self) -> bool:
        return not self._window or self._lo >= 1

    def max_support(self) -> int:
        return self._lo + len(self._window) - 1 if self._window else 0

    def one_line(self, n: int | None = None) -> tuple[int, ...]:
        if not self.is_positive():
            raise ValueError("negative support")
        if n is None:
            n = self.max_support()
        if n < self.max_support():
            raise ValueError(f"permutation is not in S_{n}")
        return tuple(self(i) for i in range(1, n + 1))

    def inverse(self) -> Permutation:
        inv = [0] * len(self._window)
        for k, v in enumerate(self._window):
            inv[v - self._lo] = self._lo + k
        return Permutation(inv, start=self._lo) if inv else Permutation()

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition, ``(u * v)(i) = u(v(i))``."""
        pts = [p for w in (self, other) if w._window
               for p in (w._lo, w._lo + len(w._window) - 1)]
        if not pts:
            return Permutation()
        lo, hi = min(pts), max(pts)
        return Permutation([self(other(i)) for i in range(lo, hi + 1)], start=lo)

    def length(self) -> int:
        w = self._window
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def descents(self) -> tuple[int, ...]:
        w = self._window
        return tuple(self._lo + k for k in range(len(w) - 1) if w[k] > w[k + 1])

    def code(self) -> NVector:
        return lehmer_code(self)

    @classmethod
    def from_code(cls, c: NVector) -> Permutation:
        return permutation_from_code(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.window == other.window

    def __hash__(self) -> int:
        return hash(self.window)

    def __lt__(self, other: Permutation) -> bool:
        n = max(self.max_support(), other.max_support())
        return self.one_line(n) < other.one_line(n)

    def __repr__(self) -> str:
        return f"Permutation({self})"

    def __str__(self) -> str:
        if not self._window:
            return "1"
        if not self.is_positive():
            return f"{self._lo}:" + ",".join(map(str, self._window))
        vals = self.one_line()
        if max(vals) <= 9:
            return "".join(map(str, vals))
        return ",".join(map(str, vals))


def lehmer_code(w: Permutation) -> NVector:
    lo, win = w.window
    return NVector({lo + i: sum(1 for j in range(i + 1, len(win)) if win[i] > win[j])
                    for i in range(len(win))})


def permutation_from_code(c: NVector) -> Permutation:
    """Inverse of :func:`lehmer_code`."""
    if not c.items():
        return Permutation()
    lo = c.items()[0][0]
    size = max(i - lo + v + 1 for i, v in c.items())
    free = list(range(lo, lo + size))
    vals = []
    for i in range(lo, lo + size):
        vals.append(free.pop(c[i]))
    return Permutation(vals, start=lo)


def permutations_of_length(n: int, length: int) -> list[Permutation]:
    """All w in S_n with l(w) = length, sorted by one-line notation."""
    from itertools import permutations
    out = []
    for p in permutations(range(1, n + 1)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        if inv == length:
            out.append(Permutation(p))
    return out


@lru_cache(maxsize=None)
def reduced_words(w: Permutation) -> tuple[tuple[int, ...], ...]:
    """Red(w), sorted lexicographically; the last letter runs over descents."""
    if w.length() == 0:
        return ((),)
    out = []
    for i in w.descents():
        for r in reduced_words(w * Permutation.simple(i)):
            out.append(r + (i,))
    return tuple(sorted(out))


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def is_abb(c: Sequence[int], n: int) -> bool:
    """Reversed partial sums of ``(c_1..c_n)`` bounded by j - 1."""
    padded = list(c) + [0] * (n - len(c))
    if len(padded) > n and any(padded[n:]):
        return False
    total = 0
    for j in range(1, n + 1):
        total += padded[n - j]
        if total > j - 1:
            return False
    return True


@lru_cache(maxsize=None)
def abb_sets(n: int):
    """Return ``(ABB_n, ABBtop_n, Artin_n)`` as sorted tuples of length-n tuples."""
    if n < 1:
        raise ValueError("n must be positive")
    abb = []

    def grow(suffix: tuple[int, ...], total: int):
        j = len(suffix)
        if j == n:
            abb.append(suffix)
            return
        for v in range(0, j - total + 1):
            grow((v,) + suffix, total + v)

    grow((), 0)
    abb = tuple(sorted(abb, reverse=True))
    top = tuple(c for c in abb if sum(c) == n - 1)
    artin = tuple(sorted(product(*(range(n - i + 1) for i in range(1, n + 1))), reverse=True))
    return abb, top, artin


def to_barred(word: Iterable[int]) -> tuple[BarredLetter, ...]:
    """The t-th occurrence of value i (left to right) becomes i^t."""
    seen: dict[int, int] = {}
    out = []
    for i in word:
        if isinstance(i, BarredLetter):
            raise TypeError("word is already barred")
        seen[i] = seen.get(i, 0) + 1
        out.append(BarredLetter(i, seen[i]))
    return tuple(out)


def shift_permutation(w: Permutation, j: int) -> Permutation:
    """``1^j x w``: conjugate by the shift i -> i + j."""
    if j < 0:
        raise ValueError("shift must be nonnegative")
    lo, win = w.window
    if not win:
        return w
    return Permutation([v + j for v in win], start=lo + j)


def parse_word(text: str) -> tuple:
    """
    Read ``1 3 4 3``, digit shorthand ``1343``, or barred ``1^1 3^1 4^1 3^2``.

    Barred and plain letters cannot be mixed.
    """
    s = text.strip()
    if not s or s in ("e", "ε"):
        return ()
    if re.fullmatch(r"\d+", s):
        return tuple(int(ch) for ch in s)
    tokens = [(m.group(), m.start()) for m in re.finditer(r"[^\s,]+", text)]
    letters = []
    for tok, pos in tokens:
        m = re.fullmatch(r"(-?\d+)(?:\^(\d+))?", tok)
        if not m:
            raise ParseError(text, pos, "letter i or i^j")
        if m.group(2) is None:
            letters.append(int(m.group(1)))
        else:
            if int(m.group(2)) < 1:
                raise ParseError(text, pos, "positive copy index")
            letters.append(BarredLetter(int(m.group(1)), int(m.group(2))))
    kinds = {isinstance(x, BarredLetter) for x in letters}
    if len(kinds) > 1:
        raise ParseError(text, 0, "all-plain or all-barred letters")
    return tuple(letters)


def format_word(word: Sequence) -> str:
    if not word:
        return "e"
    if all(isinstance(x, BarredLetter) for x in word):
        return " ".join(map(str, word))
    if all(0 <= x <= 9 for x in word):
        return "".join(map(str, word))
    return " ".join(map(str, word))
