"""
The wf-bullet insertion correspondence, its inverse, the Omega parking
procedure, rootlists and the induced equivalence on injective barred words.
"""

from __future__ import annotations

import bisect
from collections import deque
from typing import Iterable, NamedTuple, Sequence

from .combinatorics import BarredLetter, format_word, to_barred, underlined
from .forest import IndexedForest, LabeledForest, is_decreasing, is_lbs

__all__ = [
    "PSymbol", "QSymbol", "InsertionStep", "Insertion", "wf_insert_step", "wf_correspondence",
    "p_symbol", "gamma_inverse", "insertion_trace", "omega_parking", "is_parking", "park_cars",
    "Rootlist", "rootlist", "wf_swap_allowed", "partition_classes", "swap_closure",
    "as_barred_word",
]

PSymbol = LabeledForest
QSymbol = LabeledForest


def as_barred_word(word: Sequence) -> tuple[BarredLetter, ...]:
    word = tuple(word)
    if all(isinstance(x, BarredLetter) for x in word):
        return word
    if any(isinstance(x, BarredLetter) for x in word):
        raise ValueError("mixed plain and barred letters")
    return to_barred(word)


class InsertionStep(NamedTuple):
    letter: BarredLetter
    case: str       # "new", "right" (a > root) or "left" (a < root)
    node: int       # canonical label of the new node
    support: tuple


class Insertion:
    """Mutable insertion state; the new node always becomes a root."""

    def __init__(self):
        self.left: dict[int, int | None] = {}
        self.right: dict[int, int | None] = {}
        self.plabel: dict[int, BarredLetter] = {}
        self.qlabel: dict[int, int] = {}
        self.root_of: dict[int, int] = {}   # support element -> root of its tree
        self.used: set = set()

    def _interval(self, i: int) -> tuple[int, int]:
        lo = hi = i
        while lo - 1 in self.root_of:
            lo -= 1
        while hi + 1 in self.root_of:
            hi += 1
        return lo, hi

    def insert(self, a: BarredLetter) -> InsertionStep:
        if not isinstance(a, BarredLetter) or a.copy < 1:
            raise ValueError(f"not a barred letter: {a!r}")
        if a in self.used:
            raise ValueError(f"not injective: {a} already inserted")
        S = self.root_of
        i = a.value
        left = right = None
        if i not in S:
            case, u = "new", i
            if i - 1 in S:
                left = S[i - 1]
            if i + 1 in S:
                right = S[i + 1]
        else:
            lo, hi = self._interval(i)
            root = S[i]
            if a > self.plabel[root]:
                case, u = "right", hi + 1
                left = root
                if hi + 2 in S:
                    right = S[hi + 2]
            else:
                case, u = "left", lo - 1
                right = root
                if lo - 2 in S:
                    left = S[lo - 2]
        self.left[u], self.right[u] = left, right
        self.plabel[u] = a
        self.qlabel[u] = len(self.used) + 1
        self.used.add(a)
        S[u] = u
        lo, hi = self._interval(u)
        for k in range(lo, hi + 1):
            S[k] = u
        return InsertionStep(a, case, u, tuple(sorted(S)))

    def forest(self) -> IndexedForest:
        def shape(u):
            if u is None:
                return None
            return (shape(self.left[u]), shape(self.right[u]))

        trees = []
        for start in sorted(self.root_of):
            if start - 1 not in self.root_of:
                trees.append((start, shape(self.root_of[start])))
        return IndexedForest(tuple(trees))

    def symbols(self) -> tuple[PSymbol, QSymbol]:
        f = self.forest()
        return (LabeledForest(f, tuple(self.plabel[u] for u in f.nodes)),
                LabeledForest(f, tuple(self.qlabel[u] for u in f.nodes)))


def wf_insert_step(P: PSymbol, a: BarredLetter) -> PSymbol:
    """Insert one letter into a P-symbol (the Q-symbol is not needed here)."""
    st = _state_from(P)
    st.insert(a)
    return st.symbols()[0]


def _state_from(P: PSymbol, Q: QSymbol | None = None) -> Insertion:
    st = Insertion()
    f = P.forest
    for u, x in zip(f.nodes, P.labels):
        st.left[u], st.right[u] = f.left(u), f.right(u)
        st.plabel[u] = x
        st.used.add(x)
    for k, r in enumerate(f.roots()):
        lo, hi = f.intervals()[k]
        for s in range(lo, hi + 1):
            st.root_of[s] = r
    qs = Q.labels if Q is not None else range(1, f.size + 1)
    for u, q in zip(f.nodes, qs):
        st.qlabel[u] = q
    return st


def wf_correspondence(word: Sequence) -> tuple[PSymbol, QSymbol]:
    st = Insertion()
    for a in as_barred_word(word):
        st.insert(a)
    return st.symbols()


def p_symbol(word: Sequence) -> PSymbol:
    return wf_correspondence(word)[0]


def insertion_trace(word: Sequence) -> list[InsertionStep]:
    st = Insertion()
    return [st.insert(a) for a in as_barred_word(word)]


def gamma_inverse(P: PSymbol, Q: QSymbol) -> tuple[BarredLetter, ...]:
    """Read the labels of P in the order given by Q."""
    if P.forest != Q.forest:
        raise ValueError("P and Q have different shapes")
    if not is_lbs(P.forest, P.labels):
        raise ValueError("P is not an LBS labeling")
    if sorted(Q.labels) != list(range(1, Q.forest.size + 1)) or not is_decreasing(Q.forest, Q.labels):
        raise ValueError("Q is not a decreasing labeling")
    order = sorted(range(len(Q.labels)), key=lambda k: Q.labels[k])
    return tuple(P.labels[k] for k in order)


# -- parking ---------------------------------------------------------------

def omega_parking(word: Sequence) -> frozenset:
    """
    Support-only parking: a letter whose value is occupied is compared with
    the last earlier letter having its value in the same occupied interval.
    """
    letters = as_barred_word(word)
    if len(set(letters)) != len(letters):
        raise ValueError("not injective")
    occupied: set[int] = set()
    for k, a in enumerate(letters):
        i = a.value
        if i not in occupied:
            occupied.add(i)
            continue
        lo = hi = i
        while lo - 1 in occupied:
            lo -= 1
        while hi + 1 in occupied:
            hi += 1
        last = next(b for b in reversed(letters[:k]) if lo <= b.value <= hi)
        occupied.add(hi + 1 if a > last else lo - 1)
    return frozenset(occupied)


def is_parking(word: Sequence) -> bool:
    return omega_parking(word) == frozenset(range(1, len(word) + 1))


def park_cars(prefs: Sequence[int]) -> frozenset:
    """
    The car-by-car rule on plain preference words: a car whose spot is taken
    goes just right of its occupied block if its preference is at least that
    of the last car parked in the block, just left otherwise.
    """
    occupied: set[int] = set()
    for k, v in enumerate(prefs):
        if v not in occupied:
            occupied.add(v)
        else:
            a = b = v
            while a - 1 in occupied:
                a -= 1
            while b + 1 in occupied:
                b += 1
            vj = next(prefs[j] for j in range(k - 1, -1, -1) if a <= prefs[j] <= b)
            occupied.add(b + 1 if v >= vj else a - 1)
    return frozenset(occupied)


# -- rootlists -------------------------------------------------------------

class Rootlist:
    """
    Finite window plus infinite underlined tails: ``_i`` for every ``i < lo``
    and every ``i > hi`` is implied.
    """

    def __init__(self, lo: int, hi: int, window: Iterable[BarredLetter]):
        window = sorted(set(window))
        # absorb underlined points touching the tails
        while window and window[0] == underlined(lo) and lo <= hi:
            window.pop(0)
            lo += 1
        while window and window[-1] == underlined(hi) and lo <= hi:
            window.pop()
            hi -= 1
        if not window:
            lo, hi = 0, -1
        self.lo, self.hi, self.window = lo, hi, tuple(window)

    @classmethod
    def everything(cls) -> Rootlist:
        return cls(0, -1, ())

    def __eq__(self, other) -> bool:
        return isinstance(other, Rootlist) and (self.lo, self.hi, self.window) == (
            other.lo, other.hi, other.window)

    def __hash__(self):
        return hash((self.lo, self.hi, self.window))

    def __contains__(self, x: BarredLetter) -> bool:
        if x.copy == 0 and (x.value < self.lo or x.value > self.hi):
            return True
        return x in self.window

    def _prev(self, x: BarredLetter) -> BarredLetter:
        k = bisect.bisect_left(self.window, x)
        best = self.window[k - 1] if k else None
        # largest implied _i below x, skipping the window [lo, hi]
        tail = x.value if x.copy else x.value - 1
        if self.lo <= tail <= self.hi:
            tail = self.lo - 1
        cand = underlined(tail)
        return cand if best is None or cand > best else best

    def _next(self, x: BarredLetter) -> BarredLetter:
        k = bisect.bisect_right(self.window, x)
        best = self.window[k] if k < len(self.window) else None
        head = x.value + 1
        if self.lo <= head <= self.hi:
            head = self.hi + 1
        cand = underlined(head)
        return cand if best is None or cand < best else best

    def neighbors(self, a: BarredLetter) -> tuple[BarredLetter, BarredLetter]:
        if a in self:
            raise ValueError(f"{a} already in the rootlist")
        return self._prev(a), self._next(a)

    def insert(self, a: BarredLetter) -> Rootlist:
        """Drop the two neighbors of a and add a."""
        r1, r2 = self.neighbors(a)
        lo = min(self.lo, r1.value) if self.lo <= self.hi else r1.value
        hi = max(self.hi, r2.value) if self.lo <= self.hi else r2.value
        elems = set(self.window)
        for i in range(lo, hi + 1):
            if i < self.lo or i > self.hi or self.lo > self.hi:
                elems.add(underlined(i))
        elems -= {r1, r2}
        elems.add(a)
        return Rootlist(lo, hi, elems)

    def between(self, a: BarredLetter, b: BarredLetter) -> int:
        """Number of rootlist elements strictly between a and b."""
        if b < a:
            a, b = b, a
        count = sum(1 for x in self.window if a < x < b)
        for i in range(a.value, b.value + 1):
            x = underlined(i)
            if (i < self.lo or i > self.hi) and a < x < b:
                count += 1
        return count

    def __str__(self) -> str:
        if self.lo > self.hi:
            return "… < _i < … (all underlined points)"
        parts = [underlined(self.lo - 2), underlined(self.lo - 1), *self.window, underlined(self.hi + 1)]
        return "… < " + " < ".join(map(str, parts)) + " < …"


def rootlist(P: PSymbol | Sequence) -> Rootlist:
    """Rootlist of a P-symbol, or of the P-symbol of a word."""
    if not isinstance(P, LabeledForest):
        P = p_symbol(P)
    f = P.forest
    S = set(f.support())
    if not S:
        return Rootlist.everything()
    lab = P.as_dict()
    lo, hi = min(S), max(S) + 1
    window = [lab[r] for r in f.roots()]
    window += [underlined(i) for i in range(lo, hi + 1) if i - 1 not in S and i not in S]
    return Rootlist(lo, hi, window)


def wf_swap_allowed(prefix: Sequence, a: BarredLetter, b: BarredLetter) -> bool:
    """Whether U a b ~ U b a: a and b are separated by two elements of rl(U)."""
    return rootlist(as_barred_word(prefix)).between(a, b) >= 2


def partition_classes(words: Iterable[Sequence]) -> dict[PSymbol, list[tuple]]:
    """Group words by P-symbol; classes and members are sorted."""
    classes: dict[PSymbol, list] = {}
    for w in words:
        w = as_barred_word(w)
        classes.setdefault(p_symbol(w), []).append(w)
    return {P: sorted(ws) for P, ws in sorted(classes.items(), key=lambda kv: (kv[0].forest, kv[0].labels))}


def swap_closure(word: Sequence) -> set[tuple]:
    """All words reachable by allowed adjacent swaps (exponential; for checks)."""
    start = as_barred_word(word)
    seen = {start}
    todo = deque([start])
    while todo:
        w = todo.popleft()
        for k in range(len(w) - 1):
            if wf_swap_allowed(w[:k], w[k], w[k + 1]):
                v = w[:k] + (w[k + 1], w[k]) + w[k + 2:]
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
    return seen


def format_support(s: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def format_trace(steps: Sequence[InsertionStep]) -> list[str]:
    return [f"{st.letter}\t{st.case}\t{format_support(st.support)}" for st in steps]


def format_classes(classes: dict) -> list[str]:
    out = []
    for P, ws in classes.items():
        labels = " ".join(map(str, P.labels))
        out.append(f"{P.forest.code()}\t{labels}\t" + " ".join(format_word(w) for w in ws))
    return out
