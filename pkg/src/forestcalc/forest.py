"""
Indexed forests.

A binary tree shape is ``None`` (a leaf) or a pair ``(left, right)``. An
indexed forest attaches one shape to each maximal interval of its support.
Internal nodes are identified by their canonical label, i.e. their inorder
position shifted to the interval; canonical labels never change under the
insertion algorithm, so they double as stable node references.

Labelings are stored as tuples aligned with ``forest.nodes`` (inorder).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Iterable, NamedTuple, Optional, Sequence

from .combinatorics import BarredLetter, NVector

__all__ = [
    "Shape", "binary_trees", "shape_size", "mirror_shape", "IndexedForest",
    "LabeledForest", "decreasing_labelings", "lbs_labelings", "is_lbs",
    "is_decreasing", "canonical_flag", "forests_with_support", "forests_in",
]

Shape = Optional[tuple]


def shape_size(t: Shape) -> int:
    return 0 if t is None else 1 + shape_size(t[0]) + shape_size(t[1])


def mirror_shape(t: Shape) -> Shape:
    return None if t is None else (mirror_shape(t[1]), mirror_shape(t[0]))


@lru_cache(maxsize=None)
def binary_trees(k: int) -> tuple:
    """All binary tree shapes with k internal nodes (Catalan many)."""
    if k == 0:
        return (None,)
    out = []
    for j in range(k):
        for left in binary_trees(j):
            for right in binary_trees(k - 1 - j):
                out.append((left, right))
    return tuple(out)


def _show(t: Shape) -> str:
    return "x" if t is None else f"({_show(t[0])},{_show(t[1])})"


class _Node(NamedTuple):
    left: Optional[int]
    right: Optional[int]
    parent: Optional[int]
    rho: int
    lo: int
    hi: int
    tree: int


@dataclass(frozen=True)
class IndexedForest:
    """Trees as ``((start, shape), ...)`` sorted by start."""

    trees: tuple = ()

    def __post_init__(self):
        prev_end = None
        for start, shape in self.trees:
            size = shape_size(shape)
            if size == 0:
                raise ValueError("empty tree in forest")
            if prev_end is not None and start < prev_end + 2:
                raise ValueError("tree supports must be disjoint and non-adjacent")
            prev_end = start + size - 1

    # -- structure -------------------------------------------------------

    @cached_property
    def _structure(self) -> dict[int, _Node]:
        nodes: dict[int, _Node] = {}

        def walk(t, lo, parent, tree_index):
            # returns (label of subtree root, rho of subtree root)
            lsize = shape_size(t[0])
            label = lo + lsize
            hi = lo + shape_size(t) - 1
            left = right = None
            rho = label
            if t[0] is not None:
                left, rho = walk(t[0], lo, label, tree_index)
            if t[1] is not None:
                right, _ = walk(t[1], label + 1, label, tree_index)
            nodes[label] = _Node(left, right, parent, rho, lo, hi, tree_index)
            return label, rho

        for k, (start, shape) in enumerate(self.trees):
            walk(shape, start, None, k)
        return dict(sorted(nodes.items()))

    @property
    def size(self) -> int:
        return len(self._structure)

    def __len__(self) -> int:
        return self.size

    @property
    def nodes(self) -> tuple[int, ...]:
        """Internal nodes, i.e. canonical labels, in inorder."""
        return tuple(self._structure)

    def support(self) -> tuple[int, ...]:
        return self.nodes

    def intervals(self) -> tuple[tuple[int, int], ...]:
        return tuple((s, s + shape_size(t) - 1) for s, t in self.trees)

    def roots(self) -> tuple[int, ...]:
        return tuple(u for u, nd in self._structure.items() if nd.parent is None)

    def left(self, u: int) -> Optional[int]:
        return self._structure[u].left

    def right(self, u: int) -> Optional[int]:
        return self._structure[u].right

    def parent(self, u: int) -> Optional[int]:
        return self._structure[u].parent

    def children(self, u: int) -> tuple[int, ...]:
        nd = self._structure[u]
        return tuple(c for c in (nd.left, nd.right) if c is not None)

    def rho(self, u: int) -> int:
        """Canonical label reached by following left edges down from u."""
        return self._structure[u].rho

    @cached_property
    def rho_values(self) -> tuple[int, ...]:
        return tuple(nd.rho for nd in self._structure.values())

    def int_set(self, u: int) -> tuple[int, int]:
        """Interval of canonical labels in the subtree rooted at u."""
        nd = self._structure[u]
        return nd.lo, nd.hi

    def tree_index(self, u: int) -> int:
        return self._structure[u].tree

    def lsupp(self) -> tuple[int, ...]:
        return tuple(u for u, nd in self._structure.items() if nd.left is None)

    def terminal_nodes(self) -> tuple[int, ...]:
        return tuple(u for u, nd in self._structure.items()
                     if nd.left is None and nd.right is None)

    def descendants(self, u: int) -> tuple[int, ...]:
        lo, hi = self.int_set(u)
        return tuple(range(lo, hi + 1))

    def is_positive(self) -> bool:
        return not self.trees or self.trees[0][0] >= 1

    def is_linear(self) -> bool:
        """A single tree forming a path."""
        return len(self.trees) == 1 and all(len(self.children(u)) <= 1 for u in self.nodes)

    def components(self) -> tuple[IndexedForest, ...]:
        return tuple(IndexedForest((t,)) for t in self.trees)

    # -- N-vector bijection ----------------------------------------------

    def code(self) -> NVector:
        counts: dict[int, int] = {}
        for nd in self._structure.values():
            counts[nd.rho] = counts.get(nd.rho, 0) + 1
        return NVector(counts)

    @classmethod
    def from_code(cls, c: NVector | Sequence[int]) -> IndexedForest:
        if not isinstance(c, NVector):
            c = NVector(c)
        return cls(_decode(dict(c.items())))

    # -- operations ------------------------------------------------------

    def shift(self, j: int) -> IndexedForest:
        return IndexedForest(tuple((s + j, t) for s, t in self.trees))

    def trim(self, v: int, compress: bool = False) -> IndexedForest:
        """
        Remove the terminal node v; its tree on [a,b] becomes a tree on [a,b-1].
        With ``compress`` the trees right of v also move one unit left, which
        is the form the forest-polynomial recurrence needs once F has several
        trees.
        """
        if v not in self._structure or v not in self.terminal_nodes():
            raise ValueError(f"node {v} is not terminal")
        k = self.tree_index(v)
        start, shape = self.trees[k]
        new_shape = _remove_node(shape, v - start)
        trees = list(self.trees)
        if new_shape is None:
            del trees[k]
        else:
            trees[k] = (start, new_shape)
        if compress:
            trees = [(s - 1, t) if s > v else (s, t) for s, t in trees]
        return IndexedForest(tuple(trees))

    def mirror(self, n: int) -> IndexedForest:
        """Reflect in [n-1]: label i becomes n - i, left and right swap."""
        trees = [(n - (s + shape_size(t) - 1), mirror_shape(t)) for s, t in self.trees]
        return IndexedForest(tuple(sorted(trees)))

    def dump(self) -> str:
        if not self.trees:
            return "∅"
        return " ".join(f"{a}-{b}:{_show(t)}" for (a, b), (_, t) in zip(self.intervals(), self.trees))

    def __str__(self) -> str:
        return str(self.code())

    def __repr__(self) -> str:
        return f"IndexedForest.from_code({self.code()})"

    def __lt__(self, other: IndexedForest) -> bool:
        return _forest_sort_key(self) < _forest_sort_key(other)


def _forest_sort_key(f: IndexedForest):
    return f.code().items()


def _remove_node(t: Shape, k: int) -> Shape:
    """Delete the k-th internal node (inorder), which must be terminal."""
    lsize = shape_size(t[0])
    if k < lsize:
        return (_remove_node(t[0], k), t[1])
    if k == lsize:
        assert t[0] is None and t[1] is None
        return None
    return (t[0], _remove_node(t[1], k - lsize - 1))


def _decode(c: dict[int, int]) -> tuple:
    """Split c greedily into ballot blocks, one tree per block."""
    trees = []
    if not c:
        return ()
    i = min(c)
    last = max(c)
    while i <= last:
        if c.get(i, 0) == 0:
            i += 1
            continue
        total, m = 0, 0
        while True:
            total += c.get(i + m, 0)
            m += 1
            if total < m:
                break
        size = m - 1
        assert total == size, "ballot decomposition failed"
        trees.append((i, _decode_tree(c, i, size)))
        i += size + 1
    return tuple(trees)


def _decode_tree(c: dict[int, int], a: int, size: int) -> Shape:
    """Shape of the tree on [a, a+size-1] whose code is c restricted there."""
    rest = {j: c.get(j, 0) for j in range(a, a + size)}
    rest[a] -= 1
    rest = {j: v for j, v in rest.items() if v}
    sub = _decode(rest)
    covered = set()
    for s, t in sub:
        covered.update(range(s, s + shape_size(t)))
    missing = [j for j in range(a, a + size) if j not in covered]
    assert len(missing) == 1 and covered <= set(range(a, a + size)), "not a tree code"
    p = missing[0]
    left = right = None
    for s, t in sub:
        if s + shape_size(t) - 1 == p - 1:
            left = t
        elif s == p + 1:
            right = t
        else:
            raise AssertionError("not a tree code")
    return (left, right)


def forests_with_support(support: Iterable[int]) -> list[IndexedForest]:
    """All indexed forests on a given finite support set."""
    s = sorted(set(support))
    intervals = []
    for x in s:
        if intervals and intervals[-1][1] == x - 1:
            intervals[-1][1] = x
        else:
            intervals.append([x, x])
    out = [()]
    for a, b in intervals:
        out = [f + ((a, t),) for f in out for t in binary_trees(b - a + 1)]
    return sorted(IndexedForest(f) for f in out)


def forests_in(lo: int, hi: int, max_size: int | None = None) -> list[IndexedForest]:
    """All indexed forests with support inside [lo, hi]."""
    pts = list(range(lo, hi + 1))
    out = []
    for k in range(len(pts) + 1):
        if max_size is not None and k > max_size:
            break
        for sup in combinations(pts, k):
            out.extend(forests_with_support(sup))
    return sorted(out)


class LabeledForest(NamedTuple):
    """An indexed forest with node labels listed in inorder."""
    forest: IndexedForest
    labels: tuple

    def label(self, u: int):
        return self.labels[self.forest.nodes.index(u)]

    def as_dict(self) -> dict:
        return dict(zip(self.forest.nodes, self.labels))

    def __str__(self) -> str:
        return f"{self.forest.code()} " + " ".join(map(str, self.labels))


def canonical_flag(forest: IndexedForest) -> tuple[BarredLetter, ...]:
    """rho_F with equal values barred 1, 2, ... in inorder."""
    seen: dict[int, int] = {}
    out = []
    for r in forest.rho_values:
        seen[r] = seen.get(r, 0) + 1
        out.append(BarredLetter(r, seen[r]))
    return tuple(out)


def is_decreasing(forest: IndexedForest, labels: Sequence[int]) -> bool:
    lab = dict(zip(forest.nodes, labels))
    if len(set(labels)) != len(labels):
        return False
    return all(lab[u] > lab[c] for u in forest.nodes for c in forest.children(u))


def is_lbs(forest: IndexedForest, labels: Sequence[BarredLetter]) -> bool:
    if len(labels) != forest.size or len(set(labels)) != len(labels):
        return False
    lab = dict(zip(forest.nodes, labels))
    for u in forest.nodes:
        x = lab[u]
        if not isinstance(x, BarredLetter) or x.copy < 1:
            return False
        lo, hi = forest.int_set(u)
        if not lo <= x.value <= hi:
            return False
        l, r = forest.left(u), forest.right(u)
        if l is not None and not lab[l] < x:
            return False
        if r is not None and not x < lab[r]:
            return False
    return True


def decreasing_labelings(forest: IndexedForest, n: int | None = None) -> list[tuple[int, ...]]:
    """
    Decreasing labelings with distinct labels from [n] (default n = |F|),
    sorted lexicographically on the inorder label sequence.
    """
    k = forest.size
    if n is None:
        n = k
    if n < k:
        raise ValueError("n must be at least |F|")
    base = _linear_extensions(forest)
    if n == k:
        return base
    out = []
    for subset in combinations(range(1, n + 1), k):
        out.extend(tuple(subset[x - 1] for x in lab) for lab in base)
    return sorted(out)


def _linear_extensions(forest: IndexedForest) -> list[tuple[int, ...]]:
    nodes = forest.nodes
    index = {u: i for i, u in enumerate(nodes)}
    lab = [0] * len(nodes)
    out = []

    def rec(available: frozenset, label: int):
        if label == 0:
            out.append(tuple(lab))
            return
        for u in available:
            lab[index[u]] = label
            rec((available - {u}) | set(forest.children(u)), label - 1)
        # lab entries are overwritten on every branch

    rec(frozenset(forest.roots()), len(nodes))
    return sorted(out)


def lbs_labelings(forest: IndexedForest, letters: Iterable[BarredLetter] | None = None,
                  max_copy: int | None = None) -> list[tuple[BarredLetter, ...]]:
    """
    LBS labelings of ``forest``.

    With ``letters`` given, every letter is used exactly once. Otherwise all
    LBS labelings with copy indices at most ``max_copy`` (default |F|) are
    listed; that bound realizes every relative order of equal values.
    """
    nodes = forest.nodes
    if letters is not None:
        pool = list(letters)
        if len(pool) != len(nodes):
            raise ValueError("label multiset must have |F| letters")
        if len(set(pool)) != len(pool):
            raise ValueError("labels must be distinct")
    else:
        cap = forest.size if max_copy is None else max_copy
        pool = None
    order = []

    def preorder(u):
        order.append(u)
        for c in (forest.left(u), forest.right(u)):
            if c is not None:
                preorder(c)

    for r in forest.roots():
        preorder(r)
    index = {u: i for i, u in enumerate(nodes)}
    chosen: dict[int, BarredLetter] = {}
    used: set = set()
    out = []

    def candidates(u):
        lo, hi = forest.int_set(u)
        if pool is not None:
            return [x for x in pool if lo <= x.value <= hi and x not in used]
        return [BarredLetter(v, j) for v in range(lo, hi + 1) for j in range(1, cap + 1)
                if BarredLetter(v, j) not in used]

    def rec(k):
        if k == len(order):
            lab = [None] * len(nodes)
            for u, x in chosen.items():
                lab[index[u]] = x
            out.append(tuple(lab))
            return
        u = order[k]
        p = forest.parent(u)
        for x in candidates(u):
            if p is not None:
                if forest.left(p) == u and not x < chosen[p]:
                    continue
                if forest.right(p) == u and not chosen[p] < x:
                    continue
            chosen[u] = x
            used.add(x)
            rec(k + 1)
            used.discard(x)
            del chosen[u]

    rec(0)
    return sorted(out)


def multinomial(total: int, parts: Sequence[int]) -> int:
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def binom(n: int, k: int) -> int:
    return comb(n, k)
