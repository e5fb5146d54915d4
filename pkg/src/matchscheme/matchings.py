"""Perfect matchings of K_2n as points of the matching association scheme.

A matching is stored canonically as sorted pairs ``(a, b)`` with ``a < b`` on
the vertex set ``{1..2n}``.  :class:`MatchingSpace` holds every matching for a
given ``n`` as numpy arrays so that coset distances can be computed for many
pairs at once.
"""
from __future__ import annotations

import json
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .partitions import Partition, make_partition, odd_double_factorial, partitions_of
from .symmetric import Permutation

MAX_N = 8


class Matching:
    """A perfect matching of ``{1..2n}`` in canonical pair order."""

    __slots__ = ("pairs", "_partner")

    def __init__(self, pairs: Iterable[Sequence[int]]):
        canon = tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in pairs))
        verts = [v for p in canon for v in p]
        if sorted(verts) != list(range(1, len(verts) + 1)):
            raise ValueError(f"pairs do not form a perfect matching of 1..{len(verts)}: {canon}")
        self.pairs: tuple[tuple[int, int], ...] = canon
        self._partner = None

    @classmethod
    def base(cls, n: int) -> "Matching":
        """The base matching ``{{1,2},{3,4},...,{2n-1,2n}}``."""
        return cls((2 * i + 1, 2 * i + 2) for i in range(n))

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def partner(self) -> tuple[int, ...]:
        """``partner[v]`` is the mate of vertex ``v``; index 0 is unused."""
        if self._partner is None:
            mate = [0] * (2 * self.n + 1)
            for a, b in self.pairs:
                mate[a], mate[b] = b, a
            self._partner = tuple(mate)
        return self._partner

    def refines(self, blocks: Iterable[Iterable[int]]) -> bool:
        """True iff every edge lies inside one block of the set partition."""
        label = {}
        for i, block in enumerate(blocks):
            for v in block:
                label[v] = i
        return all(label[a] == label[b] for a, b in self.pairs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matching) and self.pairs == other.pairs

    def __lt__(self, other: "Matching") -> bool:
        return rank_matching(self) < rank_matching(other)

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        return f"Matching({self.pairs})"

    def __str__(self) -> str:
        return " ".join(f"{a}-{b}" for a, b in self.pairs)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must lie in 1..{MAX_N}, got {n}")


def _iter_pairs(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    # mate of the smallest free vertex is chosen in ascending order
    def rec(free: tuple[int, ...], acc: list[tuple[int, int]]):
        if not free:
            yield tuple(acc)
            return
        first = free[0]
        for j in range(1, len(free)):
            acc.append((first, free[j]))
            yield from rec(free[1:j] + free[j + 1:], acc)
            acc.pop()

    yield from rec(tuple(range(1, 2 * n + 1)), [])


def all_matchings(n: int) -> list[Matching]:
    """Every perfect matching of K_2n; index 0 is the base matching."""
    _check_n(n)
    return list(space(n).matchings)


def rank_matching(m: Matching) -> int:
    """Position of ``m`` in :func:`all_matchings` order, without enumeration."""
    free = list(range(1, 2 * m.n + 1))
    mate = m.partner
    rank = 0
    while free:
        v = free.pop(0)
        j = free.index(mate[v])
        rank = rank * (len(free)) + j
        free.pop(j)
    return rank


def apply_perm(sigma: Permutation, m: Matching) -> Matching:
    if sigma.degree != 2 * m.n:
        raise ValueError("permutation degree does not match matching")
    return Matching((sigma(a), sigma(b)) for a, b in m.pairs)


def coset_distance(m1: Matching, m2: Matching) -> Partition:
    """Half the cycle lengths of the union of two matchings."""
    if m1.n != m2.n:
        raise ValueError("matchings live on different vertex sets")
    p1, p2 = m1.partner, m2.partner
    seen = [False] * (2 * m1.n + 1)
    parts = []
    for start in range(1, 2 * m1.n + 1):
        if seen[start]:
            continue
        length, v = 0, start
        while True:
            seen[v] = True
            w = p1[v]
            seen[w] = True
            length += 1
            v = p2[w]
            if v == start:
                break
        parts.append(length)
    return make_partition(parts)


class MatchingSpace:
    """All matchings of K_2n with array views for vectorised distance queries."""

    def __init__(self, n: int):
        _check_n(n)
        self.n = n
        self.size = odd_double_factorial(n)
        self.partitions = partitions_of(n)
        self.partition_index = {p: i for i, p in enumerate(self.partitions)}
        pairs = np.fromiter(
            (v for m in _iter_pairs(n) for p in m for v in p),
            dtype=np.int8,
            count=self.size * 2 * n,
        )
        self.pairs = pairs.reshape(self.size, n, 2) - 1  # 0-indexed vertices
        partner = np.empty((self.size, 2 * n), dtype=np.int8)
        rows = np.arange(self.size)[:, None]
        partner[rows, self.pairs[:, :, 0]] = self.pairs[:, :, 1]
        partner[rows, self.pairs[:, :, 1]] = self.pairs[:, :, 0]
        self.partner = partner
        # coset types are looked up through a mixed-radix code of part counts
        radix = n + 1
        self._weights = radix ** np.arange(n, dtype=np.int64)
        codes = np.array(
            [sum(lam.count(L) * radix ** (L - 1) for L in range(1, n + 1)) for lam in self.partitions],
            dtype=np.int64,
        )
        order = np.argsort(codes)
        self._codes_sorted = codes[order]
        self._code_order = order

    @cached_property
    def matchings(self) -> tuple[Matching, ...]:
        return tuple(
            Matching((int(a) + 1, int(b) + 1) for a, b in row) for row in self.pairs
        )

    def index(self, m: Matching) -> int:
        if m.n != self.n:
            raise ValueError("matching lives on a different vertex set")
        return rank_matching(m)

    def relation_indices(self, x: int | np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Partition index of ``coset_distance(x, y)`` for every ``y`` in ``ys``.

        ``x`` is a single matching index or an array broadcastable with ``ys``.
        """
        n = self.n
        px = self.partner[x].astype(np.int64)
        py = self.partner[ys].astype(np.int64)
        px = np.broadcast_to(px, py.shape)
        # py o px splits each 2L-cycle of the union into two L-cycles
        tau = np.take_along_axis(py, px, axis=1)
        idx = np.arange(2 * n)
        cur = tau.copy()
        length = np.zeros(tau.shape, dtype=np.int64)
        for step in range(1, n + 1):
            hit = (cur == idx) & (length == 0)
            length[hit] = step
            if step < n:
                cur = np.take_along_axis(tau, cur, axis=1)
        code = np.zeros(len(tau), dtype=np.int64)
        for L in range(1, n + 1):
            parts_L = (length == L).sum(axis=1) // (2 * L)
            code += parts_L * self._weights[L - 1]
        pos = np.searchsorted(self._codes_sorted, code)
        return self._code_order[pos]

    @lru_cache(maxsize=None)
    def relation_matrix(self) -> np.ndarray:
        """Full ``|X| x |X|`` matrix of relation indices (only for n <= 5)."""
        if self.n > 5:
            raise ValueError("relation matrix is only built for n <= 5")
        out = np.empty((self.size, self.size), dtype=np.int8)
        everyone = np.arange(self.size)
        for x in range(self.size):
            out[x] = self.relation_indices(x, everyone)
        return out

    def refining_mask(self, labels: np.ndarray, cols: np.ndarray | None = None) -> np.ndarray:
        """Boolean ``(len(labels), cols)`` mask: matching refines set partition.

        ``labels`` holds one block label per 0-indexed vertex for each set partition.
        """
        pairs = self.pairs if cols is None else self.pairs[cols]
        labels = np.atleast_2d(labels)
        left = labels[:, pairs[:, :, 0]]
        right = labels[:, pairs[:, :, 1]]
        return (left == right).all(axis=2)


@lru_cache(maxsize=None)
def space(n: int) -> MatchingSpace:
    return MatchingSpace(n)


class MatchingSet:
    """A duplicate-free set of matchings of K_2n, kept in canonical order."""

    def __init__(self, n: int, matchings: Iterable[Matching] = ()):
        # sets beyond MAX_N are allowed; only operations that enumerate
        # the whole space are limited
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        self.n = n
        members = set()
        for m in matchings:
            if m.n != n:
                raise ValueError(f"matching {m} is not on {2 * n} points")
            members.add(m)
        self.matchings: tuple[Matching, ...] = tuple(sorted(members, key=rank_matching))
        self._inner = None
        self._dual = None

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "MatchingSet":
        sp = space(n)
        return cls(n, (sp.matchings[int(i)] for i in indices))

    @cached_property
    def pair_array(self) -> np.ndarray:
        """Members as an ``(len, n, 2)`` array of 0-indexed vertices."""
        return np.array([m.pairs for m in self.matchings], dtype=np.int64).reshape(-1, self.n, 2) - 1

    @cached_property
    def indices(self) -> np.ndarray:
        return np.array([rank_matching(m) for m in self.matchings], dtype=np.int64)

    def __len__(self) -> int:
        return len(self.matchings)

    def __iter__(self) -> Iterator[Matching]:
        return iter(self.matchings)

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.matchings)

    def __contains__(self, m: Matching) -> bool:
        return m in self._members

    def __eq__(self, other) -> bool:
        return isinstance(other, MatchingSet) and self.n == other.n and self.matchings == other.matchings

    def __repr__(self) -> str:
        return f"MatchingSet(n={self.n}, size={len(self)})"

    def without(self, m: Matching) -> "MatchingSet":
        return MatchingSet(self.n, (x for x in self.matchings if x != m))

    def with_(self, m: Matching) -> "MatchingSet":
        return MatchingSet(self.n, self.matchings + (m,))

    # -- serialisation -------------------------------------------------
    def to_json(self) -> str:
        return json.dumps({"n": self.n, "matchings": [[list(p) for p in m.pairs] for m in self.matchings]})

    def to_text(self) -> str:
        return "".join(str(m) + "\n" for m in self.matchings)


class FormatError(ValueError):
    """Malformed matching-set input, with a location in the message."""


def parse_matching_set(text: str) -> MatchingSet:
    """Read the JSON format, or the one-matching-per-line text format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def _parse_json(text: str) -> MatchingSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict) or "n" not in data or "matchings" not in data:
        raise FormatError("line 1: expected an object with keys 'n' and 'matchings'")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError("line 1: 'n' must be a positive integer")
    found = []
    for i, raw in enumerate(data["matchings"]):
        try:
            m = Matching(raw)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"matching #{i}: {exc}") from exc
        if m.n != n:
            raise FormatError(f"matching #{i}: has {m.n} pairs, expected {n}")
        found.append(m)
    return MatchingSet(n, found)


def _parse_text(text: str) -> MatchingSet:
    found, n = [], None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        pairs = []
        for col, tok in _tokens(line):
            try:
                a, b = tok.split("-")
                pairs.append((int(a), int(b)))
            except ValueError as exc:
                raise FormatError(f"line {lineno}, column {col}: bad edge {tok!r}") from exc
        try:
            m = Matching(pairs)
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
        if n is None:
            n = m.n
        elif m.n != n:
            raise FormatError(f"line {lineno}: has {m.n} pairs, expected {n}")
        found.append(m)
    if n is None:
        raise FormatError("line 1: no matchings found")
    return MatchingSet(n, found)


def _tokens(line: str):
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        yield col + 1, tok
        col += len(tok)


def read_matching_set(path: str | Path) -> MatchingSet:
    return parse_matching_set(Path(path).read_text())
