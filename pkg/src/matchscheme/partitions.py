"""Integer partitions, dominance order and set partitions of a given shape.

Partitions are plain tuples of positive integers in weakly decreasing order;
``()`` is the empty partition.  All counting is done in exact integers and
rationals use :class:`fractions.Fraction`.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

Partition = tuple[int, ...]
SetPartition = tuple[tuple[int, ...], ...]

# exact scalars throughout the package
ExactScalar = Fraction


def make_partition(parts: Iterable[int]) -> Partition:
    """Normalise ``parts`` into a partition (sorted, zeros dropped)."""
    parts = [int(p) for p in parts]
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    return tuple(sorted((p for p in parts if p), reverse=True))


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 1 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def parse_partition(text: str) -> Partition:
    """Parse ``"4,2"`` (whitespace and brackets tolerated) into ``(4, 2)``."""
    body = text.strip().strip("()[]").replace(" ", "")
    if not body:
        return ()
    try:
        parts = [int(tok) for tok in body.split(",") if tok != ""]
    except ValueError as exc:
        raise ValueError(f"cannot parse partition from {text!r}") from exc
    if any(p <= 0 for p in parts):
        raise ValueError(f"parts must be positive: {text!r}")
    return make_partition(parts)


def format_partition(lam: Partition) -> str:
    return ",".join(map(str, lam))


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse-lexicographic order, ``(n)`` first."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, cap), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(out)


def _prefix_sums(lam: Partition, length: int) -> list[int]:
    sums, acc = [], 0
    for i in range(length):
        acc += lam[i] if i < len(lam) else 0
        sums.append(acc)
    return sums


def dominates(mu: Partition, lam: Partition) -> bool:
    """True iff ``lam`` is dominated by ``mu`` (``lam <| mu``)."""
    if sum(mu) != sum(lam):
        raise ValueError(f"size mismatch: {mu} vs {lam}")
    length = max(len(mu), len(lam))
    return all(a <= b for a, b in zip(_prefix_sums(lam, length), _prefix_sums(mu, length)))


def dominating_partitions(lam: Partition) -> list[Partition]:
    """Every partition ``mu`` dominating ``lam``, in reverse-lexicographic order.

    Generated directly with prefix-sum pruning, so it stays cheap for large
    ``|lam|`` when ``lam`` has a long first row.
    """
    n = sum(lam)
    need = _prefix_sums(lam, n)
    out: list[Partition] = []

    def rec(prefix: list[int], total: int, cap: int) -> None:
        if total == n:
            out.append(tuple(prefix))
            return
        i = len(prefix)
        for part in range(min(cap, n - total), 0, -1):
            if total + part < need[i]:
                break
            prefix.append(part)
            rec(prefix, total + part, part)
            prefix.pop()

    rec([], 0, n)
    return out


def multiplicities(lam: Partition) -> Counter:
    return Counter(lam)


def double(lam: Partition) -> Partition:
    """The partition ``2*lam`` of ``2|lam|``."""
    return tuple(2 * p for p in lam)


def odd_double_factorial(k: int) -> int:
    """``(2k-1)!!``; equals 1 for ``k = 0``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return prod(range(2 * k - 1, 0, -2))


def double_factorial_product(lam: Partition) -> int:
    """``prod_i (2*lam_i - 1)!!``."""
    return prod(odd_double_factorial(p) for p in lam)


def content_polynomial_at(lam: Partition, x: int) -> int:
    """Evaluate ``prod_{(i,j) in lam} (x - i + 2j - 1)`` (1-indexed cells)."""
    return prod(
        x - i + 2 * j - 1
        for i, row in enumerate(lam, start=1)
        for j in range(1, row + 1)
    )


def z_value(rho: Partition) -> int:
    """Centraliser order ``z_rho = prod_i i^{m_i} m_i!``."""
    return prod(i**m * factorial(m) for i, m in Counter(rho).items())


def set_partition_count(shape: Partition) -> int:
    """Number of set partitions of ``{1..|shape|}`` with the given block sizes."""
    denom = prod(factorial(s) ** m * factorial(m) for s, m in Counter(shape).items())
    return factorial(sum(shape)) // denom


def refinement_count(lam: Partition) -> int:
    """Set partitions of shape ``2*lam`` refined by one fixed perfect matching."""
    return set_partition_count(lam)


def set_partitions_of_shape(N: int, shape: Partition) -> Iterator[SetPartition]:
    """Yield every set partition of ``{1..N}`` whose block sizes form ``shape``.

    Blocks are emitted sorted by their minimum element.  The block holding the
    smallest free element is chosen by trying the remaining distinct sizes in
    decreasing order and then its other members in lexicographic order, so the
    iteration order is deterministic and every set partition appears once.
    """
    if sum(shape) != N:
        raise ValueError(f"shape {shape} is not a partition of {N}")
    sizes = Counter(shape)

    def rec(free: tuple[int, ...], blocks: list[tuple[int, ...]]):
        if not free:
            yield tuple(blocks)
            return
        first, rest = free[0], free[1:]
        for size in sorted(sizes, reverse=True):
            if not sizes[size]:
                continue
            sizes[size] -= 1
            for others in combinations(rest, size - 1):
                block = (first,) + others
                taken = set(others)
                blocks.append(block)
                yield from rec(tuple(v for v in rest if v not in taken), blocks)
                blocks.pop()
            sizes[size] += 1

    yield from rec(tuple(range(1, N + 1)), [])


def set_partition_shape(blocks: SetPartition) -> Partition:
    return make_partition(len(b) for b in blocks)


def is_subpartition(mu: Partition, lam: Partition) -> bool:
    """``mu`` is obtained from ``lam`` by deleting some parts (``mu`` ≼ ``lam``)."""
    return not (Counter(mu) - Counter(lam))


def sub_partitions(lam: Partition) -> list[Partition]:
    """All nonempty proper sub-multisets of the parts of ``lam``."""
    counts = sorted(Counter(lam).items(), reverse=True)
    found = []
    for choice in product(*(range(m + 1) for _, m in counts)):
        mu = tuple(p for (p, _), k in zip(counts, choice) for _ in range(k))
        if mu and mu != tuple(lam):
            found.append(mu)
    return found
