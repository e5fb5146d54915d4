"""Permutations, cycle types and irreducible characters of symmetric groups.

Characters are evaluated with the Murnaghan-Nakayama rule on beta-sets, degrees
with the hook-length formula.  Permutations are 1-indexed to the outside world.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial, prod
from typing import Iterator, Sequence

import numpy as np

from .partitions import Partition, dominates, make_partition, partitions_of, z_value


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1..m}``; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def from_cycles(cls, m: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(1, m + 1))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, m: int) -> "Permutation":
        """Parse cycle notation such as ``"(1 2 3 4)(5 6)"`` on ``m`` points."""
        cycles = [
            [int(tok) for tok in body.replace(",", " ").split()]
            for body in re.findall(r"\(([^()]*)\)", text)
        ]
        return cls.from_cycles(m, [c for c in cycles if c])

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(x) = self(other(x))
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        moved = [c for c in self.cycles() if len(c) > 1]
        return "".join("(" + " ".join(map(str, c)) + ")" for c in moved) or "()"


def cycle_type(sigma: Permutation) -> Partition:
    return make_partition(len(c) for c in sigma.cycles())


def sign(rho: Partition) -> int:
    return -1 if (sum(rho) - len(rho)) % 2 else 1


def _beta_set(lam: Partition) -> tuple[int, ...]:
    length = len(lam)
    return tuple(lam[i] + length - 1 - i for i in range(length))


def _from_beta(beta: Sequence[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    length = len(beta)
    return make_partition(beta[i] - (length - 1 - i) for i in range(length))


@lru_cache(maxsize=None)
def _mn(lam: Partition, rho: Partition) -> int:
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    beta = _beta_set(lam)
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - k
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in beta if target < c < b)
        new_beta = [c for c in beta if c != b] + [target]
        term = _mn(_from_beta(new_beta), rest)
        total += -term if height % 2 else term
    return total


def character_value(lam: Partition, rho: Partition) -> int:
    """Irreducible character ``chi^lam`` on the class of cycle type ``rho``."""
    lam, rho = tuple(lam), make_partition(rho)
    if sum(lam) != sum(rho):
        raise ValueError(f"size mismatch: {lam} vs {rho}")
    return _mn(lam, rho)


def hook_lengths(lam: Partition) -> list[int]:
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    return [
        (row - j - 1) + (conj[j] - i - 1) + 1
        for i, row in enumerate(lam)
        for j in range(row)
    ]


@lru_cache(maxsize=None)
def character_degree(lam: Partition) -> int:
    """``chi^lam(1)`` by the hook-length formula."""
    return factorial(sum(lam)) // prod(hook_lengths(lam))


def class_size(rho: Partition) -> int:
    return factorial(sum(rho)) // z_value(rho)


def young_rule_constituents(lam: Partition) -> set[Partition]:
    """Constituents of the permutation character on cosets of ``S_lam``."""
    return {mu for mu in partitions_of(sum(lam)) if dominates(mu, lam)}


def hyperoctahedral_elements(n: int) -> Iterator[Permutation]:
    """Every element of ``B_n``, the stabiliser of ``{{1,2},{3,4},...}``.

    Point ``2i-1+d`` goes to block ``pi(i)``, swapped inside the block when
    ``flips[i]`` is set.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    for pi in permutations(range(n)):
        for flips in product((0, 1), repeat=n):
            images = [0] * (2 * n)
            for i in range(n):
                for d in (0, 1):
                    images[2 * i + d] = 2 * pi[i] + (d ^ flips[i]) + 1
            yield Permutation(tuple(images))


def hyperoctahedral_array(n: int) -> np.ndarray:
    """``B_n`` as an integer array of 0-indexed images, one row per element.

    Same element order as :func:`hyperoctahedral_elements`.
    """
    pis = np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)
    flips = np.array(list(product((0, 1), repeat=n)), dtype=np.int8).reshape(-1, n)
    out = np.empty((len(pis), len(flips), 2 * n), dtype=np.int8)
    for d in (0, 1):
        out[:, :, d::2] = 2 * pis[:, None, :] + (d ^ flips[None, :, :])
    return out.reshape(-1, 2 * n)


def coset_type_rep(rho: Partition) -> Permutation:
    """Permutation of ``S_2n`` cycling each consecutive block of ``2*rho_i`` points."""
    m = 2 * sum(rho)
    cycles, start = [], 0
    for part in rho:
        cycles.append(tuple(range(start + 1, start + 2 * part + 1)))
        start += 2 * part
    return Permutation.from_cycles(m, cycles)


def cycle_type_counts(perms: np.ndarray) -> np.ndarray:
    """Per row of 0-indexed permutations, the number of cycles of each length.

    Returns an array of shape ``(rows, m)``; column ``L-1`` counts ``L``-cycles.
    """
    perms = np.asarray(perms, dtype=np.int64)
    rows, m = perms.shape
    idx = np.arange(m)
    cur = perms.copy()
    length = np.zeros((rows, m), dtype=np.int64)
    for step in range(1, m + 1):
        hit = (cur == idx) & (length == 0)
        length[hit] = step
        if step < m:
            cur = np.take_along_axis(perms, cur, axis=1)
    counts = np.zeros((rows, m), dtype=np.int64)
    for L in range(1, m + 1):
        counts[:, L - 1] = (length == L).sum(axis=1) // L
    return counts


def counts_to_partition(counts: Sequence[int]) -> Partition:
    return make_partition(
        L for L, c in enumerate(counts, start=1) for _ in range(int(c))
    )
