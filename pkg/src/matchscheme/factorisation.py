"""lambda-factorisations: checkers, index arithmetic, feasibility screens, derivation.

A nonempty set ``D`` of perfect matchings of K_2n is a lambda-factorisation of
index ``c`` when every set partition of ``{1..2n}`` of shape ``2*lambda`` is
refined by exactly ``c`` members of ``D``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from .matchings import Matching, MatchingSet, space
from .partitions import (
    Partition,
    SetPartition,
    dominates,
    dominating_partitions,
    double,
    double_factorial_product,
    odd_double_factorial,
    partitions_of,
    set_partitions_of_shape,
    sub_partitions,
)
from .scheme import ZonalTable, dual_distribution, zonal_table


class InfeasibleParameters(ValueError):
    """The requested (lambda, index) pair cannot be realised."""


@dataclass(frozen=True)
class FactorisationReport:
    lam: Partition
    index: int | None = None
    witness: SetPartition | None = None
    witness_count: int | None = None
    expected_count: int | None = None

    @property
    def is_factorisation(self) -> bool:
        return self.index is not None

    def __bool__(self) -> bool:
        return self.is_factorisation

    def __str__(self) -> str:
        if self.is_factorisation:
            return f"yes: {self.lam}-factorisation of index {self.index}"
        blocks = " | ".join(",".join(map(str, b)) for b in self.witness)
        return (
            f"no: set partition [{blocks}] is refined by {self.witness_count} "
            f"members, another by {self.expected_count}"
        )


def _require_size(D: MatchingSet, lam: Partition) -> None:
    if len(D) == 0:
        raise ValueError("empty matching set")
    if sum(lam) != D.n:
        raise ValueError(f"{lam} is not a partition of n={D.n}")


@lru_cache(maxsize=64)
def shape_labels(n: int, lam: Partition) -> tuple[tuple[SetPartition, ...], np.ndarray]:
    """All set partitions of shape ``2*lam`` and their per-vertex block labels."""
    blocks = tuple(set_partitions_of_shape(2 * n, double(lam)))
    labels = np.empty((len(blocks), 2 * n), dtype=np.int8)
    for r, sp in enumerate(blocks):
        for b, block in enumerate(sp):
            labels[r, [v - 1 for v in block]] = b
    return blocks, labels


def refinement_counts(D: MatchingSet, lam: Partition) -> np.ndarray:
    """Number of members of ``D`` refining each set partition of shape ``2*lam``."""
    _, labels = shape_labels(D.n, tuple(lam))
    pairs = D.pair_array
    chunk = max(1, 4_000_000 // max(1, len(D) * D.n))
    out = np.empty(len(labels), dtype=np.int64)
    for start in range(0, len(labels), chunk):
        block = labels[start:start + chunk]
        hit = (block[:, pairs[:, :, 0]] == block[:, pairs[:, :, 1]]).all(axis=2)
        out[start:start + chunk] = hit.sum(axis=1)
    return out


def check_by_definition(D: MatchingSet, lam: Partition) -> FactorisationReport:
    lam = tuple(lam)
    _require_size(D, lam)
    blocks, _ = shape_labels(D.n, lam)
    counts = refinement_counts(D, lam)
    c = int(counts[0])
    bad = np.flatnonzero(counts != c)
    if len(bad) == 0:
        return FactorisationReport(lam, index=c)
    r = int(bad[0])
    return FactorisationReport(
        lam, witness=blocks[r], witness_count=int(counts[r]), expected_count=c
    )


def design_targets(lam: Partition) -> list[Partition]:
    """Eigenspaces that must be annihilated: every ``mu`` dominating ``lam`` except ``(n)``."""
    n = sum(lam)
    return [mu for mu in dominating_partitions(lam) if mu != (n,)]


def check_by_design(D: MatchingSet, lam: Partition, table: ZonalTable | None = None) -> bool:
    lam = tuple(lam)
    _require_size(D, lam)
    dual = dual_distribution(D, table or zonal_table(D.n))
    return all(dual[mu] == 0 for mu in design_targets(lam))


def expected_size(lam: Partition, c: int) -> int:
    """``|D|`` of a lambda-factorisation of index ``c``."""
    size = Fraction(c * odd_double_factorial(sum(lam)), double_factorial_product(lam))
    if size.denominator != 1:
        raise InfeasibleParameters(f"size {size} of a {lam}-factorisation of index {c} is not integral")
    return size.numerator


def index_conversion(lam: Partition, mu: Partition, c: int) -> Fraction:
    """Index of ``D`` as a ``mu``-factorisation, given index ``c`` as a ``lam``-factorisation."""
    if not dominates(mu, lam):
        raise ValueError(f"{mu} does not dominate {lam}")
    return Fraction(c * double_factorial_product(mu), double_factorial_product(lam))


class Consequence(NamedTuple):
    mu: Partition
    index: Fraction

    @property
    def contradiction(self) -> bool:
        return self.index.denominator != 1


def dominance_consequences(lam: Partition, c: int) -> list[Consequence]:
    """Every ``mu`` strictly dominating ``lam`` with the induced index."""
    lam = tuple(lam)
    return [
        Consequence(mu, index_conversion(lam, mu, c))
        for mu in dominating_partitions(lam)
        if mu != lam
    ]


# ---------------------------------------------------------------------------
# feasibility screen

# (shape, index) pairs known not to exist
KNOWN_NONEXISTENT: set[tuple[Partition, int]] = {((2, 2), 1), ((2, 1, 1), 1)}


@dataclass(frozen=True)
class Violation:
    rule: str
    detail: str


@lru_cache(maxsize=None)
def _arithmetic_violations(lam: Partition, c: int, strict: bool = False) -> tuple[Violation, ...]:
    n = sum(lam)
    out: list[Violation] = []
    size = Fraction(c * odd_double_factorial(n), double_factorial_product(lam))
    if size.denominator != 1:
        out.append(Violation("size", f"|D| = {size} is not an integer"))
    if lam != (n,):
        counts = Counter(lam)
        for k in sorted(counts):
            for l in sorted(counts):
                if l < k or (l == k and counts[k] < 2):
                    continue
                if ((2 * l + 1) * c) % (2 * k - 1):
                    out.append(Violation("parts", f"2*{k}-1 does not divide (2*{l}+1)*{c}"))
    if len(lam) == 2 and lam[1] >= 2:
        t = lam[1]
        for k in range(t - 1, 0, -1):
            ck = index_conversion(lam, (n - k, k), c)
            if ck.denominator != 1:
                out.append(Violation("two-parts", f"index as ({n - k},{k})-factorisation would be {ck}"))
    if strict:
        for mu, ck in dominance_consequences(lam, c):
            if ck.denominator != 1:
                out.append(Violation("dominance", f"index as {mu}-factorisation would be {ck}"))
    return tuple(out)


def _exclusion_2111(lam: Partition, c: int) -> list[Violation]:
    n = sum(lam)
    if c == 1 and n >= 5 and lam == (2,) + (1,) * (n - 2):
        return [Violation("2-1-1", "no (2,1,...,1)-factorisation of index 1 exists for n >= 5")]
    return []


def feasibility_screen(lam: Partition, c: int = 1, strict: bool = False) -> list[Violation]:
    """Necessary conditions for a lambda-factorisation of index ``c``.

    An empty list means "not ruled out", never "exists".  Every shape obtained
    by deleting parts of ``lam`` is screened as well, because derivation
    would produce a factorisation of that shape with the same index.  With
    ``strict`` the index is also converted to every dominating shape, which
    enumerates the whole dominance up-set and gets slow for long hooks.
    """
    lam = tuple(lam)
    out = list(_arithmetic_violations(lam, c, strict)) + _exclusion_2111(lam, c)
    if (lam, c) in KNOWN_NONEXISTENT:
        out.append(Violation("known", f"{lam} with index {c} does not exist"))
    for mu in sub_partitions(lam):
        if (mu, c) in KNOWN_NONEXISTENT:
            out.append(Violation("derivation", f"contains the nonexistent shape {mu}"))
        elif _arithmetic_violations(mu, c, strict) or _exclusion_2111(mu, c):
            out.append(Violation("derivation", f"would derive to an infeasible {mu}-factorisation"))
    return out


def _eval_term(term: str, n: int) -> int:
    term = term.strip()
    if not term.startswith("n"):
        return int(term)
    rest = term[1:]
    return n + int(rest) if rest else n


def parse_pattern(pattern: str, n: int) -> Partition | None:
    """Instantiate a shape pattern such as ``"n-4,3,1"`` or ``"n-3,1^3"`` at ``n``.

    A token ``a^k`` repeats ``a`` ``k`` times; ``a`` and ``k`` may be of the
    form ``n``, ``n-j`` or a constant.  Returns ``None`` when the instance is
    not a partition.
    """
    parts: list[int] = []
    for tok in pattern.replace(" ", "").strip("()").split(","):
        base, _, reps = tok.partition("^")
        value = _eval_term(base, n)
        count = _eval_term(reps, n) if reps else 1
        if count < 0:
            return None
        parts.extend([value] * count)
    if not parts or any(p <= 0 for p in parts):
        return None
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        return None
    return tuple(parts)


def screen_table(
    pattern: str, n_range: Iterable[int], c: int = 1, strict: bool = False
) -> dict[int, list[Violation]]:
    """Screen a shape pattern over a range of ``n``; invalid instances are skipped."""
    out = {}
    for n in n_range:
        lam = parse_pattern(pattern, n)
        if lam is not None:
            out[n] = feasibility_screen(lam, c, strict)
    return out


# ---------------------------------------------------------------------------
# derivation


def derive(D: MatchingSet, S: Iterable[int]) -> MatchingSet | None:
    """Members of ``D`` refining ``{S, complement}``, restricted to the complement.

    The complement is relabelled order-preservingly onto ``{1..2n-2k}``.
    Returns ``None`` when ``S`` is the whole vertex set (nothing is left).
    """
    S = frozenset(int(v) for v in S)
    if len(S) % 2:
        raise ValueError("S must have even size")
    if not S <= set(range(1, 2 * D.n + 1)):
        raise ValueError("S is not a subset of the vertex set")
    rest = [v for v in range(1, 2 * D.n + 1) if v not in S]
    new_n = len(rest) // 2
    if new_n == 0:
        return None
    relabel = {v: i for i, v in enumerate(rest, start=1)}
    kept = []
    for m in D:
        if all((a in S) == (b in S) for a, b in m.pairs):
            kept.append(Matching((relabel[a], relabel[b]) for a, b in m.pairs if a not in S))
    return MatchingSet(new_n, kept)


def full_index(lam: Partition) -> int:
    """Index of the set of all matchings as a lambda-factorisation."""
    return double_factorial_product(lam)
