"""Spectral data of the perfect matching scheme of the Gelfand pair (S_2n, B_n).

The zonal spherical function values are obtained by averaging characters of
``S_2n`` over ``B_n``: for each double-coset representative the cycle types of
``sigma * b`` (``b`` in ``B_n``) are tallied once and reused for every
eigenspace.  Everything downstream is exact rational arithmetic.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, lcm
from typing import Iterable, Mapping

import numpy as np

from .matchings import Matching, MatchingSet, space
from .partitions import (
    Partition,
    double,
    odd_double_factorial,
    partitions_of,
    z_value,
)
from .symmetric import (
    character_degree,
    character_value,
    coset_type_rep,
    counts_to_partition,
    cycle_type_counts,
    hyperoctahedral_array,
)

Distribution = dict  # Partition -> Fraction, keys in canonical partition order

MAX_TABLE_N = 7


def hyperoctahedral_order(n: int) -> int:
    return 2**n * factorial(n)


@dataclass(frozen=True)
class ZonalTable:
    """``omega[i][j]`` is the zonal spherical function ``omega^mu_rho`` with
    ``mu = partitions[i]`` and ``rho = partitions[j]``."""

    n: int
    partitions: tuple[Partition, ...]
    omega: tuple[tuple[Fraction, ...], ...]
    valency: tuple[int, ...]
    degree: tuple[int, ...]

    def index(self, lam: Partition) -> int:
        return self.partitions.index(tuple(lam))

    def value(self, mu: Partition, rho: Partition) -> Fraction:
        return self.omega[self.index(mu)][self.index(rho)]

    @property
    def size(self) -> int:
        return odd_double_factorial(self.n)


def sphere_size(rho: Partition) -> int:
    """``k_rho = 2^n n! / z_{2 rho}``."""
    return hyperoctahedral_order(sum(rho)) // z_value(double(rho))


def sphere_sizes(n: int, method: str = "formula") -> dict[Partition, int]:
    """Valencies ``k_rho``.

    ``method`` is ``"formula"``, ``"enumerate"`` (count matchings by their
    distance to the base matching) or ``"both"`` (compute both and insist
    they agree).
    """
    if method not in ("formula", "enumerate", "both"):
        raise ValueError(f"unknown method {method!r}")
    formula = {rho: sphere_size(rho) for rho in partitions_of(n)}
    if method == "formula":
        return formula
    sp = space(n)
    rel = sp.relation_indices(0, np.arange(sp.size))
    counts = np.bincount(rel, minlength=len(sp.partitions))
    counted = {rho: int(counts[i]) for i, rho in enumerate(sp.partitions)}
    if method == "both" and counted != formula:
        raise AssertionError(f"sphere sizes disagree: {counted} vs {formula}")
    return counted


def coset_type_tally(rho: Partition, bn: np.ndarray | None = None) -> Counter:
    """Cycle types of ``sigma_rho * b`` over all ``b`` in ``B_n``, with multiplicity."""
    n = sum(rho)
    if bn is None:
        bn = hyperoctahedral_array(n)
    sigma = np.array(coset_type_rep(rho).images, dtype=np.int64) - 1
    tally: Counter = Counter()
    chunk = 1 << 16
    for start in range(0, len(bn), chunk):
        products = sigma[bn[start:start + chunk].astype(np.int64)]
        counts = cycle_type_counts(products)
        rows, freq = np.unique(counts, axis=0, return_counts=True)
        for row, f in zip(rows, freq):
            tally[counts_to_partition(row)] += int(f)
    return tally


@lru_cache(maxsize=None)
def zonal_table(n: int, threads: int = 1) -> ZonalTable:
    if not 1 <= n <= MAX_TABLE_N:
        raise ValueError(f"zonal tables are built for 1 <= n <= {MAX_TABLE_N}")
    parts = partitions_of(n)
    bn = hyperoctahedral_array(n)
    order = len(bn)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            tallies = list(pool.map(lambda r: coset_type_tally(r, bn), parts))
    else:
        tallies = [coset_type_tally(rho, bn) for rho in parts]
    omega = tuple(
        tuple(
            Fraction(sum(c * character_value(double(mu), t) for t, c in tally.items()), order)
            for tally in tallies
        )
        for mu in parts
    )
    return ZonalTable(
        n=n,
        partitions=parts,
        omega=omega,
        valency=tuple(sphere_size(rho) for rho in parts),
        degree=tuple(character_degree(double(mu)) for mu in parts),
    )


def eigenvalue_matrices(table: ZonalTable) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalue matrix ``P`` and dual eigenvalue matrix ``Q``.

    ``P[mu, rho] = k_rho * omega^mu_rho`` (rows eigenspaces, columns relations)
    and ``Q[rho, mu] = chi^{2mu}(1) * omega^mu_rho`` (rows relations, columns
    eigenspaces), so that ``P @ Q == |X| * I``.  Entries are Fractions.
    """
    r = len(table.partitions)
    P = np.empty((r, r), dtype=object)
    Q = np.empty((r, r), dtype=object)
    for i in range(r):
        for j in range(r):
            P[i, j] = table.valency[j] * table.omega[i][j]
            Q[j, i] = table.degree[i] * table.omega[i][j]
    return P, Q


def inner_distribution(Z: MatchingSet | Iterable[Matching], n: int | None = None) -> Distribution:
    """``a_rho = |{(x, y) in Z^2 : d(x, y) = rho}| / |Z|``."""
    if not isinstance(Z, MatchingSet):
        Z = list(Z)
        if not Z:
            raise ValueError("inner distribution of an empty set")
        Z = MatchingSet(n or Z[0].n, Z)
    if len(Z) == 0:
        raise ValueError("inner distribution of an empty set")
    sp = space(Z.n)
    idx = Z.indices
    counts = np.zeros(len(sp.partitions), dtype=np.int64)
    if sp.n <= 5 and len(idx) > 64:
        rel = sp.relation_matrix()[np.ix_(idx, idx)]
        counts += np.bincount(rel.ravel(), minlength=len(counts))
    else:
        step = max(1, (1 << 20) // max(1, len(idx)))
        for start in range(0, len(idx), step):
            xs = idx[start:start + step]
            xx = np.repeat(xs, len(idx))
            yy = np.tile(idx, len(xs))
            counts += np.bincount(sp.relation_indices(xx, yy), minlength=len(counts))
    size = len(idx)
    return {rho: Fraction(int(c), size) for rho, c in zip(sp.partitions, counts)}


def dual_from_inner(inner: Mapping[Partition, Fraction], size: int, table: ZonalTable) -> Distribution:
    """``a'_mu = (2n-1)!! chi^{2mu}(1) / |Z| * sum_rho omega^mu_rho a_rho``."""
    total = table.size
    out = {}
    for i, mu in enumerate(table.partitions):
        acc = sum(
            (table.omega[i][j] * inner.get(rho, 0) for j, rho in enumerate(table.partitions)),
            Fraction(0),
        )
        out[mu] = Fraction(total * table.degree[i], size) * acc
    return out


def dual_distribution(Z: MatchingSet, table: ZonalTable | None = None) -> Distribution:
    if len(Z) == 0:
        raise ValueError("dual distribution of an empty set")
    table = table or zonal_table(Z.n)
    if Z._dual is None:
        if Z._inner is None:
            Z._inner = inner_distribution(Z)
        Z._dual = dual_from_inner(Z._inner, len(Z), table)
    return dict(Z._dual)


def dual_degree_set(Z: MatchingSet, table: ZonalTable | None = None) -> list[Partition]:
    n = Z.n
    return [mu for mu, v in dual_distribution(Z, table).items() if v != 0 and mu != (n,)]


def krein_q_mumumu(n: int, table: ZonalTable | None = None) -> Fraction:
    """``sum_rho k_rho (omega^{(1^n)}_rho)^3``, a positive multiple of the
    Krein parameter ``q^mu_{mu mu}`` for ``mu = (1^n)``."""
    table = table or zonal_table(n)
    i = table.index((1,) * n)
    return sum(
        (k * w**3 for k, w in zip(table.valency, table.omega[i])),
        Fraction(0),
    )


# ---------------------------------------------------------------------------
# exact matrices for the idempotents


_INT64_SAFE = 1 << 62


class RationalMatrix:
    """Exact rational matrix ``numer / denom`` with an integer numerator array."""

    def __init__(self, numer: np.ndarray, denom: int = 1):
        numer = np.asarray(numer)
        if numer.dtype != object:
            numer = numer.astype(np.int64)
        if denom <= 0:
            raise ValueError("denominator must be positive")
        self.numer = numer
        self.denom = int(denom)
        self._reduce()

    def _reduce(self) -> None:
        g = self.denom
        for v in self.numer.flat:
            g = gcd(g, int(v))
            if g == 1:
                return
        if g > 1:
            self.numer = self.numer // g
            self.denom //= g

    @property
    def shape(self) -> tuple[int, int]:
        return self.numer.shape

    def __getitem__(self, key) -> Fraction:
        i, j = key
        return Fraction(int(self.numer[i, j]), self.denom)

    @staticmethod
    def _bound(a: np.ndarray) -> int:
        return max((abs(int(v)) for v in (a.max(), a.min())), default=0) if a.size else 0

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        inner = self.shape[1]
        if self._bound(self.numer) * self._bound(other.numer) * inner < _INT64_SAFE and self.numer.dtype != object and other.numer.dtype != object:
            prod = self.numer @ other.numer
        else:
            prod = self.numer.astype(object) @ other.numer.astype(object)
        return RationalMatrix(prod, self.denom * other.denom)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        d = lcm(self.denom, other.denom)
        a, b = d // self.denom, d // other.denom
        return RationalMatrix(self._as_obj_if_big(self.numer, a) * a + self._as_obj_if_big(other.numer, b) * b, d)

    def _as_obj_if_big(self, arr: np.ndarray, factor: int) -> np.ndarray:
        if arr.dtype != object and self._bound(arr) * factor * 2 >= _INT64_SAFE:
            return arr.astype(object)
        return arr

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.denom == other.denom and bool(np.array_equal(self.numer, other.numer))

    def is_zero(self) -> bool:
        return not self.numer.any()

    def trace(self) -> Fraction:
        return Fraction(int(sum(int(v) for v in np.diagonal(self.numer))), self.denom)

    def dot_vector(self, v: np.ndarray) -> list[Fraction]:
        w = self.numer.astype(object) @ np.asarray(v, dtype=object)
        return [Fraction(int(x), self.denom) for x in w]

    def rank(self) -> int:
        """Exact rank by fraction-free (Bareiss) elimination."""
        rows = [[int(v) for v in row] for row in self.numer]
        return _bareiss_rank(rows)

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls(np.eye(size, dtype=np.int64), 1)

    @classmethod
    def zeros(cls, size: int) -> "RationalMatrix":
        return cls(np.zeros((size, size), dtype=np.int64), 1)


def _bareiss_rank(a: list[list[int]]) -> int:
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            f = a[r][col]
            row_r, row_p = a[r], a[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (row_r[c] * p - f * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


MAX_IDEMPOTENT_N = 5


def idempotents(n: int, table: ZonalTable | None = None) -> list[RationalMatrix]:
    """Minimal idempotents ``E_mu`` as full ``|X| x |X|`` matrices (n <= 5).

    ``E_mu(x, y) = Q_mu(d(x, y)) / (2n-1)!!``; listed in canonical partition order.
    """
    if not 1 <= n <= MAX_IDEMPOTENT_N:
        raise ValueError(f"idempotent matrices are only built for n <= {MAX_IDEMPOTENT_N}")
    table = table or zonal_table(n)
    rel = space(n).relation_matrix().astype(np.int64)
    out = []
    for i in range(len(table.partitions)):
        entries = [Fraction(table.degree[i]) * w / table.size for w in table.omega[i]]
        d = lcm(*(e.denominator for e in entries))
        ints = np.array([e.numerator * (d // e.denominator) for e in entries], dtype=np.int64)
        out.append(RationalMatrix(ints[rel], d))
    return out


def characteristic_vector(Z: MatchingSet) -> np.ndarray:
    v = np.zeros(space(Z.n).size, dtype=np.int64)
    v[Z.indices] = 1
    return v


def projection_vanishes(E: RationalMatrix, Z: MatchingSet) -> bool:
    """True iff ``E @ 1_Z == 0``."""
    return not (E.numer[:, Z.indices].sum(axis=1) != 0).any()

