"""Backtracking search for lambda-factorisations of a given index.

Rows are the set partitions of shape ``2*lambda``; columns are all matchings
of K_2n.  A column covers a row when the matching refines the partition.  A
lambda-factorisation of index ``c`` is a set of columns covering every row
exactly ``c`` times, so the search is exact cover with multiplicity ``c``.

The search keeps, per row, the number of chosen columns (``sat``) and of
still undecided columns (``avail``).  It branches on the first free column of
the unsatisfied row with the least slack ``sat + avail - c`` and tries
"include" before "exclude".
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .factorisation import check_by_definition, check_by_design, shape_labels
from .matchings import Matching, MatchingSet, space
from .partitions import Partition, double_factorial_product, odd_double_factorial, refinement_count

MAX_SEARCH_N = 6

SAT, UNSAT, ABORTED = "SAT", "UNSAT", "ABORTED"

INCLUDED, EXCLUDED, FREE = 1, -1, 0


@dataclass
class ConstraintSystem:
    n: int
    lam: Partition
    c: int
    rows: tuple  # set partitions, canonical order
    row_cols: list[np.ndarray]  # columns refining each row
    col_rows: list[np.ndarray]  # rows refined by each column

    @property
    def num_rows(self) -> int:
        return len(self.row_cols)

    @property
    def num_cols(self) -> int:
        return len(self.col_rows)

    def incidence(self) -> np.ndarray:
        """Dense boolean incidence matrix (rows x columns); for inspection only."""
        out = np.zeros((self.num_rows, self.num_cols), dtype=bool)
        for r, cols in enumerate(self.row_cols):
            out[r, cols] = True
        return out


def build_system(n: int, lam: Iterable[int], c: int = 1) -> ConstraintSystem:
    lam = tuple(lam)
    if sum(lam) != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    if n > MAX_SEARCH_N:
        raise ValueError(f"n={n} exceeds the search size guard {MAX_SEARCH_N}")
    if c < 1:
        raise ValueError("index must be positive")
    rows, labels = shape_labels(n, lam)
    sp = space(n)
    # refining[r, j] for all rows and columns, built a slab of rows at a time
    row_cols: list[np.ndarray] = []
    chunk = max(1, 2_000_000 // (len(sp.pairs) * n))
    for start in range(0, len(labels), chunk):
        mask = sp.refining_mask(labels[start:start + chunk])
        row_cols.extend(np.flatnonzero(m) for m in mask)
    buckets: list[list[int]] = [[] for _ in range(len(sp.pairs))]
    for r, cols in enumerate(row_cols):
        for j in cols:
            buckets[j].append(r)
    col_rows = [np.array(b, dtype=np.int64) for b in buckets]

    row_weight = double_factorial_product(lam)
    col_weight = refinement_count(lam)
    if any(len(cols) != row_weight for cols in row_cols):
        raise AssertionError("row weight differs from prod (2 lambda_i - 1)!!")
    if any(len(rs) != col_weight for rs in col_rows):
        raise AssertionError("column weight differs from the refinement count")
    return ConstraintSystem(n, lam, c, rows, row_cols, col_rows)


@dataclass
class SearchOutcome:
    status: str
    solution: MatchingSet | None = None
    solutions: list[MatchingSet] = field(default_factory=list)
    nodes: int = 0
    propagations: int = 0
    seconds: float = 0.0

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "nodes": self.nodes,
            "propagations": self.propagations,
            "seconds": round(self.seconds, 3),
        }
        if self.solution is not None:
            m = self.solution
            out["solution"] = {"n": m.n, "matchings": [[list(p) for p in x.pairs] for x in m]}
        if len(self.solutions) > 1:
            out["solution_count"] = len(self.solutions)
        return out


class _State:
    def __init__(self, system: ConstraintSystem):
        self.sys = system
        self.col = np.zeros(system.num_cols, dtype=np.int8)
        self.sat = np.zeros(system.num_rows, dtype=np.int64)
        self.avail = np.array([len(c) for c in system.row_cols], dtype=np.int64)
        self.trail: list[int] = []
        self.propagations = 0

    def undo(self, mark: int) -> None:
        col, sat, avail = self.col, self.sat, self.avail
        while len(self.trail) > mark:
            j = self.trail.pop()
            rows = self.sys.col_rows[j]
            if col[j] == INCLUDED:
                sat[rows] -= 1
            avail[rows] += 1
            col[j] = FREE

    def assign(self, j: int, value: int) -> bool:
        """Set column ``j`` and propagate; False on conflict (state stays dirty)."""
        queue = [(j, value)]
        c = self.sys.c
        col, sat, avail = self.col, self.sat, self.avail
        while queue:
            j, value = queue.pop()
            if col[j] != FREE:
                if col[j] != value:
                    return False
                continue
            col[j] = value
            self.trail.append(j)
            rows = self.sys.col_rows[j]
            avail[rows] -= 1
            if value == INCLUDED:
                sat[rows] += 1
            s, a = sat[rows], avail[rows]
            if np.any(s > c) or np.any(s + a < c):
                return False
            full = rows[(s == c) & (a > 0)]
            tight = rows[(s < c) & (s + a == c)]
            for r in full:
                cols = self.sys.row_cols[r]
                for k in cols[col[cols] == FREE]:
                    queue.append((int(k), EXCLUDED))
                    self.propagations += 1
            for r in tight:
                cols = self.sys.row_cols[r]
                for k in cols[col[cols] == FREE]:
                    queue.append((int(k), INCLUDED))
                    self.propagations += 1
        return True

    def pick_column(self) -> int | None:
        open_rows = np.flatnonzero(self.sat < self.sys.c)
        if len(open_rows) == 0:
            return None
        slack = self.sat[open_rows] + self.avail[open_rows] - self.sys.c
        r = int(open_rows[np.argmin(slack)])
        cols = self.sys.row_cols[r]
        return int(cols[self.col[cols] == FREE][0])


def solve(
    system: ConstraintSystem,
    force_base: bool = False,
    pins: Mapping[int, int] | None = None,
    node_limit: int | None = None,
    enumerate_all: bool = False,
    verify: bool = True,
) -> SearchOutcome:
    """Complete search; ``ABORTED`` only when ``node_limit`` is hit.

    ``pins`` maps column indices to +1 (include) or -1 (exclude).
    ``force_base`` includes the base matching (column 0); by transitivity of
    S_2n on matchings this does not change satisfiability.
    """
    t0 = time.perf_counter()
    st = _State(system)
    fixed = dict(pins or {})
    if force_base:
        if fixed.get(0, INCLUDED) != INCLUDED:
            raise ValueError("base matching is both forced and excluded")
        fixed[0] = INCLUDED
    solutions: list[MatchingSet] = []
    nodes = 0

    def finish(status: str) -> SearchOutcome:
        return SearchOutcome(
            status,
            solution=solutions[0] if solutions else None,
            solutions=solutions,
            nodes=nodes,
            propagations=st.propagations,
            seconds=time.perf_counter() - t0,
        )

    ok = all(st.assign(j, v) for j, v in sorted(fixed.items()))
    if not ok:
        return finish(UNSAT)
    base_mark = len(st.trail)

    # stack of (trail mark, column, phase); phase 1 = include tried
    stack: list[tuple[int, int, int]] = []
    while True:
        if ok:
            j = st.pick_column()
            if j is None:
                D = MatchingSet.from_indices(system.n, np.flatnonzero(st.col == INCLUDED))
                if verify:
                    _verify(D, system)
                solutions.append(D)
                if not enumerate_all:
                    return finish(SAT)
                ok = False
                continue
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                return finish(ABORTED)
            stack.append((len(st.trail), j, INCLUDED))
            ok = st.assign(j, INCLUDED)
            continue
        # backtrack to the most recent include branch
        while stack:
            mark, j, phase = stack.pop()
            st.undo(mark)
            if phase == INCLUDED:
                stack.append((mark, j, EXCLUDED))
                ok = st.assign(j, EXCLUDED)
                break
        else:
            st.undo(base_mark)
            return finish(SAT if solutions else UNSAT)


def _verify(D: MatchingSet, system: ConstraintSystem) -> None:
    report = check_by_definition(D, system.lam)
    if report.index != system.c:
        raise AssertionError(f"search returned a non-solution: {report}")
    if not check_by_design(D, system.lam):
        raise AssertionError("search solution fails the design criterion")


def seed_from_derivation(
    system: ConstraintSystem, D_sub: MatchingSet, S: Iterable[int]
) -> dict[int, int]:
    """Pins forcing the derivation of the solution at ``S`` to be ``D_sub``.

    Columns splitting at ``S`` whose restriction to the complement is not in
    ``D_sub`` are excluded.  When ``|S| = 2`` each member of ``D_sub`` has a
    unique extension, so those extensions are included as well.  An empty
    ``D_sub`` gives no pins.
    """
    S = sorted(set(int(v) for v in S))
    k, rem = divmod(len(S), 2)
    N = 2 * system.n
    if rem or not S or not set(S) <= set(range(1, N + 1)):
        raise ValueError("S must be a nonempty even subset of the vertex set")
    if k not in system.lam:
        raise ValueError(f"|S|/2 = {k} is not a part of {system.lam}")
    if len(D_sub) == 0:
        return {}
    if D_sub.n != system.n - k:
        raise ValueError(f"D_sub lives on {2 * D_sub.n} points, expected {N - 2 * k}")
    inside = set(S)
    rest = [v for v in range(1, N + 1) if v not in inside]
    relabel = {v: i for i, v in enumerate(rest, start=1)}
    pins = {}
    for j, m in enumerate(space(system.n).matchings):
        if any((a in inside) != (b in inside) for a, b in m.pairs):
            continue
        restricted = Matching((relabel[a], relabel[b]) for a, b in m.pairs if a not in inside)
        if restricted not in D_sub:
            pins[j] = EXCLUDED
        elif k == 1:
            pins[j] = INCLUDED
    return pins


def expected_solution_size(system: ConstraintSystem) -> int:
    return system.c * odd_double_factorial(system.n) // double_factorial_product(system.lam)
