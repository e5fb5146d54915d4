"""Explicit families of matching sets.

* round-robin 1-factorisations of K_2n (circle method),
* the set of all matchings,
* the hyperoval construction over GF(2^a): every point P off a hyperoval O
  pairs each X in O with the second point of O on the line PX,
* the 33-element AGL(1,11)-invariant set on the projective line over F_11.

Point labellings are fixed so that outputs are reproducible byte for byte.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from .matchings import MAX_N, Matching, MatchingSet, all_matchings

# irreducible polynomials, bit i = coefficient of x^i
IRREDUCIBLE = {2: 0b111, 3: 0b1011, 4: 0b10011}


class GF2m:
    """The field GF(2^a); elements are the integers ``0 .. 2^a - 1``.

    An element is the polynomial residue whose coefficients are its bits.
    Addition is xor; multiplication uses a precomputed table.
    """

    def __init__(self, a: int):
        if a not in IRREDUCIBLE:
            raise ValueError(f"unsupported field degree a={a}; expected one of {sorted(IRREDUCIBLE)}")
        self.a = a
        self.q = 1 << a
        self.modulus = IRREDUCIBLE[a]
        self.table = np.array(
            [[self._slow_mul(x, y) for y in range(self.q)] for x in range(self.q)], dtype=np.int64
        )

    def _slow_mul(self, x: int, y: int) -> int:
        acc = 0
        while y:
            if y & 1:
                acc ^= x
            y >>= 1
            x <<= 1
            if x & self.q:
                x ^= self.modulus
        return acc

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(np.flatnonzero(self.table[x] == 1)[0])


Point = tuple[int, int, int]


def normalise(F: GF2m, p: Point) -> Point:
    """Scale so that the first nonzero coordinate is 1."""
    for c in p:
        if c:
            s = F.inv(c)
            return tuple(F.mul(s, v) for v in p)
    raise ValueError("the zero vector is not a projective point")


def projective_points(F: GF2m) -> list[Point]:
    """Points of PG(2,q): ``(1,y,z)``, then ``(0,1,z)``, then ``(0,0,1)``."""
    q = F.q
    pts = [(1, y, z) for y in range(q) for z in range(q)]
    pts += [(0, 1, z) for z in range(q)]
    pts.append((0, 0, 1))
    return pts


def _det(F: GF2m, u: Point, v: Point, w: Point) -> int:
    # characteristic 2: the determinant is the permanent
    m = F.mul
    terms = (
        m(u[0], m(v[1], w[2])), m(u[1], m(v[2], w[0])), m(u[2], m(v[0], w[1])),
        m(u[2], m(v[1], w[0])), m(u[0], m(v[2], w[1])), m(u[1], m(v[0], w[2])),
    )
    out = 0
    for t in terms:
        out ^= t
    return out


def collinear(F: GF2m, u: Point, v: Point, w: Point) -> bool:
    return _det(F, u, v, w) == 0


def regular_hyperoval(F: GF2m) -> list[Point]:
    """The conic ``{(1,t,t^2)}`` with ``(0,1,0)`` (its nucleus) and ``(0,0,1)``."""
    oval = [(1, t, F.mul(t, t)) for t in F.elements]
    return oval + [(0, 1, 0), (0, 0, 1)]


def line_intersection_sizes(F: GF2m, O: list[Point]) -> list[int]:
    """``|L cap O|`` for every line ``L`` of PG(2,q) (lines are dual points)."""
    sizes = []
    for line in projective_points(F):
        hits = 0
        for p in O:
            s = 0
            for a, b in zip(line, p):
                s ^= F.mul(a, b)
            hits += s == 0
        sizes.append(hits)
    return sizes


def hyperoval_factorisation(a: int) -> MatchingSet:
    """One matching of the ``q+2`` hyperoval points per point ``P`` off the hyperoval.

    Hyperoval points are labelled ``1..q+2`` in the order of
    :func:`regular_hyperoval`; the points ``P`` are taken in the order of
    :func:`projective_points`.  The result has ``q^2 - 1`` members.
    """
    F = GF2m(a)
    O = regular_hyperoval(F)
    on_oval = set(O)
    mats = []
    for P in projective_points(F):
        if P in on_oval:
            continue
        partner = {}
        for i, X in enumerate(O):
            if i in partner:
                continue
            others = [j for j, Y in enumerate(O) if j != i and collinear(F, P, X, Y)]
            if len(others) != 1:
                raise AssertionError(f"line through {P} and {X} meets O in {len(others) + 1} points")
            partner[i], partner[others[0]] = others[0], i
        mats.append(Matching((i + 1, j + 1) for i, j in partner.items() if i < j))
    out = MatchingSet(len(O) // 2, mats)
    if len(out) != F.q**2 - 1:
        raise AssertionError("hyperoval matchings are not distinct")
    return out


def round_robin(n: int) -> MatchingSet:
    """Circle-method 1-factorisation of K_2n: ``2n-1`` matchings, one per round."""
    if n < 2:
        raise ValueError("n must be at least 2")
    m = 2 * n - 1

    def rep(v: int) -> int:
        return (v - 1) % m + 1

    rounds = []
    for r in range(m):
        pairs = [(r + 1, 2 * n)]
        pairs += [(rep(r + 1 + i), rep(r + 1 - i)) for i in range(1, n)]
        rounds.append(Matching(pairs))
    return MatchingSet(n, rounds)


def full_set(n: int) -> MatchingSet:
    if n > MAX_N:
        raise ValueError(f"n={n} exceeds the enumeration limit {MAX_N}")
    return MatchingSet(n, all_matchings(n))


# --- AGL(1,11) on the projective line over F_11 ---------------------------

P11 = 11
INF = "inf"
SQUARES_11 = (1, 3, 4, 5, 9)


def _label(x) -> int:
    # 0 -> 1, ..., 10 -> 11, inf -> 12
    return 12 if x == INF else x + 1


def agl11_seeds() -> tuple[list[tuple], list[tuple]]:
    m1 = [(0, INF)] + [(x, (-x) % P11) for x in SQUARES_11]
    m2 = [(0, INF)] + [(x, (7 * x) % P11) for x in SQUARES_11]
    return m1, m2


def agl11_maps() -> list[tuple[int, int]]:
    """The affine maps ``x -> a*x + b`` (``a != 0``) as ``(a, b)`` pairs."""
    return [(a, b) for a in range(1, P11) for b in range(P11)]


def _apply_affine(a: int, b: int, x):
    return INF if x == INF else (a * x + b) % P11


def _as_matching(pairs) -> Matching:
    return Matching((_label(x), _label(y)) for x, y in pairs)


def agl11_orbit(seed) -> MatchingSet:
    images = {
        _as_matching([(_apply_affine(a, b, x), _apply_affine(a, b, y)) for x, y in seed])
        for a, b in agl11_maps()
    }
    return MatchingSet(6, images)


def agl11_permutation(a: int, b: int) -> dict[int, int]:
    """The action of ``x -> a*x + b`` on the labels ``1..12``."""
    return {_label(x): _label(_apply_affine(a, b, x)) for x in list(range(P11)) + [INF]}


def agl11_factorisation() -> MatchingSet:
    """Union of the AGL(1,11)-orbits of the two seed matchings (11 + 22 members)."""
    m1, m2 = agl11_seeds()
    return MatchingSet(6, list(agl11_orbit(m1)) + list(agl11_orbit(m2)))
