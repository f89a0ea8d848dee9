"""Exhaustive generation of descent classes and their generating polynomials.

A descent class is ``{w : D(w) subset of I}``; chessboard classes additionally
require ``|w(t)| = t (mod 2)``; pinned classes require ``w(k) = n`` or
``w(k+1) = -n``.  Generation backtracks over window prefixes, pruning on the
descent bound, the chessboard parity and the pin as soon as a slot is filled.
The oracle mode walks the whole group and filters, for cross-validation.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import IndexSet, SignedPermutation, check_rank, descents, inversions
from .polynomials import BiPoly, UniPoly
from .statistics import big_l


@dataclass(frozen=True)
class ClassQuery:
    rank: int
    descent_bound: IndexSet
    chessboard_only: bool = False
    pinned_column: Optional[int] = None

    def __post_init__(self):
        if self.descent_bound.rank != self.rank:
            raise ValueError(
                f"descent bound has rank {self.descent_bound.rank}, query has rank {self.rank}"
            )
        # k = 0 is a legitimate pin (w(1) = -n) whenever 0 is in I
        if self.pinned_column is not None and not 0 <= self.pinned_column <= self.rank:
            raise ValueError(f"pinned column {self.pinned_column} outside [0, {self.rank}]")

    @classmethod
    def build(cls, n: int, I, chessboard: bool = False, pin: Optional[int] = None) -> "ClassQuery":
        bound = I if isinstance(I, IndexSet) else IndexSet.of(n, I)
        return cls(n, bound, chessboard, pin)

    def admits(self, window: tuple[int, ...]) -> bool:
        """Membership test used by the oracle mode."""
        allowed = set(self.descent_bound.members)
        if any(d not in allowed for d in descents(window)):
            return False
        if self.chessboard_only and any((abs(x) - t) % 2 for t, x in enumerate(window, 1)):
            return False
        if self.pinned_column is not None:
            return pin_of(window) == self.pinned_column
        return True


def pin_of(window: tuple[int, ...]) -> int:
    """The unique k with ``w(k) = n`` or ``w(k+1) = -n``."""
    n = len(window)
    for p, x in enumerate(window, 1):
        if x == n:
            return p
        if x == -n:
            return p - 1
    raise AssertionError("unreachable")


def _backtrack(q: ClassQuery) -> Iterator[tuple[int, ...]]:
    n = q.rank
    allowed = [False] * n
    for i in q.descent_bound.members:
        allowed[i] = True
    chess = q.chessboard_only
    pin = q.pinned_column
    # +-n may only sit at slot pin (as n) or pin+1 (as -n); at the two ends
    # only one of those slots exists, so that slot is reserved outright
    reserved = None
    if pin == 0:
        reserved = 1
    elif pin == n:
        reserved = n
    used = [False] * (n + 1)
    window = [0] * n
    candidates = list(range(-n, 0)) + list(range(1, n + 1))

    def ok_for_pin(slot: int, v: int) -> bool:
        if pin is None:
            return True
        if v == n:
            return slot == pin
        if v == -n:
            return slot == pin + 1
        return slot != reserved

    def rec(slot: int, prev: int):
        if slot > n:
            yield tuple(window)
            return
        must_ascend = not allowed[slot - 1]
        for v in candidates:
            a = v if v > 0 else -v
            if used[a]:
                continue
            if must_ascend and prev > v:
                continue
            if chess and (a - slot) % 2:
                continue
            if not ok_for_pin(slot, v):
                continue
            used[a] = True
            window[slot - 1] = v
            yield from rec(slot + 1, v)
            used[a] = False

    yield from rec(1, 0)


def _whole_group_filter(q: ClassQuery) -> Iterator[tuple[int, ...]]:
    n = q.rank
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            window = tuple(s * x for s, x in zip(signs, perm))
            if q.admits(window):
                yield window


def iter_class(q: ClassQuery, oracle: bool = False) -> Iterator[SignedPermutation]:
    """Every element of the queried class exactly once, in a fixed order."""
    check_rank(q.rank)
    source = _whole_group_filter(q) if oracle else _backtrack(q)
    for window in source:
        yield SignedPermutation.trusted(window)


def iter_windows(q: ClassQuery, oracle: bool = False) -> Iterator[tuple[int, ...]]:
    check_rank(q.rank)
    return _whole_group_filter(q) if oracle else _backtrack(q)


def _length(window) -> int:
    return inversions(window) + sum(-x for x in window if x < 0)


def _signed_sum(windows) -> UniPoly:
    acc: Counter = Counter()
    for window in windows:
        w = SignedPermutation.trusted(window)
        acc[big_l(w)] += -1 if _length(window) % 2 else 1
    return _counter_poly(acc)


def _counter_poly(acc) -> UniPoly:
    if not acc:
        return UniPoly()
    top = max(acc)
    return UniPoly(acc.get(k, 0) for k in range(top + 1))


def s_poly(n: int, I, oracle: bool = False) -> UniPoly:
    """``sum (-1)^l(w) X^L(w)`` over ``{w in B_n : D(w) subset of I}``."""
    return _signed_sum(iter_windows(ClassQuery.build(n, I), oracle))


def s_poly_chessboard(n: int, I, oracle: bool = False) -> UniPoly:
    return _signed_sum(iter_windows(ClassQuery.build(n, I, chessboard=True), oracle))


def s_poly_pinned(n: int, I, k: int, oracle: bool = False) -> UniPoly:
    """The chessboard sum restricted to ``w(k) = n`` or ``w(k+1) = -n``."""
    return _signed_sum(iter_windows(ClassQuery.build(n, I, chessboard=True, pin=k), oracle))


def s_bipoly(n: int, I, oracle: bool = False) -> BiPoly:
    """``sum t^l(w) X^L(w)`` over the descent class."""
    terms: Counter = Counter()
    for window in iter_windows(ClassQuery.build(n, I), oracle):
        terms[(_length(window), big_l(SignedPermutation.trusted(window)))] += 1
    return BiPoly.from_terms(dict(terms))


def decompose_by_pinned_column(n: int, I, oracle: bool = False) -> dict[int, UniPoly]:
    """Pinned chessboard sums for every ``k`` in ``I`` and ``k = n``.

    Each element is pinned at exactly one k, and that k always lies in
    ``I + {n}``, so the values add up to the chessboard sum.
    """
    bound = I if isinstance(I, IndexSet) else IndexSet.of(n, I)
    return {k: s_poly_pinned(n, bound, k, oracle) for k in tuple(bound.members) + (n,)}


class DescentTable:
    """One pass over B_n (or C_n), bucketed by descent set.

    ``counts[mask]`` maps ``(l(w), L(w))`` to multiplicity for the elements whose
    descent set is exactly ``mask``.  Class sums follow by summing over submasks,
    which is much cheaper than one enumeration per I at n = 7.
    """

    def __init__(self, n: int, chessboard: bool = False, counts: Optional[dict] = None):
        self.rank = n
        self.chessboard = chessboard
        if counts is None:
            counts = _table_counts(n, chessboard, None)
        self.counts: dict[int, Counter] = counts

    @classmethod
    def build(cls, n: int, chessboard: bool = False, jobs: int = 1) -> "DescentTable":
        check_rank(n)
        if jobs <= 1 or n < 4:
            return cls(n, chessboard)
        from concurrent.futures import ProcessPoolExecutor

        firsts = [v for v in range(-n, n + 1) if v]
        merged: dict[int, Counter] = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_table_counts, [n] * len(firsts), [chessboard] * len(firsts), firsts):
                for mask, ctr in part.items():
                    merged.setdefault(mask, Counter()).update(ctr)
        return cls(n, chessboard, merged)

    def _submask_terms(self, I) -> Counter:
        mask = 0
        for i in I:
            mask |= 1 << i
        out: Counter = Counter()
        sub = mask
        while True:
            ctr = self.counts.get(sub)
            if ctr:
                out.update(ctr)
            if sub == 0:
                break
            sub = (sub - 1) & mask
        return out

    def signed(self, I) -> UniPoly:
        acc: Counter = Counter()
        for (l, L), c in self._submask_terms(I).items():
            acc[L] += -c if l % 2 else c
        acc = Counter({k: v for k, v in acc.items() if v})
        return _counter_poly(acc)

    def bivariate(self, I) -> BiPoly:
        return BiPoly.from_terms(dict(self._submask_terms(I)))


def _table_counts(n: int, chessboard: bool, first: Optional[int]) -> dict[int, Counter]:
    counts: dict[int, Counter] = {}
    q = ClassQuery(n, IndexSet.full(n), chessboard)
    for window in _backtrack(q):
        if first is not None and window[0] != first:
            continue
        mask = 0
        prev = 0
        for i, x in enumerate(window):
            if prev > x:
                mask |= 1 << i
            prev = x
        key = (_length(window), big_l(SignedPermutation.trusted(window)))
        ctr = counts.get(mask)
        if ctr is None:
            ctr = counts[mask] = Counter()
        ctr[key] += 1
    return counts
