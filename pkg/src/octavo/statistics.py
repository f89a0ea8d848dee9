"""The L statistic and its column-scan decomposition ``L = a + b + 2c``."""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import SignedPermutation


def big_l(w: SignedPermutation) -> int:
    """Half the number of pairs ``i < j`` in ``[-n, n]`` with ``w(i) > w(j)`` and ``i - j`` odd."""
    n = w.rank
    # ext[p] = w(p - n) for p in 0..2n
    ext = [-x for x in reversed(w.window)] + [0] + list(w.window)
    count = 0
    size = 2 * n + 1
    for p in range(size):
        wp = ext[p]
        # positions of opposite parity to p
        for q in range(p + 1, size, 2):
            if wp > ext[q]:
                count += 1
    if count % 2:
        raise AssertionError(f"odd pair count {count} for {w}; the L pair set must be symmetric")
    return count // 2


@dataclass(frozen=True)
class AbcBreakdown:
    a: int
    b: int
    c: int
    per_column_b: tuple[int, ...]
    per_column_c: tuple[int, ...]

    @property
    def total(self) -> int:
        return self.a + self.b + 2 * self.c


def abc(w: SignedPermutation) -> AbcBreakdown:
    """Column statistics: ``a`` counts -1 entries in odd columns; ``b``/``c`` count column pairs.

    ``b_{j,j'} = 1`` iff ``j < j'``, ``i(j) > i(j')`` and ``j != j' (mod 2)``;
    ``c_{j,j'} = 1`` iff ``j < j'``, column ``j'`` holds -1, ``i(j) < i(j')`` and
    ``j != j' (mod 2)``.
    """
    window = w.window
    n = len(window)
    rows = [abs(x) for x in window]
    a = sum(1 for k in range(0, n, 2) if window[k] < 0)  # k is 0-based, column k+1 odd
    per_b = []
    per_c = []
    for jp in range(n):
        bj = cj = 0
        negative = window[jp] < 0
        for j in range(jp - 1, -1, -2):
            if rows[j] > rows[jp]:
                bj += 1
            elif negative:
                cj += 1
        per_b.append(bj)
        per_c.append(cj)
    return AbcBreakdown(a, sum(per_b), sum(per_c), tuple(per_b), tuple(per_c))


@dataclass(frozen=True)
class UsCounts:
    """Classification of the -1 columns strictly right of a reference column ``j``.

    ``s_e``/``s_o`` split them by column parity, ``u_e``/``u_o`` by the parity of
    ``up[k] = #{t < j : i(t) < i(k)}``.
    """

    j: int
    s_e: frozenset[int]
    s_o: frozenset[int]
    u_e: frozenset[int]
    u_o: frozenset[int]
    up: dict[int, int] = field(hash=False, compare=False)

    @property
    def ue_se(self) -> frozenset[int]:
        return self.u_e & self.s_e

    @property
    def ue_so(self) -> frozenset[int]:
        return self.u_e & self.s_o

    @property
    def uo_se(self) -> frozenset[int]:
        return self.u_o & self.s_e

    @property
    def uo_so(self) -> frozenset[int]:
        return self.u_o & self.s_o

    def step_one_shift(self) -> int:
        """``-|u_o s_e| - |u_e s_o| + |u_e s_e| + |u_o s_o|``."""
        return -len(self.uo_se) - len(self.ue_so) + len(self.ue_se) + len(self.uo_so)


def us_counts(w: SignedPermutation, j: int) -> UsCounts:
    n = w.rank
    if not 1 <= j <= n:
        raise IndexError(f"column {j} outside [1, {n}]")
    window = w.window
    left_rows = [abs(window[t]) for t in range(j - 1)]
    s_e, s_o, u_e, u_o = set(), set(), set(), set()
    up = {}
    for k in range(j + 1, n + 1):
        if window[k - 1] > 0:
            continue
        (s_e if k % 2 == 0 else s_o).add(k)
        row = -window[k - 1]
        up[k] = sum(1 for r in left_rows if r < row)
        (u_e if up[k] % 2 == 0 else u_o).add(k)
    return UsCounts(j, frozenset(s_e), frozenset(s_o), frozenset(u_e), frozenset(u_o), up)
