"""Signed permutations of rank n (the hyperoctahedral group B_n).

Elements are stored in window notation ``(w(1), ..., w(n))``.  The extended
action ``w(0) = 0``, ``w(-t) = -w(t)`` and the signed permutation matrix are
derived on demand and never stored.

Matrix convention: ``w[i, j] = +1`` iff ``w(j) = i`` and ``-1`` iff
``w(j) = -i``.  Columns are positions of the window, rows are absolute values.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator

DEFAULT_MAX_RANK = 12


def max_rank() -> int:
    """Rank cap for exhaustive work; ``OCTAVO_MAX_RANK`` overrides the default."""
    raw = os.environ.get("OCTAVO_MAX_RANK")
    if raw is None:
        return DEFAULT_MAX_RANK
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"OCTAVO_MAX_RANK must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("OCTAVO_MAX_RANK must be positive")
    return value


def check_rank(n: int) -> None:
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    cap = max_rank()
    if n > cap:
        raise ValueError(f"rank {n} exceeds the configured cap {cap} (set OCTAVO_MAX_RANK)")


@dataclass(frozen=True)
class IndexSet:
    """A subset of ``[n-1]_0 = {0, ..., n-1}``, kept sorted."""

    rank: int
    members: tuple[int, ...] = ()

    def __post_init__(self):
        members = tuple(self.members)
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        if any(b <= a for a, b in zip(members, members[1:])):
            raise ValueError(f"index set members must be strictly increasing: {members}")
        if members and (members[0] < 0 or members[-1] > self.rank - 1):
            raise ValueError(f"index set {members} not contained in [0, {self.rank - 1}]")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, rank: int, members: Iterable[int]) -> "IndexSet":
        return cls(rank, tuple(sorted(set(members))))

    @classmethod
    def full(cls, rank: int) -> "IndexSet":
        return cls(rank, tuple(range(rank)))

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item) -> bool:
        return item in self.members

    def complement(self) -> "IndexSet":
        return IndexSet(self.rank, tuple(i for i in range(self.rank) if i not in self.members))

    def issubset(self, other: Iterable[int]) -> bool:
        other = set(other)
        return all(i in other for i in self.members)

    def differences(self) -> tuple[int, ...]:
        """Consecutive gaps ``(j_0, j_1, ..., j_l)`` with ``j_0 = i_1`` and ``j_l = n - i_l``."""
        return gaps(self.rank, self.members)

    def to_text(self) -> str:
        return ",".join(str(i) for i in self.members)

    def __str__(self) -> str:
        return "{" + ", ".join(str(i) for i in self.members) + "}"


def gaps(n: int, members: Iterable[int]) -> tuple[int, ...]:
    members = list(members)
    if not members:
        return (n,)
    out = [members[0]]
    out.extend(b - a for a, b in zip(members, members[1:]))
    out.append(n - members[-1])
    return tuple(out)


def all_index_sets(n: int) -> Iterator[IndexSet]:
    """All ``2**n`` subsets of ``[n-1]_0`` in binary-counter order."""
    for mask in range(1 << n):
        yield IndexSet(n, tuple(i for i in range(n) if mask >> i & 1))


@dataclass(frozen=True)
class SignedPermutation:
    """An element of B_n given by its window ``(w(1), ..., w(n))``."""

    window: tuple[int, ...]

    def __post_init__(self):
        window = tuple(int(x) for x in self.window)
        n = len(window)
        if n < 1:
            raise ValueError("a signed permutation needs rank at least 1")
        if sorted(abs(x) for x in window) != list(range(1, n + 1)):
            raise ValueError(f"{list(window)} is not a signed permutation window")
        object.__setattr__(self, "window", window)

    @classmethod
    def trusted(cls, window: tuple[int, ...]) -> "SignedPermutation":
        """Wrap an already validated window without re-checking it."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "window", window)
        return obj

    @property
    def rank(self) -> int:
        return len(self.window)

    def __call__(self, t: int) -> int:
        """Extended action on ``[-n, n]``."""
        if t == 0:
            return 0
        if t > 0:
            return self.window[t - 1]
        return -self.window[-t - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.window)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return compose(self, other)

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.window) + "]"

    def to_text(self) -> str:
        return ",".join(str(x) for x in self.window)

    # matrix view
    def row_of(self, column: int) -> int:
        """``i_w(k)``: the row holding the nonzero entry of ``column``."""
        _check_index(self.rank, column, "column")
        return abs(self.window[column - 1])

    def column_of(self, row: int) -> int:
        """``j_w(k)``: the column holding the nonzero entry of ``row``."""
        _check_index(self.rank, row, "row")
        for k, x in enumerate(self.window, 1):
            if abs(x) == row:
                return k
        raise AssertionError("unreachable: window is a signed permutation")

    def entry(self, row: int, column: int) -> int:
        x = self.window[column - 1]
        if x == row:
            return 1
        if x == -row:
            return -1
        return 0

    def matrix(self) -> list[list[int]]:
        n = self.rank
        m = [[0] * n for _ in range(n)]
        for k, x in enumerate(self.window):
            m[abs(x) - 1][k] = 1 if x > 0 else -1
        return m

    @classmethod
    def from_matrix(cls, rows: list[list[int]]) -> "SignedPermutation":
        n = len(rows)
        window = [0] * n
        for i, row in enumerate(rows, 1):
            if len(row) != n:
                raise ValueError("matrix must be square")
            hits = [(j, v) for j, v in enumerate(row) if v]
            if len(hits) != 1 or hits[0][1] not in (1, -1):
                raise ValueError(f"row {i} must hold exactly one entry +-1")
            j, v = hits[0]
            if window[j]:
                raise ValueError(f"column {j + 1} holds more than one entry")
            window[j] = v * i
        return cls(tuple(window))


def _check_index(n: int, k: int, what: str) -> None:
    if not 1 <= k <= n:
        raise IndexError(f"{what} {k} outside [1, {n}]")


def identity(n: int) -> SignedPermutation:
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    return SignedPermutation(tuple(range(1, n + 1)))


def generator(n: int, i: int) -> SignedPermutation:
    """Coxeter generator ``s_i``: ``s_0`` negates 1, ``s_i`` swaps i and i+1."""
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    if not 0 <= i <= n - 1:
        raise ValueError(f"generator index {i} outside [0, {n - 1}]")
    window = list(range(1, n + 1))
    if i == 0:
        window[0] = -1
    else:
        window[i - 1], window[i] = window[i], window[i - 1]
    return SignedPermutation(tuple(window))


def compose(u: SignedPermutation, v: SignedPermutation) -> SignedPermutation:
    """``(u v)(t) = u(v(t))``."""
    if u.rank != v.rank:
        raise ValueError(f"rank mismatch: {u.rank} vs {v.rank}")
    uw = u.window
    return SignedPermutation(tuple(uw[x - 1] if x > 0 else -uw[-x - 1] for x in v.window))


def inverse(w: SignedPermutation) -> SignedPermutation:
    out = [0] * w.rank
    for k, x in enumerate(w.window, 1):
        if x > 0:
            out[x - 1] = k
        else:
            out[-x - 1] = -k
    return SignedPermutation(tuple(out))


def sign(w: SignedPermutation) -> int:
    """Determinant of the signed permutation matrix."""
    window = w.window
    s = -1 if sum(1 for x in window if x < 0) % 2 else 1
    # parity of the underlying permutation by cycle counting
    perm = [abs(x) - 1 for x in window]
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def inversions(window) -> int:
    n = len(window)
    return sum(1 for a in range(n) for b in range(a + 1, n) if window[a] > window[b])


def length(w: SignedPermutation) -> int:
    """Type-B Coxeter length: ``inv(w) + sum(|w(j)| for w(j) < 0)``."""
    window = w.window
    return inversions(window) + sum(-x for x in window if x < 0)


def descent_set(w: SignedPermutation) -> IndexSet:
    """``{i in [0, n-1] : w(i) > w(i+1)}`` with ``w(0) = 0``."""
    return IndexSet(w.rank, descents(w.window))


def descents(window) -> tuple[int, ...]:
    out = []
    prev = 0
    for i, x in enumerate(window):
        if prev > x:
            out.append(i)
        prev = x
    return tuple(out)


def is_chessboard(w: SignedPermutation) -> bool:
    """Every nonzero entry sits on a square with row + column even."""
    return all((abs(x) - t) % 2 == 0 for t, x in enumerate(w.window, 1))


def row_of(w: SignedPermutation, column: int) -> int:
    return w.row_of(column)


def column_of(w: SignedPermutation, row: int) -> int:
    return w.column_of(row)


def parse_window(text: str) -> SignedPermutation:
    """Parse ``"9,2,5,10,3,4,7,-6,1,-8"`` (brackets and spaces tolerated)."""
    body = text.strip().strip("[]()").strip()
    if not body:
        raise ValueError("empty window")
    try:
        values = tuple(int(tok) for tok in body.split(","))
    except ValueError:
        raise ValueError(f"window must be comma-separated integers: {text!r}") from None
    return SignedPermutation(values)


def parse_index_set(text: str, n: int) -> IndexSet:
    """Parse ``"0,4,7,9"``; the empty string is the empty set."""
    body = text.strip().strip("{}").strip()
    if not body:
        return IndexSet(n, ())
    try:
        values = [int(tok) for tok in body.split(",")]
    except ValueError:
        raise ValueError(f"index set must be comma-separated integers: {text!r}") from None
    if len(set(values)) != len(values):
        raise ValueError(f"duplicate entries in index set {text!r}")
    return IndexSet(n, tuple(sorted(values)))
