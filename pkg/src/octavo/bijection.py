"""The lowering map H and the raising map R between uncanceled elements.

H takes ``w`` of rank n with ``w(j) = n`` to rank n-1 in four steps:

1. right-multiply by ``s_j s_{j+1} ... s_{n-1}`` (column j moves to the far
   right, bringing n to the corner) and drop to rank n-1;
2. for every block of ones ``P_{r,t}`` relative to column ``j - 1``, left-multiply
   by ``s_r ... s_t`` (the block slides down one row);
3. if row 1 alone forms a block of minus ones, left-multiply by ``s_0``;
4. for every block of minus ones ``N_{r,t}``, left-multiply by ``s_{t-1} ... s_{r-1}``
   (the block slides up one row; ``s_0`` flips the sign when ``r = 1``).

R runs the inverse generator words in the opposite order.  Left
multiplication by ``s_i`` exchanges rows i and i+1 (``s_0`` negates row 1);
right multiplication exchanges columns.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import SignedPermutation, sign
from .statistics import big_l
from .swaps import (
    AMENDED,
    BlockDecomposition,
    PreconditionError,
    classify_finally_uncanceled,
    classify_initially_uncanceled,
    decompose_blocks,
)


@dataclass(frozen=True)
class Stage:
    name: str
    w: SignedPermutation
    word: tuple[int, ...]
    side: str  # "left" (s_i * x) or "right" (x * s_i); empty word uses "none"
    blocks: Optional[BlockDecomposition] = None

    @property
    def L(self) -> int:
        return big_l(self.w)

    @property
    def sign(self) -> int:
        return sign(self.w)

    def word_text(self) -> str:
        gens = " ".join(f"s_{i}" for i in self.word)
        if not gens:
            return ""
        return f"w {gens}" if self.side == "right" else f"{gens} w"

    def to_json(self) -> dict:
        out = {
            "stage": self.name,
            "window": list(self.w.window),
            "L": self.L,
            "sign": self.sign,
            "word": self.word_text(),
        }
        if self.blocks is not None:
            out["blocks"] = self.blocks.to_json()
        return out


@dataclass
class LoweringTrace:
    column: int
    stages: list[Stage] = field(default_factory=list)

    @property
    def result(self) -> SignedPermutation:
        return self.stages[-1].w

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.stages]


def _left(x: tuple[int, ...], i: int) -> tuple[int, ...]:
    """``s_i x``: relabel rows i and i+1 (negate row 1 when i = 0)."""
    if i == 0:
        return tuple(-v if abs(v) == 1 else v for v in x)

    def f(v: int) -> int:
        a = abs(v)
        if a == i:
            return i + 1 if v > 0 else -(i + 1)
        if a == i + 1:
            return i if v > 0 else -i
        return v

    return tuple(f(v) for v in x)


def _right(x: tuple[int, ...], i: int) -> tuple[int, ...]:
    """``x s_i``: exchange columns i and i+1 (negate column 1 when i = 0)."""
    out = list(x)
    if i == 0:
        out[0] = -out[0]
    else:
        out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def _apply_left_word(x: tuple[int, ...], word: Iterable[int]) -> tuple[int, ...]:
    """Left-multiply by the product ``s_{a_1} ... s_{a_m}`` (rightmost acts first)."""
    for i in reversed(tuple(word)):
        if i >= len(x):
            raise ValueError(f"generator s_{i} does not exist in rank {len(x)}")
        x = _left(x, i)
    return x


def _apply_right_word(x: tuple[int, ...], word: Iterable[int]) -> tuple[int, ...]:
    for i in word:
        x = _right(x, i)
    return x


def _wrap(x: tuple[int, ...]) -> SignedPermutation:
    return SignedPermutation.trusted(x)


def lower(
    w: SignedPermutation,
    j: int,
    I: Optional[Iterable[int]] = None,
    reading: str = AMENDED,
    check: bool = True,
) -> tuple[SignedPermutation, LoweringTrace]:
    """Apply H to an initially uncanceled ``w`` (with ``w(j) = n``)."""
    n = w.rank
    if n < 2:
        raise PreconditionError("lowering needs rank at least 2")
    if check:
        report = classify_initially_uncanceled(w, j, I, reading)
        if not report.overall:
            failed = [p for p, ok in zip(("p1", "p2", "p3", "p4", "p5", "p6", "p7"), report.verdicts()) if not ok]
            raise PreconditionError(f"{w} is not initially uncanceled at column {j} (fails {', '.join(failed)})")
    elif w.window[j - 1] != n:
        raise PreconditionError(f"w({j}) = {w.window[j - 1]}, expected {n}")
    k = j - 1
    trace = LoweringTrace(j)
    trace.stages.append(Stage("w", w, (), "none", decompose_blocks(w, j)))

    word1 = tuple(range(j, n))
    x = _apply_right_word(w.window, word1)
    assert x[-1] == n
    x = x[:-1]
    w1 = _wrap(x)
    dec1 = decompose_blocks(w1, k)
    trace.stages.append(Stage("w1", w1, word1, "right", dec1))

    word2: list[int] = []
    for blk in dec1.ones_blocks:
        word2 = list(range(blk.start, blk.end + 1)) + word2
    x = _apply_left_word(x, word2)
    w2 = _wrap(x)
    dec2 = decompose_blocks(w2, k)
    trace.stages.append(Stage("w2", w2, tuple(word2), "left", dec2))

    word3: tuple[int, ...] = ()
    if any(b.start == 1 and b.end == 1 for b in dec2.minus_blocks):
        word3 = (0,)
        x = _apply_left_word(x, word3)
    w3 = _wrap(x)
    dec3 = decompose_blocks(w3, k)
    trace.stages.append(Stage("w3", w3, word3, "left", dec3))

    word4: list[int] = []
    for blk in dec3.minus_blocks:
        word4 = list(range(blk.end - 1, blk.start - 2, -1)) + word4
    x = _apply_left_word(x, word4)
    w4 = _wrap(x)
    trace.stages.append(Stage("w4", w4, tuple(word4), "left", decompose_blocks(w4, k)))
    return w4, trace


def lower_by_rows(w: SignedPermutation, j: int) -> SignedPermutation:
    """H via row moves: delete column j and row n, sweep +1 rows down, then -1 rows up."""
    n = w.rank
    if w.window[j - 1] != n:
        raise PreconditionError(f"w({j}) = {w.window[j - 1]}, expected {n}")
    m = n - 1
    k = j - 1
    # rows[r] = (column, entry) after crossing out; columns right of j shift left by one
    rows: list[Optional[tuple[int, int]]] = [None] * (m + 1)
    for c, v in enumerate(w.window, 1):
        if c == j:
            continue
        rows[abs(v)] = (c if c < j else c - 1, 1 if v > 0 else -1)

    def right(r: int, entry: int) -> bool:
        return rows[r][0] > k and rows[r][1] == entry

    for t in range(m, 0, -1):
        if right(t, 1):
            if t == m:
                raise PreconditionError("a +1 right of the column sits in the bottom row")
            rows[t], rows[t + 1] = rows[t + 1], rows[t]
    for t in range(1, m + 1):
        if right(t, -1):
            if t == 1:
                c, e = rows[1]
                rows[1] = (c, -e)
            else:
                rows[t], rows[t - 1] = rows[t - 1], rows[t]
    window = [0] * m
    for r in range(1, m + 1):
        c, e = rows[r]
        window[c - 1] = e * r
    return SignedPermutation(tuple(window))


def both_implementations_agree(w: SignedPermutation, j: int, check: bool = False) -> bool:
    return lower(w, j, check=check)[0] == lower_by_rows(w, j)


def raise_(
    v: SignedPermutation,
    j: int,
    J: Optional[Iterable[int]] = None,
    reading: str = AMENDED,
    check: bool = True,
) -> tuple[SignedPermutation, LoweringTrace]:
    """Apply R: rank n-1 back to rank n with ``n`` placed in column ``j``."""
    m = v.rank
    n = m + 1
    if not 1 <= j <= n:
        raise PreconditionError(f"column {j} outside [1, {n}]")
    k = j - 1
    if check:
        report = classify_finally_uncanceled(v, k, J, reading)
        if not report.overall:
            failed = [p for p, ok in zip(("p1", "p2", "p3", "p4", "p5", "p6", "p7"), report.verdicts()) if not ok]
            raise PreconditionError(f"{v} is not finally uncanceled at column {k} (fails {', '.join(failed)})")
    trace = LoweringTrace(j)
    dec = decompose_blocks(v, k)
    trace.stages.append(Stage("v", v, (), "none", dec))
    x = v.window

    word1: list[int] = []
    for blk in dec.minus_blocks:
        word1 = list(range(blk.start, blk.end + 1)) + word1
    x = _apply_left_word(x, word1)
    v1 = _wrap(x)
    dec1 = decompose_blocks(v1, k)
    trace.stages.append(Stage("v1", v1, tuple(word1), "left", dec1))

    word2: tuple[int, ...] = ()
    if any(b.start == 1 and b.end == 1 for b in dec1.ones_blocks):
        word2 = (0,)
        x = _apply_left_word(x, word2)
    v2 = _wrap(x)
    dec2 = decompose_blocks(v2, k)
    trace.stages.append(Stage("v2", v2, word2, "left", dec2))

    word3: list[int] = []
    for blk in dec2.ones_blocks:
        word3 = list(range(blk.end - 1, blk.start - 2, -1)) + word3
    x = _apply_left_word(x, word3)
    v3 = _wrap(x)
    trace.stages.append(Stage("v3", v3, tuple(word3), "left", decompose_blocks(v3, k)))

    x = x + (n,)
    v4 = _wrap(x)
    trace.stages.append(Stage("v4", v4, (), "none"))

    word5 = tuple(range(n - 1, j - 1, -1))
    x = _apply_right_word(x, word5)
    v5 = _wrap(x)
    trace.stages.append(Stage("v5", v5, word5, "right", decompose_blocks(v5, j)))
    return v5, trace


def target_index_set(n: int, I: Iterable[int], j: int) -> tuple[int, ...]:
    """``J`` for the lowering at column ``j``: ``I^(r)`` when ``j = i_r``, else ``I``.

    Members equal to ``n - 1`` are dropped because rank n-1 has no such position.
    """
    from .polynomials import i_shift

    members = tuple(sorted(I))
    if j == n:
        shifted = members
    else:
        if j not in members:
            raise ValueError(f"column {j} is not in I = {list(members)}")
        shifted = i_shift(members, members.index(j) + 1)
    return tuple(i for i in shifted if 0 <= i <= n - 2)
