"""Blocks, swaps and the seven-property uncanceled classifications.

Everything here is relative to a reference column ``k``: a row is "right of k"
when the column holding its entry is strictly greater than ``k``.  The
reference column may be 0 (every row is then right of it), which is what the
lowering map needs when it works at column ``j - 1`` with ``j = 1``.

"Rows between" two rows always means strictly between in the swap and pair
conditions.  The endpoint rows belong to the columns being swapped and may
sit weakly left of ``k``, so an inclusive reading would make most swaps
impossible and contradicts the worked swap sets this module is tested against.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .core import IndexSet, SignedPermutation, descents, is_chessboard

SIGN = "sign"
LEFT = "left"
SINGLE_MINUS = "single-minus"
DOUBLE_MINUS = "double-minus"
SINGLE_PLUS = "single-plus"
DOUBLE_PLUS = "double-plus"
KINDS = (SIGN, LEFT, SINGLE_MINUS, DOUBLE_MINUS, SINGLE_PLUS, DOUBLE_PLUS)

FAMILIES = {
    "all": frozenset(KINDS),
    "general-left": frozenset({SIGN, LEFT}),
    "general-minus": frozenset(KINDS) - {SINGLE_PLUS},
    "general-plus": frozenset(KINDS) - {SINGLE_MINUS},
}


class PreconditionError(ValueError):
    """The input lies outside the domain on which a classification is defined."""


@dataclass(frozen=True)
class Interval:
    """Rows ``start..end`` inclusive."""

    start: int
    end: int

    @property
    def odd(self) -> bool:
        return self.start % 2 == self.end % 2

    @property
    def even(self) -> bool:
        return not self.odd

    def __contains__(self, row: int) -> bool:
        return self.start <= row <= self.end

    def __str__(self) -> str:
        return f"{self.start}..{self.end}"


@dataclass(frozen=True)
class BlockDecomposition:
    reference_column: int
    blocks: tuple[Interval, ...]
    ones_blocks: tuple[Interval, ...]
    minus_blocks: tuple[Interval, ...]

    def block_containing(self, row: int) -> Optional[Interval]:
        for b in self.blocks:
            if row in b:
                return b
        return None

    def to_json(self) -> dict:
        def tag(iv: Interval) -> dict:
            return {"rows": [iv.start, iv.end], "parity": "odd" if iv.odd else "even"}

        return {
            "reference_column": self.reference_column,
            "blocks": [tag(b) for b in self.blocks],
            "ones_blocks": [tag(b) for b in self.ones_blocks],
            "minus_blocks": [tag(b) for b in self.minus_blocks],
        }


class _Grid:
    """Row-indexed view of a window: ``col[r]`` and ``val[r]`` for rows 1..n."""

    __slots__ = ("n", "window", "col", "val")

    def __init__(self, w: SignedPermutation):
        window = w.window
        n = len(window)
        self.n = n
        self.window = window
        self.col = [0] * (n + 1)
        self.val = [0] * (n + 1)
        for c, x in enumerate(window, 1):
            r = abs(x)
            self.col[r] = c
            self.val[r] = 1 if x > 0 else -1

    def row(self, column: int) -> int:
        return abs(self.window[column - 1])

    def entry(self, column: int) -> int:
        return 1 if self.window[column - 1] > 0 else -1

    def runs(self, k: int, sign: Optional[int]) -> tuple[Interval, ...]:
        out = []
        start = None
        for r in range(1, self.n + 2):
            inside = r <= self.n and self.col[r] > k and (sign is None or self.val[r] == sign)
            if inside and start is None:
                start = r
            elif not inside and start is not None:
                out.append(Interval(start, r - 1))
                start = None
        return tuple(out)


def _check_reference(n: int, k: int) -> None:
    if not 0 <= k <= n:
        raise ValueError(f"reference column {k} outside [0, {n}]")


def decompose_blocks(w: SignedPermutation, k: int) -> BlockDecomposition:
    """Maximal runs of rows right of ``k``, split further by sign."""
    _check_reference(w.rank, k)
    g = _Grid(w)
    return BlockDecomposition(k, g.runs(k, None), g.runs(k, 1), g.runs(k, -1))


@dataclass(frozen=True)
class SwapMove:
    kind: str
    columns: tuple[int, ...]
    reference_column: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown swap kind {self.kind!r}")
        expected = 1 if self.kind == SIGN else 2
        if len(self.columns) != expected:
            raise ValueError(f"{self.kind} swap needs {expected} column(s), got {self.columns}")
        if expected == 2 and not self.columns[0] < self.columns[1]:
            raise ValueError(f"two swap columns must be increasing: {self.columns}")

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.columns) + ")"

    def to_json(self) -> dict:
        return {"kind": self.kind, "columns": list(self.columns)}


def _all_swaps(g: _Grid, k: int) -> list[SwapMove]:
    n = g.n
    col, val = g.col, g.val
    out = []
    # sign swaps: every row above i(t) sits right of k
    top_left = min((r for r in range(1, n + 1) if col[r] <= k), default=n + 1)
    for t in range(2, min(k, n) + 1, 2):
        if g.row(t) <= top_left:
            out.append(SwapMove(SIGN, (t,), k))
    for b in range(1, n + 1):
        rb = g.row(b)
        for t in range(b + 2, n + 1, 2):
            rt = g.row(t)
            lo, hi = (rb, rt) if rb < rt else (rt, rb)
            between = range(lo + 1, hi)
            if any(col[s] <= k for s in between):
                continue
            if t <= k:
                out.append(SwapMove(LEFT, (b, t), k))
                continue
            eb, et = g.entry(b), g.entry(t)
            all_plus = all(val[s] == 1 for s in between)
            all_minus = all(val[s] == -1 for s in between)
            if b <= k:
                if et == -1 and all_plus:
                    out.append(SwapMove(SINGLE_MINUS, (b, t), k))
                elif et == 1 and all_minus:
                    out.append(SwapMove(SINGLE_PLUS, (b, t), k))
            else:
                if eb == et == -1 and all_plus:
                    out.append(SwapMove(DOUBLE_MINUS, (b, t), k))
                elif eb == et == 1 and all_minus:
                    out.append(SwapMove(DOUBLE_PLUS, (b, t), k))
    return out


def find_swaps(w: SignedPermutation, k: int, family: str = "all") -> frozenset[SwapMove]:
    """Every swap for ``w`` relative to column ``k`` whose kind lies in ``family``."""
    _check_reference(w.rank, k)
    try:
        kinds = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown swap family {family!r}; expected one of {sorted(FAMILIES)}") from None
    return frozenset(x for x in _all_swaps(_Grid(w), k) if x.kind in kinds)


def swaps_by_kind(w: SignedPermutation, k: int) -> dict[str, frozenset[SwapMove]]:
    found = find_swaps(w, k)
    return {kind: frozenset(x for x in found if x.kind == kind) for kind in KINDS}


def order_key(w: SignedPermutation, x: SwapMove) -> tuple:
    """Position of ``x`` in the swapping order for ``w``."""
    if x.kind == SIGN:
        return (0, w.row_of(x.columns[0]), 0)
    rb, rt = w.row_of(x.columns[0]), w.row_of(x.columns[1])
    return (1, min(rb, rt), max(rb, rt))


def least_swap(w: SignedPermutation, k: int, family: str) -> Optional[SwapMove]:
    found = find_swaps(w, k, family)
    if not found:
        return None
    return min(found, key=lambda x: order_key(w, x))


def apply_swap(w: SignedPermutation, x: SwapMove) -> SignedPermutation:
    """Negate column ``t`` (sign swap) or exchange rows ``i(b)``, ``i(t)`` (two swap)."""
    if x.reference_column > w.rank or x not in find_swaps(w, x.reference_column):
        raise ValueError(f"{x.kind} swap {x} is not a valid swap for {w} at column {x.reference_column}")
    window = list(w.window)
    if x.kind == SIGN:
        t = x.columns[0]
        window[t - 1] = -window[t - 1]
    else:
        b, t = x.columns
        vb, vt = window[b - 1], window[t - 1]
        # each column keeps its sign and takes the other column's row
        window[b - 1] = abs(vt) if vb > 0 else -abs(vt)
        window[t - 1] = abs(vb) if vt > 0 else -abs(vb)
    return SignedPermutation.trusted(tuple(window))


def involution(w: SignedPermutation, k: int, family: str) -> SignedPermutation:
    """Apply the least swap of ``family``; elements with no such swap are fixed."""
    x = least_swap(w, k, family)
    return w if x is None else apply_swap(w, x)


# pairs of adjacent columns right of the reference column


def column_pairs(w: SignedPermutation, k: int, signs: tuple[int, int]) -> list[int]:
    """Columns ``t`` with ``t > k``, ``t != n (mod 2)`` and entries ``signs`` in ``t, t+1``."""
    n = w.rank
    window = w.window
    out = []
    for t in range(k + 1, n):
        if (t - n) % 2 == 0:
            continue
        a = 1 if window[t - 1] > 0 else -1
        b = 1 if window[t] > 0 else -1
        if (a, b) == signs:
            out.append(t)
    return out


PROPERTIES = ("p1", "p2", "p3", "p4", "p5", "p6", "p7")

# "literal" evaluates the seven properties word for word.  "amended" (the
# default) differs in two places: property 7 ignores blocks starting in row 1,
# and in final property 1 "left of k" means weakly left, which is the image of
# initial property 1 under lowering.  The worked lowering example violates
# literal property 7 in its top block, and the literal readings break both
# equivalence theorems, so the amended reading is the one the rest of the
# package relies on.
LITERAL = "literal"
AMENDED = "amended"
READINGS = (LITERAL, AMENDED)


def _check_reading(reading: str) -> None:
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}; expected one of {READINGS}")


@dataclass(frozen=True)
class UncanceledReport:
    side: str
    reference_column: int
    reading: str
    p1: bool
    p2: bool
    p3: bool
    p4: bool
    p5: bool
    p6: bool
    p7: bool

    @property
    def overall(self) -> bool:
        return all(self.verdicts())

    def verdicts(self) -> tuple[bool, ...]:
        return tuple(getattr(self, p) for p in PROPERTIES)

    def to_json(self) -> dict:
        out = {"side": self.side, "reference_column": self.reference_column, "reading": self.reading}
        out.update({p: getattr(self, p) for p in PROPERTIES})
        out["overall"] = self.overall
        return out


def _as_members(n: int, I) -> Optional[tuple[int, ...]]:
    if I is None:
        return None
    return tuple(I.members) if isinstance(I, IndexSet) else tuple(sorted(I))


def check_initial_domain(w: SignedPermutation, j: int, I: Optional[Iterable[int]] = None) -> None:
    """Raise PreconditionError unless ``w`` lies in the domain of the initial classification.

    The domain is: chessboard, ``w(j) = n``, ``n - j`` even, and every descent
    right of ``j`` congruent to ``n``.  With ``I`` given, also ``D(w)`` inside ``I``,
    ``j`` in ``I + {n}`` and every element of ``I`` above ``j`` congruent to ``n``.
    """
    n = w.rank
    if not 1 <= j <= n:
        raise PreconditionError(f"column {j} outside [1, {n}]")
    if not is_chessboard(w):
        raise PreconditionError(f"{w} is not a chessboard element")
    if w.window[j - 1] != n:
        raise PreconditionError(f"w({j}) = {w.window[j - 1]}, expected {n}")
    if (n - j) % 2:
        raise PreconditionError(f"n - j = {n - j} is odd")
    members = _as_members(n, I)
    if members is None:
        members = descents(w.window)
    else:
        extra = set(descents(w.window)) - set(members)
        if extra:
            raise PreconditionError(f"descents {sorted(extra)} of {w} fall outside I = {list(members)}")
        if j != n and j not in members:
            raise PreconditionError(f"column {j} is not in I + {{n}}")
    bad = [i for i in members if i > j and (i - n) % 2]
    if bad:
        raise PreconditionError(f"elements {bad} right of {j} have parity different from n = {n}")


def check_final_domain(w: SignedPermutation, k: int, I: Optional[Iterable[int]] = None) -> None:
    """Raise PreconditionError unless ``w`` lies in the domain of the final classification.

    The domain is: chessboard, and ``k`` congruent to every element of
    ``I + {n}`` above it (``I`` defaults to the descent set plus ``k``).
    """
    n = w.rank
    _check_reference(n, k)
    if not is_chessboard(w):
        raise PreconditionError(f"{w} is not a chessboard element")
    members = _as_members(n, I)
    if members is None:
        members = descents(w.window)
    else:
        extra = set(descents(w.window)) - set(members)
        if extra:
            raise PreconditionError(f"descents {sorted(extra)} of {w} fall outside I = {list(members)}")
        if k != n and k not in members:
            raise PreconditionError(f"column {k} is not in I + {{n}}")
    bad = [i for i in tuple(members) + (n,) if i > k and (i - k) % 2]
    if bad:
        raise PreconditionError(f"elements {bad} of I + {{n}} above {k} differ in parity from {k}")


def _sign_block_checks(
    g: _Grid, dec: BlockDecomposition, lead: int, reading: str
) -> tuple[bool, bool, bool]:
    """Properties 3, 6 and 7, written for the initial side where ``lead = +1``.

    The final side calls this with ``lead = -1`` so the roles of ones and minus
    ones are exchanged.  The amended reading skips property 7 for a block that
    starts in row 1, mirroring the top-row exception property 3 already has.
    """
    same = dec.ones_blocks if lead == 1 else dec.minus_blocks
    other = dec.minus_blocks if lead == 1 else dec.ones_blocks
    p3 = all(b.even or b.start == 1 for b in same)
    p6 = True
    for blk in other:
        outer = dec.block_containing(blk.start)
        if outer is None or blk == outer:
            continue
        touches = blk.start == outer.start or blk.end == outer.end
        if blk.odd != touches:
            p6 = False
    p7 = True
    for outer in dec.blocks:
        if outer.odd or (reading == AMENDED and outer.start == 1):
            continue
        for blk in same:
            if blk.start == outer.start and blk.end != outer.end:
                p7 = False
            if blk.end == outer.end and blk.start != outer.start:
                p7 = False
    return p3, p6, p7


def _pair_between_ok(g: _Grid, k: int, t: int, required: int) -> bool:
    ra, rb = g.row(t), g.row(t + 1)
    lo, hi = (ra, rb) if ra < rb else (rb, ra)
    return all(g.col[s] > k and g.val[s] == required for s in range(lo + 1, hi))


def _rows_above_ok(g: _Grid, k: int, row: int, required: int) -> bool:
    return all(g.col[s] > k and g.val[s] == required for s in range(1, row))


def classify_initially_uncanceled(
    w: SignedPermutation, j: int, I: Optional[Iterable[int]] = None, reading: str = AMENDED
) -> UncanceledReport:
    _check_reading(reading)
    check_initial_domain(w, j, I)
    n = w.rank
    g = _Grid(w)
    dec = decompose_blocks(w, j)
    p1 = n == 1 or g.col[n - 1] < j or g.val[n - 1] == -1
    p2 = not any(b.odd for b in dec.blocks)
    p3, p6, p7 = _sign_block_checks(g, dec, 1, reading)
    mixed = column_pairs(w, j, (-1, 1))
    if n % 2 == 0:
        p4 = not mixed
    else:
        p4 = len(mixed) <= 1 and all(
            g.row(t + 1) == 1 and _rows_above_ok(g, j, g.row(t), 1) for t in mixed
        )
    p5 = all(_pair_between_ok(g, j, t, 1) for t in column_pairs(w, j, (-1, -1)))
    return UncanceledReport("initial", j, reading, p1, p2, p3, p4, p5, p6, p7)


def classify_finally_uncanceled(
    w: SignedPermutation, k: int, I: Optional[Iterable[int]] = None, reading: str = AMENDED
) -> UncanceledReport:
    _check_reading(reading)
    check_final_domain(w, k, I)
    n = w.rank
    g = _Grid(w)
    dec = decompose_blocks(w, k)
    if reading == AMENDED:
        p1 = g.col[n] <= k or g.val[n] == 1
    else:
        p1 = g.col[n] < k or g.val[n] == 1
    p2 = not any(b.odd for b in dec.blocks)
    p3, p6, p7 = _sign_block_checks(g, dec, -1, reading)
    mixed = column_pairs(w, k, (-1, 1))
    if n % 2 == 0:
        p4 = len(mixed) <= 1 and all(
            g.row(t) == 1 and _rows_above_ok(g, k, g.row(t + 1), -1) for t in mixed
        )
    else:
        p4 = not mixed
    p5 = all(_pair_between_ok(g, k, t, -1) for t in column_pairs(w, k, (1, 1)))
    return UncanceledReport("final", k, reading, p1, p2, p3, p4, p5, p6, p7)


def exchange_signs(w: SignedPermutation, k: int) -> SignedPermutation:
    """Negate every entry strictly right of column ``k``; the +1/-1 duality."""
    return SignedPermutation.trusted(
        tuple(x if c <= k else -x for c, x in enumerate(w.window, 1))
    )
