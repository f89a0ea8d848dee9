from __future__ import annotations

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from octavo.core import SignedPermutation, all_index_sets  # noqa: E402
from octavo.enumeration import ClassQuery, iter_class  # noqa: E402

# Worked examples, read off the displayed matrices.
SWAP_EXAMPLE = SignedPermutation((-9, 2, 5, 10, 3, 4, 7, -6, 1, -8))
INITIAL_EXAMPLE = SignedPermutation((5, 10, -9, -6, 3, 4, 1, 2, 7, 8))
LOWERING_EXAMPLE = SignedPermutation((3, 4, 9, -8, -5, -2, 1, 6, 7))
LOWERING_IMAGE = SignedPermutation((3, 6, -5, -4, 1, 2, 7, 8))


def initial_cases(n: int):
    """``(I, j, elements)`` for every valid lowering column, elements having ``w(j) = n``."""
    for I in all_index_sets(n):
        members = I.members
        cls = None
        for j in members + (n,):
            if j == 0 or (n - j) % 2 or any((i - n) % 2 for i in members if i > j):
                continue
            if cls is None:
                cls = list(iter_class(ClassQuery(n, I, chessboard_only=True)))
            yield I, j, [w for w in cls if w.window[j - 1] == n]


def final_cases(n: int):
    """``(I, k, elements)`` for every reference column admitted by the final domain."""
    for I in all_index_sets(n):
        top = I.members + (n,)
        cls = None
        for k in top:
            if any((i - k) % 2 for i in top if i > k):
                continue
            if cls is None:
                cls = list(iter_class(ClassQuery(n, I, chessboard_only=True)))
            yield I, k, cls


# filled by test_acceptance; echoed after the run so the lines survive output capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
