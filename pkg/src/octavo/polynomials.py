"""Exact polynomials over the integers and the product polynomials ``f_{n,I}``.

``UniPoly`` is a dense polynomial in X, ``BiPoly`` a dense polynomial in t whose
coefficients are ``UniPoly``.  Coefficients are Python ints, so nothing overflows.
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

from .core import gaps


def _strip(coeffs: Iterable) -> tuple:
    out = list(coeffs)
    while out and not out[-1]:
        out.pop()
    return tuple(out)


class UniPoly:
    """Polynomial in X with integer coefficients, ascending degree, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _strip(int(c) for c in coeffs)

    @classmethod
    def constant(cls, c: int) -> "UniPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "UniPoly":
        if degree < 0:
            raise ValueError("negative degree")
        return cls((0,) * degree + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "UniPoly":
        if isinstance(other, int):
            other = UniPoly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return UniPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        if isinstance(other, int):
            other = UniPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        return UniPoly.constant(other) - self

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, int):
            return UniPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for k, y in enumerate(b):
                    out[i + k] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "UniPoly":
        """Multiply by ``X**k``."""
        if not self.coeffs:
            return self
        return UniPoly((0,) * k + self.coeffs)

    def divmod(self, divisor: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Long division over Z; raises if a leading coefficient does not divide."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dl = divisor.coeffs
        lead = dl[-1]
        dd = len(dl) - 1
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if not c:
                continue
            q, r = divmod(c, lead)
            if r:
                raise ArithmeticError("division not exact over the integers")
            quot[k - dd] = q
            for i, d in enumerate(dl):
                rem[k - dd + i] -= q * d
        return UniPoly(quot), UniPoly(rem)

    def exact_div(self, divisor: "UniPoly") -> "UniPoly":
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError(f"nonzero remainder {r} dividing {self} by {divisor}")
        return q

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_terms(self.coeffs, "X")

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "UniPoly":
        return cls(int(c) for c in data["coeffs"])

    @classmethod
    def parse(cls, text: str) -> "UniPoly":
        """Parse the human form, e.g. ``"1 - X^2 + 3*X^5"``."""
        coeffs: dict[int, int] = {}
        body = text.replace(" ", "")
        if not body:
            raise ValueError("empty polynomial text")
        if body[0] not in "+-":
            body = "+" + body
        pos = 0
        term = re.compile(r"([+-])(\d+)?(\*?X(?:\^(\d+))?)?")
        while pos < len(body):
            m = term.match(body, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
            if m.group(3) and m.group(3).startswith("*") and m.group(2) is None:
                raise ValueError(f"dangling '*' in {text!r}")
            c = int(m.group(2)) if m.group(2) is not None else 1
            if m.group(1) == "-":
                c = -c
            deg = 0 if m.group(3) is None else int(m.group(4) or 1)
            coeffs[deg] = coeffs.get(deg, 0) + c
            pos = m.end()
        top = max(coeffs)
        return cls(coeffs.get(k, 0) for k in range(top + 1))


def format_terms(coeffs: Sequence[int], var: str) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


ZERO = UniPoly()
ONE = UniPoly((1,))


class BiPoly:
    """Polynomial in t whose coefficients are ``UniPoly`` in X."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[UniPoly] = ()):
        self.coeffs = _strip(c if isinstance(c, UniPoly) else UniPoly(c) for c in coeffs)

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, int], int]) -> "BiPoly":
        """Build from ``{(t_degree, x_degree): coefficient}``."""
        if not terms:
            return cls()
        td = max(k[0] for k in terms)
        rows: list[dict[int, int]] = [dict() for _ in range(td + 1)]
        for (a, b), c in terms.items():
            rows[a][b] = rows[a].get(b, 0) + c
        return cls(UniPoly(r.get(k, 0) for k in range(max(r, default=-1) + 1)) for r in rows)

    @property
    def t_degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __getitem__(self, k: int) -> UniPoly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __neg__(self) -> "BiPoly":
        return BiPoly(-c for c in self.coeffs)

    def __add__(self, other: "BiPoly") -> "BiPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        return BiPoly(self[k] + other[k] for k in range(size))

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, (int, UniPoly)):
            return BiPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return BiPoly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for k, y in enumerate(b):
                out[i + k] = out[i + k] + x * y
        return BiPoly(out)

    __rmul__ = __mul__

    def eval_t(self, t: int) -> UniPoly:
        """Substitute an integer for t."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __repr__(self) -> str:
        return f"BiPoly({[list(c.coeffs) for c in self.coeffs]})"

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            tm = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            inner = str(c)
            if not tm:
                parts.append(inner)
            elif inner == "1":
                parts.append(tm)
            elif len(c.coeffs) - sum(1 for x in c.coeffs if not x) == 1 and not inner.startswith("-"):
                parts.append(f"{inner}*{tm}")
            else:
                parts.append(f"({inner})*{tm}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in c.coeffs] for c in self.coeffs]

    @classmethod
    def from_json(cls, data: list[list[str]]) -> "BiPoly":
        return cls(UniPoly(int(x) for x in row) for row in data)


def q_bracket(m: int) -> UniPoly:
    """``(m) = 1`` for ``m = 0`` and ``1 - X**m`` otherwise."""
    if m < 0:
        raise ValueError(f"q_bracket needs m >= 0, got {m}")
    if m == 0:
        return ONE
    return UniPoly((1,) + (0,) * (m - 1) + (-1,))


@lru_cache(maxsize=None)
def q_factorial(m: int) -> UniPoly:
    if m < 0:
        raise ValueError(f"q_factorial needs m >= 0, got {m}")
    if m == 0:
        return ONE
    return q_factorial(m - 1) * q_bracket(m)


@lru_cache(maxsize=None)
def q_double_factorial(m: int) -> UniPoly:
    """Product of ``(i)`` over even ``i`` with ``1 <= i <= m``."""
    if m < 0:
        raise ValueError(f"q_double_factorial needs m >= 0, got {m}")
    if m < 2:
        return ONE
    top = m if m % 2 == 0 else m - 1
    return q_double_factorial(top - 2) * q_bracket(top)


@lru_cache(maxsize=None)
def _odd_part(m: int) -> UniPoly:
    """Product of ``(i)`` over odd ``i <= m``."""
    out = ONE
    for i in range(1, m + 1, 2):
        out = out * q_bracket(i)
    return out


def _members(n: int, I) -> tuple[int, ...]:
    members = tuple(sorted(set(I)))
    if members and members[-1] > n:
        raise ValueError(f"index set {members} has entries beyond rank {n}")
    return members


@lru_cache(maxsize=None)
def _f_cached(n: int, members: tuple[int, ...]) -> UniPoly:
    parts = gaps(n, members)
    denom = q_factorial(parts[0])
    for g in parts[1:]:
        denom = denom * q_double_factorial(g)
    return q_factorial(n).exact_div(denom)


def f_poly(n: int, I) -> UniPoly:
    """``(n)! / ((i_1)! * prod_k (j_k)!!)``; zero when any entry is negative.

    Entries equal to ``n`` are tolerated (gap zero) so that shifted sets from the
    recursion can be fed back in unchanged.
    """
    if n < 0:
        raise ValueError(f"rank must be nonnegative, got {n}")
    members = _members(n, I)
    if members and members[0] < 0:
        return ZERO
    return _f_cached(n, members)


def gaussian_multinomial(n: int, parts: Sequence[int]) -> UniPoly:
    if sum(parts) != n or any(p < 0 for p in parts):
        raise ValueError(f"parts {list(parts)} do not compose {n}")
    denom = ONE
    for p in parts:
        denom = denom * q_factorial(p)
    return q_factorial(n).exact_div(denom)


def f_poly_alternate(n: int, I) -> UniPoly:
    """Gaussian multinomial over the gaps times the odd-bracket products of ``j_1, ..., j_l``."""
    members = _members(n, I)
    if members and members[0] < 0:
        return ZERO
    parts = gaps(n, members)
    out = gaussian_multinomial(n, parts)
    for g in parts[1:]:
        out = out * _odd_part(g)
    return out


def i_shift(I, k: int) -> tuple[int, ...]:
    """The set ``I^(k)``: decrement ``i_k, ..., i_l`` and drop ``i_{k-1}`` if it collides.

    ``k`` is 1-based and ranges over ``1..l+1``; ``k = l+1`` returns ``I``.  The
    result may contain -1.
    """
    members = tuple(sorted(I))
    l = len(members)
    if not 1 <= k <= l + 1:
        raise ValueError(f"shift index {k} outside [1, {l + 1}]")
    if k == l + 1:
        return members
    head = list(members[: k - 1])
    tail = [i - 1 for i in members[k - 1:]]
    if head and tail[0] == head[-1]:
        head.pop()
    return tuple(head + tail)


def last_odd_gap_index(n: int, I) -> int | None:
    """Largest ``m`` in ``1..l`` with ``j_m`` odd, or None."""
    parts = gaps(n, sorted(I))
    for m in range(len(parts) - 1, 0, -1):
        if parts[m] % 2:
            return m
    return None


def f_recursion_rhs(n: int, I) -> UniPoly:
    """Right side of the recurrence for ``f_{n,I}`` in terms of rank ``n - 1``."""
    members = tuple(sorted(I))
    l = len(members)
    padded = members + (n,)  # padded[t - 1] = i_t, with i_{l+1} = n
    m = last_odd_gap_index(n, members)
    start = 0 if m is None else m
    out = ZERO
    if m is not None:
        out = out - f_poly(n - 1, i_shift(members, m + 1)).shift(n)
    for t in range(start, l + 1):
        out = out + f_poly(n - 1, i_shift(members, t + 1)).shift(n - padded[t])
    return out


def f_recursion_check(n: int, I) -> bool:
    if n < 2:
        raise ValueError("the recurrence needs n >= 2")
    return f_recursion_rhs(n, I) == f_poly(n, I)


def divides_xt_plus_one(p: BiPoly) -> bool:
    """Whether ``X*t + 1`` divides ``p`` in ``Z[X, t]``.

    Substitutes ``t = -1/X`` and clears denominators: ``p`` is divisible iff
    ``sum_k (-1)^k c_k(X) X^(N-k)`` vanishes, N the t-degree.  Since ``X*t + 1`` is
    primitive in ``Z[X][t]`` this is equivalent to exact divisibility over Z.
    """
    if p.is_zero():
        return True
    N = p.t_degree
    acc = ZERO
    for k, c in enumerate(p.coeffs):
        term = c.shift(N - k)
        acc = acc - term if k % 2 else acc + term
    return acc.is_zero()
