"""Exact integer matrices, Smith normal form and finite abelian groups.

Everything is plain Python ``int``; there is no fixed-width fast path.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major matrix of Python integers."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(r, c, tuple(int(x) for row in rows for x in row))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> IntMatrix:
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_lists(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> list[int]:
        return [self[i, j] for i in range(self.rows)]

    def with_columns(self, extra: Iterable[Sequence[int]]) -> IntMatrix:
        """Augment on the right by the given column vectors."""
        extra = [list(v) for v in extra]
        for v in extra:
            if len(v) != self.rows:
                raise ValueError(f"column of length {len(v)} does not fit {self.rows} rows")
        rows = self.to_lists()
        for i, row in enumerate(rows):
            row.extend(v[i] for v in extra)
        return IntMatrix(self.rows, self.cols + len(extra), tuple(x for row in rows for x in row))

    def delete(self, index: int) -> IntMatrix:
        """Drop row ``index`` and column ``index`` (square matrices)."""
        rows = [
            [x for j, x in enumerate(row) if j != index]
            for i, row in enumerate(self.to_lists())
            if i != index
        ]
        return IntMatrix(self.rows - 1, self.cols - 1, tuple(x for row in rows for x in row))

    def matvec(self, v: Sequence[int]) -> list[int]:
        return [sum(self[i, j] * v[j] for j in range(self.cols)) for i in range(self.rows)]

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:>4}" for x in row) for row in self.to_lists())


def _smallest_nonzero(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_abs = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            x = row[j]
            if x and (best is None or abs(x) < best_abs):
                best, best_abs = (i, j), abs(x)
    return best


def smith_normal_form(m: IntMatrix) -> list[int]:
    """Diagonal ``d_1 | d_2 | ... | d_r`` (``r = min(rows, cols)``), all ``>= 0``.

    Pivot is the smallest nonzero absolute value in the trailing submatrix,
    ties broken row-major.  Transforms are not tracked.
    """
    a = m.to_lists()
    rows, cols = m.rows, m.cols
    r = min(rows, cols)
    diag: list[int] = []
    for t in range(r):
        while True:
            pos = _smallest_nonzero(a, t)
            if pos is None:
                return diag + [0] * (r - t)
            i, j = pos
            a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ai, at = a[i], a[t]
                        for k in range(t, cols):
                            ai[k] -= q * at[k]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a[t:]:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            # row t and column t are clear; enforce p | rest
            bad = next(
                (i for i in range(t + 1, rows) if any(a[i][k] % p for k in range(t + 1, cols))),
                None,
            )
            if bad is None:
                break
            at, ab = a[t], a[bad]
            for k in range(t, cols):
                at[k] += ab[k]
        diag.append(abs(a[t][t]))
    return diag


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


class InfiniteCokernelError(ValueError):
    """Raised when a presentation matrix is singular."""

    def __init__(self, free_rank: int):
        super().__init__(f"infinite cokernel: free rank {free_rank}")
        self.free_rank = free_rank


_GROUP_TERM = re.compile(r"^Z_(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group by invariant factors ``d_1 | d_2 | ...``, each ``>= 2``."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        for d in f:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(f, f[1:]):
            if b % a:
                raise ValueError(f"{a} does not divide {b}")

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> AbelianGroup:
        """Normalize a direct sum of cyclic groups ``Z_a + Z_b + ...``.

        Repeatedly replaces a non-dividing pair by ``(gcd, lcm)``.
        """
        f = sorted(int(d) for d in orders)
        if any(d < 1 for d in f):
            raise ValueError("cyclic orders must be positive")
        changed = True
        while changed:
            changed = False
            for i in range(len(f)):
                for j in range(i + 1, len(f)):
                    if f[j] % f[i]:
                        g = math.gcd(f[i], f[j])
                        f[i], f[j] = g, f[i] * f[j] // g
                        changed = True
            f.sort()
        return cls(tuple(d for d in f if d > 1))

    @classmethod
    def parse(cls, text: str) -> AbelianGroup:
        text = text.strip()
        if text == "0":
            return cls()
        orders: list[int] = []
        for term in text.split(" x "):
            match = _GROUP_TERM.match(term.strip())
            if not match:
                raise ValueError(f"cannot parse group term {term!r}")
            orders += [int(match.group(1))] * int(match.group(2) or 1)
        return cls.from_cyclic(orders)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        """Minimal number of generators."""
        return len(self.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        parts = []
        for d, run in groupby(self.invariant_factors):
            k = len(list(run))
            parts.append(f"Z_{d}" if k == 1 else f"Z_{d}^{k}")
        return " x ".join(parts)

    def to_json(self) -> dict:
        return {"factors": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data: dict) -> AbelianGroup:
        return cls(tuple(data["factors"]))


def cokernel(m: IntMatrix) -> AbelianGroup:
    """``Z^n / im(m)`` for a square nonsingular ``m``."""
    if m.rows != m.cols:
        raise ValueError(f"cokernel needs a square matrix, got {m.rows}x{m.cols}")
    diag = smith_normal_form(m)
    zeros = diag.count(0)
    if zeros:
        raise InfiniteCokernelError(zeros)
    return AbelianGroup(tuple(d for d in diag if d > 1))


def is_full_image(m: IntMatrix, extra_cols: Iterable[Sequence[int]]) -> bool:
    """True iff columns of ``m`` plus ``extra_cols`` span ``Z^n``."""
    if m.rows != m.cols:
        raise ValueError("is_full_image needs a square matrix")
    aug = m.with_columns(extra_cols)
    if m.rows == 0:
        return True
    return all(d == 1 for d in smith_normal_form(aug))


def in_image(m: IntMatrix, vec: Sequence[int]) -> bool:
    """Whether ``vec`` lies in the column lattice of nonsingular square ``m``.

    Compares lattice indices of ``im m`` and ``im [m | vec]``.
    """
    if m.rows != m.cols:
        raise ValueError("in_image needs a square matrix")
    index = abs(determinant(m))
    if index == 0:
        raise InfiniteCokernelError(smith_normal_form(m).count(0))
    return math.prod(smith_normal_form(m.with_columns([vec]))) == index
