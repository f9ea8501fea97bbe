"""Exact integer polynomials in ``y`` and in ``(x, y)``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


@dataclass(frozen=True)
class UniPoly:
    """Dense polynomial in ``y``; ``coeffs[k]`` is the ``y^k`` coefficient.

    Trailing zeros are stripped, so the zero polynomial is ``()``.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = [int(a) for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def constant(cls, c: int) -> UniPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> UniPoly:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(tuple(self[k] + other[k] for k in range(n)))

    def __sub__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(tuple(self[k] - other[k] for k in range(n)))

    def __mul__(self, other: UniPoly | int) -> UniPoly:
        if isinstance(other, int):
            return UniPoly(tuple(other * a for a in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> UniPoly:
        """Multiply by ``y^k`` (``k >= 0``)."""
        if k < 0:
            raise ValueError("negative shift")
        return UniPoly((0,) * k + self.coeffs) if self.coeffs else self

    def __call__(self, y: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * y + a
        return acc

    def coefficientwise_le(self, other: UniPoly) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self[k] <= other[k] for k in range(n))

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if k == 0:
                terms.append(str(a))
            else:
                mono = "y" if k == 1 else f"y^{k}"
                terms.append(mono if a == 1 else f"{a}{mono}")
        return " + ".join(terms).replace("+ -", "- ")


ZERO = UniPoly()
ONE = UniPoly((1,))
Y = UniPoly((0, 1))


@dataclass(frozen=True)
class BiPoly:
    """Sparse polynomial in ``x, y``: ``((i, j), c)`` items for ``c x^i y^j``."""

    terms: tuple[tuple[tuple[int, int], int], ...] = ()

    def __post_init__(self) -> None:
        acc: dict[tuple[int, int], int] = {}
        for (i, j), c in self.terms:
            acc[(i, j)] = acc.get((i, j), 0) + int(c)
        object.__setattr__(self, "terms", tuple(sorted((k, c) for k, c in acc.items() if c)))

    @classmethod
    def from_dict(cls, d: Mapping[tuple[int, int], int]) -> BiPoly:
        return cls(tuple(d.items()))

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> BiPoly:
        return cls((((i, j), c),))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.terms)

    def __add__(self, other: BiPoly) -> BiPoly:
        return BiPoly(self.terms + other.terms)

    def __mul__(self, other: BiPoly) -> BiPoly:
        acc: dict[tuple[int, int], int] = {}
        for (i, j), a in self.terms:
            for (k, l), b in other.terms:
                key = (i + k, j + l)
                acc[key] = acc.get(key, 0) + a * b
        return BiPoly(tuple(acc.items()))

    def times_monomial(self, i: int, j: int) -> BiPoly:
        return BiPoly(tuple(((a + i, b + j), c) for (a, b), c in self.terms))

    def __call__(self, x: int, y: int) -> int:
        return sum(c * x**i * y**j for (i, j), c in self.terms)

    def at_x1(self) -> UniPoly:
        """Specialize ``x = 1``."""
        if not self.terms:
            return UniPoly()
        out = [0] * (max(j for (_, j), _ in self.terms) + 1)
        for (_, j), c in self.terms:
            out[j] += c
        return UniPoly(tuple(out))

    def is_nonnegative(self) -> bool:
        return all(c > 0 for _, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms, key=lambda t: (-t[0][0] - t[0][1], -t[0][0])):
            mono = "".join(
                s for s in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                )
            )
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(parts)

    def triples(self) -> list[tuple[int, int, int]]:
        return [(i, j, c) for (i, j), c in self.terms]


BI_ONE = BiPoly.monomial(0, 0)
BI_X = BiPoly.monomial(1, 0)
BI_Y = BiPoly.monomial(0, 1)


def product(polys: Iterable[BiPoly]) -> BiPoly:
    acc = BI_ONE
    for p in polys:
        acc = acc * p
    return acc
