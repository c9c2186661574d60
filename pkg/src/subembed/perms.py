"""Permutations of {1..n} in image-array form, with cycle-notation parsing."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CycleParseError


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``images[k-1]`` is the image of point k.

    Products compose left to right: ``(a * b)`` applies ``a`` first.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {self.images}")

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(1, degree + 1)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for k, i in enumerate(self.images, start=1):
            inv[i - 1] = k
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == k for k, i in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles of length >= 2, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            nxt = self.images[start - 1]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt - 1] = True
                nxt = self.images[nxt - 1]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def __str__(self) -> str:
        return format_cycles(self)


def format_cycles(perm: Permutation) -> str:
    cycs = perm.cycles()
    if not cycs:
        return "()"
    return "".join("(" + " ".join(str(pt) for pt in c) + ")" for c in cycs)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse whitespace-separated disjoint cycles like ``"(1 2 3)(4 5)"``.

    Empty (or all-whitespace) text denotes the identity. Points must lie in
    1..degree and may appear at most once. Errors carry the character offset.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    images = list(range(1, degree + 1))
    used: set[int] = set()
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise CycleParseError(f"expected '(' but found {ch!r}", i)
        i += 1
        points: list[int] = []
        while True:
            while i < n and text[i].isspace():
                i += 1
            if i >= n:
                raise CycleParseError("unclosed cycle", i)
            if text[i] == ")":
                i += 1
                break
            if not text[i].isdigit():
                raise CycleParseError(f"expected point or ')' but found {text[i]!r}", i)
            start = i
            while i < n and text[i].isdigit():
                i += 1
            pt = int(text[start:i])
            if not 1 <= pt <= degree:
                raise CycleParseError(f"point {pt} out of range 1..{degree}", start)
            if pt in used:
                raise CycleParseError(f"point {pt} repeated", start)
            used.add(pt)
            points.append(pt)
        for a, b in zip(points, points[1:]):
            images[a - 1] = b
        if points:
            images[points[-1] - 1] = points[0]
    return Permutation(tuple(images))
