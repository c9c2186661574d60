"""Exhaustively enumerated permutation groups over a numpy element table.

Every element is a row of 0-based images; downstream code works with row
indices only. Index 0 is always the identity and the indexing is the
breadth-first discovery order from the generators, so it is reproducible.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ResourceCapError
from .perms import Permutation

DEFAULT_ORDER_CAP = 10000


class FiniteGroup:
    """A finite permutation group with a full element table.

    Construct through :func:`generate_group`. Instances are immutable after
    construction; the lazily filled caches are idempotent, so sharing a group
    between threads is safe.
    """

    def __init__(self, degree, rows, gen_indices, generators, bfs_edges, name=None):
        self.degree = degree
        self.rows = rows  # (order, degree) int32, 0-based images
        self.order = len(rows)
        self.gen_indices = tuple(gen_indices)
        self.generators = tuple(generators)
        self.bfs_edges = bfs_edges  # bfs_edges[i] = (parent index, generator position)
        self.name = name
        self._row_index = {r.tobytes(): i for i, r in enumerate(rows)}
        self._inv = None
        self._orders = None
        self._classes = None
        self._conj_tables: dict[int, np.ndarray] = {}
        # caches owned by other modules, keyed by masks / primes
        self.cache: dict[str, dict] = {}

    def __repr__(self):
        label = self.name or "group"
        return f"<FiniteGroup {label} order={self.order} degree={self.degree}>"

    def scratch(self, section: str) -> dict:
        """A named per-group cache dict (idempotent fills only)."""
        table = self.cache.get(section)
        if table is None:
            table = self.cache.setdefault(section, {})
        return table

    # -- element access -------------------------------------------------

    def perm(self, i: int) -> Permutation:
        return Permutation(tuple(int(x) + 1 for x in self.rows[i]))

    def index_of(self, perm: Permutation) -> int:
        if perm.degree != self.degree:
            raise ValueError("degree mismatch")
        row = np.asarray([i - 1 for i in perm.images], dtype=np.int32)
        key = row.tobytes()
        if key not in self._row_index:
            raise KeyError(f"permutation {perm} is not an element of this group")
        return self._row_index[key]

    def lookup_rows(self, rows2d: np.ndarray) -> np.ndarray:
        """Map image rows back to element indices."""
        idx = self._row_index
        rows2d = np.ascontiguousarray(rows2d, dtype=np.int32)
        return np.fromiter(
            (idx[r.tobytes()] for r in rows2d), dtype=np.int64, count=len(rows2d)
        )

    # -- multiplication (compose left to right: (a*b)(x) = b(a(x))) ------

    def mult(self, i: int, j: int) -> int:
        row = self.rows[j][self.rows[i]]
        return self._row_index[row.tobytes()]

    def mult_many(self, idxs: np.ndarray, j: int) -> np.ndarray:
        """Indices of x*j for every x in ``idxs``."""
        if len(idxs) == 0:
            return np.zeros(0, dtype=np.int64)
        return self.lookup_rows(self.rows[j][self.rows[idxs]])

    def mult_by_many(self, i: int, idxs: np.ndarray) -> np.ndarray:
        """Indices of i*x for every x in ``idxs``."""
        if len(idxs) == 0:
            return np.zeros(0, dtype=np.int64)
        return self.lookup_rows(self.rows[idxs][:, self.rows[i]])

    @property
    def inv(self) -> np.ndarray:
        if self._inv is None:
            order, degree = self.rows.shape
            inv_rows = np.empty_like(self.rows)
            ar = np.broadcast_to(np.arange(degree, dtype=np.int32), self.rows.shape)
            np.put_along_axis(inv_rows, self.rows, ar, axis=1)
            self._inv = self.lookup_rows(inv_rows)
        return self._inv

    def inverse(self, i: int) -> int:
        return int(self.inv[i])

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse(i), -k)
        acc = 0
        base = i
        while k:
            if k & 1:
                acc = self.mult(acc, base)
            base = self.mult(base, base)
            k >>= 1
        return acc

    def conj(self, h: int, g: int) -> int:
        """Index of g^-1 * h * g."""
        return self.mult(self.mult(self.inverse(g), h), g)

    def conj_by_all(self, h: int) -> np.ndarray:
        """Indices of h^g for every g, as an array indexed by g."""
        table = self._conj_tables.get(h)
        if table is None:
            inv_rows = self.rows[self.inv]
            c1 = self.rows[h][inv_rows]  # c1[g,x] = h(g^-1(x))
            c2 = np.take_along_axis(self.rows, c1, axis=1)  # g(h(g^-1(x)))
            table = self.lookup_rows(c2)
            self._conj_tables[h] = table
        return table

    def conj_set(self, idxs: np.ndarray, g: int) -> np.ndarray:
        """Indices of x^g for every x in ``idxs``."""
        if len(idxs) == 0:
            return np.zeros(0, dtype=np.int64)
        ginv_row = self.rows[self.inverse(g)]
        c1 = self.rows[idxs][:, ginv_row]
        c2 = self.rows[g][c1]
        return self.lookup_rows(c2)

    def commutator(self, a: int, b: int) -> int:
        return self.mult(self.mult(self.inverse(a), self.inverse(b)), self.mult(a, b))

    # -- element orders and conjugacy classes ----------------------------

    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            orders = np.empty(self.order, dtype=np.int64)
            for i, row in enumerate(self.rows):
                orders[i] = _order_from_row(row)
            self._orders = orders
        return self._orders

    def element_order(self, i: int) -> int:
        return int(self.element_orders[i])

    def conjugacy_classes(self) -> list[np.ndarray]:
        """Orbits of the conjugation action, each sorted, ordered by minimum."""
        if self._classes is not None:
            return self._classes
        seen = np.zeros(self.order, dtype=bool)
        classes = []
        for i in range(self.order):
            if seen[i]:
                continue
            seen[i] = True
            members = [i]
            frontier = np.asarray([i], dtype=np.int64)
            while len(frontier):
                new = []
                for g in self.gen_indices:
                    for x in self.conj_set(frontier, g):
                        x = int(x)
                        if not seen[x]:
                            seen[x] = True
                            new.append(x)
                members.extend(new)
                frontier = np.asarray(new, dtype=np.int64)
            classes.append(np.asarray(sorted(members), dtype=np.int64))
        self._classes = classes
        return classes


def _order_from_row(row: np.ndarray) -> int:
    seen = np.zeros(len(row), dtype=bool)
    result = 1
    for start in range(len(row)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = row[x]
            length += 1
        result = math.lcm(result, length)
    return result


def generate_group(
    gens,
    degree: int,
    cap: int = DEFAULT_ORDER_CAP,
    name: str | None = None,
) -> FiniteGroup:
    """Close the generators under composition by breadth-first multiplication.

    Raises :class:`ResourceCapError` when the element count exceeds ``cap``.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    if cap < 1:
        raise ValueError("cap must be positive")
    gens = list(gens)
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
    gen_rows = [np.asarray([i - 1 for i in g.images], dtype=np.int32) for g in gens]

    identity = np.arange(degree, dtype=np.int32)
    rows = [identity]
    index = {identity.tobytes(): 0}
    edges = [(-1, -1)]
    frontier = [0]
    while frontier:
        frontier_rows = np.stack([rows[i] for i in frontier])
        next_frontier = []
        for gpos, grow in enumerate(gen_rows):
            products = grow[frontier_rows]  # products[t] = frontier[t] * gen
            for t, row in enumerate(products):
                key = row.tobytes()
                if key not in index:
                    if len(rows) >= cap:
                        raise ResourceCapError("group order exceeds cap", len(rows))
                    index[key] = len(rows)
                    edges.append((frontier[t], gpos))
                    next_frontier.append(len(rows))
                    rows.append(row)
        frontier = next_frontier

    table = np.stack(rows)
    gen_indices = [index[r.tobytes()] for r in gen_rows]
    return FiniteGroup(degree, table, gen_indices, gens, edges, name=name)


def closure_indices(group: FiniteGroup, gen_idxs) -> np.ndarray:
    """Element indices of <gens> inside ``group``, in BFS discovery order."""
    members = {0}
    out = [0]
    frontier = np.asarray([0], dtype=np.int64)
    gen_idxs = [int(g) for g in gen_idxs]
    while len(frontier):
        new = []
        for g in gen_idxs:
            for x in group.mult_many(frontier, g):
                x = int(x)
                if x not in members:
                    members.add(x)
                    new.append(x)
        out.extend(new)
        frontier = np.asarray(new, dtype=np.int64)
    return np.asarray(out, dtype=np.int64)
