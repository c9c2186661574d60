"""Subgroups as bit-indexed subsets of a parent group's element table."""

from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from .groups import FiniteGroup, closure_indices


def mask_from_indices(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def indices_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class Subgroup:
    """A subgroup of ``group``, stored as a bitmask over element indices.

    Word-parallel mask arithmetic makes intersections, containment tests and
    equality O(|G|/w). Instances are immutable and hashable.
    """

    __slots__ = ("group", "mask", "__dict__")

    def __init__(self, group: FiniteGroup, mask: int):
        self.group = group
        self.mask = mask

    @classmethod
    def from_indices(cls, group: FiniteGroup, indices) -> "Subgroup":
        return cls(group, mask_from_indices(indices))

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "Subgroup":
        return cls(group, 1)

    @classmethod
    def whole(cls, group: FiniteGroup) -> "Subgroup":
        return cls(group, (1 << group.order) - 1)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group is other.group
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((id(self.group), self.mask))

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.group!r}>"

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @cached_property
    def indices(self) -> tuple[int, ...]:
        return indices_from_mask(self.mask)

    @cached_property
    def index_array(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=np.int64)

    @cached_property
    def member_bool(self) -> np.ndarray:
        member = np.zeros(self.group.order, dtype=bool)
        member[self.index_array] = True
        return member

    def contains_index(self, i: int) -> bool:
        return bool(self.mask >> int(i) & 1)

    def is_subset_of(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == self.mask

    @cached_property
    def gens(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in element-index order."""
        cache = self.group.scratch("small_gens")
        got = cache.get(self.mask)
        if got is None:
            gens: list[int] = []
            have = 1
            for i in self.indices:
                if not have >> i & 1:
                    gens.append(i)
                    have = mask_from_indices(closure_indices(self.group, gens))
            assert have == self.mask
            got = cache.setdefault(self.mask, tuple(gens))
        return got

    def is_normal(self) -> bool:
        for g in self.group.gen_indices:
            for s in self.gens:
                if not self.contains_index(self.group.conj(s, g)):
                    return False
        return True

    def conjugate(self, g: int) -> "Subgroup":
        return Subgroup.from_indices(
            self.group, self.group.conj_set(self.index_array, g)
        )


def span(group: FiniteGroup, seed) -> Subgroup:
    """Smallest subgroup of ``group`` containing the seed element indices."""
    seed = [int(i) for i in seed]
    for i in seed:
        if not 0 <= i < group.order:
            raise ValueError(f"element index {i} out of range")
    # reduce the seed to a small generating set before the closure
    gens: list[int] = []
    have = 1
    for i in seed:
        if not have >> i & 1:
            gens.append(i)
            have = mask_from_indices(closure_indices(group, gens))
    return Subgroup(group, have)


def intersect(a: Subgroup, b: Subgroup) -> Subgroup:
    if a.group is not b.group:
        raise ValueError("subgroups have different parent groups")
    return Subgroup(a.group, a.mask & b.mask)


def product_mask(a: Subgroup, b: Subgroup) -> int:
    """Bitmask of the element set {xy : x in a, y in b}.

    Iterates cosets of the larger factor, skipping a left factor entirely
    once one of its products is already present (its whole coset is).
    """
    if a.group is not b.group:
        raise ValueError("subgroups have different parent groups")
    group = a.group
    if a.is_subset_of(b):
        return b.mask
    if b.is_subset_of(a):
        return a.mask
    if a.order > b.order:
        # AB = union over y in b of (a)y
        result = 0
        arr = a.index_array
        for y in b.indices:
            first = group.mult(int(arr[0]), y)
            if result >> first & 1:
                continue
            result |= mask_from_indices(group.mult_many(arr, y))
        out = result
    else:
        result = 0
        arr = b.index_array
        for x in a.indices:
            first = group.mult(x, int(arr[0]))
            if result >> first & 1:
                continue
            result |= mask_from_indices(group.mult_by_many(x, arr))
        out = result
    expected = a.order * b.order // (a.mask & b.mask).bit_count()
    assert out.bit_count() == expected, "product size violates |A||B|/|A∩B|"
    return out


def product(a: Subgroup, b: Subgroup) -> tuple[frozenset[int], bool]:
    """The set {xy} together with a flag telling whether it is a subgroup.

    The flag is computed as AB == BA, which is equivalent to closure.
    """
    ab = product_mask(a, b)
    ba = product_mask(b, a)
    return frozenset(indices_from_mask(ab)), ab == ba


def product_with_normal(a: Subgroup, n: Subgroup) -> Subgroup:
    """The subgroup a*n for n normal in the join (no closure check needed)."""
    return Subgroup(a.group, product_mask(a, n))


def normalizer(group: FiniteGroup, h: Subgroup) -> Subgroup:
    """{g : h^g = h}, by a full scan over the group."""
    cache = group.scratch("normalizer")
    got = cache.get(h.mask)
    if got is None:
        ok = np.ones(group.order, dtype=bool)
        member = h.member_bool
        for s in h.gens:
            ok &= member[group.conj_by_all(s)]
        got = cache.setdefault(h.mask, mask_from_indices(np.nonzero(ok)[0]))
    return Subgroup(group, got)


def centralizer(group: FiniteGroup, h: Subgroup) -> Subgroup:
    cache = group.scratch("centralizer")
    got = cache.get(h.mask)
    if got is None:
        ok = np.ones(group.order, dtype=bool)
        for s in h.gens:
            ok &= group.conj_by_all(s) == s
        got = cache.setdefault(h.mask, mask_from_indices(np.nonzero(ok)[0]))
    return Subgroup(group, got)


def center(group: FiniteGroup) -> Subgroup:
    return centralizer(group, Subgroup.whole(group))


def normal_closure_in(group: FiniteGroup, ambient_gens, seed) -> Subgroup:
    """Smallest subgroup containing ``seed`` that the ambient generators normalize."""
    gens = [int(i) for i in seed if int(i) != 0]
    current = span(group, gens)
    while True:
        new = []
        for s in current.gens:
            for g in ambient_gens:
                t = group.conj(s, int(g))
                if not current.contains_index(t):
                    new.append(t)
        if not new:
            return current
        gens = list(current.gens) + new
        current = span(group, gens)


def derived_subgroup(group: FiniteGroup) -> Subgroup:
    """[G,G]: the normal closure of the commutators of generator pairs."""
    return derived_of_subgroup(Subgroup.whole(group))


def derived_of_subgroup(h: Subgroup) -> Subgroup:
    cache = h.group.scratch("derived")
    got = cache.get(h.mask)
    if got is None:
        group = h.group
        comms = {
            group.commutator(a, b) for a in h.gens for b in h.gens if a != b
        }
        got = cache.setdefault(
            h.mask, normal_closure_in(group, h.gens, comms).mask
        )
    return Subgroup(h.group, got)


def lower_central_series(group: FiniteGroup) -> list[Subgroup]:
    """gamma_1 >= gamma_2 >= ... until stable (last term repeated once dropped)."""
    whole = Subgroup.whole(group)
    series = [whole]
    current = whole
    while True:
        comms = {
            group.commutator(x, g)
            for x in current.gens
            for g in group.gen_indices
        }
        nxt = normal_closure_in(group, group.gen_indices, comms)
        if nxt.mask == current.mask:
            return series
        series.append(nxt)
        current = nxt


def exponent(h: Subgroup) -> int:
    orders = h.group.element_orders[h.index_array]
    return int(math.lcm(*(int(o) for o in orders)))


def p_part(n: int, p: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def is_pi_number(n: int, pi) -> bool:
    """True iff every prime divisor of n lies in pi (1 is a pi-number for any pi)."""
    if n < 1:
        raise ValueError("n must be positive")
    for q in pi:
        while n % q == 0:
            n //= q
    return n == 1


def prime_divisors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def is_prime(n: int) -> bool:
    return n > 1 and prime_divisors(n) == (n,)


def is_p_group(h: Subgroup, p: int) -> bool:
    return p_part(h.order, p) == h.order


def is_abelian_subgroup(h: Subgroup) -> bool:
    group = h.group
    return all(
        group.mult(a, b) == group.mult(b, a) for a in h.gens for b in h.gens
    )


def is_cyclic_subgroup(h: Subgroup) -> bool:
    orders = h.group.element_orders[h.index_array]
    return bool(np.any(orders == h.order))


def _require_p_group(h: Subgroup, p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not is_p_group(h, p):
        raise ValueError(f"subgroup of order {h.order} is not a {p}-group")


def frattini_p(p_subgroup: Subgroup, p: int) -> Subgroup:
    """Frattini subgroup of a p-group: derived subgroup joined with p-th powers."""
    _require_p_group(p_subgroup, p)
    group = p_subgroup.group
    derived = derived_of_subgroup(p_subgroup)
    powers = {group.power(x, p) for x in p_subgroup.indices}
    return span(group, set(derived.gens) | powers)


def p_group_maximal_subgroups(p_subgroup: Subgroup, p: int) -> list[Subgroup]:
    """All index-p subgroups: preimages of hyperplanes of P/Phi(P)."""
    _require_p_group(p_subgroup, p)
    if p_subgroup.order == 1:
        return []
    group = p_subgroup.group
    phi = frattini_p(p_subgroup, p)
    # coset basis of the elementary abelian quotient P/Phi
    basis: list[int] = []
    have = phi
    for i in p_subgroup.indices:
        if not have.contains_index(i):
            basis.append(i)
            have = span(group, set(phi.gens) | set(basis))
    d = len(basis)
    assert p**d * phi.order == p_subgroup.order
    out = []
    for functional in _normalized_functionals(p, d):
        kernel_gens = list(phi.gens)
        for vec in _kernel_basis(functional, p):
            rep = 0
            for coord, b in zip(vec, basis):
                rep = group.mult(rep, group.power(b, coord))
            kernel_gens.append(rep)
        sub = span(group, kernel_gens)
        assert sub.order * p == p_subgroup.order
        out.append(sub)
    assert len(out) == (p**d - 1) // (p - 1)
    return out


def _normalized_functionals(p: int, d: int):
    """Nonzero functionals on F_p^d with leading nonzero coordinate 1."""
    for lead in range(d):
        tail = [0] * d
        tail[lead] = 1
        yield from _extend_functional(tail, lead + 1, p, d)


def _extend_functional(prefix, pos, p, d):
    if pos == d:
        yield tuple(prefix)
        return
    for c in range(p):
        prefix[pos] = c
        yield from _extend_functional(prefix, pos + 1, p, d)
    prefix[pos] = 0


def _kernel_basis(functional, p):
    """A basis of the kernel of a nonzero functional on F_p^d."""
    d = len(functional)
    lead = next(i for i, c in enumerate(functional) if c)
    basis = []
    for j in range(d):
        if j == lead:
            continue
        vec = [0] * d
        vec[j] = 1
        vec[lead] = (-functional[j]) % p
        basis.append(vec)
    return basis


def omega(p_subgroup: Subgroup, p: int) -> Subgroup:
    """Subgroup generated by elements of order dividing p, or dividing 4 for
    a non-abelian 2-group."""
    _require_p_group(p_subgroup, p)
    bound = p
    if p == 2 and not is_abelian_subgroup(p_subgroup):
        bound = 4
    orders = p_subgroup.group.element_orders
    gens = [i for i in p_subgroup.indices if bound % int(orders[i]) == 0]
    return span(p_subgroup.group, gens)


def cyclic_subgroups_of_order(p_subgroup: Subgroup, m: int) -> list[Subgroup]:
    """Deduplicated <x> over elements x of exact order m (m = p or m = 4)."""
    p = prime_divisors(p_subgroup.order)[0] if p_subgroup.order > 1 else 0
    if m == 4:
        if p_subgroup.order > 1 and p != 2:
            raise ValueError("order 4 requested for an odd-order group")
    elif p_subgroup.order > 1 and m != p:
        raise ValueError(f"m must be the group prime {p} or 4, got {m}")
    orders = p_subgroup.group.element_orders
    seen: set[int] = set()
    out = []
    for i in p_subgroup.indices:
        if int(orders[i]) == m:
            sub = span(p_subgroup.group, [i])
            if sub.mask not in seen:
                seen.add(sub.mask)
                out.append(sub)
    return out
