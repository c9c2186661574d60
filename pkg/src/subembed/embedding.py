"""Subgroup-embedding predicates over chief series.

The existential predicates (some chief series works) are decided as
single-source reachability in the cover-pair DAG of the normal lattice:
the per-factor conditions depend only on the cover pair, and chief series
are exactly the maximal chains, so a path from the trivial node to the
top exists iff an admissible chief series does. This avoids enumerating
chains, which is exponential for elementary abelian groups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import FiniteGroup
from .normal import NormalLattice, normal_lattice
from .subgroups import (
    Subgroup,
    intersect,
    is_pi_number,
    is_prime,
    normalizer,
    p_part,
    prime_divisors,
    product_mask,
    product_with_normal,
)


@dataclass(frozen=True)
class Refutation:
    """A violating chief factor nodes[lower] < nodes[upper] and the failed clause."""

    lower: int
    upper: int
    reason: str


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: tuple[int, ...] | None = None  # lattice node ids, bottom to top
    refutation: Refutation | None = None

    def __bool__(self) -> bool:
        return self.holds


def _section_subgroup(group, h: Subgroup, lat: NormalLattice, k: int, l: int) -> Subgroup:
    """(H ∩ L)K for the cover pair (K, L); a subgroup since K is normal."""
    inter = intersect(h, lat.nodes[l])
    return product_with_normal(inter, lat.nodes[k])


def _normalizer_index_is_pi(group, lat, x: Subgroup, pi) -> bool:
    """|G : N_G(X)| a pi-number; N_{G/K}(X/K) = N_G(X)/K since K <= X is normal,
    so the index upstairs equals the index in G."""
    if x.mask in lat.node_by_mask:
        return True  # X itself normal: index 1
    return is_pi_number(group.order // normalizer(group, x).order, pi)


def _search_dag(group, lat: NormalLattice, edge_ok) -> Verdict:
    """Reachability from the trivial node to the top along passing cover pairs."""
    parent = {0: None}
    frontier = [0]
    while frontier:
        nxt = []
        for node in frontier:
            for upper in lat.up[node]:
                if upper in parent or not edge_ok(node, upper):
                    continue
                parent[upper] = node
                if upper == lat.top:
                    path = [upper]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return Verdict(True, witness=tuple(reversed(path)))
                nxt.append(upper)
        frontier = nxt
    if lat.top == 0:
        return Verdict(True, witness=(0,))
    return Verdict(False)


def partial_s_pi(group: FiniteGroup, h: Subgroup, p: int) -> Verdict:
    """True iff some chief series of G has, on every factor L/K, either
    (H∩L)K/K a Sylow p-subgroup of L/K, or |G : N_G((H∩L)K)| a p-number.

    H must be a p-subgroup of G.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p_part(h.order, p) != h.order:
        raise ValueError(f"subgroup of order {h.order} is not a {p}-group")
    cache = group.scratch("partial_s_pi")
    got = cache.get((h.mask, p))
    if got is not None:
        return got
    lat = normal_lattice(group)

    def edge_ok(k: int, l: int) -> bool:
        x = _section_subgroup(group, h, lat, k, l)
        factor = lat.nodes[l].order // lat.nodes[k].order
        if x.order // lat.nodes[k].order == p_part(factor, p):
            return True  # X/K is a p-group, so full p-part means Sylow
        return _normalizer_index_is_pi(group, lat, x, (p,))

    return cache.setdefault((h.mask, p), _search_dag(group, lat, edge_ok))


def partial_pi(group: FiniteGroup, h: Subgroup) -> Verdict:
    """True iff some chief series has, on every factor, |G : N_G((H∩L)K)| a
    pi((H∩L)K/K)-number. Only 1 is an empty-pi number, which is harmless:
    an avoided factor forces X = K, normal of index 1."""
    cache = group.scratch("partial_pi")
    got = cache.get(h.mask)
    if got is not None:
        return got
    lat = normal_lattice(group)

    def edge_ok(k: int, l: int) -> bool:
        x = _section_subgroup(group, h, lat, k, l)
        pi = prime_divisors(x.order // lat.nodes[k].order)
        return _normalizer_index_is_pi(group, lat, x, pi)

    return cache.setdefault(h.mask, _search_dag(group, lat, edge_ok))


def cap(group: FiniteGroup, h: Subgroup) -> Verdict:
    """Cover-avoidance: every chief factor L/K has L <= HK or H∩L <= K."""
    cache = group.scratch("cap")
    got = cache.get(h.mask)
    if got is not None:
        return got
    lat = normal_lattice(group)
    verdict = Verdict(True)
    for k, l in lat.covers:
        low, high = lat.nodes[k], lat.nodes[l]
        if intersect(h, high).is_subset_of(low):
            continue  # avoided
        if high.mask & ~product_mask(h, low) == 0:
            continue  # covered
        verdict = Verdict(
            False, refutation=Refutation(k, l, "neither covers nor avoids")
        )
        break
    return cache.setdefault(h.mask, verdict)


def gen_cap(group: FiniteGroup, h: Subgroup) -> Verdict:
    """Generalized cover-avoidance: every chief factor is avoided, or
    (q-group factor) |G : N_G((H∩L)K)| is a q-number, or (non-abelian
    factor) |L : (H∩L)K| is coprime to every prime of (H∩L)K/K.

    A chief factor is abelian exactly when its order is a prime power, so
    the two non-avoided branches are distinguished by the factor order.
    """
    cache = group.scratch("gen_cap")
    got = cache.get(h.mask)
    if got is not None:
        return got
    lat = normal_lattice(group)
    verdict = Verdict(True)
    for k, l in lat.covers:
        low, high = lat.nodes[k], lat.nodes[l]
        if intersect(h, high).is_subset_of(low):
            continue
        x = _section_subgroup(group, h, lat, k, l)
        factor = high.order // low.order
        factor_primes = prime_divisors(factor)
        if len(factor_primes) == 1:
            q = factor_primes[0]
            if _normalizer_index_is_pi(group, lat, x, (q,)):
                continue
            verdict = Verdict(
                False,
                refutation=Refutation(
                    k, l, f"|G : N_G((H∩L)K)| is not a {q}-number"
                ),
            )
            break
        cofactor = high.order // x.order
        bad = [q for q in prime_divisors(x.order // low.order) if cofactor % q == 0]
        if bad:
            verdict = Verdict(
                False,
                refutation=Refutation(
                    k, l, f"|L : (H∩L)K| is divisible by {bad[0]}"
                ),
            )
            break
    return cache.setdefault(h.mask, verdict)


def s_quasinormal(group: FiniteGroup, h: Subgroup) -> bool:
    """True iff H permutes with every Sylow subgroup of G (HS = SH for all
    conjugates of every Sylow subgroup)."""
    from .classify import primes_of_group, sylow_conjugates

    cache = group.scratch("s_quasinormal")
    got = cache.get(h.mask)
    if got is not None:
        return got
    result = True
    if not h.is_normal():
        for p in primes_of_group(group):
            for s in sylow_conjugates(group, p):
                if h.is_subset_of(s) or s.is_subset_of(h):
                    continue
                if product_mask(h, s) != product_mask(s, h):
                    result = False
                    break
            if not result:
                break
    return cache.setdefault(h.mask, result)


def s_qn_embedded(group: FiniteGroup, h: Subgroup) -> bool:
    """True iff, for each prime q dividing |H|, some S-quasinormal subgroup of
    G has a Sylow q-subgroup equal to one of H.

    The witness search is anchored to the normal lattice: candidates are the
    lattice nodes and the spans of H's Sylow q-subgroup with each node. A
    True answer is sound (the witness is checked); a False answer means no
    candidate in that family worked, which is a best-effort bound since full
    S-quasinormal subgroup enumeration is infeasible for large groups.
    """
    from .classify import sylow_of_subgroup
    from .subgroups import span

    cache = group.scratch("s_qn_embedded")
    got = cache.get(h.mask)
    if got is not None:
        return got
    lat = normal_lattice(group)
    result = True
    for q in prime_divisors(h.order):
        hq = sylow_of_subgroup(h, q)
        candidates = {node.mask for node in lat.nodes}
        for node in lat.nodes:
            candidates.add(span(group, set(hq.gens) | set(node.gens)).mask)
        found = False
        for mask in sorted(candidates):
            w = Subgroup(group, mask)
            if not hq.is_subset_of(w):
                continue
            if p_part(w.order, q) != hq.order:
                continue  # hq would not be Sylow in w
            if s_quasinormal(group, w):
                found = True
                break
        if not found:
            result = False
            break
    return cache.setdefault(h.mask, result)


def recheck_witness_partial_s_pi(
    group: FiniteGroup, h: Subgroup, p: int, chain: tuple[int, ...]
) -> bool:
    """Re-validate a witness chain clause by clause (used for spot audits)."""
    lat = normal_lattice(group)
    if chain[0] != 0 or chain[-1] != lat.top:
        return False
    cover_set = set(lat.covers)
    for k, l in zip(chain, chain[1:]):
        if (k, l) not in cover_set:
            return False
        x = _section_subgroup(group, h, lat, k, l)
        factor = lat.nodes[l].order // lat.nodes[k].order
        sylow_clause = x.order // lat.nodes[k].order == p_part(factor, p)
        index = group.order // normalizer(group, x).order
        if not sylow_clause and not is_pi_number(index, (p,)):
            return False
    return True
