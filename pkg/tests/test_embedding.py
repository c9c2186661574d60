import pytest

import subembed as se
from subembed import parse_cycles
from subembed.embedding import recheck_witness_partial_s_pi
from subembed.subgroups import Subgroup, prime_divisors

from conftest import brute_partial_s_pi


def idx(group, text):
    return group.index_of(parse_cycles(text, group.degree))


def test_a5_sylow5_satisfies_partial_s_pi(by_name):
    a5 = by_name["A5"]
    h = se.sylow(a5, 5)
    verdict = se.partial_s_pi(a5, h, 5)
    assert verdict.holds
    assert verdict.witness == (0, 1)


def test_a5_sylow5_fails_partial_pi(by_name):
    a5 = by_name["A5"]
    h = se.sylow(a5, 5)
    assert a5.order // se.normalizer(a5, h).order == 6
    assert not se.is_pi_number(6, (5,))
    assert not se.partial_pi(a5, h).holds


def test_whole_p_group_satisfies(by_name):
    for name in ("Q8", "C8", "C3^3"):
        group = by_name[name]
        p = prime_divisors(group.order)[0]
        assert se.partial_s_pi(group, Subgroup.whole(group), p).holds


def test_trivial_subgroup_satisfies_everything():
    for name, group in se.builtin_corpus(60):
        trivial = Subgroup.trivial(group)
        assert se.partial_pi(group, trivial).holds
        for p in prime_divisors(group.order):
            assert se.partial_s_pi(group, trivial, p).holds


def test_partial_s_pi_requires_p_subgroup(by_name):
    s4 = by_name["S4"]
    with pytest.raises(ValueError):
        se.partial_s_pi(s4, Subgroup.whole(s4), 2)
    with pytest.raises(ValueError):
        se.partial_s_pi(s4, Subgroup.trivial(s4), 4)


def test_partial_s_pi_against_series_enumeration():
    for name, group in se.builtin_corpus(200):
        for p, h in se.standard_pool(group):
            got = se.partial_s_pi(group, h, p).holds
            expected = brute_partial_s_pi(group, h, p)
            assert got == expected, (name, p, h.order)


def brute_partial_pi(group, h, limit=400):
    from subembed.subgroups import product_with_normal

    lat = se.normal_lattice(group)
    for series in se.chief_series_enumerate(group, limit):
        ok = True
        for k, l in zip(series.chain, series.chain[1:]):
            low, high = lat.nodes[k], lat.nodes[l]
            x = product_with_normal(se.intersect(h, high), low)
            pi = prime_divisors(x.order // low.order)
            index = group.order // se.normalizer(group, x).order
            if not se.is_pi_number(index, pi):
                ok = False
                break
        if ok:
            return True
    return False


def test_partial_pi_against_series_enumeration():
    # spans of element pairs reach subgroups outside the p-subgroup pool
    import itertools

    from subembed.errors import ResourceCapError

    for name, group in se.builtin_corpus(48):
        seen = set()
        for i, j in itertools.combinations(range(min(group.order, 16)), 2):
            h = se.span(group, [i, j])
            if h.mask in seen:
                continue
            seen.add(h.mask)
            try:
                expected = brute_partial_pi(group, h)
            except ResourceCapError:
                continue
            assert se.partial_pi(group, h).holds == expected, (name, h.order)


def test_witnesses_revalidate():
    for name, group in se.builtin_corpus(60):
        for p, h in se.standard_pool(group):
            verdict = se.partial_s_pi(group, h, p)
            if verdict.holds:
                assert recheck_witness_partial_s_pi(group, h, p, verdict.witness), name


def test_normal_subgroup_is_cap(by_name):
    for name in ("S4", "SL(2,3)", "D12"):
        group = by_name[name]
        for node in se.normal_lattice(group).nodes:
            assert se.cap(group, node).holds


def test_sylow2_of_s4_is_cap(by_name):
    s4 = by_name["S4"]
    assert se.cap(s4, se.sylow(s4, 2)).holds


def test_cap_refutation_rechecks(by_name):
    a4 = by_name["A4"]
    c2 = se.span(a4, [idx(a4, "(1 2)(3 4)")])
    verdict = se.cap(a4, c2)
    assert not verdict.holds
    lat = se.normal_lattice(a4)
    low = lat.nodes[verdict.refutation.lower]
    high = lat.nodes[verdict.refutation.upper]
    from subembed.subgroups import product_mask

    assert not se.intersect(c2, high).is_subset_of(low)
    assert high.mask & ~product_mask(c2, low) != 0


def test_normal_subgroup_is_gen_cap(by_name):
    for name in ("S4", "A5", "C3^2:C2"):
        group = by_name[name]
        for node in se.normal_lattice(group).nodes:
            assert se.gen_cap(group, node).holds


def test_cap_implies_gen_cap():
    for name, group in se.builtin_corpus(60):
        for _, h in se.standard_pool(group):
            if se.cap(group, h).holds:
                assert se.gen_cap(group, h).holds, name


def test_transposition_not_s_quasinormal_in_s3(by_name):
    s3 = by_name["S3"]
    flip = se.span(s3, [idx(s3, "(1 2)")])
    assert not se.s_quasinormal(s3, flip)
    other = se.span(s3, [idx(s3, "(1 3)")])
    _, closed = se.product(flip, other)
    assert not closed


def test_klein_in_s4_quasinormal_and_embedded(by_name):
    s4 = by_name["S4"]
    v4 = se.normal_lattice(s4).nodes[1]
    assert se.s_quasinormal(s4, v4)
    assert se.s_qn_embedded(s4, v4)


def test_normal_subgroups_are_s_quasinormal(by_name):
    for name in ("S4", "SL(2,3)"):
        group = by_name[name]
        for node in se.normal_lattice(group).nodes:
            assert se.s_quasinormal(group, node)


def test_sylow_subgroups_are_s_qn_embedded():
    # a Sylow subgroup of G is a Sylow subgroup of G itself, which is normal
    for name, group in se.builtin_corpus(48):
        for p in prime_divisors(group.order):
            assert se.s_qn_embedded(group, se.sylow(group, p)), name


def test_s_quasinormal_implies_product_closed_with_every_sylow():
    for name, group in se.builtin_corpus(30):
        for _, h in se.standard_pool(group):
            if not se.s_quasinormal(group, h):
                continue
            for p in prime_divisors(group.order):
                for s in se.sylow_conjugates(group, p):
                    _, closed = se.product(h, s)
                    assert closed, name


def test_proposition_implications_small():
    # gen-cap, partial-pi and s-quasinormality each force partial-s-pi
    for name, group in se.builtin_corpus(60):
        for p, h in se.standard_pool(group):
            psp = se.partial_s_pi(group, h, p).holds
            if se.gen_cap(group, h).holds:
                assert psp, (name, "gen-cap")
            if se.partial_pi(group, h).holds:
                assert psp, (name, "partial-pi")
            if se.s_quasinormal(group, h):
                assert psp, (name, "s-quasinormal")


def test_trivial_group_predicates(by_name):
    c1 = by_name["C1"]
    trivial = Subgroup.trivial(c1)
    assert se.partial_pi(c1, trivial).holds
    assert se.cap(c1, trivial).holds
    assert se.gen_cap(c1, trivial).holds
    assert se.s_quasinormal(c1, trivial)


def test_normal_subgroups_satisfy_partial_pi():
    for name, group in se.builtin_corpus(48):
        for node in se.normal_lattice(group).nodes:
            assert se.partial_pi(group, node).holds, name


def test_1875_first_factor_is_minimal_normal(group1875):
    g = group1875
    # the first elementary abelian factor of the normal part is spanned by
    # the first two construction generators and the order-3 part acts on it
    # irreducibly, so it is a chief factor over the trivial subgroup
    l1 = se.span(g, [g.gen_indices[0], g.gen_indices[1]])
    assert l1.order == 25
    assert l1.is_normal()
    assert any(m == l1 for m in se.minimal_normals(g))
    assert se.is_chief_factor(g, Subgroup.trivial(g), l1)


def test_1875_cyclic_factor_neither_covers_nor_avoids(group1875):
    g = group1875
    a_span = se.span(g, [g.gen_indices[0]])
    l1 = se.span(g, [g.gen_indices[0], g.gen_indices[1]])
    trivial = Subgroup.trivial(g)
    # on the chief factor L1/1: <a> covers nothing (|<a>| < |L1|) and fails
    # to avoid (<a> meets L1 nontrivially), so the CAP verdict is negative
    assert not se.intersect(a_span, l1).is_subset_of(trivial)
    from subembed.subgroups import product_mask

    assert l1.mask & ~product_mask(a_span, trivial) != 0
    assert not se.cap(g, a_span).holds
