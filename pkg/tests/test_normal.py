import numpy as np
import pytest

import subembed as se
from subembed import ResourceCapError, parse_cycles
from subembed.subgroups import Subgroup

from conftest import brute_normal_masks


def idx(group, text):
    return group.index_of(parse_cycles(text, group.degree))


def test_normal_closure_examples(by_name):
    s3 = by_name["S3"]
    assert se.normal_closure(s3, [idx(s3, "(1 2 3)")]).order == 3
    assert se.normal_closure(s3, [idx(s3, "(1 2)")]).order == 6
    assert se.normal_closure(s3, [0]).order == 1


def test_lattice_s4(by_name):
    lat = se.normal_lattice(by_name["S4"])
    assert [n.order for n in lat.nodes] == [1, 4, 12, 24]
    series = se.chief_series_enumerate(by_name["S4"], 10)
    assert len(series) == 1
    assert series[0].factor_orders == (4, 3, 2)


def test_lattice_a5_simple(by_name):
    lat = se.normal_lattice(by_name["A5"])
    assert [n.order for n in lat.nodes] == [1, 60]
    series = se.chief_series_enumerate(by_name["A5"], 10)
    assert len(series) == 1 and series[0].factor_orders == (60,)


def test_lattice_klein_whole(by_name):
    v4 = by_name["C2^2"]
    lat = se.normal_lattice(v4)
    assert len(lat.nodes) == 5
    series = se.chief_series_enumerate(v4, 10)
    assert len(series) == 3
    assert all(s.factor_orders == (2, 2) for s in series)


def test_lattice_against_brute_force(by_name):
    for name in ("S3xC2", "A4", "D8", "C7:C3", "SL(2,3)"):
        group = by_name[name]
        expected = brute_normal_masks(group)
        got = {n.mask for n in se.normal_lattice(group).nodes}
        assert got == expected, name


def test_lattice_nodes_are_conjugation_invariant():
    for name, group in se.builtin_corpus(60):
        for node in se.normal_lattice(group).nodes:
            assert node.is_normal(), (name, node.order)


def test_covers_have_empty_interval(by_name):
    for name in ("S4", "D12", "SL(2,3)", "C3^2:C2", "C2^3"):
        group = by_name[name]
        lat = se.normal_lattice(group)
        for k, l in lat.covers:
            low, high = lat.nodes[k], lat.nodes[l]
            assert low.is_subset_of(high) and low.order < high.order
            for mid in lat.nodes:
                if mid.order in (low.order, high.order):
                    continue
                assert not (low.is_subset_of(mid) and mid.is_subset_of(high))


def test_minimal_normals_a4(by_name):
    mins = se.minimal_normals(by_name["A4"])
    assert len(mins) == 1 and mins[0].order == 4


def test_minimal_normals_and_socle_s3xc2(by_name):
    g = by_name["S3xC2"]
    mins = se.minimal_normals(g)
    assert sorted(m.order for m in mins) == [2, 3]
    assert se.socle(g).order == 6


def test_minimal_normals_rejects_trivial_group(by_name):
    with pytest.raises(ValueError):
        se.minimal_normals(by_name["C1"])


def test_trivial_group_has_empty_chief_series(by_name):
    series = se.chief_series_enumerate(by_name["C1"], 10)
    assert len(series) == 1
    assert series[0].factor_orders == ()


def test_chief_series_limit(by_name):
    with pytest.raises(ResourceCapError):
        se.chief_series_enumerate(by_name["C2^2"], 2)


def test_quotient_s4_by_klein(by_name):
    s4 = by_name["S4"]
    v4 = se.normal_lattice(s4).nodes[1]
    q = se.quotient(s4, v4)
    assert q.image.order == 6
    assert not se.is_abelian(q.image)


def test_quotient_by_trivial_is_isomorphic(by_name):
    g = by_name["D8"]
    q = se.quotient(g, Subgroup.trivial(g))
    assert q.image.order == g.order
    assert len(set(q.element_map)) == g.order


def test_quotient_by_whole_is_trivial(by_name):
    g = by_name["S4"]
    q = se.quotient(g, Subgroup.whole(g))
    assert q.image.order == 1


def test_quotient_element_map_is_homomorphism(by_name):
    g = by_name["S4"]
    v4 = se.normal_lattice(g).nodes[1]
    q = se.quotient(g, v4)
    rng = np.random.default_rng(7)
    for _ in range(200):
        x, y = int(rng.integers(g.order)), int(rng.integers(g.order))
        assert q.element_map[g.mult(x, y)] == q.image.mult(
            int(q.element_map[x]), int(q.element_map[y])
        )
    kernel = {i for i in range(g.order) if q.element_map[i] == 0}
    assert kernel == set(v4.indices)
    assert q.image.order * v4.order == g.order


def test_quotient_rejects_non_normal(by_name):
    s3 = by_name["S3"]
    flip = se.span(s3, [idx(s3, "(1 2)")])
    with pytest.raises(ValueError):
        se.quotient(s3, flip)


def test_is_chief_factor(by_name):
    s4 = by_name["S4"]
    lat = se.normal_lattice(s4)
    trivial, v4, a4 = lat.nodes[0], lat.nodes[1], lat.nodes[2]
    assert se.is_chief_factor(s4, v4, a4)
    assert not se.is_chief_factor(s4, trivial, a4)


def test_is_chief_factor_rejects_non_normal(by_name):
    s3 = by_name["S3"]
    flip = se.span(s3, [idx(s3, "(1 2)")])
    with pytest.raises(ValueError):
        se.is_chief_factor(s3, flip, Subgroup.whole(s3))


def test_factor_orders_multiply_to_group_order():
    for name, group in se.builtin_corpus(60):
        try:
            series = se.chief_series_enumerate(group, 200)
        except ResourceCapError:
            continue
        for s in series:
            prod = 1
            for f in s.factor_orders:
                prod *= f
            assert prod == group.order, name


def test_lattice_node_cap():
    fresh = se.build(se.ElemAbelian(2, 3))  # 16 normal subgroups
    with pytest.raises(ResourceCapError):
        se.normal_lattice(fresh, node_cap=4)


def test_jordan_holder_small():
    for name, group in se.builtin_corpus(60):
        try:
            series = se.chief_series_enumerate(group, 200)
        except ResourceCapError:
            continue
        lat = se.normal_lattice(group)
        from subembed.classify import factor_is_abelian

        def signature(s):
            return sorted(
                (
                    lat.nodes[b].order // lat.nodes[a].order,
                    factor_is_abelian(group, lat.nodes[a], lat.nodes[b]),
                )
                for a, b in zip(s.chain, s.chain[1:])
            )

        first = signature(series[0])
        assert all(signature(s) == first for s in series[1:]), name


def test_socle_is_product_of_minimal_normals():
    for name, group in se.builtin_corpus(60):
        if group.order == 1:
            continue
        soc = se.socle(group)
        mins = se.minimal_normals(group)
        acc = Subgroup.trivial(group)
        from subembed.subgroups import product_with_normal

        for m in mins:
            assert m.is_subset_of(soc)
            acc = product_with_normal(acc, m)
        assert acc == soc


def test_subgroup_as_group_roundtrip(by_name):
    s4 = by_name["S4"]
    a4_node = se.normal_lattice(s4).nodes[2]
    child, to_parent, from_parent = se.subgroup_as_group(a4_node)
    assert child.order == 12
    for i in range(child.order):
        assert from_parent[int(to_parent[i])] == i
    # multiplication agrees through the embedding
    assert all(
        int(to_parent[child.mult(i, j)])
        == s4.mult(int(to_parent[i]), int(to_parent[j]))
        for i in range(12)
        for j in range(12)
    )
