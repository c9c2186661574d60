import math

import numpy as np
import pytest

import subembed as se
from subembed import ResourceCapError, generate_group, parse_cycles

from conftest import raw_closure, raw_compose


def test_s3_from_standard_generators():
    g = generate_group([parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)], 3)
    assert g.order == 6


def test_a5_from_standard_generators():
    gens = [parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(1 2 3)", 5)]
    assert generate_group(gens, 5).order == 60


def test_empty_generating_set_is_trivial():
    g = generate_group([], 4)
    assert g.order == 1
    assert g.perm(0).is_identity()


def test_order_cap_names_partial_count():
    gens = [parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(1 2 3)", 5)]
    with pytest.raises(ResourceCapError) as exc:
        generate_group(gens, 5, cap=10)
    assert exc.value.reached == 10


def test_identity_is_index_zero():
    for _, group in se.builtin_corpus(60):
        assert group.perm(0).is_identity()


def test_element_orders():
    a5 = se.build(se.Alt(5))
    assert a5.element_order(0) == 1
    five_cycle = a5.index_of(parse_cycles("(1 2 3 4 5)", 5))
    assert a5.element_order(five_cycle) == 5
    a4 = se.build(se.Alt(4))
    double = a4.index_of(parse_cycles("(1 2)(3 4)", 4))
    assert a4.element_order(double) == 2


def test_conjugacy_classes_a5():
    a5 = se.build(se.Alt(5))
    assert sorted(len(c) for c in a5.conjugacy_classes()) == [1, 12, 12, 15, 20]


def test_conjugacy_classes_s3():
    s3 = se.build(se.Sym(3))
    assert sorted(len(c) for c in s3.conjugacy_classes()) == [1, 2, 3]


def test_abelian_groups_have_singleton_classes():
    g = se.build(se.Cyclic(12))
    assert all(len(c) == 1 for c in g.conjugacy_classes())


def test_class_equation(by_name):
    for name in ("S4", "A5", "D16", "SL(2,3)", "C7:C3"):
        group = by_name[name]
        sizes = [len(c) for c in group.conjugacy_classes()]
        assert sum(sizes) == group.order
        assert all(group.order % s == 0 for s in sizes)
        identity_class = group.conjugacy_classes()[0]
        assert list(identity_class) == [0]


def test_order_divides_degree_factorial():
    for name, group in se.builtin_corpus(120):
        assert math.factorial(group.degree) % group.order == 0


def test_closure_against_raw_composition():
    # every table product agrees with independent tuple composition
    for expr in (se.Sym(3), se.Alt(4), se.Dihedral(10)):
        group = se.build(expr)
        perms = [group.perm(i).images for i in range(group.order)]
        table_products = {
            (i, j): group.perm(group.mult(i, j)).images
            for i in range(group.order)
            for j in range(group.order)
        }
        for (i, j), row in table_products.items():
            assert row == raw_compose(perms[i], perms[j])
        assert raw_closure(set(perms)) == set(perms)


def test_inverse_table():
    g = se.build(se.Sym(4))
    for i in range(g.order):
        assert g.mult(i, g.inverse(i)) == 0
        assert g.mult(g.inverse(i), i) == 0


def test_generation_is_deterministic():
    a = se.build(se.Sym(4))
    b = se.build(se.Sym(4))
    assert np.array_equal(a.rows, b.rows)


def test_index_of_rejects_foreign_permutation():
    a4 = se.build(se.Alt(4))
    with pytest.raises(KeyError):
        a4.index_of(parse_cycles("(1 2)", 4))
