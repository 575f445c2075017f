"""Finite matrix group generation, conjugacy classes, centralizers."""

import pytest

from orbev.lattice_core import IntegerMatrix
from orbev.root_data import classical_datum, sl_quotient_datum
from orbev.sln_formula import partitions
from orbev.weyl import (
    CapExceededError,
    centralizer,
    conjugacy_classes,
    generate_group,
)


def M(rows):
    return IntegerMatrix.from_rows(rows, cols=len(rows[0]))


class TestGenerateGroup:
    def test_s3_on_a2(self):
        d = sl_quotient_datum(3, 1)
        g = generate_group(d.generators)
        assert g.order == 6
        eye = IntegerMatrix.identity(2)
        assert eye in g
        for x in g:
            assert x * x.inverse_unimodular() == eye

    def test_w_b2(self):
        d = classical_datum("B", 2, "adjoint")
        assert generate_group(d.generators).order == 8

    def test_closure_under_product(self):
        g = generate_group(sl_quotient_datum(3, 1).generators)
        elements = set(g)
        for a in g:
            for b in g:
                assert a * b in elements

    def test_deterministic_element_order(self):
        gens = sl_quotient_datum(4, 1).generators
        assert list(generate_group(gens)) == list(generate_group(gens))

    def test_infinite_group_hits_cap(self):
        # unipotent matrix generates an infinite cyclic group
        shear = M([[1, 1], [0, 1]])
        with pytest.raises(CapExceededError) as info:
            generate_group((shear,), cap=10_000)
        assert info.value.partial_count >= 10_000

    def test_trivial_group(self):
        g = generate_group((IntegerMatrix.identity(2),))
        assert g.order == 1


class TestConjugacyClasses:
    def test_s3_class_sizes(self):
        g = generate_group(sl_quotient_datum(3, 1).generators)
        table = conjugacy_classes(g)
        assert table.count == 3
        assert sorted(table.sizes) == [1, 2, 3]

    def test_w_b2_has_five_classes(self):
        g = generate_group(classical_datum("B", 2, "adjoint").generators)
        table = conjugacy_classes(g)
        assert table.count == 5
        assert sum(table.sizes) == 8

    def test_trivial_group_single_class(self):
        g = generate_group((IntegerMatrix.identity(1),))
        table = conjugacy_classes(g)
        assert table.count == 1
        assert table.sizes == (1,)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_type_a_class_count_is_partition_count(self, n):
        g = generate_group(sl_quotient_datum(n, 1).generators)
        assert conjugacy_classes(g).count == len(partitions(n))

    def test_class_index_consistent(self):
        g = generate_group(sl_quotient_datum(3, 1).generators)
        table = conjugacy_classes(g)
        for x in g:
            i = table.class_of(x)
            # conjugates land in the same class
            for y in g:
                conj = y * x * y.inverse_unimodular()
                assert table.class_of(conj) == i

    def test_representative_is_in_its_class(self):
        g = generate_group(classical_datum("C", 3, "adjoint").generators)
        table = conjugacy_classes(g)
        for i, rep in enumerate(table.representatives):
            assert table.class_of(rep) == i


class TestCentralizer:
    def test_identity_centralizer_is_whole_group(self):
        g = generate_group(sl_quotient_datum(3, 1).generators)
        c = centralizer(g, IntegerMatrix.identity(2))
        assert c.order == g.order

    def test_orders_in_s3(self):
        g = generate_group(sl_quotient_datum(3, 1).generators)
        table = conjugacy_classes(g)
        by_size = {size: rep for rep, size in zip(table.representatives, table.sizes)}
        # transposition class has size 3, centralizer order 2
        assert centralizer(g, by_size[3]).order == 2
        # 3-cycle class has size 2, centralizer order 3
        assert centralizer(g, by_size[2]).order == 3

    def test_orbit_stabilizer(self):
        for datum in [sl_quotient_datum(4, 2), classical_datum("B", 3, "simply_connected")]:
            g = generate_group(datum.generators)
            table = conjugacy_classes(g)
            for rep, size in zip(table.representatives, table.sizes):
                assert centralizer(g, rep).order * size == g.order

    def test_membership_required(self):
        g = generate_group(sl_quotient_datum(3, 1).generators)
        outsider = M([[1, 1], [0, 1]])
        with pytest.raises(Exception):
            centralizer(g, outsider)

    def test_all_elements_commute_with_w(self):
        g = generate_group(classical_datum("B", 2, "adjoint").generators)
        table = conjugacy_classes(g)
        for rep in table.representatives:
            for c in centralizer(g, rep):
                assert c * rep == rep * c
