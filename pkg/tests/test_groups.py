#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from uhusiano.models.groups import CandidateKind
from uhusiano.groups.table import GroupTable, cyclic_group, dihedral_group, elementary_abelian_group
from uhusiano.groups.bundle import build_paper_group, paper_group_automorphism
from uhusiano.groups.candidates import build_candidate_group, classify_by_census, order_census, sylow_p_count

# x² = 1 has 2 solutions in C_2p, p + 1 in D_2p and p² + 1 in C_p² ⋊ C_2
INVOLUTIONS = {
    5: {
        CandidateKind.cyclic_cyclic: 3,
        CandidateKind.cyclic_dihedral: 11,
        CandidateKind.dihedral_dihedral: 35,
        CandidateKind.inverting: 51,
    },
    7: {
        CandidateKind.cyclic_cyclic: 3,
        CandidateKind.cyclic_dihedral: 15,
        CandidateKind.dihedral_dihedral: 63,
        CandidateKind.inverting: 99,
    },
}


class TestGroupTable:

    def test_cyclic_group(self):
        group = cyclic_group(6)
        assert group.validate().passed
        assert group.identity == 0
        assert group.is_abelian()
        assert sorted(group.element_orders.tolist()) == [1, 2, 3, 3, 6, 6]
        assert group.exponent == 6
        assert group.power(1, 4) == 4
        assert group.power(1, -1) == 5

    def test_dihedral_group(self):
        group = dihedral_group(10)
        assert group.validate().passed
        assert not group.is_abelian()
        assert group.center().order == 1
        assert int((group.element_orders == 2).sum()) == 5
        assert group.generate_subgroup([1, 2]).is_dihedral()
        assert not group.generate_subgroup([1]).is_dihedral()

    def test_elementary_abelian_group(self):
        group = elementary_abelian_group(5, 2)
        assert group.order == 25
        assert group.exponent == 5
        assert group.label == "C5xC5"

    def test_subgroups(self):
        group = cyclic_group(12)
        sub = group.generate_subgroup([4])
        assert sub.elements == (0, 4, 8)
        assert sub.is_cyclic()
        assert group.is_normal(sub)
        assert len(sub.cosets()) == 4
        assert sub.intersection(group.generate_subgroup([6])).order == 1
        assert sub.as_table().validate().passed

    def test_direct_product(self):
        group = cyclic_group(2).direct_product(cyclic_group(3))
        assert group.order == 6
        assert group.label == "C2xC3"
        assert int(group.element_orders.max()) == 6

    def test_invalid_table(self):
        with pytest.raises(ValueError):
            GroupTable([[0, 0], [0, 0]])
        with pytest.raises(ValueError):
            GroupTable([[0, 1, 2], [1, 2, 0]])

    def test_file_io(self, tmp_path):
        group = dihedral_group(10)
        group.to_file(tmp_path / "group.json")
        loaded = GroupTable.from_file(tmp_path / "group.json")
        assert (loaded.product == group.product).all()
        assert loaded.label == "D10"


class TestPaperGroup:

    def test_build(self, bundle5):
        assert bundle5.group.order == 100
        assert bundle5.P.order == 25
        assert bundle5.A.order == 4
        assert bundle5.group.identity == 0
        assert bundle5.verify()
        assert all(len(X) == 5 for X in bundle5.X)
        assert all(len(Y) == 25 for Y in bundle5.Y)

    def test_encoding(self, bundle5):
        assert bundle5.encode((0, 0), (0, 0)) == 0
        assert bundle5.decode(bundle5.encode((1, 0), (2, 3))) == ((1, 0), (2, 3))
        assert bundle5.coset_index(7) == 0
        for i, ai in enumerate(bundle5.a):
            assert bundle5.coset_index(ai) == i + 1

    def test_invalid_primes(self):
        with pytest.raises(ValueError):
            build_paper_group(4)
        with pytest.raises(ValueError):
            build_paper_group(3)
        with pytest.raises(ValueError):
            build_paper_group(17)

    def test_degenerate_choices(self):
        with pytest.raises(ValueError):
            build_paper_group(5, subgroups=((1, 0), (2, 0), (1, 1)))
        with pytest.raises(ValueError):
            build_paper_group(5, involutions=((1, 0), (1, 0), (1, 1)))

    def test_group_automorphism(self, bundle5):
        group = bundle5.group
        identity = paper_group_automorphism(bundle5, np.eye(2, dtype=int), np.eye(2, dtype=int))
        assert (identity == np.arange(100)).all()
        f = paper_group_automorphism(bundle5, [[0, 1], [1, 0]], [[1, 2], [0, 1]])
        assert sorted(f.tolist()) == list(range(100))
        assert (group.product[np.ix_(f, f)] == f[group.product]).all()
        with pytest.raises(ValueError):
            paper_group_automorphism(bundle5, [[1, 1], [1, 1]], np.eye(2, dtype=int))


class TestCandidates:

    def test_involution_census(self, prime):
        for kind, k2 in INVOLUTIONS[prime].items():
            group = build_candidate_group(kind, prime)
            assert group.order == 4 * prime * prime
            assert group.validate().passed
            assert order_census(group)[2] == k2

    def test_centers(self):
        assert build_candidate_group(CandidateKind.cyclic_cyclic, 5).is_abelian()
        assert build_candidate_group(CandidateKind.cyclic_dihedral, 5).center().order == 10
        assert build_candidate_group(CandidateKind.dihedral_dihedral, 5).center().order == 1
        with pytest.raises(ValueError):
            build_candidate_group("C2pxQ", 5)

    def test_unique_sylow(self, prime):
        for kind in CandidateKind:
            group = build_candidate_group(kind, prime)
            count, sylows = sylow_p_count(group, prime)
            assert count == 1
            sylow = sylows[0].as_table()
            assert sylow.order == prime * prime
            assert sylow.is_abelian()
            assert sylow.exponent == prime

    def test_classify(self, prime, bundle):
        for kind in CandidateKind:
            assert classify_by_census(build_candidate_group(kind, prime), prime) == kind
        assert classify_by_census(bundle.group, prime) == CandidateKind.cyclic_cyclic
        assert classify_by_census(cyclic_group(12), 5) is None

    def test_sylow_errors(self):
        with pytest.raises(ValueError):
            sylow_p_count(cyclic_group(12), 5)
        with pytest.raises(ValueError):
            build_candidate_group(CandidateKind.inverting, 4)
