#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from uhusiano.models.config import FusionLevel
from uhusiano.groups.table import cyclic_group
from uhusiano.groups.bundle import paper_group_automorphism
from uhusiano.rings.partition import (
    BasicSetPartition,
    image_partition,
    is_partition_fusion,
    meet_partitions,
    set_radical,
    singleton_partition,
    structure_constants,
    symmetric_basic_sets,
    trivial_partition,
    validate_schur,
)
from uhusiano.rings.family import fusion_partition, recognize_products, verify_A_properties
from uhusiano.rings.cayley import CayleyIsomorphismError, cayley_iso_from_algebraic, cayley_scheme

FUSION_RANKS = {"1": 36, "2": 36, "3": 36, "12": 32, "13": 32, "23": 32, "0": 28}


class TestBasicSetPartition:

    def test_canonical_order(self):
        group = cyclic_group(6)
        partition = BasicSetPartition(group, [[5, 1], [0], [3], [2, 4]])
        assert partition.sets == ((0,), (3,), (1, 5), (2, 4))
        assert partition.index([5, 1]) == 2
        assert partition.inverse_map() == [0, 1, 2, 3]

    def test_invalid_partitions(self):
        group = cyclic_group(4)
        with pytest.raises(ValueError):
            BasicSetPartition(group, [[0, 1], [1, 2, 3]])
        with pytest.raises(ValueError):
            BasicSetPartition(group, [[0], [1, 2]])
        with pytest.raises(ValueError):
            BasicSetPartition(group, [[0], [1, 2, 7]])

    def test_schur_validation(self):
        group = cyclic_group(6)
        assert validate_schur(singleton_partition(group)).passed
        assert validate_schur(trivial_partition(group)).passed
        assert validate_schur(BasicSetPartition(group, [[0], [3], [1, 5], [2, 4]])).passed
        report = validate_schur(BasicSetPartition(group, [[0], [1], [2, 3, 4, 5]]))
        assert not report.passed
        assert report.get("inverse").passed is False

    def test_structure_constants(self):
        group = cyclic_group(6)
        partition = BasicSetPartition(group, [[0], [3], [1, 5], [2, 4]])
        constants = structure_constants(partition)
        # {1, 5}{1, 5} = 2·{0} + {2, 4}
        assert constants[(2, 2, 0)] == 2
        assert constants[(2, 2, 3)] == 1
        assert constants[(2, 2, 1)] == 0
        assert constants.check_sums()
        with pytest.raises(ValueError):
            structure_constants(BasicSetPartition(group, [[0], [1, 2], [3, 4, 5]]))

    def test_set_radical(self):
        group = cyclic_group(6)
        assert set_radical(group, [0, 2, 4]).elements == (0, 2, 4)
        assert set_radical(group, [1, 5]).elements == (0,)


class TestPaperPartition:

    def test_basic_partition(self, partition5):
        assert partition5.rank == 40
        assert sorted(len(s) for s in partition5.sets) == [1] * 25 + [5] * 15
        report = validate_schur(partition5)
        assert report.passed
        assert report.commutative

    def test_symmetric_sets(self, bundle, partition):
        symmetric = symmetric_basic_sets(partition)
        assert sorted(partition.sets[i] for i in symmetric) == sorted(bundle.X)

    def test_ring_properties(self, bundle, partition):
        p = bundle.p
        report = verify_A_properties(partition, bundle)
        assert report.passed, report.failures()
        assert report.get("thin-radical").detail == f"{p * p} singleton sets"

    def test_ring_properties_of_a_fusion_fail(self, bundle5):
        report = verify_A_properties(fusion_partition(bundle5, "0"), bundle5)
        assert not report.passed
        assert not report.get("X1-basic").passed

    def test_fusion_ranks(self, bundle5, partition5):
        for level, rank in FUSION_RANKS.items():
            fusion = fusion_partition(bundle5, level)
            assert fusion.rank == rank
            assert validate_schur(fusion).passed
            assert is_partition_fusion(fusion, partition5)
        assert not is_partition_fusion(partition5, fusion_partition(bundle5, "1"))
        with pytest.raises(ValueError):
            fusion_partition(bundle5, "4")

    def test_meet_identities(self, bundle, partition):
        S = {level.value: fusion_partition(bundle, level) for level in FusionLevel}
        assert meet_partitions(S["1"], S["2"]) == partition
        assert meet_partitions(S["2"], S["3"]) == partition
        assert meet_partitions(S["12"], S["13"]) == S["1"]
        assert meet_partitions(S["12"], S["23"]) == S["2"]
        assert meet_partitions(S["13"], S["23"]) == S["3"]

    def test_wreath_constants(self, bundle5):
        fusion = fusion_partition(bundle5, "0")
        constants = structure_constants(fusion)
        Y = [fusion.index(Yi) for Yi in bundle5.Y]
        assert constants[(Y[0], Y[1], Y[2])] == 25
        assert constants[(Y[1], Y[2], Y[0])] == 25

    def test_recognize_products(self, bundle5):
        single = recognize_products(fusion_partition(bundle5, "1"), bundle5)
        assert single.kind == "tensor"
        assert single.passed, single.failures()
        coarsest = recognize_products(fusion_partition(bundle5, "0"), bundle5)
        assert coarsest.kind == "wreath"
        assert coarsest.passed, coarsest.failures()
        pair = recognize_products(fusion_partition(bundle5, "12"), bundle5)
        assert pair.passed

    def test_file_io(self, tmp_path, partition5):
        partition5.to_file(tmp_path / "partition.json")
        loaded = BasicSetPartition.from_file(tmp_path / "partition.json", partition5.group)
        assert loaded == partition5


class TestCayleyIsomorphism:

    def test_cayley_scheme(self, partition5):
        scheme = cayley_scheme(partition5)
        assert scheme.degree == 100
        assert scheme.rank == 40

    def test_rejects_non_schur(self):
        group = cyclic_group(6)
        with pytest.raises(ValueError):
            cayley_scheme(BasicSetPartition(group, [[0], [1], [2, 3, 4, 5]]))

    def test_identity_round_trip(self, partition5):
        f = cayley_iso_from_algebraic(np.arange(partition5.rank), partition5, partition5)
        assert (f == np.arange(100)).all()

    def test_group_automorphism_round_trip(self, bundle5, partition5):
        f = paper_group_automorphism(bundle5, [[0, 1], [1, 1]], [[2, 1], [1, 1]])
        image = image_partition(partition5, f)
        assert validate_schur(image).passed
        psi = np.array([image.index(f[list(s)]) for s in partition5.sets])
        g = cayley_iso_from_algebraic(psi, partition5, image)
        for i, s in enumerate(partition5.sets):
            assert tuple(sorted(g[list(s)].tolist())) == image.sets[psi[i]]

    def test_rejects_non_isomorphism(self, partition5):
        psi = np.arange(partition5.rank)
        psi[[0, 30]] = psi[[30, 0]]
        with pytest.raises(CayleyIsomorphismError):
            cayley_iso_from_algebraic(psi, partition5, partition5)
