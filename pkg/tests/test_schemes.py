#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from uhusiano.models.config import FusionLevel
from uhusiano.groups.table import cyclic_group
from uhusiano.rings.family import fusion_partition
from uhusiano.rings.cayley import cayley_scheme
from uhusiano.schemes.refine import individualize, refine, split_diagonal
from uhusiano.schemes.scheme import (
    NotCoherentError,
    Scheme,
    is_fusion,
    meet_schemes,
    regular_scheme,
    scheme_from_graph,
    scheme_from_labels,
    trivial_scheme,
    wl_stabilize,
)
from uhusiano.schemes.tensor import IntersectionTensor, brute_force_intersection_numbers, intersection_tensor
from uhusiano.schemes.parabolic import (
    NotParabolicError,
    Parabolic,
    diagonal_parabolic,
    quotient_scheme,
    radical_of_color,
    thin_radical,
)
from uhusiano.schemes.properties import symmetric_valency_colors, verify_B_properties

CYCLE = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
PATH = [(0, 1), (1, 2)]


class TestRefinement:

    def test_cycle(self):
        stable = wl_stabilize(scheme_from_graph(5, CYCLE))
        assert stable.rank == 3
        assert stable.is_coherent()
        assert stable.is_association_scheme()
        assert sorted(stable.valencies().tolist()) == [1, 2, 2]

    def test_path_is_not_homogeneous(self):
        stable = wl_stabilize(scheme_from_graph(3, PATH))
        assert stable.is_coherent()
        assert not stable.is_association_scheme()
        assert stable.diagonal_colors() == [0, 1]

    def test_refinement_is_idempotent(self):
        colors = refine(scheme_from_graph(5, CYCLE))
        assert Scheme(refine(colors)) == Scheme(colors)

    def test_split_diagonal(self):
        colors = split_diagonal(np.zeros((3, 3), dtype=np.int64))
        assert len(np.unique(colors)) == 2
        assert (np.diagonal(colors) == colors[0, 0]).all()

    def test_individualize(self):
        colors = refine(scheme_from_graph(5, CYCLE))
        assert int(refine(individualize(colors, 0)).max()) + 1 > int(colors.max()) + 1

    def test_relabelling(self):
        perm = np.array([2, 0, 1, 4, 3])
        stable = wl_stabilize(scheme_from_graph(5, CYCLE))
        assert stable.relabel(perm).rank == stable.rank
        assert stable.relabel(perm).is_coherent()


class TestScheme:

    def test_trivial_scheme(self):
        scheme = trivial_scheme(5)
        assert scheme.rank == 2
        assert scheme.is_coherent()
        assert scheme.valencies().tolist() == [1, 4]
        assert scheme.transpose_map().tolist() == [0, 1]

    def test_regular_scheme(self):
        scheme = regular_scheme(cyclic_group(5))
        assert scheme.rank == 5
        assert scheme.is_coherent()
        assert (scheme.valencies() == 1).all()

    def test_canonical_colors(self):
        scheme = Scheme([[7, 3, 3], [3, 7, 3], [3, 3, 7]])
        assert scheme.colors.tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
        assert scheme_from_labels(np.array([5, 2, 2, 5])) == Scheme([[0, 1], [1, 0]])

    def test_not_coherent(self):
        scheme = Scheme(scheme_from_graph(3, PATH))
        assert not scheme.is_coherent()
        with pytest.raises(NotCoherentError):
            intersection_tensor(scheme)
        with pytest.raises(ValueError):
            Scheme([[0, 1, 2]])

    def test_basic_scheme(self, scheme5):
        assert scheme5.degree == 100
        assert scheme5.rank == 40
        assert sorted(scheme5.valencies().tolist()) == [1] * 25 + [5] * 15
        assert scheme5.is_association_scheme()
        assert scheme5.is_coherent()
        assert wl_stabilize(scheme5) == scheme5

    def test_construction(self, prime, scheme):
        p = prime
        assert scheme.degree == 4 * p * p
        assert scheme.rank == p * p + 3 * p
        assert sorted(scheme.valencies().tolist()) == [1] * (p * p) + [p] * (3 * p)
        assert scheme.is_coherent()

    def test_meet_identities(self, bundle, scheme):
        X = {level.value: cayley_scheme(fusion_partition(bundle, level)) for level in FusionLevel}
        assert meet_schemes(X["1"], X["2"]) == scheme
        assert meet_schemes(X["12"], X["13"]) == X["1"]
        assert is_fusion(X["0"], scheme)
        assert is_fusion(X["12"], X["1"])
        assert not is_fusion(scheme, X["0"])
        with pytest.raises(ValueError):
            meet_schemes(scheme, trivial_scheme(4))

    def test_file_io(self, tmp_path, scheme5):
        scheme5.to_file(tmp_path / "scheme.json")
        assert Scheme.from_file(tmp_path / "scheme.json") == scheme5


class TestIntersectionTensor:

    def test_trivial_scheme(self):
        tensor = intersection_tensor(trivial_scheme(5))
        assert tensor[(1, 1, 0)] == 4
        assert tensor[(1, 1, 1)] == 3
        assert tensor[(0, 1, 1)] == 1
        assert tensor.check_identities() == []

    def test_basic_scheme(self, scheme5, tensor5):
        assert tensor5.rank == 40
        assert tensor5.is_commutative()
        assert tensor5.check_identities() == []
        assert brute_force_intersection_numbers(scheme5, tensor5) is None

    def test_oracle_detects_mismatch(self):
        scheme = trivial_scheme(4)
        tensor = intersection_tensor(scheme)
        wrong = IntersectionTensor(tensor.rank, tensor.valencies, tensor.transpose, dict(tensor.entries))
        wrong.entries[(1, 1, 1)] += 1
        assert brute_force_intersection_numbers(scheme, wrong) is not None
        assert wrong != tensor

    def test_file_io(self, tmp_path, tensor5):
        tensor5.to_file(tmp_path / "tensor.json", scheme_ref="scheme.json")
        assert IntersectionTensor.from_file(tmp_path / "tensor.json") == tensor5


class TestParabolics:

    def test_thin_radical(self, scheme5):
        radical = thin_radical(scheme5)
        assert len(radical.colors) == 25
        assert radical.group.order == 25
        assert radical.group.is_abelian()
        assert radical.group.exponent == 5
        assert radical.parabolic.is_thin()
        assert radical.parabolic.class_sizes() == [25] * 4

    def test_quotient(self, scheme5):
        quotient = quotient_scheme(scheme5, thin_radical(scheme5).parabolic)
        assert quotient.degree == 4
        assert quotient.rank == 4

    def test_quotient_by_diagonal(self, scheme5):
        assert quotient_scheme(scheme5, diagonal_parabolic(scheme5)) == scheme5

    def test_radical_of_relation(self, scheme5):
        radical = thin_radical(scheme5)
        for r in symmetric_valency_colors(scheme5, 5):
            e_r = radical_of_color(scheme5, r, radical)
            assert len(e_r.colors) == 5
            assert set(e_r.class_sizes()) == {5}
        thin = radical.colors[1]
        assert radical_of_color(scheme5, thin, radical).class_count == 100

    def test_diagonal_parabolic(self, scheme5):
        parabolic = diagonal_parabolic(scheme5)
        assert parabolic.class_count == 100
        assert parabolic.is_thin()

    def test_not_parabolic(self, scheme5):
        with pytest.raises(NotParabolicError):
            Parabolic(scheme5, [39])
        relations = symmetric_valency_colors(scheme5, 5)
        with pytest.raises(NotParabolicError):
            Parabolic(scheme5, [0] + relations)

    def test_scheme_properties(self, prime, scheme, tensor):
        assert len(symmetric_valency_colors(scheme, prime)) == 3
        report = verify_B_properties(scheme, tensor=tensor)
        assert report.passed, report.failures()

    def test_properties_of_other_degrees(self):
        report = verify_B_properties(trivial_scheme(12))
        assert not report.passed
        assert report.get("degree") is not None
