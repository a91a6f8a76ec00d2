#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from uhusiano.models.perms import Regularity
from uhusiano.groups.table import cyclic_group
from uhusiano.perms.permutation import (
    NotAutomorphismError,
    Permutation,
    SearchBudgetExceeded,
    is_automorphism,
    is_isomorphism,
)
from uhusiano.perms.group import (
    PermGroup,
    group_intersection,
    lemma_chain_inequalities,
    regularity_class,
    right_translation_group,
    symmetric_group,
)
from uhusiano.perms.search import automorphism_group, find_isomorphism
from uhusiano.perms.orbits import is_schurian, two_orbit_partition, verify_fixed_point_lemma
from uhusiano.schemes.scheme import regular_scheme, scheme_from_graph, trivial_scheme, wl_stabilize
from uhusiano.schemes.parabolic import Parabolic, diagonal_parabolic, thin_radical

CYCLE = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
HEXAGON = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]
TRIANGLES = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]


def _orders(p: int) -> dict[str, int]:
    return {"": 4 * p**2, "1": 4 * p**4, "2": 4 * p**4, "12": 4 * p**6, "13": 4 * p**6, "0": 4 * p**8}


def _alternating_group(n: int) -> PermGroup:
    generators = []
    for k in range(2, n):
        image = np.arange(n)
        image[[0, 1, k]] = [1, k, 0]
        generators.append(image)
    return PermGroup(n, generators)


class TestPermutation:

    def test_product(self):
        f = Permutation([1, 2, 0])
        g = Permutation([0, 2, 1])
        # f first, then g
        assert (f * g).image.tolist() == [2, 1, 0]
        assert (f * ~f).is_identity()
        assert f(0) == 1
        assert Permutation.from_sympy(f.to_sympy()) == f

    def test_invalid(self):
        with pytest.raises(ValueError):
            Permutation([0, 0, 1])
        with pytest.raises(ValueError):
            PermGroup(3, [[0, 1, 2, 3]])

    def test_fixed_points(self):
        assert Permutation([0, 2, 1, 3]).fixed_points().tolist() == [0, 3]
        assert Permutation.identity(4).is_identity()


class TestPermGroup:

    def test_symmetric_group(self):
        group = symmetric_group(4)
        assert group.order == 24
        assert len(group.elements()) == 24
        assert regularity_class(group) == Regularity.transitive_nonregular
        assert group.chain.order == 24

    def test_regularity(self):
        assert regularity_class(PermGroup(5, [[1, 2, 3, 4, 0]])) == Regularity.regular
        assert regularity_class(PermGroup(6, [[1, 2, 0, 4, 5, 3]])) == Regularity.semiregular_intransitive
        assert regularity_class(PermGroup(4, [[1, 0, 2, 3]])) == Regularity.other
        translations = right_translation_group(cyclic_group(6))
        assert translations.order == 6
        assert regularity_class(translations) == Regularity.regular

    def test_membership(self):
        group = PermGroup(4, [[1, 2, 3, 0]])
        assert group.contains(Permutation([2, 3, 0, 1]))
        assert not group.contains(Permutation([1, 0, 2, 3]))
        assert group.is_subgroup_of(symmetric_group(4))
        assert not symmetric_group(4).is_subgroup_of(group)

    def test_intersection_by_enumeration(self):
        cycle = PermGroup(4, [[1, 2, 3, 0]])
        assert group_intersection(symmetric_group(4), cycle).order == 4
        assert group_intersection(symmetric_group(4), symmetric_group(4)).order == 24
        with pytest.raises(ValueError):
            group_intersection(symmetric_group(4), symmetric_group(5))

    def test_intersection_budget(self):
        alternating = _alternating_group(8)
        assert alternating.order == 20160
        with pytest.raises(SearchBudgetExceeded):
            group_intersection(symmetric_group(8), alternating, budget=10)

    def test_chain_inequalities(self):
        assert lemma_chain_inequalities(_orders(5), 5).passed
        orders = _orders(5)
        orders["0"] = 4 * 5**7
        report = lemma_chain_inequalities(orders, 5)
        assert not report.passed
        assert not report.get("product-bound").passed
        assert report.get("lower-bound").passed

    def test_file_io(self, tmp_path):
        group = symmetric_group(5)
        group.to_file(tmp_path / "group.json")
        loaded = PermGroup.from_file(tmp_path / "group.json")
        assert loaded.order == 120
        assert loaded.degree == 5


class TestSearch:

    def test_automorphism_groups(self):
        assert automorphism_group(trivial_scheme(4)).order == 24
        assert automorphism_group(regular_scheme(cyclic_group(5))).order == 5
        pentagon = wl_stabilize(scheme_from_graph(5, CYCLE))
        group = automorphism_group(pentagon)
        assert group.order == 10
        assert all(is_automorphism(pentagon.colors, g) for g in group.generators)

    def test_basic_scheme(self, scheme5, aut5):
        assert aut5.order == 100
        assert regularity_class(aut5) == Regularity.regular
        assert all(is_automorphism(scheme5.colors, g) for g in aut5.generators)

    def test_orders_match_enumeration(self, aut5, review5):
        assert len(aut5.elements()) == aut5.order == 100
        fusion = review5.automorphisms("1")
        assert len(fusion.elements()) == fusion.order == 2500
        assert all(is_automorphism(review5.schemes["1"].colors, g) for g in fusion.generators)

    def test_rejects_bad_seed(self, scheme5):
        swap = np.arange(100)
        swap[[0, 1]] = [1, 0]
        with pytest.raises(NotAutomorphismError):
            automorphism_group(scheme5, seed=PermGroup(100, [swap]))

    def test_find_isomorphism(self):
        source = wl_stabilize(scheme_from_graph(5, CYCLE)).colors
        perm = np.array([3, 0, 4, 1, 2])
        target = np.empty_like(source)
        target[np.ix_(perm, perm)] = source
        found = find_isomorphism(source, target)
        assert found is not None
        assert is_isomorphism(source, target, found)

    def test_no_isomorphism(self):
        assert find_isomorphism(scheme_from_graph(6, HEXAGON), scheme_from_graph(6, TRIANGLES)) is None
        assert find_isomorphism(scheme_from_graph(5, CYCLE), scheme_from_graph(6, HEXAGON)) is None


class TestOrbits:

    def test_two_orbits(self, aut5):
        assert two_orbit_partition(aut5).rank == 100
        assert two_orbit_partition(symmetric_group(4)) == trivial_scheme(4)
        assert two_orbit_partition(PermGroup(3)).rank == 9

    def test_basic_scheme_is_not_schurian(self, scheme5, aut5):
        schurity = is_schurian(scheme5, aut5)
        assert not schurity.schurian
        assert schurity.witness is not None
        assert schurity.witness_size == 500
        assert schurity.orbits.rank == 100

    @pytest.mark.slow
    def test_not_schurian_across_primes(self, prime, scheme, aut):
        p = prime
        assert aut.order == 4 * p * p
        schurity = is_schurian(scheme, aut)
        assert not schurity.schurian
        assert schurity.witness_size == 4 * p**3
        assert schurity.orbits.rank == 4 * p * p

    def test_schurian_schemes(self):
        assert is_schurian(trivial_scheme(4)).schurian
        assert is_schurian(wl_stabilize(scheme_from_graph(5, CYCLE))).schurian

    def test_fixed_point_property(self, scheme5, aut5):
        parabolic = thin_radical(scheme5).parabolic
        assert verify_fixed_point_lemma(scheme5, parabolic, Permutation.identity(100))
        for g in aut5.generators:
            assert verify_fixed_point_lemma(scheme5, parabolic, g)

    def test_fixed_point_errors(self, scheme5):
        swap = np.arange(100)
        swap[[0, 1]] = [1, 0]
        with pytest.raises(NotAutomorphismError):
            verify_fixed_point_lemma(scheme5, diagonal_parabolic(scheme5), swap)
        everything = Parabolic(scheme5, range(scheme5.rank))
        with pytest.raises(ValueError):
            verify_fixed_point_lemma(scheme5, everything, np.arange(100))

    def test_vacuous_fixed_point(self):
        scheme = trivial_scheme(4)
        assert verify_fixed_point_lemma(scheme, diagonal_parabolic(scheme), [1, 0, 2, 3])
