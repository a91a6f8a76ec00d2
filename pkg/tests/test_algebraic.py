#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from uhusiano.models.groups import CandidateKind
from uhusiano.groups.table import cyclic_group, elementary_abelian_group
from uhusiano.groups.candidates import build_candidate_group
from uhusiano.rings.family import fusion_partition
from uhusiano.rings.cayley import cayley_scheme
from uhusiano.perms.group import symmetric_group
from uhusiano.perms.permutation import is_automorphism
from uhusiano.schemes.scheme import regular_scheme, trivial_scheme
from uhusiano.schemes.tensor import intersection_tensor
from uhusiano.algebraic.isomorphism import ColorBijection, enumerate_algebraic_isos, find_inducing_isomorphism
from uhusiano.algebraic.audit import InducedClosure, cross_check_cayley, separability_audit
from uhusiano.algebraic.recognition import RecognitionError, recover_group_of_regular_scheme, recover_regular_group


def _regular_tensor(group):
    return intersection_tensor(regular_scheme(group))


def _automorphism_count(group, exponent: int) -> int:
    # brute force over the images u, v of the generators (1, 0) and (0, 1) of C_n × C_n
    points = np.arange(group.order)
    powers = np.zeros((group.order, exponent), dtype=np.int64)
    for k in range(1, exponent):
        powers[:, k] = group.product[powers[:, k - 1], points]
    images = group.product[powers[:, None, :, None], powers[None, :, None, :]].reshape(group.order**2, -1)
    return int((np.sort(images, axis=1) == points).all(axis=1).sum())


class TestAlgebraicIsomorphisms:

    def test_group_automorphisms_of_thin_schemes(self):
        # algebraic automorphisms of a thin scheme are the automorphisms of its group
        assert len(enumerate_algebraic_isos(_regular_tensor(cyclic_group(6)), _regular_tensor(cyclic_group(6)))) == 2
        tensor = _regular_tensor(elementary_abelian_group(5, 2))
        assert len(enumerate_algebraic_isos(tensor, tensor)) == 480

    @pytest.mark.slow
    def test_group_of_order_hundred(self):
        group = cyclic_group(10).direct_product(cyclic_group(10))
        count = _automorphism_count(group, 10)
        assert count == 2880
        tensor = _regular_tensor(group)
        assert len(enumerate_algebraic_isos(tensor, tensor)) == count

    def test_no_isomorphism(self):
        cyclic = _regular_tensor(cyclic_group(4))
        klein = _regular_tensor(elementary_abelian_group(2, 2))
        assert enumerate_algebraic_isos(cyclic, klein) == []
        assert enumerate_algebraic_isos(cyclic, intersection_tensor(trivial_scheme(4))) == []

    def test_basic_scheme(self, tensor5):
        isos = enumerate_algebraic_isos(tensor5, tensor5)
        assert len(isos) == 24
        assert isos[0].is_identity()
        assert all(phi.verify() for phi in isos)
        assert all(phi.inverse() in isos for phi in isos)

    def test_bijection_checks(self, tensor5):
        shifted = ColorBijection(tensor5, tensor5, np.roll(np.arange(40), 1))
        assert not shifted.verify()
        identity = ColorBijection(tensor5, tensor5, np.arange(40))
        assert identity.verify()
        assert identity.inverse() == identity

    def test_inducing_isomorphism(self, scheme5, tensor5):
        for phi in enumerate_algebraic_isos(tensor5, tensor5)[:4]:
            m = find_inducing_isomorphism(phi, scheme5, scheme5)
            assert m is not None
            assert (phi.image[scheme5.colors] == scheme5.colors[np.ix_(m.image, m.image)]).all()
        identity = ColorBijection(tensor5, tensor5, np.arange(40))
        assert is_automorphism(scheme5.colors, find_inducing_isomorphism(identity, scheme5, scheme5))

    def test_inducing_rejects_non_isomorphism(self, scheme5, tensor5):
        shifted = ColorBijection(tensor5, tensor5, np.roll(np.arange(40), 1))
        with pytest.raises(ValueError):
            find_inducing_isomorphism(shifted, scheme5, scheme5)


class TestSeparability:

    def test_basic_scheme(self, scheme5, tensor5):
        report = separability_audit(scheme5, tensor5, scheme_ref="scheme.json")
        assert report.passed, report.failures()
        assert report.algebraic_automorphism_count == 24
        assert report.induced_count == 24
        assert report.inconclusive_count == 0
        assert report.failure_count == 0
        assert len(report.witnesses) == 24
        # each search that succeeds at least doubles the induced closure
        assert report.searched_count <= 4

    def test_induced_closure(self):
        scheme = regular_scheme(cyclic_group(5))
        double = np.array([0, 2, 4, 1, 3])
        phi = np.empty(scheme.rank, dtype=np.int64)
        phi[scheme.colors] = scheme.colors[np.ix_(double, double)]
        induced = InducedClosure(scheme.rank, scheme.degree)
        assert len(induced) == 1
        induced.add(phi, double)
        assert len(induced) == 4
        assert phi in induced
        assert np.roll(np.arange(scheme.rank), 1) not in induced
        square = induced.point_map(phi[phi])
        assert (phi[phi][scheme.colors] == scheme.colors[np.ix_(square, square)]).all()

    @pytest.mark.slow
    def test_coarsest_fusion(self, bundle5):
        scheme = cayley_scheme(fusion_partition(bundle5, "0"))
        report = separability_audit(scheme)
        assert report.passed, report.failures()
        assert report.algebraic_automorphism_count == 2880
        assert report.induced_count == 2880
        assert report.searched_count <= 11
        for witness in report.witnesses:
            phi, m = np.array(witness.phi), np.array(witness.point_map)
            assert (phi[scheme.colors] == scheme.colors[np.ix_(m, m)]).all()

    def test_trivial_scheme(self):
        report = separability_audit(trivial_scheme(6))
        assert report.passed
        assert report.algebraic_automorphism_count == 1

    def test_cayley_cross_check(self, partition5, scheme5, tensor5):
        for phi in enumerate_algebraic_isos(tensor5, tensor5):
            report = cross_check_cayley(phi, partition5, scheme5)
            assert report.passed, report.failures()


class TestRecognition:

    def test_basic_scheme(self, scheme5, aut5):
        H, report = recover_group_of_regular_scheme(scheme5, aut5)
        assert report.passed, report.failures()
        assert report.label == CandidateKind.cyclic_cyclic.value
        assert report.involutions == 3
        assert H.order == 100
        assert H.is_abelian()

    def test_cyclic_dihedral_candidate(self):
        group = build_candidate_group(CandidateKind.cyclic_dihedral, 5)
        H, report = recover_group_of_regular_scheme(regular_scheme(group))
        assert report.label == CandidateKind.cyclic_dihedral.value
        assert report.involutions == 11
        assert H.center().order == 10

    def test_dihedral_candidate(self):
        group = build_candidate_group(CandidateKind.dihedral_dihedral, 5)
        H, report = recover_group_of_regular_scheme(regular_scheme(group))
        assert report.label == CandidateKind.dihedral_dihedral.value
        assert report.involutions == 35
        # a thin scheme has no inverse-closed basic sets of size p
        assert not report.get("U-orders").passed

    def test_regular_group(self):
        H = recover_regular_group(regular_scheme(cyclic_group(6)))
        assert H.order == 6
        assert H.is_abelian()
        assert H.exponent == 6

    def test_recognition_errors(self):
        with pytest.raises(RecognitionError):
            recover_group_of_regular_scheme(regular_scheme(cyclic_group(12)))
        with pytest.raises(RecognitionError):
            recover_regular_group(trivial_scheme(4), symmetric_group(4))
