import logging
import time
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from uhusiano.models.config import CheckName, FusionLevel, RunConfig
from uhusiano.models.reports import AuditReport, Report, VerifyReport
from uhusiano.groups.candidates import build_candidate_group, order_census, sylow_p_count, classify_by_census
from uhusiano.groups.bundle import paper_group_automorphism
from uhusiano.models.groups import CandidateKind
from uhusiano.rings.cayley import CayleyIsomorphismError, cayley_iso_from_algebraic, cayley_scheme
from uhusiano.rings.family import fusion_partition, paper_partition, recognize_products, verify_A_properties
from uhusiano.rings.partition import (
    BasicSetPartition,
    image_partition,
    is_partition_fusion,
    meet_partitions,
    validate_schur,
)
from uhusiano.schemes.scheme import Scheme, is_fusion, meet_schemes, wl_stabilize
from uhusiano.schemes.tensor import IntersectionTensor, brute_force_intersection_numbers, intersection_tensor
from uhusiano.schemes.parabolic import thin_radical
from uhusiano.schemes.properties import verify_B_properties
from uhusiano.perms.permutation import SearchBudgetExceeded
from uhusiano.perms.group import (
    PermGroup,
    group_intersection,
    lemma_chain_inequalities,
    regularity_class,
    right_translation_group,
)
from uhusiano.perms.search import automorphism_group
from uhusiano.perms.orbits import Schurity, is_schurian, verify_fixed_point_lemma
from uhusiano.algebraic.isomorphism import enumerate_algebraic_isos
from uhusiano.algebraic.audit import cross_check_cayley, separability_audit
from uhusiano.algebraic.recognition import RecognitionError, recover_group_of_regular_scheme
from uhusiano.create.create import CreateScheme
from uhusiano.helpers import coreio as _c

logger = logging.getLogger(__name__)

CAYLEY_ROUND_TRIPS = 20
SINGLE_LEVELS = (FusionLevel.one, FusionLevel.two, FusionLevel.three)
PAIR_LEVELS = (FusionLevel.one_two, FusionLevel.one_three, FusionLevel.two_three)


class ReviewScheme(CreateScheme):
    """
    Run the verification battery over the scheme for a prime `p`, or over one of its fusions.

    Every stage returns a `Report`; failing mathematics is recorded, never raised. A search that exhausts
    its node budget marks the stage, and the whole run, inconclusive.

    Parameters:
        config: A run configuration, or a dictionary of its terms.
        directory: Output directory, overriding `config.directory`.

    Example:
        Verify the scheme for `p = 5` as follows:

        ```python
        from uhusiano import ReviewScheme

        review = ReviewScheme({"p": 5})
        report = review.verify()
        ```
    """

    def __init__(self, config: RunConfig | dict, directory: Optional[str | Path] = None):
        super().__init__(config, directory=directory)
        self.audit: Optional[AuditReport] = None
        self.schurity: Optional[Schurity] = None

    ############################################################################
    # CACHED CONSTRUCTIONS
    ############################################################################

    @cached_property
    def partitions(self) -> dict[str, BasicSetPartition]:
        """
        The basic partition under `""` and every fusion under its level.
        """
        partitions = {"": self.partition if self.config.fusion is None else paper_partition(self.bundle)}
        for level in FusionLevel:
            partitions[level.value] = fusion_partition(self.bundle, level)
        return partitions

    @cached_property
    def schemes(self) -> dict[str, Scheme]:
        return {key: cayley_scheme(partition) for key, partition in self.partitions.items()}

    @cached_property
    def translations(self) -> PermGroup:
        return right_translation_group(self.bundle.group)

    @cached_property
    def _automorphisms(self) -> dict[str, PermGroup]:
        return {}

    def automorphisms(self, key: str = "") -> PermGroup:
        """
        Automorphism group of the scheme at a fusion level, seeded with the right translations of `G`.
        """
        if key not in self._automorphisms:
            start = time.perf_counter()
            self._automorphisms[key] = automorphism_group(
                self.schemes[key], seed=self.translations, budget=self.config.budget
            )
            self._timed(f"aut{key}", start)
        return self._automorphisms[key]

    @property
    def level(self) -> str:
        return self.config.fusion.value if self.config.fusion else ""

    ############################################################################
    # RING STAGES
    ############################################################################

    def check_schur(self) -> Report:
        report = Report()
        keys = self.partitions if self.config.fusion is None else [self.level]
        for key in keys:
            schur = validate_schur(self.partitions[key])
            failures = ", ".join(c.name for c in schur.failures())
            detail = f"rank {self.partitions[key].rank}" + (f"; {failures}" if failures else "")
            report.add(f"S{key}", schur.passed, detail)
        return report

    def check_ringproperties(self) -> Report:
        return verify_A_properties(self.partitions[""], self.bundle)

    def check_orderring(self) -> Report:
        """
        Meets of fusions: two single-index fusions meet in the basic partition, and two pair fusions sharing
        one index meet in the single-index fusion of that index.
        """
        report = Report()
        S = self.partitions
        for i, j in ((0, 1), (0, 2), (1, 2)):
            a, b = SINGLE_LEVELS[i].value, SINGLE_LEVELS[j].value
            report.add(f"S{a}^S{b}", meet_partitions(S[a], S[b]) == S[""])
        for pair_a, pair_b in ((0, 1), (0, 2), (1, 2)):
            a, b = PAIR_LEVELS[pair_a].value, PAIR_LEVELS[pair_b].value
            shared = (set(a) & set(b)).pop()
            report.add(f"S{a}^S{b}", meet_partitions(S[a], S[b]) == S[shared], f"expected S{shared}")
        for level in FusionLevel:
            report.add(f"S{level.value}-fusion", is_partition_fusion(S[level.value], S[""]))
        return report

    def check_fusionring(self) -> Report:
        report = Report()
        levels = [FusionLevel(self.level)] if self.config.fusion else list(FusionLevel)
        for level in levels:
            structure = recognize_products(self.partitions[level.value], self.bundle)
            failures = ", ".join(c.name for c in structure.failures())
            report.add(f"S{level.value}-{structure.kind}", structure.passed, failures)
        return report

    def check_cayleyiso(self) -> Report:
        """
        Group automorphisms of `G` applied to the basic partition give algebraic isomorphisms onto the image
        partition; the constructed isomorphism must reproduce each basic set map. Every algebraic automorphism
        of the scheme is also rebuilt as a group automorphism inducing it.
        """
        report = Report()
        S = self.partitions[""]
        count, checked = 0, 0
        for M, N in _matrix_pairs(self.config.p):
            if count == CAYLEY_ROUND_TRIPS:
                break
            f = paper_group_automorphism(self.bundle, M, N)
            T = image_partition(S, f)
            psi = np.array([T.index(f[list(s)]) for s in S.sets])
            count += 1
            try:
                g = cayley_iso_from_algebraic(psi, S, T)
                reproduced = all(T.sets[psi[i]] == tuple(sorted(g[list(s)].tolist())) for i, s in enumerate(S.sets))
            except CayleyIsomorphismError:
                reproduced = False
            checked += reproduced
        report.add("round-trips", checked == count == CAYLEY_ROUND_TRIPS, f"{checked} of {count} reproduced")
        scheme = self.schemes[""]
        tensor = self.tensors[""]
        isos = enumerate_algebraic_isos(tensor, tensor, budget=self.config.budget)
        failures = [i for i, phi in enumerate(isos) if not cross_check_cayley(phi, S, scheme).passed]
        report.add(
            "algebraic-automorphisms",
            not failures,
            f"{len(isos)} rebuilt" if not failures else f"{len(failures)} of {len(isos)} not rebuilt",
        )
        return report

    ############################################################################
    # SCHEME STAGES
    ############################################################################

    @cached_property
    def tensors(self) -> dict[str, IntersectionTensor]:
        return {"": intersection_tensor(self.schemes[""])} | (
            {self.level: intersection_tensor(self.schemes[self.level])} if self.level else {}
        )

    def check_wl(self) -> Report:
        report = Report()
        scheme = self.schemes[self.level]
        p = self.config.p
        report.add("fixpoint", wl_stabilize(scheme) == scheme, f"rank {scheme.rank}")
        if not self.level:
            valencies = sorted(scheme.valencies().tolist())
            report.add("degree", scheme.degree == 4 * p * p, f"degree {scheme.degree}")
            report.add("rank", scheme.rank == p * p + 3 * p, f"rank {scheme.rank}")
            report.add("valencies", valencies == [1] * (p * p) + [p] * (3 * p), f"{valencies.count(p)} of valency {p}")
        tensor = self.tensors[self.level]
        problems = tensor.check_identities()
        report.add("tensor-identities", not problems, problems[0] if problems else "")
        mismatch = brute_force_intersection_numbers(scheme, tensor)
        report.add("tensor-oracle", mismatch is None, f"first mismatch at {mismatch}" if mismatch else "")
        return report

    def check_schemeproperties(self) -> Report:
        return verify_B_properties(self.schemes[""], tensor=self.tensors[""])

    def check_orderscheme(self) -> Report:
        report = Report()
        X = self.schemes
        for i, j in ((0, 1), (0, 2), (1, 2)):
            a, b = SINGLE_LEVELS[i].value, SINGLE_LEVELS[j].value
            report.add(f"X{a}^X{b}", meet_schemes(X[a], X[b]) == X[""])
        for pair_a, pair_b in ((0, 1), (0, 2), (1, 2)):
            a, b = PAIR_LEVELS[pair_a].value, PAIR_LEVELS[pair_b].value
            shared = (set(a) & set(b)).pop()
            report.add(f"X{a}^X{b}", meet_schemes(X[a], X[b]) == X[shared], f"expected X{shared}")
        return report

    def check_fusionscheme(self) -> Report:
        """
        Every fusion scheme is coherent, and the fusions form the chain `𝒳_0 ≤ 𝒳_ij ≤ 𝒳_i ≤ 𝒳`.
        """
        report = Report()
        X = self.schemes
        for level in FusionLevel:
            key = level.value
            report.add(f"X{key}-coherent", X[key].is_coherent(), f"rank {X[key].rank}")
            report.add(f"X{key}-fusion", is_fusion(X[key], X[""]))
        for pair in PAIR_LEVELS:
            for i in pair.value:
                report.add(f"X{pair.value}-below-X{i}", is_fusion(X[pair.value], X[i]))
            report.add(f"X0-below-X{pair.value}", is_fusion(X["0"], X[pair.value]))
        return report

    ############################################################################
    # AUTOMORPHISM STAGES
    ############################################################################

    def check_fixedpoint(self) -> Report:
        """
        No nonidentity automorphism fixes a point in every class of the thin radical, checked over all of
        `Aut(𝒳)`. The translations of `G` are fixed-point-free on every fusion, so the statement holds there
        vacuously.
        """
        report = Report()
        scheme = self.schemes[""]
        elements = self.automorphisms("").elements()
        parabolic = thin_radical(scheme).parabolic
        held = [verify_fixed_point_lemma(scheme, parabolic, f) for f in elements]
        report.add("X", all(held), f"{len(elements)} automorphisms checked")
        translations = self.translations.elements()
        for level in SINGLE_LEVELS:
            fusion = self.schemes[level.value]
            parabolic = thin_radical(fusion).parabolic
            held = [verify_fixed_point_lemma(fusion, parabolic, f) for f in translations]
            report.add(f"X{level.value}-translations", all(held), f"{len(translations)} translations checked")
        return report

    def check_semiregular(self) -> Report:
        report = Report()
        orders = self.automorphisms("").point_stabilizer_orders()
        report.add("stabilizers", all(o == 1 for o in orders), f"largest point stabilizer {max(orders)}")
        return report

    def check_regular(self) -> Report:
        """
        Automorphism group orders of the scheme and its fusions, the intersections of fusion groups, and the
        counting chain that makes `Aut(𝒳)` regular.
        """
        report = Report()
        p = self.config.p
        expected = {"": 4 * p**2, "0": 4 * p**8}
        expected |= {level.value: 4 * p**4 for level in SINGLE_LEVELS}
        expected |= {level.value: 4 * p**6 for level in PAIR_LEVELS}
        orders = {}
        for key in ["", "1", "2", "3", "12", "13", "23", "0"]:
            orders[key] = self.automorphisms(key).order
            report.add(f"|Aut X{key}|", orders[key] == expected[key], f"{orders[key]}")
        report.add("regular", regularity_class(self.automorphisms("")).value == "regular")
        meet = group_intersection(self.automorphisms("1"), self.automorphisms("2"), budget=self.config.budget)
        report.add(
            "Aut X1 ^ Aut X2",
            meet.order == orders[""] and meet.is_subgroup_of(self.automorphisms("")),
            f"{meet.order}",
        )
        meet = group_intersection(self.automorphisms("12"), self.automorphisms("13"), budget=self.config.budget)
        report.add(
            "Aut X12 ^ Aut X13",
            meet.order == orders["1"] and meet.is_subgroup_of(self.automorphisms("1")),
            f"{meet.order}",
        )
        for check in lemma_chain_inequalities(orders, p).checks:
            report.checks.append(check)
        return report

    def check_nonschurian(self) -> Report:
        """
        For the basic scheme, some colour of size `4p³` is not a 2-orbit. For the fusions `𝒳_0` and `𝒳_i`,
        which are built from regular schemes by tensor and wreath products, the scheme is schurian.
        """
        report = Report()
        p = self.config.p
        key = self.level
        self.schurity = is_schurian(self.schemes[key], group=self.automorphisms(key))
        detail = f"2-orbit rank {self.schurity.orbits.rank}, scheme rank {self.schemes[key].rank}"
        if not key:
            report.add(
                "nonschurian",
                not self.schurity.schurian and self.schurity.witness_size == 4 * p**3,
                f"witness colour {self.schurity.witness} of size {self.schurity.witness_size}",
            )
            report.add("2-orbit-rank", self.schurity.orbits.rank == 4 * p * p, detail)
        elif key in ("0", "1", "2", "3"):
            report.add("schurian", self.schurity.schurian, detail)
        else:
            report.add("observed", True, f"schurian {self.schurity.schurian}; {detail}")
        return report

    def check_recognition(self) -> Report:
        """
        The group recovered from `Aut(𝒳)` is `C_2p × C_2p`, and the four candidates have the expected
        involution counts and a unique Sylow p-subgroup `C_p × C_p`.
        """
        report = Report()
        p = self.config.p
        try:
            H, recognition = recover_group_of_regular_scheme(self.schemes[""], group=self.automorphisms(""))
            failures = ", ".join(c.name for c in recognition.failures())
            report.add("recovered", recognition.passed, failures or f"k2 = {recognition.involutions}")
            report.add("label", recognition.label == CandidateKind.cyclic_cyclic.value, f"{recognition.label}")
        except RecognitionError as err:
            report.add("recovered", False, str(err))
        expected = {
            CandidateKind.cyclic_cyclic: 3,
            CandidateKind.cyclic_dihedral: 2 * p + 1,
            CandidateKind.dihedral_dihedral: p * p + 2 * p,
            CandidateKind.inverting: 2 * p * p + 1,
        }
        for kind, k2 in expected.items():
            group = build_candidate_group(kind, p)
            census = order_census(group)
            count, sylows = sylow_p_count(group, p)
            sylow = sylows[0].as_table()
            report.add(
                f"{kind.value}",
                census.get(2, 0) == k2
                and count == 1
                and sylow.is_abelian()
                and sylow.exponent == p
                and classify_by_census(group, p) == kind,
                f"k2 = {census.get(2, 0)}, {count} Sylow {p}-subgroups",
            )
        return report

    def check_separability(self) -> Report:
        key = self.level
        self.audit = separability_audit(
            self.schemes[key],
            tensor=self.tensors[key],
            budget=self.config.budget,
            scheme_ref=_c.suffixed(_c.DEFAULT_SCHEME, key or None),
        )
        if self.config.directory is not None:
            _c.check_path(self.config.directory)
            _c.save_json(
                self.audit.model_dump(mode="json"),
                self.config.directory / _c.suffixed(_c.DEFAULT_AUDIT, key or None),
                overwrite=True,
            )
        return self.audit

    ############################################################################
    # STANDALONE COMMANDS
    ############################################################################

    def source_scheme(self) -> Scheme:
        """
        The scheme read from `config.source`, or the generated one for `p` and `config.fusion`.
        """
        if self.config.source is not None:
            return Scheme.from_file(self.config.source)
        return self.schemes[self.level]

    def save_automorphisms(self) -> PermGroup:
        """
        Compute the automorphism group of the source scheme and, with a directory set, write its generators.
        """
        if self.config.source is None:
            group = self.automorphisms(self.level)
        else:
            group = automorphism_group(self.source_scheme(), budget=self.config.budget)
        if self.config.directory is not None:
            _c.check_path(self.config.directory)
            group.to_file(self.config.directory / _c.suffixed(_c.DEFAULT_AUTOMORPHISMS, self.level or None), True)
        return group

    def save_tensor(self) -> IntersectionTensor:
        scheme = self.source_scheme()
        tensor = intersection_tensor(scheme)
        if self.config.directory is not None:
            _c.check_path(self.config.directory)
            name = self.config.source.name if self.config.source else _c.suffixed(_c.DEFAULT_SCHEME, self.level or None)
            tensor.to_file(
                self.config.directory / _c.suffixed(_c.DEFAULT_TENSOR, self.level or None),
                scheme_ref=name,
                overwrite=True,
            )
        return tensor

    def stabilize(self) -> tuple[Scheme, int]:
        """
        WL-stabilize the source colouring.

        Returns:
            The stable scheme and the number of colours it adds.
        """
        scheme = self.source_scheme()
        stable = wl_stabilize(scheme)
        if self.config.directory is not None:
            _c.check_path(self.config.directory)
            stable.to_file(self.config.directory / _c.suffixed(_c.DEFAULT_SCHEME, self.level or None), True)
        return stable, stable.rank - scheme.rank

    ############################################################################
    # BATTERY
    ############################################################################

    def stages(self) -> list[CheckName]:
        """
        Stages to run: the one named by `config.lemma`, the fusion subset when `config.fusion` is set, or all.
        """
        if self.config.lemma is not None:
            return [self.config.lemma]
        if self.config.fusion is not None:
            return [
                CheckName.schur,
                CheckName.fusionring,
                CheckName.wl,
                CheckName.nonschurian,
                CheckName.separability,
            ]
        return list(CheckName)

    def verify(self) -> VerifyReport:
        """
        Run the battery. Each stage becomes one check of the returned report and its full sub-report is kept
        under `stages`.

        Returns:
            VerifyReport
        """
        from uhusiano import __version__

        report = VerifyReport(version=__version__, config=self.config.model_dump(mode="json"))
        for name in self.stages():
            method: Callable[[], Report] = getattr(self, f"check_{name.value}")
            start = time.perf_counter()
            try:
                stage = method()
                report.stages[name.value] = stage
                report.add(name.value, stage.passed, ", ".join(c.name for c in stage.failures()))
            except SearchBudgetExceeded as err:
                report.inconclusive = True
                report.add(name.value, False, f"inconclusive: {err}")
            self._timed(name.value, start)
            logger.info(f"Stage {name.value}: {report.checks[-1].passed}")
        if self.schurity is not None:
            report.schurian = self.schurity.schurian
        if self.audit is not None:
            report.audit_failures = self.audit.failure_count
            report.inconclusive = report.inconclusive or self.audit.inconclusive_count > 0
        report.timing = list(self.timings)
        if self.config.directory is not None:
            _c.check_path(self.config.directory)
            _c.save_json(
                report.model_dump(mode="json"), self.config.directory / _c.DEFAULT_REPORT, overwrite=True, indent=2
            )
            _c.save_json(
                {"stages": [t.model_dump() for t in self.timings]},
                self.config.directory / _c.DEFAULT_TIMING,
                overwrite=True,
            )
        return report


def _matrix_pairs(p: int):
    """
    Invertible matrix pairs over Z_2 and Z_p in lexicographic order of their entries.
    """
    for a in product(range(2), repeat=4):
        if (a[0] * a[3] - a[1] * a[2]) % 2 == 0:
            continue
        for b in product(range(p), repeat=4):
            if (b[0] * b[3] - b[1] * b[2]) % p == 0:
                continue
            yield np.array(a).reshape(2, 2), np.array(b).reshape(2, 2)
