"""
Separability audit: every algebraic automorphism of a scheme should be induced by a point bijection.
"""

import logging
from typing import Optional

import numpy as np

from uhusiano.models.config import DEFAULT_BUDGET
from uhusiano.models.reports import AuditReport, AuditWitness, Report, SearchStatus
from uhusiano.algebraic.isomorphism import ColorBijection, enumerate_algebraic_isos, find_inducing_isomorphism
from uhusiano.perms.permutation import SearchBudgetExceeded, is_isomorphism
from uhusiano.perms.search import Backtrack
from uhusiano.rings.cayley import CayleyIsomorphismError, cayley_iso_from_algebraic, color_bijection_to_sets
from uhusiano.rings.partition import BasicSetPartition
from uhusiano.schemes.scheme import Scheme
from uhusiano.schemes.tensor import IntersectionTensor, intersection_tensor

logger = logging.getLogger(__name__)


class InducedClosure:
    """
    Colour maps known to be induced, closed under composition, each stored with a point map inducing it.
    If `m₁` induces `φ₁` and `m₂` induces `φ₂` then `m₂ ∘ m₁` induces `φ₂ ∘ φ₁`, so the induced colour
    maps form a group and one search per generator is enough.

    Parameters:
        rank: Number of colours.
        degree: Number of points.
    """

    def __init__(self, rank: int, degree: int):
        identity = (np.arange(rank, dtype=np.int64), np.arange(degree, dtype=np.int64))
        self.generators: list[tuple[np.ndarray, np.ndarray]] = []
        self.elements: dict[bytes, tuple[np.ndarray, np.ndarray]] = {identity[0].tobytes(): identity}

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, phi: np.ndarray) -> bool:
        return np.asarray(phi, dtype=np.int64).tobytes() in self.elements

    def point_map(self, phi: np.ndarray) -> Optional[np.ndarray]:
        entry = self.elements.get(np.asarray(phi, dtype=np.int64).tobytes())
        return None if entry is None else entry[1]

    def add(self, phi: np.ndarray, point_map: np.ndarray):
        """
        Add an induced colour map and close under composition.

        Parameters:
            phi: Colour image array.
            point_map: Point image array inducing `phi`.
        """
        generator = (np.asarray(phi, dtype=np.int64), np.asarray(point_map, dtype=np.int64))
        if generator[0].tobytes() in self.elements:
            return
        self.generators.append(generator)
        # the old elements are closed under the old generators, so only the new one needs applying to them
        frontier = self._extend(list(self.elements.values()), [generator])
        while frontier:
            frontier = self._extend(frontier, self.generators)

    def _extend(self, frontier, generators) -> list[tuple[np.ndarray, np.ndarray]]:
        found = []
        for colours, points in frontier:
            for g_colours, g_points in generators:
                product = (g_colours[colours], g_points[points])
                key = product[0].tobytes()
                if key not in self.elements:
                    self.elements[key] = product
                    found.append(product)
        return found


def separability_audit(
    scheme: Scheme,
    tensor: Optional[IntersectionTensor] = None,
    budget: int = DEFAULT_BUDGET,
    scheme_ref: str = "",
) -> AuditReport:
    """
    Enumerate the algebraic automorphisms of a scheme's tensor and search, for each, a point bijection
    inducing it. A search that runs out of budget is counted as inconclusive, never as a failure.

    Parameters:
        scheme: A WL-stable association scheme.
        tensor: Its precomputed intersection numbers.
        budget: Node budget per search.
        scheme_ref: Name recorded in the report.

    Returns:
        AuditReport
    """
    if tensor is None:
        tensor = intersection_tensor(scheme)
    report = AuditReport(scheme_ref=scheme_ref)
    isos = enumerate_algebraic_isos(tensor, tensor, budget=budget)
    report.algebraic_automorphism_count = len(isos)
    search = Backtrack(scheme.colors, budget=budget)
    induced = InducedClosure(scheme.rank, scheme.degree)
    for phi in isos:
        point_map = induced.point_map(phi.image)
        if point_map is None:
            report.searched_count += 1
            try:
                m = find_inducing_isomorphism(phi, scheme, scheme, budget=budget, search=search)
            except SearchBudgetExceeded:
                report.witnesses.append(AuditWitness(phi=phi.image.tolist(), status=SearchStatus.inconclusive))
                report.inconclusive_count += 1
                continue
            if m is None:
                report.witnesses.append(AuditWitness(phi=phi.image.tolist(), status=SearchStatus.none))
                continue
            point_map = m.image
            induced.add(phi.image, point_map)
        report.witnesses.append(
            AuditWitness(phi=phi.image.tolist(), point_map=point_map.tolist(), status=SearchStatus.found)
        )
        report.induced_count += 1
    report.add("identity", any(phi.is_identity() for phi in isos), f"{len(isos)} algebraic automorphisms")
    report.add("induced", report.failure_count == 0, f"{report.induced_count} induced, {report.failure_count} not")
    report.add("conclusive", report.inconclusive_count == 0, f"{report.inconclusive_count} inconclusive")
    logger.info(
        f"Audit of {scheme!r}: {report.induced_count}/{report.algebraic_automorphism_count} induced, "
        f"{report.inconclusive_count} inconclusive, {report.searched_count} searches"
    )
    return report


def cross_check_cayley(
    phi: ColorBijection,
    partition: BasicSetPartition,
    scheme: Scheme,
    point_map: Optional[np.ndarray] = None,
) -> Report:
    """
    Build the group automorphism inducing an algebraic automorphism of a Cayley scheme, and check that it
    induces the same colour map as a point bijection found by search.

    Parameters:
        phi: Algebraic automorphism of the tensor of `scheme`.
        partition: The Schur partition `scheme` is built from.
        scheme: Its Cayley scheme.
        point_map: A point bijection inducing `phi`, e.g. from `find_inducing_isomorphism`.

    Returns:
        Report
    """
    report = Report()
    psi = color_bijection_to_sets(phi.image, partition, scheme, partition, scheme)
    try:
        f = cayley_iso_from_algebraic(psi, partition, partition)
    except CayleyIsomorphismError as err:
        report.add("cayley-isomorphism", False, str(err))
        return report
    report.add("cayley-isomorphism", True)
    # f is a point bijection with colors[f(g), f(h)] = φ(colors[g, h])
    target = np.argsort(phi.image)[scheme.colors]
    report.add("induces-phi", is_isomorphism(scheme.colors, target, f))
    if point_map is not None:
        report.add("agrees-with-search", is_isomorphism(scheme.colors, target, point_map))
    return report
