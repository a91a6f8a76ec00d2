import logging
import time
from functools import cached_property
from pathlib import Path
from typing import Optional

from uhusiano.models.config import FusionLevel, RunConfig
from uhusiano.models.reports import StageTiming
from uhusiano.groups.bundle import PaperGroupBundle, build_paper_group
from uhusiano.rings.cayley import cayley_scheme
from uhusiano.rings.family import fusion_partition, paper_partition
from uhusiano.rings.partition import BasicSetPartition, StructureConstants, structure_constants
from uhusiano.schemes.scheme import Scheme, NotCoherentError
from uhusiano.schemes.tensor import IntersectionTensor, intersection_tensor
from uhusiano.helpers import coreio as _c

logger = logging.getLogger(__name__)


class CreateScheme:
    """
    Build the group, basic partition, Cayley scheme and intersection numbers for a prime `p`, and save
    them as JSON artifacts.

    If a `directory` is given (or set in the configuration), files are written there on `save`; existing
    files are overwritten.

    Parameters:
        config: A run configuration, or a dictionary of its terms.
        directory: Output directory, overriding `config.directory`.

    Example:
        Generate the scheme for `p = 5` as follows:

        ```python
        from uhusiano import CreateScheme

        work = CreateScheme({"p": 5}, directory="out")
        work.save()
        ```
    """

    def __init__(self, config: RunConfig | dict, directory: Optional[str | Path] = None):
        if isinstance(config, dict):
            config = RunConfig(**config)
        self.config = config
        if directory is not None:
            self.config.directory = Path(directory)
        self.directory = self.config.directory
        self.timings: list[StageTiming] = []

    def _timed(self, stage: str, start: float):
        self.timings.append(StageTiming(stage=stage, seconds=round(time.perf_counter() - start, 6)))

    ############################################################################
    # BUILD ARTIFACTS
    ############################################################################

    @cached_property
    def bundle(self) -> PaperGroupBundle:
        if self.config.p is None:
            e = "Building the group needs a prime `p`."
            raise ValueError(e)
        start = time.perf_counter()
        bundle = build_paper_group(
            self.config.p,
            subgroups=self.config.subgroups,
            involutions=self.config.involutions,
            max_p=self.config.max_p,
            override_max_p=self.config.override_max_p,
        )
        self._timed("group", start)
        return bundle

    @cached_property
    def partition(self) -> BasicSetPartition:
        """
        The basic partition, or its fusion when `config.fusion` is set.
        """
        start = time.perf_counter()
        if self.config.fusion is None:
            partition = paper_partition(self.bundle)
        else:
            partition = fusion_partition(self.bundle, self.config.fusion)
        self._timed("partition", start)
        return partition

    @cached_property
    def constants(self) -> StructureConstants:
        start = time.perf_counter()
        constants = structure_constants(self.partition)
        self._timed("constants", start)
        return constants

    @cached_property
    def scheme(self) -> Scheme:
        """
        The Cayley scheme of the partition, checked to be WL-stable.

        Raises:
            NotCoherentError: if refinement splits some colour.
        """
        start = time.perf_counter()
        scheme = cayley_scheme(self.partition)
        if not scheme.is_coherent():
            e = f"Cayley scheme of rank {scheme.rank} is not coherent."
            raise NotCoherentError(e)
        self._timed("scheme", start)
        return scheme

    @cached_property
    def tensor(self) -> IntersectionTensor:
        start = time.perf_counter()
        tensor = intersection_tensor(self.scheme)
        self._timed("tensor", start)
        return tensor

    def summary(self) -> str:
        label = f"fusion {self.config.fusion.value}" if self.config.fusion else "basic partition"
        return f"p = {self.config.p}, {label}: degree {self.scheme.degree}, rank {self.scheme.rank}"

    ############################################################################
    # SAVE ARTIFACTS
    ############################################################################

    def save(self, directory: Optional[str | Path] = None) -> list[Path]:
        """
        Write the run configuration, group, partition, structure constants, scheme and tensor, and the timing
        of each stage. With `config.fusions`, every fusion partition and scheme is written as well.

        Parameters:
            directory: Output directory, overriding the configured one.

        Raises:
            PermissionError: if no directory is set, or it is not writable.

        Returns:
            Paths written, in order.
        """
        directory = Path(directory) if directory is not None else self.directory
        if directory is None:
            e = "Set an output `directory` before saving."
            raise PermissionError(e)
        _c.check_path(directory)
        suffix = self.config.fusion.value if self.config.fusion else None
        written = []

        def _path(filename: str, level: Optional[str] = suffix) -> Path:
            written.append(directory / _c.suffixed(filename, level))
            return written[-1]

        _c.save_json(self.config.model_dump(mode="json"), _path(_c.DEFAULT_RUN_SETTINGS, None), overwrite=True)
        self.bundle.group.to_file(_path(_c.DEFAULT_GROUP, None), overwrite=True)
        partition_name = _c.suffixed(_c.DEFAULT_PARTITION, suffix)
        self.partition.to_file(_path(_c.DEFAULT_PARTITION), overwrite=True)
        self.constants.to_file(_path(_c.DEFAULT_CONSTANTS), partition_ref=partition_name, overwrite=True)
        scheme_name = _c.suffixed(_c.DEFAULT_SCHEME, suffix)
        self.scheme.to_file(_path(_c.DEFAULT_SCHEME), overwrite=True)
        self.tensor.to_file(_path(_c.DEFAULT_TENSOR), scheme_ref=scheme_name, overwrite=True)
        if self.config.fusions:
            for level in FusionLevel:
                if level == self.config.fusion:
                    continue
                partition = fusion_partition(self.bundle, level)
                partition.to_file(_path(_c.DEFAULT_PARTITION, level.value), overwrite=True)
                cayley_scheme(partition).to_file(_path(_c.DEFAULT_SCHEME, level.value), overwrite=True)
        _c.save_json(
            {"stages": [t.model_dump() for t in self.timings]}, directory / _c.DEFAULT_TIMING, overwrite=True
        )
        logger.info(f"Saved {len(written)} artifacts to {directory}")
        return written
