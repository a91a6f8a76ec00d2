#!/usr/bin/env python
# -*- coding: utf-8 -*-

from pathlib import Path

import pytest
from pydantic import ValidationError

from uhusiano import CreateScheme, ReviewScheme, RunConfig, __version__
from uhusiano.__main__ import main
from uhusiano.models.config import CheckName, FusionLevel
from uhusiano.perms.group import PermGroup
from uhusiano.schemes.scheme import Scheme
from uhusiano.helpers import coreio as _c

DATA = Path(__file__).parent / "data"
ARTIFACTS = ["run_config.json", "group.json", "partition.json", "constants.json", "scheme.json", "tensor.json"]


def test_version():
    assert __version__ == "0.1.0"


class TestRunConfig:

    def test_primes(self):
        assert RunConfig(p=5).p == 5
        with pytest.raises(ValidationError):
            RunConfig(p=4)
        with pytest.raises(ValidationError):
            RunConfig(p=3)
        with pytest.raises(ValidationError):
            RunConfig(p=17)
        assert RunConfig(p=17, override_max_p=True).p == 17

    def test_choices(self):
        with pytest.raises(ValidationError):
            RunConfig(p=5, subgroups=((1, 0), (2, 0), (1, 1)))
        with pytest.raises(ValidationError):
            RunConfig(p=5, involutions=((1, 0), (1, 0), (1, 1)))
        with pytest.raises(ValidationError):
            RunConfig()
        assert RunConfig(source="scheme.json").p is None

    def test_toml(self):
        config = RunConfig(**_c.load_toml(DATA / "run_config.toml"))
        assert config.p == 5
        assert config.subgroups == ((1, 0), (0, 1), (1, 1))

    def test_fusion_levels(self):
        assert FusionLevel("1").kept == (1, 2)
        assert FusionLevel("1").merged == (0,)
        assert FusionLevel("23").kept == (0,)
        assert FusionLevel("0").kept == ()
        assert FusionLevel("0").merged == (0, 1, 2)


class TestCreateScheme:

    def test_summary(self):
        assert CreateScheme({"p": 5}).summary() == "p = 5, basic partition: degree 100, rank 40"
        assert CreateScheme({"p": 5, "fusion": "12"}).summary() == "p = 5, fusion 12: degree 100, rank 32"

    def test_save(self, tmp_path):
        written = CreateScheme({"p": 5}, directory=tmp_path).save()
        assert [path.name for path in written] == ARTIFACTS
        assert (tmp_path / "timing.json").exists()
        scheme = Scheme.from_file(tmp_path / "scheme.json")
        assert scheme.rank == 40
        assert _c.load_json(tmp_path / "tensor.json")["scheme_ref"] == "scheme.json"

    def test_save_fusions(self, tmp_path):
        written = CreateScheme({"p": 5, "fusion": "1", "fusions": True}, directory=tmp_path).save()
        names = {path.name for path in written}
        assert "scheme-1.json" in names
        assert "partition-0.json" in names
        assert Scheme.from_file(tmp_path / "scheme-0.json").rank == 28

    def test_deterministic(self, tmp_path):
        first, second = tmp_path / "first", tmp_path / "second"
        CreateScheme({"p": 5}, directory=first).save()
        CreateScheme({"p": 5}, directory=second).save()
        # run_config.json records the output directory
        for name in ARTIFACTS[1:]:
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_larger_prime(self):
        work = CreateScheme({"p": 7})
        assert work.scheme.degree == 196
        assert work.scheme.rank == 70

    def test_save_needs_directory(self):
        with pytest.raises(PermissionError):
            CreateScheme({"p": 5}).save()


class TestReviewScheme:

    def test_stages(self):
        assert ReviewScheme({"p": 5}).stages() == list(CheckName)
        assert ReviewScheme({"p": 5, "lemma": "wl"}).stages() == [CheckName.wl]
        assert CheckName.recognition not in ReviewScheme({"p": 5, "fusion": "1"}).stages()

    def test_ring_stages(self, review5):
        assert review5.check_schur().passed
        assert review5.check_ringproperties().passed
        assert review5.check_orderring().passed
        assert review5.check_fusionring().passed

    def test_scheme_stages(self, review5):
        assert review5.check_wl().passed
        assert review5.check_schemeproperties().passed
        assert review5.check_orderscheme().passed
        assert review5.check_fusionscheme().passed

    def test_automorphism_stages(self, review5):
        assert review5.automorphisms("").order == 100
        assert review5.check_fixedpoint().passed
        assert review5.check_semiregular().passed
        report = review5.check_nonschurian()
        assert report.passed, report.failures()
        assert not review5.schurity.schurian

    def test_battery(self, review5, tmp_path):
        review5.config.directory = tmp_path
        try:
            report = review5.verify()
        finally:
            review5.config.directory = None
        assert report.passed, report.failures()
        assert not report.inconclusive
        assert report.schurian is False
        assert report.audit_failures == 0
        assert report.version == __version__
        assert set(report.stages) == {name.value for name in CheckName}
        saved = _c.load_json(tmp_path / "report.json")
        assert saved["passed"] is True
        assert (tmp_path / "audit.json").exists()
        stages = [t["stage"] for t in saved["timing"]]
        assert "schur" in stages and "separability" in stages
        assert all(t["seconds"] >= 0 for t in saved["timing"])

    def test_single_stage(self):
        report = ReviewScheme({"p": 5, "lemma": "orderscheme"}).verify()
        assert report.passed
        assert [check.name for check in report.checks] == ["orderscheme"]

    def test_fusion_schurity(self):
        review = ReviewScheme({"p": 5, "fusion": "1", "lemma": "nonschurian"})
        assert review.verify().passed
        assert review.schurity.schurian

    @pytest.mark.slow
    def test_coarsest_fusion_battery(self):
        review = ReviewScheme({"p": 5, "fusion": "0"})
        report = review.verify()
        assert report.passed, report.failures()
        assert report.schurian is True
        assert report.audit_failures == 0
        assert not report.inconclusive
        assert review.audit.induced_count == review.audit.algebraic_automorphism_count == 2880

    def test_standalone(self, tmp_path):
        review = ReviewScheme({"p": 5}, directory=tmp_path)
        group = review.save_automorphisms()
        assert group.order == 100
        assert PermGroup.from_file(tmp_path / "automorphisms.json").order == 100
        assert review.save_tensor().rank == 40
        stable, delta = review.stabilize()
        assert stable.rank == 40
        assert delta == 0


class TestCommandLine:

    def test_usage_errors(self, tmp_path):
        assert main(["generate", "--p", "4"]) == 3
        assert main(["generate", "--p", "17"]) == 3
        assert main(["bogus"]) == 3
        assert main(["wl", "--in", str(tmp_path / "missing.json")]) == 3
        assert main(["--help"]) == 0

    def test_generate_and_stabilize(self, tmp_path, capsys):
        assert main(["generate", "--config", str(DATA / "run_config.toml"), "--out", str(tmp_path)]) == 0
        assert "degree 100, rank 40" in capsys.readouterr().out
        assert (tmp_path / "scheme.json").exists()
        assert main(["wl", "--in", str(tmp_path / "scheme.json")]) == 0
        assert "rank delta 0" in capsys.readouterr().out
        assert main(["tensor", "--in", str(tmp_path / "scheme.json")]) == 0
        assert capsys.readouterr().out.startswith("rank 40")

    def test_verify_single_stage(self, capsys):
        assert main(["verify", "--p", "5", "--lemma", "schur"]) == 0
        out = capsys.readouterr().out
        assert "PASS schur" in out
        assert out.strip().endswith("PASS")

    def test_inconclusive(self, capsys):
        assert main(["verify", "--p", "5", "--lemma", "separability", "--budget", "1"]) == 2
        assert "INCONCLUSIVE" in capsys.readouterr().out
