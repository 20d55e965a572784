import json

import pytest

from beltrami_cert.app import REPORT_NAME, Certifier
from beltrami_cert.certify.report import BoundReport, Status
from beltrami_cert.services.config import PipelineConfig
from beltrami_cert.utils import DomainError, StageFailure

STAGES = {"const_A", "crescent", "completion", "beltrami", "iterate", "verify_ball", "inner_radius", "const_C", "bound"}


def config(tmp_path, **fields) -> PipelineConfig:
    return PipelineConfig.from_dict({"output": {"dir": str(tmp_path)}, "threads": 1, **fields})


def test_stage_wraps_errors(tmp_path):
    certifier = Certifier(config(tmp_path))

    def fail():
        raise DomainError("division by a disk containing 0")

    with pytest.raises(StageFailure) as e:
        certifier.stage("iterate", fail)
    assert e.value.stage == "iterate"
    assert e.value.to_dict() == {"status": "failed", "stage": "iterate", "message": "division by a disk containing 0"}
    assert certifier.stage("iterate", lambda x: x + 1, 1) == 2


def test_exponent_two_fails_at_the_first_stage(tmp_path):
    report = Certifier(config(tmp_path, p=2.0)).certify_pipeline()
    assert report.status == Status.FAILED
    assert report.stage == "const_A"
    assert "2.0" in report.message
    saved = json.loads((tmp_path / REPORT_NAME).read_text())
    assert saved["status"] == "failed" and saved["stage"] == "const_A"
    assert BoundReport.load(tmp_path / REPORT_NAME).p == 2.0


@pytest.mark.slow
def test_reduced_golden_run(tmp_path):
    cfg = config(
        tmp_path,
        grid={"radial_cells": 64, "fourier_modes": 16, "phi_pieces": 32},
        bound={"n_cover": 256, "points": [[1.0, 0.0], [0.1, 0.1]]},
        threads=4,
    )
    report = Certifier(cfg).certify_pipeline()
    assert report.certified or report.stage in STAGES
    assert report.A is not None and 7.11 <= report.A[0]
    assert "branch" in report.artifacts and "cover" in report.artifacts
    if report.certified:
        assert report.soundness() == []
        assert len(report.bounds) == 2
        assert all(bound >= 0.0 for _, _, bound in report.bounds)
        assert report.positivity_radius > 0.0
