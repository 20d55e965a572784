import pytest

from beltrami_cert.certify.report import BoundReport, Status
from beltrami_cert.utils import DomainError, StageFailure

P = 2.1


@pytest.fixture
def report() -> BoundReport:
    return BoundReport(
        status=Status.CERTIFIED,
        p=P,
        R=9.8e3,
        varrho=3.1e-3,
        q=8,
        K=(0.0, 0.5),
        C_p=(1.15, 1.17),
        A=(7.11, 7.12),
        eps=0.1,
        eps_prime=(0.0, 0.0600001),
        delta=(0.0, 0.01),
        residual=(0.0, 1e-3),
        sup_h_plus_one=(0.0, 1.0),
        inner_r=(1.0, 1.1),
        C=(0.5, 0.6),
        positivity_radius=2.0,
        bounds=[(1.0, 0.0, 0.25)],
    )


def test_consistent_report_is_sound(report):
    assert report.certified
    assert report.soundness() == []


@pytest.mark.parametrize(
    "change,link",
    [
        ({"K": (0.0, 0.9)}, "K C_p < 1"),
        ({"eps_prime": (0.0, 0.01)}, "eps' = delta sup|h* + 1| + K eps"),
        ({"residual": (0.0, 0.05)}, "||T_nu[h*] - h*||_p + C_p eps' <= eps"),
        ({"inner_r": (0.0, 1.0)}, "r > 0"),
        ({"C": (-1.0, 0.5)}, "C >= 0"),
        ({"positivity_radius": None}, "denominator positive near 0"),
    ],
    ids=["contraction", "eps prime", "ball", "inner radius", "C", "positivity"],
)
def test_broken_links_are_reported(report, change, link):
    broken = report.model_copy(update=change)
    assert link in broken.soundness()


def test_failed_report():
    failed = BoundReport.failed(StageFailure("const_A", "Exponent p must exceed 2, got 2.0."), p=2.0, R=1.0, varrho=0.1)
    assert failed.status == Status.FAILED and not failed.certified
    assert failed.stage == "const_A"
    assert failed.created
    assert failed.soundness() == ["status is failed"]
    with pytest.raises(DomainError):
        failed.interval("A")


def test_interval_fields(report):
    assert report.interval("A").lo == 7.11
    with pytest.raises(DomainError):
        report.g_star


def test_json_round_trip(report, tmp_path):
    path = report.dump(tmp_path / "report.json")
    restored = BoundReport.load(path)
    assert restored.model_dump() == report.model_dump()
    assert restored.status == Status.CERTIFIED
