from datetime import datetime, timezone
from enum import StrEnum
from pathlib import Path

from pydantic import BaseModel, PrivateAttr

from beltrami_cert.rigor.interval import Interval
from beltrami_cert.transforms.lpstd import LpStd
from beltrami_cert.transforms.operators import cp_constant
from beltrami_cert.utils import DomainError, StageFailure

Pair = tuple[float, float]


class Status(StrEnum):
    CERTIFIED = "certified"
    FAILED = "failed"


def now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class BoundReport(BaseModel):
    """
    Everything needed to re-check the global bound. Intervals are stored as
    [lo, hi] pairs; only their endpoints claim rigor.
    """

    status: Status
    stage: str | None = None
    message: str | None = None
    p: float
    R: float
    varrho: float
    q: int | None = None
    K: Pair | None = None
    C_p: Pair | None = None
    A: Pair | None = None
    eps: float | None = None
    eps_prime: Pair | None = None
    delta: Pair | None = None
    residual: Pair | None = None
    sup_h_plus_one: Pair | None = None
    inner_r: Pair | None = None
    C: Pair | None = None
    positivity_radius: float | None = None
    bounds: list[tuple[float, float, float]] = []
    grid: dict = {}
    refinement: dict = {}
    crescent: dict = {}
    completion: dict = {}
    expei: dict = {}
    artifacts: dict[str, str] = {}
    created: str = ""

    _g_star: LpStd | None = PrivateAttr(default=None)

    @classmethod
    def failed(cls, failure: StageFailure, **fields) -> "BoundReport":
        return cls(status=Status.FAILED, stage=failure.stage, message=failure.message, created=now(), **fields)

    @property
    def certified(self) -> bool:
        return self.status == Status.CERTIFIED

    def interval(self, name: str) -> Interval:
        value = getattr(self, name)
        if value is None:
            raise DomainError(f"Report has no value for '{name}' (status {self.status}).")
        return Interval(*value)

    def attach(self, g_star: LpStd) -> "BoundReport":
        """Attach the series of g_* - id for pointwise bounds."""
        self._g_star = g_star
        return self

    @property
    def g_star(self) -> LpStd:
        if self._g_star is None:
            raise DomainError("No g_* series attached to the report.")
        return self._g_star

    def soundness(self) -> list[str]:
        """The links of the soundness chain that do not re-verify from the stored numbers."""
        if not self.certified:
            return [f"status is {self.status}"]
        problems = []
        K, cp = self.interval("K"), cp_constant(self.p)
        if not (K * cp).hi < 1.0:
            problems.append("K C_p < 1")
        eps_prime = self.interval("delta") * self.interval("sup_h_plus_one") + K * self.eps
        if eps_prime.hi > self.interval("eps_prime").hi:
            problems.append("eps' = delta sup|h* + 1| + K eps")
        if (self.interval("residual") + cp * eps_prime).hi > self.eps:
            problems.append("||T_nu[h*] - h*||_p + C_p eps' <= eps")
        if not self.interval("inner_r").lo > 0.0:
            problems.append("r > 0")
        if not self.interval("C").lo >= 0.0:
            problems.append("C >= 0")
        if not (self.positivity_radius or 0.0) > 0.0:
            problems.append("denominator positive near 0")
        return problems

    def dump(self, path: Path) -> Path:
        path.write_text(self.model_dump_json(indent=2))
        return path

    @classmethod
    def load(cls, path: Path) -> "BoundReport":
        return cls.model_validate_json(path.read_text())
