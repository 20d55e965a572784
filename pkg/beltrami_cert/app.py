from typing import Any, Callable

from viaa.configuration import ConfigParser
from viaa.observability import logging

from beltrami_cert.beltrami.annulus import annulus_data, expei_diagnostic
from beltrami_cert.beltrami.split import DiffSplit, annulus_grid, build_split
from beltrami_cert.certify.bound import final_bound, holder_term, inner_radius, positivity_radius
from beltrami_cert.certify.constants import const_A, const_C
from beltrami_cert.certify.fixed_point import default_window, g_star, iterate_T_nu, select_eps
from beltrami_cert.certify.report import BoundReport, Status, now
from beltrami_cert.crescent.completion import completion_data
from beltrami_cert.crescent.cover import Cover, CoverReport, verify_empty_intersection
from beltrami_cert.crescent.geometry import CrescentConfig
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.services.config import PipelineConfig
from beltrami_cert.services.output import BRANCH_COLUMNS, COVER_COLUMNS, SPLIT_COLUMNS, OutputWriter
from beltrami_cert.transforms.grid import RadialGrid
from beltrami_cert.transforms.lpstd import LpStd
from beltrami_cert.transforms.operators import cp_constant
from beltrami_cert.utils import StageFailure

APP_NAME = "beltrami-cert"
REPORT_NAME = "report.json"


class Certifier:
    """
    Certifier runs the stages of the certification one after the other and
    turns the first failing check into a failed report.
    """

    def __init__(self, config: PipelineConfig | None = None, threads: int | None = None):
        """
        Initializes the Certifier with the pipeline configuration, logging and
        the output directory.
        """
        config_parser = ConfigParser()
        self.log = logging.get_logger(__name__, config=config_parser)
        self.config = config or PipelineConfig.from_app_config()
        self.workers = self.config.workers(threads)
        self.output = OutputWriter(self.config.output.dir, self.config.output.formats)
        self.fields: dict[str, Any] = {}
        self.artifacts: dict[str, str] = {}

    def stage(self, name: str, fn: Callable, *args, **kwargs):
        """
        Runs one step of stage `name`.

        Raises:
            StageFailure: wrapping whatever the step raised.
        """
        self.log.debug(f"Stage {name}: {getattr(fn, '__name__', fn)}.")
        try:
            return fn(*args, **kwargs)
        except StageFailure:
            raise
        except Exception as e:
            self.log.error(f"Error in stage {name}: {e}")
            raise StageFailure(name, str(e)) from e

    def keep(self, name: str, path) -> None:
        if path is not None:
            self.artifacts[name] = str(path)

    def crescent(self) -> tuple[CrescentConfig, Cover, CoverReport]:
        """Builds the crescent and verifies that its preimage misses the boundary."""
        cfg = self.config
        crescent = self.stage(
            "crescent",
            CrescentConfig.build,
            n=cfg.map.n,
            slope=cfg.geometry.slope,
            inner_cutoff=cfg.geometry.inner_cutoff,
            outer_cutoff=cfg.geometry.outer_cutoff,
            branch_samples=cfg.geometry.branch_samples,
        )
        self.fields["q"] = crescent.q
        self.fields["crescent"] = crescent.to_dict()
        self.keep("branch", self.output.write_csv("branch", BRANCH_COLUMNS, crescent.branch.rows()))
        cover, report = self.stage("crescent", verify_empty_intersection, crescent, cfg.cover.n_balls, self.workers)
        self.fields["crescent"]["cover"] = report.to_dict()
        self.keep("cover", self.output.write_csv("cover", COVER_COLUMNS, cover.rows()))
        self.keep("crescent", self.output.write_json("crescent", self.fields["crescent"]))
        self.log.info(f"Crescent of f^{crescent.q} verified with {report.n_balls} balls.")
        return crescent, cover, report

    def expei_clamp(self, crescent: CrescentConfig, grid: RadialGrid) -> dict:
        """ExpEi remainder factors at the first, middle and last annulus cells."""
        M_t = self.config.grid.fourier_modes
        ks = [k for k in range(-M_t, M_t + 1) if k]
        cells = sorted({1, grid.n_cells // 2, grid.n_cells - 1})
        merged = {"cells": cells, "arguments": 0, "asymptotic": 0, "max_printed_factor": 1.0, "max_used_factor": 1.0}
        for m in cells:
            diagnostic = expei_diagnostic(annulus_data(crescent, grid.cell(m)), ks)
            for key in ("arguments", "asymptotic"):
                merged[key] += diagnostic[key]
            for key in ("max_printed_factor", "max_used_factor"):
                merged[key] = max(merged[key], diagnostic[key])
        return merged

    def split(self, crescent: CrescentConfig) -> DiffSplit:
        """Completion bounds at both ends, then mu = nu + eta + gamma."""
        cfg = self.config
        completion = self.stage(
            "completion",
            completion_data,
            crescent,
            cfg.completion.s_lower_bound,
            cfg.completion.koenigs_radius,
            cfg.completion.rho_small,
            cfg.completion.rho_large,
        )
        self.fields["completion"] = completion.to_dict()
        grid = annulus_grid(crescent, cfg.grid.radial_cells)
        self.fields["grid"] = grid.to_dict()
        split = self.stage(
            "beltrami",
            build_split,
            crescent,
            grid,
            cfg.grid.fourier_modes,
            cfg.p,
            completion,
            self.workers,
            cfg.grid.phi_pieces,
        )
        self.fields["K"] = split.K.to_list()
        self.fields["delta"] = split.eta_norm_p.to_list()
        self.fields["expei"] = self.stage("beltrami", self.expei_clamp, crescent, grid)
        self.keep("nu", self.output.write_lpstd("nu", split.nu))
        self.keep("split", self.output.write_json("split", split.to_dict()))
        self.keep("split_rows", self.output.write_csv("split", SPLIT_COLUMNS, split.rows()))
        return split

    def iterate(self, split: DiffSplit) -> LpStd:
        """The approximate fixed point h* of T_nu, started from 0."""
        nu = split.nu
        lo, hi = default_window(nu)
        iters = self.config.iteration.iters
        h_star = self.stage("iterate", iterate_T_nu, nu, LpStd.zero(nu.grid, lo, hi, nu.p), iters, (lo, hi))
        self.fields["refinement"] = {
            "radial_cells": self.config.grid.radial_cells,
            "fourier_modes": split.M_t,
            "phi_pieces": self.config.grid.phi_pieces,
            "iters": iters,
            "window": [lo, hi],
            "eta": split.eta.to_dict(),
        }
        self.keep("h_star", self.output.write_lpstd("h_star", h_star))
        return h_star

    def evaluate(self, report: BoundReport, points: list[tuple[float, float]]) -> list[tuple[float, float, float]]:
        return [(x, y, final_bound(complex(x, y), report).hi) for x, y in points]

    def certify(self) -> BoundReport:
        """
        Raises:
            StageFailure: at the first stage whose checks do not pass.
        """
        cfg = self.config
        p, R = cfg.p, cfg.geometry.outer_cutoff
        A = self.stage("const_A", const_A, p)
        self.fields["A"] = A.to_list()
        self.fields["C_p"] = cp_constant(p).to_list()

        crescent, _, _ = self.crescent()
        split = self.split(crescent)
        h_star = self.iterate(split)

        ball = self.stage(
            "verify_ball",
            select_eps,
            split.nu,
            h_star,
            split.eta_norm_p,
            split.K,
            p,
            cfg.iteration.eps_growth,
            cfg.iteration.eps_max_steps,
        )
        self.fields.update(
            eps=ball.eps,
            eps_prime=ball.eps_prime.to_list(),
            residual=ball.residual.to_list(),
            sup_h_plus_one=ball.sup_h_plus_one.to_list(),
        )

        g = self.stage("inner_radius", g_star, split.nu, h_star, cfg.bound.extend_factor * R)
        self.keep("g_star", self.output.write_lpstd("g_star", g))
        padding = holder_term(A, ball.eps_prime, Interval.point(R), p)
        r = self.stage("inner_radius", inner_radius, g, R, cfg.bound.n_cover, padding)
        self.fields["inner_r"] = r.to_list()

        C = self.stage("const_C", const_C, p, split.K, R, r, A)
        self.fields["C"] = C.to_list()

        rho = self.stage("bound", positivity_radius, g, A, ball.eps_prime, C, R, p)
        self.fields["positivity_radius"] = rho
        if not rho > 0.0:
            raise StageFailure("bound", "Denominator of the bound is not certified positive near 0.")

        report = BoundReport(
            status=Status.CERTIFIED, p=p, R=R, varrho=cfg.geometry.inner_cutoff, created=now(), **self.fields
        ).attach(g)
        report.bounds = self.stage("bound", self.evaluate, report, cfg.bound.points)
        problems = report.soundness()
        if problems:
            raise StageFailure("soundness", f"Links that do not re-verify: {', '.join(problems)}.")
        return report

    def certify_pipeline(self) -> BoundReport:
        """
        Runs every stage and writes the report, certified or failed, next to the
        other artifacts.
        """
        cfg = self.config
        try:
            report = self.certify()
        except StageFailure as failure:
            report = BoundReport.failed(
                failure, p=cfg.p, R=cfg.geometry.outer_cutoff, varrho=cfg.geometry.inner_cutoff, **self.fields
            )
        report.artifacts = dict(self.artifacts)
        path = report.dump(self.output.directory / REPORT_NAME)
        if report.certified:
            self.log.info(f"Certified: eps' <= {report.eps_prime[1]:.6e}, C <= {report.C[1]:.6e}, report {path}.")
        else:
            self.log.info(f"Failed at stage {report.stage}, report {path}.")
        return report
