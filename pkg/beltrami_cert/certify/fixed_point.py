"""
The fixed point h* of T_nu[h] = T[nu (h + 1)] and the ball around it that
contains the fixed point of T_{nu + eta}.

Iterates run in midpoint arithmetic; rigor enters in `verify_ball`, which
checks ||T_nu[h*] - h*||_p + C_p eps' <= eps with eps' = delta sup|h* + 1| + K eps.
"""

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from beltrami_cert.certify.constants import contraction
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.transforms.grid import RadialGrid
from beltrami_cert.transforms.lpstd import LpStd
from beltrami_cert.transforms.operators import cauchy_transform, cp_constant, hilbert_transform
from beltrami_cert.utils import DomainError, VerificationError, get_logger

DEFAULT_ITERS = 30
EPS_GROWTH = 1.25
EPS_MAX_STEPS = 200
GROWTH_PATIENCE = 3

log = get_logger(__name__)


def unit(grid: RadialGrid, p: float) -> LpStd:
    """The constant 1 on the grid."""
    return LpStd.single(grid, 0, np.ones(grid.n_cells), p)


def apply_T_nu(nu: LpStd, h: LpStd) -> LpStd:
    return hilbert_transform(nu.multiply(h + unit(nu.grid, nu.p)))


def default_window(nu: LpStd) -> tuple[int, int]:
    """T shifts modes down by two, so T[nu] lives on nu's window minus 2."""
    return nu.kmin - 2, nu.kmax - 2


def t_nu_iterates(nu: LpStd, h0: LpStd, window: tuple[int, int] | None = None) -> Iterator[tuple[LpStd, float]]:
    """
    Midpoint iterates of T_nu restricted to a mode window, each with the
    L_p norm of its step.
    """
    lo, hi = window or default_window(nu)
    nu = nu.midpoint()
    h = h0.midpoint().window(lo, hi, account=False)
    while True:
        image = apply_T_nu(nu, h).midpoint().window(lo, hi, account=False)
        step = (image - h).lp_norm().hi
        h = image
        yield h, step


def iterate_T_nu(nu: LpStd, h0: LpStd, iters: int = DEFAULT_ITERS, window: tuple[int, int] | None = None) -> LpStd:
    """
    Approximate fixed point of T_nu after `iters` steps, or earlier once a
    step vanishes. Warns when the steps grow three times in a row.
    """
    if iters < 1:
        raise DomainError(f"Iteration count must be positive, got {iters}.")
    previous, growth = math.inf, 0
    h = h0
    for j, (h, step) in zip(range(iters), t_nu_iterates(nu, h0, window)):
        log.debug(f"T_nu iterate {j + 1}: step {step:.3e}.")
        growth = growth + 1 if step > previous else 0
        if growth == GROWTH_PATIENCE:
            log.warning(f"T_nu steps grew {GROWTH_PATIENCE} times in a row (last {step:.3e}); contraction violated?")
        previous = step
        if step == 0.0:
            break
    log.info(f"Fixed point iteration stopped after {j + 1} steps, last step {previous:.3e}.")
    return h


@dataclass(frozen=True)
class BallCheck:
    ok: bool
    eps: float
    eps_prime: Interval
    residual: Interval
    sup_h_plus_one: Interval
    lhs: Interval

    @property
    def margin(self) -> float:
        return self.eps - self.lhs.hi

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "eps": self.eps,
            "eps_prime": self.eps_prime.to_list(),
            "residual": self.residual.to_list(),
            "sup_h_plus_one": self.sup_h_plus_one.to_list(),
            "lhs": self.lhs.to_list(),
        }


def ball_inputs(nu: LpStd, h_star: LpStd) -> tuple[Interval, Interval]:
    """||T_nu[h*] - h*||_p and sup over D_R of |h* + 1|, both rigorous."""
    if h_star.has_error():
        raise DomainError("The approximate fixed point must be a finite series without an error part.")
    if h_star.grid != nu.grid:
        raise DomainError(f"h* lives on a grid up to {h_star.grid.outer}, nu up to {nu.grid.outer}.")
    residual = (apply_T_nu(nu, h_star) - h_star).lp_norm()
    sup = Interval(0.0, float(np.max(h_star.sup_modulus(offset=1.0))))
    return residual, sup


def check_ball(residual: Interval, sup: Interval, eps: float, delta: Interval, K: Interval, p: float) -> BallCheck:
    contraction(p, K)
    eps_prime = Interval.of(delta) * sup + Interval.of(K) * eps
    lhs = residual + cp_constant(p) * eps_prime
    return BallCheck(lhs.hi <= eps, eps, eps_prime, residual, sup, lhs)


def verify_ball(nu: LpStd, h_star: LpStd, eps: float, delta: Interval, K: Interval, p: float) -> BallCheck:
    if p != nu.p:
        raise DomainError(f"Exponent {p} differs from the one of nu, {nu.p}.")
    residual, sup = ball_inputs(nu, h_star)
    check = check_ball(residual, sup, eps, delta, K, p)
    log.info(f"Ball check at eps = {eps:.6e}: lhs {check.lhs.hi:.6e}, ok = {check.ok}.")
    return check


def select_eps(
    nu: LpStd,
    h_star: LpStd,
    delta: Interval,
    K: Interval,
    p: float,
    growth: float = EPS_GROWTH,
    max_steps: int = EPS_MAX_STEPS,
) -> BallCheck:
    """
    Smallest eps on the geometric ladder from
    (2 ||T_nu[h*] - h*||_p + C_p delta sup|h* + 1|) / (1 - K C_p) that passes the
    ball check. With delta = 0 the start is the usual 2 ||T_nu[h*] - h*||_p / (1 - K C_p).

    Raises:
        VerificationError: if no eps on the ladder passes.
    """
    if growth <= 1.0:
        raise DomainError(f"Growth factor must exceed 1, got {growth}.")
    if max_steps < 1:
        raise DomainError(f"The eps ladder needs at least one step, got {max_steps}.")
    residual, sup = ball_inputs(nu, h_star)
    kc = contraction(p, K)
    eps = (2.0 * residual + cp_constant(p) * Interval.of(delta) * sup).hi / (1.0 - kc.hi)
    eps = max(eps, np.finfo(float).tiny)
    for _ in range(max_steps):
        check = check_ball(residual, sup, eps, delta, K, p)
        if check.ok:
            log.info(f"Ball verified: eps = {eps:.6e}, eps' <= {check.eps_prime.hi:.6e}.")
            return check
        eps *= growth
    raise VerificationError(f"No ball radius up to {eps:.3e} passes: lhs {check.lhs.hi:.3e}.")


def g_star(nu: LpStd, h_star: LpStd, extend_to: float) -> LpStd:
    """The series part of g_*(z) - z = P[nu (h* + 1)](z), normalized to vanish at 0."""
    product = nu.multiply(h_star + unit(nu.grid, nu.p))
    return cauchy_transform(product, normalized=True, extend_to=extend_to)
