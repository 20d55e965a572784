"""
Hilbert and Cauchy transforms of L_p standard sets.

With T h = -(1/pi) p.v. int h(w) / (w - z)^2 and C h = -(1/pi) int h(w) / (w - z),
an input mode s(r) e^{ik phi} is sent to

    T: output mode k - 2,  t(r) = s(r) - 2(k-1) r^{k-2} int_r^inf s rho^{1-k}   (k >= 1)
                           t(r) = s(r) + 2(k-1) r^{k-2} int_0^r  s rho^{1-k}   (k <= 0)
    C: output mode k - 1,  c(r) = -2 r^{k-1} int_r^inf s rho^{1-k}              (k >= 1)
                           c(r) =  2 r^{k-1} int_0^r  s rho^{1-k}               (k <= 0)

On a piecewise-constant input the integrals collapse to recursions over the
cells. Every recursion is anchored at cell edges, so only ratios
(e_m / e_{m+1})^n <= 1 are ever raised to a power.
"""

import numpy as np

from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor.balls import BallArray, down, up
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.rigor.rounding import TINY, U
from beltrami_cert.transforms.grid import RadialGrid
from beltrami_cert.transforms.lpstd import LpStd, error_bound
from beltrami_cert.utils import DomainError, get_logger

log = get_logger(__name__)


def cp_constant(p: float) -> Interval:
    """Bound cot^2(pi / 2p) on the L_p norm of the Hilbert transform."""
    if p <= 2.0:
        raise DomainError(f"The L_p bound needs p > 2, got {p}.")
    return ia.cot(ia.pi() / (Interval.of(p) * 2)).sqr()


# ---- tables ----


def _enclose(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Enclosure of quantities computed with at most two roundings from small integers."""
    values = np.asarray(values, dtype=np.float64)
    slack = np.abs(values) * 4.0 * U + TINY
    return values - slack, values + slack


def _power_table(grid: RadialGrid, exponents: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Bounds on (e_m / e_{m+1})^n, shape (len(exponents), cells)."""
    x = grid.ratios()
    n = np.asarray(exponents, dtype=np.float64)[:, None]
    v = np.power(x[None, :], n)
    slack = (n + 4.0) * 2.0 * U
    lo = np.maximum(v * (1.0 - slack) - TINY, 0.0)
    hi = np.minimum(v * (1.0 + slack) + TINY, 1.0)
    lo[:, x == 0.0] = 0.0
    hi[:, x == 0.0] = 0.0
    return lo, hi


def _weights(lo: np.ndarray, hi: np.ndarray, exponents: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Bounds on (1 - x^n) / n from bounds on x^n."""
    n = np.asarray(exponents, dtype=np.float64)[:, None]
    return down((1.0 - hi) / n, ops=2), up((1.0 - lo) / n, ops=2)


def _outer_sweep(a: BallArray, lo: np.ndarray, hi: np.ndarray, n: np.ndarray) -> BallArray:
    """
    Q_m = e_{m+1}^n sum_{i>m} a_i (e_i^{-n} - e_{i+1}^{-n}) / n, built inwards
    from Q = 0 on the last cell.
    """
    rows, cells = a.shape
    w_lo, w_hi = _weights(lo, hi, n)
    centers = np.zeros((rows, cells), dtype=np.complex128)
    radii = np.zeros((rows, cells))
    q = BallArray.zeros(rows)
    for m in range(cells - 2, -1, -1):
        q = a[:, m + 1].scale(w_lo[:, m + 1], w_hi[:, m + 1]) + q.scale(lo[:, m + 1], hi[:, m + 1])
        centers[:, m], radii[:, m] = q.centers, q.radii
    return BallArray(centers, radii)


def _inner_sweep(a: BallArray, lo: np.ndarray, hi: np.ndarray, n: np.ndarray) -> BallArray:
    """
    P_m = e_m^{-n} sum_{i<m} a_i (e_{i+1}^n - e_i^n) / n, built outwards from
    P_0 = 0. Column `cells` holds the value at the outer edge.
    """
    rows, cells = a.shape
    w_lo, w_hi = _weights(lo, hi, n)
    centers = np.zeros((rows, cells + 1), dtype=np.complex128)
    radii = np.zeros((rows, cells + 1))
    p = BallArray.zeros(rows)
    for m in range(cells):
        p = p.scale(lo[:, m], hi[:, m]) + a[:, m].scale(w_lo[:, m], w_hi[:, m])
        centers[:, m + 1], radii[:, m + 1] = p.centers, p.radii
    return BallArray(centers, radii)


def _inner_y(lo: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Range of (e_m / r)^n over each cell; identically 0 on the first cell."""
    hi = np.ones_like(lo)
    hi[:, 0] = 0.0
    lo = lo.copy()
    lo[:, 0] = 0.0
    return lo, hi


def _log_widths(grid: RadialGrid) -> list[Interval | None]:
    """ln(e_{m+1} / e_m) per cell; None for the first cell."""
    return [None] + [ia.ln(Interval.point(grid.edges[m + 1]) / grid.edges[m]) for m in range(1, grid.n_cells)]


def _log_sweep(a: BallArray, logs: list[Interval | None]) -> list[Disk]:
    """Q_m = sum_{i>m} a_i ln(e_{i+1} / e_i)."""
    cells = len(logs)
    q = [Disk(0j)] * cells
    for m in range(cells - 2, -1, -1):
        q[m] = q[m + 1] + a.disk(m + 1) * logs[m + 1]
    return q


def _assemble(grid: RadialGrid, kmin: int, rows: dict[int, BallArray], n_modes: int) -> BallArray:
    centers = np.zeros((n_modes, grid.n_cells), dtype=np.complex128)
    radii = np.zeros((n_modes, grid.n_cells))
    for index, block in rows.items():
        centers[index], radii[index] = block.centers, block.radii
    return BallArray(centers, radii)


def _scatter(indices: np.ndarray, block: BallArray) -> dict[int, BallArray]:
    return {int(i): block[j] for j, i in enumerate(indices)}


# ---- Hilbert ----


def _hilbert_tail(p_outer: BallArray, n: np.ndarray, grid: RadialGrid, p: float) -> float:
    """L_p norm bound on the decaying modes 2(k+1)(E/r)^n P_M beyond the grid."""
    total = Interval.point(0)
    outer_sq = Interval.point(grid.outer).sqr() * ia.two_pi()
    exponent = Interval.point(1) / Interval.of(p)
    magnitudes = p_outer.mag()
    for j, nj in enumerate(n):
        if magnitudes[j] == 0.0:
            continue
        base = outer_sq / (Interval.of(float(nj)) * p - 2)
        factor = Interval.point(2 * (int(nj) - 1)) * float(magnitudes[j])
        total = total + factor * ia.power(base, exponent)
    return total.hi


def _log_norm(magnitude: float, radius: float, p: float) -> float:
    """
    L_p norm bound on 2 a ln(radius / r) over |z| < radius, for |a| <= magnitude:
    2 |a| radius^{2/p} (2 pi Gamma(p+1) / 2^{p+1})^{1/p}.
    """
    if magnitude == 0.0:
        return 0.0
    p_iv = Interval.of(p)
    exponent = Interval.point(1) / p_iv
    inner = ia.two_pi() * ia.gamma(p_iv + 1) / ia.power(Interval.point(2), p_iv + 1)
    scale = ia.power(Interval.point(radius), exponent * 2)
    return (Interval.point(2) * magnitude * scale * ia.power(inner, exponent)).hi


def hilbert_transform(s: LpStd) -> LpStd:
    """
    T applied to s. Output mode k comes from input mode k + 2, so the window
    shifts down by two. The error norm is scaled by the L_p bound; the tail
    of negative modes beyond the grid and the logarithmic part coming from
    mode 2 on the first cell are added to it.
    """
    grid = s.grid
    out_kmin = s.kmin - 2
    ks = np.arange(out_kmin, s.kmax - 2 + 1)
    rows: dict[int, BallArray] = {}

    outer_idx = np.nonzero(ks >= 1)[0]
    if outer_idx.size:
        k = ks[outer_idx].astype(np.float64)
        a = s.coeffs[outer_idx]
        lo, hi = _power_table(grid, k)
        q = _outer_sweep(a, lo, hi, k)
        c1_lo, c1_hi = _enclose(-(k + 2.0) / k)
        c2_lo, c2_hi = _enclose(2.0 * (k + 1.0) / k)
        c3 = 2.0 * (k + 1.0)
        base = a.scale(c1_lo[:, None], c1_hi[:, None])
        slope = a.scale(c2_lo[:, None], c2_hi[:, None]) - q.scale(c3[:, None], c3[:, None])
        rows.update(_scatter(outer_idx, base + slope.scale(lo, np.ones_like(lo))))

    error = s.error.hi * cp_constant(s.p).hi if s.has_error() else 0.0
    zero_idx = np.nonzero(ks == 0)[0]
    if zero_idx.size:
        a = s.coeffs[int(zero_idx[0])]
        logs = _log_widths(grid)
        q = _log_sweep(a, logs)
        first = a.disk(0)
        values = [first - 2 * q[0]]
        error = error + _log_norm(first.mag, grid.edges[1], s.p)
        for m in range(1, grid.n_cells):
            am = a.disk(m)
            values.append(am - 2 * q[m] - 2 * (am * Interval(0.0, logs[m].hi)))
        rows[int(zero_idx[0])] = BallArray.from_disks(values)

    minus_one_idx = np.nonzero(ks == -1)[0]
    if minus_one_idx.size:
        rows[int(minus_one_idx[0])] = s.coeffs[int(minus_one_idx[0])]

    inner_idx = np.nonzero(ks <= -2)[0]
    if inner_idx.size:
        n = -ks[inner_idx].astype(np.float64)
        a = s.coeffs[inner_idx]
        lo, hi = _power_table(grid, n)
        pm = _inner_sweep(a, lo, hi, n)
        c1_lo, c1_hi = _enclose((2.0 - n) / n)
        inv_lo, inv_hi = _enclose(1.0 / n)
        c3 = 2.0 * (1.0 - n)
        base = a.scale(c1_lo[:, None], c1_hi[:, None])
        slope = (pm[:, :-1] - a.scale(inv_lo[:, None], inv_hi[:, None])).scale(c3[:, None], c3[:, None])
        y_lo, y_hi = _inner_y(lo)
        rows.update(_scatter(inner_idx, base + slope.scale(y_lo, y_hi)))
        tail = _hilbert_tail(pm[:, -1], n, grid, s.p)
        log.debug(f"Hilbert tail beyond r={grid.outer}: {tail}.")
        error = error + tail

    coeffs = _assemble(grid, out_kmin, rows, len(ks))
    return LpStd(grid, out_kmin, coeffs, error_bound(error), s.p)


# ---- Cauchy ----


def _extended(s: LpStd, extend_to: float | None) -> tuple[RadialGrid, BallArray]:
    if extend_to is None:
        return s.grid, s.coeffs
    if extend_to <= s.grid.outer:
        raise DomainError(f"Extension radius {extend_to} must exceed the grid edge {s.grid.outer}.")
    grid = RadialGrid(s.grid.edges + (extend_to,))
    pad = np.zeros((s.n_modes, 1))
    coeffs = BallArray(
        np.concatenate([s.coeffs.centers, pad.astype(np.complex128)], axis=1),
        np.concatenate([s.coeffs.radii, pad], axis=1),
    )
    return grid, coeffs


def cauchy_transform(s: LpStd, normalized: bool = True, extend_to: float | None = None) -> LpStd:
    """
    C applied to the series part of s; with `normalized` the value at 0 is
    subtracted. The output lives on the grid extended by one empty cell up to
    `extend_to`, where the negative modes still decay like r^{k-1}.
    """
    if s.has_error():
        raise DomainError("The Cauchy transform acts on the series part only; drop the error first.")
    grid, coeffs = _extended(s, extend_to)
    out_kmin = s.kmin - 1
    js = np.arange(out_kmin, s.kmax - 1 + 1)
    edges = np.asarray(grid.edges)
    r_lo, r_hi = edges[:-1][None, :], edges[1:][None, :]
    rows: dict[int, BallArray] = {}

    outer_idx = np.nonzero(js >= 2)[0]
    if outer_idx.size:
        e = js[outer_idx].astype(np.float64) - 1.0
        a = coeffs[outer_idx]
        lo, hi = _power_table(grid, e)
        q = _outer_sweep(a, lo, hi, e)
        inv_lo, inv_hi = _enclose(1.0 / e)
        a_over = a.scale(inv_lo[:, None], inv_hi[:, None])
        inner = a_over + (q - a_over).scale(lo, np.ones_like(lo))
        rows.update(_scatter(outer_idx, inner.scale(-2.0 * r_hi, -2.0 * r_lo)))

    one_idx = np.nonzero(js == 1)[0]
    if one_idx.size:
        a = coeffs[int(one_idx[0])]
        logs = _log_widths(grid)
        q = _log_sweep(a, logs)
        values = []
        for m in range(grid.n_cells):
            r = grid.cell(m)
            r_log = Interval(0.0, (Interval.point(grid.edges[m + 1]) * ia.exp(-1)).hi)
            if logs[m] is not None:
                r_log = Interval(0.0, min(r_log.hi, (r * logs[m]).hi))
            values.append(-2 * (a.disk(m) * r_log + q[m] * r))
        rows[int(one_idx[0])] = BallArray.from_disks(values)

    zero_idx = np.nonzero(js == 0)[0]
    if zero_idx.size:
        a = coeffs[int(zero_idx[0])]
        widths = [Interval.point(grid.edges[m + 1]) - grid.edges[m] for m in range(grid.n_cells)]
        values = []
        if normalized:
            below = Disk(0j)
            for m in range(grid.n_cells):
                values.append(2 * (below + a.disk(m) * Interval(0.0, widths[m].hi)))
                below = below + a.disk(m) * widths[m]
        else:
            above = Disk(0j)
            for m in range(grid.n_cells - 1, -1, -1):
                values.append(-2 * (above + a.disk(m) * Interval(0.0, widths[m].hi)))
                above = above + a.disk(m) * widths[m]
            values.reverse()
        rows[int(zero_idx[0])] = BallArray.from_disks(values)

    inner_idx = np.nonzero(js <= -1)[0]
    if inner_idx.size:
        e = 1.0 - js[inner_idx].astype(np.float64)
        a = coeffs[inner_idx]
        lo, hi = _power_table(grid, e)
        pm = _inner_sweep(a, lo, hi, e)
        inv_lo, inv_hi = _enclose(1.0 / e)
        a_over = a.scale(inv_lo[:, None], inv_hi[:, None])
        y_lo, y_hi = _inner_y(lo)
        inner = a_over + (pm[:, :-1] - a_over).scale(y_lo, y_hi)
        rows.update(_scatter(inner_idx, inner.scale(2.0 * r_lo, 2.0 * r_hi)))

    result = _assemble(grid, out_kmin, rows, len(js))
    return LpStd(grid, out_kmin, result, Interval(0.0, 0.0), s.p)
