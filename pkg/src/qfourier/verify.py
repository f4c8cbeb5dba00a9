"""Numerical verification suites.

Each check produces a residual and a tolerance, and passes when the
residual is at most the tolerance. Two checks measure trends rather than
identities: ``derivative_*_order`` reports ``|ratio - 4|`` for the error
ratio between a grid and its refinement (second order gives 4), and
``poisson_smoothing_monotone`` reports the largest ratio of consecutive
smoothing residuals, which must stay below 1.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .qft import (NormalizationMode, TransformKind, TransformPlan, beta_relation_check,
                  derivative_residual, dqft, dqft_direct, idqft, multiplication_check,
                  poisson_energy, poisson_smooth, qft_on)
from .qlct import (LCTParams, QLCTConfig, irqlct, isqlct, rqlct, rqlct_direct,
                   rqlct_via_split, sqlct, sqlct_direct)
from .quat import CANONICAL, AxisConfig, qexp_pure, qmul
from .signal import Grid2D, QSignal2D, inner_product, lp_norm

SUITES = ("qft", "sqft", "qlct", "all")

# parameter sets used by the QLCT oracle checks
QLCT_PARAMS = (LCTParams(0, 1, -1, 0), LCTParams(1, 1, 0, 1), LCTParams(1, 2, 0, 1))


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} residual={self.residual:.3e} tolerance={self.tolerance:.1e}"


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, name: str, residual: float, tolerance: float) -> None:
        self.checks.append(Check(name, float(residual), float(tolerance)))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks]
        n_ok = sum(c.passed for c in self.checks)
        out.append(f"SUMMARY {n_ok}/{len(self.checks)} passed in {self.elapsed:.2f}s")
        return out


def _rel(a: QSignal2D, b: QSignal2D) -> float:
    nb = lp_norm(b)
    return lp_norm(a - b) / nb if nb > 0 else lp_norm(a - b)


def _qdiff(p, q) -> float:
    return float(np.max(np.abs(p.as_array() - q.as_array())))


def _c_valued(f: QSignal2D, axis: AxisConfig) -> QSignal2D:
    c = f.components(axis)
    z = np.zeros_like(c[..., 0])
    return QSignal2D.from_components(f.grid, (c[..., 0], c[..., 1], z, z), axis)


def _even_x1(f: QSignal2D) -> QSignal2D:
    idx = (-np.arange(f.grid.m)) % f.grid.m
    return f.with_data(0.5 * (f.data + f.data[idx]))


def _small(f: QSignal2D, rng, size: int = 8) -> QSignal2D:
    if f.grid.m * f.grid.n <= 256:
        return f
    return QSignal2D.random(Grid2D.centered(size, size, 0.5), rng)


# --------------------------------------------------------------------------
# suites


def suite_qft(report: VerifyReport, f: QSignal2D, axis: AxisConfig, rng, scale: float):
    tol = 1e-12 * scale
    g = QSignal2D.random(f.grid, rng)
    small = _small(f, rng)
    for kind in TransformKind:
        plan = TransformPlan(f.grid, kind, axis)
        F = dqft(f, plan)
        nf = lp_norm(f)
        report.add(f"plancherel_{kind.value}", abs(lp_norm(F) - nf) / nf, tol)
        report.add(f"inversion_{kind.value}", _rel(idqft(F, plan), f), tol)
        sp = TransformPlan(small.grid, kind, axis)
        report.add(f"oracle_{kind.value}", _rel(dqft(small, sp), dqft_direct(small, sp)), tol)

    plan = TransformPlan(f.grid, TransformKind.RIGHT, axis)
    fn, gn = f.scale(1 / lp_norm(f)), g.scale(1 / lp_norm(g))
    ip = inner_product(fn, gn)
    ipF = inner_product(dqft(fn, plan), dqft(gn, plan))
    report.add("inner_product_right", _qdiff(ip, ipF), tol)
    report.add("multiplication_right", multiplication_check(small, _small(g, rng),
                                                            TransformPlan(small.grid, axis=axis)), tol)

    # derivative identities: second-order finite-difference convergence
    q1, q2 = rng.standard_normal(4), rng.standard_normal(4)
    for which in ("d1", "d2", "d12"):
        errs = []
        for n, dx in ((128, 0.1), (256, 0.05)):
            grid = Grid2D.centered(n, n, dx)
            errs.append(derivative_residual(_bumps(grid, q1, q2), which, TransformPlan(grid, axis=axis)))
        ratio = errs[0] / errs[1]
        report.add(f"derivative_{which}_order", abs(ratio - 4.0), 0.5 * scale)

    # Poisson / Abel
    grid = Grid2D.centered(16, 16, 0.05)
    h = QSignal2D.random(grid, rng)
    spatial, spectral = poisson_energy(h, 0.4, TransformPlan(grid, axis=axis,
                                                          mode=NormalizationMode.ANALYTIC))
    report.add("poisson_energy", abs(spatial - spectral) / abs(spectral), 1e-8 * scale)
    grid = Grid2D.centered(64, 64, 0.25)
    smooth = _bumps(grid, q1, q2)
    res = [lp_norm(poisson_smooth(smooth, e, TransformPlan(grid, axis=axis)) - smooth)
           for e in (0.8, 0.4, 0.2, 0.1)]
    worst = max(b / a for a, b in zip(res, res[1:]))
    report.add("poisson_smoothing_monotone", worst, 1.0 - 1e-9)


def suite_sqft(report: VerifyReport, f: QSignal2D, axis: AxisConfig, rng, scale: float):
    tol = 1e-12 * scale
    plan = TransformPlan(f.grid, TransformKind.TWO, axis)
    if f.grid.is_wrap_symmetric():
        report.add("beta_relation", beta_relation_check(f, plan), tol)
    sym = QSignal2D.random(Grid2D.centered(8, 8, 0.5), rng)
    splan = TransformPlan(sym.grid, TransformKind.TWO, axis)
    report.add("beta_relation_random", beta_relation_check(sym, splan), tol)
    rplan = splan.with_kind(TransformKind.RIGHT)
    for label, h in (("c_valued", _c_valued(sym, axis)), ("even_x1", _even_x1(sym))):
        report.add(f"sqft_equals_rqft_{label}", _rel(dqft(h, splan), dqft(h, rplan)), tol)

    g = QSignal2D.random(sym.grid, rng)
    fn, gn = sym.scale(1 / lp_norm(sym)), g.scale(1 / lp_norm(g))
    p = inner_product(fn, gn).as_array() @ axis.basis().T
    qv = inner_product(dqft(fn, splan), dqft(gn, splan)).as_array() @ axis.basis().T
    report.add("partial_parseval_p0_p1", float(np.max(np.abs(p[:2] - qv[:2]))), tol)
    for label, mk in (("c_valued", lambda s: _c_valued(s, axis)), ("even_x1", _even_x1)):
        a, b = mk(fn), mk(gn)
        ip = inner_product(a, b)
        ipF = inner_product(dqft(a, splan), dqft(b, splan))
        report.add(f"partial_parseval_all_{label}", _qdiff(ip, ipF), tol)


def suite_qlct(report: VerifyReport, f: QSignal2D, axis: AxisConfig, rng, scale: float,
               size: int = 8):
    grid = Grid2D.centered(size, size, 0.5)
    h = QSignal2D.random(grid, rng)
    tol_o = 1e-9 * scale
    for A in QLCT_PARAMS:
        cfg = QLCTConfig(A, A, axis)
        tag = f"({A.a:g},{A.b:g},{A.c:g},{A.d:g})"
        report.add(f"sqlct_fast_vs_direct{tag}", _rel(sqlct(h, cfg), sqlct_direct(h, cfg)), tol_o)
        report.add(f"rqlct_cascade_vs_direct{tag}", _rel(rqlct(h, cfg), rqlct_direct(h, cfg)), tol_o)

    cfg = QLCTConfig(LCTParams(1, 1, 0, 1), LCTParams(2, -1, 1, 0), axis)
    report.add("rqlct_via_split", _rel(rqlct_via_split(h, cfg), rqlct(h, cfg)), 1e-10 * scale)
    hc = _c_valued(h, axis)
    report.add("rqlct_equals_sqlct_c_valued", _rel(rqlct(hc, cfg), sqlct(hc, cfg)), 1e-12 * scale)

    four = LCTParams.fourier()
    fcfg = QLCTConfig(four, four, axis)
    S = sqlct_direct(h, fcfg)
    plan = TransformPlan(grid, TransformKind.TWO, axis, NormalizationMode.ANALYTIC)
    F = qft_on(h.data, grid, S.grid, TransformKind.TWO, axis, -1) * plan.forward_scale()
    e1 = qexp_pure(axis.u1.as_array(), -np.pi / 4)
    e2 = qexp_pure(axis.u2.as_array(), -np.pi / 4)
    report.add("sqlct_fourier_degeneration", _rel(S, S.with_data(qmul(qmul(e1, F), e2))), 1e-10 * scale)

    # discrete round trips and norm preservation, including b = 0 axes
    for label, cfg in (("b_nonzero", QLCTConfig(LCTParams(1, 2, 0, 1), LCTParams(2, -1, 1, 0), axis)),
                       ("b1_zero", QLCTConfig(LCTParams(2, 0, 0.3, 0.5), LCTParams(1, 1, 0, 1), axis))):
        target = f if f.grid.is_wrap_symmetric() else h
        S = sqlct(target, cfg)
        R = rqlct(target, cfg)
        nf = lp_norm(target)
        report.add(f"sqlct_roundtrip_{label}", _rel(isqlct(S, cfg, out_grid=target.grid), target), 1e-12 * scale)
        report.add(f"rqlct_roundtrip_{label}", _rel(irqlct(R, cfg, out_grid=target.grid), target), 1e-12 * scale)
        report.add(f"sqlct_parseval_{label}", abs(lp_norm(S) - nf) / nf, 1e-12 * scale)
        report.add(f"rqlct_parseval_{label}", abs(lp_norm(R) - nf) / nf, 1e-12 * scale)
    g = QSignal2D.random(grid, rng)
    ip = inner_product(h, g)
    report.add("rqlct_inner_product", _qdiff(ip, inner_product(rqlct(h, cfg), rqlct(g, cfg)))
               / (lp_norm(h) * lp_norm(g)), 1e-12 * scale)
    ipS = inner_product(sqlct(h, cfg), sqlct(g, cfg))
    sc_gap = max(abs(ip.w - ipS.w), abs(float(ip.as_array() @ axis.u1.as_array())
                                         - float(ipS.as_array() @ axis.u1.as_array())))
    report.add("sqlct_scalar_parts", sc_gap / (lp_norm(h) * lp_norm(g)), 1e-12 * scale)


def _bumps(grid: Grid2D, q1, q2) -> QSignal2D:
    x1, x2 = grid.mesh()
    a = np.exp(-((x1 - 0.7) ** 2 + (x2 + 0.4) ** 2) / (2 * 0.5 ** 2))
    b = np.exp(-((x1 + 1.0) ** 2 + (x2 - 0.9) ** 2) / (2 * 0.6 ** 2))
    return QSignal2D(grid, a[..., None] * q1 + b[..., None] * q2)


def run_verify(f: QSignal2D | None = None, suite: str = "all", axis: AxisConfig = CANONICAL,
               seed: int = 42, tolerance_scale: float = 1.0, grid_size: int = 8) -> VerifyReport:
    """Run one suite (or all) on ``f``; a synthetic 16x16 signal is used when ``f`` is None."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    rng = np.random.default_rng(seed)
    if f is None:
        f = QSignal2D.random(Grid2D.centered(16, 16, 0.5), rng)
    report = VerifyReport()
    t0 = time.perf_counter()
    if suite in ("qft", "all"):
        suite_qft(report, f, axis, rng, tolerance_scale)
    if suite in ("sqft", "all"):
        suite_sqft(report, f, axis, rng, tolerance_scale)
    if suite in ("qlct", "all"):
        suite_qlct(report, f, axis, rng, tolerance_scale, grid_size)
    report.elapsed = time.perf_counter() - t0
    return report
