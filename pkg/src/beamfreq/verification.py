"""Independent oracles and residual checks.

Nothing in here reuses the closed-form kernel algebra it is checking:
expm_series_oracle exponentiates the raw companion matrix by scaling and
squaring, fd_bvp_oracle solves the boundary value problem by sparse finite
differences, and residual_check pushes the reconstructed solution back
through the governing equations.
"""

import math
from typing import NamedTuple

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from .beam_model import ModelKind, OutputKind
from .numeric import Overflow, SingularDiscretization
from .timoshenko import TbSolution, tb_aux, tb_coeffs
from .euler_bernoulli import EbSolution


class ResidualReport(NamedTuple):
    ode_residual: float        # relative, worst sample point
    bc_residual: float         # absolute over max |state|
    interface_residual: float  # relative to |U| / field scale
    samples: int


def expm_series_oracle(companion, x):
    """e^{x*companion} by scaling-and-squaring with a truncated Taylor series.

    Independent of the closed-form kernel assembly: works directly on the
    4x4 companion matrix. Accuracy target 1e-12 relative for
    ||x*companion|| <= 50.
    """
    B = np.asarray(companion, dtype=complex) * x
    norm = np.abs(B).sum(axis=1).max()
    if not np.isfinite(norm) or norm > 2.0 ** 60:
        raise Overflow("||x*A|| = %g too large for the series oracle" % norm)
    k = 0
    while norm > 1.0:
        norm *= 0.5
        k += 1
    B /= 2.0 ** k
    acc = np.eye(4, dtype=complex)
    term = np.eye(4, dtype=complex)
    for j in range(1, 60):
        term = term @ B / j
        acc += term
        if np.abs(term).max() <= 1e-18 * np.abs(acc).max():
            break
    for _ in range(k):
        acc = acc @ acc
    if not np.all(np.isfinite(acc)):
        raise Overflow("matrix exponential overflowed during squaring")
    return acc


# one-sided first-derivative stencils at a segment edge, factor 1/(2h)
_BWD1 = ((0, 3.0), (-1, -4.0), (-2, 1.0))
_FWD1 = ((0, -3.0), (1, 4.0), (2, -1.0))


def fd_bvp_oracle(model, p, dp, s, ellk, kind, n_nodes=4000):
    """Finite-difference solve of the two-segment boundary value problem.

    Discretizes the governing displacement ODE in mixed form (unknowns W and
    P = W'') with second-order central differences on each segment, duplicated
    nodes at ell0, and the printed boundary/interface conditions as constraint
    rows; n_nodes counts grid intervals over the whole beam, split between the
    segments in proportion to their lengths. Returns the discrete H at ellk
    for unit input.

    The mixed form exists for accuracy: a direct 5-point W'''' stencil loses
    digits to cancellation at fine grids, and discretizing the coupled
    (W, Psi) system carries an error constant of order K h^2 / (12 EI), which
    at n = 4000 sits near 8e-3, too coarse to adjudicate anything.
    """
    if n_nodes < 500:
        raise ValueError("n_nodes must be at least 500")
    s2 = s * s
    if model is ModelKind.Timoshenko:
        cP2 = dp.Kshear * dp.EI
        cP0 = -(dp.rho * dp.EI + dp.Kshear * dp.I_rho) * s2
        cW0 = (dp.Kshear + dp.I_rho * s2) * dp.rho * s2
        v1 = dp.rho * s2 / dp.Kshear
        v = dp.Kshear / dp.EI - dp.rho * s2 / dp.Kshear
    else:
        cP2 = dp.EI
        cP0 = 0.0
        cW0 = dp.rho * s2
        v1 = 0.0

    n1 = round(n_nodes * p.ell0 / p.ell)
    n2 = n_nodes - n1
    h1, h2 = p.ell0 / n1, (p.ell - p.ell0) / n2
    N1, N2 = n1 + 1, n2 + 1
    oW1, oP1 = 0, N1
    oW2, oP2 = 2 * N1, 2 * N1 + N2
    n = 2 * (N1 + N2)
    rows, cols, vals = [], [], []
    rhs = np.zeros(n, dtype=complex)
    eq = 0

    def add(r, c, coefficient):
        rows.append(r)
        cols.append(c)
        vals.append(coefficient)

    for (oW, oP, h, nseg) in ((oW1, oP1, h1, n1), (oW2, oP2, h2, n2)):
        for i in range(1, nseg):
            # defining relation W'' = P
            add(eq, oW + i - 1, 1.0 / h ** 2)
            add(eq, oW + i, -2.0 / h ** 2)
            add(eq, oW + i + 1, 1.0 / h ** 2)
            add(eq, oP + i, -1.0)
            eq += 1
            # governing ODE: cP2 P'' + cP0 P + cW0 W = 0
            add(eq, oP + i - 1, cP2 / h ** 2)
            add(eq, oP + i, -2.0 * cP2 / h ** 2 + cP0)
            add(eq, oP + i + 1, cP2 / h ** 2)
            add(eq, oW + i, cW0)
            eq += 1

    # pinned ends: W = 0 and moment-free W'' - v1 W = 0 (v1 = 0 slender)
    add(eq, oW1 + 0, 1.0); eq += 1
    add(eq, oW2 + N2 - 1, 1.0); eq += 1
    add(eq, oP1 + 0, 1.0)
    if v1 != 0.0:
        add(eq, oW1 + 0, -v1)
    eq += 1
    add(eq, oP2 + N2 - 1, 1.0)
    if v1 != 0.0:
        add(eq, oW2 + N2 - 1, -v1)
    eq += 1

    # interface: displacement and curvature state continuous
    add(eq, oW1 + N1 - 1, 1.0); add(eq, oW2 + 0, -1.0); eq += 1
    add(eq, oP1 + N1 - 1, 1.0); add(eq, oP2 + 0, -1.0); eq += 1

    if model is ModelKind.Timoshenko:
        # rotation continuity: [P' + v W'] = 0 (the common u factor cancels)
        for off, cm in _BWD1:
            add(eq, oP1 + N1 - 1 + off, cm / (2 * h1))
            add(eq, oW1 + N1 - 1 + off, v * cm / (2 * h1))
        for off, cm in _FWD1:
            add(eq, oP2 + off, -cm / (2 * h2))
            add(eq, oW2 + off, -v * cm / (2 * h2))
        eq += 1
        # shear force jump through the attachment
        for off, cm in _BWD1:
            add(eq, oW1 + N1 - 1 + off, dp.Kshear * cm / (2 * h1))
        for off, cm in _FWD1:
            add(eq, oW2 + off, -dp.Kshear * cm / (2 * h2))
        add(eq, oW1 + N1 - 1, p.m_att * s2 + p.d * s + p.kappa)
        rhs[eq] = 1.0
        eq += 1
    else:
        # slope continuity
        for off, cm in _BWD1:
            add(eq, oW1 + N1 - 1 + off, cm / (2 * h1))
        for off, cm in _FWD1:
            add(eq, oW2 + off, -cm / (2 * h2))
        eq += 1
        # shear force jump: EI (W'''(l0+) - W'''(l0-)) + attachment term
        for off, cm in _FWD1:
            add(eq, oP2 + off, dp.EI * cm / (2 * h2))
        for off, cm in _BWD1:
            add(eq, oP1 + N1 - 1 + off, -dp.EI * cm / (2 * h1))
        add(eq, oW1 + N1 - 1, p.m_att * s2 + p.d * s + p.kappa)
        rhs[eq] = 1.0
        eq += 1

    assert eq == n
    A = scipy.sparse.csc_matrix((vals, (rows, cols)), shape=(n, n))
    try:
        sol = scipy.sparse.linalg.spsolve(A, rhs)
    except RuntimeError as exc:
        raise SingularDiscretization(str(exc)) from exc
    if not np.all(np.isfinite(sol.real)) or not np.all(np.isfinite(sol.imag)):
        raise SingularDiscretization("non-finite FD solution")

    if ellk <= p.ell0:
        idx = round(ellk / h1)
        wk, pk = sol[oW1 + idx], sol[oP1 + idx]
    else:
        idx = round((ellk - p.ell0) / h2)
        wk, pk = sol[oW2 + idx], sol[oP2 + idx]
    if kind is OutputKind.Displacement:
        return complex(wk)
    return complex(pk - v1 * wk)


def _solution(model, p, dp, s, U=1.0, corrupt=None):
    if model is ModelKind.Timoshenko:
        return TbSolution(dp, p, s, U=U, corrupt=corrupt)
    return EbSolution(dp, p, s, U=U, corrupt=corrupt)


def residual_check(model, p, dp, s, ellk, npts=20, _corrupt=None):
    """Push the reconstructed solution back through the governing equations.

    Evaluates the displacement ODE at npts interior points per segment
    (term-normalized), the four end conditions, and the interface
    continuity/jump rows. ellk only tags the report; residuals cover the
    whole beam.
    """
    sol = _solution(model, p, dp, s, corrupt=_corrupt)
    U = sol.U
    s2 = s * s

    def ode_rel(x):
        # componentwise relative residual: the denominator adds the
        # magnitudes of every kernel product before cancellation, so the
        # measure stays meaningful where the branches grow exponentially
        w, _, w2, _, w4 = sol.state(x)
        ws, _, w2s, _, w4s = sol.state_scale(x)
        if model is ModelKind.Timoshenko:
            t4 = dp.Kshear * dp.EI * w4
            t2 = -(dp.rho * dp.EI + dp.Kshear * dp.I_rho) * s2 * w2
            t0 = (dp.Kshear + dp.I_rho * s2) * dp.rho * s2 * w
            scale = (dp.Kshear * dp.EI * w4s
                     + abs((dp.rho * dp.EI + dp.Kshear * dp.I_rho) * s2) * w2s
                     + abs((dp.Kshear + dp.I_rho * s2) * s2) * dp.rho * ws)
        else:
            t4 = (dp.EI / dp.rho) * w4
            t2 = 0.0
            t0 = s2 * w
            scale = (dp.EI / dp.rho) * w4s + abs(s2) * ws
        return abs(t4 + t2 + t0) / scale if scale > 0 else 0.0

    xs = [p.ell0 * (i + 0.5) / npts for i in range(npts)]
    xs += [p.ell0 + (p.ell - p.ell0) * (i + 0.5) / npts for i in range(npts)]
    ode_res = max(ode_rel(x) for x in xs)

    if model is ModelKind.Timoshenko:
        v1 = tb_aux(dp, p, s).v1
    else:
        v1 = 0.0
    bc = 0.0
    for xend, seg in ((0.0, "left"), (p.ell, "right")):
        w, _, w2, _ = sol.w_sided(xend, seg)
        ws, _, w2s, _, _ = sol.state_scale(xend, seg)
        bc = max(bc, abs(w) / (ws or 1.0),
                 abs(w2 - v1 * w) / ((w2s + abs(v1) * ws) or 1.0))

    # interface rows at ell0: continuity of W, Psi, Psi', then the force jump
    wl, w1l, w2l, w3l = sol.w_sided(p.ell0, "left")
    wr, w1r, w2r, w3r = sol.w_sided(p.ell0, "right")
    wls, w1ls, w2ls, w3ls, _ = sol.state_scale(p.ell0, "left")
    wrs, w1rs, w2rs, w3rs, _ = sol.state_scale(p.ell0, "right")
    att = (p.m_att * s2 + p.d * s + p.kappa)
    iface = abs(wl - wr) / ((wls + wrs) or 1.0)
    if model is ModelKind.Timoshenko:
        u = sol.aux.u
        v = sol.aux.v
        psi_l, psi_r = u * (w3l + v * w1l), u * (w3r + v * w1r)
        psis = abs(u) * (w3ls + w1ls + w3rs + w1rs) * max(1.0, abs(v))
        iface = max(iface, abs(psi_l - psi_r) / (psis or 1.0))
        dpsi_l, dpsi_r = w2l - v1 * wl, w2r - v1 * wr
        dpsis = w2ls + w2rs + abs(v1) * (wls + wrs)
        iface = max(iface, abs(dpsi_l - dpsi_r) / (dpsis or 1.0))
        force = dp.Kshear * (w1l - w1r) + att * wl - U
        fscale = dp.Kshear * (w1ls + w1rs) + abs(att) * wls + abs(U)
    else:
        iface = max(iface, abs(w1l - w1r) / ((w1ls + w1rs) or 1.0))
        iface = max(iface, abs(w2l - w2r) / ((w2ls + w2rs) or 1.0))
        force = dp.EI * (w3r - w3l) + att * wl - U
        fscale = dp.EI * (w3ls + w3rs) + abs(att) * wls + abs(U)
    iface = max(iface, abs(force) / fscale)

    return ResidualReport(ode_residual=ode_res, bc_residual=bc,
                          interface_residual=iface, samples=2 * npts)


def h2_consistency(p, dp, s, ellk, U=1.0):
    """Relative gap between the printed curvature formula and W'' - v1 W.

    The two must agree identically: the curvature output is Psi', and the
    first governing equation eliminates Psi' as W'' - (rho s^2/K) W.
    """
    from .timoshenko import tb_transfer
    h2 = tb_transfer(dp, p, s, ellk, OutputKind.Curvature) * U
    sol = TbSolution(dp, p, s, U=U)
    w, _, w2, _, _ = sol.state(ellk)
    v1 = sol.aux.v1
    direct = w2 - v1 * w
    denom = abs(h2)
    if denom == 0.0:
        return abs(h2 - direct)
    return abs(h2 - direct) / denom
