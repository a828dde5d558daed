"""Slender-beam (Euler-Bernoulli) counterpart of the Timoshenko pipeline.

Same program: one wavenumber gamma, four kernels, a closed-form matrix
exponential, the 4x4 interface system, and the transfer functions. The
structure is simpler because the displacement ODE is W'''' = gamma^4 W.
"""

import cmath
from typing import NamedTuple

from .numeric import (
    NU_FLOOR_HZ, SMALL_ARG, OVERFLOW_RE,
    DegenerateFrequency, Overflow,
    solve4,
)

TWO_PI = 2.0 * cmath.pi


class EbWavenumber(NamedTuple):
    gamma: complex  # principal fourth root of -rho s^2 / EI


class ZKernel4(NamedTuple):
    z1: complex
    z2: complex
    z3: complex
    z4: complex


class EbInterfaceSystem(NamedTuple):
    Mt: tuple           # 4x4 complex
    rhs_scale: complex  # 2 / EI
    vt: complex         # (m s^2 + d s + kappa) / EI


def eb_gamma(dp, s):
    """Principal fourth root of -rho s^2 / EI; arg(gamma) in (-pi/4, pi/4].

    For s = i omega the radicand is real positive and gamma is real positive,
    which keeps sweep output exactly reproducible.
    """
    if abs(s) < TWO_PI * NU_FLOOR_HZ:
        raise DegenerateFrequency("|s| below the %.0e Hz frequency floor" % NU_FLOOR_HZ)
    w = -dp.rho * s * s / dp.EI
    return EbWavenumber(gamma=cmath.exp(0.25 * cmath.log(w)))


def eb_z(x, g):
    """Kernels z1..z4 = cosh+cos, (sinh+sin)/g, (cosh-cos)/g^2, (sinh-sin)/g^3.

    Small |g x| switches the three quotient kernels to series; each is smooth
    through g x = 0 but the raw differences cancel catastrophically there.
    """
    gm = g.gamma
    u = gm * x
    if abs(u.real) > OVERFLOW_RE:
        raise Overflow("|Re(gamma*x)| = %.1f exceeds exp guard" % abs(u.real))
    if abs(u) < SMALL_ARG:
        u4 = u ** 4
        z1 = 2.0 + u4 / 12.0 * (1.0 + u4 / 1680.0)
        z2 = x * (2.0 + u4 / 60.0 * (1.0 + u4 / 3024.0))
        z3 = x * x * (1.0 + u4 / 360.0 * (1.0 + u4 / 5040.0))
        z4 = x ** 3 * (1.0 / 3.0 + u4 / 2520.0 * (1.0 + u4 / 7920.0))
        return ZKernel4(z1, z2, z3, z4)
    ch, co = cmath.cosh(u), cmath.cos(u)
    sh, si = cmath.sinh(u), cmath.sin(u)
    return ZKernel4(
        z1=ch + co,
        z2=(sh + si) / gm,
        z3=(ch - co) / (gm * gm),
        z4=(sh - si) / (gm * gm * gm),
    )


def eb_expm(x, g):
    """Closed-form e^{x*A} with the 1/2 prefactor and gamma^4 subdiagonal."""
    z = eb_z(x, g)
    g4 = g.gamma ** 4
    rows = (
        (z.z1, z.z2, z.z3, z.z4),
        (g4 * z.z4, z.z1, z.z2, z.z3),
        (g4 * z.z3, g4 * z.z4, z.z1, z.z2),
        (g4 * z.z2, g4 * z.z3, g4 * z.z4, z.z1),
    )
    return tuple(tuple(0.5 * e for e in row) for row in rows)


def eb_companion(g):
    """Companion matrix of W'''' = gamma^4 W."""
    return (
        (0.0, 1.0, 0.0, 0.0),
        (0.0, 0.0, 1.0, 0.0),
        (0.0, 0.0, 0.0, 1.0),
        (g.gamma ** 4, 0.0, 0.0, 0.0),
    )


def eb_interface_matrix(dp, p, s):
    """Assemble the slender-model interface system exactly as printed."""
    g = eb_gamma(dp, s)
    s2 = s * s
    vt = (p.m_att * s2 + p.d * s + p.kappa) / dp.EI
    za = eb_z(p.ell0, g)
    zb = eb_z(p.ell0 - p.ell, g)
    g4 = g.gamma ** 4
    Mt = (
        (za.z2, za.z4, -zb.z2, -zb.z4),
        (za.z1, za.z3, -zb.z1, -zb.z3),
        (g4 * za.z4, za.z2, -g4 * zb.z4, -zb.z2),
        (vt * za.z2 - g4 * za.z3, vt * za.z4 - za.z1, g4 * zb.z3, zb.z1),
    )
    return EbInterfaceSystem(Mt=Mt, rhs_scale=2.0 / dp.EI, vt=vt)


def eb_solve_boundary(sys, U):
    rhs = (0.0, 0.0, 0.0, sys.rhs_scale * U)
    x, _ = solve4(sys.Mt, rhs)
    return x


class EbSolution:
    """State evaluator mirroring TbSolution, for the verification module."""

    def __init__(self, dp, p, s, U=1.0, corrupt=None):
        self.dp, self.p, self.s, self.U = dp, p, s, U
        self.g = eb_gamma(dp, s)
        sys = eb_interface_matrix(dp, p, s)
        if corrupt is not None:
            i, j, factor = corrupt
            Mt = [list(row) for row in sys.Mt]
            Mt[i][j] *= factor
            sys = EbInterfaceSystem(Mt=tuple(tuple(r) for r in Mt),
                                    rhs_scale=sys.rhs_scale, vt=sys.vt)
        self.bu = eb_solve_boundary(sys, U)

    def state(self, x):
        """(W, W', W'', W''', W'''') at x; branch chosen by x vs ell0."""
        g4 = self.g.gamma ** 4
        if x <= self.p.ell0:
            z = eb_z(x, self.g)
            c1, c3 = self.bu[0], self.bu[1]
        else:
            z = eb_z(x - self.p.ell, self.g)
            c1, c3 = self.bu[2], self.bu[3]
        w = 0.5 * (z.z2 * c1 + z.z4 * c3)
        w1 = 0.5 * (z.z1 * c1 + z.z3 * c3)
        w2 = 0.5 * (g4 * z.z4 * c1 + z.z2 * c3)
        w3 = 0.5 * (g4 * z.z3 * c1 + z.z1 * c3)
        w4 = g4 * w
        return w, w1, w2, w3, w4

    def w(self, x):
        return self.state(x)[0]

    def w_sided(self, x, side):
        g4 = self.g.gamma ** 4
        if side == "left":
            z = eb_z(x, self.g)
            c1, c3 = self.bu[0], self.bu[1]
        else:
            z = eb_z(x - self.p.ell, self.g)
            c1, c3 = self.bu[2], self.bu[3]
        w = 0.5 * (z.z2 * c1 + z.z4 * c3)
        w1 = 0.5 * (z.z1 * c1 + z.z3 * c3)
        w2 = 0.5 * (g4 * z.z4 * c1 + z.z2 * c3)
        w3 = 0.5 * (g4 * z.z3 * c1 + z.z1 * c3)
        return w, w1, w2, w3

    def state_scale(self, x, side=None):
        """Componentwise magnitudes of the state sums; see TbSolution."""
        g4 = abs(self.g.gamma) ** 4
        left = (x <= self.p.ell0) if side is None else (side == "left")
        if left:
            z = eb_z(x, self.g)
            c1, c3 = abs(self.bu[0]), abs(self.bu[1])
        else:
            z = eb_z(x - self.p.ell, self.g)
            c1, c3 = abs(self.bu[2]), abs(self.bu[3])
        w = 0.5 * (abs(z.z2) * c1 + abs(z.z4) * c3)
        w1 = 0.5 * (abs(z.z1) * c1 + abs(z.z3) * c3)
        w2 = 0.5 * (g4 * abs(z.z4) * c1 + abs(z.z2) * c3)
        w3 = 0.5 * (g4 * abs(z.z3) * c1 + abs(z.z1) * c3)
        w4 = g4 * w
        return w, w1, w2, w3, w4


def eb_transfer(dp, p, s, ellk, kind):
    """Transfer function for the slender model, unit input.

    H1 = (z2(xi) m14 + z4(xi) m24)/EI, H2 = (gamma^4 z4(xi) m14
    + z2(xi) m24)/EI, with the inverse-column entries realized by one solve;
    right branch for ellk > ell0 uses kernels at ellk - ell and columns 3-4.
    """
    from .beam_model import OutputKind
    U = 1.0
    g = eb_gamma(dp, s)
    sys = eb_interface_matrix(dp, p, s)
    bu = eb_solve_boundary(sys, U)
    EI = dp.EI
    g4 = g.gamma ** 4
    if ellk <= p.ell0:
        z = eb_z(ellk, g)
        m14 = bu[0] * EI / (2.0 * U)
        m24 = bu[1] * EI / (2.0 * U)
    else:
        z = eb_z(ellk - p.ell, g)
        m14 = bu[2] * EI / (2.0 * U)
        m24 = bu[3] * EI / (2.0 * U)
    if kind is OutputKind.Displacement:
        return (z.z2 * m14 + z.z4 * m24) / EI
    return (g4 * z.z4 * m14 + z.z2 * m24) / EI
