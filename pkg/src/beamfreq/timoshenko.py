"""Shear-deformable (Timoshenko) beam pipeline in the Laplace domain.

For fixed s the transverse displacement W(x,s) of each segment satisfies a
fourth-order ODE with constant coefficients; its solution operator e^{x*A} is
assembled in closed form from seven scalar kernels z1..z7 built on the two
wavenumbers lambda1, lambda2. The attachment at ell0 couples the two segments
through continuity and a force-jump row, giving a 4x4 system for the
surviving boundary derivatives, from which the transfer function at the
sensor point follows directly.

Sign conventions: kernels take a signed coordinate; the right segment is
always evaluated at x - ell (negative), exactly as the interface matrix rows
are written.
"""

import cmath
from typing import NamedTuple

from .numeric import (
    NU_FLOOR_HZ, SMALL_ARG, OVERFLOW_RE, REPEATED_ROOT_TOL,
    DegenerateFrequency, RepeatedRoot, Overflow,
    sinhc, solve4,
)

TWO_PI = 2.0 * cmath.pi


class TbWavenumbers(NamedTuple):
    a: complex        # 1/m^2
    b: complex        # 1/m^4
    lambda1: complex  # principal sqrt(a + sqrt(a^2 - b))
    lambda2: complex  # principal sqrt(a - sqrt(a^2 - b))


class ZKernel7(NamedTuple):
    z1: complex
    z2: complex
    z3: complex
    z4: complex
    z5: complex
    z6: complex
    z7: complex


class TbAux(NamedTuple):
    u: complex    # EI / (K + I_rho s^2)
    v: complex    # K/EI - rho s^2 / K
    v1: complex   # rho s^2 / K
    v2: complex   # (m s^2 + d s + kappa) / K


class InterfaceSystem(NamedTuple):
    M: tuple           # 4x4 complex, rows as printed
    rhs_scale: complex  # (lambda1^2 - lambda2^2) / K


class BoundaryUnknowns(NamedTuple):
    W1_0: complex   # W'(0)
    W3_0: complex   # W'''(0)
    W1_l: complex   # W'(ell)
    W3_l: complex   # W'''(ell)


def tb_coeffs(dp, s):
    """Wavenumbers for the fourth-order displacement ODE at Laplace point s.

    a = s^2/2 (rho/K + I_rho/EI), b = (K + I_rho s^2) rho s^2 / (K EI);
    lambda1, lambda2 are principal square roots of a +- sqrt(a^2 - b).
    """
    if abs(s) < TWO_PI * NU_FLOOR_HZ:
        raise DegenerateFrequency("|s| below the %.0e Hz frequency floor" % NU_FLOOR_HZ)
    s2 = s * s
    a = 0.5 * s2 * (dp.rho / dp.Kshear + dp.I_rho / dp.EI)
    b = (dp.Kshear + dp.I_rho * s2) * dp.rho * s2 / (dp.Kshear * dp.EI)
    disc = a * a - b
    if abs(disc) < REPEATED_ROOT_TOL * max(abs(a) ** 2, abs(b)):
        raise RepeatedRoot("wavenumber discriminant vanishes at s=%r" % s)
    r = cmath.sqrt(disc)
    return TbWavenumbers(a=a, b=b, lambda1=cmath.sqrt(a + r), lambda2=cmath.sqrt(a - r))


def _check_overflow(lam, x):
    if abs((lam * x).real) > OVERFLOW_RE:
        raise Overflow("|Re(lambda*x)| = %.1f exceeds exp guard" % abs((lam * x).real))


def tb_z(x, wn):
    """The seven matrix-exponential kernels at signed coordinate x.

    Below SMALL_ARG the difference kernels z3, z4 and the sinh(l x)/l pieces
    of z2 switch to factored Taylor series: the raw differences lose all
    significant digits as lambda*x -> 0 while the true values scale like
    (lambda1^2 - lambda2^2) x^2.
    """
    l1, l2 = wn.lambda1, wn.lambda2
    _check_overflow(l1, x)
    _check_overflow(l2, x)
    c1, c2 = cmath.cosh(l1 * x), cmath.cosh(l2 * x)
    sc1 = x * sinhc(l1 * x)   # sinh(l1 x)/l1, safe at l1 -> 0
    sc2 = x * sinhc(l2 * x)
    l1sq, l2sq = l1 * l1, l2 * l2
    if max(abs(l1 * x), abs(l2 * x)) < SMALL_ARG:
        # complete homogeneous symmetric polynomials in (l1^2, l2^2) keep the
        # shared (l1^2 - l2^2) factor explicit; z7 cancels the same way
        # (l1^4 - l2^4 leads, and l1^4 ~ l2^4 whenever a ~ 0). Built from the
        # quadratic's own (sum, product) = (2a, b): the spelled-out power sums
        # cancel catastrophically exactly where these series run
        x2 = x * x
        p1 = 2.0 * wn.a
        p2 = p1 * p1 - wn.b
        p3 = p1 * p2 - wn.b * p1
        p4 = p1 * p3 - wn.b * p2
        dl = l1sq - l2sq
        z3 = dl * x2 * (1.0 / 2.0 + x2 * (p1 / 24.0 + x2 * (p2 / 720.0 + x2 * p3 / 40320.0)))
        z4 = dl * x2 * x * (1.0 / 6.0 + x2 * (p1 / 120.0 + x2 * (p2 / 5040.0 + x2 * p3 / 362880.0)))
        z7 = dl * x * (p1 + x2 * (p2 / 6.0 + x2 * (p3 / 120.0 + x2 * p4 / 5040.0)))
    else:
        z3 = c1 - c2
        z4 = sc1 - sc2
        z7 = l1sq * l1 * cmath.sinh(l1 * x) - l2sq * l2 * cmath.sinh(l2 * x)
    return ZKernel7(
        z1=l1sq * c2 - l2sq * c1,
        z2=l1sq * sc2 - l2sq * sc1,
        z3=z3,
        z4=z4,
        z5=l1 * cmath.sinh(l1 * x) - l2 * cmath.sinh(l2 * x),
        z6=l1sq * c1 - l2sq * c2,
        z7=z7,
    )


def tb_expm(x, wn):
    """Closed-form e^{x*A} for the displacement companion system.

    Row i+1 is d/dx of row i; the last row folds the ODE back in. The
    1/(lambda1^2 - lambda2^2) prefactor cancels the kernel antisymmetry, so
    the result is invariant under root sign flips and the root swap.
    """
    z = tb_z(x, wn)
    dl = wn.lambda1 ** 2 - wn.lambda2 ** 2
    L2 = wn.lambda1 ** 2 * wn.lambda2 ** 2
    rows = (
        (z.z1, z.z2, z.z3, z.z4),
        (-L2 * z.z4, z.z1, z.z5, z.z3),
        (-L2 * z.z3, -L2 * z.z4, z.z6, z.z5),
        (-L2 * z.z5, -L2 * z.z3, z.z7, z.z6),
    )
    return tuple(tuple(e / dl for e in row) for row in rows)


def tb_companion(wn):
    """Companion matrix A of the fourth-order ODE W'''' = 2a W'' - b W."""
    return (
        (0.0, 1.0, 0.0, 0.0),
        (0.0, 0.0, 1.0, 0.0),
        (0.0, 0.0, 0.0, 1.0),
        (-wn.b, 0.0, 2.0 * wn.a, 0.0),
    )


def tb_aux(dp, p, s):
    """Auxiliary scalars u, v, v1, v2. Guards the shear pole K + I_rho s^2 = 0."""
    den = dp.Kshear + dp.I_rho * s * s
    if abs(den) < 1e-9 * dp.Kshear:
        raise DegenerateFrequency("s at the shear pole K + I_rho s^2 = 0")
    s2 = s * s
    return TbAux(
        u=dp.EI / den,
        v=dp.Kshear / dp.EI - dp.rho * s2 / dp.Kshear,
        v1=dp.rho * s2 / dp.Kshear,
        v2=(p.m_att * s2 + p.d * s + p.kappa) / dp.Kshear,
    )


def tb_interface_matrix(dp, p, s):
    """Assemble the 4x4 boundary/interface system, entry for entry as printed.

    Unknowns are (W'(0), W'''(0), W'(ell), W'''(ell)); the right-segment
    columns carry kernels at ell0 - ell. Rows: displacement continuity,
    rotation continuity, moment continuity, force jump through the
    attachment.
    """
    wn = tb_coeffs(dp, s)
    aux = tb_aux(dp, p, s)
    za = tb_z(p.ell0, wn)            # left segment, evaluated at ell0
    zb = tb_z(p.ell0 - p.ell, wn)    # right segment coordinate, negative
    L2 = wn.lambda1 ** 2 * wn.lambda2 ** 2
    v, v1, v2 = aux.v, aux.v1, aux.v2
    M = (
        (za.z2, za.z4, -zb.z2, -zb.z4),
        (v * za.z1 - L2 * za.z3, v * za.z3 + za.z6,
         L2 * zb.z3 - v * zb.z1, -zb.z6 - v * zb.z3),
        (v1 * za.z2 + L2 * za.z4, v1 * za.z4 - za.z5,
         -L2 * zb.z4 - v1 * zb.z2, zb.z5 - v1 * zb.z4),
        (za.z1 + v2 * za.z2, za.z3 + v2 * za.z4, -zb.z1, -zb.z3),
    )
    dl = wn.lambda1 ** 2 - wn.lambda2 ** 2
    return InterfaceSystem(M=M, rhs_scale=dl / dp.Kshear)


def tb_solve_boundary(sys, U):
    """Solve M (W'(0), W'''(0), W'(ell), W'''(ell))^T = (0,0,0, rhs_scale U)^T."""
    rhs = (0.0, 0.0, 0.0, sys.rhs_scale * U)
    x, _ = solve4(sys.M, rhs)
    return BoundaryUnknowns(*x)


class TbSolution:
    """Full state evaluator for one solved Laplace point.

    Reconstructs (W, W', W'', W''', W'''') anywhere on the beam from the
    boundary unknowns through the kernel derivative ladder, plus the rotation
    Psi and its derivative. Used by the verification module; the transfer
    functions proper go through tb_transfer.

    corrupt, when given as (i, j, factor), scales one interface-matrix entry
    before solving. That exists solely so the residual checks can prove they
    would catch an assembly bug.
    """

    def __init__(self, dp, p, s, U=1.0, corrupt=None):
        self.dp, self.p, self.s, self.U = dp, p, s, U
        self.wn = tb_coeffs(dp, s)
        self.aux = tb_aux(dp, p, s)
        sys = tb_interface_matrix(dp, p, s)
        if corrupt is not None:
            i, j, factor = corrupt
            M = [list(row) for row in sys.M]
            M[i][j] *= factor
            sys = InterfaceSystem(M=tuple(tuple(row) for row in M), rhs_scale=sys.rhs_scale)
        self.bu = tb_solve_boundary(sys, U)

    def state(self, x):
        """(W, W', W'', W''', W'''') at beam coordinate x in [0, ell]."""
        wn = self.wn
        dl = wn.lambda1 ** 2 - wn.lambda2 ** 2
        L2 = wn.lambda1 ** 2 * wn.lambda2 ** 2
        if x <= self.p.ell0:
            z = tb_z(x, wn)
            c1, c3 = self.bu.W1_0, self.bu.W3_0
        else:
            z = tb_z(x - self.p.ell, wn)
            c1, c3 = self.bu.W1_l, self.bu.W3_l
        w = (z.z2 * c1 + z.z4 * c3) / dl
        w1 = (z.z1 * c1 + z.z3 * c3) / dl
        w2 = (-L2 * z.z4 * c1 + z.z5 * c3) / dl
        w3 = (-L2 * z.z3 * c1 + z.z6 * c3) / dl
        w4 = (-L2 * z.z5 * c1 + z.z7 * c3) / dl
        return w, w1, w2, w3, w4

    def w(self, x):
        return self.state(x)[0]

    def psi(self, x):
        """Rotation Psi = u (W''' + v W')."""
        _, w1, _, w3, _ = self.state(x)
        return self.aux.u * (w3 + self.aux.v * w1)

    def psi_prime(self, x):
        """Psi' = W'' - v1 W, from the first governing equation."""
        w, _, w2, _, _ = self.state(x)
        return w2 - self.aux.v1 * w

    def w_sided(self, x, side):
        """State evaluated on a chosen segment ('left'/'right'), for x = ell0."""
        wn = self.wn
        dl = wn.lambda1 ** 2 - wn.lambda2 ** 2
        L2 = wn.lambda1 ** 2 * wn.lambda2 ** 2
        if side == "left":
            z = tb_z(x, wn)
            c1, c3 = self.bu.W1_0, self.bu.W3_0
        else:
            z = tb_z(x - self.p.ell, wn)
            c1, c3 = self.bu.W1_l, self.bu.W3_l
        w = (z.z2 * c1 + z.z4 * c3) / dl
        w1 = (z.z1 * c1 + z.z3 * c3) / dl
        w2 = (-L2 * z.z4 * c1 + z.z5 * c3) / dl
        w3 = (-L2 * z.z3 * c1 + z.z6 * c3) / dl
        return w, w1, w2, w3

    def state_scale(self, x, side=None):
        """Componentwise magnitudes of the state sums.

        Absolute values of the same kernel products that state() adds
        before they cancel. The branches grow like e^{Re(lambda) x}, so a
        meaningful relative residual divides by these sums, not by the
        (possibly far smaller) assembled state.
        """
        wn = self.wn
        dl = abs(wn.lambda1 ** 2 - wn.lambda2 ** 2)
        L2 = abs(wn.lambda1 ** 2 * wn.lambda2 ** 2)
        left = (x <= self.p.ell0) if side is None else (side == "left")
        if left:
            z = tb_z(x, wn)
            c1, c3 = abs(self.bu.W1_0), abs(self.bu.W3_0)
        else:
            z = tb_z(x - self.p.ell, wn)
            c1, c3 = abs(self.bu.W1_l), abs(self.bu.W3_l)
        w = (abs(z.z2) * c1 + abs(z.z4) * c3) / dl
        w1 = (abs(z.z1) * c1 + abs(z.z3) * c3) / dl
        w2 = (L2 * abs(z.z4) * c1 + abs(z.z5) * c3) / dl
        w3 = (L2 * abs(z.z3) * c1 + abs(z.z6) * c3) / dl
        w4 = (L2 * abs(z.z5) * c1 + abs(z.z7) * c3) / dl
        return w, w1, w2, w3, w4


def tb_transfer(dp, p, s, ellk, kind):
    """Transfer function H(s) at sensor point ellk for unit input U(s) = 1.

    Displacement: H1 = (z2(xi) m14 + z4(xi) m24) / K with m_j4 the fourth
    column of the interface-system inverse; curvature: the printed 1/K^2
    combination, equal to W''(ellk) - (rho s^2/K) W(ellk). The left branch
    (kernels at ellk, columns 1-2) applies for ellk <= ell0, the right branch
    (kernels at ellk - ell, columns 3-4) otherwise.
    """
    from .beam_model import OutputKind
    U = 1.0
    wn = tb_coeffs(dp, s)
    sys = tb_interface_matrix(dp, p, s)
    bu = tb_solve_boundary(sys, U)
    dl = wn.lambda1 ** 2 - wn.lambda2 ** 2
    L2 = wn.lambda1 ** 2 * wn.lambda2 ** 2
    # m_j4 = y_j * K / (dl * U): fourth inverse column realized by the solve
    K = dp.Kshear
    if ellk <= p.ell0:
        z = tb_z(ellk, wn)
        m14 = bu.W1_0 * K / (dl * U)
        m24 = bu.W3_0 * K / (dl * U)
    else:
        z = tb_z(ellk - p.ell, wn)
        m14 = bu.W1_l * K / (dl * U)
        m24 = bu.W3_l * K / (dl * U)
    if kind is OutputKind.Displacement:
        return (z.z2 * m14 + z.z4 * m24) / K
    rs2 = dp.rho * s * s
    return ((-L2 * K * z.z4 - rs2 * z.z2) * m14 + (K * z.z5 - rs2 * z.z4) * m24) / (K * K)
