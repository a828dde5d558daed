"""Run the independent verification oracles against the closed form.

Three cross-checks, none of which share code with the kernel algebra:

1. expm_series_oracle exponentiates the raw 4x4 companion matrix by scaling
   and squaring and compares with the closed-form kernel assembly.
2. fd_bvp_oracle solves the two-segment boundary value problem by sparse
   second-order finite differences in mixed (W, W'') form.
3. residual_check pushes the assembled solution back through the governing
   ODE, the pinned-end conditions, and the interface continuity/jump rows,
   normalizing componentwise so exponential branch growth cannot hide faults.

Run:  python3 demos/04_verification.py
"""

import math

from beamfreq.beam_model import BeamParams, ModelKind, OutputKind, derive_params
from beamfreq.response import transfer
from beamfreq.timoshenko import tb_coeffs, tb_companion, tb_expm
from beamfreq.euler_bernoulli import eb_companion, eb_expm, eb_gamma
from beamfreq.verification import (
    expm_series_oracle, fd_bvp_oracle, h2_consistency, residual_check,
)

p = BeamParams(
    ell=1.905, ell0=1.4,
    A=2.25e-4, I=1.6875e-10, rho0=2700.0,
    E=69e9, G=25.5e9,
    m_att=0.1, kappa=7000.0, d=0.025,
)
dp = derive_params(p)

print("1. closed-form e^{xA} vs series oracle")
worst = 0.0
for nu in (1.0, 10.0, 100.0):
    s = 2j * math.pi * nu
    wn = tb_coeffs(dp, s)
    g = eb_gamma(dp, s)
    for x in (0.1 * p.ell, 0.5 * p.ell, p.ell):
        for closed, oracle in (
                (tb_expm(x, wn), expm_series_oracle(tb_companion(wn), x)),
                (eb_expm(x, g), expm_series_oracle(eb_companion(g), x))):
            scale = max(abs(closed[i][j]) for i in range(4) for j in range(4))
            dev = max(abs(closed[i][j] - oracle[i, j])
                      for i in range(4) for j in range(4)) / scale
            worst = max(worst, dev)
print("   worst relative deviation over 3 frequencies x 3 stations: %.3e" % worst)

print("2. closed-form H vs finite-difference solve (n = 4000)")
for model in (ModelKind.Timoshenko, ModelKind.EulerBernoulli):
    for kind in (OutputKind.Displacement, OutputKind.Curvature):
        s = 2j * math.pi * 7.0
        href = transfer(model, dp, p, s, p.ellk, kind)
        h_fd = fd_bvp_oracle(model, p, dp, s, p.ellk, kind)
        print("   %-12s %-12s rel %.3e" % (model.value, kind.value,
                                           abs(h_fd - href) / abs(href)))

print("3. governing-equation residuals (componentwise relative)")
for model in (ModelKind.Timoshenko, ModelKind.EulerBernoulli):
    for nu in (9.5, 100.0, 228.4):
        rep = residual_check(model, p, dp, 2j * math.pi * nu, p.ellk)
        print("   %-12s nu=%6.1f  ode %.2e  bc %.2e  interface %.2e"
              % (model.value, nu, rep.ode_residual, rep.bc_residual,
                 rep.interface_residual))

print("   curvature route consistency at 15 Hz: %.3e"
      % h2_consistency(p, dp, 2j * math.pi * 15.0, p.ellk))

print()
print("fault detection: scale one interface-matrix entry by (1 + 1e-6)")
rep = residual_check(ModelKind.Timoshenko, p, dp, 2j * math.pi * 9.5, p.ellk,
                     _corrupt=(1, 2, 1.0 + 1e-6))
print("   interface residual jumps to %.3e" % rep.interface_residual)
