"""Evaluate the transfer functions at a handful of frequencies.

The system: a simply supported aluminium beam, 1.905 m long, with a
mass-spring-damper package (0.1 kg, 7 N/mm, 0.025 N.s/m) attached 1.4 m from
the left support. The attachment point doubles as the force input; the sensor
is colocated. H(s) maps the input force to either the transverse displacement
or the cross-section curvature at the sensor, and is exact in the frequency
domain: no discretization anywhere.

Run:  python3 demos/01_transfer_basics.py
"""

import cmath
import math

from beamfreq.beam_model import BeamParams, ModelKind, OutputKind, derive_params
from beamfreq.response import transfer

p = BeamParams(
    ell=1.905, ell0=1.4,
    A=2.25e-4, I=1.6875e-10, rho0=2700.0,
    E=69e9, G=25.5e9,
    m_att=0.1, kappa=7000.0, d=0.025,
)
dp = derive_params(p)

print("derived constants: rho = %g kg/m, I_rho = %g kg.m, K = %g N, EI = %g N.m^2"
      % (dp.rho, dp.I_rho, dp.Kshear, dp.EI))
print()
print("%6s  %-12s %-12s %22s %12s %10s" % ("nu/Hz", "model", "output", "H", "|H|", "phase"))

for nu in (2.0, 7.0, 20.0, 45.0):
    s = 2j * math.pi * nu
    for model in (ModelKind.Timoshenko, ModelKind.EulerBernoulli):
        for kind in (OutputKind.Displacement, OutputKind.Curvature):
            h = transfer(model, dp, p, s, p.ellk, kind)
            print("%6g  %-12s %-12s %22s %12.4e %10.4f"
                  % (nu, model.value, kind.value,
                     "%.3e%+.3ej" % (h.real, h.imag), abs(h), cmath.phase(h)))
    print()

# the coefficients are real, so H(conj s) = conj H(s); with pure imaginary s
# this pins |H| as an even function of frequency
s = 2j * math.pi * 7.0
h_up = transfer(ModelKind.Timoshenko, dp, p, s, p.ellk, OutputKind.Displacement)
h_dn = transfer(ModelKind.Timoshenko, dp, p, -s, p.ellk, OutputKind.Displacement)
print("conjugate symmetry check at 7 Hz: |H(i w) - conj H(-i w)| = %.3e"
      % abs(h_up - h_dn.conjugate()))
