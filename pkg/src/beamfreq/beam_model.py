"""Physical parameter sets for the pinned beam with a point mass-spring-damper.

The beam is prismatic, homogeneous, isotropic, and simply supported at both
ends; a lumped attachment (mass m_att, spring kappa, viscous damper d) sits at
x = ell0 and doubles as the force input. The sensor point ellk defaults to
ell0 (colocated). All stored values are SI base units; unit conversion from
the mixed engineering units used in config files happens at ingestion.
"""

import enum
from dataclasses import dataclass


class OutputKind(enum.Enum):
    Displacement = "displacement"   # y = w(ellk, t)
    Curvature = "curvature"         # y = psi'(ellk, t), or w''(ellk, t) for the slender model


class ModelKind(enum.Enum):
    Timoshenko = "timoshenko"
    EulerBernoulli = "euler"


# Flat table of accepted unit suffixes -> multiplier to SI. Dimension checking
# is by convention (each config key documents its expected unit family).
UNIT_FACTORS = {
    "m": 1.0,
    "mm": 1e-3,
    "cm": 1e-2,
    "m^2": 1.0,
    "cm^2": 1e-4,
    "mm^2": 1e-6,
    "m^4": 1.0,
    "cm^4": 1e-8,
    "mm^4": 1e-12,
    "kg": 1.0,
    "g": 1e-3,
    "kg/m^3": 1.0,
    "Pa": 1.0,
    "kPa": 1e3,
    "MPa": 1e6,
    "GPa": 1e9,
    "N/m": 1.0,
    "N/mm": 1e3,
    "N.s/m": 1.0,
    "N*s/m": 1.0,
}


@dataclass(frozen=True)
class BeamParams:
    """Primitive inputs, SI units.

    ell     beam length, m
    ell0    attachment/input position, m
    ellk    sensor position, m (None -> ell0)
    A       cross-section area, m^2
    I       area moment of inertia, m^4
    rho0    material density, kg/m^3
    E       Young modulus, Pa
    G       shear modulus, Pa
    k_shear shear correction factor (5/6 for rectangular sections)
    m_att   attached mass, kg
    kappa   attachment spring stiffness, N/m
    d       attachment viscous damping, N.s/m
    """
    ell: float
    ell0: float
    A: float
    I: float
    rho0: float
    E: float
    G: float
    m_att: float
    kappa: float
    d: float
    k_shear: float = 5.0 / 6.0
    ellk: float = None

    def __post_init__(self):
        if self.ellk is None:
            object.__setattr__(self, "ellk", self.ell0)


@dataclass(frozen=True)
class DerivedParams:
    """Products that the transfer-function formulas actually consume.

    rho     linear density rho0*A, kg/m
    I_rho   cross-section mass moment rho0*I, kg.m
    Kshear  shear rigidity k_shear*G*A, N
    EI      bending stiffness E*I, N.m^2
    """
    rho: float
    I_rho: float
    Kshear: float
    EI: float


def validate(p):
    """Return a list of violated-invariant messages, each naming the field.

    An empty list means the parameter set is admissible.
    """
    bad = []
    for name in ("ell", "rho0", "A", "E", "G", "I", "k_shear", "m_att", "kappa"):
        if not getattr(p, name) > 0:
            bad.append("%s must be strictly positive" % name)
    if not p.d >= 0:
        bad.append("d must be nonnegative")
    if not 0 < p.ell0 < p.ell:
        bad.append("ell0 must lie strictly inside (0, ell)")
    if not 0 <= p.ellk <= p.ell:
        bad.append("ellk must lie in [0, ell]")
    return bad


def derive_params(p):
    """Compute the four derived constants. Assumes validate(p) passed."""
    return DerivedParams(
        rho=p.rho0 * p.A,
        I_rho=p.rho0 * p.I,
        Kshear=p.k_shear * p.G * p.A,
        EI=p.E * p.I,
    )
