"""Frequency sweeps and modal-peak extraction.

Sweeps walk s = 2*pi*i*nu over a deterministic grid; guarded frequencies are
kept in the output with a status marker so row counts are reproducible. Peaks
are bracketed on a coarse grid and refined by golden-section maximization of
|H|.
"""

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .beam_model import ModelKind
from .numeric import (
    DegenerateFrequency, RepeatedRoot, Overflow, NearSingular, EmptyRange,
    NU_FLOOR_HZ,
)
from .timoshenko import tb_transfer
from .euler_bernoulli import eb_transfer

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

STATUS_OK = "ok"
STATUS_PERTURBED = "perturbed"


@dataclass(frozen=True)
class SweepSpec:
    model: object      # ModelKind
    kind: object       # OutputKind
    nu_min: float      # Hz
    nu_max: float      # Hz
    n_points: int
    spacing: str = "linear"   # or "log"

    def validate(self):
        bad = []
        if self.nu_min < NU_FLOOR_HZ:
            bad.append("nu_min below the frequency floor")
        if not self.nu_min < self.nu_max:
            bad.append("nu_min must be below nu_max")
        if self.n_points < 2:
            bad.append("n_points must be at least 2")
        if self.spacing not in ("linear", "log"):
            bad.append("spacing must be linear or log")
        return bad


class TransferSample(NamedTuple):
    nu: float        # Hz
    h: complex       # None when status is an error marker
    mag: float
    mag_db: float
    phase: float     # radians, principal value
    status: str


class ModalPeak(NamedTuple):
    nu_peak: float
    mag_peak: float
    refined: bool


def transfer(model, dp, p, s, ellk, kind):
    """Dispatch to the chosen model's transfer function."""
    if model is ModelKind.Timoshenko:
        return tb_transfer(dp, p, s, ellk, kind)
    return eb_transfer(dp, p, s, ellk, kind)


def _grid(nu_min, nu_max, n, spacing):
    # plain-float arithmetic, index-deterministic regardless of evaluation order
    if spacing == "log":
        la, lb = math.log(nu_min), math.log(nu_max)
        pts = [math.exp(la + (lb - la) * i / (n - 1)) for i in range(n)]
        pts[0], pts[-1] = nu_min, nu_max
        return pts
    return [nu_min + (nu_max - nu_min) * i / (n - 1) for i in range(n)]


def _sample(model, kind, p, dp, ellk, nu):
    s = 2j * math.pi * nu
    status = STATUS_OK
    try:
        try:
            h = transfer(model, dp, p, s, ellk, kind)
        except RepeatedRoot:
            # measure-zero coincidence of the wavenumbers: nudge s and flag
            h = transfer(model, dp, p, s * (1.0 + 1e-9), ellk, kind)
            status = STATUS_PERTURBED
    except DegenerateFrequency:
        return TransferSample(nu, None, None, None, None, "degenerate_frequency")
    except RepeatedRoot:
        return TransferSample(nu, None, None, None, None, "repeated_root")
    except NearSingular:
        return TransferSample(nu, None, None, None, None, "near_singular")
    except Overflow:
        return TransferSample(nu, None, None, None, None, "overflow")
    mag = abs(h)
    mag_db = 20.0 * math.log10(mag) if mag > 0 else float("-inf")
    return TransferSample(nu, h, mag, mag_db, cmath.phase(h), status)


def sweep(spec, p, dp, ellk):
    """Evaluate the transfer function over the grid; ascending nu, one sample
    per grid point, error markers instead of values at guarded frequencies."""
    bad = spec.validate()
    if bad:
        raise ValueError("; ".join(bad))
    return [_sample(spec.model, spec.kind, p, dp, ellk, nu)
            for nu in _grid(spec.nu_min, spec.nu_max, spec.n_points, spec.spacing)]


def _mag_at(model, kind, p, dp, ellk, nu):
    smp = _sample(model, kind, p, dp, ellk, nu)
    if smp.mag is None:
        raise DegenerateFrequency("guarded frequency %g Hz inside peak search" % nu)
    return smp.mag


def _golden_max(f, lo, hi, tol):
    # standard golden-section maximization; iterates stay inside [lo, hi]
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
    xm = 0.5 * (lo + hi)
    return xm, f(xm)


def find_peaks(model, kind, p, dp, ellk, nu_range, coarse_n=5000):
    """Locate local maxima of |H(2 pi i nu)| on nu_range = (lo, hi).

    A coarse scan brackets every strict interior maximum; each bracket is
    narrowed by golden section to 1e-7 Hz. Raises EmptyRange when the scan
    finds nothing.
    """
    lo, hi = nu_range
    grid = _grid(lo, hi, coarse_n, "linear")
    mags = [_mag_at(model, kind, p, dp, ellk, nu) for nu in grid]
    peaks = []
    for i in range(1, coarse_n - 1):
        if mags[i] > mags[i - 1] and mags[i] > mags[i + 1]:
            nu_pk, mag_pk = _golden_max(
                lambda nu: _mag_at(model, kind, p, dp, ellk, nu),
                grid[i - 1], grid[i + 1], 1e-7)
            peaks.append(ModalPeak(nu_peak=nu_pk, mag_peak=mag_pk, refined=True))
    if not peaks:
        raise EmptyRange("no local maximum of |H| in [%g, %g] Hz" % (lo, hi))
    peaks.sort(key=lambda pk: pk.nu_peak)
    return peaks
