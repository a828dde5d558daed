"""Shared numeric policy: guard constants, error types, and the small dense solver.

Everything frequency-domain in this package funnels through the same guard
thresholds so that the two beam models fail identically on degenerate input.
"""

import cmath

# Frequencies below this are rejected; the static limit s -> 0 collapses the
# wavenumber formulas (b -> 0 drives one root to zero).
NU_FLOOR_HZ = 1e-3

# Below |lam*x| < SMALL_ARG the kernel functions switch to Taylor series to
# dodge the removable singularities and difference cancellation.
SMALL_ARG = 1e-3

# exp() overflows near 709; leave margin.
OVERFLOW_RE = 700.0

# Condition-estimate ceiling for the 4x4 interface solve.
COND_LIMIT = 1e12

# Iterative-refinement contraction past which the solve is declared failed.
# The kernel basis is exponentially graded, so the normwise condition number
# overstates the effective error by many orders (the elimination is backward
# stable and the underlying boundary value problem is well conditioned); the
# refinement step measures the damage directly.
CONTRACT_TOL = 0.1

# Relative discriminant threshold for coincident wavenumbers.
REPEATED_ROOT_TOL = 1e-10


class BeamFreqError(Exception):
    """Base class for all numeric guard failures."""


class DegenerateFrequency(BeamFreqError):
    """Frequency below the floor, or s at a pole of the auxiliary scalars."""


class RepeatedRoot(BeamFreqError):
    """Wavenumber discriminant vanishes; the kernel basis degenerates."""


class Overflow(BeamFreqError):
    """|Re(lam*x)| past the exp() guard."""


class NearSingular(BeamFreqError):
    """Interface solve unresolvable: bad pivot, or condition estimate and
    refinement contraction past their limits together."""


class EmptyRange(BeamFreqError):
    """Peak search found no local maximum in the requested range."""


class SingularDiscretization(BeamFreqError):
    """Finite-difference system could not be solved."""


def sinhc(z):
    """sinh(z)/z, series below SMALL_ARG (exact at z=0)."""
    if abs(z) < SMALL_ARG:
        z2 = z * z
        return 1.0 + z2 * (1.0 / 6.0 + z2 * (1.0 / 120.0 + z2 / 5040.0))
    return cmath.sinh(z) / z


def _lu4(M):
    # in-place LU with partial pivoting on a 4x4 list-of-lists copy
    A = [[complex(M[i][j]) for j in range(4)] for i in range(4)]
    piv = [0, 1, 2, 3]
    for k in range(3):
        p = max(range(k, 4), key=lambda i: abs(A[i][k]))
        if p != k:
            A[k], A[p] = A[p], A[k]
            piv[k], piv[p] = piv[p], piv[k]
        if A[k][k] == 0:
            raise NearSingular("zero pivot in interface solve")
        for i in range(k + 1, 4):
            mult = A[i][k] / A[k][k]
            A[i][k] = mult
            for j in range(k + 1, 4):
                A[i][j] -= mult * A[k][j]
    if A[3][3] == 0:
        raise NearSingular("zero pivot in interface solve")
    return A, piv


def _lu_solve(A, piv, b):
    x = [complex(b[piv[i]]) for i in range(4)]
    for i in range(1, 4):
        for j in range(i):
            x[i] -= A[i][j] * x[j]
    for i in range(3, -1, -1):
        for j in range(i + 1, 4):
            x[i] -= A[i][j] * x[j]
        x[i] /= A[i][i]
    return x


def cond_lower_bound(M, A, piv):
    """One-sided estimate of cond_1(M) from an existing LU factorization.

    Classic one-phase estimator: solve M^T v = e with the signs of e chosen
    greedily during the U^T forward sweep to pump up |v|, then
    ||M||_1 * ||v||_inf is a lower bound on the true condition number. A
    lower bound is all the near-singularity guard needs: genuine blowups
    overshoot the threshold by many orders.
    """
    norm1 = max(sum(abs(M[i][j]) for i in range(4)) for j in range(4))
    # forward sweep on U^T, greedy unit rhs
    w = [0j] * 4
    for i in range(4):
        sigma = sum(A[j][i] * w[j] for j in range(i))
        e = 1.0 if sigma == 0 else -sigma / abs(sigma)
        w[i] = (e - sigma) / A[i][i]
    # back sweep on L^T (unit diagonal)
    t = list(w)
    for i in range(2, -1, -1):
        for j in range(i + 1, 4):
            t[i] -= A[j][i] * t[j]
    v = [0j] * 4
    for i in range(4):
        v[piv[i]] = t[i]
    return norm1 * max(abs(z) for z in v)


def solve4(M, rhs):
    """Solve a 4x4 complex system by pivoted elimination.

    Rows are equilibrated first, then one step of iterative refinement is
    applied unconditionally. Returns (x, cond_est) with the estimate taken
    on the equilibrated matrix. Raises NearSingular on a zero pivot / zero
    row, or when the condition estimate exceeds COND_LIMIT *and* the
    refinement correction fails to contract below CONTRACT_TOL; callers
    treat that as s sitting on (or hugging) an eigenvalue of the beam
    operator. Requiring both signals matters: the estimate alone condemns
    frequencies the elimination actually resolves to several digits.
    """
    scale = [max(abs(M[i][j]) for j in range(4)) for i in range(4)]
    if min(scale) == 0.0:
        raise NearSingular("zero row in interface matrix")
    Ms = [[M[i][j] / scale[i] for j in range(4)] for i in range(4)]
    bs = [rhs[i] / scale[i] for i in range(4)]
    A, piv = _lu4(Ms)
    cond = cond_lower_bound(Ms, A, piv)
    x = _lu_solve(A, piv, bs)
    # one refinement pass; the residual is cheap and the correction size is
    # an honest forward-error probe where the condition estimate is not
    r = [bs[i] - sum(Ms[i][j] * x[j] for j in range(4)) for i in range(4)]
    dx = _lu_solve(A, piv, r)
    x = [x[i] + dx[i] for i in range(4)]
    xn = max(abs(z) for z in x)
    contraction = 0.0 if xn == 0.0 else max(abs(z) for z in dx) / xn
    if cond > COND_LIMIT and contraction > CONTRACT_TOL:
        raise NearSingular(
            "interface solve failed: condition estimate %.3e, "
            "refinement contraction %.3e" % (cond, contraction)
        )
    return x, cond
