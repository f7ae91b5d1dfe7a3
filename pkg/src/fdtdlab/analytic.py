"""Closed-form oracles used to validate the FDTD solvers.

Three pieces live here: the d'Alembert propagation of a Gaussian pulse
(1D oracle), a small cylindrical Bessel/Hankel engine, and the TM
scattering series for a circular cylinder (2D oracle, conducting or
penetrable).

The Bessel engine is self-contained: J by Miller's backward recurrence
normalized with J0 + 2*sum(J_2k) = 1, Y0/Y1 by Neumann series over the
computed J values, Ym by forward recurrence.  Absolute accuracy is
better than 1e-10 for orders m <= 40 and arguments 0 < x <= 100 (checked
against an exact-arithmetic series oracle in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .core import C0, EPS0, MU0, ValidationError, gaussian_pulse

EULER_GAMMA = 0.57721566490153286060651209008240243


class ConvergenceError(RuntimeError):
    """A series failed to converge at the requested truncation order."""


def dalembert_gaussian(z, t, t0: float, spread: float, c: float = C0):
    """Free-space 1D field of a unit Gaussian materializing at z = 0.

    Returns 0.5*g(t - z/c) + 0.5*g(t + z/c) with g the Gaussian peaking
    at t0; all times in seconds, z in meters.  This is the d'Alembert
    splitting into equal half-amplitude waves traveling both ways.
    """
    z = np.asarray(z, dtype=float)
    t = np.asarray(t, dtype=float)
    return 0.5 * gaussian_pulse(t - z / c, t0, spread) \
        + 0.5 * gaussian_pulse(t + z / c, t0, spread)


# ---------------------------------------------------------------------------
# Bessel engine


def _bessel_j_sequence(m_max: int, x) -> np.ndarray:
    """J_0(x) .. J_max(x) via Miller's backward recurrence.

    Works for real or complex x.  The downward recurrence is seeded well
    above both the order and |x| and renormalized with the identity
    J0 + 2*(J2 + J4 + ...) = 1, rescaling on the way down to dodge
    overflow for small |x|.
    """
    iscomplex = isinstance(x, complex) or np.iscomplexobj(x)
    dtype = complex if iscomplex else float
    xa = abs(x)
    if xa == 0.0:
        out = np.zeros(m_max + 1, dtype=dtype)
        out[0] = 1.0
        return out

    n_start = int(max(m_max, xa)) + 18 + int(2.0 * math.sqrt(max(m_max, xa)))
    if n_start % 2:
        n_start += 1

    out = np.zeros(n_start + 2, dtype=dtype)
    jp = dtype(0.0)       # J_{n+1}
    jc = dtype(1e-300)    # J_n (arbitrary seed)
    norm = dtype(0.0)     # accumulates J0 + 2*sum J_{2k}
    inv_x = 1.0 / x
    for n in range(n_start, -1, -1):
        jm = (2.0 * (n + 1)) * inv_x * jc - jp
        jp = jc
        jc = jm
        if n <= m_max:
            out[n] = jc
        if n % 2 == 0:
            norm += jc if n == 0 else 2.0 * jc
        if abs(jc) > 1e250:
            jc *= 1e-250
            jp *= 1e-250
            norm *= 1e-250
            out *= 1e-250
    return out[: m_max + 1] / norm


def bessel_j(m: int, x) -> float:
    """Cylindrical Bessel function of the first kind, integer order."""
    if m < 0:
        raise ValidationError("order must be >= 0")
    if not np.iscomplexobj(x) and x < 0:
        raise ValidationError("argument must be >= 0")
    val = _bessel_j_sequence(m, x)[m]
    return val if np.iscomplexobj(val) else float(val)


def _bessel_y01(x: float, j_seq: np.ndarray):
    """Y0 and Y1 from Neumann series over the J sequence.

    Y0 = (2/pi)(ln(x/2)+gamma) J0 - (4/pi) sum_k (-1)^k J_{2k}/k and Y1
    is minus its derivative; both series terminate once 2k exceeds x by
    a comfortable margin because J_{2k}(x) collapses super-exponentially.
    """
    lg = math.log(0.5 * x) + EULER_GAMMA
    kmax = (len(j_seq) - 2) // 2
    s0 = 0.0
    s1 = 0.0
    for k in range(1, kmax + 1):
        sign = -1.0 if k % 2 else 1.0
        s0 += sign * j_seq[2 * k] / k
        s1 += sign * (j_seq[2 * k - 1] - j_seq[2 * k + 1]) / (2.0 * k)
    y0 = (2.0 / math.pi) * lg * j_seq[0] - (4.0 / math.pi) * s0
    dy0 = (2.0 / math.pi) * (j_seq[0] / x - lg * j_seq[1]) - (4.0 / math.pi) * s1
    return y0, -dy0


def bessel_y(m: int, x: float) -> float:
    """Cylindrical Bessel function of the second kind, integer order.

    Diverges at the origin; x must be positive.
    """
    if m < 0:
        raise ValidationError("order must be >= 0")
    if x <= 0.0:
        raise ValidationError("bessel_y needs x > 0")
    need = max(m + 1, int(x) + 34)
    j_seq = _bessel_j_sequence(need, x)
    y0, y1 = _bessel_y01(x, j_seq)
    if m == 0:
        return y0
    yk_m1, yk = y0, y1
    for k in range(1, m):
        yk_m1, yk = yk, (2.0 * k / x) * yk - yk_m1
    return yk


def _bessel_y_sequence(m_max: int, x: float) -> np.ndarray:
    need = max(m_max + 1, int(x) + 34)
    j_seq = _bessel_j_sequence(need, x)
    y0, y1 = _bessel_y01(x, j_seq)
    out = np.zeros(max(m_max + 1, 2))
    out[0], out[1] = y0, y1
    for k in range(1, m_max):
        out[k + 1] = (2.0 * k / x) * out[k] - out[k - 1]
    return out[: m_max + 1]


def hankel1(m: int, x: float) -> complex:
    """H^(1)_m = J_m + i Y_m (outgoing for exp(-i w t))."""
    return complex(bessel_j(m, x), bessel_y(m, x))


def hankel2(m: int, x: float) -> complex:
    """H^(2)_m = J_m - i Y_m (outgoing for exp(+j w t))."""
    return complex(bessel_j(m, x), -bessel_y(m, x))


# ---------------------------------------------------------------------------
# Plane-wave expansion and cylinder scattering


def incident_plane_wave_expansion(rho: float, phi: float, k: float,
                                  max_order: int) -> complex:
    """Plane wave exp(-j k x) as a cylindrical-harmonic series.

    Sum over m of (-j)^m J_|m|(k rho) exp(j m phi), truncated at
    |m| = max_order; matches the plane wave to truncation error once
    max_order comfortably exceeds k*rho.
    """
    if max_order < k * rho + 10:
        raise ValidationError(
            f"max_order {max_order} too small for k*rho = {k * rho:.3f}"
        )
    j_seq = _bessel_j_sequence(max_order, k * rho)
    total = complex(j_seq[0])
    for m in range(1, max_order + 1):
        w = (-1j) ** m
        total += w * j_seq[m] * (np.exp(1j * m * phi) + np.exp(-1j * m * phi))
    return complex(total)


@dataclass
class CylinderScatterParams:
    """Inputs of the TM cylinder scattering series.

    ``kind`` selects the boundary condition: "conducting" uses the
    -J_m(ka)/H2_m(ka) coefficients, "penetrable" matches Ez and its
    radial derivative at rho = a with the complex interior wavenumber
    k*sqrt(eps_r - j sigma/(omega eps0)) (exp(+j w t) convention).
    ``max_order`` must be at least ceil(k a) + 10.
    """

    a: float
    k: float
    eps_r: float = 1.0
    sigma: float = 0.0
    max_order: int = None
    kind: str = "penetrable"

    def __post_init__(self):
        if self.a <= 0 or self.k <= 0:
            raise ValidationError("need a > 0 and k > 0")
        if self.kind not in ("conducting", "penetrable"):
            raise ValidationError(f"unknown cylinder kind {self.kind!r}")
        needed = math.ceil(self.k * self.a) + 10
        if self.max_order is None:
            self.max_order = needed + 10
        if self.max_order < needed:
            raise ValidationError(
                f"max_order {self.max_order} < ceil(k a) + 10 = {needed}"
            )

    @property
    def omega(self) -> float:
        return C0 * self.k

    @property
    def interior_k(self) -> complex:
        eps_c = self.eps_r - 1j * self.sigma / (self.omega * EPS0)
        return self.k * complex(np.sqrt(complex(eps_c)))


def _scatter_coefficients(p: CylinderScatterParams) -> np.ndarray:
    """Per-order scattered-wave coefficients a_m, m = 0..max_order."""
    M = p.max_order
    ka = p.k * p.a
    j_ka = _bessel_j_sequence(M + 1, ka)
    y_ka = _bessel_y_sequence(M + 1, ka)
    h2_ka = j_ka - 1j * y_ka

    def deriv(seq, m):
        if m == 0:
            return -seq[1]
        return 0.5 * (seq[m - 1] - seq[m + 1])

    if p.kind == "conducting":
        return np.array([-j_ka[m] / h2_ka[m] for m in range(M + 1)])

    k1a = complex(p.interior_k * p.a)
    j_k1a = _bessel_j_sequence(M + 1, k1a)
    coeffs = np.zeros(M + 1, dtype=complex)
    for m in range(M + 1):
        jp0 = p.k * deriv(j_ka, m)
        hp0 = p.k * deriv(h2_ka, m)
        q = p.interior_k * deriv(j_k1a, m) / j_k1a[m]
        coeffs[m] = (jp0 - q * j_ka[m]) / (q * h2_ka[m] - hp0)
    return coeffs


def cylinder_scattered_tm(rho: float, phi: float,
                          p: CylinderScatterParams) -> complex:
    """Scattered Ez outside the cylinder for a unit incident plane wave
    traveling along +x (angle phi measured from the propagation axis)."""
    if rho < p.a:
        raise ValidationError(f"exterior evaluation needs rho >= a, got {rho}")
    M = p.max_order
    a_m = _scatter_coefficients(p)
    kr = p.k * rho
    j_kr = _bessel_j_sequence(M + 1, kr)
    y_kr = _bessel_y_sequence(M + 1, kr)
    h2_kr = j_kr - 1j * y_kr
    total = a_m[0] * h2_kr[0]
    for m in range(1, M + 1):
        w = (-1j) ** m
        total += w * a_m[m] * h2_kr[m] * (np.exp(1j * m * phi)
                                          + np.exp(-1j * m * phi))
    tail = abs(a_m[M] * h2_kr[M])
    if tail > 1e-8 * max(abs(total), 1e-30):
        raise ConvergenceError(
            f"cylinder series not converged at order {M} (tail {tail:.2e})"
        )
    return complex(total)


def cylinder_total_tm(rho: float, phi: float,
                      p: CylinderScatterParams) -> complex:
    """Total (incident + scattered) Ez outside the cylinder."""
    if rho < p.a:
        raise ValidationError(f"exterior evaluation needs rho >= a, got {rho}")
    inc = incident_plane_wave_expansion(rho, phi, p.k, p.max_order)
    return inc + cylinder_scattered_tm(rho, phi, p)


def cylinder_scattered_h_phi(rho: float, phi: float,
                             p: CylinderScatterParams) -> complex:
    """Azimuthal scattered H, derived from the Ez series via the curl
    relation H_phi = (1/(j w mu0)) dEz/drho; single source of truth for
    the coefficients."""
    if rho < p.a:
        raise ValidationError(f"exterior evaluation needs rho >= a, got {rho}")
    M = p.max_order
    a_m = _scatter_coefficients(p)
    kr = p.k * rho
    j_kr = _bessel_j_sequence(M + 2, kr)
    y_kr = _bessel_y_sequence(M + 2, kr)
    h2_kr = j_kr - 1j * y_kr

    def h2p(m):
        if m == 0:
            return -h2_kr[1]
        return 0.5 * (h2_kr[m - 1] - h2_kr[m + 1])

    total = a_m[0] * h2p(0)
    for m in range(1, M + 1):
        w = (-1j) ** m
        total += w * a_m[m] * h2p(m) * (np.exp(1j * m * phi)
                                        + np.exp(-1j * m * phi))
    return complex(p.k * total / (1j * p.omega * MU0))
