"""Ohmic-family bath layer: spectral density, memory kernel, bound states.

Everything is expressed in natural units with the system frequency omega_0 = 1
(times in 1/omega_0, frequencies and energies in omega_0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize, special

OMEGA0 = 1.0

# Exponential cutoff makes the J tail beyond 40 omega_c smaller than 1e-17
# of the integrand scale, so frequency integrals stop there.
CUTOFF_MULTIPLE = 40.0


@dataclass(frozen=True)
class SpectralDensity:
    """Bath description J(w) = eta * w^s * omega_c^(1-s) * exp(-w/omega_c).

    eta is the dimensionless coupling, s the Ohmicity index and omega_c the
    cutoff frequency in units of omega_0.
    """

    eta: float
    s: float
    omega_c: float

    def __post_init__(self) -> None:
        if self.eta < 0:
            raise ValueError(f"coupling eta must be >= 0, got {self.eta}")
        if self.s <= 0:
            raise ValueError(f"Ohmicity index s must be > 0, got {self.s}")
        if self.omega_c <= 0:
            raise ValueError(f"cutoff omega_c must be > 0, got {self.omega_c}")

    @property
    def ohmicity_class(self) -> str:
        if self.s < 1.0:
            return "sub-ohmic"
        if self.s == 1.0:
            return "ohmic"
        return "super-ohmic"


@dataclass(frozen=True)
class BoundState:
    """Isolated negative eigenenergy E_b and its residue weight Z."""

    energy_E_b: float
    residue_Z: float

    def __post_init__(self) -> None:
        if not self.energy_E_b < 0:
            raise ValueError(f"bound-state energy must be < 0, got {self.energy_E_b}")
        if not 0.0 < self.residue_Z <= 1.0:
            raise ValueError(f"residue Z must lie in (0, 1], got {self.residue_Z}")


def evaluate_j(sd: SpectralDensity, omega):
    """Spectral density J(omega); accepts a scalar or an ndarray, omega >= 0."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise ValueError("omega must be >= 0")
    out = sd.eta * np.power(w, sd.s) * sd.omega_c ** (1.0 - sd.s) * np.exp(-w / sd.omega_c)
    return float(out) if out.ndim == 0 else out


def memory_kernel(sd: SpectralDensity, x):
    """Memory kernel mu(x) = integral_0^inf J(w) e^{-iwx} dw, closed form.

    For the Ohmic family the transform evaluates to
    eta * omega_c^(1-s) * Gamma(s+1) / (1/omega_c + ix)^(s+1).
    Accepts a scalar or an ndarray, x >= 0.
    """
    xv = np.asarray(x, dtype=float)
    if np.any(xv < 0):
        raise ValueError("x must be >= 0")
    out = (
        sd.eta
        * sd.omega_c ** (1.0 - sd.s)
        * special.gamma(sd.s + 1.0)
        / (1.0 / sd.omega_c + 1j * xv) ** (sd.s + 1.0)
    )
    return complex(out) if out.ndim == 0 else out


def lamb_shift(sd: SpectralDensity, E: float, tol: float = 1e-8) -> float:
    """Cauchy principal value of integral_0^inf J(w)/(E-w) dw for E > 0.

    Uses singularity subtraction on a finite cutoff:
      PV = integral_0^L [J(w)-J(E)]/(E-w) dw + J(E) ln(E/(L-E)),
    starting at L = max(40 omega_c, 2E) and doubling L until the value moves
    by <= tol.
    """
    if E <= 0:
        raise ValueError("lamb_shift needs E > 0 (pole inside the band); use y_bar for E < 0")
    if sd.eta == 0.0:
        return 0.0
    j_at_e = evaluate_j(sd, E)

    def integrand(w: float) -> float:
        if w == E:
            # removable point: limit is -J'(E); quad never lands exactly here
            return 0.0
        return (evaluate_j(sd, w) - j_at_e) / (E - w)

    lam = max(CUTOFF_MULTIPLE * sd.omega_c, 2.0 * E)
    prev = None
    for _ in range(10):
        val, _ = integrate.quad(integrand, 0.0, lam, limit=400, points=[E])
        total = val + j_at_e * np.log(E / (lam - E))
        if prev is not None and abs(total - prev) <= tol:
            return total
        prev = total
        lam *= 2.0
    raise ArithmeticError(
        f"lamb_shift cutoff doubling did not converge at E={E}: last change "
        f"{abs(total - prev):.3e} > {tol}"
    )


def y_bar(sd: SpectralDensity, E: float) -> float:
    """Spectrum function ybar(E) = omega_0 - integral_0^inf J(w)/(w-E) dw, E < 0.

    Strictly decreasing on E < 0; its fixed point ybar(E) = E is the
    bound-state energy.
    """
    if E >= 0:
        raise ValueError("y_bar is defined for E < 0 (below the continuum band)")
    lam = CUTOFF_MULTIPLE * sd.omega_c
    val, _ = integrate.quad(lambda w: evaluate_j(sd, w) / (w - E), 0.0, lam, limit=200)
    return OMEGA0 - val


def bound_state_exists(sd: SpectralDensity) -> bool:
    """Existence test: requires the band-edge integral of J(w)/w to exceed omega_0.

    ybar(E) = E has a root on E < 0 iff ybar(0-) < 0, i.e. iff
    integral_0^inf J(w)/w dw > omega_0.  The integral is evaluated by
    quadrature rather than its Gamma-function closed form so that detection
    is independent of the analytic threshold; values within 1e-9 of the
    boundary count as absent (the root would sit on the band edge itself).
    """
    if sd.eta == 0.0:
        return False
    val, _ = integrate.quad(
        lambda w: evaluate_j(sd, w) / w,
        0.0,
        CUTOFF_MULTIPLE * sd.omega_c,
        limit=200,
    )
    return bool(val > OMEGA0 + 1e-9)


def bound_state_threshold_eta(s: float, omega_c: float) -> float:
    """Analytic coupling threshold eta_c = omega_0 / (omega_c * Gamma(s))."""
    return OMEGA0 / (omega_c * special.gamma(s))


def find_bound_state(sd: SpectralDensity) -> BoundState | None:
    """Solve ybar(E) = E on E < 0; returns None when no bound state exists.

    Bisection on f(E) = ybar(E) - E over a bracket expanded downward from
    [-eta*omega_c*Gamma(s) - 1, -eps]; f is strictly decreasing, so the root
    is unique. The residue is Z = 1 / (1 + integral_0^inf J(w)/(E_b-w)^2 dw).
    """
    if not bound_state_exists(sd):
        return None

    def f(E: float) -> float:
        return y_bar(sd, E) - E

    hi = -1e-12
    lo = -(sd.eta * sd.omega_c * special.gamma(sd.s)) - 1.0
    for _ in range(60):
        if f(lo) > 0:
            break
        lo *= 2.0
    else:
        raise ArithmeticError("bound-state bracket expansion failed after 60 doublings")
    if f(hi) >= 0:
        raise ArithmeticError("bound state sits within 1e-12 of the band edge; not resolvable")
    e_b = optimize.bisect(f, lo, hi, xtol=1e-15, rtol=1e-12)
    lam = CUTOFF_MULTIPLE * sd.omega_c
    # near threshold |E_b| << omega_c and the integrand peaks sharply at
    # w ~ |E_b|; explicit breakpoints at that scale keep the adaptive
    # subdivision from skipping over the peak entirely
    pts = [p for k in (1.0, 10.0, 100.0, 1e4) if 0.0 < (p := -e_b * k) < lam]
    resid_int, _ = integrate.quad(
        lambda w: evaluate_j(sd, w) / (e_b - w) ** 2, 0.0, lam,
        points=pts, limit=200,
    )
    if resid_int < 0.0:
        raise ArithmeticError(
            f"residue quadrature failed (negative integral {resid_int:g} "
            f"for a positive integrand) at E_b={e_b:g}"
        )
    z = 1.0 / (1.0 + resid_int)
    return BoundState(energy_E_b=e_b, residue_Z=z)


def bma_constants(sd: SpectralDensity) -> tuple[float, float]:
    """Born-Markov decay rate kappa = pi*J(omega_0) and Lamb shift Delta(omega_0)."""
    kappa = np.pi * evaluate_j(sd, OMEGA0)
    delta = 0.0 if sd.eta == 0.0 else lamb_shift(sd, OMEGA0)
    return kappa, delta
