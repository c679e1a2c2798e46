"""Resolution pipeline for quantum-illumination target detection.

Assembles the closed-form resolution factor Theta (ideal, time dependent,
steady state), the leading-order lower bound F- ~= (1 - xi sqrt(Theta))/2,
and the exact-fidelity cross-check path built on the ``gaussian`` module.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .dynamics import UTrajectory
from .gaussian import (
    fidelity,
    fidelity_lower_bound,
    mean_thermal_occupation,
    received_cov_target_absent,
    received_cov_target_present,
    signal_idler_cov,
)

METHOD_TAGS = ("approx_leading_order", "exact_fidelity")

REGIME_TAGS = ("ideal", "bma", "nonmarkov", "asymptotic")

# trajectory source -> physical regime of the resulting series
SOURCE_TO_REGIME = {
    "ideal": "ideal",
    "bma": "bma",
    "volterra": "nonmarkov",
    "oracle": "nonmarkov",
    "asymptotic": "asymptotic",
}

XI_SMALLNESS_WARN = 0.05


@dataclass(frozen=True)
class IlluminationParams:
    """Protocol parameters: squeezing r, reflectivity xi, inverse temperature beta.

    The thermal background occupation n_bar and the combinations
    kappa1 = n_bar (n_bar + 1), kappa2 = 2 n_bar + 1 are derived, with
    kappa2^2 - 1 = 4 kappa1.
    """

    r: float
    xi: float
    beta: float

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValueError(f"squeezing r must be >= 0, got {self.r}")
        if not 0.0 < self.xi <= 1.0:
            raise ValueError(f"reflectivity xi must lie in (0, 1], got {self.xi}")
        if self.beta <= 0:
            raise ValueError(f"inverse temperature beta must be > 0, got {self.beta}")
        if self.xi > XI_SMALLNESS_WARN:
            warnings.warn(
                f"xi = {self.xi} is not small; the leading-order bound "
                "assumes 0 < xi << 1",
                stacklevel=2,
            )
        if self.n_bar == 0.0:
            raise ValueError(
                f"beta = {self.beta} underflows the thermal occupation to 0"
            )

    @property
    def n_bar(self) -> float:
        return mean_thermal_occupation(self.beta)

    @property
    def kappa1(self) -> float:
        n = self.n_bar
        return n * (n + 1.0)

    @property
    def kappa2(self) -> float:
        return 2.0 * self.n_bar + 1.0


@dataclass(frozen=True)
class ResolutionSeries:
    """Time series of the resolution lower bound F-(t)."""

    times: np.ndarray
    f_minus: np.ndarray
    method: str
    regime: str

    def __post_init__(self) -> None:
        times = np.array(self.times, dtype=float)
        vals = np.array(self.f_minus, dtype=float)
        if times.ndim != 1 or vals.shape != times.shape or times.size == 0:
            raise ValueError("times and f_minus must be equal-length 1d sequences")
        if self.method not in METHOD_TAGS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if self.regime not in REGIME_TAGS:
            raise ValueError(f"unknown regime tag {self.regime!r}")
        if np.any(vals < -1e-9) or np.any(vals > 0.5 + 1e-9):
            bad = vals[(vals < -1e-9) | (vals > 0.5 + 1e-9)][0]
            raise ValueError(f"f_minus value {bad} outside [0, 1/2] beyond 1e-9")
        times.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "f_minus", vals)


def theta_ideal(p: IlluminationParams) -> float:
    """Resolution factor of the lossless protocol; time independent.

    Theta_ideal = (sinh^2 r - n_bar)^2 / (4 kappa1)
                  + (sinh^2 2r / 4) / (1 + n_bar + kappa2 sinh^2 r).
    """
    sh2 = np.sinh(p.r) ** 2
    first = (sh2 - p.n_bar) ** 2 / (4.0 * p.kappa1)
    second = (np.sinh(2.0 * p.r) ** 2 / 4.0) / (1.0 + p.n_bar + p.kappa2 * sh2)
    return float(first + second)


def theta_noisy(p: IlluminationParams, u: complex) -> float:
    """Resolution factor under decoherence, a function of |u| alone.

    Theta(t) = {1 + 4 kappa1 [1 + 8 sinh^2 r cosh^2 r |u|^4]
                + lam1 Nbar + lam2 Nbar^2 + lam3 Nbar^3}
               / {16 kappa1 (1 + kappa2 Nbar)},
    Nbar = 2 n(t) + 1, n(t) = |u|^2 sinh^2 r, lam1 = 2 n_bar (4 kappa1
    + kappa2) - 1, lam2 = -1 - 8 kappa1, lam3 = kappa2.  At |u| = 1 this
    reduces to theta_ideal; at u = 0 it is n_bar/(4 (n_bar+1)) for every r.
    """
    abs_u = abs(u)
    if abs_u > 1.0 + 1e-6:
        raise ValueError(f"|u| = {abs_u} exceeds 1 beyond tolerance")
    k1 = p.kappa1
    k2 = p.kappa2
    n_bar = p.n_bar
    lam1 = 2.0 * n_bar * (4.0 * k1 + k2) - 1.0
    lam2 = -1.0 - 8.0 * k1
    lam3 = k2
    n_t = abs_u**2 * np.sinh(p.r) ** 2
    nbar_t = 2.0 * n_t + 1.0
    pair = 8.0 * np.sinh(p.r) ** 2 * np.cosh(p.r) ** 2 * abs_u**4
    num = (
        1.0
        + 4.0 * k1 * (1.0 + pair)
        + lam1 * nbar_t
        + lam2 * nbar_t**2
        + lam3 * nbar_t**3
    )
    return float(num / (16.0 * k1 * (1.0 + k2 * nbar_t)))


def theta_steady(p: IlluminationParams, z: float) -> float:
    """Long-time resolution factor when |u| settles at the residue Z.

    Theta(inf) = (Z^2 sinh^2 r - n_bar)^2 / (4 kappa1)
                 + (Z^4 sinh^2 2r / 4) / (1 + n_bar + kappa2 Z^2 sinh^2 r).
    Z = 1 recovers theta_ideal; Z = 0 gives n_bar/(4 (n_bar+1)).
    """
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"residue Z must lie in [0, 1], got {z}")
    sh2 = np.sinh(p.r) ** 2
    first = (z**2 * sh2 - p.n_bar) ** 2 / (4.0 * p.kappa1)
    second = (z**4 * np.sinh(2.0 * p.r) ** 2 / 4.0) / (
        1.0 + p.n_bar + p.kappa2 * z**2 * sh2
    )
    return float(first + second)


def f_minus_approx(p: IlluminationParams, theta: float) -> float:
    """Leading-order resolution bound (1 - xi sqrt(Theta))/2."""
    if theta < 0:
        raise ValueError(f"theta must be >= 0, got {theta}")
    prod = p.xi * np.sqrt(theta)
    if prod > 1.0:
        raise ValueError(
            f"xi sqrt(theta) = {prod} > 1; leading-order expansion invalid"
        )
    return float(0.5 * (1.0 - prod))


def f_minus_exact(p: IlluminationParams, u: complex) -> float:
    """Unexpanded resolution bound via the Gaussian fidelity of rho1 vs rho0."""
    sigma = signal_idler_cov(p.r, u)
    n_t = abs(u) ** 2 * np.sinh(p.r) ** 2
    sigma0 = received_cov_target_absent(p.r, p.n_bar, n_t)
    sigma1 = received_cov_target_present(p.xi, sigma, sigma0)
    return fidelity_lower_bound(fidelity(sigma1, sigma0))


def resolution_series(
    p: IlluminationParams,
    traj: UTrajectory,
    method: str = "approx_leading_order",
) -> ResolutionSeries:
    """Map a decoherence trajectory to the resolution bound F-(t)."""
    if method not in METHOD_TAGS:
        raise ValueError(f"unknown method tag {method!r}")
    regime = SOURCE_TO_REGIME[traj.source]
    if method == "approx_leading_order":
        vals = [f_minus_approx(p, theta_noisy(p, u)) for u in traj.values]
    else:
        vals = [f_minus_exact(p, u) for u in traj.values]
    return ResolutionSeries(
        times=traj.times,
        f_minus=np.array(vals),
        method=method,
        regime=regime,
    )


def dump_series_csv(series: ResolutionSeries, path, comment: str | None = None) -> None:
    """Write a resolution series as CSV with header t,f_minus,method,regime."""
    with open(path, "w") as fh:
        if comment is not None:
            fh.write(f"# {comment}\n")
        fh.write("t,f_minus,method,regime\n")
        for t, v in zip(series.times, series.f_minus):
            fh.write(f"{t:.17g},{v:.17g},{series.method},{series.regime}\n")
