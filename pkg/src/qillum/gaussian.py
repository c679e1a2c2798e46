"""Two-mode Gaussian states and the closed-form fidelity.

Quadrature convention: x = (a' + a)/sqrt(2), p = i(a' - a)/sqrt(2), ordering
R = (x_A, p_A, x_B, p_B), so the vacuum covariance is I/2 and a thermal mode
carries (2*nbar + 1)/2 on the diagonal. All the constants in the fidelity
formula assume this normalization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# symplectic form: [R_l, R_m] = i * OMEGA_lm
OMEGA = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)
OMEGA.setflags(write=False)

PHYSICALITY_SLACK = 1e-9


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """The two symplectic eigenvalues of a 4x4 covariance, ascending."""
    ev = np.linalg.eigvals(OMEGA @ cov)
    # eigenvalues come in +-(i nu) pairs; collapse the duplicates
    return np.sort(np.abs(ev.imag))[::2]


@dataclass(frozen=True)
class GaussianState2Mode:
    """Zero- or displaced-mean Gaussian state of modes (A, B)."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self) -> None:
        mean = np.array(self.mean, dtype=float)
        cov = np.array(self.cov, dtype=float)
        if mean.shape != (4,):
            raise ValueError(f"mean must have 4 entries, got shape {mean.shape}")
        if cov.shape != (4, 4):
            raise ValueError(f"cov must be 4x4, got shape {cov.shape}")
        if np.max(np.abs(cov - cov.T)) > 1e-12:
            raise ValueError("cov must be symmetric to 1e-12")
        nu_min = float(symplectic_eigenvalues(cov)[0])
        if nu_min < 0.5 - PHYSICALITY_SLACK:
            raise ValueError(
                f"unphysical covariance: smallest symplectic eigenvalue {nu_min} < 1/2"
            )
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)


def mean_thermal_occupation(beta: float) -> float:
    """Planck occupation nbar = 1/(e^beta - 1) at omega_0 = 1."""
    if beta <= 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    with np.errstate(over="ignore"):
        return float(1.0 / np.expm1(beta))


def signal_idler_cov(r: float, u: complex) -> GaussianState2Mode:
    """Covariance of the stored signal-idler pair after decoherence u.

    Both modes decay with the same factor: occupations n(t) = |u|^2 sinh^2 r
    on the diagonal blocks, and off-diagonal correlation block
    sinh(2r)/2 * [[-Re u^2, -Im u^2], [-Im u^2, Re u^2]]. At u = e^{-it}
    this is the ideal two-mode squeezed covariance with a rotating phase.
    """
    if r < 0:
        raise ValueError(f"squeezing r must be >= 0, got {r}")
    u = complex(u)
    if abs(u) > 1.0 + 1e-6:
        raise ValueError(f"|u| must be <= 1, got {abs(u)}")
    n_t = abs(u) ** 2 * np.sinh(r) ** 2
    u_sq = u * u
    b = np.array([[-u_sq.real, -u_sq.imag], [-u_sq.imag, u_sq.real]])
    cov = np.zeros((4, 4))
    cov[:2, :2] = (2.0 * n_t + 1.0) / 2.0 * np.eye(2)
    cov[2:, 2:] = (2.0 * n_t + 1.0) / 2.0 * np.eye(2)
    cov[:2, 2:] = np.sinh(2.0 * r) / 2.0 * b
    cov[2:, :2] = cov[:2, 2:].T
    return GaussianState2Mode(mean=np.zeros(4), cov=cov)


def received_cov_target_absent(r: float, n_bar: float, n_t: float) -> GaussianState2Mode:
    """Target absent: thermal background on A, decohered idler on B."""
    if r < 0:
        raise ValueError(f"squeezing r must be >= 0, got {r}")
    if n_bar <= 0:
        raise ValueError(f"background occupation n_bar must be > 0, got {n_bar}")
    if n_t < 0:
        raise ValueError(f"idler occupation n_t must be >= 0, got {n_t}")
    cov = np.diag(
        [
            (2.0 * n_bar + 1.0) / 2.0,
            (2.0 * n_bar + 1.0) / 2.0,
            (2.0 * n_t + 1.0) / 2.0,
            (2.0 * n_t + 1.0) / 2.0,
        ]
    )
    return GaussianState2Mode(mean=np.zeros(4), cov=cov)


def received_cov_target_present(
    xi: float, sigma: GaussianState2Mode, sigma0: GaussianState2Mode
) -> GaussianState2Mode:
    """Target present: convex mixture covariance xi*sigma + (1-xi)*sigma0.

    Valid as a covariance only because both inputs have zero mean.
    """
    if not 0.0 < xi <= 1.0:
        raise ValueError(f"reflectivity xi must lie in (0, 1], got {xi}")
    if np.any(sigma.mean != 0.0) or np.any(sigma0.mean != 0.0):
        raise ValueError("mixture covariance formula requires zero-mean inputs")
    cov = xi * sigma.cov + (1.0 - xi) * sigma0.cov
    return GaussianState2Mode(mean=np.zeros(4), cov=cov)


def _det3(a):
    return (
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


def _det4(m):
    """4x4 determinant by cofactor expansion; preserves extended precision."""
    cols = np.arange(4)
    out = m.dtype.type(0)
    sign = 1.0
    for j in range(4):
        minor = m[1:][:, cols != j]
        out = out + sign * m[0, j] * _det3(minor)
        sign = -sign
    return out


def _snap_structural_zero(value, scale):
    # covariance entries carry double rounding, so a 4x4 determinant is only
    # trustworthy down to ~eps*scale^4; below that it is a structural zero
    # (a pure state), and keeping the noise would let the later square roots
    # amplify it by half its exponent
    tol = 256.0 * 2.220446049250313e-16 * max(float(scale), 1.0) ** 4
    return value * 0.0 if abs(value) < tol else value


def fidelity(state0: GaussianState2Mode, state1: GaussianState2Mode) -> float:
    """Closed-form fidelity of two two-mode Gaussian states.

    F = exp[-(d1-d0)^T ((s1+s0)^{-1} / 2) (d1-d0)]
        / { sqrt(A) + sqrt(B) - sqrt[(sqrt(A)+sqrt(B))^2 - L] },
    L = det(s1+s0), A = 16 det(Om s1 Om s0 - I/4),
    B = 16 det(s1 + i Om/2) det(s0 + i Om/2).

    Determinants are evaluated by cofactor expansion in extended precision:
    (sqrt(A)+sqrt(B))^2 - L cancels catastrophically for near-identical
    states and its square root amplifies the noise.  For a pure state the
    factor det(s + i Om/2) vanishes identically, so values below the input
    rounding floor are snapped to zero before the roots are taken.
    """
    if np.array_equal(state0.cov, state1.cov) and np.array_equal(state0.mean, state1.mean):
        return 1.0
    ld = np.longdouble
    cld = np.clongdouble
    s0 = state0.cov.astype(ld)
    s1 = state1.cov.astype(ld)
    om = OMEGA.astype(ld)
    lam = _det4(s0 + s1)
    a_val = 16.0 * _det4(om @ s1 @ om @ s0 - 0.25 * np.eye(4, dtype=ld))
    d1 = _det4(s1.astype(cld) + 0.5j * om.astype(cld))
    d0 = _det4(s0.astype(cld) + 0.5j * om.astype(cld))
    for d in (d0, d1):
        if abs(float(d.imag)) > 1e-10:
            raise ArithmeticError(
                f"det(cov + i Omega/2) has imaginary residue {float(d.imag):.3e}"
            )
    d1_re = _snap_structural_zero(d1.real, np.max(np.abs(s1)))
    d0_re = _snap_structural_zero(d0.real, np.max(np.abs(s0)))
    b_val = 16.0 * d1_re * d0_re
    for name, val in (("A", a_val), ("B", b_val)):
        if val < -1e-9:
            raise ArithmeticError(f"radicand {name} = {float(val):.3e} is negative")
    sqrt_a = np.sqrt(max(a_val, ld(0.0)))
    sqrt_b = np.sqrt(max(b_val, ld(0.0)))
    rad = (sqrt_a + sqrt_b) ** 2 - lam
    if rad < -1e-9:
        raise ArithmeticError(f"radicand (sqrt A + sqrt B)^2 - Lambda = {float(rad):.3e}")
    denom = sqrt_a + sqrt_b - np.sqrt(max(rad, ld(0.0)))
    delta = state1.mean - state0.mean
    if np.any(delta != 0.0):
        total = (state0.cov + state1.cov).astype(float)
        exp_term = float(np.exp(-0.5 * delta @ np.linalg.solve(total, delta)))
    else:
        exp_term = 1.0
    f_val = exp_term / float(denom)
    if not -1e-9 <= f_val <= 1.0 + 1e-9:
        raise ArithmeticError(f"fidelity {f_val} outside [0, 1] beyond 1e-9 slack")
    return min(max(f_val, 0.0), 1.0)


def fidelity_lower_bound(f: float) -> float:
    """Resolution lower bound F- = (1 - sqrt(1 - F))/2, monotone in F."""
    if not -1e-9 <= f <= 1.0 + 1e-9:
        raise ValueError(f"fidelity must lie in [0, 1], got {f}")
    f = min(max(f, 0.0), 1.0)
    return 0.5 * (1.0 - np.sqrt(1.0 - f))
