"""Quantum illumination resolution under structured-bath decoherence.

Submodules:
  spectral      Ohmic-family baths, memory kernels, bound-state search.
  dynamics      Decoherence factor u(t): Volterra, Born-Markov, ideal,
                long-time asymptotics, and a discretized-bath oracle.
  gaussian      Two-mode Gaussian states and the closed-form fidelity.
  illumination  Resolution figure of merit Theta and the F- lower bound.
  cli           Config-driven sweep drivers emitting CSV/JSON artifacts.
"""

__version__ = "0.1.0"
