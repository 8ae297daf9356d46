"""The vacuum of the lattice Klein-Gordon field.

Each spatial Fourier mode k evolves under the leapfrog scheme as a discrete
oscillator u(t+1) = 2cos(θ_k)·u(t) - u(t-1) with

  cos θ_k = 1 - dt²Ω_k²/2,   Ω_k² = m² + (4/dx²)·sin²(πk/nX).

The positive-frequency mode F_k has Cauchy data (e_k, e^{-iθ_k}·e_k). With
Z_k = F_kᵀ·g and β_k = Im(F̄_kᵀ·g·F_k) > 0 the two-point matrix is

  ω₂ = Σ_k conj(Z_k)ᵀ Z_k / β_k

whose imaginary part is g/2.
"""
import numpy as np

from affinefields.errors import LatticeError

def modeAngles(lattice):
  """Returns θ_k for k = 0..nX-1; raises `LatticeError` if a mode is unstable."""
  k = np.arange(lattice.nX)
  omega2 = lattice.mass ** 2 + (4.0 / lattice.dx ** 2) * np.sin(np.pi * k / lattice.nX) ** 2
  cosine = 1.0 - 0.5 * lattice.dt ** 2 * omega2
  if np.any(np.abs(cosine) >= 1.0):
    raise LatticeError("Unstable lattice modes; expected dt·Ω_max < 2, actual=%r." % (lattice.dt * np.sqrt(omega2.max())))
  return np.arccos(cosine)

def positiveModes(lattice):
  """Returns the (nX, 2nX) complex array of mode Cauchy data F_k."""
  n = lattice.nX
  theta = modeAngles(lattice)
  waves = np.exp(2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n)
  return np.hstack((waves, np.exp(-1j * theta)[:, None] * waves))

def vacuumTwoPoint(modes, gram):
  """Returns Σ_k conj(Z_k)ᵀ Z_k / β_k for the rows F_k of `modes`."""
  Z = modes @ gram
  beta = np.imag(np.einsum("ka,ab,kb->k", modes.conj(), gram, modes))
  if np.any(beta <= 0):
    raise LatticeError("Mode with non-positive symplectic norm: %s." % beta.min())
  return (Z.conj().T * (1.0 / beta)) @ Z

def oscillatorTwoPoint(theta, c=1.0):
  """Two-point matrix of the vacuum of a single discrete oscillator with
  angle θ and equal-time form c·[[0, -1], [1, 0]]."""
  gram = c * np.array([[0.0, -1.0], [1.0, 0.0]])
  modes = np.array([[1.0, np.exp(-1j * theta)]])
  return vacuumTwoPoint(modes, gram)

def groundStateTwoPoint(phaseSpace):
  return vacuumTwoPoint(positiveModes(phaseSpace.lattice), phaseSpace.gramCanonical(withNull=False))
