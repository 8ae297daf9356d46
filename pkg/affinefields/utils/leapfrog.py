"""Explicit leapfrog stepping for the lattice Klein-Gordon operator

  (P_V u)(t,x) = (u(t+1,x) - 2u(t,x) + u(t-1,x))/dt²
               - (u(t,x+1) - 2u(t,x) + u(t,x-1))/dx² + m² u(t,x)

on arrays of shape (nT, nX), periodic in x. The stencil is only evaluated on
the interior slices 1..nT-2; rows 0 and nT-1 of every result are zero.

The recursions are the Green operators: the scheme is lower triangular in time,
so zeros ahead of a source stay exactly zero.
"""
import numpy as np

def laplacian(row, dx):
  return (np.roll(row, -1) - 2.0 * row + np.roll(row, 1)) / (dx * dx)

def kleinGordon(values, dx, dt, mass):
  """Applies P_V on the interior slices."""
  u = np.asarray(values, dtype=float)
  out = np.zeros_like(u)
  inner = u[1:-1]
  timeTerm = (u[2:] - 2.0 * inner + u[:-2]) / (dt * dt)
  spaceTerm = (np.roll(inner, -1, axis=1) - 2.0 * inner + np.roll(inner, 1, axis=1)) / (dx * dx)
  out[1:-1] = timeTerm - spaceTerm + mass * mass * inner
  return out

def _step(current, previous, source, dx, dt, mass):
  return 2.0 * current - previous + dt * dt * (laplacian(current, dx) - mass * mass * current + source)

def retarded(source, dx, dt, mass):
  """Solves P_V u = source on the interior with u(0) = u(1) = 0, stepping forward."""
  h = np.asarray(source, dtype=float)
  u = np.zeros_like(h)
  for t in range(1, h.shape[0] - 1):
    u[t + 1] = _step(u[t], u[t - 1], h[t], dx, dt, mass)
  return u

def advanced(source, dx, dt, mass):
  """Solves P_V u = source on the interior with u(nT-1) = u(nT-2) = 0, stepping backward."""
  return retarded(np.asarray(source, dtype=float)[::-1], dx, dt, mass)[::-1].copy()

def evolve(u, uNext, t0, nT, dx, dt, mass):
  """Returns the homogeneous solution (nT, nX) taking the values `u`, `uNext`
  on slices t0, t0+1; the equation holds on every interior slice."""
  u = np.asarray(u, dtype=float)
  out = np.zeros((nT, len(u)))
  out[t0] = u
  out[t0 + 1] = uNext
  zero = np.zeros(len(u))
  for t in range(t0 + 1, nT - 1):
    out[t + 1] = _step(out[t], out[t - 1], zero, dx, dt, mass)
  for t in range(t0, 0, -1):
    out[t - 1] = _step(out[t], out[t + 1], zero, dx, dt, mass)
  return out
