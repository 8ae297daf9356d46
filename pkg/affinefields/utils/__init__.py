import numpy as np

TOLERANCE = 1e-12
ADJOINT_TOLERANCE = 1e-10
GREEN_TOLERANCE = 1e-9
MOMENT_TOLERANCE = 1e-8
POSITIVITY_FLOOR = -1e-10
PRUNE_TOLERANCE = 1e-14
DEGREE_CAP = 12

BOSONIC = "bosonic"
FERMIONIC = "fermionic"
STATISTICS = (BOSONIC, FERMIONIC)

def frozenArray(values, dtype=float):
  """Returns a read-only copy of `values` as a numpy array."""
  array = np.array(values, dtype=dtype, copy=True)
  array.flags.writeable = False
  return array

def scaleOf(*arrays):
  """Returns max(1, largest absolute entry) over the given arrays; the
  reference magnitude for relative tolerances."""
  scale = 1.0
  for a in arrays:
    a = np.asarray(a)
    if a.size:
      scale = max(scale, float(np.max(np.abs(a))))
  return scale

def relativeError(a, b):
  """Returns |a - b| measured against the larger of the two magnitudes (and 1)."""
  a, b = np.asarray(a), np.asarray(b)
  if a.size == 0 and b.size == 0:
    return 0.0
  return float(np.max(np.abs(a - b))) / scaleOf(a, b)

def allclose(a, b, tol=TOLERANCE):
  return relativeError(a, b) <= tol

def checkStatistics(statistics):
  from affinefields.errors import StatisticsMismatch
  if statistics not in STATISTICS:
    raise StatisticsMismatch(
      "Invalid statistics; expected one of %s, actual=%r." % (STATISTICS, statistics))
  return statistics
