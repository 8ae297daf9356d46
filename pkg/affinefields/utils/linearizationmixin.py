import numpy as np

from affinefields.observable import DualObservable
from affinefields.section import Section

class LinearizationMixin(object):
  """Passage between the affine phase space and the phase space of the
  linearized theory. Classes of the linearized theory are represented by the
  Cauchy data of G(h); `eta` sends them to the affine classes of the
  observables ⟨h, · - ŝ*⟩, whose I′ vanishes."""

  def linearObservable(self, h):
    """Returns ⟨h, · - ŝ*⟩: constant part -h·ŝ*, linear part h."""
    return DualObservable(self.lattice, -(h * self.referenceSolution), h)

  def eta(self, h):
    """Returns the affine class of the linearized observable of `h`."""
    if not isinstance(h, Section):
      h = Section(self.lattice, h)
    h.checkInterior("linear observable")
    return self.classify(self.linearObservable(h))

  def etaInverse(self, phi):
    """Returns the linearized class of `phi`: the Cauchy data of G(φ_V).
    The scalar part of the class is discarded."""
    return self.classify(phi).data

  def realizeLinear(self, data):
    """Returns a compactly supported h with G(h) carrying `data`.

    h = P_V(χU) is nonzero only on the two slices where χ switches on; past
    them it is P_V U = 0, so only those slices are kept."""
    lat = self.lattice
    t = self.realizationSlice
    solution = self.homogeneousSolution(data)
    chi = np.zeros(lat.shape)
    chi[t:] = 1.0
    return self.operator.applyLinear(Section(lat, chi) * solution).restrictedTo(t - 1, t)

  def etaOfData(self, data):
    """Returns eta applied to a representative of the linearized class `data`."""
    return self.eta(self.realizeLinear(data))
