from functools import lru_cache

from sympy.combinatorics.permutations import Permutation
from sympy.utilities.iterables import multiset_partitions

from affinefields.errors import RangeError

MAX_ARGUMENTS = 8

def _checkRange(n):
  if not 1 <= n <= MAX_ARGUMENTS:
    raise RangeError("Invalid argument count; expected 1 <= n <= %d, actual=%d." % (MAX_ARGUMENTS, n))

@lru_cache(maxsize=None)
def setPartitions(n):
  """Returns every partition of {1..n} as a tuple of blocks; each block is
  sorted ascending. There are Bell(n) of them."""
  _checkRange(n)
  return tuple(tuple(tuple(sorted(block)) for block in p) for p in multiset_partitions(list(range(1, n + 1))))

def partitionsOf(elements):
  """Partitions of a tuple of distinct elements, blocks kept in the order of
  `elements`."""
  position = {e: i for i, e in enumerate(elements)}
  for p in setPartitions(len(elements)):
    yield tuple(tuple(sorted((elements[i - 1] for i in block), key=position.get)) for block in p)

@lru_cache(maxsize=None)
def perfectPairings(n):
  """Returns the perfect pairings of positions 0..n-1 as (pairs, sign):
  pairs (a, b) with a < b, ordered by their first element, and the sign of
  the permutation listing the pairs one after the other."""
  if n % 2:
    return ()
  if n == 0:
    return (((), 1),)
  out = []
  for pairing in _pairings(tuple(range(n))):
    order = [i for pair in pairing for i in pair]
    out.append((pairing, -1 if Permutation(order).is_odd else 1))
  return tuple(out)

def _pairings(positions):
  if not positions:
    yield ()
    return
  first = positions[0]
  for k in range(1, len(positions)):
    rest = positions[1:k] + positions[k + 1:]
    for pairs in _pairings(rest):
      yield ((first, positions[k]),) + pairs

def blockSign(blocks, elements):
  """Sign of the permutation that lists `elements` block after block."""
  position = {e: i for i, e in enumerate(elements)}
  order = [position[e] for block in blocks for e in block]
  return -1 if Permutation(order).is_odd else 1

def truncate(moment, arguments, signed=False):
  """Returns the truncated moment of `arguments` (a tuple of distinct keys),
  defined implicitly by

    moment(S) = Σ over partitions π of S of Π_{B ∈ π} truncated(B)

  and solved recursively over subsets. `moment` maps a tuple of keys to a
  value; subsets are passed in the order of `arguments`. With `signed`, each
  partition carries the sign of its block permutation (anticommuting
  arguments)."""
  _checkRange(len(arguments))
  cache = {}

  def truncated(subset):
    if subset in cache:
      return cache[subset]
    value = moment(subset)
    for p in partitionsOf(subset):
      if len(p) == 1:
        continue
      product = blockSign(p, subset) if signed else 1.0
      for block in p:
        product = product * truncated(block)
      value = value - product
    cache[subset] = value
    return value

  return truncated(tuple(arguments))
