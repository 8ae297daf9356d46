"""Rewriting of generator words into normal order.

A word is a tuple of basis indices. Normal order is ascending index order:
non-decreasing for bosons, strictly increasing for fermions. Adjacent
transpositions apply the defining relations

  bosonic:    Ψ_j Ψ_i = Ψ_i Ψ_j - i·g[i][j]·𝟏           (j > i)
  fermionic:  Ψ_j Ψ_i = -Ψ_i Ψ_j + g[i][j]·𝟏            (j > i)
              Ψ_i Ψ_i = ½·g[i][i]·𝟏

Each step lowers the number of inversions or the length of the word, so the
rewriting terminates.
"""
from collections import defaultdict

from affinefields.utils import BOSONIC, PRUNE_TOLERANCE

def addInto(terms, other, factor=1.0):
  for word, coefficient in other.items():
    terms[word] += factor * coefficient

def pruned(terms, tol=PRUNE_TOLERANCE):
  return {w: complex(c) for w, c in terms.items() if abs(c) > tol}

def firstDefect(word, statistics):
  """Returns the first position p where word[p], word[p+1] violate normal
  order, or None."""
  for p in range(len(word) - 1):
    a, b = word[p], word[p + 1]
    if a > b or (a == b and statistics != BOSONIC):
      return p
  return None

def normalOrder(word, gram, statistics, cache=None):
  """Returns the normal form of the word as a dict word -> coefficient."""
  word = tuple(word)
  if cache is not None and word in cache:
    return cache[word]
  p = firstDefect(word, statistics)
  if p is None:
    result = {word: 1.0 + 0.0j}
  else:
    a, b = word[p], word[p + 1]
    shorter = word[:p] + word[p + 2:]
    terms = defaultdict(complex)
    if a == b:
      addInto(terms, normalOrder(shorter, gram, statistics, cache), 0.5 * gram[a][a])
    else:
      swapped = word[:p] + (b, a) + word[p + 2:]
      if statistics == BOSONIC:
        addInto(terms, normalOrder(swapped, gram, statistics, cache))
        addInto(terms, normalOrder(shorter, gram, statistics, cache), -1j * gram[b][a])
      else:
        addInto(terms, normalOrder(swapped, gram, statistics, cache), -1.0)
        addInto(terms, normalOrder(shorter, gram, statistics, cache), gram[b][a])
    result = pruned(terms)
  if cache is not None:
    cache[word] = result
  return result
