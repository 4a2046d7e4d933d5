"""Weighted poset weights and distances on F_q^n.

Two evaluation paths are kept deliberately separate:

* the reference path follows the general definition (sum of coordinate weights
  over the maximal elements of the support ideal, plus ``M_w`` for every other
  ideal element) and works for any poset;
* the chain path uses ``w(u_i) + (i - 1) * M_w`` at the top nonzero coordinate
  and is the hot path everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .algebra import FieldSpec, Vector, check_budget, check_vector, vec_sub, vector_array
from .errors import ContractError, ValidationError
from .poset import Poset, chain, ideal_closure, maximal_elements, support_ideal
from .weights import WeightTable

_CHUNK = 1 << 22


@dataclass(frozen=True)
class MetricSpace:
    spec: FieldSpec
    n: int
    poset: Poset
    weight: WeightTable

    def __post_init__(self):
        if self.weight.spec != self.spec:
            raise ValidationError(f"weight is over {self.weight.spec}, space is over {self.spec}")
        if self.poset.n != self.n:
            raise ValidationError(f"poset has size {self.poset.n}, space has dimension {self.n}")
        self.weight.require_valid()

    @classmethod
    def chain(cls, weight: WeightTable, n: int) -> "MetricSpace":
        return cls(weight.spec, n, chain(n), weight)

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def size(self) -> int:
        return self.spec.q**self.n

    @property
    def max_weight(self) -> int:
        return self.weight.max_weight

    @property
    def is_chain(self) -> bool:
        return self.poset.is_chain

    def vector(self, u: Sequence[int]) -> Vector:
        return check_vector(self.spec, self.n, u)

    @cached_property
    def _ranks(self) -> np.ndarray:
        return np.array([len(d) for d in self.poset.down_sets], dtype=np.int64)

    @cached_property
    def _pattern_tables(self) -> tuple[np.ndarray, np.ndarray]:
        n, M = self.n, self.max_weight
        top = np.zeros((1 << n, n), dtype=bool)
        extra = np.zeros(1 << n, dtype=np.int64)
        for mask in range(1 << n):
            supp = [i + 1 for i in range(n) if mask >> i & 1]
            ideal = ideal_closure(self.poset, supp)
            maxi = maximal_elements(self.poset, ideal)
            for i in maxi:
                top[mask, i - 1] = True
            extra[mask] = M * (len(ideal) - len(maxi))
        return top, extra

    def __repr__(self) -> str:
        kind = "chain" if self.poset.is_chain else "poset"
        return f"MetricSpace({self.spec}, n={self.n}, {kind}, weight={self.weight.name})"


# -- scalar evaluation --------------------------------------------------------

def wp_weight(M: MetricSpace, u: Sequence[int]) -> int:
    si = support_ideal(M.poset, M.vector(u))
    w = M.weight
    return sum(w(u[i - 1]) for i in si.maximals) + M.max_weight * len(si.ideal - si.maximals)


def wp_distance(M: MetricSpace, u: Sequence[int], v: Sequence[int]) -> int:
    return wp_weight(M, vec_sub(M.spec, M.vector(u), M.vector(v)))


def chain_weight(M: MetricSpace, u: Sequence[int]) -> int:
    if not M.is_chain:
        raise ContractError("chain weight requested on a non-chain poset")
    u = M.vector(u)
    ranks = M._ranks
    nonzero = [i for i, c in enumerate(u) if c]
    if not nonzero:
        return 0
    top = max(nonzero, key=lambda i: ranks[i])
    return M.weight(u[top]) + (int(ranks[top]) - 1) * M.max_weight


def chain_distance(M: MetricSpace, u: Sequence[int], v: Sequence[int]) -> int:
    return chain_weight(M, vec_sub(M.spec, M.vector(u), M.vector(v)))


def naive_support_weight(M: MetricSpace, u: Sequence[int]) -> int:
    """The variant that uses the whole support instead of its maximal elements.

    It is not a weight in general (the triangle inequality can fail); kept for
    regression tests only.
    """
    si = support_ideal(M.poset, M.vector(u))
    w = M.weight
    return sum(w(u[i - 1]) for i in si.support) + M.max_weight * len(si.ideal - si.support)


def poset_distance(u: Sequence[int], v: Sequence[int]) -> int:
    """Distance for the Hamming weight on the usual chain: the last differing coordinate."""
    last = 0
    for i, (a, b) in enumerate(zip(u, v), start=1):
        if a != b:
            last = i
    return last


# -- vectorised evaluation ----------------------------------------------------

def chain_weights(M: MetricSpace, arr: np.ndarray) -> np.ndarray:
    """Chain-path weights of every vector along the last axis of ``arr``."""
    if not M.is_chain:
        raise ContractError("chain weight requested on a non-chain poset")
    arr = np.asarray(arr)
    score = np.where(arr != 0, M._ranks, 0)
    pos = score.argmax(axis=-1)
    rank = np.take_along_axis(score, pos[..., None], axis=-1)[..., 0]
    coord = np.take_along_axis(arr, pos[..., None], axis=-1)[..., 0]
    out = M.weight.array[coord] + (rank - 1) * M.max_weight
    return np.where(rank > 0, out, 0)


def poset_weights(M: MetricSpace, arr: np.ndarray) -> np.ndarray:
    """Reference-path weights of every vector along the last axis of ``arr``."""
    arr = np.asarray(arr)
    top, extra = M._pattern_tables
    mask = ((arr != 0) * (1 << np.arange(M.n))).sum(axis=-1)
    return (top[mask] * M.weight.array[arr]).sum(axis=-1) + extra[mask]


def weights_of(M: MetricSpace, arr: np.ndarray, reference: bool = False) -> np.ndarray:
    if reference or not M.is_chain:
        return poset_weights(M, arr)
    return chain_weights(M, arr)


def distance_matrix(M: MetricSpace, X: np.ndarray, Y: np.ndarray | None = None,
                    reference: bool = False) -> np.ndarray:
    """``out[i, j] = d(X[i], Y[j])``."""
    X = np.asarray(X, dtype=np.int64).reshape(-1, M.n)
    Y = X if Y is None else np.asarray(Y, dtype=np.int64).reshape(-1, M.n)
    out = np.empty((len(X), len(Y)), dtype=np.int64)
    step = max(1, _CHUNK // max(1, len(Y) * M.n))
    sub = M.spec.sub_table
    for s in range(0, len(X), step):
        diff = sub[X[s:s + step, None, :], Y[None, :, :]]
        out[s:s + step] = weights_of(M, diff, reference)
    return out


def all_weights(M: MetricSpace, reference: bool = False, budget: int | None = None) -> np.ndarray:
    """Weight of every vector of F_q^n in enumeration order."""
    return weights_of(M, vector_array(M.spec, M.n, budget), reference)


# -- ultrametric scan ----------------------------------------------------------

class UltrametricResult(NamedTuple):
    is_ultrametric: bool
    witness: tuple[Vector, Vector, Vector] | None


def check_ultrametric(M: MetricSpace, budget: int = 2 * 10**8) -> UltrametricResult:
    """Exhaustive scan for ``d(x, y) > max(d(x, z), d(z, y))``.

    The witness is the first violating triple in enumeration order of
    ``(x, y, z)``.
    """
    V = vector_array(M.spec, M.n)
    N = len(V)
    check_budget("ultrametric triple scan", N**3, budget)
    D = distance_matrix(M, V)
    for x in range(N):
        row = D[x]
        bad = row[:, None] > np.maximum(row[None, :], D.T)
        if bad.any():
            y, z = divmod(int(bad.argmax()), N)
            return UltrametricResult(False, (tuple(map(int, V[x])), tuple(map(int, V[y])),
                                             tuple(map(int, V[z]))))
    return UltrametricResult(True, None)
