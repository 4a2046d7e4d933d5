"""Codes in the weighted chain space: distances, packing, MDS and diameter-perfect tests."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from .algebra import FieldSpec, Vector, make_field, vector_array
from .anticode import ball_size, lower_family, optimal_anticode_size, upper_family
from .errors import ContractError, DomainError, ValidationError
from .metric import MetricSpace, chain_weights, distance_matrix
from .weights import WeightTable, floor_weight, w_interval, weight_stats

Assignment = Callable[[Vector], Sequence[int]]


@dataclass(frozen=True)
class Code:
    space: MetricSpace
    words: frozenset[Vector]

    def __post_init__(self):
        if not self.space.poset.is_usual_chain:
            raise ValidationError("codes live in the weighted chain space (usual chain order)")
        words = frozenset(self.space.vector(c) for c in self.words)
        if not words:
            raise ValidationError("a code needs at least one word")
        object.__setattr__(self, "words", words)

    @classmethod
    def from_words(cls, space: MetricSpace, words: Iterable[Sequence[int]]) -> "Code":
        return cls(space, frozenset(tuple(c) for c in words))

    def __len__(self) -> int:
        return len(self.words)

    @cached_property
    def array(self) -> np.ndarray:
        """Words as rows, in enumeration order."""
        rows = sorted(self.words, key=lambda v: tuple(reversed(v)))
        a = np.array(rows, dtype=np.int64).reshape(-1, self.space.n)
        a.setflags(write=False)
        return a

    @cached_property
    def _pair_data(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        arr, n = self.array, self.space.n
        diff = self.space.spec.sub_table[arr[:, None, :], arr[None, :, :]]
        poset_d = np.where(diff != 0, np.arange(1, n + 1), 0).max(axis=-1)
        return diff, poset_d, chain_weights(self.space, diff)

    def to_dict(self) -> dict:
        return {"q": self.space.q, "n": self.space.n, "words": [list(r) for r in self.array.tolist()]}


def load_code(path: str | Path, weight: WeightTable | None = None) -> Code:
    """Read ``{"q": .., "n": .., "words": [[..], ..]}``; Hamming weight unless given."""
    try:
        data = json.loads(Path(path).read_text())
        q, n, words = int(data["q"]), int(data["n"]), data["words"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"cannot read code file {path}: {exc}") from exc
    if weight is None:
        from .weights import make_standard_weight
        weight = make_standard_weight(make_field(q), "hamming")
    if weight.spec.q != q:
        raise ValidationError(f"code is over F_{q}, weight over {weight.spec}")
    return Code.from_words(MetricSpace.chain(weight, n), words)


def _off_diagonal(k: int) -> np.ndarray:
    return ~np.eye(k, dtype=bool)


def _require_pair(C: Code) -> None:
    if len(C) < 2:
        raise DomainError("minimum distance needs at least two codewords")


class MinDistances(NamedTuple):
    d_poset: int
    s_wc: int
    d_weighted: int


def min_distances(C: Code) -> MinDistances:
    """``d(C)``, ``S_{w,C}`` and ``d_w(C) = S_{w,C} + (d(C) - 1) M_w``.

    ``S_{w,C}`` is the least weight of the difference at coordinate d(C) over
    the pairs at poset distance exactly d(C).  The identity is cross-checked
    against the brute pairwise minimum of d_w.
    """
    _require_pair(C)
    diff, poset_d, weighted = C._pair_data
    off = _off_diagonal(len(C))
    d = int(poset_d[off].min())
    realizing = off & (poset_d == d)
    s_wc = int(C.space.weight.array[diff[..., d - 1][realizing]].min())
    d_w = s_wc + (d - 1) * C.space.max_weight
    brute = int(weighted[off].min())
    if d_w != brute:
        raise ContractError("minimum distance structure identity failed", (d_w, brute))
    return MinDistances(d, s_wc, d_w)


def coordinate_min_weight(C: Code, i: int) -> int:
    """Least ``w(x_i - y_i)`` over *all* pairs differing at coordinate i (1-based).

    Taken over every such pair, not just those at poset distance d(C); kept to
    show that this coarser quantity does not give d_w(C) in general.
    """
    diff, _, _ = C._pair_data
    col = diff[..., i - 1]
    vals = C.space.weight.array[col[col != 0]]
    if len(vals) == 0:
        raise DomainError(f"no pair of codewords differs at coordinate {i}")
    return int(vals.min())


def packing_radius(C: Code) -> int:
    return C.space.max_weight * (min_distances(C).d_poset - 1)


def _word_distances(C: Code) -> np.ndarray:
    """``out[v, c] = d_w(v, c)`` for every vector v of the space."""
    V = vector_array(C.space.spec, C.space.n)
    return distance_matrix(C.space, V, C.array)


def is_perfect(C: Code) -> bool:
    """Do the packing-radius balls around the codewords cover F_q^n?

    Decided by enumeration, then cross-checked with the count
    ``|C| * |B(0, R)| == q^n`` (the balls are disjoint).
    """
    r = packing_radius(C)
    covered = bool((_word_distances(C).min(axis=1) <= r).all())
    counted = len(C) * ball_size(C.space.weight, C.space.n, r) == C.space.size
    if covered != counted:
        raise ContractError("covering enumeration disagrees with the ball count", (covered, counted))
    return covered


@dataclass(frozen=True)
class PackingCheck:
    radius: int
    disjoint: bool
    probe_radius: int
    probe_collides: bool
    collision_pair: tuple[Vector, Vector] | None


def packing_check(C: Code) -> PackingCheck:
    """Enumerate balls of the packing radius R (must be pairwise disjoint) and of
    radius ``R + m_w`` (should meet for some pair at poset distance d(C))."""
    md = min_distances(C)
    r = C.space.max_weight * (md.d_poset - 1)
    probe = r + C.space.weight.min_nonzero_weight
    dist = _word_distances(C)
    disjoint = bool(((dist <= r).sum(axis=1) <= 1).all())
    close = dist <= probe
    _, poset_d, _ = C._pair_data
    pair = None
    for i, j in zip(*np.nonzero(np.triu(poset_d == md.d_poset, 1))):
        if (close[:, i] & close[:, j]).any():
            pair = (tuple(map(int, C.array[i])), tuple(map(int, C.array[j])))
            break
    return PackingCheck(r, disjoint, probe, pair is not None, pair)


def exact_packing_radius(C: Code) -> int:
    """Largest r whose balls around distinct codewords are pairwise disjoint, by enumeration."""
    _require_pair(C)
    dist = _word_distances(C)
    best = None
    for i, j in itertools.combinations(range(len(C)), 2):
        meet = int(np.maximum(dist[:, i], dist[:, j]).min())
        best = meet if best is None else min(best, meet)
    return best - 1


@dataclass(frozen=True)
class MDSResult:
    mds: bool
    perfect: bool
    d_poset: int
    size: int
    singleton_bound: int
    assignment: dict[Vector, Vector] | None


def is_mds(C: Code) -> MDSResult:
    """Singleton-bound test; for MDS codes also the map from the last
    ``n - d + 1`` coordinates to the first ``d - 1``."""
    md = min_distances(C)
    n, q = C.space.n, C.space.q
    bound = q ** (n - md.d_poset + 1)
    mds = len(C) == bound
    perfect = is_perfect(C)
    if mds != perfect:
        raise ContractError("MDS and perfect verdicts disagree", (mds, perfect))
    assignment = None
    if mds:
        k = md.d_poset - 1
        assignment = {tuple(c[k:]): tuple(c[:k]) for c in C.words}
        if len(assignment) != bound:
            raise ContractError("MDS code does not list each tail exactly once")
    return MDSResult(mds, perfect, md.d_poset, len(C), bound, assignment)


def construct_mds(space: MetricSpace, d: int, assign: Assignment) -> Code:
    """``{(assign(y), y) : y in F_q^(n-d+1)}``, validated to have poset distance d."""
    n = space.n
    if not 1 <= d <= n:
        raise DomainError(f"target distance must lie in [1, {n}], got {d}")
    words = []
    for y in vector_array(space.spec, n - d + 1).tolist():
        x = tuple(assign(tuple(y)))
        if len(x) != d - 1:
            raise ValidationError(f"assignment returned {len(x)} coordinates, expected {d - 1}")
        words.append(x + tuple(y))
    C = Code.from_words(space, words)
    expected = space.q ** (n - d + 1)
    if len(C) != expected:
        raise ContractError("constructed code has the wrong size", (len(C), expected))
    if len(C) > 1:
        _, poset_d, _ = C._pair_data
        off = _off_diagonal(len(C))
        if int(poset_d[off].min()) != d:
            i, j = np.argwhere(off & (poset_d < d))[0]
            raise ContractError("constructed code has a smaller poset distance",
                                (tuple(C.array[i]), tuple(C.array[j])))
    return C


def zero_assignment(y: Vector) -> tuple[int, ...]:
    return ()


def constant_assignment(d: int, value: int = 0) -> Assignment:
    return lambda y: (value,) * (d - 1)


def linear_assignment(spec: FieldSpec, n: int, d: int) -> Assignment:
    """``x_j = sum_i c_ij * y_i`` with fixed nonzero coefficients."""
    m = n - d + 1
    coef = [[1 + (i * (d - 1) + j) % (spec.q - 1) for i in range(m)] for j in range(d - 1)]

    def assign(y: Vector) -> tuple[int, ...]:
        out = []
        for row in coef:
            acc = 0
            for c, yi in zip(row, y):
                acc = int(spec.add_table[acc, spec.mul_table[c, yi]])
            out.append(acc)
        return tuple(out)

    return assign


def random_assignment(spec: FieldSpec, n: int, d: int, rng: np.random.Generator) -> Assignment:
    tails = [tuple(r) for r in vector_array(spec, n - d + 1).tolist()]
    table = {t: tuple(int(x) for x in rng.integers(0, spec.q, size=d - 1)) for t in tails}
    return table.__getitem__


@dataclass(frozen=True)
class DiameterPerfectness:
    D: int
    floor_D: int
    a_star: int
    size: int
    product: int
    space_size: int

    @property
    def equality(self) -> bool:
        return self.product == self.space_size


def diameter_perfect_product(C: Code, a_star: Callable[[WeightTable, int, int], int] | None = None
                             ) -> DiameterPerfectness:
    """``A*(floor_w(d_w(C))) * |C|`` against ``q^n``.

    ``a_star`` defaults to the closed form; pass a brute-force routine to
    check a verdict independently.
    """
    w, n = C.space.weight, C.space.n
    D = min_distances(C).d_weighted
    floor_D = floor_weight(w, n, D)
    if a_star is None:
        A = optimal_anticode_size(w, n, floor_D).a_star
    else:
        A = a_star(w, n, floor_D)
    return DiameterPerfectness(D, floor_D, A, len(C), A * len(C), C.space.size)


def is_diameter_perfect(C: Code) -> bool:
    return diameter_perfect_product(C).equality


@dataclass(frozen=True)
class CriterionResult:
    S: int
    branch: str
    first_factor: int
    upper_size: int
    lhs: int
    rhs: int

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"S": self.S, "branch": self.branch, "first_factor": self.first_factor,
                "upper_size": self.upper_size, "lhs": self.lhs, "rhs": self.rhs,
                "equality": self.equality}


def diameter_perfect_criterion(w: WeightTable, S: int) -> CriterionResult:
    """The field-level inequality ``factor * |W^w(S)| <= q`` that decides whether
    codes with minimum distance ``S + R M_w`` (``m_w < S < M_w``) can be
    diameter perfect.

    ``factor`` is ``1 + |w^-1([S-1]_w)|`` for ``S <= S_w`` and
    ``1 + |w^-1([S_w-1]_w)| + |W_w(S-1)|`` above the threshold.
    """
    st = weight_stats(w)
    if not (st.min_nonzero_weight < S < st.max_weight and S in w.image):
        raise DomainError(f"level {S} must be a realised weight strictly between m_w and M_w")
    Sw = st.archimedean_threshold
    if S <= Sw:
        branch, factor = "at_or_below_threshold", 1 + w_interval(w, S - 1).count
    else:
        branch = "above_threshold"
        factor = 1 + w_interval(w, Sw - 1).count + len(lower_family(w, S - 1)[0])
    upper = len(upper_family(w, S)[0])
    return CriterionResult(S, branch, factor, upper, factor * upper, w.spec.q)


def admissible_levels(w: WeightTable) -> list[int]:
    st = weight_stats(w)
    return [s for s in w.image if st.min_nonzero_weight < s < st.max_weight]


def construct_threshold_code(space: MetricSpace, S: int, R: int,
                             K: Iterable[int] | None = None) -> Code:
    """``{(0, .., 0, c_R, c_R+1, .., c_n) : c_R in K}`` with K a maximum upper set at level S.

    Validated to have ``d_w = S + (R - 1) M_w`` and ``q^(n-R) |K|`` words.
    """
    w, n = space.weight, space.n
    st = weight_stats(w)
    if not (st.min_nonzero_weight < S < st.max_weight and S in w.image):
        raise DomainError(f"level {S} must be a realised weight strictly between m_w and M_w")
    if not 1 <= R <= n:
        raise DomainError(f"layer R must lie in [1, {n}], got {R}")
    family = upper_family(w, S)
    K = family[0] if K is None else frozenset(K)
    if K not in family:
        raise ValidationError(f"{sorted(K)} is not a maximum upper set at level {S}")
    tails = vector_array(space.spec, n - R).tolist() if R < n else [[]]
    words = [(0,) * (R - 1) + (c,) + tuple(t) for c in sorted(K) for t in tails]
    C = Code.from_words(space, words)
    expected = (S + (R - 1) * space.max_weight, space.q ** (n - R) * len(K))
    got = (min_distances(C).d_weighted, len(C))
    if got != expected:
        raise ContractError("threshold code misses its stated parameters", (got, expected))
    return C


class PowerOfQ(NamedTuple):
    exponent: int
    diameter_perfect: bool
    mds: bool

    @property
    def consistent(self) -> bool:
        return self.diameter_perfect == self.mds


def power_of_q_classification(C: Code) -> PowerOfQ:
    q, size, k = C.space.q, len(C), 0
    while q**k < size:
        k += 1
    if q**k != size:
        raise DomainError(f"code size {size} is not a power of {q}")
    return PowerOfQ(k, is_diameter_perfect(C), is_mds(C).mds)


@dataclass(frozen=True)
class CodeReport:
    d_poset: int
    s_wc: int
    d_weighted: int
    packing_radius: int
    mds: bool
    perfect: bool
    diameter_perfect: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def code_report(C: Code) -> CodeReport:
    md = min_distances(C)
    mds = is_mds(C)
    return CodeReport(md.d_poset, md.s_wc, md.d_weighted,
                      C.space.max_weight * (md.d_poset - 1), mds.mds, mds.perfect,
                      is_diameter_perfect(C))
