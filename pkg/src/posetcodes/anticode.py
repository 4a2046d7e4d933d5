"""Balls, diameters and optimal anticodes in the weighted chain space (F_q^n, d_w).

Every function that takes a radius or diameter bound accepts any natural
number and normalises it first: ``D = S + R * M_w`` with ``0 <= S < M_w``, and
an ``S`` that no element realises is lowered to the nearest realised value
below it (the ball does not change).  ``R >= n`` means the whole space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .algebra import Vector, vector_array
from .errors import ContractError, DomainError, ValidationError
from .metric import MetricSpace, chain_weights, distance_matrix
from .weights import WeightTable, floor_weight, w_interval, weight_stats

BALL = "ball"
X_PLUS_Y = "x_plus_Y"
BELOW = "below_threshold"
AT_OR_ABOVE = "at_or_above_threshold"


@dataclass(frozen=True)
class RadiusDecomposition:
    D: int
    S: int
    R: int
    max_weight: int
    n: int

    @property
    def value(self) -> int:
        """The normalised radius ``S + R * M_w``."""
        return self.S + self.R * self.max_weight

    @property
    def saturated(self) -> bool:
        """True when the ball is all of F_q^n (a boundary the closed forms do not cover)."""
        return self.R >= self.n


def normalize_radius(w: WeightTable, n: int, r: int) -> RadiusDecomposition:
    if r < 0:
        raise DomainError(f"radius must be >= 0, got {r}")
    M = w.max_weight
    R, s = divmod(r, M)
    if s not in w.image:
        s = max(t for t in w.image if t < s)
    return RadiusDecomposition(r, s, R, M, n)


def ball_size(w: WeightTable, n: int, D: int) -> int:
    d = normalize_radius(w, n, D)
    q = w.spec.q
    if d.saturated:
        return q**n
    if d.S == 0:
        return q**d.R
    return q**d.R * (1 + w_interval(w, d.S).count)


def _require_chain(M: MetricSpace) -> None:
    if not M.poset.is_usual_chain:
        raise ContractError("this operation is defined for the usual chain order only")


def _as_set(arr: np.ndarray) -> frozenset[Vector]:
    return frozenset(tuple(int(c) for c in row) for row in arr)


def _translate(M: MetricSpace, center: Sequence[int], arr: np.ndarray) -> np.ndarray:
    return M.spec.add_table[np.asarray(center, dtype=np.int64)[None, :], arr]


def ball(M: MetricSpace, center: Sequence[int], D: int, budget: int | None = None) -> frozenset[Vector]:
    """``{v : d_w(center, v) <= D}`` by exact membership over the whole space."""
    _require_chain(M)
    center = M.vector(center)
    V = vector_array(M.spec, M.n, budget)
    diff = M.spec.sub_table[V, np.asarray(center, dtype=np.int64)[None, :]]
    return _as_set(V[chain_weights(M, diff) <= D])


def diameter(A: Iterable[Sequence[int]], M: MetricSpace) -> int:
    arr = np.array([M.vector(a) for a in A], dtype=np.int64).reshape(-1, M.n)
    if len(arr) == 0:
        raise DomainError("the diameter of an empty set is undefined")
    return int(distance_matrix(M, arr).max())


def distance_set(A: Iterable[Sequence[int]], M: MetricSpace) -> frozenset[int]:
    arr = np.array([M.vector(a) for a in A], dtype=np.int64).reshape(-1, M.n)
    return frozenset(int(d) for d in np.unique(distance_matrix(M, arr)) if d)


@dataclass(frozen=True)
class ProductBound:
    disjoint_distance_sets: bool
    bound_holds: bool
    product: int
    space_size: int


def distance_set_product_bound(A: Iterable[Sequence[int]], B: Iterable[Sequence[int]],
                               M: MetricSpace) -> ProductBound:
    """Compare the nonzero distance sets of A and B and test ``|A| * |B| <= q^n``."""
    A, B = set(map(M.vector, A)), set(map(M.vector, B))
    if not A or not B:
        raise DomainError("both sets must be nonempty")
    disjoint = not (distance_set(A, M) & distance_set(B, M))
    product = len(A) * len(B)
    return ProductBound(disjoint, product <= M.size, product, M.size)


# -- extremal subsets of F_q ---------------------------------------------------

def _max_subsets(cands: Sequence[int], ok: Callable[[int, int], bool],
                 accept: Callable[[list[int]], bool]) -> tuple[int, list[frozenset[int]]]:
    """All maximum-cardinality accepted subsets whose elements are pairwise ``ok``.

    ``accept`` must be monotone (kept under adding elements) for the size
    cutoff to stay exact.
    """
    best = -1
    found: list[frozenset[int]] = []

    def rec(chosen: list[int], rest: list[int]) -> None:
        nonlocal best, found
        if len(chosen) + len(rest) < best:
            return
        if accept(chosen):
            if len(chosen) > best:
                best, found = len(chosen), []
            if len(chosen) == best:
                found.append(frozenset(chosen))
        for i, v in enumerate(rest):
            if len(chosen) + len(rest) - i < best:
                break
            rec(chosen + [v], [u for u in rest[i + 1:] if ok(u, v)])

    rec([], list(cands))
    return best, sorted(found, key=sorted)


def lower_family(w: WeightTable, S: int) -> list[frozenset[int]]:
    """All maximum-size sets W of field elements such that

    1. every a in W has ``S_w <= w(a) <= S``;
    2. ``w(a - b) <= S`` for a in W and every b with ``w(b) < S_w``;
    3. ``w(a - b) <= S`` for all a, b in W.
    """
    st = weight_stats(w)
    if not st.archimedean_threshold <= S <= st.max_weight:
        raise DomainError(f"level {S} outside [S_w, M_w] = [{st.archimedean_threshold}, {st.max_weight}]")
    vals, sub, Sw = w.values, w.spec.sub_table, st.archimedean_threshold
    low = [b for b in range(w.spec.q) if vals[b] < Sw]
    cands = [a for a in range(w.spec.q)
             if Sw <= vals[a] <= S and all(vals[sub[a, b]] <= S for b in low)]
    _, family = _max_subsets(cands, lambda a, b: vals[sub[a, b]] <= S, lambda c: True)
    return family


def upper_family(w: WeightTable, S: int) -> list[frozenset[int]]:
    """All maximum-size sets of field elements whose distinct pairs differ by
    weight ``>= S`` and at least one pair by weight exactly ``S``."""
    st = weight_stats(w)
    if not (st.min_nonzero_weight <= S <= st.max_weight and S in w.image):
        raise DomainError(f"level {S} is not a realised weight in [m_w, M_w]")
    vals, sub = w.values, w.spec.sub_table

    def exact_pair(c: list[int]) -> bool:
        return any(vals[sub[a, b]] == S for i, a in enumerate(c) for b in c[i + 1:])

    _, family = _max_subsets(range(w.spec.q), lambda a, b: vals[sub[a, b]] >= S, exact_pair)
    return family


@dataclass(frozen=True)
class WFamilies:
    S: int
    lower_family: list[frozenset[int]] | None
    upper_sets: list[frozenset[int]] | None

    @property
    def lower_size(self) -> int | None:
        return None if self.lower_family is None else len(self.lower_family[0])

    @property
    def upper_size(self) -> int | None:
        return None if self.upper_sets is None else len(self.upper_sets[0])


def w_families(w: WeightTable, S: int) -> WFamilies:
    """Both families at level S; a family is None where S is outside its range."""
    lower = upper = None
    try:
        lower = lower_family(w, S)
    except DomainError:
        pass
    try:
        upper = upper_family(w, S)
    except DomainError:
        pass
    if lower is None and upper is None:
        raise DomainError(f"level {S} is outside the range of both families")
    return WFamilies(S, lower, upper)


# -- optimal anticodes -----------------------------------------------------------

@dataclass
class AnticodeReport:
    q: int
    n: int
    weight: str
    D: int
    S: int
    R: int
    S_w: int
    branch: str
    a_star: int
    saturated: bool = False
    D_prime: int | None = None
    witnesses: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "q": self.q, "n": self.n, "weight": self.weight, "D": self.D, "S": self.S,
            "R": self.R, "S_w": self.S_w, "branch": self.branch, "a_star": self.a_star,
            "saturated": self.saturated, "D_prime": self.D_prime, "witnesses": self.witnesses,
        }


def inner_radius(w: WeightTable, n: int, R: int) -> int:
    """``D'``: the largest realised weight below ``S_w``, lifted to layer R."""
    Sw = weight_stats(w).archimedean_threshold
    return floor_weight(w, n, Sw) + R * w.max_weight


def optimal_anticode_size(w: WeightTable, n: int, D: int, with_witnesses: bool = False) -> AnticodeReport:
    """Closed-form A*(D) for the weighted chain metric."""
    d = normalize_radius(w, n, D)
    st = weight_stats(w)
    q, Sw = w.spec.q, st.archimedean_threshold
    branch = BELOW if d.S < Sw else AT_OR_ABOVE
    report = AnticodeReport(q, n, w.name, D, d.S, d.R, Sw, branch, 0, d.saturated)
    zero = [0] * n
    if d.saturated:
        report.a_star = q**n
        if with_witnesses:
            report.witnesses.append({"form": BALL, "center": zero})
        return report
    if branch == BELOW:
        report.a_star = q**d.R if d.S == 0 else q**d.R * (1 + w_interval(w, d.S).count)
        if with_witnesses:
            report.witnesses.append({"form": BALL, "center": zero})
        return report
    family = lower_family(w, d.S)
    report.D_prime = inner_radius(w, n, d.R)
    report.a_star = q**d.R * (1 + w_interval(w, Sw - 1).count + len(family[0]))
    if with_witnesses:
        report.witnesses.extend({"form": X_PLUS_Y, "center": zero, "K": sorted(K)} for K in family)
    if report.a_star >= q ** (d.R + 1):
        raise ContractError("closed form reached the layer bound q^(R+1)", (D, report.a_star))
    return report


def _layer_set(M: MetricSpace, R: int, K: Iterable[int], D_prime: int) -> np.ndarray:
    """Rows of ``Y_R(K) ∪ B(0, D')``: the anticode X(K) through the origin."""
    V = vector_array(M.spec, M.n)
    wts = chain_weights(M, V)
    top = np.where(V != 0, np.arange(1, M.n + 1), 0).max(axis=1)
    in_y = (top == R + 1) & np.isin(V[:, min(R, M.n - 1)], list(K))
    return V[in_y | (wts <= D_prime)]


def build_optimal_anticode(M: MetricSpace, center: Sequence[int], D: int,
                           K: Iterable[int] | None = None) -> frozenset[Vector]:
    """The classified D-optimal anticode at ``center``.

    Below the archimedean threshold this is the ball; at or above it, K must
    belong to the lower family at level S and the result is
    ``center + (Y_R(K) ∪ B(0, D'))``.
    """
    _require_chain(M)
    center = M.vector(center)
    w = M.weight
    d = normalize_radius(w, M.n, D)
    Sw = weight_stats(w).archimedean_threshold
    if d.saturated or d.S < Sw:
        return ball(M, center, D)
    if K is None:
        raise ValidationError(f"level S={d.S} >= S_w={Sw}: a set K from the lower family is required")
    K = frozenset(K)
    if K not in lower_family(w, d.S):
        raise ValidationError(f"{sorted(K)} is not a maximum set of the lower family at level {d.S}")
    rows = _layer_set(M, d.R, K, inner_radius(w, M.n, d.R))
    return _as_set(_translate(M, center, rows))


@dataclass(frozen=True)
class OptimalityCheck:
    optimal: bool
    form: str | None
    center: Vector | None
    K: tuple[int, ...] | None
    size: int
    diameter: int
    a_star: int

    def to_dict(self) -> dict:
        return {
            "optimal": self.optimal, "form": self.form,
            "center": None if self.center is None else list(self.center),
            "K": None if self.K is None else list(self.K),
            "size": self.size, "diameter": self.diameter, "a_star": self.a_star,
        }


def is_optimal_anticode(A: Iterable[Sequence[int]], M: MetricSpace, D: int) -> OptimalityCheck:
    """Optimality test plus identification of the classified form A takes, if any."""
    _require_chain(M)
    A = frozenset(map(M.vector, A))
    if not A:
        raise DomainError("an anticode must be nonempty")
    w, n = M.weight, M.n
    report = optimal_anticode_size(w, n, D)
    diam = diameter(A, M)
    optimal = diam <= D and len(A) == report.a_star
    form = center = K = None
    if optimal:
        d = normalize_radius(w, n, D)
        order = sorted(A, key=lambda v: tuple(reversed(v)))
        if report.branch == BELOW or d.saturated:
            for x in order:
                if ball(M, x, D) == A:
                    form, center = BALL, x
                    break
        else:
            Sw = report.S_w
            family = set(lower_family(w, d.S))
            neg = M.spec.neg_table
            for x in order:
                shifted = _as_set(_translate(M, [int(neg[c]) for c in x], np.array(sorted(A))))
                cand = frozenset(v[d.R] for v in shifted
                                 if any(v[d.R:]) and not any(v[d.R + 1:]) and w(v[d.R]) >= Sw)
                if cand in family and build_optimal_anticode(M, x, D, cand) == A:
                    form, center, K = X_PLUS_Y, x, tuple(sorted(cand))
                    break
    return OptimalityCheck(optimal, form, center, K, len(A), diam, report.a_star)


def classified_anticodes_through(M: MetricSpace, D: int, point: Sequence[int] | None = None
                                 ) -> set[frozenset[Vector]]:
    """Every classified D-optimal anticode that contains ``point`` (default: the origin)."""
    _require_chain(M)
    point = M.vector(point if point is not None else [0] * M.n)
    w = M.weight
    d = normalize_radius(w, M.n, D)
    Sw = weight_stats(w).archimedean_threshold
    V = vector_array(M.spec, M.n)
    p = np.asarray(point, dtype=np.int64)
    if d.saturated or d.S < Sw:
        base = V[chain_weights(M, V) <= D]
        bases = [base]
    else:
        D_prime = inner_radius(w, M.n, d.R)
        bases = [_layer_set(M, d.R, K, D_prime) for K in lower_family(w, d.S)]
    out: set[frozenset[Vector]] = set()
    for base in bases:
        # x + base contains p  <=>  x = p - b for some b in base
        for b in base:
            x = M.spec.sub_table[p, b]
            out.add(_as_set(_translate(M, x, base)))
    return out
