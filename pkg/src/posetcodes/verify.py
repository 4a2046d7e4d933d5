"""The verification sweep: every structural claim checked on small instances.

Each check is a function ``(config, ctx) -> CheckResult`` registered in
:data:`CHECKS`.  Checks never raise for a mathematical failure; they record
counterexamples instead.  A check whose instances all exceed their budget is
reported as skipped.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from . import anticode as ac
from . import codes as cd
from .algebra import DEFAULT_BUDGET, FieldSpec, make_field, vector_array
from .errors import BudgetExceeded, ContractError, DomainError, PosetCodesError, ValidationError
from .metric import (
    MetricSpace, chain_weight, chain_weights, check_ultrametric, distance_matrix,
    naive_support_weight, poset_weights, wp_distance, wp_weight,
)
from .oracle import brute_a_star, brute_ball_size, brute_optimal_anticodes
from .poset import all_posets
from .weights import (
    WeightTable, load_weight, make_standard_weight, random_weight, realizable_weights,
    validate_weight, w_interval, weight_stats,
)

MAX_COUNTEREXAMPLES = 10


@dataclass
class SweepConfig:
    fields: tuple[int, ...] = (2, 3, 4, 5, 7)
    n_max: int = 3
    standard_weights: tuple[str, ...] = ("hamming", "lee")
    weight_files: tuple[str, ...] = ()
    random_weights: int = 5
    max_weight_value: int = 5
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    clique_budget: int = 125
    listing_budget: int = 64
    triple_fields_max: int = 7
    triple_n_max: int = 3
    nonchain_n_max: int = 4
    nonchain_fields: tuple[int, ...] = (2, 3)
    random_codes: int = 40
    code_space_limit: int = 625
    code_max_size: int = 64
    mds_fields: tuple[int, ...] = (2, 3, 5)
    mds_n_max: int = 4
    mds_random_maps: int = 2
    non_mds_codes: int = 100
    product_pairs: int = 200
    product_space_limit: int = 256
    hunt_fields: tuple[int, ...] = (4, 8, 9)
    hunt_max_value: int = 4
    naive_regression: bool = True
    only: tuple[str, ...] = ()

    def __post_init__(self):
        budgets = {k: v for k, v in asdict(self).items() if k.endswith("budget") or k.endswith("limit")}
        bad = [k for k, v in budgets.items() if v <= 0]
        if bad:
            raise ValidationError(f"budgets must be positive: {', '.join(bad)}")
        for path in self.weight_files:
            load_weight(make_field(_file_q(path)), path).require_valid()
        unknown = set(self.only) - {name for name, _ in CHECKS}
        if unknown:
            raise ValidationError(f"unknown checks: {', '.join(sorted(unknown))}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class CheckResult:
    name: str
    claim: str
    status: str = "pass"
    instances: int = 0
    skipped: int = 0
    counterexamples: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def fail(self, example) -> None:
        self.status = "fail"
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(example)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SuiteReport:
    config: dict
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "seed": self.config["seed"],
            "passed": self.passed,
            "failures": sum(c.status == "fail" for c in self.checks),
            "counterexamples": sum(len(c.counterexamples) for c in self.checks),
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
        }


class Context:
    """Lazily built, seeded weight pools shared by the checks of one run."""

    def __init__(self, config: SweepConfig):
        self.config = config
        self._pools: dict[int, list[WeightTable]] = {}

    def rng(self, *tag: int | str) -> np.random.Generator:
        key = [self.config.seed] + [t if isinstance(t, int) else sum(map(ord, t)) for t in tag]
        return np.random.default_rng(key)

    def weights(self, q: int) -> list[WeightTable]:
        if q not in self._pools:
            spec = make_field(q)
            pool = []
            for kind in self.config.standard_weights:
                try:
                    pool.append(make_standard_weight(spec, kind))
                except DomainError:
                    pass
            for path in self.config.weight_files:
                w = load_weight(spec, path) if _file_q(path) == q else None
                if w is not None:
                    w.require_valid()
                    pool.append(w)
            rng = self.rng("weights", q)
            pool.extend(random_weight(spec, rng, self.config.max_weight_value)
                        for _ in range(self.config.random_weights))
            self._pools[q] = pool
        return self._pools[q]

    def spaces(self, fields=None, n_max=None, limit=None) -> Iterator[MetricSpace]:
        for q in fields or self.config.fields:
            for w in self.weights(q):
                for n in range(1, (n_max or self.config.n_max) + 1):
                    if limit is not None and q**n > limit:
                        continue
                    yield MetricSpace.chain(w, n)


def _file_q(path: str) -> int:
    try:
        return len(json.loads(Path(path).read_text()))
    except (OSError, json.JSONDecodeError, TypeError) as exc:
        raise ValidationError(f"cannot read weight table {path}: {exc}") from exc


def _label(M: MetricSpace, **extra) -> dict:
    out = {"q": M.q, "n": M.n, "weight": list(M.weight.values)}
    if not M.poset.is_usual_chain:
        out["poset"] = M.poset.to_dict()
    out.update(extra)
    return out


def _vec(row) -> list[int]:
    return [int(c) for c in row]


# -- weights and metrics ----------------------------------------------------------

def check_weight_axioms(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("weight-axioms", "pool weights satisfy the axioms; m_w <= S_w <= M_w; "
                    "S_w = M_w exactly for non-archimedean weights")
    for q in cfg.fields:
        for w in ctx.weights(q):
            r.instances += 1
            st = weight_stats(w)
            if validate_weight(w):
                r.fail({"weight": list(w.values), "violations": validate_weight(w)})
            if not st.min_nonzero_weight <= st.archimedean_threshold <= st.max_weight:
                r.fail({"weight": list(w.values), "stats": st.to_dict()})
            if st.non_archimedean != (st.archimedean_threshold == st.max_weight and not any(
                    w(int(w.spec.sub_table[a, b])) > max(w(a), w(b))
                    for a in range(q) for b in range(q))):
                r.fail({"weight": list(w.values), "stats": st.to_dict()})
            full = w_interval(w, st.max_weight)
            if set(full.values) != set(w.image) - {0} or full.count != q - 1:
                r.fail({"weight": list(w.values), "interval": full})
    return r


def check_naive_support_weight(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("naive-support-weight",
                    "using the whole support instead of its maximal elements breaks the "
                    "triangle inequality on chain(2) with the Lee weight on F_7")
    if not cfg.naive_regression:
        r.status = "skip"
        return r
    F7 = make_field(7)
    M = MetricSpace.chain(make_standard_weight(F7, "lee"), 2)
    u, v = (1, 0), (F7.neg(1), 1)
    uv = tuple(F7.add(a, b) for a, b in zip(u, v))
    lhs, rhs = naive_support_weight(M, uv), naive_support_weight(M, u) + naive_support_weight(M, v)
    r.instances += 1
    if not lhs > rhs:
        r.fail({"u": u, "v": v, "lhs": lhs, "rhs": rhs})
    else:
        r.notes.append(f"expected failure reproduced: {lhs} > {rhs}")
    V = vector_array(F7, 2)
    W = poset_weights(M, V)
    S = W[_sum_index(M, V)]
    r.instances += 1
    if (S > W[:, None] + W[None, :]).any():
        r.fail("the proper weight violates the triangle inequality on the same space")
    else:
        r.notes.append(f"proper weight passes all {len(V) ** 2} triangle pairs")
    return r


def _sum_index(M: MetricSpace, V: np.ndarray) -> np.ndarray:
    s = M.spec.add_table[V[:, None, :], V[None, :, :]]
    return (s * M.q ** np.arange(M.n)).sum(axis=-1)


def check_poset_weight_axioms(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("poset-weight-axioms",
                    "the weighted poset weight is a weight on F_q^n for every poset (n <= 3): "
                    "positivity, symmetry, triangle inequality, translation invariance")
    rng = ctx.rng("translation")
    for q in cfg.fields:
        spec = make_field(q)
        for n in range(1, min(cfg.n_max, 3) + 1):
            if q**n > 10**4:
                continue
            V = vector_array(spec, n)
            neg_idx = ((spec.neg_table[V]) * q ** np.arange(n)).sum(axis=1)
            sum_idx = None
            for P in all_posets(n):
                for w in ctx.weights(q):
                    M = MetricSpace(spec, n, P, w)
                    if sum_idx is None:
                        sum_idx = _sum_index(M, V)
                    r.instances += 1
                    W = poset_weights(M, V)
                    if (W[0] != 0) or (W[1:] <= 0).any():
                        r.fail(_label(M, axiom="positivity"))
                    if (W[neg_idx] != W).any():
                        r.fail(_label(M, axiom="symmetry"))
                    bad = W[sum_idx] > W[:, None] + W[None, :]
                    if bad.any():
                        i, j = np.argwhere(bad)[0]
                        r.fail(_label(M, axiom="triangle", u=_vec(V[i]), v=_vec(V[j])))
                    t = V[rng.integers(len(V))]
                    Vt = spec.add_table[V, t[None, :]]
                    if (distance_matrix(M, Vt, reference=True)
                            != distance_matrix(M, V, reference=True)).any():
                        r.fail(_label(M, axiom="translation", t=_vec(t)))
    return r


def check_chain_fast_path(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("chain-fast-path",
                    "on a chain the weight is w(u_i) + (i-1) M_w at the top nonzero coordinate")
    for M in ctx.spaces():
        r.instances += 1
        V = vector_array(M.spec, M.n)
        fast, ref = chain_weights(M, V), poset_weights(M, V)
        if (fast != ref).any():
            i = int(np.argmax(fast != ref))
            r.fail(_label(M, u=_vec(V[i]), fast=int(fast[i]), reference=int(ref[i])))
        x = _vec(V[len(V) // 2])
        if chain_weight(M, x) != wp_weight(M, x):
            r.fail(_label(M, u=x))
    return r


def check_product_bound(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("product-bound",
                    "sets A, B whose nonzero distance sets are disjoint satisfy |A||B| <= q^n")
    rng = ctx.rng("product")
    spaces = [M for M in ctx.spaces(limit=cfg.product_space_limit)]
    posets = {n: list(all_posets(n)) for n in range(1, 4)}
    for k in range(cfg.product_pairs):
        M = spaces[int(rng.integers(len(spaces)))]
        if M.n <= 3 and rng.random() < 0.5:
            ps = posets[M.n]
            M = MetricSpace(M.spec, M.n, ps[int(rng.integers(len(ps)))], M.weight)
        A, B = _disjoint_pair(M, rng)
        res = ac.distance_set_product_bound(A, B, M)
        r.instances += 1
        if not res.disjoint_distance_sets:
            r.fail(_label(M, A=A, B=B, reason="generator produced overlapping distance sets"))
        elif not res.bound_holds:
            r.fail(_label(M, A=A, B=B, product=res.product))
    return r


def _disjoint_pair(M: MetricSpace, rng: np.random.Generator) -> tuple[list, list]:
    V = vector_array(M.spec, M.n)
    D = distance_matrix(M, V, reference=True)
    N = len(V)
    a_idx = rng.choice(N, size=min(N, int(rng.integers(1, 5))), replace=False)
    dist_a = set(int(d) for d in np.unique(D[np.ix_(a_idx, a_idx)])) - {0}
    banned = np.isin(D, list(dist_a)) if dist_a else np.zeros_like(D, dtype=bool)
    order = rng.permutation(N)
    allowed = np.ones(N, dtype=bool)
    b_idx = []
    for v in order:
        if allowed[v]:
            b_idx.append(int(v))
            allowed &= ~banned[v]
            allowed[v] = False
    return [_vec(V[i]) for i in a_idx], [_vec(V[i]) for i in b_idx]


# -- balls ----------------------------------------------------------------------

def check_radius_normalization(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("radius-normalization",
                    "lowering an unrealised remainder S to the next realised weight keeps the ball")
    for M in ctx.spaces():
        w, n = M.weight, M.n
        for radius in range(0, n * w.max_weight + 2):
            d = ac.normalize_radius(w, n, radius)
            r.instances += 1
            if d.S not in w.image or brute_ball_size(w, n, radius) != brute_ball_size(w, n, d.value):
                r.fail(_label(M, r=radius, S=d.S, R=d.R))
    return r


def check_ball_size(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("ball-size-formula",
                    "|B(x, D)| = q^R (1 + |w^-1([S]_w)|) for S > 0 and q^R for S = 0")
    rng = ctx.rng("ball")
    for M in ctx.spaces(limit=cfg.budget):
        w, n = M.weight, M.n
        for D in realizable_weights(w, n):
            r.instances += 1
            formula, brute = ac.ball_size(w, n, D), brute_ball_size(w, n, D)
            if formula != brute:
                r.fail(_label(M, D=D, formula=formula, brute=brute))
        x = _vec(vector_array(M.spec, n)[int(rng.integers(M.size))])
        D = realizable_weights(w, n)[len(realizable_weights(w, n)) // 2]
        if len(ac.ball(M, x, D)) != ac.ball_size(w, n, D):
            r.fail(_label(M, D=D, center=x))
    return r


def check_ball_membership(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("ball-membership",
                    "x lies in B(0, S + R M_w) iff its top coordinate is below R+1, or equals "
                    "R+1 with coordinate weight <= S")
    for M in ctx.spaces():
        w, n = M.weight, M.n
        V = vector_array(M.spec, n)
        wts = poset_weights(M, V)
        top = np.where(V != 0, np.arange(1, n + 1), 0).max(axis=1)
        for D in realizable_weights(w, n):
            d = ac.normalize_radius(w, n, D)
            if d.saturated:
                predicted = np.ones(len(V), dtype=bool)
            else:
                col = V[:, d.R]
                predicted = (top < d.R + 1) | ((top == d.R + 1) & (w.array[col] <= d.S))
            r.instances += 1
            if ((wts <= D) != predicted).any():
                r.fail(_label(M, D=D))
    return r


def check_subspace_ball(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("subspace-ball",
                    "B(0, R M_w) is an R-dimensional subspace of diameter R M_w with "
                    "A* = q^R; below S_w, B(0, S + R M_w) with S > 0 is not a subspace")
    for M in ctx.spaces():
        w, n, spec = M.weight, M.n, M.spec
        Sw = weight_stats(w).archimedean_threshold
        for D in realizable_weights(w, n):
            d = ac.normalize_radius(w, n, D)
            if d.saturated or D == 0:
                continue
            B = ac.ball(M, [0] * n, D)
            closed = _is_subspace(spec, B)
            r.instances += 1
            if d.S == 0:
                ok = closed and len(B) == spec.q**d.R and ac.diameter(B, M) == D \
                    and ac.optimal_anticode_size(w, n, D).a_star == spec.q**d.R
                if ok and M.size <= cfg.clique_budget:
                    ok = brute_a_star(w, n, D) == spec.q**d.R
                if not ok:
                    r.fail(_label(M, D=D, closed=closed, size=len(B)))
            elif d.S < Sw and closed:
                r.fail(_label(M, D=D, reason="ball with 0 < S < S_w is closed"))
    return r


def _is_subspace(spec: FieldSpec, B: frozenset) -> bool:
    for x in B:
        for y in B:
            for c in range(spec.q):
                z = tuple(int(spec.sub_table[a, spec.mul_table[c, b]]) for a, b in zip(x, y))
                if z not in B:
                    return False
    return True


# -- anticodes ------------------------------------------------------------------

def check_anticode_upper_bound(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("anticode-upper-bound", "A*(D) <= |B(0, D)| and A*(D) < q^(R+1)")
    for M in ctx.spaces(limit=cfg.clique_budget):
        w, n = M.weight, M.n
        for D in realizable_weights(w, n):
            d = ac.normalize_radius(w, n, D)
            if d.saturated:
                continue
            A = brute_a_star(w, n, D, cfg.clique_budget)
            r.instances += 1
            if not (A <= brute_ball_size(w, n, D) and A < M.q ** (d.R + 1)):
                r.fail(_label(M, D=D, a_star=A))
    return r


def check_ball_form(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("ball-form-below-threshold",
                    "for S < S_w the D-balls have diameter D and are D-optimal")
    for M in ctx.spaces(limit=cfg.clique_budget):
        w, n = M.weight, M.n
        Sw = weight_stats(w).archimedean_threshold
        for D in realizable_weights(w, n)[1:]:
            d = ac.normalize_radius(w, n, D)
            if d.saturated or d.S >= Sw:
                continue
            B = ac.ball(M, [0] * n, D)
            r.instances += 1
            if ac.diameter(B, M) != D or brute_a_star(w, n, D, cfg.clique_budget) != len(B):
                r.fail(_label(M, D=D))
    return r


def check_optimal_anticode_size(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("optimal-anticode-size",
                    "closed-form A*(D) (ball branch below S_w, layered branch at or above) "
                    "equals the exact maximum clique")
    for M in ctx.spaces(limit=cfg.clique_budget):
        w, n = M.weight, M.n
        for D in realizable_weights(w, n):
            r.instances += 1
            formula = ac.optimal_anticode_size(w, n, D).a_star
            brute = brute_a_star(w, n, D, cfg.clique_budget)
            if formula != brute:
                r.fail(_label(M, D=D, formula=formula, brute=brute))
    return r


def check_classification(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("optimal-anticode-classification",
                    "the maximum anticodes through 0 are exactly the classified ones: balls "
                    "below S_w, (x + Y_R(K)) ∪ B(x, D') at or above; built ones are optimal "
                    "with D' <= diameter <= D")
    for M in ctx.spaces(limit=cfg.listing_budget):
        w, n = M.weight, M.n
        for D in realizable_weights(w, n):
            r.instances += 1
            brute = set(brute_optimal_anticodes(w, n, D, cfg.listing_budget))
            classified = ac.classified_anticodes_through(M, D)
            if brute != classified:
                r.fail(_label(M, D=D, brute=len(brute), classified=len(classified),
                              missing=len(brute - classified), extra=len(classified - brute)))
                continue
            rep = ac.optimal_anticode_size(w, n, D)
            Ks = [None] if rep.branch == ac.BELOW or rep.saturated else ac.lower_family(w, rep.S)
            for K in Ks:
                A = ac.build_optimal_anticode(M, [0] * n, D, K)
                chk = ac.is_optimal_anticode(A, M, D)
                low = rep.D_prime if rep.D_prime is not None else 0
                if not chk.optimal or chk.form is None or not low <= chk.diameter <= D:
                    r.fail(_label(M, D=D, K=None if K is None else sorted(K), check=chk.to_dict()))
    return r


def check_d_optimality_equivalence(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("d-optimality-equivalence",
                    "for realisable D: diam B(x,D) = D, B(x,D) is D-optimal, every D-optimal "
                    "anticode is a ball, and A*(D) = |B(0,D)| hold together or fail together")
    rng = ctx.rng("equivalence")
    for M in ctx.spaces(limit=cfg.listing_budget):
        w, n = M.weight, M.n
        V = vector_array(M.spec, n)
        for D in realizable_weights(w, n):
            zero = [0] * n
            x = _vec(V[int(rng.integers(len(V)))])
            B0, Bx = ac.ball(M, zero, D), ac.ball(M, x, D)
            A = brute_a_star(w, n, D, cfg.listing_budget)
            props = (
                ac.diameter(B0, M) == D and ac.diameter(Bx, M) == D,
                ac.diameter(Bx, M) <= D and len(Bx) == A,
                all(ac.ball(M, min(opt), D) == opt
                    for opt in brute_optimal_anticodes(w, n, D, cfg.listing_budget)),
                A == len(B0),
            )
            r.instances += 1
            if len(set(props)) != 1:
                r.fail(_label(M, D=D, properties=list(props)))
    return r


# -- codes ----------------------------------------------------------------------

def random_code(M: MetricSpace, rng: np.random.Generator, max_size: int) -> cd.Code:
    hi = min(M.size, max_size)
    k = int(rng.integers(2, hi + 1))
    idx = rng.choice(M.size, size=k, replace=False)
    return cd.Code.from_words(M, vector_array(M.spec, M.n)[idx].tolist())


def _code_spaces(cfg: SweepConfig, ctx: Context, fields) -> list[tuple[int, int]]:
    out = []
    for q in fields:
        n = 1
        while q**n <= cfg.code_space_limit:
            out.append((q, n))
            n += 1
    return out


def check_min_distance_structure(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("min-distance-structure",
                    "d_w(C) = S_{w,C} + (d(C) - 1) M_w against the brute pairwise minimum; "
                    "m_w + (d(C) - 1) M_w for linear codes")
    for q, n in _code_spaces(cfg, ctx, cfg.fields):
        rng = ctx.rng("codes", q, n)
        pool = ctx.weights(q)
        for i in range(cfg.random_codes):
            M = MetricSpace.chain(pool[i % len(pool)], n)
            C = random_code(M, rng, cfg.code_max_size)
            r.instances += 1
            try:
                cd.min_distances(C)
            except ContractError as exc:
                r.fail(_label(M, words=C.to_dict()["words"], error=str(exc)))
        # linear codes: row spaces of random generator matrices
        for w in pool[:3]:
            M = MetricSpace.chain(w, n)
            C = _random_linear_code(M, rng)
            if C is None:
                continue
            r.instances += 1
            md = cd.min_distances(C)
            if md.s_wc != w.min_nonzero_weight:
                r.fail(_label(M, linear=True, words=C.to_dict()["words"]))
    return r


def _random_linear_code(M: MetricSpace, rng: np.random.Generator) -> cd.Code | None:
    spec, n = M.spec, M.n
    k = int(rng.integers(1, n + 1))
    G = rng.integers(0, spec.q, size=(k, n))
    words = set()
    for coeffs in itertools.product(range(spec.q), repeat=k):
        v = [0] * n
        for c, row in zip(coeffs, G):
            v = [int(spec.add_table[a, spec.mul_table[c, b]]) for a, b in zip(v, row)]
        words.add(tuple(v))
    if len(words) < 2:
        return None
    return cd.Code.from_words(M, words)


def check_packing_radius(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("packing-radius",
                    "balls of radius M_w (d(C) - 1) around distinct codewords are disjoint, and "
                    "balls of radius M_w (d(C) - 1) + m_w meet for some pair at poset distance d(C)")
    missed = 0
    for q, n in _code_spaces(cfg, ctx, cfg.fields):
        rng = ctx.rng("codes", q, n)
        pool = ctx.weights(q)
        for i in range(cfg.random_codes):
            M = MetricSpace.chain(pool[i % len(pool)], n)
            C = random_code(M, rng, cfg.code_max_size)
            r.instances += 1
            pc = cd.packing_check(C)
            if not pc.disjoint:
                r.fail(_label(M, words=C.to_dict()["words"], reason="radius balls overlap"))
            elif not pc.probe_collides:
                missed += 1
                r.fail(_label(M, words=C.to_dict()["words"], radius=pc.radius,
                              exact_radius=cd.exact_packing_radius(C),
                              reason="radius + m_w balls still disjoint"))
    if missed:
        r.notes.append(f"{missed} of {r.instances} codes have packing radius above M_w (d(C) - 1)")
    return r


def mds_codes(cfg: SweepConfig, ctx: Context) -> Iterator[tuple[MetricSpace, int, str, cd.Code]]:
    for q in cfg.mds_fields:
        spec = make_field(q)
        for w in ctx.weights(q):
            for n in range(1, cfg.mds_n_max + 1):
                M = MetricSpace.chain(w, n)
                rng = ctx.rng("mds", q, n)
                for d in range(1, n + 1):
                    maps = [("constant", cd.constant_assignment(d)),
                            ("linear", cd.linear_assignment(spec, n, d))]
                    maps += [(f"random{j}", cd.random_assignment(spec, n, d, rng))
                             for j in range(cfg.mds_random_maps)]
                    for name, assign in maps:
                        yield M, d, name, cd.construct_mds(M, d, assign)


def check_mds_perfect(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("mds-perfect",
                    "a code is MDS iff it is perfect, and MDS codes are graphs of maps "
                    "F_q^(n-d+1) -> F_q^(d-1)")
    for M, d, name, C in mds_codes(cfg, ctx):
        if len(C) < 2:
            continue
        r.instances += 1
        try:
            res = cd.is_mds(C)
        except ContractError as exc:
            r.fail(_label(M, d=d, map=name, error=str(exc)))
            continue
        if not (res.mds and res.perfect and res.d_poset == d and res.assignment is not None):
            r.fail(_label(M, d=d, map=name))
    for M, C in _non_mds_codes(cfg, ctx):
        r.instances += 1
        try:
            res = cd.is_mds(C)
        except ContractError as exc:
            r.fail(_label(M, words=C.to_dict()["words"], error=str(exc)))
            continue
        if res.mds or res.perfect:
            r.fail(_label(M, words=C.to_dict()["words"]))
    return r


def _non_mds_codes(cfg: SweepConfig, ctx: Context) -> Iterator[tuple[MetricSpace, cd.Code]]:
    rng = ctx.rng("non-mds")
    spaces = [M for M in ctx.spaces(fields=cfg.mds_fields, n_max=cfg.mds_n_max) if M.size > 2]
    made = 0
    while made < cfg.non_mds_codes:
        M = spaces[int(rng.integers(len(spaces)))]
        C = random_code(M, rng, cfg.code_max_size)
        d = cd.min_distances(C).d_poset
        if len(C) == M.q ** (M.n - d + 1):
            continue
        made += 1
        yield M, C


def check_mds_diameter_perfect(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("mds-diameter-perfect",
                    "every MDS code satisfies A*(floor_w(d_w(C))) |C| = q^n; random non-MDS "
                    "codes over prime fields give a strict inequality")
    for M, d, name, C in mds_codes(cfg, ctx):
        if len(C) < 2:
            continue
        r.instances += 1
        dp = cd.diameter_perfect_product(C)
        if not dp.equality:
            r.fail(_label(M, d=d, map=name, product=dp.product))
        elif M.size <= cfg.clique_budget:
            brute = cd.diameter_perfect_product(C, a_star=brute_a_star)
            if not brute.equality:
                r.fail(_label(M, d=d, map=name, brute_product=brute.product))
    for M, C in _non_mds_codes(cfg, ctx):
        r.instances += 1
        dp = cd.diameter_perfect_product(C)
        if M.spec.k == 1 and dp.product >= dp.space_size:
            r.fail(_label(M, words=C.to_dict()["words"], product=dp.product))
    return r


def check_singleton_equivalence(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("singleton-equivalence",
                    "codes with d_w(C) = m_w + (d(C) - 1) M_w (in particular for multiples of "
                    "the Hamming weight) are diameter perfect iff MDS")
    for q, n in _code_spaces(cfg, ctx, cfg.fields):
        if n > cfg.n_max:
            continue
        rng = ctx.rng("singleton", q, n)
        spec = make_field(q)
        pool = ctx.weights(q) + [WeightTable(spec, (0,) + (3,) * (q - 1), "3*hamming")]
        for i in range(cfg.random_codes):
            M = MetricSpace.chain(pool[i % len(pool)], n)
            C = random_code(M, rng, cfg.code_max_size)
            md = cd.min_distances(C)
            if md.s_wc != M.weight.min_nonzero_weight:
                continue
            r.instances += 1
            if cd.is_diameter_perfect(C) != cd.is_mds(C).mds:
                r.fail(_label(M, words=C.to_dict()["words"]))
    return r


def check_power_of_q(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("power-of-q-classification",
                    "a code of size q^k is diameter perfect iff it is MDS")
    for q, n in _code_spaces(cfg, ctx, cfg.fields):
        if n > cfg.n_max:
            continue
        rng = ctx.rng("power", q, n)
        V = vector_array(make_field(q), n)
        for i, w in enumerate(ctx.weights(q)):
            M = MetricSpace.chain(w, n)
            for k in range(1, n + 1):
                idx = rng.choice(len(V), size=q**k, replace=False)
                C = cd.Code.from_words(M, V[idx].tolist())
                for code in (C, cd.construct_mds(M, n - k + 1, cd.linear_assignment(M.spec, n, n - k + 1))):
                    if len(code) < 2:
                        continue
                    r.instances += 1
                    res = cd.power_of_q_classification(code)
                    if not res.consistent:
                        r.fail(_label(M, words=code.to_dict()["words"], result=res._asdict()))
    return r


def check_criterion(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("diameter-perfect-criterion",
                    "for m_w < S < M_w the threshold code with distance S + (R-1) M_w satisfies "
                    "A*(floor) |C| <= q^n exactly when the field-level inequality holds, with "
                    "equality on both sides together")
    for q in cfg.fields:
        for w in ctx.weights(q):
            for S in cd.admissible_levels(w):
                crit = cd.diameter_perfect_criterion(w, S)
                for n in range(1, cfg.n_max + 1):
                    if q**n > cfg.code_space_limit:
                        continue
                    M = MetricSpace.chain(w, n)
                    for R in range(1, n + 1):
                        C = cd.construct_threshold_code(M, S, R)
                        dp = cd.diameter_perfect_product(C)
                        r.instances += 1
                        if (dp.product <= dp.space_size) != (crit.lhs <= crit.rhs) \
                                or dp.equality != crit.equality:
                            r.fail(_label(M, S=S, R=R, criterion=crit.to_dict(),
                                          product=dp.product))
    return r


def check_prime_strictness(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("prime-field-strictness",
                    "over F_p: 1 + |w^-1([S-1]_w)| < p and |W^w(S)| < p for m_w < S < M_w, and "
                    "1 + |w^-1([S_w-1]_w)| + |W_w(S-1)| < p for S_w < S < M_w; checked on "
                    "the pool and on every valid weight with values up to the random-weight cap")
    for q in cfg.fields:
        spec = make_field(q)
        if spec.k != 1:
            continue
        pool = {w.values: w for w in ctx.weights(q)}
        pool.update((w.values, w) for w in enumerate_weights(spec, cfg.max_weight_value))
        for w in pool.values():
            Sw = weight_stats(w).archimedean_threshold
            for S in cd.admissible_levels(w):
                r.instances += 1
                a = 1 + w_interval(w, S - 1).count
                b = len(ac.upper_family(w, S)[0])
                c = 1 + w_interval(w, Sw - 1).count + len(ac.lower_family(w, S - 1)[0]) \
                    if S > Sw else None
                if not (a < q and b < q and (c is None or c < q)):
                    r.fail({"q": q, "weight": list(w.values), "S": S, "values": [a, b, c]})
    return r


def check_equality_hunt(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("equality-hunt",
                    "search valid weights with small values for equality in the field-level "
                    "inequality; every hit must give a diameter perfect threshold code")
    hits = []
    for q in cfg.hunt_fields:
        spec = make_field(q)
        for w in enumerate_weights(spec, cfg.hunt_max_value):
            for S in cd.admissible_levels(w):
                r.instances += 1
                crit = cd.diameter_perfect_criterion(w, S)
                if not crit.equality:
                    continue
                M = MetricSpace.chain(w, 1)
                C = cd.construct_threshold_code(M, S, 1)
                closed, brute = (cd.diameter_perfect_product(C),
                                 cd.diameter_perfect_product(C, a_star=brute_a_star))
                hit = {"q": q, "weight": list(w.values), "S": S, "criterion": crit.to_dict(),
                       "code": C.to_dict()["words"], "closed_form_product": closed.product,
                       "brute_product": brute.product}
                hits.append(hit)
                if not (closed.equality and brute.equality):
                    r.fail(hit)
    r.notes.append(f"{len(hits)} equality instances found" if hits
                   else "no equality instance found")
    r.details = {"equality_instances": len(hits), "examples": hits[:10]}
    return r


def enumerate_weights(spec: FieldSpec, max_value: int) -> Iterator[WeightTable]:
    """Every valid weight on the field with values in ``1..max_value``."""
    neg = spec.neg_table
    reps = [a for a in range(1, spec.q) if a <= neg[a]]
    for vals in itertools.product(range(1, max_value + 1), repeat=len(reps)):
        table = [0] * spec.q
        for a, v in zip(reps, vals):
            table[a] = table[int(neg[a])] = v
        w = WeightTable(spec, tuple(table), "enumerated")
        if not validate_weight(w):
            yield w


# -- ultrametrics -----------------------------------------------------------------

def check_ultrametric_characterization(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("ultrametric-characterization",
                    "the weighted chain distance is an ultrametric iff w is non-archimedean; "
                    "then the chain weight itself is non-archimedean")
    for q in cfg.fields:
        if q > cfg.triple_fields_max:
            continue
        for M in ctx.spaces(fields=(q,), n_max=cfg.triple_n_max):
            st = weight_stats(M.weight)
            try:
                res = check_ultrametric(M)
            except BudgetExceeded:
                r.skipped += 1
                continue
            r.instances += 1
            if res.is_ultrametric != st.non_archimedean:
                r.fail(_label(M, ultrametric=res.is_ultrametric))
            if res.witness is not None:
                x, y, z = res.witness
                if not wp_distance(M, x, y) > max(wp_distance(M, x, z), wp_distance(M, z, y)):
                    r.fail(_label(M, bad_witness=res.witness))
            if st.non_archimedean:
                V = vector_array(M.spec, M.n)
                W = chain_weights(M, V)
                if (W[_sum_index(M, V)] > np.maximum(W[:, None], W[None, :])).any():
                    r.fail(_label(M, reason="chain weight is archimedean"))
    return r


def _general_ball(M: MetricSpace, D: int) -> np.ndarray:
    V = vector_array(M.spec, M.n)
    return V[poset_weights(M, V) <= D]


def check_ball_diameter(cfg: SweepConfig, ctx: Context) -> CheckResult:
    r = CheckResult("ball-diameter-characterization",
                    "diam B(x, D) = D for all x and D exactly for chains with non-archimedean "
                    "weights; otherwise some ball has diameter > D")
    rng = ctx.rng("diameter")
    for q in cfg.fields:
        if q > cfg.triple_fields_max:
            continue
        for M in ctx.spaces(fields=(q,), n_max=cfg.triple_n_max):
            non_arch = weight_stats(M.weight).non_archimedean
            V = vector_array(M.spec, M.n)
            witness = None
            for D in realizable_weights(M.weight, M.n):
                B0 = ac.ball(M, [0] * M.n, D)
                diam = ac.diameter(B0, M)
                if non_arch:
                    x = _vec(V[int(rng.integers(len(V)))])
                    r.instances += 1
                    if diam != D or ac.diameter(ac.ball(M, x, D), M) != D:
                        r.fail(_label(M, D=D, diameter=diam))
                elif diam > D:
                    witness = D
                    break
            if not non_arch:
                r.instances += 1
                if witness is None:
                    r.fail(_label(M, reason="archimedean weight but every ball has diameter <= D"))
    for q in cfg.nonchain_fields:
        spec = make_field(q)
        weights = ctx.weights(q)[:3]
        for n in range(2, cfg.nonchain_n_max + 1):
            for P in all_posets(n):
                if P.is_chain:
                    continue
                for w in weights:
                    M = MetricSpace(spec, n, P, w)
                    W = sorted(set(int(x) for x in poset_weights(M, vector_array(spec, n))))
                    r.instances += 1
                    for D in W:
                        B = _general_ball(M, D)
                        if distance_matrix(M, B, reference=True).max() > D:
                            break
                    else:
                        r.fail(_label(M, reason="non-chain poset with every ball of diameter <= D"))
    return r


# -- registry -----------------------------------------------------------------------

CHECKS: list[tuple[str, Callable[[SweepConfig, Context], CheckResult]]] = [
    ("weight-axioms", check_weight_axioms),
    ("naive-support-weight", check_naive_support_weight),
    ("poset-weight-axioms", check_poset_weight_axioms),
    ("chain-fast-path", check_chain_fast_path),
    ("product-bound", check_product_bound),
    ("radius-normalization", check_radius_normalization),
    ("ball-size-formula", check_ball_size),
    ("ball-membership", check_ball_membership),
    ("min-distance-structure", check_min_distance_structure),
    ("packing-radius", check_packing_radius),
    ("mds-perfect", check_mds_perfect),
    ("anticode-upper-bound", check_anticode_upper_bound),
    ("d-optimality-equivalence", check_d_optimality_equivalence),
    ("subspace-ball", check_subspace_ball),
    ("singleton-equivalence", check_singleton_equivalence),
    ("mds-diameter-perfect", check_mds_diameter_perfect),
    ("power-of-q-classification", check_power_of_q),
    ("ball-form-below-threshold", check_ball_form),
    ("optimal-anticode-size", check_optimal_anticode_size),
    ("optimal-anticode-classification", check_classification),
    ("diameter-perfect-criterion", check_criterion),
    ("equality-hunt", check_equality_hunt),
    ("prime-field-strictness", check_prime_strictness),
    ("ultrametric-characterization", check_ultrametric_characterization),
    ("ball-diameter-characterization", check_ball_diameter),
]


def run_check(name: str, config: SweepConfig, ctx: Context | None = None) -> CheckResult:
    fn = dict(CHECKS)[name]
    ctx = ctx or Context(config)
    start = time.perf_counter()
    try:
        result = fn(config, ctx)
    except BudgetExceeded as exc:
        result = CheckResult(name, "", status="skip", notes=[str(exc)])
    except PosetCodesError as exc:
        result = CheckResult(name, "", status="fail", counterexamples=[str(exc)])
    result.seconds = round(time.perf_counter() - start, 3)
    if result.status == "pass" and result.instances == 0:
        result.status = "skip"
    return result


def run_verification_suite(config: SweepConfig | None = None) -> SuiteReport:
    config = config or SweepConfig()
    ctx = Context(config)
    names = [n for n, _ in CHECKS if not config.only or n in config.only]
    return SuiteReport(config.to_dict(), [run_check(n, config, ctx) for n in names])
