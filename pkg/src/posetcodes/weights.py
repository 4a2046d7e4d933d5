"""Weights on F_q and the scalar quantities derived from them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .algebra import FieldSpec, make_field
from .errors import DomainError, ValidationError


@dataclass(frozen=True)
class WeightTable:
    """A map F_q -> N given by its values in canonical element order.

    Construction only checks completeness; call :func:`validate_weight` (or
    :meth:`require_valid`) for the weight axioms.
    """

    spec: FieldSpec
    values: tuple[int, ...]
    name: str = "custom"

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if len(vals) != self.spec.q:
            raise ValidationError(
                f"weight table has {len(vals)} entries, field {self.spec} needs {self.spec.q}"
            )
        object.__setattr__(self, "values", vals)

    def __call__(self, a: int) -> int:
        return self.values[a]

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.values, dtype=np.int64)
        a.setflags(write=False)
        return a

    @property
    def max_weight(self) -> int:
        return max(self.values)

    @property
    def min_nonzero_weight(self) -> int:
        return min(self.values[1:])

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.values)))

    def require_valid(self) -> "WeightTable":
        violations = validate_weight(self)
        if violations:
            first = violations[0]
            raise ValidationError(
                f"{self.name} is not a weight: {first.axiom} axiom fails at {first.witness}"
            )
        return self

    def to_json(self) -> str:
        return json.dumps(list(self.values))


class Violation(NamedTuple):
    axiom: str  # "positivity" | "symmetry" | "triangle"
    witness: tuple[int, ...]


@dataclass(frozen=True)
class WeightStats:
    max_weight: int
    min_nonzero_weight: int
    image: tuple[int, ...]
    archimedean_threshold: int
    non_archimedean: bool

    def to_dict(self) -> dict:
        return {
            "M_w": self.max_weight,
            "m_w": self.min_nonzero_weight,
            "image": list(self.image),
            "S_w": self.archimedean_threshold,
            "non_archimedean": self.non_archimedean,
        }


def make_standard_weight(spec: FieldSpec, kind: str) -> WeightTable:
    """``hamming`` on any field, ``lee`` (min(a, p - a)) on prime fields only."""
    if kind == "hamming":
        return WeightTable(spec, (0,) + (1,) * (spec.q - 1), "hamming")
    if kind == "lee":
        if spec.k != 1:
            raise DomainError(f"the Lee weight is only defined here for prime fields, not {spec}")
        return WeightTable(spec, tuple(min(a, spec.p - a) for a in range(spec.p)), "lee")
    raise DomainError(f"unknown standard weight {kind!r}")


def validate_weight(w: WeightTable) -> list[Violation]:
    """Every axiom violation, each with its witnessing element(s); empty means valid."""
    spec, vals = w.spec, w.values
    out: list[Violation] = []
    if vals[0] != 0:
        out.append(Violation("positivity", (0,)))
    out.extend(Violation("positivity", (a,)) for a in range(1, spec.q) if vals[a] <= 0)
    for a in range(spec.q):
        na = int(spec.neg_table[a])
        if a < na and vals[a] != vals[na]:
            out.append(Violation("symmetry", (a, na)))
    add = spec.add_table
    for a in range(spec.q):
        for b in range(a, spec.q):
            if vals[add[a, b]] > vals[a] + vals[b]:
                out.append(Violation("triangle", (a, b)))
    return out


def weight_stats(w: WeightTable) -> WeightStats:
    vals = w.array
    sub = w.spec.sub_table
    pair_max = np.maximum(vals[:, None], vals[None, :])
    archimedean = vals[sub] > pair_max
    if archimedean.any():
        threshold = int(pair_max[archimedean].min())
    else:
        threshold = w.max_weight
    return WeightStats(
        max_weight=w.max_weight,
        min_nonzero_weight=w.min_nonzero_weight,
        image=w.image,
        archimedean_threshold=threshold,
        non_archimedean=not archimedean.any(),
    )


class WInterval(NamedTuple):
    values: tuple[int, ...]
    count: int


def w_interval(w: WeightTable, r: int) -> WInterval:
    """The realised weights in ``{1..r}`` and how many elements carry one of them."""
    values = tuple(t for t in w.image if 1 <= t <= r)
    count = sum(1 for v in w.values if 1 <= v <= r)
    return WInterval(values, count)


def realizable_weights(w: WeightTable, n: int) -> tuple[int, ...]:
    """Image of the weighted chain weight on F_q^n: 0 and s + i*M_w with s > 0 in Im(w)."""
    M = w.max_weight
    vals = {0}
    for i in range(n):
        vals.update(s + i * M for s in w.image if s > 0)
    return tuple(sorted(vals))


def floor_weight(w: WeightTable, n: int, D: int) -> int:
    """Largest ``s + i*M_w`` (s in Im(w), 0 <= i < n) strictly below D."""
    if D < 1:
        raise DomainError(f"floor weight needs D >= 1, got {D}")
    M = w.max_weight
    best = 0
    for i in range(n):
        for s in w.image:
            t = s + i * M
            if best < t < D:
                best = t
    return best


def random_weight(spec: FieldSpec, rng: np.random.Generator, max_value: int = 5,
                  max_tries: int = 10_000) -> WeightTable:
    """A uniformly drawn valid weight with values in ``1..max_value`` (rejection sampling)."""
    neg = spec.neg_table
    reps = [a for a in range(1, spec.q) if a <= neg[a]]
    for _ in range(max_tries):
        vals = [0] * spec.q
        for a, v in zip(reps, rng.integers(1, max_value + 1, size=len(reps))):
            vals[a] = vals[int(neg[a])] = int(v)
        w = WeightTable(spec, tuple(vals), "random")
        if not validate_weight(w):
            return w
    raise DomainError(f"no valid weight found on {spec} after {max_tries} draws")


def load_weight(spec: FieldSpec, source: str | Path | Sequence[int]) -> WeightTable:
    """Resolve ``hamming``/``lee``, a JSON file path, or a literal value list."""
    if isinstance(source, str) and source in ("hamming", "lee"):
        return make_standard_weight(spec, source)
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            values = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read weight table {path}: {exc}") from exc
        if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
            raise ValidationError(f"{path} must hold a JSON array of integers")
        return WeightTable(spec, tuple(values), path.stem)
    return WeightTable(spec, tuple(source))


def weight_from_values(values: Sequence[int], name: str = "custom") -> WeightTable:
    return WeightTable(make_field(len(values)), tuple(values), name)
