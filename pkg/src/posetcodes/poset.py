"""Partial orders on the coordinate set {1, ..., n} and the ideals they generate.

Coordinates are 1-based here, as in the usual notation; vectors are 0-based
tuples, so coordinate ``i`` of ``u`` is ``u[i - 1]``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import ValidationError


@dataclass(frozen=True)
class Poset:
    """A partial order stored as its full (reflexive, transitive) relation."""

    n: int
    leq: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"poset size must be >= 1, got {self.n}")
        ground = range(1, self.n + 1)
        for i, j in self.leq:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValidationError(f"relation pair {(i, j)} outside [1, {self.n}]")
        for i in ground:
            if (i, i) not in self.leq:
                raise ValidationError(f"relation is not reflexive at {i}")
        for i, j in self.leq:
            if i != j and (j, i) in self.leq:
                raise ValidationError(f"relation is not antisymmetric: {i} <= {j} <= {i}")
        for i, j in self.leq:
            for k in ground:
                if (j, k) in self.leq and (i, k) not in self.leq:
                    raise ValidationError(f"relation is not transitive at {(i, j, k)}")

    def le(self, i: int, j: int) -> bool:
        return (i, j) in self.leq

    @cached_property
    def down_sets(self) -> tuple[frozenset[int], ...]:
        """``down_sets[j - 1]`` is the principal ideal of j."""
        return tuple(
            frozenset(i for i in range(1, self.n + 1) if (i, j) in self.leq)
            for j in range(1, self.n + 1)
        )

    @property
    def is_chain(self) -> bool:
        return all(
            self.le(i, j) or self.le(j, i)
            for i, j in itertools.combinations(range(1, self.n + 1), 2)
        )

    @property
    def is_usual_chain(self) -> bool:
        return all(self.le(i, i + 1) for i in range(1, self.n))

    def chain_order(self) -> list[int]:
        """Elements from bottom to top; only meaningful for chains."""
        if not self.is_chain:
            raise ValidationError("poset is not a chain")
        return sorted(range(1, self.n + 1), key=lambda j: len(self.down_sets[j - 1]))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        strict = {(i, j) for i, j in self.leq if i != j}
        return tuple(sorted(
            (i, j) for i, j in strict
            if not any((i, k) in strict and (k, j) in strict for k in range(1, self.n + 1))
        ))

    def to_dict(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in self.covers]}


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    rel = [[i == j for j in range(n + 1)] for i in range(n + 1)]
    for i, j in pairs:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValidationError(f"cover relation {(i, j)} outside [1, {n}]")
        rel[i][j] = True
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if rel[i][k]:
                for j in range(1, n + 1):
                    if rel[k][j]:
                        rel[i][j] = True
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rel[i][j] and rel[j][i]:
                raise ValidationError(f"cover relations contain a cycle through {i} and {j}")
    return frozenset((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if rel[i][j])


def chain(n: int) -> Poset:
    return Poset(n, _closure(n, ((i, i + 1) for i in range(1, n))))


def antichain(n: int) -> Poset:
    return Poset(n, _closure(n, ()))


def from_covers(n: int, covers: Iterable[Sequence[int]]) -> Poset:
    return Poset(n, _closure(n, (tuple(c) for c in covers)))


def make_poset(n: int, kind: str = "chain", covers: Iterable[Sequence[int]] | None = None) -> Poset:
    if kind == "chain":
        return chain(n)
    if kind == "antichain":
        return antichain(n)
    if kind == "covers":
        return from_covers(n, covers or ())
    raise ValidationError(f"unknown poset kind {kind!r}")


def load_poset(source: str | Path, n: int | None = None) -> Poset:
    """``chain``/``antichain`` (needs n) or a JSON file ``{"n": .., "covers": [[i, j], ..]}``."""
    if source in ("chain", "antichain"):
        if n is None:
            raise ValidationError(f"--poset {source} needs a dimension")
        return make_poset(n, str(source))
    path = Path(source)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read poset {path}: {exc}") from exc
    if n is not None and data.get("n") != n:
        raise ValidationError(f"poset file has n={data.get('n')}, expected {n}")
    return from_covers(int(data["n"]), data.get("covers", []))


def ideal_closure(P: Poset, X: Iterable[int]) -> frozenset[int]:
    """Smallest ideal containing X."""
    out: set[int] = set()
    for i in X:
        if not 1 <= i <= P.n:
            raise ValidationError(f"element {i} outside [1, {P.n}]")
        out |= P.down_sets[i - 1]
    return frozenset(out)


def maximal_elements(P: Poset, X: Iterable[int]) -> frozenset[int]:
    X = frozenset(X)
    return frozenset(i for i in X if not any(j != i and P.le(i, j) for j in X))


@dataclass(frozen=True)
class SupportIdeal:
    support: frozenset[int]
    ideal: frozenset[int]
    maximals: frozenset[int]


def support_ideal(P: Poset, u: Sequence[int]) -> SupportIdeal:
    if len(u) != P.n:
        raise ValidationError(f"vector of length {len(u)} on a poset of size {P.n}")
    supp = frozenset(i + 1 for i, c in enumerate(u) if c != 0)
    ideal = ideal_closure(P, supp)
    return SupportIdeal(supp, ideal, maximal_elements(P, ideal))


def all_posets(n: int) -> Iterator[Poset]:
    """Every labelled partial order on [n] (1, 3, 19, 219 of them for n = 1..4)."""
    strict = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    refl = {(i, i) for i in range(1, n + 1)}
    for mask in range(1 << len(strict)):
        rel = {strict[b] for b in range(len(strict)) if mask >> b & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2 and i != k):
            continue
        yield Poset(n, frozenset(rel | refl))
