"""Exhaustive enumeration of valid fusion rules at small rank and bounded
multiplicity, plus the survey that cross-checks the acyclic/nilpotent
equivalence and weak integrality on everything enumerated.

The search fixes a dual involution, forces the unit and vacuum-channel
entries, groups the remaining tensor cells into orbits of the dual symmetry,
and backtracks over orbit values checking each associativity quadruple as soon
as its last cell is assigned.  Emission order is lexicographic on the
flattened tensor (then on the dual map), independent of internals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterator

import numpy as np

from . import _kernels
from .acyclicity import is_acyclic
from .core import FusionRule, default_labels, fp_dimensions
from .errors import CapacityError, NumericalError, StructuralError
from .nilpotency import central_series

__all__ = ["EnumSpec", "TheoremSurvey", "enumerate_rules", "survey"]

RANK_CAP = 5
MULT_CAP = 3


@dataclass(frozen=True)
class EnumSpec:
    """Bounds for an enumeration run.

    ``bare_axioms`` drops the imposed single-vacuum-channel condition and
    enumerates under the bare axiom set, where ``N[i,j,0]`` is free for
    ``j != dual(i)``; distinct (dual, tensor) pairs then count separately.
    ``allow_large`` overrides the rank/multiplicity caps.
    """

    rank: int
    max_mult: int = 2
    dual_maps: tuple[tuple[int, ...], ...] | None = None
    limit: int | None = None
    bare_axioms: bool = False
    allow_large: bool = False

    def __post_init__(self):
        if self.rank < 1 or self.max_mult < 0:
            raise CapacityError("rank must be >= 1 and max_mult >= 0")
        if not self.allow_large and (self.rank > RANK_CAP or self.max_mult > MULT_CAP):
            raise CapacityError(
                f"rank <= {RANK_CAP} and max_mult <= {MULT_CAP} unless allow_large is set"
            )
        if self.dual_maps is not None:
            duals = tuple(tuple(int(x) for x in d) for d in self.dual_maps)
            for d in duals:
                _check_involution(d, self.rank)
            object.__setattr__(self, "dual_maps", duals)
        if self.limit is not None and self.limit < 0:
            raise ValueError("limit must be non-negative")


def _check_involution(dual: tuple[int, ...], rank: int) -> None:
    if len(dual) != rank or sorted(dual) != list(range(rank)):
        raise StructuralError(f"dual map {dual} is not a permutation of 0..{rank - 1}")
    if dual[0] != 0 or any(dual[dual[i]] != i for i in range(rank)):
        raise StructuralError(f"dual map {dual} is not an involution fixing 0")


def _involutions(rank: int) -> list[tuple[int, ...]]:
    """All involutions of 0..rank-1 fixing 0, sorted."""

    def build(points: tuple[int, ...]) -> list[dict[int, int]]:
        if not points:
            return [{}]
        first, rest = points[0], points[1:]
        out = [{first: first, **m} for m in build(rest)]
        for n, partner in enumerate(rest):
            remaining = rest[:n] + rest[n + 1 :]
            out.extend({first: partner, partner: first, **m} for m in build(remaining))
        return out

    maps = build(tuple(range(1, rank)))
    return sorted(tuple([0] + [m[i] for i in range(1, rank)]) for m in maps)


@dataclass
class _SearchPlan:
    base: np.ndarray
    orbit_a: np.ndarray
    orbit_b: np.ndarray
    quad_ptr: np.ndarray
    quads: np.ndarray


def _prepare(rank: int, dual: tuple[int, ...], bare_axioms: bool) -> _SearchPlan | None:
    """Forced cells, free orbits, and per-step associativity quadruples.

    Returns None when the forced cells alone already violate associativity
    (cannot happen for the shipped modes, but keeps the contract total).
    """
    r = rank

    def flat(i, j, k):
        return (i * r + j) * r + k

    base = np.full(r * r * r, -1, dtype=np.int64)
    for j in range(r):
        for k in range(r):
            base[flat(0, j, k)] = 1 if j == k else 0
            base[flat(j, 0, k)] = 1 if j == k else 0
    for i in range(1, r):
        if bare_axioms:
            base[flat(i, dual[i], 0)] = 1
        else:
            for j in range(1, r):
                base[flat(i, j, 0)] = 1 if j == dual[i] else 0

    pos = np.full(r * r * r, -1, dtype=np.int64)
    orbit_a: list[int] = []
    orbit_b: list[int] = []
    for i in range(r):
        for j in range(r):
            for k in range(r):
                cell = flat(i, j, k)
                if base[cell] != -1 or pos[cell] != -1:
                    continue
                mirror = flat(dual[j], dual[i], dual[k])
                t = len(orbit_a)
                orbit_a.append(cell)
                orbit_b.append(mirror)
                pos[cell] = t
                pos[mirror] = t

    n_orbits = len(orbit_a)
    buckets: list[list[tuple[int, int, int, int]]] = [[] for _ in range(n_orbits)]
    # quadruples with any of i, j, k at the vacuum reduce to identities once
    # the unit rows are forced, so only i, j, k >= 1 need checking
    for i, j, k in iproduct(range(1, r), repeat=3):
        for l in range(r):
            trigger = -1
            for m in range(r):
                for cell in (flat(i, j, m), flat(m, k, l), flat(j, k, m), flat(i, m, l)):
                    if pos[cell] > trigger:
                        trigger = pos[cell]
            if trigger == -1:
                lhs = sum(base[flat(i, j, m)] * base[flat(m, k, l)] for m in range(r))
                rhs = sum(base[flat(j, k, m)] * base[flat(i, m, l)] for m in range(r))
                if lhs != rhs:
                    return None
            else:
                buckets[trigger].append((i, j, k, l))

    quad_ptr = np.zeros(n_orbits + 1, dtype=np.int64)
    rows: list[tuple[int, int, int, int]] = []
    for t, bucket in enumerate(buckets):
        rows.extend(bucket)
        quad_ptr[t + 1] = len(rows)
    quads = np.array(rows, dtype=np.int64).reshape(len(rows), 4)
    return _SearchPlan(
        base=base,
        orbit_a=np.array(orbit_a, dtype=np.int64),
        orbit_b=np.array(orbit_b, dtype=np.int64),
        quad_ptr=quad_ptr,
        quads=quads,
    )


def enumerate_rules(spec: EnumSpec) -> Iterator[FusionRule]:
    """Yield every valid fusion rule within the bounds, each exactly once,
    ordered lexicographically by flattened tensor (then dual map)."""
    duals = spec.dual_maps if spec.dual_maps is not None else _involutions(spec.rank)
    found: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for dual in duals:
        plan = _prepare(spec.rank, dual, spec.bare_axioms)
        if plan is None:
            continue
        if len(plan.orbit_a) == 0:
            solutions = plan.base.reshape(1, -1)
        else:
            solutions = _kernels.search_tensors(
                plan.base, plan.orbit_a, plan.orbit_b, plan.quad_ptr, plan.quads,
                spec.max_mult, spec.rank,
            )
        for row in solutions:
            found.append((tuple(int(x) for x in row), dual))

    found.sort()
    if not spec.bare_axioms:
        # the vacuum column pins the dual, so tensors cannot repeat across duals
        assert len({t for t, _ in found}) == len(found)

    labels = default_labels(spec.rank)
    emitted = 0
    for tensor_flat, dual in found:
        if spec.limit is not None and emitted >= spec.limit:
            return
        tensor = np.array(tensor_flat, dtype=np.int64).reshape(spec.rank, spec.rank, spec.rank)
        yield FusionRule(labels=labels, dual=dual, tensor=tensor)
        emitted += 1


@dataclass(frozen=True)
class TheoremSurvey:
    """Aggregate verdicts over an enumeration run.

    ``disagreements`` (rules where acyclicity and nilpotency differ) and
    ``weak_integrality_failures`` (acyclic rules with a non-integer global
    dimension) must both be empty; ``class_histogram`` counts nilpotent rules
    by nilpotency class.
    """

    total: int
    acyclic_count: int
    nilpotent_count: int
    disagreements: tuple[FusionRule, ...]
    weak_integrality_failures: tuple[FusionRule, ...]
    class_histogram: dict[int, int] = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return not self.disagreements and not self.weak_integrality_failures


def survey(spec: EnumSpec, tolerance: float = 1e-6) -> TheoremSurvey:
    """Run both decision procedures and the integrality check on every rule."""
    total = 0
    acyclic_count = 0
    nilpotent_count = 0
    disagreements = []
    failures = []
    histogram: dict[int, int] = {}
    for rule in enumerate_rules(spec):
        total += 1
        acyclic = is_acyclic(rule)
        series = central_series(rule)
        acyclic_count += acyclic
        nilpotent_count += series.nilpotent
        if acyclic != series.nilpotent:
            disagreements.append(rule)
        if series.nilpotent:
            c = series.nilpotency_class
            histogram[c] = histogram.get(c, 0) + 1
        try:
            dims = fp_dimensions(rule, tolerance)
        except NumericalError as exc:
            exc.rule = rule
            raise
        if acyclic and not dims.is_weakly_integral:
            failures.append(rule)
    return TheoremSurvey(
        total=total,
        acyclic_count=acyclic_count,
        nilpotent_count=nilpotent_count,
        disagreements=tuple(disagreements),
        weak_integrality_failures=tuple(failures),
        class_histogram=histogram,
    )
