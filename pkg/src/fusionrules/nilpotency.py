"""Sub-fusion rules, the adjoint sub-rule, and the descending central series.

A sub-fusion rule is a label subset containing the vacuum, closed under duals
and under fusion outcomes.  The adjoint sub-rule collects everything appearing
in some ``x (dual x)``; iterating it yields the descending central series whose
termination at rank one defines nilpotency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FusionRule
from .errors import StructuralError

__all__ = [
    "LabelSet",
    "CentralSeries",
    "closure",
    "adjoint_subrule",
    "central_series",
    "restrict",
]


@dataclass(frozen=True)
class LabelSet:
    """A fusion- and dual-closed label subset containing the vacuum.

    Construct via :func:`closure`; the constructor trusts its input.
    """

    members: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in set(self.members)

    def __iter__(self):
        return iter(self.members)

    def names(self, rule: FusionRule) -> tuple[str, ...]:
        return tuple(rule.labels[i] for i in self.members)


def is_closed(rule: FusionRule, members) -> bool:
    """Whether ``members`` is a sub-fusion rule of ``rule``."""
    s = set(members)
    if 0 not in s:
        return False
    if any(rule.dual[i] not in s for i in s):
        return False
    for i in s:
        for j in s:
            if any(int(k) not in s for k in np.nonzero(rule.tensor[i, j])[0]):
                return False
    return True


def closure(rule: FusionRule, seed=()) -> LabelSet:
    """Smallest sub-fusion rule containing ``seed`` (plus the vacuum).

    Worklist saturation under duals and fusion outcomes, processed in sorted
    order so the result (and any traversal of it) is reproducible.
    """
    members = {0}
    pending = sorted({int(i) for i in seed} | {0})
    for i in pending:
        if not 0 <= i < rule.rank:
            raise StructuralError(f"seed label {i} out of range for rank {rule.rank}")
    members.update(pending)
    while pending:
        i = pending.pop(0)
        grown = {rule.dual[i]}
        for j in sorted(members):
            grown.update(int(k) for k in np.nonzero(rule.tensor[i, j])[0])
            grown.update(int(k) for k in np.nonzero(rule.tensor[j, i])[0])
        for k in sorted(grown):
            if k not in members:
                members.add(k)
                pending.append(k)
        pending.sort()
    return LabelSet(members=tuple(sorted(members)))


def adjoint_subrule(rule: FusionRule, support: LabelSet | None = None) -> LabelSet:
    """The adjoint sub-rule of ``support``: the closure of everything
    contained in ``x (dual x)`` for ``x`` ranging over the support.

    ``support`` defaults to all labels.  Because the support is fusion-closed,
    saturation never leaves it, so computing in the ambient rule agrees with
    computing in the restricted rule.
    """
    if support is None:
        support = LabelSet(members=tuple(range(rule.rank)))
    elif not is_closed(rule, support.members):
        raise StructuralError(f"support {support.members} is not a sub-fusion rule")
    seeds: set[int] = set()
    for i in support:
        seeds.update(int(k) for k in np.nonzero(rule.tensor[i, rule.dual[i]])[0])
    result = closure(rule, seeds)
    assert set(result.members) <= set(support.members)
    return result


@dataclass(frozen=True)
class CentralSeries:
    """Descending central series with its nilpotency verdict.

    ``chain`` starts at the full label set and ends at the first rank-one
    entry (nilpotent) or with the first repeated entry listed twice
    (non-nilpotent).  ``nilpotency_class`` is the chain index of the first
    rank-one entry, or ``None``.
    """

    chain: tuple[LabelSet, ...]
    nilpotent: bool
    nilpotency_class: int | None


def central_series(rule: FusionRule) -> CentralSeries:
    """Iterate the adjoint sub-rule until rank one or stabilization."""
    current = LabelSet(members=tuple(range(rule.rank)))
    chain = [current]
    while current.rank > 1:
        nxt = adjoint_subrule(rule, current)
        chain.append(nxt)
        if nxt.members == current.members:
            return CentralSeries(chain=tuple(chain), nilpotent=False, nilpotency_class=None)
        current = nxt
    return CentralSeries(chain=tuple(chain), nilpotent=True, nilpotency_class=len(chain) - 1)


def restrict(rule: FusionRule, support: LabelSet) -> FusionRule:
    """Materialize a sub-fusion rule as a standalone rule.

    Labels keep their relative order, so the vacuum stays at index 0.
    """
    if not is_closed(rule, support.members):
        raise StructuralError(f"support {support.members} is not a sub-fusion rule")
    idx = list(support.members)
    back = {old: new for new, old in enumerate(idx)}
    labels = tuple(rule.labels[i] for i in idx)
    dual = tuple(back[rule.dual[i]] for i in idx)
    tensor = rule.tensor[np.ix_(idx, idx, idx)]
    return FusionRule(labels=labels, dual=dual, tensor=tensor)
