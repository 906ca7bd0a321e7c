"""Finite groups as Cayley tables: conjugacy classes, centralizers, character
tables, and nilpotency via the lower central series.

Everything works from the multiplication table alone, with index 0 as the
identity.  The built-in catalogue covers nilpotent and non-nilpotent families
at desk scale: cyclic groups, Z2xZ2, S3, D4, D5, Q8, A4, plus a direct-product
constructor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NumericalError, StructuralError, UnknownFixtureError

__all__ = [
    "FiniteGroup",
    "CharacterTable",
    "character_table",
    "lower_central_series",
    "is_nilpotent",
    "cyclic",
    "dihedral",
    "quaternion8",
    "symmetric",
    "alternating",
    "direct_product",
    "builtin_group",
    "builtin_group_names",
]


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group presented by its Cayley table (identity at index 0)."""

    table: np.ndarray
    name: str = "G"

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise StructuralError(f"Cayley table must be square, got shape {table.shape}")
        n = table.shape[0]
        if n < 1:
            raise StructuralError("group must have at least the identity")
        if table.min() < 0 or table.max() >= n:
            raise StructuralError("Cayley table entries out of range")
        ident = np.arange(n)
        for i in range(n):
            if sorted(table[i]) != list(ident) or sorted(table[:, i]) != list(ident):
                raise StructuralError(f"Cayley table is not a Latin square at index {i}")
        if not (np.array_equal(table[0], ident) and np.array_equal(table[:, 0], ident)):
            raise StructuralError("index 0 must be a two-sided identity")
        if not np.array_equal(table[table, :], table[:, table]):
            raise StructuralError("Cayley table is not associative")
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for a in range(self.order):
            inv[a] = int(np.nonzero(self.table[a] == 0)[0][0])
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conjugate(self, x: int, g: int) -> int:
        """x g x^-1"""
        return self.mul(self.mul(x, g), self.inv(x))

    def commutator(self, a: int, b: int) -> int:
        """a^-1 b^-1 a b"""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes sorted by their smallest member, which is the representative."""
        seen = set()
        classes = []
        for g in range(self.order):
            if g in seen:
                continue
            orbit = sorted({self.conjugate(x, g) for x in range(self.order)})
            seen.update(orbit)
            classes.append(tuple(orbit))
        return tuple(classes)

    def centralizer_elements(self, g: int) -> tuple[int, ...]:
        return tuple(h for h in range(self.order) if self.table[h, g] == self.table[g, h])

    def generated_subgroup(self, generators) -> tuple[int, ...]:
        """Element set of the subgroup generated by ``generators``."""
        members = {0}
        pending = sorted(set(int(g) for g in generators) - {0})
        members.update(pending)
        while pending:
            a = pending.pop(0)
            for b in sorted(members):
                for c in (self.mul(a, b), self.mul(b, a), self.inv(a)):
                    if c not in members:
                        members.add(c)
                        pending.append(c)
            pending.sort()
        return tuple(sorted(members))

    def subgroup(self, elements) -> "FiniteGroup":
        """The subgroup on ``elements`` (must be closed), reindexed 0..m-1.

        Element ``k`` of the result is ``sorted(elements)[k]`` in the parent.
        """
        idx = sorted(int(e) for e in elements)
        if idx[0] != 0:
            raise StructuralError("subgroup must contain the identity")
        back = {e: n for n, e in enumerate(idx)}
        sub = np.empty((len(idx), len(idx)), dtype=np.int64)
        for a, ea in enumerate(idx):
            for b, eb in enumerate(idx):
                c = self.mul(ea, eb)
                if c not in back:
                    raise StructuralError("element set is not closed under multiplication")
                sub[a, b] = back[c]
        return FiniteGroup(table=sub, name=f"{self.name}-sub{len(idx)}")

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def lower_central_series(group: FiniteGroup) -> list[tuple[int, ...]]:
    """[G, [G,G], [G,[G,G]], ...] down to stabilization or the trivial subgroup."""
    current = tuple(range(group.order))
    series = [current]
    while len(series[-1]) > 1:
        comms = {group.commutator(g, h) for g in range(group.order) for h in series[-1]}
        nxt = group.generated_subgroup(comms)
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def is_nilpotent(group: FiniteGroup) -> tuple[bool, int | None]:
    """Nilpotency verdict and class from the lower central series."""
    series = lower_central_series(group)
    if len(series[-1]) == 1:
        return True, len(series) - 1
    return False, None


# --- character tables ---------------------------------------------------------


@dataclass(frozen=True)
class CharacterTable:
    """Irreducible complex characters evaluated on conjugacy classes.

    Rows are irreducibles sorted by ascending degree (the trivial character
    first); columns follow ``classes``, which are sorted by representative.
    """

    classes: tuple[tuple[int, ...], ...]
    table: np.ndarray
    degrees: tuple[int, ...]

    def class_index_of(self, element: int) -> int:
        for n, cls in enumerate(self.classes):
            if element in cls:
                return n
        raise KeyError(element)


def _class_algebra_matrices(group: FiniteGroup):
    classes = group.conjugacy_classes
    k = len(classes)
    class_of = {}
    for n, cls in enumerate(classes):
        for g in cls:
            class_of[g] = n
    mats = np.zeros((k, k, k))
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            counts = np.zeros(group.order, dtype=np.int64)
            for x in ci:
                counts_idx = group.table[x, list(cj)]
                for z in counts_idx:
                    counts[z] += 1
            for l, cl in enumerate(classes):
                mats[i, l, j] = counts[cl[0]]
    return classes, mats


def character_table(group: FiniteGroup, tolerance: float = 1e-6) -> CharacterTable:
    """Characters via simultaneous diagonalization of the class-algebra matrices.

    A seeded random combination of the class-sum multiplication matrices is
    diagonalized; its eigenvectors are common eigenvectors of all of them,
    whose eigenvalues are the central characters.  The result is verified
    against the orthogonality relations (and integrality of degrees) before
    being returned, retrying with fresh weights on numerical bad luck.
    """
    classes, mats = _class_algebra_matrices(group)
    k = len(classes)
    sizes = np.array([len(c) for c in classes], dtype=np.float64)
    n = group.order

    last_error = None
    for seed in range(8):
        rng = np.random.default_rng(seed)
        combo = np.tensordot(rng.random(k), mats, axes=1)
        _, vecs = np.linalg.eig(combo)
        try:
            rows = []
            for r in range(k):
                v = vecs[:, r]
                pivot = int(np.argmax(np.abs(v)))
                omega = np.array([(mats[i] @ v)[pivot] / v[pivot] for i in range(k)])
                d_sq = n / float(np.sum(np.abs(omega) ** 2 / sizes))
                d = np.sqrt(d_sq)
                if abs(d - round(d)) > 1e-4 or round(d) < 1:
                    raise NumericalError(f"non-integral character degree {d}", residual=d)
                chi = d * omega / sizes
                rows.append((int(round(d)), chi))
            if sum(d * d for d, _ in rows) != n:
                raise NumericalError("degrees do not sum to the group order")
            table = np.array([chi for _, chi in sorted(rows, key=_row_sort_key)])
            degrees = tuple(sorted(d for d, _ in rows))
            gram = (table * sizes) @ table.conj().T
            err = float(np.abs(gram - n * np.eye(k)).max())
            if err > tolerance * n:
                raise NumericalError("orthogonality relations violated", residual=err)
            table.flags.writeable = False
            return CharacterTable(classes=classes, table=table, degrees=degrees)
        except NumericalError as exc:
            last_error = exc
    raise NumericalError(
        f"character table of {group.name} failed verification after retries: {last_error}",
        residual=getattr(last_error, "residual", None),
    )


def _row_sort_key(row):
    degree, chi = row
    # trivial character (all entries 1) sorts first within degree 1
    return (degree, tuple((-round(z.real, 6), -round(z.imag, 6)) for z in chi))


# --- catalogue -----------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    i = np.arange(n)
    return FiniteGroup(table=(i[:, None] + i[None, :]) % n, name=f"Z{n}")


def dihedral(n: int) -> FiniteGroup:
    """Order 2n; index = rotation + n * flip."""
    size = 2 * n
    table = np.empty((size, size), dtype=np.int64)
    for a1, s1, a2, s2 in itertools.product(range(n), (0, 1), range(n), (0, 1)):
        a = (a2 - a1 if s2 else a1 + a2) % n
        table[a1 + n * s1, a2 + n * s2] = a + n * (s1 ^ s2)
    return FiniteGroup(table=table, name=f"D{n}")


_QUAT_UNITS = {  # (u1, u2) -> (unit, sign flip) for units 1,i,j,k = 0,1,2,3
    (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
    (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
    (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
}


def quaternion8() -> FiniteGroup:
    """Q8 with elements 1,-1,i,-i,j,-j,k,-k encoded as 2*unit + sign."""
    table = np.empty((8, 8), dtype=np.int64)
    for u1, s1, u2, s2 in itertools.product(range(4), (0, 1), range(4), (0, 1)):
        u, extra = _QUAT_UNITS.get((u1, u2), (u1 or u2, 0))
        table[2 * u1 + s1, 2 * u2 + s2] = 2 * u + (s1 ^ s2 ^ extra)
    return FiniteGroup(table=table, name="Q8")


def _perm_group(perms, name: str) -> FiniteGroup:
    perms = sorted(perms)
    where = {p: n for n, p in enumerate(perms)}
    size = len(perms)
    table = np.empty((size, size), dtype=np.int64)
    for a, p in enumerate(perms):
        for b, q in enumerate(perms):
            table[a, b] = where[tuple(p[q[x]] for x in range(len(p)))]
    return FiniteGroup(table=table, name=name)


def symmetric(n: int) -> FiniteGroup:
    return _perm_group(itertools.permutations(range(n)), f"S{n}")


def alternating(n: int) -> FiniteGroup:
    evens = [p for p in itertools.permutations(range(n)) if _perm_sign(p) == 1]
    return _perm_group(evens, f"A{n}")


def _perm_sign(p) -> int:
    sign = 1
    for a in range(len(p)):
        for b in range(a + 1, len(p)):
            if p[a] > p[b]:
                sign = -sign
    return sign


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    ng, nh = g.order, h.order
    table = np.empty((ng * nh, ng * nh), dtype=np.int64)
    for i1, j1, i2, j2 in itertools.product(range(ng), range(nh), range(ng), range(nh)):
        table[i1 * nh + j1, i2 * nh + j2] = g.table[i1, i2] * nh + h.table[j1, j2]
    return FiniteGroup(table=table, name=f"{g.name}x{h.name}")


_BUILTIN = {f"z{n}": (lambda n=n: cyclic(n)) for n in range(1, 17)}
_BUILTIN.update(
    z2xz2=lambda: direct_product(cyclic(2), cyclic(2)),
    s3=lambda: symmetric(3),
    d4=lambda: dihedral(4),
    d5=lambda: dihedral(5),
    q8=quaternion8,
    a4=lambda: alternating(4),
)


def builtin_group_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILTIN))


def builtin_group(name: str) -> FiniteGroup:
    try:
        factory = _BUILTIN[name.lower()]
    except KeyError:
        raise UnknownFixtureError(name, _BUILTIN) from None
    return factory()
