"""Constructors for concrete fusion rules: pointed rules from groups, the
SU(2) level-k family, named fixtures, and Drinfeld doubles of finite groups.
"""

from __future__ import annotations

import numpy as np

from .core import FusionRule, fp_dimensions, validate
from .errors import CapacityError, NumericalError, StructuralError, UnknownFixtureError
from .groups import FiniteGroup, character_table

__all__ = [
    "pointed",
    "su2k",
    "named_fixture",
    "fixture_names",
    "drinfeld_double",
    "DOUBLE_ORDER_CAP",
]

DOUBLE_ORDER_CAP = 24


def pointed(group: FiniteGroup) -> FusionRule:
    """The abelian (single-outcome) fusion rule of a finite group."""
    n = group.order
    tensor = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            tensor[i, j, group.table[i, j]] = 1
    labels = ("1",) + tuple(f"g{i}" for i in range(1, n))
    return FusionRule(labels=labels, dual=group.inverses, tensor=tensor)


def su2k(k: int) -> FusionRule:
    """SU(2) level-k fusion: rank k+1 self-dual labels given by doubled spins.

    ``N[a,b,c] = 1`` iff ``a+b+c`` is even and ``|a-b| <= c <= min(a+b, 2k-a-b)``.
    """
    if k < 1:
        raise ValueError("level k must be >= 1")
    r = k + 1
    tensor = np.zeros((r, r, r), dtype=np.int64)
    for a in range(r):
        for b in range(r):
            for c in range(r):
                if (a + b + c) % 2 == 0 and abs(a - b) <= c <= min(a + b, 2 * k - a - b):
                    tensor[a, b, c] = 1
    labels = tuple(str(a // 2) if a % 2 == 0 else f"{a}/2" for a in range(r))
    return FusionRule(labels=labels, dual=tuple(range(r)), tensor=tensor)


def _from_products(labels, products, self_dual=True) -> FusionRule:
    """Build a commutative rule from ``{(i, j): outcomes}`` given for ``i <= j``
    (vacuum row omitted; every label self-dual)."""
    r = len(labels)
    tensor = np.zeros((r, r, r), dtype=np.int64)
    for a in range(r):
        tensor[0, a, a] = 1
        if a:
            tensor[a, 0, a] = 1
    for (i, j), outcomes in products.items():
        for k in outcomes:
            tensor[i, j, k] = 1
            tensor[j, i, k] = 1
    return FusionRule(labels=tuple(labels), dual=tuple(range(r)), tensor=tensor)


def _ising() -> FusionRule:
    return _from_products(
        ["1", "sigma", "psi"],
        {(1, 1): (0, 2), (1, 2): (1,), (2, 2): (0,)},
    )


def _fibonacci() -> FusionRule:
    return _from_products(["1", "tau"], {(1, 1): (0, 1)})


def _toric() -> FusionRule:
    return _from_products(
        ["1", "e", "m", "f"],
        {(1, 1): (0,), (1, 2): (3,), (1, 3): (2,), (2, 2): (0,), (2, 3): (1,), (3, 3): (0,)},
    )


# SO(8) level 2: four invertibles (vacuum and three bosons) plus seven
# dimension-2 objects; everything self-dual and multiplicity-free.  The tensor
# below lists the products for i <= j; the loader re-checks the published
# constraint set (rank, self-duality, dimensions, global dimension, acyclicity)
# so a transcription slip cannot pass silently.
_SO8_2_LABELS = ["1", "b1", "b2", "b1b2", "v", "s", "c", "ad", "vs", "vc", "sc"]
_SO8_2_PRODUCTS = {
    (1, 1): (0,), (1, 2): (3,), (1, 3): (2,), (1, 4): (4,), (1, 5): (9,),
    (1, 6): (8,), (1, 7): (7,), (1, 8): (6,), (1, 9): (5,), (1, 10): (10,),
    (2, 2): (0,), (2, 3): (1,), (2, 4): (10,), (2, 5): (5,), (2, 6): (8,),
    (2, 7): (7,), (2, 8): (6,), (2, 9): (9,), (2, 10): (4,),
    (3, 3): (0,), (3, 4): (10,), (3, 5): (9,), (3, 6): (6,), (3, 7): (7,),
    (3, 8): (8,), (3, 9): (5,), (3, 10): (4,),
    (4, 4): (0, 1, 7), (4, 5): (6, 8), (4, 6): (5, 9), (4, 7): (4, 10),
    (4, 8): (5, 9), (4, 9): (6, 8), (4, 10): (2, 3, 7),
    (5, 5): (0, 2, 7), (5, 6): (4, 10), (5, 7): (5, 9), (5, 8): (4, 10),
    (5, 9): (1, 3, 7), (5, 10): (6, 8),
    (6, 6): (0, 3, 7), (6, 7): (6, 8), (6, 8): (1, 2, 7), (6, 9): (4, 10),
    (6, 10): (5, 9),
    (7, 7): (0, 1, 2, 3), (7, 8): (6, 8), (7, 9): (5, 9), (7, 10): (4, 10),
    (8, 8): (0, 3, 7), (8, 9): (4, 10), (8, 10): (5, 9),
    (9, 9): (0, 2, 7), (9, 10): (6, 8),
    (10, 10): (0, 1, 7),
}


def _so8_2() -> FusionRule:
    from .acyclicity import is_acyclic  # local import to avoid a cycle

    rule = _from_products(_SO8_2_LABELS, _SO8_2_PRODUCTS)
    if rule.rank != 11 or rule.dual != tuple(range(11)):
        raise StructuralError("so8_2 fixture must have 11 self-dual labels")
    report = validate(rule)
    if not report.valid:
        raise StructuralError(f"so8_2 fixture violates fusion axioms: {report.violations[0]}")
    dims = fp_dimensions(rule, tolerance=1e-6)
    rounded = sorted(round(d) for d in dims.dims)
    if rounded != [1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2] or abs(dims.global_dim - 32.0) > 1e-6:
        raise StructuralError("so8_2 fixture has wrong Frobenius-Perron dimensions")
    if not is_acyclic(rule):
        raise StructuralError("so8_2 fixture must be acyclic")
    return rule


_FIXTURES = {
    "trivial": lambda: FusionRule(labels=("1",), dual=(0,), tensor=np.ones((1, 1, 1), dtype=np.int64)),
    "ising": _ising,
    "fibonacci": _fibonacci,
    "toric": _toric,
    "so8_2": _so8_2,
}


def fixture_names() -> tuple[str, ...]:
    return tuple(sorted(_FIXTURES))


def named_fixture(name: str) -> FusionRule:
    try:
        factory = _FIXTURES[name.lower()]
    except KeyError:
        raise UnknownFixtureError(name, _FIXTURES) from None
    return factory()


def drinfeld_double(
    group: FiniteGroup, tolerance: float = 1e-6, max_order: int = DOUBLE_ORDER_CAP
) -> FusionRule:
    """Fusion rule of the quantum double of a finite group.

    Simple labels are pairs (conjugacy class, irreducible character of the
    representative's centralizer).  Each simple has a character on commuting
    pairs ``(g, h)``; tensor products convolve these characters in the first
    coordinate, and multiplicities come from the inner product over commuting
    pairs.  Every raw multiplicity must sit within ``tolerance`` of a
    non-negative integer, which cross-checks the character tables.
    """
    n = group.order
    if n > max_order:
        raise CapacityError(f"group order {n} exceeds the cap {max_order}")
    table = group.table
    inv = np.array(group.inverses)
    commutes = table == table.T

    thetas = []
    names = []
    for cls in group.conjugacy_classes:
        rep = cls[0]
        cz_elements = group.centralizer_elements(rep)
        local = {e: i for i, e in enumerate(cz_elements)}
        cz = group.subgroup(cz_elements)
        ct = character_table(cz)
        cz_class_of = np.empty(len(cz_elements), dtype=np.int64)
        for i in range(len(cz_elements)):
            cz_class_of[i] = ct.class_index_of(i)
        transversal = {}
        for g in cls:
            transversal[g] = min(x for x in range(n) if group.conjugate(x, rep) == g)
        for r in range(len(ct.degrees)):
            theta = np.zeros((n, n), dtype=complex)
            for g in cls:
                x = transversal[g]
                for h in range(n):
                    if not commutes[g, h]:
                        continue
                    u = group.mul(group.mul(int(inv[x]), h), x)
                    theta[g, h] = ct.table[r, cz_class_of[local[u]]]
            thetas.append(theta)
            names.append(f"({rep},{r})")

    rank = len(thetas)
    theta_flat = np.array(thetas).reshape(rank, n * n)
    gather = table[inv, :]  # gather[g1, g] = inv(g1) * g
    tensor = np.zeros((rank, rank, rank), dtype=np.int64)
    worst = 0.0
    for X in range(rank):
        for Y in range(rank):
            conv = np.zeros((n, n), dtype=complex)
            for h in range(n):
                u = thetas[X][:, h]
                v = thetas[Y][:, h]
                conv[:, h] = u @ v[gather]
            raw = theta_flat.conj() @ conv.reshape(-1) / n
            rounded = np.round(raw.real).astype(np.int64)
            err = float(np.abs(raw - rounded).max())
            worst = max(worst, err)
            if err > tolerance or rounded.min() < 0:
                raise NumericalError(
                    f"double multiplicity for pair ({X},{Y}) is {err:.3e} away from "
                    "a non-negative integer; character table is suspect",
                    residual=err,
                )
            tensor[X, Y, :] = rounded

    dual = []
    for X in range(rank):
        candidates = np.nonzero(tensor[X, :, 0] == 1)[0]
        if len(candidates) != 1:
            raise NumericalError(
                f"label {X} of the double has {len(candidates)} vacuum partners",
                residual=worst,
            )
        dual.append(int(candidates[0]))
    return FusionRule(labels=tuple(names), dual=tuple(dual), tensor=tensor)
