"""Exact fusion rules: the data type, axiom validation, Frobenius-Perron
dimensions, and direct products.

A fusion rule is a finite label set with a dual involution and a non-negative
integer tensor ``N[i, j, k]`` giving the multiplicity of label ``k`` in the
fusion product of ``i`` and ``j``.  Index 0 is always the vacuum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NumericalError, StructuralError

POWER_ITERATION_CAP = 10**6

__all__ = [
    "FusionRule",
    "Violation",
    "ValidationReport",
    "FPDimData",
    "validate",
    "fp_dimensions",
    "product",
]


def default_labels(rank: int) -> tuple[str, ...]:
    return ("1",) + tuple(f"x{i}" for i in range(1, rank))


@dataclass(frozen=True)
class FusionRule:
    """Immutable fusion rule: labels, dual involution, and fusion tensor.

    Only structural well-formedness is enforced at construction (shapes,
    dtypes, ``dual`` a permutation); whether the tensor satisfies the fusion
    axioms is the business of :func:`validate`.
    """

    labels: tuple[str, ...]
    dual: tuple[int, ...]
    tensor: np.ndarray

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        rank = len(labels)
        if rank < 1:
            raise StructuralError("a fusion rule needs at least the vacuum label")
        dual = tuple(int(d) for d in self.dual)
        if sorted(dual) != list(range(rank)):
            raise StructuralError(f"dual map {dual} is not a permutation of 0..{rank - 1}")
        tensor = np.asarray(self.tensor)
        if tensor.shape != (rank, rank, rank):
            raise StructuralError(
                f"tensor shape {tensor.shape} does not match rank {rank} (need rank**3 entries)"
            )
        if not np.issubdtype(tensor.dtype, np.integer):
            if not np.all(tensor == np.round(tensor)):
                raise StructuralError("tensor entries must be integers")
        tensor = tensor.astype(np.int64, copy=True)
        if np.any(tensor < 0):
            raise StructuralError("tensor entries must be non-negative")
        tensor.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dual", dual)
        object.__setattr__(self, "tensor", tensor)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def fusion_matrix(self, i: int) -> np.ndarray:
        """Matrix ``(N_i)[j, k] = N[i, j, k]`` acting on label space."""
        return self.tensor[i]

    def outcomes(self, i: int, j: int) -> dict[int, int]:
        """Nonzero fusion channels of ``i x j`` as ``{k: multiplicity}``."""
        row = self.tensor[i, j]
        return {int(k): int(row[k]) for k in np.nonzero(row)[0]}

    @property
    def is_pointed(self) -> bool:
        """Every product has a single outcome (group-like rule)."""
        return bool(np.all(self.tensor.sum(axis=2) == 1))

    def same_tensor(self, other: "FusionRule") -> bool:
        """Equality of dual map and tensor, ignoring display names."""
        return self.dual == other.dual and np.array_equal(self.tensor, other.tensor)

    def __eq__(self, other):
        if not isinstance(other, FusionRule):
            return NotImplemented
        return self.labels == other.labels and self.same_tensor(other)

    def __hash__(self):
        return hash((self.labels, self.dual, self.tensor.tobytes()))

    def __repr__(self):
        return f"FusionRule(rank={self.rank}, labels={list(self.labels)})"


@dataclass(frozen=True)
class Violation:
    axiom: str
    index: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...]

    def codes(self) -> tuple[str, ...]:
        return tuple(sorted({v.axiom for v in self.violations}))

    @property
    def only_vacuum_uniqueness(self) -> bool:
        """True when the rule satisfies every axiom except the imposed
        single-vacuum-channel condition (interesting edge of the axiom set)."""
        return bool(self.violations) and all(
            v.axiom == "vacuum_uniqueness" for v in self.violations
        )


def _associativity_defects(N: np.ndarray):
    """Yield ``(i, j, k, l, lhs - rhs)`` for every violated quadruple.

    The full defect tensor needs rank**4 memory, fine up to rank ~40; beyond
    that, work per-i with BLAS matrix products (exact: entries stay far below
    2**53).
    """
    r = N.shape[0]
    if r <= 40:
        defect = _kernels.assoc_defect(N)
        for idx in np.argwhere(defect != 0):
            i, j, k, l = (int(x) for x in idx)
            yield i, j, k, l, int(defect[i, j, k, l])
        return
    Nf = N.astype(np.float64)
    by_m = Nf.reshape(r, r * r)      # m -> (k, l)
    to_m = Nf.reshape(r * r, r)      # (j, k) -> m
    for i in range(r):
        lhs = (Nf[i] @ by_m).reshape(r, r, r)
        rhs = (to_m @ Nf[i]).reshape(r, r, r)
        block = lhs - rhs
        for idx in np.argwhere(block != 0):
            j, k, l = (int(x) for x in idx)
            yield i, j, k, l, int(block[j, k, l])


# Check order fixes the report order; within one axiom the index tuples are
# generated lexicographically.
_AXIOM_ORDER = (
    "involution",
    "unit",
    "dual_symmetry",
    "associativity",
    "vacuum_multiplicity",
    "vacuum_uniqueness",
    "adjoint_symmetry",
)


def validate(rule: FusionRule) -> ValidationReport:
    """Check every fusion axiom instance and report all violations.

    Covers: the dual being an involution fixing the vacuum, the vacuum acting
    as a two-sided unit, the dual symmetry ``N[i,j,k] == N[dual(j),dual(i),dual(k)]``,
    associativity, vacuum multiplicity ``N[i,dual(i),0] == 1``, uniqueness of
    the vacuum channel (``N[i,j,0] == 0`` for ``j != dual(i)``; reported under
    its own code so rules failing only this can be told apart), and the derived
    symmetry ``N[i,dual(i),j] == N[i,dual(i),dual(j)]``.
    """
    N = rule.tensor
    dual = rule.dual
    r = rule.rank
    out: list[Violation] = []

    if dual[0] != 0:
        out.append(Violation("involution", (0,), f"dual(0) = {dual[0]}, must fix the vacuum"))
    for i in range(r):
        if dual[dual[i]] != i:
            out.append(
                Violation("involution", (i,), f"dual(dual({i})) = {dual[dual[i]]}, not an involution")
            )

    eye = np.eye(r, dtype=np.int64)
    for j, k in np.argwhere(N[0] != eye):
        want = 1 if j == k else 0
        out.append(Violation("unit", (0, int(j), int(k)), f"N[0,{j},{k}] = {N[0, j, k]}, expected {want}"))
    for i, k in np.argwhere(N[:, 0, :] != eye):
        want = 1 if i == k else 0
        out.append(Violation("unit", (int(i), 0, int(k)), f"N[{i},0,{k}] = {N[i, 0, k]}, expected {want}"))

    d = np.array(dual)
    mirrored_all = N[d][:, d][:, :, d].transpose(1, 0, 2)  # [i,j,k] -> N[dual j, dual i, dual k]
    for i, j, k in np.argwhere(N != mirrored_all):
        out.append(
            Violation(
                "dual_symmetry",
                (int(i), int(j), int(k)),
                f"N[{i},{j},{k}] = {N[i, j, k]} but the dual-mirrored entry is {mirrored_all[i, j, k]}",
            )
        )

    for i, j, k, l, value in _associativity_defects(N):
        out.append(
            Violation(
                "associativity",
                (i, j, k, l),
                f"sum_m N[{i},{j},m]N[m,{k},{l}] - N[{j},{k},m]N[{i},m,{l}] = {value}",
            )
        )

    labels_range = np.arange(r)
    for i in labels_range[N[labels_range, d, 0] != 1]:
        out.append(
            Violation(
                "vacuum_multiplicity",
                (int(i),),
                f"N[{i},{dual[i]},0] = {N[i, dual[i], 0]}, the vacuum must appear exactly once",
            )
        )
    off_dual = N[:, :, 0] != 0
    off_dual[labels_range, d] = False
    for i, j in np.argwhere(off_dual):
        out.append(
            Violation(
                "vacuum_uniqueness",
                (int(i), int(j)),
                f"N[{i},{j},0] = {N[i, j, 0]} but {j} is not the dual of {i}",
            )
        )

    pair_rows = N[labels_range, d, :]  # row i is the expansion of x_i (dual x_i)
    for i, j in np.argwhere(pair_rows != pair_rows[:, d]):
        out.append(
            Violation(
                "adjoint_symmetry",
                (int(i), int(j)),
                f"N[{i},{dual[i]},{j}] = {N[i, dual[i], j]} != "
                f"{N[i, dual[i], dual[j]]} = N[{i},{dual[i]},{dual[j]}]",
            )
        )

    order = {axiom: n for n, axiom in enumerate(_AXIOM_ORDER)}
    out.sort(key=lambda v: (order[v.axiom], v.index))
    return ValidationReport(valid=not out, violations=tuple(out))


@dataclass(frozen=True)
class FPDimData:
    """Frobenius-Perron dimensions of every label plus integrality flags."""

    dims: tuple[float, ...]
    global_dim: float
    tolerance: float
    is_integral: bool
    is_weakly_integral: bool

    def __iter__(self):
        return iter(self.dims)


def _near_positive_integer(x: float, tolerance: float) -> bool:
    return abs(x - round(x)) <= tolerance and round(x) >= 1


def fp_dimensions(rule: FusionRule, tolerance: float = 1e-6) -> FPDimData:
    """Per-label spectral radii of the fusion matrices and the global dimension.

    Power iteration from the all-ones vector, convergence threshold
    ``tolerance * 1e-2``, iteration cap ``10**6``.  The returned dims satisfy
    the multiplicativity residual bound
    ``|d_i d_j - sum_k N[i,j,k] d_k| <= tolerance * (1 + d_i d_j)``.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    threshold = tolerance * 1e-2
    dims = []
    for i in range(rule.rank):
        mat = rule.tensor[i].astype(np.float64)
        radius, resid, _its = _kernels.power_radius(mat, threshold, POWER_ITERATION_CAP)
        if resid > threshold:
            raise NumericalError(
                f"power iteration did not converge for label {i} "
                f"(eigen-residual {resid:.3e})",
                residual=float(resid),
            )
        dims.append(float(radius))
    d = np.array(dims)
    residual = np.abs(np.outer(d, d) - np.einsum("ijk,k->ij", rule.tensor, d))
    bound = tolerance * (1.0 + np.outer(d, d))
    if np.any(residual > bound):
        worst = float((residual / bound).max() * tolerance)
        raise NumericalError(
            "fusion-matrix spectral radii fail the multiplicativity residual bound",
            residual=worst,
        )
    global_dim = float(np.sum(d * d))
    return FPDimData(
        dims=tuple(dims),
        global_dim=global_dim,
        tolerance=tolerance,
        is_integral=all(_near_positive_integer(x, tolerance) for x in dims),
        is_weakly_integral=_near_positive_integer(global_dim, tolerance),
    )


def product(a: FusionRule, b: FusionRule) -> FusionRule:
    """Direct product: labels are pairs in row-major order, tensor entries multiply."""
    ra, rb = a.rank, b.rank
    labels = tuple(f"({la},{lb})" for la in a.labels for lb in b.labels)
    dual = tuple(a.dual[i] * rb + b.dual[p] for i in range(ra) for p in range(rb))
    tensor = np.einsum("ijk,pqr->ipjqkr", a.tensor, b.tensor).reshape(ra * rb, ra * rb, ra * rb)
    return FusionRule(labels=labels, dual=dual, tensor=tensor)
