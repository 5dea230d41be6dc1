"""Gaussian entropy set functions and determinant inequalities.

A positive definite matrix K of order n induces the differential
entropy set function h(F) = (|F| log(2 pi e) + log det K(F)) / 2 in
nats, where K(F) is the principal submatrix on the rows and columns of
F.  h is submodular and grounded, so every fractional-partition gap
statement applies; the gap of h against a family is, up to the factor
1/2 and the constant terms (which cancel exactly on a partition), a
determinant inequality: Hadamard for singletons, Szasz for the
k-subsets, Fischer for a complementary pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .bitsets import complement, elements, full_mask, mask_of, subsets
from .errors import ConsistencyError, PreconditionError, ValidationError
from .families import WeightedFamily, singleton_family
from .rationals import GAUSS_TOL
from .setfn import SetFunction

__all__ = [
    "PDMatrix",
    "log_principal_minor",
    "principal_minor",
    "gaussian_entropy_setfn",
    "DetEqualityReport",
    "det_equality_check",
    "preset_family",
]

# relative symmetry slack; PD-ness is whatever Cholesky accepts
_SYM_TOL = 2.0 ** -40


@dataclass(frozen=True)
class PDMatrix:
    """A symmetric positive definite matrix over binary64."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] < 1 or a.shape[0] > 24:
            raise ValidationError(f"order must be in 1..24, got {a.shape[0]}")
        scale = float(np.max(np.abs(a))) or 1.0
        if float(np.max(np.abs(a - a.T))) > _SYM_TOL * scale:
            raise ValidationError("matrix is not symmetric")
        a = (a + a.T) / 2.0
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        try:
            np.linalg.cholesky(a)
        except np.linalg.LinAlgError:
            raise ValidationError("matrix is not positive definite") from None

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])


def principal_minor(K: PDMatrix, mask: int) -> np.ndarray:
    """The principal submatrix of K on the elements of mask."""
    idx = [i - 1 for i in elements(mask)]
    return K.entries[np.ix_(idx, idx)]


def log_principal_minor(K: PDMatrix, mask: int) -> float:
    """ln det K(mask), with the empty minor contributing 0."""
    if mask == 0:
        return 0.0
    sub = principal_minor(K, mask)
    # a fresh factorization per subset keeps each value independently
    # certified PD instead of trusting cancellation in a shared one
    try:
        low = np.linalg.cholesky(sub)
    except np.linalg.LinAlgError:
        raise ValidationError(
            f"principal minor on {elements(mask)} is not positive definite"
        ) from None
    return 2.0 * float(np.sum(np.log(np.diag(low))))


_LOG_2PIE = math.log(2.0 * math.pi * math.e)


def gaussian_entropy_setfn(K: PDMatrix) -> SetFunction:
    """Differential entropy h(F) in nats of the Gaussian with covariance K."""
    n = K.n
    values = []
    for mask in subsets(n):
        size = mask.bit_count()
        values.append(0.5 * (size * _LOG_2PIE + log_principal_minor(K, mask)))
    return SetFunction(n=n, values=tuple(values), label="gaussian-entropy")


@dataclass(frozen=True)
class DetEqualityReport:
    """Outcome of a weighted determinant equality test."""

    log_lhs: float
    log_rhs: float
    log_gap: float
    equality: bool
    merge_groups: tuple[tuple[int, ...], ...]
    offdiag_max: float
    diagonal_ok: bool
    tol: float
    tol_prime: float


def det_equality_check(
    K: PDMatrix, wf: WeightedFamily, tol: float | None = None
) -> DetEqualityReport:
    """Test sum gamma(F) ln det K(F) = ln det K against block structure.

    Equality holds exactly when K is block diagonal with respect to the
    partition of [1:n] into the co-occurrence classes of the family
    (Hadamard: diagonal; Fischer: the two blocks; Szasz: diagonal
    again, since the k-subsets separate every pair).  Both sides are
    decided independently and must agree.  Entries are compared
    blockwise against tol' = sqrt(tol) * max diagonal entry, which is
    where a log-det perturbation of size tol lands for off-diagonal
    leakage.
    """
    if tol is None:
        tol = GAUSS_TOL
    tol = float(tol)
    if tol < 0:
        raise ValidationError("tolerance must be nonnegative")
    if K.n != wf.n:
        raise ValidationError(f"matrix order {K.n} but family on [1:{wf.n}]")
    if wf.classify().flavor != "partition":
        raise PreconditionError(
            "determinant equality needs a fractional partition"
        )
    _, merge_map = wf.normalize()
    groups: dict[int, list[int]] = {}
    for orig, image in merge_map.items():
        groups.setdefault(image, []).append(orig)
    merge_groups = tuple(
        tuple(sorted(g)) for _, g in sorted(groups.items())
    )

    log_rhs = log_principal_minor(K, full_mask(K.n))
    log_lhs = math.fsum(
        float(w) * log_principal_minor(K, m) for m, w in wf.members
    )
    log_gap = log_lhs - log_rhs
    equality = bool(abs(log_gap) <= tol)

    diag_max = float(np.max(np.diag(K.entries)))
    tol_prime = math.sqrt(tol) * diag_max
    block_of = {}
    for gi, grp in enumerate(merge_groups):
        for i in grp:
            block_of[i] = gi
    offdiag_max = 0.0
    for i in range(1, K.n + 1):
        for j in range(i + 1, K.n + 1):
            if block_of[i] != block_of[j]:
                offdiag_max = max(offdiag_max, abs(float(K.entries[i - 1, j - 1])))
    diagonal_ok = bool(offdiag_max <= tol_prime)

    report = DetEqualityReport(
        log_lhs=log_lhs,
        log_rhs=log_rhs,
        log_gap=log_gap,
        equality=equality,
        merge_groups=merge_groups,
        offdiag_max=offdiag_max,
        diagonal_ok=diagonal_ok,
        tol=tol,
        tol_prime=tol_prime,
    )
    if equality != diagonal_ok:
        raise ConsistencyError(
            "determinant equality and block-diagonality disagree: "
            f"log gap {log_gap:.3e} vs off-diagonal max {offdiag_max:.3e}",
            report=report,
        )
    return report


def preset_family(
    name: str, n: int, k: int | None = None, block: tuple[int, ...] | None = None
) -> WeightedFamily:
    """Families behind the classical determinant inequalities.

    hadamard: all singletons, weight 1.
    szasz: all k-subsets, weight 1/C(n-1, k-1); k defaults to n-1.
    fischer: a set and its complement, weight 1 each; block gives the
    set as 1-indexed elements and defaults to {1}.
    """
    if name == "hadamard":
        return singleton_family(n)
    if name == "szasz":
        if k is None:
            k = n - 1
        if not 1 <= k <= n - 1:
            raise ValidationError(f"szasz needs 1 <= k <= n-1, got k={k}")
        weight = Fraction(1, comb(n - 1, k - 1))
        members = tuple(
            (mask_of(c, n), weight) for c in combinations(range(1, n + 1), k)
        )
        return WeightedFamily(n=n, members=members)
    if name == "fischer":
        if n < 2:
            raise ValidationError("fischer needs n >= 2")
        if block is None:
            block = (1,)
        m = mask_of(block, n)
        if m == 0 or m == full_mask(n):
            raise ValidationError("fischer block must be proper and nonempty")
        return WeightedFamily(
            n=n,
            members=((m, Fraction(1)), (complement(m, n), Fraction(1))),
        )
    raise ValidationError(
        f"unknown preset {name!r}; expected hadamard, szasz or fischer"
    )
