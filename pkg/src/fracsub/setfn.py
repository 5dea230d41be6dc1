"""Dense set functions on the ground set [1:n] and their structure tests.

A SetFunction stores all 2**n values in table order (index = subset
mask), so every predicate here is an exhaustive, deterministic check
rather than a sample.  Instances are either exact-rational or binary64;
see :mod:`fracsub.rationals` for the comparison conventions.

Submodularity is checked through local exchanges

    f(S + i) + f(S + j) >= f(S + i + j) + f(S)   for all S, i < j not in S,

which is equivalent to the definitional inequality over all pairs of
subsets but costs O(2**n * n**2) instead of O(4**n).  A failing
exchange is reported as the definitional witness pair
(S + i, S + j), whose union is S + i + j and intersection is S.

Monotonicity comes in two strengths.  ``is_nondecreasing`` demands
f(S) <= f(T) for all nested pairs (checked on covering pairs S, S + i).
``is_prefix_nondecreasing`` only demands that f({1}), f([1:2]), ...,
f([1:n]) is a non-decreasing chain; the chain deliberately starts at
j = 1, so a function may pass it while dipping below f(emptyset).
The weaker form is what the covering-side gap bound needs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .bitsets import check_mask, elements, full_mask, iter_bits, subsets
from .errors import PreconditionError, ValidationError
from .rationals import Scalar, coerce_scalar, effective_tol

MAX_N = 24
MAX_ENTROPY_N = 12
GENERATOR_KINDS = ("coverage", "entropy", "matroid-plus-modular")


@dataclass(frozen=True)
class Verdict:
    """Boolean answer plus a witness for the failing case (None if ok)."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class SetFunction:
    """Immutable dense table of one set function.

    values[mask] is f(S) for the subset S encoded by mask.  All values
    share one scalar kind: Fraction (ints are coerced) or float.
    """

    n: int
    values: tuple[Scalar, ...]
    label: str = ""

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_N:
            raise ValidationError(f"ground set size must be 1..{MAX_N}, got {self.n}")
        vals = tuple(coerce_scalar(v) for v in self.values)
        if len(vals) != 1 << self.n:
            raise ValidationError(
                f"need {1 << self.n} values for n={self.n}, got {len(vals)}"
            )
        kinds = {type(v) is float for v in vals}
        if len(kinds) > 1:
            raise ValidationError("mixed rational and float values in one table")
        object.__setattr__(self, "values", vals)

    @property
    def is_rational(self) -> bool:
        return isinstance(self.values[0], Fraction)

    @property
    def is_grounded(self) -> bool:
        return self.values[0] == 0

    def value(self, mask: int) -> Scalar:
        return self.values[check_mask(mask, self.n)]

    def conditional(self, s: int, t: int) -> Scalar:
        """f(S | T) = f(S + T) - f(T); requires a grounded function."""
        if not self.is_grounded:
            raise PreconditionError("conditional values need f(emptyset) = 0")
        return self.value(s | t) - self.value(t)


@dataclass(frozen=True)
class PartialSetFunction:
    """Values known only on some subsets (mask -> scalar), one scalar kind."""

    n: int
    entries: tuple[tuple[int, Scalar], ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_N:
            raise ValidationError(f"ground set size must be 1..{MAX_N}, got {self.n}")
        seen: dict[int, Scalar] = {}
        norm = []
        for mask, raw in self.entries:
            check_mask(mask, self.n)
            if mask in seen:
                raise ValidationError(f"duplicate entry for subset {elements(mask)}")
            v = coerce_scalar(raw)
            seen[mask] = v
            norm.append((mask, v))
        kinds = {type(v) is float for _, v in norm}
        if len(kinds) > 1:
            raise ValidationError("mixed rational and float values in one table")
        object.__setattr__(self, "entries", tuple(norm))

    @property
    def is_rational(self) -> bool:
        return not any(type(v) is float for _, v in self.entries)

    def as_dict(self) -> dict[int, Scalar]:
        return dict(self.entries)


def is_submodular(f: SetFunction, tol: float | None = None) -> Verdict:
    """Exhaustive local-exchange submodularity test.

    Rational instances are compared exactly (tol forced to 0).  The
    witness, if any, is the definitional violating pair lifted to
    (S + i, S + j).
    """
    eps = effective_tol(f.is_rational, tol)
    n, vals = f.n, f.values
    for s in subsets(n):
        free = full_mask(n) & ~s
        for i in iter_bits(free):
            bi = 1 << i
            fi = vals[s | bi]
            for j in iter_bits(free >> (i + 1)):
                bj = 1 << (i + 1 + j)
                if fi + vals[s | bj] < vals[s | bi | bj] + vals[s] - eps:
                    return Verdict(False, (s | bi, s | bj))
    return Verdict(True)


def is_modular(f: SetFunction, tol: float | None = None) -> Verdict:
    """True iff f(A) equals the sum of its singleton values for every A.

    The A = emptyset case makes groundedness part of the check.  The
    witness is the first failing subset in table order.
    """
    eps = effective_tol(f.is_rational, tol)
    singles = [f.values[1 << i] for i in range(f.n)]
    for a in subsets(f.n):
        acc = sum(singles[i] for i in iter_bits(a))
        if abs(f.values[a] - acc) > eps:
            return Verdict(False, a)
    return Verdict(True)


def is_nondecreasing(f: SetFunction, tol: float | None = None) -> Verdict:
    """Full monotonicity: f(S) <= f(T) whenever S is inside T.

    Checked on covering pairs (transitivity lifts the result to all
    nested pairs); the witness is the first violating covering pair
    (S, S + i) in table order.
    """
    eps = effective_tol(f.is_rational, tol)
    n, vals = f.n, f.values
    for s in subsets(n):
        for i in iter_bits(full_mask(n) & ~s):
            if vals[s | (1 << i)] < vals[s] - eps:
                return Verdict(False, (s, s | (1 << i)))
    return Verdict(True)


def is_prefix_nondecreasing(f: SetFunction, tol: float | None = None) -> bool:
    """Chain condition f([1:1]) <= f([1:2]) <= ... <= f([1:n]).

    Starts at j = 1: the value at the empty set does not participate.
    """
    eps = effective_tol(f.is_rational, tol)
    prev = f.values[1]
    for j in range(2, f.n + 1):
        cur = f.values[full_mask(j)]
        if cur < prev - eps:
            return False
        prev = cur
    return True


def _coverage_table(n: int, rng: random.Random) -> tuple[Fraction, ...]:
    universe = 2 * n + 2
    weights = [rng.randint(1, 9) for _ in range(universe)]
    elem_mask = []
    for _ in range(n):
        m = 0
        for u in range(universe):
            if rng.random() < 0.5:
                m |= 1 << u
        elem_mask.append(m)
    union = [0] * (1 << n)
    cache: dict[int, int] = {0: 0}
    out = []
    for s in subsets(n):
        if s:
            low = s & -s
            union[s] = union[s ^ low] | elem_mask[low.bit_length() - 1]
        u = union[s]
        if u not in cache:
            cache[u] = sum(weights[b] for b in iter_bits(u))
        out.append(Fraction(cache[u]))
    return tuple(out)


def _entropy_table(n: int, rng: random.Random) -> tuple[float, ...]:
    # deferred import: info depends on this module
    from .info import entropy_table_from_pmf

    import numpy as np

    cells = [rng.random() + 0.05 for _ in range(1 << n)]
    total = sum(cells)
    pmf = np.array([c / total for c in cells], dtype=float).reshape((2,) * n)
    return tuple(entropy_table_from_pmf(pmf))


def _matroid_modular_table(n: int, rng: random.Random) -> tuple[Fraction, ...]:
    from .matroid import LinearMatroid

    k = max(1, (n + 1) // 2)
    rows = tuple(
        tuple(Fraction(rng.randint(-2, 2)) for _ in range(n)) for _ in range(k)
    )
    m = LinearMatroid(rows)
    costs = [Fraction(rng.randint(0, 9)) for _ in range(n)]
    out = []
    for s in subsets(n):
        out.append(Fraction(m.rank(s)) + sum((costs[i] for i in iter_bits(s)), Fraction(0)))
    return tuple(out)


def generate_submodular(n: int, seed: int, kind: str) -> SetFunction:
    """Deterministic grounded submodular instance of the requested kind.

    coverage: weighted-coverage function, exact rational.
    entropy: joint-entropy function of a random pmf on n binary
        variables, binary64 (n <= 12).
    matroid-plus-modular: linear-matroid rank plus a nonnegative
        modular function, exact rational.

    All three kinds are monotone, hence also prefix-nondecreasing.
    """
    if kind not in GENERATOR_KINDS:
        raise ValidationError(f"unknown generator kind {kind!r}")
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise ValidationError(f"ground set size must be 1..{MAX_N}, got {n}")
    if kind == "entropy" and n > MAX_ENTROPY_N:
        raise ValidationError(f"entropy kind supports n <= {MAX_ENTROPY_N}, got {n}")
    rng = random.Random(f"{kind}:{n}:{seed}")
    if kind == "coverage":
        table = _coverage_table(n, rng)
    elif kind == "entropy":
        table = _entropy_table(n, rng)
    else:
        table = _matroid_modular_table(n, rng)
    return SetFunction(n, table, label=f"{kind}-{seed}")
