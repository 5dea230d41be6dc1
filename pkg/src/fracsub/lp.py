"""Exact linear programming over the rationals.

Primal simplex, two phases, Bland's anti-cycling rule, every number a
fractions.Fraction.  Problems are stated as

    maximize c . x   subject to rows (a, rel, b) with rel in {=, <=, >=}
    and x >= 0.

There is no presolve and no scaling; infeasibility and unboundedness
are detected explicitly (phase 1 optimum below zero, respectively an
entering column with no positive pivot).  Binary64 objective costs can
be embedded exactly because every float is a rational.

The implementation recomputes reduced costs from the tableau each
iteration instead of carrying a factorization; at the desk scale this
package targets (tens of variables) that is both simple and fast, and
exactness makes certificates re-verifiable with zero residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, ValidationError

RELATIONS = ("=", "<=", ">=")


def _frac(x) -> Fraction:
    if isinstance(x, bool):
        raise ValidationError("bool is not a coefficient")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # exact: binary64 is a subset of Q
    raise ValidationError(f"unsupported coefficient type {type(x).__name__}")


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValidationError(f"relation must be one of {RELATIONS}")
        object.__setattr__(self, "coeffs", tuple(_frac(a) for a in self.coeffs))
        object.__setattr__(self, "rhs", _frac(self.rhs))


@dataclass(frozen=True)
class RationalLP:
    objective: tuple[Fraction, ...]
    rows: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(_frac(a) for a in self.objective))
        for row in self.rows:
            if len(row.coeffs) != len(self.objective):
                raise ValidationError("constraint width does not match objective")

    @property
    def nvars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LPOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    solution: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [x / piv for x in tableau[row]]
    prow = tableau[row]
    for r, trow in enumerate(tableau):
        if r != row and trow[col] != 0:
            f = trow[col]
            tableau[r] = [x - f * y for x, y in zip(trow, prow)]
    basis[row] = col


def _run_simplex(
    tableau: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    ncols_enterable: int,
) -> str:
    """Bland's rule simplex on a tableau already in canonical form."""
    while True:
        m = len(tableau)
        y = [cost[basis[r]] for r in range(m)]
        in_basis = set(basis)
        entering = -1
        for j in range(ncols_enterable):
            if j in in_basis:
                continue
            cbar = cost[j]
            for r in range(m):
                if y[r] != 0 and tableau[r][j] != 0:
                    cbar -= y[r] * tableau[r][j]
            if cbar > 0:
                entering = j  # Bland: smallest improving index
                break
        if entering < 0:
            return "optimal"
        leave = -1
        best: Fraction | None = None
        for r in range(m):
            a = tableau[r][entering]
            if a > 0:
                ratio = tableau[r][-1] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[r] < basis[leave])
                ):
                    best, leave = ratio, r
        if leave < 0:
            return "unbounded"
        _pivot(tableau, basis, leave, entering)


def solve(lp: RationalLP) -> LPOutcome:
    """Two-phase exact simplex; deterministic for identical input."""
    nstruct = lp.nvars
    rows = []
    for c in lp.rows:
        coeffs, rel, rhs = list(c.coeffs), c.relation, c.rhs
        if rhs < 0:
            coeffs = [-a for a in coeffs]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        rows.append((coeffs, rel, rhs))

    m = len(rows)
    slack_col: dict[int, int] = {}
    art_col: dict[int, int] = {}
    ncols = nstruct
    for r, (_, rel, _) in enumerate(rows):
        if rel in ("<=", ">="):
            slack_col[r] = ncols
            ncols += 1
    n_nonart = ncols
    for r, (_, rel, _) in enumerate(rows):
        if rel in (">=", "="):
            art_col[r] = ncols
            ncols += 1

    zero = Fraction(0)
    tableau = []
    basis = []
    for r, (coeffs, rel, rhs) in enumerate(rows):
        trow = [zero] * ncols + [rhs]
        for j, a in enumerate(coeffs):
            trow[j] = a
        if rel == "<=":
            trow[slack_col[r]] = Fraction(1)
        elif rel == ">=":
            trow[slack_col[r]] = Fraction(-1)
        if r in art_col:
            trow[art_col[r]] = Fraction(1)
        tableau.append(trow)
        basis.append(art_col[r] if r in art_col else slack_col[r])

    if art_col:
        cost1 = [zero] * ncols
        for c in art_col.values():
            cost1[c] = Fraction(-1)
        _run_simplex(tableau, basis, cost1, ncols)  # bounded below, never unbounded
        val1 = sum(cost1[basis[r]] * tableau[r][-1] for r in range(len(tableau)))
        if val1 < 0:
            return LPOutcome("infeasible")
        art_set = set(art_col.values())
        r = 0
        while r < len(tableau):
            if basis[r] in art_set:
                piv = next(
                    (j for j in range(n_nonart) if tableau[r][j] != 0), None
                )
                if piv is None:
                    del tableau[r]  # redundant original row
                    del basis[r]
                    continue
                _pivot(tableau, basis, r, piv)
            r += 1

    cost2 = list(lp.objective) + [zero] * (ncols - nstruct)
    status = _run_simplex(tableau, basis, cost2, n_nonart)
    if status == "unbounded":
        return LPOutcome("unbounded")
    x = [zero] * ncols
    for r in range(len(tableau)):
        x[basis[r]] = tableau[r][-1]
    solution = tuple(x[:nstruct])
    value = sum((o * s for o, s in zip(lp.objective, solution)), zero)
    return LPOutcome("optimal", solution, value)


def residuals(lp: RationalLP, solution) -> list[Fraction]:
    """Exact a.x - b per row, in input order."""
    out = []
    for row in lp.rows:
        acc = sum((a * x for a, x in zip(row.coeffs, solution)), Fraction(0))
        out.append(acc - row.rhs)
    return out


def verify(lp: RationalLP, outcome: LPOutcome) -> bool:
    """Re-check an optimal certificate with zero tolerance."""
    if outcome.status != "optimal" or outcome.solution is None:
        return False
    if any(x < 0 for x in outcome.solution):
        return False
    for row, res in zip(lp.rows, residuals(lp, outcome.solution)):
        if row.relation == "=" and res != 0:
            return False
        if row.relation == "<=" and res > 0:
            return False
        if row.relation == ">=" and res < 0:
            return False
    value = sum(
        (o * s for o, s in zip(lp.objective, outcome.solution)), Fraction(0)
    )
    return value == outcome.value


def partition_polytope(n: int, masks) -> tuple[Constraint, ...]:
    """Equality rows: coverage of every element of [1:n] is exactly 1."""
    rows = []
    for i in range(n):
        coeffs = tuple(
            Fraction(1) if (m >> i) & 1 else Fraction(0) for m in masks
        )
        rows.append(Constraint(coeffs, "=", Fraction(1)))
    return tuple(rows)


def maximize_partition_weighted_sum(n: int, masks, costs):
    """Maximize sum cost(S) * gamma(S) over exact fractional partitions.

    Members must be proper nonempty subsets.  Costs may be binary64;
    they are embedded exactly.  Returns (positive-weight family, value
    as float).  Raises if the polytope is empty.
    """
    from .families import WeightedFamily  # local import: families depends on lp

    masks = list(masks)
    costs = list(costs)
    if len(masks) != len(costs):
        raise ValidationError("costs and members must align")
    full = (1 << n) - 1
    for m in masks:
        if not 0 < m < full:
            raise ValidationError("members must be proper nonempty subsets")
    prog = RationalLP(
        tuple(_frac(c) for c in costs), partition_polytope(n, masks)
    )
    out = solve(prog)
    if out.status != "optimal":
        raise PreconditionError("family admits no fractional partition")
    kept = tuple((m, g) for m, g in zip(masks, out.solution) if g > 0)
    return WeightedFamily(n, kept), float(out.value)
