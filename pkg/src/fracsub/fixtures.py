"""Built-in worked instances used by tests and the CLI self-test.

Three small bundles, each a complete story: a modular function pinned
down by singleton values, a modular function with mixed signs under a
lopsided partition, and a submodular-but-not-modular function whose
covering gap vanishes anyway because the function fails monotonicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bitsets import iter_bits, mask_of, subsets
from .families import WeightedFamily, singleton_family
from .setfn import PartialSetFunction, SetFunction

__all__ = [
    "Bundle",
    "modular_singletons",
    "modular_mixed_signs",
    "zero_gap_nonmonotone",
    "all_bundles",
]


@dataclass(frozen=True)
class Bundle:
    """One self-contained instance: values, family, optional full table."""

    name: str
    family: WeightedFamily
    partial: PartialSetFunction | None = None
    table: SetFunction | None = None


def _modular_table(singletons: tuple[Fraction, ...], label: str) -> SetFunction:
    n = len(singletons)
    values = tuple(
        sum((singletons[b] for b in iter_bits(m)), Fraction(0)) for m in subsets(n)
    )
    return SetFunction(n=n, values=values, label=label)


def modular_singletons() -> Bundle:
    """n=4, f({i}) = i*2^i and f(full) = 98: the all-singletons partition
    pins the modular completion x_i = i*2^i."""
    n = 4
    xs = tuple(Fraction(i * 2**i) for i in range(1, n + 1))
    entries = tuple((1 << (i - 1), xs[i - 1]) for i in range(1, n + 1))
    entries += ((mask_of(range(1, n + 1), n), Fraction(98)),)
    return Bundle(
        name="modular-singletons",
        family=singleton_family(n),
        partial=PartialSetFunction(n=n, entries=entries),
        table=_modular_table(xs, "modular-singletons"),
    )


def modular_mixed_signs() -> Bundle:
    """n=4, seven overlapping members with denominator-12 weights; the
    member values force the modular completion (27/10, 3/10, -22/5, 5)."""
    n = 4
    member_values = (
        ((2,), Fraction(3, 10), Fraction(1, 6)),
        ((4,), Fraction(5), Fraction(5, 12)),
        ((1, 2), Fraction(3), Fraction(1, 12)),
        ((3, 4), Fraction(3, 5), Fraction(1, 12)),
        ((2, 4), Fraction(53, 10), Fraction(1, 6)),
        ((1, 2, 3), Fraction(-7, 5), Fraction(7, 12)),
        ((1, 3, 4), Fraction(33, 10), Fraction(1, 3)),
    )
    entries = tuple((mask_of(s, n), v) for s, v, _ in member_values)
    entries += ((mask_of(range(1, n + 1), n), Fraction(18, 5)),)
    family = WeightedFamily(
        n=n, members=tuple((mask_of(s, n), w) for s, _, w in member_values)
    )
    xs = (Fraction(27, 10), Fraction(3, 10), Fraction(-22, 5), Fraction(5))
    return Bundle(
        name="modular-mixed-signs",
        family=family,
        partial=PartialSetFunction(n=n, entries=entries),
        table=_modular_table(xs, "modular-mixed-signs"),
    )


def zero_gap_nonmonotone() -> Bundle:
    """n=3 submodular, not modular, prefix-nondecreasing but not
    non-decreasing; the 4-member covering at weight 1/2 reaches zero
    upper gap regardless, which is exactly the case the covering
    equality test must refuse."""
    n = 3
    values_by_set = {
        (): Fraction(0),
        (1,): Fraction(-100),
        (2,): Fraction(1, 1000),
        (3,): Fraction(100001, 2000),
        (1, 2): Fraction(-100),
        (2, 3): Fraction(100001, 2000),
        (1, 3): Fraction(-100001, 2000),
        (1, 2, 3): Fraction(-100),
    }
    table = [Fraction(0)] * (1 << n)
    for s, v in values_by_set.items():
        table[mask_of(s, n)] = v
    half = Fraction(1, 2)
    family = WeightedFamily(
        n=n,
        members=(
            (mask_of((1, 2), n), half),
            (mask_of((1, 2), n), half),
            (mask_of((2, 3), n), half),
            (mask_of((1, 3), n), half),
        ),
    )
    return Bundle(
        name="zero-gap-nonmonotone",
        family=family,
        table=SetFunction(n=n, values=tuple(table), label="zero-gap-nonmonotone"),
    )


def all_bundles() -> tuple[Bundle, ...]:
    return (modular_singletons(), modular_mixed_signs(), zero_gap_nonmonotone())
