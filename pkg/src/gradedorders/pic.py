"""Picard-element bookkeeping for hereditary tiled orders.

At a single place the central Picard group of a hereditary order is cyclic
of order t (the block count), generated by the radical; globally, over a
PID base, it is the direct sum of the local groups over the places where
the order is not maximal.  Invertible bimodules are classified by their
radical-power class at each such place.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base_rings import MaximalIdeal
from .tiled import (
    ExponentMatrix,
    FractionalIdealMatrix,
    GlobalIdealMatrix,
    GlobalTiledOrder,
    NotHereditary,
    constant_shift_of,
    global_localize_ideal,
    ideal_multiply,
    is_hereditary_global,
    is_hereditary_local,
    localize,
    order_ideal,
    radical,
    zero_pair_classes,
)


class PicError(ValueError):
    pass


class NoMatchingPower(PicError):
    """An invertible bimodule outside the cyclic group generated by the
    radical; impossible for a hereditary prime order, so this signals an
    internal inconsistency."""


@dataclass(frozen=True)
class LocalPicent:
    order: ExponentMatrix
    cyclic_order: int
    generator: FractionalIdealMatrix


@dataclass(frozen=True)
class GlobalPicent:
    components: tuple[tuple[MaximalIdeal, LocalPicent], ...]

    def __str__(self) -> str:
        if not self.components:
            return "trivial"
        return " + ".join(
            f"Z/{lp.cyclic_order} at {m}" for m, lp in self.components
        )


@dataclass(frozen=True)
class PicClass:
    """Residue class of a bimodule at each relevant place, mod the local
    cyclic order; places not listed have class zero."""

    per_place: tuple[tuple[MaximalIdeal, int], ...]

    def as_dict(self) -> dict[MaximalIdeal, int]:
        return dict(self.per_place)

    @staticmethod
    def of(classes: dict[MaximalIdeal, int]) -> PicClass:
        return PicClass(
            tuple(
                sorted(
                    ((m, c) for m, c in classes.items()),
                    key=lambda t: (t[0].residue_char, t[0].gen_re, t[0].gen_im),
                )
            )
        )


def picent_local(order: ExponentMatrix) -> LocalPicent:
    """Cyclic, generated by the radical; the order is verified by powering
    the radical until a constant shift of the order appears."""
    if not is_hereditary_local(order):
        raise NotHereditary("local Picent computed only for hereditary orders")
    rad = radical(order)
    power = rad
    t = 1
    while constant_shift_of(power.entries, order.entries) is None:
        power = ideal_multiply(power, rad)
        t += 1
        if t > order.n + 1:
            raise PicError("radical powers never reach a scalar multiple")
    assert t == len(zero_pair_classes(order))
    return LocalPicent(order, t, rad)


def picent_global(order: GlobalTiledOrder) -> GlobalPicent:
    ok, failing = is_hereditary_global(order)
    if not ok:
        raise NotHereditary(f"order not hereditary at {failing}")
    comps = []
    for m in order.support:
        local = localize(order, m)
        lp = picent_local(local)
        if lp.cyclic_order > 1:
            comps.append((m, lp))
    return GlobalPicent(tuple(comps))


def bimodule_trivial_local(
    x: FractionalIdealMatrix,
) -> tuple[bool, int | None]:
    """Whether x is a scalar multiple of its (prime) order, i.e. equals the
    order shifted by a constant valuation; returns the shift as witness."""
    s = constant_shift_of(x.entries, x.order.entries)
    return (s is not None), s


def _local_class_of(x: FractionalIdealMatrix) -> int:
    lp = picent_local(x.order)
    power = order_ideal(x.order)
    for k in range(lp.cyclic_order):
        if constant_shift_of(x.entries, power.entries) is not None:
            return k
        power = ideal_multiply(power, lp.generator)
    raise NoMatchingPower("bimodule is not a radical power up to scalars")


def pic_class_of(x: GlobalIdealMatrix) -> PicClass:
    """Radical-power class of an invertible bimodule at each place where
    the order is not maximal."""
    classes: dict[MaximalIdeal, int] = {}
    for m in x.support:
        local = global_localize_ideal(x, m)
        if len(zero_pair_classes(local.order)) == 1:
            # maximal localization: the bimodule must be scalar there
            ok, _ = bimodule_trivial_local(local)
            if not ok:
                raise NoMatchingPower(f"non-scalar bimodule at maximal place {m}")
            continue
        k = _local_class_of(local)
        if k:
            classes[m] = k
    return PicClass.of(classes)


def construct_class_representative(
    order: GlobalTiledOrder, target: PicClass
) -> GlobalIdealMatrix:
    """An ideal matrix whose class is the target: glue the matching local
    radical power at each relevant place (entrywise ideal assembly; the PID
    base keeps every entry an honest fractional ideal)."""
    from .base_rings import BaseRing, FractionalIdealR

    non_maximal = {
        m
        for m in order.support
        if len(zero_pair_classes(localize(order, m))) > 1
    }
    for m, k in target.per_place:
        if m not in non_maximal:
            raise PicError(f"unsupported place {m}: order is maximal there")
    n = order.n
    exponents: dict[MaximalIdeal, list[list[int]]] = {}
    for m in non_maximal:
        local = localize(order, m)
        k = target.as_dict().get(m, 0)
        lp = picent_local(local)
        power = order_ideal(local)
        for _ in range(k % lp.cyclic_order):
            power = ideal_multiply(power, lp.generator)
        exponents[m] = [list(r) for r in power.entries]
    ring = order.ring
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            fac = {m: exponents[m][i][j] for m in non_maximal}
            row.append(FractionalIdealR.from_factors(BaseRing(ring.kind), fac))
        rows.append(tuple(row))
    return GlobalIdealMatrix(order, tuple(rows))
