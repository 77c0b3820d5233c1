"""Semiprime reduction: central idempotents, grade orbits, and the main
hereditariness decision.

The grading group permutes the central idempotents of the identity
component (one per prime block).  Each orbit contributes a corner that is
again strongly graded, by the stabilizer of a chosen representative
block, with a prime identity component; the whole order is hereditary
exactly when every such corner is.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base_rings import MaximalIdeal
from .graded import (
    GradedError,
    GradedOrder,
    HereditaryVerdict,
    block_corner_graded_order,
    inner_classification,
    prime_hereditary_at_place,
    prime_hereditary_verdict,
    _delta_hereditary,
)
from .groups import (
    GroupAction,
    OrbitData,
    Subgroup,
    orbits_and_stabilizers,
)


class InconsistentBlockSupport(GradedError):
    pass


def idempotent_action(order: GradedOrder) -> GroupAction:
    """The right action of the grading group on the prime blocks of the
    identity component, read off the component block permutations."""
    perms = {g: comp.perm for g, comp in order.components.items()}
    action = GroupAction(order.group, order.base.t, lambda g, i: perms[g][i])
    action.validate()
    return action


@dataclass(frozen=True)
class OrbitCorner:
    data: OrbitData
    corner: GradedOrder


def orbit_decompose(order: GradedOrder) -> list[OrbitCorner]:
    """One corner per orbit of blocks: the representative is the least
    block index, graded by its stabilizer."""
    out = []
    for data in orbits_and_stabilizers(idempotent_action(order)):
        corner = block_corner_graded_order(order, data.representative, data.stabilizer)
        out.append(OrbitCorner(data, corner))
    return out


def main_hereditary_verdict(
    order: GradedOrder,
    sylow_choice=None,
) -> HereditaryVerdict:
    """Hereditary iff every orbit corner passes the prime-case test."""
    if order.is_prime:
        return prime_hereditary_verdict(order, sylow_choice)
    breakdown = []
    hereditary = _delta_hereditary(order)
    delta_ok = hereditary
    for k, oc in enumerate(orbit_decompose(order)):
        v = prime_hereditary_verdict(oc.corner, sylow_choice, orbit_index=k)
        hereditary = hereditary and v.hereditary
        breakdown.extend(v.breakdown)
    return HereditaryVerdict(hereditary, delta_ok, tuple(breakdown))


def hereditary_at_place(order: GradedOrder, m: MaximalIdeal) -> bool:
    """The completion at m is hereditary: every orbit corner passes there."""
    if order.is_prime:
        return prime_hereditary_at_place(order, m)
    return all(
        prime_hereditary_at_place(oc.corner, m) for oc in orbit_decompose(order)
    )


def full_order_inner_count(
    order: GradedOrder, subgroup: Subgroup, place: MaximalIdeal | None = None
) -> int:
    """How many elements of the subgroup act innerly on the whole graded
    order (not on an orbit corner); an element moving any block is never
    inner, so this can be strictly smaller than the corner count."""
    return len(inner_classification(order, subgroup, place).inner_elements)
