"""Tiled orders and their fractional ideals.

Locally (at one maximal ideal) a tiled order is an integer exponent matrix
with zero diagonal and min-plus ring closure; fractional ideals over it
are integer matrices with bimodule closure and may have negative entries.
Globally a tiled order is a matrix of fractional ideals of the base ring
that localizes to an exponent matrix at every maximal ideal.

Containment of ideals is entrywise >= on exponents; products are min-plus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .base_rings import (
    BaseRing,
    FractionalIdealR,
    MaximalIdeal,
    RingError,
    valuation,
)


class OrderError(ValueError):
    pass


class ZeroDiagonalViolation(OrderError):
    pass


class ClosureViolation(OrderError):
    def __init__(self, i: int, j: int, k: int, msg: str = ""):
        self.triple = (i, j, k)
        super().__init__(msg or f"closure fails at (i={i}, j={j}, k={k})")


class NotHereditary(OrderError):
    pass


class NotInvertible(OrderError):
    pass


IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows) -> IntMatrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def minplus(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Min-plus product of an (m x r) and an (r x n) matrix."""
    r = len(b)
    if any(len(row) != r for row in a):
        raise OrderError("inner dimensions do not match")
    return tuple(
        tuple(min(arow[k] + b[k][j] for k in range(r)) for j in range(len(b[0])))
        for arow in a
    )


def shift(a: IntMatrix, s: int) -> IntMatrix:
    return tuple(tuple(x + s for x in row) for row in a)


def constant_shift_of(a: IntMatrix, b: IntMatrix) -> int | None:
    """The s with a == b + s, if one exists."""
    s = a[0][0] - b[0][0]
    for ra, rb in zip(a, b):
        for xa, xb in zip(ra, rb):
            if xa - xb != s:
                return None
    return s


@dataclass(frozen=True)
class ExponentMatrix:
    """A tiled order in M_n over the completion at one maximal ideal."""

    n: int
    entries: IntMatrix
    ring: BaseRing | None = None
    place: MaximalIdeal | None = None

    def __post_init__(self):
        if len(self.entries) != self.n or any(
            len(r) != self.n for r in self.entries
        ):
            raise OrderError("entries are not an n x n matrix")

    def context(self) -> tuple[BaseRing | None, MaximalIdeal | None]:
        return self.ring, self.place


@dataclass(frozen=True)
class FractionalIdealMatrix:
    order: ExponentMatrix
    entries: IntMatrix

    def __post_init__(self):
        n = self.order.n
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise OrderError("entries are not an n x n matrix")


def validate_order(
    rows, ring: BaseRing | None = None, place: MaximalIdeal | None = None
) -> ExponentMatrix:
    entries = as_matrix(rows)
    n = len(entries)
    for i in range(n):
        if entries[i][i] != 0:
            raise ZeroDiagonalViolation(f"diagonal entry ({i},{i}) is {entries[i][i]}")
        for j in range(n):
            if entries[i][j] < 0:
                raise OrderError(
                    f"order entry ({i},{j}) is negative; only fractional "
                    "ideals may carry negative exponents"
                )
    _check_closure(entries, entries, entries)
    return ExponentMatrix(n, entries, ring, place)


def _check_closure(a: IntMatrix, b: IntMatrix, c: IntMatrix) -> None:
    """a_ik + b_kj >= c_ij for all i, j, k."""
    n = len(a)
    for i in range(n):
        for k in range(n):
            for j in range(n):
                if a[i][k] + b[k][j] < c[i][j]:
                    raise ClosureViolation(i, j, k)


def validate_ideal(order: ExponentMatrix, rows) -> FractionalIdealMatrix:
    entries = as_matrix(rows)
    lam = order.entries
    _check_closure(lam, entries, entries)
    _check_closure(entries, lam, entries)
    return FractionalIdealMatrix(order, entries)


def order_ideal(order: ExponentMatrix) -> FractionalIdealMatrix:
    return FractionalIdealMatrix(order, order.entries)


def ideal_multiply(
    x: FractionalIdealMatrix, y: FractionalIdealMatrix
) -> FractionalIdealMatrix:
    if x.order != y.order:
        raise OrderError("ideals over different orders")
    return FractionalIdealMatrix(x.order, minplus(x.entries, y.entries))


def ideal_power(x: FractionalIdealMatrix, k: int) -> FractionalIdealMatrix:
    if k < 0:
        raise OrderError("negative ideal power")
    out = order_ideal(x.order)
    for _ in range(k):
        out = ideal_multiply(out, x)
    return out


def zero_pair_classes(order: ExponentMatrix) -> list[list[int]]:
    """Index classes under i ~ j iff entries (i,j) and (j,i) sum to zero."""
    lam = order.entries
    n = order.n
    classes: list[list[int]] = []
    assigned = [-1] * n
    for i in range(n):
        if assigned[i] >= 0:
            continue
        cls = [i]
        assigned[i] = len(classes)
        for j in range(i + 1, n):
            if assigned[j] < 0 and lam[i][j] + lam[j][i] == 0:
                cls.append(j)
                assigned[j] = len(classes)
        classes.append(cls)
    return classes


def radical(order: ExponentMatrix) -> FractionalIdealMatrix:
    """Largest ideal that is nilpotent modulo the uniformizer times the
    order: add 1 exactly on the zero-pair equivalence positions."""
    lam = order.entries
    classes = zero_pair_classes(order)
    label = {}
    for c, cls in enumerate(classes):
        for i in cls:
            label[i] = c
    entries = tuple(
        tuple(
            lam[i][j] + (1 if label[i] == label[j] else 0)
            for j in range(order.n)
        )
        for i in range(order.n)
    )
    return FractionalIdealMatrix(order, entries)


def dual_ideal(x: FractionalIdealMatrix) -> FractionalIdealMatrix:
    """Largest Y with Y*X contained in the order."""
    lam = x.order.entries
    xe = x.entries
    n = x.order.n
    entries = tuple(
        tuple(max(lam[i][j] - xe[k][j] for j in range(n)) for k in range(n))
        for i in range(n)
    )
    return FractionalIdealMatrix(x.order, entries)


def is_hereditary_local(order: ExponentMatrix) -> bool:
    """Radical invertibility over the completion."""
    rad = radical(order)
    dual = dual_ideal(rad)
    return (
        minplus(dual.entries, rad.entries) == order.entries
        and minplus(rad.entries, dual.entries) == order.entries
    )


@dataclass(frozen=True)
class ProjectiveProfile:
    """Sizes of the projective classes, listed in radical-cycle order
    starting from the class containing the least index."""

    block_sizes: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]  # aligned with block_sizes

    @property
    def t(self) -> int:
        return len(self.block_sizes)


def column_class(
    order: ExponentMatrix, column: tuple[int, ...]
) -> tuple[int, int]:
    """Identify a column with a projective class of the order: the class
    index (in zero-pair class numbering) and shift s such that the column
    equals the class column plus s."""
    classes = zero_pair_classes(order)
    n = order.n
    for c, cls in enumerate(classes):
        ref = tuple(order.entries[i][cls[0]] for i in range(n))
        s = column[0] - ref[0]
        if all(column[i] - ref[i] == s for i in range(n)):
            return c, s
    raise NotInvertible("column matches no projective class of the order")


def left_module_class(x: FractionalIdealMatrix) -> dict[int, int]:
    """Decompose as a left module: class index -> multiplicity over the
    columns of x."""
    order = x.order
    if not is_hereditary_local(order):
        raise NotHereditary("left-module classification needs a hereditary order")
    n = order.n
    counts: dict[int, int] = {}
    for j in range(n):
        col = tuple(x.entries[i][j] for i in range(n))
        c, _ = column_class(order, col)
        counts[c] = counts.get(c, 0) + 1
    return counts


def is_free_left_module(x: FractionalIdealMatrix) -> bool:
    """Whether x is isomorphic to its order as a left module."""
    order = x.order
    classes = zero_pair_classes(order)
    return left_module_class(x) == {c: len(cls) for c, cls in enumerate(classes)}


def projective_profile(order: ExponentMatrix) -> ProjectiveProfile:
    if not is_hereditary_local(order):
        raise NotHereditary("projective profile only defined for hereditary orders")
    classes = zero_pair_classes(order)
    if len(classes) == 1:
        return ProjectiveProfile((len(classes[0]),), (tuple(classes[0]),))
    rad = radical(order)
    n = order.n
    successor = {}
    for c, cls in enumerate(classes):
        j = cls[0]
        col = tuple(rad.entries[i][j] for i in range(n))
        c2, _ = column_class(order, col)
        successor[c] = c2
    ordered = [0]
    while True:
        nxt = successor[ordered[-1]]
        if nxt == 0:
            break
        if nxt in ordered or len(ordered) > len(classes):
            raise NotHereditary("radical does not cycle the projective classes")
        ordered.append(nxt)
    if len(ordered) != len(classes):
        raise NotHereditary("radical does not cycle the projective classes")
    return ProjectiveProfile(
        tuple(len(classes[c]) for c in ordered),
        tuple(tuple(classes[c]) for c in ordered),
    )


def basic_idempotent_corner(
    order: ExponentMatrix,
) -> tuple[ExponentMatrix, tuple[int, ...]]:
    """Corner by one index per projective class; the result is basic."""
    profile = projective_profile(order)
    idx = tuple(cls[0] for cls in profile.classes)
    entries = tuple(
        tuple(order.entries[i][j] for j in idx) for i in idx
    )
    return (
        ExponentMatrix(len(idx), entries, order.ring, order.place),
        idx,
    )


def hereditary_staircase(
    block_sizes: tuple[int, ...],
    ring: BaseRing | None = None,
    place: MaximalIdeal | None = None,
) -> ExponentMatrix:
    """The standard hereditary order with the given block profile: zero on
    and above the block diagonal, one below."""
    n = sum(block_sizes)
    label = []
    for b, size in enumerate(block_sizes):
        label += [b] * size
    entries = tuple(
        tuple(1 if label[i] > label[j] else 0 for j in range(n))
        for i in range(n)
    )
    return ExponentMatrix(n, entries, ring, place)


# ---------------------------------------------------------------------------
# Global tiled orders


@dataclass(frozen=True)
class GlobalTiledOrder:
    n: int
    entries: tuple[tuple[FractionalIdealR, ...], ...]
    ring: BaseRing

    @cached_property
    def support(self) -> tuple[MaximalIdeal, ...]:
        places = set()
        for row in self.entries:
            for ideal in row:
                places.update(ideal.support())
        return tuple(
            sorted(places, key=lambda m: (m.residue_char, m.gen_re, m.gen_im))
        )


def validate_global_order(
    ring: BaseRing, rows: list[list[FractionalIdealR]]
) -> GlobalTiledOrder:
    n = len(rows)
    entries = tuple(tuple(r) for r in rows)
    order = GlobalTiledOrder(n, entries, ring)
    for i in range(n):
        if entries[i][i].factors != ():
            raise OrderError(f"diagonal entry ({i},{i}) is not the base ring")
    for m in order.support:
        localize(order, m)  # raises on a closure violation
    return order


def localize(order: GlobalTiledOrder, m: MaximalIdeal) -> ExponentMatrix:
    rows = tuple(
        tuple(valuation(order.entries[i][j], m) for j in range(order.n))
        for i in range(order.n)
    )
    return validate_order(rows, order.ring.localize(m), m)


def is_hereditary_global(
    order: GlobalTiledOrder,
) -> tuple[bool, list[MaximalIdeal]]:
    """Check every maximal ideal where some entry has nonzero valuation;
    everywhere else the localization is maximal, hence hereditary."""
    failing = [
        m for m in order.support if not is_hereditary_local(localize(order, m))
    ]
    return not failing, failing


@dataclass(frozen=True)
class GlobalIdealMatrix:
    """A fractional bimodule over a global tiled order, entrywise ideals."""

    order: GlobalTiledOrder
    entries: tuple[tuple[FractionalIdealR, ...], ...]

    @cached_property
    def support(self) -> tuple[MaximalIdeal, ...]:
        places = set(self.order.support)
        for row in self.entries:
            for ideal in row:
                places.update(ideal.support())
        return tuple(
            sorted(places, key=lambda m: (m.residue_char, m.gen_re, m.gen_im))
        )


def global_order_ideal(order: GlobalTiledOrder) -> GlobalIdealMatrix:
    return GlobalIdealMatrix(order, order.entries)


def global_localize_ideal(
    x: GlobalIdealMatrix, m: MaximalIdeal
) -> FractionalIdealMatrix:
    rows = tuple(
        tuple(valuation(x.entries[i][j], m) for j in range(x.order.n))
        for i in range(x.order.n)
    )
    return FractionalIdealMatrix(localize(x.order, m), rows)


def global_ideal_multiply(
    x: GlobalIdealMatrix, y: GlobalIdealMatrix
) -> GlobalIdealMatrix:
    if x.order != y.order:
        raise OrderError("ideals over different orders")
    n = x.order.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = None
            for k in range(n):
                term = x.entries[i][k] * y.entries[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        rows.append(tuple(row))
    return GlobalIdealMatrix(x.order, tuple(rows))


def validate_global_ideal(
    order: GlobalTiledOrder, rows: list[list[FractionalIdealR]]
) -> GlobalIdealMatrix:
    x = GlobalIdealMatrix(order, tuple(tuple(r) for r in rows))
    for m in x.support:
        lam = localize(order, m)
        validate_ideal(lam, global_localize_ideal(x, m).entries)
    return x
