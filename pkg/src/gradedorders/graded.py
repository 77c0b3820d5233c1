"""Strongly graded orders over prime or semiprime tiled identity
components.

A component for a grade g is a block-monomial matrix of fractional
bimodules: block row i carries one block, at column position perm[i].
Products of components may wrap through a fixed central scalar per pair
of grades (gamma); strong grading means the scaled product of any two
components equals the component of the product grade exactly.

All grade bookkeeping is exact; a global graded order is validated place
by place over the finite support of its data.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Mapping

from .base_rings import (
    BaseRing,
    FractionalIdealR,
    KElem,
    KONE,
    MaximalIdeal,
    is_principal,
    kelem_valuation,
    maximal_ideals_above,
    normalize_scalar,
    valuation,
)
from .groups import (
    FiniteGroup,
    Perm,
    Subgroup,
    cyclic_group,
    identity_perm,
    pmul,
    sylow_subgroup,
)
from .tiled import (
    ExponentMatrix,
    FractionalIdealMatrix,
    GlobalIdealMatrix,
    GlobalTiledOrder,
    IntMatrix,
    NotHereditary,
    OrderError,
    constant_shift_of,
    global_localize_ideal,
    is_free_left_module,
    is_hereditary_global,
    is_hereditary_local,
    localize,
    minplus,
    shift,
    validate_order,
    zero_pair_classes,
)


class GradedError(ValueError):
    pass


class NotFiniteOrder(GradedError):
    pass


class NonMinimalOrder(UserWarning):
    pass


class CocycleViolation(GradedError):
    def __init__(self, g, h, k):
        self.triple = (g, h, k)
        super().__init__("cocycle identity fails at a triple of grades")


class ActionDoesNotNormalize(GradedError):
    pass


class InvalidIdempotent(GradedError):
    pass


class NotPrimeContext(GradedError):
    pass


class StrongGradingFailure(GradedError):
    def __init__(self, g, h, detail=""):
        self.pair = (g, h)
        super().__init__(f"strong grading fails at a pair of grades: {detail}")


# ---------------------------------------------------------------------------
# Bases and components


@dataclass(frozen=True)
class LocalBase:
    """Direct sum of prime tiled orders over one completion."""

    blocks: tuple[ExponentMatrix, ...]

    @property
    def t(self) -> int:
        return len(self.blocks)

    @property
    def place(self) -> MaximalIdeal | None:
        return self.blocks[0].place

    @property
    def ring(self) -> BaseRing | None:
        return self.blocks[0].ring


@dataclass(frozen=True)
class GlobalBase:
    """Direct sum of prime global tiled orders over a common base ring."""

    blocks: tuple[GlobalTiledOrder, ...]

    @property
    def t(self) -> int:
        return len(self.blocks)

    @property
    def ring(self) -> BaseRing:
        return self.blocks[0].ring


@dataclass(frozen=True)
class LocalComponent:
    perm: Perm  # block row i holds its block at column position perm[i]
    mats: tuple[IntMatrix, ...]


@dataclass(frozen=True)
class GlobalComponent:
    perm: Perm
    mats: tuple[tuple[tuple[FractionalIdealR, ...], ...], ...]


Component = LocalComponent | GlobalComponent
GammaMap = Mapping[tuple[Perm, Perm], tuple[KElem, ...]]


@dataclass
class GradedOrder:
    group: FiniteGroup
    base: LocalBase | GlobalBase
    components: dict[Perm, Component]
    gamma: dict[tuple[Perm, Perm], tuple[KElem, ...]] = field(default_factory=dict)

    @property
    def is_local(self) -> bool:
        return isinstance(self.base, LocalBase)

    @property
    def is_prime(self) -> bool:
        return self.base.t == 1

    def component(self, g: Perm) -> Component:
        return self.components[g]

    def gamma_at(self, g: Perm, h: Perm) -> tuple[KElem, ...]:
        return self.gamma.get((g, h), tuple(KONE for _ in range(self.base.t)))

    def places(self) -> tuple[MaximalIdeal, ...]:
        """All maximal ideals supporting any datum of a global graded order."""
        if self.is_local:
            return (self.base.place,) if self.base.place else ()
        out = set()
        for blk in self.base.blocks:
            out.update(blk.support)
        for comp in self.components.values():
            for mat in comp.mats:
                for row in mat:
                    for ideal in row:
                        out.update(ideal.support())
        ring = self.base.ring
        for scalars in self.gamma.values():
            for c in scalars:
                num, den = c.as_int_pair()
                for ideal_gen in (num,):
                    out.update(
                        FractionalIdealR.principal(ring, ideal_gen).support()
                    )
                if den != 1:
                    out.update(
                        FractionalIdealR.principal(ring, den).support()
                    )
        return tuple(sorted(out, key=lambda m: (m.residue_char, m.gen_re, m.gen_im)))

    def localize(self, m: MaximalIdeal) -> GradedOrder:
        if self.is_local:
            if self.base.place != m:
                raise GradedError("graded order lives at a different place")
            return self
        blocks = tuple(localize(blk, m) for blk in self.base.blocks)
        comps = {}
        for g, comp in self.components.items():
            mats = tuple(
                tuple(
                    tuple(valuation(ideal, m) for ideal in row) for row in mat
                )
                for mat in comp.mats
            )
            comps[g] = LocalComponent(comp.perm, mats)
        return GradedOrder(self.group, LocalBase(blocks), comps, dict(self.gamma))


def identity_component(base: LocalBase | GlobalBase) -> Component:
    e = identity_perm(base.t)
    if isinstance(base, LocalBase):
        return LocalComponent(e, tuple(blk.entries for blk in base.blocks))
    return GlobalComponent(e, tuple(blk.entries for blk in base.blocks))


def graded_order(
    group: FiniteGroup,
    base: LocalBase | GlobalBase,
    components: dict[Perm, Component],
    gamma: dict | None = None,
    validate: bool = True,
) -> GradedOrder:
    order = GradedOrder(group, base, dict(components), dict(gamma or {}))
    e = group.identity
    if e not in order.components:
        order.components[e] = identity_component(base)
    if validate:
        ok, witness = validate_strong_grading(order)
        if not ok:
            raise StrongGradingFailure(*witness)
    return order


# ---------------------------------------------------------------------------
# Strong grading validation


def _block_sizes(base: LocalBase | GlobalBase) -> tuple[int, ...]:
    return tuple(blk.n for blk in base.blocks)


def _scalar_valuation(ring: BaseRing, c: KElem, m: MaximalIdeal) -> int:
    return kelem_valuation(ring, c, m)


def _local_component_product(
    a: LocalComponent, b: LocalComponent, gamma_vals: tuple[int, ...]
) -> LocalComponent:
    perm = tuple(b.perm[a.perm[i]] for i in range(len(a.perm)))
    mats = tuple(
        shift(minplus(a.mats[i], b.mats[a.perm[i]]), gamma_vals[i])
        for i in range(len(a.perm))
    )
    return LocalComponent(perm, mats)


def validate_strong_grading(order: GradedOrder):
    """Exact equality of scaled component products with the component of
    the product grade, for every pair; returns (ok, witness)."""
    group = order.group
    els = group.elements
    t = order.base.t
    if set(order.components) != set(els):
        raise GradedError("component map is not total on the group")
    sizes = _block_sizes(order.base)
    for g, comp in order.components.items():
        if sorted(comp.perm) != list(range(t)):
            raise GradedError("component block permutation is invalid")
        for i in range(t):
            mat = comp.mats[i]
            if len(mat) != sizes[i] or any(len(r) != sizes[comp.perm[i]] for r in mat):
                raise GradedError("component block has wrong shape")
    if order.is_local:
        views = {None: _local_views(order)}
        ring, place = order.base.ring, order.base.place
        places = [place] if place is not None else [None]
        gamma_val = lambda c, m: (
            0 if m is None else _scalar_valuation(ring, c, m)
        )
    else:
        places = list(order.places())
        views = {m: _local_views(order.localize(m)) for m in places}
        ring = order.base.ring
        gamma_val = lambda c, m: _scalar_valuation(ring, c, m)
    for g in els:
        for h in els:
            gh = pmul(g, h)
            gamma = order.gamma_at(g, h)
            for m in places:
                comps = views[m if not order.is_local else None]
                a, b, c = comps[g], comps[h], comps[gh]
                vals = tuple(gamma_val(x, m) for x in gamma)
                prod = _local_component_product(a, b, vals)
                if prod.perm != c.perm:
                    return False, (g, h, "block permutations disagree")
                if prod.mats != c.mats:
                    return False, (g, h, f"component mismatch at {m}")
    return True, None


def _local_views(order: GradedOrder) -> dict[Perm, LocalComponent]:
    assert order.is_local
    return {g: comp for g, comp in order.components.items()}


# ---------------------------------------------------------------------------
# Construction from a Picard element (cyclic grading group)


def construct_from_pic(
    delta: ExponentMatrix | GlobalTiledOrder,
    x: FractionalIdealMatrix | GlobalIdealMatrix,
    n: int | None = None,
    search_bound: int = 64,
) -> GradedOrder:
    """The cyclic graded order with components the powers of x; the wrap
    x**k = c * delta is fixed once, with c the canonical generator."""
    local = isinstance(delta, ExponentMatrix)
    if local:
        if x.order != delta:
            raise GradedError("bimodule is not over the given order")
        ring, place = delta.ring, delta.place
    else:
        if x.order != delta:
            raise GradedError("bimodule is not over the given order")
        ring = delta.ring
    powers = [_one_ideal(delta)]
    wrap: KElem | None = None
    order_found = None
    limit = max(n or 0, search_bound)
    for k in range(1, limit + 1):
        powers.append(_ideal_mul(powers[-1], x))
        c = _scalar_quotient(delta, powers[-1])
        if c is not None:
            order_found, wrap = k, c
            break
    if order_found is None:
        raise NotFiniteOrder(
            f"no power of the bimodule up to {limit} is a scalar multiple of the order"
        )
    if n is None:
        n = order_found
    elif n != order_found:
        if n % order_found != 0:
            raise NotFiniteOrder(
                f"requested order {n} is not a multiple of the true order {order_found}"
            )
        warnings.warn(
            f"requested order {n} exceeds the minimal order {order_found}",
            NonMinimalOrder,
        )
        while len(powers) <= n:
            powers.append(_ideal_mul(powers[-1], x))
        wrap = _scalar_quotient(delta, powers[n])
    group = cyclic_group(n)
    gen = group.generators[0] if n > 1 else group.identity
    grades = [group.identity]
    for _ in range(n - 1):
        grades.append(pmul(grades[-1], gen))
    comps = {grades[i]: _as_component(delta, powers[i]) for i in range(n)}
    gamma = {}
    cinv = (wrap.inverse(),)
    for i in range(n):
        for j in range(n):
            if i + j >= n:
                gamma[(grades[i], grades[j])] = cinv
    base = LocalBase((delta,)) if local else GlobalBase((delta,))
    return graded_order(group, base, comps, gamma)


def _one_ideal(delta):
    if isinstance(delta, ExponentMatrix):
        from .tiled import order_ideal

        return order_ideal(delta)
    from .tiled import global_order_ideal

    return global_order_ideal(delta)


def _ideal_mul(a, b):
    if isinstance(a, FractionalIdealMatrix):
        from .tiled import ideal_multiply

        return ideal_multiply(a, b)
    from .tiled import global_ideal_multiply

    return global_ideal_multiply(a, b)


def _scalar_quotient(delta, power) -> KElem | None:
    """The canonical scalar c with power == c * delta, if one exists."""
    if isinstance(delta, ExponentMatrix):
        s = constant_shift_of(power.entries, delta.entries)
        if s is None:
            return None
        if delta.place is None:
            if s != 0:
                raise GradedError(
                    "scalar wrap with nonzero valuation needs a place context"
                )
            return KONE
        gen = KElem.from_gaussian(delta.place.generator)
        return normalize_scalar(delta.ring or BaseRing("Z"), gen**s)
    # global: per-place constant shifts, then the PID base yields a generator
    shifts: dict[MaximalIdeal, int] = {}
    places = set(delta.support) | set(power.support)
    for m in places:
        s = constant_shift_of(
            global_localize_ideal(power, m).entries, localize(delta, m).entries
        )
        if s is None:
            return None
        if s:
            shifts[m] = s
    _, gen = is_principal(
        FractionalIdealR.from_factors(BaseRing(delta.ring.kind), shifts)
    )
    return gen


def _as_component(delta, ideal) -> Component:
    if isinstance(delta, ExponentMatrix):
        return LocalComponent((0,), (ideal.entries,))
    return GlobalComponent((0,), (ideal.entries,))


# ---------------------------------------------------------------------------
# Crossed products


@dataclass(frozen=True)
class Monomial:
    """An invertible monomial matrix: row k has its single entry at column
    perm[k], with the given exact nonzero scalar."""

    perm: Perm
    scalars: tuple[KElem, ...]

    def compose(self, other: Monomial) -> Monomial:
        perm = tuple(other.perm[self.perm[k]] for k in range(len(self.perm)))
        scalars = tuple(
            self.scalars[k] * other.scalars[self.perm[k]]
            for k in range(len(self.perm))
        )
        return Monomial(perm, scalars)

    @staticmethod
    def identity(n: int) -> Monomial:
        return Monomial(identity_perm(n), tuple(KONE for _ in range(n)))


@dataclass(frozen=True)
class CrossedProductDatum:
    """Action (block permutation plus per-block monomial automorphisms) and
    a central 2-cocycle with unit values."""

    action: Mapping[Perm, tuple[Perm, tuple[Monomial, ...]]]
    cocycle: Mapping[tuple[Perm, Perm], KElem] | None = None

    def tau(self, g: Perm, h: Perm) -> KElem:
        if self.cocycle is None:
            return KONE
        return self.cocycle.get((g, h), KONE)


def coboundary_cocycle(
    group: FiniteGroup, mu: Mapping[Perm, KElem]
) -> dict[tuple[Perm, Perm], KElem]:
    """The 2-cocycle tau(g,h) = mu(g) mu(h) mu(gh)^-1; always satisfies the
    cocycle identity."""
    out = {}
    for g in group.elements:
        for h in group.elements:
            out[(g, h)] = mu.get(g, KONE) * mu.get(h, KONE) * mu.get(pmul(g, h), KONE).inverse()
    return out


def construct_crossed_product(
    base: LocalBase | GlobalBase,
    group: FiniteGroup,
    datum: CrossedProductDatum,
) -> GradedOrder:
    """Components delta * w_g, where w_g is the block-monomial matrix of
    the action; the product bookkeeping carries tau relative to the scalar
    defect of the chosen w's."""
    els = group.elements
    _check_cocycle(group, datum)
    t = base.t
    sizes = _block_sizes(base)
    ws: dict[Perm, _BlockMonomial] = {}
    for g in els:
        if g not in datum.action:
            raise GradedError("action is not defined on every group element")
        bperm, monos = datum.action[g]
        if sorted(bperm) != list(range(t)):
            raise ActionDoesNotNormalize("block permutation invalid")
        for i in range(t):
            if sizes[i] != sizes[bperm[i]]:
                raise ActionDoesNotNormalize(
                    "action maps a block to one of a different size"
                )
            if len(monos[i].perm) != sizes[i]:
                raise ActionDoesNotNormalize("monomial size mismatch")
        ws[g] = _BlockMonomial(bperm, tuple(monos))
    comps = {g: _delta_times_monomial(base, ws[g]) for g in els}
    gamma: dict[tuple[Perm, Perm], tuple[KElem, ...]] = {}
    for g in els:
        for h in els:
            gh = pmul(g, h)
            prod = ws[g].compose(ws[h])
            beta = _central_quotient(prod, ws[gh], sizes)
            if beta is None:
                raise ActionDoesNotNormalize(
                    "action is not a homomorphism up to central scalars"
                )
            tau = datum.tau(g, h)
            gamma[(g, h)] = tuple(tau * b.inverse() for b in beta)
    order = graded_order(group, base, comps, gamma, validate=False)
    ok, witness = validate_strong_grading(order)
    if not ok:
        raise ActionDoesNotNormalize(
            f"action does not normalize the order: failure at {witness[:2]}"
        )
    return order


def _check_cocycle(group: FiniteGroup, datum: CrossedProductDatum) -> None:
    els = group.elements
    for g in els:
        for h in els:
            for k in els:
                lhs = datum.tau(g, h) * datum.tau(pmul(g, h), k)
                rhs = datum.tau(h, k) * datum.tau(g, pmul(h, k))
                if lhs != rhs:
                    raise CocycleViolation(g, h, k)


@dataclass(frozen=True)
class _BlockMonomial:
    block_perm: Perm
    monos: tuple[Monomial, ...]  # monos[i] sits in block position (i, block_perm[i])

    def compose(self, other: _BlockMonomial) -> _BlockMonomial:
        bperm = tuple(
            other.block_perm[self.block_perm[i]] for i in range(len(self.block_perm))
        )
        monos = tuple(
            self.monos[i].compose(other.monos[self.block_perm[i]])
            for i in range(len(self.block_perm))
        )
        return _BlockMonomial(bperm, monos)


def _central_quotient(
    a: _BlockMonomial, b: _BlockMonomial, sizes: tuple[int, ...]
) -> tuple[KElem, ...] | None:
    """Per-block scalars beta with a == beta * b, or None."""
    if a.block_perm != b.block_perm:
        return None
    out = []
    for i in range(len(sizes)):
        ma, mb = a.monos[i], b.monos[i]
        if ma.perm != mb.perm:
            return None
        ratio = ma.scalars[0] / mb.scalars[0]
        for k in range(len(ma.scalars)):
            if ma.scalars[k] != ratio * mb.scalars[k]:
                return None
        out.append(ratio)
    return tuple(out)


def _delta_times_monomial(
    base: LocalBase | GlobalBase, w: _BlockMonomial
) -> Component:
    """The lattice delta * w as a block component."""
    mats = []
    for i in range(base.t):
        mono = w.monos[i]
        inv = [0] * len(mono.perm)
        for k, c in enumerate(mono.perm):
            inv[c] = k
        if isinstance(base, LocalBase):
            blk = base.blocks[i]
            ring, place = blk.ring, blk.place
            n = blk.n
            mat = tuple(
                tuple(
                    blk.entries[a][inv[b]]
                    + (
                        _scalar_valuation(ring, mono.scalars[inv[b]], place)
                        if place is not None
                        else _require_unit(mono.scalars[inv[b]])
                    )
                    for b in range(n)
                )
                for a in range(n)
            )
        else:
            blk = base.blocks[i]
            ring = blk.ring
            n = blk.n
            mat = tuple(
                tuple(
                    blk.entries[a][inv[b]] * _principal_of(ring, mono.scalars[inv[b]])
                    for b in range(n)
                )
                for a in range(n)
            )
        mats.append(mat)
    if isinstance(base, LocalBase):
        return LocalComponent(w.block_perm, tuple(mats))
    return GlobalComponent(w.block_perm, tuple(mats))


def _require_unit(c: KElem) -> int:
    num, den = c.as_int_pair()
    if num.norm() != den * den:
        raise ActionDoesNotNormalize(
            "monomial scalar must be a unit when no place context is given"
        )
    return 0


def _principal_of(ring: BaseRing, c: KElem) -> FractionalIdealR:
    num, den = c.as_int_pair()
    out = FractionalIdealR.principal(ring, num)
    if den != 1:
        out = out * FractionalIdealR.principal(ring, den).inverse()
    return out


# ---------------------------------------------------------------------------
# Recognition and classification


def is_crossed_product(order: GradedOrder) -> tuple[bool, dict[Perm, bool]]:
    """Whether every component is free of rank one as a left module over
    the identity component (prime local case)."""
    if not order.is_prime or not order.is_local:
        raise NotPrimeContext(
            "crossed-product recognition needs a prime identity component at one place"
        )
    delta = order.base.blocks[0]
    if not is_hereditary_local(delta):
        raise NotHereditary("recognition needs a hereditary identity component")
    verdicts = {}
    for g, comp in order.components.items():
        x = FractionalIdealMatrix(delta, comp.mats[0])
        verdicts[g] = is_free_left_module(x)
    return all(verdicts.values()), verdicts


@dataclass(frozen=True)
class InnerClassification:
    subgroup: Subgroup
    inner_elements: tuple[Perm, ...]
    context: str

    @property
    def is_outer(self) -> bool:
        return len(self.inner_elements) == 1

    @property
    def is_inner(self) -> bool:
        return len(self.inner_elements) == len(self.subgroup.elements)


def _component_trivial_local(
    base: LocalBase, comp: LocalComponent
) -> bool:
    if comp.perm != identity_perm(base.t):
        return False
    for blk, mat in zip(base.blocks, comp.mats):
        if constant_shift_of(mat, blk.entries) is None:
            return False
    return True


def component_is_inner(
    order: GradedOrder, g: Perm, place: MaximalIdeal | None = None
) -> bool:
    """Whether the component of g is isomorphic to the identity component
    as a bimodule, at one place or (place=None, global base) everywhere."""
    if order.is_local:
        if place is not None and place != order.base.place:
            raise GradedError("graded order lives at a different place")
        return _component_trivial_local(order.base, order.components[g])
    if place is not None:
        local = order.localize(place)
        return _component_trivial_local(local.base, local.components[g])
    # global: trivial at every place of the support; over the PID bases a
    # consistent family of local shifts always lifts to one global scalar
    return all(component_is_inner(order, g, m) for m in order.places())


def inner_classification(
    order: GradedOrder,
    subgroup: Subgroup,
    place: MaximalIdeal | None = None,
) -> InnerClassification:
    inner = tuple(
        h for h in subgroup.elements if component_is_inner(order, h, place)
    )
    ctx = "global" if (place is None and not order.is_local) else f"at {place or order.base.place}"
    result = InnerClassification(subgroup, inner, ctx)
    closure = {pmul(a, b) for a in inner for b in inner}
    assert closure == set(inner), "inner elements do not form a subgroup"
    return result


# ---------------------------------------------------------------------------
# Corners


def corner_graded_order(order: GradedOrder, indices: tuple[int, ...]) -> GradedOrder:
    """Corner by a diagonal idempotent of a prime local identity component
    (a subset of matrix indices)."""
    if not order.is_prime or not order.is_local:
        raise InvalidIdempotent("index corners apply to prime local graded orders")
    delta = order.base.blocks[0]
    if not indices or any(not 0 <= i < delta.n for i in indices) or len(
        set(indices)
    ) != len(indices):
        raise InvalidIdempotent(f"invalid index subset {indices}")
    sub = tuple(
        tuple(delta.entries[i][j] for j in indices) for i in indices
    )
    new_delta = validate_order(sub, delta.ring, delta.place)
    comps = {}
    for g, comp in order.components.items():
        mat = comp.mats[0]
        comps[g] = LocalComponent(
            (0,), (tuple(tuple(mat[i][j] for j in indices) for i in indices),)
        )
    return graded_order(
        order.group, LocalBase((new_delta,)), comps, dict(order.gamma)
    )


def block_corner_graded_order(
    order: GradedOrder, block: int, subgroup: Subgroup
) -> GradedOrder:
    """Corner by the central idempotent of one prime summand, graded by the
    stabilizer of that summand."""
    t = order.base.t
    if not 0 <= block < t:
        raise InvalidIdempotent(f"no block {block}")
    for h in subgroup.elements:
        if order.components[h].perm[block] != block:
            raise InvalidIdempotent(
                "subgroup does not stabilize the chosen block"
            )
    new_group = FiniteGroup(order.group.degree, subgroup.generators)
    base: LocalBase | GlobalBase
    if order.is_local:
        base = LocalBase((order.base.blocks[block],))
    else:
        base = GlobalBase((order.base.blocks[block],))
    comps = {}
    for h in new_group.elements:
        comp = order.components[h]
        comps[h] = type(comp)((0,), (comp.mats[block],))
    gamma = {}
    for h1 in new_group.elements:
        for h2 in new_group.elements:
            scal = order.gamma_at(h1, h2)[block]
            if scal != KONE:
                gamma[(h1, h2)] = (scal,)
    return graded_order(new_group, base, comps, gamma)


# ---------------------------------------------------------------------------
# The prime-case verdict engine


@dataclass(frozen=True)
class VerdictEntry:
    orbit: int
    prime: int
    place: MaximalIdeal | None
    sylow: Subgroup
    inner_witness: Perm | None


@dataclass(frozen=True)
class HereditaryVerdict:
    hereditary: bool
    delta_hereditary: bool
    breakdown: tuple[VerdictEntry, ...]


def _delta_hereditary(order: GradedOrder) -> bool:
    if order.is_local:
        return all(is_hereditary_local(blk) for blk in order.base.blocks)
    return all(is_hereditary_global(blk)[0] for blk in order.base.blocks)


def _places_containing(order: GradedOrder, p: int) -> list[MaximalIdeal | None]:
    if order.is_local:
        place = order.base.place
        if place is None:
            raise GradedError("verdict needs a place context on the base order")
        return [place] if place.residue_char == p else []
    return list(maximal_ideals_above(order.base.ring, p))


def _group_prime_divisors(n: int) -> list[int]:
    from sympy import factorint

    return sorted(int(p) for p in factorint(n))


def prime_hereditary_verdict(
    order: GradedOrder,
    sylow_choice: Mapping[int, Subgroup] | None = None,
    orbit_index: int = 0,
) -> HereditaryVerdict:
    """Hereditary iff the identity component is hereditary and, at every
    maximal ideal containing a prime divisor p of the group order, the
    chosen p-Sylow subgroup is outer there."""
    if not order.is_prime:
        raise NotPrimeContext("prime verdict needs a prime identity component")
    delta_ok = _delta_hereditary(order)
    breakdown = []
    all_outer = True
    for p in _group_prime_divisors(order.group.order):
        syl = None
        if sylow_choice and p in sylow_choice:
            chosen = sylow_choice[p]
            # a choice made for a larger group (e.g. before passing to an
            # orbit corner) only applies when it lives inside this group
            if set(chosen.elements) <= set(order.group.elements):
                syl = Subgroup(order.group, chosen.generators)
        if syl is None:
            syl = sylow_subgroup(order.group, p)
        for m in _places_containing(order, p):
            cls = inner_classification(
                order, Subgroup(order.group, syl.generators), m
            )
            witness = next(
                (h for h in cls.inner_elements if h != order.group.identity), None
            )
            if witness is not None:
                all_outer = False
            breakdown.append(VerdictEntry(orbit_index, p, m, syl, witness))
    return HereditaryVerdict(delta_ok and all_outer, delta_ok, tuple(breakdown))


def prime_hereditary_at_place(order: GradedOrder, m: MaximalIdeal) -> bool:
    """The completion of the graded order at m is hereditary."""
    if not order.is_prime:
        raise NotPrimeContext("prime verdict needs a prime identity component")
    if order.is_local:
        delta_ok = is_hereditary_local(order.base.blocks[0])
    else:
        delta_ok = is_hereditary_local(localize(order.base.blocks[0], m))
    if not delta_ok:
        return False
    for p in _group_prime_divisors(order.group.order):
        if m.residue_char != p:
            continue
        syl = sylow_subgroup(order.group, p)
        cls = inner_classification(order, Subgroup(order.group, syl.generators), m)
        if not cls.is_outer:
            return False
    return True
