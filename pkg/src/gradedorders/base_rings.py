"""Exact arithmetic over Z and Z[i]: Gaussian integers, maximal ideals,
prime splitting, valuations and fractional ideals.

Both supported base rings are principal ideal domains.  Ideals are kept in
factored form (maximal ideal -> exponent) and can always produce a
generator.  Generators in Z[i] are normalized to the unique associate in
the first quadrant (re > 0, im >= 0) so equality tests are deterministic.

Completions never appear as data: a "localized" ring is the global ring
together with a distinguished maximal ideal, and every downstream
computation uses only valuations and residue fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, sqrt_mod

RING_Z = "Z"
RING_ZI = "Zi"


class RingError(ValueError):
    pass


class NotPrime(RingError):
    pass


class NotInRing(RingError):
    pass


# ---------------------------------------------------------------------------
# Gaussian integers


@dataclass(frozen=True)
class GaussianInt:
    re: int
    im: int

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conj(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __divmod__(self, other: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
        """Euclidean division with remainder of norm < norm(other)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Gaussian integer")
        d = other.norm()
        num = self * other.conj()
        q = GaussianInt(_round_div(num.re, d), _round_div(num.im, d))
        return q, self - q * other

    def divides(self, other: GaussianInt) -> bool:
        _, r = divmod(other, self)
        return r.is_zero()

    def exact_div(self, other: GaussianInt) -> GaussianInt:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise RingError(f"{other} does not divide {self}")
        return q

    def normalized(self) -> GaussianInt:
        """The first-quadrant associate (re > 0, im >= 0); 0 stays 0."""
        z = self
        for _ in range(4):
            if z.re > 0 and z.im >= 0:
                return z
            z = GaussianInt(-z.im, z.re)  # multiply by i
        return self  # zero

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        return f"{self.re}{self.im:+}i"

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"


def _round_div(a: int, b: int) -> int:
    """Round a/b to the nearest integer (ties go up)."""
    return (2 * a + b) // (2 * b)


_GI_RE = None


def parse_gaussian(s: str) -> GaussianInt:
    """Parse strings like "5", "1+2i", "-3i", "i", "2-i"."""
    import re as _re

    s = s.strip().replace(" ", "")
    m = _re.fullmatch(r"(?:([+-]?\d+)(?!\d*i))?(([+-]?\d*)i)?", s)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise RingError(f"cannot parse Gaussian integer: {s!r}")
    re_part = int(m.group(1)) if m.group(1) else 0
    im_part = 0
    if m.group(2) is not None:
        raw = m.group(3)
        if raw in ("", "+"):
            im_part = 1
        elif raw == "-":
            im_part = -1
        else:
            im_part = int(raw)
    return GaussianInt(re_part, im_part)


def gaussian_gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    while not b.is_zero():
        a, b = b, divmod(a, b)[1]
    return a.normalized()


# ---------------------------------------------------------------------------
# Elements of the quotient field K (= Q or Q(i))


@dataclass(frozen=True)
class KElem:
    """An exact element of the quotient field, stored as re + im*i with
    rational coordinates.  Elements over base Z simply have im == 0."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re, im=0) -> KElem:
        return KElem(Fraction(re), Fraction(im))

    @staticmethod
    def from_gaussian(z: GaussianInt) -> KElem:
        return KElem(Fraction(z.re), Fraction(z.im))

    def __add__(self, other: KElem) -> KElem:
        return KElem(self.re + other.re, self.im + other.im)

    def __sub__(self, other: KElem) -> KElem:
        return KElem(self.re - other.re, self.im - other.im)

    def __neg__(self) -> KElem:
        return KElem(-self.re, -self.im)

    def __mul__(self, other: KElem) -> KElem:
        return KElem(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inverse(self) -> KElem:
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return KElem(self.re / n, -self.im / n)

    def __truediv__(self, other: KElem) -> KElem:
        return self * other.inverse()

    def __pow__(self, k: int) -> KElem:
        if k < 0:
            return self.inverse() ** (-k)
        out = KONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def as_int_pair(self) -> tuple[GaussianInt, int]:
        """Write the element as (numerator, positive integer denominator)."""
        den = self.re.denominator * self.im.denominator
        g = GaussianInt(int(self.re * den), int(self.im * den))
        from math import gcd

        c = gcd(gcd(abs(g.re), abs(g.im)), den)
        if c > 1:
            g = GaussianInt(g.re // c, g.im // c)
            den //= c
        return g, den

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


KONE = KElem(Fraction(1), Fraction(0))
KZERO = KElem(Fraction(0), Fraction(0))


# ---------------------------------------------------------------------------
# Rings and maximal ideals


@dataclass(frozen=True)
class MaximalIdeal:
    """A maximal ideal of Z or Z[i], stored by its normalized prime
    generator together with residue data (p, q = p**f)."""

    ring_kind: str
    gen_re: int
    gen_im: int
    residue_char: int
    residue_size: int

    @property
    def generator(self) -> GaussianInt:
        return GaussianInt(self.gen_re, self.gen_im)

    @property
    def residue_degree(self) -> int:
        return 1 if self.residue_size == self.residue_char else 2

    def __str__(self) -> str:
        if self.ring_kind == RING_Z:
            return f"({self.gen_re})"
        return f"({self.generator})"

    def __repr__(self) -> str:
        return f"MaximalIdeal({self.ring_kind}, {self.generator})"


@dataclass(frozen=True)
class BaseRing:
    """Z or Z[i]; the localized variant carries a distinguished maximal
    ideal, and only its valuation is ever used."""

    kind: str
    localized_at: MaximalIdeal | None = None

    def localize(self, m: MaximalIdeal) -> BaseRing:
        if m.ring_kind != self.kind:
            raise RingError("maximal ideal belongs to a different ring")
        return BaseRing(self.kind, m)

    def __str__(self) -> str:
        name = "Z" if self.kind == RING_Z else "Z[i]"
        if self.localized_at is not None:
            return f"{name} at {self.localized_at}"
        return name


ZZ = BaseRing(RING_Z)
ZI = BaseRing(RING_ZI)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = factorint(p)
    return len(f) == 1 and list(f.values()) == [1]


@lru_cache(maxsize=None)
def _factor_prime_cached(kind: str, p: int) -> tuple[tuple[MaximalIdeal, int], ...]:
    if kind == RING_Z:
        return ((MaximalIdeal(RING_Z, p, 0, p, p), 1),)
    if p == 2:
        return ((MaximalIdeal(RING_ZI, 1, 1, 2, 2), 2),)
    if p % 4 == 3:
        return ((MaximalIdeal(RING_ZI, p, 0, p, p * p), 1),)
    # split case: p = (a+bi)(a-bi)
    r = sqrt_mod(-1, p)
    g = gaussian_gcd(GaussianInt(p, 0), GaussianInt(r, 1))
    g2 = g.conj().normalized()
    ms = sorted(
        [g, g2], key=lambda z: (z.re, z.im)
    )
    return tuple(
        (MaximalIdeal(RING_ZI, z.re, z.im, p, p), 1) for z in ms
    )


def factor_rational_prime(ring: BaseRing, p: int) -> list[tuple[MaximalIdeal, int]]:
    """Maximal ideals above the rational prime p, with ramification indices."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not a rational prime")
    return list(_factor_prime_cached(ring.kind, p))


def maximal_ideals_above(ring: BaseRing, p: int) -> list[MaximalIdeal]:
    return [m for m, _ in factor_rational_prime(ring, p)]


def element_valuation(ring_kind: str, z: GaussianInt, m: MaximalIdeal) -> int:
    """Exponent of m in the factorization of the nonzero ring element z."""
    if z.is_zero():
        raise RingError("valuation of zero")
    v = 0
    if ring_kind == RING_Z:
        a = abs(z.re)
        p = m.gen_re
        while a % p == 0:
            a //= p
            v += 1
        return v
    g = m.generator
    while g.divides(z):
        z = z.exact_div(g)
        v += 1
    return v


def kelem_valuation(ring: BaseRing, x: KElem, m: MaximalIdeal) -> int:
    """Valuation at m of a nonzero element of the quotient field."""
    if x.is_zero():
        raise RingError("valuation of zero")
    num, den = x.as_int_pair()
    if ring.kind == RING_Z and num.im != 0:
        raise NotInRing("element has nonzero imaginary part over Z")
    return element_valuation(ring.kind, num, m) - element_valuation(
        ring.kind, GaussianInt(den, 0), m
    )


# ---------------------------------------------------------------------------
# Fractional ideals in factored form


@dataclass(frozen=True)
class FractionalIdealR:
    """A fractional ideal, as a finite product of maximal-ideal powers.
    Exponents in the stored factorization are nonzero."""

    ring_kind: str
    factors: tuple[tuple[MaximalIdeal, int], ...]  # sorted, exponents != 0

    @staticmethod
    def one(ring: BaseRing) -> FractionalIdealR:
        return FractionalIdealR(ring.kind, ())

    @staticmethod
    def from_factors(
        ring: BaseRing, factors: dict[MaximalIdeal, int]
    ) -> FractionalIdealR:
        items = tuple(
            sorted(
                ((m, e) for m, e in factors.items() if e != 0),
                key=lambda t: (t[0].residue_char, t[0].gen_re, t[0].gen_im),
            )
        )
        return FractionalIdealR(ring.kind, items)

    @staticmethod
    def principal(ring: BaseRing, gen: int | GaussianInt) -> FractionalIdealR:
        z = GaussianInt(gen, 0) if isinstance(gen, int) else gen
        if z.is_zero():
            raise RingError("zero generator")
        if ring.kind == RING_Z and z.im != 0:
            raise NotInRing("Gaussian generator over Z")
        fac: dict[MaximalIdeal, int] = {}
        for p, _ in factorint(z.norm()).items():
            for m in maximal_ideals_above(ring, int(p)):
                e = element_valuation(ring.kind, z, m)
                if e:
                    fac[m] = e
        return FractionalIdealR.from_factors(ring, fac)

    def as_dict(self) -> dict[MaximalIdeal, int]:
        return dict(self.factors)

    def __mul__(self, other: FractionalIdealR) -> FractionalIdealR:
        if other.ring_kind != self.ring_kind:
            raise RingError("ideals over different rings")
        fac = self.as_dict()
        for m, e in other.factors:
            fac[m] = fac.get(m, 0) + e
        return FractionalIdealR.from_factors(BaseRing(self.ring_kind), fac)

    def __pow__(self, k: int) -> FractionalIdealR:
        return FractionalIdealR.from_factors(
            BaseRing(self.ring_kind), {m: e * k for m, e in self.factors}
        )

    def __add__(self, other: FractionalIdealR) -> FractionalIdealR:
        """Ideal sum: placewise minimum of valuations (missing places are 0)."""
        if other.ring_kind != self.ring_kind:
            raise RingError("ideals over different rings")
        a, b = self.as_dict(), other.as_dict()
        fac = {m: min(a.get(m, 0), b.get(m, 0)) for m in set(a) | set(b)}
        return FractionalIdealR.from_factors(BaseRing(self.ring_kind), fac)

    def inverse(self) -> FractionalIdealR:
        return self ** (-1)

    def support(self) -> list[MaximalIdeal]:
        return [m for m, _ in self.factors]

    def is_integral(self) -> bool:
        return all(e > 0 for _, e in self.factors)


def valuation(ideal: FractionalIdealR, m: MaximalIdeal) -> int:
    """Exponent of m in the factorization of the fractional ideal."""
    return ideal.as_dict().get(m, 0)


def is_principal(ideal: FractionalIdealR) -> tuple[bool, KElem]:
    """Both supported rings are PIDs, so this always succeeds; returns the
    normalized generator as a quotient-field element."""
    gen = KONE
    for m, e in ideal.factors:
        gen = gen * (KElem.from_gaussian(m.generator) ** e)
    return True, normalize_scalar(BaseRing(ideal.ring_kind), gen)


def normalize_scalar(ring: BaseRing, x: KElem) -> KElem:
    """Canonical associate: positive over Q, first-quadrant over Q(i)."""
    if x.is_zero():
        return x
    if ring.kind == RING_Z:
        return KElem(abs(x.re), Fraction(0)) if x.im == 0 else x
    z = x
    for _ in range(4):
        if z.re > 0 and z.im >= 0:
            return z
        z = z * KElem.of(0, 1)
    return x


def ideal_from_json(ring: BaseRing, obj) -> FractionalIdealR:
    """Parse {"gen": "..."} or {"factors": [["gen", e], ...]}."""
    if not isinstance(obj, dict):
        raise RingError(f"ideal must be an object, got {obj!r}")
    if "gen" in obj:
        return FractionalIdealR.principal(ring, _parse_elem(ring, obj["gen"]))
    if "factors" in obj:
        out = FractionalIdealR.one(ring)
        for gen, e in obj["factors"]:
            out = out * (FractionalIdealR.principal(ring, _parse_elem(ring, gen)) ** int(e))
        return out
    raise RingError("ideal object needs 'gen' or 'factors'")


def ideal_to_json(ideal: FractionalIdealR) -> dict:
    return {"factors": [[str(m.generator), e] for m, e in ideal.factors]}


def _parse_elem(ring: BaseRing, s) -> GaussianInt:
    if isinstance(s, int):
        return GaussianInt(s, 0)
    z = parse_gaussian(str(s))
    if ring.kind == RING_Z and z.im != 0:
        raise NotInRing(f"{s!r} is not an element of Z")
    return z
