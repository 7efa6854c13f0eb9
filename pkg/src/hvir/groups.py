"""Additive subgroups of the rationals with decidable membership.

Four canonical shapes cover everything this library needs:

* ``Trivial``       -- the zero group,
* ``Cyclic(a)``     -- all integer multiples of a positive rational ``a``,
* ``Supernatural``  -- all ``n/d`` whose denominator's prime powers are
                       bounded by a finite map ``prime -> exponent`` in
                       which at least one exponent is infinite,
* ``FullQ``         -- every rational.

A supernatural map whose exponents are all finite describes the cyclic
group generated by ``1/(prod p**e)`` and is collapsed to that form by the
:func:`supernatural` factory, so equal subgroups always compare equal.

All scalars are exact; floats are rejected everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, inf

__all__ = [
    "SubgroupSpec",
    "Trivial",
    "Cyclic",
    "Supernatural",
    "FullQ",
    "TRIVIAL",
    "FULL_Q",
    "INTEGERS",
    "as_fraction",
    "cyclic",
    "supernatural",
    "qk",
    "contains",
    "subgroup_sum",
    "subgroup_intersect",
    "is_subgroup",
    "rank",
    "finitely_generated",
    "normalize_alpha",
]


def as_fraction(value):
    """Coerce an int or Fraction to Fraction; reject anything inexact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError("expected an exact rational, got %r" % (value,))


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _factorint(n):
    """Prime factorization by trial division; denominators here are small."""
    factors = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


class SubgroupSpec:
    """Common base for the four subgroup shapes."""

    __slots__ = ()


@dataclass(frozen=True)
class Trivial(SubgroupSpec):
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Cyclic(SubgroupSpec):
    generator: Fraction

    def __post_init__(self):
        gen = as_fraction(self.generator)
        if gen <= 0:
            raise ValueError("cyclic generator must be positive")
        object.__setattr__(self, "generator", gen)

    def __str__(self):
        return "cyclic:%s" % self.generator


@dataclass(frozen=True)
class Supernatural(SubgroupSpec):
    # ((prime, exponent), ...) sorted by prime; exponent is a positive int
    # or math.inf, and at least one exponent is infinite (otherwise the
    # group is cyclic and must be built through the factory below).
    exponents: tuple

    def __post_init__(self):
        items = tuple(self.exponents)
        if not items:
            raise ValueError("supernatural spec needs at least one prime")
        primes = [p for p, _ in items]
        if primes != sorted(set(primes)):
            raise ValueError("supernatural primes must be distinct and sorted")
        for p, e in items:
            if not _is_prime(p):
                raise ValueError("%r is not prime" % (p,))
            if e != inf and not (isinstance(e, int) and e >= 1):
                raise ValueError("exponent for %d must be a positive integer or inf" % p)
        if all(e != inf for _, e in items):
            raise ValueError("all-finite exponent maps are cyclic; use supernatural()")
        object.__setattr__(self, "exponents", items)

    def exponent_map(self):
        return dict(self.exponents)

    def __str__(self):
        parts = ["%d^%s" % (p, "inf" if e == inf else e) for p, e in self.exponents]
        return "sn:" + ",".join(parts)


@dataclass(frozen=True)
class FullQ(SubgroupSpec):
    def __str__(self):
        return "Q"


TRIVIAL = Trivial()
FULL_Q = FullQ()


def cyclic(generator):
    return Cyclic(as_fraction(generator))


def supernatural(exponents):
    """Build the subgroup of rationals whose denominators are bounded by
    the given prime-exponent map, collapsing all-finite maps to cyclic form."""
    items = sorted(dict(exponents).items())
    if any(e == inf for _, e in items):
        return Supernatural(tuple(items))
    denom = 1
    for p, e in items:
        if not _is_prime(p):
            raise ValueError("%r is not prime" % (p,))
        if not (isinstance(e, int) and e >= 1):
            raise ValueError("exponent for %d must be a positive integer or inf" % p)
        denom *= p ** e
    return Cyclic(Fraction(1, denom))


def qk(k):
    """The subgroup {n/k! : n integer}, written qk:<k> in group specs."""
    if not isinstance(k, int) or k < 0:
        raise ValueError("qk index must be a non-negative integer")
    return Cyclic(Fraction(1, factorial(k)))


INTEGERS = qk(0)


def contains(group, q):
    """Exact membership test for each subgroup shape."""
    q = as_fraction(q)
    if isinstance(group, Trivial):
        return q == 0
    if isinstance(group, Cyclic):
        return (q / group.generator).denominator == 1
    if isinstance(group, Supernatural):
        den = q.denominator
        for p, e in group.exponents:
            count = 0
            while den % p == 0:
                den //= p
                count += 1
            if e != inf and count > e:
                return False
        return den == 1
    if isinstance(group, FullQ):
        return True
    raise TypeError("not a subgroup spec: %r" % (group,))


def _profile(group):
    """Lower bounds on p-adic valuations of the nonzero elements.

    Primes absent from the map are bounded by 0; a bound of -inf means the
    denominator exponent at that prime is unrestricted.
    """
    if isinstance(group, Cyclic):
        a = group.generator
        prof = dict(_factorint(a.numerator))
        for p, e in _factorint(a.denominator).items():
            prof[p] = -e
        return prof
    if isinstance(group, Supernatural):
        return {p: (-inf if e == inf else -e) for p, e in group.exponents}
    raise TypeError("no valuation profile for %r" % (group,))


def _from_profile(profile):
    bounds = {p: b for p, b in profile.items() if b != 0}
    if all(b != -inf for b in bounds.values()):
        gen = Fraction(1)
        for p, b in bounds.items():
            gen *= Fraction(p) ** b
        return Cyclic(gen)
    # a bound of -inf only survives when both operands allow it, and then
    # every other bound is <= 0, so the supernatural form is always legal
    assert all(b <= 0 for b in bounds.values())
    return supernatural({p: (inf if b == -inf else -b) for p, b in bounds.items()})


def subgroup_sum(g, h):
    """Smallest subgroup containing both arguments.

    On cyclic groups this is the rational gcd of the generators; in
    valuation terms it is the pointwise minimum of the two profiles.
    """
    if isinstance(g, FullQ) or isinstance(h, FullQ):
        return FULL_Q
    if isinstance(g, Trivial):
        return h
    if isinstance(h, Trivial):
        return g
    pg, ph = _profile(g), _profile(h)
    merged = {p: min(pg.get(p, 0), ph.get(p, 0)) for p in set(pg) | set(ph)}
    return _from_profile(merged)


def subgroup_intersect(g, h):
    """Set intersection: rational lcm on cyclic generators, pointwise
    maximum of the valuation profiles in general."""
    if isinstance(g, Trivial) or isinstance(h, Trivial):
        return TRIVIAL
    if isinstance(g, FullQ):
        return h
    if isinstance(h, FullQ):
        return g
    pg, ph = _profile(g), _profile(h)
    merged = {p: max(pg.get(p, 0), ph.get(p, 0)) for p in set(pg) | set(ph)}
    return _from_profile(merged)


def is_subgroup(inner, outer):
    """Whether every element of ``inner`` lies in ``outer``."""
    if isinstance(inner, Trivial) or isinstance(outer, FullQ):
        return True
    if isinstance(inner, Cyclic):
        return contains(outer, inner.generator)
    if isinstance(outer, (Trivial, Cyclic)):
        return False  # inner is infinitely generated here
    if isinstance(inner, FullQ):
        return False  # outer is supernatural, so some prime is capped
    oe = outer.exponent_map()
    return all(e <= oe.get(p, 0) for p, e in inner.exponents)


def rank(group):
    """0 for the zero group, 1 otherwise: any two nonzero rationals are
    integrally dependent, so no subgroup of Q exceeds rank 1."""
    return 0 if isinstance(group, Trivial) else 1


def finitely_generated(group):
    if isinstance(group, (Trivial, Cyclic)):
        return True
    if isinstance(group, (Supernatural, FullQ)):
        return False
    raise TypeError("not a subgroup spec: %r" % (group,))


def normalize_alpha(alpha, group):
    """Reduce a weight offset to 0 when it lies in the index group,
    leaving it untouched otherwise."""
    alpha = as_fraction(alpha)
    return Fraction(0) if contains(group, alpha) else alpha
