"""Sparse elements of the rational Heisenberg-Virasoro algebras.

The algebra indexed by an additive subgroup G of the rationals has basis
symbols ``d(g)`` and ``I(g)`` for g in G together with three central
elements ``CD``, ``CDI`` and ``CI``, and bracket

    [d(g), d(h)] = (h - g) d(g+h)  +  delta(g, -h) (g^3 - g)/12 CD
    [d(g), I(h)] = h I(g+h)        +  delta(g, -h) (g^2 + g)    CDI
    [I(g), I(h)] = g delta(g, -h) CI

with CD, CDI, CI bracketing to zero against everything.  Keeping only the
``d`` and ``CD`` symbols gives the Virasoro subalgebra; no separate code
path is needed for it.

Elements are sparse maps from basis symbols to exact rational
coefficients; zero coefficients are never stored, so equality is
structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import CentralTermError, IndexDomainError
from .groups import SubgroupSpec, as_fraction, contains

__all__ = [
    "BasisKey",
    "d",
    "I",
    "CD",
    "CDI",
    "CI",
    "AlgebraElement",
    "ZERO",
    "bracket",
    "jacobiator",
    "weight_components",
    "in_subalgebra",
    "RescalingMap",
    "CENTERLESS",
    "EXACT_CENTRAL",
    "apply_phi",
]

_CENTRAL_KINDS = ("CD", "CDI", "CI")
# storage order: central symbols, then d(g) by index, then I(g) by index
_CANONICAL_RANK = {"CD": 0, "CDI": 1, "CI": 2, "d": 3, "I": 4}
# print order: d(g), I(g), then central symbols
_DISPLAY_RANK = {"d": 0, "I": 1, "CD": 2, "CDI": 3, "CI": 4}


@dataclass(frozen=True)
class BasisKey:
    kind: str
    index: Fraction = None

    def __post_init__(self):
        if self.kind in _CENTRAL_KINDS:
            if self.index is not None:
                raise ValueError("central symbols carry no index")
        elif self.kind in ("d", "I"):
            object.__setattr__(self, "index", as_fraction(self.index))
        else:
            raise ValueError("unknown basis symbol kind %r" % (self.kind,))

    @property
    def is_central(self):
        return self.index is None

    def _canonical_key(self):
        return (_CANONICAL_RANK[self.kind], self.index or 0)

    def _display_key(self):
        return (_DISPLAY_RANK[self.kind], self.index or 0)

    def __str__(self):
        if self.is_central:
            return self.kind
        return "%s(%s)" % (self.kind, self.index)


def d(g):
    return BasisKey("d", as_fraction(g))


def I(g):  # noqa: E743 - matches the element grammar atom I(...)
    return BasisKey("I", as_fraction(g))


CD = BasisKey("CD")
CDI = BasisKey("CDI")
CI = BasisKey("CI")


class AlgebraElement:
    """Finite linear combination of basis symbols, stored without zeros
    and in a fixed canonical key order."""

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc = {}
        for key, coeff in items:
            if not isinstance(key, BasisKey):
                raise TypeError("term keys must be BasisKey, got %r" % (key,))
            coeff = as_fraction(coeff)
            if coeff == 0:
                continue
            total = acc.get(key, 0) + coeff
            if total == 0:
                acc.pop(key, None)
            else:
                acc[key] = total
        ordered = {}
        for key in sorted(acc, key=BasisKey._canonical_key):
            ordered[key] = acc[key]
        self._terms = ordered

    @classmethod
    def basis(cls, key, coeff=1):
        return cls([(key, coeff)])

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, key):
        return self._terms.get(key, Fraction(0))

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, 0) + coeff
        return AlgebraElement(merged)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, 0) - coeff
        return AlgebraElement(merged)

    def __neg__(self):
        return AlgebraElement({k: -c for k, c in self._terms.items()})

    def __mul__(self, scalar):
        scalar = as_fraction(scalar)
        return AlgebraElement({k: scalar * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def central_part(self):
        return AlgebraElement({k: c for k, c in self._terms.items() if k.is_central})

    def without_central(self):
        return AlgebraElement({k: c for k, c in self._terms.items() if not k.is_central})

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for key in sorted(self._terms, key=BasisKey._display_key):
            coeff = self._terms[key]
            mag = -coeff if coeff < 0 else coeff
            body = str(key) if mag == 1 else "%s*%s" % (mag, key)
            if not parts:
                parts.append("-" + body if coeff < 0 else body)
            else:
                parts.append((" - " if coeff < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return "AlgebraElement(%s)" % self


ZERO = AlgebraElement()


def _as_element(x):
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, BasisKey):
        return AlgebraElement.basis(x)
    raise TypeError("expected an algebra element, got %r" % (x,))


def _basis_bracket(a, b):
    """Bracket of two non-central basis symbols as (key, coefficient) pairs."""
    g, h = a.index, b.index
    if a.kind == "d" and b.kind == "d":
        out = []
        if g != h:
            out.append((d(g + h), h - g))
        if g == -h:
            c = (g * g * g - g) / 12
            if c:
                out.append((CD, c))
        return out
    if a.kind == "d" and b.kind == "I":
        out = []
        if h:
            out.append((I(g + h), h))
        if g == -h:
            c = g * g + g
            if c:
                out.append((CDI, c))
        return out
    if a.kind == "I" and b.kind == "d":
        return [(key, -coeff) for key, coeff in _basis_bracket(b, a)]
    # I against I
    if g == -h and g:
        return [(CI, g)]
    return []


def bracket(x, y):
    """Bilinear extension of the basis bracket; central terms die."""
    x = _as_element(x)
    y = _as_element(y)
    acc = {}
    for k1, c1 in x._terms.items():
        if k1.is_central:
            continue
        for k2, c2 in y._terms.items():
            if k2.is_central:
                continue
            scale = c1 * c2
            for key, coeff in _basis_bracket(k1, k2):
                acc[key] = acc.get(key, 0) + scale * coeff
    return AlgebraElement(acc)


def jacobiator(x, y, z):
    """[x,[y,z]] + [y,[z,x]] + [z,[x,y]]; zero for every input."""
    return bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))


def weight_components(x):
    """Split an element into homogeneous pieces keyed by weight.

    ``d(g)`` and ``I(g)`` sit in weight g and central symbols in weight 0,
    so each component c at weight q satisfies bracket(d(0), c) == q*c.
    """
    x = _as_element(x)
    buckets = {}
    for key, coeff in x._terms.items():
        weight = Fraction(0) if key.is_central else key.index
        buckets.setdefault(weight, []).append((key, coeff))
    return {w: AlgebraElement(items) for w, items in sorted(buckets.items())}


def in_subalgebra(x, group):
    """Whether every d/I index of ``x`` lies in ``group``.

    Central symbols belong to every subalgebra in the family.
    """
    if not isinstance(group, SubgroupSpec):
        raise TypeError("expected a subgroup spec, got %r" % (group,))
    x = _as_element(x)
    return all(key.is_central or contains(group, key.index) for key in x._terms)


CENTERLESS = "centerless"
EXACT_CENTRAL = "exact"


@dataclass(frozen=True)
class RescalingMap:
    """Identification of the integer-indexed algebra with the one indexed
    by multiples of 1/m!, sending d(n) to m!*d(n/m!) and I(n) to
    m!*I(n/m!).

    The bare index rescaling fails to match the central cocycles, so two
    variants are provided: ``exact`` adds the unique central corrections
    that make the map a Lie homomorphism on the nose, while
    ``centerless`` applies the rescaling verbatim and is undefined on
    central elements (it is a homomorphism modulo the center).
    """

    m: int
    variant: str = EXACT_CENTRAL

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError("rescaling order must be a positive integer")
        if self.variant not in (CENTERLESS, EXACT_CENTRAL):
            raise ValueError("variant must be %r or %r" % (EXACT_CENTRAL, CENTERLESS))

    @property
    def scale(self):
        return Fraction(factorial(self.m))


def apply_phi(rescaling, x):
    """Apply a rescaling map to an integer-indexed element.

    Exact-central corrections: d(0) picks up (M^2-1)/(24M) CD and I(0)
    picks up (1-M) CDI with M = m!, while CD, CDI, CI map to CD/M, CDI
    and M*CI respectively.  These are the unique coefficients for which
    the rescaled bracket matches the bracket of the rescaled arguments,
    which the test suite checks exhaustively on basis pairs.
    """
    x = _as_element(x)
    M = rescaling.scale
    exact = rescaling.variant == EXACT_CENTRAL
    acc = {}

    def add(key, coeff):
        acc[key] = acc.get(key, 0) + coeff

    for key, coeff in x._terms.items():
        if key.is_central:
            if not exact:
                raise CentralTermError(
                    "the centerless rescaling is undefined on central elements"
                )
            if key.kind == "CD":
                add(CD, coeff / M)
            elif key.kind == "CDI":
                add(CDI, coeff)
            else:
                add(CI, coeff * M)
            continue
        n = key.index
        if n.denominator != 1:
            raise IndexDomainError(
                "rescaling domain is integer indices, got %s" % n
            )
        if key.kind == "d":
            add(d(n / M), coeff * M)
            if exact and n == 0:
                add(CD, coeff * (M * M - 1) / (24 * M))
        else:
            add(I(n / M), coeff * M)
            if exact and n == 0:
                add(CDI, coeff * (1 - M))
    return AlgebraElement(acc)
