"""Weight modules with one-dimensional weight spaces.

``ModuleParams(alpha, beta, f, group)`` names the module with basis
vectors ``v(h)`` for h in the index group and actions

    d(g) . v(h) = (alpha + h + g*beta) v(g+h)
    I(g) . v(h) = f v(g+h)
    CD = CDI = CI = 0 on everything.

Shifting alpha by a group element gives an isomorphic module, so alpha
is reduced to 0 at construction whenever it lies in the group.  After
that reduction the module is reducible exactly when f == 0, alpha == 0
and beta is 0 or 1; these two reducible points and the isomorphism rules
between irreducible subquotients are what :func:`classify` and
:func:`iso_check` encode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import _as_element
from .errors import GroupMismatchError, SubalgebraError
from .groups import (
    SubgroupSpec,
    Trivial,
    as_fraction,
    contains,
    normalize_alpha,
    qk,
)

__all__ = [
    "ModuleParams",
    "WeightVector",
    "basis_vector",
    "act",
    "act_word",
    "Classification",
    "VERDICT_IRREDUCIBLE",
    "VERDICT_TRIVIAL_SUB",
    "VERDICT_CODIM_ONE",
    "classify",
    "IndexPredicate",
    "submodule_basis",
    "iso_check",
    "pullback_params",
]


@dataclass(frozen=True)
class ModuleParams:
    alpha: Fraction
    beta: Fraction
    f: Fraction
    group: SubgroupSpec

    def __post_init__(self):
        if not isinstance(self.group, SubgroupSpec):
            raise TypeError("group must be a subgroup spec")
        if isinstance(self.group, Trivial):
            raise ValueError("module index group must be nonzero")
        object.__setattr__(self, "alpha", normalize_alpha(self.alpha, self.group))
        object.__setattr__(self, "beta", as_fraction(self.beta))
        object.__setattr__(self, "f", as_fraction(self.f))

    def __str__(self):
        return "%s,%s,%s@%s" % (self.alpha, self.beta, self.f, self.group)


class WeightVector:
    """Sparse vector over the module's basis indices.

    The basis vector at index q is a d(0)-eigenvector with eigenvalue
    alpha + q; entries with zero coefficient are never stored.
    """

    __slots__ = ("params", "_entries")

    def __init__(self, params, entries=(), _trusted=False):
        if not isinstance(params, ModuleParams):
            raise TypeError("params must be ModuleParams")
        items = entries.items() if isinstance(entries, dict) else entries
        acc = {}
        for index, coeff in items:
            index = as_fraction(index)
            coeff = as_fraction(coeff)
            if coeff == 0:
                continue
            if not _trusted and not contains(params.group, index):
                raise SubalgebraError(
                    "index %s lies outside the module's group %s" % (index, params.group)
                )
            total = acc.get(index, 0) + coeff
            if total == 0:
                acc.pop(index, None)
            else:
                acc[index] = total
        self.params = params
        self._entries = {q: acc[q] for q in sorted(acc)}

    @classmethod
    def _raw(cls, params, entries):
        # internal fast path: entries are index->coefficient Fractions with
        # indices already known to lie in the group; zeros are pruned here
        self = object.__new__(cls)
        self.params = params
        self._entries = {q: entries[q] for q in sorted(entries) if entries[q] != 0}
        return self

    @property
    def entries(self):
        return dict(self._entries)

    def coefficient(self, index):
        return self._entries.get(as_fraction(index), Fraction(0))

    def is_zero(self):
        return not self._entries

    def __bool__(self):
        return bool(self._entries)

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        if self.params is not other.params and self.params != other.params:
            return False
        return self._entries == other._entries

    def __add__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        if self.params is not other.params and self.params != other.params:
            raise GroupMismatchError("cannot add vectors of different modules")
        merged = dict(self._entries)
        for q, c in other._entries.items():
            merged[q] = merged.get(q, 0) + c
        return WeightVector._raw(self.params, merged)

    def __sub__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        if self.params is not other.params and self.params != other.params:
            raise GroupMismatchError("cannot subtract vectors of different modules")
        merged = dict(self._entries)
        for q, c in other._entries.items():
            merged[q] = merged.get(q, 0) - c
        return WeightVector._raw(self.params, merged)

    def __neg__(self):
        return WeightVector._raw(self.params, {q: -c for q, c in self._entries.items()})

    def __mul__(self, scalar):
        scalar = as_fraction(scalar)
        return WeightVector._raw(
            self.params, {q: scalar * c for q, c in self._entries.items()}
        )

    __rmul__ = __mul__

    def __str__(self):
        if not self._entries:
            return "0"
        parts = []
        for q, coeff in self._entries.items():
            mag = -coeff if coeff < 0 else coeff
            body = "v(%s)" % q if mag == 1 else "%s*v(%s)" % (mag, q)
            if not parts:
                parts.append("-" + body if coeff < 0 else body)
            else:
                parts.append((" - " if coeff < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return "WeightVector(%s | %s)" % (self, self.params)


def basis_vector(params, index):
    return WeightVector(params, {as_fraction(index): Fraction(1)})


def act(params, x, v):
    """Exact action of an algebra element on a weight vector.

    Every d/I index of ``x`` must lie in the module's group; central
    symbols act as zero.  The result lives in the full module, with no
    window truncation.
    """
    x = _as_element(x)
    if v.params is not params and v.params != params:
        raise GroupMismatchError("vector belongs to %s, not %s" % (v.params, params))
    group = params.group
    alpha, beta, f = params.alpha, params.beta, params.f
    acc = {}
    for key, c in x._terms.items():
        g = key.index
        if g is None:
            continue
        if not contains(group, g):
            raise SubalgebraError(
                "element %s has indices outside the group %s" % (x, group)
            )
        if key.kind == "d":
            for h, cv in v._entries.items():
                w = alpha + h + g * beta
                if w:
                    t = g + h
                    acc[t] = acc.get(t, 0) + c * cv * w
        elif f:
            for h, cv in v._entries.items():
                t = g + h
                acc[t] = acc.get(t, 0) + c * cv * f
    return WeightVector._raw(params, acc)


def act_word(params, word, v):
    """Compose actions right to left: the last factor acts first, so the
    word behaves like a product in the enveloping algebra."""
    for x in reversed(list(word)):
        v = act(params, x, v)
    return v


VERDICT_IRREDUCIBLE = "Irreducible"
VERDICT_TRIVIAL_SUB = "ReducibleTrivialSub"
VERDICT_CODIM_ONE = "ReducibleCodimOne"


@dataclass(frozen=True)
class Classification:
    verdict: str
    subquotient_note: str


def classify(params):
    """Reducibility verdict; alpha is already normalized by construction,
    so the test is a literal comparison with zero."""
    if params.f == 0 and params.alpha == 0 and params.beta in (0, 1):
        if params.beta == 0:
            return Classification(
                VERDICT_TRIVIAL_SUB,
                "the index-0 line is a trivial submodule; the irreducible "
                "subquotient is the quotient by it",
            )
        return Classification(
            VERDICT_CODIM_ONE,
            "the span of the nonzero indices is an irreducible submodule "
            "of codimension 1",
        )
    return Classification(VERDICT_IRREDUCIBLE, "the module itself is irreducible")


@dataclass(frozen=True)
class IndexPredicate:
    """Decidable predicate picking out the basis indices of a submodule."""

    kind: str  # "zero-only" or "nonzero"

    def __post_init__(self):
        if self.kind not in ("zero-only", "nonzero"):
            raise ValueError("unknown predicate kind %r" % (self.kind,))

    def __call__(self, index):
        index = as_fraction(index)
        return index == 0 if self.kind == "zero-only" else index != 0

    def __str__(self):
        return "index = 0" if self.kind == "zero-only" else "index != 0"


def submodule_basis(params):
    """Index predicate spanning the proper nonzero submodule, or None for
    irreducible parameters."""
    verdict = classify(params).verdict
    if verdict == VERDICT_TRIVIAL_SUB:
        return IndexPredicate("zero-only")
    if verdict == VERDICT_CODIM_ONE:
        return IndexPredicate("nonzero")
    return None


def iso_check(p1, p2):
    """Whether the irreducible subquotients of two modules over the same
    group are isomorphic.

    Returns ``(flag, shift)`` where ``shift = p2.alpha - p1.alpha`` is the
    index shift of the intertwiner when the flag is true.  The criterion:
    the alpha difference lies in the group, the I-eigenvalues agree, and
    the betas agree, except that for f == 0 with alpha in the group the
    subquotients at beta 0 and beta 1 coincide.
    """
    if p1.group != p2.group:
        raise GroupMismatchError("cannot compare modules over different groups")
    if p1.f != p2.f:
        return False, None
    if not contains(p1.group, p1.alpha - p2.alpha):
        return False, None
    same_beta = p1.beta == p2.beta
    swapped = (
        p1.f == 0
        and p1.alpha == 0  # normalized, so membership in the group means zero
        and {p1.beta, p2.beta} == {Fraction(0), Fraction(1)}
    )
    if same_beta or swapped:
        return True, p2.alpha - p1.alpha
    return False, None


def pullback_params(params, m):
    """Parameters of the same module seen through the order-m rescaling.

    A module over {n/m!} becomes a module over the integers with alpha
    and f multiplied by m! and beta unchanged.
    """
    if params.group != qk(m):
        raise GroupMismatchError(
            "pullback of order %d needs index group %s, got %s" % (m, qk(m), params.group)
        )
    M = Fraction(factorial(m))
    return ModuleParams(M * params.alpha, params.beta, M * params.f, qk(0))
