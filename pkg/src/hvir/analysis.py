"""Finite-window analysis of the intermediate-series modules.

A window is a symmetric slice {n*a : |n| <= bound} of a cyclic index
group.  Within a window the engine computes exact submodule closures by
iterated generator application plus reduced row echelon elimination,
scans for reducibility, decomposes restrictions into cosets, checks
shift intertwiners, recovers module parameters from abstract action
tables, and aligns rescaled bases.

Generator applications are truncated to the window: a term whose target
index leaves the window is dropped, so truncation never invents
reachability.  Since d(0) is always applied and acts diagonally with
distinct eigenvalues, every closure stabilizes on a span of pure basis
vectors, where the truncated and exact actions agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .algebra import CENTERLESS, BasisKey, I, RescalingMap, apply_phi, d
from .errors import (
    AmbiguousTableError,
    DisjointOverlapError,
    GroupMismatchError,
    NonConstantScalingError,
    NotIntermediateSeriesError,
    SubalgebraError,
)
from .groups import Cyclic, Trivial, as_fraction, contains, is_subgroup, qk
from .intermediate import (
    Classification,
    ModuleParams,
    VERDICT_CODIM_ONE,
    VERDICT_IRREDUCIBLE,
    VERDICT_TRIVIAL_SUB,
    WeightVector,
    act,
    basis_vector,
)

__all__ = [
    "Window",
    "Subspace",
    "ActionTable",
    "intermediate_series_table",
    "transported_table",
    "closure",
    "reducibility_scan",
    "scan_details",
    "restriction_report",
    "intertwiner_check",
    "recover_params",
    "align_extension",
]


@dataclass(frozen=True)
class Window:
    """The finite index set {n*step : |n| <= bound} of a cyclic group."""

    group: Cyclic
    bound: int

    def __post_init__(self):
        if not isinstance(self.group, Cyclic):
            raise ValueError("windows require a cyclic index group")
        if not isinstance(self.bound, int) or self.bound < 1:
            raise ValueError("window bound must be a positive integer")

    @property
    def step(self):
        return self.group.generator

    @property
    def size(self):
        return 2 * self.bound + 1

    def indices(self):
        a = self.step
        return [n * a for n in range(-self.bound, self.bound + 1)]

    def __contains__(self, q):
        ratio = as_fraction(q) / self.step
        return ratio.denominator == 1 and abs(ratio) <= self.bound

    def steps(self):
        """Every generator index that can connect two window indices."""
        a = self.step
        return [n * a for n in range(-2 * self.bound, 2 * self.bound + 1)]

    def __str__(self):
        return "%s:%d" % (self.group, self.bound)


class Subspace:
    """Exact span of weight vectors in reduced row echelon form.

    Rows are keyed by their pivot index (the smallest index with a
    nonzero coefficient), pivots are normalized to 1 and eliminated from
    every other row, so the stored basis is the canonical one for the
    span regardless of insertion order.
    """

    def __init__(self, params):
        self.params = params
        self._rows = {}  # pivot index -> {index: coefficient}

    @property
    def dimension(self):
        return len(self._rows)

    def pivots(self):
        return sorted(self._rows)

    def _reduce(self, entries):
        entries = {q: c for q, c in entries.items() if c != 0}
        while entries:
            lead = min(entries)
            row = self._rows.get(lead)
            if row is None:
                return entries
            c = entries[lead]
            for q, v in row.items():
                total = entries.get(q, 0) - c * v
                if total == 0:
                    entries.pop(q, None)
                else:
                    entries[q] = total
        return entries

    def insert(self, vector):
        """Add a vector to the span; returns True when the dimension grew."""
        entries = vector.entries if isinstance(vector, WeightVector) else dict(vector)
        remainder = self._reduce(entries)
        if not remainder:
            return False
        pivot = min(remainder)
        lead = remainder[pivot]
        row = {q: c / lead for q, c in remainder.items()}
        for other in self._rows.values():
            c = other.get(pivot)
            if c is None:
                continue
            for q, v in row.items():
                total = other.get(q, 0) - c * v
                if total == 0:
                    other.pop(q, None)
                else:
                    other[q] = total
        self._rows[pivot] = row
        return True

    def contains(self, vector):
        entries = vector.entries if isinstance(vector, WeightVector) else dict(vector)
        return not self._reduce(entries)

    @property
    def echelon_basis(self):
        return [
            WeightVector(self.params, self._rows[p], _trusted=True) for p in self.pivots()
        ]

    def row_entries(self):
        return [dict(self._rows[p]) for p in self.pivots()]

    def is_pure_basis(self):
        """True when every row is a single basis vector."""
        return all(row == {p: Fraction(1)} for p, row in self._rows.items())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.params == other.params and self._rows == other._rows

    def __repr__(self):
        return "Subspace(dim=%d, pivots=%s)" % (self.dimension, self.pivots())


def _window_act_entries(params, key, entries, window):
    """Generator action on a sparse row, truncated to the window."""
    g = key.index
    alpha, beta, f = params.alpha, params.beta, params.f
    acc = {}
    for h, c in entries.items():
        t = g + h
        if t not in window:
            continue
        w = (alpha + h + g * beta) if key.kind == "d" else f
        if w:
            acc[t] = c * w
    return acc


def closure(params, window, seeds):
    """Smallest window-truncated invariant subspace containing the seeds.

    Applies every d/I generator whose source and target both stay inside
    the window, inserting images into an exact echelon basis until the
    span stabilizes.
    """
    if not is_subgroup(window.group, params.group):
        raise GroupMismatchError(
            "window group %s is not inside the module group %s"
            % (window.group, params.group)
        )
    sub = Subspace(params)
    for seed in seeds:
        if isinstance(seed, WeightVector):
            if seed.params != params:
                raise GroupMismatchError("seed belongs to different module parameters")
            entries = seed.entries
        else:
            entries = {as_fraction(q): as_fraction(c) for q, c in dict(seed).items()}
        for q in entries:
            if q not in window:
                raise ValueError("seed index %s lies outside the window" % q)
        sub.insert(entries)
    generators = []
    for g in window.steps():
        generators.append(d(g))
        generators.append(I(g))
    full = window.size
    changed = True
    while changed and sub.dimension < full:
        changed = False
        for row in sub.row_entries():
            for key in generators:
                image = _window_act_entries(params, key, row, window)
                if image and sub.insert(image):
                    changed = True
                    if sub.dimension == full:
                        return sub
    return sub


def scan_details(params, window):
    """Closure dimensions from every singleton seed plus the verdict.

    Returns ``(classification, dims, proper_pivots)`` where ``dims`` maps
    each window index to the dimension of the closure of its basis vector
    and ``proper_pivots`` lists the basis indices of the distinguished
    proper closure when one exists.
    """
    if window.bound < 2:
        raise ValueError("scan windows need bound >= 2 to distinguish verdicts")
    size = window.size
    dims = {}
    trivial_seed = None
    codim_seed = None
    codim_pivots = None
    stray = None
    for q in window.indices():
        sub = closure(params, window, [basis_vector(params, q)])
        dims[q] = sub.dimension
        if sub.dimension == size:
            continue
        if sub.dimension == 1:
            if trivial_seed is None:
                trivial_seed = q
        elif sub.dimension == size - 1 and sub.is_pure_basis():
            if codim_seed is None:
                codim_seed = q
                codim_pivots = sub.pivots()
        else:
            stray = q
    if trivial_seed is not None:
        note = (
            "closure of the seed at index %s stays one-dimensional inside "
            "a window of size %d" % (trivial_seed, size)
        )
        return Classification(VERDICT_TRIVIAL_SUB, note), dims, [trivial_seed]
    if codim_seed is not None:
        note = (
            "closure of the seed at index %s spans all but one basis line "
            "of a window of size %d" % (codim_seed, size)
        )
        return Classification(VERDICT_CODIM_ONE, note), dims, codim_pivots
    if stray is not None:
        raise NotIntermediateSeriesError(
            "closure of the seed at index %s matches no known verdict" % stray
        )
    note = "every singleton seed generates the full window span"
    return Classification(VERDICT_IRREDUCIBLE, note), dims, None


def reducibility_scan(params, window):
    """Empirical reducibility verdict from singleton-seed closures."""
    classification, _, _ = scan_details(params, window)
    return classification


def restriction_report(params, subgroup, window):
    """Partition the window into cosets of a cyclic subgroup.

    Each coset with representative q carries the restricted module with
    parameters (alpha + q, beta, f) over the subgroup.  Representatives
    are the smallest non-negative members of the coset within the window
    (falling back to the largest negative member when the window misses
    the non-negative part).
    """
    if window.group != params.group:
        raise GroupMismatchError("window must live on the module's index group")
    if isinstance(subgroup, Trivial):
        raise GroupMismatchError("restriction needs a nonzero subgroup")
    if not is_subgroup(subgroup, params.group):
        raise GroupMismatchError(
            "%s is not a subgroup of %s" % (subgroup, params.group)
        )
    # a nonzero subgroup of a cyclic group is cyclic
    assert isinstance(subgroup, Cyclic)
    a = window.step
    k = subgroup.generator / a
    assert k.denominator == 1
    k = int(k)
    buckets = {}
    for n in range(-window.bound, window.bound + 1):
        buckets.setdefault(n % k, []).append(n)
    report = []
    for residue in sorted(buckets):
        members = buckets[residue]
        non_negative = [n for n in members if n >= 0]
        rep_n = min(non_negative) if non_negative else max(members)
        rep = rep_n * a
        report.append(
            (rep, ModuleParams(params.alpha + rep, params.beta, params.f, subgroup))
        )
    report.sort(key=lambda item: item[0])
    return report


def intertwiner_check(p1, p2, shift, window):
    """Whether mapping the basis vector at q to the target basis vector at
    q - shift commutes with every window generator action.

    The check walks all generator indices p and sources q with all four
    indices (source and target on both sides) inside the window and
    compares the exact coefficients; the I-coefficients force the
    I-eigenvalues to agree.  Returns False when no off-diagonal
    comparison is possible, since such a window cannot attest anything.
    """
    if p1.group != p2.group:
        raise GroupMismatchError("cannot compare modules over different groups")
    shift = as_fraction(shift)
    if not contains(p1.group, shift):
        raise SubalgebraError("shift %s lies outside the group %s" % (shift, p1.group))
    if p1.f != p2.f:
        return False
    off_diagonal = 0
    for q in window.indices():
        if (q - shift) not in window:
            continue
        for p in window.steps():
            if (q + p) not in window or (q - shift + p) not in window:
                continue
            if p1.alpha + q + p * p1.beta != p2.alpha + (q - shift) + p * p2.beta:
                return False
            if p != 0:
                off_diagonal += 1
    return off_diagonal > 0


class ActionTable:
    """Sparse window presentation of a weight-graded action.

    Entries map ``(generator, source index)`` to ``(target index,
    coefficient)``; at most one target per pair, matching modules whose
    weight spaces are one-dimensional.  Zero coefficients are omitted.
    """

    def __init__(self, window, entries):
        if not isinstance(window, Window):
            raise TypeError("expected a Window")
        data = {}
        for (key, src), (tgt, coeff) in dict(entries).items():
            if not isinstance(key, BasisKey) or key.is_central:
                raise ValueError("table generators must be d(...) or I(...) symbols")
            src = as_fraction(src)
            tgt = as_fraction(tgt)
            coeff = as_fraction(coeff)
            if src not in window or tgt not in window:
                raise ValueError(
                    "table entry %s: %s -> %s leaves the window" % (key, src, tgt)
                )
            if coeff == 0:
                continue
            data[(key, src)] = (tgt, coeff)
        self.window = window
        self._entries = data

    @property
    def entries(self):
        return dict(self._entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, ActionTable):
            return NotImplemented
        return self.window == other.window and self._entries == other._entries

    def __repr__(self):
        return "ActionTable(%s, %d entries)" % (self.window, len(self._entries))


def intermediate_series_table(params, window, scales=None):
    """Action table of the module on a window of its own index group.

    ``scales`` optionally rescales the basis: with u(q) = c(q) v(q) the
    entry coefficients become coeff * c(source) / c(target).
    """
    if not is_subgroup(window.group, params.group):
        raise GroupMismatchError(
            "window group %s is not inside the module group %s"
            % (window.group, params.group)
        )
    indices = window.indices()
    c = None
    if scales is not None:
        c = {as_fraction(q): as_fraction(v) for q, v in dict(scales).items()}
        if any(v == 0 for v in c.values()):
            raise ValueError("scale factors must be nonzero")
        missing = [q for q in indices if q not in c]
        if missing:
            raise ValueError("scale factor missing for index %s" % missing[0])
    entries = {}
    for p in window.steps():
        for src in indices:
            tgt = src + p
            if tgt not in window:
                continue
            ratio = c[src] / c[tgt] if c is not None else 1
            coeff_d = params.alpha + src + p * params.beta
            if coeff_d:
                entries[(d(p), src)] = (tgt, coeff_d * ratio)
            if params.f:
                entries[(I(p), src)] = (tgt, params.f * ratio)
    return ActionTable(window, entries)


def transported_table(params, m, bound):
    """Integer-indexed action table of a module over {n/m!} seen through
    the centerless rescaling of order m.

    The basis vector relabelled n is the module's vector at n/m!; each
    entry applies the rescaled generator exactly and records the single
    resulting coefficient.
    """
    if params.group != qk(m):
        raise GroupMismatchError(
            "transport of order %d needs index group %s, got %s"
            % (m, qk(m), params.group)
        )
    window_z = Window(qk(0), bound)
    phi = RescalingMap(m, CENTERLESS)
    M = phi.scale
    entries = {}
    for n in window_z.steps():
        for key in (d(n), I(n)):
            image = apply_phi(phi, key)
            for src in window_z.indices():
                tgt = src + n
                if tgt not in window_z:
                    continue
                result = act(params, image, basis_vector(params, src / M))
                coeff = result.coefficient(tgt / M)
                if coeff:
                    entries[(key, src)] = (tgt, coeff)
    return ActionTable(window_z, entries)


def _rational_sqrt(x):
    if x < 0:
        return None
    rn = isqrt(x.numerator)
    rd = isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def _chain_scales(window, edges, base):
    """Propagate scale factors along ratio edges from the base index.

    ``edges`` maps (source, target) to the ratio c(source)/c(target).
    Raises when the present edges do not connect the whole window.
    """
    adjacency = {}
    for (src, tgt), ratio in edges.items():
        adjacency.setdefault(src, []).append((tgt, ratio))
        adjacency.setdefault(tgt, []).append((src, 1 / ratio))
    scales = {base: Fraction(1)}
    frontier = [base]
    while frontier:
        new_frontier = []
        for src in frontier:
            for tgt, ratio in sorted(adjacency.get(src, [])):
                # ratio = c(src)/c(tgt), so c(tgt) = c(src)/ratio
                value = scales[src] / ratio
                if tgt in scales:
                    if scales[tgt] != value:
                        raise NotIntermediateSeriesError(
                            "inconsistent scale chain at index %s" % tgt
                        )
                    continue
                scales[tgt] = value
                new_frontier.append(tgt)
        frontier = new_frontier
    missing = [q for q in window.indices() if q not in scales]
    if missing:
        raise AmbiguousTableError(
            "entries do not connect the window; index %s is unreachable" % missing[0]
        )
    return scales


def _verify_table(table, alpha, beta, f, scales):
    for (key, src), (tgt, coeff) in table.entries.items():
        expected = f if key.kind == "I" else alpha + src + key.index * beta
        if expected == 0:
            raise NotIntermediateSeriesError(
                "entry %s at %s is nonzero where the action must vanish" % (key, src)
            )
        if coeff != expected * scales[src] / scales[tgt]:
            raise NotIntermediateSeriesError(
                "entry %s at %s has coefficient %s, expected %s"
                % (key, src, coeff, expected * scales[src] / scales[tgt])
            )


def _try_chain_and_verify(table, alpha, beta, f, i_edges, base):
    edges = dict(i_edges)
    for (key, src), (tgt, coeff) in table.entries.items():
        if key.kind != "d" or key.index == 0:
            continue
        expected = alpha + src + key.index * beta
        if expected == 0:
            raise NotIntermediateSeriesError(
                "entry %s at %s is nonzero where the action must vanish" % (key, src)
            )
        edges[(src, tgt)] = coeff / expected
    scales = _chain_scales(table.window, edges, base)
    _verify_table(table, alpha, beta, f, scales)
    return scales


def recover_params(table):
    """Read (alpha, beta, f) and per-index scale factors off an abstract
    action table with one-dimensional weight spaces.

    alpha comes from any d(0) eigenvalue minus its index and f from the
    I(0) eigenvalue; the scale chain is propagated through I-generator
    entries when f is nonzero and through non-vanishing d-generator
    entries otherwise, and every remaining entry is checked against the
    module formulas.  Inconsistent tables raise
    NotIntermediateSeriesError, tables too sparse to determine the data
    raise AmbiguousTableError.
    """
    window = table.window
    entries = table.entries
    for (key, src), (tgt, _) in entries.items():
        if tgt != src + key.index:
            raise NotIntermediateSeriesError(
                "entry %s at %s lands at %s; the grading requires %s"
                % (key, src, tgt, src + key.index)
            )

    d_zero = {src: coeff for (key, src), (_, coeff) in entries.items()
              if key.kind == "d" and key.index == 0}
    if not d_zero:
        raise AmbiguousTableError("no d(0) entries; weight labels cannot be anchored")
    alphas = {coeff - src for src, coeff in d_zero.items()}
    if len(alphas) != 1:
        raise NotIntermediateSeriesError("d(0) eigenvalues disagree about alpha")
    alpha = alphas.pop()

    i_zero = {src: coeff for (key, src), (_, coeff) in entries.items()
              if key.kind == "I" and key.index == 0}
    fs = set(i_zero.values())
    if len(fs) > 1:
        raise NotIntermediateSeriesError("I(0) eigenvalues disagree")
    f = fs.pop() if fs else Fraction(0)
    if f == 0 and any(key.kind == "I" for (key, _) in entries):
        raise NotIntermediateSeriesError(
            "I entries present although the I(0) eigenvalue is absent"
        )

    base = min(window.indices())
    i_edges = {}
    if f:
        for (key, src), (tgt, coeff) in entries.items():
            if key.kind == "I" and key.index != 0:
                i_edges[(src, tgt)] = coeff / f

    candidates = []
    if f:
        # scales first from the I-chain, then beta from any d(p) entry
        try:
            scales = _chain_scales(window, i_edges, base)
        except AmbiguousTableError:
            scales = None
        if scales is not None:
            for (key, src), (tgt, coeff) in sorted(
                entries.items(), key=lambda item: (str(item[0][0]), item[0][1])
            ):
                if key.kind == "d" and key.index != 0:
                    beta = (coeff * scales[tgt] / scales[src] - alpha - src) / key.index
                    candidates.append(beta)
                    break
    if not candidates:
        # beta from a scale-free loop product of two opposite d-steps
        loop = None
        for (key, src), (tgt, coeff) in sorted(
            entries.items(), key=lambda item: (str(item[0][0]), item[0][1])
        ):
            if key.kind != "d" or key.index == 0:
                continue
            partner = entries.get((d(-key.index), tgt))
            if partner is None:
                continue
            back_tgt, back_coeff = partner
            if back_tgt == src:
                loop = (key.index, src, coeff * back_coeff)
                break
        if loop is None:
            raise AmbiguousTableError(
                "no d-generator data determines the coefficient slope"
            )
        p, q, product = loop
        a_q = alpha + q
        curvature = (product - a_q * a_q - p * a_q) / (p * p)
        disc = _rational_sqrt(1 - 4 * curvature)
        if disc is None:
            raise NotIntermediateSeriesError(
                "loop products admit no rational coefficient slope"
            )
        candidates = sorted({(1 - disc) / 2, (1 + disc) / 2})

    last_error = None
    for beta in candidates:
        try:
            scales = _try_chain_and_verify(table, alpha, beta, f, i_edges, base)
        except (NotIntermediateSeriesError, AmbiguousTableError) as exc:
            last_error = exc
            continue
        params = ModuleParams(alpha, beta, f, window.group)
        return params, scales
    raise last_error if last_error is not None else AmbiguousTableError(
        "no candidate coefficient slope"
    )


def _proportionality(candidate, reference):
    """The constant c with candidate == c * reference, if one exists."""
    ce = candidate.entries
    re = reference.entries
    if not re or set(ce) != set(re):
        return None
    ratio = None
    for q, rv in re.items():
        r = ce[q] / rv
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None
    return ratio


def align_extension(reference, candidate):
    """Rescale a candidate basis to agree with a reference on the overlap.

    ``reference`` and ``candidate`` map indices to weight vectors of the
    same module, the candidate on a larger index set.  The scale factors
    candidate(q) = c(q) * reference(q) on the overlap must be one
    constant; the candidate divided by that constant is returned and its
    module relations are re-verified on the whole candidate index set.
    """
    reference = dict(reference)
    candidate = dict(candidate)
    overlap = sorted(set(reference) & set(candidate))
    if len(overlap) < 2:
        raise DisjointOverlapError(
            "need at least 2 shared indices to attest a constant, got %d" % len(overlap)
        )
    params_set = {v.params for v in candidate.values()} | {
        reference[q].params for q in overlap
    }
    if len(params_set) != 1:
        raise GroupMismatchError("reference and candidate mix module parameters")
    params = params_set.pop()
    if params.f == 0:
        raise ValueError("alignment requires a nonzero I-eigenvalue")
    constant = None
    for q in overlap:
        ratio = _proportionality(candidate[q], reference[q])
        if ratio is None or ratio == 0:
            raise NonConstantScalingError(
                "candidate at index %s is not a rescaling of the reference" % q
            )
        if constant is None:
            constant = ratio
        elif ratio != constant:
            raise NonConstantScalingError(
                "scale at index %s is %s, expected the constant %s"
                % (q, ratio, constant)
            )
    rescaled = {q: candidate[q] * (1 / constant) for q in sorted(candidate)}
    indices = sorted(rescaled)
    for q in indices:
        for t in indices:
            p = t - q
            expected_d = params.alpha + q + p * params.beta
            if act(params, d(p), rescaled[q]) != expected_d * rescaled[t]:
                raise ValueError(
                    "candidate violates the d-action relation from %s to %s" % (q, t)
                )
            if act(params, I(p), rescaled[q]) != params.f * rescaled[t]:
                raise ValueError(
                    "candidate violates the I-action relation from %s to %s" % (q, t)
                )
    return rescaled
