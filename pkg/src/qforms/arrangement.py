"""Cochain models for configurations of points on a line with a marked origin.

A configuration of coloured points carries a hyperplane arrangement: the
walls ``t_j = 0`` (principal flavor only) and the diagonals ``t_i = t_j``.
Faces are recorded as integer level maps, chambers as level maps with all
values distinct and nonzero.  Out of this combinatorics the module builds

* the cochain complex spanned by positive facet/chamber pairs, with purely
  combinatorial boundary signs (:func:`complex_shriek`),
* the q-weighted cochain complex over the full face poset
  (:func:`complex_star`), together with the comparison map between the two
  extension conventions (:func:`m_map`),
* a quotient presentation of the star extension supported on positive pairs
  (:func:`complex_star_positive`, :func:`m_map_positive`),
* signed isomorphisms onto the algebraic bar complexes of the unfolded free
  algebra (:func:`phi_iso`, :func:`comparison_square`), and
* the one-point and diagonal-flavor comparison data used by the test
  oracles (:func:`one_point_matrices`, :func:`diagonal_m_matrix`).

Monodromy weights are powers of ``zeta``; every matrix entry is a root of
unity times a sign, so heavy eliminations are done in the exact subring
generated by the occurring powers and only converted to field elements at
the end.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .cyclotomic import (
    CycNum,
    cyclotomic_poly,
    _frac_poly_divmod,
    _frac_poly_mul,
    _frac_poly_sub,
)
from .errors import ContractViolation, DomainError, ParameterError
from .freealg import FreeAlgebra
from .hochschild import (
    HochBasisLabel,
    UnfoldedDatum,
    build_complex,
    build_dual_complex,
    fibre_permutations,
    lift_weight,
    refinements,
    s_chain_maps,
    slot_maps,
)
from .linalg import ChainComplex, CycMatrix, image_complex
from .rootdata import Weight

Levels = tuple[int, ...]

__all__ = [
    "ArrangementChainMap",
    "ChamberRefinement",
    "ComparisonSquare",
    "ConfigArrangement",
    "DiagonalForm",
    "FaceComplex",
    "PhiIso",
    "PosFacet",
    "check_d_squared",
    "comparison_square",
    "complex_shriek",
    "complex_star",
    "complex_star_positive",
    "diagonal_m_matrix",
    "facets",
    "ic_cohomology",
    "m_map",
    "m_map_positive",
    "one_point_matrices",
    "phi_iso",
    "q_separating",
    "refinement_orders",
    "skew_symmetrize",
]


# --------------------------------------------------------------------------
# labels


@dataclass(frozen=True)
class PosFacet:
    """A positive facet, stored as its level map.

    ``levels[j]`` says where point ``j`` sits: ``0`` on the origin wall,
    ``a >= 1`` in the ``a``-th group away from it.  Every level ``1..r``
    must be occupied; ``r`` is the dimension of the facet.
    """

    levels: Levels

    def __post_init__(self):
        levels = tuple(int(v) for v in self.levels)
        object.__setattr__(self, "levels", levels)
        if any(v < 0 for v in levels):
            raise ParameterError("positive facets carry non-negative levels")
        seen = sorted({v for v in levels if v > 0})
        if seen != list(range(1, len(seen) + 1)):
            raise ParameterError("facet levels must fill 1..r without gaps")

    @property
    def r(self) -> int:
        return max(self.levels, default=0)

    def block(self, level: int) -> tuple[int, ...]:
        """The points sitting at ``level``, in point order."""
        return tuple(j for j, v in enumerate(self.levels) if v == level)


@dataclass(frozen=True)
class ChamberRefinement:
    """A positive chamber: a total order recorded as ranks ``1..N``."""

    ranks: Levels

    def __post_init__(self):
        ranks = tuple(int(v) for v in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            raise ParameterError("chamber ranks must be a bijection onto 1..N")


def facets(n_points: int, r: int) -> tuple[PosFacet, ...]:
    """All positive facets of dimension ``r`` on ``n_points`` points."""
    if n_points < 0 or r < 0:
        raise ParameterError("facet enumeration needs non-negative sizes")
    found = [PosFacet(levels) for levels in slot_maps(n_points, 1, r)]
    return tuple(sorted(found, key=lambda f: f.levels))


def refinement_orders(facet: PosFacet) -> tuple[ChamberRefinement, ...]:
    """The positive chambers refining ``facet``."""
    return tuple(ChamberRefinement(t) for t in refinements(facet.levels))


def _positive_chamber(tau: ChamberRefinement) -> Levels:
    # A positive chamber *is* its rank map, read as levels.
    return tau.ranks


# --------------------------------------------------------------------------
# configurations


@dataclass(frozen=True, eq=False)
class ConfigArrangement:
    """A configuration of coloured points, with monodromy data.

    ``points[j]`` is the colour of the ``j``-th point in the base datum of
    ``algebra``.  The principal flavor has walls ``t_j = 0`` and diagonals
    ``t_i = t_j`` and needs a ``weight`` for the wall monodromy; the
    diagonal flavor keeps only the diagonals and ignores the weight.
    Instances hash by identity, so reuse one object when building several
    complexes over the same configuration — derived data is cached on it.
    """

    algebra: FreeAlgebra
    points: tuple[int, ...]
    weight: Weight | None = None
    flavor: str = "principal"

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(int(c) for c in self.points))
        object.__setattr__(self, "_cache", {})
        if self.flavor not in ("principal", "diagonal"):
            raise ParameterError(f"unknown arrangement flavor {self.flavor!r}")
        datum = self.algebra.datum
        for c in self.points:
            if not 0 <= c < datum.n:
                raise ParameterError(f"point colour {c} is not a datum colour")
        if self.flavor == "principal":
            if self.weight is None:
                raise ParameterError("the principal flavor needs a weight")
            if self.weight.datum != datum:
                raise ParameterError("weight belongs to a different datum")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def field(self):
        return self.algebra.field

    @property
    def datum(self):
        return self.algebra.datum


def _cached(config: ConfigArrangement, key, build):
    cache = config._cache
    if key not in cache:
        cache[key] = build()
    return cache[key]


def _require_principal(config: ConfigArrangement):
    if config.flavor != "principal":
        raise ParameterError("this cochain model needs the principal flavor")


def _hyperplanes(n: int, flavor: str) -> tuple[tuple, ...]:
    walls: list[tuple] = []
    if flavor == "principal":
        walls.extend(("z", j) for j in range(n))
    walls.extend(("d", i, j) for i in range(n) for j in range(i + 1, n))
    return tuple(walls)


def _hyp_exponents(config: ConfigArrangement) -> tuple[int, ...]:
    """xi-exponent of the half-monodromy weight of every hyperplane."""

    def build():
        field = config.field
        datum = config.datum
        scale = 2 * field.varpi * field.k
        out = []
        for hyp in _hyperplanes(config.n, config.flavor):
            if hyp[0] == "z":
                colour = config.points[hyp[1]]
                power = -config.weight.pair(colour) * datum.d(colour)
            else:
                power = Fraction(datum.dot[config.points[hyp[1]]][config.points[hyp[2]]])
            e = Fraction(scale) * Fraction(power)
            if e.denominator != 1:
                raise DomainError(
                    "weight pairing lands off the monodromy grid of this field"
                )
            out.append(int(e) % field.N)
        return tuple(out)

    return _cached(config, "hyp_exponents", build)


def _mask_exponent(config: ConfigArrangement, mask: int) -> int:
    """Total xi-exponent over a set of hyperplanes given as a bitmask."""
    table = _cached(config, "mask_exponents", dict)
    e = table.get(mask)
    if e is None:
        hyp_exp = _hyp_exponents(config)
        acc = 0
        bits = mask
        while bits:
            low = bits & -bits
            acc += hyp_exp[low.bit_length() - 1]
            bits ^= low
        e = acc % config.field.N
        table[mask] = e
    return e


# --------------------------------------------------------------------------
# face combinatorics of the principal arrangement


def _contiguous(levels: Iterable[int]) -> Levels:
    levels = tuple(levels)
    negs = sorted({v for v in levels if v < 0})
    poss = sorted({v for v in levels if v > 0})
    relabel = {v: k - len(negs) for k, v in enumerate(negs)}
    relabel.update({v: k + 1 for k, v in enumerate(poss)})
    relabel[0] = 0
    return tuple(relabel[v] for v in levels)


def _ordered_partitions(items: tuple[int, ...]):
    if not items:
        yield ()
        return
    head, rest = items[0], items[1:]
    for part in _ordered_partitions(rest):
        for t, blk in enumerate(part):
            yield part[:t] + (blk + (head,),) + part[t + 1 :]
        for t in range(len(part) + 1):
            yield part[:t] + ((head,),) + part[t:]


class _Geometry:
    """Face poset of the principal arrangement on ``n`` points.

    Faces and chambers are level tuples.  Everything here is independent of
    the monodromy weights; separation data is returned as hyperplane
    bitmasks so several configurations can share one instance.
    """

    def __init__(self, n: int):
        self.n = n
        self.hyps = _hyperplanes(n, "principal")
        faces: list[Levels] = []
        points = tuple(range(n))
        for z in range(n + 1):
            for zero in itertools.combinations(points, z):
                rest = tuple(j for j in points if j not in zero)
                for blocks in _ordered_partitions(rest):
                    for s in range(len(blocks) + 1):
                        lev = [0] * n
                        for t, blk in enumerate(blocks):
                            value = t - s if t < s else t - s + 1
                            for j in blk:
                                lev[j] = value
                        faces.append(tuple(lev))
        faces.sort()
        self.faces = tuple(faces)
        by_dim: dict[int, list[Levels]] = {p: [] for p in range(n + 1)}
        for f in self.faces:
            by_dim[self.dim(f)].append(f)
        self.by_dim = {p: tuple(v) for p, v in by_dim.items()}
        self._covers: dict[Levels, tuple[tuple[Levels, int], ...]] = {}
        self._ch: dict[Levels, tuple[Levels, ...]] = {}
        self._sep: dict[tuple[Levels, Levels], int] = {}
        self._fibre: dict[tuple[Levels, Levels], dict[Levels, tuple[Levels, ...]]] = {}

    @staticmethod
    def dim(levels: Levels) -> int:
        top = max(levels, default=0)
        bottom = min(levels, default=0)
        return max(top, 0) - min(bottom, 0)

    def covers(self, levels: Levels) -> tuple[tuple[Levels, int], ...]:
        """One-lower-dimensional faces in the closure, with attachment signs.

        The sign compares the product orientations of the two cells: a block
        merge passes the inward direction over the blocks above it, dropping
        a wall-adjacent block moves it past every block on the far side.
        """
        out = self._covers.get(levels)
        if out is None:
            r = max(max(levels, default=0), 0)
            s = -min(min(levels, default=0), 0)
            m = r + s
            order = [v for v in range(-s, r + 1) if v != 0]
            found = []
            for a in range(m - 1):
                va, vb = order[a], order[a + 1]
                if (va > 0) == (vb > 0):
                    merged = _contiguous(va if v == vb else v for v in levels)
                    found.append((merged, -1 if (m - a) % 2 else 1))
            drop_sign = -1 if (m - s - 1) % 2 else 1
            if r >= 1:
                found.append((_contiguous(0 if v == 1 else v for v in levels), drop_sign))
            if s >= 1:
                found.append((_contiguous(0 if v == -1 else v for v in levels), drop_sign))
            out = tuple(found)
            self._covers[levels] = out
        return out

    def ch(self, levels: Levels) -> tuple[Levels, ...]:
        """All chambers whose closure contains the face."""
        out = self._ch.get(levels)
        if out is None:
            n = self.n
            r = max(max(levels, default=0), 0)
            s = -min(min(levels, default=0), 0)
            neg_blocks = [
                tuple(j for j in range(n) if levels[j] == v) for v in range(-s, 0)
            ]
            pos_blocks = [
                tuple(j for j in range(n) if levels[j] == v) for v in range(1, r + 1)
            ]
            zero = tuple(j for j in range(n) if levels[j] == 0)
            splits = [
                (perm[:cut], perm[cut:])
                for perm in itertools.permutations(zero)
                for cut in range(len(zero) + 1)
            ]
            found = []
            for negs in itertools.product(*(itertools.permutations(b) for b in neg_blocks)):
                for zneg, zpos in splits:
                    for poss in itertools.product(
                        *(itertools.permutations(b) for b in pos_blocks)
                    ):
                        before = [j for blk in negs for j in blk] + list(zneg)
                        after = list(zpos) + [j for blk in poss for j in blk]
                        lev = [0] * n
                        for t, j in enumerate(before):
                            lev[j] = t - len(before)
                        for t, j in enumerate(after):
                            lev[j] = t + 1
                        found.append(tuple(lev))
            out = tuple(found)
            self._ch[levels] = out
        return out

    def project(self, levels: Levels, chamber: Levels) -> Levels:
        """The chamber over ``levels`` nearest to ``chamber``.

        Agrees with ``chamber`` on every hyperplane containing the face and
        with the face elsewhere.
        """
        n = self.n
        order = sorted(range(n), key=lambda j: (levels[j], chamber[j]))
        sign = [
            (levels[j] > 0) - (levels[j] < 0) or (chamber[j] > 0) - (chamber[j] < 0)
            for j in range(n)
        ]
        neg = [j for j in order if sign[j] < 0]
        pos = [j for j in order if sign[j] > 0]
        lev = [0] * n
        for t, j in enumerate(neg):
            lev[j] = t - len(neg)
        for t, j in enumerate(pos):
            lev[j] = t + 1
        return tuple(lev)

    def fibre(self, levels: Levels, sub: Levels) -> dict[Levels, tuple[Levels, ...]]:
        """Chambers over the smaller face ``sub``, grouped by projection."""
        key = (levels, sub)
        out = self._fibre.get(key)
        if out is None:
            grouped: dict[Levels, list[Levels]] = {}
            for c in self.ch(sub):
                grouped.setdefault(self.project(levels, c), []).append(c)
            out = {c: tuple(v) for c, v in grouped.items()}
            self._fibre[key] = out
        return out

    def sep_mask(self, c1: Levels, c2: Levels) -> int:
        """Bitmask of the hyperplanes separating two chambers."""
        key = (c1, c2)
        mask = self._sep.get(key)
        if mask is None:
            mask = 0
            for b, hyp in enumerate(self.hyps):
                if hyp[0] == "z":
                    differ = (c1[hyp[1]] > 0) != (c2[hyp[1]] > 0)
                else:
                    differ = (c1[hyp[1]] > c1[hyp[2]]) != (c2[hyp[1]] > c2[hyp[2]])
                if differ:
                    mask |= 1 << b
            self._sep[key] = mask
            self._sep[(c2, c1)] = mask
        return mask


@lru_cache(maxsize=None)
def _geometry(n: int) -> _Geometry:
    return _Geometry(n)


# --------------------------------------------------------------------------
# symbolic differential supports
#
# A support is, per degree, one tuple per column of (row index, sign, mask)
# triples; the actual matrix entry is sign * xi ** exponent(mask).  Supports
# depend only on the number of points, so they are cached globally and
# evaluated against a configuration's exponent table when densified.


@lru_cache(maxsize=None)
def _full_labels(n: int) -> tuple[tuple[tuple[Levels, Levels], ...], ...]:
    geo = _geometry(n)
    per_dim = []
    for p in range(n + 1):
        labels = []
        for f in geo.by_dim[p]:
            labels.extend((f, c) for c in geo.ch(f))
        per_dim.append(tuple(labels))
    return tuple(per_dim)


@lru_cache(maxsize=None)
def _full_index(n: int) -> tuple[dict, ...]:
    return tuple({lbl: k for k, lbl in enumerate(level)} for level in _full_labels(n))


@lru_cache(maxsize=None)
def _full_shriek_support(n: int):
    geo = _geometry(n)
    labels = _full_labels(n)
    index = _full_index(n)
    sup = []
    for p in range(n):
        cols = []
        for f, c in labels[p + 1]:
            cols.append(
                tuple((index[p][(e, c)], sign, 0) for e, sign in geo.covers(f))
            )
        sup.append(tuple(cols))
    return tuple(sup)


@lru_cache(maxsize=None)
def _full_star_support(n: int):
    geo = _geometry(n)
    labels = _full_labels(n)
    index = _full_index(n)
    sup = []
    for p in range(n):
        cols_by_label = {}
        for f in geo.by_dim[p + 1]:
            per_chamber: dict[Levels, list] = {c: [] for c in geo.ch(f)}
            for e, sign in geo.covers(f):
                for c, below in geo.fibre(f, e).items():
                    bucket = per_chamber[c]
                    for cpp in below:
                        bucket.append(
                            (index[p][(e, cpp)], sign, geo.sep_mask(c, cpp))
                        )
            for c, entries in per_chamber.items():
                cols_by_label[(f, c)] = tuple(entries)
        sup.append(tuple(cols_by_label[lbl] for lbl in labels[p + 1]))
    return tuple(sup)


@lru_cache(maxsize=None)
def _m_support(n: int):
    geo = _geometry(n)
    labels = _full_labels(n)
    index = _full_index(n)
    sup = []
    for p in range(n + 1):
        cols = []
        for f, c in labels[p]:
            cols.append(
                tuple(
                    (index[p][(f, c2)], 1, geo.sep_mask(c, c2)) for c2 in geo.ch(f)
                )
            )
        sup.append(tuple(cols))
    return tuple(sup)


def _support_compose(config: ConfigArrangement, outer, inner):
    """Columns of outer∘inner as ``row -> {exponent: integer coefficient}``."""
    N = config.field.N
    out = []
    for ents in inner:
        acc: dict[int, dict[int, int]] = {}
        for mid, s1, m1 in ents:
            e1 = _mask_exponent(config, m1)
            for row, s2, m2 in outer[mid]:
                e = (e1 + _mask_exponent(config, m2)) % N
                bucket = acc.setdefault(row, {})
                bucket[e] = bucket.get(e, 0) + s1 * s2
        out.append(acc)
    return out


def _poly_cols_is_zero(config: ConfigArrangement, cols) -> bool:
    field = config.field
    for acc in cols:
        for terms in acc.values():
            if any(terms.values()):
                total = field.zero
                for e, coeff in terms.items():
                    if coeff:
                        total = total + field.xi_pow(e) * coeff
                if not total.is_zero():
                    return False
    return True


def _poly_cols_difference(configs_cols_a, cols_b):
    out = []
    for acc_a, acc_b in zip(configs_cols_a, cols_b):
        merged: dict[int, dict[int, int]] = {}
        for row, terms in acc_a.items():
            dst = merged.setdefault(row, {})
            for e, coeff in terms.items():
                dst[e] = dst.get(e, 0) + coeff
        for row, terms in acc_b.items():
            dst = merged.setdefault(row, {})
            for e, coeff in terms.items():
                dst[e] = dst.get(e, 0) - coeff
        out.append(merged)
    return out


def _supports_for(config: ConfigArrangement, kind: str):
    n = config.n
    if kind == "shriek":
        return _positive_support(n)
    if kind == "star":
        return _full_star_support(n)
    if kind == "shriek_full":
        return _full_shriek_support(n)
    raise ParameterError(f"unknown complex kind {kind!r}")


def check_d_squared(config: ConfigArrangement, kind: str = "shriek") -> None:
    """Verify symbolically that the chosen differential squares to zero.

    Works support-by-support without building dense matrices, so it stays
    usable at sizes where the assembled complexes would not.  Raises
    :class:`ContractViolation` on failure.
    """
    _require_principal(config)
    sup = _supports_for(config, kind)
    for p in range(len(sup) - 1):
        composed = _support_compose(config, sup[p], sup[p + 1])
        if not _poly_cols_is_zero(config, composed):
            raise ContractViolation(
                f"{kind} differential does not square to zero out of dimension {p + 2}"
            )


# --------------------------------------------------------------------------
# densification


class FaceComplex(ChainComplex):
    """A chain complex together with the facet/chamber labels of each degree."""

    def __init__(self, field, min_degree, dims, diffs, *, labels, config, kind):
        super().__init__(field, min_degree, dims, diffs)
        self.config = config
        self.kind = kind
        self._labels = tuple(tuple(lbls) for lbls in labels)
        self._index: dict[int, dict] = {}

    def labels(self, degree: int):
        return self._labels[degree - self.min_degree]

    def label_index(self, degree: int, label) -> int:
        index = self._index.get(degree)
        if index is None:
            index = {lbl: k for k, lbl in enumerate(self.labels(degree))}
            self._index[degree] = index
        try:
            return index[label]
        except KeyError:
            raise ParameterError(f"{label} is not a basis label in degree {degree}") from None


def _densify(config: ConfigArrangement, nrows: int, cols) -> CycMatrix:
    field = config.field
    entries: dict[tuple[int, int], CycNum] = {}
    for cidx, ents in enumerate(cols):
        for ridx, sign, mask in ents:
            value = field.xi_pow(_mask_exponent(config, mask))
            entries[(ridx, cidx)] = value if sign > 0 else -value
    return CycMatrix.from_entries(field, nrows, len(cols), entries)


def _assemble_full(config: ConfigArrangement, kind: str) -> FaceComplex:
    n = config.n
    labels = _full_labels(n)
    sup = _full_star_support(n) if kind == "star" else _full_shriek_support(n)
    dims = [len(labels[n - i]) for i in range(n + 1)]
    diffs = [
        _densify(config, len(labels[n - i - 1]), sup[n - i - 1]) for i in range(n)
    ]
    by_degree = [labels[n - i] for i in range(n + 1)]
    return FaceComplex(
        config.field, -n, dims, diffs, labels=by_degree, config=config, kind=kind
    )


def complex_star(config: ConfigArrangement) -> FaceComplex:
    """The q-weighted cochain complex over the full face poset.

    Degree ``-p`` is spanned by pairs of a ``p``-dimensional face and an
    adjacent chamber; the differential shrinks the face, projecting the
    chamber and weighting by the monodromy across the separating walls.
    """
    _require_principal(config)
    return _cached(config, "star", lambda: _assemble_full(config, "star"))


def _full_shriek(config: ConfigArrangement) -> FaceComplex:
    return _cached(config, "shriek_full", lambda: _assemble_full(config, "shriek_full"))


# --------------------------------------------------------------------------
# the positive subcomplex with combinatorial signs


@lru_cache(maxsize=None)
def _positive_labels(n: int) -> tuple[tuple[tuple[PosFacet, ChamberRefinement], ...], ...]:
    per_dim = []
    for r in range(n + 1):
        labels = []
        for f in facets(n, r):
            labels.extend((f, tau) for tau in refinement_orders(f))
        per_dim.append(tuple(labels))
    return tuple(per_dim)


@lru_cache(maxsize=None)
def _positive_index(n: int) -> tuple[dict, ...]:
    return tuple(
        {lbl: k for k, lbl in enumerate(level)} for level in _positive_labels(n)
    )


def _delta_covers(levels: Levels) -> tuple[tuple[Levels, int], ...]:
    """The facets below a positive facet, with the block-count boundary sign.

    Move ``i`` sends level ``v`` to ``v`` for ``v <= i`` and ``v - 1`` above,
    so ``i = 0`` pushes the first block onto the wall and ``i >= 1`` merges
    blocks ``i`` and ``i + 1``.  The sign counts the non-minimal points of
    all blocks strictly above the merge position.
    """
    r = max(levels, default=0)
    sizes = [sum(1 for v in levels if v == b) for b in range(1, r + 1)]
    out = []
    for i in range(r):
        shrunk = tuple(v if v <= i else v - 1 for v in levels)
        exponent = sum(sizes[b] - 1 for b in range(i, r))
        out.append((shrunk, -1 if exponent % 2 else 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _positive_support(n: int):
    labels = _positive_labels(n)
    index = _positive_index(n)
    sup = []
    for r in range(n):
        cols = []
        for f, tau in labels[r + 1]:
            cols.append(
                tuple(
                    (index[r][(PosFacet(shrunk), tau)], sign, 0)
                    for shrunk, sign in _delta_covers(f.levels)
                )
            )
        sup.append(tuple(cols))
    return tuple(sup)


def complex_shriek(config: ConfigArrangement) -> FaceComplex:
    """The cochain complex on positive facet/chamber pairs.

    The differential keeps the chamber and walks the facet down through its
    boundary, with purely combinatorial signs; no monodromy weights enter.
    """
    _require_principal(config)

    def build():
        n = config.n
        labels = _positive_labels(n)
        sup = _positive_support(n)
        dims = [len(labels[n - i]) for i in range(n + 1)]
        diffs = [
            _densify(config, len(labels[n - i - 1]), sup[n - i - 1]) for i in range(n)
        ]
        by_degree = [labels[n - i] for i in range(n + 1)]
        return FaceComplex(
            config.field, -n, dims, diffs, labels=by_degree, config=config, kind="shriek"
        )

    return _cached(config, "shriek", build)


@lru_cache(maxsize=None)
def _bridge_signs(n: int) -> dict[Levels, int]:
    """Per-facet signs aligning the two boundary-sign conventions.

    The block-count signs and the orientation signs of the full poset agree
    only up to a sign depending on the facet.  The bridge is fixed to ``+1``
    at the origin and propagated through cover pairs; consistency over every
    edge is checked, so a failure can only mean one of the sign rules is
    wrong.
    """
    geo = _geometry(n)
    sigma: dict[tuple[Levels, Levels], int] = {}
    positive = [f for f in geo.faces if min(f, default=0) >= 0]
    for f in positive:
        if geo.dim(f) == 0:
            continue
        model = {e: s for e, s in geo.covers(f)}
        combinatorial = dict(_delta_covers(f))
        if set(model) != set(combinatorial):
            raise ContractViolation("the two cover enumerations disagree")
        for e, s in combinatorial.items():
            sigma[(e, f)] = s * model[e]
    eps: dict[Levels, int] = {(0,) * n: 1}
    for f in sorted(positive, key=geo.dim):
        if geo.dim(f) == 0:
            continue
        below = [e for e, _ in geo.covers(f)]
        eps[f] = sigma[(below[0], f)] * eps[below[0]]
        for e in below:
            if eps[f] != sigma[(e, f)] * eps[e]:
                raise ContractViolation("boundary sign conventions cannot be aligned")
    return eps


# --------------------------------------------------------------------------
# the exact subring of occurring root-of-unity powers


class _XiRing:
    """Arithmetic in ``Q[y] / Phi_m(y)`` with integer-packed elements.

    Elements are ``(coeffs, den)`` with integer coefficients and a positive
    denominator, kept gcd-normalized.  Used for eliminations whose entries
    are all powers of one root of unity ``y``; the results convert to field
    elements at the end.
    """

    def __init__(self, m: int):
        self.m = m
        phi = cyclotomic_poly(m)
        self.deg = len(phi) - 1
        tails: list[tuple[int, ...]] = []
        base = [-c for c in phi[:-1]]
        tails.append(tuple(base))
        for _ in range(self.deg - 2):
            prev = list(tails[-1])
            lead = prev.pop()
            row = [0] + prev
            if lead:
                for j, c in enumerate(base):
                    row[j] += lead * c
            tails.append(tuple(row))
        self.tails = tails
        pows = []
        cur = [0] * self.deg
        cur[0] = 1
        for _ in range(m):
            pows.append(tuple(cur))
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                for j, c in enumerate(base):
                    cur[j] += lead * c
        self.pows = pows
        self.zero = ((0,) * self.deg, 1)
        self.one = (self.pows[0], 1)

    def _norm(self, nums, den):
        g = den
        for v in nums:
            g = gcd(g, v)
        if g > 1:
            nums = tuple(v // g for v in nums)
            den //= g
        return (tuple(nums), den)

    def from_power(self, e: int, sign: int = 1):
        nums = self.pows[e % self.m]
        if sign < 0:
            nums = tuple(-v for v in nums)
        return (nums, 1)

    def is_zero(self, a) -> bool:
        return not any(a[0])

    def neg(self, a):
        return (tuple(-v for v in a[0]), a[1])

    def add(self, a, b):
        na, da = a
        nb, db = b
        if da == db:
            return self._norm(tuple(x + y for x, y in zip(na, nb)), da)
        common = lcm(da, db)
        fa, fb = common // da, common // db
        return self._norm(tuple(x * fa + y * fb for x, y in zip(na, nb)), common)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        na, da = a
        nb, db = b
        if not any(na) or not any(nb):
            return self.zero
        deg = self.deg
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(na):
            if x:
                for j, y in enumerate(nb):
                    if y:
                        conv[i + j] += x * y
        for t in range(deg, 2 * deg - 1):
            c = conv[t]
            if c:
                for j, tail in enumerate(self.tails[t - deg]):
                    if tail:
                        conv[j] += c * tail
        return self._norm(tuple(conv[:deg]), da * db)

    def scale(self, a, q: Fraction):
        if q == 0 or not any(a[0]):
            return self.zero
        return self._norm(
            tuple(v * q.numerator for v in a[0]), a[1] * q.denominator
        )

    def inv(self, a):
        nums, den = a
        if not any(nums):
            raise ZeroDivisionError("inverse of zero in the monodromy subring")
        r0 = [Fraction(c) for c in cyclotomic_poly(self.m)]
        r1 = [Fraction(c, den) for c in nums]
        while r1 and not r1[-1]:
            r1.pop()
        t0: list[Fraction] = [Fraction(0)]
        t1: list[Fraction] = [Fraction(1)]
        while len(r1) > 1:
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _frac_poly_sub(t0, _frac_poly_mul(q, t1))
        c = r1[0]
        coeffs = [x / c for x in t1[: self.deg]]
        coeffs += [Fraction(0)] * (self.deg - len(coeffs))
        den_all = 1
        for x in coeffs:
            den_all = lcm(den_all, x.denominator)
        return self._norm(tuple(int(x * den_all) for x in coeffs), den_all)

    def to_cyc(self, a, field, step: int) -> CycNum:
        nums, den = a
        coeffs = [Fraction(0)] * field.degree
        for t, c in enumerate(nums):
            if c:
                scale = Fraction(c, den)
                for idx, v in enumerate(field.xi_pow((step * t) % field.N).coeffs):
                    if v:
                        coeffs[idx] += scale * v
        return CycNum(field, tuple(coeffs))


@lru_cache(maxsize=None)
def _xi_ring(m: int) -> _XiRing:
    return _XiRing(m)


def _ring_for(config: ConfigArrangement) -> tuple[_XiRing, int]:
    def build():
        step = config.field.N
        for e in _hyp_exponents(config):
            step = gcd(step, e)
        return (_xi_ring(config.field.N // step), step)

    return _cached(config, "ring", build)


class _BlockReducer:
    """Eliminates the non-positive coordinates of vectors over one facet.

    Holds the pairing block ``B`` on non-positive chambers and the block
    ``A`` pairing positive against non-positive ones, row-reduced once.
    :meth:`reduce` sends ``(v_rest, v_pos)`` to ``v_pos - A w`` where
    ``B w = v_rest``.  The block may be singular — the reduction is still
    well defined provided ``A`` kills the kernel of ``B`` and the vector is
    consistent; both are checked and a failure raises :class:`DomainError`,
    marking a weight where the construction genuinely degenerates.
    """

    def __init__(self, ring: _XiRing, block, pairing):
        self.ring = ring
        self.a_rows = pairing
        nn = len(block)
        aug = [list(row) + [ring.zero] * nn for row in block]
        for r in range(nn):
            aug[r][nn + r] = ring.one
        pivots: list[int] = []
        rank = 0
        for col in range(nn):
            hit = next(
                (r for r in range(rank, nn) if not ring.is_zero(aug[r][col])), None
            )
            if hit is None:
                continue
            aug[rank], aug[hit] = aug[hit], aug[rank]
            inv = ring.inv(aug[rank][col])
            lead = aug[rank]
            for j in range(col, 2 * nn):
                lead[j] = ring.mul(inv, lead[j])
            for r in range(nn):
                if r != rank and not ring.is_zero(aug[r][col]):
                    factor = aug[r][col]
                    row = aug[r]
                    for j in range(col, 2 * nn):
                        row[j] = ring.sub(row[j], ring.mul(factor, lead[j]))
            pivots.append(col)
            rank += 1
        self.nn = nn
        self.rank = rank
        self.pivots = pivots
        self.echelon = [row[:nn] for row in aug]
        self.transform = [row[nn:] for row in aug]
        if rank < nn:
            free = [c for c in range(nn) if c not in set(pivots)]
            for c in free:
                kernel = [ring.zero] * nn
                kernel[c] = ring.one
                for r, pc in enumerate(pivots):
                    kernel[pc] = ring.neg(self.echelon[r][c])
                for arow in pairing:
                    total = ring.zero
                    for j, kv in enumerate(kernel):
                        if not ring.is_zero(kv) and not ring.is_zero(arow[j]):
                            total = ring.add(total, ring.mul(arow[j], kv))
                    if not ring.is_zero(total):
                        raise DomainError(
                            "the star reduction degenerates at this weight"
                        )

    def reduce(self, v_rest, v_pos):
        ring = self.ring
        support = [j for j, v in enumerate(v_rest) if not ring.is_zero(v)]
        image = []
        for r in range(self.nn):
            row = self.transform[r]
            total = ring.zero
            for j in support:
                total = ring.add(total, ring.mul(row[j], v_rest[j]))
            image.append(total)
        for r in range(self.rank, self.nn):
            if not ring.is_zero(image[r]):
                raise DomainError("the star reduction degenerates at this weight")
        w = [ring.zero] * self.nn
        for r, pc in enumerate(self.pivots):
            w[pc] = image[r]
        out = []
        wsupport = [j for j in self.pivots if not ring.is_zero(w[j])]
        for k, value in enumerate(v_pos):
            arow = self.a_rows[k]
            total = value
            for j in wsupport:
                total = ring.sub(total, ring.mul(arow[j], w[j]))
            out.append(total)
        return out


# --------------------------------------------------------------------------
# the star extension on positive pairs, presented as a quotient


def _newton_at_one(ring: _XiRing, nodes, values, tail: int):
    """Value at 1 of the polynomial interpolating ``values`` at ``nodes``.

    Returns ``None`` unless the top ``tail`` divided differences vanish,
    which certifies that the data is polynomial of degree comfortably below
    the sample count rather than an artifact of overfitting.
    """
    m = len(values)
    coef = list(values)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            diff = ring.sub(coef[i], coef[i - 1])
            coef[i] = ring.scale(diff, 1 / (nodes[i] - nodes[i - j]))
    for i in range(m - tail, m):
        if not ring.is_zero(coef[i]):
            return None
    acc = coef[m - 1]
    for i in range(m - 2, -1, -1):
        acc = ring.add(ring.scale(acc, 1 - nodes[i]), coef[i])
    return acc


def _interpolated_columns(ring: _XiRing, nodes, samples, tail: int = 4):
    """Entrywise interpolation of sampled column families, taken at 1."""
    out = []
    for part in range(2):
        tables = []
        shape = samples[0][part]
        for r in range(len(shape)):
            cols = []
            for cidx in range(len(shape[r])):
                rows = set()
                for sample in samples:
                    rows.update(sample[part][r][cidx])
                col = {}
                for row in rows:
                    values = [
                        sample[part][r][cidx].get(row, ring.zero)
                        for sample in samples
                    ]
                    got = _newton_at_one(ring, nodes, values, tail)
                    if got is None:
                        return None
                    if not ring.is_zero(got):
                        col[row] = got
                cols.append(col)
            tables.append(cols)
        out.append(tables)
    return out[0], out[1]


def _flat_limit_columns(config: ConfigArrangement, ring: _XiRing, assemble):
    """Quotient columns at a weight where the straight reduction fails.

    The reduction is a specialization of a construction that makes sense
    for arbitrary invertible weights on the hyperplanes, and its entries
    depend on them polynomially.  Perturb the weight of each hyperplane by
    ``s**g`` for a fixed exponent vector ``g`` and rational ``s``, sample at
    values of ``s`` where the reduction goes through, and interpolate each
    entry back to ``s = 1``.
    """
    count = len(_hyperplanes(config.n, config.flavor))
    for power in (1, 2):
        gvec = [(h + 1) ** power for h in range(count)]

        def twist_for(node, exps=tuple(gvec)):
            def twist(mask: int):
                e = 0
                idx = 0
                while mask:
                    if mask & 1:
                        e += exps[idx]
                    mask >>= 1
                    idx += 1
                return node**e

            return twist

        nodes: list[Fraction] = []
        samples = []
        s = 2
        while len(nodes) < 96 and s < 220:
            try:
                sample = assemble(twist_for(Fraction(s)))
            except DomainError:
                s += 1
                continue
            nodes.append(Fraction(s))
            samples.append(sample)
            s += 1
            if len(nodes) in (24, 48, 96):
                limit = _interpolated_columns(ring, nodes, samples)
                if limit is not None:
                    return limit
    raise DomainError("the star reduction degenerates at this weight")


def _positive_pieces(config: ConfigArrangement):
    """Ring-valued quotient data for the star extension on positive pairs.

    The positive pairs of the full star complex do not span a subcomplex;
    instead, the image under the comparison map of the non-positive chamber
    labels is a subcomplex of the star side, and the quotient by it is
    carried by the positive pairs.  Per facet the quotient projection
    eliminates the non-positive coordinates against the block of the
    comparison matrix on non-positive chambers; see :class:`_BlockReducer`.
    At weights where that elimination breaks down the columns are recovered
    as the limit of perturbed weight systems (:func:`_flat_limit_columns`).
    """

    def build():
        n = config.n
        geo = _geometry(n)
        _hyp_exponents(config)
        ring, step = _ring_for(config)
        eps = _bridge_signs(n)
        labels = _positive_labels(n)
        index = _positive_index(n)

        def assemble(twist):
            """Quotient columns for one weight system.

            ``twist`` (optional) rescales the weight attached to a
            separation mask by a rational factor; it is used to move the
            local system off a degenerate locus.
            """

            def weight(c1: Levels, c2: Levels):
                mask = geo.sep_mask(c1, c2)
                value = ring.from_power(_mask_exponent(config, mask) // step)
                if twist is not None:
                    value = ring.scale(value, twist(mask))
                return value

            splits: dict[Levels, tuple] = {}
            for r in range(n + 1):
                for f, _tau in labels[r]:
                    lev = f.levels
                    if lev in splits:
                        continue
                    chambers = geo.ch(lev)
                    pos = [c for c in chambers if min(c) > 0]
                    rest = [c for c in chambers if min(c) < 0]
                    if rest:
                        block = [[weight(c1, c2) for c2 in rest] for c1 in rest]
                        pairing = [[weight(c1, c2) for c2 in rest] for c1 in pos]
                        reducer = _BlockReducer(ring, block, pairing)
                    else:
                        reducer = None
                    splits[lev] = (
                        {c: k for k, c in enumerate(pos)},
                        {c: k for k, c in enumerate(rest)},
                        reducer,
                    )

            def reduce_vector(lev: Levels, vec: dict[Levels, tuple]):
                """Apply the quotient projection of facet ``lev``."""
                pos_index, rest_index, reducer = splits[lev]
                if reducer is None:
                    return {c: vec.get(c, ring.zero) for c in pos_index}
                v_rest = [ring.zero] * len(rest_index)
                for c, v in vec.items():
                    if c in rest_index:
                        v_rest[rest_index[c]] = v
                v_pos = [vec.get(c, ring.zero) for c in pos_index]
                out_list = reducer.reduce(v_rest, v_pos)
                return {c: out_list[k] for c, k in pos_index.items()}

            star_cols = []
            for r in range(n):
                cols = []
                for f, tau in labels[r + 1]:
                    chamber = _positive_chamber(tau)
                    acc: dict[int, tuple] = {}
                    for e_lev, sign in geo.covers(f.levels):
                        vec = {}
                        for below in geo.fibre(f.levels, e_lev).get(chamber, ()):
                            value = weight(chamber, below)
                            vec[below] = ring.neg(value) if sign < 0 else value
                        if not vec:
                            continue
                        flip = eps[e_lev] * eps[f.levels]
                        for c, value in reduce_vector(e_lev, vec).items():
                            if ring.is_zero(value):
                                continue
                            if flip < 0:
                                value = ring.neg(value)
                            row = index[r][(PosFacet(e_lev), ChamberRefinement(c))]
                            acc[row] = ring.add(acc[row], value) if row in acc else value
                    cols.append({k: v for k, v in acc.items() if not ring.is_zero(v)})
                star_cols.append(cols)

            m_cols = []
            for r in range(n + 1):
                cols = []
                for f, tau in labels[r]:
                    chamber = _positive_chamber(tau)
                    vec = {c: weight(chamber, c) for c in geo.ch(f.levels)}
                    reduced = reduce_vector(f.levels, vec)
                    col = {}
                    for c, value in reduced.items():
                        if not ring.is_zero(value):
                            col[index[r][(f, ChamberRefinement(c))]] = value
                    cols.append(col)
                m_cols.append(cols)
            return star_cols, m_cols

        try:
            star_cols, m_cols = assemble(None)
        except DomainError:
            star_cols, m_cols = _flat_limit_columns(config, ring, assemble)

        # d∘d = 0 in the quotient, checked in the ring.
        for r in range(n - 1):
            for col in star_cols[r + 1]:
                acc: dict[int, tuple] = {}
                for mid, v1 in col.items():
                    for row, v2 in star_cols[r][mid].items():
                        term = ring.mul(v1, v2)
                        acc[row] = ring.add(acc[row], term) if row in acc else term
                if any(not ring.is_zero(v) for v in acc.values()):
                    raise ContractViolation(
                        "the quotient star differential does not square to zero"
                    )

        # The two routes around each square must agree: apply the comparison
        # map after the positive boundary, or the star boundary after the
        # comparison map.
        shriek_sup = _positive_support(n)
        for r in range(n):
            for cidx, ents in enumerate(shriek_sup[r]):
                lhs: dict[int, tuple] = {}
                for mid, sign, _mask in ents:
                    for row, v in m_cols[r][mid].items():
                        term = ring.neg(v) if sign < 0 else v
                        lhs[row] = ring.add(lhs[row], term) if row in lhs else term
                rhs: dict[int, tuple] = {}
                for mid, v1 in m_cols[r + 1][cidx].items():
                    for row, v2 in star_cols[r][mid].items():
                        term = ring.mul(v1, v2)
                        rhs[row] = ring.add(rhs[row], term) if row in rhs else term
                keys = set(lhs) | set(rhs)
                for row in keys:
                    if not ring.is_zero(
                        ring.sub(lhs.get(row, ring.zero), rhs.get(row, ring.zero))
                    ):
                        raise ContractViolation(
                            "the comparison map does not intertwine the differentials"
                        )

        return {"ring": ring, "step": step, "star": star_cols, "m": m_cols}

    return _cached(config, "positive_pieces", build)


def _ring_cols_to_matrix(config, pieces, cols, nrows: int) -> CycMatrix:
    ring, step = pieces["ring"], pieces["step"]
    field = config.field
    entries = {
        (row, cidx): ring.to_cyc(value, field, step)
        for cidx, col in enumerate(cols)
        for row, value in col.items()
    }
    return CycMatrix.from_entries(field, nrows, len(cols), entries)


def complex_star_positive(config: ConfigArrangement) -> FaceComplex:
    """The star extension carried by positive pairs.

    Same labels and grading as :func:`complex_shriek`; the differential is
    the full star differential pushed down to the quotient described in the
    module docstring, expressed in the combinatorial sign convention.
    """
    _require_principal(config)

    def build():
        n = config.n
        pieces = _positive_pieces(config)
        labels = _positive_labels(n)
        dims = [len(labels[n - i]) for i in range(n + 1)]
        diffs = [
            _ring_cols_to_matrix(
                config, pieces, pieces["star"][n - i - 1], len(labels[n - i - 1])
            )
            for i in range(n)
        ]
        by_degree = [labels[n - i] for i in range(n + 1)]
        return FaceComplex(
            config.field, -n, dims, diffs,
            labels=by_degree, config=config, kind="star_positive",
        )

    return _cached(config, "star_positive", build)


# --------------------------------------------------------------------------
# comparison maps


@dataclass(frozen=True)
class ArrangementChainMap:
    """A chain map between two complexes, one matrix per degree."""

    source: ChainComplex
    target: ChainComplex
    maps: tuple[CycMatrix, ...]

    def map_at(self, degree: int) -> CycMatrix:
        return self.maps[degree - self.source.min_degree]


def m_map(config: ConfigArrangement) -> ArrangementChainMap:
    """The comparison map between the two extensions over the full poset.

    Block-diagonal over faces: a chamber goes to the sum of all chambers of
    the same face, weighted by the monodromy across the separating walls.
    Symmetric per block, and a chain map; both facts are verified.
    """
    _require_principal(config)

    def build():
        n = config.n
        source = _full_shriek(config)
        target = complex_star(config)
        sup_m = _m_support(n)
        sup_shr = _full_shriek_support(n)
        sup_star = _full_star_support(n)
        labels = _full_labels(n)
        maps = [
            _densify(config, len(labels[n - i]), sup_m[n - i])
            for i in range(n + 1)
        ]
        for mat in maps:
            if mat.transpose() != mat:
                raise ContractViolation("comparison blocks must be symmetric")
        for p in range(n):
            after = _support_compose(config, sup_m[p], sup_shr[p])
            before = _support_compose(config, sup_star[p], sup_m[p + 1])
            if not _poly_cols_is_zero(config, _poly_cols_difference(after, before)):
                raise ContractViolation(
                    "the comparison map does not intertwine the differentials"
                )
        return ArrangementChainMap(source, target, tuple(maps))

    return _cached(config, "m_map", build)


def m_map_positive(config: ConfigArrangement) -> ArrangementChainMap:
    """The comparison map from the positive complex to the quotient star.

    Per facet this is the block of the full comparison matrix on positive
    chambers corrected by the quotient projection — a Schur complement.  The
    intertwining with the differentials is verified during construction.
    """
    _require_principal(config)

    def build():
        n = config.n
        pieces = _positive_pieces(config)
        labels = _positive_labels(n)
        maps = tuple(
            _ring_cols_to_matrix(
                config, pieces, pieces["m"][n - i], len(labels[n - i])
            )
            for i in range(n + 1)
        )
        return ArrangementChainMap(
            complex_shriek(config), complex_star_positive(config), maps
        )

    return _cached(config, "m_map_positive", build)


def ic_cohomology(config: ConfigArrangement) -> dict[int, int]:
    """Cohomology of the image of the comparison map, degree by degree."""
    _require_principal(config)
    comparison = m_map(config)
    return image_complex(
        comparison.source, comparison.target, comparison.maps
    ).cohomology_dims()


def q_separating(config: ConfigArrangement, first, second) -> CycNum:
    """Product of monodromy weights over the hyperplanes separating two chambers."""
    c1 = _as_chamber(config, first)
    c2 = _as_chamber(config, second)
    exps = _hyp_exponents(config)
    hyps = _hyperplanes(config.n, config.flavor)
    total = 0
    for b, hyp in enumerate(hyps):
        if hyp[0] == "z":
            differ = (c1[hyp[1]] > 0) != (c2[hyp[1]] > 0)
        else:
            differ = (c1[hyp[1]] > c1[hyp[2]]) != (c2[hyp[1]] > c2[hyp[2]])
        if differ:
            total += exps[b]
    return config.field.xi_pow(total % config.field.N)


def _as_chamber(config: ConfigArrangement, chamber) -> Levels:
    if isinstance(chamber, ChamberRefinement):
        return chamber.ranks
    levels = tuple(int(v) for v in chamber)
    if len(levels) != config.n:
        raise ParameterError("chamber has the wrong number of points")
    if 0 in levels or len(set(levels)) != len(levels):
        raise ParameterError("a chamber needs distinct nonzero levels")
    negs = sorted(v for v in levels if v < 0)
    poss = sorted(v for v in levels if v > 0)
    if negs != list(range(-len(negs), 0)) or poss != list(range(1, len(poss) + 1)):
        raise ParameterError("chamber levels must be contiguous")
    if config.flavor == "diagonal" and negs:
        raise ParameterError("diagonal-flavor chambers are total orders")
    return levels


# --------------------------------------------------------------------------
# symmetrization


def _permute_label(label, inverse: Sequence[int]):
    def permute(values: Levels) -> Levels:
        return tuple(values[inverse[j]] for j in range(len(values)))

    a, b = label
    if isinstance(a, PosFacet):
        return (PosFacet(permute(a.levels)), ChamberRefinement(permute(b.ranks)))
    return (permute(a), permute(b))


def skew_symmetrize(cx: FaceComplex, points: Sequence[int]) -> ChainComplex:
    """The sign-isotypic part of the colour-preserving symmetry action.

    The group permutes points of equal colour; on the twisted chain bases the
    signed action reduces to a plain relabelling, so the projector is the
    plain average of the label permutations.  Returns the image complex with
    its induced differential.
    """
    if not isinstance(cx, FaceComplex):
        raise ParameterError("symmetrization needs a labelled complex")
    perms = fibre_permutations(tuple(points))
    field = cx.field
    share = Fraction(1, len(perms))
    maps = []
    for degree in cx.degrees:
        labels = cx.labels(degree)
        index = {lbl: k for k, lbl in enumerate(labels)}
        buckets: dict[tuple[int, int], Fraction] = {}
        for sigma in perms:
            inverse = [0] * len(sigma)
            for j, s in enumerate(sigma):
                inverse[s] = j
            for cidx, lbl in enumerate(labels):
                ridx = index[_permute_label(lbl, inverse)]
                key = (ridx, cidx)
                buckets[key] = buckets.get(key, Fraction(0)) + share
        entries = {key: field.num(v) for key, v in buckets.items() if v}
        maps.append(CycMatrix.from_entries(field, len(labels), len(labels), entries))
    return image_complex(cx, cx, maps)


# --------------------------------------------------------------------------
# isomorphisms onto the bar complexes


def _parity(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _sign_tau_eta(ranks: Levels, eta: Levels) -> int:
    perm = [0] * len(ranks)
    for j, e in enumerate(eta):
        perm[e - 1] = ranks[j] - 1
    return _parity(perm)


def _sign_facet(levels: Levels) -> int:
    # Each block contributes its level times its number of non-minimal points.
    r = max(levels, default=0)
    sizes = [sum(1 for v in levels if v == b) for b in range(1, r + 1)]
    exponent = sum((b + 1) * (sizes[b] - 1) for b in range(r))
    return -1 if exponent % 2 else 1


def _signed_permutation_arrays(matrix: CycMatrix, field):
    """Decompose a matrix as (row of each column, sign), or fail."""
    targets = []
    signs = []
    for c in range(matrix.ncols):
        hit = None
        for r in range(matrix.nrows):
            v = matrix[(r, c)]
            if v.is_zero():
                continue
            if hit is not None:
                raise ContractViolation("expected a signed permutation matrix")
            if v == field.one:
                hit = (r, 1)
            elif v == -field.one:
                hit = (r, -1)
            else:
                raise ContractViolation("expected entries 0, 1, -1")
        if hit is None:
            raise ContractViolation("expected a signed permutation matrix")
        targets.append(hit[0])
        signs.append(hit[1])
    return targets, signs


@dataclass(frozen=True)
class PhiIso:
    """A degreewise signed bijection of bases forming a chain isomorphism."""

    source: ChainComplex
    target: ChainComplex
    maps: tuple[CycMatrix, ...]
    eta: tuple[int, ...]
    kind: str

    def map_at(self, degree: int) -> CycMatrix:
        return self.maps[degree - self.source.min_degree]


def _unfolded_algebra(config: ConfigArrangement) -> FreeAlgebra:
    return _cached(
        config,
        "unfolded_algebra",
        lambda: FreeAlgebra(config.field, UnfoldedDatum(config.datum, config.points)),
    )


def _bar_pair(config: ConfigArrangement, dual: bool):
    key = "bar_dual" if dual else "bar_primal"

    def build():
        algebra = _unfolded_algebra(config)
        unfolded = algebra.datum
        lam = lift_weight(unfolded, config.weight)
        builder = build_dual_complex if dual else build_complex
        return builder(algebra, [lam], unfolded.point_weight)

    return _cached(config, key, build)


def phi_iso(config: ConfigArrangement, eta=None, kind: str = "shriek") -> PhiIso:
    """The signed label bijection onto the matching bar complex.

    The map sends a facet/chamber pair to the word tuple obtained by reading
    its groups in decreasing chamber order, with a facet sign counting
    non-minimal points.  Because the word labels carry the chamber order on
    both sides, the matrices do not depend on the reference order ``eta``;
    it is validated and recorded for orientation bookkeeping only.  The
    chain property is checked entry by entry and a failure is an internal
    error, not an input problem.
    """
    _require_principal(config)
    n = config.n
    if eta is None:
        eta = tuple(range(1, n + 1))
    else:
        eta = tuple(int(v) for v in eta)
        if sorted(eta) != list(range(1, n + 1)):
            raise ParameterError("eta must rank the points 1..N")
    if kind == "shriek":
        source = complex_shriek(config)
        bar = _bar_pair(config, dual=False)
    elif kind == "star":
        source = complex_star_positive(config)
        bar = _bar_pair(config, dual=True)
    else:
        raise ParameterError(f"unknown comparison kind {kind!r}")

    field = config.field
    maps = []
    perm_by_degree = {}
    sign_by_degree = {}
    for degree in source.degrees:
        labels = source.labels(degree)
        if len(labels) != bar.dim(degree):
            raise ContractViolation("cochain and bar dimensions disagree")
        entries = {}
        targets = []
        signs = []
        for cidx, (f, tau) in enumerate(labels):
            words = HochBasisLabel(f.levels, tau.ranks, 1).words()
            ridx = bar.label_index(degree, words)
            sign = _sign_facet(f.levels)
            entries[(ridx, cidx)] = field.one if sign > 0 else -field.one
            targets.append(ridx)
            signs.append(sign)
        if len(set(targets)) != len(targets):
            raise ContractViolation("label correspondence is not a bijection")
        maps.append(
            CycMatrix.from_entries(field, bar.dim(degree), len(labels), entries)
        )
        perm_by_degree[degree] = targets
        sign_by_degree[degree] = signs

    for degree in range(source.min_degree, 0):
        d_src = source.diff(degree)
        d_tgt = bar.diff(degree)
        t_here, s_here = perm_by_degree[degree], sign_by_degree[degree]
        t_next, s_next = perm_by_degree[degree + 1], sign_by_degree[degree + 1]
        mapped = 0
        for j in range(d_src.ncols):
            for i in range(d_src.nrows):
                value = d_src[(i, j)]
                image = d_tgt[(t_next[i], t_here[j])]
                if value * s_next[i] != image * s_here[j]:
                    raise ContractViolation(
                        f"comparison fails on the differential out of degree {degree}"
                    )
                if not value.is_zero():
                    mapped += 1
        remaining = sum(
            1
            for j in range(d_tgt.ncols)
            for i in range(d_tgt.nrows)
            if not d_tgt[(i, j)].is_zero()
        )
        if mapped != remaining:
            raise ContractViolation("differentials have different supports")

    return PhiIso(source, bar, tuple(maps), eta, kind)


@dataclass(frozen=True)
class ComparisonSquare:
    """Both comparison routes between the cochain models and the bar models."""

    phi_shriek: PhiIso
    phi_star: PhiIso
    m_positive: ArrangementChainMap
    s_maps: tuple[CycMatrix, ...]


def comparison_square(config: ConfigArrangement, eta=None) -> ComparisonSquare:
    """Check that the geometric and algebraic comparison maps agree.

    Going through the quotient star and then to the dual bar complex must
    equal going to the bar complex and across the contravariant-form maps.
    Verified entry by entry in every degree.
    """
    shriek_iso = phi_iso(config, eta, "shriek")
    star_iso = phi_iso(config, eta, "star")
    comparison = m_map_positive(config)
    forms = s_chain_maps(shriek_iso.target)
    field = config.field
    for degree in shriek_iso.source.degrees:
        idx = degree - shriek_iso.source.min_degree
        m_mat = comparison.maps[idx]
        s_mat = forms[idx]
        t_star, s_star = _signed_permutation_arrays(star_iso.maps[idx], field)
        t_shr, s_shr = _signed_permutation_arrays(shriek_iso.maps[idx], field)
        for j in range(m_mat.ncols):
            for i in range(m_mat.nrows):
                lhs = m_mat[(i, j)] * s_star[i]
                rhs = s_mat[(t_star[i], t_shr[j])] * s_shr[j]
                if lhs != rhs:
                    raise ContractViolation(
                        f"comparison square fails in degree {degree}"
                    )
    return ComparisonSquare(shriek_iso, star_iso, comparison, forms)


# --------------------------------------------------------------------------
# frozen small examples


def one_point_matrices(
    algebra: FreeAlgebra, weight: Weight, colour: int = 0
) -> dict[str, CycMatrix]:
    """The five comparison matrices of a single point, as classically printed.

    Bases are ordered (positive side, negative side).  ``m`` is the chamber
    pairing at the origin; the restriction and variation matrices connect
    the origin with the two rays for each extension convention.  The m and
    restriction matrices are cross-checked against the assembled complexes.
    """
    field = algebra.field
    if not 0 <= colour < algebra.datum.n:
        raise ParameterError(f"colour {colour} is not a datum colour")
    q = field.zeta_pow(-weight.pair(colour) * algebra.datum.d(colour))
    qi = q.inverse()
    one, zero = field.one, field.zero

    def matrix(rows):
        return CycMatrix(field, tuple(tuple(r) for r in rows))

    out = {
        "m": matrix([[one, q], [q, one]]),
        "restrict_shriek": matrix([[one, zero], [zero, -one]]),
        "restrict_star": matrix([[one, q], [-q, -one]]),
        "variation_shriek": matrix([[one, -qi], [qi, -one]]),
        "variation_star": matrix([[zero, -qi], [qi, zero]]),
    }

    config = ConfigArrangement(algebra, (colour,), weight)
    comparison = m_map(config)
    origin, plus, minus = (0,), (1,), (-1,)
    source, target = comparison.source, comparison.target
    rows = [source.label_index(0, (origin, plus)), source.label_index(0, (origin, minus))]
    m0 = comparison.maps[1]
    for a in range(2):
        for b in range(2):
            if m0[(rows[a], rows[b])] != out["m"][(a, b)]:
                raise ContractViolation("origin comparison block is off")
    ray = [(plus, plus), (minus, minus)]
    d_shr = source.diff(-1)
    d_star = target.diff(-1)
    for a in range(2):
        for b in range(2):
            i = source.label_index(0, (origin, ray[a][1]))
            j = source.label_index(-1, ray[b])
            if d_shr[(i, j)] != out["restrict_shriek"][(b, a)]:
                raise ContractViolation("ray restriction is off")
            if d_star[(i, j)] != out["restrict_star"][(b, a)]:
                raise ContractViolation("ray restriction is off")
    return out


@dataclass(frozen=True)
class DiagonalForm:
    """Chamber pairing of the diagonal flavor with its shuffle-form twin."""

    chambers: tuple[ChamberRefinement, ...]
    matrix: CycMatrix
    sign_normalized: bool


def diagonal_m_matrix(config: ConfigArrangement) -> DiagonalForm:
    """The chamber pairing of the diagonal arrangement, checked two ways.

    Chambers are the total orders of the points; the pairing weights each
    pair of points ordered differently.  It must coincide with the Gram
    matrix of the corresponding monomials of the unfolded free algebra,
    either plainly or after normalizing each chamber by its sign relative
    to the input order.
    """
    if config.flavor != "diagonal":
        raise ParameterError("diagonal_m_matrix needs the diagonal flavor")
    n = config.n
    field = config.field
    chambers = tuple(
        ChamberRefinement(p) for p in sorted(itertools.permutations(range(1, n + 1)))
    )
    matrix = CycMatrix(
        field,
        tuple(
            tuple(q_separating(config, a, b) for b in chambers) for a in chambers
        ),
    )
    algebra = _unfolded_algebra(config)
    words = [
        tuple(sorted(range(n), key=lambda j: -ch.ranks[j])) for ch in chambers
    ]
    gram = [
        [algebra.form_monomials(wa, wb) for wb in words] for wa in words
    ]
    plain = all(
        matrix[(a, b)] == gram[a][b]
        for a in range(len(chambers))
        for b in range(len(chambers))
    )
    if plain:
        return DiagonalForm(chambers, matrix, False)
    eta = tuple(range(1, n + 1))
    signs = [_sign_tau_eta(ch.ranks, eta) for ch in chambers]
    twisted = all(
        matrix[(a, b)] * (signs[a] * signs[b]) == gram[a][b]
        for a in range(len(chambers))
        for b in range(len(chambers))
    )
    if not twisted:
        raise ContractViolation(
            "diagonal pairing does not match the shuffle-form Gram matrix"
        )
    return DiagonalForm(chambers, matrix, True)
