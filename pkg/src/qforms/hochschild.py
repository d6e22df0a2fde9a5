"""Bar complexes of highest-weight modules, one colour-weight at a time.

Everything here is graded over N[I].  A complex never exists as a whole:
``build_complex`` materialises the finite slice where the weights of all
tensor factors add up to a prescribed total.  Basis vectors are labelled by
display-ordered tuples of words — the algebra factors first (each nonempty,
the rightmost one acting on the module block), then one word per module
factor.  The differential alternately merges adjacent algebra factors and
lets the innermost factor act through :func:`tensor_action`.

The same combinatorics, run with deconcatenation in place of concatenation
and the coaction in place of the action, yields the complex of the graded
dual algebra on the dual modules (``build_dual_complex``).  The contravariant
forms connect the two sides degreewise; that they commute with both
differentials is checked, not assumed, whenever ``build_complex_f`` takes
the image.

Finally, the averaging maps spread a weight over a set of labelled points
(one point per letter), turning multiplicity questions into questions about
square-free weights of a larger, point-indexed algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement, permutations, product
from typing import Sequence

from .cyclotomic import CycNum
from .errors import ParameterError
from .freealg import FreeAlgebra, FreeElement, Word, word_weight, words_of_weight
from .linalg import ChainComplex, CycMatrix, image_complex
from .rootdata import CartanDatum, RootVec, Weight, alpha_prime
from .verma import VermaModule

Label = tuple[Word, ...]


# -- the action on tensor products of modules ----------------------------------


def _iterated_split(algebra: FreeAlgebra, u: FreeElement, n: int):
    """Terms of the (n-1)-fold comultiplication: pairs (coefficient, words)."""
    parts: list[tuple[CycNum, tuple[Word, ...]]] = [
        (c, (w,)) for w, c in u.terms.items()
    ]
    for _ in range(n - 1):
        grown = []
        for c, words in parts:
            for (first, second), cc in algebra.comult(algebra.monomial(words[0])).items():
                grown.append((c * cc, (first, second) + words[1:]))
        parts = grown
    return parts


def tensor_action(
    u: FreeElement,
    modules: Sequence[VermaModule],
    vectors: Sequence[FreeElement],
) -> dict[Label, CycNum]:
    """Act by an algebra element on a pure tensor of module vectors.

    The element is split across the factors by iterated comultiplication;
    each split piece crosses the module factors to its left, picking up one
    power of zeta per scalar product of its weight with the current weight
    of the factor it crosses.  With a single module factor this is plain
    left multiplication.

    Returns a dictionary mapping tuples of module words to coefficients.
    """
    n = len(modules)
    if n == 0:
        raise ParameterError("the action needs at least one module factor")
    if len(vectors) != n:
        raise ParameterError(f"expected {n} vectors, got {len(vectors)}")
    algebra = u.algebra
    datum = algebra.datum
    field = algebra.field
    for m in modules:
        if m.algebra.datum != datum:
            raise ParameterError("modules live over a different datum than the element")

    out: dict[Label, CycNum] = {}

    def add(key: Label, c: CycNum):
        acc = out.get(key)
        out[key] = c if acc is None else acc + c

    if n == 1:
        for w, c in u.terms.items():
            for y, cy in vectors[0].terms.items():
                add((w + y,), c * cy)
        return {k: v for k, v in out.items() if not v.is_zero()}

    mod_terms = [tuple(v.terms.items()) for v in vectors]
    for c0, pieces in _iterated_split(algebra, u, n):
        piece_weights = [
            word_weight(datum, p) if p else None for p in pieces
        ]
        for choice in product(*mod_terms):
            exponent = Fraction(0)
            for s in range(1, n):
                nu_s = piece_weights[s]
                if nu_s is None:
                    continue
                for j in range(s):
                    lam_j = modules[j].highest_weight - alpha_prime(
                        word_weight(datum, choice[j][0])
                    )
                    exponent -= lam_j.dot_root(nu_s)
            coeff = c0 * field.zeta_pow(exponent)
            for _, cy in choice:
                coeff = coeff * cy
            add(tuple(pieces[j] + choice[j][0] for j in range(n)), coeff)
    return {k: v for k, v in out.items() if not v.is_zero()}


# -- basis labels ---------------------------------------------------------------


def degree_labels(datum, n: int, r: int, nu: RootVec) -> tuple[Label, ...]:
    """Basis labels of the degree ``-r`` term at the given total weight.

    A label is a display-ordered tuple of ``r`` nonempty algebra words
    followed by ``n`` module words; enumeration order is deterministic
    (sub-weights in product order, words lexicographically).
    """
    if n < 1:
        raise ParameterError("a complex needs at least one module slot")
    if r < 0 or r > nu.depth:
        return ()
    out: list[Label] = []

    def rec(slot: int, remaining: tuple[int, ...], acc: list[Word]):
        if slot == r + n:
            out.append(tuple(acc))
            return
        if slot == r + n - 1:
            # the last module slot takes whatever is left
            for w in words_of_weight(datum, RootVec(datum, remaining)):
                acc.append(w)
                rec(slot + 1, (0,) * len(remaining), acc)
                acc.pop()
            return
        algebra_slots_after = max(r - slot - 1, 0)
        budget = sum(remaining)
        for mu in product(*(range(m + 1) for m in remaining)):
            size = sum(mu)
            if slot < r and size == 0:
                continue
            if budget - size < algebra_slots_after:
                continue
            rest = tuple(a - b for a, b in zip(remaining, mu))
            for w in words_of_weight(datum, RootVec(datum, mu)):
                acc.append(w)
                rec(slot + 1, rest, acc)
                acc.pop()

    rec(0, tuple(nu.multiplicities), [])
    return tuple(out)


@dataclass(frozen=True)
class HochBasisLabel:
    """A slot assignment for labelled points together with a refinement.

    ``rho[j]`` puts point ``j`` into an algebra slot (values ``1..r``, every
    one of which must be occupied) or a module slot (values ``0`` down to
    ``-n+1``).  ``tau`` is a bijection onto ``1..N`` ordering all points at
    once; it must refine ``rho``: points in lower slots come first.
    """

    rho: tuple[int, ...]
    tau: tuple[int, ...]
    n: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("need at least one module slot")
        points = len(self.rho)
        if len(self.tau) != points:
            raise ParameterError("rho and tau must order the same points")
        if sorted(self.tau) != list(range(1, points + 1)):
            raise ParameterError("tau must be a bijection onto 1..N")
        if any(a < 1 - self.n for a in self.rho):
            raise ParameterError("slot index below the module range")
        occupied = set(self.rho)
        for a in range(1, self.r + 1):
            if a not in occupied:
                raise ParameterError(f"algebra slot {a} is empty")
        for i in range(points):
            for j in range(points):
                if self.rho[i] < self.rho[j] and self.tau[i] > self.tau[j]:
                    raise ParameterError("tau does not refine rho")

    @property
    def r(self) -> int:
        return max(0, max(self.rho, default=0))

    def words(self) -> Label:
        """The display tuple of point words this label stands for.

        Within a slot, points are written in decreasing tau order, so the
        point acting first sits rightmost.
        """
        slots: dict[int, list[int]] = {}
        for j, a in enumerate(self.rho):
            slots.setdefault(a, []).append(j)
        label = []
        for a in range(self.r, -self.n, -1):
            members = sorted(slots.get(a, ()), key=lambda j: self.tau[j], reverse=True)
            label.append(tuple(members))
        return tuple(label)

    @classmethod
    def from_words(cls, label: Label, n: int) -> "HochBasisLabel":
        """Invert :meth:`words`; the label letters must be 0..N-1, each once."""
        r = len(label) - n
        if r < 0:
            raise ParameterError("label has fewer slots than module factors")
        letters = [j for w in label for j in w]
        points = len(letters)
        if sorted(letters) != list(range(points)):
            raise ParameterError("letters must be the points 0..N-1, each exactly once")
        if any(not w for w in label[:r]):
            raise ParameterError("algebra slots must be nonempty")
        rho = [0] * points
        tau = [0] * points
        rank = 1
        for pos in range(r + n - 1, -1, -1):
            for j in reversed(label[pos]):
                rho[j] = r - pos
                tau[j] = rank
                rank += 1
        return cls(tuple(rho), tuple(tau), n)


def slot_maps(points: int, n: int, r: int) -> tuple[tuple[int, ...], ...]:
    """All slot assignments of the given points with every algebra slot hit."""
    if points < 0 or n < 1 or r < 0:
        raise ParameterError("points, n and r must be sensible sizes")
    needed = set(range(1, r + 1))
    return tuple(
        rho
        for rho in product(range(1 - n, r + 1), repeat=points)
        if needed <= set(rho)
    )


def refinements(rho: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """All global point orders refining a slot assignment."""
    groups: dict[int, list[int]] = {}
    for j, a in enumerate(rho):
        groups.setdefault(a, []).append(j)
    keys = sorted(groups)
    out = []
    for combo in product(*(permutations(groups[a]) for a in keys)):
        tau = [0] * len(rho)
        rank = 1
        for part in combo:
            for j in part:
                tau[j] = rank
                rank += 1
        out.append(tuple(tau))
    return tuple(out)


def basis_labels(points: int, n: int, r: int) -> tuple[HochBasisLabel, ...]:
    """Every (rho, tau) basis label in degree ``-r`` for square-free weights."""
    return tuple(
        HochBasisLabel(rho, tau, n)
        for rho in slot_maps(points, n, r)
        for tau in refinements(rho)
    )


# -- the complexes ---------------------------------------------------------------


class BarComplex(ChainComplex):
    """A weight slice of a bar complex that remembers how it was built.

    On top of the raw chain data this carries the algebra, the module
    handles, the total weight, the per-degree basis labels, and whether the
    differentials are the primal (action) or dual (coaction) ones.
    """

    def __init__(self, field, min_degree, dims, diffs, *, algebra, modules, nu,
                 labels, dual: bool):
        super().__init__(field, min_degree, dims, diffs)
        self.algebra = algebra
        self.modules = tuple(modules)
        self.nu = nu
        self.dual = bool(dual)
        self._labels = tuple(tuple(lbls) for lbls in labels)
        self._index: dict[int, dict[Label, int]] = {}

    def labels(self, degree: int) -> tuple[Label, ...]:
        return self._labels[degree - self.min_degree]

    def label_index(self, degree: int, label: Label) -> int:
        index = self._index.get(degree)
        if index is None:
            index = {lbl: k for k, lbl in enumerate(self.labels(degree))}
            self._index[degree] = index
        try:
            return index[label]
        except KeyError:
            raise ParameterError(
                f"{label} is not a basis label in degree {degree}"
            ) from None


def _modules_for(algebra: FreeAlgebra, weights: Sequence[Weight]) -> tuple[VermaModule, ...]:
    ws = tuple(weights)
    if not ws:
        raise ParameterError("at least one highest weight is required")
    return tuple(VermaModule(algebra, lam) for lam in ws)


def _primal_image(algebra, modules, label: Label, r: int) -> dict[Label, CycNum]:
    field = algebra.field
    out: dict[Label, CycNum] = {}

    def add(lbl: Label, c: CycNum):
        acc = out.get(lbl)
        out[lbl] = c if acc is None else acc + c

    for p in range(1, r):
        merged = (
            label[: r - p - 1]
            + (label[r - p - 1] + label[r - p],)
            + label[r - p + 1 :]
        )
        add(merged, field.num(-1 if p % 2 else 1))
    acted = tensor_action(
        algebra.monomial(label[r - 1]),
        modules,
        [algebra.monomial(w) for w in label[r:]],
    )
    for tail, c in acted.items():
        add(label[: r - 1] + tail, c)
    return out


class _DualFaces:
    """Memoised structure constants for the dual-side differential."""

    def __init__(self, algebra: FreeAlgebra, modules: Sequence[VermaModule]):
        self.algebra = algebra
        self.modules = tuple(modules)
        self._comult: dict[Word, dict] = {}
        self._coaction: list[dict[Word, dict]] = [{} for _ in modules]

    def comult(self, w: Word) -> dict:
        got = self._comult.get(w)
        if got is None:
            got = self.algebra.comult(self.algebra.monomial(w))
            self._comult[w] = got
        return got

    def coaction(self, s: int, w: Word) -> dict:
        got = self._coaction[s].get(w)
        if got is None:
            got = self.modules[s].coaction(self.algebra.monomial(w))
            self._coaction[s][w] = got
        return got


def _dual_image(faces: _DualFaces, label: Label, r: int) -> dict[Label, CycNum]:
    algebra = faces.algebra
    field = algebra.field
    datum = algebra.datum
    modules = faces.modules
    n = len(modules)
    out: dict[Label, CycNum] = {}

    def add(lbl: Label, c: CycNum):
        acc = out.get(lbl)
        out[lbl] = c if acc is None else acc + c

    # merging two dual algebra factors: dual to splitting one word in two
    for p in range(1, r):
        left, right = label[r - p - 1], label[r - p]
        sign = field.num(-1 if p % 2 else 1)
        for w in words_of_weight(datum, word_weight(datum, left + right)):
            c = faces.comult(w).get((left, right))
            if c is not None:
                add(label[: r - p - 1] + (w,) + label[r - p + 1 :], sign * c)

    # the action face: deconcatenate, then act slotwise through the coaction
    head = label[r - 1]
    mods = label[r:]
    lam = [
        modules[j].highest_weight - alpha_prime(word_weight(datum, mods[j]))
        for j in range(n)
    ]
    cut_range = len(head)
    for cuts in combinations_with_replacement(range(cut_range + 1), n - 1):
        bounds = (0,) + cuts + (cut_range,)
        pieces = [head[bounds[s] : bounds[s + 1]] for s in range(n)]
        exponent = Fraction(0)
        for s in range(1, n):
            if pieces[s]:
                nu_s = word_weight(datum, pieces[s])
                for j in range(s):
                    exponent -= lam[j].dot_root(nu_s)
        options: list[tuple[tuple[Word, CycNum], ...]] | None = []
        for s in range(n):
            piece, y = pieces[s], mods[s]
            if not piece:
                options.append(((y, field.one),))
                continue
            opts = []
            for x in words_of_weight(datum, word_weight(datum, piece + y)):
                c = faces.coaction(s, x).get((piece, y))
                if c is not None:
                    opts.append((x, c))
            if not opts:
                options = None
                break
            options.append(tuple(opts))
        if options is None:
            continue
        twist = field.zeta_pow(exponent)
        for combo in product(*options):
            coeff = twist
            for _, c in combo:
                coeff = coeff * c
            add(label[: r - 1] + tuple(x for x, _ in combo), coeff)
    return out


def _assemble(algebra, modules, nu: RootVec, dual: bool) -> BarComplex:
    datum = algebra.datum
    field = algebra.field
    if nu.datum != datum:
        raise ParameterError("weight belongs to a different datum than the algebra")
    n = len(modules)
    depth = nu.depth
    labels = [degree_labels(datum, n, depth - p, nu) for p in range(depth + 1)]
    faces = _DualFaces(algebra, modules) if dual else None
    diffs = []
    for p in range(depth):
        r = depth - p
        target_index = {lbl: k for k, lbl in enumerate(labels[p + 1])}
        entries: dict[tuple[int, int], CycNum] = {}
        for col, lbl in enumerate(labels[p]):
            image = (
                _dual_image(faces, lbl, r)
                if dual
                else _primal_image(algebra, modules, lbl, r)
            )
            for tgt, coeff in image.items():
                key = (target_index[tgt], col)
                acc = entries.get(key)
                entries[key] = coeff if acc is None else acc + coeff
        diffs.append(
            CycMatrix.from_entries(field, len(labels[p + 1]), len(labels[p]), entries)
        )
    bar = BarComplex(
        field,
        -depth,
        [len(lbls) for lbls in labels],
        diffs,
        algebra=algebra,
        modules=modules,
        nu=nu,
        labels=labels,
        dual=dual,
    )
    bar.assert_complex()
    return bar


def build_complex(algebra: FreeAlgebra, weights: Sequence[Weight], nu: RootVec) -> BarComplex:
    """The weight slice of the bar complex of a tuple of highest-weight modules.

    Degrees run from ``-|nu|`` to 0; the differential merges adjacent algebra
    factors with alternating signs and applies :func:`tensor_action` as the
    innermost face.  The square of the differential is asserted to vanish.
    """
    return _assemble(algebra, _modules_for(algebra, weights), nu, dual=False)


def build_dual_complex(algebra: FreeAlgebra, weights: Sequence[Weight], nu: RootVec) -> BarComplex:
    """The companion complex of the graded dual algebra on the dual modules.

    Basis labels are shared with :func:`build_complex` (read as dual bases);
    products are dual to comultiplication, the action face dual to the
    coaction.  This is where the weight brackets enter the differential.
    """
    return _assemble(algebra, _modules_for(algebra, weights), nu, dual=True)


def s_chain_maps(bar: BarComplex) -> tuple[CycMatrix, ...]:
    """Degreewise matrices of the contravariant forms, slot by slot.

    Entry (row, col) pairs two labels of equal degree: the product over
    algebra slots of the algebra form and over module slots of the module
    form.  Rows are read in the dual basis of the companion complex.
    """
    if bar.dual:
        raise ParameterError("form maps start from the primal-side complex")
    algebra = bar.algebra
    field = bar.field
    modules = bar.modules
    n = len(modules)
    out = []
    for degree in bar.degrees:
        labels = bar.labels(degree)
        r = -degree
        rows = []
        for row_label in labels:
            row = []
            for col_label in labels:
                val = field.one
                for p in range(r):
                    val = val * algebra.form_monomials(col_label[p], row_label[p])
                    if val.is_zero():
                        break
                else:
                    for j in range(n):
                        val = val * modules[j].form(
                            algebra.monomial(col_label[r + j]),
                            algebra.monomial(row_label[r + j]),
                        )
                        if val.is_zero():
                            break
                row.append(val)
            rows.append(row)
        out.append(CycMatrix(field, rows) if labels else CycMatrix.zero(field, 0, 0))
    return tuple(out)


def build_complex_f(algebra: FreeAlgebra, weights: Sequence[Weight], nu: RootVec) -> ChainComplex:
    """The degreewise image of the forms, as a complex of the quotient data.

    Builds both sides and pushes the primal complex through the form maps;
    the chain-map property of the forms is verified exactly in every degree
    (a failure raises ContractViolation) before images are taken.
    """
    modules = _modules_for(algebra, weights)
    src = _assemble(algebra, modules, nu, dual=False)
    dst = _assemble(algebra, modules, nu, dual=True)
    return image_complex(src, dst, list(s_chain_maps(src)))


def tor_dims(algebra: FreeAlgebra, weights: Sequence[Weight], nu: RootVec) -> tuple[int, ...]:
    """Cohomology dimensions of :func:`build_complex`, degree 0 first.

    Entry ``r`` is the dimension in degree ``-r``; for free module tuples
    everything beyond degree 0 vanishes and entry 0 counts coinvariants.
    """
    coh = build_complex(algebra, weights, nu).cohomology_dims()
    return tuple(coh[-r] for r in range(nu.depth + 1))


# -- labelled points and averaging ------------------------------------------------


@dataclass(frozen=True)
class UnfoldedDatum:
    """A finite set of points, each labelled by a colour of a base datum.

    Quacks like a datum as far as the free algebra and its modules care: it
    has colours (the points), a symmetric integer ``dot`` matrix pulled back
    along the labelling, and the derived ``d``/``cartan`` numbers.  It is not
    a Cartan datum — two points with the same label pair positively — and it
    deliberately lacks the weight-form helpers that would need an inverse.
    """

    base: CartanDatum
    fibre: tuple[int, ...]

    def __post_init__(self):
        if not self.fibre:
            raise ParameterError("at least one point is required")
        if any(c not in self.base.colours for c in self.fibre):
            raise ParameterError("point labels must be colours of the base datum")

    @property
    def n(self) -> int:
        return len(self.fibre)

    @property
    def colours(self) -> range:
        return range(len(self.fibre))

    @cached_property
    def dot(self) -> tuple[tuple[int, ...], ...]:
        base = self.base.dot
        return tuple(
            tuple(base[ci][cj] for cj in self.fibre) for ci in self.fibre
        )

    def d(self, j: int) -> int:
        return self.base.d(self.fibre[j])

    def cartan(self, i: int, j: int) -> int:
        return 2 * self.dot[i][j] // self.dot[i][i]

    def weight(self, coords) -> Weight:
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != self.n:
            raise ParameterError(f"weight needs {self.n} coordinates, got {len(cs)}")
        return Weight(self, cs)

    def zero_weight(self) -> Weight:
        return Weight(self, (Fraction(0),) * self.n)

    def root_vec(self, mult) -> RootVec:
        ms = tuple(int(m) for m in mult)
        if len(ms) != self.n or any(m < 0 for m in ms):
            raise ParameterError("root vector needs non-negative multiplicities per point")
        return RootVec(self, ms)

    def unit_root(self, j: int) -> RootVec:
        return RootVec(self, tuple(int(j == k) for k in self.colours))

    @property
    def point_weight(self) -> RootVec:
        """Every point exactly once: the square-free total weight."""
        return RootVec(self, (1,) * self.n)

    def folded(self, nu: RootVec) -> RootVec:
        """Push a point weight down to the base colours."""
        if nu.datum != self:
            raise ParameterError("weight belongs to different points")
        counts = [0] * self.base.n
        for j, m in enumerate(nu.multiplicities):
            counts[self.fibre[j]] += m
        return RootVec(self.base, tuple(counts))


def lift_weight(points: UnfoldedDatum, lam: Weight) -> Weight:
    """Pull a base weight back to the points: coordinates repeat along fibres."""
    if lam.datum != points.base:
        raise ParameterError("weight belongs to a different base datum")
    return Weight(points, tuple(lam.coords[c] for c in points.fibre))


def fibre_permutations(fibre: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """All permutations of the points that preserve the colour labelling."""
    groups: dict[int, list[int]] = {}
    for j, c in enumerate(fibre):
        groups.setdefault(c, []).append(j)
    keys = sorted(groups)
    out = []
    for combo in product(*(permutations(groups[c]) for c in keys)):
        sigma = [0] * len(fibre)
        for c, perm in zip(keys, combo):
            for src, dst in zip(groups[c], perm):
                sigma[src] = dst
        out.append(tuple(sigma))
    return tuple(out)


def _check_unfolding(fibre: tuple[int, ...], datum, nu_mult: tuple[int, ...]):
    counts = [0] * len(nu_mult)
    for c in fibre:
        counts[c] += 1
    if tuple(counts) != tuple(nu_mult):
        raise ParameterError("labelling does not unfold the weight")


def symmetrize_average(x: FreeElement, fibre: Sequence[int]) -> FreeElement:
    """Spread a homogeneous element over labelled points.

    Each word is replaced by the sum of all its point-letter rewritings:
    one term per bijection between letter positions and points of matching
    colour.  Folding the labels away recovers the original element times
    the order of the label-preserving symmetry group.
    """
    datum = x.algebra.datum
    if isinstance(datum, UnfoldedDatum):
        raise ParameterError("element is already spread over labelled points")
    weight = x.weight
    if weight is None:
        raise ParameterError("the zero element has no weight to unfold")
    points = UnfoldedDatum(datum, tuple(int(c) for c in fibre))
    _check_unfolding(points.fibre, datum, weight.multiplicities)
    target = FreeAlgebra(x.algebra.field, points)
    fibre_positions: dict[int, list[int]] = {}
    for j, c in enumerate(points.fibre):
        fibre_positions.setdefault(c, []).append(j)
    terms: dict[Word, CycNum] = {}
    for w, coeff in x.terms.items():
        by_colour: dict[int, list[int]] = {}
        for pos, c in enumerate(w):
            by_colour.setdefault(c, []).append(pos)
        order = sorted(by_colour)
        for combo in product(*(permutations(fibre_positions[c]) for c in order)):
            jw = [0] * len(w)
            for c, perm in zip(order, combo):
                for pos, j in zip(by_colour[c], perm):
                    jw[pos] = j
            terms[tuple(jw)] = coeff
    return FreeElement(target, terms)


def fold_element(x: FreeElement, algebra: FreeAlgebra | None = None) -> FreeElement:
    """Forget point labels, substituting each point's colour."""
    datum = x.algebra.datum
    if not isinstance(datum, UnfoldedDatum):
        raise ParameterError("only point-labelled elements fold")
    if algebra is None:
        algebra = FreeAlgebra(x.algebra.field, datum.base)
    elif algebra.datum != datum.base:
        raise ParameterError("target algebra lives over the wrong datum")
    terms: dict[Word, CycNum] = {}
    for w, c in x.terms.items():
        key = tuple(datum.fibre[j] for j in w)
        acc = terms.get(key)
        terms[key] = c if acc is None else acc + c
    return FreeElement(algebra, terms)


def symmetrize_complex_maps(src: BarComplex, dst: BarComplex) -> tuple[CycMatrix, ...]:
    """Degreewise matrices of the averaging map between two bar complexes.

    The source lives at a base weight, the target at the square-free point
    weight of an unfolding; module weights must correspond under the lift.
    Every entry is 0 or 1: a column lists the point-rewritings of its label.
    """
    points = dst.algebra.datum
    if not isinstance(points, UnfoldedDatum) or points.base != src.algebra.datum:
        raise ParameterError("target complex must live over an unfolding of the source datum")
    _check_unfolding(points.fibre, src.algebra.datum, src.nu.multiplicities)
    if dst.nu.multiplicities != (1,) * points.n:
        raise ParameterError("target complex must sit at the square-free point weight")
    if src.dual != dst.dual:
        raise ParameterError("cannot average between primal and dual sides")
    if len(src.modules) != len(dst.modules):
        raise ParameterError("module counts differ")
    for ms, md in zip(src.modules, dst.modules):
        if md.highest_weight != lift_weight(points, ms.highest_weight):
            raise ParameterError("target module weights are not the lifted ones")
    fibre_positions: dict[int, list[int]] = {}
    for j, c in enumerate(points.fibre):
        fibre_positions.setdefault(c, []).append(j)
    field = src.field
    out = []
    for degree in src.degrees:
        source_labels = src.labels(degree)
        entries: dict[tuple[int, int], CycNum] = {}
        for col, label in enumerate(source_labels):
            flat: dict[int, list[tuple[int, int]]] = {}
            for slot, w in enumerate(label):
                for k, c in enumerate(w):
                    flat.setdefault(c, []).append((slot, k))
            order = sorted(flat)
            for combo in product(*(permutations(fibre_positions[c]) for c in order)):
                rewritten = [list(w) for w in label]
                for c, perm in zip(order, combo):
                    for (slot, k), j in zip(flat[c], perm):
                        rewritten[slot][k] = j
                target = tuple(tuple(w) for w in rewritten)
                entries[(dst.label_index(degree, target), col)] = field.one
        out.append(
            CycMatrix.from_entries(field, dst.dim(degree), len(source_labels), entries)
        )
    return tuple(out)
