"""Finite-dimensional weight-graded modules with raising and lowering
operators: irreducibles, tensor products, duals and invariant counts.

A module here is an X-graded space together with matrices for the theta_i
(lowering by i') and epsilon_i (raising by i').  The torus part of the
action is never stored -- the grading determines it -- so the only data is
the two families of matrices, and `check_relations` is the single gatekeeper
that the commutation relation, the nilpotency degrees and the two-colour
relations all hold.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .cyclotomic import CycField, CycNum
from .errors import ContractViolation, CutoffError, DomainError, ParameterError
from .freealg import FreeAlgebra, words_of_weight
from .linalg import CycMatrix
from .rootdata import (
    CartanDatum,
    EllData,
    RootVec,
    Weight,
    alpha_prime,
    in_first_alcove,
)
from .verma import VermaModule

Word = Tuple[int, ...]


def _shift(datum: CartanDatum, i: int) -> Weight:
    """The weight i' that theta_i lowers by."""
    return alpha_prime(datum.unit_root(i))


class CModule:
    """A weight-graded module with explicit operator matrices.

    ``side`` records whether the matrices represent a left action (the
    default) or the right action produced by the plain dual; the only
    behavioural difference is the order in which composite operators are
    read, and the sign of the weight in the commutation relation.
    """

    __slots__ = ("field", "datum", "side", "labels", "_dims", "_theta", "_eps")

    def __init__(
        self,
        field: CycField,
        datum: CartanDatum,
        labels: Mapping[Weight, Sequence[str]],
        theta: Mapping[Tuple[int, Weight], CycMatrix],
        eps: Mapping[Tuple[int, Weight], CycMatrix],
        side: str = "left",
    ):
        if side not in ("left", "right"):
            raise ParameterError(f"side must be 'left' or 'right', got {side!r}")
        self.field = field
        self.datum = datum
        self.side = side
        self.labels: Dict[Weight, Tuple[str, ...]] = {}
        for lam, names in labels.items():
            if lam.datum != datum:
                raise ParameterError("graded piece keyed by a foreign weight")
            if names:
                self.labels[lam] = tuple(str(s) for s in names)
        self._dims = {lam: len(names) for lam, names in self.labels.items()}
        self._theta = self._take_ops(theta, raise_by=False)
        self._eps = self._take_ops(eps, raise_by=True)

    def _take_ops(self, ops, raise_by: bool) -> Dict[Tuple[int, Weight], CycMatrix]:
        out = {}
        for (i, lam), mat in ops.items():
            if i not in self.datum.colours:
                raise ParameterError(f"no colour {i} in this datum")
            step = _shift(self.datum, i)
            target = lam + step if raise_by else lam - step
            want = (self.dim(target), self.dim(lam))
            if (mat.nrows, mat.ncols) != want:
                raise ParameterError(
                    f"operator at {(i, lam)} has shape {(mat.nrows, mat.ncols)},"
                    f" expected {want}"
                )
            if mat.field != self.field:
                raise ParameterError("operator entries live in a different field")
            if 0 not in want and not mat.is_zero():
                out[(i, lam)] = mat
        return out

    # -- shape bookkeeping -----------------------------------------------------

    def dim(self, lam: Weight) -> int:
        return self._dims.get(lam, 0)

    @property
    def total_dim(self) -> int:
        return sum(self._dims.values())

    def weights(self) -> List[Weight]:
        return sorted(self._dims, key=lambda w: w.coords)

    def graded_dims(self) -> List[Tuple[Tuple[Fraction, ...], int]]:
        """Sorted (coords, dimension) pairs -- the shape of the module."""
        return [(w.coords, self._dims[w]) for w in self.weights()]

    def theta_op(self, i: int, lam: Weight) -> CycMatrix:
        """Matrix of theta_i out of the lam piece (zero when unstored)."""
        mat = self._theta.get((i, lam))
        if mat is not None:
            return mat
        return CycMatrix.zero(self.field, self.dim(lam - _shift(self.datum, i)), self.dim(lam))

    def eps_op(self, i: int, lam: Weight) -> CycMatrix:
        """Matrix of epsilon_i out of the lam piece (zero when unstored)."""
        mat = self._eps.get((i, lam))
        if mat is not None:
            return mat
        return CycMatrix.zero(self.field, self.dim(lam + _shift(self.datum, i)), self.dim(lam))

    # -- composite operators -----------------------------------------------------

    def _word_op(self, word: Word, lam: Weight, raise_by: bool) -> CycMatrix:
        """Matrix on the lam piece of a monomial in the thetas (or, with
        raise_by, the same monomial with epsilons substituted).

        Left modules apply the rightmost letter first; right modules the
        leftmost.
        """
        order = reversed(word) if self.side == "left" else iter(word)
        mat = CycMatrix.identity(self.field, self.dim(lam))
        cur = lam
        for i in order:
            step = _shift(self.datum, i)
            mat = (self.eps_op(i, cur) if raise_by else self.theta_op(i, cur)) @ mat
            cur = cur + step if raise_by else cur - step
        return mat

    def check_relations(self) -> None:
        """Verify the defining relations on every stored weight space.

        Checks, exactly: the epsilon/theta commutation relation with the
        grading-determined bracket; nilpotency of each colour to its own
        order; the two-colour straightening elements acting as zero through
        thetas and through epsilons.  Raises ContractViolation on the first
        failure.
        """
        field, datum = self.field, self.datum
        sign = 1 if self.side == "left" else -1
        for lam in self._dims:
            for i in datum.colours:
                a = Fraction(lam.pair(i))
                if field.q_bracket(a, datum.d(i)) != field.q_bracket(datum.d(i) * a):
                    raise ContractViolation("colour bracket disagrees with its plain form")
                for j in datum.colours:
                    down_up = self.eps_op(i, lam - _shift(datum, j)) @ self.theta_op(j, lam)
                    up_down = self.theta_op(j, lam + _shift(datum, i)) @ self.eps_op(i, lam)
                    if self.side == "left":
                        net = down_up - up_down.scale(field.zeta_pow(datum.dot[i][j]))
                    else:
                        net = up_down - down_up.scale(field.zeta_pow(datum.dot[i][j]))
                    expected = CycMatrix.zero(field, net.nrows, net.ncols)
                    if i == j:
                        bracket = field.q_bracket(sign * a, datum.d(i))
                        expected = CycMatrix.identity(field, self.dim(lam)).scale(bracket)
                    if net != expected:
                        raise ContractViolation(
                            f"commutation relation fails at weight {lam} for colours {(i, j)}"
                        )
        ell = field.l if field.l % 2 else field.l // 2
        for i in datum.colours:
            power = (i,) * (ell // gcd(ell, datum.d(i)))
            for lam in self._dims:
                if not self._word_op(power, lam, raise_by=False).is_zero():
                    raise ContractViolation(f"theta_{i} is not nilpotent of its order")
                if not self._word_op(power, lam, raise_by=True).is_zero():
                    raise ContractViolation(f"epsilon_{i} is not nilpotent of its order")
        if datum.n > 1:
            alg = FreeAlgebra(field, datum)
            for i in datum.colours:
                for j in datum.colours:
                    if i == j:
                        continue
                    element = alg.serre_element(i, j)
                    for raise_by in (False, True):
                        for lam in self._dims:
                            acc = None
                            for w, c in element.terms.items():
                                term = self._word_op(w, lam, raise_by).scale(c)
                                acc = term if acc is None else acc + term
                            if acc is not None and not acc.is_zero():
                                raise ContractViolation(
                                    f"straightening element for {(i, j)} acts nonzero"
                                )


# -- construction of the irreducibles ---------------------------------------------


def _max_depth(datum: CartanDatum, ell: int) -> int:
    """Depth of the lowest weight of the finite negative part: past this,
    every weight space of every irreducible pairs to zero."""
    total = 0
    for alpha in datum.positive_roots:
        ell_alpha = ell // gcd(ell, datum.d_of_root(alpha))
        total += (ell_alpha - 1) * alpha.depth
    return total


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def irreducible_module(
    lam: Weight,
    e: EllData,
    field: CycField | None = None,
    max_depth: int | None = None,
) -> CModule:
    """The simple module with highest weight lam, as a quotient of the
    Verma construction by the kernel of its contraction form.

    Basis vectors are the classes of a pivot set of words per weight;
    operator matrices are obtained by solving against the Gram pivots.
    ``max_depth`` overrides the safety bound past which non-vanishing
    ranks abort with CutoffError.
    """
    datum = lam.datum
    if e.datum != datum:
        raise ParameterError("weight and l-data use different Cartan data")
    if not e.in_X_ell(lam):
        raise ParameterError(f"{lam} is not in the admissible weight lattice")
    if field is None:
        field = CycField(l=e.l, k=1, varpi=datum.varpi)
    elif field.l != e.l or field.varpi != datum.varpi:
        raise ParameterError("field parameters disagree with the l-data")
    alg = FreeAlgebra(field, datum)
    verma = VermaModule(alg, lam)
    bound = _max_depth(datum, e.ell) if max_depth is None else max_depth

    kept: Dict[RootVec, tuple] = {}  # nu -> (words, gram, pivot columns)
    depth = 0
    while True:
        found = 0
        for counts in _compositions(depth, datum.n):
            nu = RootVec(datum, counts)
            words = words_of_weight(datum, nu)
            gram = verma.gram(nu)
            pivots = gram.column_space_pivots()
            if pivots:
                kept[nu] = (words, gram, pivots)
                found += len(pivots)
        if not found:
            break
        if depth > bound:
            raise CutoffError(
                f"weight spaces still alive at depth {depth} (bound {bound})"
            )
        depth += 1

    def reduce_elem(nu: RootVec, element) -> List[CycNum]:
        """Coordinates of a vector's class in the pivot basis at nu."""
        words, gram, pivots = kept[nu]
        pairings = []
        for row_word in words:
            total = field.zero
            for w, c in element.terms.items():
                val = verma._form_words(row_word, w)
                if not val.is_zero():
                    total = total + c * val
            pairings.append(total)
        gram_piv = CycMatrix.from_columns(field, [gram.column(p) for p in pivots], len(words))
        rhs = CycMatrix.from_columns(field, [pairings], len(words))
        sol = gram_piv.solve(rhs)
        return [sol[r, 0] for r in range(len(pivots))]

    labels: Dict[Weight, Tuple[str, ...]] = {}
    weight_of: Dict[RootVec, Weight] = {}
    for nu, (words, _, pivots) in kept.items():
        mu = lam - alpha_prime(nu)
        weight_of[nu] = mu
        labels[mu] = tuple(
            "v" if not words[p] else "θ" + "".join(map(str, words[p])) for p in pivots
        )

    theta: Dict[Tuple[int, Weight], CycMatrix] = {}
    eps: Dict[Tuple[int, Weight], CycMatrix] = {}
    for nu, (words, _, pivots) in kept.items():
        mu = weight_of[nu]
        for i in datum.colours:
            up = RootVec(datum, tuple(
                m + (1 if c == i else 0) for c, m in enumerate(nu.multiplicities)
            ))
            if up in kept:
                cols = [
                    reduce_elem(up, alg.monomial((i,) + words[p])) for p in pivots
                ]
                theta[(i, mu)] = CycMatrix.from_columns(field, cols, len(kept[up][2]))
            if nu[i]:
                down = RootVec(datum, tuple(
                    m - (1 if c == i else 0) for c, m in enumerate(nu.multiplicities)
                ))
                if down in kept:
                    cols = [
                        reduce_elem(down, verma.epsilon(i, alg.monomial(words[p])))
                        for p in pivots
                    ]
                    eps[(i, mu)] = CycMatrix.from_columns(field, cols, len(kept[down][2]))
    return CModule(field, datum, labels, theta, eps)


# -- the tensor structure ---------------------------------------------------------


def tensor(m: CModule, n: CModule) -> CModule:
    """Tensor product with the comultiplication twist: each operator acts on
    the first factor untouched and on the second through the grading twist
    of the first."""
    if m.field != n.field:
        raise ParameterError("tensor factors over different fields")
    if m.datum != n.datum:
        raise ParameterError("tensor factors over different Cartan data")
    if m.side != "left" or n.side != "left":
        raise ParameterError("tensor is defined for left modules")
    field, datum = m.field, m.datum

    blocks: Dict[Weight, List[Tuple[Weight, Weight]]] = {}
    for a in m.weights():
        for b in n.weights():
            blocks.setdefault(a + b, []).append((a, b))
    for pairs in blocks.values():
        pairs.sort(key=lambda ab: (ab[0].coords, ab[1].coords))

    offset: Dict[Tuple[Weight, Weight], int] = {}
    labels: Dict[Weight, Tuple[str, ...]] = {}
    for kappa, pairs in blocks.items():
        names: List[str] = []
        for a, b in pairs:
            offset[(a, b)] = len(names)
            names.extend(f"{x}⊗{y}" for x in m.labels[a] for y in n.labels[b])
        labels[kappa] = tuple(names)

    def assemble(kappa: Weight, i: int, raise_by: bool) -> CycMatrix | None:
        step = _shift(datum, i)
        target = kappa + step if raise_by else kappa - step
        if target not in blocks:
            return None
        tdim = len(labels[target])
        sdim = len(labels[kappa])
        rows = [[field.zero] * sdim for _ in range(tdim)]
        filled = False
        for a, b in blocks[kappa]:
            src = offset[(a, b)]
            da, db = m.dim(a), n.dim(b)
            first = m.eps_op(i, a) if raise_by else m.theta_op(i, a)
            a_new = a + step if raise_by else a - step
            if (a_new, b) in offset and not first.is_zero():
                dst = offset[(a_new, b)]
                for r in range(first.nrows):
                    for c in range(first.ncols):
                        v = first[r, c]
                        if not v.is_zero():
                            for y in range(db):
                                rows[dst + r * db + y][src + c * db + y] = v
                filled = True
            second = n.eps_op(i, b) if raise_by else n.theta_op(i, b)
            b_new = b + step if raise_by else b - step
            if (a, b_new) in offset and not second.is_zero():
                twist = field.zeta_pow(-datum.d(i) * a.pair(i))
                dst = offset[(a, b_new)]
                for r in range(second.nrows):
                    for c in range(second.ncols):
                        v = second[r, c]
                        if not v.is_zero():
                            for x in range(da):
                                rows[dst + x * second.nrows + r][src + x * db + c] = twist * v
                filled = True
        return CycMatrix(field, rows) if filled else None

    theta: Dict[Tuple[int, Weight], CycMatrix] = {}
    eps: Dict[Tuple[int, Weight], CycMatrix] = {}
    for kappa in blocks:
        for i in datum.colours:
            low = assemble(kappa, i, raise_by=False)
            if low is not None:
                theta[(i, kappa)] = low
            high = assemble(kappa, i, raise_by=True)
            if high is not None:
                eps[(i, kappa)] = high
    return CModule(field, datum, labels, theta, eps)


def dual(m: CModule, flavor: str) -> CModule:
    """Graded dual: ``vee`` transposes the operators and flips the side;
    ``star`` composes vee with the antipode twist and stays a left module."""
    if flavor not in ("vee", "star"):
        raise ParameterError(f"unknown dual flavor {flavor!r}")
    if flavor == "star" and m.side != "left":
        raise ParameterError("star dual is defined for left modules")
    field, datum = m.field, m.datum
    labels = {-lam: tuple(s + "*" for s in names) for lam, names in m.labels.items()}
    theta: Dict[Tuple[int, Weight], CycMatrix] = {}
    eps: Dict[Tuple[int, Weight], CycMatrix] = {}
    for lam in labels:
        for i in datum.colours:
            step = _shift(datum, i)
            low = m.theta_op(i, -lam + step).transpose()
            high = m.eps_op(i, -lam - step).transpose()
            if flavor == "star":
                a = lam.pair(i)
                low = low.scale(-field.zeta_pow(datum.d(i) * (2 - a)))
                high = high.scale(-field.zeta_pow(datum.d(i) * (-a - 2)))
            if not low.is_zero():
                theta[(i, lam)] = low
            if not high.is_zero():
                eps[(i, lam)] = high
    side = m.side if flavor == "star" else ("right" if m.side == "left" else "left")
    return CModule(field, datum, labels, theta, eps, side=side)


# -- invariants and blocks ---------------------------------------------------------


def invariants(m: CModule) -> CycMatrix:
    """Basis (as columns) of the joint kernel of every operator inside the
    weight-zero piece."""
    field, datum = m.field, m.datum
    zero = datum.zero_weight()
    d0 = m.dim(zero)
    stacked = CycMatrix.zero(field, 0, d0)
    for i in datum.colours:
        stacked = stacked.vstack(m.theta_op(i, zero)).vstack(m.eps_op(i, zero))
    if stacked.nrows == 0:
        return CycMatrix.identity(field, d0)
    return stacked.kernel_basis()


def coinvariants(m: CModule) -> CycMatrix:
    """A presentation of the maximal trivial quotient of the weight-zero
    piece: the rows annihilate every incoming operator image, so the
    quotient map is v -> (returned matrix) @ v."""
    field, datum = m.field, m.datum
    zero = datum.zero_weight()
    d0 = m.dim(zero)
    incoming = CycMatrix.zero(field, d0, 0)
    for i in datum.colours:
        step = _shift(datum, i)
        incoming = incoming.hstack(m.theta_op(i, step)).hstack(m.eps_op(i, -step))
    if incoming.ncols == 0:
        return CycMatrix.identity(field, d0)
    return incoming.transpose().kernel_basis().transpose()


def bracket_dim(m: CModule) -> int:
    """Rank of the composite: invariants -> weight-zero piece -> coinvariants."""
    return (coinvariants(m) @ invariants(m)).rank()


def conformal_blocks(
    weights: Sequence[Weight],
    e: EllData,
    field: CycField | None = None,
) -> int:
    """Bracket dimension of the tensor product of the irreducibles attached
    to the given first-alcove weights."""
    if not weights:
        raise ParameterError("at least one weight is required")
    for lam in weights:
        if not in_first_alcove(lam, e):
            raise DomainError(f"{lam} lies outside the first alcove")
    mods = [irreducible_module(lam, e, field) for lam in weights]
    product = mods[0]
    for other in mods[1:]:
        product = tensor(product, other)
    return bracket_dim(product)
