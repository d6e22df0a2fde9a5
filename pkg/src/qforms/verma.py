"""Verma-type modules over the twisted free algebra.

``VermaModule`` wraps a :class:`~qforms.freealg.FreeAlgebra` together with a
highest weight.  As a vector space the module *is* the free algebra — an
element ``x`` stands for ``x`` applied to the highest-weight vector — so all
operators take and return :class:`FreeElement` values.

Display words read left to right, but several classical formulas index the
letters of ``theta_{i_N} ... theta_{i_1}`` by their distance from the vacuum
vector on the right; helpers below convert explicitly where that matters.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .cyclotomic import CycNum
from .errors import ParameterError, UnsupportedOracleError
from .freealg import FreeAlgebra, FreeElement, Word, permuted_word, word_weight, words_of_weight
from .linalg import CycMatrix
from .rootdata import RootVec, Weight, alpha_prime

TensorTerms = dict[tuple[Word, Word], CycNum]


def weight_bracket(algebra: FreeAlgebra, lam: Weight, i: int) -> CycNum:
    """The bracket of a weight against a colour: 1 - zeta**(-2*d_i*<i,lam>).

    This is the colour-adjusted bracket; for integral weights it coincides
    with the field's q_bracket at the scalar product of lam with i'.
    """
    e = -2 * lam.coords[i] * algebra.datum.d(i)
    return algebra.field.one - algebra.field.zeta_pow(e)


def ad_theta(algebra: FreeAlgebra, i: int, lam: Weight, x: FreeElement) -> FreeElement:
    """Twisted commutator with a generator at a reference weight:
    theta_i * x  -  zeta**(i.nu - 2<lam,i>) * x * theta_i  for x of weight nu.
    """
    if x.is_zero():
        return x
    nu = x.weight
    if nu is None:
        raise ParameterError("ad_theta needs a homogeneous element")
    dot_i_nu = sum(
        n * algebra.datum.dot[i][c] for c, n in enumerate(nu.multiplicities)
    )
    e = Fraction(dot_i_nu) - 2 * lam.coords[i] * algebra.datum.d(i)
    twist = algebra.field.zeta_pow(e)
    theta = algebra.theta(i)
    return theta * x - (x * theta).scale(twist)


class VermaModule:
    """The module with one generator over the twisted free algebra."""

    def __init__(self, algebra: FreeAlgebra, highest_weight: Weight):
        if highest_weight.datum != algebra.datum:
            raise ParameterError("highest weight belongs to a different Cartan datum")
        self.algebra = algebra
        self.highest_weight = highest_weight
        self._eps_memo: dict[tuple[int, Word], FreeElement] = {}
        self._form_memo: dict[tuple[Word, Word], CycNum] = {}

    @property
    def field(self):
        return self.algebra.field

    @property
    def datum(self):
        return self.algebra.datum

    def weight_of(self, x: FreeElement) -> Weight:
        """The X-weight of a homogeneous vector: Lambda minus the embedded
        algebra weight."""
        nu = x.weight
        if nu is None:
            raise ParameterError("the zero vector has no weight")
        return self.highest_weight - alpha_prime(nu)

    # -- the lowering operators ------------------------------------------------

    def epsilon(self, i: int, x: FreeElement) -> FreeElement:
        out = self.algebra.zero()
        for w, c in x.terms.items():
            out = out + self._epsilon_word(i, w).scale(c)
        return out

    def _epsilon_word(self, i: int, w: Word) -> FreeElement:
        if not w:
            return self.algebra.zero()
        key = (i, w)
        cached = self._eps_memo.get(key)
        if cached is not None:
            return cached
        j, rest = w[0], w[1:]
        rest_elem = self.algebra.monomial(rest)
        out = self.algebra.theta(j) * self._epsilon_word(i, rest)
        out = out.scale(self.field.zeta_pow(self.datum.dot[i][j]))
        if i == j:
            beta = self.highest_weight - alpha_prime(word_weight(self.datum, rest))
            out = out + rest_elem.scale(weight_bracket(self.algebra, beta, i))
        self._eps_memo[key] = out
        return out

    # -- the contravariant form --------------------------------------------------

    def form(self, x: FreeElement, y: FreeElement) -> CycNum:
        total = self.field.zero
        for wx, cx in x.terms.items():
            for wy, cy in y.terms.items():
                val = self._form_words(wx, wy)
                if not val.is_zero():
                    total = total + cx * cy * val
        return total

    def _form_words(self, wx: Word, wy: Word) -> CycNum:
        if word_weight(self.datum, wx) != word_weight(self.datum, wy):
            return self.field.zero
        if not wx:
            return self.field.one
        key = (wx, wy)
        cached = self._form_memo.get(key)
        if cached is None:
            cached = self.form(
                self.algebra.monomial(wx[1:]),
                self._epsilon_word(wx[0], wy),
            )
            self._form_memo[key] = cached
        return cached

    def gram(self, nu: RootVec) -> CycMatrix:
        basis = words_of_weight(self.datum, nu)
        return CycMatrix(
            self.field,
            [[self._form_words(a, b) for b in basis] for a in basis],
        )

    def dim_L(self, nu: RootVec) -> int:
        """Graded dimension of the irreducible quotient: the rank of the
        form on the weight-nu component."""
        return self.gram(nu).rank()

    # -- quantum commutators and the coaction -------------------------------------

    def quantum_commutator(self, word, q_positions) -> FreeElement:
        """The iterated twisted commutator attached to a subset of letters.

        ``word`` reads left to right; ``q_positions`` are 1-based positions
        counted from the right (the letter next to the vacuum is position 1).
        """
        w = tuple(word)
        n = len(w)
        q = sorted(set(int(p) for p in q_positions))
        if not q:
            raise ParameterError("the commutator needs a non-empty position set")
        if q[0] < 1 or q[-1] > n:
            raise ParameterError(f"positions must lie in 1..{n}")
        twist = self.algebra.twist_number(w, _front_permutation(n, q))
        # weights lambda_a: everything strictly below position j_a except the
        # positions already moved out (j_0 through j_{a-1}).
        core = self.algebra.theta(w[n - q[0]])
        for a in range(1, len(q)):
            used = set(q[:a])
            counts = [0] * self.datum.n
            for k in range(1, q[a]):
                if k not in used:
                    counts[w[n - k]] += 1
            lam_a = self.highest_weight - alpha_prime(RootVec(self.datum, tuple(counts)))
            core = ad_theta(self.algebra, w[n - q[a]], lam_a, core)
        return core.scale(twist)

    def coaction(self, x: FreeElement) -> TensorTerms:
        """The coaction into (algebra tensor module), as a dictionary mapping
        pairs (algebra word, module word) to coefficients."""
        out: TensorTerms = {}
        for w, c in x.terms.items():
            for key, val in self._coaction_word(w).items():
                acc = out.get(key)
                contrib = c * val
                out[key] = contrib if acc is None else acc + contrib
        return {k: v for k, v in out.items() if not v.is_zero()}

    def _coaction_word(self, w: Word) -> TensorTerms:
        n = len(w)
        out: TensorTerms = {((), w): self.field.one}
        for mask in range(1, 1 << n):
            q = [p for p in range(1, n + 1) if mask >> (p - 1) & 1]
            j_min = q[0]
            prefix = [0] * self.datum.n
            for k in range(1, j_min):
                prefix[w[n - k]] += 1
            lam = self.highest_weight - alpha_prime(RootVec(self.datum, tuple(prefix)))
            bracket = weight_bracket(self.algebra, lam, w[n - j_min])
            if bracket.is_zero():
                continue
            commutator = self.quantum_commutator(w, q)
            remaining = tuple(w[p] for p in range(n) if (n - p) not in set(q))
            for cw, cc in commutator.terms.items():
                key = (cw, remaining)
                contrib = bracket * cc
                acc = out.get(key)
                out[key] = contrib if acc is None else acc + contrib
        return {k: v for k, v in out.items() if not v.is_zero()}


def _front_permutation(n: int, q: list[int]) -> tuple[int, ...]:
    """The permutation (in display coordinates) moving the letters at the
    1-based right-counted positions q to the front, largest position first,
    and keeping everything else in order."""
    l = len(q) - 1
    rank = {pos: b for b, pos in enumerate(q)}
    qset = set(q)
    tau = [0] * n
    for p in range(n):
        v = n - p
        if v in qset:
            tau[p] = l - rank[v]
        else:
            tau[p] = (l + 1) + sum(1 for u in range(v + 1, n + 1) if u not in qset)
    return tuple(tau)


def form_SLambda(
    left_module: VermaModule, x: FreeElement, right_module: VermaModule, y: FreeElement
) -> CycNum:
    """Form between vectors of two module handles; the handles must agree."""
    if left_module.highest_weight != right_module.highest_weight:
        raise ParameterError("contravariant form needs matching highest weights")
    return left_module.form(x, y)


def form_SLambda_oracle(module: VermaModule, left, right) -> CycNum:
    """Closed-formula evaluation of the contravariant form on two monomials.

    Only available for simply-laced data, where the classical statement
    applies verbatim; other data raise rather than guess the colour twists.
    Letters are indexed from the right, matching the classical product.
    """
    datum = module.datum
    if any(datum.d(i) != 1 for i in datum.colours):
        raise UnsupportedOracleError(
            "closed formula for the contravariant form needs a simply-laced datum"
        )
    w_left = tuple(reversed(tuple(left)))
    w_right = tuple(reversed(tuple(right)))
    if word_weight(datum, w_left) != word_weight(datum, w_right):
        return module.field.zero
    n = len(w_left)
    total = module.field.zero
    lam_letters = [alpha_prime(datum.unit_root(c)) for c in datum.colours]
    for tau in permutations(range(n)):
        if permuted_word(w_left, tau) != w_right:
            continue
        factor = module.algebra.twist_number(w_left, tau)
        for a in range(n):
            lam = module.highest_weight
            for b in range(a):
                if tau[b] < tau[a]:
                    lam = lam - lam_letters[w_left[b]]
            factor = factor * weight_bracket(module.algebra, lam, w_left[a])
            if factor.is_zero():
                break
        total = total + factor
    return total
