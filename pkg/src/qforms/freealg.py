"""The twisted free algebra on the colours of a Cartan datum.

Monomials are words in the colours; a word ``(i_1, ..., i_N)`` denotes the
product of the generators in that order.  The braiding twist of a permuted
word is the product of ``zeta**(dot(a, b))`` over all inversions, and it
drives everything here: the bilinear form, the comultiplication, and the
divided-power Serre elements.

Convention: a permutation ``tau`` is a tuple with ``tau[a]`` the *target*
position of the letter at source position ``a``, so the permuted word ``w``
satisfies ``w[tau[a]] = word[a]``.
"""

from __future__ import annotations

from itertools import permutations

from .cyclotomic import CycField, CycNum
from .errors import ParameterError
from .rootdata import CartanDatum, RootVec

Word = tuple[int, ...]


def word_weight(datum: CartanDatum, word: Word) -> RootVec:
    counts = [0] * datum.n
    for c in word:
        counts[c] += 1
    return RootVec(datum, tuple(counts))


def words_of_weight(datum: CartanDatum, nu: RootVec) -> tuple[Word, ...]:
    """All words with the given colour multiplicities, lexicographically."""

    def gen(remaining: list[int], prefix: list[int]):
        if not any(remaining):
            yield tuple(prefix)
            return
        for c in range(len(remaining)):
            if remaining[c]:
                remaining[c] -= 1
                prefix.append(c)
                yield from gen(remaining, prefix)
                prefix.pop()
                remaining[c] += 1

    return tuple(gen(list(nu.multiplicities), []))


def permuted_word(word: Word, tau: tuple[int, ...]) -> Word:
    out = [0] * len(word)
    for a, t in enumerate(tau):
        out[t] = word[a]
    return tuple(out)


PERMUTATION_SUM_DEPTH = 8


class FreeAlgebra:
    """Context object tying a cyclotomic field to a Cartan datum."""

    def __init__(self, field: CycField, datum: CartanDatum):
        self.field = field
        self.datum = datum
        self._form_memo: dict[tuple[Word, Word], CycNum] = {}

    # -- element constructors -------------------------------------------------

    def monomial(self, word, coeff=1) -> "FreeElement":
        w = tuple(int(c) for c in word)
        if any(c not in self.datum.colours for c in w):
            raise ParameterError(f"word {w} uses colours outside the datum")
        return FreeElement(self, {w: self.field.num(coeff)})

    def theta(self, i: int) -> "FreeElement":
        return self.monomial((i,))

    def one(self) -> "FreeElement":
        return self.monomial(())

    def zero(self) -> "FreeElement":
        return FreeElement(self, {})

    def element(self, terms: dict) -> "FreeElement":
        return FreeElement(
            self, {tuple(w): self.field.num(c) for w, c in terms.items()}
        )

    # -- the braiding twist ----------------------------------------------------

    def twist_number(self, word: Word, tau: tuple[int, ...]) -> CycNum:
        """Product of zeta**(dot) over the inversions of tau.

        An inversion is a source pair ``a < b`` whose targets come in the
        opposite order; it contributes the dot product of the two letters.
        """
        if sorted(tau) != list(range(len(word))):
            raise ParameterError(f"{tau} is not a permutation of 0..{len(word) - 1}")
        e = 0
        dot = self.datum.dot
        for a in range(len(word)):
            for b in range(a + 1, len(word)):
                if tau[a] > tau[b]:
                    e += dot[word[a]][word[b]]
        return self.field.zeta_pow(e)

    # -- bilinear form ----------------------------------------------------------

    def form_monomials(self, left: Word, right: Word) -> CycNum:
        """The form on two monomials.

        Shallow words are summed over all permutations matching the words;
        deeper ones fall back to the derivation recursion (the two agree on
        the overlap, which the tests pin down).
        """
        if len(left) != len(right):
            return self.field.zero
        key = (left, right)
        cached = self._form_memo.get(key)
        if cached is not None:
            return cached
        if word_weight(self.datum, left) != word_weight(self.datum, right):
            out = self.field.zero
        elif len(left) <= PERMUTATION_SUM_DEPTH:
            out = self._form_by_permutation_sum(left, right)
        else:
            x = self.monomial(left[1:])
            out = self.form(x, self.derivation(left[0], self.monomial(right)))
        self._form_memo[key] = out
        return out

    def _form_by_permutation_sum(self, left: Word, right: Word) -> CycNum:
        # Group the source positions by colour; a matching permutation is a
        # choice of bijection per colour between positions in left and right.
        by_colour: dict[int, list[int]] = {}
        for pos, c in enumerate(left):
            by_colour.setdefault(c, []).append(pos)
        targets: dict[int, list[int]] = {}
        for pos, c in enumerate(right):
            targets.setdefault(c, []).append(pos)
        total = self.field.zero
        colours = sorted(by_colour)

        def walk(idx: int, tau: list[int]):
            nonlocal total
            if idx == len(colours):
                total = total + self.twist_number(left, tuple(tau))
                return
            c = colours[idx]
            for perm in permutations(targets[c]):
                for src, tgt in zip(by_colour[c], perm):
                    tau[src] = tgt
                walk(idx + 1, tau)

        walk(0, [0] * len(left))
        return total

    def form(self, x: "FreeElement", y: "FreeElement") -> CycNum:
        """Bilinear extension of the monomial form."""
        total = self.field.zero
        for wx, cx in x.terms.items():
            for wy, cy in y.terms.items():
                val = self.form_monomials(wx, wy)
                if not val.is_zero():
                    total = total + cx * cy * val
        return total

    def gram(self, nu: RootVec):
        """Gram matrix of the form on the weight-nu monomials, lex ordered."""
        from .linalg import CycMatrix

        basis = words_of_weight(self.datum, nu)
        return CycMatrix(
            self.field,
            [[self.form_monomials(a, b) for b in basis] for a in basis],
        )

    def dim_quotient(self, nu: RootVec) -> int:
        """Dimension of the weight space in the quotient by the form radical."""
        return self.gram(nu).rank()

    # -- derivations and comultiplication ---------------------------------------

    def derivation(self, i: int, x: "FreeElement") -> "FreeElement":
        """The left twisted derivation: kills the unit, sends theta_j to
        delta_ij, and obeys the twisted Leibniz rule over products."""
        out: dict[Word, CycNum] = {}
        for w, c in x.terms.items():
            prefix_dot = 0
            for p, letter in enumerate(w):
                if letter == i:
                    coeff = c * self.field.zeta_pow(prefix_dot)
                    reduced = w[:p] + w[p + 1 :]
                    acc = out.get(reduced)
                    out[reduced] = coeff if acc is None else acc + coeff
                prefix_dot += self.datum.dot[letter][i]
        return FreeElement(self, out)

    def comult(self, x: "FreeElement") -> dict[tuple[Word, Word], CycNum]:
        """Full comultiplication as a dictionary over pairs of words."""
        out: dict[tuple[Word, Word], CycNum] = {}
        for w, c in x.terms.items():
            n = len(w)
            for mask in range(1 << n):
                first = tuple(p for p in range(n) if mask >> p & 1)
                second = tuple(p for p in range(n) if not mask >> p & 1)
                tau = [0] * n
                for t, p in enumerate(first + second):
                    tau[p] = t
                coeff = c * self.twist_number(w, tuple(tau))
                key = (
                    tuple(w[p] for p in first),
                    tuple(w[p] for p in second),
                )
                acc = out.get(key)
                out[key] = coeff if acc is None else acc + coeff
        return {k: v for k, v in out.items() if not v.is_zero()}

    def iterated_comult_plus(self, x: "FreeElement") -> dict[Word, CycNum]:
        """Complete splitting into single letters: word w receives the sum of
        twists over all permutations carrying x's word onto w."""
        out: dict[Word, CycNum] = {}
        for w, c in x.terms.items():
            for tau in permutations(range(len(w))):
                coeff = c * self.twist_number(w, tau)
                key = permuted_word(w, tau)
                acc = out.get(key)
                out[key] = coeff if acc is None else acc + coeff
        return {k: v for k, v in out.items() if not v.is_zero()}

    # -- balanced brackets and Serre elements -------------------------------------

    def balanced_bracket(self, a: int, i: int) -> CycNum:
        """(zeta_i**a - zeta_i**-a) / (zeta_i - zeta_i**-1)."""
        d = self.datum.d(i)
        num = self.field.zeta_pow(a * d) - self.field.zeta_pow(-a * d)
        den = self.field.zeta_pow(d) - self.field.zeta_pow(-d)
        return num / den

    def balanced_factorial(self, p: int, i: int) -> CycNum:
        out = self.field.one
        for a in range(1, p + 1):
            out = out * self.balanced_bracket(a, i)
        return out

    def balanced_binomial(self, n: int, p: int, i: int) -> CycNum:
        return self.balanced_factorial(n, i) / (
            self.balanced_factorial(p, i) * self.balanced_factorial(n - p, i)
        )

    def serre_element(self, i: int, j: int) -> "FreeElement":
        """The quantum Serre relation element for a pair of distinct colours,
        with divided-power denominators cleared."""
        if i == j:
            raise ParameterError("Serre elements need two distinct colours")
        n = 1 - self.datum.cartan(i, j)
        total = self.zero()
        for p in range(n + 1):
            coeff = self.balanced_binomial(n, p, i)
            if p % 2:
                coeff = -coeff
            word = (i,) * (n - p) + (j,) + (i,) * p
            total = total + self.monomial(word, coeff)
        return total


class FreeElement:
    """A finite linear combination of same-weight words."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: dict[Word, CycNum]):
        clean = {w: c for w, c in terms.items() if not c.is_zero()}
        weights = {word_weight(algebra.datum, w).multiplicities for w in clean}
        if len(weights) > 1:
            raise ParameterError("an element must be concentrated in one weight")
        self.algebra = algebra
        self.terms = clean

    @property
    def weight(self) -> RootVec | None:
        """The common weight of all terms, or None for the zero element."""
        for w in self.terms:
            return word_weight(self.algebra.datum, w)
        return None

    @property
    def depth(self) -> int | None:
        for w in self.terms:
            return len(w)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FreeElement") -> "FreeElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w)
            out[w] = c if acc is None else acc + c
        return FreeElement(self.algebra, out)

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def __neg__(self) -> "FreeElement":
        return FreeElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "FreeElement":
        c = self.algebra.field.num(c)
        return FreeElement(self.algebra, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "FreeElement") -> "FreeElement":
        out: dict[Word, CycNum] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                c = ca * cb
                acc = out.get(w)
                out[w] = c if acc is None else acc + c
        return FreeElement(self.algebra, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, word) -> CycNum:
        return self.terms.get(tuple(word), self.algebra.field.zero)

    def sorted_terms(self) -> list[tuple[Word, CycNum]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = [f"({c!r})*theta{list(w)}" for w, c in self.sorted_terms()]
        return " + ".join(bits)
