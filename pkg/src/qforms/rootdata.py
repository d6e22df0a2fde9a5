"""Cartan data, weights, and the small amount of root-system combinatorics
needed for alcove tests and lattice indices.

Conventions
-----------
A Cartan datum is an ordered list of colours ``0..n-1`` together with a
symmetric positive definite integer matrix ``dot`` with even diagonal.  We
write ``d_i = dot[i][i] // 2`` and ``cartan[i][j] = 2*dot[i][j] // dot[i][i]``
(the pairing of colour ``i`` with the embedded colour ``j'``).

Weights are stored in coroot coordinates: ``coords[i]`` is the pairing of
colour ``i`` with the weight.  Entries may be rational; the weight lattice X
consists of the integral vectors.  ``RootVec`` is a multiplicity vector in
``N[I]``; the embedding ``nu -> nu'`` into weights is :func:`alpha_prime`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .errors import DomainError, ParameterError

PRESETS: dict[str, tuple[tuple[int, ...], ...]] = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -2), (-2, 4)),
    "G2": ((2, -3), (-3, 6)),
}


def _frac_det(m: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination (tiny matrices)."""
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def _frac_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c]), None)
        if pivot is None:
            raise ParameterError("matrix is singular")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [a * inv for a in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _smith_diag_and_colops(mat: list[list[int]]) -> tuple[list[int], list[list[int]]]:
    """Diagonalise an integer matrix by row/column operations.

    Returns the diagonal entries and the accumulated column-operation matrix
    V, so that condition systems ``mat @ x == 0 (mod q)`` become independent
    congruences in the coordinates ``z`` with ``x = V @ z``.
    """
    a = [row[:] for row in mat]
    rows, cols = len(a), len(a[0])
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def col_op(j, k, f):  # col_j -= f * col_k
        for r in range(rows):
            a[r][j] -= f * a[r][k]
        for r in range(cols):
            v[r][j] -= f * v[r][k]

    def swap_cols(j, k):
        for r in range(rows):
            a[r][j], a[r][k] = a[r][k], a[r][j]
        for r in range(cols):
            v[r][j], v[r][k] = v[r][k], v[r][j]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot in the remaining block
        pos = next(((r, c) for r in range(t, rows) for c in range(t, cols) if a[r][c]), None)
        if pos is None:
            break
        r0, c0 = pos
        a[t], a[r0] = a[r0], a[t]
        swap_cols(t, c0)
        while True:
            # clear column t with row ops, column ops for row t
            for r in range(rows):
                if r != t and a[r][t]:
                    f = a[r][t] // a[t][t]
                    a[r] = [x - f * y for x, y in zip(a[r], a[t])]
            if any(a[r][t] for r in range(rows) if r != t):
                r0 = next(r for r in range(rows) if r != t and a[r][t])
                a[t], a[r0] = a[r0], a[t]
                continue
            for c in range(cols):
                if c != t and a[t][c]:
                    col_op(c, t, a[t][c] // a[t][t])
            if any(a[t][c] for c in range(cols) if c != t):
                c0 = next(c for c in range(cols) if c != t and a[t][c])
                swap_cols(t, c0)
                continue
            break
        t += 1
    diag = [a[i][i] if i < rows else 0 for i in range(cols)]
    return diag, v


@dataclass(frozen=True)
class CartanDatum:
    """An ordered set of colours with a symmetric bilinear form on them."""

    dot: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.dot)
        if n == 0 or any(len(row) != n for row in self.dot):
            raise ParameterError("dot must be a nonempty square matrix")
        for i in range(n):
            if self.dot[i][i] <= 0 or self.dot[i][i] % 2:
                raise ParameterError(f"dot[{i}][{i}] must be even and positive")
            for j in range(n):
                if self.dot[i][j] != self.dot[j][i]:
                    raise ParameterError("dot must be symmetric")
                if i != j:
                    twice = 2 * self.dot[i][j]
                    if twice % self.dot[i][i] or twice // self.dot[i][i] not in (0, -1, -2, -3):
                        raise ParameterError(
                            f"2*dot[{i}][{j}]/dot[{i}][{i}] must be in {{0,-1,-2,-3}}"
                        )
        # positive definiteness via leading principal minors
        for k in range(1, n + 1):
            minor = [[Fraction(self.dot[i][j]) for j in range(k)] for i in range(k)]
            if _frac_det(minor) <= 0:
                raise ParameterError("dot matrix is not positive definite")

    @classmethod
    def preset(cls, name: str) -> "CartanDatum":
        try:
            return cls(PRESETS[name])
        except KeyError:
            raise ParameterError(
                f"unknown Cartan preset {name!r}; choose from {sorted(PRESETS)}"
            ) from None

    @property
    def n(self) -> int:
        return len(self.dot)

    @property
    def colours(self) -> range:
        return range(len(self.dot))

    def d(self, i: int) -> int:
        return self.dot[i][i] // 2

    @cached_property
    def d_max(self) -> int:
        return max(self.d(i) for i in self.colours)

    def cartan(self, i: int, j: int) -> int:
        """The pairing of colour i with j', i.e. 2*dot[i][j]/dot[i][i]."""
        return 2 * self.dot[i][j] // self.dot[i][i]

    @cached_property
    def varpi(self) -> int:
        """|det| of the pairing matrix (i, j'); the exponent denominator
        needed for fractional twists, wired into the cyclotomic field."""
        a = [[Fraction(self.cartan(i, j)) for j in self.colours] for i in self.colours]
        return abs(int(_frac_det(a)))

    @cached_property
    def _weight_form(self) -> list[list[Fraction]]:
        """Gram matrix of the scalar product on X in coroot coordinates."""
        binv = _frac_inverse([[Fraction(x) for x in row] for row in self.dot])
        n = self.n
        return [
            [self.d(i) * binv[i][j] * self.d(j) for j in range(n)]
            for i in range(n)
        ]

    # -- value constructors --------------------------------------------------

    def weight(self, coords) -> "Weight":
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != self.n:
            raise ParameterError(f"weight needs {self.n} coordinates, got {len(cs)}")
        return Weight(self, cs)

    def zero_weight(self) -> "Weight":
        return Weight(self, (Fraction(0),) * self.n)

    def fundamental(self, i: int) -> "Weight":
        return Weight(self, tuple(Fraction(int(i == j)) for j in self.colours))

    def rho(self) -> "Weight":
        return Weight(self, (Fraction(1),) * self.n)

    def root_vec(self, mult) -> "RootVec":
        ms = tuple(int(m) for m in mult)
        if len(ms) != self.n or any(m < 0 for m in ms):
            raise ParameterError("root vector needs non-negative multiplicities per colour")
        return RootVec(self, ms)

    def unit_root(self, i: int) -> "RootVec":
        return RootVec(self, tuple(int(i == j) for j in self.colours))

    # -- root combinatorics (only what the alcove test needs) ----------------

    @cached_property
    def highest_coroot(self) -> tuple[int, ...]:
        """gamma_0 as a multiplicity vector over the simple coroots."""
        return self._closure_max(dual=False)

    @cached_property
    def coroot_of_highest_root(self) -> tuple[int, ...]:
        """beta_0: the coroot 2*theta/(theta.theta) of the highest root theta."""
        theta = self._closure_max(dual=True)
        norm = sum(
            theta[i] * theta[j] * self.dot[i][j] for i in self.colours for j in self.colours
        )
        coords = [2 * theta[i] * self.d(i) for i in self.colours]
        if any(c % norm for c in coords):
            raise DomainError("highest root does not yield an integral coroot")
        return tuple(c // norm for c in coords)

    @cached_property
    def positive_roots(self) -> tuple["RootVec", ...]:
        """All positive roots, as multiplicity vectors over the simple ones,
        ordered by height then lexicographically."""
        n = self.n
        seen = {tuple(int(i == j) for j in range(n)) for i in range(n)}
        frontier = list(seen)
        while frontier:
            vec = frontier.pop()
            for i in range(n):
                pairing = sum(self.cartan(i, j) * vec[j] for j in range(n))
                new = list(vec)
                new[i] -= pairing
                t = tuple(new)
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
        ordered = sorted((v for v in seen if all(x >= 0 for x in v)),
                         key=lambda v: (sum(v), v))
        return tuple(RootVec(self, v) for v in ordered)

    def d_of_root(self, alpha: "RootVec") -> int:
        """Half the self-pairing of a root; equals d_i on the Weyl orbit of
        colour i."""
        sq = sum(
            alpha[i] * alpha[j] * self.dot[i][j] for i in self.colours for j in self.colours
        )
        if sq <= 0 or sq % 2:
            raise DomainError(f"{alpha} is not a root of this datum")
        return sq // 2

    def _closure_max(self, dual: bool) -> tuple[int, ...]:
        """Highest element of the (co)root system by reflection closure.

        dual=False walks the coroot system (reflections act through the
        transposed Cartan pairings), dual=True walks the root system.
        """
        n = self.n
        start = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(start)
        frontier = list(start)
        while frontier:
            vec = frontier.pop()
            for i in range(n):
                if dual:
                    pairing = sum(self.cartan(i, j) * vec[j] for j in range(n))
                else:
                    pairing = sum(vec[j] * self.cartan(j, i) for j in range(n))
                new = list(vec)
                new[i] -= pairing
                t = tuple(new)
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
        positive = [v for v in seen if all(x >= 0 for x in v)]
        best = [v for v in positive
                if not any(w != v and all(a >= b for a, b in zip(w, v)) for w in positive)]
        if len(best) != 1:
            raise DomainError("no unique highest (co)root; datum is not irreducible")
        return best[0]

    def __repr__(self) -> str:
        for name, mat in PRESETS.items():
            if mat == self.dot:
                return f"CartanDatum({name})"
        return f"CartanDatum(dot={self.dot})"


@dataclass(frozen=True)
class Weight:
    """A weight in coroot coordinates; supports exact rational arithmetic."""

    datum: CartanDatum
    coords: tuple[Fraction, ...]

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.datum, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.datum, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(self.datum, tuple(-a for a in self.coords))

    def __mul__(self, scalar) -> "Weight":
        s = Fraction(scalar)
        return Weight(self.datum, tuple(s * a for a in self.coords))

    __rmul__ = __mul__

    def _check(self, other: "Weight"):
        if self.datum != other.datum:
            raise ParameterError("weights belong to different Cartan data")

    def is_integral(self) -> bool:
        """Membership in the weight lattice X."""
        return all(c.denominator == 1 for c in self.coords)

    def pair(self, i: int) -> Fraction:
        """The pairing of colour i with this weight."""
        return self.coords[i]

    def dot(self, other: "Weight") -> Fraction:
        """The scalar product on weights extending nu'.mu' = nu.mu."""
        self._check(other)
        g = self.datum._weight_form
        return sum(
            a * g[i][j] * b
            for i, a in enumerate(self.coords)
            for j, b in enumerate(other.coords)
            if a and b
        ) or Fraction(0)

    def dot_root(self, nu: "RootVec") -> Fraction:
        """Scalar product with an embedded root vector: sum of nu_i d_i <i, self>."""
        if nu.datum != self.datum:
            raise ParameterError("weight and root vector belong to different data")
        return sum(
            (m * self.datum.d(i)) * self.coords[i] for i, m in enumerate(nu.multiplicities)
        ) or Fraction(0)

    def __repr__(self) -> str:
        return f"Weight({', '.join(str(c) for c in self.coords)})"


@dataclass(frozen=True)
class RootVec:
    """An element of N[I]: non-negative multiplicities per colour."""

    datum: CartanDatum
    multiplicities: tuple[int, ...]

    @property
    def depth(self) -> int:
        return sum(self.multiplicities)

    def __add__(self, other: "RootVec") -> "RootVec":
        if self.datum != other.datum:
            raise ParameterError("root vectors belong to different Cartan data")
        return RootVec(
            self.datum,
            tuple(a + b for a, b in zip(self.multiplicities, other.multiplicities)),
        )

    def __le__(self, other: "RootVec") -> bool:
        return all(a <= b for a, b in zip(self.multiplicities, other.multiplicities))

    def __getitem__(self, i: int) -> int:
        return self.multiplicities[i]

    def __repr__(self) -> str:
        return f"RootVec{self.multiplicities}"


def dot_weight(lam: Weight, mu: Weight) -> Fraction:
    """Symmetric bilinear extension of the form to all weights."""
    return lam.dot(mu)


def alpha_prime(nu: RootVec) -> Weight:
    """The weight nu' of a root vector: coords[j] = sum_i nu_i * cartan(j, i)."""
    datum = nu.datum
    coords = [
        Fraction(sum(m * datum.cartan(j, i) for i, m in enumerate(nu.multiplicities)))
        for j in datum.colours
    ]
    return Weight(datum, tuple(coords))


@dataclass(frozen=True)
class EllData:
    """Everything derived from the order l of the root of unity."""

    datum: CartanDatum
    l: int
    ell: int
    ell_i: tuple[int, ...]
    rho: Weight
    rho_ell: Weight
    y_ell_gens: tuple[Weight, ...]
    dd_ell: int

    def ell_of_colour(self, i: int) -> int:
        return self.ell_i[i]

    def in_Y_ell(self, lam: Weight) -> bool:
        """lam lies in X and pairs into ell*Z with every element of X."""
        if not lam.is_integral():
            return False
        g = self.datum._weight_form
        for j in self.datum.colours:
            val = sum(lam.coords[i] * g[i][j] for i in self.datum.colours)
            if (val / self.ell).denominator != 1:
                return False
        return True

    def in_X_ell(self, lam: Weight) -> bool:
        """Rational weights pairing integrally with d_i*i and into ell*Z with Y_ell."""
        for i in self.datum.colours:
            if (self.datum.d(i) * lam.coords[i]).denominator != 1:
                return False
        return all((lam.dot(y) / self.ell).denominator == 1 for y in self.y_ell_gens)


def make_ell_data(datum: CartanDatum, l: int) -> EllData:
    """Assemble the l-dependent lattice data; warns when the standing
    assumptions on the ell_i are violated rather than refusing."""
    if l <= 1:
        raise ParameterError(f"l must be > 1, got {l}")
    ell = l if l % 2 else l // 2
    ell_i = tuple(ell // gcd(ell, datum.d(i)) for i in datum.colours)
    for i in datum.colours:
        small = ell_i[i] <= 1 or any(
            ell_i[i] <= -datum.cartan(i, j) + 1 for j in datum.colours if j != i
        )
        if small:
            warnings.warn(
                f"ell_{i} = {ell_i[i]} is too small for the standing assumptions;"
                " results may degenerate",
                stacklevel=2,
            )
    rho = datum.rho()
    rho_ell = datum.weight([e - 1 for e in ell_i])

    # Y_ell = {x in Z^n : G x in ell*Z^n} where G is the weight-form Gram matrix.
    g = datum._weight_form
    den = 1
    for row in g:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    q = ell * den
    p = [[int(x * den) for x in row] for row in g]
    diag, v = _smith_diag_and_colops(p)
    gens = []
    for idx in range(datum.n):
        scale = q // gcd(diag[idx], q) if diag[idx] else 1
        vec = [scale * v[r][idx] for r in range(datum.n)]
        gens.append(datum.weight(vec))
    # dd_ell = |det| of the rescaled form on Y_ell.
    form = [
        [ya.dot(yb) / ell for yb in gens]
        for ya in gens
    ]
    det = _frac_det(form)
    if det.denominator != 1:
        raise DomainError("index of Y_ell in X_ell is not integral; bad lattice data")
    return EllData(
        datum=datum,
        l=l,
        ell=ell,
        ell_i=ell_i,
        rho=rho,
        rho_ell=rho_ell,
        y_ell_gens=tuple(gens),
        dd_ell=abs(int(det)),
    )


def in_first_alcove(lam: Weight, e: EllData) -> bool:
    """First-alcove membership for integral weights.

    Requires every simple pairing of lam+rho positive; the upper wall uses
    the highest coroot when all ell_i coincide with ell, and otherwise the
    coroot of the highest root with its own ell-parameter.
    """
    if not lam.is_integral():
        raise ParameterError("alcove membership is defined for integral weights")
    shifted = lam + e.rho
    if any(shifted.coords[i] <= 0 for i in lam.datum.colours):
        return False
    if all(li == e.ell for li in e.ell_i):
        gamma = lam.datum.highest_coroot
        bound = e.ell
    else:
        gamma = lam.datum.coroot_of_highest_root
        bound = e.ell // gcd(e.ell, lam.datum.d_max)
    value = sum(m * shifted.coords[i] for i, m in enumerate(gamma))
    return value < bound


def balance_n(lam: Weight, nu0: Weight) -> Fraction:
    """The quadratic balance function: half the self-pairing plus pairing
    with the chosen base weight.  Satisfies
    ``balance_n(a+b) = balance_n(a) + balance_n(b) + a.dot(b)``.
    """
    return lam.dot(lam) / 2 + lam.dot(nu0)
