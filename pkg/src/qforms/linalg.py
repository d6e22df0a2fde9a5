"""Dense exact linear algebra over a cyclotomic field, plus cochain complexes.

Ranks and kernels use Gaussian elimination with a deterministic first-nonzero
pivot scan; division in the field is exact, so there is no tolerance anywhere.
Complexes are cohomological: differentials raise degree by one and live in a
window [-N, 0].
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

from .cyclotomic import CycField, CycNum
from .errors import ContractViolation, ParameterError


class CycMatrix:
    """An immutable dense matrix with CycNum entries."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: CycField, rows: Sequence[Sequence[CycNum]]):
        self.field = field
        self.rows = tuple(tuple(field.num(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(row) != self.ncols for row in self.rows):
            raise ParameterError("ragged rows in matrix")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: CycField, nrows: int, ncols: int) -> "CycMatrix":
        z = field.zero
        m = cls.__new__(cls)
        m.field = field
        m.rows = tuple((z,) * ncols for _ in range(nrows))
        m.nrows, m.ncols = nrows, ncols
        return m

    @classmethod
    def identity(cls, field: CycField, n: int) -> "CycMatrix":
        return cls(
            field,
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
        )

    @classmethod
    def from_entries(
        cls,
        field: CycField,
        nrows: int,
        ncols: int,
        entries: Mapping[tuple[int, int], CycNum],
    ) -> "CycMatrix":
        data = [[field.zero] * ncols for _ in range(nrows)]
        for (r, c), v in entries.items():
            data[r][c] = field.num(v)
        return cls(field, data)

    @classmethod
    def from_columns(cls, field: CycField, cols: Sequence[Sequence[CycNum]], nrows: int) -> "CycMatrix":
        if not cols:
            return cls.zero(field, nrows, 0)
        return cls(field, [[col[r] for col in cols] for r in range(nrows)])

    # -- basics ---------------------------------------------------------------

    def __getitem__(self, rc: tuple[int, int]) -> CycNum:
        return self.rows[rc[0]][rc[1]]

    def column(self, c: int) -> tuple[CycNum, ...]:
        return tuple(row[c] for row in self.rows)

    def transpose(self) -> "CycMatrix":
        if self.nrows == 0 or self.ncols == 0:
            return CycMatrix.zero(self.field, self.ncols, self.nrows)
        return CycMatrix(self.field, list(zip(*self.rows)))

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return (
            self.field.same_numbers(other.field)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(
                a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
            )
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        self._shape_check(other)
        if self.nrows == 0:
            return self
        return CycMatrix(
            self.field,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        self._shape_check(other)
        if self.nrows == 0:
            return self
        return CycMatrix(
            self.field,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __neg__(self) -> "CycMatrix":
        if self.nrows == 0:
            return self
        return CycMatrix(self.field, [[-a for a in row] for row in self.rows])

    def scale(self, c: CycNum) -> "CycMatrix":
        if self.nrows == 0:
            return self
        c = self.field.num(c)
        return CycMatrix(self.field, [[c * a for a in row] for row in self.rows])

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if self.ncols != other.nrows:
            raise ParameterError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        z = self.field.zero
        cols = other.transpose().rows
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = z
                for a, b in zip(row, col):
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        if not out:
            return CycMatrix.zero(self.field, 0, other.ncols)
        return CycMatrix(self.field, out)

    def _shape_check(self, other: "CycMatrix"):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ParameterError("matrix shapes differ")

    def hstack(self, other: "CycMatrix") -> "CycMatrix":
        if self.nrows != other.nrows:
            raise ParameterError("row counts differ in hstack")
        if self.ncols == 0:
            return other
        if other.ncols == 0:
            return self
        return CycMatrix(self.field, [ra + rb for ra, rb in zip(self.rows, other.rows)])

    def vstack(self, other: "CycMatrix") -> "CycMatrix":
        if self.ncols != other.ncols:
            raise ParameterError("column counts differ in vstack")
        if self.nrows == 0:
            return other
        if other.nrows == 0:
            return self
        return CycMatrix(self.field, self.rows + other.rows)

    def __repr__(self) -> str:
        return f"CycMatrix({self.nrows}x{self.ncols} over N={self.field.N})"

    # -- elimination-based queries -------------------------------------------

    def _echelon(self) -> tuple[list[list[CycNum]], list[int]]:
        """Row echelon form and pivot column indices.

        Pivots are found by scanning for the first nonzero entry in column
        order, so rerunning on equal input gives identical output.
        """
        m = [list(row) for row in self.rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            if r == self.nrows:
                break
            pr = next((i for i in range(r, self.nrows) if not m[i][c].is_zero()), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = m[r][c].inverse()
            m[r] = [inv * x for x in m[r]]
            for i in range(self.nrows):
                if i != r and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def kernel_basis(self) -> "CycMatrix":
        """Matrix whose columns span the right kernel; ncols = ncols - rank."""
        m, pivots = self._echelon()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        cols = []
        for fc in free:
            vec = [self.field.zero] * self.ncols
            vec[fc] = self.field.one
            for r, pc in enumerate(pivots):
                vec[pc] = -m[r][fc]
            cols.append(vec)
        return CycMatrix.from_columns(self.field, cols, self.ncols)

    def column_space_pivots(self) -> list[int]:
        """Indices of a deterministic set of columns spanning the image."""
        return self._echelon()[1]

    def solve(self, rhs: "CycMatrix") -> "CycMatrix":
        """Solve self @ X = rhs; raises ContractViolation when inconsistent.

        Intended for expressing vectors known to lie in the column span
        (induced differentials, quotient representatives).
        """
        if rhs.nrows != self.nrows:
            raise ParameterError("rhs row count differs from matrix")
        aug = self.hstack(rhs)
        m, pivots = aug._echelon()
        for r, pc in enumerate(pivots):
            if pc >= self.ncols:
                raise ContractViolation("linear system is inconsistent")
        sol = [[self.field.zero] * rhs.ncols for _ in range(self.ncols)]
        for r, pc in enumerate(pivots):
            for j in range(rhs.ncols):
                sol[pc][j] = m[r][self.ncols + j]
        return CycMatrix(self.field, sol)


class ChainComplex:
    """A cochain complex concentrated in degrees [-N, 0].

    ``dims[p]`` is the dimension in degree ``min_degree + p``; ``diffs[p]``
    maps degree ``min_degree + p`` to the next degree and has shape
    ``dims[p+1] x dims[p]``.
    """

    def __init__(self, field: CycField, min_degree: int, dims: Sequence[int],
                 diffs: Sequence[CycMatrix]):
        if min_degree > 0:
            raise ParameterError("complexes live in non-positive degrees")
        if min_degree + len(dims) != 1:
            raise ParameterError("dims must cover degrees min_degree..0")
        if len(diffs) != len(dims) - 1:
            raise ParameterError("need exactly one differential per adjacent pair")
        for p, d in enumerate(diffs):
            if (d.nrows, d.ncols) != (dims[p + 1], dims[p]):
                raise ParameterError(
                    f"differential {p} has shape {d.nrows}x{d.ncols}, "
                    f"expected {dims[p + 1]}x{dims[p]}"
                )
        self.field = field
        self.min_degree = min_degree
        self.dims = tuple(dims)
        self.diffs = tuple(diffs)

    @property
    def degrees(self) -> range:
        return range(self.min_degree, 1)

    def dim(self, degree: int) -> int:
        return self.dims[degree - self.min_degree]

    def diff(self, degree: int) -> CycMatrix:
        """The differential out of the given degree (zero map out of degree 0)."""
        idx = degree - self.min_degree
        if idx == len(self.dims) - 1:
            return CycMatrix.zero(self.field, 0, self.dims[idx])
        return self.diffs[idx]

    def is_complex(self) -> bool:
        """Exact check that consecutive differentials compose to zero."""
        return all(
            (self.diffs[p + 1] @ self.diffs[p]).is_zero()
            for p in range(len(self.diffs) - 1)
        )

    def assert_complex(self):
        for p in range(len(self.diffs) - 1):
            if not (self.diffs[p + 1] @ self.diffs[p]).is_zero():
                raise ContractViolation(
                    f"d o d != 0 out of degree {self.min_degree + p}"
                )

    def cohomology_dims(self) -> dict[int, int]:
        """Dimensions of kernel/image quotients per degree.

        Verifies d o d = 0 first and re-asserts the Euler characteristic
        identity on the computed ranks.
        """
        self.assert_complex()
        ranks = [d.rank() for d in self.diffs]
        out: dict[int, int] = {}
        for degree in self.degrees:
            idx = degree - self.min_degree
            ker = self.dims[idx] - (ranks[idx] if idx < len(ranks) else 0)
            im_prev = ranks[idx - 1] if idx > 0 else 0
            out[degree] = ker - im_prev
        euler_dims = sum((-1) ** d * self.dim(d) for d in self.degrees)
        euler_coh = sum((-1) ** d * h for d, h in out.items())
        if euler_dims != euler_coh:
            raise ContractViolation("Euler characteristic mismatch in cohomology")
        return out


def image_complex(
    source: ChainComplex, target: ChainComplex, maps: Sequence[CycMatrix]
) -> ChainComplex:
    """The degreewise image of a chain map, with the induced differential.

    The chain-map property is checked exactly in every degree first; a
    failure is a contract violation, not a recoverable condition.
    """
    if source.min_degree != target.min_degree:
        raise ParameterError("source and target complexes have different degree ranges")
    if len(maps) != len(source.dims):
        raise ParameterError("need one map per degree")
    for p, f in enumerate(maps):
        if (f.nrows, f.ncols) != (target.dims[p], source.dims[p]):
            raise ParameterError(f"map in slot {p} has the wrong shape")
    for p in range(len(source.diffs)):
        lhs = target.diffs[p] @ maps[p]
        rhs = maps[p + 1] @ source.diffs[p]
        if lhs != rhs:
            raise ContractViolation(
                f"not a chain map out of degree {source.min_degree + p}"
            )
    field = source.field
    bases: list[CycMatrix] = []
    for f in maps:
        pivots = f.column_space_pivots()
        bases.append(CycMatrix.from_columns(field, [f.column(c) for c in pivots], f.nrows))
    dims = [b.ncols for b in bases]
    diffs = []
    for p in range(len(source.diffs)):
        pushed = target.diffs[p] @ bases[p]
        if bases[p + 1].ncols == 0:
            if not pushed.is_zero():
                raise ContractViolation("image is not preserved by the differential")
            diffs.append(CycMatrix.zero(field, 0, dims[p]))
        else:
            diffs.append(bases[p + 1].solve(pushed))
    return ChainComplex(field, source.min_degree, dims, diffs)
