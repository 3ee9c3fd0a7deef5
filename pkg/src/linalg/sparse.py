"""
Sparse exact linear algebra.

Matrices are stored as coordinate dictionaries and handed to sympy's
``DomainMatrix`` (sparse ``SDM`` backend) for reduced row echelon forms.
Everything the cohomology and obstruction code needs is built on one
primitive, ``rref``: ranks, kernels, solving with infeasibility certificates,
and homology of two composable maps.

Design Principles:
- Exact Gaussian elimination only (sympy QQ / GF(p) domains)
- Deterministic pivoting: first nonzero in column order, optional column permutation
- Every answer carries a checkable witness (solution or left-kernel certificate)
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import structlog
from sympy.polys.matrices import DomainMatrix

from src.linalg.scalars import Ring
from src.utils.exceptions import ConventionError, DimensionMismatchError, NotComplexError

logger = structlog.get_logger(__name__)

Vector = List[Any]


class SparseMatrix:
    """
    Sparse matrix over an exact Ring.

    Entries are kept in a ``{(row, col): value}`` dictionary without stored
    zeros. Instances are treated as immutable.

    Example:
        ```python
        f2 = Ring.prime(2)
        M = SparseMatrix.from_rows([[1, 1], [0, 1]], f2)
        M.matvec([f2.one, f2.zero])
        ```
    """

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: Optional[Dict[Tuple[int, int], Any]] = None,
        ring: Optional[Ring] = None,
    ):
        """
        Initialize a sparse matrix.

        Args:
            rows: Number of rows
            cols: Number of columns
            entries: Coordinate dictionary of domain elements
            ring: Coefficient ring (defaults to Q)

        Raises:
            ValueError: If a coordinate is out of range
        """
        if rows < 0 or cols < 0:
            raise ValueError(f"Matrix shape must be non-negative, got ({rows}, {cols})")
        self.rows = rows
        self.cols = cols
        self.ring = ring or Ring.rational()
        self.entries: Dict[Tuple[int, int], Any] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"Entry ({i}, {j}) out of range for shape ({rows}, {cols})")
            if v != self.ring.zero:
                self.entries[(i, j)] = v

    @classmethod
    def from_triples(
        cls, rows: int, cols: int, triples: Iterable[Tuple[int, int, Any]], ring: Ring
    ) -> "SparseMatrix":
        """Build a matrix from (row, col, value) triples, summing repeated coordinates."""
        acc: Dict[Tuple[int, int], Any] = {}
        for i, j, v in triples:
            acc[(i, j)] = acc.get((i, j), ring.zero) + ring.coerce(v)
        return cls(rows, cols, acc, ring)

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Any]], ring: Ring) -> "SparseMatrix":
        """Build a matrix from a dense list of rows."""
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise DimensionMismatchError("Ragged rows in dense matrix")
            for j, v in enumerate(row):
                entries[(i, j)] = ring.coerce(v)
        return cls(rows, cols, entries, ring)

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: Ring) -> "SparseMatrix":
        return cls(rows, cols, {}, ring)

    @classmethod
    def identity(cls, size: int, ring: Ring) -> "SparseMatrix":
        return cls(size, size, {(i, i): ring.one for i in range(size)}, ring)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}, self.ring
        )

    def select_columns(self, order: Sequence[int]) -> "SparseMatrix":
        """Matrix whose k-th column is column order[k] of self."""
        position = {c: k for k, c in enumerate(order)}
        return SparseMatrix(
            self.rows,
            len(order),
            {(i, position[j]): v for (i, j), v in self.entries.items() if j in position},
            self.ring,
        )

    def matvec(self, x: Sequence[Any]) -> Vector:
        if len(x) != self.cols:
            raise DimensionMismatchError(f"Vector length {len(x)} != cols {self.cols}")
        out = [self.ring.zero] * self.rows
        for (i, j), v in self.entries.items():
            out[i] += v * x[j]
        return out

    def vecmat(self, y: Sequence[Any]) -> Vector:
        if len(y) != self.rows:
            raise DimensionMismatchError(f"Vector length {len(y)} != rows {self.rows}")
        out = [self.ring.zero] * self.cols
        for (i, j), v in self.entries.items():
            out[j] += y[i] * v
        return out

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """Matrix product self @ other."""
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot compose ({self.rows}x{self.cols}) with ({other.rows}x{other.cols})"
            )
        by_row: Dict[int, List[Tuple[int, Any]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: Dict[Tuple[int, int], Any] = {}
        for (i, k), u in self.entries.items():
            for j, v in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), self.ring.zero) + u * v
        return SparseMatrix(self.rows, other.cols, acc, self.ring)

    def column(self, j: int) -> Vector:
        col = [self.ring.zero] * self.rows
        for (i, jj), v in self.entries.items():
            if jj == j:
                col[i] = v
        return col

    def to_domain_matrix(self) -> DomainMatrix:
        rep: Dict[int, Dict[int, Any]] = {}
        for (i, j), v in self.entries.items():
            rep.setdefault(i, {})[j] = v
        return DomainMatrix(rep, (self.rows, self.cols), self.ring.domain)

    def dump(self) -> str:
        """Debug dump, one "row col value" line per entry in coordinate order."""
        lines = [f"# {self.rows} {self.cols} {self.ring.tag}"]
        for (i, j) in sorted(self.entries):
            lines.append(f"{i} {j} {self.ring.to_str(self.entries[(i, j)])}")
        return "\n".join(lines)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.shape == other.shape
            and self.ring == other.ring
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz}, ring={self.ring.tag})"


# ============================================================================
# ELIMINATION
# ============================================================================


def rref(M: SparseMatrix) -> Tuple[Dict[int, Dict[int, Any]], Tuple[int, ...]]:
    """
    Reduced row echelon form of M.

    Returns:
        (rows, pivots): rows[r] is the sparse row r of the echelon form
        ({col: value}), pivots[r] the pivot column of row r (pivot value 1).
    """
    if M.rows == 0 or M.cols == 0 or M.is_zero():
        return {}, ()
    reduced, pivots = M.to_domain_matrix().rref()
    rep = reduced.to_sparse().rep
    rows = {int(i): {int(j): v for j, v in row.items()} for i, row in rep.items()}
    return rows, tuple(int(p) for p in pivots)


def rank(M: SparseMatrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: SparseMatrix) -> List[Vector]:
    """
    Basis of {x : M x = 0}, one vector per free column (in column order).

    The basis vector of free column f has x_f = 1 and zeros on the other
    free columns.
    """
    rows, pivots = rref(M)
    ring = M.ring
    pivot_set = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        x = [ring.zero] * M.cols
        x[f] = ring.one
        for r, p in enumerate(pivots):
            v = rows.get(r, {}).get(f)
            if v is not None:
                x[p] = -v
        basis.append(x)
    return basis


def dot(u: Sequence[Any], v: Sequence[Any], ring: Ring) -> Any:
    acc = ring.zero
    for a, b in zip(u, v):
        acc += a * b
    return acc


# ============================================================================
# SOLVING
# ============================================================================


@dataclass
class Solution:
    """A vector x with M x = b."""

    x: Vector
    """Solution coordinates (free variables set to zero)"""

    ring: Ring
    """Coefficient ring"""

    feasible: bool = True

    def verify(self, M: SparseMatrix, b: Sequence[Any]) -> bool:
        return M.matvec(self.x) == list(b)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": "feasible",
            "solution": {str(i): self.ring.to_json(v) for i, v in enumerate(self.x) if v != self.ring.zero},
        }


@dataclass
class Infeasible:
    """A left-kernel row y with y M = 0 and y b != 0."""

    certificate: Vector
    """The certificate row"""

    ring: Ring
    """Coefficient ring"""

    feasible: bool = False

    def verify(self, M: SparseMatrix, b: Sequence[Any]) -> bool:
        y = self.certificate
        return all(v == self.ring.zero for v in M.vecmat(y)) and dot(y, b, self.ring) != self.ring.zero

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": "infeasible",
            "certificate": {
                str(i): self.ring.to_json(v) for i, v in enumerate(self.certificate) if v != self.ring.zero
            },
        }


SolveResult = Union[Solution, Infeasible]


def solve(
    M: SparseMatrix,
    b: Sequence[Any],
    column_order: Optional[Sequence[int]] = None,
) -> SolveResult:
    """
    Solve M x = b exactly.

    Args:
        M: Coefficient matrix
        b: Right-hand side, length rows(M), domain elements of M.ring
        column_order: Optional permutation of the columns; pivots are chosen
            in this order, which changes the particular solution returned

    Returns:
        Solution with M x = b, or Infeasible with a certificate y
        (y M = 0, y b != 0)

    Raises:
        DimensionMismatchError: If len(b) != rows(M)
        ConventionError: If elimination and certificate search disagree

    Example:
        ```python
        f2 = Ring.prime(2)
        M = SparseMatrix.from_rows([[1], [1]], f2)
        solve(M, [f2.zero, f2.one])  # Infeasible, certificate [1, 1]
        ```
    """
    if len(b) != M.rows:
        raise DimensionMismatchError(f"Right-hand side has length {len(b)}, expected {M.rows}")
    ring = M.ring
    order = list(column_order) if column_order is not None else list(range(M.cols))
    if sorted(order) != list(range(M.cols)):
        raise ValueError("column_order must be a permutation of the column indices")

    permuted = M.select_columns(order)
    augmented_entries = dict(permuted.entries)
    for i, v in enumerate(b):
        if v != ring.zero:
            augmented_entries[(i, M.cols)] = v
    augmented = SparseMatrix(M.rows, M.cols + 1, augmented_entries, ring)
    rows, pivots = rref(augmented)

    if M.cols in pivots:
        for y in kernel_basis(M.transpose()):
            if dot(y, b, ring) != ring.zero:
                logger.debug("system_infeasible", rows=M.rows, cols=M.cols)
                return Infeasible(certificate=y, ring=ring)
        raise ConventionError("Elimination reported infeasibility but no certificate exists")

    x = [ring.zero] * M.cols
    for r, p in enumerate(pivots):
        v = rows.get(r, {}).get(M.cols)
        if v is not None:
            x[order[p]] = v
    return Solution(x=x, ring=ring)


# ============================================================================
# HOMOLOGY
# ============================================================================


@dataclass
class HomologyReport:
    """Homology of V_in --d_in--> V --d_out--> V_out at the middle space V."""

    rank_kernel: int
    """Dimension of ker(d_out)"""

    rank_image_in: int
    """Dimension of im(d_in)"""

    representatives: List[Vector] = field(default_factory=list)
    """Kernel vectors spanning a complement of the image"""

    ring: Optional[Ring] = None

    @property
    def betti(self) -> int:
        return self.rank_kernel - self.rank_image_in

    def to_dict(self) -> Dict[str, Any]:
        ring = self.ring or Ring.rational()
        return {
            "rank_kernel": self.rank_kernel,
            "rank_image_in": self.rank_image_in,
            "betti": self.betti,
            "representatives": [
                {str(i): ring.to_json(v) for i, v in enumerate(rep) if v != ring.zero}
                for rep in self.representatives
            ],
        }

    def __repr__(self) -> str:
        return (
            f"HomologyReport(betti={self.betti}, kernel={self.rank_kernel}, "
            f"image={self.rank_image_in})"
        )


def complement_in(
    subspace: Sequence[Vector], candidates: Sequence[Vector], dim: int, ring: Ring
) -> List[Vector]:
    """
    Greedy choice of candidates independent modulo the span of subspace.

    Columns are ordered [subspace..., candidates...]; the candidate columns
    that are pivots of the echelon form are returned, in order.
    """
    entries: Dict[Tuple[int, int], Any] = {}
    cols = list(subspace) + list(candidates)
    for j, vec in enumerate(cols):
        for i, v in enumerate(vec):
            if v != ring.zero:
                entries[(i, j)] = v
    _, pivots = rref(SparseMatrix(dim, len(cols), entries, ring))
    offset = len(subspace)
    return [candidates[p - offset] for p in pivots if p >= offset]


def homology(d_in: SparseMatrix, d_out: SparseMatrix) -> HomologyReport:
    """
    Homology at the middle space of two composable maps.

    Args:
        d_in: Map into the middle space (rows = middle dimension)
        d_out: Map out of the middle space (cols = middle dimension)

    Returns:
        HomologyReport with betti = dim ker(d_out) - rank(d_in)

    Raises:
        DimensionMismatchError: If the middle dimensions disagree
        NotComplexError: If d_out @ d_in != 0
    """
    if d_out.cols != d_in.rows:
        raise DimensionMismatchError(
            f"Middle dimensions disagree: d_out has {d_out.cols} cols, d_in has {d_in.rows} rows"
        )
    if d_in.ring != d_out.ring:
        raise DimensionMismatchError("Maps are defined over different rings")
    ring = d_in.ring
    composite = d_out.compose(d_in)
    if not composite.is_zero():
        logger.error("composition_not_zero", nnz=composite.nnz, middle=d_in.rows)
        raise NotComplexError(
            f"d_out o d_in has {composite.nnz} nonzero entries",
            details={"middle_dimension": d_in.rows},
        )

    kernel = kernel_basis(d_out)
    image_rank = rank(d_in)
    image_vectors = [d_in.column(j) for j in range(d_in.cols)]
    representatives = complement_in(image_vectors, kernel, d_in.rows, ring) if kernel else []
    report = HomologyReport(
        rank_kernel=len(kernel),
        rank_image_in=image_rank,
        representatives=representatives,
        ring=ring,
    )
    if report.betti < 0 or len(representatives) != report.betti:
        raise ConventionError(
            f"Inconsistent homology ranks: kernel {len(kernel)}, image {image_rank}, "
            f"representatives {len(representatives)}"
        )
    return report
