"""
Exact rational linear algebra.

Scalars are ``fractions.Fraction`` at the package boundary; the heavy lifting
(Hermite forms, determinants, reduced echelon forms, inverses) runs on
python-flint's ``fmpz_mat`` and ``fmpq_mat``, so every routine here is exact.
"""

from fractions import Fraction
from math import lcm
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from flint import fmpq, fmpq_mat, fmpz_mat

from app.core.exceptions import DimensionMismatchError, SingularSystemError

Scalar = Fraction
Vector = Tuple[Fraction, ...]
IntRow = Tuple[int, ...]


def to_scalar(value: Any) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: nothing in this package is approximate.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def format_scalar(value: Fraction) -> str:
    return str(value)


def rows_of(m: Any) -> List[List[Fraction]]:
    """Return a mutable copy of a matrix-like value as Fraction rows."""
    entries = getattr(m, "entries", m)
    return [[to_scalar(x) for x in row] for row in entries]


def common_denominator(values: Iterable[Fraction]) -> int:
    result = 1
    for value in values:
        result = lcm(result, value.denominator)
    return result


def _check_rectangular(rows: Sequence[Sequence[Any]], what: str) -> int:
    width = len(rows[0]) if rows else 0
    for row in rows:
        if len(row) != width:
            raise DimensionMismatchError(what, expected=width, actual=len(row))
    return width


def _check_square(rows: Sequence[Sequence[Any]], what: str) -> int:
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise DimensionMismatchError(what, expected=n, actual=len(row))
    return n


def _qmat(rows: Sequence[Sequence[Fraction]]) -> fmpq_mat:
    return fmpq_mat([[fmpq(x.numerator, x.denominator) for x in row] for row in rows])


def _fraction(q: Any) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def _qrows(m: fmpq_mat) -> List[List[Fraction]]:
    return [[_fraction(x) for x in row] for row in m.tolist()]


def _rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form and its pivot columns."""
    if not rows or not rows[0]:
        return [list(row) for row in rows], []
    reduced, r = _qmat(rows).rref()
    out = _qrows(reduced)
    pivots = [next(j for j, x in enumerate(out[i]) if x) for i in range(int(r))]
    return out, pivots


def hnf(rows: Sequence[Sequence[int]]) -> Tuple[IntRow, ...]:
    """Row Hermite normal form of an integer matrix.

    The result spans the same row lattice, is upper staircase with positive
    pivots, entries above each pivot lie in [0, pivot), and zero rows are
    dropped.
    """
    work = [[int(x) for x in row] for row in rows]
    _check_rectangular(work, "ragged integer matrix")
    work = [row for row in work if any(row)]
    if not work:
        return ()
    reduced = fmpz_mat(work).hnf()
    return tuple(tuple(int(x) for x in row) for row in reduced.tolist() if any(row))


def solve_right(m: Any, v: Sequence[Any]) -> Optional[Vector]:
    """Solve m·w = v exactly; returns None when the system is inconsistent.

    Free variables are set to zero, so the returned solution is deterministic.
    """
    a = rows_of(m)
    target = [to_scalar(x) for x in v]
    if len(a) != len(target):
        raise DimensionMismatchError("right-hand side length differs from row count",
                                     expected=len(a), actual=len(target))
    ncols = _check_rectangular(a, "ragged coefficient matrix")
    reduced, pivots = _rref([row + [rhs] for row, rhs in zip(a, target)])
    if ncols in pivots:
        return None
    w = [Fraction(0)] * ncols
    for k, col in enumerate(pivots):
        w[col] = reduced[k][ncols]
    return tuple(w)


def det_and_nonsingular(m: Any) -> Tuple[Fraction, bool]:
    """Exact determinant, with the nonsingularity flag."""
    a = rows_of(m)
    if _check_square(a, "determinant of a non-square matrix") == 0:
        return Fraction(1), True
    det = _fraction(_qmat(a).det())
    return det, det != 0


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix."""
    a = [[int(x) for x in row] for row in rows]
    if _check_square(a, "determinant of a non-square matrix") == 0:
        return 1
    return int(fmpz_mat(a).det())


def inverse(m: Any) -> Tuple[Vector, ...]:
    """Exact inverse; raises SingularSystemError when singular."""
    a = rows_of(m)
    n = _check_square(a, "inverse of a non-square matrix")
    if n == 0:
        return ()
    try:
        inv = _qmat(a).inv()
    except ZeroDivisionError:
        raise SingularSystemError("matrix is singular", {"size": n}) from None
    return tuple(tuple(row) for row in _qrows(inv))


def matmul(a: Any, b: Any) -> Tuple[Vector, ...]:
    left, right = rows_of(a), rows_of(b)
    inner = len(right)
    for row in left:
        if len(row) != inner:
            raise DimensionMismatchError("matrix product shape mismatch", expected=inner, actual=len(row))
    if not left or not right or not right[0]:
        width = len(right[0]) if right else 0
        return tuple(tuple(Fraction(0) for _ in range(width)) for _ in left)
    return tuple(tuple(row) for row in _qrows(_qmat(left) * _qmat(right)))


def vec_mat(v: Sequence[Fraction], m: Any) -> Vector:
    """Row vector times matrix."""
    rows = rows_of(m)
    if len(v) != len(rows):
        raise DimensionMismatchError("vector length differs from row count",
                                     expected=len(rows), actual=len(v))
    if not rows:
        return ()
    return matmul([list(v)], rows)[0]


def transpose(m: Any) -> Tuple[Vector, ...]:
    return tuple(tuple(col) for col in zip(*rows_of(m)))


def kronecker_rows(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> List[List[Any]]:
    """Rows a_i ⊗ b_j in (i major, j minor) order."""
    return [[x * y for x in row_a for y in row_b] for row_a in a for row_b in b]


def rank(rows: Sequence[Sequence[Any]]) -> int:
    return len(_rref(rows_of(rows))[1])


def first_independent_rows(rows: Sequence[Sequence[Any]]) -> List[int]:
    """Indices of the first-come maximal independent subset of ``rows``.

    These are the pivot columns of the transposed matrix.
    """
    a = rows_of(rows)
    if not a:
        return []
    return _rref(transpose(a))[1]


class IncrementalEchelon:
    """Span of vectors added one at a time.

    ``add`` reports whether the vector enlarged the span, which makes the
    first-come choice of independent vectors deterministic.
    """

    def __init__(self) -> None:
        self._rows: List[List[Fraction]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _enlarges(self, v: List[Fraction]) -> bool:
        if not any(v):
            return False
        if self._rows and len(v) != len(self._rows[0]):
            raise DimensionMismatchError("vector length differs from the span",
                                         expected=len(self._rows[0]), actual=len(v))
        return rank(self._rows + [v]) > len(self._rows)

    def add(self, vector: Sequence[Any]) -> bool:
        v = [to_scalar(x) for x in vector]
        if not self._enlarges(v):
            return False
        self._rows.append(v)
        return True

    def contains(self, vector: Sequence[Any]) -> bool:
        return not self._enlarges([to_scalar(x) for x in vector])
