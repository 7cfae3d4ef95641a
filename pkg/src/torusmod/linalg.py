"""Small exact linear algebra over Gaussian rationals: matrices, rank, kernel."""

from __future__ import annotations

from typing import List, Sequence, Tuple, Union

from .scalars import SC_ONE, SC_ZERO, Rat, Scalar, as_scalar

Matrix = Tuple[Tuple[Scalar, ...], ...]
Vector = Tuple[Scalar, ...]


def mat_zero(rows: int, cols: int) -> Matrix:
    return tuple(tuple(SC_ZERO for _ in range(cols)) for _ in range(rows))


def mat_identity(d: int) -> Matrix:
    return tuple(tuple(SC_ONE if i == j else SC_ZERO for j in range(d)) for i in range(d))


def mat_scale(c: Union[Scalar, Rat], m: Matrix) -> Matrix:
    cs = as_scalar(c)
    return tuple(tuple(cs * x for x in row) for row in m)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    # component-level accumulation: Fraction arithmetic without per-step
    # Scalar allocation (this sits inside every operator-identity sweep)
    cols = len(b[0]) if b else 0
    inner = len(b)
    out = []
    for row in a:
        new_row = []
        for j in range(cols):
            acc_re = 0
            acc_im = 0
            for k in range(inner):
                x = row[k]
                xr = x.re
                xi = x.im
                if not xr and not xi:
                    continue
                y = b[k][j]
                yr = y.re
                yi = y.im
                if not yr and not yi:
                    continue
                if xi or yi:
                    acc_re = acc_re + xr * yr - xi * yi
                    acc_im = acc_im + xr * yi + xi * yr
                else:
                    acc_re = acc_re + xr * yr
            new_row.append(Scalar(acc_re, acc_im) if acc_im else Scalar(acc_re))
        out.append(tuple(new_row))
    return tuple(out)


def mat_apply(m: Matrix, v: Vector) -> Vector:
    out = []
    for row in m:
        acc = SC_ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


def mat_is_zero(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def scalar_diagonal_of(m: Matrix) -> Union[Scalar, None]:
    """The scalar c with m = c * I, or None if m is not a scalar matrix."""
    d = len(m)
    c = m[0][0] if d else SC_ZERO
    for i in range(d):
        for j in range(len(m[i])):
            if (m[i][j] != c) if i == j else bool(m[i][j]):
                return None
    return c


def rank(m: Sequence[Sequence[Scalar]]) -> int:
    """Rank over the Gaussian rationals by fraction-full Gaussian elimination."""
    rows: List[List[Scalar]] = [list(r) for r in m]
    if not rows:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = SC_ONE / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == n_rows:
            break
    return r
