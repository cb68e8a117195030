"""Exact rational linear algebra.

Matrices are immutable and store only their nonzero entries, row by row.
Every scalar is a :class:`gmpy2.mpq`, so all equalities are exact.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import BadPermutation, NotInImage

Rational = mpq

ZERO = mpq(0)
ONE = mpq(1)


def to_rational(value) -> mpq:
    """Parse ``value`` (int, mpq, Fraction or text such as ``"-3/2"``)."""
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return mpq(text)
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    return mpq(value)


def format_rational(value: mpq) -> str:
    value = mpq(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class ExactMatrix:
    """A ``rows x cols`` matrix over the rationals."""

    __slots__ = ("rows", "cols", "_rows", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[Iterable] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        self._hash = None
        data: dict[int, dict[int, mpq]] = {}
        if entries is not None:
            entries = [list(r) for r in entries]
            if len(entries) != rows:
                raise ValueError(f"expected {rows} rows, got {len(entries)}")
            for i, row in enumerate(entries):
                if len(row) != cols:
                    raise ValueError(f"row {i} has {len(row)} entries, expected {cols}")
                d = {}
                for j, v in enumerate(row):
                    v = to_rational(v)
                    if v:
                        d[j] = v
                if d:
                    data[i] = d
        self._rows = data

    # -- construction -------------------------------------------------------

    @classmethod
    def _raw(cls, rows: int, cols: int, data: dict[int, dict[int, mpq]]) -> "ExactMatrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m._rows, m._hash = rows, cols, data, None
        return m

    @classmethod
    def from_dict(cls, rows: int, cols: int, entries: dict[tuple[int, int], object]) -> "ExactMatrix":
        data: dict[int, dict[int, mpq]] = {}
        for (i, j), v in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError((i, j))
            v = to_rational(v)
            if v:
                data.setdefault(i, {})[j] = v
        return cls._raw(rows, cols, data)

    @classmethod
    def from_rows(cls, entries: Sequence[Sequence]) -> "ExactMatrix":
        entries = [list(r) for r in entries]
        cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls._raw(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._raw(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def from_function(cls, table: Sequence[int], target_size: int) -> "ExactMatrix":
        """The 0/1 matrix of a function given as a list of target indices."""
        return cls._raw(target_size, len(table), _transpose_data({j: {t: ONE} for j, t in enumerate(table)}))

    # -- access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: tuple[int, int]) -> mpq:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._rows.get(i, {}).get(j, ZERO)

    def row(self, i: int) -> dict[int, mpq]:
        return dict(self._rows.get(i, {}))

    def items(self):
        """Yield ``((i, j), value)`` for every nonzero entry in row-major order."""
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield (i, j), row[j]

    def column(self, j: int) -> list[mpq]:
        return [self._rows.get(i, {}).get(j, ZERO) for i in range(self.rows)]

    def to_rows(self) -> list[list[mpq]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for i, row in self._rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, tuple(self.items())))
        return self._hash

    def first_difference(self, other: "ExactMatrix") -> int | None:
        """Smallest column index where ``self`` and ``other`` differ, or None."""
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        diff = self - other
        cols = [j for row in diff._rows.values() for j in row]
        return min(cols) if cols else None

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}, {self.cols}, {[[format_rational(v) for v in r] for r in self.to_rows()]})"

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {i: dict(r) for i, r in self._rows.items()}
        for i, row in other._rows.items():
            acc = data.setdefault(i, {})
            for j, v in row.items():
                s = acc.get(j, ZERO) + v
                if s:
                    acc[j] = s
                else:
                    acc.pop(j, None)
            if not acc:
                del data[i]
        return ExactMatrix._raw(self.rows, self.cols, data)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._raw(self.rows, self.cols, {i: {j: -v for j, v in r.items()} for i, r in self._rows.items()})

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        c = to_rational(c)
        if not c:
            return ExactMatrix.zeros(self.rows, self.cols)
        return ExactMatrix._raw(self.rows, self.cols, {i: {j: c * v for j, v in r.items()} for i, r in self._rows.items()})

    def __rmul__(self, c) -> "ExactMatrix":
        return self.scale(c)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        odata = other._rows
        data = {}
        for i, row in self._rows.items():
            acc: dict[int, mpq] = {}
            for k, a in row.items():
                orow = odata.get(k)
                if not orow:
                    continue
                for j, b in orow.items():
                    acc[j] = acc.get(j, ZERO) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                data[i] = acc
        return ExactMatrix._raw(self.rows, other.cols, data)

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix._raw(self.cols, self.rows, _transpose_data(self._rows))

    def select_rows(self, indices: Sequence[int]) -> "ExactMatrix":
        data = {}
        for new, old in enumerate(indices):
            r = self._rows.get(old)
            if r:
                data[new] = dict(r)
        return ExactMatrix._raw(len(indices), self.cols, data)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        data = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            acc = data.setdefault(i, {})
            for j, v in r.items():
                acc[j + self.cols] = v
        return ExactMatrix._raw(self.rows, self.cols + other.cols, data)

    def with_entry(self, i: int, j: int, value) -> "ExactMatrix":
        """Copy of the matrix with one entry replaced."""
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        data = {k: dict(r) for k, r in self._rows.items()}
        value = to_rational(value)
        row = data.setdefault(i, {})
        if value:
            row[j] = value
        else:
            row.pop(j, None)
            if not row:
                del data[i]
        return ExactMatrix._raw(self.rows, self.cols, data)

    def rank(self) -> int:
        return len(rref(self)[1])


def _transpose_data(data: dict[int, dict[int, mpq]]) -> dict[int, dict[int, mpq]]:
    out: dict[int, dict[int, mpq]] = {}
    for i, row in data.items():
        for j, v in row.items():
            out.setdefault(j, {})[i] = v
    return out


def rref(m: ExactMatrix) -> tuple[list[dict[int, mpq]], list[int]]:
    """Reduced row echelon form as ``(nonzero rows, pivot columns)``."""
    rows = [dict(m._rows[i]) for i in sorted(m._rows)]
    # column -> indices of rows that currently hold a nonzero there
    where: dict[int, set[int]] = {}
    for k, row in enumerate(rows):
        for j in row:
            where.setdefault(j, set()).add(k)
    pivots: list[int] = []
    pivot_rows: list[int] = []
    used: set[int] = set()
    for c in sorted(where):
        candidates = [k for k in where.get(c, ()) if k not in used]
        if not candidates:
            continue
        p = min(candidates, key=lambda k: (len(rows[k]), k))
        prow = rows[p]
        inv = ONE / prow[c]
        if inv != ONE:
            for j in prow:
                prow[j] *= inv
        for k in list(where[c]):
            if k == p:
                continue
            row = rows[k]
            f = row[c]
            for j, v in prow.items():
                s = row.get(j, ZERO) - f * v
                if s:
                    if j not in row:
                        where.setdefault(j, set()).add(k)
                    row[j] = s
                elif j in row:
                    del row[j]
                    where[j].discard(k)
        used.add(p)
        pivots.append(c)
        pivot_rows.append(p)
    return [rows[p] for p in pivot_rows], pivots


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product with the left factor as the major index."""
    data = {}
    for ia, ra in a._rows.items():
        for ib, rb in b._rows.items():
            data[ia * b.rows + ib] = {ja * b.cols + jb: va * vb for ja, va in ra.items() for jb, vb in rb.items()}
    return ExactMatrix._raw(a.rows * b.rows, a.cols * b.cols, data)


def kron_all(ms: Sequence[ExactMatrix]) -> ExactMatrix:
    out = ExactMatrix.identity(1)
    for m in ms:
        out = kron(out, m)
    return out


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns spanning the null space of ``m``, in reduced column echelon form."""
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    vectors = []
    for f in free:
        v = {f: ONE}
        for row, p in zip(rows, pivots):
            x = row.get(f)
            if x:
                v[p] = -x
        vectors.append(v)
    basis_t = ExactMatrix._raw(len(vectors), m.cols, {k: v for k, v in enumerate(vectors)})
    normal, _ = rref(basis_t)
    return ExactMatrix._raw(len(normal), m.cols, dict(enumerate(normal))).T


def cokernel_projection(m: ExactMatrix) -> tuple[ExactMatrix, int]:
    """A full-row-rank ``q`` with ``q @ m == 0`` and ``rows(q) = rows(m) - rank(m)``.

    The rows of ``q`` are in reduced row echelon form.
    """
    q = kernel_basis(m.T).T
    return q, q.rows


def pivot_positions(m: ExactMatrix) -> list[int] | None:
    """Rows ``p_j`` with ``m[p_j, :] = e_j`` for every column ``j``, if they exist.

    Matrices in reduced column echelon form (and Kronecker products of them)
    have this shape; it lets factorisations skip elimination entirely.
    """
    first: dict[int, int] = {}
    for i in sorted(m._rows):
        for j in m._rows[i]:
            if j not in first:
                first[j] = i
    if len(first) != m.cols:
        return None
    out = []
    for j in range(m.cols):
        p = first[j]
        row = m._rows[p]
        if len(row) != 1 or row.get(j) != ONE:
            return None
        out.append(p)
    return out


def factor_through_mono(i: ExactMatrix, h: ExactMatrix) -> ExactMatrix:
    """The unique ``u`` with ``i @ u == h`` for ``i`` of full column rank.

    Raises :class:`NotInImage` carrying the first column of ``h`` outside the
    column space of ``i``.
    """
    if i.rows != h.rows:
        raise ValueError(f"cannot factor {h.shape} through {i.shape}")
    pivots = pivot_positions(i)
    if pivots is not None:
        u = h.select_rows(pivots)
        residue = i @ u - h
        if residue.is_zero():
            return u
        bad = min(j for row in residue._rows.values() for j in row)
        raise NotInImage(bad, "column is not in the image of the monomorphism")
    k = i.cols
    rows, piv = rref(i.hstack(h))
    if piv[:k] != list(range(k)):
        raise ValueError("matrix does not have full column rank")
    if len(piv) > k:
        raise NotInImage(piv[k] - k, "column is not in the image of the monomorphism")
    data = {}
    for r, row in enumerate(rows[:k]):
        d = {j - k: v for j, v in row.items() if j >= k}
        if d:
            data[r] = d
    return ExactMatrix._raw(k, h.cols, data)


def factor_through_epi(e: ExactMatrix, h: ExactMatrix) -> ExactMatrix:
    """The unique ``u`` with ``u @ e == h`` for ``e`` of full row rank."""
    try:
        return factor_through_mono(e.T, h.T).T
    except NotInImage as exc:
        raise NotInImage(exc.witness, "row is not constant on the fibres of the epimorphism") from None


def _check_permutation(perm: Sequence[int], n: int) -> list[int]:
    perm = list(perm)
    if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
        raise BadPermutation(f"{tuple(perm)} is not a permutation of 1..{n}")
    return perm


def permutation_table(perm: Sequence[int], dims: Sequence[int]) -> list[int]:
    """Index map of the factor permutation, as a function on basis indices.

    ``perm[k]`` (1-based) names the input factor that lands in output
    position ``k``.
    """
    perm = _check_permutation(perm, len(dims))
    out_dims = [dims[p - 1] for p in perm]
    strides = [1] * len(out_dims)
    for k in range(len(out_dims) - 2, -1, -1):
        strides[k] = strides[k + 1] * out_dims[k + 1]
    # where each input factor lands in the output, and that slot's stride
    in_stride = [0] * len(dims)
    for k, p in enumerate(perm):
        in_stride[p - 1] = strides[k]
    table = []
    for idx in product(*[range(d) for d in dims]):
        table.append(sum(x * s for x, s in zip(idx, in_stride)))
    return table


def permutation_map(perm: Sequence[int], dims: Sequence[int]) -> ExactMatrix:
    """0/1 matrix sending ``x_1 (x) ... (x) x_n`` to the permuted tensor."""
    table = permutation_table(perm, dims)
    size = len(table)
    return ExactMatrix._raw(size, size, {t: {j: ONE} for j, t in enumerate(table)})


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    perm = _check_permutation(perm, len(perm))
    inv = [0] * len(perm)
    for k, p in enumerate(perm, start=1):
        inv[p - 1] = k
    return tuple(inv)
