"""Exact rational linear algebra and bigraded chain-complex homology.

Everything is done over Q with fractions.Fraction; no floats anywhere.
Vectors come in two flavours: small dense lists (the public Matrix API)
and sparse dicts keyed by column index (used by the span/quotient
machinery in the algebra modules).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Matrix:
    """Dense exact matrix; rows of Fractions."""

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.data = [[ZERO] * cols for _ in range(rows)]
        else:
            self.data = [[frac(x) for x in row] for row in entries]
            if len(self.data) != rows or any(len(r) != cols for r in self.data):
                raise ValueError("inconsistent matrix dimensions")

    @classmethod
    def from_rows(cls, entries) -> "Matrix":
        entries = [list(r) for r in entries]
        rows = len(entries)
        cols = len(entries[0]) if entries else 0
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = ONE
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __setitem__(self, ij, val):
        i, j = ij
        self.data[i][j] = frac(val)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        return "Matrix(%d x %d)" % (self.rows, self.cols)

    def copy(self) -> "Matrix":
        return Matrix(self.rows, self.cols, self.data)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [[self.data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = Matrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = row[k]
                if a == 0:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    if brow[j] != 0:
                        orow[j] += a * brow[j]
        return out

    def apply(self, vec: Sequence[Fraction]) -> list:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return [sum((self.data[i][j] * vec[j] for j in range(self.cols)), ZERO)
                for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def rank(self) -> int:
        return rank_kernel(self)[0]

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices are invertible")
        n = self.rows
        aug = [list(self.data[i]) + [ONE if j == i else ZERO for j in range(n)]
               for i in range(n)]
        piv = 0
        for col in range(n):
            sel = None
            for r in range(piv, n):
                if aug[r][col] != 0:
                    sel = r
                    break
            if sel is None:
                raise ValueError("matrix is singular")
            aug[piv], aug[sel] = aug[sel], aug[piv]
            pv = aug[piv][col]
            aug[piv] = [x / pv for x in aug[piv]]
            for r in range(n):
                if r != piv and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[piv])]
            piv += 1
        return Matrix(n, n, [row[n:] for row in aug])


def rref(rows: Iterable[Sequence[Fraction]], reverse_cols: bool = False):
    """Reduced row echelon form.

    Returns (pivot_columns, reduced_rows); zero rows are dropped.  With
    reverse_cols the pivot search runs from the last column backwards,
    which makes the lexicographically largest monomial the pivot when
    columns are sorted in increasing monomial order.
    """
    work = [list(r) for r in rows if any(x != 0 for x in r)]
    if not work:
        return [], []
    ncols = len(work[0])
    colorder = range(ncols - 1, -1, -1) if reverse_cols else range(ncols)
    pivots = []
    out = []
    for col in colorder:
        sel = None
        for i, r in enumerate(work):
            if r[col] != 0:
                sel = i
                break
        if sel is None:
            continue
        row = work.pop(sel)
        pv = row[col]
        row = [x / pv for x in row]
        work = [[a - r[col] * b for a, b in zip(r, row)] if r[col] != 0 else r
                for r in work]
        work = [r for r in work if any(x != 0 for x in r)]
        out = [[a - r[col] * b for a, b in zip(r, row)] if r[col] != 0 else r
               for r in out]
        out.append(row)
        pivots.append(col)
        if not work:
            break
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    return [pivots[k] for k in order], [out[k] for k in order]


def rank_kernel(m: Matrix):
    """Rank and an exact kernel basis (reduced echelon form) of m."""
    pivots, rows = rref(m.data)
    rank = len(pivots)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    kernel = []
    for f in free:
        vec = [ZERO] * m.cols
        vec[f] = ONE
        for prow, pcol in zip(rows, pivots):
            vec[pcol] = -prow[f]
        kernel.append(vec)
    return rank, kernel


def membership(v: Sequence[Fraction], span: Iterable[Sequence[Fraction]]) -> bool:
    """Exact test whether v lies in the linear span of the given vectors."""
    span = [list(s) for s in span]
    v = list(v)
    for s in span:
        if len(s) != len(v):
            raise ValueError("membership: vectors of different lengths")
    _, rows = rref(span)
    res = list(v)
    for row in rows:
        piv = next(j for j, x in enumerate(row) if x != 0)
        if res[piv] != 0:
            f = res[piv]
            res = [a - f * b for a, b in zip(res, row)]
    return all(x == 0 for x in res)


class SpanBuilder:
    """Incrementally maintained echelon basis of a span of sparse vectors.

    Vectors are dicts {column index: Fraction}.  Pivot = largest index.
    """

    def __init__(self):
        self.pivot_rows = {}  # pivot index -> normalized sparse row

    def reduce(self, vec: dict) -> dict:
        res = {k: v for k, v in vec.items() if v != 0}
        while res:
            p = max(res)
            row = self.pivot_rows.get(p)
            if row is None:
                return res
            c = res[p]
            for k, v in row.items():
                nv = res.get(k, ZERO) - c * v
                if nv == 0:
                    res.pop(k, None)
                else:
                    res[k] = nv
        return res

    def add(self, vec: dict) -> bool:
        res = self.reduce(vec)
        if not res:
            return False
        p = max(res)
        pv = res[p]
        self.pivot_rows[p] = {k: v / pv for k, v in res.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    @property
    def dim(self) -> int:
        return len(self.pivot_rows)


def sparse_rank(vectors: Iterable[dict]) -> int:
    sb = SpanBuilder()
    for v in vectors:
        sb.add(v)
    return sb.dim


class GradedBasis:
    """Ordered list of opaque labels, each carrying (weight, degree).

    The ordering is deterministic: lexicographic on (weight, degree,
    label text).
    """

    def __init__(self, labels):
        labels = list(labels)
        seen = set()
        for name, w, d in labels:
            if name in seen:
                raise ValueError("duplicate basis label %r" % name)
            seen.add(name)
        self.labels = sorted(labels, key=lambda t: (t[1], t[2], t[0]))

    def slice(self, weight: int, degree: int):
        return [t for t in self.labels if t[1] == weight and t[2] == degree]

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)


class ComplexIntegrityError(Exception):
    """Raised when consecutive differentials fail to compose to zero."""


class BigradedComplex:
    """Chain complex graded by (weight, homological degree).

    differentials[(w, i)] is the matrix of the differential from the
    (w, i) slice to the (w, i-1) slice, columns indexed by the source
    basis.  The differential preserves weight.
    """

    def __init__(self, dims: dict, differentials: dict):
        self.dims = dict(dims)
        self.differentials = dict(differentials)
        for (w, i), m in self.differentials.items():
            src = self.dims.get((w, i), 0)
            tgt = self.dims.get((w, i - 1), 0)
            if m.cols != src or m.rows != tgt:
                raise ValueError("differential at (%s, %s) has wrong shape" % (w, i))

    def check_dsquare(self, weight: int, degree: int):
        d1 = self.differentials.get((weight, degree))
        d0 = self.differentials.get((weight, degree - 1))
        if d1 is None or d0 is None:
            return
        if not d0.mul(d1).is_zero():
            raise ComplexIntegrityError(
                "d o d != 0 at weight %d, degree %d" % (weight, degree))

    def homology(self, weight: int, degree: int):
        """Betti number and echelon representatives at one bidegree."""
        self.check_dsquare(weight, degree)
        self.check_dsquare(weight, degree + 1)
        n = self.dims.get((weight, degree), 0)
        if n == 0:
            return HomologyEntry(weight, degree, 0, [])
        dout = self.differentials.get((weight, degree))
        if dout is not None and dout.rows > 0:
            _, cycles = rank_kernel(dout)
        else:
            cycles = [[ONE if j == i else ZERO for j in range(n)] for i in range(n)]
        din = self.differentials.get((weight, degree + 1))
        img_rows = []
        if din is not None and din.cols > 0:
            cols = din.transpose().data
            _, img_rows = rref(cols)
        dim_img = len(img_rows)
        dim_ker = len(cycles)
        dim_h = dim_ker - dim_img
        reps = []
        _, img_echelon = rref(img_rows)
        span = [list(r) for r in img_echelon]
        for v in cycles:
            _, combined = rref(span + [list(v)])
            if len(combined) > len(span):
                span = combined
                reps.append(list(v))
        # canonical choice: echelonize the chosen representatives
        _, reps = rref(reps)
        reps = reps[:dim_h] if dim_h >= 0 else []
        return HomologyEntry(weight, degree, dim_h, reps)


class HomologyEntry:
    def __init__(self, weight, degree, dim, representatives):
        self.weight = weight
        self.degree = degree
        self.dim = dim
        self.representatives = representatives

    def __repr__(self):
        return "H(weight=%d, degree=%d) dim=%d" % (self.weight, self.degree, self.dim)


class HomologyReport:
    """Table of homology entries keyed by (weight, degree)."""

    def __init__(self):
        self.entries = {}

    def add(self, entry: HomologyEntry):
        self.entries[(entry.weight, entry.degree)] = entry

    def dim(self, weight: int, degree: int) -> int:
        e = self.entries.get((weight, degree))
        return e.dim if e else 0

    def dims_table(self) -> dict:
        return {k: e.dim for k, e in sorted(self.entries.items())}
