"""Quadratic presentations over Q and the two closed-form input families.

A presentation is a list of generator names (all weight 1, degree 0)
together with a space of quadratic relations, given as vectors in the
tensor square of the generator span.  Tensor words are tuples of
0-based generator indices; a relation is a dict {word: Fraction}.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Matrix, ZERO, frac, rref


class PresentationError(ValueError):
    """Invalid presentation input."""


class QuadraticPresentation:
    def __init__(self, generators, relations):
        self.generators = list(generators)
        if not self.generators:
            raise PresentationError("at least one generator is required")
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("generator names must be distinct")
        g = len(self.generators)
        rels = []
        for rel in relations:
            vec = {}
            for word, coeff in rel.items():
                if len(word) != 2 or not all(0 <= i < g for i in word):
                    raise PresentationError("relation term %r is not quadratic" % (word,))
                c = frac(coeff)
                if c != 0:
                    vec[tuple(word)] = c
            if vec:
                rels.append(vec)
        self.relations = rels
        self._check_independent()

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def _check_independent(self):
        if not self.relations:
            return
        words = sorted({w for r in self.relations for w in r})
        index = {w: i for i, w in enumerate(words)}
        rows = []
        for r in self.relations:
            row = [ZERO] * len(words)
            for w, c in r.items():
                row[index[w]] = c
            rows.append(row)
        pivots, _ = rref(rows)
        if len(pivots) != len(self.relations):
            raise PresentationError("relation vectors are linearly dependent")

    def relation_matrix(self) -> Matrix:
        """Relations as rows over the lex-ordered monomial basis of V x V."""
        g = self.num_generators
        words = [(i, j) for i in range(g) for j in range(g)]
        index = {w: k for k, w in enumerate(words)}
        m = Matrix(len(self.relations), g * g)
        for r, rel in enumerate(self.relations):
            for w, c in rel.items():
                m[r, index[w]] = c
        return m


def quantum_affine_presentation(names, q: Matrix) -> QuadraticPresentation:
    """k<x_1..x_n> / (x_j x_i - q_ij x_i x_j, i < j), q_ii = 1, q_ij q_ji = 1."""
    n = len(names)
    if q.rows != n or q.cols != n:
        raise PresentationError("q-matrix must be %d x %d" % (n, n))
    for i in range(n):
        if q[i, i] != 1:
            raise PresentationError("q[%d][%d] must be 1" % (i + 1, i + 1))
        for j in range(n):
            if q[i, j] == 0:
                raise PresentationError("q entries must be nonzero")
            if q[i, j] * q[j, i] != 1:
                raise PresentationError(
                    "q[%d][%d] * q[%d][%d] != 1" % (i + 1, j + 1, j + 1, i + 1))
    rels = []
    for i in range(n):
        for j in range(i + 1, n):
            rels.append({(j, i): Fraction(1), (i, j): -q[i, j]})
    return QuadraticPresentation(names, rels)


def dimension2_presentation(names, m: Matrix) -> QuadraticPresentation:
    """k<x_1..x_n> / (f) with f = x M x^T; M must be invertible."""
    n = len(names)
    if m.rows != n or m.cols != n:
        raise PresentationError("M must be %d x %d" % (n, n))
    try:
        m.inverse()
    except ValueError:
        raise PresentationError("M must be invertible")
    rel = {}
    for i in range(n):
        for j in range(n):
            if m[i, j] != 0:
                rel[(i, j)] = rel.get((i, j), ZERO) + m[i, j]
    return QuadraticPresentation(names, [rel])


def quantum_plane(q) -> QuadraticPresentation:
    q = frac(q)
    return quantum_affine_presentation(
        ["x1", "x2"], Matrix.from_rows([[1, q], [1 / q, 1]]))


def commutative_plane() -> QuadraticPresentation:
    return quantum_plane(1)


def quantum_affine_space(qs: dict, n: int = 3) -> QuadraticPresentation:
    """Quantum affine n-space from the strictly-upper q_ij values."""
    m = Matrix.identity(n)
    for (i, j), val in qs.items():
        v = frac(val)
        if v == 0:
            raise PresentationError("q entries must be nonzero")
        m[i, j] = v
        m[j, i] = 1 / v
    return quantum_affine_presentation(
        ["x%d" % (i + 1) for i in range(n)], m)
