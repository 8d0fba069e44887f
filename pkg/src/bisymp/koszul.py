"""Quadratic algebras, Koszul dual algebra/coalgebra, Frobenius pairing
and the Nakayama automorphism.

Conventions fixed here and used everywhere else:

* tensor words are tuples of 0-based generator indices, compared lex;
* graded pieces of quotient algebras use monomial coset bases obtained
  by eliminating the lex-largest monomials (reversed-pivot echelon);
* the dual coalgebra lives inside the tensor coalgebra; its bases are
  reduced echelon bases with pivots on the lex-largest words, so the
  weight-n volume element of a quantum space has leading coefficient 1
  on x_n...x_1;
* the coproduct is literal deconcatenation, expanded in those bases;
  the dual algebra's multiplication table is its transpose.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from .linalg import Matrix, ONE, ZERO, rank_kernel
from .presentations import QuadraticPresentation


class NotFrobeniusError(ValueError):
    """The dual algebra is not Frobenius / the input is not AS-regular."""


class DualNotFiniteError(ValueError):
    """The Koszul dual stayed nonzero beyond the safety cutoff."""


def all_words(num_gens: int, length: int):
    if length == 0:
        return [()]
    return [tuple(w) for w in iproduct(range(num_gens), repeat=length)]


def sparse_rref_words(vectors, reverse=True):
    """Reduced echelon form of tensor vectors (dicts word->coeff).

    Pivot = lex-largest word when reverse is True.  Returns the list of
    (pivot_word, row_dict) sorted by pivot word, rows fully reduced.
    The RREF invariant (rows vanish at the other pivots) makes a single
    elimination pass per incoming vector sufficient.
    """
    pick = max if reverse else min
    rows = {}  # pivot -> fully reduced row
    for vec in vectors:
        res = {w: c for w, c in vec.items() if c != 0}
        for piv in [p for p in res if p in rows]:
            c = res.get(piv)
            if not c:
                continue
            for w, v in rows[piv].items():
                nv = res.get(w, ZERO) - c * v
                if nv == 0:
                    res.pop(w, None)
                else:
                    res[w] = nv
        if not res:
            continue
        piv = pick(res)
        pv = res[piv]
        row = {w: c / pv for w, c in res.items()}
        for p0 in list(rows):
            r0 = rows[p0]
            c = r0.get(piv)
            if c:
                r0 = dict(r0)
                for w, v in row.items():
                    nv = r0.get(w, ZERO) - c * v
                    if nv == 0:
                        r0.pop(w, None)
                    else:
                        r0[w] = nv
                rows[p0] = r0
        rows[piv] = row
    return sorted(rows.items())


def reduce_against(rows, vec: dict) -> dict:
    """Reduce a tensor vector against echelon rows [(pivot, row)]."""
    res = {w: c for w, c in vec.items() if c != 0}
    for piv, row in rows:
        c = res.get(piv)
        if c:
            for w, v in row.items():
                nv = res.get(w, ZERO) - c * v
                if nv == 0:
                    res.pop(w, None)
                else:
                    res[w] = nv
    return res


class GradedAlgebraTable:
    """Weight-truncated quotient T(V)/(relations) with monomial cosets.

    With stop_at_zero the construction halts at the first weight whose
    graded piece vanishes (then all higher pieces vanish too, since the
    algebra is generated in weight 1); .top records that top weight.
    """

    def __init__(self, presentation: QuadraticPresentation, cutoff: int,
                 stop_at_zero: bool = False):
        if cutoff < 2:
            raise ValueError("cutoff must be at least 2")
        self.presentation = presentation
        self.cutoff = cutoff
        self.top = None
        g = presentation.num_generators
        self.num_gens = g
        self.ideal_rows = {0: [], 1: []}
        self.basis = {0: [()], 1: [(i,) for i in range(g)]}
        for m in range(2, cutoff + 1):
            if m == 2:
                self.ideal_rows[2] = sparse_rref_words(presentation.relations)
            else:
                span = []
                for piv, row in self.ideal_rows[m - 1]:
                    for i in range(g):
                        span.append({(i,) + w: c for w, c in row.items()})
                        span.append({w + (i,): c for w, c in row.items()})
                self.ideal_rows[m] = sparse_rref_words(span)
            pivots = {piv for piv, _ in self.ideal_rows[m]}
            self.basis[m] = [w for w in all_words(g, m) if w not in pivots]
            if stop_at_zero and not self.basis[m]:
                self.top = m - 1
                self.cutoff = m
                break
        self._mul_cache = {}

    def dim(self, m: int) -> int:
        if m not in self.basis:
            if self.top is not None and m > self.cutoff:
                return 0
            raise ValueError("weight %d is beyond the table cutoff" % m)
        return len(self.basis[m])

    def hilbert(self):
        return [self.dim(m) for m in range(self.cutoff + 1)]

    def reduce(self, tensor: dict, m: int) -> dict:
        """Coset representative of a weight-m tensor, over basis words."""
        return reduce_against(self.ideal_rows[m], tensor)

    def mul_words(self, w1: tuple, w2: tuple) -> dict:
        m = len(w1) + len(w2)
        if m > self.cutoff:
            raise ValueError("product exceeds the table cutoff")
        key = (w1, w2)
        if key not in self._mul_cache:
            self._mul_cache[key] = self.reduce({w1 + w2: ONE}, m)
        return self._mul_cache[key]

    def mul(self, elem1: dict, elem2: dict) -> dict:
        out = {}
        for w1, c1 in elem1.items():
            for w2, c2 in elem2.items():
                for w, c in self.mul_words(w1, w2).items():
                    nv = out.get(w, ZERO) + c1 * c2 * c
                    if nv == 0:
                        out.pop(w, None)
                    else:
                        out[w] = nv
        return out

    def check_associative(self):
        """Exhaustive associativity check within the cutoff."""
        for p in range(1, self.cutoff + 1):
            for q in range(1, self.cutoff + 1 - p):
                for r in range(1, self.cutoff + 1 - p - q):
                    for a in self.basis[p]:
                        for b in self.basis[q]:
                            for c in self.basis[r]:
                                left = self.mul(self.mul_words(a, b), {c: ONE})
                                right = self.mul({a: ONE}, self.mul_words(b, c))
                                if left != right:
                                    return (a, b, c)
        return None


def build_algebra(presentation: QuadraticPresentation, cutoff: int) -> GradedAlgebraTable:
    return GradedAlgebraTable(presentation, cutoff)


def dual_presentation(presentation: QuadraticPresentation) -> QuadraticPresentation:
    """T(V*)/(R-perp): the annihilator of the relation space."""
    g = presentation.num_generators
    words = all_words(g, 2)
    m = presentation.relation_matrix()
    _, ker = rank_kernel(m)
    rels = []
    for vec in ker:
        rel = {words[i]: c for i, c in enumerate(vec) if c != 0}
        rels.append(rel)
    names = ["%s~" % nm for nm in presentation.generators]
    return QuadraticPresentation(names, rels)


def koszul_dual(presentation: QuadraticPresentation, safety_cutoff: int = 8) -> GradedAlgebraTable:
    """Quotient table of A! = T(V*)/(R-perp), truncated at its top weight.

    Raises DualNotFiniteError if A! is still nonzero at the safety cutoff.
    """
    dual_p = dual_presentation(presentation)
    table = GradedAlgebraTable(dual_p, safety_cutoff, stop_at_zero=True)
    if table.top is None:
        raise DualNotFiniteError(
            "dual not finite-dimensional; input not AS-regular at this cutoff")
    return table


class KoszulDualCoalgebra:
    """The dual coalgebra: subspaces of tensor powers with deconcatenation.

    bases[w] is a reversed-pivot reduced echelon basis of the weight-w
    piece; basis keys are pairs (w, i).  The weight-w piece sits in
    homological degree w.  delta[(w, k)] lists the reduced coproduct
    of basis element (w, k) as {(p, i, j): coeff} with split (p, w-p).
    """

    def __init__(self, presentation: QuadraticPresentation, top: int):
        self.presentation = presentation
        self.top = top
        g = presentation.num_generators
        self.num_gens = g
        self.bases = {0: [({(): ONE}, ())],
                      1: [({(i,): ONE}, (i,)) for i in range(g)]}
        if top >= 2:
            rows = sparse_rref_words(presentation.relations)
            self.bases[2] = [(dict(row), piv) for piv, row in rows]
        for w in range(3, top + 1):
            self.bases[w] = self._intersect(w)
        self.delta = {}
        for w in range(2, top + 1):
            for k in range(len(self.bases[w])):
                self.delta[(w, k)] = self._deconcatenate(w, k)

    def _intersect(self, w: int):
        """(V tensor C_{w-1}) cap (C_{w-1} tensor V), echelonized."""
        g = self.num_gens
        prev = self.bases[w - 1]
        left = []
        right = []
        for i in range(g):
            for vec, _ in prev:
                left.append({(i,) + word: c for word, c in vec.items()})
                right.append({word + (i,): c for word, c in vec.items()})
        words = all_words(g, w)
        index = {word: k for k, word in enumerate(words)}
        cols = left + right
        mat = Matrix(len(words), len(cols))
        for j, vec in enumerate(cols):
            for word, c in vec.items():
                mat[index[word], j] = c
        _, kernel = rank_kernel(mat)
        members = []
        nl = len(left)
        for coeffs in kernel:
            vec = {}
            for j in range(nl):
                if coeffs[j] != 0:
                    for word, c in left[j].items():
                        nv = vec.get(word, ZERO) + coeffs[j] * c
                        if nv == 0:
                            vec.pop(word, None)
                        else:
                            vec[word] = nv
            if vec:
                members.append(vec)
        rows = sparse_rref_words(members)
        return [(dict(row), piv) for piv, row in rows]

    def dim(self, w: int) -> int:
        if w < 0 or w > self.top:
            return 0
        return len(self.bases.get(w, []))

    def dims(self):
        return [self.dim(w) for w in range(self.top + 1)]

    def basis_keys(self):
        return [(w, i) for w in range(self.top + 1) for i in range(self.dim(w))]

    def reduced_keys(self):
        return [(w, i) for w in range(1, self.top + 1) for i in range(self.dim(w))]

    def coords(self, w: int, tensor: dict):
        """Coordinates over the weight-w basis, by pivot readoff."""
        out = [tensor.get(piv, ZERO) for _, piv in self.bases[w]]
        # defensive: verify the vector really lies in the subspace
        rec = {}
        for c, (vec, _) in zip(out, self.bases[w]):
            if c == 0:
                continue
            for word, v in vec.items():
                nv = rec.get(word, ZERO) + c * v
                if nv == 0:
                    rec.pop(word, None)
                else:
                    rec[word] = nv
        probe = {w2: c for w2, c in tensor.items() if c != 0}
        if rec != probe:
            raise ValueError("tensor does not lie in the coalgebra piece")
        return out

    def _deconcatenate(self, w: int, k: int):
        vec, _ = self.bases[w][k]
        out = {}
        for p in range(1, w):
            split = {}
            for word, c in vec.items():
                key = (word[:p], word[p:])
                nv = split.get(key, ZERO) + c
                if nv == 0:
                    split.pop(key, None)
                else:
                    split[key] = nv
            # readoff on pivot pairs, then verify
            q = w - p
            coeffs = {}
            for i, (_, piv1) in enumerate(self.bases[p]):
                for j, (_, piv2) in enumerate(self.bases[q]):
                    c = split.get((piv1, piv2), ZERO)
                    if c != 0:
                        coeffs[(p, i, j)] = c
            rec = {}
            for (p0, i, j), c in coeffs.items():
                v1, _ = self.bases[p0][i]
                v2, _ = self.bases[w - p0][j]
                for w1, c1 in v1.items():
                    for w2, c2 in v2.items():
                        key = (w1, w2)
                        nv = rec.get(key, ZERO) + c * c1 * c2
                        if nv == 0:
                            rec.pop(key, None)
                        else:
                            rec[key] = nv
            if rec != split:
                raise ValueError(
                    "deconcatenation escaped the coalgebra at weight %d" % w)
            out.update(coeffs)
        return out

    def full_delta(self, key):
        """Full coproduct including the two counit terms."""
        w, k = key
        out = {(0, 0, k): ONE, (w, k, 0): ONE} if w > 0 else {(0, 0, 0): ONE}
        # (p, i, j) with p = weight of the left factor; counit terms use
        # the convention: (0, 0, k) is 1 (x) c and (w, k, 0) is c (x) 1.
        for (p, i, j), c in self.delta.get((w, k), {}).items():
            out[(p, i, j)] = c
        return out

    def gen_name(self, key) -> str:
        w, i = key
        if w == 0:
            return "1"
        if w == 1:
            return self.presentation.generators[i]
        if self.dim(w) == 1:
            return "z%d" % w
        return "z%d_%d" % (w, i)


class DualMultTable:
    """Multiplication of A! on the abstract dual basis of the coalgebra.

    Keys are the coalgebra basis keys (w, i); the product is the
    transpose of deconcatenation: coefficient of (w, k) in the product
    of duals of (p, i) and (q, j) equals the (p, i, j) coefficient of
    the coproduct of (w, k).
    """

    def __init__(self, coalgebra: KoszulDualCoalgebra):
        self.coalgebra = coalgebra
        self.table = {}
        for (w, k), terms in coalgebra.delta.items():
            for (p, i, j), c in terms.items():
                q = w - p
                key = ((p, i), (q, j))
                self.table.setdefault(key, {})[(w, k)] = c

    def mul_keys(self, key1, key2) -> dict:
        w1, i1 = key1
        w2, i2 = key2
        if w1 == 0:
            return {key2: ONE}
        if w2 == 0:
            return {key1: ONE}
        if w1 + w2 > self.coalgebra.top:
            return {}
        return dict(self.table.get((key1, key2), {}))

    def mul(self, elem1: dict, elem2: dict) -> dict:
        out = {}
        for k1, c1 in elem1.items():
            for k2, c2 in elem2.items():
                for k, c in self.mul_keys(k1, k2).items():
                    nv = out.get(k, ZERO) + c1 * c2 * c
                    if nv == 0:
                        out.pop(k, None)
                    else:
                        out[k] = nv
        return out


class FrobeniusData:
    """Pairing blocks, volume element, coproduct of the volume and the
    Nakayama maps of a finite-dimensional Koszul dual."""

    def __init__(self, presentation: QuadraticPresentation,
                 dual_table: GradedAlgebraTable,
                 coalgebra: KoszulDualCoalgebra):
        self.presentation = presentation
        self.dual_table = dual_table
        self.coalgebra = coalgebra
        self.n = coalgebra.top
        n = self.n
        if coalgebra.dim(n) != 1:
            raise NotFrobeniusError(
                "input is not Frobenius / not AS-regular: "
                "top weight %d has dimension %d" % (n, coalgebra.dim(n)))
        for m in range(n + 1):
            if coalgebra.dim(m) != dual_table.dim(m):
                raise NotFrobeniusError(
                    "quotient and intersection models of the dual disagree "
                    "at weight %d" % m)
        self.mult = DualMultTable(coalgebra)
        self.eta_key = (n, 0)
        self.delta_eta = coalgebra.full_delta(self.eta_key)
        # pairing blocks: B[m][i][j] = coefficient of (m,i)(x)(n-m,j) in Delta(eta)
        self.blocks = {}
        for m in range(n + 1):
            dm, dq = coalgebra.dim(m), coalgebra.dim(n - m)
            block = Matrix(dm, dq)
            for (p, i, j), c in self.delta_eta.items():
                if p == m:
                    block[i, j] = c
            try:
                inv = block.inverse()
            except ValueError:
                raise NotFrobeniusError(
                    "input is not Frobenius / not AS-regular: "
                    "singular pairing block at weight %d" % m)
            self.blocks[m] = block
            if m == 0 and block[0, 0] != 1:
                raise NotFrobeniusError("counit/volume normalization broke")
        # Nakayama on the dual algebra, weight by weight:
        # <a, b> = (-1)^{|a||b|} <b, sigma*(a)>
        self.sigma_star = {}
        for m in range(n + 1):
            sign = -ONE if (m * (n - m)) % 2 else ONE
            bm = self.blocks[m]
            bq_inv = self.blocks[n - m].inverse()
            self.sigma_star[m] = bq_inv.mul(bm.transpose())
            if sign < 0:
                s = self.sigma_star[m]
                s.data = [[-x for x in row] for row in s.data]
        # sigma on the coalgebra: inverse transpose in the dual bases
        self.sigma = {m: self.sigma_star[m].transpose().inverse()
                      for m in range(n + 1)}

    def pairing(self, key1, key2) -> Fraction:
        """<dual of key1, dual of key2> = coefficient of the volume dual."""
        w1, i1 = key1
        w2, j = key2
        if w1 + w2 != self.n:
            return ZERO
        return self.blocks[w1][i1, j]

    def pairing_matrix(self) -> Matrix:
        keys = self.coalgebra.basis_keys()
        idx = {k: i for i, k in enumerate(keys)}
        m = Matrix(len(keys), len(keys))
        for k1 in keys:
            for k2 in keys:
                m[idx[k1], idx[k2]] = self.pairing(k1, k2)
        return m

    def sigma_on_coords(self, w: int, coords):
        return self.sigma[w].apply(list(coords))

    def sigma_star_elem(self, elem: dict) -> dict:
        out = {}
        for (w, i), c in elem.items():
            col = [ONE if r == i else ZERO for r in range(self.coalgebra.dim(w))]
            img = self.sigma_star[w].apply(col)
            for r, v in enumerate(img):
                if v != 0:
                    nv = out.get((w, r), ZERO) + c * v
                    if nv == 0:
                        out.pop((w, r), None)
                    else:
                        out[(w, r)] = nv
        return out

    def sigma_elem(self, elem: dict) -> dict:
        out = {}
        for (w, i), c in elem.items():
            col = [ONE if r == i else ZERO for r in range(self.coalgebra.dim(w))]
            img = self.sigma[w].apply(col)
            for r, v in enumerate(img):
                if v != 0:
                    nv = out.get((w, r), ZERO) + c * v
                    if nv == 0:
                        out.pop((w, r), None)
                    else:
                        out[(w, r)] = nv
        return out

    def nakayama_on_generators(self) -> Matrix:
        """Matrix of sigma on the generator span, columns = images.

        Normalized against the closed forms of the two input families:
        sigma(x_i) = (prod_j q_ji) x_i for quantum spaces, and
        sigma(x) = -(x_1..x_n) M^T M^{-1} k for the dimension-2 family.
        """
        return self.sigma[1]

    def sigma_invariance_of_delta_eta(self) -> bool:
        """(sigma (x) sigma) Delta(eta) == Delta(eta), coordinatewise."""
        n = self.n
        for m in range(n + 1):
            sm = self.sigma[m]
            sq = self.sigma[n - m]
            block = self.blocks[m]
            # transformed block: sm block sq^T
            t = sm.mul(block).mul(sq.transpose())
            if t != block:
                return False
        return True


def dual_coalgebra(presentation: QuadraticPresentation,
                   dual_table: GradedAlgebraTable) -> KoszulDualCoalgebra:
    return KoszulDualCoalgebra(presentation, dual_table.top)


def frobenius_check(presentation: QuadraticPresentation,
                    safety_cutoff: int = 12) -> FrobeniusData:
    dual_table = koszul_dual(presentation, safety_cutoff)
    coalgebra = dual_coalgebra(presentation, dual_table)
    return FrobeniusData(presentation, dual_table, coalgebra)


def nakayama(f: FrobeniusData):
    """(sigma* per weight on the dual, sigma on the generators of A)."""
    return f.sigma_star, f.nakayama_on_generators()


def evaluation_matrix(f: FrobeniusData, m: int) -> Matrix:
    """<monomial coset basis of A!_m, coalgebra basis of weight m>."""
    words = f.dual_table.basis[m]
    basis = f.coalgebra.bases.get(m, [])
    mat = Matrix(len(words), len(basis))
    for i, word in enumerate(words):
        for j, (vec, _) in enumerate(basis):
            mat[i, j] = vec.get(word, ZERO)
    return mat


def quotient_pairing(f: FrobeniusData, elem1: dict, elem2: dict) -> Fraction:
    """Pairing on the monomial-coset model of A!: coefficient of the top
    basis word in the product (elements are dicts word->coeff)."""
    prod = f.dual_table.mul(elem1, elem2)
    top_words = f.dual_table.basis[f.n]
    return prod.get(top_words[0], ZERO)


class AlgebraAutomorphism:
    """sigma extended multiplicatively to a quotient algebra table."""

    def __init__(self, table: GradedAlgebraTable, gen_matrix: Matrix):
        self.table = table
        self.gen_matrix = gen_matrix

    def apply_word(self, word: tuple) -> dict:
        out = {(): ONE}
        for letter in word:
            nxt = {}
            for i in range(self.table.num_gens):
                c = self.gen_matrix[i, letter]
                if c == 0:
                    continue
                for w0, c0 in out.items():
                    key = w0 + (i,)
                    nv = nxt.get(key, ZERO) + c0 * c
                    if nv == 0:
                        nxt.pop(key, None)
                    else:
                        nxt[key] = nv
            out = nxt
        reduced = {}
        for w0, c0 in out.items():
            for w1, c1 in self.table.reduce({w0: c0}, len(word)).items():
                nv = reduced.get(w1, ZERO) + c1
                if nv == 0:
                    reduced.pop(w1, None)
                else:
                    reduced[w1] = nv
        return reduced

    def apply(self, elem: dict) -> dict:
        out = {}
        for w0, c0 in elem.items():
            for w1, c1 in self.apply_word(w0).items():
                nv = out.get(w1, ZERO) + c0 * c1
                if nv == 0:
                    out.pop(w1, None)
                else:
                    out[w1] = nv
        return out

    def preserves_relations(self) -> bool:
        p = self.table.presentation
        for rel in p.relations:
            img = {}
            for word, c in rel.items():
                left = {(i,): self.gen_matrix[i, word[0]]
                        for i in range(self.table.num_gens)}
                right = {(i,): self.gen_matrix[i, word[1]]
                         for i in range(self.table.num_gens)}
                for (a,), ca in left.items():
                    if ca == 0:
                        continue
                    for (b,), cb in right.items():
                        if cb == 0:
                            continue
                        key = (a, b)
                        nv = img.get(key, ZERO) + c * ca * cb
                        if nv == 0:
                            img.pop(key, None)
                        else:
                            img[key] = nv
            if reduce_against(sparse_rref_words(p.relations), img):
                return False
        return True


class KoszulityReport:
    def __init__(self, certified: bool, cutoff: int, first_failure=None):
        self.certified = certified
        self.cutoff = cutoff
        self.first_failure = first_failure

    def __bool__(self):
        return self.certified


def koszulity_certificate(presentation: QuadraticPresentation, cutoff: int,
                          frob: FrobeniusData = None) -> KoszulityReport:
    """Exactness of A (x) A-dual-coalgebra in positive weights <= cutoff.

    Uses the one-sided Koszul differential d(a (x) c) = sum a x' (x) c''
    over the left deconcatenation of c.
    """
    if frob is None:
        frob = frobenius_check(presentation)
    table = build_algebra(presentation, cutoff)
    co = frob.coalgebra
    for w in range(1, cutoff + 1):
        qmax = min(co.top, w)
        # bases: C_q = A_{w-q} (x) coalgebra weight q
        dims = {}
        mats = {}
        for q in range(qmax + 1):
            dims[q] = table.dim(w - q) * co.dim(q)
        for q in range(1, qmax + 1):
            src_words = table.basis[w - q]
            tgt_words = table.basis[w - q + 1]
            tgt_index = {}
            for a_i, aw in enumerate(tgt_words):
                for c_j in range(co.dim(q - 1)):
                    tgt_index[(aw, c_j)] = a_i * co.dim(q - 1) + c_j
            mat = Matrix(dims[q - 1], dims[q])
            col = 0
            for aw in src_words:
                for k in range(co.dim(q)):
                    # left split of the coalgebra element (q -> 1 + (q-1))
                    if q == 1:
                        splits = {(k, 0): ONE}  # c = x_k, remainder = unit
                        terms = [((k,), 0, ONE)]
                    else:
                        terms = []
                        for (p, i, j), c in co.delta[(q, k)].items():
                            if p == 1:
                                terms.append(((i,), j, c))
                    for (letter, j, c) in terms:
                        prod = table.mul_words(aw, letter)
                        for w2, c2 in prod.items():
                            row = tgt_index[(w2, j)]
                            mat[row, col] += c * c2
                    col += 1
            mats[q] = mat
        # homology must vanish at weight w in every degree
        for q in range(qmax + 1):
            dout = mats.get(q)
            din = mats.get(q + 1)
            if dims[q] == 0:
                continue
            if dout is not None:
                rank_out, ker = rank_kernel(dout)
                dim_ker = dims[q] - rank_out
            else:
                dim_ker = dims[q]
            dim_img = din.rank() if din is not None else 0
            if dim_ker != dim_img:
                return KoszulityReport(False, cutoff, (w, q))
    return KoszulityReport(True, cutoff)
