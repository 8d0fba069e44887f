"""Weight-truncated Hochschild cohomology HH^*(A) and twisted Hochschild
homology HH_*(A, A_sigma), on small Koszul-type complexes with reduced
bar complexes as independent oracles, plus the graded duality report.

Weight bookkeeping: a homology class in A_m (x) (dual coalgebra)_q has
internal weight m + q; a cochain A¡_q -> A_{w+q} has internal weight w
(target minus source), which may be negative down to -n.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import ONE, ZERO, SpanBuilder
from .koszul import (AlgebraAutomorphism, FrobeniusData, GradedAlgebraTable,
                     build_algebra, frobenius_check)
from .presentations import QuadraticPresentation


def _acc(out, key, val):
    nv = out.get(key, ZERO) + val
    if nv == 0:
        out.pop(key, None)
    else:
        out[key] = nv


class HochschildSetup:
    """Shared data: the algebra table, the dual coalgebra, sigma on A.

    The coefficient bimodule A_sigma is A with the Nakayama twist on the
    right factor, u o x o v = u x sigma(v); equivalently, the factor a
    wrapped around from the right acts on the left through sigma^{-1}(a).
    This is the orientation under which the graded Van den Bergh duality
    and the identification with the twisted Karoubi-de Rham complex of
    the cobar resolution both hold for the closed-form Nakayama maps of
    the quantum and dimension-2 families.
    """

    def __init__(self, presentation: QuadraticPresentation, max_weight: int,
                 frob: FrobeniusData = None, sigma_matrix=None):
        self.presentation = presentation
        self.frob = frob if frob is not None else frobenius_check(presentation)
        self.n = self.frob.n
        self.table = build_algebra(presentation, max(max_weight, 2))
        mat = (sigma_matrix if sigma_matrix is not None
               else self.frob.nakayama_on_generators())
        self.sigma = AlgebraAutomorphism(self.table, mat)
        self.sigma_wrap = AlgebraAutomorphism(self.table, mat.inverse())
        self.max_weight = self.table.cutoff

    def wrap_times(self, gen_combo: dict, word: tuple) -> dict:
        """(wrap-action of the weight-1 element) * word, reduced in A."""
        out = {}
        g = self.table.num_gens
        for (i,), c in gen_combo.items():
            img = {}
            for r in range(g):
                v = self.sigma_wrap.gen_matrix[r, i]
                if v != 0:
                    img[(r,)] = v
            for wl, cl in img.items():
                for w2, c2 in self.table.mul_words(wl, word).items():
                    _acc(out, w2, c * cl * c2)
        return out


def _homology_dims(dims: dict, rank_out: dict):
    """dims[q], rank_out[q] = rank of d: C_q -> C_{q-1}."""
    return {q: dims[q] - rank_out.get(q, 0) - rank_out.get(q + 1, 0)
            for q in dims}


def koszul_twisted_homology(setup: HochschildSetup, weight: int) -> dict:
    """HH_q(A, A_sigma) in one internal weight, from the small complex
    A_{w-q} (x) A-dual_q with the two-sided coaction differential."""
    co = setup.frob.coalgebra
    table = setup.table
    qmax = min(co.top, weight)
    dims = {}
    bases = {}
    for q in range(qmax + 1):
        bases[q] = [(w, k) for w in table.basis[weight - q]
                    for k in range(co.dim(q))]
        dims[q] = len(bases[q])
    ranks = {}
    for q in range(1, qmax + 1):
        sb = SpanBuilder()
        sign = -ONE if q % 2 else ONE
        for (m, k) in bases[q]:
            img = {}
            if q == 1:
                splits_l = [((k,), 0, ONE)]
                splits_r = [((k,), 0, ONE)]
            else:
                splits_l = [((i,), j, c)
                            for (p, i, j), c in co.delta[(q, k)].items() if p == 1]
                splits_r = [((i,), j, c)
                            for (p, j, i), c in co.delta[(q, k)].items() if p == q - 1]
            for (letter, j, c) in splits_l:
                for w2, c2 in table.mul_words(m, letter).items():
                    _acc(img, (w2, j), c * c2)
            for (letter, j, c) in splits_r:
                for w2, c2 in setup.wrap_times({letter: ONE}, m).items():
                    _acc(img, (w2, j), sign * c * c2)
            sb.add(img)
        ranks[q] = sb.dim
    return _homology_dims(dims, ranks)


def koszul_cohomology(setup: HochschildSetup, weight: int) -> dict:
    """HH^q(A) in one internal weight (target weight minus source weight),
    from the complex Hom(A-dual_q, A_{weight+q})."""
    co = setup.frob.coalgebra
    table = setup.table
    n = setup.n
    dims = {}
    bases = {}
    for q in range(n + 1):
        tw = weight + q
        words = table.basis[tw] if 0 <= tw <= table.cutoff else []
        bases[q] = [(k, w) for k in range(co.dim(q)) for w in words]
        dims[q] = len(bases[q])
    ranks = {}
    for q in range(n):
        # delta: C^q -> C^{q+1}
        sb = SpanBuilder()
        sign = -ONE if (q + 1) % 2 else ONE
        for (k, word) in bases[q]:
            img = {}
            for l in range(co.dim(q + 1)):
                if q == 0:
                    splits = ([((l,), 0, ONE, "L")] + [((l,), 0, ONE, "R")])
                else:
                    splits = ([((i,), j, c, "L")
                               for (p, i, j), c in co.delta[(q + 1, l)].items() if p == 1]
                              + [((i,), j, c, "R")
                                 for (p, j, i), c in co.delta[(q + 1, l)].items()
                                 if p == q])
                for (letter, j, c, side) in splits:
                    if j != k:
                        continue
                    if side == "L":
                        prod = table.mul_words(letter, word)
                        for w2, c2 in prod.items():
                            _acc(img, (l, w2), c * c2)
                    else:
                        prod = table.mul_words(word, letter)
                        for w2, c2 in prod.items():
                            _acc(img, (l, w2), sign * c * c2)
            sb.add(img)
        ranks[q + 1] = sb.dim
    return {q: dims[q] - ranks.get(q, 0) - ranks.get(q + 1, 0) for q in dims}


def _bar_tuples(table: GradedAlgebraTable, total: int, parts: int):
    """Tuples of basis words of positive weights summing to total."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for w in range(1, total - parts + 2):
        for head in table.basis[w]:
            for rest in _bar_tuples(table, total - w, parts - 1):
                out.append((head,) + rest)
    return out


def bar_twisted_homology(setup: HochschildSetup, weight: int) -> dict:
    """Reduced twisted Hochschild chain complex A (x) Abar^{(x) p},
    with sigma on the wrap-around term."""
    table = setup.table
    dims = {}
    bases = {}
    for p in range(weight + 1):
        basis = []
        for w0 in range(0, weight + 1):
            for m in table.basis[w0]:
                for t in _bar_tuples(table, weight - w0, p):
                    basis.append((m, t))
        bases[p] = basis
        dims[p] = len(basis)
    ranks = {}
    for p in range(1, weight + 1):
        sb = SpanBuilder()
        for (m, t) in bases[p]:
            img = {}
            for w2, c2 in table.mul_words(m, t[0]).items():
                _acc(img, (w2, t[1:]), c2)
            for i in range(p - 1):
                sgn = -ONE if (i + 1) % 2 else ONE
                for w2, c2 in table.mul_words(t[i], t[i + 1]).items():
                    _acc(img, (m, t[:i] + (w2,) + t[i + 2:]), sgn * c2)
            sgn = -ONE if p % 2 else ONE
            for w2, c2 in setup.sigma_wrap.apply_word(t[-1]).items():
                for w3, c3 in table.mul_words(w2, m).items():
                    _acc(img, (w3, t[:-1]), sgn * c2 * c3)
            sb.add(img)
        ranks[p] = sb.dim
    return _homology_dims(dims, ranks)


def bar_cohomology(setup: HochschildSetup, weight: int, wmax: int,
                   pmax: int = None) -> dict:
    """Reduced bar cochain complex Hom(Abar^{(x) p}, A) in one internal
    weight, truncated to input weight <= wmax.

    The truncation is a quotient complex (the differential never lowers
    the input weight); callers certify stability by comparing two
    consecutive truncation levels.
    """
    table = setup.table
    n = setup.n
    if pmax is None:
        pmax = n
    dims = {}
    bases = {}
    for p in range(pmax + 2):
        basis = []
        for win in range(p, wmax + 1):
            tw = weight + win
            if tw < 0 or tw > table.cutoff:
                continue
            for t in _bar_tuples(table, win, p):
                for out_w in table.basis[tw]:
                    basis.append((t, out_w))
        bases[p] = basis
        dims[p] = len(basis)
    ranks = {}
    gens_words = {w: table.basis[w] for w in range(1, wmax + 1)}
    for p in range(pmax + 1):
        sb = SpanBuilder()
        for (t, out) in bases[p]:
            wt_in = sum(len(x) for x in t)
            img = {}
            # (delta f)(u, t) = u . f(t)
            for wu in range(1, wmax - wt_in + 1):
                for u in gens_words[wu]:
                    for w2, c2 in table.mul_words(u, out).items():
                        _acc(img, ((u,) + t, w2), c2)
            # internal merges: f evaluated after multiplying two slots
            for i in range(p):
                sgn = -ONE if (i + 1) % 2 else ONE
                wt_slot = self_weight(t[i])
                for wa in range(1, wt_slot):
                    wb = wt_slot - wa
                    for a in table.basis[wa]:
                        for b in table.basis[wb]:
                            c = table.mul_words(a, b).get(t[i], ZERO)
                            if c != 0:
                                _acc(img, (t[:i] + (a, b) + t[i + 1:], out),
                                     sgn * c)
            # (delta f)(t, u) = (-1)^{p+1} f(t) . u
            sgn = -ONE if (p + 1) % 2 else ONE
            for wu in range(1, wmax - wt_in + 1):
                for u in gens_words[wu]:
                    for w2, c2 in table.mul_words(out, u).items():
                        _acc(img, (t + (u,), w2), sgn * c2)
            sb.add(img)
        ranks[p + 1] = sb.dim
    return {p: dims[p] - ranks.get(p, 0) - ranks.get(p + 1, 0)
            for p in range(pmax + 1)}


def self_weight(word: tuple) -> int:
    return len(word)


def hh_cohomology_table(presentation, cutoff: int, frob=None) -> dict:
    """dims of HH^i(A)_w for 0 <= i <= n and -n <= w <= cutoff."""
    f = frob if frob is not None else frobenius_check(presentation)
    setup = HochschildSetup(presentation, cutoff + f.n, frob=f)
    out = {}
    for w in range(-f.n, cutoff + 1):
        dims = koszul_cohomology(setup, w)
        for i, d in dims.items():
            if d:
                out[(i, w)] = d
    return out


def hh_twisted_homology_table(presentation, cutoff: int, frob=None,
                              sigma_matrix=None) -> dict:
    """dims of HH_i(A, A_sigma)_w for weights w <= cutoff."""
    f = frob if frob is not None else frobenius_check(presentation)
    setup = HochschildSetup(presentation, cutoff, frob=f,
                            sigma_matrix=sigma_matrix)
    out = {}
    for w in range(0, cutoff + 1):
        dims = koszul_twisted_homology(setup, w)
        for i, d in dims.items():
            if d:
                out[(i, w)] = d
    return out


class OracleReport:
    def __init__(self):
        self.homology_cells = {}
        self.cohomology_cells = {}
        self.mismatches = []

    @property
    def agreed(self):
        return not self.mismatches


def bar_oracle_compare(presentation, cutoff: int = 4, frob=None,
                       coh_wmax: int = None) -> OracleReport:
    """Koszul-model vs bar-model dimensions, homology and cohomology."""
    f = frob if frob is not None else frobenius_check(presentation)
    n = f.n
    if coh_wmax is None:
        coh_wmax = cutoff + 2
    rep = OracleReport()
    setup = HochschildSetup(presentation, coh_wmax + 1 + cutoff, frob=f)
    for w in range(0, cutoff + 1):
        kos = koszul_twisted_homology(setup, w)
        bar = bar_twisted_homology(setup, w)
        degs = set(k for k, v in kos.items() if v) | set(k for k, v in bar.items() if v)
        for q in sorted(degs):
            kd, bd = kos.get(q, 0), bar.get(q, 0)
            rep.homology_cells[(q, w)] = (kd, bd)
            if kd != bd:
                rep.mismatches.append(("homology", q, w, kd, bd))
    for w in range(-n, cutoff + 1):
        kos = koszul_cohomology(setup, w)
        bar1 = bar_cohomology(setup, w, coh_wmax)
        bar2 = bar_cohomology(setup, w, coh_wmax + 1)
        for q in range(n + 1):
            kd = kos.get(q, 0)
            bd1, bd2 = bar1.get(q, 0), bar2.get(q, 0)
            rep.cohomology_cells[(q, w)] = (kd, bd2)
            if bd1 != bd2:
                rep.mismatches.append(("cohomology-unstable", q, w, bd1, bd2))
            elif kd != bd2:
                rep.mismatches.append(("cohomology", q, w, kd, bd2))
    return rep


class DualityReport:
    """Cells of dim HH^i(A)_w vs dim HH_{n-i}(A, A_sigma)_{w+s}."""

    def __init__(self, n: int, shift: int):
        self.n = n
        self.shift = shift
        self.cells = {}

    @property
    def verified(self):
        return all(v[0] == v[1] for v in self.cells.values())

    def failing_cells(self):
        return {k: v for k, v in self.cells.items() if v[0] != v[1]}


def duality_report(presentation, cutoff: int = 6, shift: int = None,
                   frob=None, sigma_matrix=None) -> DualityReport:
    """Graded Van den Bergh duality: HH^i(A)_w = HH_{n-i}(A, A_sigma)_{w+s}
    over all computed cells; s defaults to n, the weight of the volume."""
    f = frob if frob is not None else frobenius_check(presentation)
    n = f.n
    s = n if shift is None else shift
    rep = DualityReport(n, s)
    coh = hh_cohomology_table(presentation, cutoff - n, frob=f)
    hom = hh_twisted_homology_table(presentation, cutoff, frob=f,
                                    sigma_matrix=sigma_matrix)
    for w in range(-n, cutoff - n + 1):
        for i in range(n + 1):
            a = coh.get((i, w), 0)
            b = hom.get((n - i, w + s), 0)
            if a or b:
                rep.cells[(i, w)] = (a, b)
    return rep
