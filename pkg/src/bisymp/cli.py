"""Presentation-file parser, subcommand dispatcher and report emitter.

Input files are JSON documents with exact rationals written as "p/q"
strings:

    {"family": "quantum-affine",
     "generators": ["x1", "x2"],
     "q": [["1", "2"], ["1/2", "1"]],
     "cutoff": 6, "dim": 1}

    {"family": "dimension-2-M", "generators": [...], "M": [[...], ...]}

    {"family": "quadratic", "generators": [...],
     "relations": [[["1", 2, 1], ["-2", 1, 2]], ...]}   # [coeff, i, j], 1-based

Subcommands: dual, nakayama, omega, hochschild, duality, drep,
verify-all.  Exit codes: 0 all requested verifications pass,
1 verification failure, 2 input error.  Reports are emitted with a
stable key order, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .linalg import Matrix
from .presentations import (PresentationError, QuadraticPresentation,
                            dimension2_presentation,
                            quantum_affine_presentation)
from . import koszul
from .koszul import (DualNotFiniteError, NotFrobeniusError, build_algebra,
                     frobenius_check, koszulity_certificate)
from .ncforms import (CobarAlgebra, FormCalculus, build_omega, perturb_omega,
                      phi_bimodule_check, phi_chain_check, phi_matrix,
                      verify_closed_invariant)
from .hochschild import (bar_oracle_compare, duality_report,
                         hh_cohomology_table, hh_twisted_homology_table)
from . import drep as drep_mod
from .drep import (TangentModule, drep_build, omega_V, phi_V_chain_check,
                   phi_V_generator_matrix, rep_homology,
                   tangent_delta_square_check, verify_omega_V)

SCHEMA_VERSION = 1


class ParseError(ValueError):
    """Malformed presentation file."""


def fmt_q(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rational(s, where: str) -> Fraction:
    try:
        if isinstance(s, int):
            return Fraction(s)
        if isinstance(s, str):
            return Fraction(s)
    except (ValueError, ZeroDivisionError):
        pass
    raise ParseError("malformed rational %r at %s" % (s, where))


def parse_matrix(rows, n: int, where: str) -> Matrix:
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError("%s must be a %d x %d matrix" % (where, n, n))
    return Matrix.from_rows(
        [[parse_rational(x, "%s[%d][%d]" % (where, i + 1, j + 1))
          for j, x in enumerate(row)] for i, row in enumerate(rows)])


class PresentationFile:
    def __init__(self, data: dict, path: str = "<input>"):
        self.path = path
        if not isinstance(data, dict):
            raise ParseError("presentation file must be a JSON object")
        self.family = data.get("family")
        if self.family not in ("quadratic", "quantum-affine", "dimension-2-M"):
            raise ParseError("unknown family %r" % (self.family,))
        gens = data.get("generators")
        if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
            raise ParseError("generators must be a list of names")
        self.cutoff = int(data.get("cutoff", 6))
        self.dim = int(data.get("dim", 1))
        if self.cutoff < 2:
            raise ParseError("cutoff must be at least 2")
        if self.dim < 1:
            raise ParseError("dim must be at least 1")
        n = len(gens)
        try:
            if self.family == "quantum-affine":
                if "q" not in data:
                    raise ParseError("quantum-affine requires a q matrix")
                q = parse_matrix(data["q"], n, "q")
                self.presentation = quantum_affine_presentation(gens, q)
            elif self.family == "dimension-2-M":
                if "M" not in data:
                    raise ParseError("dimension-2-M requires an M matrix")
                m = parse_matrix(data["M"], n, "M")
                self.presentation = dimension2_presentation(gens, m)
            else:
                rels = data.get("relations")
                if not isinstance(rels, list):
                    raise ParseError("quadratic requires a list of relations")
                parsed = []
                for ri, rel in enumerate(rels):
                    vec = {}
                    for ti, term in enumerate(rel):
                        where = "relations[%d][%d]" % (ri, ti)
                        if len(term) != 3:
                            raise ParseError("%s must be [coeff, i, j]" % where)
                        c = parse_rational(term[0], where)
                        i, j = int(term[1]) - 1, int(term[2]) - 1
                        if not (0 <= i < n and 0 <= j < n):
                            raise ParseError("%s: generator index out of range" % where)
                        vec[(i, j)] = vec.get((i, j), Fraction(0)) + c
                    parsed.append(vec)
                self.presentation = QuadraticPresentation(gens, parsed)
        except PresentationError as e:
            raise ParseError("%s: %s" % (self.path, e))

    def echo(self) -> dict:
        p = self.presentation
        rels = []
        for rel in p.relations:
            rels.append([[fmt_q(c), i + 1, j + 1]
                         for (i, j), c in sorted(rel.items())])
        return {"family": self.family,
                "generators": list(p.generators),
                "relations": rels,
                "cutoff": self.cutoff,
                "dim": self.dim}


def parse(path: str) -> PresentationFile:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise ParseError("cannot read %s: %s" % (path, e))
    except json.JSONDecodeError as e:
        raise ParseError("%s: invalid JSON at line %d" % (path, e.lineno))
    return PresentationFile(data, path)


def word_name(pres, word) -> str:
    if not word:
        return "1"
    return "*".join(pres.generators[i] for i in word)


def matrix_json(m: Matrix):
    return [[fmt_q(x) for x in row] for row in m.data]


class Pipeline:
    """Lazily built objects shared by the subcommand handlers."""

    def __init__(self, pf: PresentationFile):
        self.pf = pf
        self.presentation = pf.presentation
        self._frob = None
        self._cobar = None
        self._calc = None
        self._omega = None

    @property
    def frob(self):
        if self._frob is None:
            self._frob = frobenius_check(self.presentation)
        return self._frob

    @property
    def cobar(self):
        if self._cobar is None:
            self._cobar = CobarAlgebra(self.frob)
            self._cobar.check_dsquare_on_generators()
        return self._cobar

    @property
    def calc(self):
        if self._calc is None:
            self._calc = FormCalculus(self.cobar)
        return self._calc

    @property
    def omega(self):
        if self._omega is None:
            self._omega = build_omega(self.calc, self.frob)
        return self._omega


def section_dual(pl: Pipeline) -> dict:
    pf = pl.pf
    table = build_algebra(pl.presentation, pf.cutoff)
    frob = pl.frob
    cert = koszulity_certificate(pl.presentation, pf.cutoff, frob=frob)
    out = {
        "algebra_dims": table.hilbert(),
        "dual_dims": [frob.dual_table.dim(m) for m in range(frob.n + 1)],
        "coalgebra_dims": frob.coalgebra.dims(),
        "frobenius_degree": frob.n,
        "koszulity_certified_to": pf.cutoff if cert.certified else None,
        "koszulity_first_failure": cert.first_failure,
    }
    return out


def section_nakayama(pl: Pipeline) -> dict:
    frob = pl.frob
    sigma_star = {str(m): matrix_json(frob.sigma_star[m])
                  for m in range(frob.n + 1)}
    gen = frob.nakayama_on_generators()
    images = {}
    for j, name in enumerate(pl.presentation.generators):
        terms = []
        for i in range(gen.rows):
            if gen[i, j] != 0:
                terms.append("%s*%s" % (fmt_q(gen[i, j]),
                                        pl.presentation.generators[i]))
        images[name] = " + ".join(terms) if terms else "0"
    return {"sigma_star_blocks": sigma_star,
            "sigma_on_generators_matrix": matrix_json(gen),
            "sigma_on_generators": images}


def section_omega(pl: Pipeline, perturb: bool = False, samples: int = 20) -> dict:
    frob = pl.frob
    calc = pl.calc
    omega = pl.omega
    if perturb:
        omega = perturb_omega(omega)
    closure = verify_closed_invariant(calc, frob, omega)
    pm = phi_matrix(calc, frob, omega)
    try:
        pm.inverse()
        invertible = True
    except ValueError:
        invertible = False
    chain_ok, chain_fails = phi_chain_check(calc, frob, omega)
    words = [w for wt in range(0, 3) for w in pl.cobar.words_of_weight(wt)]
    import random
    rng = random.Random(20260810)
    pairs = [((), ())]
    while len(pairs) < samples:
        pairs.append((rng.choice(words), rng.choice(words)))
    bim_ok, bim_fails = phi_bimodule_check(calc, frob, omega, pairs)
    terms = []
    for tup, c in sorted(omega.items()):
        terms.append([fmt_q(c),
                      "d(%s)" % frob.coalgebra.gen_name(tup[1]),
                      "d(%s)" % frob.coalgebra.gen_name(tup[3])])
    checks = dict(closure.checks)
    checks["sigma_invariance_of_delta_eta"] = frob.sigma_invariance_of_delta_eta()
    checks["phi_matrix_invertible"] = invertible
    checks["phi_matrix_equals_pairing"] = (pm == frob.pairing_matrix())
    checks["phi_chain_check"] = chain_ok
    checks["phi_bimodule_check"] = bim_ok
    return {"omega_terms": terms,
            "total_degree": frob.n,
            "closure_tower": [0, 0, 0],
            "checks": checks,
            "bimodule_samples": len(pairs),
            "failed_checks": [k for k, v in checks.items() if not v]}


def section_hochschild(pl: Pipeline) -> dict:
    pf = pl.pf
    frob = pl.frob
    coh = hh_cohomology_table(pl.presentation, pf.cutoff - frob.n, frob=frob)
    hom = hh_twisted_homology_table(pl.presentation, pf.cutoff, frob=frob)
    return {
        "cohomology_dims": {"HH^%d weight %d" % k: v
                            for k, v in sorted(coh.items())},
        "twisted_homology_dims": {"HH_%d weight %d" % k: v
                                  for k, v in sorted(hom.items())},
    }


def section_duality(pl: Pipeline, shift=None) -> dict:
    pf = pl.pf
    rep = duality_report(pl.presentation, cutoff=pf.cutoff, shift=shift,
                         frob=pl.frob)
    cells = {"HH^%d weight %d" % k: [v[0], v[1]]
             for k, v in sorted(rep.cells.items())}
    return {"shift": rep.shift,
            "cells (cohomology vs homology at weight+shift)": cells,
            "verified": rep.verified,
            "failed_checks": [] if rep.verified else ["duality"]}


def section_drep(pl: Pipeline) -> dict:
    pf = pl.pf
    rv = drep_build(pl.cobar, pf.dim)
    ov = omega_V(rv, pl.omega)
    vrep = verify_omega_V(rv, ov)
    pm = phi_V_generator_matrix(rv)
    try:
        pm.inverse()
        invertible = True
    except ValueError:
        invertible = False
    chain_ok, _ = phi_V_chain_check(rv, pl.calc, pl.omega)
    delta_sq = tangent_delta_square_check(rv, pl.calc)
    hom = rep_homology(rv, pf.cutoff)
    h_table = {}
    for (w, i), e in sorted(hom.entries.items()):
        if e.dim:
            h_table["H_%d weight %d" % (i, w)] = e.dim
    checks = dict(vrep.checks)
    checks["phi_V_matrix_invertible"] = invertible
    checks["phi_V_chain_check"] = chain_ok
    checks["tangent_delta_square"] = delta_sq
    return {"matrix_size": pf.dim,
            "omega_V_terms": len(ov),
            "rep_homology_dims": h_table,
            "checks": checks,
            "failed_checks": [k for k, v in checks.items() if not v]}


def run(command: str, pf: PresentationFile, shift=None,
        perturb_omega_flag: bool = False) -> dict:
    """Execute a subcommand pipeline; returns the structured report."""
    report = {"schema_version": SCHEMA_VERSION,
              "command": command,
              "input": pf.echo()}
    failed = []
    pl = Pipeline(pf)
    try:
        if command == "dual":
            report["dual"] = section_dual(pl)
            if report["dual"]["koszulity_certified_to"] is None:
                failed.append("koszulity")
        elif command == "nakayama":
            report["nakayama"] = section_nakayama(pl)
        elif command == "omega":
            report["omega"] = section_omega(pl, perturb=perturb_omega_flag)
            failed.extend(report["omega"]["failed_checks"])
        elif command == "hochschild":
            report["hochschild"] = section_hochschild(pl)
        elif command == "duality":
            report["duality"] = section_duality(pl, shift=shift)
            failed.extend(report["duality"]["failed_checks"])
        elif command == "drep":
            report["drep"] = section_drep(pl)
            failed.extend(report["drep"]["failed_checks"])
        elif command == "verify-all":
            report["dual"] = section_dual(pl)
            if report["dual"]["koszulity_certified_to"] is None:
                failed.append("koszulity")
            report["nakayama"] = section_nakayama(pl)
            report["omega"] = section_omega(pl, perturb=perturb_omega_flag)
            failed.extend(report["omega"]["failed_checks"])
            report["duality"] = section_duality(pl, shift=shift)
            failed.extend(report["duality"]["failed_checks"])
            report["drep"] = section_drep(pl)
            failed.extend(report["drep"]["failed_checks"])
        else:
            raise ParseError("unknown command %r" % command)
    except (NotFrobeniusError, DualNotFiniteError) as e:
        report["error"] = str(e)
        failed.append(str(e))
    report["failed_checks"] = failed
    report["verified"] = not failed
    return report


def render_text(report: dict, indent: int = 0) -> str:
    lines = []

    def walk(obj, depth):
        pad = "  " * depth
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _is_flat(v):
                    lines.append("%s%s:" % (pad, k))
                    walk(v, depth + 1)
                else:
                    lines.append("%s%s: %s" % (pad, k, _flat(v)))
        elif isinstance(obj, list):
            for v in obj:
                lines.append("%s- %s" % (pad, _flat(v)))

    def _is_flat(v):
        if isinstance(v, list):
            return all(not isinstance(x, dict) for x in v)
        return False

    def _flat(v):
        if isinstance(v, bool):
            return "pass" if v else "FAIL"
        return json.dumps(v) if isinstance(v, (dict, list)) else str(v)

    walk(report, indent)
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="bisymp",
        description="Exact verification of twisted bi-symplectic structure, "
                    "graded Poincare duality and derived representation "
                    "schemes for Koszul quadratic algebras.")
    ap.add_argument("command", choices=["dual", "nakayama", "omega",
                                        "hochschild", "duality", "drep",
                                        "verify-all"])
    ap.add_argument("file", help="presentation file (JSON)")
    ap.add_argument("--cutoff", type=int, default=None,
                    help="weight cutoff (default from file, else 6)")
    ap.add_argument("--dim", type=int, default=None,
                    help="matrix size for drep (default from file, else 1)")
    ap.add_argument("--format", choices=["text", "structured", "json"],
                    default="structured",
                    help="output format (structured = json-like)")
    ap.add_argument("--out", default=None, help="write the report to a file")
    ap.add_argument("--shift", type=int, default=None,
                    help="duality weight-shift override (default n)")
    ap.add_argument("--debug-perturb-omega", action="store_true",
                    help="drop one summand of omega (negative control)")
    args = ap.parse_args(argv)
    try:
        pf = parse(args.file)
        if args.cutoff is not None:
            if args.cutoff < 2:
                raise ParseError("cutoff must be at least 2")
            pf.cutoff = args.cutoff
        if args.dim is not None:
            if args.dim < 1:
                raise ParseError("dim must be at least 1")
            pf.dim = args.dim
    except ParseError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 2
    report = run(args.command, pf, shift=args.shift,
                 perturb_omega_flag=args.debug_perturb_omega)
    if args.format in ("structured", "json"):
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = render_text(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if report.get("failed_checks"):
        for name in report["failed_checks"]:
            print("FAILED: %s" % name, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
