"""Crossed Fox calculus: the Alexander matrix of an orbit presentation.

Each relator contributes one matrix row over Z[H1(surface) x Z^d].  Scanning
the relator left to right, an occurrence of generator a with operator word
gamma and sign s contributes

    prefix * gamma_bar            when s = +1,
    prefix * (-gamma_bar / t_c)   when s = -1,

where prefix is the product of t_{c(gen)}^{sign} over the occurrences
already read, gamma_bar is the abelianized operator monomial, and c is the
component of a.  Operators enter the ring only here, abelianized.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly, PolyMatrix
from .opgroup import abelianize_operator


def epsilon_weight(pres, occ):
    """Meridian weight of one occurrence: t_{c(gen)}^{sign} as a monomial."""
    sig = pres.sig
    exps = [0] * sig.nvars
    exps[2 * sig.genus + pres.component_of(occ.gen) - 1] = occ.sign
    return LaurentPoly.term(sig, exps)


def fox_derivative(pres, relator, gen):
    """The matrix entry d(relator)/d(gen) in the ring of the presentation."""
    sig = pres.sig
    g, d = sig.genus, sig.components
    terms = {}
    prefix_t = [0] * d
    c_gen = pres.component_of(gen) - 1
    for occ in relator.word:
        if occ.gen == gen:
            gamma = abelianize_operator(occ.op, g)
            t_part = list(prefix_t)
            if occ.sign == 1:
                coeff = 1
            else:
                coeff = -1
                t_part[c_gen] -= 1
            e = gamma + tuple(t_part)
            s = terms.get(e, 0) + coeff
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        prefix_t[pres.component_of(occ.gen) - 1] += occ.sign
    return LaurentPoly(sig, terms)


@dataclass
class FoxRow:
    """One Alexander-matrix row: the relator's derivative per generator."""

    relator_id: str
    entries: dict

    def specialized_sum(self, assignment):
        total = None
        for p in self.entries.values():
            q = p.specialize(assignment)
            total = q if total is None else total + q
        return total


def fox_row(pres, relator, relator_id):
    return FoxRow(relator_id,
                  {a: fox_derivative(pres, relator, a) for a in pres.generators})


def alexander_matrix(pres):
    """m x n matrix: rows follow relator order, columns generator order."""
    rows = [[fox_derivative(pres, r, a) for a in pres.generators]
            for r in pres.relators]
    return PolyMatrix(pres.sig, rows,
                      row_labels=[f"r{i+1}" for i in range(pres.m)],
                      col_labels=pres.generators)
