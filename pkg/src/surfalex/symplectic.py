"""Exact symplectic linear algebra over Z and Q.

The surface homology Z^2g carries the standard form J: block diagonal with
((0,1),(-1,0)) per handle in the basis x1,y1,...,xg,yg.  The symplectic
rank of a sublattice V is dim(W / W n W-perp) for W = V (x) R, computed as
the rank over Q of B J B^T for any basis matrix B of V.  Integer matrices
act on exponent columns: v -> M v.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .laurent import SurfalexError
from .opgroup import abelianize_operator


class SymplecticError(SurfalexError):
    pass


def standard_form(genus):
    """The 2g x 2g matrix J of the standard symplectic form."""
    n = 2 * genus
    J = [[0] * n for _ in range(n)]
    for i in range(genus):
        J[2 * i][2 * i + 1] = 1
        J[2 * i + 1][2 * i] = -1
    return tuple(tuple(row) for row in J)


def pairing(v, w):
    """The standard symplectic pairing of two vectors in Z^2g (or Q^2g)."""
    if len(v) != len(w) or len(v) % 2:
        raise SymplecticError("pairing needs two vectors of equal even length")
    total = 0
    for i in range(0, len(v), 2):
        total += v[i] * w[i + 1] - v[i + 1] * w[i]
    return total


def sp_membership(matrix):
    """True iff the square integer matrix M satisfies M^T J M = J."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n % 2 or any(len(row) != n for row in m):
        raise SymplecticError(f"expected a square 2g x 2g matrix, got {n} rows")
    g = n // 2
    J = standard_form(g)
    # (M^T J M)[i][j] = pairing(column i, column j)
    cols = [tuple(m[r][c] for r in range(n)) for c in range(n)]
    for i in range(n):
        for j in range(n):
            if pairing(cols[i], cols[j]) != J[i][j]:
                return False
    return True


class SpElement:
    """An element of Sp(2g, Z) acting on exponent columns."""

    __slots__ = ("matrix", "genus")

    def __init__(self, matrix, check=True):
        matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        n = len(matrix)
        if n % 2 or any(len(row) != n for row in matrix):
            raise SymplecticError("SpElement needs a square matrix of even size")
        if check and not sp_membership(matrix):
            raise SymplecticError("matrix is not symplectic")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "genus", n // 2)

    def __setattr__(self, *a):
        raise AttributeError("SpElement is immutable")

    @classmethod
    def identity(cls, genus):
        n = 2 * genus
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
                   check=False)

    def __mul__(self, other):
        a, b = self.matrix, other.matrix
        n = len(a)
        prod = tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                     for i in range(n))
        return SpElement(prod, check=False)

    def inverse(self):
        # M^T J M = J gives M^-1 = -J M^T J
        n = 2 * self.genus
        J = standard_form(self.genus)
        mt = tuple(zip(*self.matrix))
        jm = tuple(tuple(sum(J[i][k] * mt[k][j] for k in range(n)) for j in range(n))
                   for i in range(n))
        inv = tuple(tuple(-sum(jm[i][k] * J[k][j] for k in range(n)) for j in range(n))
                    for i in range(n))
        return SpElement(inv, check=False)

    def apply(self, vec):
        if len(vec) != 2 * self.genus:
            raise SymplecticError("vector length does not match genus")
        return tuple(sum(row[j] * vec[j] for j in range(len(vec))) for row in self.matrix)

    def is_identity(self):
        return self == SpElement.identity(self.genus)

    def __eq__(self, other):
        if not isinstance(other, SpElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"SpElement({self.matrix})"


# ---------------------------------------------------------------------------
# Lattices and ranks
# ---------------------------------------------------------------------------

class OperatorLattice:
    """Sublattice of Z^2g given by an arbitrary generating set."""

    __slots__ = ("genus", "vectors")

    def __init__(self, genus, vectors):
        vectors = tuple(tuple(int(x) for x in v) for v in vectors)
        for v in vectors:
            if len(v) != 2 * genus:
                raise SymplecticError("lattice vector length does not match genus")
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "vectors", vectors)

    def __setattr__(self, *a):
        raise AttributeError("OperatorLattice is immutable")

    def __eq__(self, other):
        if not isinstance(other, OperatorLattice):
            return NotImplemented
        return self.genus == other.genus and self.vectors == other.vectors


def _echelon_basis(vectors, width):
    """Nonzero rows of a row-echelon form over Q (exact Fractions)."""
    rows = [[Fraction(x) for x in v] for v in vectors if any(v)]
    r = 0
    for c in range(width):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return rows[:r]


def rational_rank(vectors, width):
    return len(_echelon_basis(vectors, width))


def symplectic_rank(lattice):
    """dim(W / W n W-perp): the rank over Q of B J B^T for a basis B of W."""
    n = 2 * lattice.genus
    basis = _echelon_basis(lattice.vectors, n)
    if not basis:
        return 0
    gram = [[pairing(v, w) for w in basis] for v in basis]
    return rational_rank(gram, len(basis))


def operator_support(poly):
    """Set of surface-exponent vectors of the terms of a polynomial."""
    k = 2 * poly.sig.genus
    return {e[:k] for e in poly.terms}


def quotient_lattice(support, genus):
    """Lattice spanned by differences of support vectors (basepoint-free)."""
    vs = sorted(support)
    if len(vs) <= 1:
        return OperatorLattice(genus, ())
    base = vs[0]
    return OperatorLattice(genus,
                           tuple(tuple(a - b for a, b in zip(v, base)) for v in vs[1:]))


def poly_rank(poly):
    """Symplectic rank of a polynomial: rank of its operator-difference lattice."""
    return symplectic_rank(quotient_lattice(operator_support(poly), poly.sig.genus))


def presentation_rank(pres):
    """Symplectic rank of the lattice spanned by the operators in relators."""
    g = pres.sig.genus
    vectors = [abelianize_operator(occ.op, g)
               for r in pres.relators for occ in r.word]
    return symplectic_rank(OperatorLattice(g, vectors))


# ---------------------------------------------------------------------------
# Generators and breadth-first enumeration of Sp(2g, Z)
# ---------------------------------------------------------------------------

def _transvection(v):
    """w -> w + <w,v> v, as an integer matrix acting on columns: I - v v^T J."""
    n = len(v)
    g = n // 2
    J = standard_form(g)
    vJ = [sum(v[k] * J[k][j] for k in range(n)) for j in range(n)]
    return tuple(tuple((1 if i == j else 0) - v[i] * vJ[j] for j in range(n))
                 for i in range(n))


def _transvection_inv(v):
    n = len(v)
    g = n // 2
    J = standard_form(g)
    vJ = [sum(v[k] * J[k][j] for k in range(n)) for j in range(n)]
    return tuple(tuple((1 if i == j else 0) + v[i] * vJ[j] for j in range(n))
                 for i in range(n))


def sp_generators(genus):
    """Standard generating set, with inverses, in a fixed deterministic order.

    Per handle i: the transvections along e_i and f_i and the quarter-turn
    e_i -> f_i -> -e_i.  Per handle pair i < j: transvections along
    e_i + e_j and f_i + f_j, and the swap of the two handles.
    """
    n = 2 * genus
    mats = []

    def unit(idx):
        return tuple(1 if k == idx else 0 for k in range(n))

    def with_block(i, block):
        m = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for a in range(2):
            for b in range(2):
                m[2 * i + a][2 * i + b] = block[a][b]
        return tuple(tuple(r) for r in m)

    for i in range(genus):
        e, f = unit(2 * i), unit(2 * i + 1)
        mats += [_transvection(e), _transvection_inv(e),
                 _transvection(f), _transvection_inv(f),
                 with_block(i, ((0, -1), (1, 0))),    # e -> f, f -> -e
                 with_block(i, ((0, 1), (-1, 0)))]    # its inverse

    for i in range(genus):
        for j in range(i + 1, genus):
            ee = tuple(a + b for a, b in zip(unit(2 * i), unit(2 * j)))
            ff = tuple(a + b for a, b in zip(unit(2 * i + 1), unit(2 * j + 1)))
            mats += [_transvection(ee), _transvection_inv(ee),
                     _transvection(ff), _transvection_inv(ff)]
            swap = [[0] * n for _ in range(n)]
            for k in range(n):
                swap[k][k] = 1
            for a, b in ((2 * i, 2 * j), (2 * i + 1, 2 * j + 1)):
                swap[a][a] = swap[b][b] = 0
                swap[a][b] = swap[b][a] = 1
            mats.append(tuple(tuple(r) for r in swap))

    out = []
    seen = set()
    for m in mats:
        if m not in seen:
            seen.add(m)
            out.append(SpElement(m))
    return out


def sp_ball(genus, max_word_len):
    """All products of at most max_word_len generators, breadth first.

    Returns an int64 array of shape (N, 2g, 2g); index 0 is the identity and
    the order is deterministic (frontier order major, generator order minor).
    """
    n = 2 * genus
    gens = np.array([g.matrix for g in sp_generators(genus)], dtype=np.int64)
    ident = np.eye(n, dtype=np.int64)
    ball = [ident]
    seen = {ident.tobytes()}
    frontier = ident[None, :, :]
    for _ in range(max_word_len):
        if frontier.shape[0] == 0:
            break
        prods = np.matmul(frontier[:, None, :, :], gens[None, :, :, :])
        prods = prods.reshape(-1, n, n)
        fresh = []
        for mat in prods:
            key = mat.tobytes()
            if key not in seen:
                seen.add(key)
                fresh.append(mat)
        ball.extend(fresh)
        frontier = np.array(fresh) if fresh else np.empty((0, n, n), dtype=np.int64)
    return np.array(ball)


def enumerate_sp(genus, max_word_len):
    """Deterministic duplicate-free stream of SpElements, identity first."""
    for mat in sp_ball(genus, max_word_len):
        yield SpElement(mat.tolist(), check=False)
