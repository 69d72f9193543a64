"""Exact Laurent polynomial arithmetic over Z[x1^±,y1^±,...,xg^±,yg^±][t1^±,...,td^±].

The coefficient ring has 2g "surface" variables x1,y1,...,xg,yg (one
symplectic pair per handle) and d "meridian" variables t1,...,td (one per
link component).  Units of this ring are exactly the signed monomials, so
every polynomial has a canonical representative in its unit orbit: shift
each variable so its minimum exponent is 0, then make the coefficient of
the graded-lex greatest monomial positive.

Polynomials are stored sparsely as {exponent tuple: int}.  Coefficients are
plain Python ints (arbitrary precision); fraction-free elimination swells
intermediate coefficients and must never overflow or round.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass


class SurfalexError(Exception):
    """Base class for all errors raised by this package."""


class RingError(SurfalexError):
    """Signature mismatch, bad substitution, or other ring-level misuse."""


class PolyParseError(SurfalexError):
    """Malformed polynomial text."""


# ---------------------------------------------------------------------------
# Ring signature and monomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingSignature:
    """Shape of the ring: surface genus g >= 1 and component count d >= 1."""

    genus: int
    components: int

    def __post_init__(self):
        if self.genus < 1:
            raise RingError("genus must be >= 1 (surface of positive genus)")
        if self.components < 1:
            raise RingError("component count must be >= 1")

    @property
    def nvars(self):
        return 2 * self.genus + self.components

    def var_names(self, alias=False):
        """Canonical names x1,y1,...,t1,..., or the short aliases when available."""
        g, d = self.genus, self.components
        if alias and g <= 2 and d == 1:
            gamma = ("x", "y", "u", "v")[: 2 * g]
            return gamma + ("t",)
        names = []
        for i in range(1, g + 1):
            names += [f"x{i}", f"y{i}"]
        names += [f"t{i}" for i in range(1, d + 1)]
        return tuple(names)

    def var_index(self, name):
        """Index of a variable by canonical name or accepted alias."""
        idx = self._name_table().get(name)
        if idx is None:
            raise PolyParseError(f"unknown variable {name!r} for genus {self.genus}, "
                                 f"{self.components} component(s)")
        return idx

    def gamma_index(self, name):
        """Index of a surface variable (operator letter); rejects t's."""
        idx = self.var_index(name)
        if idx >= 2 * self.genus:
            raise PolyParseError(f"{name!r} is a meridian variable, not an operator letter")
        return idx

    def _name_table(self):
        table = {n: i for i, n in enumerate(self.var_names())}
        g, d = self.genus, self.components
        if g <= 2:
            for n, i in zip(("x", "y", "u", "v"), range(2 * g)):
                table.setdefault(n, i)
        if d == 1:
            table.setdefault("t", 2 * g)
        return table

    def zero_exps(self):
        return (0,) * self.nvars


@dataclass(frozen=True)
class Monomial:
    """Exponent data of one monomial: surface part in Z^2g, meridian part in Z^d."""

    gamma: tuple
    t: tuple

    @property
    def exps(self):
        return self.gamma + self.t

    @classmethod
    def from_exps(cls, sig, exps):
        k = 2 * sig.genus
        return cls(tuple(exps[:k]), tuple(exps[k:]))

    def __mul__(self, other):
        return Monomial(tuple(a + b for a, b in zip(self.gamma, other.gamma)),
                        tuple(a + b for a, b in zip(self.t, other.t)))

    def inverse(self):
        return Monomial(tuple(-a for a in self.gamma), tuple(-a for a in self.t))


def _grlex(exps):
    # graded lex key; translation-invariant, so also usable on Laurent exponents
    return (sum(exps), exps)


# ---------------------------------------------------------------------------
# Raw term-dict helpers.  A "termdict" maps exponent tuples to nonzero ints.
# ---------------------------------------------------------------------------

def _add_raw(f, g):
    out = dict(f)
    for e, c in g.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def _neg_raw(f):
    return {e: -c for e, c in f.items()}


def _mul_raw(f, g):
    if not f or not g:
        return {}
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _scale_raw(f, coeff, shift):
    if coeff == 0:
        return {}
    return {tuple(a + b for a, b in zip(e, shift)): coeff * c for e, c in f.items()}


def _min_exps_raw(f, nvars):
    mins = [None] * nvars
    for e in f:
        for i, v in enumerate(e):
            if mins[i] is None or v < mins[i]:
                mins[i] = v
    return mins


def _normalize_raw(f, nvars):
    """Shift so each variable's minimum exponent is 0; returns (shifted, shift)."""
    if not f:
        return {}, (0,) * nvars
    mins = _min_exps_raw(f, nvars)
    if all(m == 0 for m in mins):
        return dict(f), (0,) * nvars
    shift = tuple(-m for m in mins)
    return _scale_raw(f, 1, shift), shift


def _poly_div_raw(f, g):
    """Exact quotient f/g for termdicts with nonnegative exponents, else None."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return {}
    ge = max(g, key=_grlex)
    gc = g[ge]
    q = {}
    r = dict(f)
    while r:
        re_ = max(r, key=_grlex)
        de = tuple(a - b for a, b in zip(re_, ge))
        if any(v < 0 for v in de):
            return None
        dc, rem = divmod(r[re_], gc)
        if rem:
            return None
        q[de] = dc
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(de, e2))
            s = r.get(e, 0) - dc * c2
            if s:
                r[e] = s
            elif e in r:
                del r[e]
    return q


# --- multivariate gcd: primitive pseudo-remainder sequences ---------------

def _deg_main(f, k):
    return max(e[k] for e in f)


def _split_main(f, k):
    """View f as univariate in variable k: {degree: coefficient termdict}."""
    coeffs = {}
    for e, c in f.items():
        d = e[k]
        e0 = e[:k] + (0,) + e[k + 1:]
        coeffs.setdefault(d, {})[e0] = c
    return coeffs


def _shift_main(f, k, d):
    return {e[:k] + (e[k] + d,) + e[k + 1:]: c for e, c in f.items()}


def _content_of(coeffs, k):
    cont = {}
    for c in coeffs:
        cont = _gcd_raw(cont, c, k)
    return cont


def _lead_sign_raw(f):
    return 1 if f[max(f, key=_grlex)] > 0 else -1


def _primitive_main(f, k):
    """Divide out the content w.r.t. variable k (sign-stable)."""
    if not f:
        return {}
    coeffs = _split_main(f, k)
    cont = _content_of(coeffs.values(), k - 1)
    if _lead_sign_raw(cont) < 0:
        cont = _neg_raw(cont)
    zero = (0,) * len(next(iter(f)))
    if cont == {zero: 1}:
        return dict(f)
    out = {}
    for d, c in coeffs.items():
        qc = _poly_div_raw(c, cont)
        out.update(_shift_main(qc, k, d))
    return out


def _prem_raw(f, g, k):
    """Pseudo-remainder of f by g in variable k (up to lc(g) powers)."""
    db = _deg_main(g, k)
    lcb = _split_main(g, k)[db]
    r = dict(f)
    while r and _deg_main(r, k) >= db:
        dr = _deg_main(r, k)
        lcr = _split_main(r, k)[dr]
        r = _add_raw(_mul_raw(lcb, r),
                     _neg_raw(_mul_raw(_shift_main(lcr, k, dr - db), g)))
    return r


def _gcd_raw(f, g, k):
    """Gcd of termdicts with nonnegative exponents, recursing on variable k.

    Variables of index > k must not occur.  Result sign is arbitrary.
    """
    if not f:
        return dict(g)
    if not g:
        return dict(f)
    if k == -1:
        zero = next(iter(f))
        return {zero: math.gcd(f[zero], g[zero])}
    if _deg_main(f, k) == 0 and _deg_main(g, k) == 0:
        return _gcd_raw(f, g, k - 1)

    fc = _split_main(f, k)
    gc = _split_main(g, k)
    cont_f = _content_of(fc.values(), k - 1)
    cont_g = _content_of(gc.values(), k - 1)
    cont = _gcd_raw(cont_f, cont_g, k - 1)

    fp = _primitive_main(f, k)
    gp = _primitive_main(g, k)
    a, b = (fp, gp) if _deg_main(fp, k) >= _deg_main(gp, k) else (gp, fp)
    while b:
        r = _prem_raw(a, b, k)
        a, b = b, (_primitive_main(r, k) if r else {})
    return _mul_raw(cont, _primitive_main(a, k))


# ---------------------------------------------------------------------------
# LaurentPoly
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Immutable sparse Laurent polynomial tied to a RingSignature."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig, terms):
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "terms", {e: c for e, c in terms.items() if c})

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors --

    @classmethod
    def zero(cls, sig):
        return cls(sig, {})

    @classmethod
    def constant(cls, sig, c):
        return cls(sig, {sig.zero_exps(): c} if c else {})

    @classmethod
    def one(cls, sig):
        return cls.constant(sig, 1)

    @classmethod
    def term(cls, sig, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != sig.nvars:
            raise RingError("exponent tuple has wrong length for signature")
        return cls(sig, {exps: coeff} if coeff else {})

    @classmethod
    def variable(cls, sig, name, power=1):
        exps = [0] * sig.nvars
        exps[sig.var_index(name)] = power
        return cls.term(sig, exps)

    # -- basic queries --

    @property
    def is_zero(self):
        return not self.terms

    def items(self):
        return self.terms.items()

    def monomials(self):
        return [Monomial.from_exps(self.sig, e) for e in self.terms]

    def constant_value(self):
        """The integer value if this is a constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and self.sig.zero_exps() in self.terms:
            return self.terms[self.sig.zero_exps()]
        return None

    def as_unit(self):
        """Return (sign, Monomial) if this is a unit (±1 times a monomial)."""
        if len(self.terms) != 1:
            return None
        e, c = next(iter(self.terms.items()))
        if c not in (1, -1):
            return None
        return c, Monomial.from_exps(self.sig, e)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({poly_str(self)!r})"

    # -- arithmetic --

    def _check(self, other):
        if self.sig != other.sig:
            raise RingError(f"signature mismatch: {self.sig} vs {other.sig}")

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.sig, other)
        self._check(other)
        return LaurentPoly(self.sig, _add_raw(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.sig, _neg_raw(self.terms))

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.sig, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.sig, _scale_raw(self.terms, other, self.sig.zero_exps()))
        self._check(other)
        return LaurentPoly(self.sig, _mul_raw(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponent must be an int")
        if n < 0:
            u = self.as_unit()
            if u is None:
                raise RingError("negative power of a non-unit polynomial")
            sign, mon = u
            inv = LaurentPoly.term(self.sig, mon.inverse().exps, sign)
            return inv ** (-n)
        out = LaurentPoly.one(self.sig)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale_unit(self, sign, monomial):
        """Multiply by the unit sign * monomial."""
        return LaurentPoly(self.sig, _scale_raw(self.terms, sign, monomial.exps))

    # -- canonical representative of the unit orbit --

    def canonical_unit(self):
        """The unit (sign, Monomial) with self.scale_unit(...) canonical."""
        if not self.terms:
            return 1, Monomial.from_exps(self.sig, self.sig.zero_exps())
        mins = _min_exps_raw(self.terms, self.sig.nvars)
        shift = tuple(-m for m in mins)
        lead = max(self.terms, key=_grlex)
        sign = 1 if self.terms[lead] > 0 else -1
        return sign, Monomial.from_exps(self.sig, shift)

    def canonicalize(self):
        sign, mon = self.canonical_unit()
        if sign == 1 and all(v == 0 for v in mon.exps):
            return self
        return self.scale_unit(sign, mon)

    def min_exponents(self):
        if not self.terms:
            return None
        return tuple(_min_exps_raw(self.terms, self.sig.nvars))

    # -- substitution --

    def specialize(self, assignment):
        """Apply a ring homomorphism sending some variables to units.

        assignment maps variable name or index to a LaurentPoly that must be
        a unit (±monomial); unassigned variables map to themselves.
        """
        sig = self.sig
        images = {}
        for key, img in assignment.items():
            idx = key if isinstance(key, int) else sig.var_index(key)
            if not 0 <= idx < sig.nvars:
                raise RingError(f"variable index {idx} out of range")
            if isinstance(img, int):
                img = LaurentPoly.constant(sig, img)
            if img.sig != sig:
                raise RingError("substitution image has mismatched signature")
            u = img.as_unit()
            if u is None:
                raise RingError("substitution images must be units (±monomial), got "
                                f"{poly_str(img)!r}")
            images[idx] = u
        if not images:
            return self
        out = {}
        for e, c in self.terms.items():
            sign = 1
            new = [0] * sig.nvars
            for i, v in enumerate(e):
                if i in images:
                    s, mon = images[i]
                    if v % 2 and s < 0:
                        sign = -sign
                    for j, w in enumerate(mon.exps):
                        new[j] += v * w
                else:
                    new[i] += v
            key = tuple(new)
            s = out.get(key, 0) + sign * c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return LaurentPoly(sig, out)


def exact_div(p, q):
    """Exact quotient p/q in the Laurent ring, or None when q does not divide p."""
    if q.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero:
        return LaurentPoly.zero(p.sig)
    p._check(q)
    nv = p.sig.nvars
    fp, sp_ = _normalize_raw(p.terms, nv)
    fq, sq = _normalize_raw(q.terms, nv)
    quo = _poly_div_raw(fp, fq)
    if quo is None:
        return None
    shift = tuple(b - a for a, b in zip(sp_, sq))
    return LaurentPoly(p.sig, _scale_raw(quo, 1, shift))


def gcd(polys, sig=None):
    """Canonicalized gcd of a list of polynomials (gcd of none/zeros is 0)."""
    polys = list(polys)
    if not polys:
        if sig is None:
            raise RingError("gcd of an empty list needs an explicit signature")
        return LaurentPoly.zero(sig)
    sig = polys[0].sig
    acc = {}
    nv = sig.nvars
    for p in polys:
        if p.sig != sig:
            raise RingError("gcd inputs must share one signature")
        if p.is_zero:
            continue
        f, _ = _normalize_raw(p.terms, nv)
        acc = _gcd_raw(acc, f, nv - 1) if acc else f
        if len(acc) == 1 and acc.get(sig.zero_exps()) in (1, -1):
            break
    return LaurentPoly(sig, acc).canonicalize()


# ---------------------------------------------------------------------------
# Matrices over the ring
# ---------------------------------------------------------------------------

class PolyMatrix:
    """Rectangular matrix of LaurentPolys sharing one signature."""

    __slots__ = ("sig", "entries", "row_labels", "col_labels", "_cols")

    def __init__(self, sig, entries, row_labels=None, col_labels=None, cols=None):
        entries = tuple(tuple(row) for row in entries)
        if entries:
            ncols = len(entries[0])
        elif cols is not None:
            ncols = cols
        else:
            ncols = len(col_labels) if col_labels else 0
        for row in entries:
            if len(row) != ncols:
                raise RingError("ragged matrix")
            for p in row:
                if p.sig != sig:
                    raise RingError("matrix entry signature mismatch")
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_cols", ncols)
        object.__setattr__(self, "row_labels",
                           tuple(row_labels) if row_labels else tuple(f"r{i+1}" for i in range(len(entries))))
        object.__setattr__(self, "col_labels",
                           tuple(col_labels) if col_labels else tuple(f"c{j+1}" for j in range(ncols)))

    def __setattr__(self, *a):
        raise AttributeError("PolyMatrix is immutable")

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return self._cols

    def entry(self, i, j):
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.sig == other.sig and self.entries == other.entries

    def submatrix(self, row_idx, col_idx):
        rows = [[self.entries[i][j] for j in col_idx] for i in row_idx]
        return PolyMatrix(self.sig, rows,
                          [self.row_labels[i] for i in row_idx],
                          [self.col_labels[j] for j in col_idx])

    @classmethod
    def identity(cls, sig, n):
        one, zero = LaurentPoly.one(sig), LaurentPoly.zero(sig)
        return cls(sig, [[one if i == j else zero for j in range(n)] for i in range(n)])

    def determinant(self):
        """Exact determinant by fraction-free Bareiss elimination.

        Rows are first scaled by monomials to clear negative exponents; the
        accumulated monomial is divided back out of the result.
        """
        if self.rows != self.cols:
            raise RingError(f"determinant of a non-square {self.rows}x{self.cols} matrix")
        n = self.rows
        sig = self.sig
        if n == 0:
            return LaurentPoly.one(sig)
        nv = sig.nvars
        total_shift = [0] * nv
        a = []
        for row in self.entries:
            mins = [0] * nv
            for p in row:
                m = p.min_exponents()
                if m is not None:
                    mins = [min(x, y) for x, y in zip(mins, m)]
            shift = tuple(-m if m < 0 else 0 for m in mins)
            total_shift = [s + t for s, t in zip(total_shift, shift)]
            a.append([_scale_raw(p.terms, 1, shift) for p in row])

        sign = 1
        prev = None
        for k in range(n - 1):
            if not a[k][k]:
                for r in range(k + 1, n):
                    if a[r][k]:
                        a[k], a[r] = a[r], a[k]
                        sign = -sign
                        break
                else:
                    return LaurentPoly.zero(sig)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = _add_raw(_mul_raw(a[k][k], a[i][j]),
                                   _neg_raw(_mul_raw(a[i][k], a[k][j])))
                    quo = num if prev is None else _poly_div_raw(num, prev)
                    if quo is None:
                        raise RingError("Bareiss division was not exact (internal error)")
                    a[i][j] = quo
                a[i][k] = {}
            prev = a[k][k]
        det = _scale_raw(a[n - 1][n - 1], sign, tuple(-s for s in total_shift))
        return LaurentPoly(sig, det)

    def minors(self, k):
        """All k x k minors, canonicalized, in lex order of (row set, col set)."""
        if k < 0:
            raise RingError("minor size must be nonnegative")
        if k == 0:
            return [LaurentPoly.one(self.sig)]
        if k > min(self.rows, self.cols):
            return []
        out = []
        for ri in itertools.combinations(range(self.rows), k):
            for ci in itertools.combinations(range(self.cols), k):
                out.append(self.submatrix(ri, ci).determinant().canonicalize())
        return out


# ---------------------------------------------------------------------------
# Text syntax: parse and print
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|([()+\-*^]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise PolyParseError(f"unexpected character {rest[0]!r} in polynomial")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", op))
        pos = m.end()
    out.append(("end", None))
    return out


class _PolyParser:
    def __init__(self, tokens, sig):
        self.toks = tokens
        self.i = 0
        self.sig = sig

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        p = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.next()
                p = p * self.factor()
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                p = p * self.factor()          # juxtaposition
            else:
                return p

    def factor(self):
        p = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            p = p ** self.signed_int()
        return p

    def atom(self):
        kind, val = self.next()
        if kind == "num":
            return LaurentPoly.constant(self.sig, val)
        if kind == "name":
            return LaurentPoly.variable(self.sig, val)
        if kind == "op" and val == "(":
            p = self.expr()
            kind, val = self.next()
            if (kind, val) != ("op", ")"):
                raise PolyParseError("missing closing parenthesis")
            return p
        raise PolyParseError(f"unexpected token {val!r} in polynomial")

    def signed_int(self):
        sign = 1
        kind, val = self.next()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            kind, val = self.next()
        if kind != "num":
            raise PolyParseError("expected integer exponent after '^'")
        return sign * val


def parse_poly(text, sig):
    """Parse polynomial text like '(x*y - y)*t^2 + (y - x)*t + (x - 1)'."""
    parser = _PolyParser(_tokenize(text), sig)
    try:
        p = parser.expr()
    except RingError as exc:
        raise PolyParseError(str(exc)) from exc
    kind, val = parser.peek()
    if kind != "end":
        raise PolyParseError(f"trailing input at token {val!r}")
    return p


def poly_str(p, alias=False):
    """Deterministic rendering: terms in descending graded-lex order."""
    if p.is_zero:
        return "0"
    names = p.sig.var_names(alias=alias)
    parts = []
    for e in sorted(p.terms, key=_grlex, reverse=True):
        c = p.terms[e]
        factors = []
        for name, v in zip(names, e):
            if v == 1:
                factors.append(name)
            elif v != 0:
                factors.append(f"{name}^{v}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
