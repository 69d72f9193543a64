"""Operator-group presentations of link groups in thickened surfaces.

A presentation <a1,...,an | r1,...,rm> over the surface group records one
generator per arc orbit and one relator per crossing orbit.  Each generator
occurrence may carry an operator word in the surface letters x1,y1,...,xg,yg
recording which deck translate of the arc is meant.  The operator words stay
non-abelian here; only the Fox-calculus layer abelianizes them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .laurent import RingSignature, SurfalexError


class PresentationError(SurfalexError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


_IDENTITY_LETTERS = ()


@dataclass(frozen=True)
class OperatorWord:
    """Word in the surface letters: sequence of (gamma index, ±1)."""

    letters: tuple = _IDENTITY_LETTERS

    @classmethod
    def identity(cls):
        return cls(())

    @property
    def is_identity(self):
        return not self.letters

    def __mul__(self, other):
        return OperatorWord(self.letters + other.letters)

    def inverse(self):
        return OperatorWord(tuple((i, -s) for i, s in reversed(self.letters)))

    def abelianized(self, genus):
        v = [0] * (2 * genus)
        for i, s in self.letters:
            v[i] += s
        return tuple(v)


def abelianize_operator(word, genus):
    """Exponent-sum vector of an operator word in Z^2g."""
    return word.abelianized(genus)


@dataclass(frozen=True)
class Occurrence:
    """One symbol a^gamma or its inverse inside a relator word."""

    gen: str
    sign: int = 1
    op: OperatorWord = field(default_factory=OperatorWord.identity)

    def inverse(self):
        return Occurrence(self.gen, -self.sign, self.op)

    def cancels(self, other):
        return self.gen == other.gen and self.op == other.op and self.sign == -other.sign


@dataclass(frozen=True)
class Relator:
    """A word of occurrences read as a relation w = 1."""

    word: tuple

    def __len__(self):
        return len(self.word)

    def inverse(self):
        return Relator(tuple(o.inverse() for o in reversed(self.word)))

    def free_reduce(self):
        """Cancel adjacent inverse occurrences carrying equal operator words."""
        out = []
        for occ in self.word:
            if out and out[-1].cancels(occ):
                out.pop()
            else:
                out.append(occ)
        return Relator(tuple(out))

    def concat(self, other):
        return Relator(self.word + other.word)


@dataclass(frozen=True)
class Crossing:
    """A crossing: over-strand occurrence, incoming and outgoing under-strand."""

    over: Occurrence
    under_in: Occurrence
    under_out: Occurrence
    sign: int = 1

    def __post_init__(self):
        for occ in (self.over, self.under_in, self.under_out):
            if occ.sign != 1:
                raise PresentationError("crossing strands must be positive occurrences")
        if self.sign not in (1, -1):
            raise PresentationError("crossing sign must be +1 or -1")


def wirtinger_relator(crossing):
    """The relator of a crossing: o u o^-1 w^-1 (positive) or o^-1 u o w^-1."""
    o, u, w = crossing.over, crossing.under_in, crossing.under_out
    if crossing.sign == 1:
        return Relator((o, u, o.inverse(), w.inverse()))
    return Relator((o.inverse(), u, o, w.inverse()))


@dataclass
class OrbitPresentation:
    sig: RingSignature
    generators: tuple
    component: dict
    relators: tuple

    @property
    def n(self):
        return len(self.generators)

    @property
    def m(self):
        return len(self.relators)

    def component_of(self, gen):
        return self.component[gen]


def make_presentation(sig, generators, component, relators):
    """Validated construction; relators are freely reduced here."""
    generators = tuple(generators)
    seen = set()
    for g in generators:
        if g in seen:
            raise PresentationError(f"duplicate generator {g!r}")
        seen.add(g)
    if not generators:
        raise PresentationError("a presentation needs at least one generator")
    comp = dict(component)
    d = sig.components
    for g in generators:
        c = comp.get(g)
        if c is None:
            if d == 1:
                comp[g] = 1
            else:
                raise PresentationError(f"generator {g!r} has no component assignment")
        elif not 1 <= c <= d:
            raise PresentationError(f"component index {c} of {g!r} out of range 1..{d}")
    missing = set(range(1, d + 1)) - set(comp[g] for g in generators)
    if missing:
        raise PresentationError(f"no generator on component(s) {sorted(missing)}")
    reduced = []
    for r in relators:
        for occ in r.word:
            if occ.gen not in seen:
                raise PresentationError(f"relator uses undeclared generator {occ.gen!r}")
            for i, _ in occ.op.letters:
                if not 0 <= i < 2 * sig.genus:
                    raise PresentationError("operator letter out of range for genus")
        reduced.append(r.free_reduce())
    return OrbitPresentation(sig, generators, {g: comp[g] for g in generators}, tuple(reduced))


@dataclass
class SquareDiagnostic:
    n: int
    m: int
    square: bool
    note: str


def validate_square(pres):
    """Report generator/relator counts and which Delta_0 path applies."""
    n, m = pres.n, pres.m
    if n == m:
        note = f"square: n = m = {n}; Delta_0 is the determinant of A"
    elif m < n:
        note = (f"n = {n} generators but m = {m} relators; "
                f"Delta_0 = 0 by the size convention, minors give Delta_i for i >= {n - m}")
    else:
        note = f"n = {n} generators, m = {m} relators; Delta_i computed from minors"
    return SquareDiagnostic(n, m, n == m, note)


# ---------------------------------------------------------------------------
# Hat presentation of the ordinary fundamental group
# ---------------------------------------------------------------------------

@dataclass
class GroupPresentation:
    """Ordinary group presentation: named generators, words of (name, ±1)."""

    sig: RingSignature
    generators: tuple
    relators: tuple

    def render(self, alias=False):
        lines = ["generators: " + " ".join(self._name(g, alias) for g in self.generators)]
        for w in self.relators:
            lines.append("relator: " + (self._word_str(w, alias) if w else "1"))
        return "\n".join(lines)

    def _name(self, name, alias):
        if alias:
            canon = self.sig.var_names()
            short = self.sig.var_names(alias=True)
            if name in canon:
                return short[canon.index(name)]
        return name

    def _word_str(self, word, alias=False):
        parts = []
        for name, s in word:
            n = self._name(name, alias)
            parts.append(n if s == 1 else f"{n}^-1")
        return " ".join(parts)


def _reduce_letters(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def hat_presentation(pres):
    """Rewrite a^gamma as gamma a gamma^-1 and add the surface relator.

    The result presents the fundamental group of the thickened-surface link
    complement: generators a1..an plus the surface letters, relators the
    rewritten originals plus prod_i [x_i, y_i].
    """
    sig = pres.sig
    g = sig.genus
    gamma_names = sig.var_names()[: 2 * g]
    generators = pres.generators + tuple(gamma_names)

    def op_letters(opword):
        return [(gamma_names[i], s) for i, s in opword.letters]

    relators = []
    for r in pres.relators:
        word = []
        for occ in r.word:
            conj = op_letters(occ.op)
            word.extend(conj)
            word.append((occ.gen, occ.sign))
            word.extend((n, -s) for n, s in reversed(conj))
        relators.append(_reduce_letters(word))

    surface = []
    for i in range(g):
        xi, yi = gamma_names[2 * i], gamma_names[2 * i + 1]
        surface += [(xi, 1), (yi, 1), (xi, -1), (yi, -1)]
    relators.append(tuple(surface))
    return GroupPresentation(sig, generators, tuple(relators))


# ---------------------------------------------------------------------------
# File grammar
# ---------------------------------------------------------------------------

_OCC_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*(~)?\s*(\{([^}]*)\})?")
_OPLETTER_RE = re.compile(r"([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")
_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")


def _parse_operator_word(text, sig, line):
    letters = []
    for tok in text.split():
        m = _OPLETTER_RE.match(tok)
        if not m:
            raise PresentationError(f"bad operator letter {tok!r}", line)
        name, exp = m.group(1), m.group(2)
        try:
            idx = sig.gamma_index(name)
        except SurfalexError as exc:
            raise PresentationError(str(exc), line) from exc
        k = int(exp) if exp is not None else 1
        letters.extend([(idx, 1 if k > 0 else -1)] * abs(k))
    return OperatorWord(tuple(letters))


def _parse_word(text, sig, line):
    if text.strip() == "1":
        return []                       # identity word (e.g. a fully reduced relator)
    occs = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _OCC_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationError(f"cannot read occurrence at {text[pos:]!r}", line)
        name, inv, _, opbody = m.groups()
        op = _parse_operator_word(opbody, sig, line) if opbody is not None else OperatorWord.identity()
        occs.append(Occurrence(name, -1 if inv else 1, op))
        pos = m.end()
    if not occs:
        raise PresentationError("empty relator word", line)
    return occs


def parse_presentation(text):
    """Parse the line-oriented presentation grammar (see package docs)."""
    genus = None
    components = None
    generators = []
    component = {}
    relator_specs = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "genus":
            if genus is not None:
                raise PresentationError("duplicate genus line", lineno)
            try:
                genus = int(rest)
            except ValueError:
                raise PresentationError(f"bad genus {rest!r}", lineno)
            if genus < 1:
                raise PresentationError("genus must be >= 1", lineno)
        elif head == "components":
            if components is not None:
                raise PresentationError("duplicate components line", lineno)
            try:
                components = int(rest)
            except ValueError:
                raise PresentationError(f"bad component count {rest!r}", lineno)
            if components < 1:
                raise PresentationError("component count must be >= 1", lineno)
        elif head == "generators":
            if genus is None or components is None:
                raise PresentationError("genus and components must come before generators", lineno)
            names = rest.split()
            if not names:
                raise PresentationError("empty generators line", lineno)
            sig = RingSignature(genus, components)
            reserved = set(sig._name_table())
            for name in names:
                if not _NAME_RE.match(name):
                    raise PresentationError(f"bad generator name {name!r}", lineno)
                if name in reserved:
                    raise PresentationError(
                        f"generator name {name!r} collides with a ring variable", lineno)
                if name in generators:
                    raise PresentationError(f"duplicate generator {name!r}", lineno)
                generators.append(name)
        elif head == "component":
            parts = rest.split()
            if len(parts) != 2:
                raise PresentationError("expected: component <generator> <index>", lineno)
            name, idx = parts
            if name not in generators:
                raise PresentationError(f"component line for undeclared generator {name!r}", lineno)
            if name in component:
                raise PresentationError(f"duplicate component line for {name!r}", lineno)
            try:
                component[name] = int(idx)
            except ValueError:
                raise PresentationError(f"bad component index {idx!r}", lineno)
        elif head == "relator":
            if not generators:
                raise PresentationError("relator before any generators line", lineno)
            relator_specs.append((lineno, rest))
        else:
            raise PresentationError(f"unknown directive {head!r}", lineno)

    if genus is None or components is None:
        raise PresentationError("missing genus or components line")
    if not generators:
        raise PresentationError("missing generators line")
    sig = RingSignature(genus, components)

    relators = []
    for lineno, spec in relator_specs:
        if spec.count("=") > 1:
            raise PresentationError("more than one '=' in relator", lineno)
        if "=" in spec:
            lhs_text, rhs_text = spec.split("=")
            lhs = _parse_word(lhs_text, sig, lineno)
            rhs = _parse_word(rhs_text, sig, lineno)
            word = lhs + [occ.inverse() for occ in reversed(rhs)]
        else:
            word = _parse_word(spec, sig, lineno)
        for occ in word:
            if occ.gen not in generators:
                raise PresentationError(f"undeclared generator {occ.gen!r} in relator", lineno)
        relators.append(Relator(tuple(word)))

    return make_presentation(sig, generators, component, relators)


def print_presentation(pres, alias=False):
    """Render back to the file grammar; parse(print(P)) == P."""
    sig = pres.sig
    gamma_names = sig.var_names(alias=alias)[: 2 * sig.genus]
    lines = [f"genus {sig.genus}", f"components {sig.components}",
             "generators " + " ".join(pres.generators)]
    for g in pres.generators:
        lines.append(f"component {g} {pres.component[g]}")
    for r in pres.relators:
        lines.append("relator " + _relator_str(r, gamma_names))
    return "\n".join(lines) + "\n"


def _operator_str(op, gamma_names):
    parts = []
    i = 0
    letters = op.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        idx, s = letters[i]
        e = s * (j - i)
        parts.append(gamma_names[idx] if e == 1 else f"{gamma_names[idx]}^{e}")
        i = j
    return " ".join(parts)


def _relator_str(r, gamma_names):
    if not r.word:
        return "1"
    parts = []
    for occ in r.word:
        s = occ.gen + ("~" if occ.sign == -1 else "")
        if not occ.op.is_identity:
            s += "{" + _operator_str(occ.op, gamma_names) + "}"
        parts.append(s)
    return " ".join(parts)
