"""Words, noncommutative polynomials and elements of tensor products.

A word is a tuple of generator indices; the empty tuple is the unit
monomial.  Polynomials are sparse maps word -> nonzero scalar.  A
:class:`TensorElem` over factors ``(P_1, ..., P_k)`` maps k-tuples of words
to scalars; with ``k == 0`` it is a plain scalar (the ground field seen as
the empty tensor product).
"""

from __future__ import annotations

from typing import Dict, Iterable, Sequence, Tuple

from ..exact import format_scalar, mpq

Word = Tuple[int, ...]
TWord = Tuple[Word, ...]


def deglex_key(w: Word):
    """Sort key of the degree-lexicographic order (larger = leading)."""
    return (len(w), w)


def add_term(d: dict, key, c) -> None:
    """``d[key] += c`` dropping zero coefficients."""
    v = d.get(key)
    if v is None:
        if c:
            d[key] = c
        return
    v = v + c
    if v:
        d[key] = v
    else:
        del d[key]


def add_scaled(d: dict, other: dict, c) -> None:
    for k, v in other.items():
        add_term(d, k, c * v)


class Alphabet:
    """Ordered generator names; the order induces the monomial order."""

    __slots__ = ("names", "index")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise ValueError("generator names must be unique")

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({list(self.names)})"

    def word(self, *names: str) -> Word:
        return tuple(self.index[n] for n in names)

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        return "*".join(self.names[i] for i in w)


def _format_terms(items, fmt_word) -> str:
    """Shared pretty-printer: ``items`` are (word-ish, coeff) pairs."""
    if not items:
        return "0"
    out = []
    for k, (w, c) in enumerate(items):
        body = fmt_word(w)
        neg = False
        coeff = c
        if not hasattr(c, "order"):
            if c < 0:
                neg, coeff = True, -c
        if body == "1":
            text = format_scalar(coeff)
        elif coeff == 1:
            text = body
        else:
            text = f"{format_scalar(coeff)}*{body}"
        if k == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)


class NcPoly:
    """Element of the free algebra on ``alphabet``."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Dict[Word, object] | None = None):
        self.alphabet = alphabet
        self.terms = {}
        if terms:
            for w, c in terms.items():
                add_term(self.terms, tuple(w), c)

    # constructors -------------------------------------------------------
    @classmethod
    def gen(cls, alphabet: Alphabet, name: str) -> "NcPoly":
        return cls(alphabet, {(alphabet.index[name],): mpq(1)})

    @classmethod
    def const(cls, alphabet: Alphabet, c) -> "NcPoly":
        return cls(alphabet, {(): c})

    # queries --------------------------------------------------------------
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def leading_word(self) -> Word:
        return max(self.terms, key=deglex_key)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "NcPoly"):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")

    def __add__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.const(self.alphabet, other)
        self._check(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, 1)
        return NcPoly(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            return NcPoly(self.alphabet, {w: c * other for w, c in self.terms.items()})
        return poly_mul(self, other)

    def __rmul__(self, other):
        return NcPoly(self.alphabet, {w: other * c for w, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.alphabet == other.alphabet and self.terms == other.terms
        if not self.terms:
            return other == 0
        return set(self.terms) == {()} and self.terms[()] == other

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __str__(self):
        return _format_terms(self.sorted_terms(), self.alphabet.format_word)

    def __repr__(self):
        return f"NcPoly({self})"


def poly_mul(p: NcPoly, q: NcPoly) -> NcPoly:
    """Distributive product with word concatenation."""
    p._check(q)
    out: dict = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            add_term(out, u + v, a * b)
    r = NcPoly(p.alphabet)
    r.terms = out
    return r


class TensorElem:
    """Finite sum of scalars times tuples of words over ``factors``."""

    __slots__ = ("factors", "terms")

    def __init__(self, factors: Sequence, terms: Dict[TWord, object] | None = None):
        self.factors = tuple(factors)
        self.terms = {}
        if terms:
            k = len(self.factors)
            for tw, c in terms.items():
                tw = tuple(tuple(w) for w in tw)
                if len(tw) != k:
                    raise ValueError(f"tensor arity {len(tw)} != {k} factors")
                add_term(self.terms, tw, c)

    @classmethod
    def _raw(cls, factors, terms) -> "TensorElem":
        t = cls.__new__(cls)
        t.factors = tuple(factors)
        t.terms = terms
        return t

    @classmethod
    def from_poly(cls, pres, p: NcPoly) -> "TensorElem":
        return cls._raw((pres,), {(w,): c for w, c in p.terms.items()})

    @classmethod
    def scalar(cls, factors, c) -> "TensorElem":
        factors = tuple(factors)
        return cls._raw(factors, {tuple(() for _ in factors): c} if c else {})

    @classmethod
    def simple(cls, factors, words, c=1) -> "TensorElem":
        return cls(factors, {tuple(words): mpq(c) if not hasattr(c, "order") else c})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> tuple:
        k = len(self.factors)
        return tuple(max((len(tw[i]) for tw in self.terms), default=0) for i in range(k))

    def to_poly(self) -> NcPoly:
        if len(self.factors) != 1:
            raise ValueError("not a single-factor element")
        p = NcPoly(self.factors[0].alphabet)
        p.terms = {tw[0]: c for tw, c in self.terms.items()}
        return p

    def _check(self, other: "TensorElem"):
        if self.factors != other.factors:
            raise ValueError("factor-list mismatch")

    def __add__(self, other):
        if not isinstance(other, TensorElem):
            other = TensorElem.scalar(self.factors, other)
        self._check(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, 1)
        return TensorElem._raw(self.factors, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorElem._raw(self.factors, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TensorElem):
            return tensor_mul(self, other)
        return TensorElem._raw(self.factors, {w: c * other for w, c in self.terms.items()} if other else {})

    def __rmul__(self, other):
        return TensorElem._raw(self.factors, {w: other * c for w, c in self.terms.items()} if other else {})

    def __eq__(self, other):
        if isinstance(other, TensorElem):
            return self.factors == other.factors and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.factors, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda t: tuple(deglex_key(w) for w in t[0]), reverse=True)

    def format(self) -> str:
        """DSL rendering: factors joined by ``@``."""
        facs = self.factors

        def fmt(tw):
            if not tw:
                return "1"
            parts = [f.alphabet.format_word(w) for f, w in zip(facs, tw)]
            if all(p == "1" for p in parts):
                return "1"
            return "@".join(parts)

        return _format_terms(self.sorted_terms(), fmt)

    def __str__(self):
        return self.format()

    def __repr__(self):
        names = "⊗".join(f.name for f in self.factors) or "k"
        return f"TensorElem[{names}]({self.format()})"


def tensor_mul(s: TensorElem, t: TensorElem) -> TensorElem:
    """Componentwise product (a1⊗…⊗ak)(b1⊗…⊗bk) = a1b1⊗…⊗akbk."""
    s._check(t)
    out: dict = {}
    for u, a in s.terms.items():
        for v, b in t.terms.items():
            add_term(out, tuple(x + y for x, y in zip(u, v)), a * b)
    return TensorElem._raw(s.factors, out)
