"""Bounded-degree ideal membership.

For a presentation P and a degree cap D, the two-sided ideal is truncated
to ``I_D = span{u*r*v : r a relation, deg(u*r*v) <= D}`` inside the space
of words of length <= D.  An exact reduced echelon basis of I_D (deglex
order, generator order as declared) gives a canonical normal form on that
space: every word of length <= D is either standard or the leading word of
exactly one basis row.

Words longer than D are rewritten by replacing any subword that is a
leading word.  Each replacement subtracts a genuine element of the ideal,
so a zero normal form always proves membership.  A nonzero normal form is
only a refutation of membership in I_D, never of membership in the ideal;
that distinction is carried by the verdicts below.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Sequence

from .poly import NcPoly, TensorElem, Word, add_scaled, add_term, deglex_key

DEFAULT_DEGREE_CAP = 3
DEFAULT_CAPACITY = int(os.environ.get("HGW_CAPACITY_MONOMIALS", "200000"))


class CapacityError(RuntimeError):
    """The monomial space at the requested cap exceeds the configured limit."""


class DegreeCapError(ValueError):
    """The cap is below the degree of some relation."""


class Verdict(str, Enum):
    VERIFIED = "verified"
    INCONCLUSIVE = "inconclusive"
    NONZERO = "nonzero-at-cap"


@dataclass
class ZeroCheck:
    verdict: Verdict
    cap: int
    witness: TensorElem | None = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.VERIFIED


def words_up_to(n: int, length: int):
    for k in range(length + 1):
        yield from itertools.product(range(n), repeat=k)


def monomial_count(n: int, length: int) -> int:
    return sum(n ** k for k in range(length + 1))


class IdealBasis:
    """Reduced echelon basis of I_D, stored as rewrite rules.

    ``rules[w]`` is the normal form of the leading word ``w``, a map from
    standard words (all smaller than ``w``) to coefficients, so that
    ``w - sum(rules[w])`` is a basis row.
    """

    def __init__(self, presentation, cap: int, rules: Dict[Word, dict], generated: int):
        self.presentation = presentation
        self.cap = cap
        self.rules = rules
        self.generated = generated
        self._memo: Dict[Word, dict] = {}

    # -- echelon data ------------------------------------------------------
    @property
    def dimension(self) -> int:
        return len(self.rules)

    def leading_words(self) -> List[Word]:
        return sorted(self.rules, key=deglex_key)

    def rows(self) -> List[NcPoly]:
        alpha = self.presentation.alphabet
        out = []
        for w in sorted(self.rules, key=deglex_key, reverse=True):
            t = {w: 1}
            add_scaled(t, self.rules[w], -1)
            out.append(NcPoly(alpha, t))
        return out

    def standard_words(self, max_len: int | None = None) -> List[Word]:
        """Words of length <= max_len that are not leading words, in deglex order."""
        L = self.cap if max_len is None else max_len
        if L > self.cap:
            raise ValueError("standard words are only known up to the cap")
        n = self.presentation.ngens()
        return [w for w in words_up_to(n, L) if w not in self.rules]

    # -- reduction ---------------------------------------------------------
    def _window(self, w: Word):
        D = self.cap
        rules = self.rules
        n = len(w)
        for i in range(n):
            for L in range(min(D, n - i), 0, -1):
                if w[i:i + L] in rules:
                    return i, L
        return None

    def nf_word(self, w: Word) -> dict:
        """Normal form of a single word as a map word -> coefficient."""
        if len(w) <= self.cap:
            r = self.rules.get(w)
            return r if r is not None else {w: 1}
        memo = self._memo.get(w)
        if memo is not None:
            return memo
        out: dict = {}
        work = {w: 1}
        D = self.cap
        while work:
            x = max(work, key=deglex_key)
            c = work.pop(x)
            if len(x) <= D:
                r = self.rules.get(x)
                add_scaled(out, r if r is not None else {x: 1}, c)
                continue
            m = self._memo.get(x)
            if m is not None:
                add_scaled(out, m, c)
                continue
            win = self._window(x)
            if win is None:
                add_term(out, x, c)
                continue
            i, L = win
            head, tail = x[:i], x[i + L:]
            for u, a in self.rules[x[i:i + L]].items():
                add_term(work, head + u + tail, c * a)
        self._memo[w] = out
        return out

    def reduce(self, terms: dict) -> dict:
        out: dict = {}
        for w, c in terms.items():
            add_scaled(out, self.nf_word(w), c)
        return out

    def normal_form(self, p: NcPoly) -> NcPoly:
        return NcPoly(p.alphabet, self.reduce(p.terms))

    def overflow(self, terms: dict) -> bool:
        return any(len(w) > self.cap for w in terms)

    def __repr__(self):
        return (f"IdealBasis({self.presentation.name}, cap={self.cap}, "
                f"dim={self.dimension}, rows generated={self.generated})")


def _top_reduce(row: dict, rules: dict):
    while row:
        lm = max(row, key=deglex_key)
        rule = rules.get(lm)
        if rule is None:
            return lm
        c = row.pop(lm)
        for w, a in rule.items():
            add_term(row, w, c * a)
    return None


def ideal_basis(pres, cap: int = DEFAULT_DEGREE_CAP, capacity: int | None = None) -> IdealBasis:
    """Exact reduced echelon basis of the ideal truncated at ``cap``.

    Raises :class:`DegreeCapError` if ``cap`` is below a relation degree and
    :class:`CapacityError` if there are more than ``capacity`` words of
    length <= cap.
    """
    capacity = DEFAULT_CAPACITY if capacity is None else capacity
    key = (cap, capacity)
    cached = pres._bases.get(key)
    if cached is not None:
        return cached
    if cap < 1:
        raise DegreeCapError(f"degree cap must be positive, got {cap}")
    maxdeg = pres.max_relation_degree()
    if cap < maxdeg:
        raise DegreeCapError(
            f"degree cap {cap} below relation degree {maxdeg} for {pres.name}")
    n = pres.ngens()
    total = monomial_count(n, cap)
    if total > capacity:
        raise CapacityError(
            f"{pres.name}: {total} words of length <= {cap} exceed capacity {capacity}")

    rules: Dict[Word, dict] = {}
    generated = 0
    # small relations first keeps intermediate rows short
    rels = sorted(pres.relations, key=lambda r: (r.degree(), len(r.terms)))
    for r in rels:
        d = r.degree()
        room = cap - d
        for u in words_up_to(n, room):
            for v in words_up_to(n, room - len(u)):
                row = {}
                for w, c in r.terms.items():
                    row[u + w + v] = c
                generated += 1
                lm = _top_reduce(row, rules)
                if lm is None:
                    continue
                c = row.pop(lm)
                inv = 1 / c
                rules[lm] = {w: -a * inv for w, a in row.items()}

    # back substitution in increasing order of leading words
    reduced: Dict[Word, dict] = {}
    for lm in sorted(rules, key=deglex_key):
        tail: dict = {}
        for w, a in rules[lm].items():
            sub = reduced.get(w)
            if sub is None:
                add_term(tail, w, a)
            else:
                add_scaled(tail, sub, a)
        reduced[lm] = tail
    basis = IdealBasis(pres, cap, reduced, generated)
    pres._bases[key] = basis
    return basis


class Reducer:
    """Normal forms of tensor elements at one degree cap.

    Holds the ideal basis of every presentation it meets.  A presentation
    whose relations exceed the cap has no basis; elements touching it can
    only be decided when they are literally zero.
    """

    def __init__(self, cap: int = DEFAULT_DEGREE_CAP, capacity: int | None = None):
        self.cap = cap
        self.capacity = DEFAULT_CAPACITY if capacity is None else capacity
        self._errors: Dict[int, Exception] = {}

    def basis(self, pres) -> IdealBasis | None:
        if id(pres) in self._errors:
            return None
        try:
            return ideal_basis(pres, self.cap, self.capacity)
        except DegreeCapError as exc:
            self._errors[id(pres)] = exc
            return None

    def error_for(self, pres):
        return self._errors.get(id(pres))

    def nf_terms(self, factors: Sequence, terms: dict) -> dict:
        bases = [self.basis(f) for f in factors]
        out: dict = {}
        for tw, c in terms.items():
            parts = []
            for b, w in zip(bases, tw):
                parts.append(b.nf_word(w).items() if b is not None else ((w, 1),))
            if len(parts) == 1:
                for (w, a) in parts[0]:
                    add_term(out, (w,), c * a)
                continue
            for combo in itertools.product(*parts):
                coeff = c
                for _, a in combo:
                    coeff = coeff * a
                add_term(out, tuple(w for w, _ in combo), coeff)
        return out

    def nf(self, t: TensorElem) -> TensorElem:
        return TensorElem._raw(t.factors, self.nf_terms(t.factors, t.terms))

    def check_zero(self, t: TensorElem) -> ZeroCheck:
        if t.is_zero():
            return ZeroCheck(Verdict.VERIFIED, self.cap)
        missing = [f for f in t.factors if self.basis(f) is None]
        if missing:
            return ZeroCheck(Verdict.INCONCLUSIVE, self.cap, t,
                             reason="; ".join(dict.fromkeys(str(self.error_for(f)) for f in missing)))
        r = self.nf(t)
        if r.is_zero():
            return ZeroCheck(Verdict.VERIFIED, self.cap)
        cap = self.cap
        if any(len(w) > cap for tw in r.terms for w in tw):
            return ZeroCheck(Verdict.INCONCLUSIVE, cap, r,
                             reason=f"normal form has words longer than the cap {cap}")
        return ZeroCheck(Verdict.NONZERO, cap, r,
                         reason=f"nonzero normal form at cap {cap}")


def normal_form(t: TensorElem, bases: Sequence[IdealBasis]) -> TensorElem:
    """Reduce each factor coordinate of ``t`` against its ideal basis."""
    if len(bases) != len(t.factors):
        raise ValueError("one ideal basis per tensor factor is required")
    out: dict = {}
    for tw, c in t.terms.items():
        parts = [b.nf_word(w).items() for b, w in zip(bases, tw)]
        for combo in itertools.product(*parts):
            coeff = c
            for _, a in combo:
                coeff = coeff * a
            add_term(out, tuple(w for w, _ in combo), coeff)
    return TensorElem._raw(t.factors, out)


def is_zero_mod(t: TensorElem, cap: int = DEFAULT_DEGREE_CAP,
                capacity: int | None = None) -> ZeroCheck:
    return Reducer(cap, capacity).check_zero(t)
