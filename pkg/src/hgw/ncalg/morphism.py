"""Algebra (anti)morphisms given by generator images, and their checks.

An :class:`AlgMorphism` sends each generator of ``domain`` to an element of
the tensor product of ``codomain`` (a tuple of presentations, possibly
empty: the ground field).  With ``anti=True`` the map lands in the opposite
algebra, so a word is sent to the product of its letter images in reversed
order.  Reducing that product in the ordinary codomain is the same as
reducing the reversed word in the opposite algebra, so one ideal basis
serves both.

A morphism may be partial (only some generators have images).  That is
how truncations such as the level shift on H(m,n) are represented:
relations whose generators lack images are skipped and counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence

from .ideal import Reducer, Verdict, ZeroCheck
from .poly import NcPoly, TensorElem, Word, add_term, tensor_mul


class DomainMismatch(ValueError):
    pass


class AlgMorphism:
    def __init__(self, name: str, domain, codomain: Sequence, images: Dict,
                 anti: bool = False):
        self.name = name
        self.domain = domain
        self.codomain = tuple(codomain)
        self.anti = anti
        imgs: Dict[int, TensorElem] = {}
        for k, v in images.items():
            g = domain.alphabet.index[k] if isinstance(k, str) else int(k)
            if isinstance(v, NcPoly):
                if len(self.codomain) != 1:
                    raise ValueError(f"{name}: polynomial image needs a single-factor codomain")
                v = TensorElem.from_poly(self.codomain[0], v)
            elif not isinstance(v, TensorElem):
                v = TensorElem.scalar(self.codomain, v)
            if v.factors != self.codomain:
                raise ValueError(f"{name}: image of {domain.alphabet.names[g]} "
                                 "does not live in the stated codomain")
            imgs[g] = v
        self.images = imgs
        self._memo: Dict[Word, TensorElem] = {}

    @property
    def partial(self) -> bool:
        return len(self.images) < self.domain.ngens()

    def defined_on(self, w: Word) -> bool:
        return all(g in self.images for g in w)

    def image(self, name: str) -> TensorElem:
        return self.images[self.domain.alphabet.index[name]]

    def one(self) -> TensorElem:
        return TensorElem.scalar(self.codomain, 1)

    def word_image(self, w: Word, reducer: Reducer | None = None) -> TensorElem:
        """Image of a single word; prefix products are memoized."""
        if not w:
            return self.one()
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        if w[-1] not in self.images:
            name = self.domain.alphabet.names[w[-1]]
            raise KeyError(f"{self.name} has no image for generator {name}")
        head = self.word_image(w[:-1], reducer)
        last = self.images[w[-1]]
        out = tensor_mul(last, head) if self.anti else tensor_mul(head, last)
        if reducer is not None:
            out = reducer.nf(out)
        self._memo[w] = out
        return out

    def __call__(self, p, reducer: Reducer | None = None) -> TensorElem:
        if isinstance(p, NcPoly):
            p = TensorElem.from_poly(self.domain, p)
        return apply_morphism(self, p, 0, reducer)

    def __repr__(self):
        arrow = "->op" if self.anti else "->"
        cod = "⊗".join(c.name for c in self.codomain) or "k"
        return f"AlgMorphism({self.name}: {self.domain.name} {arrow} {cod})"


def apply_morphism(f: AlgMorphism, t: TensorElem, position: int = 0,
                   reducer: Reducer | None = None) -> TensorElem:
    """Apply ``f`` to tensor factor ``position`` of ``t``, splicing its codomain in."""
    if not 0 <= position < len(t.factors) or t.factors[position] is not f.domain:
        raise DomainMismatch(
            f"{f.name}: factor {position} of the argument is not {f.domain.name}")
    factors = t.factors[:position] + f.codomain + t.factors[position + 1:]
    out: dict = {}
    for tw, c in t.terms.items():
        img = f.word_image(tw[position], reducer)
        head, tail = tw[:position], tw[position + 1:]
        for iw, a in img.terms.items():
            add_term(out, head + iw + tail, c * a)
    res = TensorElem._raw(factors, out)
    return reducer.nf(res) if reducer is not None else res


def multiply_factors(t: TensorElem, position: int, reducer: Reducer | None = None) -> TensorElem:
    """Apply the multiplication of factor ``position`` to factors ``position``, ``position+1``."""
    fs = t.factors
    if position + 1 >= len(fs) or fs[position] is not fs[position + 1]:
        raise DomainMismatch(f"factors {position}, {position + 1} are not the same algebra")
    factors = fs[:position + 1] + fs[position + 2:]
    out: dict = {}
    for tw, c in t.terms.items():
        add_term(out, tw[:position] + (tw[position] + tw[position + 1],) + tw[position + 2:], c)
    res = TensorElem._raw(factors, out)
    return reducer.nf(res) if reducer is not None else res


def identity_morphism(pres, name: str | None = None) -> AlgMorphism:
    return AlgMorphism(name or f"id_{pres.name}", pres, (pres,),
                       {g: pres.gen(g) for g in pres.generators})


def compose(outer: AlgMorphism, inner: AlgMorphism, position: int = 0,
            name: str | None = None, reducer: Reducer | None = None) -> AlgMorphism:
    """``outer`` applied at factor ``position`` of ``inner``'s codomain."""
    images = {g: apply_morphism(outer, img, position, reducer)
              for g, img in inner.images.items()}
    cod = inner.codomain[:position] + outer.codomain + inner.codomain[position + 1:]
    return AlgMorphism(name or f"{outer.name}∘{inner.name}", inner.domain, cod, images,
                       anti=inner.anti != outer.anti)


@dataclass
class RelationCheck:
    index: int
    relation: NcPoly
    result: ZeroCheck | None  # None: skipped (outside a partial morphism)

    @property
    def skipped(self) -> bool:
        return self.result is None


@dataclass
class WellDefinedness:
    morphism: AlgMorphism
    cap: int
    checks: List[RelationCheck] = field(default_factory=list)

    @property
    def skipped(self) -> int:
        return sum(1 for c in self.checks if c.skipped)

    @property
    def verdict(self) -> Verdict:
        return combine([c.result.verdict for c in self.checks if c.result is not None])

    def first_bad(self) -> RelationCheck | None:
        for want in (Verdict.NONZERO, Verdict.INCONCLUSIVE):
            for c in self.checks:
                if c.result is not None and c.result.verdict is want:
                    return c
        return None


def combine(verdicts) -> Verdict:
    vs = list(verdicts)
    if any(v is Verdict.NONZERO for v in vs):
        return Verdict.NONZERO
    if any(v is Verdict.INCONCLUSIVE for v in vs):
        return Verdict.INCONCLUSIVE
    return Verdict.VERIFIED


def morphism_well_defined(f: AlgMorphism, cap_or_reducer=3) -> WellDefinedness:
    """Check ``f(r) = 0`` in the codomain for every relation ``r`` of the domain."""
    red = cap_or_reducer if isinstance(cap_or_reducer, Reducer) else Reducer(cap_or_reducer)
    rep = WellDefinedness(f, red.cap)
    for k, r in enumerate(f.domain.relations):
        if not all(f.defined_on(w) for w in r.terms):
            rep.checks.append(RelationCheck(k, r, None))
            continue
        img = f(r)
        rep.checks.append(RelationCheck(k, r, red.check_zero(img)))
    return rep


@dataclass
class EqualityCheck:
    generator: str
    result: ZeroCheck


def morphisms_equal(f: AlgMorphism, g: AlgMorphism, cap_or_reducer=3,
                    generators: Sequence[str] | None = None) -> List[EqualityCheck]:
    """Compare two morphisms generator by generator modulo the codomain relations.

    Both sides being algebra morphisms (or both anti-morphisms), agreement
    on generators gives agreement everywhere.
    """
    if f.domain is not g.domain or f.codomain != g.codomain:
        raise DomainMismatch(f"{f.name} and {g.name} have different domain or codomain")
    if f.anti != g.anti:
        raise DomainMismatch("cannot compare a morphism with an anti-morphism")
    red = cap_or_reducer if isinstance(cap_or_reducer, Reducer) else Reducer(cap_or_reducer)
    names = f.domain.generators if generators is None else generators
    out = []
    for name in names:
        k = f.domain.alphabet.index[name]
        if k not in f.images or k not in g.images:
            continue
        out.append(EqualityCheck(name, red.check_zero(f.images[k] - g.images[k])))
    return out
