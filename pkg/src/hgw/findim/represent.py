"""Evaluating presentations in finite-dimensional algebras (nonzero witnesses)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from ..ncalg.poly import add_scaled
from .algebra import FinDimAlgebra, vec_str


@dataclass
class RepresentationResult:
    presentation: str
    target: str
    verified: bool
    nonzero: bool
    bad_relation: int | None = None
    relation: str | None = None
    witness: str | None = None
    relations_checked: int = 0

    @property
    def verdict(self) -> str:
        return "verified" if self.verified else "failed"


def evaluate(pres, images: Dict[str, dict], target: FinDimAlgebra, poly, memo=None) -> dict:
    memo = {} if memo is None else memo
    idx = [images[n] for n in pres.alphabet.names]

    def word(w):
        if not w:
            return target.one()
        hit = memo.get(w)
        if hit is None:
            hit = target.mul(word(w[:-1]), idx[w[-1]])
            memo[w] = hit
        return hit

    out: dict = {}
    for w, c in poly.terms.items():
        add_scaled(out, word(w), c)
    return out


def findim_representation_check(pres, images: Dict[str, dict], target: FinDimAlgebra,
                                stop_at_first: bool = True) -> RepresentationResult:
    """Evaluate every relation of ``pres`` on ``images`` in ``target`` exactly.

    The nonzero flag is set only when all relations vanish and the unit of
    ``target`` is nonzero: then the presented algebra maps unitally onto a
    nonzero algebra, so it is nonzero itself.
    """
    missing = [n for n in pres.alphabet.names if n not in images]
    if missing:
        raise KeyError(f"no image for generators {missing[:5]}")
    memo: dict = {}
    res = RepresentationResult(pres.name, target.name, True, False)
    for k, r in enumerate(pres.relations):
        v = evaluate(pres, images, target, r, memo)
        res.relations_checked += 1
        if v:
            if res.bad_relation is None:
                res.verified = False
                res.bad_relation = k
                res.relation = str(r)
                res.witness = vec_str(target.labels, v)
            if stop_at_first:
                break
    res.nonzero = res.verified and bool(target.one())
    return res
