"""Small group algebras as presented Hopf algebras (grouplike generators).

These are the simplest inputs for the degenerate system A = B = Z = T:
k[Z/n] = k<g | g^n - 1> and the Laurent algebra k[Z] = k<g, h | gh - 1, hg - 1>,
with Δ(g) = g⊗g, ε(g) = 1 and S(g) = g⁻¹.
"""

from __future__ import annotations

from functools import lru_cache

from .ncalg.morphism import AlgMorphism
from .ncalg.poly import TensorElem
from .ncalg.presentation import Presentation, free_algebra
from .system import Bialgebra, HopfGaloisSystem, hopf_algebra_system


def _grouplike(P: Presentation, names, inverse) -> Bialgebra:
    delta = AlgMorphism("Delta", P, (P, P), {
        g: TensorElem.simple((P, P), [P.alphabet.word(g), P.alphabet.word(g)]) for g in names})
    eps = AlgMorphism("eps", P, (), {g: 1 for g in names})
    S = AlgMorphism("S", P, (P,), {g: inverse[g] for g in names}, anti=True)
    return Bialgebra(P, delta, eps, S)


@lru_cache(maxsize=None)
def cyclic_group_presentation(order: int) -> Presentation:
    if order < 1:
        raise ValueError("the group order must be positive")
    free = free_algebra("free", ["g"])
    g, power = free.gen("g"), free.one()
    for _ in range(order):
        power = power * g
    return Presentation(f"k[Z/{order}]", ["g"], [power - 1], meta={"family": "cyclic", "order": order})


def cyclic_group_hopf(order: int) -> Bialgebra:
    """k[Z/n]: S(g) = g^(n-1)."""
    P = cyclic_group_presentation(order)
    inv = P.one()
    for _ in range(order - 1):
        inv = inv * P.gen("g")
    return _grouplike(P, ["g"], {"g": inv})


@lru_cache(maxsize=None)
def laurent_presentation() -> Presentation:
    free = free_algebra("free", ["g", "h"])
    g, h = free.gen("g"), free.gen("h")
    return Presentation("k[Z]", ["g", "h"], [g * h - 1, h * g - 1], meta={"family": "laurent"})


def laurent_hopf() -> Bialgebra:
    """k[Z] with h = g⁻¹: S(g) = h, S(h) = g."""
    P = laurent_presentation()
    return _grouplike(P, ["g", "h"], {"g": P.gen("h"), "h": P.gen("g")})


def group_algebra_system(order: int | None = None) -> HopfGaloisSystem:
    """Degenerate system on k[Z/order], or on k[Z] when ``order`` is None."""
    H = laurent_hopf() if order is None else cyclic_group_hopf(order)
    return hopf_algebra_system(f"degenerate {H.name}", H)
