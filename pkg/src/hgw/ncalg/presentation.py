from __future__ import annotations

from typing import Iterable, Sequence

from ..exact import QQ, Field
from .poly import Alphabet, NcPoly, TensorElem


def x_name(i: int, j: int, prefix: str = "x") -> str:
    """Generator name for a matrix entry: ``x12``, or ``x1_12`` once an index exceeds 9."""
    if i < 10 and j < 10:
        return f"{prefix}{i}{j}"
    return f"{prefix}{i}_{j}"


class Presentation:
    """Generators and relations (each relation understood as ``r = 0``).

    Immutable after construction.  Ideal bases are cached per
    ``(degree_cap, capacity)`` on the instance; they do not take part in
    equality.
    """

    def __init__(self, name: str, generators: Iterable[str],
                 relations: Sequence = (), field: Field = QQ, meta: dict | None = None):
        self.name = name
        self.alphabet = generators if isinstance(generators, Alphabet) else Alphabet(generators)
        rels = []
        for r in relations:
            if not isinstance(r, NcPoly):
                raise TypeError("relations must be NcPoly")
            if r.alphabet != self.alphabet:
                raise ValueError(f"relation {r} not over the alphabet of {name}")
            if not r.is_zero():
                rels.append(r)
        self.relations = tuple(rels)
        self.field = field
        self.meta = dict(meta or {})
        self._bases = {}

    @property
    def generators(self):
        return self.alphabet.names

    def ngens(self) -> int:
        return len(self.alphabet)

    def max_relation_degree(self) -> int:
        return max((r.degree() for r in self.relations), default=0)

    def gen(self, name: str) -> NcPoly:
        return NcPoly.gen(self.alphabet, name)

    def gens(self):
        return [NcPoly.gen(self.alphabet, n) for n in self.alphabet.names]

    def one(self) -> NcPoly:
        return NcPoly.const(self.alphabet, 1)

    def element(self, p: NcPoly) -> TensorElem:
        return TensorElem.from_poly(self, p)

    def relation_set(self):
        return frozenset(self.relations)

    def same_as(self, other: "Presentation") -> bool:
        """Structural equality: same generator order and same relation set."""
        return (self.alphabet == other.alphabet
                and self.relation_set() == other.relation_set()
                and self.field == other.field)

    def __repr__(self):
        return (f"Presentation({self.name!r}, {len(self.alphabet)} generators, "
                f"{len(self.relations)} relations)")


def free_algebra(name: str, generators: Iterable[str], field: Field = QQ) -> Presentation:
    return Presentation(name, generators, (), field)


def unit_algebra(field: Field = QQ) -> Presentation:
    """The one-generator algebra k<e | e - 1>, isomorphic to the ground field."""
    p = Presentation("k", ["e"], (), field)
    e = p.gen("e")
    return Presentation("k", ["e"], [e - 1], field)
